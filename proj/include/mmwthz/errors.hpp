// SPDX-License-Identifier: Apache-2.0
//
// mmwthz - mmWave/THz propagation modelling and coverage simulation
// Copyright (C) 2026 The mmwthz authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMWTHZ_ERRORS_HPP
#define MMWTHZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmwthz
{
    // Argument outside the mathematical domain of an operation (negative distance, grazing angle, ...)
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Query outside the span of a tabulated quantity; tables are never extrapolated
    class ExtrapolationError : public std::out_of_range
    {
    public:
        using std::out_of_range::out_of_range;
    };

    // Invalid configuration: schema violations, inconsistent parameters, unusable simulation windows
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Numerical procedure failed to reach its tolerance
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
