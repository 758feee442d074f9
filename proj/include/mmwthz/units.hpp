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

#ifndef MMWTHZ_UNITS_HPP
#define MMWTHZ_UNITS_HPP

#include "mmwthz/errors.hpp"

#include <numbers>

namespace mmwthz
{
    inline constexpr double speed_of_light = 299792458.0; // [m/s], exact SI value
    inline constexpr double pi = std::numbers::pi;

    // Carrier frequency in [Hz]. Always strictly positive and finite.
    class Frequency
    {
    public:
        explicit Frequency(double hz);

        static Frequency hz(double value) { return Frequency(value); }
        static Frequency ghz(double value) { return Frequency(value * 1.0e9); }
        static Frequency thz(double value) { return Frequency(value * 1.0e12); }

        double in_hz() const { return hz_; }
        double in_ghz() const { return hz_ * 1.0e-9; }

        auto operator<=>(const Frequency &) const = default;

    private:
        double hz_;
    };

    // Dimensionless linear power ratio (gain, loss, transmittance). Non-negative.
    class PowerRatio
    {
    public:
        constexpr PowerRatio() = default;
        explicit PowerRatio(double linear);

        static PowerRatio from_db(double db);

        double linear() const { return linear_; }
        double db() const; // -inf for a zero ratio

        PowerRatio operator*(PowerRatio other) const { return PowerRatio(linear_ * other.linear_); }
        auto operator<=>(const PowerRatio &) const = default;

    private:
        double linear_ = 1.0;
    };

    // Planar angle in [rad]
    struct Angle
    {
        double radians = 0.0;

        // Equivalent angle in (-pi, pi]
        Angle normalized() const;
    };

    // 10^(x/10); throws DomainError for non-finite input
    PowerRatio db_to_linear(double db);

    // 10*log10(x); throws DomainError for negative or non-finite input
    double linear_to_db(double linear);

    // Convert absolute power between [dBm] and [W]
    double dbm_to_watts(double dbm);
    double watts_to_dbm(double watts);

    // Free-space wavelength c/f in [m]
    double wavelength(Frequency f);

    // Wrap an arbitrary angle in [rad] to (-pi, pi]
    double wrap_to_pi(double radians);
}

#endif
