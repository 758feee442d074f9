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

#ifndef MMWTHZ_CLI_HPP
#define MMWTHZ_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mmwthz::cli
{
    enum ExitCode : int
    {
        ok = 0,
        usage = 1, // bad arguments or a value outside a model's domain
        config = 2,
        numerical = 3 // table extrapolation or a failed numerical procedure
    };

    // Runs one subcommand. `args` excludes the program name. Results go to `out` (or the --out
    // file); failures are reported on `err` as {"error": {"code", "kind", "message"}}.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    // Shortest decimal text that reads back to the same double
    std::string format_number(double v);
}

#endif
