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

#ifndef MMWTHZ_LINKBUDGET_HPP
#define MMWTHZ_LINKBUDGET_HPP

#include "mmwthz/config.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mmwthz
{
    // One additive term of the budget; gains positive, losses negative
    struct BudgetFactor
    {
        std::string name;
        double db = 0.0;
    };

    struct SurfacePaths
    {
        Roughness roughness = Roughness::smooth;
        double rho = 1.0;
        double reflected_dbm = 0.0;
        double scattered_dbm = 0.0;
    };

    struct LinkBudget
    {
        std::vector<BudgetFactor> factors;
        double rx_power_dbm = 0.0;
        std::vector<std::string> warnings;
        std::optional<SurfacePaths> surface;
    };

    // Sum of all factors in dB equals rx_power_dbm
    LinkBudget compute_link_budget(const LinkScenario &link, const TableSet &tables);

    nlohmann::json to_json(const LinkScenario &link, const LinkBudget &budget);
}

#endif
