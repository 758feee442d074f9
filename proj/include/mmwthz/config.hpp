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

// Scenario files. A scenario is a JSON document with `schema_version: 1` and the optional
// sections `tables`, `simulation`, `network` and `link`. Unknown keys are rejected and every
// physical quantity carries its unit in the key name.

#ifndef MMWTHZ_CONFIG_HPP
#define MMWTHZ_CONFIG_HPP

#include "mmwthz/antenna.hpp"
#include "mmwthz/atmosphere.hpp"
#include "mmwthz/blockage.hpp"
#include "mmwthz/netsim.hpp"
#include "mmwthz/registry.hpp"
#include "mmwthz/surface.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmwthz
{
    inline constexpr int scenario_schema_version = 1;

    // Table file overrides; unset entries fall back to the shipped data directory
    struct TablePaths
    {
        std::optional<std::filesystem::path> absorption;
        std::optional<std::filesystem::path> rain;
        std::optional<std::filesystem::path> foliage;
        std::optional<std::filesystem::path> bands;
    };

    struct TableSet
    {
        AbsorptionSpectrum absorption;
        RainTable rain;
        FoliageTable foliage;
        BandRegistry bands;
    };

    TableSet load_tables(const TablePaths &paths);

    struct SimulationSettings
    {
        std::size_t trials = 10000;
        std::optional<std::uint64_t> seed;
        std::size_t workers = 1;
        std::size_t chunk_size = 256;
        std::vector<double> thresholds_db; // empty: library default grid
    };

    struct PatternSpec
    {
        AntennaPattern pattern = FlatTop{1.0, 1.0, pi};
        double element_gain = 1.0; // linear
    };

    // Single-link scenario for the link-budget report
    struct LinkScenario
    {
        BandKind band = BandKind::mmwave;
        Frequency frequency = Frequency::ghz(28.0);
        double distance_m = 100.0;
        LinkState state = LinkState::los;
        double tx_power_dbm = 30.0;
        double tx_gain_db = 0.0;
        double rx_gain_db = 0.0;
        std::optional<PathLossLaws> pathloss; // mmWave only; nullopt: free-space LOS, exponent-4 NLOS
        bool absorption = true; // THz only; mmWave budgets never include molecular absorption
        std::optional<double> rain_mm_per_hr;
        bool foliage = false;
        std::optional<PenetrationCase> penetration;
        std::optional<double> fading_mu;       // Nakagami shape used for the fade margin
        std::optional<double> fade_percentile; // outage probability the margin protects against
        std::optional<SurfaceSpec> surface;
        ScatterGeometry surface_geometry{};
        LobeDomain lobe_domain = LobeDomain::planar;
    };

    struct ScenarioConfig
    {
        std::filesystem::path source; // empty when built from an in-memory document
        TablePaths table_paths;
        SimulationSettings simulation;
        std::optional<nlohmann::json> network; // validated section, resolved by build_network()
        std::optional<LinkScenario> link;
        std::optional<nlohmann::json> link_section; // raw form, for callers that layer overrides on top
    };

    // Parses and validates a scenario document. Relative table paths resolve against base_dir.
    ScenarioConfig parse_scenario(const nlohmann::json &doc, const std::filesystem::path &base_dir = {});
    ScenarioConfig load_scenario(const std::filesystem::path &file);

    // Builds the network scenario; the absorption table is taken from `tables`
    NetworkScenario build_network(const nlohmann::json &network, const TableSet &tables);

    // Default path-loss laws for a carrier: free-space intercept with exponents 2 (LOS) and 4 (NLOS)
    PathLossLaws default_pathloss(Frequency f);

    // Section parsers shared with the command line
    PatternSpec pattern_from_json(const nlohmann::json &doc, std::string_view what);
    std::optional<LosModel> los_model_from_json(const nlohmann::json &doc);
    LinkScenario link_from_json(const nlohmann::json &doc);

    // "a=1,b=x,c=1/2/3" -> {"a": 1, "b": "x", "c": [1, 2, 3]}; throws ConfigError on malformed input
    nlohmann::json parse_key_values(std::string_view text);

    BandKind parse_band_kind(std::string_view name);
    std::string to_string(BandKind kind);
}

#endif
