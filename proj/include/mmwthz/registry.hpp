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

#ifndef MMWTHZ_REGISTRY_HPP
#define MMWTHZ_REGISTRY_HPP

#include "mmwthz/units.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace mmwthz
{
    enum class BandCategory
    {
        mmwave,
        thz
    };

    // Closed frequency interval [low, high]. Edges are kept as written in the data file (GHz)
    // and as whole Hz for containment tests.
    struct BandSegment
    {
        double low_ghz = 0.0;
        double high_ghz = 0.0;

        double low_hz() const;
        double high_hz() const;
        bool contains(Frequency f) const;
    };

    struct Band
    {
        std::string name;
        BandCategory category = BandCategory::mmwave;
        std::vector<BandSegment> segments;
        std::string remarks;
    };

    // Immutable after construction; concurrent lookups are safe.
    class BandRegistry
    {
    public:
        static constexpr int schema_version = 1;

        explicit BandRegistry(std::vector<Band> bands);

        // Throws ConfigError on schema violations
        static BandRegistry from_json(const nlohmann::json &doc);
        static BandRegistry load(const std::filesystem::path &file);

        // Loads bands.json from data_directory()
        static BandRegistry load_default();

        // Every band with at least one segment containing f, in file order
        std::vector<Band> lookup(Frequency f) const;

        const std::vector<Band> &bands() const { return bands_; }

    private:
        std::vector<Band> bands_;
    };

    std::string to_string(BandCategory c);
    nlohmann::json to_json(const Band &band);

    // Directory holding the shipped data tables: $MMWTHZ_DATA_DIR if set, else the build-time default
    std::filesystem::path data_directory();
}

#endif
