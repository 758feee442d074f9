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

#include "mmwthz/registry.hpp"
#include "json_util.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

#ifndef MMWTHZ_DEFAULT_DATA_DIR
#define MMWTHZ_DEFAULT_DATA_DIR "data"
#endif

namespace mmwthz
{
    namespace
    {
        // Whole-Hz edge so that e.g. 31.3 GHz compares equal to Frequency::ghz(31.3)
        double ghz_to_whole_hz(double ghz)
        {
            return std::round(ghz * 1.0e9);
        }

        BandCategory parse_category(const std::string &s)
        {
            if (s == "mmwave")
                return BandCategory::mmwave;
            if (s == "thz")
                return BandCategory::thz;
            throw ConfigError("Unknown band category '" + s + "'");
        }
    }

    double BandSegment::low_hz() const { return ghz_to_whole_hz(low_ghz); }
    double BandSegment::high_hz() const { return ghz_to_whole_hz(high_ghz); }

    bool BandSegment::contains(Frequency f) const
    {
        const double hz = std::round(f.in_hz());
        return hz >= low_hz() && hz <= high_hz();
    }

    BandRegistry::BandRegistry(std::vector<Band> bands) : bands_(std::move(bands))
    {
        for (const auto &b : bands_)
        {
            if (b.name.empty())
                throw ConfigError("Band without a name");
            if (b.segments.empty())
                throw ConfigError("Band '" + b.name + "' has no segments");
            // Segments may nest within a band (the 50 GHz entry lists 47.2-47.5 inside 45.5-50.2),
            // so only the ordering of each edge pair is enforced.
            for (const auto &s : b.segments)
                if (!(s.low_ghz > 0.0) || !(s.low_ghz < s.high_ghz))
                    throw ConfigError("Band '" + b.name + "' has a segment with low >= high");
        }
    }

    BandRegistry BandRegistry::from_json(const nlohmann::json &doc)
    {
        detail::require_object(doc, "band registry");
        detail::reject_unknown_keys(doc, {"schema_version", "description", "bands"}, "band registry");
        const int version = detail::require<int>(doc, "schema_version");
        if (version != schema_version)
            throw ConfigError("Unsupported band registry schema_version " + std::to_string(version));

        std::vector<Band> bands;
        std::set<std::string> names;
        for (const auto &entry : detail::require_array(doc, "bands"))
        {
            detail::require_object(entry, "band");
            detail::reject_unknown_keys(entry, {"name", "category", "segments_ghz", "remarks"}, "band");
            Band b;
            b.name = detail::require<std::string>(entry, "name");
            b.category = parse_category(detail::require<std::string>(entry, "category"));
            b.remarks = entry.value("remarks", std::string{});
            for (const auto &seg : detail::require_array(entry, "segments_ghz"))
            {
                if (!seg.is_array() || seg.size() != 2 || !seg[0].is_number() || !seg[1].is_number())
                    throw ConfigError("Band '" + b.name + "': each segment must be [low_ghz, high_ghz]");
                b.segments.push_back({seg[0].get<double>(), seg[1].get<double>()});
            }
            if (!names.insert(b.name).second)
                throw ConfigError("Duplicate band name '" + b.name + "'");
            bands.push_back(std::move(b));
        }
        return BandRegistry(std::move(bands));
    }

    BandRegistry BandRegistry::load(const std::filesystem::path &file)
    {
        return from_json(detail::read_json_file(file));
    }

    BandRegistry BandRegistry::load_default()
    {
        return load(data_directory() / "bands.json");
    }

    std::vector<Band> BandRegistry::lookup(Frequency f) const
    {
        std::vector<Band> out;
        for (const auto &b : bands_)
            for (const auto &s : b.segments)
                if (s.contains(f))
                {
                    out.push_back(b);
                    break;
                }
        return out;
    }

    std::string to_string(BandCategory c)
    {
        return c == BandCategory::mmwave ? "mmwave" : "thz";
    }

    nlohmann::json to_json(const Band &band)
    {
        nlohmann::json segs = nlohmann::json::array();
        for (const auto &s : band.segments)
            segs.push_back({s.low_ghz, s.high_ghz});
        return {{"name", band.name},
                {"category", to_string(band.category)},
                {"segments_ghz", segs},
                {"remarks", band.remarks}};
    }

    std::filesystem::path data_directory()
    {
        if (const char *env = std::getenv("MMWTHZ_DATA_DIR"); env != nullptr && *env != '\0')
            return env;
        return MMWTHZ_DEFAULT_DATA_DIR;
    }
}
