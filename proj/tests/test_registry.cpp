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

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mmwthz;

namespace
{
    struct GoldenBand
    {
        std::string name;
        std::vector<std::pair<std::string, std::string>> segments; // verbatim text
    };

    std::string trim(const std::string &s)
    {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }

    std::vector<GoldenBand> read_golden()
    {
        std::ifstream in(std::string(MMWTHZ_GOLDEN_DIR) + "/table1.txt");
        REQUIRE(in);
        std::vector<GoldenBand> out;
        std::string line;
        while (std::getline(in, line))
        {
            if (line.empty() || line[0] == '#')
                continue;
            const auto bar = line.find('|');
            GoldenBand g{trim(line.substr(0, bar)), {}};
            std::stringstream segs(line.substr(bar + 1));
            std::string seg;
            while (std::getline(segs, seg, ','))
            {
                seg = trim(seg);
                const auto dash = seg.find('-');
                g.segments.emplace_back(trim(seg.substr(0, dash)), trim(seg.substr(dash + 1)));
            }
            out.push_back(g);
        }
        return out;
    }

    BandRegistry shipped()
    {
        return BandRegistry::load(std::string(MMWTHZ_TEST_DATA_DIR) + "/bands.json");
    }
}

TEST_CASE("Shipped registry matches the checked-in band table", "[registry][golden]")
{
    const auto golden = read_golden();
    const auto reg = shipped();
    REQUIRE(reg.bands().size() == golden.size());
    for (std::size_t i = 0; i < golden.size(); ++i)
    {
        const auto &band = reg.bands()[i];
        INFO(golden[i].name);
        CHECK(band.name == golden[i].name);
        REQUIRE(band.segments.size() == golden[i].segments.size());
        for (std::size_t k = 0; k < band.segments.size(); ++k)
        {
            CHECK(band.segments[k].low_ghz == std::stod(golden[i].segments[k].first));
            CHECK(band.segments[k].high_ghz == std::stod(golden[i].segments[k].second));
        }
    }
}

TEST_CASE("Band lookup", "[registry]")
{
    const auto reg = shipped();

    const auto at_60_5 = reg.lookup(Frequency::ghz(60.5));
    REQUIRE(at_60_5.size() == 1);
    CHECK(at_60_5[0].name == "60 GHz lower band");
    CHECK(at_60_5[0].segments[0].low_ghz == 57.0);
    CHECK(at_60_5[0].segments[0].high_ghz == 64.0);

    const auto at_83 = reg.lookup(Frequency::ghz(83.0));
    REQUIRE(at_83.size() == 1);
    CHECK(at_83[0].name == "70/80/90 GHz band");

    CHECK(reg.lookup(Frequency::ghz(5.0)).empty());
    CHECK(reg.lookup(Frequency::ghz(500.0)).empty());
}

TEST_CASE("Segments are closed intervals", "[registry]")
{
    const auto reg = shipped();
    // 64 GHz is the upper edge of one band and the lower edge of the next
    const auto at_64 = reg.lookup(Frequency::ghz(64.0));
    REQUIRE(at_64.size() == 2);
    CHECK(at_64[0].name == "60 GHz lower band");
    CHECK(at_64[1].name == "60 GHz upper band");
    CHECK(reg.lookup(Frequency::ghz(31.3)).size() == 1);
    CHECK(reg.lookup(Frequency::ghz(31.30001)).empty());
    CHECK(reg.lookup(Frequency::ghz(450.0)).size() == 1);
    CHECK(reg.lookup(Frequency::ghz(300.0)).empty());
}

TEST_CASE("THz bands carry the THz category", "[registry]")
{
    const auto reg = shipped();
    for (const auto &b : reg.lookup(Frequency::ghz(260.0)))
        CHECK(b.category == BandCategory::thz);
    for (const auto &b : reg.lookup(Frequency::ghz(28.0)))
        CHECK(b.category == BandCategory::mmwave);
}

TEST_CASE("Registry schema validation", "[registry]")
{
    using nlohmann::json;
    const json good = {{"schema_version", 1},
                       {"bands", {{{"name", "x"}, {"category", "mmwave"}, {"segments_ghz", {{1.0, 2.0}}}}}}};
    CHECK_NOTHROW(BandRegistry::from_json(good));

    json bad_version = good;
    bad_version["schema_version"] = 2;
    CHECK_THROWS_AS(BandRegistry::from_json(bad_version), ConfigError);

    json unknown = good;
    unknown["extra"] = 1;
    CHECK_THROWS_AS(BandRegistry::from_json(unknown), ConfigError);

    json inverted = good;
    inverted["bands"][0]["segments_ghz"] = {{2.0, 1.0}};
    CHECK_THROWS_AS(BandRegistry::from_json(inverted), ConfigError);

    json duplicate = good;
    duplicate["bands"].push_back(good["bands"][0]);
    CHECK_THROWS_AS(BandRegistry::from_json(duplicate), ConfigError);

    CHECK_THROWS_AS(BandRegistry::load("/nonexistent/bands.json"), ConfigError);
}

TEST_CASE("Band JSON form", "[registry]")
{
    const auto reg = shipped();
    const auto j = to_json(reg.lookup(Frequency::ghz(60.5)).at(0));
    CHECK(j.at("name") == "60 GHz lower band");
    CHECK(j.at("category") == "mmwave");
    CHECK(j.at("segments_ghz").at(0).at(0) == 57.0);
}
