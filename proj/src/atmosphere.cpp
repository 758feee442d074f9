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

#include "mmwthz/atmosphere.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmwthz
{
    namespace
    {
        std::string ghz_string(double hz)
        {
            std::ostringstream os;
            os << hz * 1.0e-9 << " GHz";
            return os.str();
        }

        // Index i such that x lies in [xs[i], xs[i+1]]; caller guarantees xs.front() <= x <= xs.back()
        template <typename Range, typename Key>
        std::size_t bracket(const Range &anchors, double x, Key key)
        {
            auto it = std::upper_bound(anchors.begin(), anchors.end(), x,
                                       [&](double v, const auto &a) { return v < key(a); });
            std::size_t hi = static_cast<std::size_t>(it - anchors.begin());
            if (hi >= anchors.size())
                hi = anchors.size() - 1;
            return hi == 0 ? 0 : hi - 1;
        }

        void check_schema(const nlohmann::json &doc, std::initializer_list<std::string_view> keys, const char *what)
        {
            detail::require_object(doc, what);
            detail::reject_unknown_keys(doc, keys, what);
            if (detail::require<int>(doc, "schema_version") != 1)
                throw ConfigError(std::string("Unsupported schema_version in ") + what);
        }
    }

    double db_per_km_to_nepers_per_m(double db_per_km)
    {
        // 1 Np of power = 10*log10(e) dB
        return db_per_km / (10.0 * std::log10(std::numbers::e) * 1000.0);
    }

    // ---------------------------------------------------------------------------------------------

    AbsorptionSpectrum::AbsorptionSpectrum(std::vector<SpectrumAnchor> anchors) : anchors_(std::move(anchors))
    {
        if (anchors_.empty())
            throw ConfigError("Absorption spectrum needs at least one anchor");
        for (std::size_t i = 0; i < anchors_.size(); ++i)
        {
            const auto &a = anchors_[i];
            if (!(a.frequency_hz > 0.0) || !std::isfinite(a.frequency_hz))
                throw ConfigError("Absorption anchor frequency must be positive");
            if (!(a.db_per_km >= 0.0) || !std::isfinite(a.db_per_km))
                throw ConfigError("Absorption anchor attenuation must be non-negative");
            if (i > 0 && !(anchors_[i - 1].frequency_hz < a.frequency_hz))
                throw ConfigError("Absorption anchors must be strictly increasing in frequency");
        }
    }

    AbsorptionSpectrum AbsorptionSpectrum::reference()
    {
        return AbsorptionSpectrum({{23.0e9, 0.18},
                                   {60.0e9, 15.0},
                                   {119.0e9, 1.4},
                                   {183.0e9, 28.35},
                                   {323.0e9, 38.6},
                                   {600.0e9, 100.0},
                                   {800.0e9, 200.0}});
    }

    AbsorptionSpectrum AbsorptionSpectrum::constant(double db_per_km, Frequency f_low, Frequency f_high)
    {
        return AbsorptionSpectrum({{f_low.in_hz(), db_per_km}, {f_high.in_hz(), db_per_km}});
    }

    AbsorptionSpectrum AbsorptionSpectrum::from_json(const nlohmann::json &doc)
    {
        check_schema(doc, {"schema_version", "description", "anchors"}, "absorption spectrum");
        std::vector<SpectrumAnchor> anchors;
        for (const auto &a : detail::require_array(doc, "anchors"))
        {
            detail::require_object(a, "absorption anchor");
            detail::reject_unknown_keys(a, {"freq_ghz", "db_per_km"}, "absorption anchor");
            anchors.push_back({detail::require<double>(a, "freq_ghz") * 1.0e9, detail::require<double>(a, "db_per_km")});
        }
        return AbsorptionSpectrum(std::move(anchors));
    }

    AbsorptionSpectrum AbsorptionSpectrum::load(const std::filesystem::path &file)
    {
        return from_json(detail::read_json_file(file));
    }

    double AbsorptionSpectrum::specific_attenuation_db_per_km(Frequency f) const
    {
        const double x = f.in_hz();
        if (x < anchors_.front().frequency_hz || x > anchors_.back().frequency_hz)
            throw ExtrapolationError("Frequency " + ghz_string(x) + " outside absorption table [" +
                                     ghz_string(anchors_.front().frequency_hz) + ", " +
                                     ghz_string(anchors_.back().frequency_hz) + "]");

        const std::size_t i = bracket(anchors_, x, [](const SpectrumAnchor &a) { return a.frequency_hz; });
        const auto &lo = anchors_[i];
        if (x == lo.frequency_hz || i + 1 == anchors_.size())
            return lo.db_per_km;
        const auto &hi = anchors_[i + 1];
        if (x == hi.frequency_hz)
            return hi.db_per_km;

        const double t = (x - lo.frequency_hz) / (hi.frequency_hz - lo.frequency_hz);
        if (lo.db_per_km == 0.0 || hi.db_per_km == 0.0)
            return lo.db_per_km + t * (hi.db_per_km - lo.db_per_km);
        return std::exp(std::log(lo.db_per_km) + t * (std::log(hi.db_per_km) - std::log(lo.db_per_km)));
    }

    double AbsorptionSpectrum::absorption_coefficient(Frequency f) const
    {
        return db_per_km_to_nepers_per_m(specific_attenuation_db_per_km(f));
    }

    PowerRatio transmittance(double distance_m, Frequency f, const AbsorptionSpectrum &spectrum)
    {
        if (!(distance_m >= 0.0) || !std::isfinite(distance_m))
            throw DomainError("Transmittance distance must be finite and non-negative");
        const double kappa = spectrum.absorption_coefficient(f);
        return PowerRatio(std::exp(-kappa * distance_m));
    }

    // ---------------------------------------------------------------------------------------------

    RainTable::RainTable(std::vector<RainRegime> regimes) : regimes_(std::move(regimes))
    {
        if (regimes_.empty())
            throw ConfigError("Rain table needs at least one regime");
        std::sort(regimes_.begin(), regimes_.end(),
                  [](const RainRegime &a, const RainRegime &b) { return a.min_frequency_hz < b.min_frequency_hz; });
        for (const auto &r : regimes_)
        {
            if (!(r.min_frequency_hz > 0.0))
                throw ConfigError("Rain regime '" + r.name + "' needs a positive minimum frequency");
            if (r.anchors.size() < 2 || r.anchors.front().rate_mm_per_hr != 0.0 || r.anchors.front().db_per_km != 0.0)
                throw ConfigError("Rain regime '" + r.name + "' must start at (0 mm/hr, 0 dB/km) and have >= 2 anchors");
            for (std::size_t i = 1; i < r.anchors.size(); ++i)
            {
                if (!(r.anchors[i].rate_mm_per_hr > r.anchors[i - 1].rate_mm_per_hr))
                    throw ConfigError("Rain regime '" + r.name + "': rates must be strictly increasing");
                if (r.anchors[i].db_per_km < r.anchors[i - 1].db_per_km)
                    throw ConfigError("Rain regime '" + r.name + "': attenuation must be non-decreasing in rate");
            }
        }
    }

    RainTable RainTable::reference()
    {
        return RainTable({{"28-38 GHz", 28.0e9, {{0.0, 0.0}, {50.0, 7.0}}},
                          {">=60 GHz", 60.0e9, {{0.0, 0.0}, {2.0, 2.55}, {50.0, 20.0}, {150.0, 42.0}}}});
    }

    RainTable RainTable::from_json(const nlohmann::json &doc)
    {
        check_schema(doc, {"schema_version", "description", "regimes"}, "rain table");
        std::vector<RainRegime> regimes;
        for (const auto &r : detail::require_array(doc, "regimes"))
        {
            detail::require_object(r, "rain regime");
            detail::reject_unknown_keys(r, {"name", "min_freq_ghz", "anchors"}, "rain regime");
            RainRegime regime{detail::require<std::string>(r, "name"), detail::require<double>(r, "min_freq_ghz") * 1.0e9, {}};
            for (const auto &a : detail::require_array(r, "anchors"))
            {
                detail::require_object(a, "rain anchor");
                detail::reject_unknown_keys(a, {"rate_mm_per_hr", "db_per_km"}, "rain anchor");
                regime.anchors.push_back({detail::require<double>(a, "rate_mm_per_hr"), detail::require<double>(a, "db_per_km")});
            }
            regimes.push_back(std::move(regime));
        }
        return RainTable(std::move(regimes));
    }

    RainTable RainTable::load(const std::filesystem::path &file)
    {
        return from_json(detail::read_json_file(file));
    }

    const RainRegime &RainTable::regime_for(Frequency f) const
    {
        const double x = f.in_hz();
        if (x < regimes_.front().min_frequency_hz)
            throw ExtrapolationError("Rain attenuation unsupported below " + ghz_string(regimes_.front().min_frequency_hz) +
                                     " (requested " + ghz_string(x) + ")");
        const RainRegime *chosen = &regimes_.front();
        for (const auto &r : regimes_)
            if (x >= r.min_frequency_hz)
                chosen = &r;
        return *chosen;
    }

    double rain_attenuation(Frequency f, double rate_mm_per_hr, const RainTable &table)
    {
        if (!(rate_mm_per_hr >= 0.0) || !std::isfinite(rate_mm_per_hr))
            throw DomainError("Rain rate must be finite and non-negative");
        const auto &regime = table.regime_for(f);
        const auto &a = regime.anchors;
        if (rate_mm_per_hr > a.back().rate_mm_per_hr)
            throw ExtrapolationError("Rain rate above the largest tabulated rate for regime '" + regime.name + "'");

        const std::size_t i = bracket(a, rate_mm_per_hr, [](const RainAnchor &r) { return r.rate_mm_per_hr; });
        if (rate_mm_per_hr == a[i].rate_mm_per_hr || i + 1 == a.size())
            return a[i].db_per_km;
        if (rate_mm_per_hr == a[i + 1].rate_mm_per_hr)
            return a[i + 1].db_per_km;
        const double t = (rate_mm_per_hr - a[i].rate_mm_per_hr) / (a[i + 1].rate_mm_per_hr - a[i].rate_mm_per_hr);
        return a[i].db_per_km + t * (a[i + 1].db_per_km - a[i].db_per_km);
    }

    // ---------------------------------------------------------------------------------------------

    FoliageTable::FoliageTable(std::vector<FoliageAnchor> anchors) : anchors_(std::move(anchors))
    {
        if (anchors_.empty())
            throw ConfigError("Foliage table needs at least one anchor");
        for (std::size_t i = 0; i < anchors_.size(); ++i)
        {
            if (!(anchors_[i].loss_db >= 0.0))
                throw ConfigError("Foliage loss must be non-negative");
            if (i > 0 && !(anchors_[i - 1].frequency_hz < anchors_[i].frequency_hz))
                throw ConfigError("Foliage anchors must be strictly increasing in frequency");
        }
    }

    FoliageTable FoliageTable::reference()
    {
        return FoliageTable({{28.0e9, 17.0}, {60.0e9, 22.0}, {90.0e9, 25.0}});
    }

    FoliageTable FoliageTable::from_json(const nlohmann::json &doc)
    {
        check_schema(doc, {"schema_version", "description", "anchors"}, "foliage table");
        std::vector<FoliageAnchor> anchors;
        for (const auto &a : detail::require_array(doc, "anchors"))
        {
            detail::require_object(a, "foliage anchor");
            detail::reject_unknown_keys(a, {"freq_ghz", "loss_db"}, "foliage anchor");
            anchors.push_back({detail::require<double>(a, "freq_ghz") * 1.0e9, detail::require<double>(a, "loss_db")});
        }
        return FoliageTable(std::move(anchors));
    }

    FoliageTable FoliageTable::load(const std::filesystem::path &file)
    {
        return from_json(detail::read_json_file(file));
    }

    double foliage_loss(Frequency f, const FoliageTable &table)
    {
        const auto &a = table.anchors();
        const double x = f.in_hz();
        if (x < a.front().frequency_hz || x > a.back().frequency_hz)
            throw ExtrapolationError("Frequency " + ghz_string(x) + " outside foliage table");
        const std::size_t i = bracket(a, x, [](const FoliageAnchor &v) { return v.frequency_hz; });
        if (x == a[i].frequency_hz || i + 1 == a.size())
            return a[i].loss_db;
        const double t = (x - a[i].frequency_hz) / (a[i + 1].frequency_hz - a[i].frequency_hz);
        return a[i].loss_db + t * (a[i + 1].loss_db - a[i].loss_db);
    }

    // ---------------------------------------------------------------------------------------------

    double penetration_loss_db(PenetrationCase c)
    {
        switch (c)
        {
        case PenetrationCase::two_walls:
            return 24.4;
        case PenetrationCase::four_doors:
            return 45.1;
        }
        throw DomainError("Unknown penetration case");
    }

    std::optional<PenetrationCase> parse_penetration_case(std::string_view name)
    {
        if (name == "two_walls")
            return PenetrationCase::two_walls;
        if (name == "four_doors")
            return PenetrationCase::four_doors;
        return std::nullopt;
    }
}
