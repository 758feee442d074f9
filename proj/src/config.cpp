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

#include "mmwthz/config.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace mmwthz
{
    using nlohmann::json;
    using detail::optional;
    using detail::reject_unknown_keys;
    using detail::require;
    using detail::require_object;

    namespace
    {
        double positive(double v, const char *key)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(std::string("'") + key + "' must be positive and finite");
            return v;
        }

        double finite(double v, const char *key)
        {
            if (!std::isfinite(v))
                throw ConfigError(std::string("'") + key + "' must be finite");
            return v;
        }

        std::size_t count_value(const json &j, const char *key, std::size_t fallback)
        {
            if (!j.contains(key))
                return fallback;
            const auto &v = j.at(key);
            if (!v.is_number_integer() || v.get<long long>() < 1)
                throw ConfigError(std::string("'") + key + "' must be a positive integer");
            return v.get<std::size_t>();
        }

        int element_count(const json &j)
        {
            const auto n = count_value(j, "elements", 8);
            if (n > 1000000)
                throw ConfigError("'elements' is unreasonably large");
            return static_cast<int>(n);
        }

        std::vector<double> number_list(const json &j, const char *key)
        {
            const auto &arr = detail::require_array(j, key);
            std::vector<double> out;
            for (const auto &v : arr)
            {
                if (!v.is_number())
                    throw ConfigError(std::string("'") + key + "' must contain numbers only");
                out.push_back(v.get<double>());
            }
            return out;
        }

        PathLossLaw law_from_json(const json &j, const char *what)
        {
            require_object(j, what);
            reject_unknown_keys(j, {"c_db", "alpha"}, what);
            PathLossLaw law{db_to_linear(finite(require<double>(j, "c_db"), "c_db")).linear(),
                            positive(require<double>(j, "alpha"), "alpha")};
            return law;
        }

        std::optional<std::filesystem::path> table_path(const json &j, const char *key,
                                                        const std::filesystem::path &base)
        {
            if (!j.contains(key))
                return std::nullopt;
            std::filesystem::path p = require<std::string>(j, key);
            if (p.is_relative() && !base.empty())
                p = base / p;
            return p;
        }

        json parse_scalar(std::string_view text)
        {
            if (text.empty())
                throw ConfigError("Empty value in parameter list");
            double v = 0.0;
            const auto *first = text.data();
            const auto *last = text.data() + text.size();
            const auto res = std::from_chars(first, last, v);
            if (res.ec == std::errc() && res.ptr == last)
            {
                long long iv = 0;
                const auto ires = std::from_chars(first, last, iv);
                if (ires.ec == std::errc() && ires.ptr == last)
                    return iv;
                return v;
            }
            if (text == "true")
                return true;
            if (text == "false")
                return false;
            return std::string(text);
        }

        SurfaceSpec surface_from_json(const json &j, ScatterGeometry &geom)
        {
            require_object(j, "link.surface");
            reject_unknown_keys(j,
                                {"gamma_s", "h0_m", "h_rms_m", "alpha_r", "area_m2", "theta_i_rad", "theta_s_rad",
                                 "r_i_m", "r_s_m"},
                                "link.surface");
            SurfaceSpec s;
            s.gamma_s = optional<double>(j, "gamma_s", s.gamma_s);
            s.h0 = optional<double>(j, "h0_m", s.h0);
            s.h_rms = optional<double>(j, "h_rms_m", s.h_rms);
            s.alpha_r = optional<double>(j, "alpha_r", s.alpha_r);
            s.area_m2 = optional<double>(j, "area_m2", s.area_m2);
            geom.theta_i = optional<double>(j, "theta_i_rad", geom.theta_i);
            geom.theta_s = optional<double>(j, "theta_s_rad", geom.theta_i);
            geom.r_i = optional<double>(j, "r_i_m", geom.r_i);
            geom.r_s = optional<double>(j, "r_s_m", geom.r_s);
            try
            {
                s.validate();
                geom.validate();
            }
            catch (const DomainError &e)
            {
                throw ConfigError(std::string("link.surface: ") + e.what());
            }
            return s;
        }
    }

    BandKind parse_band_kind(std::string_view name)
    {
        if (name == "mmwave")
            return BandKind::mmwave;
        if (name == "thz")
            return BandKind::thz;
        throw ConfigError("Unknown band '" + std::string(name) + "' (expected mmwave or thz)");
    }

    std::string to_string(BandKind kind)
    {
        return kind == BandKind::mmwave ? "mmwave" : "thz";
    }

    TableSet load_tables(const TablePaths &paths)
    {
        const auto dir = data_directory();
        return TableSet{AbsorptionSpectrum::load(paths.absorption.value_or(dir / "absorption.json")),
                        RainTable::load(paths.rain.value_or(dir / "rain.json")),
                        FoliageTable::load(paths.foliage.value_or(dir / "foliage.json")),
                        BandRegistry::load(paths.bands.value_or(dir / "bands.json"))};
    }

    PathLossLaws default_pathloss(Frequency f)
    {
        const auto fs = PathLossLaw::free_space(f);
        return PathLossLaws{fs, PathLossLaw{fs.near_field_gain, 4.0}};
    }

    json parse_key_values(std::string_view text)
    {
        json out = json::object();
        while (!text.empty())
        {
            const auto comma = text.find(',');
            const auto item = text.substr(0, comma);
            text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
            if (item.empty())
                continue;
            const auto eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0)
                throw ConfigError("Parameter '" + std::string(item) + "' is not of the form key=value");
            const std::string key(item.substr(0, eq));
            const auto value = item.substr(eq + 1);
            if (out.contains(key))
                throw ConfigError("Parameter '" + key + "' given twice");
            if (value.find('/') != std::string_view::npos)
            {
                json arr = json::array();
                std::string_view rest = value;
                while (true)
                {
                    const auto slash = rest.find('/');
                    arr.push_back(parse_scalar(rest.substr(0, slash)));
                    if (slash == std::string_view::npos)
                        break;
                    rest = rest.substr(slash + 1);
                }
                out[key] = arr;
            }
            else
                out[key] = parse_scalar(value);
        }
        return out;
    }

    PatternSpec pattern_from_json(const json &j, std::string_view what)
    {
        const std::string where(what);
        require_object(j, where);
        const auto model = require<std::string>(j, "model");
        PatternSpec spec;
        auto allow = [&](std::initializer_list<std::string_view> keys) {
            std::vector<std::string_view> all{"model", "element_gain_db"};
            all.insert(all.end(), keys.begin(), keys.end());
            for (const auto &item : j.items())
                if (std::find(all.begin(), all.end(), item.key()) == all.end())
                    throw ConfigError("Unknown key '" + item.key() + "' in " + where + " (" + model + ")");
        };

        if (model == "isotropic")
        {
            allow({});
        }
        else if (model == "flattop")
        {
            allow({"main_gain_db", "side_gain_db", "theta_3db_rad"});
            spec.pattern = FlatTop{db_to_linear(require<double>(j, "main_gain_db")).linear(),
                                   db_to_linear(require<double>(j, "side_gain_db")).linear(),
                                   require<double>(j, "theta_3db_rad")};
        }
        else if (model == "gaussian")
        {
            allow({"main_gain_db", "side_gain_db", "eta_per_rad2"});
            spec.pattern = Gaussian{db_to_linear(require<double>(j, "main_gain_db")).linear(),
                                    db_to_linear(require<double>(j, "side_gain_db")).linear(),
                                    require<double>(j, "eta_per_rad2")};
        }
        else if (model == "ula")
        {
            allow({"elements", "spacing_over_lambda"});
            spec.pattern = UlaExact{element_count(j), optional<double>(j, "spacing_over_lambda", 0.5)};
        }
        else if (model == "sinc")
        {
            allow({"elements"});
            spec.pattern = SincApprox{element_count(j)};
        }
        else if (model == "cosine")
        {
            allow({"elements"});
            spec.pattern = Cosine{element_count(j)};
        }
        else if (model == "multilobe")
        {
            allow({"widths_rad", "gains_db"});
            const auto widths = number_list(j, "widths_rad");
            const auto gains = number_list(j, "gains_db");
            if (widths.size() != gains.size() || widths.empty())
                throw ConfigError(where + ": widths_rad and gains_db need the same non-zero length");
            MultiLobe m;
            for (std::size_t i = 0; i < widths.size(); ++i)
                m.lobes.push_back({widths[i], db_to_linear(gains[i]).linear()});
            spec.pattern = m;
        }
        else
            throw ConfigError(where + ": unknown pattern model '" + model + "'");

        spec.element_gain = db_to_linear(optional<double>(j, "element_gain_db", 0.0)).linear();
        try
        {
            validate(spec.pattern);
        }
        catch (const DomainError &e)
        {
            throw ConfigError(where + ": " + e.what());
        }
        return spec;
    }

    std::optional<LosModel> los_model_from_json(const json &j)
    {
        require_object(j, "los_model");
        const auto model = require<std::string>(j, "model");
        auto allow = [&](std::initializer_list<std::string_view> keys) {
            std::vector<std::string_view> all{"model"};
            all.insert(all.end(), keys.begin(), keys.end());
            for (const auto &item : j.items())
                if (std::find(all.begin(), all.end(), item.key()) == all.end())
                    throw ConfigError("Unknown key '" + item.key() + "' in los_model (" + model + ")");
        };

        std::optional<LosModel> out;
        if (model == "none")
        {
            allow({});
            return std::nullopt;
        }
        if (model == "uma" || model == "umi" || model == "uma_umi")
        {
            allow({"d1_m", "d2_m"});
            const auto base = model == "umi" ? UmaUmi::umi() : UmaUmi::uma();
            out = UmaUmi{optional<double>(j, "d1_m", base.d1), optional<double>(j, "d2_m", base.d2)};
        }
        else if (model == "nyu")
        {
            allow({"d1_m", "d2_m"});
            out = NyuSquared{optional<double>(j, "d1_m", 20.0), optional<double>(j, "d2_m", 160.0)};
        }
        else if (model == "boolean_rect")
        {
            allow({"density_per_m2", "mean_length_m", "mean_width_m"});
            out = BooleanRect{require<double>(j, "density_per_m2"), require<double>(j, "mean_length_m"),
                              require<double>(j, "mean_width_m")};
        }
        else if (model == "los_ball")
        {
            allow({"radius_m"});
            out = LosBall{require<double>(j, "radius_m")};
        }
        else if (model == "human_field")
        {
            allow({"density_per_m2", "body_radius_m", "form"});
            const auto form = optional<std::string>(j, "form", "as_written");
            HumanFieldForm f;
            if (form == "as_written")
                f = HumanFieldForm::as_written;
            else if (form == "void_probability")
                f = HumanFieldForm::void_probability;
            else
                throw ConfigError("Unknown human_field form '" + form + "'");
            out = HumanField{require<double>(j, "density_per_m2"), require<double>(j, "body_radius_m"), f};
        }
        else if (model == "self_block_cone")
        {
            allow({"cone_angle_rad"});
            out = SelfBlockCone{require<double>(j, "cone_angle_rad")};
        }
        else
            throw ConfigError("Unknown LOS model '" + model + "'");

        try
        {
            validate(*out);
        }
        catch (const DomainError &e)
        {
            throw ConfigError(std::string("los_model: ") + e.what());
        }
        return out;
    }

    LinkScenario link_from_json(const json &j)
    {
        require_object(j, "link");
        reject_unknown_keys(j,
                            {"band", "freq_ghz", "dist_m", "state", "tx_power_dbm", "tx_gain_db", "rx_gain_db",
                             "tx_pattern", "rx_pattern", "tx_offset_rad", "rx_offset_rad", "pathloss", "absorption", "rain_mm_per_hr", "foliage", "penetration", "fading_mu",
                             "fade_percentile", "surface", "lobe_domain"},
                            "link");
        LinkScenario link;
        link.band = parse_band_kind(optional<std::string>(j, "band", "mmwave"));
        link.frequency = Frequency::ghz(positive(require<double>(j, "freq_ghz"), "freq_ghz"));
        link.distance_m = positive(require<double>(j, "dist_m"), "dist_m");
        const auto state = optional<std::string>(j, "state", "los");
        if (state != "los" && state != "nlos")
            throw ConfigError("link.state must be los or nlos");
        link.state = state == "los" ? LinkState::los : LinkState::nlos;
        link.tx_power_dbm = finite(optional<double>(j, "tx_power_dbm", link.tx_power_dbm), "tx_power_dbm");
        // A pattern replaces the fixed gain: element gain times the pattern at the pointing offset
        auto antenna_gain_db = [&](const char *gain_key, const char *pattern_key, const char *offset_key) {
            if (j.contains(pattern_key))
            {
                if (j.contains(gain_key))
                    throw ConfigError(std::string("Give either '") + gain_key + "' or '" + pattern_key + "', not both");
                const auto spec = pattern_from_json(j.at(pattern_key), pattern_key);
                const double offset = finite(optional<double>(j, offset_key, 0.0), offset_key);
                return linear_to_db(spec.element_gain * gain_at_offset(spec.pattern, offset));
            }
            if (j.contains(offset_key))
                throw ConfigError(std::string("'") + offset_key + "' needs '" + pattern_key + "'");
            return finite(optional<double>(j, gain_key, 0.0), gain_key);
        };
        link.tx_gain_db = antenna_gain_db("tx_gain_db", "tx_pattern", "tx_offset_rad");
        link.rx_gain_db = antenna_gain_db("rx_gain_db", "rx_pattern", "rx_offset_rad");
        if (j.contains("pathloss"))
        {
            const auto &p = j.at("pathloss");
            require_object(p, "link.pathloss");
            reject_unknown_keys(p, {"los", "nlos"}, "link.pathloss");
            auto laws = default_pathloss(link.frequency);
            if (p.contains("los"))
                laws.los = law_from_json(p.at("los"), "link.pathloss.los");
            if (p.contains("nlos"))
                laws.nlos = law_from_json(p.at("nlos"), "link.pathloss.nlos");
            link.pathloss = laws;
        }
        link.absorption = optional<bool>(j, "absorption", true);
        if (j.contains("rain_mm_per_hr"))
        {
            const double r = require<double>(j, "rain_mm_per_hr");
            if (!(r >= 0.0))
                throw ConfigError("rain_mm_per_hr must be non-negative");
            link.rain_mm_per_hr = r;
        }
        link.foliage = optional<bool>(j, "foliage", false);
        if (j.contains("penetration"))
        {
            const auto name = require<std::string>(j, "penetration");
            link.penetration = parse_penetration_case(name);
            if (!link.penetration)
                throw ConfigError("Unknown penetration case '" + name + "'");
        }
        if (j.contains("fading_mu"))
            link.fading_mu = positive(require<double>(j, "fading_mu"), "fading_mu");
        if (j.contains("fade_percentile"))
        {
            const double p = require<double>(j, "fade_percentile");
            if (!(p > 0.0 && p < 1.0))
                throw ConfigError("fade_percentile must lie in (0, 1)");
            link.fade_percentile = p;
        }
        if (j.contains("surface"))
            link.surface = surface_from_json(j.at("surface"), link.surface_geometry);
        const auto domain = optional<std::string>(j, "lobe_domain", "planar");
        if (domain == "planar")
            link.lobe_domain = LobeDomain::planar;
        else if (domain == "hemisphere")
            link.lobe_domain = LobeDomain::hemisphere;
        else
            throw ConfigError("lobe_domain must be planar or hemisphere");
        return link;
    }

    NetworkScenario build_network(const json &j, const TableSet &tables)
    {
        require_object(j, "network");
        reject_unknown_keys(j,
                            {"band", "freq_ghz", "bs_density_per_m2", "window_radius_m", "tx_power_dbm",
                             "noise_power_dbm", "bandwidth_hz", "alignment", "interference", "self_block_cone_rad",
                             "los_model", "pathloss", "fading", "tx_pattern", "rx_pattern", "absorption",
                             "pinned_stations"},
                            "network");
        NetworkScenario sc;
        sc.band = parse_band_kind(optional<std::string>(j, "band", "mmwave"));
        sc.frequency = Frequency::ghz(positive(require<double>(j, "freq_ghz"), "freq_ghz"));
        sc.bs_density = require<double>(j, "bs_density_per_m2");
        if (!(sc.bs_density >= 0.0) || !std::isfinite(sc.bs_density))
            throw ConfigError("bs_density_per_m2 must be finite and non-negative");
        sc.window_radius_m = positive(optional<double>(j, "window_radius_m", 1000.0), "window_radius_m");
        sc.tx_power_w = dbm_to_watts(finite(optional<double>(j, "tx_power_dbm", 30.0), "tx_power_dbm"));
        sc.bandwidth_hz = positive(optional<double>(j, "bandwidth_hz", 1.0e9), "bandwidth_hz");
        // Thermal noise floor kT = -174 dBm/Hz by default
        const double thermal_dbm = -174.0 + 10.0 * std::log10(sc.bandwidth_hz);
        sc.noise_power_w = dbm_to_watts(finite(optional<double>(j, "noise_power_dbm", thermal_dbm), "noise_power_dbm"));

        const auto alignment = optional<std::string>(j, "alignment", "random_interferer_angles");
        if (alignment == "random_interferer_angles")
            sc.alignment = Alignment::random_interferer_angles;
        else if (alignment == "perfect_to_serving")
            sc.alignment = Alignment::perfect_to_serving;
        else
            throw ConfigError("Unknown alignment '" + alignment + "'");

        if (j.contains("interference"))
            sc.interference = require<bool>(j, "interference");
        sc.self_block_cone_rad = optional<double>(j, "self_block_cone_rad", 0.0);
        if (!(sc.self_block_cone_rad >= 0.0 && sc.self_block_cone_rad < 2.0 * pi))
            throw ConfigError("self_block_cone_rad must lie in [0, 2 pi)");

        if (j.contains("los_model"))
            sc.los_model = los_model_from_json(j.at("los_model"));

        sc.pathloss = default_pathloss(sc.frequency);
        if (j.contains("pathloss"))
        {
            const auto &p = j.at("pathloss");
            require_object(p, "network.pathloss");
            reject_unknown_keys(p, {"los", "nlos"}, "network.pathloss");
            if (p.contains("los"))
                sc.pathloss.los = law_from_json(p.at("los"), "network.pathloss.los");
            if (p.contains("nlos"))
                sc.pathloss.nlos = law_from_json(p.at("nlos"), "network.pathloss.nlos");
        }

        if (j.contains("fading"))
        {
            const auto &f = j.at("fading");
            require_object(f, "network.fading");
            reject_unknown_keys(f, {"mu_los", "mu_nlos"}, "network.fading");
            FadingSpec spec;
            spec.mu_los = positive(optional<double>(f, "mu_los", spec.mu_los), "mu_los");
            spec.mu_nlos = positive(optional<double>(f, "mu_nlos", spec.mu_nlos), "mu_nlos");
            sc.fading = spec;
        }

        PatternSpec iso;
        const auto tx = j.contains("tx_pattern") ? pattern_from_json(j.at("tx_pattern"), "tx_pattern") : iso;
        const auto rx = j.contains("rx_pattern") ? pattern_from_json(j.at("rx_pattern"), "rx_pattern") : iso;
        sc.tx_pattern = tx.pattern;
        sc.tx_element_gain = tx.element_gain;
        sc.rx_pattern = rx.pattern;
        sc.rx_element_gain = rx.element_gain;

        if (sc.band == BandKind::thz && optional<bool>(j, "absorption", true))
            sc.absorption = tables.absorption;
        else if (sc.band == BandKind::mmwave && j.contains("absorption"))
            throw ConfigError("network.absorption applies to THz scenarios only");

        if (j.contains("pinned_stations"))
            for (const auto &p : detail::require_array(j, "pinned_stations"))
            {
                require_object(p, "pinned station");
                reject_unknown_keys(p, {"distance_m", "bearing_rad", "state"}, "pinned station");
                PinnedStation pin;
                pin.distance_m = positive(require<double>(p, "distance_m"), "distance_m");
                pin.bearing_rad = finite(optional<double>(p, "bearing_rad", 0.0), "bearing_rad");
                if (p.contains("state"))
                {
                    const auto s = require<std::string>(p, "state");
                    if (s != "los" && s != "nlos")
                        throw ConfigError("Pinned station state must be los or nlos");
                    pin.state = s == "los" ? LinkState::los : LinkState::nlos;
                }
                sc.pinned.push_back(pin);
            }

        try
        {
            sc.validate();
        }
        catch (const DomainError &e)
        {
            throw ConfigError(std::string("network: ") + e.what());
        }
        return sc;
    }

    ScenarioConfig parse_scenario(const json &doc, const std::filesystem::path &base_dir)
    {
        require_object(doc, "scenario");
        reject_unknown_keys(doc, {"schema_version", "description", "tables", "simulation", "network", "link"},
                            "scenario");
        const int version = require<int>(doc, "schema_version");
        if (version != scenario_schema_version)
            throw ConfigError("Unsupported scenario schema_version " + std::to_string(version));
        if (doc.contains("description"))
            require<std::string>(doc, "description");

        ScenarioConfig cfg;
        if (doc.contains("tables"))
        {
            const auto &t = doc.at("tables");
            require_object(t, "tables");
            reject_unknown_keys(t, {"absorption_file", "rain_file", "foliage_file", "bands_file"}, "tables");
            cfg.table_paths.absorption = table_path(t, "absorption_file", base_dir);
            cfg.table_paths.rain = table_path(t, "rain_file", base_dir);
            cfg.table_paths.foliage = table_path(t, "foliage_file", base_dir);
            cfg.table_paths.bands = table_path(t, "bands_file", base_dir);
        }

        if (doc.contains("simulation"))
        {
            const auto &s = doc.at("simulation");
            require_object(s, "simulation");
            reject_unknown_keys(s, {"trials", "seed", "workers", "chunk_size", "thresholds_db"}, "simulation");
            cfg.simulation.trials = count_value(s, "trials", cfg.simulation.trials);
            cfg.simulation.workers = count_value(s, "workers", cfg.simulation.workers);
            cfg.simulation.chunk_size = count_value(s, "chunk_size", cfg.simulation.chunk_size);
            if (s.contains("seed"))
            {
                const auto &v = s.at("seed");
                if (!v.is_number_unsigned())
                    throw ConfigError("'seed' must be a non-negative integer");
                cfg.simulation.seed = v.get<std::uint64_t>();
            }
            if (s.contains("thresholds_db"))
            {
                cfg.simulation.thresholds_db = number_list(s, "thresholds_db");
                for (double t : cfg.simulation.thresholds_db)
                    finite(t, "thresholds_db");
            }
        }

        if (doc.contains("network"))
        {
            require_object(doc.at("network"), "network");
            cfg.network = doc.at("network");
        }
        if (doc.contains("link"))
        {
            cfg.link = link_from_json(doc.at("link"));
            cfg.link_section = doc.at("link");
        }
        return cfg;
    }

    ScenarioConfig load_scenario(const std::filesystem::path &file)
    {
        auto cfg = parse_scenario(detail::read_json_file(file), file.parent_path());
        cfg.source = file;
        return cfg;
    }
}
