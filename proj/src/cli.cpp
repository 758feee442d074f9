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

#include "mmwthz/cli.hpp"
#include "mmwthz/config.hpp"
#include "mmwthz/linkbudget.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace mmwthz::cli
{
    using nlohmann::json;

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }

    namespace
    {
        struct UsageError : std::runtime_error
        {
            using std::runtime_error::runtime_error;
        };

        json number_or_null(double v)
        {
            return std::isfinite(v) ? json(v) : json(nullptr);
        }

        double db_or_neg_inf(double linear)
        {
            return linear > 0.0 ? linear_to_db(linear) : -std::numeric_limits<double>::infinity();
        }

        bool ci_mode_from_env()
        {
            const char *v = std::getenv("CI");
            if (v == nullptr)
                return false;
            const std::string s(v);
            return !s.empty() && s != "0" && s != "false";
        }

        // Options shared by every subcommand
        struct Globals
        {
            std::string out_path;
            std::string format;
            std::string config_path;
        };

        struct Context
        {
            explicit Context(const Globals &g) : globals(g) {}

            const Globals &globals;
            std::optional<ScenarioConfig> config;

            const TableSet &tables()
            {
                if (!tables_)
                    tables_.emplace(load_tables(config ? config->table_paths : TablePaths{}));
                return *tables_;
            }

            std::string format_or(const char *fallback) const
            {
                const std::string f = globals.format.empty() ? fallback : globals.format;
                if (f != "csv" && f != "json")
                    throw UsageError("--format must be csv or json");
                return f;
            }

        private:
            std::optional<TableSet> tables_;
        };

        std::string dump(const json &j)
        {
            return j.dump(2) + "\n";
        }

        // ---------------------------------------------------------------------------------------
        // bands
        // ---------------------------------------------------------------------------------------
        struct BandsArgs
        {
            double freq_ghz = 0.0;
            CLI::Option *freq = nullptr;
        };

        std::string run_bands(Context &ctx, const BandsArgs &a)
        {
            const auto &registry = ctx.tables().bands;
            std::vector<Band> bands;
            json j;
            if (a.freq->count() > 0)
            {
                const Frequency f = Frequency::ghz(a.freq_ghz);
                bands = registry.lookup(f);
                j["freq_ghz"] = a.freq_ghz;
            }
            else
                bands = registry.bands();

            if (ctx.format_or("json") == "csv")
            {
                std::ostringstream s;
                s << "band,category,low_ghz,high_ghz\n";
                for (const auto &b : bands)
                    for (const auto &seg : b.segments)
                        s << b.name << ',' << to_string(b.category) << ',' << format_number(seg.low_ghz) << ','
                          << format_number(seg.high_ghz) << '\n';
                return s.str();
            }
            j["bands"] = json::array();
            for (const auto &b : bands)
                j["bands"].push_back(to_json(b));
            return dump(j);
        }

        // ---------------------------------------------------------------------------------------
        // attenuate
        // ---------------------------------------------------------------------------------------
        struct AttenuateArgs
        {
            double freq_ghz = 0.0;
            double dist_m = 0.0;
            double rain = 0.0;
            CLI::Option *rain_opt = nullptr;
            bool foliage = false;
            std::string penetration;
        };

        std::string run_attenuate(Context &ctx, const AttenuateArgs &a)
        {
            const auto &t = ctx.tables();
            const Frequency f = Frequency::ghz(a.freq_ghz);
            if (!(a.dist_m >= 0.0) || !std::isfinite(a.dist_m))
                throw DomainError("--dist must be finite and non-negative");

            std::vector<std::pair<std::string, double>> rows;
            const double abs_db_km = t.absorption.specific_attenuation_db_per_km(f);
            const double tau = transmittance(a.dist_m, f, t.absorption).linear();
            const double abs_db = abs_db_km * a.dist_m / 1000.0;
            rows.emplace_back("absorption_db_per_km", abs_db_km);
            rows.emplace_back("absorption_db", abs_db);
            rows.emplace_back("transmittance", tau);
            double total = abs_db;
            if (a.rain_opt->count() > 0)
            {
                const double r = rain_attenuation(f, a.rain, t.rain);
                rows.emplace_back("rain_db_per_km", r);
                rows.emplace_back("rain_db", r * a.dist_m / 1000.0);
                total += r * a.dist_m / 1000.0;
            }
            if (a.foliage)
            {
                const double l = foliage_loss(f, t.foliage);
                rows.emplace_back("foliage_db", l);
                total += l;
            }
            if (!a.penetration.empty())
            {
                const auto c = parse_penetration_case(a.penetration);
                if (!c)
                    throw UsageError("--penetration must be two_walls or four_doors");
                rows.emplace_back("penetration_db", penetration_loss_db(*c));
                total += penetration_loss_db(*c);
            }
            rows.emplace_back("total_db", total);

            if (ctx.format_or("json") == "csv")
            {
                std::ostringstream s;
                s << "quantity,value\n";
                s << "freq_ghz," << format_number(a.freq_ghz) << "\ndist_m," << format_number(a.dist_m) << '\n';
                for (const auto &[k, v] : rows)
                    s << k << ',' << format_number(v) << '\n';
                return s.str();
            }
            json j{{"freq_ghz", a.freq_ghz}, {"dist_m", a.dist_m}};
            for (const auto &[k, v] : rows)
                j[k] = v;
            return dump(j);
        }

        // ---------------------------------------------------------------------------------------
        // losprob
        // ---------------------------------------------------------------------------------------
        struct LosArgs
        {
            std::string model;
            std::map<std::string, double> values;
            std::map<std::string, CLI::Option *> opts;
            std::string form;
            std::string params;
            double dmax = 200.0;
            double step = 1.0;
        };

        std::string canonical_los_name(const std::string &m)
        {
            static const std::map<std::string, std::string> aliases{
                {"uma", "uma"},         {"umi", "umi"},         {"uma_umi", "uma_umi"},
                {"nyu", "nyu"},         {"boolean", "boolean_rect"}, {"boolean_rect", "boolean_rect"},
                {"ball", "los_ball"},   {"los_ball", "los_ball"},   {"human", "human_field"},
                {"human_field", "human_field"}, {"cone", "self_block_cone"}, {"self_block_cone", "self_block_cone"}};
            const auto it = aliases.find(m);
            if (it == aliases.end())
                throw UsageError("Unknown --model '" + m + "'");
            return it->second;
        }

        std::string run_losprob(Context &ctx, const LosArgs &a)
        {
            const std::string model = canonical_los_name(a.model);
            // Flag name -> key understood by the scenario parser
            static const std::map<std::string, std::string> keys{
                {"d1", "d1_m"},           {"d2", "d2_m"},           {"density", "density_per_m2"},
                {"mean-length", "mean_length_m"}, {"mean-width", "mean_width_m"}, {"radius", "radius_m"},
                {"body-radius", "body_radius_m"}, {"cone-angle", "cone_angle_rad"}};
            json doc = parse_key_values(a.params);
            if (doc.contains("model"))
                throw UsageError("Give the LOS model with --model, not in --params");
            doc["model"] = model;
            for (const auto &[flag, key] : keys)
                if (a.opts.at(flag)->count() > 0)
                    doc[key] = a.values.at(flag);
            if (!a.form.empty())
                doc["form"] = a.form;
            const auto los = los_model_from_json(doc);

            if (!(a.dmax >= 0.0) || !(a.step > 0.0) || !std::isfinite(a.dmax))
                throw UsageError("--dmax must be non-negative and --step positive");
            const auto n = static_cast<std::size_t>(std::floor(a.dmax / a.step * (1.0 + 1e-12))) + 1;
            if (n > 10000000)
                throw UsageError("Too many distance samples");

            std::vector<std::pair<double, double>> rows;
            rows.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                const double d = static_cast<double>(i) * a.step;
                rows.emplace_back(d, p_los(*los, d).value());
            }

            if (ctx.format_or("csv") == "json")
            {
                json j{{"model", model_name(*los)}, {"rows", json::array()}};
                for (const auto &[d, p] : rows)
                    j["rows"].push_back({{"d_m", d}, {"p_los", p}});
                return dump(j);
            }
            std::ostringstream s;
            s << "d_m,p_los\n";
            for (const auto &[d, p] : rows)
                s << format_number(d) << ',' << format_number(p) << '\n';
            return s.str();
        }

        // ---------------------------------------------------------------------------------------
        // scatter
        // ---------------------------------------------------------------------------------------
        struct ScatterArgs
        {
            double freq_ghz = 0.0;
            SurfaceSpec surface;
            ScatterGeometry geom;
            CLI::Option *theta_s = nullptr;
            double tx_power_dbm = 0.0;
            double tx_gain_db = 0.0;
            double rx_gain_db = 0.0;
            std::string domain = "planar";
        };

        std::string run_scatter(Context &ctx, ScatterArgs a)
        {
            const Frequency f = Frequency::ghz(a.freq_ghz);
            if (a.theta_s->count() == 0)
                a.geom.theta_s = a.geom.theta_i;
            a.surface.validate();
            a.geom.validate();

            ScatterOptions opts;
            if (a.domain == "hemisphere")
                opts.normalization.domain = LobeDomain::hemisphere;
            else if (a.domain != "planar")
                throw UsageError("--domain must be planar or hemisphere");
            opts.normalization.theta_r = a.geom.theta_r();

            const double h_c = critical_height(f, a.geom.theta_i);
            const auto split = power_split(a.surface, f, a.geom.theta_i, 1.0);
            const double rho = rough_loss_factor(a.surface, f, a.geom.theta_i);
            const double pt = dbm_to_watts(a.tx_power_dbm);
            const double pr = received_scattered_power(a.surface, a.geom, f, pt, db_to_linear(a.tx_gain_db).linear(),
                                                       db_to_linear(a.rx_gain_db).linear(), opts);

            std::vector<std::pair<std::string, json>> rows{
                {"freq_ghz", a.freq_ghz},
                {"theta_i_rad", a.geom.theta_i},
                {"theta_s_rad", a.geom.theta_s},
                {"critical_height_m", h_c},
                {"roughness", classify(a.surface, f, a.geom.theta_i) == Roughness::smooth ? "smooth" : "rough"},
                {"rho", rho},
                {"reflection_coefficient", rho * a.surface.gamma_s},
                {"S2", split.scattering_coefficient},
                {"reflected_dB", number_or_null(db_or_neg_inf(split.reflected))},
                {"scattered_dB", number_or_null(db_or_neg_inf(split.scattered))},
                {"f_alpha", ds_normalization(a.surface.alpha_r, opts.normalization)},
                {"lobe", ds_lobe(a.surface.alpha_r, a.geom.psi())},
                {"p_r_dBm", number_or_null(db_or_neg_inf(pr) + 30.0)}};

            if (ctx.format_or("json") == "csv")
            {
                std::ostringstream s;
                s << "quantity,value\n";
                for (const auto &[k, v] : rows)
                {
                    s << k << ',';
                    if (v.is_number())
                        s << format_number(v.get<double>());
                    else if (v.is_string())
                        s << v.get<std::string>();
                    s << '\n';
                }
                return s.str();
            }
            json j = json::object();
            for (const auto &[k, v] : rows)
                j[k] = v;
            return dump(j);
        }

        // ---------------------------------------------------------------------------------------
        // pattern
        // ---------------------------------------------------------------------------------------
        struct PatternArgs
        {
            std::string model;
            std::string params;
            double start = -pi;
            double stop = pi;
            std::size_t points = 361;
        };

        std::string run_pattern(Context &ctx, const PatternArgs &a)
        {
            json doc = parse_key_values(a.params);
            if (doc.contains("model"))
                throw UsageError("Give the pattern model with --model, not in --params");
            doc["model"] = a.model;
            const auto spec = pattern_from_json(doc, "pattern");
            if (a.points < 1 || !(a.stop >= a.start) || !std::isfinite(a.start) || !std::isfinite(a.stop))
                throw UsageError("Sweep needs --start <= --stop and at least one point");

            std::vector<std::pair<double, double>> rows;
            for (std::size_t i = 0; i < a.points; ++i)
            {
                const double t = a.points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(a.points - 1);
                const double angle = a.start + t * (a.stop - a.start);
                const double g = spec.element_gain * gain_at_offset(spec.pattern, angle);
                rows.emplace_back(angle, db_or_neg_inf(g));
            }

            if (ctx.format_or("csv") == "json")
            {
                json j{{"model", pattern_name(spec.pattern)}};
                if (doc.at("model") == "isotropic")
                    j["model"] = "isotropic";
                try
                {
                    j["hpbw"] = hpbw(spec.pattern);
                    j["hpbw_units"] = uses_cosine_direction(spec.pattern) ? "cosine_direction" : "rad";
                }
                catch (const DomainError &)
                {
                    j["hpbw"] = nullptr;
                    j["hpbw_units"] = nullptr;
                }
                j["samples"] = json::array();
                for (const auto &[angle, g] : rows)
                    j["samples"].push_back({{"angle_rad", angle}, {"gain_db", number_or_null(g)}});
                return dump(j);
            }
            std::ostringstream s;
            s << "angle_rad,gain_db\n";
            for (const auto &[angle, g] : rows)
                s << format_number(angle) << ',' << format_number(g) << '\n';
            return s.str();
        }

        // ---------------------------------------------------------------------------------------
        // linkbudget
        // ---------------------------------------------------------------------------------------
        struct LinkArgs
        {
            std::map<std::string, double> numbers;
            std::map<std::string, CLI::Option *> number_opts;
            std::string band, state, penetration, surface, domain, pattern_tx, pattern_rx;
            bool foliage = false;
            bool no_absorption = false;
        };

        // "model" or "model:key=value,..." -> pattern document
        json pattern_argument(const std::string &text)
        {
            const auto colon = text.find(':');
            json doc = parse_key_values(colon == std::string::npos ? "" : text.substr(colon + 1));
            doc["model"] = text.substr(0, colon);
            return doc;
        }

        std::string run_linkbudget(Context &ctx, const LinkArgs &a)
        {
            // Flags are layered over the scenario's link section, then parsed by the same validator
            json doc = json::object();
            if (ctx.config && ctx.config->link_section)
                doc = *ctx.config->link_section;
            static const std::map<std::string, std::string> keys{
                {"freq", "freq_ghz"},         {"dist", "dist_m"},           {"pt-dbm", "tx_power_dbm"},
                {"tx-gain-db", "tx_gain_db"}, {"rx-gain-db", "rx_gain_db"}, {"rain", "rain_mm_per_hr"},
                {"fading-mu", "fading_mu"},   {"fade-percentile", "fade_percentile"},
                {"tx-offset", "tx_offset_rad"}, {"rx-offset", "rx_offset_rad"}};
            for (const auto &[flag, key] : keys)
                if (a.number_opts.at(flag)->count() > 0)
                    doc[key] = a.numbers.at(flag);
            if (!a.band.empty())
                doc["band"] = a.band;
            if (!a.state.empty())
                doc["state"] = a.state;
            if (!a.penetration.empty())
                doc["penetration"] = a.penetration;
            if (a.foliage)
                doc["foliage"] = true;
            if (a.no_absorption)
                doc["absorption"] = false;
            if (!a.surface.empty())
                doc["surface"] = parse_key_values(a.surface);
            if (!a.pattern_tx.empty())
                doc["tx_pattern"] = pattern_argument(a.pattern_tx);
            if (!a.pattern_rx.empty())
                doc["rx_pattern"] = pattern_argument(a.pattern_rx);
            if (!a.domain.empty())
                doc["lobe_domain"] = a.domain;
            if (!doc.contains("freq_ghz") || !doc.contains("dist_m"))
                throw UsageError("linkbudget needs --freq and --dist (or a link section in --config)");

            const auto link = link_from_json(doc);
            const auto budget = compute_link_budget(link, ctx.tables());
            if (ctx.format_or("json") == "csv")
            {
                std::ostringstream s;
                s << "factor,db\n";
                for (const auto &f : budget.factors)
                    s << f.name << ',' << format_number(f.db) << '\n';
                s << "rx_power_dbm," << format_number(budget.rx_power_dbm) << '\n';
                if (budget.surface)
                {
                    s << "surface_reflected_dbm," << format_number(budget.surface->reflected_dbm) << '\n';
                    s << "surface_scattered_dbm," << format_number(budget.surface->scattered_dbm) << '\n';
                }
                return s.str();
            }
            return dump(to_json(link, budget));
        }

        // ---------------------------------------------------------------------------------------
        // simulate
        // ---------------------------------------------------------------------------------------
        struct SimulateArgs
        {
            std::uint64_t seed = 0;
            CLI::Option *seed_opt = nullptr;
            std::size_t trials = 0;
            CLI::Option *trials_opt = nullptr;
            std::size_t workers = 0;
            CLI::Option *workers_opt = nullptr;
            std::string summary_path;
            bool ci = false;
        };

        json summary_json(const NetworkScenario &sc, const SimResult &r, const SimulationOptions &opts)
        {
            json j;
            j["band"] = to_string(sc.band);
            j["freq_ghz"] = sc.frequency.in_ghz();
            j["trials"] = r.trials;
            j["seed"] = r.seed;
            j["chunk_size"] = opts.chunk_size;
            j["outages"] = r.outages;
            j["outage_fraction"] = static_cast<double>(r.outages) / static_cast<double>(r.trials);
            j["mean_rate_bps"] = r.mean_rate_bps;
            j["interference"] = sc.interference_enabled();
            j["coverage"] = json::array();
            for (const auto &c : r.coverage)
                j["coverage"].push_back({{"threshold_db", c.threshold_db}, {"probability", c.probability}});
            return j;
        }

        std::string run_simulate(Context &ctx, const SimulateArgs &a)
        {
            if (!ctx.config)
                throw UsageError("simulate needs --config <scenario.json>");
            if (!ctx.config->network)
                throw ConfigError("Scenario has no network section");
            const bool ci = a.ci || ci_mode_from_env();
            if (ci && a.seed_opt->count() == 0)
                throw UsageError("--seed is mandatory in CI mode");

            const auto scenario = build_network(*ctx.config->network, ctx.tables());
            const auto &settings = ctx.config->simulation;
            const std::uint64_t seed = a.seed_opt->count() > 0 ? a.seed : settings.seed.value_or(1);
            const std::size_t trials = a.trials_opt->count() > 0 ? a.trials : settings.trials;
            SimulationOptions opts;
            opts.workers = a.workers_opt->count() > 0 ? a.workers : settings.workers;
            opts.chunk_size = settings.chunk_size;
            opts.thresholds_db = settings.thresholds_db;

            const auto result = simulate(scenario, trials, seed, opts);
            const json summary = summary_json(scenario, result, opts);
            if (!a.summary_path.empty())
            {
                std::ofstream f(a.summary_path);
                if (!f)
                    throw ConfigError("Cannot write summary to '" + a.summary_path + "'");
                f << dump(summary);
            }
            if (ctx.format_or("csv") == "json")
                return dump(summary);
            std::ostringstream s;
            s << "threshold_db,coverage\n";
            for (const auto &c : result.coverage)
                s << format_number(c.threshold_db) << ',' << format_number(c.probability) << '\n';
            return s.str();
        }

        void report(std::ostream &err, int code, const char *kind, const std::string &message)
        {
            json j{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
            err << j.dump() << '\n';
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"mmWave / THz propagation toolkit", "mmwthz"};
        app.fallthrough();
        app.require_subcommand(1);

        Globals g;
        app.add_option("--out", g.out_path, "Write the result to this file instead of stdout");
        app.add_option("--format", g.format, "Output format: csv or json");
        app.add_option("--config", g.config_path, "Scenario file (also supplies shared table paths)");

        std::function<std::string(Context &)> action;

        BandsArgs bands;
        auto *sc_bands = app.add_subcommand("bands", "Look up candidate bands containing a frequency");
        bands.freq = sc_bands->add_option("--freq", bands.freq_ghz, "Frequency [GHz]; omit to list all bands");
        sc_bands->callback([&] { action = [&](Context &c) { return run_bands(c, bands); }; });

        AttenuateArgs att;
        auto *sc_att = app.add_subcommand("attenuate", "Molecular absorption, rain, foliage and penetration losses");
        sc_att->add_option("--freq", att.freq_ghz, "Frequency [GHz]")->required();
        sc_att->add_option("--dist", att.dist_m, "Path length [m]")->required();
        att.rain_opt = sc_att->add_option("--rain", att.rain, "Rain rate [mm/hr]");
        sc_att->add_flag("--foliage", att.foliage, "Add the foliage loss");
        sc_att->add_option("--penetration", att.penetration, "two_walls or four_doors");
        sc_att->callback([&] { action = [&](Context &c) { return run_attenuate(c, att); }; });

        LosArgs los;
        auto *sc_los = app.add_subcommand("losprob", "LOS probability versus link distance (CSV d_m,p_los)");
        sc_los->add_option("--model", los.model, "uma, umi, nyu, boolean, ball, human or cone")->required();
        for (const char *flag : {"d1", "d2", "density", "mean-length", "mean-width", "radius", "body-radius",
                                 "cone-angle"})
        {
            los.values[flag] = 0.0;
            los.opts[flag] = sc_los->add_option(std::string("--") + flag, los.values[flag]);
        }
        sc_los->add_option("--params", los.params, "Model parameters as key=value list, e.g. d1_m=18,d2_m=63");
        sc_los->add_option("--form", los.form, "Human-field form: as_written or void_probability");
        sc_los->add_option("--dmax", los.dmax, "Largest distance [m]");
        sc_los->add_option("--step", los.step, "Distance step [m]");
        sc_los->callback([&] { action = [&](Context &c) { return run_losprob(c, los); }; });

        ScatterArgs sca;
        auto *sc_sca = app.add_subcommand("scatter", "Rough-surface reflection and directive scattering");
        sc_sca->add_option("--freq", sca.freq_ghz, "Frequency [GHz]")->required();
        sc_sca->add_option("--theta-i", sca.geom.theta_i, "Incidence angle [rad]");
        sca.theta_s = sc_sca->add_option("--theta-s", sca.geom.theta_s, "Observation angle [rad]");
        sc_sca->add_option("--ri,--r-i", sca.geom.r_i, "Transmitter to surface [m]");
        sc_sca->add_option("--rs,--r-s", sca.geom.r_s, "Surface to receiver [m]");
        sc_sca->add_option("--gamma-s,--gamma", sca.surface.gamma_s, "Smooth-surface reflection coefficient");
        sc_sca->add_option("--h0", sca.surface.h0, "Protuberance height [m]");
        sc_sca->add_option("--hrms", sca.surface.h_rms, "RMS height [m]");
        sc_sca->add_option("--alpha-r,--alpha", sca.surface.alpha_r, "Scattering lobe exponent");
        sc_sca->add_option("--area", sca.surface.area_m2, "Scattering area [m^2]");
        sc_sca->add_option("--tx-power-dbm", sca.tx_power_dbm, "Transmit power [dBm]");
        sc_sca->add_option("--tx-gain-db", sca.tx_gain_db, "Transmit antenna gain [dB]");
        sc_sca->add_option("--rx-gain-db", sca.rx_gain_db, "Receive antenna gain [dB]");
        sc_sca->add_option("--domain", sca.domain, "Lobe normalisation domain: planar or hemisphere");
        sc_sca->callback([&] { action = [&](Context &c) { return run_scatter(c, sca); }; });

        PatternArgs pat;
        auto *sc_pat = app.add_subcommand("pattern", "Antenna pattern sweep (CSV angle_rad,gain_db)");
        sc_pat->add_option("--model", pat.model, "isotropic, ula, sinc, flattop, multilobe, gaussian or cosine")
            ->required();
        sc_pat->add_option("--params", pat.params, "Comma-separated key=value list, e.g. elements=16");
        sc_pat->add_option("--start", pat.start, "First offset angle [rad]");
        sc_pat->add_option("--stop", pat.stop, "Last offset angle [rad]");
        sc_pat->add_option("--points", pat.points, "Number of sweep points");
        sc_pat->callback([&] { action = [&](Context &c) { return run_pattern(c, pat); }; });

        LinkArgs lb;
        auto *sc_lb = app.add_subcommand("linkbudget", "Per-factor link budget report");
        const std::pair<const char *, const char *> lb_flags[] = {
            {"freq", "Frequency [GHz]"},
            {"dist", "Link distance [m]"},
            {"pt-dbm", "Transmit power [dBm]"},
            {"tx-gain-db", "Transmit antenna gain [dB]"},
            {"rx-gain-db", "Receive antenna gain [dB]"},
            {"tx-offset", "Transmit pointing offset [rad], with --pattern-tx"},
            {"rx-offset", "Receive pointing offset [rad], with --pattern-rx"},
            {"rain", "Rain rate [mm/hr]"},
            {"fading-mu", "Nakagami shape for the fade margin"},
            {"fade-percentile", "Outage probability protected by the fade margin"}};
        for (const auto &[flag, help] : lb_flags)
        {
            lb.numbers[flag] = 0.0;
            std::string names = std::string("--") + flag;
            if (std::string(flag) == "pt-dbm")
                names += ",--tx-power-dbm";
            lb.number_opts[flag] = sc_lb->add_option(names, lb.numbers[flag], help);
        }
        sc_lb->add_option("--pattern-tx", lb.pattern_tx, "Transmit pattern, e.g. flattop:main_gain_db=20,side_gain_db=-10,theta_3db_rad=0.1");
        sc_lb->add_option("--pattern-rx", lb.pattern_rx, "Receive pattern, same syntax as --pattern-tx");
        sc_lb->add_option("--band", lb.band, "mmwave or thz");
        sc_lb->add_option("--state", lb.state, "los or nlos");
        sc_lb->add_option("--penetration", lb.penetration, "two_walls or four_doors");
        sc_lb->add_flag("--foliage", lb.foliage, "Add the foliage loss");
        sc_lb->add_flag("--no-absorption", lb.no_absorption, "Ignore molecular absorption");
        sc_lb->add_option("--surface", lb.surface, "Surface path parameters, e.g. gamma_s=0.7,h_rms_m=1e-4,r_i_m=5");
        sc_lb->add_option("--domain", lb.domain, "Lobe normalisation domain: planar or hemisphere");
        sc_lb->callback([&] { action = [&](Context &c) { return run_linkbudget(c, lb); }; });

        SimulateArgs sim;
        auto *sc_sim = app.add_subcommand("simulate", "Monte-Carlo coverage simulation (CSV threshold_db,coverage)");
        sim.seed_opt = sc_sim->add_option("--seed", sim.seed, "Random seed");
        sim.trials_opt = sc_sim->add_option("--trials", sim.trials, "Number of network realisations");
        sim.workers_opt = sc_sim->add_option("--workers", sim.workers, "Worker threads");
        sc_sim->add_option("--summary", sim.summary_path, "Also write the JSON summary to this file");
        sc_sim->add_flag("--ci", sim.ci, "CI mode: --seed becomes mandatory");
        sc_sim->callback([&] { action = [&](Context &c) { return run_simulate(c, sim); }; });

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            try
            {
                app.parse(reversed);
            }
            catch (const CLI::Success &e)
            {
                app.exit(e, out, err);
                return ok;
            }
            catch (const CLI::ParseError &e)
            {
                report(err, usage, "usage", e.what());
                return usage;
            }

            Context ctx(g);
            if (!g.config_path.empty())
                ctx.config = load_scenario(g.config_path);
            const std::string text = action(ctx);

            if (g.out_path.empty())
                out << text;
            else
            {
                std::ofstream f(g.out_path, std::ios::binary);
                if (!f || !(f << text))
                    throw ConfigError("Cannot write output to '" + g.out_path + "'");
            }
            return ok;
        }
        catch (const UsageError &e)
        {
            report(err, usage, "usage", e.what());
            return usage;
        }
        catch (const DomainError &e)
        {
            report(err, usage, "domain", e.what());
            return usage;
        }
        catch (const ConfigError &e)
        {
            report(err, config, "config", e.what());
            return config;
        }
        catch (const ExtrapolationError &e)
        {
            report(err, numerical, "extrapolation", e.what());
            return numerical;
        }
        catch (const NumericalError &e)
        {
            report(err, numerical, "numerical", e.what());
            return numerical;
        }
        catch (const json::exception &e)
        {
            report(err, config, "config", e.what());
            return config;
        }
        catch (const std::exception &e)
        {
            report(err, numerical, "internal", e.what());
            return numerical;
        }
    }
}
