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

#include "mmwthz/linkbudget.hpp"
#include "mmwthz/channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mmwthz
{
    namespace
    {
        // Specific attenuation at or above which a mmWave carrier is flagged
        constexpr double absorption_peak_db_per_km = 10.0;

        double power_dbm(double watts)
        {
            return watts > 0.0 ? watts_to_dbm(watts) : -std::numeric_limits<double>::infinity();
        }

        nlohmann::json finite_or_null(double v)
        {
            return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        }

        std::string ghz_text(Frequency f)
        {
            std::ostringstream s;
            s << f.in_ghz() << " GHz";
            return s.str();
        }
    }

    LinkBudget compute_link_budget(const LinkScenario &link, const TableSet &tables)
    {
        if (!(link.distance_m > 0.0))
            throw DomainError("Link distance must be positive");

        LinkBudget b;
        const Frequency f = link.frequency;
        const double d = link.distance_m;
        b.factors.push_back({"tx_power_dbm", link.tx_power_dbm});
        b.factors.push_back({"tx_gain_db", link.tx_gain_db});
        b.factors.push_back({"rx_gain_db", link.rx_gain_db});

        if (link.band == BandKind::mmwave)
        {
            const auto laws = link.pathloss.value_or(default_pathloss(f));
            b.factors.push_back({"spreading_db", linear_to_db(laws[link.state].gain_at(d))});
            // mmWave budgets leave molecular absorption out; the table only feeds the peak warning
            const auto &spec = tables.absorption;
            if (f >= spec.min_frequency() && f <= spec.max_frequency())
            {
                const double att = spec.specific_attenuation_db_per_km(f);
                if (att >= absorption_peak_db_per_km)
                {
                    std::ostringstream w;
                    w << "Carrier " << ghz_text(f) << " lies on a molecular absorption peak (" << att
                      << " dB/km) that the mmWave budget does not include";
                    b.warnings.push_back(w.str());
                }
            }
        }
        else
        {
            if (link.state == LinkState::nlos)
                b.warnings.push_back("THz links are modelled as LOS only; the NLOS state was ignored");
            b.factors.push_back({"spreading_db", fspl(f, d).db()});
            if (link.absorption)
                b.factors.push_back(
                    {"absorption_db", -tables.absorption.specific_attenuation_db_per_km(f) * d / 1000.0});
        }

        if (link.rain_mm_per_hr)
            b.factors.push_back({"rain_db", -rain_attenuation(f, *link.rain_mm_per_hr, tables.rain) * d / 1000.0});
        if (link.foliage)
            b.factors.push_back({"foliage_db", -foliage_loss(f, tables.foliage)});
        if (link.penetration)
        {
            b.factors.push_back({"penetration_db", -penetration_loss_db(*link.penetration)});
            if (f.in_hz() != penetration_reference_frequency_hz)
                b.warnings.push_back("Penetration losses were measured at 28 GHz and are applied unscaled at " +
                                     ghz_text(f));
        }
        if (link.fade_percentile)
        {
            const double mu = link.fading_mu.value_or(FadingSpec{}.shape(link.state));
            b.factors.push_back({"fade_margin_db", linear_to_db(nakagami_power_quantile(mu, *link.fade_percentile))});
        }

        b.rx_power_dbm = 0.0;
        for (const auto &fct : b.factors)
            b.rx_power_dbm += fct.db;

        if (link.surface)
        {
            const auto &s = *link.surface;
            const auto &g = link.surface_geometry;
            const double pt = dbm_to_watts(link.tx_power_dbm);
            const double gt = db_to_linear(link.tx_gain_db).linear();
            const double gr = db_to_linear(link.rx_gain_db).linear();
            const double path = g.r_i + g.r_s;
            const bool absorb = link.band == BandKind::thz && link.absorption;
            const double tau = absorb ? transmittance(path, f, tables.absorption).linear() : 1.0;

            SurfacePaths sp;
            sp.roughness = classify(s, f, g.theta_i);
            sp.rho = rough_loss_factor(s, f, g.theta_i);
            const double gamma = sp.rho * s.gamma_s;
            sp.reflected_dbm = power_dbm(pt * gt * gr * fspl(f, path).linear() * gamma * gamma * tau);
            ScatterOptions opts;
            opts.normalization.domain = link.lobe_domain;
            opts.normalization.theta_r = g.theta_r();
            sp.scattered_dbm = power_dbm(received_scattered_power(s, g, f, pt, gt, gr, opts) * tau);
            b.surface = sp;
        }
        return b;
    }

    nlohmann::json to_json(const LinkScenario &link, const LinkBudget &budget)
    {
        nlohmann::json j;
        j["band"] = to_string(link.band);
        j["freq_ghz"] = link.frequency.in_ghz();
        j["dist_m"] = link.distance_m;
        j["state"] = link.state == LinkState::los ? "los" : "nlos";
        nlohmann::json factors = nlohmann::json::array();
        for (const auto &f : budget.factors)
            factors.push_back({{"name", f.name}, {"db", finite_or_null(f.db)}});
        j["factors"] = factors;
        j["rx_power_dbm"] = finite_or_null(budget.rx_power_dbm);
        j["warnings"] = budget.warnings;
        if (budget.surface)
        {
            const auto &s = *budget.surface;
            j["surface"] = {{"roughness", s.roughness == Roughness::smooth ? "smooth" : "rough"},
                            {"rho", s.rho},
                            {"reflected_dbm", finite_or_null(s.reflected_dbm)},
                            {"scattered_dbm", finite_or_null(s.scattered_dbm)}};
        }
        return j;
    }
}
