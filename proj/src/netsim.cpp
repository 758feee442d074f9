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

#include "mmwthz/netsim.hpp"
#include "mmwthz/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mmwthz
{
    namespace
    {
        struct Station
        {
            double distance = 0.0;
            double bearing = 0.0;
            LinkState state = LinkState::los;
            double tx_offset = 0.0; // interferer beam direction relative to the user
            double fade = 1.0;
            double mean_power = 0.0; // at perfect alignment, no fading
        };

        // Everything a trial needs that does not change between trials
        struct Prepared
        {
            const NetworkScenario &sc;
            double expected_count;
        };

        double draw_fade(const NetworkScenario &sc, LinkState s, Rng &rng)
        {
            if (sc.band != BandKind::mmwave || !sc.fading)
                return 1.0;
            return sample_nakagami_power(sc.fading->shape(s), rng);
        }

        // One realisation. Random variates are consumed in a fixed order per station:
        // radius, bearing, LOS draw, interferer angle, fade.
        double run_trial(const Prepared &p, Rng &rng, std::vector<Station> &stations, std::vector<LinkRecord> *links)
        {
            const NetworkScenario &sc = p.sc;
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            stations.clear();

            double user_heading = 0.0;
            if (sc.self_block_cone_rad > 0.0)
                user_heading = pi * (2.0 * unit(rng) - 1.0);

            auto add_station = [&](double distance, double bearing, std::optional<LinkState> fixed, bool record) {
                const double u_state = unit(rng);
                const double u_angle = unit(rng);
                Station s;
                s.distance = distance;
                s.bearing = bearing;
                if (fixed)
                    s.state = *fixed;
                else if (sc.los_model)
                    s.state = u_state < p_los(*sc.los_model, distance).value() ? LinkState::los : LinkState::nlos;
                s.tx_offset = sc.alignment == Alignment::random_interferer_angles ? pi * (1.0 - 2.0 * u_angle) : 0.0;
                s.fade = draw_fade(sc, s.state, rng);
                if (record && links)
                    links->push_back({distance, s.state == LinkState::los});

                if (sc.self_block_cone_rad > 0.0 &&
                    std::abs(wrap_to_pi(bearing - user_heading - pi)) <= 0.5 * sc.self_block_cone_rad)
                    return; // behind the user: thinned away
                s.mean_power = mean_link_power(sc, distance, s.state, 0.0, 0.0);
                stations.push_back(s);
            };

            for (const auto &pin : sc.pinned)
                add_station(pin.distance_m, pin.bearing_rad, pin.state, false);

            if (p.expected_count > 0.0)
            {
                std::poisson_distribution<long> count(p.expected_count);
                const long n = count(rng);
                for (long i = 0; i < n; ++i)
                {
                    // 1 - U lies in (0, 1], keeping every station off the user position
                    const double r = sc.window_radius_m * std::sqrt(1.0 - unit(rng));
                    const double bearing = pi * (1.0 - 2.0 * unit(rng));
                    add_station(r, bearing, std::nullopt, true);
                }
            }

            const Station *serving = nullptr;
            for (const auto &s : stations)
                if (s.mean_power > 0.0 && (serving == nullptr || s.mean_power > serving->mean_power))
                    serving = &s;
            if (serving == nullptr)
                return 0.0;

            const double signal = serving->mean_power * serving->fade;
            double interference = 0.0;
            if (sc.interference_enabled())
                for (const auto &s : stations)
                {
                    if (&s == serving || s.mean_power == 0.0)
                        continue;
                    const double rx_offset = s.bearing - serving->bearing;
                    interference += mean_link_power(sc, s.distance, s.state, s.tx_offset, rx_offset) * s.fade;
                }

            const double denom = interference + sc.noise_power_w;
            if (signal == 0.0)
                return 0.0;
            if (denom == 0.0)
                return std::numeric_limits<double>::infinity();
            return signal / denom;
        }
    }

    void NetworkScenario::validate() const
    {
        if (!(bs_density >= 0.0) || !std::isfinite(bs_density))
            throw ConfigError("Base-station density must be finite and non-negative");
        if (!(window_radius_m > 0.0) || !std::isfinite(window_radius_m))
            throw ConfigError("Window radius must be positive");
        if (!(tx_power_w > 0.0) || !(noise_power_w >= 0.0) || !(bandwidth_hz > 0.0))
            throw ConfigError("Transmit power and bandwidth must be positive, noise power non-negative");
        if (!(tx_element_gain > 0.0) || !(rx_element_gain > 0.0))
            throw ConfigError("Element gains must be positive");
        if (!(self_block_cone_rad >= 0.0) || !(self_block_cone_rad < 2.0 * pi))
            throw ConfigError("Self-blockage cone angle must lie in [0, 2 pi)");
        if (los_model)
            mmwthz::validate(*los_model);
        pathloss.los.validate();
        pathloss.nlos.validate();
        if (fading)
            fading->validate();
        mmwthz::validate(tx_pattern);
        mmwthz::validate(rx_pattern);
        for (const auto &pin : pinned)
            if (!(pin.distance_m > 0.0) || !std::isfinite(pin.bearing_rad))
                throw ConfigError("Pinned stations need a positive distance and finite bearing");
        if (band == BandKind::thz && absorption)
            absorption->specific_attenuation_db_per_km(frequency); // ExtrapolationError surfaces early
    }

    double mean_link_power(const NetworkScenario &sc, double distance_m, LinkState state, double tx_offset_rad,
                           double rx_offset_rad)
    {
        const double gt = sc.tx_element_gain * gain_at_offset(sc.tx_pattern, tx_offset_rad);
        const double gr = sc.rx_element_gain * gain_at_offset(sc.rx_pattern, rx_offset_rad);
        if (sc.band == BandKind::mmwave)
            return mmwave_rx_power(sc.tx_power_w, sc.pathloss, state, distance_m, gt, gr, 1.0);

        // THz links are modelled as LOS-only; a blocked link carries no power
        if (state == LinkState::nlos)
            return 0.0;
        if (sc.absorption)
            return thz_rx_power_los(sc.tx_power_w, sc.frequency, distance_m, gt, gr, *sc.absorption);
        return sc.tx_power_w * fspl(sc.frequency, distance_m).linear() * gt * gr;
    }

    std::vector<double> default_thresholds_db()
    {
        std::vector<double> t;
        for (int db = -20; db <= 40; db += 2)
            t.push_back(static_cast<double>(db));
        return t;
    }

    SimResult simulate(const NetworkScenario &scenario, std::size_t trials, std::uint64_t seed,
                       const SimulationOptions &options)
    {
        scenario.validate();
        if (trials < 1)
            throw ConfigError("Simulation needs at least one trial");
        if (options.chunk_size < 1)
            throw ConfigError("Chunk size must be positive");

        const double area = pi * scenario.window_radius_m * scenario.window_radius_m;
        const Prepared prepared{scenario, scenario.bs_density * area};
        if (prepared.expected_count > 1.0e6)
            throw ConfigError("Expected base-station count per realisation exceeds 1e6");

        const std::size_t n_chunks = chunk_count(trials, options.chunk_size);
        SimResult result;
        result.trials = trials;
        result.seed = seed;
        result.sinr_samples.assign(trials, 0.0);
        std::vector<std::vector<LinkRecord>> chunk_links(options.record_links ? n_chunks : 0);

        for_each_chunk(n_chunks, options.workers, [&](std::size_t chunk) {
            Rng rng = make_stream(seed, chunk);
            std::vector<Station> stations;
            std::vector<LinkRecord> *links = options.record_links ? &chunk_links[chunk] : nullptr;
            const std::size_t begin = chunk * options.chunk_size;
            const std::size_t end = std::min(trials, begin + options.chunk_size);
            for (std::size_t t = begin; t < end; ++t)
                result.sinr_samples[t] = run_trial(prepared, rng, stations, links);
        });

        double rate_sum = 0.0;
        for (double s : result.sinr_samples)
        {
            if (s == 0.0)
                ++result.outages;
            rate_sum += scenario.bandwidth_hz * std::log2(1.0 + s);
        }
        result.mean_rate_bps = rate_sum / static_cast<double>(trials);
        for (auto &l : chunk_links)
            result.links.insert(result.links.end(), l.begin(), l.end());

        const auto thresholds = options.thresholds_db.empty() ? default_thresholds_db() : options.thresholds_db;
        result.coverage = coverage_curve(result, thresholds);
        return result;
    }

    std::vector<CoveragePoint> coverage_curve(const SimResult &result, std::span<const double> thresholds_db)
    {
        if (result.sinr_samples.empty())
            throw ConfigError("Coverage curve needs a non-empty simulation result");

        std::vector<double> sorted = result.sinr_samples;
        std::sort(sorted.begin(), sorted.end());
        const double n = static_cast<double>(sorted.size());

        std::vector<CoveragePoint> out;
        out.reserve(thresholds_db.size());
        for (double t_db : thresholds_db)
        {
            double t_lin;
            if (std::isnan(t_db))
                throw DomainError("Coverage threshold is NaN");
            if (t_db == -std::numeric_limits<double>::infinity())
                t_lin = 0.0;
            else if (t_db == std::numeric_limits<double>::infinity())
                t_lin = std::numeric_limits<double>::infinity();
            else
                t_lin = std::pow(10.0, t_db / 10.0);
            // Samples strictly above the threshold
            const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t_lin);
            out.push_back({t_db, static_cast<double>(above) / n});
        }
        return out;
    }
}
