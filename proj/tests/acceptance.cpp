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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include "mmwthz/antenna.hpp"
#include "mmwthz/atmosphere.hpp"
#include "mmwthz/blockage.hpp"
#include "mmwthz/channel.hpp"
#include "mmwthz/netsim.hpp"
#include "mmwthz/registry.hpp"
#include "mmwthz/surface.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mmwthz;

namespace
{
    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0)
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    struct Verdict
    {
        bool pass = true;
        std::ostringstream detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail << " [failed: " << what << "]";
            }
        }
    };

    Verdict atmosphere()
    {
        Verdict v;
        const auto t0 = Clock::now();
        const auto spectrum = AbsorptionSpectrum::load(std::string(MMWTHZ_TEST_DATA_DIR) + "/absorption.json");
        const std::pair<double, double> anchors[] = {{60.0, 15.0}, {183.0, 28.35}, {323.0, 38.6}};
        for (const auto &[ghz, db] : anchors)
        {
            const double loss = -transmittance(1000.0, Frequency::ghz(ghz), spectrum).db();
            v.detail << ' ' << ghz << " GHz: " << loss << " dB;";
            v.require(std::abs(loss - db) <= 1e-9, std::to_string(ghz) + " GHz loss");
        }
        const double t = seconds_since(t0);
        v.detail << " runtime " << t << " s";
        v.require(t < 1.0, "runtime");
        return v;
    }

    Verdict rain()
    {
        Verdict v;
        const auto table = RainTable::load(std::string(MMWTHZ_TEST_DATA_DIR) + "/rain.json");
        const struct
        {
            double ghz, rate, expected;
        } reads[] = {{60.0, 2.0, 2.55}, {73.0, 50.0, 20.0}, {90.0, 150.0, 42.0}};
        for (const auto &r : reads)
        {
            const double a = rain_attenuation(Frequency::ghz(r.ghz), r.rate, table);
            v.detail << ' ' << r.ghz << " GHz " << r.rate << " mm/hr: " << a << " dB/km;";
            v.require(a == r.expected, "table read");
        }
        const double total = rain_attenuation(Frequency::ghz(28.0), 50.0, table) * 0.2;
        v.detail << " 28 GHz heavy rain over 200 m: " << total << " dB";
        v.require(std::abs(total - 1.4) <= 1e-12, "28 GHz total");
        return v;
    }

    Verdict blockage()
    {
        Verdict v;
        const auto t0 = Clock::now();
        const std::pair<double, double> grid[] = {
            {1.0e-4, 50.0}, {1.0e-4, 200.0}, {5.0e-4, 50.0}, {5.0e-4, 150.0}, {1.0e-3, 100.0}};
        int k = 0;
        for (const auto &[mu, d] : grid)
        {
            const BooleanRect model{mu, 15.0, 10.0};
            const double exact = std::exp(-2.0 * mu * (15.0 + 10.0) / pi * d);
            const auto est = monte_carlo_los(model, d, 100000, 1000 + k++);
            const double se = std::sqrt(exact * (1.0 - exact) / 1e5);
            const double z = (est.estimate - exact) / se;
            v.detail << " (" << mu << ", " << d << "): z=" << z << ';';
            v.require(std::abs(z) <= 4.0, "grid point within 4 SE");
        }
        const double t = seconds_since(t0);
        v.detail << " runtime " << t << " s";
        v.require(t < 30.0, "runtime");
        return v;
    }

    Verdict scattering()
    {
        Verdict v;
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i)
        {
            const Frequency f = Frequency::ghz(60.0 + 940.0 * u(rng));
            SurfaceSpec s;
            s.gamma_s = u(rng);
            s.h_rms = 2.0 * wavelength(f) * u(rng);
            s.h0 = 4.0 * s.h_rms;
            const double theta = 1.5 * u(rng);
            const double p = 0.1 + 10.0 * u(rng);
            const auto split = power_split(s, f, theta, p);
            const double total = p * s.gamma_s * s.gamma_s;
            if (total > 0.0)
                worst = std::max(worst, std::abs(split.reflected + split.scattered - total) / total);
        }
        v.detail << " worst relative conservation error " << worst << ';';
        v.require(worst <= 1e-12, "conservation");

        SurfaceSpec s{0.8, 1e-3, 1e-4, 3.0, 0.01};
        ScatterGeometry g{0.4, 0.0, 5.0, 5.0};
        const int n = 1000;
        int best = -1;
        double best_power = -1.0;
        double best_angle = 0.0;
        for (int i = 0; i < n; ++i)
        {
            g.theta_s = g.theta_r() - pi / 2.0 + pi * i / n; // i = n / 2 is the specular direction
            const double pw = received_scattered_power(s, g, Frequency::ghz(300.0), 1.0, 1.0, 1.0);
            if (pw > best_power)
            {
                best_power = pw;
                best = i;
                best_angle = g.theta_s;
            }
        }
        v.detail << " lobe maximum at theta_s - theta_r = " << best_angle - g.theta_r() << " (grid index " << best
                 << ")";
        v.require(best == n / 2 && std::abs(best_angle - g.theta_r()) < 1e-15, "lobe maximum at specular direction");
        return v;
    }

    Verdict quadrature()
    {
        Verdict v;
        const double f = ds_normalization(1.0);
        const double exact = pi * (pi / 2.0 + 1.0);
        v.detail << " F_1 = " << f << ", closed form " << exact << ", difference " << f - exact;
        v.require(std::abs(f - exact) <= 1e-8, "F_1");
        return v;
    }

    Verdict antenna()
    {
        Verdict v;
        std::mt19937_64 rng(6);
        std::uniform_int_distribution<int> elements(2, 256);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int violations = 0;
        for (int i = 0; i < 100000; ++i)
        {
            const int n = elements(rng);
            const double phi = 0.5 * (1.0 - u(rng)); // (0, 0.5]
            if (gain(SincApprox{n}, phi) > gain(UlaExact{n, 0.5}, phi))
                ++violations;
        }
        v.detail << " violations " << violations << ';';
        v.require(violations == 0, "sinc bound");
        bool unity = true;
        for (int n = 2; n <= 256; ++n)
            unity = unity && gain(SincApprox{n}, 0.0) == 1.0 && gain(UlaExact{n, 0.5}, 0.0) == 1.0;
        v.detail << " unit boresight gain " << (unity ? "yes" : "no");
        v.require(unity, "boresight");
        return v;
    }

    Verdict fading()
    {
        Verdict v;
        const auto x = sample_nakagami_powers(3.0, 1000000, 77);
        const double n = static_cast<double>(x.size());
        const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
        double var = 0.0;
        for (double s : x)
            var += (s - mean) * (s - mean);
        var /= n - 1.0;
        v.detail << " mean " << mean << ", variance " << var;
        v.require(std::abs(mean - 1.0) <= 0.005, "mean");
        v.require(std::abs(var - 1.0 / 3.0) <= 0.01, "variance");
        return v;
    }

    Verdict doppler()
    {
        Verdict v;
        const double speed = 30.0;
        const double r1 = doppler_spread(Frequency::ghz(60.0), speed) / doppler_spread(Frequency::ghz(3.0), speed);
        const double r2 = doppler_spread(Frequency::ghz(30.0), speed) / doppler_spread(Frequency::ghz(3.0), speed);
        v.detail.precision(17);
        v.detail << " 60/3 GHz ratio " << r1 << ", 30/3 GHz ratio " << r2;
        v.require(r1 == 20.0, "60/3 ratio");
        v.require(r2 == 10.0, "30/3 ratio");
        return v;
    }

    Verdict end_to_end()
    {
        Verdict v;
        NetworkScenario one;
        one.bs_density = 0.0;
        one.los_model.reset();
        one.fading.reset();
        one.tx_pattern = FlatTop{1.0, 1.0, pi};
        one.rx_pattern = FlatTop{1.0, 1.0, pi};
        one.interference = false;
        one.pathloss = PathLossLaws{{1.0e-6, 2.1}, {1.0e-7, 4.0}};
        one.tx_power_w = 1.5;
        one.noise_power_w = 1.0e-12;
        one.pinned = {PinnedStation{120.0, 0.3, LinkState::los}};
        const double direct = 1.5 * 1.0e-6 * std::pow(120.0, -2.1) / 1.0e-12;
        const double got = simulate(one, 1, 1).sinr_samples.at(0);
        const double rel = std::abs(got - direct) / direct;
        v.detail << " degenerate relative error " << rel << ';';
        v.require(rel <= 1e-12, "degenerate oracle");

        NetworkScenario sc;
        sc.bs_density = 1.0e-4;
        sc.window_radius_m = 1000.0;
        sc.los_model = UmaUmi::uma();
        sc.fading = FadingSpec{};
        SimulationOptions serial;
        SimulationOptions parallel;
        parallel.workers = 4;
        const auto t0 = Clock::now();
        const auto a = simulate(sc, 10000, 42, serial);
        const double t = seconds_since(t0);
        const auto b = simulate(sc, 10000, 42, parallel);
        const bool identical = a.sinr_samples == b.sinr_samples && a.mean_rate_bps == b.mean_rate_bps;
        v.detail << " default simulation " << t << " s, identical across 1 and 4 workers: "
                 << (identical ? "yes" : "no");
        v.require(t < 60.0, "runtime");
        v.require(identical, "reproducibility");
        return v;
    }

    Verdict registry()
    {
        Verdict v;
        std::ifstream in(std::string(MMWTHZ_GOLDEN_DIR) + "/table1.txt");
        v.require(static_cast<bool>(in), "golden file readable");
        const auto reg = BandRegistry::load(std::string(MMWTHZ_TEST_DATA_DIR) + "/bands.json");
        std::string line;
        std::size_t index = 0;
        std::size_t checked = 0;
        while (std::getline(in, line))
        {
            if (line.empty() || line[0] == '#')
                continue;
            if (index >= reg.bands().size())
            {
                v.require(false, "band count");
                break;
            }
            const auto &band = reg.bands()[index++];
            const auto bar = line.find('|');
            std::string name = line.substr(0, bar);
            name.erase(name.find_last_not_of(' ') + 1);
            v.require(band.name == name, "name " + name);
            std::stringstream segs(line.substr(bar + 1));
            std::string seg;
            std::size_t k = 0;
            while (std::getline(segs, seg, ','))
            {
                const auto dash = seg.find('-');
                if (k >= band.segments.size())
                {
                    v.require(false, "segment count for " + name);
                    break;
                }
                v.require(band.segments[k].low_ghz == std::stod(seg.substr(0, dash)) &&
                              band.segments[k].high_ghz == std::stod(seg.substr(dash + 1)),
                          "segment of " + name);
                ++k;
                ++checked;
            }
            v.require(k == band.segments.size(), "segment count for " + name);
        }
        v.require(index == reg.bands().size(), "band count");
        v.detail << ' ' << index << " bands, " << checked << " segments compared";
        return v;
    }
}

int main()
{
    const std::pair<const char *, std::function<Verdict()>> criteria[] = {
        {"atmospheric fidelity", atmosphere},
        {"rain fidelity", rain},
        {"blockage oracle", blockage},
        {"scattering conservation", scattering},
        {"quadrature check", quadrature},
        {"antenna bound", antenna},
        {"fading statistics", fading},
        {"doppler ratios", doppler},
        {"end-to-end oracle", end_to_end},
        {"registry golden", registry},
    };

    int failures = 0;
    int number = 0;
    for (const auto &[name, check] : criteria)
    {
        ++number;
        Verdict v;
        try
        {
            v = check();
        }
        catch (const std::exception &e)
        {
            v.pass = false;
            v.detail << " exception: " << e.what();
        }
        if (!v.pass)
            ++failures;
        std::cout << (v.pass ? "PASS" : "FAIL") << ' ' << number << ' ' << name << ':' << v.detail.str() << '\n';
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
