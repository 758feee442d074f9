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

#include "mmwthz/antenna.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace mmwthz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    std::vector<PatternSample> sample_offsets(const AntennaPattern &p, double lo, double hi, int n)
    {
        std::vector<PatternSample> out;
        for (int i = 0; i < n; ++i)
        {
            const double a = lo + (hi - lo) * i / (n - 1);
            out.push_back({a, gain_at_offset(p, a)});
        }
        return out;
    }

    // MSE of the best step function with the given breakpoints on |angle|, segment means computed directly
    double mse_for_breakpoints(const std::vector<PatternSample> &s, const std::vector<double> &breaks)
    {
        const std::size_t k = breaks.size() + 1;
        std::vector<double> sum(k, 0.0);
        std::vector<int> cnt(k, 0);
        auto segment = [&](double a) {
            std::size_t i = 0;
            while (i < breaks.size() && std::abs(a) > breaks[i])
                ++i;
            return i;
        };
        for (const auto &x : s)
        {
            const auto i = segment(x.angle);
            sum[i] += x.gain;
            ++cnt[i];
        }
        double err = 0.0;
        for (const auto &x : s)
        {
            const auto i = segment(x.angle);
            const double e = x.gain - sum[i] / cnt[i];
            err += e * e;
        }
        return err / static_cast<double>(s.size());
    }
}

TEST_CASE("Pattern examples", "[antenna]")
{
    for (int n : {1, 2, 8, 64})
        CHECK(gain(UlaExact{n, 0.5}, 0.0) == 1.0);
    CHECK(gain(UlaExact{8, 0.5}, 1.0) == 1.0);
    CHECK(gain(UlaExact{8, 0.5}, -2.0) == 1.0);
    CHECK_THAT(gain(SincApprox{8}, 1.0 / 8.0), WithinAbs(0.0, 1e-30));
    CHECK(gain(SincApprox{8}, 0.0) == 1.0);

    const FlatTop ft{10.0, 0.5, 0.1};
    CHECK(gain(ft, 0.05) == 10.0);
    CHECK(gain(ft, 0.1) == 10.0);
    CHECK(gain(ft, 0.2) == 0.5);

    CHECK(gain(Gaussian{10.0, 0.5, 100.0}, 0.0) == 10.0);
    CHECK_THAT(gain(Gaussian{10.0, 0.5, 100.0}, 0.1), WithinRel(9.5 * std::exp(-1.0) + 0.5, 1e-15));

    CHECK_THAT(gain(Cosine{16}, 1.0 / 16.0), WithinAbs(0.0, 1e-30));
    CHECK(gain(Cosine{16}, 0.0) == 1.0);
    CHECK(gain(Cosine{16}, 0.07) == 0.0);

    const MultiLobe ml{{{0.1, 20.0}, {0.2, 5.0}, {0.5, 0.1}}};
    CHECK(gain(ml, 0.0) == 20.0);
    CHECK(gain(ml, 0.1) == 20.0);
    CHECK(gain(ml, 0.25) == 5.0);
    CHECK(gain(ml, 0.31) == 0.1);
    CHECK(gain(ml, 3.0) == 0.1);
}

TEST_CASE("ULA exact pattern against a direct evaluation", "[antenna]")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> phi(0.001, 0.499);
    for (int i = 0; i < 1000; ++i)
    {
        const int n = 2 + static_cast<int>(rng() % 63);
        const double p = phi(rng);
        const double direct = std::pow(std::sin(pi * n * p), 2) / (n * n * std::pow(std::sin(pi * p), 2));
        REQUIRE_THAT(gain(UlaExact{n, 0.5}, p), WithinAbs(direct, 1e-12));
    }
}

TEST_CASE("Sinc lower-bounds the exact array factor", "[antenna][property]")
{
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> phi(0.0, 0.5);
    std::uniform_int_distribution<int> elements(2, 256);
    int violations = 0;
    for (int i = 0; i < 100000; ++i)
    {
        double p = phi(rng);
        if (p == 0.0)
            p = 0.5;
        const int n = elements(rng);
        const double g_sinc = gain(SincApprox{n}, p);
        const double g_act = gain(UlaExact{n, 0.5}, p);
        if (g_sinc > g_act)
            ++violations;
        REQUIRE(g_act >= 0.0);
        REQUIRE(g_act <= 1.0);
        REQUIRE(g_sinc >= 0.0);
        REQUIRE(g_sinc <= 1.0);
    }
    CHECK(violations == 0);
}

TEST_CASE("Patterns are symmetric", "[antenna][property]")
{
    const AntennaPattern patterns[] = {UlaExact{8, 0.5},         SincApprox{12},  FlatTop{10.0, 0.5, 0.2},
                                       MultiLobe{{{0.1, 3.0}, {0.3, 1.0}}}, Gaussian{8.0, 0.2, 50.0}, Cosine{6}};
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> a(0.0, 3.0);
    for (const auto &p : patterns)
        for (int i = 0; i < 2000; ++i)
        {
            const double x = a(rng);
            REQUIRE(gain(p, x) == gain(p, -x));
            REQUIRE(gain_at_offset(p, x) == gain_at_offset(p, -x));
            REQUIRE(gain(p, x) >= 0.0);
        }
}

TEST_CASE("Gain at offset maps array patterns to the cosine direction", "[antenna]")
{
    const UlaExact ula{8, 0.5};
    CHECK(gain_at_offset(ula, 0.0) == 1.0);
    CHECK_THAT(gain_at_offset(ula, 0.3), WithinRel(gain(ula, 0.5 * std::sin(0.3)), 1e-15));
    CHECK_THAT(gain_at_offset(SincApprox{8}, 0.3), WithinRel(gain(SincApprox{8}, 0.5 * std::sin(0.3)), 1e-15));
    CHECK(gain_at_offset(FlatTop{10.0, 0.5, 0.1}, 2.0 * pi + 0.05) == 10.0);

    const std::vector<AntennaPattern> beams{FlatTop{10.0, 0.5, 0.1}, Gaussian{4.0, 0.0, 10.0}};
    CHECK_THAT(combined_gain(beams, 0.05), WithinRel(10.0 + 4.0 * std::exp(-10.0 * 0.0025), 1e-15));
}

TEST_CASE("Half-power beamwidth", "[antenna]")
{
    CHECK_THAT(hpbw(FlatTop{10.0, 0.5, 0.1}), WithinAbs(0.1, 1e-9));
    CHECK_THROWS_AS(hpbw(FlatTop{10.0, 6.0, 0.1}), DomainError);

    const Gaussian g{10.0, 0.5, 100.0};
    const double closed = std::sqrt(std::log((10.0 - 0.5) / (5.0 - 0.5)) / 100.0);
    CHECK_THAT(hpbw(g), WithinAbs(closed, 1e-9));
    CHECK_THROWS_AS(hpbw(Gaussian{10.0, 6.0, 100.0}), DomainError);

    // cos^2(pi N x / 2) = 1/2 at x = 1 / (2N)
    CHECK_THAT(hpbw(Cosine{8}), WithinAbs(1.0 / 16.0, 1e-9));
}

TEST_CASE("Sinc beamwidth shrinks with array size", "[antenna][property]")
{
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 256; ++n)
    {
        const double h = hpbw(SincApprox{n});
        REQUIRE(h < prev);
        // Half width at half power of sinc^2 is 0.4429 / N
        REQUIRE_THAT(h * n, WithinAbs(0.442946, 1e-5));
        prev = h;
    }
}

TEST_CASE("Multi-lobe fit recovers a flat-top pattern", "[antenna][fit]")
{
    const FlatTop ft{10.0, 0.5, 0.1};
    std::vector<PatternSample> s;
    for (int k = -314; k <= 314; ++k)
        s.push_back({k * 0.01, gain(ft, k * 0.01)});
    const auto fit = fit_multi_lobe(s, 2);
    REQUIRE(fit.pattern.lobes.size() == 2);
    CHECK(fit.mse == 0.0);
    CHECK_THAT(fit.pattern.lobes[0].width, WithinAbs(0.1, 1e-12));
    CHECK(fit.pattern.lobes[0].gain == 10.0);
    CHECK(fit.pattern.lobes[1].gain == 0.5);
}

TEST_CASE("Multi-lobe error is non-increasing in K", "[antenna][fit][property]")
{
    const auto s = sample_offsets(UlaExact{16, 0.5}, -pi / 2.0, pi / 2.0, 301);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 8; ++k)
    {
        const double mse = fit_multi_lobe(s, k).mse;
        REQUIRE(mse <= prev + 1e-15);
        prev = mse;
    }
    CHECK(fit_multi_lobe(s, 2).mse >= fit_multi_lobe(s, 4).mse);
}

TEST_CASE("Multi-lobe fit matches an exhaustive breakpoint search", "[antenna][fit]")
{
    // Samples on a 5e-3 grid; the 1e-3 breakpoint grid therefore reaches every distinct split
    const auto s = sample_offsets(UlaExact{8, 0.5}, 0.0, 0.5, 101);
    const auto fit = fit_multi_lobe(s, 3);

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_breaks;
    for (int i = 0; i <= 500; ++i)
        for (int j = i + 1; j <= 500; ++j)
        {
            const std::vector<double> br{i * 1e-3, j * 1e-3};
            const double m = mse_for_breakpoints(s, br);
            if (m < best)
            {
                best = m;
                best_breaks = br;
            }
        }
    INFO("dp mse " << fit.mse << " grid mse " << best);
    CHECK_THAT(fit.mse, WithinAbs(best, 1e-12));
    CHECK(fit.pattern.lobes[0].gain <= 1.0);
    CHECK(fit.pattern.lobes[0].gain > fit.pattern.lobes[1].gain);
    CHECK(fit.pattern.lobes[0].width <= best_breaks[0] + 5e-3);
}

TEST_CASE("Multi-lobe fit preconditions", "[antenna][fit]")
{
    const auto s = sample_offsets(Gaussian{}, 0.0, 1.0, 10);
    CHECK_THROWS_AS(fit_multi_lobe(s, 0), ConfigError);
    CHECK_THROWS_AS(fit_multi_lobe(s, 6), ConfigError);
    std::vector<PatternSample> dup(12, PatternSample{0.2, 1.0});
    CHECK_THROWS_AS(fit_multi_lobe(dup, 2), ConfigError);
    std::vector<PatternSample> neg{{0.0, 1.0}, {0.1, -1.0}};
    CHECK_THROWS_AS(fit_multi_lobe(neg, 1), ConfigError);
    CHECK_NOTHROW(fit_multi_lobe(s, 5));
}

TEST_CASE("Multi-lobe ties prefer the narrower main lobe", "[antenna][fit]")
{
    // Constant samples: every split is optimal; the main lobe must end at the first sample
    std::vector<PatternSample> s;
    for (int i = 0; i < 10; ++i)
        s.push_back({0.1 * i, 2.0});
    const auto fit = fit_multi_lobe(s, 2);
    CHECK(fit.mse == 0.0);
    CHECK(fit.pattern.lobes[0].width == 0.0);
}

TEST_CASE("Pattern validation", "[antenna]")
{
    CHECK_THROWS_AS(validate(UlaExact{0, 0.5}), DomainError);
    CHECK_THROWS_AS(validate(FlatTop{1.0, 2.0, 0.1}), DomainError);
    CHECK_THROWS_AS(validate(Gaussian{1.0, 0.5, 0.0}), DomainError);
    CHECK_THROWS_AS(validate(MultiLobe{}), DomainError);
    CHECK_THROWS_AS(validate(Cosine{0}), DomainError);
    CHECK(pattern_name(Gaussian{}) == "gaussian");
}
