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

#include "mmwthz/surface.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace mmwthz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Rayleigh critical height", "[surface]")
{
    const Frequency f60 = Frequency::ghz(60.0);
    CHECK_THAT(critical_height(f60, 0.0), WithinRel(wavelength(f60) / 8.0, 1e-15));
    CHECK_THAT(critical_height(f60, 0.0), WithinAbs(0.6246e-3, 1e-7));
    CHECK_THAT(critical_height(f60, pi / 3.0), WithinRel(2.0 * critical_height(f60, 0.0), 1e-14));
    CHECK(critical_height(Frequency::thz(1000.0), 0.0) < 1e-6);
    CHECK_THROWS_AS(critical_height(f60, pi / 2.0), DomainError);
    CHECK_THROWS_AS(critical_height(f60, -0.1), DomainError);

    double prev = 0.0;
    for (double t = 0.0; t < 1.5; t += 0.01)
    {
        const double h = critical_height(f60, t);
        REQUIRE(h > prev);
        prev = h;
    }
}

TEST_CASE("Smooth or rough", "[surface]")
{
    SurfaceSpec flat;
    for (double f : {1.0, 60.0, 1000.0, 10000.0})
        CHECK(classify(flat, Frequency::ghz(f), 0.0) == Roughness::smooth);

    SurfaceSpec mm;
    mm.h0 = 1e-3;
    CHECK(classify(mm, Frequency::ghz(60.0), 0.0) == Roughness::rough);
    CHECK(classify(mm, Frequency::ghz(10.0), 0.0) == Roughness::smooth);
    CHECK_THAT(critical_height(Frequency::ghz(10.0), 0.0), WithinAbs(3.75e-3, 1e-5));
}

TEST_CASE("Roughness threshold sits at lambda = 8 h0 cos(theta_i)", "[surface][property]")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> h(1e-5, 1e-2), t(0.0, 1.4);
    for (int i = 0; i < 2000; ++i)
    {
        SurfaceSpec s;
        s.h0 = h(rng);
        const double theta = t(rng);
        const double f_star = speed_of_light / (8.0 * s.h0 * std::cos(theta));
        REQUIRE(classify(s, Frequency(f_star * 0.999), theta) == Roughness::smooth);
        REQUIRE(classify(s, Frequency(f_star * 1.001), theta) == Roughness::rough);
    }
}

TEST_CASE("Scattering loss factor", "[surface]")
{
    const Frequency f = Frequency::ghz(300.0);
    SurfaceSpec s;
    CHECK(rough_loss_factor(s, f, 0.3) == 1.0);
    s.h_rms = wavelength(f) / (2.0 * pi);
    CHECK_THAT(rough_loss_factor(s, f, 0.0), WithinRel(std::exp(-2.0), 1e-14));
    CHECK_THAT(rough_loss_factor(s, f, 0.0), WithinAbs(0.1353, 1e-4));
    CHECK(rough_loss_factor(s, f, pi / 2.0 - 1e-9) > 0.999999);
    s.gamma_s = 0.5;
    CHECK_THAT(effective_reflection_coefficient(s, f, 0.0), WithinRel(0.5 * std::exp(-2.0), 1e-14));
}

TEST_CASE("Scattering loss factor decreases with roughness and frequency", "[surface][property]")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> h(1e-6, 1e-3), fg(10.0, 1000.0), t(0.0, 1.5);
    for (int i = 0; i < 5000; ++i)
    {
        SurfaceSpec s;
        s.h_rms = h(rng);
        const Frequency f = Frequency::ghz(fg(rng));
        const double theta = t(rng);
        const double rho = rough_loss_factor(s, f, theta);
        REQUIRE(rho >= 0.0);
        REQUIRE(rho <= 1.0);
        SurfaceSpec rougher = s;
        rougher.h_rms *= 1.2;
        REQUIRE(rough_loss_factor(rougher, f, theta) <= rho);
        REQUIRE(rough_loss_factor(s, Frequency(f.in_hz() * 1.2), theta) <= rho);
    }
}

TEST_CASE("Power split", "[surface]")
{
    SurfaceSpec smooth;
    smooth.gamma_s = 0.9;
    const auto a = power_split(smooth, Frequency::ghz(100.0), 0.2, 2.0);
    CHECK_THAT(a.reflected, WithinRel(2.0 * 0.81, 1e-15));
    CHECK(a.scattered == 0.0);
    CHECK(a.scattering_coefficient == 0.0);

    // Choose h_rms so that rho^2 = 0.25 at normal incidence
    const Frequency f = Frequency::ghz(100.0);
    SurfaceSpec s;
    s.gamma_s = 0.8;
    const double lambda = wavelength(f);
    s.h_rms = lambda / pi * std::sqrt(std::log(2.0) / 8.0);
    REQUIRE_THAT(std::pow(rough_loss_factor(s, f, 0.0), 2), WithinRel(0.25, 1e-13));
    const auto b = power_split(s, f, 0.0, 1.0);
    CHECK_THAT(b.reflected, WithinAbs(0.16, 1e-13));
    CHECK_THAT(b.scattered, WithinAbs(0.48, 1e-13));
    CHECK_THAT(b.scattering_coefficient, WithinAbs(0.48, 1e-13));
}

TEST_CASE("Power split conserves P gamma_s^2", "[surface][property]")
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i)
    {
        SurfaceSpec s;
        s.gamma_s = u(rng);
        s.h_rms = 1e-3 * u(rng);
        const double p = 10.0 * u(rng);
        const auto split = power_split(s, Frequency::ghz(10.0 + 990.0 * u(rng)), 1.5 * u(rng), p);
        const double expected = p * s.gamma_s * s.gamma_s;
        REQUIRE(std::abs(split.reflected + split.scattered - expected) <= 1e-12 * std::max(expected, 1e-300));
    }
}

TEST_CASE("Normalisation closed forms", "[surface][quadrature]")
{
    const auto planar = ds_normalization_report(1.0);
    CHECK_THAT(planar.value, WithinAbs(pi * (pi / 2.0 + 1.0), 1e-8));
    CHECK_THAT(planar.refined_value, WithinAbs(planar.value, 1e-8));
    CHECK(planar.evaluations > 0);

    NormalizationOptions hemi;
    hemi.domain = LobeDomain::hemisphere;
    CHECK_THAT(ds_normalization(1.0, hemi), WithinAbs(1.5 * pi, 1e-8));

    // alpha = 2: ((1 + cos u) / 2)^2 integrates to 3 pi / 8 + 1 over [-pi/2, pi/2]
    CHECK_THAT(ds_normalization(2.0), WithinAbs(pi * (3.0 * pi / 8.0 + 1.0), 1e-8));
}

TEST_CASE("Normalisation decreases with the lobe exponent", "[surface][quadrature][property]")
{
    double prev = ds_normalization(0.125);
    for (double a = 0.25; a <= 64.0; a *= 2.0)
    {
        const double v = ds_normalization(a);
        REQUIRE(v > 0.0);
        REQUIRE(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(ds_normalization(0.0), DomainError);
}

TEST_CASE("Unreachable tolerance raises a numerical error", "[surface][quadrature]")
{
    NormalizationOptions opt;
    opt.abs_tolerance = 0.0;
    opt.tolerance = 1e-300;
    opt.max_depth = 0;
    CHECK_THROWS_AS(ds_normalization(1000.0, opt), NumericalError);
}

TEST_CASE("Lobe factor", "[surface]")
{
    CHECK(ds_lobe(3.0, 0.0) == 1.0);
    CHECK_THAT(ds_lobe(3.0, pi), WithinAbs(0.0, 1e-30));
    CHECK_THAT(ds_lobe(1.0, pi / 2.0), WithinRel(0.5, 1e-15));
}

TEST_CASE("Received scattered power", "[surface]")
{
    const Frequency f = Frequency::ghz(300.0);
    SurfaceSpec s;
    s.gamma_s = 0.7;
    s.h_rms = 1e-4;
    s.alpha_r = 4.0;
    s.area_m2 = 0.01;
    ScatterGeometry g;
    g.theta_i = 0.4;
    g.theta_s = 0.4;
    g.r_i = 3.0;
    g.r_s = 2.0;

    const double s2 = power_split(s, f, g.theta_i, 1.0).scattering_coefficient;
    const double lambda = wavelength(f);
    const double f_alpha = ds_normalization(s.alpha_r);
    const double peak = s2 * s.area_m2 * (2.0 * 10.0 / (4.0 * pi * 9.0)) / (4.0 * f_alpha);
    const double expected = peak * lambda * lambda * 5.0 / (4.0 * pi);
    CHECK_THAT(received_scattered_power(s, g, f, 2.0, 10.0, 5.0), WithinRel(expected, 1e-13));

    ScatterGeometry back = g;
    back.theta_s = g.theta_r() + pi;
    CHECK_THAT(received_scattered_power(s, back, f, 2.0, 10.0, 5.0), WithinAbs(0.0, 1e-300));

    ScatterGeometry far = g;
    far.r_s = 2.0 * g.r_s;
    CHECK_THAT(received_scattered_power(s, g, f, 2.0, 10.0, 5.0) / received_scattered_power(s, far, f, 2.0, 10.0, 5.0),
               WithinRel(4.0, 1e-14));

    ScatterGeometry bad = g;
    bad.r_i = 0.0;
    CHECK_THROWS_AS(received_scattered_power(s, bad, f, 2.0, 10.0, 5.0), DomainError);

    ScatterOptions back_opt;
    back_opt.include_backscatter = true;
    CHECK_THROWS_AS(received_scattered_power(s, g, f, 2.0, 10.0, 5.0, back_opt), std::logic_error);
}

TEST_CASE("Scattered power peaks in the specular direction", "[surface][property]")
{
    const Frequency f = Frequency::ghz(140.0);
    SurfaceSpec s;
    s.h_rms = 2e-4;
    s.alpha_r = 2.5;
    ScatterGeometry g;
    g.theta_i = 0.6;
    g.theta_s = g.theta_r();
    const double at_specular = received_scattered_power(s, g, f, 1.0, 1.0, 1.0);
    for (int i = 0; i < 1000; ++i)
    {
        g.theta_s = -pi + 2.0 * pi * i / 999.0;
        REQUIRE(received_scattered_power(s, g, f, 1.0, 1.0, 1.0) <= at_specular);
    }
}

TEST_CASE("Surface validation", "[surface]")
{
    SurfaceSpec s;
    s.gamma_s = 1.5;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.alpha_r = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.h0 = -1.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
}
