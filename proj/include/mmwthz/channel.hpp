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

#ifndef MMWTHZ_CHANNEL_HPP
#define MMWTHZ_CHANNEL_HPP

#include "mmwthz/atmosphere.hpp"
#include "mmwthz/random.hpp"
#include "mmwthz/units.hpp"

#include <cstdint>
#include <vector>

namespace mmwthz
{
    enum class LinkState
    {
        los,
        nlos
    };

    // Power-law path gain c r^{-alpha}
    struct PathLossLaw
    {
        double near_field_gain = 1.0; // c_s, linear
        double exponent = 2.0;        // alpha_s

        // c = (lambda / 4 pi)^2, alpha = 2: Friis gain referenced to 1 m
        static PathLossLaw free_space(Frequency f);

        void validate() const;
        double gain_at(double distance_m) const;
    };

    struct PathLossLaws
    {
        PathLossLaw los{};
        PathLossLaw nlos{1.0, 4.0};

        const PathLossLaw &operator[](LinkState s) const { return s == LinkState::los ? los : nlos; }
    };

    // Nakagami shape per link state; fading power is Gamma(mu, 1/mu) with unit mean
    struct FadingSpec
    {
        double mu_los = 3.0;
        double mu_nlos = 2.0;

        double shape(LinkState s) const { return s == LinkState::los ? mu_los : mu_nlos; }
        void validate() const;
    };

    // Two-hop geometry of a THz reflected or scattered path
    struct ThzPathGeometry
    {
        double r1 = 1.0;      // transmitter to surface [m]
        double r2 = 1.0;      // surface to receiver [m]
        double gamma_r = 1.0; // reflection-related coefficient
        double gamma_s = 1.0; // scattering-related coefficient

        void validate() const;
    };

    // P_t l_s(r) g_r g_t H, all linear; power unit follows tx_power
    double mmwave_rx_power(double tx_power, const PathLossLaws &laws, LinkState state, double distance_m,
                           double tx_gain, double rx_gain, double fade);

    // Draw of the Nakagami fading power, Gamma(shape mu, scale 1/mu)
    double sample_nakagami_power(double mu, Rng &rng);

    // n independent draws from a stream seeded by `seed`
    std::vector<double> sample_nakagami_powers(double mu, std::size_t n, std::uint64_t seed);

    double nakagami_power_cdf(double mu, double x);
    double nakagami_power_quantile(double mu, double p);

    // Free-space gain (lambda^2 / 4 pi) (1 / 4 pi r^2)
    PowerRatio fspl(Frequency f, double distance_m);

    // P_t l(r) g_r g_t tau(r)
    double thz_rx_power_los(double tx_power, Frequency f, double distance_m, double tx_gain, double rx_gain,
                            const AbsorptionSpectrum &spectrum);

    // P_t g_r g_t l(r1) l(r2) tau(r1) tau(r2) Gamma_R
    double thz_scattered_path(double tx_power, Frequency f, const ThzPathGeometry &geom, double tx_gain, double rx_gain,
                              const AbsorptionSpectrum &spectrum);

    // P_t g_r g_t l(r1 + r2) Gamma^2 tau(r1 + r2) Gamma_S
    double thz_reflected_path(double tx_power, Frequency f, const ThzPathGeometry &geom, double tx_gain, double rx_gain,
                              double reflection_coefficient, const AbsorptionSpectrum &spectrum);

    // Maximum Doppler shift f v / c [Hz]
    double doppler_spread(Frequency f, double speed_m_s);
}

#endif
