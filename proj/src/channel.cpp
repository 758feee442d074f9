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

#include "mmwthz/channel.hpp"

#include <boost/math/distributions/gamma.hpp>

#include <cmath>

namespace mmwthz
{
    namespace
    {
        void check_distance(double r, const char *what)
        {
            if (!(r > 0.0) || !std::isfinite(r))
                throw DomainError(std::string(what) + " must be positive and finite");
        }

        void check_factor(double v, const char *what)
        {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw DomainError(std::string(what) + " must be finite and non-negative");
        }

        void check_shape(double mu)
        {
            if (!(mu > 0.0) || !std::isfinite(mu))
                throw DomainError("Nakagami shape must be positive and finite");
        }
    }

    PathLossLaw PathLossLaw::free_space(Frequency f)
    {
        const double k = wavelength(f) / (4.0 * pi);
        return {k * k, 2.0};
    }

    void PathLossLaw::validate() const
    {
        if (!(near_field_gain > 0.0) || !(exponent > 0.0))
            throw DomainError("Path-loss law needs c_s > 0 and alpha_s > 0");
    }

    double PathLossLaw::gain_at(double distance_m) const
    {
        check_distance(distance_m, "Link distance");
        validate();
        return near_field_gain * std::pow(distance_m, -exponent);
    }

    void FadingSpec::validate() const
    {
        check_shape(mu_los);
        check_shape(mu_nlos);
    }

    void ThzPathGeometry::validate() const
    {
        check_distance(r1, "r1");
        check_distance(r2, "r2");
        check_factor(gamma_r, "Gamma_R");
        check_factor(gamma_s, "Gamma_S");
    }

    double mmwave_rx_power(double tx_power, const PathLossLaws &laws, LinkState state, double distance_m,
                           double tx_gain, double rx_gain, double fade)
    {
        check_factor(tx_power, "Transmit power");
        check_factor(tx_gain, "Transmit gain");
        check_factor(rx_gain, "Receive gain");
        check_factor(fade, "Fading power");
        return tx_power * laws[state].gain_at(distance_m) * rx_gain * tx_gain * fade;
    }

    double sample_nakagami_power(double mu, Rng &rng)
    {
        check_shape(mu);
        std::gamma_distribution<double> g(mu, 1.0 / mu);
        return g(rng);
    }

    std::vector<double> sample_nakagami_powers(double mu, std::size_t n, std::uint64_t seed)
    {
        check_shape(mu);
        Rng rng = make_stream(seed, 0);
        std::gamma_distribution<double> g(mu, 1.0 / mu);
        std::vector<double> out(n);
        for (auto &v : out)
            v = g(rng);
        return out;
    }

    double nakagami_power_cdf(double mu, double x)
    {
        check_shape(mu);
        if (x <= 0.0)
            return 0.0;
        return boost::math::cdf(boost::math::gamma_distribution<double>(mu, 1.0 / mu), x);
    }

    double nakagami_power_quantile(double mu, double p)
    {
        check_shape(mu);
        if (!(p >= 0.0 && p < 1.0))
            throw DomainError("Fading percentile must lie in [0, 1)");
        return boost::math::quantile(boost::math::gamma_distribution<double>(mu, 1.0 / mu), p);
    }

    PowerRatio fspl(Frequency f, double distance_m)
    {
        check_distance(distance_m, "Link distance");
        const double lambda = wavelength(f);
        return PowerRatio((lambda * lambda / (4.0 * pi)) / (4.0 * pi * distance_m * distance_m));
    }

    double thz_rx_power_los(double tx_power, Frequency f, double distance_m, double tx_gain, double rx_gain,
                            const AbsorptionSpectrum &spectrum)
    {
        check_factor(tx_power, "Transmit power");
        check_factor(tx_gain, "Transmit gain");
        check_factor(rx_gain, "Receive gain");
        return tx_power * fspl(f, distance_m).linear() * rx_gain * tx_gain *
               transmittance(distance_m, f, spectrum).linear();
    }

    double thz_scattered_path(double tx_power, Frequency f, const ThzPathGeometry &geom, double tx_gain, double rx_gain,
                              const AbsorptionSpectrum &spectrum)
    {
        geom.validate();
        check_factor(tx_power, "Transmit power");
        check_factor(tx_gain, "Transmit gain");
        check_factor(rx_gain, "Receive gain");
        return tx_power * rx_gain * tx_gain * fspl(f, geom.r1).linear() * fspl(f, geom.r2).linear() *
               transmittance(geom.r1, f, spectrum).linear() * transmittance(geom.r2, f, spectrum).linear() *
               geom.gamma_r;
    }

    double thz_reflected_path(double tx_power, Frequency f, const ThzPathGeometry &geom, double tx_gain, double rx_gain,
                              double reflection_coefficient, const AbsorptionSpectrum &spectrum)
    {
        geom.validate();
        check_factor(tx_power, "Transmit power");
        check_factor(tx_gain, "Transmit gain");
        check_factor(rx_gain, "Receive gain");
        if (!(reflection_coefficient >= 0.0 && reflection_coefficient <= 1.0))
            throw DomainError("Reflection coefficient must lie in [0, 1]");
        const double r = geom.r1 + geom.r2;
        return tx_power * rx_gain * tx_gain * fspl(f, r).linear() * reflection_coefficient * reflection_coefficient *
               transmittance(r, f, spectrum).linear() * geom.gamma_s;
    }

    double doppler_spread(Frequency f, double speed_m_s)
    {
        if (!(speed_m_s >= 0.0) || !std::isfinite(speed_m_s))
            throw DomainError("Speed must be finite and non-negative");
        return f.in_hz() * speed_m_s / speed_of_light;
    }
}
