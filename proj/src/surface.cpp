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

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mmwthz
{
    namespace
    {
        void check_incidence(double theta_i)
        {
            if (!(theta_i >= 0.0) || !(theta_i < pi / 2.0))
                throw DomainError("Incidence angle must lie in [0, pi/2), got " + std::to_string(theta_i) + " rad");
        }

        template <unsigned Points, typename F>
        double integrate(F f, double a, double b, const NormalizationOptions &opt, double *error)
        {
            return boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, a, b, opt.max_depth, opt.tolerance,
                                                                                     error);
        }

        // Planar domain: the integrand does not depend on phi_s, whose range contributes a factor pi
        template <unsigned Points>
        double planar_normalization(double alpha_r, const NormalizationOptions &opt, double *error, std::size_t *calls)
        {
            auto f = [&](double u) {
                if (calls)
                    ++*calls;
                return ds_lobe(alpha_r, u);
            };
            double err = 0.0;
            const double v = pi * integrate<Points>(f, -pi / 2.0, pi / 2.0, opt, &err);
            if (error)
                *error = pi * err;
            return v;
        }

        template <unsigned Points>
        double hemisphere_normalization(double alpha_r, const NormalizationOptions &opt, double *error, std::size_t *calls)
        {
            const double sr = std::sin(opt.theta_r), cr = std::cos(opt.theta_r);
            double inner_error = 0.0;
            auto outer = [&](double theta) {
                const double st = std::sin(theta), ct = std::cos(theta);
                auto inner = [&](double phi) {
                    if (calls)
                        ++*calls;
                    const double cos_psi = std::clamp(st * std::cos(phi) * sr + ct * cr, -1.0, 1.0);
                    return std::pow(0.5 * (1.0 + cos_psi), alpha_r);
                };
                double e = 0.0;
                const double v = integrate<Points>(inner, -pi, pi, opt, &e);
                inner_error = std::max(inner_error, e);
                return v * st;
            };
            double outer_error = 0.0;
            const double v = integrate<Points>(outer, 0.0, pi / 2.0, opt, &outer_error);
            if (error)
                *error = outer_error + inner_error * (pi / 2.0);
            return v;
        }
    }

    void SurfaceSpec::validate() const
    {
        if (!(gamma_s >= 0.0 && gamma_s <= 1.0))
            throw DomainError("gamma_s must lie in [0, 1]");
        if (!(h0 >= 0.0) || !(h_rms >= 0.0))
            throw DomainError("Surface heights must be non-negative");
        if (!(alpha_r > 0.0) || !std::isfinite(alpha_r))
            throw DomainError("alpha_R must be positive");
        if (!(area_m2 >= 0.0))
            throw DomainError("Scattering area must be non-negative");
    }

    void ScatterGeometry::validate() const
    {
        check_incidence(theta_i);
        if (!(r_i > 0.0) || !(r_s > 0.0))
            throw DomainError("Scattering distances r_i and r_s must be positive");
        if (!std::isfinite(theta_s))
            throw DomainError("Observation angle must be finite");
    }

    double critical_height(Frequency f, double theta_i)
    {
        check_incidence(theta_i);
        return wavelength(f) / (8.0 * std::cos(theta_i));
    }

    Roughness classify(const SurfaceSpec &surface, Frequency f, double theta_i)
    {
        surface.validate();
        return surface.h0 < critical_height(f, theta_i) ? Roughness::smooth : Roughness::rough;
    }

    double rough_loss_factor(const SurfaceSpec &surface, Frequency f, double theta_i)
    {
        check_incidence(theta_i);
        surface.validate();
        const double x = pi * surface.h_rms * std::cos(theta_i) / wavelength(f);
        return std::exp(-8.0 * x * x);
    }

    double effective_reflection_coefficient(const SurfaceSpec &surface, Frequency f, double theta_i)
    {
        return rough_loss_factor(surface, f, theta_i) * surface.gamma_s;
    }

    PowerSplit power_split(const SurfaceSpec &surface, Frequency f, double theta_i, double incident_power)
    {
        if (!(incident_power >= 0.0))
            throw DomainError("Incident power must be non-negative");
        const double rho = rough_loss_factor(surface, f, theta_i);
        const double rho2 = rho * rho;
        const double g2 = surface.gamma_s * surface.gamma_s;
        PowerSplit out;
        out.scattering_coefficient = (1.0 - rho2) * g2;
        out.reflected = incident_power * rho2 * g2;
        out.scattered = incident_power * out.scattering_coefficient;
        return out;
    }

    double ds_lobe(double alpha_r, double psi)
    {
        const double base = std::max(0.0, 0.5 * (1.0 + std::cos(psi)));
        return std::pow(base, alpha_r);
    }

    NormalizationResult ds_normalization_report(double alpha_r, const NormalizationOptions &opt)
    {
        if (!(alpha_r > 0.0) || !std::isfinite(alpha_r))
            throw DomainError("alpha_R must be positive and finite");

        NormalizationResult out;
        double refined_error = 0.0;
        if (opt.domain == LobeDomain::planar)
        {
            out.value = planar_normalization<15>(alpha_r, opt, &out.error_estimate, &out.evaluations);
            out.refined_value = planar_normalization<31>(alpha_r, opt, &refined_error, nullptr);
        }
        else
        {
            if (!(opt.theta_r >= 0.0) || !(opt.theta_r <= pi / 2.0))
                throw DomainError("Hemisphere normalisation needs theta_r in [0, pi/2]");
            out.value = hemisphere_normalization<15>(alpha_r, opt, &out.error_estimate, &out.evaluations);
            out.refined_value = hemisphere_normalization<31>(alpha_r, opt, &refined_error, nullptr);
        }

        const double disagreement = std::abs(out.value - out.refined_value);
        if (!std::isfinite(out.value) || out.error_estimate > opt.abs_tolerance || disagreement > opt.abs_tolerance)
        {
            std::ostringstream os;
            os << "DS lobe normalisation did not converge for alpha_R = " << alpha_r << ": value " << out.value
               << ", error estimate " << out.error_estimate << ", 15/31-point disagreement " << disagreement
               << ", " << out.evaluations << " evaluations";
            throw NumericalError(os.str());
        }
        return out;
    }

    double ds_normalization(double alpha_r, const NormalizationOptions &options)
    {
        return ds_normalization_report(alpha_r, options).value;
    }

    double received_scattered_power(const SurfaceSpec &surface, const ScatterGeometry &geom, Frequency f,
                                    double tx_power, double tx_gain, double rx_gain, const ScatterOptions &options)
    {
        if (options.include_backscatter)
            throw std::logic_error("Backscatter lobe is not supported by the directive-scattering model");
        surface.validate();
        geom.validate();
        if (!(tx_power >= 0.0) || !(tx_gain > 0.0) || !(rx_gain > 0.0))
            throw DomainError("Transmit power must be non-negative and antenna gains positive");

        NormalizationOptions norm = options.normalization;
        if (norm.domain == LobeDomain::hemisphere)
            norm.theta_r = geom.theta_r();
        const double f_alpha = ds_normalization(surface.alpha_r, norm);

        const double s2 = power_split(surface, f, geom.theta_i, 1.0).scattering_coefficient;
        const double lambda = wavelength(f);
        const double incident_density = tx_power * tx_gain / (4.0 * pi * geom.r_i * geom.r_i);
        const double peak = s2 * surface.area_m2 * incident_density / (geom.r_s * geom.r_s * f_alpha);
        const double aperture = lambda * lambda / (4.0 * pi) * rx_gain;
        return peak * aperture * ds_lobe(surface.alpha_r, geom.psi());
    }
}
