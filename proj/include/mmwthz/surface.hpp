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

#ifndef MMWTHZ_SURFACE_HPP
#define MMWTHZ_SURFACE_HPP

#include "mmwthz/units.hpp"

#include <cstddef>

namespace mmwthz
{
    // Reflecting / scattering surface
    struct SurfaceSpec
    {
        double gamma_s = 1.0;  // Smooth-surface reflection coefficient, [0, 1], includes penetration loss
        double h0 = 0.0;       // Minimum-to-maximum protuberance [m]
        double h_rms = 0.0;    // RMS height [m]
        double alpha_r = 1.0;  // Directive-scattering lobe width exponent, > 0
        double area_m2 = 1.0;  // Effective aperture of the scattering surface [m^2]

        void validate() const; // throws DomainError
    };

    // In-plane scattering geometry. The specular direction equals the incidence angle.
    struct ScatterGeometry
    {
        double theta_i = 0.0; // Incidence angle [rad] in [0, pi/2)
        double theta_s = 0.0; // Observation direction [rad]
        double r_i = 1.0;     // Transmitter to surface [m]
        double r_s = 1.0;     // Surface to receiver [m]

        double theta_r() const { return theta_i; }
        double psi() const { return theta_s - theta_r(); }
        void validate() const; // throws DomainError
    };

    enum class Roughness
    {
        smooth,
        rough
    };

    // Rayleigh critical height lambda / (8 cos theta_i) in [m]
    double critical_height(Frequency f, double theta_i);

    // Smooth iff h0 < critical height
    Roughness classify(const SurfaceSpec &surface, Frequency f, double theta_i);

    // Scattering loss factor rho = exp(-8 (pi h_rms cos theta_i / lambda)^2), in (0, 1]
    double rough_loss_factor(const SurfaceSpec &surface, Frequency f, double theta_i);

    // Rough-surface reflection coefficient rho * gamma_s
    double effective_reflection_coefficient(const SurfaceSpec &surface, Frequency f, double theta_i);

    struct PowerSplit
    {
        double reflected = 0.0;          // P rho^2 gamma_s^2
        double scattered = 0.0;          // P (1 - rho^2) gamma_s^2
        double scattering_coefficient{}; // S^2 = (1 - rho^2) gamma_s^2
    };

    // Split of incident power P into specular and diffuse parts
    PowerSplit power_split(const SurfaceSpec &surface, Frequency f, double theta_i, double incident_power);

    // ---------------------------------------------------------------------------------------------
    // Directive-scattering lobe ((1 + cos(theta_s - theta_r)) / 2)^alpha_R and its normalisation
    // ---------------------------------------------------------------------------------------------

    enum class LobeDomain
    {
        // theta_s in [theta_r - pi/2, theta_r + pi/2], phi_s in [-pi/2, pi/2], measure d theta d phi
        planar,
        // Hemisphere above the surface with measure sin(theta) d theta d phi; the lobe angle is
        // measured in 3D from the specular direction at polar angle theta_r
        hemisphere
    };

    struct NormalizationOptions
    {
        LobeDomain domain = LobeDomain::planar;
        double theta_r = 0.0;          // Only used by the hemisphere domain
        double tolerance = 1.0e-12;    // Relative tolerance handed to the adaptive rule
        double abs_tolerance = 1.0e-8; // Accepted absolute error estimate
        unsigned max_depth = 20;
    };

    struct NormalizationResult
    {
        double value = 0.0;
        double error_estimate = 0.0; // Reported by the Gauss-Kronrod pair
        double refined_value = 0.0;  // Same integral with the next-higher Kronrod rule
        std::size_t evaluations = 0; // Integrand evaluations of the primary rule
    };

    // Lobe factor for a given deviation from the specular direction
    double ds_lobe(double alpha_r, double psi);

    // F_alpha with diagnostics; throws NumericalError when the error estimate exceeds abs_tolerance
    NormalizationResult ds_normalization_report(double alpha_r, const NormalizationOptions &options = {});

    double ds_normalization(double alpha_r, const NormalizationOptions &options = {});

    struct ScatterOptions
    {
        NormalizationOptions normalization{};
        // Backscatter lobe extension. Not supported: setting it throws std::logic_error.
        bool include_backscatter = false;
    };

    // Power received over a diffusely scattered path:
    //   S^2 A_s (P_t G_t / 4 pi r_i^2) (1 / (r_s^2 F_alpha)) (lambda^2 / 4 pi) G_r lobe(theta_s - theta_r)
    double received_scattered_power(const SurfaceSpec &surface, const ScatterGeometry &geom, Frequency f,
                                    double tx_power, double tx_gain, double rx_gain, const ScatterOptions &options = {});
}

#endif
