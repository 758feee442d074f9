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

#ifndef MMWTHZ_ANTENNA_HPP
#define MMWTHZ_ANTENNA_HPP

#include "mmwthz/units.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace mmwthz
{
    // Exact array factor of an N-element ULA, sin^2(pi N phi) / (N^2 sin^2(pi phi)).
    // Evaluated at the cosine direction phi = (d / lambda) cos(theta_AoD). Unit peak.
    struct UlaExact
    {
        int elements = 8;
        double spacing_over_lambda = 0.5;
    };

    // Squared-sinc approximation sin^2(pi N phi) / (pi N phi)^2, a lower bound of UlaExact
    struct SincApprox
    {
        int elements = 8;
    };

    // Sectorised pattern: g_m inside [-theta_3dB, theta_3dB], g_s elsewhere
    struct FlatTop
    {
        double main_gain = 10.0;
        double side_gain = 0.1;
        double theta_3db = 0.1; // [rad]
    };

    struct Lobe
    {
        double width = 0.0; // angular extent [rad] on one side of boresight
        double gain = 1.0;
    };

    // Piecewise-constant pattern. Lobe k covers |theta| in (b_{k-1}, b_k] with b_k the cumulative
    // width (the first lobe includes theta = 0); beyond the last boundary the last gain applies.
    struct MultiLobe
    {
        std::vector<Lobe> lobes;
    };

    // (g_m - g_s) e^{-eta theta^2} + g_s
    struct Gaussian
    {
        double main_gain = 10.0;
        double side_gain = 0.1;
        double eta = 100.0;
    };

    // cos^2(pi N theta / 2) for |theta| <= 1/N, zero outside. Unit peak.
    struct Cosine
    {
        int elements = 8;
    };

    using AntennaPattern = std::variant<UlaExact, SincApprox, FlatTop, MultiLobe, Gaussian, Cosine>;

    void validate(const AntennaPattern &pattern); // throws DomainError
    std::string pattern_name(const AntennaPattern &pattern);

    // True for the array-factor models whose argument is the cosine direction phi
    bool uses_cosine_direction(const AntennaPattern &pattern);

    // Linear gain. For UlaExact/SincApprox `direction` is phi, for the others the planar angle theta.
    double gain(const AntennaPattern &pattern, double direction);

    // Gain at an angular offset [rad] from boresight. Array-factor models map the offset to the
    // cosine direction of a broadside array, phi = (d / lambda) sin(offset), with d / lambda = 0.5
    // for SincApprox.
    double gain_at_offset(const AntennaPattern &pattern, double offset_rad);

    // Effective pattern of several simultaneous analog beams (one per stream or user)
    double combined_gain(std::span<const AntennaPattern> beams, double offset_rad);

    // Half-power beamwidth: smallest direction > 0 where the gain falls to half its boresight value,
    // bracketed by a fine scan and refined by bisection to 1e-12. Same units as gain()'s argument.
    // Throws DomainError when the gain never falls below half.
    double hpbw(const AntennaPattern &pattern);

    // ---------------------------------------------------------------------------------------------
    // Multi-lobe fitting
    // ---------------------------------------------------------------------------------------------

    struct PatternSample
    {
        double angle = 0.0; // only |angle| matters, patterns are symmetric
        double gain = 0.0;
    };

    struct MultiLobeFit
    {
        MultiLobe pattern;
        double mse = 0.0;
    };

    // Mean squared error of a pattern against samples
    double pattern_mse(const AntennaPattern &pattern, std::span<const PatternSample> samples);

    // Best K-step piecewise-constant fit in the least-squares sense. Lobe boundaries sit on the
    // largest |angle| of each step; ties prefer the narrower main lobe.
    // Throws ConfigError for fewer than 2K samples or K above the number of distinct |angle| values.
    MultiLobeFit fit_multi_lobe(std::span<const PatternSample> samples, int lobes);
}

#endif
