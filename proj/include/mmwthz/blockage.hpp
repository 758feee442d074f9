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

#ifndef MMWTHZ_BLOCKAGE_HPP
#define MMWTHZ_BLOCKAGE_HPP

#include "mmwthz/units.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

namespace mmwthz
{
    // Empirical 3GPP-style model: min(d1/d, 1)(1 - e^{-d/d2}) + e^{-d/d2}.
    // UMa uses (18 m, 63 m), UMi (18 m, 36 m).
    struct UmaUmi
    {
        double d1 = 18.0;
        double d2 = 63.0;

        static UmaUmi uma() { return {18.0, 63.0}; }
        static UmaUmi umi() { return {18.0, 36.0}; }
    };

    // NYU model: the UmaUmi expression squared, typically with (20 m, 160 m)
    struct NyuSquared
    {
        double d1 = 20.0;
        double d2 = 160.0;
    };

    // Boolean field of rectangles with PPP centres: p = e^{-beta d}, beta = 2 mu (E[W] + E[L]) / pi
    struct BooleanRect
    {
        double density = 1.0e-4;   // [1/m^2]
        double mean_length = 15.0; // [m]
        double mean_width = 15.0;  // [m]

        double beta() const;
    };

    // All links shorter than the radius are LOS, all others NLOS
    struct LosBall
    {
        double radius = 100.0; // [m]

        // Radius sqrt(2) mu E[L] / pi, evaluated literally. Note the result has units of 1/length
        // when mu is an areal density; callers that need a physical radius should set it directly.
        static LosBall from_boolean(double density, double mean_length);
    };

    enum class HumanFieldForm
    {
        as_written,      // 1 - e^{-mu (r d + pi r^2)}
        void_probability // e^{-mu (r d + pi r^2)}
    };

    // Human bodies as discs of fixed radius with PPP centres
    struct HumanField
    {
        double density = 0.1;     // [1/m^2]
        double body_radius = 0.3; // [m]
        HumanFieldForm form = HumanFieldForm::as_written;
    };

    // User self-blockage: every direction inside a cone of the given full angle is blocked.
    // As a distance model it is the fraction of unblocked directions, 1 - delta / (2 pi).
    struct SelfBlockCone
    {
        double cone_angle = pi / 3.0; // [rad], in [0, 2 pi)

        double unblocked_fraction() const;
    };

    using LosModel = std::variant<UmaUmi, NyuSquared, BooleanRect, LosBall, HumanField, SelfBlockCone>;

    // Throws DomainError when a parameter violates its range
    void validate(const LosModel &model);

    std::string model_name(const LosModel &model);

    class LosProbability
    {
    public:
        explicit LosProbability(double value);
        double value() const { return value_; }

    private:
        double value_;
    };

    // Closed-form LOS probability of a link of 2D length d [m]
    LosProbability p_los(const LosModel &model, double distance_m);

    // ---------------------------------------------------------------------------------------------
    // Geometric Monte-Carlo oracle for the Boolean (rectangles, discs) models
    // ---------------------------------------------------------------------------------------------

    enum class ReceiverConvention
    {
        // Blockages covering the receiver end of the link are discarded (receiver is outdoors).
        // Under this convention the expected number of blockers is exactly mu times the
        // perimeter-sweep area, e.g. beta * d for rectangles.
        exclude_covering_receiver,
        // Every blockage touching the segment counts; adds mu * E[area] to the exponent
        count_all
    };

    struct MonteCarloOptions
    {
        std::size_t workers = 1;
        std::size_t chunk_size = 1024; // trials per random stream; part of the reproducibility contract
        double window_pad_m = 0.0;     // <= 0 selects the automatic padding
        ReceiverConvention convention = ReceiverConvention::exclude_covering_receiver;
    };

    struct MonteCarloEstimate
    {
        double estimate = 1.0;
        double std_error = 0.0; // binomial standard error of the estimate
        std::size_t trials = 0;
    };

    // Drops a link of length d from (0,0) to (d,0) into a padded window, samples blockages as a
    // homogeneous PPP and reports the fraction of unobstructed trials. Rectangles get a uniform
    // orientation and exponentially distributed length and width with the model means.
    // Only BooleanRect and HumanField are supported; other models throw ConfigError.
    MonteCarloEstimate monte_carlo_los(const LosModel &model, double distance_m, std::size_t trials,
                                       std::uint64_t seed, const MonteCarloOptions &options = {});
}

#endif
