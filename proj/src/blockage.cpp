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

#include "mmwthz/blockage.hpp"
#include "mmwthz/random.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mmwthz
{
    namespace
    {
        template <class... Ts>
        struct overloaded : Ts...
        {
            using Ts::operator()...;
        };
        template <class... Ts>
        overloaded(Ts...) -> overloaded<Ts...>;

        void require_positive(double v, const char *what)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw DomainError(std::string(what) + " must be positive and finite");
        }

        double empirical_core(double d1, double d2, double d)
        {
            const double tail = std::exp(-d / d2);
            const double near = d <= d1 ? 1.0 : d1 / d; // min(d1/d, 1), equal to 1 at d = 0 by continuity
            return near * (1.0 - tail) + tail;
        }

        // Liang-Barsky clip of the segment a->b against the box |x| <= hx, |y| <= hy
        bool segment_hits_box(const Eigen::Vector2d &a, const Eigen::Vector2d &b, double hx, double hy)
        {
            double t0 = 0.0, t1 = 1.0;
            const Eigen::Vector2d dir = b - a;
            const double p[4] = {-dir.x(), dir.x(), -dir.y(), dir.y()};
            const double q[4] = {a.x() + hx, hx - a.x(), a.y() + hy, hy - a.y()};
            for (int i = 0; i < 4; ++i)
            {
                if (p[i] == 0.0)
                {
                    if (q[i] < 0.0)
                        return false;
                    continue;
                }
                const double t = q[i] / p[i];
                if (p[i] < 0.0)
                    t0 = std::max(t0, t);
                else
                    t1 = std::min(t1, t);
                if (t0 > t1)
                    return false;
            }
            return true;
        }

        // Squared distance from c to the segment (0,0)-(d,0)
        double squared_distance_to_link(const Eigen::Vector2d &c, double d)
        {
            const double x = std::clamp(c.x(), 0.0, d);
            return (c - Eigen::Vector2d(x, 0.0)).squaredNorm();
        }

        struct Window
        {
            double pad;
            double area(double d) const { return (d + 2.0 * pad) * (2.0 * pad); }
        };

        // Characteristic blockage diameter used to size the window
        double blockage_diameter(const LosModel &model)
        {
            if (const auto *r = std::get_if<BooleanRect>(&model))
                return std::hypot(r->mean_length, r->mean_width);
            return 2.0 * std::get<HumanField>(model).body_radius;
        }

        Window make_window(const LosModel &model, double d, const MonteCarloOptions &opt)
        {
            const double diameter = blockage_diameter(model);
            Window w{};
            if (opt.window_pad_m > 0.0)
            {
                if (opt.window_pad_m < 3.0 * diameter)
                    throw ConfigError("Monte-Carlo window padding must be at least 3 blockage diameters (" +
                                      std::to_string(3.0 * diameter) + " m)");
                w.pad = opt.window_pad_m;
            }
            else if (std::holds_alternative<BooleanRect>(model))
                // Exponential dimensions are unbounded; 10 mean diagonals leaves a miss probability ~ e^-20
                w.pad = 10.0 * diameter;
            else
                w.pad = 3.0 * diameter;

            const double density = std::holds_alternative<BooleanRect>(model) ? std::get<BooleanRect>(model).density
                                                                              : std::get<HumanField>(model).density;
            const double expected = density * w.area(d);
            if (!std::isfinite(expected) || expected > 5.0e6)
                throw ConfigError("Monte-Carlo window for d = " + std::to_string(d) +
                                  " m holds too many blockages per trial (" + std::to_string(expected) + ")");
            return w;
        }

        bool rect_trial_is_los(const BooleanRect &m, double d, const Window &w, ReceiverConvention conv, Rng &rng)
        {
            std::poisson_distribution<long> count(m.density * w.area(d));
            std::uniform_real_distribution<double> ux(-w.pad, d + w.pad), uy(-w.pad, w.pad), uang(0.0, pi);
            std::exponential_distribution<double> len(1.0 / m.mean_length), wid(1.0 / m.mean_width);

            const long n = count(rng);
            const Eigen::Vector2d tx(d, 0.0);
            bool los = true;
            for (long i = 0; i < n; ++i)
            {
                // Draw every variate even after a hit so the stream layout is independent of outcomes
                const Eigen::Vector2d c(ux(rng), uy(rng));
                const double orientation = uang(rng);
                const double hx = 0.5 * len(rng), hy = 0.5 * wid(rng);
                if (!los)
                    continue;

                const Eigen::Rotation2Dd to_local(-orientation);
                const Eigen::Vector2d a = to_local * (Eigen::Vector2d::Zero() - c);
                const Eigen::Vector2d b = to_local * (tx - c);
                if (conv == ReceiverConvention::exclude_covering_receiver && std::abs(a.x()) <= hx && std::abs(a.y()) <= hy)
                    continue;
                if (segment_hits_box(a, b, hx, hy))
                    los = false;
            }
            return los;
        }

        bool disc_trial_is_los(const HumanField &m, double d, const Window &w, ReceiverConvention conv, Rng &rng)
        {
            std::poisson_distribution<long> count(m.density * w.area(d));
            std::uniform_real_distribution<double> ux(-w.pad, d + w.pad), uy(-w.pad, w.pad);

            const long n = count(rng);
            const double r2 = m.body_radius * m.body_radius;
            bool los = true;
            for (long i = 0; i < n; ++i)
            {
                const Eigen::Vector2d c(ux(rng), uy(rng));
                if (!los)
                    continue;
                if (conv == ReceiverConvention::exclude_covering_receiver && c.squaredNorm() <= r2)
                    continue;
                if (squared_distance_to_link(c, d) <= r2)
                    los = false;
            }
            return los;
        }
    }

    double BooleanRect::beta() const
    {
        return 2.0 * density * (mean_width + mean_length) / pi;
    }

    LosBall LosBall::from_boolean(double density, double mean_length)
    {
        return LosBall{std::sqrt(2.0) * density * mean_length / pi};
    }

    double SelfBlockCone::unblocked_fraction() const
    {
        return 1.0 - cone_angle / (2.0 * pi);
    }

    void validate(const LosModel &model)
    {
        std::visit(overloaded{
                       [](const UmaUmi &m) {
                           require_positive(m.d1, "d1");
                           require_positive(m.d2, "d2");
                       },
                       [](const NyuSquared &m) {
                           require_positive(m.d1, "d1");
                           require_positive(m.d2, "d2");
                       },
                       [](const BooleanRect &m) {
                           require_positive(m.density, "Blockage density");
                           require_positive(m.mean_length, "Mean blockage length");
                           require_positive(m.mean_width, "Mean blockage width");
                       },
                       [](const LosBall &m) { require_positive(m.radius, "LOS ball radius"); },
                       [](const HumanField &m) {
                           require_positive(m.density, "Human density");
                           require_positive(m.body_radius, "Body radius");
                       },
                       [](const SelfBlockCone &m) {
                           if (!(m.cone_angle >= 0.0) || !(m.cone_angle < 2.0 * pi))
                               throw DomainError("Self-blockage cone angle must lie in [0, 2 pi)");
                       },
                   },
                   model);
    }

    std::string model_name(const LosModel &model)
    {
        static const char *names[] = {"uma_umi", "nyu_squared", "boolean_rect", "los_ball", "human_field", "self_block_cone"};
        return names[model.index()];
    }

    LosProbability::LosProbability(double value) : value_(value)
    {
        if (!(value >= 0.0 && value <= 1.0))
            throw DomainError("Probability outside [0, 1]: " + std::to_string(value));
    }

    LosProbability p_los(const LosModel &model, double d)
    {
        if (!(d >= 0.0) || std::isnan(d))
            throw DomainError("Link distance must be non-negative");
        validate(model);

        const double p = std::visit(
            overloaded{
                [d](const UmaUmi &m) { return empirical_core(m.d1, m.d2, d); },
                [d](const NyuSquared &m) {
                    const double v = empirical_core(m.d1, m.d2, d);
                    return v * v;
                },
                [d](const BooleanRect &m) { return std::exp(-m.beta() * d); },
                [d](const LosBall &m) { return d < m.radius ? 1.0 : 0.0; },
                [d](const HumanField &m) {
                    const double r = m.body_radius;
                    const double v = std::exp(-m.density * (r * d + pi * r * r));
                    return m.form == HumanFieldForm::as_written ? 1.0 - v : v;
                },
                [](const SelfBlockCone &m) { return m.unblocked_fraction(); },
            },
            model);
        return LosProbability(std::clamp(p, 0.0, 1.0));
    }

    MonteCarloEstimate monte_carlo_los(const LosModel &model, double d, std::size_t trials, std::uint64_t seed,
                                       const MonteCarloOptions &opt)
    {
        if (!std::holds_alternative<BooleanRect>(model) && !std::holds_alternative<HumanField>(model))
            throw ConfigError("Monte-Carlo LOS oracle supports only boolean_rect and human_field, not " + model_name(model));
        validate(model);
        if (trials < 1)
            throw ConfigError("Monte-Carlo LOS needs at least one trial");
        if (opt.chunk_size < 1)
            throw ConfigError("Monte-Carlo chunk size must be positive");
        if (!(d >= 0.0) || !std::isfinite(d))
            throw DomainError("Link distance must be finite and non-negative");
        if (d == 0.0)
            return {1.0, 0.0, trials};

        const Window window = make_window(model, d, opt);
        const std::size_t n_chunks = chunk_count(trials, opt.chunk_size);
        std::vector<std::size_t> los_per_chunk(n_chunks, 0);

        for_each_chunk(n_chunks, opt.workers, [&](std::size_t chunk) {
            Rng rng = make_stream(seed, chunk);
            const std::size_t begin = chunk * opt.chunk_size;
            const std::size_t end = std::min(trials, begin + opt.chunk_size);
            std::size_t los = 0;
            for (std::size_t t = begin; t < end; ++t)
            {
                const bool ok = std::holds_alternative<BooleanRect>(model)
                                    ? rect_trial_is_los(std::get<BooleanRect>(model), d, window, opt.convention, rng)
                                    : disc_trial_is_los(std::get<HumanField>(model), d, window, opt.convention, rng);
                los += ok ? 1 : 0;
            }
            los_per_chunk[chunk] = los;
        });

        std::size_t los = 0;
        for (auto c : los_per_chunk)
            los += c;
        const double n = static_cast<double>(trials);
        const double p = static_cast<double>(los) / n;
        return {p, std::sqrt(p * (1.0 - p) / n), trials};
    }
}
