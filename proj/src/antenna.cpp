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

#include <algorithm>
#include <cmath>
#include <limits>

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

        double ula_gain(int n, double phi)
        {
            // Period 1 in phi; the removable singularities sit at integer phi where the limit is 1
            const double r = phi - std::round(phi);
            if (r == 0.0)
                return 1.0;
            const double num = std::sin(pi * n * r);
            const double den = n * std::sin(pi * r);
            return (num * num) / (den * den);
        }

        double sinc_gain(int n, double phi)
        {
            const double x = pi * n * phi;
            if (x == 0.0)
                return 1.0;
            const double s = std::sin(x) / x;
            return s * s;
        }

        double multi_lobe_gain(const MultiLobe &m, double theta)
        {
            const double a = std::abs(theta);
            double boundary = 0.0;
            for (const auto &lobe : m.lobes)
            {
                boundary += lobe.width;
                // A few ulps of slack so that a boundary rebuilt from widths still contains its edge sample
                if (a <= boundary * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
                    return lobe.gain;
            }
            return m.lobes.back().gain;
        }

        // Direction range scanned for the half-power point
        double hpbw_scan_limit(const AntennaPattern &p)
        {
            if (uses_cosine_direction(p))
                return 0.5;
            if (const auto *c = std::get_if<Cosine>(&p))
                return 1.0 / c->elements;
            return pi;
        }

        struct SegmentCost
        {
            std::vector<double> sum, sum_sq, count;

            // Squared error of the best constant over groups [i, j]
            double operator()(std::size_t i, std::size_t j) const
            {
                const double n = count[j + 1] - count[i];
                const double s = sum[j + 1] - sum[i];
                const double q = sum_sq[j + 1] - sum_sq[i];
                return std::max(0.0, q - s * s / n);
            }
        };
    }

    void validate(const AntennaPattern &pattern)
    {
        std::visit(overloaded{
                       [](const UlaExact &p) {
                           if (p.elements < 1)
                               throw DomainError("ULA needs at least one element");
                           if (!(p.spacing_over_lambda > 0.0))
                               throw DomainError("ULA element spacing must be positive");
                       },
                       [](const SincApprox &p) {
                           if (p.elements < 1)
                               throw DomainError("Sinc pattern needs at least one element");
                       },
                       [](const FlatTop &p) {
                           if (!(p.side_gain >= 0.0) || !(p.main_gain >= p.side_gain))
                               throw DomainError("Flat-top pattern needs g_m >= g_s >= 0");
                           if (!(p.theta_3db > 0.0))
                               throw DomainError("Flat-top theta_3dB must be positive");
                       },
                       [](const MultiLobe &p) {
                           if (p.lobes.empty())
                               throw DomainError("Multi-lobe pattern needs at least one lobe");
                           for (const auto &l : p.lobes)
                               if (!(l.width >= 0.0) || !(l.gain >= 0.0))
                                   throw DomainError("Multi-lobe widths and gains must be non-negative");
                       },
                       [](const Gaussian &p) {
                           if (!(p.side_gain >= 0.0) || !(p.main_gain >= p.side_gain))
                               throw DomainError("Gaussian pattern needs g_m >= g_s >= 0");
                           if (!(p.eta > 0.0))
                               throw DomainError("Gaussian eta must be positive");
                       },
                       [](const Cosine &p) {
                           if (p.elements < 1)
                               throw DomainError("Cosine pattern needs N >= 1");
                       },
                   },
                   pattern);
    }

    std::string pattern_name(const AntennaPattern &pattern)
    {
        static const char *names[] = {"ula", "sinc", "flattop", "multilobe", "gaussian", "cosine"};
        return names[pattern.index()];
    }

    bool uses_cosine_direction(const AntennaPattern &pattern)
    {
        return std::holds_alternative<UlaExact>(pattern) || std::holds_alternative<SincApprox>(pattern);
    }

    double gain(const AntennaPattern &pattern, double x)
    {
        return std::visit(overloaded{
                              [x](const UlaExact &p) { return ula_gain(p.elements, x); },
                              [x](const SincApprox &p) { return sinc_gain(p.elements, x); },
                              [x](const FlatTop &p) { return std::abs(x) <= p.theta_3db ? p.main_gain : p.side_gain; },
                              [x](const MultiLobe &p) { return multi_lobe_gain(p, x); },
                              [x](const Gaussian &p) {
                                  return (p.main_gain - p.side_gain) * std::exp(-p.eta * x * x) + p.side_gain;
                              },
                              [x](const Cosine &p) {
                                  if (std::abs(x) > 1.0 / p.elements)
                                      return 0.0;
                                  const double c = std::cos(pi * p.elements * x / 2.0);
                                  return c * c;
                              },
                          },
                          pattern);
    }

    double gain_at_offset(const AntennaPattern &pattern, double offset_rad)
    {
        const double theta = wrap_to_pi(offset_rad);
        if (const auto *u = std::get_if<UlaExact>(&pattern))
            return gain(pattern, u->spacing_over_lambda * std::sin(theta));
        if (std::holds_alternative<SincApprox>(pattern))
            return gain(pattern, 0.5 * std::sin(theta));
        return gain(pattern, theta);
    }

    double combined_gain(std::span<const AntennaPattern> beams, double offset_rad)
    {
        double g = 0.0;
        for (const auto &b : beams)
            g += gain_at_offset(b, offset_rad);
        return g;
    }

    double hpbw(const AntennaPattern &pattern)
    {
        validate(pattern);
        const double half = 0.5 * gain(pattern, 0.0);
        const double limit = hpbw_scan_limit(pattern);
        constexpr int steps = 200000;

        double lo = 0.0;
        for (int i = 1; i <= steps; ++i)
        {
            const double x = limit * i / steps;
            if (gain(pattern, x) <= half)
            {
                double hi = x;
                while (hi - lo > 1.0e-12)
                {
                    const double mid = 0.5 * (lo + hi);
                    (gain(pattern, mid) <= half ? hi : lo) = mid;
                }
                return 0.5 * (lo + hi);
            }
            lo = x;
        }
        throw DomainError("HPBW undefined: " + pattern_name(pattern) + " pattern never falls to half its peak gain");
    }

    double pattern_mse(const AntennaPattern &pattern, std::span<const PatternSample> samples)
    {
        if (samples.empty())
            throw ConfigError("MSE needs at least one sample");
        double acc = 0.0;
        for (const auto &s : samples)
        {
            const double e = gain(pattern, s.angle) - s.gain;
            acc += e * e;
        }
        return acc / static_cast<double>(samples.size());
    }

    MultiLobeFit fit_multi_lobe(std::span<const PatternSample> samples, int lobes)
    {
        if (lobes < 1)
            throw ConfigError("Multi-lobe fit needs K >= 1");
        const auto k_lobes = static_cast<std::size_t>(lobes);
        if (samples.size() < 2 * k_lobes)
            throw ConfigError("Multi-lobe fit with K = " + std::to_string(lobes) + " needs at least " +
                              std::to_string(2 * lobes) + " samples");
        for (const auto &s : samples)
            if (!(s.gain >= 0.0) || !std::isfinite(s.angle))
                throw ConfigError("Multi-lobe samples need finite angles and non-negative gains");

        std::vector<PatternSample> sorted(samples.begin(), samples.end());
        for (auto &s : sorted)
            s.angle = std::abs(s.angle);
        std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) { return a.angle < b.angle; });

        // Samples sharing |angle| cannot be separated by a boundary
        std::vector<double> group_angle;
        SegmentCost cost{{0.0}, {0.0}, {0.0}};
        double mean = 0.0;
        for (const auto &s : sorted)
            mean += s.gain;
        mean /= static_cast<double>(sorted.size());
        for (const auto &s : sorted)
        {
            if (group_angle.empty() || s.angle != group_angle.back())
            {
                group_angle.push_back(s.angle);
                cost.sum.push_back(cost.sum.back());
                cost.sum_sq.push_back(cost.sum_sq.back());
                cost.count.push_back(cost.count.back());
            }
            const double c = s.gain - mean; // centred to limit cancellation
            cost.sum.back() += c;
            cost.sum_sq.back() += c * c;
            cost.count.back() += 1.0;
        }
        const std::size_t groups = group_angle.size();
        if (k_lobes > groups)
            throw ConfigError("K = " + std::to_string(lobes) + " exceeds the " + std::to_string(groups) +
                              " distinct sample angles");

        // best[k][i]: least squared error covering groups [i, groups) with k steps
        constexpr double inf = std::numeric_limits<double>::infinity();
        std::vector<std::vector<double>> best(k_lobes + 1, std::vector<double>(groups + 1, inf));
        for (std::size_t i = 0; i < groups; ++i)
            best[1][i] = cost(i, groups - 1);
        for (std::size_t k = 2; k <= k_lobes; ++k)
            for (std::size_t i = 0; i + k <= groups; ++i)
                for (std::size_t j = i; j + k <= groups; ++j)
                    best[k][i] = std::min(best[k][i], cost(i, j) + best[k - 1][j + 1]);

        // Forward reconstruction; the first (smallest) end index within tolerance wins
        MultiLobeFit fit;
        std::size_t start = 0;
        double previous_boundary = 0.0;
        for (std::size_t k = k_lobes; k >= 1; --k)
        {
            std::size_t end = groups - 1;
            if (k > 1)
            {
                const double target = best[k][start];
                const double tol = 1.0e-12 * (1.0 + std::abs(target));
                for (std::size_t j = start; j + k <= groups; ++j)
                    if (cost(start, j) + best[k - 1][j + 1] <= target + tol)
                    {
                        end = j;
                        break;
                    }
            }
            // Mean gain of the step, summed directly from the samples
            double s = 0.0;
            std::size_t n = 0;
            for (const auto &smp : sorted)
                if (smp.angle >= group_angle[start] && smp.angle <= group_angle[end])
                {
                    s += smp.gain;
                    ++n;
                }
            const double boundary = group_angle[end];
            fit.pattern.lobes.push_back({boundary - previous_boundary, s / static_cast<double>(n)});
            previous_boundary = boundary;
            start = end + 1;
        }
        fit.mse = pattern_mse(fit.pattern, samples);
        return fit;
    }
}
