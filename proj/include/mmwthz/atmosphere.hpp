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

#ifndef MMWTHZ_ATMOSPHERE_HPP
#define MMWTHZ_ATMOSPHERE_HPP

#include "mmwthz/units.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmwthz
{
    // Specific attenuation in [dB/km] to absorption coefficient in [Np/m]
    double db_per_km_to_nepers_per_m(double db_per_km);

    // ---------------------------------------------------------------------------------------------
    // Molecular absorption
    //
    // The spectrum is a sparse anchor table of specific attenuation [dB/km] over frequency.
    // Between two anchors the attenuation is interpolated log-linearly, i.e. ln(att) varies
    // linearly with frequency; if either neighbour is exactly zero the interpolation degrades to
    // plain linear. Queries outside [first, last] anchor throw ExtrapolationError.
    // ---------------------------------------------------------------------------------------------
    struct SpectrumAnchor
    {
        double frequency_hz;
        double db_per_km;
    };

    class AbsorptionSpectrum
    {
    public:
        explicit AbsorptionSpectrum(std::vector<SpectrumAnchor> anchors);

        // O2/H2O line strengths at 23, 60, 119, 183, 323 GHz and the 600-800 GHz window edges
        static AbsorptionSpectrum reference();

        // Uniform attenuation over [f_low, f_high]; zero gives a lossless medium
        static AbsorptionSpectrum constant(double db_per_km, Frequency f_low, Frequency f_high);

        static AbsorptionSpectrum from_json(const nlohmann::json &doc);
        static AbsorptionSpectrum load(const std::filesystem::path &file);

        double specific_attenuation_db_per_km(Frequency f) const;
        double absorption_coefficient(Frequency f) const; // kappa_a in [1/m]

        const std::vector<SpectrumAnchor> &anchors() const { return anchors_; }
        Frequency min_frequency() const { return Frequency(anchors_.front().frequency_hz); }
        Frequency max_frequency() const { return Frequency(anchors_.back().frequency_hz); }

    private:
        std::vector<SpectrumAnchor> anchors_;
    };

    // Beer-Lambert transmittance exp(-kappa_a(f) * r) over a path of r [m]
    PowerRatio transmittance(double distance_m, Frequency f, const AbsorptionSpectrum &spectrum);

    // ---------------------------------------------------------------------------------------------
    // Rain
    // ---------------------------------------------------------------------------------------------
    struct RainAnchor
    {
        double rate_mm_per_hr;
        double db_per_km;
    };

    // One regime covers [min_frequency, next regime's min_frequency); the last one is open-ended.
    struct RainRegime
    {
        std::string name;
        double min_frequency_hz;
        std::vector<RainAnchor> anchors; // strictly increasing rate, first anchor at rate 0
    };

    class RainTable
    {
    public:
        explicit RainTable(std::vector<RainRegime> regimes);

        // 28-38 GHz: 7 dB/km in heavy rain; >= 60 GHz: 2.55 / 20 / 42 dB/km at 2 / 50 / 150 mm/hr
        static RainTable reference();

        static RainTable from_json(const nlohmann::json &doc);
        static RainTable load(const std::filesystem::path &file);

        const RainRegime &regime_for(Frequency f) const;
        const std::vector<RainRegime> &regimes() const { return regimes_; }

    private:
        std::vector<RainRegime> regimes_;
    };

    // Specific rain attenuation in [dB/km], piecewise linear in rain rate
    double rain_attenuation(Frequency f, double rate_mm_per_hr, const RainTable &table);

    // ---------------------------------------------------------------------------------------------
    // Foliage
    // ---------------------------------------------------------------------------------------------
    struct FoliageAnchor
    {
        double frequency_hz;
        double loss_db;
    };

    class FoliageTable
    {
    public:
        explicit FoliageTable(std::vector<FoliageAnchor> anchors);

        // 17 / 22 / 25 dB at 28 / 60 / 90 GHz
        static FoliageTable reference();

        static FoliageTable from_json(const nlohmann::json &doc);
        static FoliageTable load(const std::filesystem::path &file);

        const std::vector<FoliageAnchor> &anchors() const { return anchors_; }

    private:
        std::vector<FoliageAnchor> anchors_;
    };

    // Foliage loss in [dB], linear in frequency between anchors
    double foliage_loss(Frequency f, const FoliageTable &table);

    // ---------------------------------------------------------------------------------------------
    // Material penetration at 28 GHz. Only the two measured configurations exist; no interpolation.
    // ---------------------------------------------------------------------------------------------
    enum class PenetrationCase
    {
        two_walls,
        four_doors
    };

    double penetration_loss_db(PenetrationCase c);
    std::optional<PenetrationCase> parse_penetration_case(std::string_view name);
    inline constexpr double penetration_reference_frequency_hz = 28.0e9;
}

#endif
