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

#ifndef MMWTHZ_NETSIM_HPP
#define MMWTHZ_NETSIM_HPP

#include "mmwthz/antenna.hpp"
#include "mmwthz/atmosphere.hpp"
#include "mmwthz/blockage.hpp"
#include "mmwthz/channel.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mmwthz
{
    enum class BandKind
    {
        mmwave,
        thz
    };

    enum class Alignment
    {
        // Serving pair aligned; interfering base stations also point their beams at the user (worst case)
        perfect_to_serving,
        // Serving pair aligned; each interferer's transmit beam points in a uniform direction on (-pi, pi]
        random_interferer_angles
    };

    // Deterministic base station added to every realisation (used for calibration scenarios)
    struct PinnedStation
    {
        double distance_m = 100.0;
        double bearing_rad = 0.0;
        std::optional<LinkState> state; // nullopt: drawn from the LOS model like any other link
    };

    // Downlink scenario seen by a typical user at the centre of a disc-shaped window.
    // Base stations form a PPP truncated to the disc.
    struct NetworkScenario
    {
        BandKind band = BandKind::mmwave;
        Frequency frequency = Frequency::ghz(28.0);
        double bs_density = 1.0e-4;       // [1/m^2]; zero leaves only pinned stations
        double window_radius_m = 1000.0;
        std::optional<LosModel> los_model; // nullopt: every link is LOS
        double self_block_cone_rad = 0.0;  // full angle of the user's self-blockage cone
        PathLossLaws pathloss{};           // mmWave links only
        std::optional<FadingSpec> fading;  // mmWave links only; nullopt: H = 1
        AntennaPattern tx_pattern = FlatTop{};
        AntennaPattern rx_pattern = FlatTop{};
        double tx_element_gain = 1.0; // linear scalar applied on top of tx_pattern
        double rx_element_gain = 1.0;
        double tx_power_w = 1.0;
        double noise_power_w = 1.0e-12;
        double bandwidth_hz = 1.0e9;
        Alignment alignment = Alignment::random_interferer_angles;
        std::optional<AbsorptionSpectrum> absorption; // THz only; nullopt: lossless medium
        std::optional<bool> interference;             // default: on for mmWave, off for THz
        std::vector<PinnedStation> pinned;

        bool interference_enabled() const { return interference.value_or(band == BandKind::mmwave); }
        void validate() const; // throws ConfigError / DomainError
    };

    struct CoveragePoint
    {
        double threshold_db = 0.0;
        double probability = 0.0;
    };

    struct LinkRecord
    {
        double distance_m = 0.0;
        bool los = true;
    };

    struct SimulationOptions
    {
        std::size_t workers = 1;
        std::size_t chunk_size = 256;         // trials per random stream; part of the reproducibility contract
        std::vector<double> thresholds_db{};  // empty: -20 dB to 40 dB in 2 dB steps
        bool record_links = false;            // keep (distance, LOS) of every PPP link for diagnostics
    };

    struct SimResult
    {
        std::vector<double> sinr_samples; // linear, one per trial; 0 marks an outage (no serving station)
        std::vector<CoveragePoint> coverage;
        double mean_rate_bps = 0.0;
        std::size_t trials = 0;
        std::uint64_t seed = 0;
        std::size_t outages = 0;
        std::vector<LinkRecord> links; // filled when record_links is set
    };

    std::vector<double> default_thresholds_db();

    // Runs `trials` independent network realisations. Bit-identical for a given (scenario, trials,
    // seed, chunk_size) whatever the number of workers.
    SimResult simulate(const NetworkScenario &scenario, std::size_t trials, std::uint64_t seed,
                       const SimulationOptions &options = {});

    // Empirical P[SINR > T] for each threshold T [dB]
    std::vector<CoveragePoint> coverage_curve(const SimResult &result, std::span<const double> thresholds_db);

    // Average received power of a single link without fading, as used for cell association
    double mean_link_power(const NetworkScenario &scenario, double distance_m, LinkState state, double tx_offset_rad,
                           double rx_offset_rad);
}

#endif
