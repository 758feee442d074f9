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

#include "mmwthz/units.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mmwthz
{
    Frequency::Frequency(double hz) : hz_(hz)
    {
        if (!std::isfinite(hz) || hz <= 0.0)
            throw DomainError("Frequency must be positive and finite, got " + std::to_string(hz) + " Hz");
    }

    PowerRatio::PowerRatio(double linear) : linear_(linear)
    {
        if (std::isnan(linear) || linear < 0.0)
            throw DomainError("Power ratio must be non-negative, got " + std::to_string(linear));
    }

    PowerRatio PowerRatio::from_db(double db)
    {
        return db_to_linear(db);
    }

    double PowerRatio::db() const
    {
        if (linear_ == 0.0)
            return -std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(linear_);
    }

    Angle Angle::normalized() const
    {
        return Angle{wrap_to_pi(radians)};
    }

    PowerRatio db_to_linear(double db)
    {
        if (!std::isfinite(db))
            throw DomainError("dB value must be finite");
        return PowerRatio(std::pow(10.0, db / 10.0));
    }

    double linear_to_db(double linear)
    {
        if (std::isnan(linear) || linear < 0.0 || std::isinf(linear))
            throw DomainError("Linear ratio must be finite and non-negative, got " + std::to_string(linear));
        if (linear == 0.0)
            return -std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(linear);
    }

    double dbm_to_watts(double dbm)
    {
        return db_to_linear(dbm).linear() * 1.0e-3;
    }

    double watts_to_dbm(double watts)
    {
        return linear_to_db(watts * 1.0e3);
    }

    double wavelength(Frequency f)
    {
        return speed_of_light / f.in_hz();
    }

    double wrap_to_pi(double radians)
    {
        if (!std::isfinite(radians))
            throw DomainError("Angle must be finite");
        double w = std::remainder(radians, 2.0 * pi); // [-pi, pi]
        if (w <= -pi)
            w += 2.0 * pi;
        return w;
    }
}
