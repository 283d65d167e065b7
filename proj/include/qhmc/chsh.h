// Copyright 2026 The qhmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qhmc/bb84.h"
#include "qhmc/diagnostics.h"
#include "qhmc/hmc.h"
#include "qhmc/matrix.h"

namespace qhmc {

/// In-plane measurement angles: A_i = cos(phi_i) sx + sin(phi_i) sy and
/// B_j = cos(psi_j) sx + sin(psi_j) sy.
struct ChshSetting {
    double phi1 = 0;
    double phi2 = 0;
    double psi1 = 0;
    double psi2 = 0;

    /// phi = (0, pi/2), psi = (5pi/4, 3pi/4).
    static ChshSetting reference();
};

/// <sa x sb> for a, b in {x, y}: {xx, xy, yx, yy}.
using InPlaneCorrelations = std::array<double, 4>;

ComplexMatrix in_plane_observable(double angle);

/// tr{rho A x B}
double correlation(const ComplexMatrix &rho, const ComplexMatrix &a, const ComplexMatrix &b);

/// Standard-basis state.
InPlaneCorrelations in_plane_correlations(const ComplexMatrix &rho);

/// The same correlations read off crosshair probabilities, e.g.
/// <sx x sx> = 4 (p11 - p13 - p31 + p33).
InPlaneCorrelations in_plane_correlations(const Bb84Probabilities &p);

/// E(A1,B1) + E(A2,B1) + E(A1,B2) - E(A2,B2) from the correlation matrix.
double chsh_value(const InPlaneCorrelations &c, const ChshSetting &setting);

/// The same combination, each E evaluated as a trace against rho.
double chsh_fixed(const ComplexMatrix &rho, const ChshSetting &setting = ChshSetting::reference());

/// 8 sqrt(2) (p12 + p13 + p21 + p23 + p31 + p32 - 2 p22) - 2 sqrt(2), valid
/// for the reference setting.
double chsh_from_probs(const Bb84Probabilities &p);

/// 2 sqrt(sum of the squared in-plane correlations).
double chsh_optimized(const InPlaneCorrelations &c);
double chsh_optimized(const ComplexMatrix &rho);

struct ChshMaximum {
    ChshSetting setting;
    double value = 0;
};

/// Direct numerical maximization over the four angles by coordinate-wise
/// golden-section sweeps from several random starts.
ChshMaximum chsh_numerical_maximum(const InPlaneCorrelations &c, uint64_t seed, int starts = 8);

enum class ChshMode { fixed, optimized };

struct ChshSummary {
    std::vector<double> values;
    std::vector<double> weights;
    std::vector<HistogramBin> s_histogram;
    /// Histogram of S^2 / 4 over [0, 2].
    std::vector<HistogramBin> s2_histogram;
    double mean = 0;
    double median = 0;
    double q05 = 0;
    double q95 = 0;
    double fraction_abs_above_2 = 0;
    double fraction_above_2 = 0;
    double fraction_s2_above_1 = 0;
};

/// S for every point of a sample with crosshair probabilities, honoring its
/// importance weights.
ChshSummary chsh_sample_summary(
    const SampleSet &samples, const ChshSetting &setting = ChshSetting::reference(), ChshMode mode = ChshMode::fixed,
    size_t bins = 50);

}  // namespace qhmc
