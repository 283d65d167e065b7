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

#include <span>
#include <string>
#include <vector>

#include "qhmc/hmc.h"

namespace qhmc {

/// Normalized autocorrelation rho(0..max_lag); all zero past lag 0 for a
/// constant series.
std::vector<double> autocorrelation(std::span<const double> series, size_t max_lag);

struct SeriesDiagnostics {
    std::string name;
    /// Autocorrelation up to the reported lag (200 by default).
    std::vector<double> acf;
    /// Integrated autocorrelation time, truncated at the first non-positive
    /// sum of adjacent autocorrelation pairs (initial positive sequence).
    double integrated_time = 1;
    double effective_sample_size = 0;
    /// Set for constant series; then integrated_time = n and ESS = 1.
    bool degenerate = false;
};

SeriesDiagnostics analyze_series(std::span<const double> series, size_t max_lag = 200, std::string name = {});

/// Integrated autocorrelation time alone (initial positive sequence).
double integrated_autocorrelation_time(std::span<const double> series);

struct DiagnosticsReport {
    size_t points = 0;
    double acceptance_rate = 0;
    /// theta_1..theta_S followed by p_1..p_K when probabilities are present.
    std::vector<SeriesDiagnostics> series;
    std::vector<std::string> warnings;
};

/// Per-coordinate ACF, integrated time and ESS, plus tuning warnings: the
/// acceptance rate should sit in [0.6, 0.9] once the dimension reaches 4.
DiagnosticsReport diagnostics(const SampleSet &samples, size_t max_lag = 200);

struct HistogramBin {
    double left = 0;
    double right = 0;
    /// Weighted density: bin weight / (total weight * bin width).
    double density = 0;
};

/// Values outside [lo, hi] are dropped from the bins but counted in the
/// normalization, so the densities integrate to the in-range weight fraction.
std::vector<HistogramBin> weighted_histogram(
    std::span<const double> values, std::span<const double> weights, double lo, double hi, size_t bins);

/// Weighted quantile with weights treated as probability masses; empty
/// weights mean unit weights.
double weighted_quantile(std::span<const double> values, std::span<const double> weights, double level);

double weighted_mean(std::span<const double> values, std::span<const double> weights);

}  // namespace qhmc
