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

#include "qhmc/diagnostics.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace qhmc {

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// FFTW planning is not thread-safe; execution is.
std::mutex fftw_plan_mutex;

/// Autocovariances at every lag 0..n-1 of a centered series, normalized by
/// n, via a zero-padded FFT.
std::vector<double> autocovariances(std::span<const double> centered) {
    size_t n = centered.size();
    size_t padded = 2 * n;
    size_t spectrum = padded / 2 + 1;
    std::vector<double> signal(padded, 0.0);
    std::copy(centered.begin(), centered.end(), signal.begin());
    std::vector<std::complex<double>> freq(spectrum);
    auto *freq_ptr = reinterpret_cast<fftw_complex *>(freq.data());
    fftw_plan forward, backward;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        forward = fftw_plan_dft_r2c_1d(static_cast<int>(padded), signal.data(), freq_ptr, FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_1d(static_cast<int>(padded), freq_ptr, signal.data(), FFTW_ESTIMATE);
    }
    fftw_execute(forward);
    for (auto &z : freq) {
        z = std::norm(z);
    }
    fftw_execute(backward);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    std::vector<double> out(n);
    for (size_t lag = 0; lag < n; lag++) {
        out[lag] = signal[lag] / static_cast<double>(padded) / static_cast<double>(n);
    }
    return out;
}

std::vector<double> centered(std::span<const double> series) {
    double m = mean_of(series);
    std::vector<double> c(series.size());
    for (size_t i = 0; i < series.size(); i++) {
        c[i] = series[i] - m;
    }
    return c;
}

double unit_weight(std::span<const double> weights, size_t i) {
    return weights.empty() ? 1.0 : weights[i];
}

}  // namespace

std::vector<double> autocorrelation(std::span<const double> series, size_t max_lag) {
    std::vector<double> acf(max_lag + 1, 0.0);
    if (series.empty()) {
        return acf;
    }
    auto cov = autocovariances(centered(series));
    acf[0] = 1;
    if (cov[0] <= 0) {
        return acf;
    }
    for (size_t lag = 1; lag <= max_lag && lag < cov.size(); lag++) {
        acf[lag] = cov[lag] / cov[0];
    }
    return acf;
}

double integrated_autocorrelation_time(std::span<const double> series) {
    size_t n = series.size();
    if (n < 2) {
        return 1;
    }
    auto cov = autocovariances(centered(series));
    if (cov[0] <= 0) {
        return static_cast<double>(n);
    }
    double tau = -1;
    for (size_t m = 0; 2 * m + 1 < n; m++) {
        double pair = (cov[2 * m] + cov[2 * m + 1]) / cov[0];
        if (pair <= 0) {
            break;
        }
        tau += 2 * pair;
    }
    return std::max(tau, 1.0 / static_cast<double>(n));
}

SeriesDiagnostics analyze_series(std::span<const double> series, size_t max_lag, std::string name) {
    SeriesDiagnostics d;
    d.name = std::move(name);
    d.acf = autocorrelation(series, max_lag);
    auto n = static_cast<double>(series.size());
    auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    if (series.empty() || *lo == *hi) {
        d.degenerate = true;
        d.integrated_time = std::max(n, 1.0);
        d.effective_sample_size = 1;
        return d;
    }
    d.integrated_time = integrated_autocorrelation_time(series);
    d.effective_sample_size = n / d.integrated_time;
    return d;
}

DiagnosticsReport diagnostics(const SampleSet &samples, size_t max_lag) {
    DiagnosticsReport report;
    report.points = samples.size();
    report.acceptance_rate = samples.metadata.acceptance_rate;
    if (samples.size() == 0) {
        report.warnings.push_back("empty sample");
        return report;
    }
    size_t dim = samples.points.front().size();
    std::vector<double> column(samples.size());
    for (size_t s = 0; s < dim; s++) {
        for (size_t i = 0; i < samples.size(); i++) {
            column[i] = samples.points[i][s];
        }
        report.series.push_back(analyze_series(column, max_lag, "theta_" + std::to_string(s + 1)));
    }
    if (!samples.derived_probs.empty()) {
        size_t outcomes = samples.derived_probs.front().size();
        for (size_t k = 0; k < outcomes; k++) {
            for (size_t i = 0; i < samples.size(); i++) {
                column[i] = samples.derived_probs[i][k];
            }
            report.series.push_back(analyze_series(column, max_lag, "p_" + std::to_string(k + 1)));
        }
    }
    for (const auto &s : report.series) {
        if (s.degenerate) {
            report.warnings.push_back(s.name + " is constant over the sample");
        }
    }
    if (dim >= 4 && (report.acceptance_rate < 0.6 || report.acceptance_rate > 0.9)) {
        report.warnings.push_back(
            "acceptance rate " + std::to_string(report.acceptance_rate) +
            " is outside [0.6, 0.9]; adjust the step size or count");
    }
    return report;
}

std::vector<HistogramBin> weighted_histogram(
    std::span<const double> values, std::span<const double> weights, double lo, double hi, size_t bins) {
    if (bins == 0 || !(hi > lo)) {
        throw std::invalid_argument("histogram needs at least one bin and hi > lo");
    }
    if (!weights.empty() && weights.size() != values.size()) {
        throw std::invalid_argument("histogram weights do not match values");
    }
    std::vector<double> mass(bins, 0.0);
    double total = 0;
    double width = (hi - lo) / static_cast<double>(bins);
    for (size_t i = 0; i < values.size(); i++) {
        double w = unit_weight(weights, i);
        total += w;
        double v = values[i];
        if (!(v >= lo && v <= hi)) {
            continue;
        }
        auto b = static_cast<size_t>((v - lo) / width);
        mass[std::min(b, bins - 1)] += w;
    }
    std::vector<HistogramBin> out(bins);
    for (size_t b = 0; b < bins; b++) {
        out[b].left = lo + width * static_cast<double>(b);
        out[b].right = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
        out[b].density = total > 0 ? mass[b] / (total * width) : 0.0;
    }
    return out;
}

double weighted_quantile(std::span<const double> values, std::span<const double> weights, double level) {
    if (values.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    std::vector<size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
    double total = 0;
    for (size_t i = 0; i < values.size(); i++) {
        total += unit_weight(weights, i);
    }
    double target = level * total;
    double acc = 0;
    for (size_t i : order) {
        acc += unit_weight(weights, i);
        if (acc >= target) {
            return values[i];
        }
    }
    return values[order.back()];
}

double weighted_mean(std::span<const double> values, std::span<const double> weights) {
    double num = 0;
    double den = 0;
    for (size_t i = 0; i < values.size(); i++) {
        double w = unit_weight(weights, i);
        num += w * values[i];
        den += w;
    }
    return num / den;
}

}  // namespace qhmc
