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

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhmc/parameterization.h"

namespace qhmc {

using ProbabilityVector = std::vector<double>;

/// Measurement counts per outcome. Real-valued so that count offsets
/// (-1/2 for the Jeffreys prior) and mock data are expressible.
using CountData = std::vector<double>;

/// Throws ConfigError unless every count is finite and >= -1/2.
void validate_counts(std::span<const double> counts);

enum class Pom { tetrahedron, pauli, trine, crosshair, bb84 };

Pom parse_pom(std::string_view name);
std::string_view pom_name(Pom pom);
size_t outcome_count(Pom pom);

/// Subset of the qubit state space the angles parameterize.
enum class Space {
    full,        // (t1, t2, t3), whole Bloch ball
    equatorial,  // (t2, t3) with t1 = pi/4, z = 0
    hemisphere,  // (t1, t3) with t2 = 0, upper half of the Bloch sphere
};

Space parse_space(std::string_view name);
std::string_view space_name(Space space);
size_t space_dimension(Space space);

/// Bloch vector of the qubit state at theta in the given space.
BlochVector qubit_embedding(Space space, std::span<const double> theta);

ProbabilityVector tetrahedron_probs(const BlochVector &b);
ProbabilityVector pauli_probs(const BlochVector &b);
ProbabilityVector trine_probs(double x, double y);
ProbabilityVector crosshair_probs(double x, double y);

/// Born probabilities of a single-qubit POM for Bloch vector b.
ProbabilityVector qubit_probs(Pom pom, const BlochVector &b);

/// True iff p satisfies every positivity, sum and quadratic constraint of
/// the named POM within 1e-10.
bool validate_constraints(std::span<const double> p, Pom pom);

using LogDensityFn = std::function<double(std::span<const double>)>;
using ForceFn = std::function<void(std::span<const double>, std::span<double>)>;
using DeriveFn = std::function<std::vector<double>(std::span<const double>)>;

/// Unnormalized log-density over angle space plus its gradient (the force).
///
/// log_w may be -infinity and force may be non-finite on measure-zero
/// singular sets; samplers treat both as rejection.
struct TargetDensity {
    size_t dim = 0;
    std::string label;
    LogDensityFn log_w;
    ForceFn force;
    /// Outcome probabilities of the point (empty when the target has no POM).
    DeriveFn probabilities;
    /// Auxiliary coordinates recorded with each sample (e.g. the BB84 q).
    DeriveFn auxiliary;

    std::vector<double> force_at(std::span<const double> theta) const;
};

/// Force computed by central differences of log_w with step
/// rel_step * (1 + |theta_s|) in coordinate s.
ForceFn finite_difference_force(LogDensityFn log_w, size_t dim, double rel_step = 1e-5);

/// Outcome probabilities as a function of the angles, optionally with the
/// (outcomes x dim, row-major) gradient.
struct ProbabilityMap {
    std::string label;
    size_t dim = 0;
    size_t outcomes = 0;
    std::function<void(std::span<const double>, std::span<double>)> probs;
    std::function<void(std::span<const double>, std::span<double>)> gradient;
};

/// Log of the volume element converting the probability-space density to
/// angle space, optionally with its gradient.
struct Measure {
    std::string label;
    std::function<double(std::span<const double>)> log_measure;
    std::function<void(std::span<const double>, std::span<double>)> gradient;
};

/// Single-qubit POM over a reconstruction space. Tetrahedron and Pauli need
/// Space::full; trine and crosshair need a two-angle space.
ProbabilityMap qubit_probability_map(Pom pom, Space space);

/// Analytic volume element of a qubit reconstruction space.
Measure qubit_measure(Space space);

/// log of numeric_jacobian(map); -infinity where the map is singular.
Measure numeric_measure(CoordinateMap map, std::string label);

/// log w = log measure + sum_k n_k log p_k. The force is analytic when both
/// the map and the measure carry gradients, finite differences otherwise.
TargetDensity generic_posterior_target(ProbabilityMap map, Measure measure, CountData counts);

/// Primitive prior over the full qubit state space:
/// w = |sin(2 t1)^3 sin(2 t2)|, u = (6 cot 2t1, 2 cot 2t2, 0).
/// `derived` selects which POM's probabilities are attached to samples.
TargetDensity primitive_qubit_target(Pom derived = Pom::tetrahedron);

/// Trine posterior on the equatorial disk in (t2, t3):
/// w = |sin 2t2| prod_k (1 + cos t2 cos t3k)^n_k with t3k = t3, t3 - 2pi/3,
/// t3 + 2pi/3, and the matching closed-form force.
TargetDensity trine_posterior_target(CountData counts);

enum class PriorKind { primitive, jeffreys, conjugate };

PriorKind parse_prior(std::string_view name);
std::string_view prior_name(PriorKind prior);

/// Counts fed to the posterior: data for the primitive prior, data - 1/2 for
/// Jeffreys, data + mock counts for a conjugate prior.
CountData effective_counts(std::span<const double> data, PriorKind prior, std::span<const double> mock = {});

/// Posterior for any single-qubit POM and reconstruction space.
TargetDensity qubit_posterior_target(Pom pom, Space space, CountData counts);

}  // namespace qhmc
