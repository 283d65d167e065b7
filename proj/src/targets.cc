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

#include "qhmc/targets.h"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "qhmc/bb84.h"
#include "qhmc/errors.h"

namespace qhmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kConstraintTol = 1e-10;

double cot(double a) {
    return std::cos(a) / std::sin(a);
}

/// sum_k n_k log p_k, skipping zero counts; -inf if an observed p_k <= 0.
double log_likelihood(std::span<const double> counts, std::span<const double> p) {
    double total = 0;
    for (size_t k = 0; k < counts.size(); k++) {
        if (counts[k] == 0) {
            continue;
        }
        if (!(p[k] > 0)) {
            return -kInf;
        }
        total += counts[k] * std::log(p[k]);
    }
    return total;
}

/// p = offset + M b for the single-qubit POMs; used for analytic gradients.
struct AffinePom {
    std::vector<double> offset;
    std::vector<std::array<double, 3>> slope;
};

AffinePom affine_pom(Pom pom) {
    const double r3 = std::sqrt(3.0);
    switch (pom) {
        case Pom::tetrahedron: {
            double c = 1 / (4 * r3);
            return {{0.25, 0.25, 0.25, 0.25}, {{{c, -c, -c}}, {{-c, c, -c}}, {{-c, -c, c}}, {{c, c, c}}}};
        }
        case Pom::pauli: {
            double c = 1.0 / 6;
            return {
                {c, c, c, c, c, c},
                {{{c, 0, 0}}, {{0, c, 0}}, {{0, 0, c}}, {{-c, 0, 0}}, {{0, -c, 0}}, {{0, 0, -c}}}};
        }
        case Pom::trine: {
            double c = 1.0 / 3;
            return {{c, c, c}, {{{c, 0, 0}}, {{-c / 2, c * r3 / 2, 0}}, {{-c / 2, -c * r3 / 2, 0}}}};
        }
        case Pom::crosshair: {
            double c = 0.25;
            return {{c, c, c, c}, {{{c, 0, 0}}, {{0, c, 0}}, {{-c, 0, 0}}, {{0, -c, 0}}}};
        }
        case Pom::bb84:
            break;
    }
    throw ConfigError("bb84 is not a single-qubit POM");
}

/// d(x, y, z)/d(theta) as 3 x dim, row-major.
void embedding_gradient(Space space, std::span<const double> theta, std::span<double> out) {
    switch (space) {
        case Space::full: {
            double s1 = std::sin(2 * theta[0]), c1 = std::cos(2 * theta[0]);
            double s2 = std::sin(theta[1]), c2 = std::cos(theta[1]);
            double s3 = std::sin(theta[2]), c3 = std::cos(theta[2]);
            double v[9] = {
                2 * c1 * c2 * c3, -s1 * s2 * c3, -s1 * c2 * s3,  // x
                2 * c1 * c2 * s3, -s1 * s2 * s3, s1 * c2 * c3,   // y
                -2 * s1,          0,             0,              // z
            };
            std::copy(std::begin(v), std::end(v), out.begin());
            return;
        }
        case Space::equatorial: {
            double s2 = std::sin(theta[0]), c2 = std::cos(theta[0]);
            double s3 = std::sin(theta[1]), c3 = std::cos(theta[1]);
            double v[6] = {-s2 * c3, -c2 * s3, -s2 * s3, c2 * c3, 0, 0};
            std::copy(std::begin(v), std::end(v), out.begin());
            return;
        }
        case Space::hemisphere: {
            double s1 = std::sin(2 * theta[0]), c1 = std::cos(2 * theta[0]);
            double s3 = std::sin(theta[1]), c3 = std::cos(theta[1]);
            double v[6] = {2 * c1 * c3, -s1 * s3, 2 * c1 * s3, s1 * c3, -2 * s1, 0};
            std::copy(std::begin(v), std::end(v), out.begin());
            return;
        }
    }
}

bool close(double a, double b) {
    return std::abs(a - b) <= kConstraintTol;
}

bool all_nonnegative(std::span<const double> p) {
    for (double v : p) {
        if (!(v >= -kConstraintTol)) {
            return false;
        }
    }
    return true;
}

}  // namespace

void validate_counts(std::span<const double> counts) {
    for (double n : counts) {
        if (!std::isfinite(n) || n < -0.5) {
            throw ConfigError("counts must be finite and >= -1/2, got " + std::to_string(n));
        }
    }
}

Pom parse_pom(std::string_view name) {
    if (name == "tetrahedron") return Pom::tetrahedron;
    if (name == "pauli") return Pom::pauli;
    if (name == "trine") return Pom::trine;
    if (name == "crosshair") return Pom::crosshair;
    if (name == "bb84-double-crosshair" || name == "bb84") return Pom::bb84;
    throw ConfigError("unknown POM '" + std::string(name) + "'");
}

std::string_view pom_name(Pom pom) {
    switch (pom) {
        case Pom::tetrahedron: return "tetrahedron";
        case Pom::pauli: return "pauli";
        case Pom::trine: return "trine";
        case Pom::crosshair: return "crosshair";
        case Pom::bb84: return "bb84-double-crosshair";
    }
    return "?";
}

size_t outcome_count(Pom pom) {
    switch (pom) {
        case Pom::tetrahedron: return 4;
        case Pom::pauli: return 6;
        case Pom::trine: return 3;
        case Pom::crosshair: return 4;
        case Pom::bb84: return 16;
    }
    return 0;
}

Space parse_space(std::string_view name) {
    if (name == "full") return Space::full;
    if (name == "equatorial") return Space::equatorial;
    if (name == "hemisphere") return Space::hemisphere;
    throw ConfigError("unknown reconstruction space '" + std::string(name) + "'");
}

std::string_view space_name(Space space) {
    switch (space) {
        case Space::full: return "full";
        case Space::equatorial: return "equatorial";
        case Space::hemisphere: return "hemisphere";
    }
    return "?";
}

size_t space_dimension(Space space) {
    return space == Space::full ? 3 : 2;
}

BlochVector qubit_embedding(Space space, std::span<const double> theta) {
    if (theta.size() != space_dimension(space)) {
        throw BadDimension("wrong angle count for reconstruction space " + std::string(space_name(space)));
    }
    switch (space) {
        case Space::full:
            return bloch_from_angles(theta);
        case Space::equatorial: {
            double r = std::cos(theta[0]);
            return {r * std::cos(theta[1]), r * std::sin(theta[1]), 0};
        }
        case Space::hemisphere: {
            double r = std::sin(2 * theta[0]);
            return {r * std::cos(theta[1]), r * std::sin(theta[1]), std::cos(2 * theta[0])};
        }
    }
    return {};
}

ProbabilityVector tetrahedron_probs(const BlochVector &b) {
    const double c = 1 / (4 * std::sqrt(3.0));
    return {
        0.25 + c * (b.x - b.y - b.z),
        0.25 + c * (b.y - b.z - b.x),
        0.25 + c * (b.z - b.x - b.y),
        0.25 + c * (b.x + b.y + b.z),
    };
}

ProbabilityVector pauli_probs(const BlochVector &b) {
    return {
        (1 + b.x) / 6, (1 + b.y) / 6, (1 + b.z) / 6, (1 - b.x) / 6, (1 - b.y) / 6, (1 - b.z) / 6,
    };
}

ProbabilityVector trine_probs(double x, double y) {
    // Outcome k has likelihood factor 1 + cos t2 cos(t3 + e_k), e = (0, -2pi/3, 2pi/3).
    ProbabilityVector p(3);
    const double offsets[3] = {0, -2 * std::numbers::pi / 3, 2 * std::numbers::pi / 3};
    for (size_t k = 0; k < 3; k++) {
        p[k] = (1 + x * std::cos(offsets[k]) - y * std::sin(offsets[k])) / 3;
    }
    return p;
}

ProbabilityVector crosshair_probs(double x, double y) {
    return {(1 + x) / 4, (1 + y) / 4, (1 - x) / 4, (1 - y) / 4};
}

ProbabilityVector qubit_probs(Pom pom, const BlochVector &b) {
    switch (pom) {
        case Pom::tetrahedron: return tetrahedron_probs(b);
        case Pom::pauli: return pauli_probs(b);
        case Pom::trine: return trine_probs(b.x, b.y);
        case Pom::crosshair: return crosshair_probs(b.x, b.y);
        case Pom::bb84: break;
    }
    throw ConfigError("bb84 is not a single-qubit POM");
}

bool validate_constraints(std::span<const double> p, Pom pom) {
    if (p.size() != outcome_count(pom) || !all_nonnegative(p)) {
        return false;
    }
    auto sum = [](std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); };
    auto sum_sq = [](std::span<const double> v) {
        return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
    };
    switch (pom) {
        case Pom::tetrahedron:
            return close(sum(p), 1) && sum_sq(p) <= 1.0 / 3 + kConstraintTol;
        case Pom::pauli: {
            double spread = 0;
            for (size_t k = 0; k < 3; k++) {
                if (!close(p[k] + p[k + 3], 1.0 / 3)) {
                    return false;
                }
                spread += (p[k] - p[k + 3]) * (p[k] - p[k + 3]);
            }
            return spread <= 1.0 / 9 + kConstraintTol;
        }
        case Pom::trine:
            return close(sum(p), 1) && sum_sq(p) <= 0.5 + kConstraintTol;
        case Pom::crosshair: {
            if (!close(p[0] + p[2], 0.5) || !close(p[1] + p[3], 0.5)) {
                return false;
            }
            double dx = p[0] - p[2], dy = p[1] - p[3];
            return dx * dx + dy * dy <= 0.25 + kConstraintTol;
        }
        case Pom::bb84:
            return physicality_check(Bb84Probabilities::from_span(p));
    }
    return false;
}

std::vector<double> TargetDensity::force_at(std::span<const double> theta) const {
    std::vector<double> u(dim);
    force(theta, u);
    return u;
}

ForceFn finite_difference_force(LogDensityFn log_w, size_t dim, double rel_step) {
    return [log_w = std::move(log_w), dim, rel_step](std::span<const double> theta, std::span<double> out) {
        std::vector<double> point(theta.begin(), theta.end());
        for (size_t s = 0; s < dim; s++) {
            double h = rel_step * (1 + std::abs(theta[s]));
            point[s] = theta[s] + h;
            double plus = log_w(point);
            point[s] = theta[s] - h;
            double minus = log_w(point);
            point[s] = theta[s];
            out[s] = (plus - minus) / (2 * h);
        }
    };
}

ProbabilityMap qubit_probability_map(Pom pom, Space space) {
    bool complete = pom == Pom::tetrahedron || pom == Pom::pauli;
    if (pom == Pom::bb84) {
        throw ConfigError("bb84 probabilities live in the bb84 module");
    }
    if (complete != (space == Space::full)) {
        throw ConfigError(
            std::string(pom_name(pom)) + " POM cannot be used with the " + std::string(space_name(space)) +
            " reconstruction space");
    }
    ProbabilityMap map;
    map.label = std::string(pom_name(pom)) + "/" + std::string(space_name(space));
    map.dim = space_dimension(space);
    map.outcomes = outcome_count(pom);
    map.probs = [pom, space](std::span<const double> theta, std::span<double> out) {
        auto p = qubit_probs(pom, qubit_embedding(space, theta));
        std::copy(p.begin(), p.end(), out.begin());
    };
    auto affine = affine_pom(pom);
    size_t dim = map.dim;
    map.gradient = [affine, space, dim](std::span<const double> theta, std::span<double> out) {
        std::vector<double> db(3 * dim);
        embedding_gradient(space, theta, db);
        for (size_t k = 0; k < affine.slope.size(); k++) {
            for (size_t s = 0; s < dim; s++) {
                double v = 0;
                for (size_t a = 0; a < 3; a++) {
                    v += affine.slope[k][a] * db[a * dim + s];
                }
                out[k * dim + s] = v;
            }
        }
    };
    return map;
}

Measure qubit_measure(Space space) {
    Measure m;
    m.label = std::string(space_name(space));
    switch (space) {
        case Space::full:
            m.log_measure = [](std::span<const double> t) { return std::log(jacobian_qubit_full(t[0], t[1])); };
            m.gradient = [](std::span<const double> t, std::span<double> out) {
                out[0] = 6 * cot(2 * t[0]);
                out[1] = 2 * cot(2 * t[1]);
                out[2] = 0;
            };
            break;
        case Space::equatorial:
            m.log_measure = [](std::span<const double> t) { return std::log(jacobian_equatorial(t[0])); };
            m.gradient = [](std::span<const double> t, std::span<double> out) {
                out[0] = 2 * cot(2 * t[0]);
                out[1] = 0;
            };
            break;
        case Space::hemisphere:
            m.log_measure = [](std::span<const double> t) { return std::log(jacobian_hemisphere(t[0])); };
            m.gradient = [](std::span<const double> t, std::span<double> out) {
                out[0] = 4 * cot(4 * t[0]);
                out[1] = 0;
            };
            break;
    }
    return m;
}

Measure numeric_measure(CoordinateMap map, std::string label) {
    Measure m;
    m.label = std::move(label);
    m.log_measure = [map = std::move(map)](std::span<const double> theta) {
        auto jac = finite_difference_jacobian(map, theta);
        double det = std::abs(real_determinant(jac, theta.size()));
        return det > 0 ? std::log(det) : -kInf;
    };
    return m;
}

TargetDensity generic_posterior_target(ProbabilityMap map, Measure measure, CountData counts) {
    if (counts.size() != map.outcomes) {
        throw ConfigError(
            "expected " + std::to_string(map.outcomes) + " counts for " + map.label + ", got " +
            std::to_string(counts.size()));
    }
    validate_counts(counts);
    TargetDensity t;
    t.dim = map.dim;
    t.label = "posterior " + map.label + " measure=" + measure.label;
    size_t outcomes = map.outcomes;
    t.log_w = [probs = map.probs, log_measure = measure.log_measure, counts, outcomes](std::span<const double> theta) {
        double lm = log_measure(theta);
        if (!(lm > -kInf)) {
            return -kInf;
        }
        std::vector<double> p(outcomes);
        probs(theta, p);
        return lm + log_likelihood(counts, p);
    };
    if (map.gradient && measure.gradient) {
        size_t dim = map.dim;
        t.force = [map, measure, counts, dim, outcomes](std::span<const double> theta, std::span<double> out) {
            measure.gradient(theta, out);
            std::vector<double> p(outcomes);
            std::vector<double> dp(outcomes * dim);
            map.probs(theta, p);
            map.gradient(theta, dp);
            for (size_t k = 0; k < outcomes; k++) {
                if (counts[k] == 0) {
                    continue;
                }
                for (size_t s = 0; s < dim; s++) {
                    out[s] += counts[k] * dp[k * dim + s] / p[k];
                }
            }
        };
    } else {
        t.force = finite_difference_force(t.log_w, t.dim);
    }
    t.probabilities = [probs = map.probs, outcomes](std::span<const double> theta) {
        std::vector<double> p(outcomes);
        probs(theta, p);
        return p;
    };
    return t;
}

TargetDensity primitive_qubit_target(Pom derived) {
    if (derived != Pom::tetrahedron && derived != Pom::pauli) {
        throw ConfigError("the full-qubit primitive prior derives tetrahedron or pauli probabilities");
    }
    TargetDensity t;
    t.dim = 3;
    t.label = "primitive prior, full qubit (" + std::string(pom_name(derived)) + ")";
    t.log_w = [](std::span<const double> theta) {
        double s1 = std::sin(2 * theta[0]);
        return std::log(std::abs(s1 * s1 * s1 * std::sin(2 * theta[1])));
    };
    t.force = [](std::span<const double> theta, std::span<double> out) {
        out[0] = 6 * cot(2 * theta[0]);
        out[1] = 2 * cot(2 * theta[1]);
        out[2] = 0;
    };
    t.probabilities = [derived](std::span<const double> theta) {
        return qubit_probs(derived, bloch_from_angles(theta));
    };
    return t;
}

TargetDensity trine_posterior_target(CountData counts) {
    if (counts.size() != 3) {
        throw ConfigError("the trine posterior needs exactly 3 counts");
    }
    validate_counts(counts);
    static constexpr double kShift[3] = {0, -2 * std::numbers::pi / 3, 2 * std::numbers::pi / 3};
    TargetDensity t;
    t.dim = 2;
    t.label = "trine posterior, equatorial";
    t.log_w = [counts](std::span<const double> theta) {
        double value = std::log(std::abs(std::sin(2 * theta[0])));
        double c2 = std::cos(theta[0]);
        for (size_t k = 0; k < 3; k++) {
            if (counts[k] == 0) {
                continue;
            }
            double factor = 1 + c2 * std::cos(theta[1] + kShift[k]);
            if (!(factor > 0)) {
                return -kInf;
            }
            value += counts[k] * std::log(factor);
        }
        return value;
    };
    t.force = [counts](std::span<const double> theta, std::span<double> out) {
        double s2 = std::sin(theta[0]), c2 = std::cos(theta[0]);
        double u2 = 2 * cot(2 * theta[0]);
        double u3 = 0;
        for (size_t k = 0; k < 3; k++) {
            double c3 = std::cos(theta[1] + kShift[k]);
            double s3 = std::sin(theta[1] + kShift[k]);
            double denom = 1 + c2 * c3;
            u2 -= counts[k] * s2 * c3 / denom;
            u3 -= counts[k] * c2 * s3 / denom;
        }
        out[0] = u2;
        out[1] = u3;
    };
    t.probabilities = [](std::span<const double> theta) {
        auto b = qubit_embedding(Space::equatorial, theta);
        return trine_probs(b.x, b.y);
    };
    return t;
}

PriorKind parse_prior(std::string_view name) {
    if (name == "primitive") return PriorKind::primitive;
    if (name == "jeffreys") return PriorKind::jeffreys;
    if (name == "conjugate") return PriorKind::conjugate;
    throw ConfigError("unknown prior '" + std::string(name) + "'");
}

std::string_view prior_name(PriorKind prior) {
    switch (prior) {
        case PriorKind::primitive: return "primitive";
        case PriorKind::jeffreys: return "jeffreys";
        case PriorKind::conjugate: return "conjugate";
    }
    return "?";
}

CountData effective_counts(std::span<const double> data, PriorKind prior, std::span<const double> mock) {
    CountData out(data.begin(), data.end());
    switch (prior) {
        case PriorKind::primitive:
            break;
        case PriorKind::jeffreys:
            for (double &n : out) {
                n -= 0.5;
            }
            break;
        case PriorKind::conjugate:
            if (mock.size() != data.size()) {
                throw ConfigError("conjugate prior needs one mock count per outcome");
            }
            for (size_t k = 0; k < out.size(); k++) {
                out[k] += mock[k];
            }
            break;
    }
    validate_counts(out);
    return out;
}

TargetDensity qubit_posterior_target(Pom pom, Space space, CountData counts) {
    auto t = generic_posterior_target(qubit_probability_map(pom, space), qubit_measure(space), std::move(counts));
    return t;
}

}  // namespace qhmc
