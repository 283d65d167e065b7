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
#include <span>
#include <string_view>
#include <vector>

#include "qhmc/hmc.h"
#include "qhmc/matrix.h"
#include "qhmc/targets.h"

namespace qhmc {

/// Joint outcome probabilities p_jk of a crosshair measurement on each qubit.
///
/// j labels the first qubit's outcome and k the second's, both 1..4 meaning
/// +x, +y, -x, -y. Stored row-major: p11, p12, ..., p44.
struct Bb84Probabilities {
    std::array<double, 16> values{};

    static Bb84Probabilities from_span(std::span<const double> p);
    static Bb84Probabilities uniform();

    /// 1-based access, p(j, k) = p_jk.
    double operator()(int j, int k) const {
        return values[(j - 1) * 4 + (k - 1)];
    }

    /// p22 - p24 - p42 + p44
    double p_even() const;
};

/// Nonnegativity, normalization and the crosshair marginal constraints
/// (p_1k + p_3k = p_2k + p_4k and p_j1 + p_j3 = p_j2 + p_j4).
bool satisfies_basic_constraints(const Bb84Probabilities &p);

/// The real matrix with -1 at (1,4), (4,1) and +1 at (2,3), (3,2): sigma_y x
/// sigma_y of the reconstruction basis, which is sigma_z x sigma_z of the
/// standard basis.
const ComplexMatrix &sigma_matrix();

/// The q = 0 member of the reconstruction family. Throws ConstraintViolation
/// if p fails the basic constraints.
ComplexMatrix rho0_from_probs(const Bb84Probabilities &p);

/// rho0 + (q/4) Sigma
ComplexMatrix rho_of_q(const Bb84Probabilities &p, double q);

/// Ascending coefficients c0..c4 of det rho(q), obtained by interpolating the
/// determinant at q = -2, -1, 0, 1, 2 in quad precision.
std::array<double, 5> det_quartic(const Bb84Probabilities &p);

/// The same quartic assembled from trace formulas, with the linear term
/// tr{(rho0^2 - rho0^3) Sigma} (q/4) taken literally.
std::array<double, 5> det_quartic_closed_form(const Bb84Probabilities &p);

/// The same quartic from the characteristic-polynomial expansion, whose
/// linear term is tr{(Sigma rho0)^3} / 3 (q/4).
std::array<double, 5> det_quartic_traces(const Bb84Probabilities &p);

struct QInterval {
    double q_min = -1;
    double q_max = 1;

    double width() const {
        return q_max - q_min;
    }
    bool contains(double q, double slack = 0) const {
        return q >= q_min - slack && q <= q_max + slack;
    }
};

/// Largest interval within [-1, 1] on which rho_of_q(p, q) is positive.
///
/// The smallest eigenvalue of an affine matrix family is concave in q, so a
/// golden-section search finds its maximum and bisection then locates both
/// zero crossings. A maximum in [-1e-6, 0) is treated as rounding and gives
/// the one-point interval at the maximizer. Throws NotPhysical when the
/// maximum is below -1e-6 and ConstraintViolation for p failing the basic
/// constraints.
QInterval q_bounds(const Bb84Probabilities &p);

/// Second and third sorted real roots of det_quartic, clamped to [-1, 1].
/// Roots are located in quad precision so that nearly colliding pairs stay
/// resolved. Throws NotPhysical unless all four roots are real.
QInterval q_bounds_from_quartic(const Bb84Probabilities &p);

/// True iff p satisfies the basic constraints and some q in [-1, 1] makes
/// rho_of_q(p, q) positive.
bool physicality_check(const Bb84Probabilities &p);

/// Probabilities tr{rho E_jk} of a 4x4 state given in the reconstruction basis.
Bb84Probabilities probabilities_from_reconstruction(const ComplexMatrix &rho);

/// tr{rho Sigma} of a 4x4 state given in the reconstruction basis.
double q_from_reconstruction(const ComplexMatrix &rho);

/// Real density matrix of the nine modulus angles with all phases set to 0.
ComplexMatrix nine_angle_density(std::span<const double> theta);

struct NineAnglePoint {
    Bb84Probabilities p;
    double q = 0;
};

NineAnglePoint nine_angle_map(std::span<const double> theta);

/// The nine sampling coordinates: p11, p31, p13, p21 - p41, p12 - p14,
/// p32 - p34, p23 - p43, p_even and q.
std::array<double, 9> bb84_coordinates(const Bb84Probabilities &p, double q);

/// |det d(coordinates)/d(theta)| evaluated by the chain rule through
/// rho = A^T A. Zero at singular points.
double nine_angle_jacobian(std::span<const double> theta);

/// The same determinant from central differences of the coordinate map.
double nine_angle_jacobian_numeric(std::span<const double> theta);

/// Nine-angle density |J(theta)| prod p_jk^n_jk; q is carried as auxiliary.
TargetDensity bb84_target(CountData counts);

/// Attaches the weight 1 / (q_max(p) - q_min(p)) to each point. Widths
/// below 1e-9 get the weight 1e9 and are counted in
/// metadata.degenerate_weights.
SampleSet reweight_marginal(SampleSet samples);

/// Standard-basis (first qubit slow) two-qubit state: "singlet", "triplet"
/// (the m = 0 triplet), or "mixed", blended with identity/4 by noise.
ComplexMatrix two_qubit_state(std::string_view name, double noise = 0);

/// Born probabilities of a standard-basis two-qubit state under crosshair
/// measurements on both qubits.
Bb84Probabilities bb84_probabilities(const ComplexMatrix &rho_standard);

/// Maps a reconstruction-basis matrix to the standard basis.
ComplexMatrix reconstruction_to_standard(const ComplexMatrix &rho);

/// Maps a standard-basis matrix to the reconstruction basis.
ComplexMatrix standard_to_reconstruction(const ComplexMatrix &rho);

}  // namespace qhmc
