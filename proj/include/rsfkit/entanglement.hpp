#pragma once
// Two-mode entanglement diagnostics seen through the reduced field. The key
// fact: the reduced pair (r, alpha) of a two-mode Gaussian state never
// determines whether the state is entangled, because every reduced field is
// also realized by a separable Gaussian state (its "separable counterpart").

#include <cmath>

#include "rsfkit/common.hpp"
#include "rsfkit/reduced_field.hpp"
#include "rsfkit/symplectic.hpp"

namespace rsfkit {

// Necessary (not sufficient) condition for a two-mode Gaussian state in
// standard form to be entangled: the off-diagonal parameters must have
// opposite signs.
inline bool entanglement_necessary_condition(const StandardFormParams& p) {
    return p.c_plus * p.c_minus < 0.0;
}

// Two-mode squeezed vacuum with squeezing parameter s:
// diagonal blocks (cosh 2s / 2) 1_2, off-diagonal (sinh 2s / 2) diag(1, -1).
// Entangled for every s != 0.
inline QuadratureState tmsv_state(double s) {
    const double ch = 0.5 * std::cosh(2.0 * s);
    const double sh = 0.5 * std::sinh(2.0 * s);
    Mat V(4, 4);
    V << ch, 0.0, sh, 0.0,
         0.0, ch, 0.0, -sh,
         sh, 0.0, ch, 0.0,
         0.0, -sh, 0.0, ch;
    return QuadratureState(V, Vec::Zero(4));
}

// Separable two-mode Gaussian state (standard form, alpha = 0) whose reduced
// field has the prescribed correlation matrix r_alpha:
//   a = (r_alpha)_11 + 1/2,  b = (r_alpha)_22 + 1/2,  c+ = c- = Re (r_alpha)_12.
// Reducing the result gives back exactly Re(r_alpha); the real part of a PSD
// Hermitian matrix is again PSD, so the state always satisfies the Heisenberg
// bound, and c+ c- >= 0 means it always fails the entanglement condition
// above.
inline QuadratureState separable_counterpart(const CMat& r_alpha,
                                             double tol = kDefaultTol) {
    require(r_alpha.rows() == 2 && r_alpha.cols() == 2,
            "separable_counterpart: r_alpha must be 2 x 2");
    require((r_alpha - r_alpha.adjoint()).norm() <= tol,
            "separable_counterpart: r_alpha must be Hermitian");
    const CMat m = hermitian_part(r_alpha);
    require(min_eigenvalue(m) >= -tol, "separable_counterpart: r_alpha must be PSD");

    const double c = m(0, 1).real();
    const double a = m(0, 0).real() + 0.5;
    const double b = m(1, 1).real() + 0.5;

    Mat V(4, 4);
    V << a, 0.0, c, 0.0,
         0.0, a, 0.0, c,
         c, 0.0, b, 0.0,
         0.0, c, 0.0, b;
    QuadratureState state(V, Vec::Zero(4), tol);
    const HeisenbergReport hb = check_heisenberg(state, tol);
    require(hb.physical,
            "separable_counterpart: constructed state violates the Heisenberg "
            "bound; r_alpha is not a valid two-mode correlation matrix");
    return state;
}

}  // namespace rsfkit
