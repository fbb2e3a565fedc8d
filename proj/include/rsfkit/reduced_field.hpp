#pragma once
// Reduced description of a bosonic field: the single-particle density matrix
// r_{kk'} = <a_{k'}^+ a_k> together with the averaged field alpha_k = <a_k>,
// plus the conjugate sector c_{kk'} = <a_k a_{k'}> needed to make the mode
// picture equivalent to the quadrature one.

#include <utility>

#include "rsfkit/common.hpp"
#include "rsfkit/symplectic.hpp"

namespace rsfkit {

struct ReducedField {
    int n_modes = 0;
    CMat r;      // N x N Hermitian, diag >= 0 (mode occupations)
    CVec alpha;  // length N

    ReducedField(CMat r_in, CVec alpha_in, double tol = kDefaultTol)
        : r(std::move(r_in)), alpha(std::move(alpha_in)) {
        require(r.rows() == r.cols() && r.rows() >= 1,
                "ReducedField: r must be square and non-empty");
        require(alpha.size() == r.rows(), "ReducedField: alpha length must match r");
        require((r - r.adjoint()).norm() <= tol, "ReducedField: r must be Hermitian");
        r = hermitian_part(r);
        for (int k = 0; k < r.rows(); ++k)
            require(r(k, k).real() >= -tol,
                    "ReducedField: mode occupations r_kk must be >= 0");
        n_modes = static_cast<int>(r.rows());
    }
};

// Conjugate sector: c is complex symmetric, alpha_star = conj(alpha).
struct ConjugateField {
    int n_modes = 0;
    CMat c;
    CVec alpha_star;

    ConjugateField(CMat c_in, CVec alpha_star_in, double tol = kDefaultTol)
        : c(std::move(c_in)), alpha_star(std::move(alpha_star_in)) {
        require(c.rows() == c.cols() && c.rows() >= 1,
                "ConjugateField: c must be square and non-empty");
        require(alpha_star.size() == c.rows(),
                "ConjugateField: alpha_star length must match c");
        require((c - c.transpose()).norm() <= tol,
                "ConjugateField: c must be complex symmetric");
        c = 0.5 * (c + c.transpose());
        n_modes = static_cast<int>(c.rows());
    }
};

// Both sectors assembled into the doubled-mode objects
//   g = [[r, c], [c^*, r^T + 1]],  A = alpha (+) alpha^*.
struct GeneralizedField {
    int n_modes = 0;
    CMat g;      // 2N x 2N
    CVec A_vec;  // length 2N
};

// r = T V T^+ - 1/2, alpha = T xi. Requires a physical state.
inline ReducedField reduce(const QuadratureState& state, double tol = kDefaultTol) {
    const HeisenbergReport hb = check_heisenberg(state, tol);
    if (!hb.physical)
        throw ValidationError("reduce: state violates the Heisenberg bound");
    const CMat T = transfer_matrix(state.n_modes);
    const int N = state.n_modes;
    CMat r = T * state.V.cast<Complex>() * T.adjoint()
             - 0.5 * CMat::Identity(N, N);
    CVec alpha = T * state.xi.cast<Complex>();
    return ReducedField(std::move(r), std::move(alpha), tol);
}

// c = T V T^T, alpha^* = T^* xi = conj(alpha).
inline ConjugateField conjugate_reduce(const QuadratureState& state,
                                       double tol = kDefaultTol) {
    const HeisenbergReport hb = check_heisenberg(state, tol);
    if (!hb.physical)
        throw ValidationError("conjugate_reduce: state violates the Heisenberg bound");
    const CMat T = transfer_matrix(state.n_modes);
    CMat c = T * state.V.cast<Complex>() * T.transpose();
    CVec alpha_star = T.conjugate() * state.xi.cast<Complex>();
    return ConjugateField(std::move(c), std::move(alpha_star), tol);
}

inline GeneralizedField generalized_field(const ReducedField& rf,
                                          const ConjugateField& cf,
                                          double tol = kDefaultTol) {
    require(rf.n_modes == cf.n_modes,
            "generalized_field: sector sizes must match");
    require((rf.alpha.conjugate() - cf.alpha_star).norm() <= tol,
            "generalized_field: alpha_star must equal conj(alpha)");
    const int N = rf.n_modes;
    GeneralizedField gf;
    gf.n_modes = N;
    gf.g = CMat::Zero(2 * N, 2 * N);
    gf.g.block(0, 0, N, N) = rf.r;
    gf.g.block(0, N, N, N) = cf.c;
    gf.g.block(N, 0, N, N) = cf.c.conjugate();
    gf.g.block(N, N, N, N) = rf.r.transpose() + CMat::Identity(N, N);
    gf.A_vec = CVec(2 * N);
    gf.A_vec.head(N) = rf.alpha;
    gf.A_vec.tail(N) = cf.alpha_star;
    return gf;
}

namespace detail {

// Eigenvalues of r - alpha alpha^+, ascending, with the clamp window
// (-tol, 0) mapped to 0. Negative beyond tol is an error: the field does
// not come from a physical state.
inline Vec correlation_eigenvalues(const ReducedField& rf, double tol) {
    const CMat m = hermitian_part(rf.r - rf.alpha * rf.alpha.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    Vec ev = es.eigenvalues();
    for (int k = 0; k < ev.size(); ++k) {
        require(ev(k) >= -tol,
                "correlation_matrix: r - alpha alpha^+ has a negative eigenvalue "
                "beyond tolerance");
        if (ev(k) < 0.0) ev(k) = 0.0;
    }
    return ev;
}

}  // namespace detail

// r_alpha = r - alpha alpha^+, clamped to the PSD cone within tol.
inline CMat correlation_matrix(const ReducedField& rf, double tol = kDefaultTol) {
    const CMat m = hermitian_part(rf.r - rf.alpha * rf.alpha.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    Vec ev = es.eigenvalues();
    for (int k = 0; k < ev.size(); ++k) {
        require(ev(k) >= -tol,
                "correlation_matrix: r - alpha alpha^+ has a negative eigenvalue "
                "beyond tolerance");
        if (ev(k) < 0.0) ev(k) = 0.0;
    }
    return es.eigenvectors() * ev.asDiagonal().toDenseMatrix().cast<Complex>()
           * es.eigenvectors().adjoint();
}

}  // namespace rsfkit
