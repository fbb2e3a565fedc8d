#pragma once
// Quadrature-space foundations: symplectic form, the transfer matrix that
// maps quadratures to mode operators, physicality checks, and the two-mode
// standard form.
//
// Conventions used throughout: quadratures are ordered (x_1, p_1, ..., x_N, p_N),
// hbar = 1, and second moments V = (1/2)<{xi, xi}> so the vacuum has V = 1/2.

#include <cmath>
#include <utility>

#include "rsfkit/common.hpp"

namespace rsfkit {

// J = direct sum over modes of [[0, 1], [-1, 0]].
inline Mat symplectic_form(int n_modes) {
    require(n_modes >= 1, "symplectic_form: n_modes must be positive");
    Mat J = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        J(2 * k, 2 * k + 1) = 1.0;
        J(2 * k + 1, 2 * k) = -1.0;
    }
    return J;
}

// T in C^{N x 2N}, row k = (<x_k| + i <p_k|) / sqrt(2), so that the vector
// of annihilation operators is a = T xi. Satisfies T T^+ = 1_N, T T^T = 0,
// T^+ T = (1 + iJ)/2 and T J T^+ = -i 1_N.
inline CMat transfer_matrix(int n_modes) {
    require(n_modes >= 1, "transfer_matrix: n_modes must be positive");
    CMat T = CMat::Zero(n_modes, 2 * n_modes);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < n_modes; ++k) {
        T(k, 2 * k)     = Complex(inv_sqrt2, 0.0);
        T(k, 2 * k + 1) = Complex(0.0, inv_sqrt2);
    }
    return T;
}

// First and second quadrature moments of an N-mode state.
struct QuadratureState {
    int n_modes = 0;
    Mat V;    // second moments, 2N x 2N symmetric
    Vec xi;   // first moments, length 2N

    QuadratureState(Mat V_in, Vec xi_in, double tol = kDefaultTol)
        : V(std::move(V_in)), xi(std::move(xi_in)) {
        require(V.rows() == V.cols(), "QuadratureState: V must be square");
        require(V.rows() >= 2 && V.rows() % 2 == 0,
                "QuadratureState: V must be 2N x 2N with N >= 1");
        require(xi.size() == V.rows(), "QuadratureState: xi length must match V");
        require((V - V.transpose()).norm() <= tol,
                "QuadratureState: V must be symmetric");
        V = symmetric_part(V);
        n_modes = static_cast<int>(V.rows()) / 2;
    }

    // Central second moments V - xi xi^T.
    Mat covariance() const { return V - xi * xi.transpose(); }
};

// --- common states ------------------------------------------------------

inline QuadratureState vacuum_state(int n_modes) {
    require(n_modes >= 1, "vacuum_state: n_modes must be positive");
    return QuadratureState(0.5 * Mat::Identity(2 * n_modes, 2 * n_modes),
                           Vec::Zero(2 * n_modes));
}

// Thermal state with mean occupation n_k per mode.
inline QuadratureState thermal_state(const Vec& n_bar) {
    const int n = static_cast<int>(n_bar.size());
    require(n >= 1, "thermal_state: need at least one mode");
    require(n_bar.minCoeff() >= 0.0, "thermal_state: occupations must be >= 0");
    Mat V = Mat::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k)
        V.block(2 * k, 2 * k, 2, 2) = (n_bar(k) + 0.5) * Mat::Identity(2, 2);
    return QuadratureState(V, Vec::Zero(2 * n));
}

// Coherent state |alpha_1> x ... x |alpha_N>: vacuum covariance displaced
// to xi = sqrt(2) (Re a_1, Im a_1, ...).
inline QuadratureState coherent_state(const CVec& alpha) {
    const int n = static_cast<int>(alpha.size());
    require(n >= 1, "coherent_state: need at least one mode");
    Vec xi(2 * n);
    const double s = std::sqrt(2.0);
    for (int k = 0; k < n; ++k) {
        xi(2 * k)     = s * alpha(k).real();
        xi(2 * k + 1) = s * alpha(k).imag();
    }
    return QuadratureState(0.5 * Mat::Identity(2 * n, 2 * n) + xi * xi.transpose(), xi);
}

// Single-mode squeezed vacuum with parameter s: V = diag(e^{2s}, e^{-2s}) / 2.
inline QuadratureState squeezed_vacuum_state(double s) {
    Mat V(2, 2);
    V << 0.5 * std::exp(2.0 * s), 0.0, 0.0, 0.5 * std::exp(-2.0 * s);
    return QuadratureState(V, Vec::Zero(2));
}

// --- physicality --------------------------------------------------------

struct HeisenbergReport {
    double min_eigenvalue = 0.0;  // of the Hermitian matrix V_cov + iJ/2
    bool physical = false;
};

// A state is physical iff V - xi xi^T + iJ/2 >= 0. The report keeps the
// smallest eigenvalue so callers can see the margin.
inline HeisenbergReport check_heisenberg(const QuadratureState& state,
                                         double tol = kDefaultTol) {
    const Mat J = symplectic_form(state.n_modes);
    CMat M = state.covariance().cast<Complex>() + Complex(0.0, 0.5) * J.cast<Complex>();
    const double lo = min_eigenvalue(hermitian_part(M));
    return HeisenbergReport{lo, lo >= -tol};
}

// S J S^T = J up to tol (Frobenius norm).
inline bool is_symplectic(const Mat& S, double tol = kDefaultTol) {
    require(S.rows() == S.cols() && S.rows() >= 2 && S.rows() % 2 == 0,
            "is_symplectic: S must be 2N x 2N");
    const Mat J = symplectic_form(static_cast<int>(S.rows()) / 2);
    return (S * J * S.transpose() - J).norm() <= tol;
}

// Passive (photon-number conserving) transformations are exactly the
// symplectic + orthogonal ones.
inline bool is_passive(const Mat& S, double tol = kDefaultTol) {
    require(S.rows() == S.cols() && S.rows() >= 2 && S.rows() % 2 == 0,
            "is_passive: S must be 2N x 2N");
    if (!is_symplectic(S, tol)) return false;
    const Mat I = Mat::Identity(S.rows(), S.cols());
    return (S * S.transpose() - I).norm() <= tol;
}

// --- two-mode standard form --------------------------------------------

// Parameters (a, b, c+, c-) of the local-symplectic standard form
// diag-blocks a 1, b 1 and off-diagonal block diag(c+, c-).
struct StandardFormParams {
    double a = 0.0;
    double b = 0.0;
    double c_plus = 0.0;
    double c_minus = 0.0;
};

// Extract the standard-form parameters of a physical two-mode state. The
// local invariants fix a^2 = det A, b^2 = det B and c+ c- = det C; rather
// than also using det V (whose quadratic loses half the significant digits
// whenever |c+| ~ |c-|, e.g. for two-mode squeezed states), reduce the
// cross block explicitly and read the magnitudes off its singular values.
// c+ carries the larger magnitude and is taken >= 0; sign(c-) = sign(det C),
// with det C = 0 resolving to c- = 0.
inline StandardFormParams standard_form(const QuadratureState& state,
                                        double tol = kDefaultTol) {
    require(state.n_modes == 2, "standard_form: defined for two-mode states");
    const HeisenbergReport hb = check_heisenberg(state, tol);
    if (!hb.physical)
        throw ValidationError("standard_form: state violates the Heisenberg bound");

    const Mat Vc = state.covariance();
    const Mat A = Vc.block(0, 0, 2, 2);
    const Mat B = Vc.block(2, 2, 2, 2);
    const Mat C = Vc.block(0, 2, 2, 2);
    const double detA = A.determinant();
    const double detB = B.determinant();
    const double detC = C.determinant();
    require(detA > 0.0 && detB > 0.0,
            "standard_form: local blocks must have positive determinant");

    const double a = std::sqrt(detA);
    const double b = std::sqrt(detB);

    // S_1 = (A/a)^{-1/2} and S_2 = (B/b)^{-1/2} are symmetric with unit
    // determinant, hence local symplectics, and bring the diagonal blocks to
    // a 1 and b 1. The remaining freedom is purely rotational, so the cross
    // block S_1 C S_2 has singular values |c+| >= |c-|.
    const auto inv_sqrt = [](const Mat& block, double det_root,
                             const char* what) {
        Eigen::SelfAdjointEigenSolver<Mat> es(block / det_root);
        require(es.eigenvalues().minCoeff() > 0.0, what);
        return Mat(es.operatorInverseSqrt());
    };
    const Mat M = inv_sqrt(A, a, "standard_form: block A must be positive definite")
                  * C
                  * inv_sqrt(B, b, "standard_form: block B must be positive definite");
    const Eigen::JacobiSVD<Mat> svd(M);

    StandardFormParams p;
    p.a = a;
    p.b = b;
    p.c_plus = svd.singularValues()(0);
    if (detC > 0.0)
        p.c_minus = svd.singularValues()(1);
    else if (detC < 0.0)
        p.c_minus = -svd.singularValues()(1);
    else
        p.c_minus = 0.0;
    return p;
}

}  // namespace rsfkit
