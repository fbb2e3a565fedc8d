#pragma once
// Deterministic random builders shared by the unit tests and the acceptance
// runner. Everything is seeded explicitly; no global RNG state.

#include <random>
#include <vector>

#include <rsfkit/rsfkit.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace testsup {

using rsfkit::CMat;
using rsfkit::Complex;
using rsfkit::CVec;
using rsfkit::Mat;
using rsfkit::Vec;

using Rng = std::mt19937_64;

template <class DerivedA, class DerivedB>
double max_diff(const Eigen::MatrixBase<DerivedA>& a,
                const Eigen::MatrixBase<DerivedB>& b) {
    if (a.size() == 0 && b.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

inline Mat random_matrix(Rng& rng, int rows, int cols, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) m(i, k) = g(rng);
    return m;
}

inline Vec random_vector(Rng& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return v;
}

inline CMat random_complex(Rng& rng, int rows, int cols, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) m(i, k) = Complex(g(rng), g(rng));
    return m;
}

inline CVec random_cvector(Rng& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
    return v;
}

inline Mat random_symmetric(Rng& rng, int n, double scale = 1.0) {
    const Mat m = random_matrix(rng, n, n, scale);
    return 0.5 * (m + m.transpose());
}

inline CMat random_hermitian(Rng& rng, int n, double scale = 1.0) {
    const CMat m = random_complex(rng, n, n, scale);
    return 0.5 * (m + m.adjoint());
}

inline CMat random_psd(Rng& rng, int n, double scale = 1.0) {
    const CMat b = random_complex(rng, n, n, scale);
    return b * b.adjoint();
}

// Haar-ish unitary: QR of a complex Gaussian matrix with the R diagonal's
// phases folded into Q.
inline CMat random_unitary(Rng& rng, int n) {
    const CMat a = random_complex(rng, n, n);
    Eigen::HouseholderQR<CMat> qr(a);
    CMat q = qr.householderQ();
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        q.col(k) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
}

// exp(J A) with A symmetric is symplectic.
inline Mat random_symplectic(Rng& rng, int n_modes, double scale = 0.4) {
    const Mat A = random_symmetric(rng, 2 * n_modes, scale);
    const Mat JA = rsfkit::symplectic_form(n_modes) * A;
    return JA.exp();
}

// Passive (orthogonal symplectic) matrix with mode-picture image u.
inline Mat passive_from_unitary(const CMat& u) {
    const CMat T = rsfkit::transfer_matrix(static_cast<int>(u.rows()));
    return (2.0 * (T.adjoint() * u * T).real()).eval();
}

inline Mat random_passive(Rng& rng, int n_modes) {
    return passive_from_unitary(random_unitary(rng, n_modes));
}

// Physical state built Williamson-style: V_cov = S diag(nu) S^T with
// symplectic eigenvalues nu_k >= 1/2, plus an optional displacement.
inline rsfkit::QuadratureState random_physical_state(Rng& rng, int n_modes,
                                                     bool displaced = true) {
    std::uniform_real_distribution<double> nu_dist(0.5, 2.5);
    Vec d(2 * n_modes);
    for (int k = 0; k < n_modes; ++k) d(2 * k) = d(2 * k + 1) = nu_dist(rng);
    const Mat S = random_symplectic(rng, n_modes);
    const Mat Vcov = S * d.asDiagonal() * S.transpose();
    const Vec xi = displaced ? random_vector(rng, 2 * n_modes) : Vec::Zero(2 * n_modes);
    return rsfkit::QuadratureState(Vcov + xi * xi.transpose(), xi);
}

// Passive Hamiltonian matrix assembled from its 2x2 block form:
// G_{kk'} = a_{kk'} 1 + (1 - delta_{kk'}) b_{kk'} J_2 with a symmetric and
// b antisymmetric. Commutes with J by construction.
inline Mat passive_g_blocks(const Mat& a, const Mat& b) {
    const int N = static_cast<int>(a.rows());
    Mat G = Mat::Zero(2 * N, 2 * N);
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
            G(2 * k, 2 * l) = a(k, l);
            G(2 * k + 1, 2 * l + 1) = a(k, l);
            if (k != l) {
                G(2 * k, 2 * l + 1) = b(k, l);
                G(2 * k + 1, 2 * l) = -b(k, l);
            }
        }
    return G;
}

inline Mat random_passive_g(Rng& rng, int n_modes, double scale = 1.0) {
    const Mat a = random_symmetric(rng, n_modes, scale);
    const Mat m = random_matrix(rng, n_modes, n_modes, scale);
    return passive_g_blocks(a, 0.5 * (m - m.transpose()));
}

// Per-mode damping rows sqrt(gamma_k) t_k (t_k = k-th transfer-matrix row).
inline CMat diagonal_damping_c(const Vec& gamma) {
    const int N = static_cast<int>(gamma.size());
    const CMat T = rsfkit::transfer_matrix(N);
    CMat C(N, 2 * N);
    for (int k = 0; k < N; ++k) C.row(k) = std::sqrt(gamma(k)) * T.row(k);
    return C;
}

// Compatible Gaussian generator: passive G, diagonal damping, passive K.
inline rsfkit::GaussianGenerator random_compatible_generator(Rng& rng, int n_modes,
                                                            int n_scatter = 0) {
    std::uniform_real_distribution<double> rate(0.0, 1.0);
    const Mat G = random_passive_g(rng, n_modes);
    Vec gamma(n_modes);
    for (int k = 0; k < n_modes; ++k) gamma(k) = rate(rng);
    std::vector<rsfkit::KScatteringTerm> terms;
    for (int i = 0; i < n_scatter; ++i)
        terms.push_back({0.5 * rate(rng), random_passive(rng, n_modes)});
    return rsfkit::GaussianGenerator(G, diagonal_damping_c(gamma), terms);
}

}  // namespace testsup
