#pragma once
// Time-dependent Bogoliubov frames for an open system of N modes coupled to
// N environment modes (environment prepared in vacuum), and their reduction
// to the mode-picture kinetic equations.
//
// The frame X(t) acts on (a_S, a_E, a_S^+, a_E^+) and is pseudo-unitary,
// X S X^+ = S with S = diag(1_{2N}, -1_{2N}). It carries the block layout
//
//   X = [[X_up, X_down], [X_down^*, X_up^*]],
//
// with each 2N x 2N arrow block split again into N x N system/environment
// blocks [[S, C], [C', E]]. The evolution closes on the reduced field iff
// the particle <-> hole mixing within the system vanishes: X_downS = 0.
// The resulting generator is built from
//
//   Y = (dX_upS/dt) X_upS^-1,   D = X_downC X_downC^+,
//   W = dD/dt - Y (D + 1/2) - (D + 1/2) Y^+,
//   h = -hbar Y_i,   gamma_up/down = W +/- Y_r,   zeta = 0, no scattering,
//
// where Y_r and Y_i are the Hermitian and anti-Hermitian parts of Y.

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "rsfkit/common.hpp"
#include "rsfkit/dynamics.hpp"

namespace rsfkit {

// Conversions are refused when X_upS is numerically singular.
inline constexpr double kMaxFrameCondition = 1e8;

// diag(1_{2N}, -1_{2N})
inline Mat bogoliubov_metric(int n_modes) {
    require(n_modes >= 1, "bogoliubov_metric: n_modes must be positive");
    Mat S = Mat::Identity(4 * n_modes, 4 * n_modes);
    S.block(2 * n_modes, 2 * n_modes, 2 * n_modes, 2 * n_modes) *=
        -1.0;
    return S;
}

struct BogoliubovFrame {
    int n_modes = 0;  // N; X and dX are 4N x 4N
    CMat X;
    CMat dX;

    // Validates the arrow-block structure and pseudo-unitarity. Tolerances
    // scale with ||X||^2 since the defect of X S X^+ - S does.
    BogoliubovFrame(CMat X_in, CMat dX_in, double tol = kDefaultTol)
        : X(std::move(X_in)), dX(std::move(dX_in)) {
        require(X.rows() == X.cols() && X.rows() >= 4 && X.rows() % 4 == 0,
                "BogoliubovFrame: X must be 4N x 4N");
        require(dX.rows() == X.rows() && dX.cols() == X.cols(),
                "BogoliubovFrame: dX must match X in shape");
        n_modes = static_cast<int>(X.rows()) / 4;
        const int m = 2 * n_modes;
        const double scale = std::max(1.0, X.squaredNorm());
        auto structured = [&](const CMat& M) {
            return (M.block(m, 0, m, m) - M.block(0, m, m, m).conjugate()).norm()
                       <= tol * scale
                && (M.block(m, m, m, m) - M.block(0, 0, m, m).conjugate()).norm()
                       <= tol * scale;
        };
        require(structured(X), "BogoliubovFrame: X lacks the [[A,B],[B*,A*]] structure");
        require(structured(dX), "BogoliubovFrame: dX lacks the [[A,B],[B*,A*]] structure");
        const Mat S = bogoliubov_metric(n_modes);
        require((X * S.cast<Complex>() * X.adjoint() - S.cast<Complex>()).norm()
                    <= tol * scale,
                "BogoliubovFrame: X is not pseudo-unitary (X S X^+ != S)");
    }

    static BogoliubovFrame from_blocks(const CMat& X_up, const CMat& X_down,
                                       const CMat& dX_up, const CMat& dX_down,
                                       double tol = kDefaultTol) {
        require(X_up.rows() == X_up.cols() && X_up.rows() >= 2 && X_up.rows() % 2 == 0,
                "BogoliubovFrame: arrow blocks must be 2N x 2N");
        const auto m = X_up.rows();
        require(X_down.rows() == m && X_down.cols() == m && dX_up.rows() == m
                    && dX_up.cols() == m && dX_down.rows() == m && dX_down.cols() == m,
                "BogoliubovFrame: arrow blocks must share one shape");
        CMat X(2 * m, 2 * m), dX(2 * m, 2 * m);
        X << X_up, X_down, X_down.conjugate(), X_up.conjugate();
        dX << dX_up, dX_down, dX_down.conjugate(), dX_up.conjugate();
        return BogoliubovFrame(std::move(X), std::move(dX), tol);
    }

    // Builds the frame at time t from a path X(.), with dX obtained by a
    // central finite difference of half-width fd_step.
    static BogoliubovFrame from_path(const std::function<CMat(double)>& path, double t,
                                     double fd_step = 1e-6, double tol = kDefaultTol) {
        require(fd_step > 0.0, "BogoliubovFrame: fd_step must be positive");
        CMat dX = (path(t + fd_step) - path(t - fd_step)) / (2.0 * fd_step);
        return BogoliubovFrame(path(t), std::move(dX), tol);
    }

    CMat up() const { return X.block(0, 0, 2 * n_modes, 2 * n_modes); }
    CMat down() const { return X.block(0, 2 * n_modes, 2 * n_modes, 2 * n_modes); }
    CMat up_S() const { return X.block(0, 0, n_modes, n_modes); }
    CMat up_C() const { return X.block(0, n_modes, n_modes, n_modes); }
    CMat down_S() const { return X.block(0, 2 * n_modes, n_modes, n_modes); }
    CMat down_C() const { return X.block(0, 3 * n_modes, n_modes, n_modes); }
    CMat d_up_S() const { return dX.block(0, 0, n_modes, n_modes); }
    CMat d_down_C() const { return dX.block(0, 3 * n_modes, n_modes, n_modes); }
};

struct BogoliubovCompatibility {
    double down_s_norm = 0.0;  // ||X_downS||_F
    bool compatible = false;
};

inline BogoliubovCompatibility check_bogoliubov_compatibility(
    const BogoliubovFrame& frame, double tol = kDefaultTol) {
    BogoliubovCompatibility rep;
    rep.down_s_norm = frame.down_S().norm();
    rep.compatible = rep.down_s_norm <= tol;
    return rep;
}

// Convert a compatible frame into a mode-picture generator. Refuses frames
// with X_downS != 0 and frames whose X_upS block is too ill-conditioned to
// invert reliably.
inline RKEGenerator bogoliubov_to_rke(const BogoliubovFrame& frame,
                                      double tol = kDefaultTol,
                                      const Units& units = {}) {
    const BogoliubovCompatibility rep = check_bogoliubov_compatibility(frame, tol);
    if (!rep.compatible)
        throw IncompatibleError("X_downS != 0",
                                "bogoliubov_to_rke: frame mixes system creation and "
                                "annihilation operators (||X_downS|| = "
                                + std::to_string(rep.down_s_norm) + ")");

    const CMat ups = frame.up_S();
    Eigen::JacobiSVD<CMat> svd(ups, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0 || smax / smin >= kMaxFrameCondition)
        throw ValidationError("bogoliubov_to_rke: X_upS is numerically singular "
                              "(condition number >= 1e8)");

    const int N = frame.n_modes;
    const CMat Y = frame.d_up_S() * ups.inverse();
    const CMat Yr = hermitian_part(Y);
    const CMat Yi = (Y - Y.adjoint()) / Complex(0.0, 2.0);
    const CMat dc = frame.down_C();
    const CMat ddc = frame.d_down_C();
    const CMat D = dc * dc.adjoint();
    const CMat dD = ddc * dc.adjoint() + dc * ddc.adjoint();
    const CMat Dh = D + 0.5 * CMat::Identity(N, N);
    const CMat W = dD - Y * Dh - Dh * Y.adjoint();

    CMat h = -units.hbar * hermitian_part(Yi);
    CMat gup = hermitian_part(W + Yr);
    CMat gdown = hermitian_part(W - Yr);
    return RKEGenerator(std::move(h), CVec::Zero(N), std::move(gup), std::move(gdown),
                        {}, tol);
}

}  // namespace rsfkit
