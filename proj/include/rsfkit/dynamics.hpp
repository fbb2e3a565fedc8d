#pragma once
// Generators of Gaussian quadrature dynamics and of the reduced kinetic
// equations (RKE), the exact compatibility conditions under which the two
// pictures close onto each other, the generator conversion, and a fixed-step
// RK4 integrator for either picture.
//
// Quadrature picture (V, xi):
//   dV/dt  = A V + V A^T + J R_C J^T + sum_i w_i (K_i V K_i^T - V)
//   dxi/dt = A xi + sum_i w_i (K_i - 1) xi,         A = J (G + I_C),
// where R_C, I_C are the real and imaginary parts of C^+ C built from the
// noise matrix C (one row per Lindblad operator linear in the quadratures).
//
// Mode picture (r, alpha), hbar = 1 by default:
//   dr/dt     = -i[h, r] + zeta alpha^+ + alpha zeta^+
//               + (1/2){gamma_up - gamma_down, r} + gamma_up
//               + sum_i w_i (u_i r u_i^+ - r)
//   dalpha/dt = -i h alpha + (1/2)(gamma_up - gamma_down) alpha + zeta
//               + sum_i w_i (u_i - 1) alpha

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "rsfkit/common.hpp"
#include "rsfkit/reduced_field.hpp"
#include "rsfkit/symplectic.hpp"

namespace rsfkit {

// --- generators ---------------------------------------------------------

struct KScatteringTerm {
    double w = 0.0;  // rate
    Mat K;           // symplectic, 2N x 2N
};

struct GaussianGenerator {
    int n_modes = 0;
    Mat G;    // Hamiltonian matrix, 2N x 2N symmetric
    CMat C;   // noise matrix, one row per Lindblad operator
    std::vector<KScatteringTerm> scattering;

    // Derived, fixed at construction.
    Mat R_C;  // Re C^+ C
    Mat I_C;  // Im C^+ C
    Mat A;    // drift J (G + I_C)
    Mat JRJ;  // diffusion J R_C J^T

    GaussianGenerator(Mat G_in, CMat C_in,
                      std::vector<KScatteringTerm> scattering_in = {},
                      double tol = kDefaultTol)
        : G(std::move(G_in)), C(std::move(C_in)),
          scattering(std::move(scattering_in)) {
        require(G.rows() == G.cols() && G.rows() >= 2 && G.rows() % 2 == 0,
                "GaussianGenerator: G must be 2N x 2N");
        n_modes = static_cast<int>(G.rows()) / 2;
        require((G - G.transpose()).norm() <= tol,
                "GaussianGenerator: G must be symmetric");
        G = symmetric_part(G);
        if (C.size() == 0) C = CMat::Zero(0, 2 * n_modes);
        require(C.cols() == 2 * n_modes,
                "GaussianGenerator: C must have 2N columns");
        for (const auto& term : scattering) {
            require(term.w >= 0.0, "GaussianGenerator: scattering rates must be >= 0");
            require(term.K.rows() == 2 * n_modes && term.K.cols() == 2 * n_modes,
                    "GaussianGenerator: K must be 2N x 2N");
            require(is_symplectic(term.K, tol),
                    "GaussianGenerator: scattering matrices must be symplectic");
        }
        const CMat CdC = C.adjoint() * C;
        R_C = CdC.real();
        I_C = CdC.imag();
        const Mat J = symplectic_form(n_modes);
        A = J * (G + I_C);
        JRJ = J * R_C * J.transpose();
    }
};

inline Mat drift_matrix(const GaussianGenerator& gen) { return gen.A; }

struct UScatteringTerm {
    double w = 0.0;  // rate
    CMat u;          // unitary, N x N
};

struct RKEGenerator {
    int n_modes = 0;
    CMat h;           // single-particle Hamiltonian, Hermitian
    CVec zeta;        // coherent pump
    CMat gamma_up;    // excitation matrix, Hermitian PSD
    CMat gamma_down;  // de-excitation matrix, Hermitian PSD
    std::vector<UScatteringTerm> scattering;

    RKEGenerator(CMat h_in, CVec zeta_in, CMat gamma_up_in, CMat gamma_down_in,
                 std::vector<UScatteringTerm> scattering_in = {},
                 double tol = kDefaultTol)
        : h(std::move(h_in)), zeta(std::move(zeta_in)),
          gamma_up(std::move(gamma_up_in)), gamma_down(std::move(gamma_down_in)),
          scattering(std::move(scattering_in)) {
        require(h.rows() == h.cols() && h.rows() >= 1, "RKEGenerator: h must be square");
        n_modes = static_cast<int>(h.rows());
        if (zeta.size() == 0) zeta = CVec::Zero(n_modes);
        require(zeta.size() == n_modes, "RKEGenerator: zeta length must match h");
        require((h - h.adjoint()).norm() <= tol, "RKEGenerator: h must be Hermitian");
        h = hermitian_part(h);
        auto check_rate_matrix = [&](CMat& g, const char* name) {
            require(g.rows() == n_modes && g.cols() == n_modes,
                    std::string("RKEGenerator: ") + name + " must be N x N");
            require((g - g.adjoint()).norm() <= tol,
                    std::string("RKEGenerator: ") + name + " must be Hermitian");
            g = hermitian_part(g);
            require(min_eigenvalue(g) >= -tol,
                    std::string("RKEGenerator: ") + name + " must be PSD");
        };
        check_rate_matrix(gamma_up, "gamma_up");
        check_rate_matrix(gamma_down, "gamma_down");
        const CMat I = CMat::Identity(n_modes, n_modes);
        for (const auto& term : scattering) {
            require(term.w >= 0.0, "RKEGenerator: scattering rates must be >= 0");
            require(term.u.rows() == n_modes && term.u.cols() == n_modes,
                    "RKEGenerator: u must be N x N");
            require((term.u * term.u.adjoint() - I).norm() <= tol,
                    "RKEGenerator: scattering matrices must be unitary");
        }
    }
};

// --- right-hand sides ---------------------------------------------------

inline std::pair<Mat, Vec> gaussian_rhs(const GaussianGenerator& gen, const Mat& V,
                                        const Vec& xi) {
    Mat dV = gen.A * V + V * gen.A.transpose() + gen.JRJ;
    Vec dxi = gen.A * xi;
    for (const auto& term : gen.scattering) {
        dV += term.w * (term.K * V * term.K.transpose() - V);
        dxi += term.w * (term.K * xi - xi);
    }
    return {std::move(dV), std::move(dxi)};
}

inline std::pair<Mat, Vec> gaussian_rhs(const GaussianGenerator& gen,
                                        const QuadratureState& state) {
    require(gen.n_modes == state.n_modes, "gaussian_rhs: mode count mismatch");
    return gaussian_rhs(gen, state.V, state.xi);
}

inline std::pair<CMat, CVec> rke_rhs(const RKEGenerator& gen, const CMat& r,
                                     const CVec& alpha, const Units& units = {}) {
    const Complex i_over_hbar(0.0, 1.0 / units.hbar);
    const CMat gdiff = 0.5 * (gen.gamma_up - gen.gamma_down);
    CMat dr = -i_over_hbar * (gen.h * r - r * gen.h)
              + gen.zeta * alpha.adjoint() + alpha * gen.zeta.adjoint()
              + gdiff * r + r * gdiff + gen.gamma_up;
    CVec dalpha = -i_over_hbar * (gen.h * alpha) + gdiff * alpha + gen.zeta;
    for (const auto& term : gen.scattering) {
        dr += term.w * (term.u * r * term.u.adjoint() - r);
        dalpha += term.w * (term.u * alpha - alpha);
    }
    return {std::move(dr), std::move(dalpha)};
}

inline std::pair<CMat, CVec> rke_rhs(const RKEGenerator& gen, const ReducedField& rf,
                                     const Units& units = {}) {
    require(gen.n_modes == rf.n_modes, "rke_rhs: mode count mismatch");
    return rke_rhs(gen, rf.r, rf.alpha, units);
}

// --- compatibility and conversion ---------------------------------------

struct ScatteringCheck {
    double tkt_transpose_norm = 0.0;  // ||T K T^T||
    double unitarity_defect = 0.0;    // ||(T K T^+)(T K T^+)^+ - 1||
    bool ok = false;
};

struct GaussianCompatibility {
    double comm_G_norm = 0.0;   // ||[J, G]||_F
    double comm_IC_norm = 0.0;  // ||[J, I_C]||_F
    std::vector<ScatteringCheck> scattering;
    bool hamiltonian_ok = false;
    bool dissipator_ok = false;
    bool scattering_ok = false;
    bool compatible = false;
};

// A Gaussian generator closes onto the reduced field iff G and I_C commute
// with J and every scattering matrix is passive in the mode picture:
// T K T^T = 0 with T K T^+ unitary.
inline GaussianCompatibility check_gaussian_compatibility(const GaussianGenerator& gen,
                                                          double tol = kDefaultTol) {
    const Mat J = symplectic_form(gen.n_modes);
    const CMat T = transfer_matrix(gen.n_modes);
    GaussianCompatibility rep;
    rep.comm_G_norm = (J * gen.G - gen.G * J).norm();
    rep.comm_IC_norm = (J * gen.I_C - gen.I_C * J).norm();
    rep.hamiltonian_ok = rep.comm_G_norm <= tol;
    rep.dissipator_ok = rep.comm_IC_norm <= tol;
    rep.scattering_ok = true;
    const CMat I = CMat::Identity(gen.n_modes, gen.n_modes);
    for (const auto& term : gen.scattering) {
        ScatteringCheck chk;
        const CMat Kc = term.K.cast<Complex>();
        chk.tkt_transpose_norm = (T * Kc * T.transpose()).norm();
        const CMat u = T * Kc * T.adjoint();
        chk.unitarity_defect = (u * u.adjoint() - I).norm();
        chk.ok = chk.tkt_transpose_norm <= tol && chk.unitarity_defect <= tol;
        rep.scattering_ok = rep.scattering_ok && chk.ok;
        rep.scattering.push_back(chk);
    }
    rep.compatible = rep.hamiltonian_ok && rep.dissipator_ok && rep.scattering_ok;
    return rep;
}

// Convert a compatible Gaussian generator to the mode picture:
//   h = hbar T G T^+,  gamma_down = T (C^+ C) T^+,  gamma_up = T (C^+ C)^* T^+,
//   u_i = T K_i T^+ with the rates carried over, zeta = 0.
// Incompatible generators are refused, never projected.
inline RKEGenerator gaussian_to_rke(const GaussianGenerator& gen,
                                    double tol = kDefaultTol,
                                    const Units& units = {}) {
    const GaussianCompatibility rep = check_gaussian_compatibility(gen, tol);
    if (!rep.hamiltonian_ok)
        throw IncompatibleError("[J,G] != 0",
                                "gaussian_to_rke: G does not commute with J "
                                "(||[J,G]|| = " + std::to_string(rep.comm_G_norm) + ")");
    if (!rep.dissipator_ok)
        throw IncompatibleError("[J,I_C] != 0",
                                "gaussian_to_rke: I_C does not commute with J "
                                "(||[J,I_C]|| = " + std::to_string(rep.comm_IC_norm) + ")");
    for (std::size_t i = 0; i < rep.scattering.size(); ++i) {
        if (rep.scattering[i].tkt_transpose_norm > tol)
            throw IncompatibleError("T K T^T != 0",
                                    "gaussian_to_rke: scattering term " + std::to_string(i)
                                    + " mixes creation and annihilation sectors");
        if (rep.scattering[i].unitarity_defect > tol)
            throw IncompatibleError("T K T^+ not unitary",
                                    "gaussian_to_rke: scattering term " + std::to_string(i)
                                    + " is not passive");
    }

    const CMat T = transfer_matrix(gen.n_modes);
    const CMat CdC = gen.C.adjoint() * gen.C;
    CMat h = units.hbar * hermitian_part(T * gen.G.cast<Complex>() * T.adjoint());
    CMat gdown = hermitian_part(T * CdC * T.adjoint());
    CMat gup = hermitian_part(T * CdC.conjugate() * T.adjoint());
    std::vector<UScatteringTerm> terms;
    terms.reserve(gen.scattering.size());
    for (const auto& term : gen.scattering)
        terms.push_back({term.w, T * term.K.cast<Complex>() * T.adjoint()});
    return RKEGenerator(std::move(h), CVec::Zero(gen.n_modes), std::move(gup),
                        std::move(gdown), std::move(terms), tol);
}

// --- integration --------------------------------------------------------

struct EvolveOptions {
    int record_stride = 1;              // keep every k-th step
    bool validate = true;               // physicality-check recorded samples
    double validity_tol = kTrajectoryTol;
};

struct SymplecticTrajectory {
    std::vector<double> times;
    std::vector<QuadratureState> states;
};

struct RKETrajectory {
    std::vector<double> times;
    std::vector<ReducedField> fields;
};

namespace detail {

inline long step_count(double t0, double t1, double dt) {
    require(t1 > t0, "evolve: t1 must exceed t0");
    require(dt > 0.0, "evolve: dt must be positive");
    return std::max(1L, std::lround((t1 - t0) / dt));
}

}  // namespace detail

// Classic fixed-step RK4. The step is adjusted to the nearest value that
// divides [t0, t1] evenly, so the final sample lands on t1 exactly.
inline SymplecticTrajectory evolve(const GaussianGenerator& gen,
                                   const QuadratureState& initial, double t0,
                                   double t1, double dt,
                                   const EvolveOptions& opts = {}) {
    require(gen.n_modes == initial.n_modes, "evolve: mode count mismatch");
    require(opts.record_stride >= 1, "evolve: record_stride must be >= 1");
    const long n = detail::step_count(t0, t1, dt);
    const double h = (t1 - t0) / n;

    SymplecticTrajectory traj;
    traj.times.reserve(n / opts.record_stride + 2);
    traj.states.reserve(n / opts.record_stride + 2);

    Mat V = initial.V;
    Vec xi = initial.xi;
    auto record = [&](long step) {
        const double t = t0 + step * h;
        QuadratureState s(V, xi, opts.validity_tol);
        if (opts.validate) {
            const HeisenbergReport hb = check_heisenberg(s, opts.validity_tol);
            if (!hb.physical)
                throw ValidationError("evolve: state at t = " + std::to_string(t)
                                      + " violates the Heisenberg bound (min eig "
                                      + std::to_string(hb.min_eigenvalue) + ")");
        }
        traj.times.push_back(t);
        traj.states.push_back(std::move(s));
    };

    record(0);
    for (long i = 1; i <= n; ++i) {
        const auto [k1V, k1x] = gaussian_rhs(gen, V, xi);
        const auto [k2V, k2x] = gaussian_rhs(gen, V + 0.5 * h * k1V, xi + 0.5 * h * k1x);
        const auto [k3V, k3x] = gaussian_rhs(gen, V + 0.5 * h * k2V, xi + 0.5 * h * k2x);
        const auto [k4V, k4x] = gaussian_rhs(gen, V + h * k3V, xi + h * k3x);
        V += (h / 6.0) * (k1V + 2.0 * k2V + 2.0 * k3V + k4V);
        xi += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        V = symmetric_part(V);  // keep roundoff from accumulating asymmetry
        if (i % opts.record_stride == 0 || i == n) record(i);
    }
    return traj;
}

inline RKETrajectory evolve(const RKEGenerator& gen, const ReducedField& initial,
                            double t0, double t1, double dt,
                            const EvolveOptions& opts = {}, const Units& units = {}) {
    require(gen.n_modes == initial.n_modes, "evolve: mode count mismatch");
    require(opts.record_stride >= 1, "evolve: record_stride must be >= 1");
    const long n = detail::step_count(t0, t1, dt);
    const double h = (t1 - t0) / n;

    RKETrajectory traj;
    traj.times.reserve(n / opts.record_stride + 2);
    traj.fields.reserve(n / opts.record_stride + 2);

    CMat r = initial.r;
    CVec alpha = initial.alpha;
    auto record = [&](long step) {
        const double t = t0 + step * h;
        ReducedField f(r, alpha, opts.validity_tol);
        if (opts.validate) {
            try {
                detail::correlation_eigenvalues(f, opts.validity_tol);
            } catch (const ValidationError&) {
                throw ValidationError("evolve: field at t = " + std::to_string(t)
                                      + " has negative correlations beyond tolerance");
            }
        }
        traj.times.push_back(t);
        traj.fields.push_back(std::move(f));
    };

    record(0);
    for (long i = 1; i <= n; ++i) {
        const auto [k1r, k1a] = rke_rhs(gen, r, alpha, units);
        const auto [k2r, k2a] = rke_rhs(gen, r + 0.5 * h * k1r, alpha + 0.5 * h * k1a, units);
        const auto [k3r, k3a] = rke_rhs(gen, r + 0.5 * h * k2r, alpha + 0.5 * h * k2a, units);
        const auto [k4r, k4a] = rke_rhs(gen, r + h * k3r, alpha + h * k3a, units);
        r += (h / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        alpha += (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        r = hermitian_part(r);
        if (i % opts.record_stride == 0 || i == n) record(i);
    }
    return traj;
}

}  // namespace rsfkit
