#pragma once
// Entropies of the reduced field. Both are functionals of the correlation
// matrix r_alpha = r - alpha alpha^+:
//
//   s_v = k_B tr[(r_alpha + 1) ln(r_alpha + 1) - r_alpha ln r_alpha]
//   s_w = k_B [tr ln(r_alpha + 1) + N]
//
// and they bracket each other: s_v <= s_w <= s_v + k_B N. s_w is the Wehrl
// entropy of the thermal-like Husimi representation of the field; a brute
// force quadrature oracle for the single-mode case lives here as well.

#include <cmath>

#include "rsfkit/common.hpp"
#include "rsfkit/reduced_field.hpp"

namespace rsfkit {

namespace detail {

// x ln x with the 0 ln 0 = 0 convention.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace detail

inline double reduced_von_neumann(const ReducedField& rf, const Units& units = {},
                                  double tol = kDefaultTol) {
    const Vec ev = detail::correlation_eigenvalues(rf, tol);
    double s = 0.0;
    for (int k = 0; k < ev.size(); ++k)
        s += detail::xlogx(ev(k) + 1.0) - detail::xlogx(ev(k));
    return units.k_B * s;
}

inline double reduced_wehrl(const ReducedField& rf, const Units& units = {},
                            double tol = kDefaultTol) {
    const Vec ev = detail::correlation_eigenvalues(rf, tol);
    double s = static_cast<double>(rf.n_modes);
    for (int k = 0; k < ev.size(); ++k) s += std::log1p(ev(k));
    return units.k_B * s;
}

struct EntropyReport {
    double s_v = 0.0;
    double s_w = 0.0;
    double lower_margin = 0.0;  // s_w - s_v          (>= 0)
    double upper_margin = 0.0;  // s_v + k_B N - s_w  (>= 0)
    bool bound_ok = false;
};

inline EntropyReport entropy_bounds(const ReducedField& rf, const Units& units = {},
                                    double tol = kDefaultTol) {
    EntropyReport rep;
    rep.s_v = reduced_von_neumann(rf, units, tol);
    rep.s_w = reduced_wehrl(rf, units, tol);
    rep.lower_margin = rep.s_w - rep.s_v;
    rep.upper_margin = rep.s_v + units.k_B * rf.n_modes - rep.s_w;
    rep.bound_ok = rep.lower_margin >= -tol && rep.upper_margin >= -tol;
    return rep;
}

// --- quadrature oracle (N = 1) -----------------------------------------

// Square trapezoid grid beta = x + iy, x,y in [-half_width, half_width].
struct HusimiGrid {
    double half_width = 6.0;
    int points_per_axis = 201;
};

struct WehrlOracleResult {
    double entropy = 0.0;
    double mass = 0.0;  // integral of the Husimi function; should be 1
    bool mass_ok = false;
};

struct HusimiMoments {
    Complex r;      // integral of (|beta|^2 - 1) Q
    Complex alpha;  // integral of beta Q
    double mass = 0.0;
};

namespace detail {

// Shared trapezoid sweep over the Husimi function
//   Q(beta) = (1/(m+1)) exp(-|beta - alpha|^2 / (m+1)),  m = r - |alpha|^2,
// the single-mode thermal-like representation of the reduced field.
template <class Accumulate>
void husimi_sweep(const ReducedField& rf, const HusimiGrid& grid, double tol,
                  Accumulate&& acc) {
    require(rf.n_modes == 1, "husimi quadrature: single-mode fields only");
    require(grid.points_per_axis >= 2, "husimi quadrature: need >= 2 points per axis");
    require(grid.half_width > 0.0, "husimi quadrature: half_width must be positive");
    const double m = correlation_eigenvalues(rf, tol)(0);
    const Complex a = rf.alpha(0);
    const double sigma = m + 1.0;

    const int P = grid.points_per_axis;
    const double step = 2.0 * grid.half_width / (P - 1);
    const double cell = step * step / M_PI;  // d^2beta / pi
    for (int i = 0; i < P; ++i) {
        const double wx = (i == 0 || i == P - 1) ? 0.5 : 1.0;
        const double x = -grid.half_width + i * step;
        for (int j = 0; j < P; ++j) {
            const double wy = (j == 0 || j == P - 1) ? 0.5 : 1.0;
            const double y = -grid.half_width + j * step;
            const Complex beta(x, y);
            const double q = std::exp(-std::norm(beta - a) / sigma) / sigma;
            acc(beta, q, wx * wy * cell);
        }
    }
}

}  // namespace detail

// Direct numerical evaluation of s_w = -int (d^2beta/pi) Q ln Q for a
// single-mode field. Slow; used to cross-check the closed form.
inline WehrlOracleResult wehrl_quadrature_oracle(const ReducedField& rf,
                                                 const HusimiGrid& grid = {},
                                                 const Units& units = {},
                                                 double tol = kDefaultTol) {
    WehrlOracleResult res;
    detail::husimi_sweep(rf, grid, tol, [&](Complex, double q, double w) {
        res.mass += w * q;
        if (q > 0.0) res.entropy -= w * q * std::log(q);
    });
    res.entropy *= units.k_B;
    res.mass_ok = res.mass >= 1.0 - 1e-6;
    return res;
}

// Recovers (r, alpha) of a single-mode field from moments of its Husimi
// representation: r = int (|beta|^2 - 1) Q, alpha = int beta Q.
inline HusimiMoments husimi_moments(const ReducedField& rf,
                                    const HusimiGrid& grid = {},
                                    double tol = kDefaultTol) {
    HusimiMoments mom;
    detail::husimi_sweep(rf, grid, tol, [&](Complex beta, double q, double w) {
        mom.mass += w * q;
        mom.r += w * q * (std::norm(beta) - 1.0);
        mom.alpha += w * q * beta;
    });
    return mom;
}

}  // namespace rsfkit
