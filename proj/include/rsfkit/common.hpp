#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rsfkit {

using Mat     = Eigen::MatrixXd;
using CMat    = Eigen::MatrixXcd;
using Vec     = Eigen::VectorXd;
using CVec    = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Absolute tolerance used by default for symmetry / positivity / symplectic
// checks. Desk-scale matrices in double precision sit far below this.
inline constexpr double kDefaultTol = 1e-10;

// Looser bound applied to states sampled along integrated trajectories,
// where the integrator is allowed a little physicality drift.
inline constexpr double kTrajectoryTol = 1e-8;

// Unit scalars. Internally hbar = k_B = 1; these only enter where results
// are reported in explicit units.
struct Units {
    double hbar = 1.0;
    double k_B  = 1.0;
};

// An input violated a structural or physical invariant.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A generator or frame failed an exact compatibility condition and a
// conversion was refused. condition() names the violated identity,
// e.g. "[J,G] != 0".
class IncompatibleError : public ValidationError {
  public:
    IncompatibleError(std::string condition, const std::string& what)
        : ValidationError(what), condition_(std::move(condition)) {}
    const std::string& condition() const { return condition_; }

  private:
    std::string condition_;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

inline CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

inline Mat symmetric_part(const Mat& m) { return 0.5 * (m + m.transpose()); }

inline double min_eigenvalue(const CMat& hermitian) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace rsfkit
