// Linear amplifier acting on a coherent state: the mean field grows while
// both entropies climb from zero, and the Wehrl value stays within one unit
// (times the mode count) of the von Neumann one.

#include <cstdio>

#include <rsfkit/rsfkit.hpp>

int main() {
    const double kappa = 1.0;
    const auto gen = rsfkit::amplification_rke(rsfkit::Vec::Constant(1, kappa), rsfkit::Vec::Zero(1));

    rsfkit::CVec alpha0(1);
    alpha0(0) = rsfkit::Complex(1.0, 0.0);
    rsfkit::ReducedField field(alpha0 * alpha0.adjoint(), alpha0);

    rsfkit::EvolveOptions opts;
    opts.record_stride = 100;
    const auto traj = rsfkit::evolve(gen, field, 0.0, 1.0, 1e-3, opts);

    std::printf("%8s %12s %12s %12s\n", "t", "|alpha|", "s_v", "s_w");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto rep = rsfkit::entropy_bounds(traj.fields[i]);
        std::printf("%8.2f %12.6f %12.6f %12.6f\n", traj.times[i],
                    std::abs(traj.fields[i].alpha(0)), rep.s_v, rep.s_w);
    }
    return 0;
}
