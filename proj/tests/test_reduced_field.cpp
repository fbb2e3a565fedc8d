#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace rsfkit;
using testsup::max_abs;
using testsup::max_diff;

TEST_CASE("reduce on reference states") {
    const auto vac = reduce(vacuum_state(2));
    CHECK(vac.n_modes == 2);
    CHECK(max_abs(vac.r) <= 1e-15);
    CHECK(max_abs(vac.alpha) <= 1e-15);

    // coherent state: r = alpha alpha^+, alpha preserved
    CVec a(2);
    a << Complex(1.0, 0.0), Complex(-0.5, 0.25);
    const auto coh = reduce(coherent_state(a));
    CHECK(max_diff(coh.alpha, a) <= 1e-14);
    CHECK(max_diff(coh.r, a * a.adjoint()) <= 1e-14);

    Vec n(2);
    n << 1.0, 2.0;
    const auto th = reduce(thermal_state(n));
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = 1.0;
    expected(1, 1) = 2.0;
    CHECK(max_diff(th.r, expected) <= 1e-14);
    CHECK(max_abs(th.alpha) <= 1e-15);

    const auto sq = reduce(squeezed_vacuum_state(0.5));
    const double sh2 = std::sinh(0.5) * std::sinh(0.5);
    CHECK(std::abs(sq.r(0, 0).real() - sh2) <= 1e-12);
    CHECK(std::abs(sq.r(0, 0).imag()) <= 1e-15);
}

TEST_CASE("conjugate sector") {
    const auto cvac = conjugate_reduce(vacuum_state(1));
    CHECK(max_abs(cvac.c) <= 1e-15);

    // V = diag(e^{2s}, e^{-2s})/2 -> c = (V11 - V22)/2 = sinh(2s)/2
    const auto csq = conjugate_reduce(squeezed_vacuum_state(0.5));
    CHECK(std::abs(csq.c(0, 0).real() - 0.5 * std::sinh(1.0)) <= 1e-12);
    CHECK(std::abs(csq.c(0, 0).imag()) <= 1e-15);

    // alpha_star is the exact conjugate of alpha, not merely close
    CVec a(2);
    a << Complex(0.3, -1.1), Complex(2.0, 0.7);
    const auto state = coherent_state(a);
    const auto rf = reduce(state);
    const auto cf = conjugate_reduce(state);
    for (int k = 0; k < 2; ++k)
        CHECK(cf.alpha_star(k) == std::conj(rf.alpha(k)));

    // c is symmetric for random states
    testsup::Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = testsup::random_physical_state(rng, 2);
        const auto c = conjugate_reduce(s).c;
        CHECK(max_diff(c, c.transpose()) <= 1e-12);
    }
}

TEST_CASE("generalized field layout") {
    const auto assemble = [](const QuadratureState& s) {
        return generalized_field(reduce(s), conjugate_reduce(s));
    };

    const auto gvac = assemble(vacuum_state(1));
    CMat expected(2, 2);
    expected << 0.0, 0.0, 0.0, 1.0;
    CHECK(max_diff(gvac.g, expected) <= 1e-14);

    const auto gth = assemble(thermal_state(Vec::Constant(1, 1.0)));
    expected << 1.0, 0.0, 0.0, 2.0;
    CHECK(max_diff(gth.g, expected) <= 1e-14);

    const auto gsq = assemble(squeezed_vacuum_state(0.5));
    const double sh2 = std::sinh(0.5) * std::sinh(0.5);
    const double off = 0.5 * std::sinh(1.0);
    expected << sh2, off, off, sh2 + 1.0;
    CHECK(max_diff(gsq.g, expected) <= 1e-12);

    // displacement shows up as alpha ++ conj(alpha)
    CVec a(1);
    a << Complex(0.5, -0.5);
    const auto gcoh = assemble(coherent_state(a));
    CHECK(gcoh.A_vec(0) == a(0));
    CHECK(gcoh.A_vec(1) == std::conj(a(0)));

    // g is Hermitian with the lower-right block r^T + 1
    testsup::Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = testsup::random_physical_state(rng, 2);
        const auto gf = assemble(s);
        const auto rf = reduce(s);
        CHECK(max_diff(gf.g, gf.g.adjoint()) <= 1e-12);
        CHECK(max_diff(gf.g.block(2, 2, 2, 2),
                       rf.r.transpose() + CMat::Identity(2, 2)) <= 1e-12);
    }
}

TEST_CASE("generalized field rejects mismatched sectors") {
    const auto s = coherent_state(CVec::Constant(1, Complex(1.0, 0.0)));
    const auto rf = reduce(s);
    auto cf = conjugate_reduce(s);
    cf.alpha_star(0) += Complex(0.1, 0.0);  // no longer conj(alpha)
    CHECK_THROWS_AS(generalized_field(rf, cf), ValidationError);
}

TEST_CASE("correlation matrix of reduced states") {
    // r_alpha = r - alpha alpha^+ strips the mean field
    CMat r = CMat::Zero(2, 2);
    r(0, 0) = 2.0;
    r(1, 1) = 1.0;
    CVec a(2);
    a << Complex(1.0, 0.0), Complex(0.0, 0.0);
    const ReducedField rf(r, a);
    const CMat ra = correlation_matrix(rf);
    CHECK(max_diff(ra, CMat::Identity(2, 2)) <= 1e-14);

    // pure coherent state: r_alpha = 0 after clamping
    CVec b(1);
    b << Complex(0.7, -0.2);
    const auto coh = reduce(coherent_state(b));
    CHECK(max_abs(correlation_matrix(coh)) <= 1e-12);

    // reduction of any physical state has PSD correlations
    testsup::Rng rng(613);
    for (int trial = 0; trial < 40; ++trial) {
        const int N = 1 + trial % 3;
        const auto rf2 = reduce(testsup::random_physical_state(rng, N));
        const CMat ra2 = correlation_matrix(rf2, 1e-10);
        CHECK(min_eigenvalue(ra2) >= -1e-10);
    }
}

TEST_CASE("field validation") {
    CMat r(1, 1);
    r << Complex(0.0, 0.0);
    CVec a(1);
    a << Complex(1.0, 0.0);
    // r - alpha alpha^+ = -1: not a reduction of anything physical
    const ReducedField rf(r, a);
    CHECK_THROWS_AS(correlation_matrix(rf), ValidationError);

    CMat bad(2, 2);
    bad << Complex(1.0, 0.0), Complex(0.5, 0.1), Complex(0.5, 0.3), Complex(1.0, 0.0);
    CHECK_THROWS_AS(ReducedField(bad, CVec::Zero(2)), ValidationError);

    CMat neg(1, 1);
    neg << Complex(-1.0, 0.0);
    CHECK_THROWS_AS(ReducedField(neg, CVec::Zero(1)), ValidationError);

    CHECK_THROWS_AS(ReducedField(CMat::Identity(2, 2), CVec::Zero(3)), ValidationError);
}

TEST_CASE("reduce rejects unphysical states") {
    CHECK_THROWS_AS(reduce(QuadratureState(0.3 * Mat::Identity(2, 2), Vec::Zero(2))),
                    ValidationError);
}
