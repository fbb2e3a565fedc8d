#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rsfkit/rsfkit.hpp"
#include "test_support.hpp"

using namespace rsfkit;
using testsup::max_diff;
using Catch::Approx;

namespace {

Mat rotation2(double theta) {
    Mat S(2, 2);
    S << std::cos(theta), std::sin(theta),
         -std::sin(theta), std::cos(theta);
    return S;
}

Mat squeeze2(double s) {
    Mat S = Mat::Zero(2, 2);
    S(0, 0) = std::exp(s);
    S(1, 1) = std::exp(-s);
    return S;
}

}  // namespace

TEST_CASE("gaussian thermal operations") {
    SECTION("drift and diffusion for a trivial channel") {
        GTOParams p;
        p.S = Mat::Identity(2, 2);
        p.p = 0.8;
        p.dp_dt = -0.2;
        p.dphi_dt = 1.3;
        p.nu = 2.0;
        const GTOReport rep = gto_generator(p);
        const Mat J = symplectic_form(1);
        CHECK(max_diff(rep.A, Mat(-0.125 * Mat::Identity(2, 2) + 1.3 * J)) < 1e-12);
        CHECK(max_diff(rep.JRJ, Mat(0.5 * Mat::Identity(2, 2))) < 1e-12);
        CHECK(rep.condition_norm == Approx(0.0).margin(1e-14));
        CHECK(rep.compatible);
        // Relaxation (dp/dt < 0) yields positive diffusion.
        CHECK(min_eigenvalue(rep.JRJ.cast<Complex>()) >= 0.0);
    }
    SECTION("passive channels stay compatible at any rotation speed") {
        for (double theta : {0.0, 0.7, 2.1})
            for (double rate : {-2.0, 0.5, 3.0}) {
                GTOParams p;
                p.S = rotation2(theta);
                p.p = 0.9;
                p.dp_dt = -0.1;
                p.dphi_dt = rate;
                const GTOReport rep = gto_generator(p);
                INFO("theta = " << theta << ", dphi/dt = " << rate);
                CHECK(rep.compatible);
                CHECK(rep.condition_norm == Approx(0.0).margin(1e-12));
            }
    }
    SECTION("squeezed channel is compatible only when the rotation freezes") {
        GTOParams p;
        p.S = squeeze2(0.5);
        p.nu = 1.5;

        p.dphi_dt = 0.0;
        CHECK(gto_generator(p).compatible);

        p.dphi_dt = 0.1;
        const GTOReport rep = gto_generator(p);
        CHECK_FALSE(rep.compatible);
        const double expected =
            0.1 * std::sqrt(2.0) * (std::exp(1.0) - std::exp(-1.0));
        CHECK(rep.condition_norm == Approx(expected).margin(1e-12));

        // Drift picks up the squeezed S S^T J term.
        Mat SSTJ(2, 2);
        SSTJ << 0.0, std::exp(1.0),
                -std::exp(-1.0), 0.0;
        CHECK(max_diff(rep.A, Mat(0.1 * SSTJ)) < 1e-12);
    }
    SECTION("parameter validation") {
        GTOParams p;
        p.S = 2.0 * Mat::Identity(2, 2);
        CHECK_THROWS_AS(gto_generator(p), ValidationError);
        p.S = Mat::Identity(3, 3);
        CHECK_THROWS_AS(gto_generator(p), ValidationError);
        p.S = Mat::Identity(2, 2);
        p.p = 0.0;
        CHECK_THROWS_AS(gto_generator(p), ValidationError);
        p.p = 1.2;
        CHECK_THROWS_AS(gto_generator(p), ValidationError);
        p.p = 1.0;
        p.nu = 0.5;
        CHECK_THROWS_AS(gto_generator(p), ValidationError);
    }
}

TEST_CASE("amplification frame") {
    const Vec kappa1 = Vec::Constant(1, 1.0);
    SECTION("t = 0 is the identity frame") {
        const BogoliubovFrame frame = amplification_frame(kappa1, 0.0);
        CHECK(max_diff(frame.up(), CMat::Identity(2, 2)) < 1e-15);
        CHECK(max_diff(frame.down(), CMat::Zero(2, 2)) == 0.0);
        CHECK(max_diff(frame.d_up_S(), CMat::Identity(1, 1)) < 1e-15);
        CHECK(check_bogoliubov_compatibility(frame).compatible);
        // The generator itself only exists for t > 0.
        CHECK_THROWS_AS(bogoliubov_to_rke(frame), ValidationError);
    }
    SECTION("closed form at t = ln 2") {
        const BogoliubovFrame frame = amplification_frame(kappa1, std::log(2.0));
        CHECK(std::abs(frame.up_S()(0, 0) - Complex(2.0, 0.0)) < 1e-12);
        CHECK(std::abs(frame.down_C()(0, 0) + Complex(std::sqrt(3.0), 0.0)) < 1e-12);
    }
    SECTION("pseudo-unitary at every time") {
        const CMat S = bogoliubov_metric(1);
        for (double t = 0.0; t <= 3.0; t += 0.25) {
            const BogoliubovFrame frame = amplification_frame(kappa1, t);
            const CMat X = frame.X;
            const double defect = (X * S * X.adjoint() - S).norm();
            CHECK(defect <= 1e-10 * std::max(1.0, X.squaredNorm()));
        }
    }
    SECTION("generator is pure heating at rate 2 kappa") {
        for (double t = 0.1; t <= 2.0; t += 0.1) {
            const RKEGenerator gen = bogoliubov_to_rke(amplification_frame(kappa1, t));
            INFO("t = " << t);
            CHECK(max_diff(gen.h, CMat::Zero(1, 1)) < 1e-10);
            CHECK(max_diff(gen.gamma_up, CMat(2.0 * CMat::Identity(1, 1))) < 1e-10);
            CHECK(max_diff(gen.gamma_down, CMat::Zero(1, 1)) < 1e-10);
        }
    }
    SECTION("per-mode gains stay uncoupled") {
        Vec kappa(2);
        kappa << 0.5, 1.5;
        const RKEGenerator gen = bogoliubov_to_rke(amplification_frame(kappa, 0.7));
        CMat expected = CMat::Zero(2, 2);
        expected(0, 0) = 1.0;
        expected(1, 1) = 3.0;
        CHECK(max_diff(gen.gamma_up, expected) < 1e-10);
        CHECK(max_diff(gen.gamma_down, CMat::Zero(2, 2)) < 1e-10);
        CHECK(max_diff(gen.h, CMat::Zero(2, 2)) < 1e-10);
    }
    SECTION("matches the closed-form vacuum-bath generator") {
        Vec kappa(2);
        kappa << 0.7, 1.3;
        const RKEGenerator direct = amplification_rke(kappa, Vec::Zero(2));
        for (double t : {0.3, 1.1}) {
            const RKEGenerator gen = bogoliubov_to_rke(amplification_frame(kappa, t));
            CHECK(max_diff(gen.gamma_up, direct.gamma_up) < 1e-10);
            CHECK(max_diff(gen.gamma_down, direct.gamma_down) < 1e-10);
            CHECK(max_diff(gen.h, direct.h) < 1e-10);
        }
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(amplification_frame(Vec::Constant(1, -0.5), 1.0),
                        ValidationError);
        CHECK_THROWS_AS(amplification_frame(kappa1, -0.1), ValidationError);
        CHECK_THROWS_AS(amplification_frame(Vec(), 1.0), ValidationError);
    }
}

TEST_CASE("beam splitter frame") {
    SECTION("frozen splitter generates nothing") {
        const RKEGenerator gen = bogoliubov_to_rke(beam_splitter_frame(0.0, 0.9));
        CHECK(max_diff(gen.h, CMat::Zero(1, 1)) < 1e-12);
        CHECK(max_diff(gen.gamma_up, CMat::Zero(1, 1)) < 1e-12);
        CHECK(max_diff(gen.gamma_down, CMat::Zero(1, 1)) < 1e-12);
    }
    SECTION("pure loss at rate 2 theta_rate tan(theta)") {
        const double t = M_PI / 6.0;
        const BogoliubovFrame frame = beam_splitter_frame(1.0, t);
        CHECK(check_bogoliubov_compatibility(frame).compatible);
        const RKEGenerator gen = bogoliubov_to_rke(frame);
        CHECK(gen.gamma_down(0, 0).real() ==
              Approx(2.0 * std::tan(M_PI / 6.0)).margin(1e-12));
        CHECK(max_diff(gen.gamma_up, CMat::Zero(1, 1)) < 1e-12);
        CHECK(max_diff(gen.h, CMat::Zero(1, 1)) < 1e-12);
    }
    SECTION("acts mode by mode") {
        const RKEGenerator gen = bogoliubov_to_rke(beam_splitter_frame(0.8, 0.6, 2));
        const double rate = 2.0 * 0.8 * std::tan(0.48);
        CHECK(max_diff(gen.gamma_down, CMat(rate * CMat::Identity(2, 2))) < 1e-10);
        CHECK(max_diff(gen.gamma_up, CMat::Zero(2, 2)) < 1e-10);
    }
}

TEST_CASE("closed-form amplification generator") {
    SECTION("vacuum bath") {
        const RKEGenerator gen =
            amplification_rke(Vec::Constant(1, 1.0), Vec::Zero(1));
        CHECK(gen.gamma_up(0, 0).real() == Approx(2.0));
        CHECK(gen.gamma_down(0, 0).real() == Approx(0.0).margin(1e-15));
        CHECK(max_diff(gen.h, CMat::Zero(1, 1)) == 0.0);
    }
    SECTION("thermal bath n = 1") {
        const RKEGenerator gen =
            amplification_rke(Vec::Constant(1, 1.0), Vec::Constant(1, 1.0));
        CHECK(gen.gamma_up(0, 0).real() == Approx(4.0));
        CHECK(gen.gamma_down(0, 0).real() == Approx(2.0));
    }
    SECTION("validation") {
        CHECK_THROWS_AS(amplification_rke(Vec::Constant(1, -1.0), Vec::Zero(1)),
                        ValidationError);
        CHECK_THROWS_AS(amplification_rke(Vec::Constant(1, 1.0),
                                          Vec::Constant(1, -0.2)),
                        ValidationError);
        CHECK_THROWS_AS(amplification_rke(Vec::Constant(2, 1.0), Vec::Zero(1)),
                        ValidationError);
    }
}

TEST_CASE("dissipation-stabilized two-mode configurations") {
    const auto suite = stabilizability_suite();
    REQUIRE(suite.size() == 3);
    CHECK(suite[0].name == "local_damping");
    CHECK(suite[1].name == "squeezed_preparation");
    CHECK(suite[2].name == "cascaded_vacuum");

    SECTION("every dissipator passes, every Hamiltonian fails") {
        for (const auto& entry : suite) {
            INFO(entry.name);
            CHECK(entry.verdict_IC);
            CHECK(entry.comm_IC_norm <= 1e-12);
            CHECK_FALSE(entry.verdict_G);
            CHECK(entry.comm_G_norm > 1.0);
            // Entry verdicts mirror the generic compatibility check.
            const GaussianCompatibility chk =
                check_gaussian_compatibility(entry.generator);
            CHECK(chk.hamiltonian_ok == entry.verdict_G);
            CHECK(chk.dissipator_ok == entry.verdict_IC);
            CHECK_FALSE(chk.compatible);
            CHECK(chk.comm_G_norm == Approx(entry.comm_G_norm).margin(1e-14));
        }
    }
    SECTION("commutator norms have their closed-form values") {
        CHECK(suite[0].comm_G_norm == Approx(4.0).margin(1e-12));
        CHECK(suite[1].comm_G_norm == Approx(4.0).margin(1e-12));
        CHECK(suite[2].comm_G_norm == Approx(4.0 * std::sqrt(2.0)).margin(1e-12));

        const auto scaled = stabilizability_suite(2.0);
        CHECK(scaled[0].comm_G_norm == Approx(8.0).margin(1e-12));
        CHECK(scaled[2].comm_G_norm == Approx(8.0 * std::sqrt(2.0)).margin(1e-12));
    }
    SECTION("dissipators convert on their own") {
        // Pair each noise matrix with a trivial Hamiltonian: the conversion
        // must go through and give the expected rates.
        const Mat G0 = Mat::Zero(4, 4);

        const RKEGenerator damp =
            gaussian_to_rke(GaussianGenerator(G0, suite[0].generator.C));
        CHECK(max_diff(damp.gamma_down, CMat::Identity(2, 2)) < 1e-12);
        CHECK(max_diff(damp.gamma_up, CMat::Zero(2, 2)) < 1e-12);

        const double s = 1.0;
        const RKEGenerator prep =
            gaussian_to_rke(GaussianGenerator(G0, suite[1].generator.C));
        CHECK(max_diff(prep.gamma_down,
                       CMat(std::cosh(s) * std::cosh(s) * CMat::Identity(2, 2))) <
              1e-10);
        CHECK(max_diff(prep.gamma_up,
                       CMat(std::sinh(s) * std::sinh(s) * CMat::Identity(2, 2))) <
              1e-10);

        const RKEGenerator cas =
            gaussian_to_rke(GaussianGenerator(G0, suite[2].generator.C));
        CHECK(max_diff(cas.gamma_down, CMat(CMat::Ones(2, 2))) < 1e-12);
        CHECK(max_diff(cas.gamma_up, CMat::Zero(2, 2)) < 1e-12);
    }
    SECTION("suite squeeze parameter reaches the preparation rates") {
        const auto soft = stabilizability_suite(1.0, 0.3);
        const RKEGenerator prep = gaussian_to_rke(
            GaussianGenerator(Mat::Zero(4, 4), soft[1].generator.C));
        CHECK(prep.gamma_down(0, 0).real() ==
              Approx(std::cosh(0.3) * std::cosh(0.3)).margin(1e-10));
        CHECK(prep.gamma_up(0, 0).real() ==
              Approx(std::sinh(0.3) * std::sinh(0.3)).margin(1e-10));
    }
}
