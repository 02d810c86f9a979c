#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcmap/ergodic.hpp"

using namespace qcmap;

namespace {
const auto kBenchmark = TwoLevelModel::spin_boson(1.0, 0.0, 1.0); // beta = 0.3 throughout
}

TEST_CASE("bath averages") {
    CHECK(bath_average(kBenchmark, 0.3, [](double) { return 1.0; }) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(bath_average(kBenchmark, 0.3, [](double x) { return x; })) < 1e-12);
    // Gaussian moment <x^2> = 1/(beta Omega^2)
    CHECK(bath_average(kBenchmark, 0.3, [](double x) { return x * x; }) ==
          doctest::Approx(10.0 / 3.0).epsilon(1e-9));
    const auto anh = TwoLevelModel::anharmonic(1.0, 0.5);
    CHECK(bath_average(anh, 0.3, [](double) { return 1.0; }) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("exact quantum-classical limit") {
    SUBCASE("uncoupled model reduces to -tanh(beta V0)") {
        for (double eps : {0.0, 1.0, 3.0}) {
            const auto m = TwoLevelModel::spin_boson(1.0, eps, 0.0);
            const double v0 = std::sqrt(1.0 + eps * eps);
            const auto p = predict_exact_qc(m, 0.3);
            CHECK(p.converged);
            CHECK(p.value == doctest::Approx(-std::tanh(0.3 * v0)).epsilon(1e-12));
        }
    }
    SUBCASE("beta -> 0 gives zero") {
        // the bath explores wider x as beta shrinks, so the approach is
        // sqrt(beta)-like rather than linear; smallness and decay suffice
        const double v7 = predict_exact_qc(kBenchmark, 1e-7).value;
        const double v5 = predict_exact_qc(kBenchmark, 1e-5).value;
        CHECK(std::abs(v7) < 1e-3);
        CHECK(std::abs(v7) < std::abs(v5));
    }
    SUBCASE("large bias saturates at -1") {
        const auto m = TwoLevelModel::spin_boson(1.0, 100.0, 1.0);
        const double v = predict_exact_qc(m, 0.3).value;
        CHECK(v <= -0.9999);
        CHECK(v >= -1.0);
    }
    SUBCASE("value lies in [-1, 0] and decreases with bias") {
        double prev = 0.0;
        for (double eps : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
            const auto m = TwoLevelModel::spin_boson(1.0, eps, 1.0);
            const double v = predict_exact_qc(m, 0.3).value;
            CHECK(v <= 0.0);
            CHECK(v >= -1.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("MASH long-time limit is the exact one") {
    SUBCASE("bias grid on the spin-boson benchmark") {
        for (int i = 0; i <= 20; ++i) {
            const auto m = TwoLevelModel::spin_boson(1.0, double(i), 1.0);
            const auto ex = predict_exact_qc(m, 0.3);
            const auto ma = predict_mash(m, 0.3);
            CHECK(ma.converged);
            CHECK(std::abs(ma.value - ex.value) < 1e-9);
        }
    }
    SUBCASE("coupling grid on the anharmonic model") {
        for (int i = 0; i <= 10; ++i) {
            const auto m = TwoLevelModel::anharmonic(1.0, 0.1 * i);
            const auto ex = predict_exact_qc(m, 0.3);
            const auto ma = predict_mash(m, 0.3);
            CHECK(std::abs(ma.value - ex.value) < 1e-9);
            CHECK(ma.value <= 0.0);
            CHECK(ma.value >= -1.0);
        }
    }
    SUBCASE("equilibrium spin density normalizes and reproduces the value") {
        const double lo = mash_equilibrium_density(kBenchmark, 0.3, -0.5);
        const double hi = mash_equilibrium_density(kBenchmark, 0.3, 0.5);
        CHECK(lo + hi == doctest::Approx(1.0).epsilon(1e-12)); // each hemisphere has unit width
        CHECK(hi - lo ==
              doctest::Approx(predict_mash(kBenchmark, 0.3).value).epsilon(1e-10));
        // piecewise constant in S_z
        CHECK(mash_equilibrium_density(kBenchmark, 0.3, -0.9) == lo);
        CHECK(mash_equilibrium_density(kBenchmark, 0.3, -1e-12) == lo);
        // lower-hemisphere mass (1 + tanh-ratio)/2 at the symmetric benchmark
        CHECK(lo == doctest::Approx(0.5 * (1.0 - predict_exact_qc(kBenchmark, 0.3).value))
                        .epsilon(1e-10));
    }
}

TEST_CASE("mean-field long-time limits") {
    SUBCASE("Ehrenfest reaches 1/3 of exact in the high-temperature limit") {
        const auto eh = predict_meanfield(Method::Ehrenfest, kBenchmark, 0.003);
        const auto ex = predict_exact_qc(kBenchmark, 0.003);
        CHECK(eh.value / ex.value == doctest::Approx(1.0 / 3.0).epsilon(0.01));
    }
    SUBCASE("spin mapping overshoots by sqrt(3) at low temperature") {
        // alpha = 0 closed form: C = -r [coth(beta r V0) - 1/(beta r V0)], r = sqrt(3)
        const auto m = TwoLevelModel::spin_boson(1.0, 10.0, 0.0);
        const double v0 = std::sqrt(101.0);
        for (double beta : {2.0, 8.0}) {
            const double a = std::sqrt(3.0) * beta * v0;
            const double oracle = -std::sqrt(3.0) * (1.0 / std::tanh(a) - 1.0 / a);
            const auto sm = predict_meanfield(Method::SpinMapping, m, beta);
            CHECK(sm.value == doctest::Approx(oracle).epsilon(1e-9));
        }
        // the overshoot ratio approaches sqrt(3) as beta grows
        const double ratio = predict_meanfield(Method::SpinMapping, m, 8.0).value /
                             predict_exact_qc(m, 8.0).value;
        CHECK(ratio == doctest::Approx(std::sqrt(3.0)).epsilon(0.01));
    }
    SUBCASE("single-Wigner is correct in both limits") {
        const auto cold = TwoLevelModel::spin_boson(1.0, 10.0, 0.0);
        CHECK(predict_meanfield(Method::SingleWigner, kBenchmark, 0.003).value /
                  predict_exact_qc(kBenchmark, 0.003).value ==
              doctest::Approx(1.0).epsilon(0.01));
        CHECK(predict_meanfield(Method::SingleWigner, cold, 8.0).value /
                  predict_exact_qc(cold, 8.0).value ==
              doctest::Approx(1.0).epsilon(0.01));
    }
    SUBCASE("windowed methods are rejected") {
        CHECK_THROWS_AS(predict_meanfield(Method::MASH, kBenchmark, 0.3),
                        UnsupportedMethod);
    }
    SUBCASE("predictions are even in the bias") {
        for (Method m : {Method::Ehrenfest, Method::SingleWigner}) {
            for (double eps : {0.5, 2.0, 5.0}) {
                const auto plus = TwoLevelModel::spin_boson(1.0, eps, 1.0);
                const auto minus = TwoLevelModel::spin_boson(1.0, -eps, 1.0);
                CHECK(predict_meanfield(m, plus, 0.3).value ==
                      doctest::Approx(predict_meanfield(m, minus, 0.3).value)
                          .epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("SQC long-time limit") {
    SUBCASE("exact in the weak-coupling limit") {
        for (double eps : {0.0, 2.0}) {
            for (double beta : {0.3, 1.0}) {
                const auto m = TwoLevelModel::spin_boson(1.0, eps, 0.0);
                const double v0 = std::sqrt(1.0 + eps * eps);
                CHECK(predict_sqc(m, beta).value ==
                      doctest::Approx(-std::tanh(beta * v0)).epsilon(1e-9));
            }
        }
    }
    SUBCASE("exact in the high-temperature limit") {
        CHECK(predict_sqc(kBenchmark, 0.003).value /
                  predict_exact_qc(kBenchmark, 0.003).value ==
              doctest::Approx(1.0).epsilon(0.01));
    }
    SUBCASE("saturates at -1 for large beta") {
        const auto m = TwoLevelModel::spin_boson(1.0, 2.0, 1.0);
        const double v = predict_sqc(m, 30.0).value;
        CHECK(v == doctest::Approx(-1.0).epsilon(1e-3));
        CHECK(v >= -1.0 - 1e-12);
    }
}

TEST_CASE("limit factors") {
    struct Row {
        Method m;
        double high_t, low_t;
        double tol;
    };
    const double s3 = std::sqrt(3.0);
    const Row rows[] = {
        {Method::MASH, 1.0, 1.0, 1e-14},
        {Method::SQC, 1.0, 1.0, 1e-14},
        {Method::SpinMapping, 1.0, s3, 1e-8},
        {Method::SpinPLDM, 1.0, 4.0 * s3 / 3.0, 1e-8},
        {Method::Ehrenfest, 1.0 / 3.0, 1.0, 1e-8},
        {Method::MMSTFocused, 4.0 / 3.0, 2.0, 1e-8},
        {Method::SingleWigner, 1.0, 1.0, 1e-6},
        {Method::DoubleSEO, 0.5, 1.0, 1e-6},
        {Method::SingleSEO, 1.5, 2.0, 1e-6},
        {Method::DoubleUnity, 1.0, 4.0, 1e-6},
        {Method::SingleUnity, 1.0, 2.0, 1e-6},
    };
    for (const auto& r : rows) {
        CHECK(limit_factor(r.m, Limit::HighT, kBenchmark, 0.3) ==
              doctest::Approx(r.high_t).epsilon(r.tol));
        CHECK(limit_factor(r.m, Limit::LowT, kBenchmark, 0.3) ==
              doctest::Approx(r.low_t).epsilon(r.tol));
    }

    SUBCASE("weak-coupling factor for Ehrenfest at beta V0 = 1") {
        const auto m = TwoLevelModel::spin_boson(1.0, 0.0, 0.0); // V0 = 1
        const double oracle = (1.0 / std::tanh(1.0) - 1.0) / std::tanh(1.0);
        const double f = limit_factor(Method::Ehrenfest, Limit::WeakCoupling, m, 1.0);
        CHECK(f == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(f == doctest::Approx(0.41103).epsilon(1e-4));
        // windowed methods are exact here
        CHECK(limit_factor(Method::MASH, Limit::WeakCoupling, m, 1.0) == 1.0);
        CHECK(limit_factor(Method::SQC, Limit::WeakCoupling, m, 1.0) == 1.0);
    }
}

TEST_CASE("stability masking on the anharmonic model") {
    const auto a03 = TwoLevelModel::anharmonic(1.0, 0.3);
    const auto a06 = TwoLevelModel::anharmonic(1.0, 0.6);
    CHECK(!prediction_unstable(Method::SQC, a03));       // 0.3 * 2 < 1
    CHECK(prediction_unstable(Method::SQC, a06));        // 0.6 * 2 >= 1
    CHECK(!prediction_unstable(Method::SpinMapping, a03));
    CHECK(prediction_unstable(Method::SpinMapping, a06));
    CHECK(prediction_unstable(Method::SingleUnity, a03)); // r_max infinite
    CHECK(!prediction_unstable(Method::MASH, TwoLevelModel::anharmonic(1.0, 1.0)));
    CHECK(!prediction_unstable(Method::Ehrenfest, a06)); // bound 1.0
    CHECK(prediction_unstable(Method::Ehrenfest, TwoLevelModel::anharmonic(1.0, 1.0)));
    // never masked on the harmonic model
    CHECK(!prediction_unstable(Method::SingleUnity, kBenchmark));
}

TEST_CASE("quadrature error reporting") {
    for (const auto& m : {kBenchmark, TwoLevelModel::anharmonic(1.0, 0.4)}) {
        for (Method method : {Method::Ehrenfest, Method::SQC, Method::MASH}) {
            const auto p = predict(method, m, 0.3);
            CHECK(p.converged);
            CHECK(p.abs_err < 1e-8);
        }
    }
}
