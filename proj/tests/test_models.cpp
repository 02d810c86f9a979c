#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "qcmap/models.hpp"

using namespace qcmap;

namespace {

// finite-difference oracle for d/dx
template <typename F>
double fd(F&& f, double x, double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// independent NAC oracle: <psi_+|d/dx psi_-> from numerically diagonalized
// 2x2 diabatic matrices with both eigenvectors phase-fixed to a positive
// first component
double nac_overlap_oracle(const TwoLevelModel& m, double x, double h = 1e-5) {
    auto eigvecs = [&](double xx) {
        const Diabatic d = eval_diabatic(m, xx);
        Eigen::Matrix2d v;
        v << d.kappa, d.delta, d.delta, -d.kappa;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(v);
        // eigenvalues ascending: column 0 = lower (-V_z), column 1 = upper
        Eigen::Vector2d lo = es.eigenvectors().col(0);
        Eigen::Vector2d hi = es.eigenvectors().col(1);
        if (lo(0) < 0.0) lo = -lo;
        if (hi(0) < 0.0) hi = -hi;
        return std::make_pair(hi, lo);
    };
    const auto [hi_c, lo_c] = eigvecs(x);
    (void)lo_c;
    const auto [hi_p, lo_p] = eigvecs(x + h);
    const auto [hi_m, lo_m] = eigvecs(x - h);
    (void)hi_p;
    (void)hi_m;
    return hi_c.dot((lo_p - lo_m) / (2.0 * h));
}

} // namespace

TEST_CASE("spin-boson diabatic values") {
    const auto m = TwoLevelModel::spin_boson(1.0, 0.0, 1.0);
    const Diabatic d = eval_diabatic(m, 0.0);
    CHECK(d.u == 0.0);
    CHECK(d.delta == 1.0);
    CHECK(d.kappa == 0.0);
    CHECK(d.dkappa == 1.0);
}

TEST_CASE("anharmonic diabatic values") {
    SUBCASE("alpha=0 decouples the diabats") {
        const auto m = TwoLevelModel::anharmonic(1.0, 0.0);
        for (double x : {-1.0, 0.0, 2.5, 5.0, 9.0}) {
            CHECK(eval_diabatic(m, x).kappa == 0.0);
            CHECK(eval_diabatic(m, x).dkappa == 0.0);
        }
    }
    SUBCASE("kappa at the wall position") {
        const auto m = TwoLevelModel::anharmonic(1.0, 1.0, 1.0, 5.0);
        // 1/2 (1/2 * 25 - 1)
        CHECK(eval_diabatic(m, 5.0).kappa == doctest::Approx(5.75).epsilon(1e-14));
    }
    SUBCASE("diabats follow the (1 -+ alpha) pattern; the softer wall weakens") {
        // U + kappa = (1+alpha)/4 x^2 + (1-alpha)/2 w,
        // U - kappa = (1-alpha)/4 x^2 + (1+alpha)/2 w,  w = exp(-(x - xbar))
        double prev_wall = 1.0;
        for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const auto m = TwoLevelModel::anharmonic(1.0, alpha);
            for (double x : {0.0, 3.0, 5.0, 8.0}) {
                const Diabatic d = eval_diabatic(m, x);
                const double w = std::exp(-(x - m.xbar));
                CHECK(d.u + d.kappa ==
                      doctest::Approx(0.25 * (1.0 + alpha) * x * x +
                                      0.5 * (1.0 - alpha) * w)
                          .epsilon(1e-12));
                CHECK(d.u - d.kappa ==
                      doctest::Approx(0.25 * (1.0 - alpha) * x * x +
                                      0.5 * (1.0 + alpha) * w)
                          .epsilon(1e-12));
            }
            const double wall_coeff = 0.5 * (1.0 - alpha);
            CHECK(wall_coeff <= prev_wall + 1e-15);
            prev_wall = wall_coeff;
        }
    }
}

TEST_CASE("analytic derivatives match central differences") {
    const TwoLevelModel models[] = {TwoLevelModel::spin_boson(1.0, 2.0, 1.0),
                                    TwoLevelModel::anharmonic(1.0, 0.7)};
    for (const auto& m : models) {
        double lo, hi;
        thermal_domain(m, 0.3, lo, hi);
        for (int i = 0; i <= 100; ++i) {
            const double x = lo + (hi - lo) * i / 100.0;
            const Diabatic d = eval_diabatic(m, x);
            const double scale_u = std::max(1.0, std::abs(d.du));
            CHECK(fd([&](double xx) { return eval_diabatic(m, xx).u; }, x) ==
                  doctest::Approx(d.du).epsilon(1e-6).scale(scale_u));
            CHECK(fd([&](double xx) { return eval_diabatic(m, xx).kappa; }, x) ==
                  doctest::Approx(d.dkappa).epsilon(1e-6).scale(
                      std::max(1.0, std::abs(d.dkappa))));
            CHECK(fd([&](double xx) { return eval_diabatic(m, xx).delta; }, x) ==
                  doctest::Approx(d.ddelta).scale(1.0).epsilon(1e-6));
            const AdiabaticFrame a = eval_adiabatic(m, x);
            CHECK(fd([&](double xx) { return eval_adiabatic(m, xx).v_z_ad; }, x) ==
                  doctest::Approx(a.dv_z_ad).epsilon(1e-6).scale(
                      std::max(1.0, std::abs(a.dv_z_ad))));
        }
    }
}

TEST_CASE("adiabatic frame") {
    SUBCASE("half gap and NAC at the symmetric crossing") {
        const auto m = TwoLevelModel::spin_boson(1.0, 0.0, 1.0);
        const AdiabaticFrame a = eval_adiabatic(m, 0.0);
        CHECK(a.v_z_ad == doctest::Approx(1.0).epsilon(1e-14));
        // |d| = alpha / (2 delta); the phase-fixed overlap convention makes it
        // negative here, and the finite-difference oracle must agree
        CHECK(std::abs(a.d_nac) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(a.d_nac == doctest::Approx(nac_overlap_oracle(m, 0.0)).epsilon(1e-5));
    }
    SUBCASE("x-independent Hamiltonian has no NAC") {
        const auto m = TwoLevelModel::spin_boson(1.0, 3.0, 0.0);
        for (double x : {-2.0, 0.0, 1.0, 4.0}) CHECK(eval_adiabatic(m, x).d_nac == 0.0);
    }
    SUBCASE("biased gap value") {
        const auto m = TwoLevelModel::spin_boson(1.0, 3.0, 1.0);
        CHECK(eval_adiabatic(m, 1.0).v_z_ad ==
              doctest::Approx(std::sqrt(17.0)).epsilon(1e-14));
    }
    SUBCASE("gap ordering") {
        const TwoLevelModel models[] = {TwoLevelModel::spin_boson(1.0, 2.0, 1.0),
                                        TwoLevelModel::anharmonic(1.0, 0.5)};
        for (const auto& m : models)
            for (int i = -50; i <= 50; ++i) {
                const AdiabaticFrame a = eval_adiabatic(m, 0.3 * i);
                CHECK(a.v_plus >= a.v_minus);
                CHECK(a.v_plus - a.v_minus ==
                      doctest::Approx(2.0 * a.v_z_ad).epsilon(1e-13));
            }
    }
    SUBCASE("closed-form NAC matches the eigenvector-overlap oracle") {
        const TwoLevelModel models[] = {TwoLevelModel::spin_boson(1.0, 2.0, 1.0),
                                        TwoLevelModel::anharmonic(1.0, 0.7)};
        for (const auto& m : models) {
            double lo, hi;
            thermal_domain(m, 0.3, lo, hi);
            for (int i = 0; i <= 60; ++i) {
                const double x = lo + (hi - lo) * i / 60.0;
                const AdiabaticFrame a = eval_adiabatic(m, x);
                CHECK(a.d_nac == doctest::Approx(nac_overlap_oracle(m, x))
                                     .epsilon(1e-5)
                                     .scale(std::max(1.0, std::abs(a.d_nac))));
            }
        }
    }
    SUBCASE("degenerate gap is rejected") {
        const auto m = TwoLevelModel::spin_boson(0.0, 0.0, 0.0);
        CHECK_THROWS_AS(eval_adiabatic(m, 1.0), DegenerateGap);
    }
}

TEST_CASE("partition function agrees across representations") {
    SUBCASE("spin-boson and anharmonic at the benchmark temperature") {
        for (const auto& m : {TwoLevelModel::spin_boson(1.0, 2.0, 1.0),
                              TwoLevelModel::anharmonic(1.0, 0.5)}) {
            double lo, hi;
            thermal_domain(m, 0.3, lo, hi);
            const PartitionCheck pc = partition_consistency(m, 0.3, lo, hi);
            CHECK(pc.rel_diff < 1e-9);
        }
    }
    SUBCASE("uncoupled limit reduces to 2 cosh times a Gaussian") {
        const auto m = TwoLevelModel::spin_boson(1.0, 2.0, 0.0);
        const double beta = 0.4;
        double lo, hi;
        thermal_domain(m, beta, lo, hi);
        const PartitionCheck pc = partition_consistency(m, beta, lo, hi);
        const double expected = std::sqrt(2.0 * M_PI / beta) *
                                2.0 * std::cosh(beta * std::sqrt(5.0));
        CHECK(pc.z_kinematic == doctest::Approx(expected).epsilon(1e-9));
        CHECK(pc.rel_diff < 1e-9);
    }
    SUBCASE("high-temperature scaling between two small betas") {
        const auto m = TwoLevelModel::spin_boson(1.0, 0.0, 0.0);
        double lo, hi;
        thermal_domain(m, 0.01, lo, hi);
        const double z1 = partition_consistency(m, 0.01, lo, hi).z_kinematic;
        const double z2 = partition_consistency(m, 0.02, lo, hi).z_kinematic;
        // Z(beta) = sqrt(2 pi / beta) 2 cosh(beta) for the uncoupled model
        const double expected =
            std::sqrt(2.0) * std::cosh(0.01) / std::cosh(0.02);
        CHECK(z1 / z2 == doctest::Approx(expected).epsilon(1e-9));
    }
}
