#include "qcmap/models.hpp"

#include <cmath>
#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "qcmap/quadrature.hpp"

namespace qcmap {

TwoLevelModel TwoLevelModel::spin_boson(double delta, double epsilon, double alpha,
                                        double omega) {
    TwoLevelModel m;
    m.kind = ModelKind::SpinBoson;
    m.delta = delta;
    m.epsilon = epsilon;
    m.alpha = alpha;
    m.omega = omega;
    return m;
}

TwoLevelModel TwoLevelModel::anharmonic(double delta, double alpha, double omega,
                                        double xbar) {
    TwoLevelModel m;
    m.kind = ModelKind::Anharmonic;
    m.delta = delta;
    m.epsilon = 0.0;
    m.alpha = alpha;
    m.omega = omega;
    m.xbar = xbar;
    return m;
}

Diabatic eval_diabatic(const TwoLevelModel& m, double x) {
    Diabatic d;
    d.delta = m.delta;
    d.ddelta = 0.0;
    const double w2 = m.omega * m.omega;
    if (m.kind == ModelKind::SpinBoson) {
        d.u = 0.5 * w2 * x * x;
        d.du = w2 * x;
        d.kappa = m.epsilon + m.alpha * x;
        d.dkappa = m.alpha;
    } else {
        const double wall = std::exp(-m.omega * (x - m.xbar));
        d.u = 0.5 * (0.5 * w2 * x * x + wall);
        d.du = 0.5 * (w2 * x - m.omega * wall);
        d.kappa = 0.5 * m.alpha * (0.5 * w2 * x * x - wall);
        d.dkappa = 0.5 * m.alpha * (w2 * x + m.omega * wall);
    }
    return d;
}

AdiabaticFrame eval_adiabatic(const TwoLevelModel& m, double x) {
    const Diabatic d = eval_diabatic(m, x);
    AdiabaticFrame a;
    a.v_z_ad = std::sqrt(d.delta * d.delta + d.kappa * d.kappa);
    if (a.v_z_ad < 1e-12)
        throw DegenerateGap("eval_adiabatic: adiabatic gap below 1e-12 at x=" +
                            std::to_string(x));
    a.dv_z_ad = (d.delta * d.ddelta + d.kappa * d.dkappa) / a.v_z_ad;
    // Sign fixed by phase-fixing both eigenvectors to positive first component.
    a.d_nac = (d.ddelta * d.kappa - d.delta * d.dkappa) /
              (2.0 * (d.delta * d.delta + d.kappa * d.kappa));
    a.v_plus = d.u + a.v_z_ad;
    a.v_minus = d.u - a.v_z_ad;
    a.du = d.du;
    return a;
}

void thermal_domain(const TwoLevelModel& m, double beta, double& x_lo, double& x_hi) {
    // exp(-beta U) < 1e-14 relative to the peak once beta (U - U_min) > 14 ln 10;
    // use a 40-decade margin so downstream integrands keep headroom.
    const double drop = 40.0 * std::log(10.0) / beta;
    // locate the minimum of U_RC by coarse scan plus refinement
    double lo = -50.0 / m.omega, hi = 50.0 / m.omega + (m.kind == ModelKind::Anharmonic ? m.xbar : 0.0);
    auto u = [&](double x) { return eval_diabatic(m, x).u; };
    double xmin = 0.0, umin = u(0.0);
    const int n = 4000;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double ux = u(x);
        if (ux < umin) { umin = ux; xmin = x; }
    }
    const double target = umin + drop;
    double a = xmin;
    while (u(a) < target) a -= 0.25 / m.omega;
    double b = xmin;
    while (u(b) < target) b += 0.25 / m.omega;
    x_lo = a;
    x_hi = b;
}

PartitionCheck partition_consistency(const TwoLevelModel& m, double beta,
                                     double x_lo, double x_hi, double rel_tol) {
    auto evaluate = [&](int panels, double& zd, double& zk) {
        quad::LogQuad q = quad::composite_gl(x_lo, x_hi, panels);
        double sd = 0.0, sk = 0.0;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
        for (std::size_t i = 0; i < q.x.size(); ++i) {
            const Diabatic d = eval_diabatic(m, q.x[i]);
            Eigen::Matrix2d h;
            h << d.u + d.kappa, d.delta, d.delta, d.u - d.kappa;
            es.compute(h);
            const double w = std::exp(q.logw[i]);
            sd += w * (std::exp(-beta * es.eigenvalues()[0]) +
                       std::exp(-beta * es.eigenvalues()[1]));
            const double vz = std::hypot(d.delta, d.kappa);
            sk += w * std::exp(-beta * d.u) * 2.0 * std::cosh(beta * vz);
        }
        zd = sd;
        zk = sk;
    };

    double zd_prev = 0.0, zk_prev = 0.0;
    evaluate(64, zd_prev, zk_prev);
    for (int panels = 128; panels <= 8192; panels *= 2) {
        double zd = 0.0, zk = 0.0;
        evaluate(panels, zd, zk);
        const bool ok = std::abs(zd - zd_prev) <= rel_tol * std::abs(zd) &&
                        std::abs(zk - zk_prev) <= rel_tol * std::abs(zk);
        zd_prev = zd;
        zk_prev = zk;
        if (ok) {
            PartitionCheck out;
            out.z_diabatic = zd;
            out.z_kinematic = zk;
            out.rel_diff = std::abs(zd - zk) / std::abs(zk);
            return out;
        }
    }
    throw QuadratureNotConverged("partition_consistency: refinement did not converge");
}

} // namespace qcmap
