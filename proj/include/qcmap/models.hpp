#pragma once

#include "qcmap/errors.hpp"

namespace qcmap {

enum class ModelKind { SpinBoson, Anharmonic };

// Two-level model on a 1-D reaction coordinate. Reduced units, m = hbar = 1.
//
// SpinBoson:   U_RC = 1/2 Omega^2 x^2,             kappa = epsilon + alpha x
// Anharmonic:  U_RC = 1/2 [1/2 Omega^2 x^2 + w],   kappa = alpha/2 [1/2 Omega^2 x^2 - w]
// with w = exp(-Omega (x - xbar)) and constant diabatic coupling delta.
struct TwoLevelModel {
    ModelKind kind = ModelKind::SpinBoson;
    double delta = 1.0;    // diabatic coupling
    double epsilon = 0.0;  // energy bias (spin-boson only)
    double alpha = 1.0;    // electron-nuclear coupling strength
    double omega = 1.0;    // reaction-coordinate frequency
    double xbar = 5.0;     // wall position (anharmonic only)

    static TwoLevelModel spin_boson(double delta, double epsilon, double alpha,
                                    double omega = 1.0);
    static TwoLevelModel anharmonic(double delta, double alpha, double omega = 1.0,
                                    double xbar = 5.0);
};

struct Diabatic {
    double u, du;          // state-independent potential, d/dx
    double delta, ddelta;  // off-diagonal coupling, d/dx
    double kappa, dkappa;  // diagonal asymmetry, d/dx
};

struct AdiabaticFrame {
    double v_z_ad;    // half the adiabatic gap, sqrt(delta^2 + kappa^2)
    double dv_z_ad;   // d/dx of the above
    double d_nac;     // nonadiabatic coupling <psi_+| d/dx psi_->
    double v_plus;    // upper adiabat U + v_z_ad
    double v_minus;   // lower adiabat U - v_z_ad
    double du;        // dU/dx of the state-independent part
};

// Thermostat parameters of the implicit Ohmic secondary bath plus the width of
// the initial nuclear Gaussian.
struct BathSpec {
    double beta = 0.3;   // inverse temperature
    double eta = 2.0;    // friction, J(w) = eta w
    double omega0 = 1.0; // width of the initial Gaussian rho_b(x,p)
};

Diabatic eval_diabatic(const TwoLevelModel& m, double x);
AdiabaticFrame eval_adiabatic(const TwoLevelModel& m, double x);

struct PartitionCheck {
    double z_diabatic;   // quadrature of tr exp(-beta H_diab(x)) over x
    double z_kinematic;  // quadrature of exp(-beta U) 2cosh(beta V_z^ad)
    double rel_diff;
};

// Traces the exponential of the 2x2 diabatic potential matrix node by node
// (numerical eigenvalues) and compares with the kinematic-representation form.
PartitionCheck partition_consistency(const TwoLevelModel& m, double beta,
                                     double x_lo, double x_hi,
                                     double rel_tol = 1e-10);

// Domain on which exp(-beta U_RC) has relative tail mass below ~1e-14.
void thermal_domain(const TwoLevelModel& m, double beta, double& x_lo, double& x_hi);

} // namespace qcmap
