#pragma once

#include <functional>

#include "qcmap/mapping.hpp"
#include "qcmap/models.hpp"

namespace qcmap {

// Long-time limit of C_Iz predicted by ergodic theory (or the exact
// quantum-classical benchmark), with a quadrature error estimate.
struct PredictionResult {
    Method method;      // meaningful unless exact_qc
    bool exact_qc = false;
    double value = 0.0;
    double abs_err = 0.0;
    bool converged = false;
    TwoLevelModel model;
    double beta = 0.0;
};

// <f>_b = Int dx exp(-beta U_RC) f / Int dx exp(-beta U_RC).
// Gauss-Hermite when U_RC is harmonic, composite quadrature otherwise.
double bath_average(const TwoLevelModel& m, double beta,
                    const std::function<double(double)>& f);

PredictionResult predict_exact_qc(const TwoLevelModel& m, double beta);
PredictionResult predict_meanfield(Method method, const TwoLevelModel& m, double beta);
PredictionResult predict_sqc(const TwoLevelModel& m, double beta);
PredictionResult predict_mash(const TwoLevelModel& m, double beta);

// Piecewise-constant marginal equilibrium density of S_z^ad under MASH.
double mash_equilibrium_density(const TwoLevelModel& m, double beta, double sz);

// Dispatch on the method's windowing scheme.
PredictionResult predict(Method method, const TwoLevelModel& m, double beta);

// Mean-field predictions on the anharmonic model blow up once the effective
// coupling alpha * r_max reaches 1 (inverted potentials); such entries are
// masked in sweeps.
bool prediction_unstable(Method method, const TwoLevelModel& m);

enum class Limit { HighT, LowT, WeakCoupling };

// Multiplicative error of the method's long-time limit relative to the exact
// quantum-classical value in the given limit. Windowed methods (MASH, SQC)
// are exact by construction and return 1.
double limit_factor(Method method, Limit limit, const TwoLevelModel& m, double beta);

} // namespace qcmap
