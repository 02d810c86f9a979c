#pragma once

#include <complex>

#include "qcmap/mapping.hpp"
#include "qcmap/models.hpp"
#include "qcmap/rng.hpp"

namespace qcmap {

struct IntegratorConfig {
    double dt = 0.01;
    double t_max = 400.0;
    double divergence_cut = 1e3; // |x_c| beyond which the trajectory is frozen
    int record_stride = 100;     // steps between samples
};

enum class TrajStatus { Running, Diverged };

// Mean-field runs carry the two diabatic mapping amplitudes c_k = (X_k + i P_k)/sqrt(2);
// MASH carries the adiabatic amplitudes (c_+, c_-) with unit norm plus the
// active surface.
struct TrajectoryState {
    std::complex<double> c1, c2;
    double xc = 0.0, pc = 0.0;
    int active = 0; // MASH: +1 upper, -1 lower
    double t = 0.0;
    TrajStatus status = TrajStatus::Running;
};

// Build the initial trajectory from an electronic sample (adiabatic-frame
// spin) and a nuclear phase-space point. For mean-field methods the spin is
// rotated into the diabatic frame at x0.
TrajectoryState make_trajectory(const MethodSpec& spec, const TwoLevelModel& m,
                                const InitialSample& s, double x0, double p0);

// One step of the symmetric splitting: exact electronic rotation for dt/2 at
// frozen x, BAOAB nuclear step (exact Ornstein-Uhlenbeck momentum update in
// the middle), electronic rotation for dt/2.
void step_meanfield(TrajectoryState& s, const TwoLevelModel& m, const BathSpec& bath,
                    const IntegratorConfig& cfg, TrajectoryRng& rng);

// Same splitting with the windowed force - dU/dx - active * dV_z/dx; attempts
// a hop whenever the spin crosses the equator during the step.
void step_mash(TrajectoryState& s, const TwoLevelModel& m, const BathSpec& bath,
               const IntegratorConfig& cfg, TrajectoryRng& rng);

enum class HopOutcome { Hopped, Frustrated };

// Momentum rescaling along the reaction coordinate; reverses the momentum and
// reflects S_z through the equator when the hop is frustrated.
HopOutcome attempt_hop(TrajectoryState& s, const TwoLevelModel& m);

double conserved_energy(const TrajectoryState& s, const MethodSpec& spec,
                        const TwoLevelModel& m);

// Adiabatic-frame spin of the current state (mean-field states are rotated
// using the diabatic parameters at the current position).
SpinState spin_adiabatic(const TrajectoryState& s, const MethodSpec& spec,
                         const TwoLevelModel& m);

// Conserved mapping norm of a mean-field state.
double mapping_norm(const TrajectoryState& s);

} // namespace qcmap
