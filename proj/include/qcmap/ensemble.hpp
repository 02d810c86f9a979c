#pragma once

#include <cstdint>
#include <vector>

#include "qcmap/dynamics.hpp"
#include "qcmap/mapping.hpp"
#include "qcmap/models.hpp"

namespace qcmap {

struct EnsembleConfig {
    int n_traj = 10000;
    std::uint64_t master_seed = 75046251ULL;
    std::vector<double> sample_times; // sorted, within [0, t_max]
    Method method = Method::MASH;
    TwoLevelModel model;
    BathSpec bath;
    IntegratorConfig integrator;
    bool parallel = true; // OpenMP kernel; false = serial reference
    int threads = 0;      // 0 = runtime default
};

// C_Iz(t) with per-method weighting. c_values exclude diverged trajectories;
// any divergence is flagged so callers can also report the inclusive-NaN
// variant. For SQC the ratio estimator is used and std_errs come from a
// trajectory jackknife.
struct CorrelationSeries {
    std::vector<double> times;
    std::vector<double> c_values;
    std::vector<double> std_errs;
    std::vector<int> n_running;
    std::vector<double> sqc_denominator; // SQC only, else empty
    int n_diverged = 0;

    // time average over the final quarter of sample_times, estimated from
    // per-trajectory time averages (plain mean or jackknifed ratio)
    double long_time_value = 0.0;
    double long_time_err = 0.0;

    bool inclusive_nan() const { return n_diverged > 0; }
};

CorrelationSeries estimate_correlation(const EnsembleConfig& cfg);

struct Histogram {
    std::vector<double> centers;
    std::vector<double> density;  // normalized to unit mass on [-1, 1]
    std::vector<double> mass;     // per-bin weighted mass (normalized)
    std::vector<double> raw_mass; // unnormalized weight sums
    std::vector<double> raw_var;  // per-bin sums of squared weights
    double lower_mass = 0.0, upper_mass = 0.0;
    int n_diverged = 0;
};

// Weighted histogram of S_z^ad(t) over a MASH ensemble.
Histogram histogram_sz(const EnsembleConfig& cfg, double t, int n_bins);

struct MreSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> std_errs;
};

// Microscopic-reversibility error <[|S_z(t)| - |S_z(0)|] sgn(S_z(t))>_0 for MASH.
MreSeries estimate_mre(const EnsembleConfig& cfg);

} // namespace qcmap
