#include "qcmap/ensemble.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qcmap/stats.hpp"

namespace qcmap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class Body>
void run_trajectories(const EnsembleConfig& cfg, Body&& body) {
    if (cfg.parallel) {
#ifdef _OPENMP
        const int nth = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nth)
        for (int i = 0; i < cfg.n_traj; ++i) body(i);
        return;
#endif
    }
    for (int i = 0; i < cfg.n_traj; ++i) body(i); // serial reference
}

std::vector<long> sample_steps(const EnsembleConfig& cfg) {
    std::vector<long> steps(cfg.sample_times.size());
    for (std::size_t j = 0; j < cfg.sample_times.size(); ++j)
        steps[j] = std::lround(cfg.sample_times[j] / cfg.integrator.dt);
    return steps;
}

// Sample electronic and nuclear initial conditions (in that order) and
// propagate, invoking sink(j, state, sample) at every sample time. Returns
// false only if the trajectory diverged before the last sample.
template <class Sink>
void run_one(const EnsembleConfig& cfg, const MethodSpec& spec,
             const std::vector<long>& steps, int idx, Sink&& sink) {
    TrajectoryRng rng(cfg.master_seed, static_cast<std::uint64_t>(idx));
    const InitialSample smp = sample_initial(spec, ObservableA::HalfIdentity, rng);
    const double x0 = rng.normal() / (std::sqrt(cfg.bath.beta) * cfg.bath.omega0);
    const double p0 = rng.normal() / std::sqrt(cfg.bath.beta);
    TrajectoryState st = make_trajectory(spec, cfg.model, smp, x0, p0);

    long step = 0;
    for (std::size_t j = 0; j < steps.size(); ++j) {
        while (step < steps[j] && st.status == TrajStatus::Running) {
            if (spec.force_rule == ForceRule::MASHWindowed)
                step_mash(st, cfg.model, cfg.bath, cfg.integrator, rng);
            else
                step_meanfield(st, cfg.model, cfg.bath, cfg.integrator, rng);
            ++step;
        }
        sink(j, st, smp, st.status == TrajStatus::Running);
    }
}

} // namespace

CorrelationSeries estimate_correlation(const EnsembleConfig& cfg) {
    const MethodSpec& spec = MethodSpec::of(cfg.method);
    const bool sqc = cfg.method == Method::SQC;
    const std::vector<long> steps = sample_steps(cfg);
    const std::size_t nt = steps.size();
    const int n = cfg.n_traj;
    const double trace = spec.trace_norm();

    // per-trajectory rows, filled in parallel, reduced serially in index order
    std::vector<double> num(static_cast<std::size_t>(n) * nt, kNaN);
    std::vector<double> den(sqc ? static_cast<std::size_t>(n) * nt : 0, kNaN);
    std::vector<unsigned char> diverged(n, 0);

    run_trajectories(cfg, [&](int i) {
        run_one(cfg, spec, steps, i,
                [&](std::size_t j, const TrajectoryState& st, const InitialSample& smp,
                    bool alive) {
                    if (!alive) {
                        diverged[i] = 1;
                        return;
                    }
                    const SpinState s = spin_adiabatic(st, spec, cfg.model);
                    assert(spec.force_rule != ForceRule::MASHWindowed ||
                           st.active == sgn0(s.sz));
                    num[i * nt + j] = smp.weight * observable_sigma_z_ad(spec, s);
                    if (sqc) den[i * nt + j] = smp.weight * sqc_identity_window(s);
                });
    });

    CorrelationSeries out;
    out.times = cfg.sample_times;
    out.c_values.resize(nt);
    out.std_errs.resize(nt);
    out.n_running.resize(nt);
    if (sqc) out.sqc_denominator.resize(nt);
    for (int i = 0; i < n; ++i) out.n_diverged += diverged[i];

    std::vector<double> col;
    col.reserve(n);
    std::vector<double> dcol;
    for (std::size_t j = 0; j < nt; ++j) {
        col.clear();
        dcol.clear();
        for (int i = 0; i < n; ++i) {
            const double v = num[i * nt + j];
            if (std::isnan(v)) continue;
            col.push_back(v);
            if (sqc) dcol.push_back(den[i * nt + j]);
        }
        out.n_running[j] = static_cast<int>(col.size());
        if (col.empty())
            throw AllDiverged("estimate_correlation: no running trajectories at t=" +
                              std::to_string(cfg.sample_times[j]));
        if (!sqc) {
            const MeanErr me = mean_and_stderr(col);
            out.c_values[j] = trace * me.mean;
            out.std_errs[j] = trace * me.std_err;
        } else {
            KahanSum sn, sd;
            for (double v : col) sn.add(v);
            for (double v : dcol) sd.add(v);
            out.c_values[j] = sn.value() / sd.value();
            out.sqc_denominator[j] = trace * sd.value() / col.size();
            // jackknife over trajectories
            const std::size_t k = col.size();
            double ss = 0.0;
            const double theta = out.c_values[j];
            for (std::size_t i = 0; i < k; ++i) {
                const double ti = (sn.value() - col[i]) / (sd.value() - dcol[i]);
                ss += (ti - theta) * (ti - theta);
            }
            out.std_errs[j] = std::sqrt((k - 1.0) / k * ss);
        }
    }

    // final-quarter time average from per-trajectory averages; trajectories
    // that diverged anywhere are excluded (and flagged via n_diverged)
    const std::size_t j0 = nt - std::max<std::size_t>(1, nt / 4);
    std::vector<double> tn, td;
    for (int i = 0; i < n; ++i) {
        if (diverged[i]) continue;
        KahanSum an, ad;
        for (std::size_t j = j0; j < nt; ++j) {
            an.add(num[i * nt + j]);
            if (sqc) ad.add(den[i * nt + j]);
        }
        tn.push_back(an.value() / (nt - j0));
        if (sqc) td.push_back(ad.value() / (nt - j0));
    }
    if (!sqc) {
        const MeanErr me = mean_and_stderr(tn);
        out.long_time_value = trace * me.mean;
        out.long_time_err = trace * me.std_err;
    } else {
        KahanSum sn, sd;
        for (double v : tn) sn.add(v);
        for (double v : td) sd.add(v);
        const double theta = sn.value() / sd.value();
        out.long_time_value = theta;
        double ss = 0.0;
        for (std::size_t i = 0; i < tn.size(); ++i) {
            const double ti = (sn.value() - tn[i]) / (sd.value() - td[i]);
            ss += (ti - theta) * (ti - theta);
        }
        out.long_time_err = std::sqrt((tn.size() - 1.0) / tn.size() * ss);
    }
    return out;
}

Histogram histogram_sz(const EnsembleConfig& cfg, double t, int n_bins) {
    if (cfg.method != Method::MASH)
        throw UnsupportedMethod("histogram_sz: only defined for MASH");
    const MethodSpec& spec = MethodSpec::of(Method::MASH);

    EnsembleConfig c = cfg;
    c.sample_times = {t};
    const std::vector<long> steps = sample_steps(c);

    std::vector<double> sz(cfg.n_traj, kNaN), w(cfg.n_traj, 0.0);
    run_trajectories(c, [&](int i) {
        run_one(c, spec, steps, i,
                [&](std::size_t, const TrajectoryState& st, const InitialSample& smp,
                    bool alive) {
                    if (!alive) return;
                    sz[i] = (std::norm(st.c1) - std::norm(st.c2)) / mapping_norm(st);
                    w[i] = smp.weight; // |S_z(0)|, the 1/2 * 2|S_z| weighting
                });
    });

    Histogram h;
    h.centers.resize(n_bins);
    h.density.assign(n_bins, 0.0);
    h.mass.assign(n_bins, 0.0);
    h.raw_mass.assign(n_bins, 0.0);
    h.raw_var.assign(n_bins, 0.0);
    const double bw = 2.0 / n_bins;
    for (int b = 0; b < n_bins; ++b) h.centers[b] = -1.0 + (b + 0.5) * bw;

    double total = 0.0;
    for (int i = 0; i < cfg.n_traj; ++i) {
        if (std::isnan(sz[i])) {
            h.n_diverged++;
            continue;
        }
        int b = static_cast<int>((sz[i] + 1.0) / bw);
        b = std::min(std::max(b, 0), n_bins - 1);
        h.raw_mass[b] += w[i];
        h.raw_var[b] += w[i] * w[i];
        total += w[i];
    }
    for (int b = 0; b < n_bins; ++b) {
        h.mass[b] = h.raw_mass[b] / total;
        h.density[b] = h.mass[b] / bw;
        if (h.centers[b] < 0.0)
            h.lower_mass += h.mass[b];
        else
            h.upper_mass += h.mass[b];
    }
    return h;
}

MreSeries estimate_mre(const EnsembleConfig& cfg) {
    if (cfg.method != Method::MASH)
        throw UnsupportedMethod("estimate_mre: only defined for MASH");
    const MethodSpec& spec = MethodSpec::of(Method::MASH);
    const std::vector<long> steps = sample_steps(cfg);
    const std::size_t nt = steps.size();

    // <.>_0 is the bare initial measure: the trace normalization applies but
    // not the 2|S_z(0)| correlation-function weighting
    std::vector<double> rows(static_cast<std::size_t>(cfg.n_traj) * nt, kNaN);
    run_trajectories(cfg, [&](int i) {
        run_one(cfg, spec, steps, i,
                [&](std::size_t j, const TrajectoryState& st, const InitialSample& smp,
                    bool alive) {
                    if (!alive) return;
                    const double sz =
                        (std::norm(st.c1) - std::norm(st.c2)) / mapping_norm(st);
                    rows[i * nt + j] =
                        2.0 * (std::abs(sz) - std::abs(smp.state.sz)) * sgn0(sz);
                });
    });

    MreSeries out;
    out.times = cfg.sample_times;
    out.values.resize(nt);
    out.std_errs.resize(nt);
    std::vector<double> col;
    for (std::size_t j = 0; j < nt; ++j) {
        col.clear();
        for (int i = 0; i < cfg.n_traj; ++i)
            if (!std::isnan(rows[i * nt + j])) col.push_back(rows[i * nt + j]);
        const MeanErr me = mean_and_stderr(col);
        out.values[j] = me.mean;
        out.std_errs[j] = me.std_err;
    }
    return out;
}

} // namespace qcmap
