#include <chrono>
#include <cmath>
#include <cstdio>

#include "config.hpp"
#include "output.hpp"

#include "qcmap/ensemble.hpp"
#include "qcmap/ergodic.hpp"
#include "qcmap/version.hpp"

namespace qcmap::cli {

namespace {

using nlohmann::json;

std::string out_path(const RunConfig& cfg) {
    return cfg.out.empty() ? cfg.subcommand : cfg.out;
}

std::vector<std::string> model_comments(const RunConfig& cfg) {
    return {"model=" + cfg.model + " beta=" + std::to_string(cfg.beta) +
            " delta=" + std::to_string(cfg.delta) + " eps=" + cfg.eps +
            " alpha=" + cfg.alpha + " omega=" + std::to_string(cfg.omega) +
            (cfg.model == "anharmonic" ? " xbar=" + std::to_string(cfg.xbar) : "") +
            " eta=" + cfg.eta};
}

PredictionResult predict_any(const std::string& name, const TwoLevelModel& m, double beta) {
    if (name == "exact") return predict_exact_qc(m, beta);
    return predict(method_from_name(name), m, beta);
}

int cmd_predict(const RunConfig& cfg) {
    OutputDoc doc;
    doc.comments = model_comments(cfg);
    doc.columns = {"method", "value", "abs_err", "converged"};
    doc.emit_plot = false;
    const TwoLevelModel m =
        make_model(cfg, parse_scalar(cfg.eps, "eps"), parse_scalar(cfg.alpha, "alpha"));
    for (const auto& name : cfg.methods) {
        const PredictionResult p = predict_any(name, m, cfg.beta);
        doc.records.push_back(json{{"method", name},
                                   {"value", p.value},
                                   {"abs_err", p.abs_err},
                                   {"converged", p.converged ? 1.0 : 0.0}});
        std::printf("%-14s C_Iz(t->inf) = %+.10f  (quadrature err %.1e)\n", name.c_str(),
                    p.value, p.abs_err);
    }
    const std::string path = write_output(doc, out_path(cfg), cfg.format);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_table1(const RunConfig& cfg) {
    OutputDoc doc;
    doc.columns = {"method", "beta_to_0", "beta_to_inf", "weak_coupling"};
    doc.emit_plot = false;
    const TwoLevelModel m =
        make_model(cfg, parse_scalar(cfg.eps, "eps"), parse_scalar(cfg.alpha, "alpha"));
    std::printf("%-14s %12s %12s %14s\n", "method", "beta->0", "beta->inf", "alpha->0");
    for (int i = 0; i < 11; ++i) {
        const Method method = static_cast<Method>(i);
        const double f0 = limit_factor(method, Limit::HighT, m, cfg.beta);
        const double finf = limit_factor(method, Limit::LowT, m, cfg.beta);
        const bool weak_exact = method == Method::MASH || method == Method::SQC;
        doc.records.push_back(json{{"method", method_name(method)},
                                   {"beta_to_0", f0},
                                   {"beta_to_inf", finf},
                                   {"weak_coupling", weak_exact ? "exact" : "x"}});
        std::printf("%-14s %12.8f %12.8f %14s\n", method_name(method), f0, finf,
                    weak_exact ? "exact" : "x");
    }
    const std::string path = write_output(doc, out_path(cfg), cfg.format);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int sweep(const RunConfig& cfg, bool over_eps) {
    const Range range = over_eps ? parse_range(cfg.eps, "eps") : parse_range(cfg.alpha, "alpha");
    OutputDoc doc;
    doc.comments = model_comments(cfg);
    doc.columns = {over_eps ? "eps" : "alpha", "exact"};
    for (const auto& name : cfg.methods)
        if (name != "exact") doc.columns.push_back(name);

    for (int i = 0; i < range.count; ++i) {
        const double v = range.at(i);
        const double eps = over_eps ? v : parse_scalar(cfg.eps, "eps");
        const double alpha = over_eps ? parse_scalar(cfg.alpha, "alpha") : v;
        const TwoLevelModel m = make_model(cfg, eps, alpha);
        json rec{{doc.columns[0], v}, {"exact", predict_exact_qc(m, cfg.beta).value}};
        for (const auto& name : cfg.methods) {
            if (name == "exact") continue;
            const Method method = method_from_name(name);
            if (prediction_unstable(method, m))
                rec[name] = nullptr; // unbounded inverted potentials: masked
            else
                rec[name] = predict(method, m, cfg.beta).value;
        }
        doc.records.push_back(rec);
    }
    const std::string path = write_output(doc, out_path(cfg), cfg.format);
    std::printf("wrote %s (%d points)\n", path.c_str(), range.count);
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    OutputDoc doc;
    doc.comments = model_comments(cfg);
    doc.columns = {"time"};
    std::vector<CorrelationSeries> series;
    std::vector<std::string> names;
    for (const auto& name : cfg.methods) {
        if (name == "exact")
            throw ConfigError("simulate: 'exact' is a predictor, not a dynamics method");
        const Method method = method_from_name(name);
        const EnsembleConfig e = make_ensemble(cfg, method);
        const auto t0 = std::chrono::steady_clock::now();
        series.push_back(estimate_correlation(e));
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        names.push_back(name);
        doc.columns.push_back(name);
        doc.columns.push_back(name + "_stderr");

        const CorrelationSeries& s = series.back();
        const PredictionResult p = predict(method, e.model, cfg.beta);
        std::printf("%-14s long-time C_Iz = %+.5f +- %.5f   predicted %+.5f   "
                    "(%d trajectories, %.1f s)\n",
                    name.c_str(), s.long_time_value, s.long_time_err, p.value, e.n_traj,
                    wall);
        if (s.n_diverged > 0)
            std::printf("  warning: %d diverged trajectories excluded "
                        "(inclusive estimate is NaN)\n",
                        s.n_diverged);
        doc.comments.push_back(name + ": long_time=" + std::to_string(s.long_time_value) +
                               " +- " + std::to_string(s.long_time_err) +
                               " predicted=" + std::to_string(p.value) +
                               " n_diverged=" + std::to_string(s.n_diverged));
    }
    for (std::size_t j = 0; j < series[0].times.size(); ++j) {
        json rec{{"time", series[0].times[j]}};
        for (std::size_t k = 0; k < series.size(); ++k) {
            rec[names[k]] = series[k].c_values[j];
            rec[names[k] + "_stderr"] = series[k].std_errs[j];
        }
        doc.records.push_back(rec);
    }
    const std::string path = write_output(doc, out_path(cfg), cfg.format);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_histogram(const RunConfig& cfg) {
    const EnsembleConfig e = make_ensemble(cfg, Method::MASH);
    const Histogram h = histogram_sz(e, cfg.hist_time, cfg.hist_bins);

    const double lower_pred =
        mash_equilibrium_density(e.model, cfg.beta, -0.5); // flat per hemisphere
    const double upper_pred = mash_equilibrium_density(e.model, cfg.beta, 0.5);
    std::printf("hemisphere mass: lower %.4f (theory %.4f), upper %.4f (theory %.4f)\n",
                h.lower_mass, lower_pred, h.upper_mass, upper_pred);

    OutputDoc doc;
    doc.comments = model_comments(cfg);
    doc.comments.push_back("t=" + std::to_string(cfg.hist_time));
    doc.comments.push_back("lower_mass=" + std::to_string(h.lower_mass) +
                           " theory=" + std::to_string(lower_pred));
    doc.comments.push_back("upper_mass=" + std::to_string(h.upper_mass) +
                           " theory=" + std::to_string(upper_pred));
    doc.columns = {"sz", "density", "theory"};
    for (std::size_t b = 0; b < h.centers.size(); ++b)
        doc.records.push_back(
            json{{"sz", h.centers[b]},
                 {"density", h.density[b]},
                 {"theory", mash_equilibrium_density(e.model, cfg.beta, h.centers[b])}});
    const std::string path = write_output(doc, out_path(cfg), cfg.format);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_mre(const RunConfig& cfg) {
    const EnsembleConfig e = make_ensemble(cfg, Method::MASH);
    const MreSeries s = estimate_mre(e);
    OutputDoc doc;
    doc.comments = model_comments(cfg);
    doc.columns = {"time", "mre", "stderr"};
    for (std::size_t j = 0; j < s.times.size(); ++j)
        doc.records.push_back(
            json{{"time", s.times[j]}, {"mre", s.values[j]}, {"stderr", s.std_errs[j]}});
    std::printf("MRE(t=%.1f) = %+.5f +- %.5f\n", s.times.back(), s.values.back(),
                s.std_errs.back());
    const std::string path = write_output(doc, out_path(cfg), cfg.format);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

} // namespace

int run(const RunConfig& cfg) {
    if (cfg.subcommand == "predict") return cmd_predict(cfg);
    if (cfg.subcommand == "table1") return cmd_table1(cfg);
    if (cfg.subcommand == "sweep-eps") return sweep(cfg, true);
    if (cfg.subcommand == "sweep-alpha") return sweep(cfg, false);
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg);
    if (cfg.subcommand == "histogram") return cmd_histogram(cfg);
    if (cfg.subcommand == "mre") return cmd_mre(cfg);
    throw ConfigError("unknown subcommand: " + cfg.subcommand);
}

} // namespace qcmap::cli
