#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace qcmap::cli {

namespace {

std::string join(const std::vector<std::string>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto as_double = [&] { return parse_scalar(value, key); };
    auto as_int = [&] { return static_cast<int>(std::llround(parse_scalar(value, key))); };
    if (key == "subcommand") cfg.subcommand = value;
    else if (key == "model") cfg.model = value;
    else if (key == "methods" || key == "method") cfg.methods = split(value, ',');
    else if (key == "beta") cfg.beta = as_double();
    else if (key == "delta") cfg.delta = as_double();
    else if (key == "eps") cfg.eps = value;
    else if (key == "alpha") cfg.alpha = value;
    else if (key == "omega") cfg.omega = as_double();
    else if (key == "xbar") cfg.xbar = as_double();
    else if (key == "eta") cfg.eta = value;
    else if (key == "ntraj") cfg.ntraj = as_int();
    else if (key == "dt") cfg.dt = as_double();
    else if (key == "tmax") cfg.tmax = as_double();
    else if (key == "sample_every") cfg.sample_every = as_double();
    else if (key == "seed") cfg.seed = std::strtoull(value.c_str(), nullptr, 10);
    else if (key == "threads") cfg.threads = as_int();
    else if (key == "hist_time") cfg.hist_time = as_double();
    else if (key == "hist_bins") cfg.hist_bins = as_int();
    else if (key == "out") cfg.out = value;
    else if (key == "format") cfg.format = value;
    else throw ConfigError("unknown configuration key: " + key);
}

} // namespace

double parse_scalar(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + s + "'");
    }
}

Range parse_range(const std::string& s, const std::string& key) {
    Range r;
    const auto parts = split(s, ':');
    if (parts.size() == 1) {
        r.start = r.stop = parse_scalar(parts[0], key);
        r.count = 1;
        return r;
    }
    if (parts.size() != 3)
        throw ConfigError("key '" + key + "': expected value or start:stop:count, got '" +
                          s + "'");
    r.start = parse_scalar(parts[0], key);
    r.stop = parse_scalar(parts[1], key);
    r.count = static_cast<int>(std::llround(parse_scalar(parts[2], key)));
    if (r.count < 1) throw ConfigError("key '" + key + "': count must be >= 1");
    return r;
}

void apply_config_text(const std::string& text, RunConfig& cfg) {
    const std::string t = trim(text);
    if (!t.empty() && t[0] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("bad JSON config: ") + e.what());
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::string v;
            if (it.value().is_string()) v = it.value().get<std::string>();
            else if (it.value().is_array()) {
                std::vector<std::string> parts;
                for (const auto& e : it.value()) parts.push_back(e.get<std::string>());
                v = join(parts, ',');
            } else v = it.value().dump();
            set_key(cfg, it.key(), v);
        }
        return;
    }
    std::stringstream ss(t);
    std::string line;
    while (std::getline(ss, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad config line (expected key=value): " + line);
        set_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(ss.str(), cfg);
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream o;
    o.precision(17);
    o << "subcommand = " << cfg.subcommand << "\n";
    o << "model = " << cfg.model << "\n";
    o << "methods = " << join(cfg.methods, ',') << "\n";
    o << "beta = " << cfg.beta << "\n";
    o << "delta = " << cfg.delta << "\n";
    o << "eps = " << cfg.eps << "\n";
    o << "alpha = " << cfg.alpha << "\n";
    o << "omega = " << cfg.omega << "\n";
    o << "xbar = " << cfg.xbar << "\n";
    o << "eta = " << cfg.eta << "\n";
    o << "ntraj = " << cfg.ntraj << "\n";
    o << "dt = " << cfg.dt << "\n";
    o << "tmax = " << cfg.tmax << "\n";
    o << "sample_every = " << cfg.sample_every << "\n";
    o << "seed = " << cfg.seed << "\n";
    o << "threads = " << cfg.threads << "\n";
    o << "hist_time = " << cfg.hist_time << "\n";
    o << "hist_bins = " << cfg.hist_bins << "\n";
    o << "out = " << cfg.out << "\n";
    o << "format = " << cfg.format << "\n";
    return o.str();
}

TwoLevelModel make_model(const RunConfig& cfg, double eps, double alpha) {
    if (cfg.model == "spin-boson")
        return TwoLevelModel::spin_boson(cfg.delta, eps, alpha, cfg.omega);
    if (cfg.model == "anharmonic")
        return TwoLevelModel::anharmonic(cfg.delta, alpha, cfg.omega, cfg.xbar);
    throw ConfigError("unknown model: " + cfg.model +
                      " (expected spin-boson or anharmonic)");
}

BathSpec make_bath(const RunConfig& cfg) {
    BathSpec b;
    b.beta = cfg.beta;
    b.omega0 = cfg.omega;
    b.eta = cfg.eta == "auto" ? 2.0 * cfg.omega : parse_scalar(cfg.eta, "eta");
    if (b.beta <= 0.0) throw ConfigError("beta must be positive");
    if (b.eta < 0.0) throw ConfigError("eta must be non-negative");
    return b;
}

EnsembleConfig make_ensemble(const RunConfig& cfg, Method method) {
    EnsembleConfig e;
    e.n_traj = cfg.ntraj;
    e.master_seed = cfg.seed;
    e.method = method;
    e.model = make_model(cfg, parse_scalar(cfg.eps, "eps"), parse_scalar(cfg.alpha, "alpha"));
    e.bath = make_bath(cfg);
    e.integrator.dt = cfg.dt;
    e.integrator.t_max = cfg.tmax;
    e.threads = cfg.threads;
    for (double t = 0.0; t <= cfg.tmax + 1e-9; t += cfg.sample_every)
        e.sample_times.push_back(std::min(t, cfg.tmax));
    if (e.n_traj < 1) throw ConfigError("ntraj must be >= 1");
    if (e.integrator.dt <= 0.0) throw ConfigError("dt must be positive");
    return e;
}

RunConfig parse_config(int argc, const char* const* argv) {
    RunConfig cfg;

    // the config file provides defaults; flags parsed afterwards override it
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") load_config_file(argv[i + 1], cfg);

    CLI::App app{"quasiclassical mapping dynamics and long-time predictors"};
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value or JSON config file");
    app.add_option("--model", cfg.model, "spin-boson | anharmonic");
    app.add_option("--method,--methods", cfg.methods,
                   "comma-separated method list (also: exact)")
        ->delimiter(',');
    app.add_option("--beta", cfg.beta, "inverse temperature");
    app.add_option("--delta", cfg.delta, "diabatic coupling");
    app.add_option("--eps", cfg.eps, "energy bias (scalar or start:stop:count)");
    app.add_option("--alpha", cfg.alpha, "coupling strength (scalar or start:stop:count)");
    app.add_option("--omega", cfg.omega, "reaction-coordinate frequency");
    app.add_option("--xbar", cfg.xbar, "anharmonic wall position");
    app.add_option("--eta", cfg.eta, "friction (number or auto = 2*omega)");
    app.add_option("--ntraj", cfg.ntraj, "trajectories per ensemble");
    app.add_option("--dt", cfg.dt, "time step");
    app.add_option("--tmax", cfg.tmax, "propagation time");
    app.add_option("--sample-every", cfg.sample_every, "sampling interval");
    app.add_option("--seed", cfg.seed, "master seed");
    app.add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    app.add_option("--hist-time", cfg.hist_time, "histogram measurement time");
    app.add_option("--hist-bins", cfg.hist_bins, "histogram bins");
    app.add_option("--out", cfg.out, "output path");
    app.add_option("--format", cfg.format, "csv | json");

    for (const char* sub : {"predict", "simulate", "sweep-eps", "sweep-alpha",
                            "histogram", "table1", "mre"})
        app.add_subcommand(sub)->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    cfg.subcommand = app.get_subcommands().at(0)->get_name();

    if (cfg.threads == 0)
        if (const char* env = std::getenv("QCMAP_THREADS"))
            cfg.threads = std::atoi(env);
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be csv or json, got: " + cfg.format);
    for (const auto& m : cfg.methods)
        if (m != "exact") method_from_name(m); // validates
    return cfg;
}

} // namespace qcmap::cli
