#include "qcmap/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qcmap/quadrature.hpp"

namespace qcmap {

namespace {

using quad::LogQuad;

// Per-level bath quadrature table: node log-weights with exp(-beta U) folded
// in, plus V_z^ad at the nodes. Every long-time formula only sees x through
// V_z, so this is all the predictors need.
struct BathTable {
    std::vector<double> x;
    std::vector<double> logw;
    std::vector<double> vz;
};

class BathGrids {
public:
    BathGrids(const TwoLevelModel& m, double beta, double envelope_r)
        : model_(m), beta_(beta) {
        if (m.kind == ModelKind::SpinBoson) {
            levels_ = {48, 96, 192, 384, 768};
        } else {
            levels_ = {64, 128, 256, 512, 1024, 2048, 4096};
            find_domain(envelope_r);
        }
    }

    int levels() const { return static_cast<int>(levels_.size()); }

    const BathTable& table(int level) {
        if (tables_.size() <= static_cast<std::size_t>(level))
            tables_.resize(level + 1);
        BathTable& t = tables_[level];
        if (!t.logw.empty()) return t;

        LogQuad q;
        if (model_.kind == ModelKind::SpinBoson) {
            const double s = std::sqrt(0.5 * beta_) * model_.omega;
            q = quad::gauss_hermite(levels_[level], s);
        } else {
            q = quad::composite_gl(x_lo_, x_hi_, levels_[level]);
        }
        t.x = q.x;
        t.logw.resize(q.x.size());
        t.vz.resize(q.x.size());
        for (std::size_t i = 0; i < q.x.size(); ++i) {
            const Diabatic d = eval_diabatic(model_, q.x[i]);
            t.logw[i] = q.logw[i] - beta_ * d.u;
            t.vz[i] = std::hypot(d.delta, d.kappa);
        }
        return t;
    }

private:
    void find_domain(double envelope_r) {
        thermal_domain(model_, beta_, x_lo_, x_hi_);
        // widen until the full integrand envelope exp(-beta U + beta r V_z)
        // has decayed too, capped for the marginal alpha*r = 1 case
        const double width = x_hi_ - x_lo_;
        const double cap_lo = x_lo_ - 2.0 * width, cap_hi = x_hi_ + 2.0 * width;
        auto env = [&](double x) {
            const Diabatic d = eval_diabatic(model_, x);
            return -beta_ * d.u + beta_ * envelope_r * std::hypot(d.delta, d.kappa);
        };
        double peak = env(x_lo_);
        const int n = 600;
        for (int i = 0; i <= n; ++i)
            peak = std::max(peak, env(x_lo_ + width * i / n));
        const double target = peak - 40.0 * std::log(10.0);
        const double step = 0.25 / model_.omega;
        while (env(x_lo_) > target && x_lo_ > cap_lo) x_lo_ -= step;
        while (env(x_hi_) > target && x_hi_ < cap_hi) x_hi_ += step;
    }

    TwoLevelModel model_;
    double beta_;
    double x_lo_ = 0.0, x_hi_ = 0.0;
    std::vector<int> levels_;
    std::vector<BathTable> tables_;
};

double lse(const std::vector<double>& t) { return quad::log_sum_exp(t); }

// log of the unnormalized bath integral  Int exp(-beta U) F dx  where
// log F per node is supplied by `lf`
double log_bath(const BathTable& t, const std::function<double(double)>& lf) {
    std::vector<double> terms(t.vz.size());
    for (std::size_t i = 0; i < t.vz.size(); ++i) terms[i] = t.logw[i] + lf(t.vz[i]);
    return lse(terms);
}

struct LevelLoop {
    double value = 0.0;
    double abs_err = 0.0;
    bool converged = false;
};

LevelLoop converge(int levels, const std::function<double(int)>& eval,
                   double rtol = 1e-10, double atol = 1e-12) {
    LevelLoop out;
    double prev = eval(0);
    for (int l = 1; l < levels; ++l) {
        const double v = eval(l);
        out.value = v;
        out.abs_err = std::abs(v - prev);
        if (out.abs_err <= std::max(atol, rtol * std::abs(v))) {
            out.converged = true;
            return out;
        }
        prev = v;
    }
    return out;
}

PredictionResult make_result(const TwoLevelModel& m, double beta, const LevelLoop& ll) {
    PredictionResult r;
    r.value = ll.value;
    r.abs_err = ll.abs_err;
    r.converged = ll.converged;
    r.model = m;
    r.beta = beta;
    return r;
}

// log Z^MF(r) up to the shared bath normalization
double log_zmf(const BathTable& t, double beta, double r) {
    return log_bath(t, [&](double vz) { return quad::log_sinhc(beta * r * vz); });
}

// <(a cosh a - sinh a)/(a^2)>_b / Z^MF(r), a = beta r V_z; bounded by 1
double mf_bracket(const BathTable& t, double beta, double r) {
    const double num =
        log_bath(t, [&](double vz) { return quad::log_bracket(beta * r * vz); });
    return std::exp(num - log_zmf(t, beta, r));
}

} // namespace

double bath_average(const TwoLevelModel& m, double beta,
                    const std::function<double(double)>& f) {
    BathGrids grids(m, beta, 1.0);
    double prev = 0.0;
    for (int l = 0; l < grids.levels(); ++l) {
        const BathTable& t = grids.table(l);
        // shift by the largest weight; f may be signed so stay in linear space
        double mw = t.logw[0];
        for (double w : t.logw) mw = std::max(mw, w);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < t.x.size(); ++i) {
            const double w = std::exp(t.logw[i] - mw);
            num += w * f(t.x[i]);
            den += w;
        }
        const double v = num / den;
        if (l > 0 && std::abs(v - prev) <= std::max(1e-12, 1e-10 * std::abs(v)))
            return v;
        prev = v;
    }
    throw QuadratureNotConverged("bath_average did not converge");
}

PredictionResult predict_exact_qc(const TwoLevelModel& m, double beta) {
    BathGrids grids(m, beta, 1.0);
    auto eval = [&](int l) {
        const BathTable& t = grids.table(l);
        const double ls = log_bath(t, [&](double vz) { return quad::log_sinh(beta * vz); });
        const double lc = log_bath(t, [&](double vz) { return quad::log_cosh(beta * vz); });
        return -std::exp(ls - lc);
    };
    LevelLoop ll = converge(grids.levels(), eval);
    PredictionResult r = make_result(m, beta, ll);
    r.exact_qc = true;
    r.method = Method::MASH;
    return r;
}

PredictionResult predict_mash(const TwoLevelModel& m, double beta) {
    BathGrids grids(m, beta, 1.0);
    auto eval = [&](int l) {
        const BathTable& t = grids.table(l);
        // hemisphere masses from <exp(-+ beta V_z)>_b
        const double la = log_bath(t, [&](double vz) { return beta * vz; });
        const double lb = log_bath(t, [&](double vz) { return -beta * vz; });
        return -std::tanh(0.5 * (la - lb));
    };
    LevelLoop ll = converge(grids.levels(), eval);
    PredictionResult r = make_result(m, beta, ll);
    r.method = Method::MASH;
    return r;
}

double mash_equilibrium_density(const TwoLevelModel& m, double beta, double sz) {
    BathGrids grids(m, beta, 1.0);
    const BathTable& t = grids.table(grids.levels() - 1);
    const double le = log_bath(t, [&](double vz) { return -sgn0(sz) * beta * vz; });
    const double lc = log_bath(t, [&](double vz) { return quad::log_cosh(beta * vz); });
    return 0.5 * std::exp(le - lc);
}

PredictionResult predict_meanfield(Method method, const TwoLevelModel& m, double beta) {
    const MethodSpec& spec = MethodSpec::of(method);
    if (!spec.mean_field())
        throw UnsupportedMethod("predict_meanfield: method has a windowed force");

    const double r_hi = std::isfinite(spec.r_max) ? spec.r_max : 20.0;
    BathGrids grids(m, beta, spec.point_mass() ? spec.r0 : r_hi);

    auto eval = [&](int l) {
        const BathTable& t = grids.table(l);
        if (spec.point_mass())
            return -spec.r0 * spec.identity(spec.r0, 0.0) * mf_bracket(t, beta, spec.r0);
        const int panels = 12 << l;
        LogQuad rq = quad::composite_gl(0.0, r_hi, panels);
        return rq.integral([&](double r) {
            return -r * spec.g(r) * spec.identity(r, 0.0) * mf_bracket(t, beta, r);
        });
    };
    LevelLoop ll = converge(grids.levels(), eval, 1e-10, 1e-13);
    PredictionResult r = make_result(m, beta, ll);
    r.method = method;
    return r;
}

PredictionResult predict_sqc(const TwoLevelModel& m, double beta) {
    BathGrids grids(m, beta, 2.0);

    auto eval = [&](int l) {
        const BathTable& t = grids.table(l);
        const int panels = 8 << l;
        LogQuad rq = quad::composite_gl(1.0, 2.0, panels);
        std::vector<double> num_terms(rq.x.size()), den_terms(rq.x.size());
        for (std::size_t i = 0; i < rq.x.size(); ++i) {
            const double r = rq.x[i];
            const double lz = log_zmf(t, beta, r);
            const double ln = log_bath(t, [&](double vz) {
                return quad::log_sinh(beta * vz) + quad::log_sinh(beta * (r - 1.0) * vz) -
                       std::log(beta * r * vz);
            });
            const double ld = log_bath(t, [&](double vz) {
                return quad::log_cosh(beta * vz) + quad::log_sinh(beta * (r - 1.0) * vz) -
                       std::log(beta * r * vz);
            });
            const double lr = rq.logw[i] + std::log(r - 1.0);
            num_terms[i] = lr + ln - lz;
            den_terms[i] = lr + ld - lz;
        }
        return -std::exp(lse(num_terms) - lse(den_terms));
    };
    LevelLoop ll = converge(grids.levels(), eval);
    PredictionResult r = make_result(m, beta, ll);
    r.method = Method::SQC;
    return r;
}

PredictionResult predict(Method method, const TwoLevelModel& m, double beta) {
    switch (method) {
    case Method::MASH:
        return predict_mash(m, beta);
    case Method::SQC:
        return predict_sqc(m, beta);
    default:
        return predict_meanfield(method, m, beta);
    }
}

bool prediction_unstable(Method method, const TwoLevelModel& m) {
    if (m.kind != ModelKind::Anharmonic) return false;
    const MethodSpec& spec = MethodSpec::of(method);
    if (!spec.mean_field()) return false;
    return m.alpha * spec.r_max >= 1.0;
}

double limit_factor(Method method, Limit limit, const TwoLevelModel& m, double beta) {
    const MethodSpec& spec = MethodSpec::of(method);
    if (method == Method::MASH || method == Method::SQC) return 1.0;

    switch (limit) {
    case Limit::HighT:
        return radial_moment(spec, MomentKind::HighT);
    case Limit::LowT:
        return radial_moment(spec, MomentKind::LowT);
    case Limit::WeakCoupling: {
        // V_z^(0): the gap at alpha -> 0, constant in x
        const double v0 =
            m.kind == ModelKind::SpinBoson ? std::hypot(m.delta, m.epsilon) : m.delta;
        const double a0 = beta * v0;
        auto langevin = [&](double r) {
            const double a = a0 * r;
            return 1.0 / std::tanh(a) - 1.0 / a;
        };
        double num;
        if (spec.point_mass()) {
            num = spec.r0 * spec.identity(spec.r0, 0.0) * langevin(spec.r0);
        } else {
            const double r_hi = std::isfinite(spec.r_max) ? spec.r_max : 20.0;
            double prev = 0.0;
            num = 0.0;
            for (int panels = 64; panels <= 4096; panels *= 2) {
                num = quad::composite_gl(0.0, r_hi, panels).integral([&](double r) {
                    return r * spec.g(r) * spec.identity(r, 0.0) * langevin(r);
                });
                if (panels > 64 && std::abs(num - prev) < 1e-12) break;
                prev = num;
            }
        }
        return num / std::tanh(a0);
    }
    }
    return 1.0;
}

} // namespace qcmap
