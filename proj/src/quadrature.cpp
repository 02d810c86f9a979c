#include "qcmap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>

namespace qcmap::quad {

double log_sum_exp(const std::vector<double>& terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (double t : terms) m = std::max(m, t);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

double LogQuad::log_integral(const std::function<double(double)>& log_f) const {
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        t[i] = logw[i] + log_f(x[i]);
        m = std::max(m, t[i]);
    }
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : t) s += std::exp(v - m);
    return m + std::log(s);
}

double LogQuad::integral(const std::function<double(double)>& f) const {
    double s = 0.0, c = 0.0; // Kahan
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double term = std::exp(logw[i]) * f(x[i]);
        const double y = term - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

namespace {

// Orthonormal Hermite functions h_k(t) = H_k(t) e^{-t^2/2} / sqrt(2^k k! sqrt(pi)),
// evaluated by the three-term recurrence with exponent tracking so that huge
// |t| neither under- nor overflows. Returns mantissas of h_{n-1}, h_n and the
// shared log scale.
void hermite_pair(int n, double t, double& hm1, double& hn, double& log_scale) {
    double a = std::pow(M_PI, -0.25); // h_0 mantissa at scale exp(ls)
    double ls = -0.5 * t * t;
    double b = std::sqrt(2.0) * t * a; // h_1
    for (int k = 1; k < n; ++k) {
        const double c = std::sqrt(2.0 / (k + 1.0)) * t * b - std::sqrt(k / (k + 1.0)) * a;
        a = b;
        b = c;
        const double m = std::max(std::abs(a), std::abs(b));
        if (m > 1e150 || (m > 0.0 && m < 1e-150)) {
            const double f = m;
            a /= f;
            b /= f;
            ls += std::log(f);
        }
    }
    hm1 = a;
    hn = b;
    log_scale = ls;
}

// Gauss-Hermite nodes from the Jacobi-matrix eigenvalues, then Newton-polished
// on h_n(t) = 0; log-weights from w_i exp(t_i^2) = 1 / (n h_{n-1}(t_i)^2).
// The eigenvector route for the weights loses all relative accuracy in the
// tails, which the thermal integrands here genuinely probe.
struct HermiteRule {
    std::vector<double> t, logw; // logw excludes the Gaussian: log(w_i) + t_i^2
};

const HermiteRule& hermite_rule(int n) {
    static std::map<int, HermiteRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(k / 2.0);
        j(k - 1, k) = b;
        j(k, k - 1) = b;
    }
    HermiteRule r;
    r.t.resize(n);
    r.logw.resize(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j, Eigen::EigenvaluesOnly);
    for (int i = 0; i < n; ++i) {
        double t = es.eigenvalues()[i];
        double hm1 = 0.0, hn = 0.0, ls = 0.0;
        for (int it2 = 0; it2 < 3; ++it2) {
            hermite_pair(n, t, hm1, hn, ls);
            const double dh = std::sqrt(2.0 * n) * hm1 - t * hn; // h_n'(t) mantissa
            if (dh == 0.0) break;
            t -= hn / dh;
        }
        hermite_pair(n, t, hm1, hn, ls);
        r.t[i] = t;
        r.logw[i] = -std::log(double(n)) - 2.0 * (std::log(std::abs(hm1)) + ls);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

// 10-point Gauss-Legendre on [-1, 1]
constexpr double kGlx[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                            0.8650633666889845, 0.9739065285171717};
constexpr double kGlw[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                            0.1494513491505806, 0.0666713443086881};

} // namespace

LogQuad gauss_hermite(int n, double s) {
    const HermiteRule& r = hermite_rule(n);
    LogQuad q;
    q.x.resize(n);
    q.logw.resize(n);
    const double log_s = std::log(s);
    for (int i = 0; i < n; ++i) {
        q.x[i] = r.t[i] / s;
        q.logw[i] = r.logw[i] - log_s;
    }
    return q;
}

LogQuad composite_gl(double a, double b, int panels) {
    LogQuad q;
    q.x.reserve(10 * panels);
    q.logw.reserve(10 * panels);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int k = 0; k < 5; ++k) {
            const double dx = 0.5 * h * kGlx[k];
            const double lw = std::log(0.5 * h * kGlw[k]);
            q.x.push_back(mid - dx);
            q.logw.push_back(lw);
            q.x.push_back(mid + dx);
            q.logw.push_back(lw);
        }
    }
    return q;
}

double log_sinh(double x) {
    // sinh x = e^x (1 - e^{-2x}) / 2; expm1 keeps the small-x limit exact
    return x - M_LN2 + std::log(-std::expm1(-2.0 * x));
}

double log_cosh(double x) {
    return x - M_LN2 + std::log1p(std::exp(-2.0 * x));
}

double log_sinhc(double x) {
    if (x < 1e-3) {
        const double x2 = x * x;
        return std::log1p(x2 / 6.0 * (1.0 + x2 / 20.0));
    }
    return log_sinh(x) - std::log(x);
}

double log_bracket(double x) {
    // (x cosh x - sinh x)/x^2 = sum_{k>=1} x^{2k-1} 2k/(2k+1)!
    // The direct difference cancels badly below x ~ 1, so sum the
    // (all-positive) series there instead.
    if (x < 1.0) {
        const double x2 = x * x;
        double term = x / 3.0, s = term;
        for (int k = 1; k < 40; ++k) {
            term *= x2 / (2.0 * k * (2.0 * k + 3.0));
            s += term;
            if (term < 1e-17 * s) break;
        }
        return std::log(s);
    }
    // = [e^x (x-1) + e^-x (x+1)] / (2 x^2)
    return x + std::log((x - 1.0) + std::exp(-2.0 * x) * (x + 1.0)) -
           std::log(2.0 * x * x);
}

} // namespace qcmap::quad
