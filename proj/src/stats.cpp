#include "qcmap/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace qcmap {

MeanErr mean_and_stderr(const std::vector<double>& xs) {
    MeanErr out;
    out.n = xs.size();
    if (xs.empty()) return out;
    KahanSum s;
    for (double x : xs) s.add(x);
    out.mean = s.value() / xs.size();
    if (xs.size() < 2) return out;
    KahanSum q;
    for (double x : xs) q.add((x - out.mean) * (x - out.mean));
    const double var = q.value() / (xs.size() - 1);
    out.std_err = std::sqrt(var / xs.size());
    return out;
}

namespace {

// series expansion of P(a, x), valid for x < a + 1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// continued fraction for Q(a, x), valid for x >= a + 1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_sf(double chi2, int dof) { return gamma_q(0.5 * dof, 0.5 * chi2); }

} // namespace qcmap
