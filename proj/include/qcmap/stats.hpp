#pragma once

#include <cstddef>
#include <vector>

namespace qcmap {

// Kahan-compensated accumulator; the ensemble reducer uses it so sums do not
// depend on the worker count.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

struct MeanErr {
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t n = 0;
};

MeanErr mean_and_stderr(const std::vector<double>& xs);

// Survival function of the chi-squared distribution, Q(k/2, x/2).
double chi2_sf(double chi2, int dof);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

} // namespace qcmap
