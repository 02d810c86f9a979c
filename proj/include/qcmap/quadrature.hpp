#pragma once

#include <functional>
#include <vector>

namespace qcmap::quad {

// A fixed set of nodes and log-weights representing the plain Lebesgue measure
// dx on some domain. Integrals of positive integrands are accumulated in log
// space so that thermal factors such as exp(beta r V_z) never overflow.
struct LogQuad {
    std::vector<double> x;
    std::vector<double> logw;

    // log of  Integral exp(log_f(x)) dx  (max-shifted sum)
    double log_integral(const std::function<double(double)>& log_f) const;
    // plain  Integral f(x) dx  for signed, O(1)-scaled integrands
    double integral(const std::function<double(double)>& f) const;
};

// Gauss-Hermite rule recast as nodes for dx: holds x_i = t_i / s and
// logw_i = log(w_i) + t_i^2 - log(s), so that the caller's integrand carries
// the full weight (including its own Gaussian). Nodes whose raw weight
// underflows are dropped; their true contribution is below 1e-300.
LogQuad gauss_hermite(int n, double s);

// Composite 10-point Gauss-Legendre on [a, b] split into `panels` panels.
LogQuad composite_gl(double a, double b, int panels);

double log_sum_exp(const std::vector<double>& terms);

// log(sinh x), log(cosh x), log((x cosh x - sinh x)/x^2), log(sinh(x)/x)
// for x >= 0, stable for both tiny and huge arguments.
double log_sinh(double x);
double log_cosh(double x);
double log_bracket(double x);
double log_sinhc(double x);

} // namespace qcmap::quad
