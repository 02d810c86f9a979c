#include "qcmap/mapping.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "qcmap/quadrature.hpp"

namespace qcmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt3 = std::sqrt(3.0);

// Table of shipped methods, N = 2 throughout.
const std::array<MethodSpec, 11> kMethods = {{
    {Method::Ehrenfest, RadialLaw::PointMass, IdentityRep::One, 1.0, 1.0, 1.0,
     ForceRule::MeanField},
    {Method::SpinMapping, RadialLaw::PointMass, IdentityRep::One, kSqrt3, kSqrt3, 1.0,
     ForceRule::MeanField},
    {Method::SpinPLDM, RadialLaw::TruncatedLinear, IdentityRep::One, 0.0, kSqrt3, 2.0,
     ForceRule::MeanField},
    {Method::MMSTFocused, RadialLaw::PointMass, IdentityRep::One, 2.0, 2.0, 1.0,
     ForceRule::MeanField},
    {Method::SingleWigner, RadialLaw::HalfRPhi, IdentityRep::RMinusOne, 0.0, kInf, 2.0,
     ForceRule::MeanField},
    {Method::DoubleSEO, RadialLaw::HalfRPhiSq, IdentityRep::RMinusHalf, 0.0, kInf, 8.0,
     ForceRule::MeanField},
    {Method::SingleSEO, RadialLaw::HalfRPhi, IdentityRep::RMinusHalf, 0.0, kInf, 2.0,
     ForceRule::MeanField},
    {Method::DoubleUnity, RadialLaw::HalfRPhiSq, IdentityRep::One, 0.0, kInf, 8.0,
     ForceRule::MeanField},
    {Method::SingleUnity, RadialLaw::HalfRPhi, IdentityRep::One, 0.0, kInf, 2.0,
     ForceRule::MeanField},
    {Method::SQC, RadialLaw::Flat, IdentityRep::SqcWindow, 0.0, 2.0, 2.0,
     ForceRule::MeanField},
    {Method::MASH, RadialLaw::SphereWeight, IdentityRep::One, 1.0, 1.0, 1.0,
     ForceRule::MASHWindowed},
}};

const char* kNames[] = {"ehrenfest",     "spin-mapping", "spin-pldm", "mmst-focused",
                        "single-wigner", "double-seo",   "single-seo", "double-unity",
                        "single-unity",  "sqc",          "mash"};

} // namespace

const char* method_name(Method m) { return kNames[static_cast<int>(m)]; }

Method method_from_name(const std::string& name) {
    for (int i = 0; i < 11; ++i)
        if (name == kNames[i]) return static_cast<Method>(i);
    throw ConfigError("unknown method: " + name);
}

const MethodSpec& MethodSpec::of(Method m) { return kMethods[static_cast<int>(m)]; }

double MethodSpec::g(double r) const {
    switch (radial_law) {
    case RadialLaw::TruncatedLinear:
        return r <= kSqrt3 ? 4.0 / 3.0 * r : 0.0;
    case RadialLaw::HalfRPhi:
        return 8.0 * r * std::exp(-2.0 * r);
    case RadialLaw::HalfRPhiSq:
        return 128.0 * r * std::exp(-4.0 * r);
    case RadialLaw::Flat:
        return r <= 2.0 ? 1.0 : 0.0;
    case RadialLaw::SphereWeight:
        return r <= 1.0 ? 1.0 : 0.0; // spin normalized, radius drops out
    case RadialLaw::PointMass:
        break;
    }
    throw UnsupportedMethod("g(r) undefined for a point-mass radial law");
}

double MethodSpec::identity(double r, double sz) const {
    switch (identity_rep) {
    case IdentityRep::One:
        return 1.0;
    case IdentityRep::RMinusOne:
        return r - 1.0;
    case IdentityRep::RMinusHalf:
        return r - 0.5;
    case IdentityRep::SqcWindow:
        return heaviside(std::abs(r * sz) - 2.0 + r);
    }
    return 1.0;
}

double MethodSpec::sample_radius(TrajectoryRng& rng) const {
    switch (radial_law) {
    case RadialLaw::PointMass:
    case RadialLaw::SphereWeight:
        return r0;
    case RadialLaw::HalfRPhi:
        // density prop. to r exp(-2r): Gamma(2, 1/2) = sum of two Exp(2)
        return rng.exponential(2.0) + rng.exponential(2.0);
    case RadialLaw::HalfRPhiSq:
        return rng.exponential(4.0) + rng.exponential(4.0);
    case RadialLaw::Flat:
        // SQC initial conditions are uniform in the action variables, which
        // is density prop. to r on [0, 2]
        return 2.0 * std::sqrt(rng.uniform());
    case RadialLaw::TruncatedLinear:
        throw UnsupportedMethod(
            "spin-PLDM radial law is predictor-only; dynamics sampling unsupported");
    }
    return r0;
}

double MethodSpec::trace_norm() const { return 2.0 * radial_mass; }

SpinState cart_to_spherical(double x_plus, double p_plus, double x_minus, double p_minus) {
    SpinState s;
    s.r = 0.5 * (x_plus * x_plus + p_plus * p_plus + x_minus * x_minus + p_minus * p_minus);
    if (s.r < 1e-14) throw ZeroNorm("cart_to_spherical: mapping norm below 1e-14");
    s.sx = (x_plus * x_minus + p_plus * p_minus) / s.r;
    s.sy = (x_plus * p_minus - x_minus * p_plus) / s.r;
    s.sz = 0.5 * (x_plus * x_plus + p_plus * p_plus - x_minus * x_minus - p_minus * p_minus) / s.r;
    return s;
}

int sqc_window(const SpinState& s, Window which) {
    if (s.r > 2.0) return 0;
    const double sz = which == Window::Upper ? s.sz : -s.sz;
    return heaviside(s.r * (1.0 + sz) / 2.0 - 1.0) > 0.0 ? 1 : 0;
}

int sqc_identity_window(const SpinState& s) {
    if (s.r > 2.0) return 0;
    return heaviside(std::abs(s.r * s.sz) - 2.0 + s.r) > 0.0 ? 1 : 0;
}

double observable_sigma_z_ad(const MethodSpec& spec, const SpinState& s) {
    switch (spec.force_rule) {
    case ForceRule::MASHWindowed:
        return sgn0(s.sz);
    case ForceRule::MeanField:
        if (spec.identity_rep == IdentityRep::SqcWindow)
            return sgn0(s.sz) * sqc_identity_window(s);
        return s.r * s.sz;
    }
    return 0.0;
}

InitialSample sample_initial(const MethodSpec& spec, ObservableA a, TrajectoryRng& rng) {
    (void)a; // A = 1/2 identity is the only shipped initial operator
    if (spec.name == Method::SpinPLDM)
        throw UnsupportedMethod("spin-PLDM sampling is only valid in the predictor");

    InitialSample out;
    out.state.r = spec.sample_radius(rng);
    // uniform sphere: S_z uniform on [-1,1], azimuth uniform
    out.state.sz = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * M_PI * rng.uniform();
    const double sperp = std::sqrt(std::max(0.0, 1.0 - out.state.sz * out.state.sz));
    out.state.sx = sperp * std::cos(phi);
    out.state.sy = sperp * std::sin(phi);

    if (spec.force_rule == ForceRule::MASHWindowed) {
        // W_PP weighting 2|S_z| times A = 1/2
        out.weight = std::abs(out.state.sz);
        out.active = sgn0(out.state.sz);
    } else {
        out.weight = 0.5 * spec.identity(out.state.r, out.state.sz);
        out.active = 0;
    }
    return out;
}

double radial_moment(const MethodSpec& spec, MomentKind kind) {
    if (spec.name == Method::MASH || spec.name == Method::SQC)
        throw UnsupportedMethod("radial_moment: windowed methods handled in ergodic");

    auto moment = [&](double r) {
        const double i = spec.identity(r, 0.0);
        return kind == MomentKind::HighT ? r * r * spec.g(r) * i / 3.0
                                         : r * spec.g(r) * i;
    };

    switch (spec.radial_law) {
    case RadialLaw::PointMass: {
        const double i = spec.identity(spec.r0, 0.0);
        return kind == MomentKind::HighT ? spec.r0 * spec.r0 * i / 3.0 : spec.r0 * i;
    }
    case RadialLaw::TruncatedLinear: {
        // g = 4/3 r, I = 1
        const double s3 = kSqrt3;
        return kind == MomentKind::HighT ? (1.0 / 3.0) * (4.0 / 3.0) * std::pow(s3, 4) / 4.0
                                         : (4.0 / 3.0) * std::pow(s3, 3) / 3.0;
    }
    default: {
        // exponential families: quadrature on [0, 20], tail below 1e-12
        double prev = 0.0;
        for (int panels = 32; panels <= 4096; panels *= 2) {
            const double v = quad::composite_gl(0.0, 20.0, panels).integral(moment);
            if (panels > 32 && std::abs(v - prev) <= 1e-12 * std::max(1.0, std::abs(v)))
                return v;
            prev = v;
        }
        throw QuadratureNotConverged("radial_moment quadrature did not converge");
    }
    }
}

} // namespace qcmap
