#pragma once

#include <string>

#include "qcmap/errors.hpp"
#include "qcmap/rng.hpp"

namespace qcmap {

enum class Method {
    Ehrenfest,
    SpinMapping,
    SpinPLDM,
    MMSTFocused,
    SingleWigner,
    DoubleSEO,
    SingleSEO,
    DoubleUnity,
    SingleUnity,
    SQC,
    MASH,
};

const char* method_name(Method m);
Method method_from_name(const std::string& name); // throws ConfigError

// Radial part g(r) = r^{N-1} rho_{0,s}(r) of the initial mapping distribution,
// specialized to N = 2. phi(r) = 16 exp(-2r).
enum class RadialLaw {
    PointMass,       // delta(r - r0)
    TruncatedLinear, // 4/3 r h(sqrt3 - r)        (spin-PLDM)
    HalfRPhi,        // 1/2 r phi(r)              (single-Wigner/SEO/unity)
    HalfRPhiSq,      // 1/2 r phi(r)^2            (double-SEO/unity)
    Flat,            // h(2 - r)                  (SQC)
    SphereWeight,    // MASH: r fixed at 1, weight lives on the sphere
};

enum class IdentityRep { One, RMinusOne, RMinusHalf, SqcWindow };
enum class ForceRule { MeanField, MASHWindowed };

// Unit spin vector in the adiabatic frame plus the conserved mapping norm.
struct SpinState {
    double r;
    double sx, sy, sz;
};

struct MethodSpec {
    Method name;
    RadialLaw radial_law;
    IdentityRep identity_rep;
    double r0;          // point-mass radius (0 if not a point mass)
    double r_max;       // sup of the support of g (inf for phi families)
    double radial_mass; // integral of g(r) dr
    ForceRule force_rule;

    static const MethodSpec& of(Method m);

    bool mean_field() const { return force_rule == ForceRule::MeanField; }
    bool point_mass() const { return radial_law == RadialLaw::PointMass; }

    // g(r) for the extended laws; point masses are handled analytically by
    // the callers and must not land here.
    double g(double r) const;

    // I_s(r, S_z^ad)
    double identity(double r, double sz) const;

    // Draw r from the dynamical initial radial density.
    double sample_radius(TrajectoryRng& rng) const;

    // Trace normalization N * integral(sampled radial density ratio); the
    // constant that turns a Monte Carlo mean of weight*B into C_AB(t).
    double trace_norm() const;
};

SpinState cart_to_spherical(double x_plus, double p_plus, double x_minus, double p_minus);

enum class Window { Upper, Lower };

// Triangular SQC windows in spherical form, closed at the boundary (h(0)=1).
int sqc_window(const SpinState& s, Window which);
int sqc_identity_window(const SpinState& s);

// Phase-space representation of sigma_z^ad for the given method.
double observable_sigma_z_ad(const MethodSpec& spec, const SpinState& s);

struct InitialSample {
    SpinState state;
    double weight; // A(Gamma) carried into the correlation function
    int active;    // MASH active surface, sgn(S_z^ad); 0 otherwise
};

enum class ObservableA { HalfIdentity };

InitialSample sample_initial(const MethodSpec& spec, ObservableA a, TrajectoryRng& rng);

enum class MomentKind { HighT, LowT };

// (1/3) Int r^2 g I dr (HighT) or Int r g I dr (LowT). Closed forms for the
// point-mass and truncated-linear laws, quadrature on [0, 20] otherwise.
double radial_moment(const MethodSpec& spec, MomentKind kind);

inline int sgn0(double x) { return x >= 0.0 ? 1 : -1; }
inline double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

} // namespace qcmap
