#include "qcmap/dynamics.hpp"

#include <cmath>

namespace qcmap {

namespace {

using cplx = std::complex<double>;

// exp(-i (cz sigma_z + cx sigma_x + cy sigma_y) tau) applied to (c1, c2),
// written out for the traceless 2x2 generator
void rotate(cplx& c1, cplx& c2, double cz, double cx, double cy, double tau) {
    const double w = std::sqrt(cz * cz + cx * cx + cy * cy);
    if (w < 1e-300) return;
    const double th = w * tau;
    const double c = std::cos(th), s = std::sin(th) / w;
    const cplx a(c, -s * cz);
    const cplx b(-s * cy, -s * cx);
    const cplx n1 = a * c1 + b * c2;
    const cplx n2 = -std::conj(b) * c1 + std::conj(a) * c2;
    c1 = n1;
    c2 = n2;
}

double meanfield_force(const Diabatic& d, const cplx& c1, const cplx& c2) {
    const double sx = 2.0 * (c1.real() * c2.real() + c1.imag() * c2.imag());
    const double sz = std::norm(c1) - std::norm(c2);
    return -d.du - d.ddelta * sx - d.dkappa * sz;
}

void ou_update(double& pc, const BathSpec& bath, double dt, TrajectoryRng& rng) {
    const double decay = std::exp(-bath.eta * dt);
    const double sigma = std::sqrt((1.0 - decay * decay) / bath.beta);
    pc = decay * pc + sigma * rng.normal();
}

// One symmetric stage of length h: electronic half-rotation, velocity-Verlet
// kick-drift(-OU)-drift-kick, electronic half-rotation. Exactly two model
// evaluations. Returns the diabatic parameters at the final position.
Diabatic meanfield_stage(TrajectoryState& s, const TwoLevelModel& m, const BathSpec& bath,
                         double h, bool thermostat, TrajectoryRng& rng) {
    Diabatic d = eval_diabatic(m, s.xc);
    rotate(s.c1, s.c2, d.kappa, d.delta, 0.0, 0.5 * h);
    s.pc += 0.5 * h * meanfield_force(d, s.c1, s.c2);
    s.xc += 0.5 * h * s.pc;
    if (thermostat) ou_update(s.pc, bath, h, rng);
    s.xc += 0.5 * h * s.pc;
    d = eval_diabatic(m, s.xc);
    s.pc += 0.5 * h * meanfield_force(d, s.c1, s.c2);
    rotate(s.c1, s.c2, d.kappa, d.delta, 0.0, 0.5 * h);
    return d;
}

AdiabaticFrame mash_stage(TrajectoryState& s, const TwoLevelModel& m, const BathSpec& bath,
                          double h, bool thermostat, TrajectoryRng& rng) {
    AdiabaticFrame a = eval_adiabatic(m, s.xc);
    rotate(s.c1, s.c2, a.v_z_ad, 0.0, s.pc * a.d_nac, 0.5 * h);
    s.pc += 0.5 * h * (-a.du - s.active * a.dv_z_ad);
    s.xc += 0.5 * h * s.pc;
    if (thermostat) ou_update(s.pc, bath, h, rng);
    s.xc += 0.5 * h * s.pc;
    a = eval_adiabatic(m, s.xc);
    s.pc += 0.5 * h * (-a.du - s.active * a.dv_z_ad);
    rotate(s.c1, s.c2, a.v_z_ad, 0.0, s.pc * a.d_nac, 0.5 * h);
    return a;
}

// Triple-jump composition weights; the second-order stage becomes fourth
// order for the frictionless flow (no valid OU update with a negative
// sub-step, so this is only used when eta = 0).
const double kW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kW0 = 1.0 - 2.0 * kW1;

} // namespace

double mapping_norm(const TrajectoryState& s) { return std::norm(s.c1) + std::norm(s.c2); }

TrajectoryState make_trajectory(const MethodSpec& spec, const TwoLevelModel& m,
                                const InitialSample& smp, double x0, double p0) {
    TrajectoryState t;
    t.xc = x0;
    t.pc = p0;
    t.active = smp.active;

    // adiabatic amplitudes from the sampled spin (overall phase irrelevant)
    const double r = smp.state.r;
    const double cp = std::sqrt(0.5 * r * (1.0 + smp.state.sz));
    const double cm = std::sqrt(0.5 * r * (1.0 - smp.state.sz));
    const double phi = std::atan2(smp.state.sy, smp.state.sx);
    const cplx cplus(cp, 0.0);
    const cplx cminus(cm * std::cos(phi), cm * std::sin(phi));

    if (spec.force_rule == ForceRule::MASHWindowed) {
        t.c1 = cplus;
        t.c2 = cminus;
        return t;
    }
    // rotate into the diabatic frame at x0: columns are the phase-fixed
    // eigenvectors |+> = (cos T/2, sin T/2), |-> = (sin T/2, -cos T/2)
    const Diabatic d = eval_diabatic(m, x0);
    const double theta = std::atan2(d.delta, d.kappa);
    const double ct = std::cos(0.5 * theta), st = std::sin(0.5 * theta);
    t.c1 = ct * cplus + st * cminus;
    t.c2 = st * cplus - ct * cminus;
    return t;
}

SpinState spin_adiabatic(const TrajectoryState& s, const MethodSpec& spec,
                         const TwoLevelModel& m) {
    SpinState out;
    const cplx cross = std::conj(s.c1) * s.c2;
    const double r = mapping_norm(s);
    if (spec.force_rule == ForceRule::MASHWindowed) {
        out.r = r;
        out.sx = 2.0 * cross.real() / r;
        out.sy = 2.0 * cross.imag() / r;
        out.sz = (std::norm(s.c1) - std::norm(s.c2)) / r;
        return out;
    }
    const Diabatic d = eval_diabatic(m, s.xc);
    const double vz = std::sqrt(d.delta * d.delta + d.kappa * d.kappa);
    const double sxd = 2.0 * cross.real() / r;
    const double syd = 2.0 * cross.imag() / r;
    const double szd = (std::norm(s.c1) - std::norm(s.c2)) / r;
    out.r = r;
    out.sz = (d.delta * sxd + d.kappa * szd) / vz;
    out.sx = (d.kappa * sxd - d.delta * szd) / vz;
    out.sy = syd;
    return out;
}

double conserved_energy(const TrajectoryState& s, const MethodSpec& spec,
                        const TwoLevelModel& m) {
    const double ke = 0.5 * s.pc * s.pc;
    if (spec.force_rule == ForceRule::MASHWindowed) {
        const AdiabaticFrame a = eval_adiabatic(m, s.xc);
        return ke + (s.active > 0 ? a.v_plus : a.v_minus);
    }
    const Diabatic d = eval_diabatic(m, s.xc);
    const double sx = 2.0 * (s.c1.real() * s.c2.real() + s.c1.imag() * s.c2.imag());
    const double sz = std::norm(s.c1) - std::norm(s.c2);
    return ke + d.u + d.delta * sx + d.kappa * sz;
}

void step_meanfield(TrajectoryState& s, const TwoLevelModel& m, const BathSpec& bath,
                    const IntegratorConfig& cfg, TrajectoryRng& rng) {
    if (s.status != TrajStatus::Running) return;
    const double dt = cfg.dt;

    Diabatic d;
    if (bath.eta > 0.0) {
        d = meanfield_stage(s, m, bath, dt, true, rng);
    } else {
        meanfield_stage(s, m, bath, kW1 * dt, false, rng);
        meanfield_stage(s, m, bath, kW0 * dt, false, rng);
        d = meanfield_stage(s, m, bath, kW1 * dt, false, rng);
    }
    s.t += dt;

    // d holds the diabatic parameters at the final position
    const double sx = 2.0 * (s.c1.real() * s.c2.real() + s.c1.imag() * s.c2.imag());
    const double sz = std::norm(s.c1) - std::norm(s.c2);
    const double energy = 0.5 * s.pc * s.pc + d.u + d.delta * sx + d.kappa * sz;
    if (std::abs(s.xc) > cfg.divergence_cut || energy > 1e6)
        s.status = TrajStatus::Diverged;
}

void step_mash(TrajectoryState& s, const TwoLevelModel& m, const BathSpec& bath,
               const IntegratorConfig& cfg, TrajectoryRng& rng) {
    if (s.status != TrajStatus::Running) return;
    const double dt = cfg.dt;

    if (bath.eta > 0.0) {
        mash_stage(s, m, bath, dt, true, rng);
    } else {
        mash_stage(s, m, bath, kW1 * dt, false, rng);
        mash_stage(s, m, bath, kW0 * dt, false, rng);
        mash_stage(s, m, bath, kW1 * dt, false, rng);
    }
    s.t += dt;

    const double sz = std::norm(s.c1) - std::norm(s.c2);
    if (sgn0(sz) != s.active) attempt_hop(s, m);

    if (std::abs(s.xc) > cfg.divergence_cut) s.status = TrajStatus::Diverged;
}

HopOutcome attempt_hop(TrajectoryState& s, const TwoLevelModel& m) {
    const double sz = std::norm(s.c1) - std::norm(s.c2);
    if (sgn0(sz) == s.active)
        throw InconsistentState("attempt_hop: active surface already matches sgn(S_z)");

    const AdiabaticFrame a = eval_adiabatic(m, s.xc);
    const bool up = s.active < 0;
    const double delta_e = up ? 2.0 * a.v_z_ad : -2.0 * a.v_z_ad;
    const double ke = 0.5 * s.pc * s.pc;

    if (ke >= delta_e) {
        const double sign = s.pc >= 0.0 ? 1.0 : -1.0;
        s.pc = sign * std::sqrt(s.pc * s.pc - 2.0 * delta_e);
        s.active = -s.active;
        return HopOutcome::Hopped;
    }
    // frustrated: reverse the momentum and reflect the spin through the
    // equator, keeping (S_x, S_y): swap the amplitude magnitudes
    s.pc = -s.pc;
    const double m1 = std::abs(s.c1), m2 = std::abs(s.c2);
    if (m1 > 1e-300 && m2 > 1e-300) {
        s.c1 *= m2 / m1;
        s.c2 *= m1 / m2;
    } else {
        std::swap(s.c1, s.c2);
    }
    return HopOutcome::Frustrated;
}

} // namespace qcmap
