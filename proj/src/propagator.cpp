#include "nlscat/propagator.hpp"

namespace nlscat {

namespace {

double time_factor(const NLSConfig& cfg, double t) {
    if (!cfg.time_dependent_factor) return 1.0;
    double e = cfg.d * cfg.sigma - 2.0;
    double c = std::abs(std::cos(t));
    if (e < 0.0 && c < 1e-12)
        throw SingularTime("time-dependent factor |cos t|^{d sigma - 2} singular near t = " +
                           std::to_string(t));
    return std::pow(c, e);
}

// u <- u * exp(-i * tau * (V + sign * w * |u|^{2 sigma})); modulus-preserving.
// The potential joins the pointwise phase only when the linear substep cannot
// absorb it (no oscillator basis supplied).
void pointwise_phase(Field& u, double tau, const NLSConfig& cfg, double w, bool with_potential) {
    if (cfg.linear && !with_potential) return;
    const Grid& g = u.grid;
    const int N = g.N;
    double c = cfg.sign * w * tau;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double phase = 0.0;
        if (!cfg.linear) phase -= c * std::pow(std::norm(u[i]), cfg.sigma);
        if (with_potential) {
            double x2;
            if (g.d == 1) {
                double x = g.x(static_cast<int>(i));
                x2 = x * x;
            } else {
                double a = g.x(static_cast<int>(i / N));
                double b = g.x(static_cast<int>(i % N));
                x2 = a * a + b * b;
            }
            phase -= tau * 0.5 * x2;
        }
        u[i] *= Complex(std::cos(phase), std::sin(phase));
    }
}

Field kinetic_step(const Field& u, double dt) {
    return fourier_multiplier(u, [dt](const double* xi, int d) {
        double xi2 = 0.0;
        for (int i = 0; i < d; ++i) xi2 += xi[i] * xi[i];
        double phase = -0.5 * dt * xi2;
        return Complex(std::cos(phase), std::sin(phase));
    });
}

double linf(const Field& u) {
    double m = 0.0;
    for (const auto& v : u.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

Field step_strang(const Field& u, double t, double dt, const NLSConfig& cfg,
                  const HermiteBasis* basis, double hermite_defect_tol) {
    if (dt == 0.0) return u;
    if (!u.finite()) throw BlowUpDetected(t);
    // Strang splitting: the linear substep is either the free kinetic multiplier
    // or, when an oscillator basis is supplied, the exact harmonic propagator.
    // Without a basis the harmonic potential joins the pointwise phase, which
    // keeps the scheme unitary with no spectral truncation of the state.
    const bool potential_in_phase = cfg.potential == Potential::harmonic && basis == nullptr;
    Field v = u;
    pointwise_phase(v, 0.5 * dt, cfg, time_factor(cfg, t + 0.25 * dt), potential_in_phase);
    if (cfg.potential == Potential::harmonic && !potential_in_phase)
        v = basis->propagate(v, dt, hermite_defect_tol);
    else
        v = kinetic_step(v, dt);
    pointwise_phase(v, 0.5 * dt, cfg, time_factor(cfg, t + 0.75 * dt), potential_in_phase);
    if (!v.finite()) throw BlowUpDetected(t + dt);
    return v;
}

Field step_order4(const Field& u, double t, double dt, const NLSConfig& cfg,
                  const HermiteBasis* basis, double hermite_defect_tol) {
    static const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
    static const double w0 = 1.0 - 2.0 * w1;
    Field v = step_strang(u, t, w1 * dt, cfg, basis, hermite_defect_tol);
    v = step_strang(v, t + w1 * dt, w0 * dt, cfg, basis, hermite_defect_tol);
    return step_strang(v, t + (w1 + w0) * dt, w1 * dt, cfg, basis, hermite_defect_tol);
}

double conserved_energy(const Field& u, const NLSConfig& cfg) {
    double e = 0.5 * grad_l2_norm(u) * grad_l2_norm(u);
    if (cfg.potential == Potential::harmonic) {
        const Grid& g = u.grid;
        const int N = g.N;
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            double x2;
            if (g.d == 1) {
                double x = g.x(static_cast<int>(i));
                x2 = x * x;
            } else {
                double a = g.x(static_cast<int>(i / N));
                double b = g.x(static_cast<int>(i % N));
                x2 = a * a + b * b;
            }
            acc += 0.5 * x2 * std::norm(u[i]);
        }
        e += acc * g.cell_volume();
    }
    if (!cfg.linear) {
        double p = 2.0 * cfg.sigma + 2.0;
        double lp = lp_norm(u, p);
        e += cfg.sign / (cfg.sigma + 1.0) * std::pow(lp, p);
    }
    return e;
}

PropagationResult propagate(const Field& u0, double t0, double t1, const NLSConfig& cfg, double dt,
                            const PropagateOptions& opts) {
    if (t1 == t0) throw InvalidProblem("propagate: t1 must differ from t0");
    if (dt <= 0.0) throw InvalidProblem("propagate: dt must be positive");
    if (opts.order != 2 && opts.order != 4)
        throw InvalidProblem("propagate: order must be 2 or 4");

    const HermiteBasis* basis = opts.basis;

    const double span = t1 - t0;
    const long nsteps = std::max(1L, std::lround(std::abs(span) / dt));
    const double h = span / nsteps;  // signed

    PropagationResult result;
    result.final = u0;
    result.times.push_back(t0);

    const double mass0 = l2_norm(u0);
    const double linf0 = linf(u0);
    const double grad0 = grad_l2_norm(u0);
    const double e0 = conserved_energy(u0, cfg);
    double max_mass_dev = 0.0;
    double max_energy_dev = 0.0;

    double t = t0;
    for (long s = 0; s < nsteps; ++s) {
        bool blew = false;
        try {
            Field next = opts.order == 4
                             ? step_order4(result.final, t, h, cfg, basis, opts.hermite_defect_tol)
                             : step_strang(result.final, t, h, cfg, basis, opts.hermite_defect_tol);
            result.final = next;
        } catch (const BlowUpDetected& b) {
            blew = true;
            result.blowup_time = b.time;
        }
        t = t0 + (s + 1) * h;
        if (!blew && mass0 > 0.0) {
            // cheap growth checks every few steps; norms every stride
            if ((s & 0x1f) == 0 || s == nsteps - 1) {
                double li = linf(result.final);
                double gr = grad_l2_norm(result.final);
                if (li > opts.blowup_factor * std::max(linf0, 1e-300) ||
                    gr > opts.blowup_factor * std::max(grad0, 1e-300)) {
                    blew = true;
                    result.blowup_time = t;
                }
                double m = l2_norm(result.final);
                max_mass_dev = std::max(max_mass_dev, std::abs(m * m - mass0 * mass0));
                if (!cfg.time_dependent_factor && std::abs(e0) > 0.0) {
                    double e = conserved_energy(result.final, cfg);
                    max_energy_dev = std::max(max_energy_dev, std::abs(e - e0));
                }
            }
        }
        if (blew) {
            result.blew_up = true;
            break;
        }
        if (opts.checkpoint_stride > 0 && (s + 1) % opts.checkpoint_stride == 0)
            result.times.push_back(t);
    }
    if (result.times.empty() || result.times.back() != t) result.times.push_back(t);
    result.mass_drift = mass0 > 0.0 ? max_mass_dev / (mass0 * mass0) : 0.0;
    result.energy_drift = std::abs(e0) > 0.0 ? max_energy_dev / std::abs(e0) : 0.0;
    return result;
}

}  // namespace nlscat
