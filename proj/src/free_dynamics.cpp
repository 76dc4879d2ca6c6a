#include "nlscat/free_dynamics.hpp"

#include "nlscat/propagator.hpp"

namespace nlscat {

Field propagate_U0(const Field& f, double t) {
    if (!f.finite()) throw InvalidField("propagate_U0: non-finite input");
    if (t == 0.0) return f;
    return fourier_multiplier(f, [t](const double* xi, int d) {
        double xi2 = 0.0;
        for (int i = 0; i < d; ++i) xi2 += xi[i] * xi[i];
        double phase = -0.5 * t * xi2;
        return Complex(std::cos(phase), std::sin(phase));
    });
}

Field dispersive_factorization(const Field& f, double t) {
    if (t == 0.0) throw SingularTime("dispersive_factorization: t = 0");
    const Grid& g = f.grid;
    // fhat evaluated at x/t by the exact nonuniform quadrature sum
    Field fhat_scaled = transform_sampled_at(f, 1.0 / t, -1);
    // (it)^{-d/2} on the principal branch
    double mod = std::pow(std::abs(t), -0.5 * g.d);
    double arg = -0.25 * M_PI * g.d * (t > 0 ? 1.0 : -1.0);
    Complex amp = mod * Complex(std::cos(arg), std::sin(arg));
    Field out = pointwise_x(fhat_scaled, [t](const double* x, int d) {
        double x2 = 0.0;
        for (int i = 0; i < d; ++i) x2 += x[i] * x[i];
        double phase = 0.5 * x2 / t;
        return Complex(std::cos(phase), std::sin(phase));
    });
    return out * amp;
}

AsymptoticState extract_asymptotic_state(const Field& trajectory_endpoint, double T, Direction dir,
                                         const NLSConfig& cfg, double dt) {
    if (T <= 0.0) throw InvalidProblem("extract_asymptotic_state: T must be positive");
    double sign = (dir == Direction::plus) ? 1.0 : -1.0;
    AsymptoticState out;
    out.direction = dir;
    out.extraction_time = sign * T;
    out.field = propagate_U0(trajectory_endpoint, -sign * T);
    if (l2_norm(trajectory_endpoint) == 0.0) {
        out.convergence_estimate = 0.0;
        return out;
    }
    // walk the trajectory back to +/- T/2 and extract there
    PropagationResult half = propagate(trajectory_endpoint, sign * T, sign * T / 2.0, cfg, dt);
    Field ext_half = propagate_U0(half.final, -sign * T / 2.0);
    out.convergence_estimate = l2_norm(out.field - ext_half);
    return out;
}

}  // namespace nlscat
