#pragma once

#include "nlscat/spectral.hpp"

namespace nlscat {

enum class Direction { plus, minus };

struct AsymptoticState {
    Field field;
    Direction direction = Direction::plus;
    double extraction_time = 0.0;
    double convergence_estimate = 0.0;
};

/// U_0(t) = e^{i t Laplacian / 2}, exact Fourier multiplier.
Field propagate_U0(const Field& f, double t);

/// Far-field factorization A(t)f(x) = (it)^{-d/2} fhat(x/t) e^{i|x|^2/(2t)}.
Field dispersive_factorization(const Field& f, double t);

struct NLSConfig;  // propagator.hpp

/// Given u(+T) (direction plus) or u(-T) (direction minus) of a solution of
/// the cfg equation, return U_0(-(+/-T)) u(+/-T). The convergence estimate
/// compares against the extraction at half the time, obtained by propagating
/// the endpoint back along the same equation.
AsymptoticState extract_asymptotic_state(const Field& trajectory_endpoint, double T, Direction dir,
                                         const NLSConfig& cfg, double dt);

}  // namespace nlscat
