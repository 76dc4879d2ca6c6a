#pragma once

#include "nlscat/eigensolver.hpp"
#include "nlscat/free_dynamics.hpp"
#include "nlscat/lens.hpp"
#include "nlscat/propagator.hpp"

namespace nlscat {

enum class ScatteringMethod { lens, direct };

struct ScatteringResult {
    Field u_plus;
    ScatteringMethod method = ScatteringMethod::lens;
    double discretization_estimate = 0.0;
    std::optional<double> cross_check_gap;
};

/// S(u_-) through the lens conjugation: build the harmonic-equation datum
/// v(-pi/2, x) = e^{i d pi/4} (F u_-)(-x), run the autonomous harmonic NLS
/// across [-pi/2, pi/2], and read off S(u_-) = e^{i d pi/4} F^{-1} v(pi/2).
/// Set cfg.linear to verify the identity pipeline.
ScatteringResult scattering_lens(const Field& u_minus, NonlinearitySign sign, double dt,
                                 bool linear = false, const HermiteBasis* basis = nullptr);

/// Long-time cross-check route on an enlarged grid:
/// u(-T) = U_0(-T) u_-, free NLS to +T, then U_0(-T) u(T).
ScatteringResult scattering_direct(const Field& u_minus, double T, double dt,
                                   NonlinearitySign sign = NonlinearitySign::defocusing);

/// Asymptotic datum of the standing-wave solution e^{-i nu_j t} phi_j:
/// u_- = e^{i (nu_j pi/2 - d pi/4)} F^{-1} phi_j, with
/// nu_j = d/2 + 2j - theta/pi (defocusing) or d/2 - 2j - theta/pi (focusing).
struct RotatingDatum {
    Field u_minus;
    EigenstateSolution eigenstate;
    double nu = 0.0;
};
RotatingDatum build_rotating_datum(double theta, int j, const Grid& grid, NonlinearitySign sign,
                                   double eig_tol = 1e-9);

double rotating_nu(double theta, int j, int d, NonlinearitySign sign);

/// P(u_-) = \int_R U_0(-t) ( |U_0(t) u_-|^{4/d} U_0(t) u_- ) dt, evaluated with
/// the exact chirp factorization of U_0 and an s = 1/t substitution of the tails.
Field perturbative_P(const Field& u_minus, double T_trunc = 1.0, double rel_tol = 1e-7);

struct IdentityReport {
    double gauge_defect = 0.0;        // S(e^{i eta} u) vs e^{i eta} S(u)
    double translation_defect = 0.0;  // whole-grid-shift equivariance
    double conjugation_defect = 0.0;  // W_pm = C W_mp C
    double fourier_defect = 0.0;      // F W_pm^{-1} = W_mp F
};
IdentityReport identity_suite(const Field& u, double dt = 1e-3);

struct StabilityReport {
    int trials = 0;
    int completed = 0;  // runs with no blow-up flag
    double max_mass_drift = 0.0;
};
StabilityReport stability_probe(const Field& u_minus, double epsilon, int trials,
                                unsigned long seed, double dt = 1e-3);

// Lens-computed wave operators (helpers for identity_suite and tests).
Field wave_operator(const Field& u_asym, Direction dir, NonlinearitySign sign, double dt);
Field wave_operator_inverse(const Field& u0, Direction dir, NonlinearitySign sign, double dt);

}  // namespace nlscat
