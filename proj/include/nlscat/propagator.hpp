#pragma once

#include <memory>
#include <optional>

#include "nlscat/hermite.hpp"

namespace nlscat {

enum class Potential { none, harmonic };

/// i u_t + (1/2) Lap u = V(x) u + sign * w(t) * |u|^{2 sigma} u
/// sign = +1 defocusing, -1 focusing.
struct NLSConfig {
    int d = 1;
    double sigma = 2.0;  // defaults to 2/d for d=1
    double sign = +1.0;
    Potential potential = Potential::none;
    bool time_dependent_factor = false;  // w(t) = |cos t|^{d sigma - 2}
    bool linear = false;                 // drop the nonlinearity entirely

    static NLSConfig mass_critical(int d, double sign, Potential pot) {
        NLSConfig c;
        c.d = d;
        c.sigma = 2.0 / d;
        c.sign = sign;
        c.potential = pot;
        return c;
    }

    /// Lower endpoint of the scattering-admissible exponent range,
    /// sigma_0(d) = (2 - d + sqrt(d^2 + 12 d + 4)) / (4 d).
    static double sigma_0(int d) {
        return (2.0 - d + std::sqrt(static_cast<double>(d) * d + 12.0 * d + 4.0)) / (4.0 * d);
    }

    bool scattering_admissible() const {
        if (sigma <= sigma_0(d)) return false;
        if (d > 2 && sigma >= 2.0 / (d - 2)) return false;
        return true;
    }
};

struct PropagationResult {
    Field final;
    std::vector<double> times;
    double mass_drift = 0.0;
    double energy_drift = 0.0;
    bool blew_up = false;
    std::optional<double> blowup_time;
};

/// One Strang step: half-step of the pointwise nonlinear phase, exact linear
/// step (Fourier multiplier for V=0, Hermite-spectral U_H for the harmonic
/// potential), half-step of the pointwise phase. Exactly mass-preserving up to
/// the linear substep's unitarity.
Field step_strang(const Field& u, double t, double dt, const NLSConfig& cfg,
                  const HermiteBasis* basis = nullptr, double hermite_defect_tol = 1e-4);

/// Fourth-order triple-jump composition of three Strang steps (coefficients
/// w1, w0 = 1/(2 - 2^{1/3}), 1 - 2 w1). Same substeps, O(dt^4) accuracy.
Field step_order4(const Field& u, double t, double dt, const NLSConfig& cfg,
                  const HermiteBasis* basis = nullptr, double hermite_defect_tol = 1e-4);

/// (1/2)||grad u||^2 + \int V |u|^2 + sign/(sigma+1) \int |u|^{2 sigma + 2}.
double conserved_energy(const Field& u, const NLSConfig& cfg);

struct PropagateOptions {
    int checkpoint_stride = 0;     // 0: record only endpoints
    double blowup_factor = 1e6;    // L^inf / gradient growth threshold
    const HermiteBasis* basis = nullptr;  // reused across steps when provided
    double hermite_defect_tol = 1e-4;  // relative projection defect allowed per step
    int order = 2;                     // 2: Strang; 4: triple-jump composition
};

PropagationResult propagate(const Field& u0, double t0, double t1, const NLSConfig& cfg, double dt,
                            const PropagateOptions& opts = {});

}  // namespace nlscat
