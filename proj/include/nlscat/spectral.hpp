#pragma once

#include <functional>
#include <map>

#include "nlscat/grid.hpp"

namespace nlscat {

/// L2, gradient, |x|-weighted and requested Lp norms of a field.
struct SigmaNorms {
    double l2 = 0.0;
    double grad_l2 = 0.0;
    double xf_l2 = 0.0;
    std::map<double, double> lp;

    double sigma_norm() const { return std::sqrt(l2 * l2 + grad_l2 * grad_l2 + xf_l2 * xf_l2); }
};

/// Continuum-normalized Fourier transform,
///   Ff(xi) = (2 pi)^{-d/2} \int f(x) e^{-i x.xi} dx,
/// realized as a phase-corrected FFT; the result lives on the dual grid.
Field fourier(const Field& f);
Field inverse_fourier(const Field& fhat);

SigmaNorms norms(const Field& f, const std::vector<double>& p_list = {});
double l2_norm(const Field& f);
double lp_norm(const Field& f, double p);
double grad_l2_norm(const Field& f);

/// Quadrature of \int f conj(g) dx.
Complex inner(const Field& f, const Field& g);

/// f(-x) on the periodic grid (index n -> (N - n) mod N per axis).
Field parity(const Field& f);

/// Even part (f(x) + f(-x))/2; for d=2 additionally symmetrized under axis swap.
Field symmetrize_even(const Field& f);

/// Apply a scalar Fourier multiplier m(xi): F^{-1}[ m(|xi| data) F f ].
/// The callback receives the frequency vector of each dual-grid node.
Field fourier_multiplier(const Field& f, const std::function<Complex(const double* xi, int d)>& m);

/// -(1/2) Laplacian via |xi|^2/2 multiplier.
Field half_laplacian(const Field& f);

/// Pointwise multiplication by a function of x.
Field pointwise_x(const Field& f, const std::function<Complex(const double* x, int d)>& m);

/// Evaluate f at the scaled nodes alpha * x_n by exact Fourier-series summation
/// (band-limited interpolation; separable per axis).
Field sample_scaled(const Field& f, double alpha);

/// Evaluate the Fourier series of f at the nodes of another grid
/// (band-limited interpolation between boxes; separable per axis).
Field resample(const Field& f, const Grid& target);

/// Evaluate the continuum transform Ff at the points alpha * x_n of f's own grid
/// (direct nonuniform quadrature sum, separable per axis).
/// sign = -1 gives the forward transform, sign = +1 the inverse.
Field transform_sampled_at(const Field& f, double alpha, int sign);

/// Evaluate the continuum transform of f at the nodes of another grid (direct
/// nonuniform quadrature over f's own nodes; no periodization of f).
/// sign = -1 forward transform, sign = +1 inverse.
Field transform_evaluated_on(const Field& f, const Grid& target, int sign);

/// Solve transform_sampled_at(u, 1.0, sign) = rhs for u by iterative
/// refinement with the opposite-sign quadrature transform as approximate
/// inverse. Makes the quadrature transform pair exactly mutually inverse on
/// well-concentrated data, eliminating box-edge quadrature defects.
Field invert_transform_sampled(const Field& rhs, int sign, double rel_tol = 1e-13,
                               int max_iter = 30);

}  // namespace nlscat
