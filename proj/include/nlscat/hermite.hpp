#pragma once

#include "nlscat/spectral.hpp"

namespace nlscat {

/// Harmonic oscillator H = -(1/2) Laplacian + |x|^2 / 2.
Field apply_H(const Field& f);

/// Grid-sampled Hermite eigenbasis of H, built by the normalized three-term
/// recurrence. In d=2 the basis is the tensor product of the 1D functions
/// with per-axis index <= k_max.
class HermiteBasis {
  public:
    HermiteBasis(const Grid& grid, int k_max, double residual_tol = 1e-8);

    const Grid& grid() const { return grid_; }
    int k_max() const { return k_max_; }

    /// Eigenfunction for the multi-index (k in d=1, (k1,k2) in d=2).
    Field function(const std::vector<int>& k) const;
    double eigenvalue(const std::vector<int>& k) const;

    /// Coefficients of f in the retained basis (size (k_max+1)^d, row-major).
    std::vector<Complex> analyze(const Field& f) const;
    Field synthesize(const std::vector<Complex>& coeff) const;

    /// L2 norm of the component of f outside the retained span.
    double projection_defect(const Field& f) const;

    /// U_H(t) f = e^{-itH} f, exact in time in the retained span.
    /// Throws TruncationError if the projection defect exceeds defect_tol.
    Field propagate(const Field& f, double t, double defect_tol = 1e-8) const;

  private:
    Grid grid_;
    int k_max_;
    // axis_fn_[k][n]: 1D Hermite function k at axis node n, grid-normalized
    std::vector<std::vector<double>> axis_fn_;
};

Field propagate_UH(const Field& f, double t, const HermiteBasis& basis, double defect_tol = 1e-8);

/// Largest per-axis mode index (capped) whose discrete eigenvalue residual on
/// this grid stays below residual_tol; modes past the box turning point
/// develop boundary tails and drop out.
int max_resolved_mode(const Grid& grid, double residual_tol = 1e-8, int cap = 60);

/// Basis sized for time stepping: retains every mode whose eigenvalue residual
/// stays below loose_tol. The deepest retained modes carry only the (tiny)
/// tail weight of box-confined data, so the large span minimizes the
/// projection loss per step without polluting the propagation.
HermiteBasis stepping_basis(const Grid& grid, double loose_tol = 1e-2, int cap = 160);

}  // namespace nlscat
