#include "nlscat/hermite.hpp"

namespace nlscat {

Field apply_H(const Field& f) {
    if (!f.finite()) throw InvalidField("apply_H: non-finite input");
    Field kin = half_laplacian(f);
    Field pot = pointwise_x(f, [](const double* x, int d) {
        double x2 = 0.0;
        for (int i = 0; i < d; ++i) x2 += x[i] * x[i];
        return Complex(0.5 * x2, 0.0);
    });
    return kin + pot;
}

HermiteBasis::HermiteBasis(const Grid& grid, int k_max, double residual_tol)
    : grid_(grid), k_max_(k_max) {
    if (k_max < 0) throw InvalidProblem("HermiteBasis: k_max must be >= 0");
    const int N = grid.N;
    const double dx = grid.dx();
    axis_fn_.assign(k_max + 1, std::vector<double>(N, 0.0));
    // psi_0 = pi^{-1/4} e^{-x^2/2}; psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}
    for (int n = 0; n < N; ++n) {
        double x = grid.x(n);
        axis_fn_[0][n] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    }
    if (k_max >= 1)
        for (int n = 0; n < N; ++n)
            axis_fn_[1][n] = std::sqrt(2.0) * grid.x(n) * axis_fn_[0][n];
    for (int k = 1; k < k_max; ++k) {
        double a = std::sqrt(2.0 / (k + 1));
        double b = std::sqrt(static_cast<double>(k) / (k + 1));
        for (int n = 0; n < N; ++n) {
            double x = grid.x(n);
            axis_fn_[k + 1][n] = a * x * axis_fn_[k][n] - b * axis_fn_[k - 1][n];
        }
    }
    // normalize in the discrete inner product so analyze/synthesize are adjoint
    for (int k = 0; k <= k_max; ++k) {
        double s = 0.0;
        for (int n = 0; n < N; ++n) s += axis_fn_[k][n] * axis_fn_[k][n];
        s = std::sqrt(s * dx);
        if (s <= 0.0) throw TruncationError("HermiteBasis: degenerate mode " + std::to_string(k));
        for (int n = 0; n < N; ++n) axis_fn_[k][n] /= s;
    }
    // resolution check on the highest 1D mode
    Grid axis(1, grid.L, N);
    Field top(axis);
    for (int n = 0; n < N; ++n) top[n] = axis_fn_[k_max][n];
    Field res = apply_H(top) - (0.5 + k_max) * top;
    if (l2_norm(res) > residual_tol)
        throw TruncationError("HermiteBasis: mode " + std::to_string(k_max) +
                              " unresolved on this grid");
}

double HermiteBasis::eigenvalue(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != grid_.d) throw InvalidProblem("eigenvalue: bad multi-index");
    double sum = 0.0;
    for (int ki : k) sum += ki;
    return 0.5 * grid_.d + sum;
}

Field HermiteBasis::function(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != grid_.d) throw InvalidProblem("function: bad multi-index");
    for (int ki : k)
        if (ki < 0 || ki > k_max_) throw InvalidProblem("function: index out of range");
    const int N = grid_.N;
    Field out(grid_);
    if (grid_.d == 1) {
        for (int n = 0; n < N; ++n) out[n] = axis_fn_[k[0]][n];
    } else {
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                out[static_cast<std::size_t>(a) * N + b] = axis_fn_[k[0]][a] * axis_fn_[k[1]][b];
    }
    return out;
}

std::vector<Complex> HermiteBasis::analyze(const Field& f) const {
    if (f.grid != grid_) throw GridMismatch("HermiteBasis::analyze: wrong grid");
    const int N = grid_.N;
    const int K = k_max_ + 1;
    const double dx = grid_.dx();
    if (grid_.d == 1) {
        std::vector<Complex> c(K, Complex(0.0, 0.0));
        for (int k = 0; k < K; ++k) {
            const double* b = axis_fn_[k].data();
            Complex acc(0.0, 0.0);
            for (int n = 0; n < N; ++n) acc += b[n] * f[n];
            c[k] = acc * dx;
        }
        return c;
    }
    // first contract axis 2, then axis 1
    std::vector<Complex> half(static_cast<std::size_t>(N) * K);
    for (int a = 0; a < N; ++a) {
        for (int k = 0; k < K; ++k) {
            const double* b = axis_fn_[k].data();
            Complex acc(0.0, 0.0);
            const Complex* row = &f.values[static_cast<std::size_t>(a) * N];
            for (int n = 0; n < N; ++n) acc += b[n] * row[n];
            half[static_cast<std::size_t>(a) * K + k] = acc * dx;
        }
    }
    std::vector<Complex> c(static_cast<std::size_t>(K) * K);
    for (int k1 = 0; k1 < K; ++k1) {
        const double* b = axis_fn_[k1].data();
        for (int k2 = 0; k2 < K; ++k2) {
            Complex acc(0.0, 0.0);
            for (int a = 0; a < N; ++a) acc += b[a] * half[static_cast<std::size_t>(a) * K + k2];
            c[static_cast<std::size_t>(k1) * K + k2] = acc * dx;
        }
    }
    return c;
}

Field HermiteBasis::synthesize(const std::vector<Complex>& coeff) const {
    const int N = grid_.N;
    const int K = k_max_ + 1;
    Field out(grid_);
    if (grid_.d == 1) {
        if (static_cast<int>(coeff.size()) != K)
            throw InvalidProblem("synthesize: wrong coefficient count");
        for (int k = 0; k < K; ++k) {
            const double* b = axis_fn_[k].data();
            for (int n = 0; n < N; ++n) out[n] += coeff[k] * b[n];
        }
        return out;
    }
    if (static_cast<int>(coeff.size()) != K * K)
        throw InvalidProblem("synthesize: wrong coefficient count");
    std::vector<Complex> half(static_cast<std::size_t>(K) * N, Complex(0.0, 0.0));
    for (int k1 = 0; k1 < K; ++k1)
        for (int k2 = 0; k2 < K; ++k2) {
            Complex c = coeff[static_cast<std::size_t>(k1) * K + k2];
            const double* b = axis_fn_[k2].data();
            Complex* row = &half[static_cast<std::size_t>(k1) * N];
            for (int n = 0; n < N; ++n) row[n] += c * b[n];
        }
    for (int k1 = 0; k1 < K; ++k1) {
        const double* b = axis_fn_[k1].data();
        const Complex* row = &half[static_cast<std::size_t>(k1) * N];
        for (int a = 0; a < N; ++a) {
            Complex* orow = &out.values[static_cast<std::size_t>(a) * N];
            for (int n = 0; n < N; ++n) orow[n] += b[a] * row[n];
        }
    }
    return out;
}

double HermiteBasis::projection_defect(const Field& f) const {
    Field back = synthesize(analyze(f));
    return l2_norm(f - back);
}

Field HermiteBasis::propagate(const Field& f, double t, double defect_tol) const {
    std::vector<Complex> c = analyze(f);
    Field proj = synthesize(c);
    double defect = l2_norm(f - proj);
    double scale = std::max(1.0, l2_norm(f));
    if (defect > defect_tol * scale)
        throw TruncationError("propagate_UH: projection defect " + std::to_string(defect) +
                              " exceeds tolerance");
    const int K = k_max_ + 1;
    if (grid_.d == 1) {
        for (int k = 0; k < K; ++k) c[k] *= std::exp(Complex(0.0, -(0.5 + k) * t));
    } else {
        for (int k1 = 0; k1 < K; ++k1)
            for (int k2 = 0; k2 < K; ++k2)
                c[static_cast<std::size_t>(k1) * K + k2] *=
                    std::exp(Complex(0.0, -(1.0 + k1 + k2) * t));
    }
    return synthesize(c);
}

Field propagate_UH(const Field& f, double t, const HermiteBasis& basis, double defect_tol) {
    return basis.propagate(f, t, defect_tol);
}

HermiteBasis stepping_basis(const Grid& grid, double loose_tol, int cap) {
    int k = max_resolved_mode(grid, loose_tol, cap);
    return HermiteBasis(grid, k, 2.0 * loose_tol);
}

int max_resolved_mode(const Grid& grid, double residual_tol, int cap) {
    const int N = grid.N;
    Grid axis(1, grid.L, N);
    // raw (unnormalized is fine: the recurrence keeps unit continuum norm)
    std::vector<std::vector<double>> fn(cap + 1, std::vector<double>(N));
    for (int n = 0; n < N; ++n) {
        double x = axis.x(n);
        fn[0][n] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
        if (cap >= 1) fn[1][n] = std::sqrt(2.0) * x * fn[0][n];
    }
    for (int k = 1; k < cap; ++k) {
        double a = std::sqrt(2.0 / (k + 1));
        double b = std::sqrt(static_cast<double>(k) / (k + 1));
        for (int n = 0; n < N; ++n) fn[k + 1][n] = a * axis.x(n) * fn[k][n] - b * fn[k - 1][n];
    }
    for (int k = cap; k >= 0; --k) {
        Field f(axis);
        for (int n = 0; n < N; ++n) f[n] = fn[k][n];
        Field res = apply_H(f) - (0.5 + k) * f;
        if (l2_norm(res) <= residual_tol * std::max(1.0, l2_norm(f))) return k;
    }
    throw TruncationError("max_resolved_mode: grid resolves no oscillator mode");
}

}  // namespace nlscat
