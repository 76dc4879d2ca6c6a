#include "nlscat/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace nlscat {

bool Field::finite() const {
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}
Field operator*(const Field& a, Complex c) {
    Field r = a;
    for (auto& v : r.values) v *= c;
    return r;
}
Field& operator+=(Field& a, const Field& b) {
    require_same_grid(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
Field& operator-=(Field& a, const Field& b) {
    require_same_grid(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
Field& operator*=(Field& a, Complex c) {
    for (auto& v : a.values) v *= c;
    return a;
}

namespace {

std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

// In-place unnormalized FFT of the row-major d-dimensional array.
void run_fft(std::vector<Complex>& data, int d, int N, int fftw_sign) {
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        if (d == 1)
            plan = fftw_plan_dft_1d(N, ptr, ptr, fftw_sign, FFTW_ESTIMATE);
        else
            plan = fftw_plan_dft_2d(N, N, ptr, ptr, fftw_sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
}

inline int index_parity_sign(std::size_t idx, int d, int N) {
    int s = 0;
    if (d == 1) {
        s = static_cast<int>(idx);
    } else {
        s = static_cast<int>(idx / N) + static_cast<int>(idx % N);
    }
    return (s & 1) ? -1 : 1;
}

}  // namespace

Field fourier(const Field& f) {
    if (!f.finite()) throw InvalidField("fourier: non-finite input");
    const Grid& g = f.grid;
    const int N = g.N;
    Field out(g.dual());
    std::vector<Complex> work = f.values;
    for (std::size_t i = 0; i < work.size(); ++i)
        if (index_parity_sign(i, g.d, N) < 0) work[i] = -work[i];
    run_fft(work, g.d, N, FFTW_FORWARD);
    // (-1)^{N/2} per axis; N/2 is even for all admissible N, kept for clarity
    double half_sign = ((N / 2) % 2 == 0) ? 1.0 : -1.0;
    double scale = std::pow(g.dx() / std::sqrt(2.0 * M_PI) * half_sign, g.d);
    for (std::size_t i = 0; i < work.size(); ++i) {
        double s = scale * index_parity_sign(i, g.d, N);
        out[i] = work[i] * s;
    }
    return out;
}

Field inverse_fourier(const Field& fhat) {
    if (!fhat.finite()) throw InvalidField("inverse_fourier: non-finite input");
    const Grid& gk = fhat.grid;
    const int N = gk.N;
    Grid gx = gk.dual();
    Field out(gx);
    double half_sign = ((N / 2) % 2 == 0) ? 1.0 : -1.0;
    std::vector<Complex> work(fhat.size());
    for (std::size_t i = 0; i < work.size(); ++i) {
        double s = index_parity_sign(i, gk.d, N);
        work[i] = fhat[i] * s;
    }
    run_fft(work, gk.d, N, FFTW_BACKWARD);
    double scale = std::pow(gk.dx() / std::sqrt(2.0 * M_PI) * half_sign, gk.d);
    for (std::size_t i = 0; i < work.size(); ++i) {
        double s = scale * index_parity_sign(i, gk.d, N);
        out[i] = work[i] * s;
    }
    return out;
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    return std::sqrt(acc * f.grid.cell_volume());
}

double lp_norm(const Field& f, double p) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.grid.cell_volume(), 1.0 / p);
}

double grad_l2_norm(const Field& f) {
    Field fhat = fourier(f);
    const Grid& gk = fhat.grid;
    double acc = 0.0;
    const int N = gk.N;
    for (std::size_t i = 0; i < fhat.size(); ++i) {
        double xi2;
        if (gk.d == 1) {
            double xi = gk.x(static_cast<int>(i));
            xi2 = xi * xi;
        } else {
            double a = gk.x(static_cast<int>(i / N));
            double b = gk.x(static_cast<int>(i % N));
            xi2 = a * a + b * b;
        }
        acc += xi2 * std::norm(fhat[i]);
    }
    return std::sqrt(acc * gk.cell_volume());
}

SigmaNorms norms(const Field& f, const std::vector<double>& p_list) {
    if (!f.finite()) throw InvalidField("norms: non-finite input");
    SigmaNorms out;
    out.l2 = l2_norm(f);
    out.grad_l2 = grad_l2_norm(f);
    const Grid& g = f.grid;
    const int N = g.N;
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double x2;
        if (g.d == 1) {
            double x = g.x(static_cast<int>(i));
            x2 = x * x;
        } else {
            double a = g.x(static_cast<int>(i / N));
            double b = g.x(static_cast<int>(i % N));
            x2 = a * a + b * b;
        }
        acc += x2 * std::norm(f[i]);
    }
    out.xf_l2 = std::sqrt(acc * g.cell_volume());
    for (double p : p_list) out.lp[p] = lp_norm(f, p);
    return out;
}

Complex inner(const Field& f, const Field& g) {
    require_same_grid(f, g);
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
    return acc * f.grid.cell_volume();
}

Field parity(const Field& f) {
    const Grid& g = f.grid;
    const int N = g.N;
    Field out(g);
    if (g.d == 1) {
        for (int n = 0; n < N; ++n) out[n] = f[(N - n) % N];
    } else {
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                out[static_cast<std::size_t>(a) * N + b] =
                    f[static_cast<std::size_t>((N - a) % N) * N + (N - b) % N];
    }
    return out;
}

Field symmetrize_even(const Field& f) {
    Field out = f;
    Field p = parity(f);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (out[i] + p[i]);
    if (f.grid.d == 2) {
        const int N = f.grid.N;
        Field sw(f.grid);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                sw[static_cast<std::size_t>(a) * N + b] = out[static_cast<std::size_t>(b) * N + a];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (out[i] + sw[i]);
    }
    return out;
}

Field fourier_multiplier(const Field& f, const std::function<Complex(const double*, int)>& m) {
    Field fhat = fourier(f);
    const Grid& gk = fhat.grid;
    const int N = gk.N;
    double xi[2];
    for (std::size_t i = 0; i < fhat.size(); ++i) {
        if (gk.d == 1) {
            xi[0] = gk.x(static_cast<int>(i));
        } else {
            xi[0] = gk.x(static_cast<int>(i / N));
            xi[1] = gk.x(static_cast<int>(i % N));
        }
        fhat[i] *= m(xi, gk.d);
    }
    return inverse_fourier(fhat);
}

Field half_laplacian(const Field& f) {
    return fourier_multiplier(f, [](const double* xi, int d) {
        double xi2 = 0.0;
        for (int i = 0; i < d; ++i) xi2 += xi[i] * xi[i];
        return Complex(0.5 * xi2, 0.0);
    });
}

Field pointwise_x(const Field& f, const std::function<Complex(const double*, int)>& m) {
    const Grid& g = f.grid;
    const int N = g.N;
    Field out = f;
    double x[2];
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (g.d == 1) {
            x[0] = g.x(static_cast<int>(i));
        } else {
            x[0] = g.x(static_cast<int>(i / N));
            x[1] = g.x(static_cast<int>(i % N));
        }
        out[i] *= m(x, g.d);
    }
    return out;
}

namespace {

// g[n] = sum_k E[n][k] c[k] with E[n][k] = exp(i * a * y_n * z_k),
// y and z the node coordinates of the respective axes.
std::vector<Complex> axis_apply(const std::vector<Complex>& c, const Grid& gy, const Grid& gz,
                                double a) {
    const int Ny = gy.N;
    const int Nz = gz.N;
    std::vector<Complex> out(static_cast<std::size_t>(Ny));
    for (int n = 0; n < Ny; ++n) {
        Complex acc(0.0, 0.0);
        double yn = gy.x(n);
        for (int k = 0; k < Nz; ++k) acc += std::exp(Complex(0.0, a * yn * gz.x(k))) * c[k];
        out[n] = acc;
    }
    return out;
}

// Separable evaluation g(alpha x_n) = scale * sum_m c_m prod_axes exp(i alpha x_n z_m)
Field separable_exp_sum(const std::vector<Complex>& coeff, const Grid& out_grid,
                        const Grid& node_grid, double alpha, double scale, int sign) {
    const int N = out_grid.N;
    double a = sign * alpha;
    Field out(out_grid);
    if (out_grid.d == 1) {
        auto r = axis_apply(coeff, out_grid, node_grid, a);
        for (int n = 0; n < N; ++n) out[n] = scale * r[n];
        return out;
    }
    // d = 2: contract second axis then first
    std::vector<Complex> tmp(static_cast<std::size_t>(N) * N);
    std::vector<Complex> row(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < N; ++k) row[k] = coeff[static_cast<std::size_t>(i) * N + k];
        auto r = axis_apply(row, out_grid, node_grid, a);
        for (int n = 0; n < N; ++n) tmp[static_cast<std::size_t>(i) * N + n] = r[n];
    }
    std::vector<Complex> col(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        for (int i = 0; i < N; ++i) col[i] = tmp[static_cast<std::size_t>(i) * N + n];
        auto r = axis_apply(col, out_grid, node_grid, a);
        for (int m = 0; m < N; ++m) out[static_cast<std::size_t>(m) * N + n] = scale * r[m];
    }
    return out;
}

}  // namespace

Field resample(const Field& f, const Grid& target) {
    if (target.d != f.grid.d) throw GridMismatch("resample: dimension mismatch");
    Field fhat = fourier(f);
    const Grid& gk = fhat.grid;
    double scale = std::pow(gk.dx() / std::sqrt(2.0 * M_PI), f.grid.d);
    const int Nt = target.N;
    Field out(target);
    if (target.d == 1) {
        auto r = axis_apply(fhat.values, target, gk, 1.0);
        for (int n = 0; n < Nt; ++n) out[n] = scale * r[n];
        return out;
    }
    const int N = gk.N;
    std::vector<Complex> tmp(static_cast<std::size_t>(N) * Nt);
    std::vector<Complex> row(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < N; ++k) row[k] = fhat.values[static_cast<std::size_t>(i) * N + k];
        auto r = axis_apply(row, target, gk, 1.0);
        for (int n = 0; n < Nt; ++n) tmp[static_cast<std::size_t>(i) * Nt + n] = r[n];
    }
    std::vector<Complex> col(static_cast<std::size_t>(N));
    for (int n = 0; n < Nt; ++n) {
        for (int i = 0; i < N; ++i) col[i] = tmp[static_cast<std::size_t>(i) * Nt + n];
        auto r = axis_apply(col, target, gk, 1.0);
        for (int m = 0; m < Nt; ++m) out[static_cast<std::size_t>(m) * Nt + n] = scale * r[m];
    }
    return out;
}

Field sample_scaled(const Field& f, double alpha) {
    Field fhat = fourier(f);
    double scale = std::pow(fhat.grid.dx() / std::sqrt(2.0 * M_PI), f.grid.d);
    Field out = separable_exp_sum(fhat.values, f.grid, fhat.grid, alpha, scale, +1);
    // The Fourier series is 2L-periodic; a decaying field is zero beyond the
    // box, so evaluation points that fall outside return 0, not the wrap-around.
    const Grid& g = f.grid;
    const int N = g.N;
    for (std::size_t i = 0; i < out.size(); ++i) {
        bool outside;
        if (g.d == 1) {
            outside = std::abs(alpha * g.x(static_cast<int>(i))) > g.L;
        } else {
            outside = std::abs(alpha * g.x(static_cast<int>(i / N))) > g.L ||
                      std::abs(alpha * g.x(static_cast<int>(i % N))) > g.L;
        }
        if (outside) out[i] = Complex(0.0, 0.0);
    }
    return out;
}

Field transform_sampled_at(const Field& f, double alpha, int sign) {
    double scale = std::pow(f.grid.dx() / std::sqrt(2.0 * M_PI), f.grid.d);
    return separable_exp_sum(f.values, f.grid, f.grid, alpha, scale, sign);
}

Field transform_evaluated_on(const Field& f, const Grid& target, int sign) {
    if (target.d != f.grid.d) throw GridMismatch("transform_evaluated_on: dimension mismatch");
    const Grid& gf = f.grid;
    double scale = std::pow(gf.dx() / std::sqrt(2.0 * M_PI), gf.d);
    const int Nf = gf.N;
    const int Nt = target.N;
    Field out(target);
    if (gf.d == 1) {
        auto r = axis_apply(f.values, target, gf, static_cast<double>(sign));
        for (int n = 0; n < Nt; ++n) out[n] = scale * r[n];
        return out;
    }
    std::vector<Complex> tmp(static_cast<std::size_t>(Nf) * Nt);
    std::vector<Complex> row(static_cast<std::size_t>(Nf));
    for (int i = 0; i < Nf; ++i) {
        for (int k = 0; k < Nf; ++k) row[k] = f.values[static_cast<std::size_t>(i) * Nf + k];
        auto r = axis_apply(row, target, gf, static_cast<double>(sign));
        for (int n = 0; n < Nt; ++n) tmp[static_cast<std::size_t>(i) * Nt + n] = r[n];
    }
    std::vector<Complex> col(static_cast<std::size_t>(Nf));
    for (int n = 0; n < Nt; ++n) {
        for (int i = 0; i < Nf; ++i) col[i] = tmp[static_cast<std::size_t>(i) * Nt + n];
        auto r = axis_apply(col, target, gf, static_cast<double>(sign));
        for (int m = 0; m < Nt; ++m) out[static_cast<std::size_t>(m) * Nt + n] = scale * r[m];
    }
    return out;
}

Field invert_transform_sampled(const Field& rhs, int sign, double rel_tol, int max_iter) {
    double scale = l2_norm(rhs);
    if (scale == 0.0) return rhs;
    // u_{k+1} = u_k + T^{-sign}(rhs - T^{sign} u_k); the quadrature transforms
    // are mutually inverse up to box-edge truncation, so this contracts fast
    // for data concentrated inside the box.
    Field u = transform_sampled_at(rhs, 1.0, -sign);
    double best = std::numeric_limits<double>::infinity();
    Field best_u = u;
    for (int it = 0; it < max_iter; ++it) {
        Field res = rhs - transform_sampled_at(u, 1.0, sign);
        double r = l2_norm(res) / scale;
        if (r < best) {
            best = r;
            best_u = u;
        }
        if (r <= rel_tol) return u;
        if (r > 2.0 * best) break;  // diverging on unrepresentable content
        u += transform_sampled_at(res, 1.0, -sign);
    }
    return best_u;
}

}  // namespace nlscat
