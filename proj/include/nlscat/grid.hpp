#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlscat {

using Complex = std::complex<double>;

struct InvalidField : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularTime : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidProblem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WrongBranch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BlowUpDetected : std::runtime_error {
    double time;
    explicit BlowUpDetected(double t)
        : std::runtime_error("blow-up detected at t=" + std::to_string(t)), time(t) {}
};
struct BlowUpOnLensInterval : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedExponent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform periodic mesh for the box [-L, L]^d, d in {1, 2}.
/// Points per axis: x_n = -L + n * dx, dx = 2L/N (no sample at +L).
struct Grid {
    int d = 1;
    double L = 0.0;
    int N = 0;

    Grid() = default;
    Grid(int d_, double L_, int N_) : d(d_), L(L_), N(N_) { validate(); }

    void validate() const {
        if (d != 1 && d != 2) throw InvalidField("Grid: only d=1 and d=2 are supported");
        if (L <= 0.0) throw InvalidField("Grid: L must be positive");
        if (N < 8 || (N & (N - 1)) != 0) throw InvalidField("Grid: N must be a power of two, N >= 8");
    }

    double dx() const { return 2.0 * L / N; }
    double dxi() const { return M_PI / L; }
    double xi_max() const { return M_PI * N / (2.0 * L); }
    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(N);
        return s;
    }
    double x(int n) const { return -L + n * dx(); }
    double cell_volume() const {
        double v = 1.0;
        for (int i = 0; i < d; ++i) v *= dx();
        return v;
    }

    /// Dual grid: same layout in frequency space, half-width xi_max.
    Grid dual() const { return Grid(d, xi_max(), N); }

    bool operator==(const Grid& o) const { return d == o.d && N == o.N && L == o.L; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

/// Complex samples on a Grid, row-major over axes.
struct Field {
    Grid grid;
    std::vector<Complex> values;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), values(g.size(), Complex(0.0, 0.0)) {}
    Field(const Grid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
        if (values.size() != g.size()) throw InvalidField("Field: sample count does not match grid");
    }

    std::size_t size() const { return values.size(); }
    Complex& operator[](std::size_t i) { return values[i]; }
    const Complex& operator[](std::size_t i) const { return values[i]; }

    bool finite() const;
};

inline void require_same_grid(const Field& a, const Field& b) {
    if (a.grid != b.grid) throw GridMismatch("fields live on different grids");
}

// elementwise arithmetic, same grid
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, Complex c);
inline Field operator*(Complex c, const Field& a) { return a * c; }
inline Field operator*(const Field& a, double c) { return a * Complex(c, 0.0); }
inline Field operator*(double c, const Field& a) { return a * Complex(c, 0.0); }
Field& operator+=(Field& a, const Field& b);
Field& operator-=(Field& a, const Field& b);
Field& operator*=(Field& a, Complex c);

}  // namespace nlscat
