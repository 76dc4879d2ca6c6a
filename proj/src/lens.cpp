#include "nlscat/lens.hpp"

namespace nlscat {

namespace {

Field chirp(const Field& f, double coeff) {
    // multiply by e^{i coeff |x|^2}
    return pointwise_x(f, [coeff](const double* x, int d) {
        double x2 = 0.0;
        for (int i = 0; i < d; ++i) x2 += x[i] * x[i];
        double phase = coeff * x2;
        return Complex(std::cos(phase), std::sin(phase));
    });
}

Field gradient_component(const Field& f, int axis) {
    return fourier_multiplier(f, [axis](const double* xi, int) { return Complex(0.0, xi[axis]); });
}

Field coordinate_multiply(const Field& f, int axis) {
    return pointwise_x(f, [axis](const double* x, int) { return Complex(x[axis], 0.0); });
}

}  // namespace

Field lens_forward(const Field& u_at_tan_s, const LensTime& s) {
    if (s.endpoint || std::abs(s.s) >= M_PI / 2.0)
        throw SingularTime("lens_forward: singular at |s| = pi/2");
    double c = std::cos(s.s);
    Field stretched = sample_scaled(u_at_tan_s, 1.0 / c);
    double amp = std::pow(c, -0.5 * u_at_tan_s.grid.d);
    Field out = chirp(stretched, -0.5 * std::tan(s.s));
    return out * amp;
}

Field lens_inverse(const Field& v_at_s, double t) {
    double r = std::sqrt(1.0 + t * t);
    Field squeezed = sample_scaled(v_at_s, 1.0 / r);
    double amp = std::pow(1.0 + t * t, -0.25 * v_at_s.grid.d);
    Field out = chirp(squeezed, 0.5 * t / (1.0 + t * t));
    return out * amp;
}

std::pair<std::vector<Field>, std::vector<Field>> apply_JK(const Field& f, double t) {
    if (!f.finite()) throw InvalidField("apply_JK: non-finite input");
    double st = std::sin(t), ct = std::cos(t);
    std::vector<Field> J, K;
    for (int axis = 0; axis < f.grid.d; ++axis) {
        Field xf = coordinate_multiply(f, axis);
        Field gf = gradient_component(f, axis);
        J.push_back(st * xf - Complex(0.0, ct) * gf);
        K.push_back(ct * xf + Complex(0.0, st) * gf);
    }
    return {std::move(J), std::move(K)};
}

}  // namespace nlscat
