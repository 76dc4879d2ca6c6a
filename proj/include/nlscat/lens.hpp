#pragma once

#include "nlscat/spectral.hpp"

namespace nlscat {

/// Lens time s in (-pi/2, pi/2); the endpoints are reached only through the
/// harmonic flow, never through the forward map itself.
struct LensTime {
    double s = 0.0;
    bool endpoint = false;

    LensTime() = default;
    explicit LensTime(double s_) : s(s_) {
        if (std::abs(s) >= M_PI / 2.0) throw SingularTime("LensTime: |s| must be < pi/2");
    }
};

/// v(s,x) = (cos s)^{-d/2} u(tan s, x / cos s) e^{-i |x|^2 tan(s) / 2},
/// for u given at time tan(s).
Field lens_forward(const Field& u_at_tan_s, const LensTime& s);

/// u(t,x) = (1+t^2)^{-d/4} e^{i t |x|^2 / (2 (1+t^2))} v(arctan t, x / sqrt(1+t^2)),
/// for v given at s = arctan t. Defined for all real t.
Field lens_inverse(const Field& v_at_s, double t);

/// J(t) = x sin t - i cos t grad ; K(t) = x cos t + i sin t grad.
/// One component pair per axis.
std::pair<std::vector<Field>, std::vector<Field>> apply_JK(const Field& f, double t);

}  // namespace nlscat
