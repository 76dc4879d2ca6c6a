// Acceptance gate: ten quantitative checks of the scattering-operator library,
// one pass/fail line each. Exit code = number of failed criteria.
//
// Reference resolution d=1, L=12, N=1024, dt=1e-3 except where a run needs a
// wider box or finer step for its stated tolerance (noted inline): the
// focusing rotating data decay only exponentially in x, so they are built on
// the twice-doubled box L=48 (same sample spacing), and their runs use
// dt=5e-4 to clear the instability-amplified splitting error.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "nlscat/harness.hpp"

using namespace nlscat;

namespace {

int failures = 0;

void report(int idx, const char* what, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, what,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

Grid ref_grid() { return Grid(1, 12.0, 1024); }

Field gaussian(const Grid& g, double amp) {
    Field out(g);
    for (int n = 0; n < g.N; ++n) {
        double x = g.x(n);
        out[n] = amp * std::exp(-0.5 * x * x);
    }
    return out;
}

// norm drifts of every lens-route S run, gathered for criterion 5
struct Drift {
    double l2 = 0.0;
    double h1 = 0.0;
};
std::vector<Drift> drifts;

Field run_S(const Field& u, NonlinearitySign sign, double dt) {
    ScatteringResult s = scattering_lens(u, sign, dt);
    Drift d;
    d.l2 = std::abs(l2_norm(s.u_plus) - l2_norm(u)) / l2_norm(u);
    d.h1 = std::abs(grad_l2_norm(s.u_plus) - grad_l2_norm(u)) / grad_l2_norm(u);
    drifts.push_back(d);
    return s.u_plus;
}

double rel_defect(const Field& a, const Field& b) { return l2_norm(a - b) / l2_norm(b); }

void criterion_1() {
    Field u = gaussian(ref_grid(), 0.7);
    ScatteringResult s = scattering_lens(u, NonlinearitySign::defocusing, 1e-3, /*linear=*/true);
    double defect = rel_defect(s.u_plus, u);
    report(1, "linear lens pipeline is the identity", defect < 1e-9, fmt("defect %.2e", defect));
}

void criterion_2() {
    ExperimentConfig cfg;
    cfg.theta_list = {0.0, M_PI / 2, M_PI};
    cfg.j_list = {1, 2};
    auto reports = run_experiment(cfg);
    double worst = 0.0;
    for (const auto& r : reports) worst = std::max(worst, r.rotation_defect);
    // one box-doubling + time-halving refinement of every case
    auto rows = resolution_study(cfg, 1);
    double worst_ratio = 1e300;
    for (const auto& row : rows) worst_ratio = std::min(worst_ratio, row.ratio);
    bool pass = worst < 1e-4 && worst_ratio >= 3.0;
    report(2, "defocusing rotating points, 6 cases + refinement", pass,
           fmt("worst defect %.2e, worst refinement ratio %.1f", worst, worst_ratio));
}

void criterion_3() {
    // closed-form soliton check first
    Grid g = ref_grid();
    Field Q = solve_Q(g);
    double point_err = 0.0;
    for (int n = 0; n < g.N; ++n) {
        double x = g.x(n);
        double exact = std::pow(3.0, 0.25) * std::sqrt(1.0 / std::cosh(2.0 * std::sqrt(2.0) * x));
        point_err = std::max(point_err, std::abs(std::abs(Q[n]) - exact));
    }
    double Q_l2 = l2_norm(Q);
    double threshold = std::pow(1.0 / 3.0, 0.25) * Q_l2;

    // focusing runs: wide box L=48 (same dx), dt=5e-4 (see header note)
    ExperimentConfig cfg;
    cfg.sign = NonlinearitySign::focusing;
    cfg.L = 48.0;
    cfg.N = 4096;
    cfg.dt = 5e-4;
    cfg.theta_list = {0.0, M_PI};
    cfg.j_list = {1, 2};
    auto reports = run_experiment(cfg);
    double worst = 0.0, min_mass = 1e300;
    for (const auto& r : reports) {
        worst = std::max(worst, r.rotation_defect);
        min_mass = std::min(min_mass, r.l2_mass);
    }

    // gradient-norm growth along the branch j = 1, 2, 3
    std::vector<double> grads;
    for (int j : {1, 2, 3})
        grads.push_back(
            grad_l2_norm(build_rotating_datum(0.0, j, g, NonlinearitySign::focusing).eigenstate.psi));
    bool grad_up = grads[0] < grads[1] && grads[1] < grads[2];

    bool pass = worst < 1e-4 && min_mass > threshold && std::abs(threshold - 1.0539) < 2e-3 &&
                point_err < 1e-6 && grad_up;
    report(3, "focusing rotating points, mass threshold, branch growth", pass,
           fmt("worst defect %.2e, min mass %.4f > %.4f, |Q| pointwise err %.1e, grads %.2f<%.2f<%.2f",
               worst, min_mass, threshold, point_err, grads[0], grads[1], grads[2]));
}

void criterion_4() {
    Grid g = ref_grid();
    Field u = gaussian(g, 1.0);
    Field P = perturbative_P(u);
    double Pn = l2_norm(P);
    std::vector<double> eps_list = {0.1, 0.15, 0.2, 0.3};
    double worst_gap = 0.0;
    std::vector<double> resid;
    for (double eps : eps_list) {
        Field up = run_S(eps * u, NonlinearitySign::defocusing, 1e-3);
        Field diff = up - eps * u;
        double lead = l2_norm(diff) / std::pow(eps, 5);
        worst_gap = std::max(worst_gap, std::abs(lead - Pn) / Pn);
        resid.push_back(l2_norm(diff - Complex(0.0, -std::pow(eps, 5)) * P));
    }
    // least-squares slope of log residual vs log eps
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        double x = std::log(eps_list[i]), y = std::log(resid[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double n = static_cast<double>(eps_list.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    bool pass = worst_gap < 0.05 && slope >= 7.0;
    report(4, "small-data expansion magnitude and next-order slope", pass,
           fmt("worst |gap| %.2f%%, residual slope %.2f", 100.0 * worst_gap, slope));
}

void criterion_5() {
    // add one rotating-point run per branch to the recorded small-data runs
    RotatingDatum dd = build_rotating_datum(0.0, 1, ref_grid(), NonlinearitySign::defocusing);
    run_S(dd.u_minus, NonlinearitySign::defocusing, 1e-3);
    RotatingDatum df = build_rotating_datum(0.0, 1, Grid(1, 48.0, 4096), NonlinearitySign::focusing);
    run_S(df.u_minus, NonlinearitySign::focusing, 5e-4);

    double worst_l2 = 0.0, worst_h1 = 0.0;
    for (const auto& d : drifts) {
        worst_l2 = std::max(worst_l2, d.l2);
        worst_h1 = std::max(worst_h1, d.h1);
    }
    bool pass = !drifts.empty() && worst_l2 < 1e-7 && worst_h1 < 1e-6;
    report(5, "unitarity of every recorded S run", pass,
           fmt("%zu runs, worst L2 drift %.1e, worst H1 drift %.1e", drifts.size(), worst_l2,
               worst_h1));
}

void criterion_6() {
    Grid g = ref_grid();
    double worst = 0.0;
    HermiteBasis basis(g, 4);
    std::vector<Field> data = {gaussian(g, 0.3), Complex(0.3, 0.0) * basis.function({2})};
    for (const Field& u : data) {
        IdentityReport rep = identity_suite(u);
        worst = std::max({worst, rep.gauge_defect, rep.translation_defect, rep.conjugation_defect,
                          rep.fourier_defect});
    }
    report(6, "gauge/translation/conjugation/Fourier identities", worst < 1e-5,
           fmt("worst of 8 defects %.2e", worst));
}

void criterion_7() {
    Grid g = ref_grid();
    HermiteBasis basis(g, 24);
    double worst_res = 0.0;
    for (int k = 0; k <= 20; ++k) {
        Field psi = basis.function({k});
        Field r = apply_H(psi) - Complex(k + 0.5, 0.0) * psi;
        worst_res = std::max(worst_res, l2_norm(r));
    }
    // half-period propagation picks up e^{-i d pi/2} and a parity flip
    Field f(g);
    for (int n = 0; n < g.N; ++n) {
        double x = g.x(n);
        f[n] = Complex(0.5, 0.1) * std::exp(-0.5 * x * x) * (1.0 + 0.4 * x);
    }
    Field half = basis.propagate(f, M_PI);
    Field expected = Complex(0.0, -1.0) * parity(f);
    double maslov = l2_norm(half - expected) / l2_norm(f);
    bool pass = worst_res < 1e-8 && maslov < 1e-8;
    report(7, "oscillator spectrum (k <= 20) and half-period phase", pass,
           fmt("worst eigen-residual %.1e, half-period defect %.1e", worst_res, maslov));
}

void criterion_8() {
    Grid g = ref_grid();
    Field Q = solve_Q(g);
    double Q_l2 = l2_norm(Q);
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> width(0.6, 1.8);
    double min_ratio = 1e300;
    for (int trial = 0; trial < 100; ++trial) {
        Field f(g);
        double a = width(rng);
        for (int k = 0; k < 5; ++k) {
            Complex c(gauss(rng), gauss(rng));
            for (int n = 0; n < g.N; ++n) {
                double x = g.x(n);
                f[n] += c * std::pow(a * x, k) * std::exp(-0.5 * a * a * x * x);
            }
        }
        min_ratio = std::min(min_ratio, gn_check(f, Q_l2));
    }
    double at_Q = gn_check(Q, Q_l2);
    bool pass = min_ratio >= 1.0 && std::abs(at_Q - 1.0) < 1e-6;
    report(8, "sharp interpolation inequality over 100 random fields", pass,
           fmt("min ratio %.6f, ratio at Q - 1 = %.1e", min_ratio, at_Q - 1.0));
}

void criterion_9() {
    Grid g = ref_grid();
    RotatingDatum d = build_rotating_datum(0.0, 1, g, NonlinearitySign::focusing);
    StabilityReport rep = stability_probe(d.u_minus, 1e-3, 8, 42u);
    bool pass = rep.completed == 8 && rep.max_mass_drift < 1e-8;
    report(9, "8 perturbed focusing runs complete with tiny mass drift", pass,
           fmt("completed %d/8, max mass drift %.1e", rep.completed, rep.max_mass_drift));
}

void criterion_10() {
    Grid g = ref_grid();
    Field u = gaussian(g, 0.2);
    Field lens = run_S(u, NonlinearitySign::defocusing, 1e-3);
    ScatteringResult direct = scattering_direct(u, 20.0, 2e-3);
    double gap = rel_defect(lens, direct.u_plus);

    // far-field factorization defect decays along t = 4, 8, 16, 32
    Grid wide(1, 256.0, 4096);
    Field w = gaussian(wide, 1.0);
    std::vector<double> defects;
    bool decays = true;
    for (double t : {4.0, 8.0, 16.0, 32.0}) {
        double dfc = l2_norm(propagate_U0(w, t) - dispersive_factorization(w, t));
        if (!defects.empty() && dfc >= defects.back()) decays = false;
        defects.push_back(dfc);
    }
    bool pass = gap < 1e-5 && decays;
    report(10, "lens vs direct routes, far-field factorization decay", pass,
           fmt("route gap %.2e, factorization defects %.2e > %.2e > %.2e > %.2e", gap, defects[0],
               defects[1], defects[2], defects[3]));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
