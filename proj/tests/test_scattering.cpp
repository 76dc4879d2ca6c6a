#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "nlscat/scattering.hpp"
#include "test_util.hpp"

using namespace nlscat;
using namespace nlscat::testutil;

TEST_CASE("rotating_nu follows the branch ladder and rejects j < 1") {
    // defocusing: nu_j = d/2 + 2j - theta/pi; focusing: d/2 - 2j - theta/pi
    CHECK(rotating_nu(0.0, 1, 1, NonlinearitySign::defocusing) == doctest::Approx(2.5));
    CHECK(rotating_nu(M_PI, 2, 1, NonlinearitySign::defocusing) == doctest::Approx(3.5));
    CHECK(rotating_nu(0.0, 1, 1, NonlinearitySign::focusing) == doctest::Approx(-1.5));
    CHECK(rotating_nu(M_PI / 2, 2, 2, NonlinearitySign::focusing) == doctest::Approx(-3.5));
    CHECK_THROWS_AS(rotating_nu(0.0, 0, 1, NonlinearitySign::defocusing), InvalidProblem);
}

TEST_CASE("linear lens pipeline is the identity map") {
    Grid g = grid1d();
    Field u = gaussian(g, 0.7);
    ScatteringResult s = scattering_lens(u, NonlinearitySign::defocusing, 1e-3, /*linear=*/true);
    CHECK(rel_l2(s.u_plus, u) < 1e-9);
}

TEST_CASE("defocusing rotating datum returns to itself times e^{i theta}") {
    Grid g = grid1d();
    for (double theta : {0.0, M_PI / 2}) {
        RotatingDatum d = build_rotating_datum(theta, 1, g, NonlinearitySign::defocusing);
        CHECK(d.eigenstate.converged);
        ScatteringResult s = scattering_lens(d.u_minus, NonlinearitySign::defocusing, 1e-3);
        Complex rot(std::cos(theta), std::sin(theta));
        double defect = l2_norm(s.u_plus - rot * d.u_minus) / l2_norm(d.u_minus);
        CHECK(defect < 1e-6);
    }
}

TEST_CASE("focusing rotating datum needs the wide box for its slow tails") {
    // |u_-| decays only exponentially; at L=12 the box truncation alone is
    // ~1e-3, so the focusing check runs on the doubled-twice box.
    Grid g(1, 48.0, 4096);
    RotatingDatum d = build_rotating_datum(0.0, 1, g, NonlinearitySign::focusing);
    CHECK(d.nu == doctest::Approx(-1.5));
    ScatteringResult s = scattering_lens(d.u_minus, NonlinearitySign::focusing, 1e-3);
    CHECK(rel_l2(s.u_plus, d.u_minus) < 1e-5);
}

TEST_CASE("small-data expansion: S(eps u) = eps u - i eps^5 P(u) + O(eps^9)") {
    Grid g = grid1d();
    Field u = gaussian(g);
    Field P = perturbative_P(u);
    double Pn = l2_norm(P);
    CHECK(Pn > 0.0);
    double eps = 0.15;
    ScatteringResult s = scattering_lens(eps * u, NonlinearitySign::defocusing, 1e-3);
    Field diff = s.u_plus - eps * u;
    // leading-order magnitude
    CHECK(l2_norm(diff) / std::pow(eps, 5) == doctest::Approx(Pn).epsilon(0.01));
    // leading-order direction and phase: diff ~ -i eps^5 P, with the
    // next-order correction suppressed by another eps^4 ~ 5e-4
    Field resid = diff - Complex(0.0, -std::pow(eps, 5)) * P;
    CHECK(l2_norm(resid) < 2e-3 * l2_norm(diff));
}

TEST_CASE("perturbative_P rejects non-finite input and returns zero on zero") {
    Grid g = grid1d(12.0, 256);
    Field u = gaussian(g);
    u[3] = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(perturbative_P(u), InvalidField);
    CHECK(l2_norm(perturbative_P(Field(g))) == 0.0);
}

TEST_CASE("lens and direct routes agree on small data") {
    Grid g = grid1d();
    Field u = gaussian(g, 0.2);
    ScatteringResult sl = scattering_lens(u, NonlinearitySign::defocusing, 1e-3);
    ScatteringResult sd = scattering_direct(u, 20.0, 2e-3);
    CHECK(sd.method == ScatteringMethod::direct);
    CHECK(rel_l2(sl.u_plus, sd.u_plus) < 1e-5);
    CHECK_THROWS_AS(scattering_direct(u, -1.0, 1e-3), InvalidProblem);
}

TEST_CASE("scattering preserves the L2 and homogeneous H1 norms") {
    Grid g = grid1d();
    Field u = gaussian(g, 0.4);
    ScatteringResult s = scattering_lens(u, NonlinearitySign::defocusing, 1e-3);
    CHECK(std::abs(l2_norm(s.u_plus) - l2_norm(u)) / l2_norm(u) < 1e-9);
    CHECK(std::abs(grad_l2_norm(s.u_plus) - grad_l2_norm(u)) / grad_l2_norm(u) < 1e-8);
}

TEST_CASE("identity suite: gauge, translation, conjugation, Fourier interchange") {
    Grid g = grid1d();
    Field u = gaussian(g, 0.3);
    IdentityReport rep = identity_suite(u);
    CHECK(rep.gauge_defect < 1e-10);
    CHECK(rep.translation_defect < 1e-6);
    CHECK(rep.conjugation_defect < 1e-10);
    CHECK(rep.fourier_defect < 1e-8);
}

TEST_CASE("wave operators compose to the scattering map") {
    Grid g = grid1d();
    Field u = gaussian(g, 0.3);
    Field mid = wave_operator(u, Direction::minus, NonlinearitySign::defocusing, 1e-3);
    Field u_plus = wave_operator_inverse(mid, Direction::plus, NonlinearitySign::defocusing, 1e-3);
    ScatteringResult s = scattering_lens(u, NonlinearitySign::defocusing, 1e-3);
    CHECK(rel_l2(u_plus, s.u_plus) < 1e-7);
}

TEST_CASE("stability probe: perturbed focusing datum crosses the lens interval") {
    Grid g = grid1d();
    RotatingDatum d = build_rotating_datum(0.0, 1, g, NonlinearitySign::focusing);
    StabilityReport rep = stability_probe(d.u_minus, 1e-3, 3, 7u);
    CHECK(rep.trials == 3);
    CHECK(rep.completed == 3);
    CHECK(rep.max_mass_drift < 1e-10);
}

TEST_CASE("scattering_lens flags blow-up of supercritical focusing data") {
    Grid g = grid1d();
    // mass far above the critical threshold: collapses inside (-pi/2, pi/2)
    Field u = gaussian(g, 6.0);
    CHECK_THROWS_AS(scattering_lens(u, NonlinearitySign::focusing, 1e-3), BlowUpOnLensInterval);
}

TEST_CASE("scattering_lens input validation and zero datum") {
    Grid g = grid1d(12.0, 256);
    Field bad = gaussian(g);
    bad[0] = Complex(0.0, std::nan(""));
    CHECK_THROWS_AS(scattering_lens(bad, NonlinearitySign::defocusing, 1e-3), InvalidField);
    ScatteringResult s = scattering_lens(Field(g), NonlinearitySign::defocusing, 1e-3);
    CHECK(l2_norm(s.u_plus) == 0.0);
}
