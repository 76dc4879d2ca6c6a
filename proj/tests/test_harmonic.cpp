#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nlscat/hermite.hpp"
#include "test_util.hpp"

using namespace nlscat;
using namespace nlscat::testutil;

namespace {

Field hermite0(const Grid& g) {
    return from_function(
        g, [](double x) { return Complex(std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x), 0.0); });
}

}  // namespace

TEST_CASE("apply_H on the lowest eigenfunctions") {
    Grid g = grid1d();
    Field psi0 = hermite0(g);
    CHECK(rel_l2(apply_H(psi0), 0.5 * psi0) < 1e-10);

    Field psi1 = from_function(g, [](double x) {
        return Complex(std::sqrt(2.0) * std::pow(M_PI, -0.25) * x * std::exp(-0.5 * x * x), 0.0);
    });
    CHECK(rel_l2(apply_H(psi1), 1.5 * psi1) < 1e-10);
}

TEST_CASE("basis functions are orthonormal eigenfunctions") {
    Grid g = grid1d();
    HermiteBasis basis(g, 24);
    for (int k : {0, 5, 12, 24}) {
        Field psik = basis.function({k});
        CHECK(std::abs(l2_norm(psik) - 1.0) < 1e-10);
        CHECK(basis.eigenvalue({k}) == doctest::Approx(k + 0.5));
        CHECK(rel_l2(apply_H(psik), (k + 0.5) * psik) < 1e-8);
    }
    CHECK(std::abs(inner(basis.function({3}), basis.function({7}))) < 1e-12);
    // parity: even k -> even function, odd k -> odd function
    Field p4 = basis.function({4});
    Field p5 = basis.function({5});
    CHECK(rel_l2(parity(p4), p4) < 1e-12);
    CHECK(rel_l2(parity(p5), -1.0 * p5) < 1e-12);
}

TEST_CASE("analyze/synthesize round trip on smooth data") {
    Grid g = grid1d();
    HermiteBasis basis(g, max_resolved_mode(g));
    Field f = random_sigma_field(g, 3);
    auto coeff = basis.analyze(f);
    CHECK(static_cast<int>(coeff.size()) == basis.k_max() + 1);
    CHECK(rel_l2(basis.synthesize(coeff), f) < 1e-9);
    CHECK(basis.projection_defect(f) < 1e-9 * l2_norm(f));
}

TEST_CASE("propagation: unitarity, group law, Maslov half period") {
    Grid g = grid1d();
    HermiteBasis basis(g, max_resolved_mode(g));
    Field f = random_sigma_field(g, 11);
    double m = l2_norm(f);

    Field ft = basis.propagate(f, 0.3);
    CHECK(std::abs(l2_norm(ft) - m) < 1e-9 * m);
    CHECK(rel_l2(basis.propagate(ft, 1.1), basis.propagate(f, 1.4)) < 1e-10);
    CHECK(rel_l2(basis.propagate(f, 0.0), f) < 1e-12);

    // U_H(pi) = e^{-i d pi/2} parity
    Field half = basis.propagate(f, M_PI);
    Complex maslov(std::cos(-M_PI / 2.0), std::sin(-M_PI / 2.0));
    CHECK(rel_l2(half, maslov * parity(f)) < 1e-9);
    // full period is the phase e^{-i d pi}
    Field full = basis.propagate(f, 2.0 * M_PI);
    CHECK(rel_l2(full, Complex(-1.0, 0.0) * f) < 1e-9);
}

TEST_CASE("propagate rejects data outside the retained span") {
    Grid g = grid1d(12.0, 256);
    HermiteBasis basis(g, 10);
    // high-order polynomial envelope has substantial content above k = 10
    Field f = from_function(g, [](double x) { return Complex(std::pow(x, 14) * std::exp(-0.5 * x * x), 0.0); });
    CHECK_THROWS_AS(basis.propagate(f, 0.5), TruncationError);
}

TEST_CASE("constructor rejects a basis that does not fit the box") {
    // k_max far beyond what L = 5 can resolve: turning points past the boundary
    CHECK_THROWS_AS(HermiteBasis(Grid(1, 5.0, 256), 60), TruncationError);
}

TEST_CASE("2d tensor basis") {
    Grid g(2, 8.0, 64);
    HermiteBasis basis(g, max_resolved_mode(g));
    Field psi = basis.function({2, 3});
    CHECK(std::abs(l2_norm(psi) - 1.0) < 1e-10);
    CHECK(basis.eigenvalue({2, 3}) == doctest::Approx(6.0));
    CHECK(rel_l2(apply_H(psi), 6.0 * psi) < 1e-8);

    // low-order polynomial envelope: fits well inside the retained span
    Field f = from_function2d(g, [](double x, double y) {
        return Complex(std::exp(-0.5 * (x * x + y * y)) * (1.0 + 0.3 * x * y),
                       0.1 * x * x * std::exp(-0.5 * (x * x + y * y)));
    });
    auto coeff = basis.analyze(f);
    CHECK(rel_l2(basis.synthesize(coeff), f) < 1e-8);
    Field half = basis.propagate(f, M_PI);
    Complex maslov(std::cos(-M_PI), std::sin(-M_PI));  // e^{-i d pi / 2}, d = 2
    CHECK(rel_l2(half, maslov * parity(f)) < 1e-8);
}
