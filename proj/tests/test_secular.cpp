#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tadpole/core.hpp"
#include "tadpole/secular.hpp"

#include <cmath>
#include <numbers>

using namespace tadpole;
using Cplx = tadpole::Complex;

namespace {
const double L = 2.0 * std::numbers::pi;
const Cplx I(0.0, 1.0);
} // namespace

TEST_CASE("coefficient identities and determinant closed form") {
    GraphParams p = GraphParams::make(L, 1.0);
    for (Cplx z : {Cplx(-0.3, 1.7), Cplx(-2.0, 0.4), Cplx(-4.9, 3.1)}) {
        CoefficientSet c = eval_coefficients(z, p);
        CHECK(c.F2 == c.G1);
        CHECK(c.H1 == c.X * c.G1);
        CHECK(c.F3 == c.H1);
        CHECK(c.G3 == c.H2);
        CHECK(c.H3 == c.X * c.X * c.G2);
        CHECK(coefficient_system_residual(c, p) < 1e-10);
    }

    // alpha = 0, z = i (omega = 1), L = 1: D_0 = e (1 - 1/e)(1/e - 3)
    GraphParams p0 = GraphParams::make(1.0, 0.0);
    CoefficientSet c = eval_coefficients(Cplx(0.0, 1.0), p0);
    double e = std::exp(1.0);
    Cplx expected = e * (1.0 - 1.0 / e) * (1.0 / e - 3.0);
    CHECK(std::abs(c.D_alpha - expected) < 1e-12 * std::abs(expected));
    CHECK(std::abs(c.omega_c - Cplx(3.0, 0.0)) < 1e-14);
}

TEST_CASE("pole guards") {
    GraphParams p = GraphParams::make(L, 1.0);
    // z = 1: X = e^{2 pi i} = 1, the (X - 1) denominator vanishes
    CHECK_THROWS_AS(eval_coefficients(Cplx(1.0, 0.0), p), PoleProximityError);
    CHECK_THROWS_AS(eval_coefficients(Cplx(0.0, 0.0), p), PoleProximityError);
    CHECK_THROWS_AS(eval_d(Cplx(0.0, 0.0), p), SingularityError);
    CHECK_THROWS_AS(eval_h(Cplx(-1.0, 0.0), p), PoleProximityError);
}

TEST_CASE("secular determinant: roots, double root, factorization") {
    GraphParams p = GraphParams::make(L, 1.0);
    CHECK(std::abs(eval_d(Cplx(1.0, 0.0), p)) < 1e-12);
    CHECK(std::abs(eval_d(Cplx(2.0, 0.0), p)) < 1e-12);
    // lambda = alpha = 1 with e^{i alpha L} = 1: both factors vanish
    CHECK(std::abs(eval_d_prime(Cplx(1.0, 0.0), p)) < 1e-8);

    for (Cplx lam : {Cplx(0.7, 0.3), Cplx(-1.4, -0.9), Cplx(3.3, 0.05)}) {
        Cplx T = std::exp(I * lam * L);
        Cplx T2 = (3.0 * lam - p.alpha) / (lam + p.alpha);
        Cplx fact = std::exp(-I * lam * L) * (1.0 + p.alpha / lam) * (T - 1.0) * (T - T2);
        Cplx d = eval_d(lam, p);
        CHECK(std::abs(d - fact) < 1e-12 * std::abs(d));
    }
}

TEST_CASE("d-prime agrees with a central finite difference") {
    GraphParams p = GraphParams::make(L, 1.0);
    double h = 1e-6;
    for (Cplx lam : {Cplx(0.8, -0.2), Cplx(2.1, 0.3)}) {
        Cplx fd = (eval_d(lam + h, p) - eval_d(lam - h, p)) / (2.0 * h);
        Cplx an = eval_d_prime(lam, p);
        CHECK(std::abs(fd - an) < 1e-6 * (1.0 + std::abs(an)));
    }
}

TEST_CASE("h_alpha roots") {
    GraphParams p0 = GraphParams::make(L, 0.0);
    for (int n = 1; n <= 3; ++n) {
        Cplx lam(2.0 * n * std::numbers::pi / L, -std::log(3.0) / L);
        CHECK(std::abs(eval_h(lam, p0)) < 1e-12);
    }
    GraphParams p1 = GraphParams::make(L, 1.0);
    CHECK(std::abs(eval_h(Cplx(1.0, 0.0), p1)) < 1e-12);
    // on the real axis h stays away from zero for large |lambda|
    CHECK(std::abs(eval_h(Cplx(1000.25, 0.0), p1)) > 1.0);
}
