#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tadpole/core.hpp"
#include "tadpole/oracle.hpp"
#include "tadpole/resolvent.hpp"

#include <cmath>
#include <numbers>

using namespace tadpole;
using Cplx = tadpole::Complex;

namespace {
const double L = 2.0 * std::numbers::pi;
const Cplx z0(-1.0, 2.0);
}

TEST_CASE("kernel symmetry") {
    GraphParams p = GraphParams::make(L, 1.0);
    EdgePoint a{Edge::r1, 1.3}, b{Edge::r1, 4.2};
    CHECK(std::abs(kernel_direct(a, b, z0, p) - kernel_direct(b, a, z0, p)) < 1e-15);
    EdgePoint c{Edge::r2, 0.9}, d{Edge::r2, 3.7};
    Cplx kcd = kernel_direct(c, d, z0, p);
    CHECK(std::abs(kcd - kernel_direct(d, c, z0, p)) < 1e-14 * (1.0 + std::abs(kcd)));
    EdgePoint e{Edge::r1, 0.8};
    Cplx kce = kernel_direct(c, e, z0, p);
    CHECK(std::abs(kce - kernel_direct(e, c, z0, p)) < 1e-14 * (1.0 + std::abs(kce)));
}

TEST_CASE("derivative jump across the diagonal is -1") {
    GraphParams p = GraphParams::make(L, 1.0);
    double y = 2.0, d = 1e-4;
    auto K = [&](double x) { return kernel_direct({Edge::r2, x}, {Edge::r2, y}, z0, p); };
    // 2nd-order one-sided stencils on either side of the kink
    Cplx right = (-3.0 * K(y) + 4.0 * K(y + d) - K(y + 2.0 * d)) / (2.0 * d);
    Cplx left = (3.0 * K(y) - 4.0 * K(y - d) + K(y - 2.0 * d)) / (2.0 * d);
    CHECK(std::abs((right - left) - Cplx(-1.0, 0.0)) < 1e-6);
}

TEST_CASE("kernel matches the oracle Green's column at O(h^2)") {
    const double yq = L / 4.0; // grid node at both resolutions
    auto err = [&](double h) {
        GraphParams p = GraphParams::make(L, 1.0, 8.0 * L, h, h);
        DiscreteOperator op = build_discrete_operator(p);
        GraphFunction g = oracle_green_column(op, z0, true, yq);
        double worst = 0.0;
        for (int j = 0; j <= p.n2; ++j) {
            double x = p.r2_x(j);
            if (std::abs(x - yq) < 0.3) continue; // delta-source locality error
            Cplx k = kernel_direct({Edge::r2, x}, {Edge::r2, yq}, z0, p);
            worst = std::max(worst, std::abs(g.r2_values[j] - k));
        }
        return worst;
    };
    double e1 = err(L / 200.0), e2 = err(L / 400.0);
    CHECK(e1 < 1e-3);
    CHECK(e1 / e2 >= 3.0);
}

TEST_CASE("decomposition sum identity and off-loop convention") {
    GraphParams p = GraphParams::make(L, 1.0);
    KernelDecomposition dec(p);
    CHECK(dec.report().chosen_max_err < 1e-10);

    KernelParts parts = dec.eval({Edge::r2, 1.0}, {Edge::r2, 2.5}, Cplx(-0.3, 1.7));
    Cplx sum = parts.k_c + parts.k_pp_plus + parts.k_pp_minus;
    CHECK(std::abs(parts.total - sum) < 1e-10 * (1.0 + std::abs(parts.total)));

    KernelParts off = dec.eval({Edge::r1, 1.0}, {Edge::r2, 2.5}, Cplx(-0.3, 1.7));
    CHECK(off.k_pp_plus == Cplx(0.0, 0.0));
    CHECK(off.k_pp_minus == Cplx(0.0, 0.0));
    CHECK(off.k_c == off.total);
}

TEST_CASE("K_c is Cauchy approaching the real axis") {
    GraphParams p = GraphParams::make(L, 1.0);
    KernelDecomposition dec(p);
    EdgePoint x{Edge::r2, 1.0}, y{Edge::r2, 2.5};
    auto kc = [&](double eps) { return dec.eval(x, y, Cplx(-1.3, eps)).k_c; };
    double d1 = std::abs(kc(1e-2) - kc(1e-3));
    double d2 = std::abs(kc(1e-3) - kc(1e-4));
    CHECK(d2 < d1);
}

TEST_CASE("pole guard near X = 1") {
    GraphParams p = GraphParams::make(L, 1.0);
    KernelDecomposition dec(p);
    CHECK_THROWS_AS(dec.eval({Edge::r2, 1.0}, {Edge::r2, 2.5}, Cplx(1.0, 1e-10)),
                    PoleProximityError);
}

TEST_CASE("apply_resolvent rejects data with a large tail") {
    GraphParams p = GraphParams::make(L, 1.0, 8.0 * L, L / 100.0, L / 100.0);
    GraphFunction g = GraphFunction::sample(
        p, [&](double x) { return Cplx(std::exp(-0.5 * (x - 7.5 * L) * (x - 7.5 * L))); },
        [](double) { return Cplx(0.0); });
    CHECK_THROWS_AS(apply_resolvent(g, z0, p), TailError);
}

TEST_CASE("apply_resolvent solves the ODE for loop data") {
    GraphParams p = GraphParams::make(L, 1.0, 8.0 * L, L / 200.0, L / 200.0);
    GraphFunction g = GraphFunction::sample(
        p, [](double) { return Cplx(0.0); },
        [&](double x) {
            double s = L / 12.0, c = L / 2.0;
            return Cplx(std::exp(-(x - c) * (x - c) / (2.0 * s * s)));
        });
    GraphFunction u = apply_resolvent(g, z0, p);
    CHECK(vertex_residuals(u, p).max_abs() < 1e-5);
    double acc = 0.0, gn = 0.0;
    for (int j = 1; j < p.n2; ++j) {
        Cplx d2 = (u.r2_values[j - 1] - 2.0 * u.r2_values[j] + u.r2_values[j + 1]) /
                  (p.h2 * p.h2);
        acc += std::norm(-d2 - z0 * z0 * u.r2_values[j] - g.r2_values[j]) * p.h2;
        gn += std::norm(g.r2_values[j]) * p.h2;
    }
    CHECK(std::sqrt(acc / gn) < 1e-3);
}
