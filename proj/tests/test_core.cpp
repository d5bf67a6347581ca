#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tadpole/core.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace tadpole;
using Cplx = tadpole::Complex;

namespace {
const double L = 2.0 * std::numbers::pi;

GraphFunction zero_r1_sine(const GraphParams& p, int k) {
    return GraphFunction::sample(
        p, [](double) { return Cplx(0.0); },
        [&](double x) { return Cplx(std::sqrt(2.0 / p.L) * std::sin(2.0 * k * std::numbers::pi * x / p.L)); });
}
} // namespace

TEST_CASE("graph params defaults and invariants") {
    GraphParams p = GraphParams::make(L, 1.0);
    CHECK(p.x_max == doctest::Approx(16.0 * L));
    CHECK(p.h1 == doctest::Approx(L / 200.0));
    CHECK(p.h2 == doctest::Approx(L / 400.0));
    CHECK(p.n2 == 400);
    CHECK_THROWS_AS(GraphParams::make(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(GraphParams::make(L, 1.0, 16.0 * L, L / 200.0, 0.3), DomainError);
}

TEST_CASE("inner product: normalized sine, orthogonality, exponential packet") {
    GraphParams p = GraphParams::make(L, 1.0);
    GraphFunction s2 = zero_r1_sine(p, 1), s4 = zero_r1_sine(p, 2);
    CHECK(std::abs(inner_product(s2, s2, p) - 1.0) < 1e-8);
    CHECK(std::abs(inner_product(s2, s4, p)) < 1e-8);

    Cplx lam(1.0, std::log(3.0) / L);
    GraphFunction e = GraphFunction::sample(
        p, [](double) { return Cplx(0.0); },
        [&](double x) { return std::exp(Cplx(0.0, 1.0) * lam * x); });
    // closed form (1 - e^{-2 mu L})/(2 mu), mu = ln3/L; equals 4L/(9 ln 3)
    double expected = 4.0 * L / (9.0 * std::log(3.0));
    CHECK(std::abs(inner_product(e, e, p) - expected) < 2e-3);
}

TEST_CASE("inner product: Hermitian symmetry and 4th-order quadrature") {
    GraphParams p = GraphParams::make(L, 1.0);
    GraphFunction f = GraphFunction::sample(
        p, [](double x) { return Cplx(std::exp(-x), std::sin(x)); },
        [](double x) { return Cplx(x, std::cos(x)); });
    GraphFunction g = GraphFunction::sample(
        p, [](double x) { return Cplx(std::cos(x), 0.1 * x); },
        [](double x) { return Cplx(std::sin(2 * x), 1.0); });
    Cplx a = inner_product(f, g, p), b = inner_product(g, f, p);
    CHECK(std::abs(a - std::conj(b)) < 1e-12 * (1.0 + std::abs(a)));
    CHECK(inner_product(f, f, p).real() > 0.0);
    CHECK(std::abs(inner_product(f, f, p).imag()) < 1e-12 * inner_product(f, f, p).real());

    // error against the analytic integral of x^4 drops >= 12x when h halves
    double exact = std::pow(L, 5) / 5.0;
    auto err = [&](double h) {
        GraphParams q = GraphParams::make(L, 1.0, 4.0 * L, L / 4.0, h);
        GraphFunction x2 = GraphFunction::sample(
            q, [](double) { return Cplx(0.0); }, [](double x) { return Cplx(x * x); });
        return std::abs(inner_product(x2, x2, q).real() - exact);
    };
    CHECK(err(L / 8.0) / err(L / 16.0) >= 12.0);
}

TEST_CASE("simpson and cumulative integral") {
    int n = 200;
    double h = L / n;
    std::vector<Cplx> f(n + 1), c(n + 1);
    for (int i = 0; i <= n; ++i) {
        f[i] = std::sin(i * h);
        c[i] = std::cos(i * h);
    }
    CHECK(std::abs(simpson(f, h)) < 1e-10);
    std::vector<Cplx> cum = cumulative_integral(c, h);
    for (int i = 0; i <= n; ++i)
        CHECK(std::abs(cum[i] - Cplx(std::sin(i * h))) < 1e-7);
}

TEST_CASE("vertex residuals") {
    GraphParams p0 = GraphParams::make(L, 0.0);
    GraphFunction one = GraphFunction::sample(
        p0, [](double) { return Cplx(1.0); }, [](double) { return Cplx(1.0); });
    CHECK(vertex_residuals(one, p0).max_abs() < 1e-12);

    GraphParams p1 = GraphParams::make(L, 1.0);
    VertexResidual r = vertex_residuals(one, p1);
    CHECK(std::abs(r.kirchhoff - Cplx(0.0, -1.0)) < 1e-12);

    GraphFunction conf = zero_r1_sine(p1, 1);
    CHECK(vertex_residuals(conf, p1).max_abs() < 1e-8);
}

TEST_CASE("csv round trip is byte-deterministic") {
    GraphParams p = GraphParams::make(L, 1.0, 4.0 * L, L / 8.0, L / 8.0);
    GraphFunction f = GraphFunction::sample(
        p, [](double x) { return Cplx(std::sin(x), std::exp(-x)); },
        [](double x) { return Cplx(x / 3.0, -x); });
    std::string a = "core_csv_a.csv", b = "core_csv_b.csv";
    write_csv(f, p, a, "{\"L\": 6.28}");
    write_csv(f, p, b, "{\"L\": 6.28}");
    auto slurp = [](const std::string& path) {
        std::ifstream is(path, std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    };
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    GraphFunction g = read_csv(a, p);
    for (size_t i = 0; i < f.r1_values.size(); ++i) CHECK(f.r1_values[i] == g.r1_values[i]);
    for (size_t i = 0; i < f.r2_values.size(); ++i) CHECK(f.r2_values[i] == g.r2_values[i]);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("shape errors and probe sequence") {
    GraphParams p = GraphParams::make(L, 1.0);
    GraphParams q = GraphParams::make(L, 1.0, 8.0 * L, L / 100.0, L / 100.0);
    GraphFunction f = GraphFunction::zero(p), g = GraphFunction::zero(q);
    CHECK_THROWS_AS(inner_product(f, g, p), ShapeError);

    auto [u0, v0] = low_discrepancy_2d(7);
    auto [u1, v1] = low_discrepancy_2d(7);
    CHECK(u0 == u1);
    CHECK(v0 == v1);
    for (int i = 0; i < 50; ++i) {
        auto [u, v] = low_discrepancy_2d(i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}
