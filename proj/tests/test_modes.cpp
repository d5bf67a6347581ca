#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tadpole/core.hpp"
#include "tadpole/modes.hpp"
#include "tadpole/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace tadpole;
using Cplx = tadpole::Complex;

namespace {
const double L = 2.0 * std::numbers::pi;
}

TEST_CASE("confined modes") {
    GraphParams p = GraphParams::make(L, 1.0);
    ModeFunction m1 = build_confined_mode(1, p);
    CHECK(std::abs(m1.eval_r2(std::numbers::pi / 2.0) -
                   Cplx(std::sqrt(1.0 / std::numbers::pi) * std::sin(std::numbers::pi / 2.0)))
          < 1e-12);
    CHECK(m1.A1 == Cplx(0.0, 0.0));
    CHECK(m1.A2 == -m1.B2);

    GraphFunction f1 = m1.sampled(p);
    CHECK(vertex_residuals(f1, p).max_abs() < 1e-8);
    CHECK(std::abs(norm(f1, p) - 1.0) < 1e-8);

    ModeFunction m2 = build_confined_mode(2, p);
    CHECK(std::abs(inner_product(f1, m2.sampled(p), p)) < 1e-8);

    std::vector<ModeFunction> conf;
    for (int k = 1; k <= 10; ++k) conf.push_back(build_confined_mode(k, p));
    GramMatrix G = gram_matrix(conf, GramSegment::full_graph, p);
    CHECK((G.entries - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("damped mode coefficients") {
    GraphParams p = GraphParams::make(L, 1.0);
    auto disk = disk_eigenvalue_search(p);
    REQUIRE(!disk.empty());
    ModeFunction psi = build_damped_mode(disk.front(), p);
    CHECK(std::abs(psi.A1 - (psi.A2 + psi.B2)) < 1e-12 * std::abs(psi.A1));
    CHECK(psi.normalized_over == NormDomain::full_halfline);
    GraphFunction f = psi.sampled(p);
    // the residual is limited by the one-sided FD stencil: small and O(h^2)
    double rv = vertex_residuals(f, p).max_abs();
    CHECK(rv < 1e-5);
    GraphParams pf = GraphParams::make(L, 1.0, 16.0 * L, p.h1 / 2.0, p.h2 / 2.0);
    CHECK(vertex_residuals(psi.sampled(pf), pf).max_abs() < rv / 3.0);
    CHECK(std::abs(norm(f, p) - 1.0) < 1e-8);

    // alpha = 0: B2/A2 = 3 exactly
    GraphParams p0 = GraphParams::make(L, 0.0);
    SpectralPoint r = refine_root(asymptotic_seed(1, p0, SeedSign::minus), p0);
    ModeFunction m0 = build_damped_mode(r, p0);
    CHECK(std::abs(m0.B2 / m0.A2 - 3.0) < 1e-10);
    CHECK(m0.normalized_over == NormDomain::truncated);
}

TEST_CASE("Gram: quadrature matches the closed form for exponential packets") {
    GraphParams p = GraphParams::make(L, 1.0, 4.0 * L, L / 2.0, L / 1600.0);
    GraphParams proot = GraphParams::make(L, 1.0);
    std::vector<ModeFunction> packets;
    for (int n = 1; n <= 5; ++n) {
        SpectralPoint r = refine_root(asymptotic_seed(n, proot, SeedSign::minus), proot);
        ModeFunction m;
        m.lambda = r.lambda;
        m.A1 = Cplx(0.0, 0.0);
        m.A2 = Cplx(1.0, 0.0);
        m.B2 = Cplx(0.0, 0.0);
        m.index = n;
        packets.push_back(m);
    }
    GramMatrix Gq = gram_matrix(packets, GramSegment::r2_only, p);
    GramMatrix Gc = gram_matrix_closed_form(packets, p);
    CHECK((Gq.entries - Gc.entries).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((Gq.entries - Gq.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("riesz diagnostics on the identity Gram") {
    GramMatrix G;
    G.entries = Eigen::MatrixXcd::Identity(6, 6);
    G.segment = GramSegment::full_graph;
    G.indices = {1, 2, 3, 4, 5, 6};
    RieszDiagnostics d = riesz_diagnostics(G);
    CHECK(d.fitted_C == 0.0);
    CHECK(d.min_eig == doctest::Approx(1.0));
    CHECK(d.max_eig == doctest::Approx(1.0));
}

TEST_CASE("projection onto the confined family") {
    GraphParams p = GraphParams::make(L, 1.0);
    GraphFunction phi2 = build_confined_mode(1, p).sampled(p);
    Projection pr = project_pp_plus(phi2, 4, p);
    CHECK(std::abs(pr.coeffs[0] - Cplx(1.0, 0.0)) < 1e-8);
    for (int k = 1; k < 4; ++k) CHECK(std::abs(pr.coeffs[k]) < 1e-8);
    CHECK(norm(pr.remainder, p) < 1e-7);

    GraphFunction r1only = GraphFunction::sample(
        p, [](double x) { return Cplx(std::exp(-x)); }, [](double) { return Cplx(0.0); });
    for (Cplx c : project_pp_plus(r1only, 4, p).coeffs) CHECK(std::abs(c) < 1e-12);

    GraphFunction odd = GraphFunction::sample(
        p, [](double) { return Cplx(0.0); },
        [&](double x) { return Cplx(std::sin(std::numbers::pi * x / L)); });
    Projection po = project_pp_plus(odd, 4, p);
    for (Cplx c : po.coeffs) CHECK(std::abs(c) < 1e-8);
    GraphFunction diff = po.remainder;
    diff.axpy(Cplx(-1.0, 0.0), odd);
    CHECK(norm(diff, p) < 1e-8);

    // idempotency: projecting the projection part reproduces the coefficients
    GraphFunction mix = build_confined_mode(1, p).sampled(p);
    mix.axpy(Cplx(0.5, -0.25), build_confined_mode(3, p).sampled(p));
    Projection pa = project_pp_plus(mix, 4, p);
    GraphFunction part = mix;
    part.axpy(Cplx(-1.0, 0.0), pa.remainder);
    Projection pb = project_pp_plus(part, 4, p);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(pa.coeffs[k] - pb.coeffs[k]) < 1e-10);
}

TEST_CASE("expansion in a nonorthogonal family") {
    GraphParams p = GraphParams::make(L, 1.0);
    GraphParams proot = GraphParams::make(L, 1.0);
    std::vector<ModeFunction> modes;
    for (int n = 1; n <= 4; ++n) {
        SpectralPoint r = refine_root(asymptotic_seed(n, proot, SeedSign::minus), proot);
        modes.push_back(build_damped_mode(r, p));
    }
    GraphFunction f = modes[2].sampled(p);
    Expansion e = expand_damped(f, modes, p);
    for (int n = 0; n < 4; ++n) {
        Cplx want = n == 2 ? Cplx(1.0, 0.0) : Cplx(0.0, 0.0);
        CHECK(std::abs(e.coeffs[n] - want) < 1e-6);
    }
    CHECK(e.residual < 1e-6);

    GraphFunction g = modes[0].sampled(p);
    g.scale(Cplx(2.0, 0.0));
    g.axpy(Cplx(0.0, 1.0), modes[1].sampled(p));
    Expansion e2 = expand_damped(g, modes, p);
    CHECK(std::abs(e2.coeffs[0] - Cplx(2.0, 0.0)) < 1e-6);
    CHECK(std::abs(e2.coeffs[1] - Cplx(0.0, 1.0)) < 1e-6);
    CHECK(std::abs(e2.coeffs[2]) < 1e-6);
}

TEST_CASE("exp_pair_inner closed form") {
    Cplx a(1.2, -0.3), b(0.4, 0.6);
    // direct quadrature of int_0^L e^{iax} conj(e^{ibx}) dx
    int n = 4000;
    double h = L / n;
    Cplx acc(0.0, 0.0);
    std::vector<Cplx> vals(n + 1);
    for (int i = 0; i <= n; ++i)
        vals[i] = std::exp(Cplx(0.0, 1.0) * a * (i * h)) *
                  std::conj(std::exp(Cplx(0.0, 1.0) * b * (i * h)));
    acc = simpson(vals, h);
    CHECK(std::abs(exp_pair_inner(a, b, L) - acc) < 1e-8);
}
