#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tadpole/core.hpp"
#include "tadpole/oracle.hpp"

#include <cmath>
#include <numbers>

using namespace tadpole;
using Cplx = tadpole::Complex;

namespace {
const double L = 2.0 * std::numbers::pi;

GraphFunction loop_gaussian(const GraphParams& p) {
    return GraphFunction::sample(
        p, [](double) { return Cplx(0.0); },
        [&](double x) {
            double s = p.L / 12.0, c = p.L / 2.0;
            return Cplx(std::exp(-(x - c) * (x - c) / (2.0 * s * s)));
        });
}
} // namespace

TEST_CASE("operator structure") {
    GraphParams p0 = GraphParams::make(L, 0.0, 4.0 * L, L / 50.0, L / 100.0);
    DiscreteOperator h0 = build_discrete_operator(p0);
    Eigen::MatrixXcd K0 = Eigen::MatrixXcd(h0.K);
    CHECK((K0 - K0.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    GraphParams p1 = GraphParams::make(L, 1.0, 4.0 * L, L / 50.0, L / 100.0);
    DiscreteOperator h1 = build_discrete_operator(p1);
    Eigen::MatrixXcd K1 = Eigen::MatrixXcd(h1.K);
    Eigen::MatrixXcd skew = K1 - K1.adjoint();
    for (int r = 0; r < h1.dim; ++r)
        for (int c = 0; c < h1.dim; ++c)
            if (r != h1.vertex_index || c != h1.vertex_index)
                CHECK(std::abs(skew(r, c)) < 1e-12);
    CHECK(std::abs(skew(h1.vertex_index, h1.vertex_index) - Cplx(0.0, 2.0)) < 1e-12);
}

TEST_CASE("confined eigenvalue recovered at O(h^2)") {
    GraphParams p = GraphParams::make(L, 1.0, 4.0 * L, L / 50.0, L / 400.0);
    DiscreteOperator op = build_discrete_operator(p);
    auto pairs = oracle_eigenpairs(op, Cplx(1.0, 0.0), 4);
    REQUIRE(!pairs.empty());
    const OracleEigenpair* conf = nullptr;
    for (const auto& pr : pairs)
        if (!conf || pr.r1_mass < conf->r1_mass) conf = &pr;
    CHECK(std::abs(conf->mu - Cplx(1.0, 0.0)) < 1e-4);
    CHECK(conf->r1_mass < 1e-6);
    CHECK(conf->residual < 1e-8);
}

TEST_CASE("Crank-Nicolson norm preservation at alpha = 0") {
    GraphParams p = GraphParams::make(L, 0.0, 4.0 * L, L / 100.0, L / 100.0);
    DiscreteOperator op = build_discrete_operator(p);
    EvolveResult res = oracle_evolve(op, loop_gaussian(p), 1e-2, 200);
    for (double n : res.norms)
        CHECK(std::abs(n - res.norms.front()) < 1e-10 * res.norms.front());
    CHECK(energy_identity_check(res, 0.0) < 1e-10);
}

TEST_CASE("energy identity at alpha = 1") {
    GraphParams p = GraphParams::make(L, 1.0, 4.0 * L, L / 200.0, L / 200.0);
    DiscreteOperator op = build_discrete_operator(p);
    EvolveResult res = oracle_evolve(op, loop_gaussian(p), 1e-3, 500);
    CHECK(energy_identity_check(res, 1.0) < 1e-3);
    // dissipative: the norm never grows
    for (size_t i = 1; i < res.norms.size(); ++i)
        CHECK(res.norms[i] <= res.norms[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("Weyl packets") {
    GraphParams p = GraphParams::make(L, 1.0, 140.0, 0.05, L / 100.0);
    DiscreteOperator op = build_discrete_operator(p);
    double r8 = weyl_residual(op, 1.0, 8);
    double r16 = weyl_residual(op, 1.0, 16);
    CHECK(r8 / r16 > 1.6);
    CHECK(r8 / r16 < 2.4);
    CHECK(build_weyl_packet(op, 1.0, 8).norm > 0.95);
    CHECK_THROWS_AS(build_weyl_packet(op, 1.0, 80), TailError);
}

TEST_CASE("adjudication of an embedded root") {
    GraphParams p = GraphParams::make(L, 1.0, 4.0 * L, L / 100.0, L / 200.0);
    RootAdjudication adj = adjudicate_root(Cplx(1.0, 0.0), p, Closure::dirichlet);
    CHECK(adj.verdict == "confirmed");
    CHECK(adj.distance < 1e-3);
}
