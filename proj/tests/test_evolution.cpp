#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tadpole/core.hpp"
#include "tadpole/evolution.hpp"
#include "tadpole/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace tadpole;
using Cplx = tadpole::Complex;

namespace {
const double L = 2.0 * std::numbers::pi;

std::vector<SpectralPoint> mixed_spectrum(const GraphParams& p) {
    std::vector<SpectralPoint> spec = embedded_eigenvalues(1, p);
    auto disk = disk_eigenvalue_search(p);
    spec.insert(spec.end(), disk.begin(), disk.end());
    return spec;
}
} // namespace

TEST_CASE("confined data evolves unitarily") {
    GraphParams p = GraphParams::make(L, 1.0);
    auto spec = embedded_eigenvalues(1, p);
    GraphFunction u0 = build_confined_mode(1, p).sampled(p);
    GraphFunction u1 = evolve_modal(u0, spec, 1.3, p);
    CHECK(std::abs(norm(u1, p) / norm(u0, p) - 1.0) < 1e-8);
    // phase factor e^{i lambda^2 t} with lambda^2 = 1
    GraphFunction expect = u0;
    expect.scale(std::exp(Cplx(0.0, 1.3)));
    expect.axpy(Cplx(-1.0, 0.0), u1);
    CHECK(norm(expect, p) < 1e-8);
}

TEST_CASE("single damped mode decays at the modal rate") {
    GraphParams p = GraphParams::make(L, 1.0);
    auto disk = disk_eigenvalue_search(p);
    REQUIRE(!disk.empty());
    std::vector<SpectralPoint> spec(disk.begin(), disk.begin() + 1);
    GraphFunction u0 = build_damped_mode(disk.front(), p).sampled(p);
    double t = 2.0;
    GraphFunction ut = evolve_modal(u0, spec, t, p);
    double rate = std::exp(-(disk.front().lambda_sq).imag() * t);
    CHECK(std::abs(norm(ut, p) / norm(u0, p) - rate) < 1e-8);

    // log E_minus affine in t with slope -2 Im lambda^2
    std::vector<double> times{0.0, 0.5, 1.0, 1.5};
    EnergyTrace tr = energy_trace(u0, spec, times, p);
    double s1 = std::log(tr.E_minus[1] / tr.E_minus[0]) / 0.5;
    double s2 = std::log(tr.E_minus[3] / tr.E_minus[2]) / 0.5;
    double want = -2.0 * disk.front().lambda_sq.imag();
    CHECK(std::abs(s1 - want) < 1e-6);
    CHECK(std::abs(s2 - want) < 1e-6);
}

TEST_CASE("linearity and semigroup property") {
    GraphParams p = GraphParams::make(L, 1.0);
    auto spec = mixed_spectrum(p);
    REQUIRE(spec.size() >= 2);
    GraphFunction a = build_confined_mode(1, p).sampled(p);
    GraphFunction b = build_damped_mode(spec.back(), p).sampled(p);

    GraphFunction combo = a;
    combo.scale(Cplx(0.7, 0.2));
    combo.axpy(Cplx(-0.3, 1.1), b);
    GraphFunction lhs = evolve_modal(combo, spec, 0.8, p);
    GraphFunction rhs = evolve_modal(a, spec, 0.8, p);
    rhs.scale(Cplx(0.7, 0.2));
    rhs.axpy(Cplx(-0.3, 1.1), evolve_modal(b, spec, 0.8, p));
    rhs.axpy(Cplx(-1.0, 0.0), lhs);
    CHECK(norm(rhs, p) < 1e-8);

    GraphFunction two_step = evolve_modal(evolve_modal(combo, spec, 0.5, p), spec, 0.3, p);
    GraphFunction one_step = evolve_modal(combo, spec, 0.8, p);
    two_step.axpy(Cplx(-1.0, 0.0), one_step);
    CHECK(norm(two_step, p) < 1e-8);
}

TEST_CASE("energy trace splits and monotonicity") {
    GraphParams p = GraphParams::make(L, 1.0);
    auto spec = mixed_spectrum(p);
    GraphFunction u0 = build_confined_mode(1, p).sampled(p);
    u0.axpy(Cplx(1.0, 0.0), build_damped_mode(spec.back(), p).sampled(p));
    u0.scale(1.0 / norm(u0, p));

    std::vector<double> times{0.0, 0.4, 0.8, 1.2, 1.6, 2.0};
    EnergyTrace tr = energy_trace(u0, spec, times, p);
    for (size_t i = 0; i < times.size(); ++i) {
        CHECK(std::abs(tr.E[i] - (tr.E_plus[i] + tr.E_minus[i])) < 1e-8);
        CHECK(std::abs(tr.E_plus[i] - tr.E_plus[0]) < 1e-10);
        if (i > 0) CHECK(tr.E[i] <= tr.E[i - 1] + 1e-12);
    }
    CHECK(tr.omega_hat > 0.0);
    // flux integral accounts for the energy lost (Eq. 1.5)
    double lost = 2.0 * (tr.E[0] - tr.E.back());
    CHECK(std::abs(tr.flux_integral.back() - lost) < 1e-6 * (1.0 + lost));
}

TEST_CASE("decay rate report") {
    GraphParams p = GraphParams::make(L, 1.0);
    auto spec = mixed_spectrum(p);
    DecayRateReport rep = decay_rate_report(spec, p);
    CHECK(rep.paper_rate == doctest::Approx(8.0 / (6.0 * std::numbers::pi)));
    CHECK(rep.per_mode[0] == 0.0); // embedded: lambda^2 real
    CHECK(rep.sup_re_i_lambda_sq < 0.0);
}

TEST_CASE("out-of-span data is rejected") {
    GraphParams p = GraphParams::make(L, 1.0);
    auto spec = mixed_spectrum(p);
    GraphFunction g = GraphFunction::sample(
        p, [](double x) { return Cplx(std::exp(-(x - 3.0) * (x - 3.0))); },
        [](double) { return Cplx(0.0); });
    CHECK_THROWS_AS(evolve_modal(g, spec, 1.0, p), DomainError);
}
