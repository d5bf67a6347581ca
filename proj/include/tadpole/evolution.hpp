// evolution.hpp — Modal time evolution, energy traces, decay-rate report.
#pragma once

#include "tadpole/core.hpp"
#include "tadpole/modes.hpp"
#include "tadpole/spectrum.hpp"

namespace tadpole {

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> E;             // total 1/2 ||u(t)||^2
    std::vector<double> E_plus;        // confined share (constant)
    std::vector<double> E_minus;       // damped share via the Gram form
    std::vector<double> E_minus_diag;  // diagonal (orthonormal-heuristic) variant
    std::vector<double> flux_integral; // 2 alpha int_0^t |u1(0,s)|^2 ds
    double omega_hat = 0.0;            // min Im lambda^2 over damped modes used
};

struct ModalBasis {
    std::vector<ModeFunction> confined;
    std::vector<ModeFunction> damped;
};

// Confined modes for embedded points, damped modes for Im lambda^2 > 0 points;
// resonance candidates are rejected (DomainError).
ModalBasis build_modal_basis(const std::vector<SpectralPoint>& spec, const GraphParams& p);

struct ModalCoefficients {
    std::vector<Complex> c_plus;
    std::vector<Complex> c_minus;
    double residual; // || u0 - reconstruction ||
};

// Joint Gram solve over confined + damped modes.
ModalCoefficients expand_modal(const GraphFunction& u0, const ModalBasis& basis,
                               const GraphParams& p);

GraphFunction evolve_modal(const GraphFunction& u0, const std::vector<SpectralPoint>& spec,
                           double t, const GraphParams& p);

EnergyTrace energy_trace(const GraphFunction& u0, const std::vector<SpectralPoint>& spec,
                         const std::vector<double>& times, const GraphParams& p);

struct DecayRateReport {
    double sup_re_i_lambda_sq; // over the non-embedded modes
    double paper_rate;         // 8 alpha / (3 L)
    std::vector<double> per_mode; // Re(i lambda^2) = -Im lambda^2
};

DecayRateReport decay_rate_report(const std::vector<SpectralPoint>& spec,
                                  const GraphParams& p);

// CSV: t,E,E_plus,E_minus,flux_integral,bound_E_plus0_plus_exp
void write_energy_trace_csv(const EnergyTrace& tr, const std::string& path,
                            const std::string& header_comment = "");

} // namespace tadpole
