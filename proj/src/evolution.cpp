#include "tadpole/evolution.hpp"

#include <cmath>
#include <fstream>

namespace tadpole {

namespace {
const Complex I(0.0, 1.0);

std::vector<ModeFunction> all_modes(const ModalBasis& b) {
    std::vector<ModeFunction> out = b.confined;
    out.insert(out.end(), b.damped.begin(), b.damped.end());
    return out;
}
} // namespace

ModalBasis build_modal_basis(const std::vector<SpectralPoint>& spec, const GraphParams& p) {
    ModalBasis basis;
    for (const auto& pt : spec) {
        if (pt.family == Family::embedded) {
            basis.confined.push_back(build_confined_mode(pt.index, p));
        } else if (pt.family == Family::damped) {
            if (!(pt.lambda_sq.imag() > 0.0))
                throw DomainError("modal basis: damped mode with Im lambda^2 <= 0");
            basis.damped.push_back(build_damped_mode(pt, p));
        } else {
            throw DomainError("modal basis: resonance candidates are not admissible");
        }
    }
    return basis;
}

ModalCoefficients expand_modal(const GraphFunction& u0, const ModalBasis& basis,
                               const GraphParams& p) {
    std::vector<ModeFunction> modes = all_modes(basis);
    if (modes.empty()) throw DomainError("expand_modal: empty basis");
    Expansion e = expand_damped(u0, modes, p); // joint Gram solve
    ModalCoefficients mc;
    mc.residual = e.residual;
    const size_t np = basis.confined.size();
    mc.c_plus.assign(e.coeffs.begin(), e.coeffs.begin() + np);
    mc.c_minus.assign(e.coeffs.begin() + np, e.coeffs.end());
    return mc;
}

GraphFunction evolve_modal(const GraphFunction& u0, const std::vector<SpectralPoint>& spec,
                           double t, const GraphParams& p) {
    ModalBasis basis = build_modal_basis(spec, p);
    ModalCoefficients mc = expand_modal(u0, basis, p);
    if (mc.residual > 1e-4)
        throw DomainError("evolve_modal: u0 out of modal span, residual = " +
                          format_double(mc.residual));
    GraphFunction u = GraphFunction::zero(p);
    for (size_t k = 0; k < basis.confined.size(); ++k) {
        Complex lam = basis.confined[k].lambda;
        u.axpy(mc.c_plus[k] * std::exp(I * lam * lam * t), basis.confined[k].sampled(p));
    }
    for (size_t n = 0; n < basis.damped.size(); ++n) {
        Complex lam = basis.damped[n].lambda;
        u.axpy(mc.c_minus[n] * std::exp(I * lam * lam * t), basis.damped[n].sampled(p));
    }
    return u;
}

EnergyTrace energy_trace(const GraphFunction& u0, const std::vector<SpectralPoint>& spec,
                         const std::vector<double>& times, const GraphParams& p) {
    ModalBasis basis = build_modal_basis(spec, p);
    ModalCoefficients mc = expand_modal(u0, basis, p);
    if (mc.residual > 1e-4)
        throw DomainError("energy_trace: u0 out of modal span, residual = " +
                          format_double(mc.residual));

    std::vector<ModeFunction> modes = all_modes(basis);
    GramMatrix G = gram_matrix(modes, GramSegment::full_graph, p);
    const size_t np = basis.confined.size(), nm = basis.damped.size();

    EnergyTrace tr;
    tr.times = times;
    tr.omega_hat = std::numeric_limits<double>::infinity();
    for (const auto& m : basis.damped)
        tr.omega_hat = std::min(tr.omega_hat, (m.lambda * m.lambda).imag());
    if (basis.damped.empty()) tr.omega_hat = 0.0;

    auto coeffs_at = [&](double t) {
        Eigen::VectorXcd c(np + nm);
        for (size_t k = 0; k < np; ++k) {
            Complex lam = basis.confined[k].lambda;
            c(k) = mc.c_plus[k] * std::exp(I * lam * lam * t);
        }
        for (size_t n = 0; n < nm; ++n) {
            Complex lam = basis.damped[n].lambda;
            c(np + n) = mc.c_minus[n] * std::exp(I * lam * lam * t);
        }
        return c;
    };
    auto vertex_value = [&](double t) {
        Complex v(0.0, 0.0);
        for (size_t n = 0; n < nm; ++n) {
            Complex lam = basis.damped[n].lambda;
            v += mc.c_minus[n] * std::exp(I * lam * lam * t) * basis.damped[n].A1;
        }
        return v; // confined modes vanish at the vertex
    };

    double flux = 0.0;
    double prev_t = 0.0;
    for (size_t it = 0; it < times.size(); ++it) {
        double t = times[it];
        Eigen::VectorXcd c = coeffs_at(t);
        Complex total = (c.adjoint() * G.entries * c)(0, 0);
        tr.E.push_back(0.5 * total.real());

        double ep = 0.0;
        for (size_t k = 0; k < np; ++k) ep += 0.5 * std::norm(c(k));
        tr.E_plus.push_back(ep);

        Eigen::VectorXcd cm = c.tail(nm);
        Complex em = nm ? Complex((cm.adjoint() *
                                   G.entries.bottomRightCorner(nm, nm) * cm)(0, 0))
                        : Complex(0.0, 0.0);
        tr.E_minus.push_back(0.5 * em.real());
        double emd = 0.0;
        for (size_t n = 0; n < nm; ++n) emd += 0.5 * std::norm(cm(n));
        tr.E_minus_diag.push_back(emd);

        // flux accumulation: composite Simpson on 8 substeps per interval
        if (it > 0) {
            int sub = 8;
            double h = (t - prev_t) / (2 * sub);
            if (h > 0) {
                std::vector<Complex> vals(2 * sub + 1);
                for (int s = 0; s <= 2 * sub; ++s)
                    vals[s] = std::norm(vertex_value(prev_t + s * h));
                flux += 2.0 * p.alpha * simpson(vals, h).real();
            }
        }
        tr.flux_integral.push_back(flux);
        prev_t = t;
    }
    return tr;
}

DecayRateReport decay_rate_report(const std::vector<SpectralPoint>& spec,
                                  const GraphParams& p) {
    if (spec.empty()) throw DomainError("decay_rate_report: empty spectrum");
    DecayRateReport rep;
    rep.paper_rate = 8.0 * p.alpha / (3.0 * p.L);
    rep.sup_re_i_lambda_sq = -std::numeric_limits<double>::infinity();
    for (const auto& pt : spec) {
        double v = -pt.lambda_sq.imag(); // Re(i lambda^2)
        rep.per_mode.push_back(v);
        if (pt.family != Family::embedded)
            rep.sup_re_i_lambda_sq = std::max(rep.sup_re_i_lambda_sq, v);
    }
    return rep;
}

void write_energy_trace_csv(const EnergyTrace& tr, const std::string& path,
                            const std::string& header_comment) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "t,E,E_plus,E_minus,flux_integral,bound_E_plus0_plus_exp\n";
    for (size_t i = 0; i < tr.times.size(); ++i) {
        double bound = tr.E_plus.empty()
                           ? 0.0
                           : tr.E_plus[0] + std::exp(-2.0 * tr.omega_hat * tr.times[i]) *
                                                (tr.E_minus.empty() ? 0.0 : tr.E_minus[0]);
        os << format_double(tr.times[i]) << ',' << format_double(tr.E[i]) << ','
           << format_double(tr.E_plus[i]) << ',' << format_double(tr.E_minus[i]) << ','
           << format_double(tr.flux_integral[i]) << ',' << format_double(bound) << "\n";
    }
}

} // namespace tadpole
