#include "tadpole/resolvent.hpp"

#include <cmath>
#include <fstream>

namespace tadpole {

namespace {
const Complex I(0.0, 1.0);

void guard_poles(const CoefficientSet& c) {
    if (std::abs(c.X - 1.0) < 1e-8) throw PoleProximityError("X = 1 (embedded family)");
    if (std::abs(c.X - c.omega_c) < 1e-8) throw PoleProximityError("X = omega_c (damped family)");
}
} // namespace

Complex kernel_direct(EdgePoint x, EdgePoint y, const CoefficientSet& c) {
    const Complex iz = I * c.z;
    const Complex pref = 1.0 / (2.0 * c.omega);
    const double a = x.x, b = y.x;
    if (x.edge == Edge::r1 && y.edge == Edge::r1)
        return pref * (std::exp(iz * std::abs(a - b)) - c.F1 * std::exp(iz * (a + b)));
    if (x.edge == Edge::r1 && y.edge == Edge::r2)
        return pref * (c.F2 * std::exp(iz * (a + b)) + c.F3 * std::exp(iz * (a - b)));
    if (x.edge == Edge::r2 && y.edge == Edge::r1)
        return pref * (c.G1 * std::exp(iz * (a + b)) + c.H1 * std::exp(iz * (b - a)));
    return pref * (std::exp(iz * std::abs(a - b)) + c.G2 * std::exp(iz * (a + b)) +
                   c.G3 * std::exp(iz * (a - b)) + c.H2 * std::exp(iz * (b - a)) +
                   c.H3 * std::exp(-iz * (a + b)));
}

Complex kernel_direct(EdgePoint x, EdgePoint y, Complex z, const GraphParams& p) {
    return kernel_direct(x, y, eval_coefficients(z, p));
}

KernelParts KernelDecomposition::eval_printed(EdgePoint x, EdgePoint y, Complex z,
                                              const GraphParams& p) {
    if (x.edge != Edge::r2 || y.edge != Edge::r2)
        throw DomainError("decomposition paths require x, y on R2");
    CoefficientSet c = eval_coefficients(z, p);
    guard_poles(c);
    const Complex iz = I * z;
    const Complex w = c.omega;
    const double al = p.alpha;
    const Complex X = c.X;
    const double a = x.x, b = y.x;
    Complex sx = std::sin(z * a), sy = std::sin(z * b);
    Complex r = (I * al + w) / (I * al - w);

    KernelParts parts;
    parts.x = x;
    parts.y = y;
    parts.z = z;
    parts.total = kernel_direct(x, y, c);
    parts.k_pp_plus = -std::cos(z * p.L / 2.0) / (2.0 * z * std::sin(z * p.L / 2.0)) * sy * sx;
    parts.k_c = -sy * sx / (2.0 * iz) +
                (r * std::exp(-iz * b) * std::exp(iz * a) +
                 2.0 * w / (I * al - w) * (X - 2.0 * (I * al + w) / (I * al - w)) *
                     std::exp(-iz * b) * std::exp(-iz * a)) /
                    (2.0 * iz);
    parts.k_pp_minus =
        (I * X * sy * std::exp(-iz * a) - sy * sx -
         2.0 * (I * al + w) / ((I * al - w) * (I * al - w)) * std::exp(-iz * b) *
             std::exp(iz * a) -
         w * c.A_alpha / (I * al - w) * std::exp(-iz * b) * std::exp(-iz * a)) /
        (iz * (X - c.omega_c));
    return parts;
}

KernelParts KernelDecomposition::eval_rederived(EdgePoint x, EdgePoint y, Complex z,
                                                const GraphParams& p) {
    if (x.edge != Edge::r2 || y.edge != Edge::r2)
        throw DomainError("decomposition paths require x, y on R2");
    CoefficientSet c = eval_coefficients(z, p);
    guard_poles(c);
    const Complex iz = I * z;
    const Complex w = c.omega;
    const double al = p.alpha;
    const double a = x.x, b = y.x;
    Complex sx = std::sin(z * a), sy = std::sin(z * b);

    KernelParts parts;
    parts.x = x;
    parts.y = y;
    parts.z = z;
    parts.total = kernel_direct(x, y, c);
    parts.k_pp_plus = -std::cos(z * p.L / 2.0) / (2.0 * z * std::sin(z * p.L / 2.0)) * sy * sx;
    parts.k_pp_minus = (std::exp(iz * a) + c.omega_c * std::exp(-iz * a)) *
                       (std::exp(iz * b) + c.omega_c * std::exp(-iz * b)) /
                       (4.0 * iz * (c.X - c.omega_c));
    Complex q_c = sx * sy - 2.0 * std::cos(z * (a - b)) -
                  (w + I * al) / (w - I * al) * std::exp(-iz * (a + b));
    parts.k_c = -(std::exp(iz * std::abs(a - b)) + q_c) / (2.0 * iz);
    return parts;
}

KernelDecomposition::KernelDecomposition(const GraphParams& p) : p_(p) {
    double printed_worst = 0.0, rederived_worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto [u, v] = low_discrepancy_2d(i);
        auto [s, t] = low_discrepancy_2d(i + 100);
        EdgePoint x{Edge::r2, (0.1 + 0.8 * u) * p.L};
        EdgePoint y{Edge::r2, (0.1 + 0.8 * v) * p.L};
        Complex z(-0.2 - 1.3 * s, 0.15 + 1.05 * t);
        KernelParts pr = eval_printed(x, y, z, p_);
        KernelParts rd = eval_rederived(x, y, z, p_);
        double scale = 1.0 + std::abs(pr.total);
        printed_worst = std::max(
            printed_worst,
            std::abs(pr.total - (pr.k_c + pr.k_pp_plus + pr.k_pp_minus)) / scale);
        rederived_worst = std::max(
            rederived_worst,
            std::abs(rd.total - (rd.k_c + rd.k_pp_plus + rd.k_pp_minus)) / scale);
    }
    report_.printed_max_err = printed_worst;
    if (printed_worst < 1e-10) {
        report_.path = SplitPath::printed;
        report_.chosen_max_err = printed_worst;
    } else {
        report_.path = SplitPath::rederived;
        report_.chosen_max_err = rederived_worst;
    }
}

KernelParts KernelDecomposition::eval(EdgePoint x, EdgePoint y, Complex z) const {
    if (x.edge != Edge::r2 || y.edge != Edge::r2) {
        KernelParts parts;
        parts.x = x;
        parts.y = y;
        parts.z = z;
        parts.total = kernel_direct(x, y, z, p_);
        parts.k_c = parts.total;
        parts.k_pp_plus = Complex(0.0, 0.0);
        parts.k_pp_minus = Complex(0.0, 0.0);
        return parts;
    }
    return report_.path == SplitPath::printed ? eval_printed(x, y, z, p_)
                                              : eval_rederived(x, y, z, p_);
}

GraphFunction apply_resolvent(const GraphFunction& g, Complex z, const GraphParams& p) {
    g.check_shape(p);
    if (!(z.imag() > 0.0)) throw DomainError("apply_resolvent: need Im z > 0");

    // Tail guard: data must be negligible on the last 2L of the half-line.
    double gmax = 0.0;
    for (const auto& v : g.r1_values) gmax = std::max(gmax, std::abs(v));
    for (const auto& v : g.r2_values) gmax = std::max(gmax, std::abs(v));
    int tail_start = std::max(0, static_cast<int>((p.x_max - 2.0 * p.L) / p.h1));
    for (int i = tail_start; i <= p.n1; ++i)
        if (std::abs(g.r1_values[i]) > 1e-10 * gmax)
            throw TailError("apply_resolvent: data not negligible beyond x_max - 2L");

    CoefficientSet c = eval_coefficients(z, p);
    const Complex iz = I * z;
    const Complex pref = 1.0 / (2.0 * c.omega);

    auto phases = [&](int n, double h) {
        std::vector<Complex> ep(n + 1), em(n + 1);
        for (int i = 0; i <= n; ++i) {
            ep[i] = std::exp(iz * (i * h));
            em[i] = std::exp(-iz * (i * h));
        }
        return std::pair(ep, em);
    };
    auto [ep1, em1] = phases(p.n1, p.h1);
    auto [ep2, em2] = phases(p.n2, p.h2);

    auto weighted = [](const std::vector<Complex>& ph, const std::vector<Complex>& gv) {
        std::vector<Complex> out(gv.size());
        for (size_t i = 0; i < gv.size(); ++i) out[i] = ph[i] * gv[i];
        return out;
    };
    std::vector<Complex> gp1 = weighted(ep1, g.r1_values), gm1 = weighted(em1, g.r1_values);
    std::vector<Complex> gp2 = weighted(ep2, g.r2_values), gm2 = weighted(em2, g.r2_values);

    std::vector<Complex> Cp1 = cumulative_integral(gp1, p.h1);
    std::vector<Complex> Cm1 = cumulative_integral(gm1, p.h1);
    std::vector<Complex> Cp2 = cumulative_integral(gp2, p.h2);
    std::vector<Complex> Cm2 = cumulative_integral(gm2, p.h2);

    const Complex A = Cp1.back();          // int_R1 e^{izy} g1
    const Complex Bp = simpson(gp2, p.h2); // int_R2 e^{izy} g2
    const Complex Bm = simpson(gm2, p.h2); // int_R2 e^{-izy} g2

    GraphFunction u = GraphFunction::zero(p);
    for (int i = 0; i <= p.n1; ++i) {
        Complex conv = ep1[i] * Cm1[i] + em1[i] * (Cp1.back() - Cp1[i]);
        u.r1_values[i] = pref * (conv + ep1[i] * (-c.F1 * A + c.F2 * Bp + c.F3 * Bm));
    }
    for (int j = 0; j <= p.n2; ++j) {
        Complex conv = ep2[j] * Cm2[j] + em2[j] * (Cp2.back() - Cp2[j]);
        u.r2_values[j] = pref * (conv + ep2[j] * (c.G1 * A + c.G2 * Bp + c.G3 * Bm) +
                                 em2[j] * (c.H1 * A + c.H2 * Bp + c.H3 * Bm));
    }
    return u;
}

void write_kernel_slice_csv(const KernelDecomposition& dec, EdgePoint y, Complex z,
                            const GraphParams& p, const std::string& path,
                            const std::string& header_comment) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "edge_x,x,edge_y,y,re_z,im_z,re_K,im_K,re_Kc,im_Kc,re_Kpp_plus,im_Kpp_plus,"
          "re_Kpp_minus,im_Kpp_minus\n";
    auto row = [&](EdgePoint x) {
        KernelParts parts = dec.eval(x, y, z);
        os << (x.edge == Edge::r1 ? "r1" : "r2") << ',' << format_double(x.x) << ','
           << (y.edge == Edge::r1 ? "r1" : "r2") << ',' << format_double(y.x) << ','
           << format_double(z.real()) << ',' << format_double(z.imag()) << ','
           << format_double(parts.total.real()) << ',' << format_double(parts.total.imag())
           << ',' << format_double(parts.k_c.real()) << ',' << format_double(parts.k_c.imag())
           << ',' << format_double(parts.k_pp_plus.real()) << ','
           << format_double(parts.k_pp_plus.imag()) << ','
           << format_double(parts.k_pp_minus.real()) << ','
           << format_double(parts.k_pp_minus.imag()) << "\n";
    };
    for (int i = 0; i <= p.n1; i += std::max(1, p.n1 / 200)) row({Edge::r1, p.r1_x(i)});
    for (int j = 0; j <= p.n2; j += std::max(1, p.n2 / 200)) row({Edge::r2, p.r2_x(j)});
}

} // namespace tadpole
