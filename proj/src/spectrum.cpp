#include "tadpole/spectrum.hpp"
#include "tadpole/secular.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace tadpole {

namespace {
const Complex I(0.0, 1.0);
const double kPi = std::numbers::pi;

bool near_lattice(Complex lambda, const GraphParams& p, double tol = 1e-8) {
    if (std::abs(lambda.imag()) > tol) return false;
    double k = lambda.real() * p.L / (2.0 * kPi);
    return std::abs(k - std::llround(k)) * 2.0 * kPi / p.L < tol && std::llround(k) != 0;
}
} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::embedded: return "embedded";
        case Family::damped: return "damped";
        case Family::resonance_candidate: return "resonance_candidate";
    }
    return "?";
}

std::vector<SpectralPoint> embedded_eigenvalues(int kmax, const GraphParams& p) {
    if (kmax < 1) throw DomainError("embedded_eigenvalues: kmax >= 1");
    std::vector<SpectralPoint> out;
    for (int k = 1; k <= kmax; ++k) {
        SpectralPoint pt;
        pt.lambda = Complex(2.0 * k * kPi / p.L, 0.0);
        pt.lambda_sq = pt.lambda * pt.lambda;
        pt.family = Family::embedded;
        pt.index = k;
        pt.seed = pt.lambda;
        pt.residual = std::abs(eval_d(pt.lambda, p));
        out.push_back(pt);
    }
    return out;
}

Complex asymptotic_seed(int n, const GraphParams& p, SeedSign sign) {
    if (n < 1) throw DomainError("asymptotic_seed: n >= 1");
    const double L = p.L, al = p.alpha;
    double s = (sign == SeedSign::plus) ? 1.0 : -1.0;
    Complex l0 = 2.0 * n * kPi / L + s * I * std::log(3.0) / L;
    Complex a = 4.0 * I / (3.0 * L * l0);
    Complex b = 16.0 / (9.0 * L * L * l0 * l0 * l0) - 4.0 * I / (9.0 * L * l0 * l0);
    return l0 + a * al + b * al * al;
}

SpectralPoint refine_root(Complex seed, const GraphParams& p) {
    Complex lam = seed;
    std::string trace;
    for (int it = 0; it < 50; ++it) {
        Complex d = eval_d(lam, p);
        if (std::abs(d) < 1e-12 * (1.0 + std::abs(lam))) {
            SpectralPoint pt;
            pt.lambda = lam;
            pt.lambda_sq = lam * lam;
            pt.residual = std::abs(d);
            pt.seed = seed;
            pt.duplicate_of_embedded = near_lattice(lam, p);
            Complex T = std::exp(I * lam * p.L);
            if (pt.duplicate_of_embedded)
                pt.family = Family::embedded;
            else if (lam.imag() > 0.0 && std::abs(T - 1.0) > 1e-8)
                pt.family = Family::damped;
            else
                pt.family = Family::resonance_candidate;
            return pt;
        }
        Complex dp = eval_d_prime(lam, p);
        if (std::abs(dp) < 1e-300) throw ConvergenceError("refine_root: vanishing d'");
        Complex step = d / dp;
        // Keep Newton from leaping across the spectrum at early iterations.
        double cap = 2.0 * kPi / p.L;
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        lam -= step;
        trace += " " + format_double(lam.real()) + (lam.imag() < 0 ? "-" : "+") +
                 format_double(std::abs(lam.imag())) + "i";
    }
    throw ConvergenceError("refine_root: no convergence after 50 iterations; trace:" + trace);
}

namespace {
// Adaptive trapezoid of d'/d along the straight segment [a, b].
Complex logderiv_segment(Complex a, Complex b, const GraphParams& p, int depth) {
    Complex da = eval_d(a, p), db = eval_d(b, p);
    if (std::abs(da) < 1e-8 || std::abs(db) < 1e-8)
        throw ConvergenceError("count_roots_rectangle: contour too close to a root");
    Complex fa = eval_d_prime(a, p) / da;
    Complex fb = eval_d_prime(b, p) / db;
    Complex coarse = 0.5 * (fa + fb) * (b - a);
    // Phase must not wrap within one panel; also require trapezoid agreement.
    double dphase = std::abs(std::arg(db / da));
    if (depth > 0 && (dphase > 0.5 || std::abs(coarse) > 0.25)) {
        Complex m = 0.5 * (a + b);
        return logderiv_segment(a, m, p, depth - 1) + logderiv_segment(m, b, p, depth - 1);
    }
    if (depth > 0) {
        Complex m = 0.5 * (a + b);
        Complex fine = logderiv_segment(a, m, p, 0) + logderiv_segment(m, b, p, 0);
        if (std::abs(fine - coarse) > 1e-5)
            return logderiv_segment(a, m, p, depth - 1) + logderiv_segment(m, b, p, depth - 1);
        return fine;
    }
    return coarse;
}
} // namespace

RootCertificate count_roots_rectangle(double re_lo, double re_hi,
                                      double im_lo, double im_hi,
                                      const GraphParams& p) {
    RootCertificate cert;
    cert.re_lo = re_lo;
    cert.re_hi = re_hi;
    cert.im_lo = im_lo;
    cert.im_hi = im_hi;
    Complex c1(re_lo, im_lo), c2(re_hi, im_lo), c3(re_hi, im_hi), c4(re_lo, im_hi);
    Complex total = logderiv_segment(c1, c2, p, 28) + logderiv_segment(c2, c3, p, 28) +
                    logderiv_segment(c3, c4, p, 28) + logderiv_segment(c4, c1, p, 28);
    double winding = (total / (2.0 * kPi * I)).real();
    long w = std::llround(winding);
    if (std::abs(winding - w) > 1e-3)
        throw ConvergenceError("count_roots_rectangle: winding not integral: " +
                               format_double(winding));
    cert.winding_count = static_cast<int>(w);
    return cert;
}

std::vector<SpectralPoint> disk_eigenvalue_search(const GraphParams& p) {
    std::vector<SpectralPoint> found;
    if (p.alpha <= 0.0) return found;
    const double r0 = p.alpha / 2.0;
    for (int i = 0; i < 24; ++i) {
        auto [u, v] = low_discrepancy_2d(i);
        double r = r0 * (0.15 + 0.8 * u);
        double th = 2.0 * kPi * v;
        Complex start = Complex(r0, 0.0) + r * Complex(std::cos(th), std::sin(th));
        if (start.imag() <= 1e-6) continue;
        SpectralPoint pt;
        try {
            pt = refine_root(start, p);
        } catch (const ConvergenceError&) {
            continue;
        } catch (const SingularityError&) {
            continue;
        }
        if (pt.lambda.imag() <= 1e-6) continue;
        if (std::abs(pt.lambda - r0) >= r0 * (1.0 - 1e-6)) continue; // strictly inside
        if (pt.duplicate_of_embedded) continue;
        // the double root lambda = alpha sits on the disk boundary; Newton
        // approaches it only linearly, so reject a whole neighborhood
        if (std::abs(pt.lambda - p.alpha) < 1e-4) continue;
        bool dup = false;
        for (const auto& q : found)
            if (std::abs(q.lambda - pt.lambda) < 1e-8) dup = true;
        if (!dup) {
            pt.family = Family::damped;
            pt.index = 0;
            found.push_back(pt);
        }
    }
    std::sort(found.begin(), found.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
        return a.lambda.real() < b.lambda.real();
    });
    return found;
}

std::vector<SpectralPoint> point_spectrum(int nmax, const GraphParams& p) {
    if (nmax < 1) throw DomainError("point_spectrum: nmax >= 1");
    std::vector<SpectralPoint> out = embedded_eigenvalues(nmax, p);

    for (int n = 1; n <= nmax; ++n) {
        std::vector<SpectralPoint> cands;
        for (SeedSign s : {SeedSign::plus, SeedSign::minus}) {
            try {
                SpectralPoint pt = refine_root(asymptotic_seed(n, p, s), p);
                pt.index = n;
                cands.push_back(pt);
            } catch (const ConvergenceError&) {
                // branch did not converge; the other seed decides
            }
        }
        if (cands.empty())
            throw ConvergenceError("point_spectrum: no seed converged for n = " +
                                   std::to_string(n));
        // Prefer a genuine family root over a Newton landing on the lattice;
        // when both land on the lattice the family root IS the (double) root.
        std::vector<SpectralPoint> fam;
        for (const auto& c : cands)
            if (!c.duplicate_of_embedded) fam.push_back(c);
        SpectralPoint chosen = fam.empty() ? cands.front() : fam.front();
        if (!fam.empty()) {
            for (size_t i = 1; i < fam.size(); ++i)
                if (std::abs(fam[i].lambda - chosen.lambda) > 1e-8 &&
                    fam[i].lambda.imag() < chosen.lambda.imag())
                    chosen = fam[i]; // deterministic pick: lower half-plane family
        }
        if (chosen.duplicate_of_embedded) chosen.family = Family::resonance_candidate;
        bool dup = false;
        for (const auto& q : out)
            if (q.family != Family::embedded && std::abs(q.lambda - chosen.lambda) < 1e-8)
                dup = true;
        if (!dup) out.push_back(chosen);
    }

    for (auto pt : disk_eigenvalue_search(p)) {
        bool dup = false;
        for (const auto& q : out)
            if (q.family != Family::embedded && std::abs(q.lambda - pt.lambda) < 1e-8)
                dup = true;
        if (!dup) out.push_back(pt);
    }

    std::sort(out.begin(), out.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
        if (a.family != b.family) return static_cast<int>(a.family) < static_cast<int>(b.family);
        if (a.index != b.index) return a.index < b.index;
        return a.lambda.real() < b.lambda.real();
    });
    return out;
}

Complex prop24_lambda_sq(int n, const GraphParams& p, SeedSign sign) {
    const double L = p.L;
    double ln3 = std::log(3.0);
    double s = (sign == SeedSign::plus) ? 1.0 : -1.0;
    return Complex(4.0 * kPi * kPi * n * n / (L * L) - ln3 * ln3 / (L * L), 0.0) +
           I * (8.0 * p.alpha / (3.0 * L) + s * 4.0 * kPi * ln3 * n / (L * L));
}

Complex lambda_prime_formula(Complex lambda, const GraphParams& p) {
    const double L = p.L, al = p.alpha;
    return 4.0 * I * lambda /
           (3.0 * L * lambda * lambda + 2.0 * al * L * lambda - al * al * L + 4.0 * I * al);
}

void write_spectrum_csv(const std::vector<SpectralPoint>& pts, const std::string& path,
                        const std::string& header_comment) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "family,index,re_lambda,im_lambda,re_lambda_sq,im_lambda_sq,residual,re_seed,im_seed\n";
    for (const auto& pt : pts) {
        os << family_name(pt.family) << ',' << pt.index << ','
           << format_double(pt.lambda.real()) << ',' << format_double(pt.lambda.imag()) << ','
           << format_double(pt.lambda_sq.real()) << ',' << format_double(pt.lambda_sq.imag())
           << ',' << format_double(pt.residual) << ',' << format_double(pt.seed.real()) << ','
           << format_double(pt.seed.imag()) << "\n";
    }
}

void write_figure2_csv(const std::string& path, double L,
                       const std::vector<double>& alphas, int nmax,
                       const std::string& header_comment) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "alpha,n,re_lambda,im_lambda,re_i_lambda_sq,ref_re_i_lambda_sq\n";
    for (double al : alphas) {
        GraphParams p = GraphParams::make(L, al);
        double ref = -8.0 * al / (3.0 * L);
        for (int n = 1; n <= nmax; ++n) {
            SpectralPoint pt = refine_root(asymptotic_seed(n, p, SeedSign::minus), p);
            double re_i = -(pt.lambda * pt.lambda).imag();
            os << format_double(al) << ',' << n << ',' << format_double(pt.lambda.real())
               << ',' << format_double(pt.lambda.imag()) << ',' << format_double(re_i)
               << ',' << format_double(ref) << "\n";
        }
    }
}

} // namespace tadpole
