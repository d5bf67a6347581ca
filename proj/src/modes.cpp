#include "tadpole/modes.hpp"
#include "tadpole/secular.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <fstream>
#include <numbers>

#include "json.hpp"

namespace tadpole {

namespace {
const Complex I(0.0, 1.0);
const double kPi = std::numbers::pi;
} // namespace

Complex ModeFunction::eval_r1(double x) const { return A1 * std::exp(I * lambda * x); }

Complex ModeFunction::eval_r2(double x) const {
    return A2 * std::exp(I * lambda * x) + B2 * std::exp(-I * lambda * x);
}

GraphFunction ModeFunction::sampled(const GraphParams& p) const {
    return GraphFunction::sample(
        p, [&](double x) { return eval_r1(x); }, [&](double x) { return eval_r2(x); });
}

ModeFunction build_confined_mode(int k, const GraphParams& p) {
    if (k < 1) throw DomainError("build_confined_mode: k >= 1");
    ModeFunction m;
    m.lambda = Complex(2.0 * k * kPi / p.L, 0.0);
    m.norm_const = std::sqrt(2.0 / p.L);
    m.A1 = Complex(0.0, 0.0);
    m.A2 = m.norm_const / (2.0 * I); // sqrt(2/L) sin(lambda x)
    m.B2 = -m.A2;
    m.family = Family::embedded;
    m.index = k;
    m.normalized_over = NormDomain::full_halfline;
    return m;
}

Complex exp_pair_inner(Complex a, Complex b, double L) {
    Complex mu = a - std::conj(b);
    if (std::abs(mu) < 1e-14) return Complex(L, 0.0);
    return (std::exp(I * mu * L) - 1.0) / (I * mu);
}

namespace {
// int_0^X e^{-2 Im(lambda) x} dx (X may be infinite for Im lambda > 0)
double halfline_weight(Complex lambda, double x_max, NormDomain dom) {
    double two_mu = 2.0 * lambda.imag();
    if (dom == NormDomain::full_halfline) return 1.0 / two_mu;
    if (std::abs(two_mu) < 1e-14) return x_max;
    return (1.0 - std::exp(-two_mu * x_max)) / two_mu;
}

double r2_norm_sq(const ModeFunction& m, double L) {
    Complex total = m.A2 * std::conj(m.A2) * exp_pair_inner(m.lambda, m.lambda, L) +
                    m.A2 * std::conj(m.B2) * exp_pair_inner(m.lambda, -m.lambda, L) +
                    m.B2 * std::conj(m.A2) * exp_pair_inner(-m.lambda, m.lambda, L) +
                    m.B2 * std::conj(m.B2) * exp_pair_inner(-m.lambda, -m.lambda, L);
    return total.real();
}
} // namespace

ModeFunction build_damped_mode(const SpectralPoint& point, const GraphParams& p) {
    if (point.family == Family::embedded)
        throw DomainError("build_damped_mode: embedded point; use build_confined_mode");
    Complex lam = point.lambda;
    if (std::abs(lam) < 1e-14) throw SingularityError("mode at lambda = 0");
    if (std::abs(lam + p.alpha) < 1e-14) throw PoleProximityError("lambda = -alpha");

    ModeFunction m;
    m.lambda = lam;
    m.family = point.family;
    m.index = point.index;
    m.normalized_over =
        (lam.imag() > 0.0) ? NormDomain::full_halfline : NormDomain::truncated;
    m.A2 = Complex(1.0, 0.0);
    m.B2 = (3.0 * lam - p.alpha) / (lam + p.alpha);
    m.A1 = 4.0 * lam / (lam + p.alpha);

    double n2 = r2_norm_sq(m, p.L);
    double n1 = std::norm(m.A1) * halfline_weight(lam, p.x_max, m.normalized_over);
    double c = 1.0 / std::sqrt(n1 + n2);
    m.norm_const = Complex(c, 0.0);
    m.A1 *= c;
    m.A2 *= c;
    m.B2 *= c;
    return m;
}

GramMatrix gram_matrix(const std::vector<ModeFunction>& modes, GramSegment segment,
                       const GraphParams& p) {
    if (modes.empty()) throw ShapeError("gram_matrix: empty mode list");
    const int n = static_cast<int>(modes.size());
    GramMatrix G;
    G.segment = segment;
    G.entries.resize(n, n);
    for (const auto& m : modes) G.indices.push_back(m.index);

    std::vector<std::vector<Complex>> r2(n), r1(n);
    for (int i = 0; i < n; ++i) {
        r2[i].resize(p.r2_samples());
        for (int j = 0; j <= p.n2; ++j) r2[i][j] = modes[i].eval_r2(p.r2_x(j));
        if (segment == GramSegment::full_graph) {
            r1[i].resize(p.r1_samples());
            for (int j = 0; j <= p.n1; ++j) r1[i][j] = modes[i].eval_r1(p.r1_x(j));
        }
    }
    std::vector<Complex> prod;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            prod.resize(r2[a].size());
            for (size_t j = 0; j < prod.size(); ++j)
                prod[j] = r2[a][j] * std::conj(r2[b][j]);
            Complex g = simpson(prod, p.h2);
            if (segment == GramSegment::full_graph) {
                prod.resize(r1[a].size());
                for (size_t j = 0; j < prod.size(); ++j)
                    prod[j] = r1[a][j] * std::conj(r1[b][j]);
                g += simpson(prod, p.h1);
            }
            G.entries(a, b) = g;
            G.entries(b, a) = std::conj(g);
        }
    return G;
}

GramMatrix gram_matrix_closed_form(const std::vector<ModeFunction>& modes,
                                   const GraphParams& p) {
    if (modes.empty()) throw ShapeError("gram_matrix_closed_form: empty mode list");
    const int n = static_cast<int>(modes.size());
    GramMatrix G;
    G.segment = GramSegment::r2_only;
    G.entries.resize(n, n);
    for (const auto& m : modes) G.indices.push_back(m.index);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            const ModeFunction &u = modes[a], &v = modes[b];
            Complex g =
                u.A2 * std::conj(v.A2) * exp_pair_inner(u.lambda, v.lambda, p.L) +
                u.A2 * std::conj(v.B2) * exp_pair_inner(u.lambda, -v.lambda, p.L) +
                u.B2 * std::conj(v.A2) * exp_pair_inner(-u.lambda, v.lambda, p.L) +
                u.B2 * std::conj(v.B2) * exp_pair_inner(-u.lambda, -v.lambda, p.L);
            G.entries(a, b) = g;
            G.entries(b, a) = std::conj(g);
        }
    return G;
}

RieszDiagnostics riesz_diagnostics(const GramMatrix& G) {
    const int n = static_cast<int>(G.entries.rows());
    RieszDiagnostics d{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            int ia = G.indices.empty() ? a + 1 : G.indices[a];
            int ib = G.indices.empty() ? b + 1 : G.indices[b];
            double bracket = std::sqrt(1.0 + double(std::min(ia, ib)) * std::min(ia, ib));
            double val = std::abs(G.entries(a, b)) * bracket * std::abs(ia - ib);
            d.fitted_C = std::max(d.fitted_C, val);
        }
    Eigen::MatrixXcd H = 0.5 * (G.entries + G.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    d.min_eig = es.eigenvalues().minCoeff();
    d.max_eig = es.eigenvalues().maxCoeff();
    return d;
}

Projection project_pp_plus(const GraphFunction& f, int kmax, const GraphParams& p) {
    if (kmax < 1) throw DomainError("project_pp_plus: kmax >= 1");
    f.check_shape(p);
    Projection out;
    out.remainder = f;
    for (int k = 1; k <= kmax; ++k) {
        GraphFunction phi = build_confined_mode(k, p).sampled(p);
        Complex c = inner_product(f, phi, p);
        out.coeffs.push_back(c);
        out.remainder.axpy(-c, phi);
    }
    return out;
}

Expansion expand_damped(const GraphFunction& f, const std::vector<ModeFunction>& modes,
                        const GraphParams& p) {
    GramMatrix G = gram_matrix(modes, GramSegment::full_graph, p);
    Eigen::MatrixXcd H = 0.5 * (G.entries + G.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (lo <= 1e-8) throw IllConditionedError("expand_damped: Gram min eigenvalue <= 1e-8");
    if (hi / lo > 1e12) throw IllConditionedError("expand_damped: Gram condition > 1e12");

    const int n = static_cast<int>(modes.size());
    Eigen::VectorXcd b(n);
    std::vector<GraphFunction> sampled;
    for (int i = 0; i < n; ++i) {
        sampled.push_back(modes[i].sampled(p));
        b(i) = inner_product(f, sampled[i], p);
    }
    // sum_j c_j <psi_j, psi_i> = <f, psi_i>: the system matrix is G^T
    Eigen::VectorXcd c = G.entries.transpose().fullPivLu().solve(b).eval();
    Expansion out;
    GraphFunction recon = f;
    for (int i = 0; i < n; ++i) {
        out.coeffs.push_back(c(i));
        recon.axpy(-c(i), sampled[i]);
    }
    out.residual = norm(recon, p);
    return out;
}

GraphFunction generalized_mode_at_double_root(const SpectralPoint& point,
                                              const GraphParams& p) {
    Complex mu = point.lambda_sq;
    DiscreteOperator op = build_discrete_operator(p, Closure::dirichlet);
    auto pairs = oracle_eigenpairs(op, mu, 2);
    if (pairs.empty())
        throw ConvergenceError("generalized mode: no discrete eigenvalue near lambda^2");
    Eigen::VectorXcd v0 = op.pack(pairs.front().mode);
    v0 /= op.m_norm(v0);

    int k = static_cast<int>(std::llround(point.lambda.real() * p.L / (2.0 * kPi)));
    if (k < 1) k = 1;
    Eigen::VectorXcd psi = op.pack(build_confined_mode(k, p).sampled(p));

    // Remove the non-solvable near-null component, deflate, solve.
    Complex proj = op.m_dot(psi, v0);
    Eigen::VectorXcd rhs_vec = psi - proj * v0;
    Eigen::VectorXcd Mrhs(op.dim), Mv0(op.dim);
    for (int i = 0; i < op.dim; ++i) {
        Mrhs(i) = rhs_vec(i) * op.M(i);
        Mv0(i) = v0(i) * op.M(i);
    }
    Eigen::SparseMatrix<Complex> S = op.K;
    for (int i = 0; i < op.dim; ++i) S.coeffRef(i, i) -= mu * op.M(i);
    // Rank-one deflation keeps the system away from the near-null direction.
    // Solve (S + Mv0 v0^H M) w = Mrhs via Sherman-Morrison on the sparse LU.
    S.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(S);
    if (lu.info() != Eigen::Success)
        throw ConvergenceError("generalized mode: factorization failed");
    Eigen::VectorXcd s1 = lu.solve(Mrhs);
    Eigen::VectorXcd s2 = lu.solve(Mv0);
    Complex denom = 1.0 + op.m_dot(s2, v0);
    Eigen::VectorXcd w = s1 - s2 * (op.m_dot(s1, v0) / denom);
    Complex pw = op.m_dot(w, v0);
    w -= pw * v0;
    double nw = op.m_norm(w);
    if (nw > 1e-300) w /= nw;
    return op.unpack(w);
}

void write_mode_json(const ModeFunction& m, const std::string& path) {
    nlohmann::json j;
    j["lambda_re"] = m.lambda.real();
    j["lambda_im"] = m.lambda.imag();
    j["A1"] = {m.A1.real(), m.A1.imag()};
    j["A2"] = {m.A2.real(), m.A2.imag()};
    j["B2"] = {m.B2.real(), m.B2.imag()};
    j["norm_const"] = {m.norm_const.real(), m.norm_const.imag()};
    j["family"] = family_name(m.family);
    j["normalized_over"] =
        m.normalized_over == NormDomain::full_halfline ? "full_halfline" : "truncated";
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    os << j.dump(2) << "\n";
}

} // namespace tadpole
