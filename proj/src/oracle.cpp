#include "tadpole/oracle.hpp"

#include <Eigen/SparseLU>

#include <cmath>

namespace tadpole {

namespace {
const Complex I(0.0, 1.0);
using SpMat = Eigen::SparseMatrix<Complex>;
using Vec = Eigen::VectorXcd;
} // namespace

Eigen::VectorXcd DiscreteOperator::pack(const GraphFunction& f) const {
    f.check_shape(params);
    Vec v(dim);
    v(0) = f.r1_values[0];
    for (int i = 1; i < params.n1; ++i) v(i) = f.r1_values[i];
    for (int j = 1; j < params.n2; ++j) v(params.n1 - 1 + j) = f.r2_values[j];
    return v;
}

GraphFunction DiscreteOperator::unpack(const Eigen::VectorXcd& v) const {
    GraphFunction f = GraphFunction::zero(params);
    f.r1_values[0] = v(0);
    for (int i = 1; i < params.n1; ++i) f.r1_values[i] = v(i);
    f.r1_values[params.n1] = Complex(0.0, 0.0); // Dirichlet closure at x_max
    f.r2_values[0] = v(0);
    for (int j = 1; j < params.n2; ++j) f.r2_values[j] = v(params.n1 - 1 + j);
    f.r2_values[params.n2] = v(0);
    return f;
}

Complex DiscreteOperator::m_dot(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) const {
    Complex s(0.0, 0.0);
    for (int i = 0; i < dim; ++i) s += a(i) * std::conj(b(i)) * M(i);
    return s;
}

double DiscreteOperator::m_norm(const Eigen::VectorXcd& a) const {
    return std::sqrt(std::max(0.0, m_dot(a, a).real()));
}

Eigen::VectorXcd DiscreteOperator::apply(const Eigen::VectorXcd& v) const {
    Vec w = K * v;
    for (int i = 0; i < dim; ++i) w(i) /= M(i);
    return w;
}

DiscreteOperator build_discrete_operator(const GraphParams& p, Closure closure,
                                         double layer_strength) {
    DiscreteOperator op;
    op.params = p;
    op.closure = closure;
    op.dim = p.n1 + p.n2 - 1;
    op.vertex_index = 0;

    const double h1 = p.h1, h2 = p.h2;
    std::vector<Eigen::Triplet<Complex>> trip;
    op.M = Eigen::VectorXd::Zero(op.dim);

    auto add = [&](int r, int c, Complex v) { trip.emplace_back(r, c, v); };
    auto r1 = [&](int i) { return i; };                  // i = 1..n1-1
    auto r2 = [&](int j) { return p.n1 - 1 + j; };       // j = 1..n2-1
    const int V = 0;

    // Vertex row: flux balance of the three incident elements + damping.
    op.M(V) = (h1 + 2.0 * h2) / 2.0;
    add(V, V, Complex(1.0 / h1 + 2.0 / h2, p.alpha));
    add(V, r1(1), Complex(-1.0 / h1, 0.0));
    add(V, r2(1), Complex(-1.0 / h2, 0.0));
    add(V, r2(p.n2 - 1), Complex(-1.0 / h2, 0.0));

    // R1 interior (Dirichlet at x_max: last sample eliminated).
    for (int i = 1; i < p.n1; ++i) {
        op.M(r1(i)) = h1;
        add(r1(i), r1(i), Complex(2.0 / h1, 0.0));
        if (i > 1) add(r1(i), r1(i - 1), Complex(-1.0 / h1, 0.0));
        else add(r1(i), V, Complex(-1.0 / h1, 0.0));
        if (i < p.n1 - 1) add(r1(i), r1(i + 1), Complex(-1.0 / h1, 0.0));
    }

    // R2 interior; both loop ends couple to the vertex.
    for (int j = 1; j < p.n2; ++j) {
        op.M(r2(j)) = h2;
        add(r2(j), r2(j), Complex(2.0 / h2, 0.0));
        if (j > 1) add(r2(j), r2(j - 1), Complex(-1.0 / h2, 0.0));
        else add(r2(j), V, Complex(-1.0 / h2, 0.0));
        if (j < p.n2 - 1) add(r2(j), r2(j + 1), Complex(-1.0 / h2, 0.0));
        else add(r2(j), V, Complex(-1.0 / h2, 0.0));
    }

    if (closure == Closure::absorbing_layer) {
        // Quartic complex ramp -iW on the last 25% of R1.
        double x0 = 0.75 * p.x_max;
        double width = p.x_max - x0;
        for (int i = 1; i < p.n1; ++i) {
            double x = i * h1;
            if (x > x0) {
                double s = (x - x0) / width;
                double W = layer_strength * s * s * s * s;
                add(r1(i), r1(i), Complex(0.0, -W) * h1); // K += M * (-iW)
            }
        }
    }

    op.K = SpMat(op.dim, op.dim);
    op.K.setFromTriplets(trip.begin(), trip.end());
    return op;
}

std::vector<OracleEigenpair> oracle_eigenpairs(const DiscreteOperator& op,
                                               Complex shift, int count) {
    const int m = std::min(op.dim, count + 4);
    SpMat S = op.K;
    for (int i = 0; i < op.dim; ++i) S.coeffRef(i, i) -= shift * op.M(i);
    S.makeCompressed();
    Eigen::SparseLU<SpMat> lu;
    lu.compute(S);
    if (lu.info() != Eigen::Success)
        throw ConvergenceError("oracle_eigenpairs: factorization failed (shift hits spectrum?)");

    // Deterministic initial block.
    Eigen::MatrixXcd Vb(op.dim, m);
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < op.dim; ++i) {
            auto [a, b] = low_discrepancy_2d(i * m + c);
            Vb(i, c) = Complex(a - 0.5, b - 0.5);
        }

    auto orthonormalize = [&](Eigen::MatrixXcd& W) {
        for (int c = 0; c < W.cols(); ++c) {
            for (int rep = 0; rep < 2; ++rep)
                for (int k = 0; k < c; ++k) {
                    Complex proj = op.m_dot(W.col(c), W.col(k));
                    W.col(c) -= proj * W.col(k);
                }
            double nrm = op.m_norm(W.col(c));
            if (nrm < 1e-300) nrm = 1.0;
            W.col(c) /= nrm;
        }
    };
    orthonormalize(Vb);

    Eigen::VectorXcd prev = Eigen::VectorXcd::Zero(m);
    for (int it = 0; it < 400; ++it) {
        Eigen::MatrixXcd W(op.dim, m);
        for (int c = 0; c < m; ++c) {
            Vec rhs = Vb.col(c);
            for (int i = 0; i < op.dim; ++i) rhs(i) *= op.M(i);
            W.col(c) = lu.solve(rhs);
        }
        orthonormalize(W);
        Vb = W;

        // Ritz values of A = M^{-1}K on the subspace.
        Eigen::MatrixXcd P(m, m);
        for (int c = 0; c < m; ++c) {
            Vec Av = op.apply(Vb.col(c));
            for (int r = 0; r < m; ++r) P(r, c) = op.m_dot(Av, Vb.col(r));
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(P);
        Eigen::VectorXcd theta = es.eigenvalues();
        std::sort(theta.data(), theta.data() + m, [&](Complex a, Complex b) {
            return std::abs(a - shift) < std::abs(b - shift);
        });
        double change = 0.0;
        for (int c = 0; c < m; ++c)
            change = std::max(change, std::abs(theta(c) - prev(c)) / (1.0 + std::abs(theta(c))));
        prev = theta;
        if (it > 4 && change < 1e-12) break;
    }

    // Final Ritz extraction with eigenvectors.
    Eigen::MatrixXcd P(m, m);
    for (int c = 0; c < m; ++c) {
        Vec Av = op.apply(Vb.col(c));
        for (int r = 0; r < m; ++r) P(r, c) = op.m_dot(Av, Vb.col(r));
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(P);

    std::vector<OracleEigenpair> pairs;
    for (int c = 0; c < m; ++c) {
        Vec v = Vb * es.eigenvectors().col(c);
        double nrm = op.m_norm(v);
        if (nrm < 1e-300) continue;
        v /= nrm;
        Complex mu = es.eigenvalues()(c);
        Vec r = op.apply(v) - mu * v;
        OracleEigenpair pr;
        pr.mu = mu;
        pr.residual = op.m_norm(r);
        double r1_mass = 0.0, total = 0.0;
        for (int i = 0; i < op.dim; ++i) {
            double w = op.M(i) * std::norm(v(i));
            total += w;
            if (i >= 1 && i < op.params.n1) r1_mass += w;
        }
        pr.r1_mass = r1_mass / total;
        pr.mode = op.unpack(v);
        pairs.push_back(pr);
    }
    std::sort(pairs.begin(), pairs.end(), [&](const OracleEigenpair& a, const OracleEigenpair& b) {
        return std::abs(a.mu - shift) < std::abs(b.mu - shift);
    });
    std::vector<OracleEigenpair> out;
    for (const auto& pr : pairs) {
        if (pr.residual < 1e-8 && static_cast<int>(out.size()) < count) out.push_back(pr);
    }
    return out;
}

EvolveResult oracle_evolve(const DiscreteOperator& op, const GraphFunction& u0,
                           double dt, int steps, int store_stride) {
    if (!(dt > 0.0)) throw DomainError("oracle_evolve: dt > 0");
    SpMat Aminus = op.K, Aplus = op.K;
    Aminus *= Complex(0.0, -0.5 * dt);
    Aplus *= Complex(0.0, 0.5 * dt);
    for (int i = 0; i < op.dim; ++i) {
        Aminus.coeffRef(i, i) += op.M(i);
        Aplus.coeffRef(i, i) += op.M(i);
    }
    Aminus.makeCompressed();
    Eigen::SparseLU<SpMat> lu;
    lu.compute(Aminus);
    if (lu.info() != Eigen::Success)
        throw ConvergenceError("oracle_evolve: Crank-Nicolson factorization failed");

    Vec u = op.pack(u0);
    EvolveResult res;
    res.dt = dt;
    res.norms.push_back(op.m_norm(u));
    res.vertex_trace.push_back(u(op.vertex_index));
    if (store_stride > 0) res.states.push_back(op.unpack(u));
    for (int n = 1; n <= steps; ++n) {
        Vec rhs = Aplus * u;
        u = lu.solve(rhs);
        res.norms.push_back(op.m_norm(u));
        res.vertex_trace.push_back(u(op.vertex_index));
        if (store_stride > 0 && (n % store_stride == 0)) res.states.push_back(op.unpack(u));
    }
    if (store_stride == 0) res.states.push_back(op.unpack(u));
    return res;
}

double energy_identity_check(const EvolveResult& trace, double alpha) {
    const double n0 = trace.norms.front();
    double flux = 0.0, worst = 0.0;
    for (size_t n = 1; n < trace.norms.size(); ++n) {
        flux += 0.5 * trace.dt *
                (std::norm(trace.vertex_trace[n - 1]) + std::norm(trace.vertex_trace[n]));
        double resid = trace.norms[n] * trace.norms[n] - n0 * n0 + 2.0 * alpha * flux;
        worst = std::max(worst, std::abs(resid) / (n0 * n0));
    }
    return worst;
}

namespace {
double bump(double s) {
    // chi = 1 on |s| <= 1/2, 0 on |s| >= 1, quintic smoothstep between.
    double a = std::abs(s);
    if (a <= 0.5) return 1.0;
    if (a >= 1.0) return 0.0;
    double t = 2.0 * a - 1.0;
    return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}
} // namespace

WeylPacket build_weyl_packet(const DiscreteOperator& op, double lambda_abs, int n) {
    const GraphParams& p = op.params;
    if (2.0 * n >= p.x_max)
        throw TailError("weyl packet: 2n must be below x_max");
    WeylPacket pk;
    pk.lambda_abs = lambda_abs;
    pk.n = n;
    pk.values = GraphFunction::sample(
        p,
        [&](double x) {
            return std::exp(I * lambda_abs * x) * (bump(x / n - 1.0) / std::sqrt(double(n)));
        },
        [&](double) { return Complex(0.0, 0.0); });
    pk.norm = op.m_norm(op.pack(pk.values));
    return pk;
}

double weyl_residual(const DiscreteOperator& op, double lambda_abs, int n) {
    WeylPacket pk = build_weyl_packet(op, lambda_abs, n);
    Vec v = op.pack(pk.values);
    Vec r = op.apply(v) - Complex(lambda_abs * lambda_abs, 0.0) * v;
    return op.m_norm(r) / op.m_norm(v);
}

GraphFunction oracle_green_column(const DiscreteOperator& op, Complex z,
                                  bool on_r2, double y) {
    const GraphParams& p = op.params;
    SpMat S = op.K;
    Complex zsq = z * z;
    for (int i = 0; i < op.dim; ++i) S.coeffRef(i, i) -= zsq * op.M(i);
    S.makeCompressed();
    Eigen::SparseLU<SpMat> lu;
    lu.compute(S);
    if (lu.info() != Eigen::Success)
        throw ConvergenceError("oracle_green_column: factorization failed");
    Vec rhs = Vec::Zero(op.dim);
    int node;
    if (on_r2) {
        int j = static_cast<int>(std::llround(y / p.h2));
        if (j < 1 || j >= p.n2) throw DomainError("green column: y not interior on R2");
        node = p.n1 - 1 + j;
    } else {
        int i = static_cast<int>(std::llround(y / p.h1));
        if (i < 1 || i >= p.n1) throw DomainError("green column: y not interior on R1");
        node = i;
    }
    rhs(node) = Complex(1.0, 0.0); // K is h-scaled, so e_node ~ delta * h
    Vec u = lu.solve(rhs);
    return op.unpack(u);
}

RootAdjudication adjudicate_root(Complex lambda, const GraphParams& p, Closure closure) {
    DiscreteOperator op = build_discrete_operator(p, closure);
    Complex target = lambda * lambda;
    auto pairs = oracle_eigenpairs(op, target, 6);
    RootAdjudication adj;
    adj.root = lambda;
    adj.closure = closure;
    adj.h1 = p.h1;
    adj.h2 = p.h2;
    if (pairs.empty()) {
        adj.oracle_mu = Complex(0.0, 0.0);
        adj.distance = std::numeric_limits<double>::infinity();
        adj.verdict = "unresolved";
        return adj;
    }
    adj.oracle_mu = pairs.front().mu;
    adj.distance = std::abs(adj.oracle_mu - target);
    double scale = 1.0 + std::abs(target);
    // O(h^2) + truncation budget; decaying mode required for confirmation.
    double budget = 50.0 * (p.h2 * p.h2 + p.h1 * p.h1) * scale + 1e-6;
    const GraphFunction& mode = pairs.front().mode;
    double head = 0.0, tail = 0.0;
    int nh = static_cast<int>(mode.r1_values.size());
    for (int i = 0; i < nh / 2; ++i) head += std::norm(mode.r1_values[i]);
    for (int i = nh / 2; i < nh; ++i) tail += std::norm(mode.r1_values[i]);
    bool decaying = pairs.front().r1_mass < 1e-10 || tail < 0.05 * (head + tail);
    if (adj.distance < budget && decaying)
        adj.verdict = "confirmed";
    else if (adj.distance > 10.0 * budget)
        adj.verdict = "refuted";
    else
        adj.verdict = "unresolved";
    return adj;
}

} // namespace tadpole
