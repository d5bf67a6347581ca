// core.hpp — Tadpole-graph geometry, sampled functions, quadrature, vertex residuals
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tadpole {

using Complex = std::complex<double>;

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleProximityError : std::runtime_error {
    explicit PoleProximityError(const std::string& factor)
        : std::runtime_error("pole proximity: " + factor), factor(factor) {}
    std::string factor;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TailError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllConditionedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem instance: loop of circumference L attached to a half-line truncated
// at x_max, damping alpha at the vertex, grid steps h1 (half-line) / h2 (loop).
struct GraphParams {
    double L;
    double alpha;
    double x_max;
    double h1;
    double h2;

    // Grid sizes (number of intervals); sample counts are n+1.
    int n1;
    int n2;

    static GraphParams make(double L, double alpha,
                            double x_max = -1.0, double h1 = -1.0, double h2 = -1.0);

    int r1_samples() const { return n1 + 1; }
    int r2_samples() const { return n2 + 1; }
    double r1_x(int i) const { return i * h1; }
    double r2_x(int j) const { return j * h2; }
};

// Complex-valued function sampled on both edges.
struct GraphFunction {
    std::vector<Complex> r1_values; // x = 0, h1, ..., x_max
    std::vector<Complex> r2_values; // x = 0, h2, ..., L

    static GraphFunction zero(const GraphParams& p);
    static GraphFunction sample(const GraphParams& p,
                                const std::function<Complex(double)>& f1,
                                const std::function<Complex(double)>& f2);

    void check_shape(const GraphParams& p) const;

    GraphFunction& axpy(Complex a, const GraphFunction& f); // *this += a*f
    GraphFunction& scale(Complex a);
};

struct VertexResidual {
    Complex continuity_01; // u1(0) - u2(0)
    Complex continuity_0L; // u2(0) - u2(L)
    Complex kirchhoff;     // u1'(0+) + u2'(0+) - u2'(L-) - i*alpha*u1(0)

    double max_abs() const;
};

// Composite Simpson on equispaced samples (odd count preferred; an odd number
// of intervals is closed with one 3/8 panel so the order is preserved).
Complex simpson(const std::vector<Complex>& f, double h);
Complex simpson(const Complex* f, int count, double h);

// Cumulative integral: out[k] = int_0^{x_k} f, 3rd/4th-order local rules.
std::vector<Complex> cumulative_integral(const std::vector<Complex>& f, double h);

// sum over edges of int f * conj(g); conjugate-linear in g.
Complex inner_product(const GraphFunction& f, const GraphFunction& g, const GraphParams& p);
double norm(const GraphFunction& f, const GraphParams& p);

// 2nd-order one-sided derivative residuals of the transmission conditions.
VertexResidual vertex_residuals(const GraphFunction& u, const GraphParams& p);

// CSV round-trip, header `edge,x,re,im`, 17 significant digits.
// `header_comment` (if nonempty) is emitted first as a '#'-prefixed line.
void write_csv(const GraphFunction& f, const GraphParams& p, const std::string& path,
               const std::string& header_comment = "");
GraphFunction read_csv(const std::string& path, const GraphParams& p);

// Fixed low-discrepancy sequence in [0,1)^2 (golden/plastic rotations); used
// for deterministic probe points everywhere.
std::pair<double, double> low_discrepancy_2d(int i);

std::string format_double(double v); // 17 significant digits, locale-free

} // namespace tadpole
