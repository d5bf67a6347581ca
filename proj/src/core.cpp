#include "tadpole/core.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tadpole {

GraphParams GraphParams::make(double L, double alpha, double x_max, double h1, double h2) {
    if (!(L > 0.0)) throw DomainError("L must be positive");
    if (!(alpha >= 0.0)) throw DomainError("alpha must be nonnegative");
    if (x_max <= 0.0) x_max = 16.0 * L;
    if (h2 <= 0.0) h2 = L / 400.0;
    if (h1 <= 0.0) h1 = L / 200.0;
    if (!(x_max >= 4.0 * L)) throw DomainError("x_max must be >= 4L");

    GraphParams p;
    p.L = L;
    p.alpha = alpha;

    // Loop grid must land exactly on x = L.
    double n2d = L / h2;
    int n2 = static_cast<int>(std::llround(n2d));
    if (n2 < 2 || std::abs(n2d - n2) > 1e-9 * n2d)
        throw DomainError("h2 must divide L");
    if (n2 % 2 != 0) ++n2; // even interval count -> odd sample count
    p.n2 = n2;
    p.h2 = L / n2;

    int n1 = static_cast<int>(std::ceil(x_max / h1));
    if (n1 % 2 != 0) ++n1;
    if (n1 < 2) n1 = 2;
    p.n1 = n1;
    p.h1 = h1;
    p.x_max = n1 * h1;
    return p;
}

GraphFunction GraphFunction::zero(const GraphParams& p) {
    GraphFunction f;
    f.r1_values.assign(p.r1_samples(), Complex(0.0, 0.0));
    f.r2_values.assign(p.r2_samples(), Complex(0.0, 0.0));
    return f;
}

GraphFunction GraphFunction::sample(const GraphParams& p,
                                    const std::function<Complex(double)>& f1,
                                    const std::function<Complex(double)>& f2) {
    GraphFunction f = zero(p);
    for (int i = 0; i <= p.n1; ++i) f.r1_values[i] = f1(p.r1_x(i));
    for (int j = 0; j <= p.n2; ++j) f.r2_values[j] = f2(p.r2_x(j));
    return f;
}

void GraphFunction::check_shape(const GraphParams& p) const {
    if (static_cast<int>(r1_values.size()) != p.r1_samples() ||
        static_cast<int>(r2_values.size()) != p.r2_samples())
        throw ShapeError("GraphFunction sample counts do not match grid");
}

GraphFunction& GraphFunction::axpy(Complex a, const GraphFunction& f) {
    if (f.r1_values.size() != r1_values.size() || f.r2_values.size() != r2_values.size())
        throw ShapeError("axpy: grid mismatch");
    for (size_t i = 0; i < r1_values.size(); ++i) r1_values[i] += a * f.r1_values[i];
    for (size_t j = 0; j < r2_values.size(); ++j) r2_values[j] += a * f.r2_values[j];
    return *this;
}

GraphFunction& GraphFunction::scale(Complex a) {
    for (auto& v : r1_values) v *= a;
    for (auto& v : r2_values) v *= a;
    return *this;
}

double VertexResidual::max_abs() const {
    return std::max({std::abs(continuity_01), std::abs(continuity_0L), std::abs(kirchhoff)});
}

Complex simpson(const Complex* f, int count, double h) {
    if (count < 2) return Complex(0.0, 0.0);
    if (count == 2) return h * 0.5 * (f[0] + f[1]); // degenerate: trapezoid
    int n = count - 1; // intervals
    Complex total(0.0, 0.0);
    int m = n;
    // Close an odd interval count with one 3/8 panel at the end.
    if (n % 2 != 0) {
        if (n >= 3) {
            const Complex* g = f + (n - 3);
            total += 3.0 * h / 8.0 * (g[0] + 3.0 * g[1] + 3.0 * g[2] + g[3]);
            m = n - 3;
        } else {
            return h * 0.5 * (f[0] + f[1]);
        }
    }
    Complex s = f[0] + f[m];
    for (int i = 1; i < m; i += 2) s += 4.0 * f[i];
    for (int i = 2; i < m; i += 2) s += 2.0 * f[i];
    total += h / 3.0 * s;
    return total;
}

Complex simpson(const std::vector<Complex>& f, double h) {
    return simpson(f.data(), static_cast<int>(f.size()), h);
}

std::vector<Complex> cumulative_integral(const std::vector<Complex>& f, double h) {
    const int n = static_cast<int>(f.size());
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    if (n < 2) return out;
    // Full steps via Simpson pairs; odd nodes via the 4-point (Adams-Moulton)
    // rule so every node is 4th-order and no odd-even error wiggle appears
    // (a wiggle of size O(h^4) turns into an O(h^2) artifact under any
    // second-difference of the result).
    for (int k = 0; k + 2 < n; k += 2)
        out[k + 2] = out[k] + h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
    for (int k = 0; k + 1 < n; k += 2) {
        if (k + 2 < n) {
            if (k >= 1)
                out[k + 1] = out[k] +
                             h / 24.0 * (-f[k - 1] + 13.0 * f[k] + 13.0 * f[k + 1] - f[k + 2]);
            else if (k + 3 < n)
                out[k + 1] = out[k] +
                             h / 24.0 * (9.0 * f[k] + 19.0 * f[k + 1] - 5.0 * f[k + 2] + f[k + 3]);
            else
                out[k + 1] = out[k] + h / 12.0 * (5.0 * f[k] + 8.0 * f[k + 1] - f[k + 2]);
        } else if (k >= 2) {
            out[k + 1] = out[k] +
                         h / 24.0 * (f[k - 2] - 5.0 * f[k - 1] + 19.0 * f[k] + 9.0 * f[k + 1]);
        } else {
            out[k + 1] = out[k] + h * 0.5 * (f[k] + f[k + 1]);
        }
    }
    return out;
}

Complex inner_product(const GraphFunction& f, const GraphFunction& g, const GraphParams& p) {
    f.check_shape(p);
    g.check_shape(p);
    std::vector<Complex> prod(f.r1_values.size());
    for (size_t i = 0; i < prod.size(); ++i) prod[i] = f.r1_values[i] * std::conj(g.r1_values[i]);
    Complex total = simpson(prod, p.h1);
    prod.resize(f.r2_values.size());
    for (size_t j = 0; j < prod.size(); ++j) prod[j] = f.r2_values[j] * std::conj(g.r2_values[j]);
    total += simpson(prod, p.h2);
    return total;
}

double norm(const GraphFunction& f, const GraphParams& p) {
    return std::sqrt(std::max(0.0, inner_product(f, f, p).real()));
}

namespace {
// 2nd-order one-sided derivative at the first of three equispaced samples.
Complex forward_deriv(Complex f0, Complex f1, Complex f2, double h) {
    return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
}
Complex backward_deriv(Complex fm2, Complex fm1, Complex f0, double h) {
    return (3.0 * f0 - 4.0 * fm1 + fm2) / (2.0 * h);
}
} // namespace

VertexResidual vertex_residuals(const GraphFunction& u, const GraphParams& p) {
    u.check_shape(p);
    if (u.r1_values.size() < 3 || u.r2_values.size() < 3)
        throw ShapeError("vertex_residuals: need >= 3 samples per edge");
    const auto& a = u.r1_values;
    const auto& b = u.r2_values;
    const size_t m = b.size();
    VertexResidual r;
    r.continuity_01 = a[0] - b[0];
    r.continuity_0L = b[0] - b[m - 1];
    Complex d1 = forward_deriv(a[0], a[1], a[2], p.h1);
    Complex d2 = forward_deriv(b[0], b[1], b[2], p.h2);
    Complex d2L = backward_deriv(b[m - 3], b[m - 2], b[m - 1], p.h2);
    r.kirchhoff = d1 + d2 - d2L - Complex(0.0, p.alpha) * a[0];
    return r;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const GraphFunction& f, const GraphParams& p, const std::string& path,
               const std::string& header_comment) {
    f.check_shape(p);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "edge,x,re,im\n";
    for (int i = 0; i <= p.n1; ++i)
        os << "r1," << format_double(p.r1_x(i)) << ',' << format_double(f.r1_values[i].real())
           << ',' << format_double(f.r1_values[i].imag()) << "\n";
    for (int j = 0; j <= p.n2; ++j)
        os << "r2," << format_double(p.r2_x(j)) << ',' << format_double(f.r2_values[j].real())
           << ',' << format_double(f.r2_values[j].imag()) << "\n";
}

GraphFunction read_csv(const std::string& path, const GraphParams& p) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    GraphFunction f = GraphFunction::zero(p);
    std::string line;
    size_t i1 = 0, i2 = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("edge,", 0) == 0) continue;
        std::stringstream ss(line);
        std::string edge, xs, res, ims;
        std::getline(ss, edge, ',');
        std::getline(ss, xs, ',');
        std::getline(ss, res, ',');
        std::getline(ss, ims, ',');
        Complex v(std::stod(res), std::stod(ims));
        if (edge == "r1") {
            if (i1 >= f.r1_values.size()) throw ShapeError("csv: too many r1 rows");
            f.r1_values[i1++] = v;
        } else if (edge == "r2") {
            if (i2 >= f.r2_values.size()) throw ShapeError("csv: too many r2 rows");
            f.r2_values[i2++] = v;
        } else {
            throw ShapeError("csv: bad edge tag " + edge);
        }
    }
    if (i1 != f.r1_values.size() || i2 != f.r2_values.size())
        throw ShapeError("csv: row count does not match grid");
    return f;
}

std::pair<double, double> low_discrepancy_2d(int i) {
    // R2 sequence (plastic constant); deterministic, no RNG state.
    const double g = 1.32471795724474602596;
    const double a1 = 1.0 / g;
    const double a2 = 1.0 / (g * g);
    double x = std::fmod(0.5 + a1 * (i + 1), 1.0);
    double y = std::fmod(0.5 + a2 * (i + 1), 1.0);
    return {x, y};
}

} // namespace tadpole
