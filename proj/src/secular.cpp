#include "tadpole/secular.hpp"

#include <cmath>

namespace tadpole {

namespace {
const Complex I(0.0, 1.0);
constexpr double kPoleTol = 1e-14;
} // namespace

CoefficientSet eval_coefficients(Complex z, const GraphParams& p) {
    const double al = p.alpha;
    if (std::abs(z) < kPoleTol) throw PoleProximityError("z = 0");
    Complex w = -I * z;
    if (std::abs(w) < kPoleTol) throw PoleProximityError("omega = 0");
    Complex beta = al + I * w; // = i(omega - i alpha)
    if (std::abs(beta) < kPoleTol) throw PoleProximityError("omega = i*alpha");

    CoefficientSet c;
    c.z = z;
    c.omega = w;
    c.X = std::exp(I * z * p.L);
    c.omega_c = (3.0 * w + I * al) / (w - I * al);

    Complex dm = c.X - c.omega_c;
    Complex d1 = c.X - 1.0;
    if (std::abs(dm) < kPoleTol) throw PoleProximityError("e^{-omega L} = omega_c");
    if (std::abs(d1) < kPoleTol) throw PoleProximityError("e^{-omega L} = 1");

    c.G1 = -2.0 * I * w / (beta * dm);
    c.H1 = c.X * c.G1;
    c.F2 = c.G1;
    c.F3 = c.H1;
    c.F1 = 1.0 - (c.X + 1.0) * c.G1;
    c.G2 = (al - I * w) / (beta * d1 * dm);
    c.H3 = c.X * c.X * c.G2;
    c.H2 = -c.X * (beta * c.X - 2.0 * I * w) / (beta * d1 * dm);
    c.G3 = c.H2;

    c.D_alpha = (1.0 - I * al / w) * std::exp(w * p.L) * (1.0 - c.X) * dm;
    c.A_alpha = (w + I * al) * (11.0 * w * w + al * al + 6.0 * I * al * w) /
                (2.0 * w * (w - I * al) * (w - I * al));
    return c;
}

Complex eval_d(Complex lambda, const GraphParams& p) {
    if (std::abs(lambda) < kPoleTol) throw SingularityError("d: lambda = 0");
    Complex T = std::exp(I * lambda * p.L);
    Complex q = p.alpha / lambda;
    return std::exp(-I * lambda * p.L) * ((1.0 + q) * T * T - 4.0 * T + 3.0 - q);
}

Complex eval_d_prime(Complex lambda, const GraphParams& p) {
    if (std::abs(lambda) < kPoleTol) throw SingularityError("d': lambda = 0");
    const double L = p.L, al = p.alpha;
    Complex Ep = std::exp(I * lambda * L);
    Complex Em = std::exp(-I * lambda * L);
    Complex q = al / (lambda * lambda);
    // d = (1+al/l)e^{ilL} - 4 + (3-al/l)e^{-ilL}
    return -q * Ep + (1.0 + al / lambda) * I * L * Ep + q * Em -
           (3.0 - al / lambda) * I * L * Em;
}

Complex eval_h(Complex lambda, const GraphParams& p) {
    Complex den = lambda + p.alpha;
    if (std::abs(den) < kPoleTol) throw PoleProximityError("lambda = -alpha");
    return std::exp(I * lambda * p.L) + 4.0 * p.alpha / den - 3.0;
}

double coefficient_system_residual(const CoefficientSet& c, const GraphParams& p) {
    const Complex iz = I * c.z;
    const double al = p.alpha;
    const double L = p.L;
    double worst = 0.0;

    auto push = [&](Complex resid, double scale) {
        worst = std::max(worst, std::abs(resid) / (1.0 + scale));
    };

    {
        // Source y in R1 (y drops out up to a common factor e^{izy}):
        //   u1(x) = e^{-izx} - F1 e^{izx},  u2(x) = G1 e^{izx} + H1 e^{-izx}
        auto u1 = [&](double x) { return std::exp(-iz * x) - c.F1 * std::exp(iz * x); };
        auto du1 = [&](double x) {
            return -iz * std::exp(-iz * x) - c.F1 * iz * std::exp(iz * x);
        };
        auto u2 = [&](double x) {
            return c.G1 * std::exp(iz * x) + c.H1 * std::exp(-iz * x);
        };
        auto du2 = [&](double x) {
            return iz * (c.G1 * std::exp(iz * x) - c.H1 * std::exp(-iz * x));
        };
        double s = std::abs(u1(0.0)) + std::abs(u2(0.0)) + 1.0;
        push(u1(0.0) - u2(0.0), s);
        push(u2(0.0) - u2(L), s);
        push(du1(0.0) + du2(0.0) - du2(L) - I * al * u1(0.0),
             (std::abs(du1(0.0)) + std::abs(du2(0.0)) + std::abs(du2(L))));
    }

    // Source y in R2: checking at two distinct y separates the e^{+izy} and
    // e^{-izy} coefficient groups (six independent equations).
    for (double y : {0.3 * L, 0.7 * L}) {
        auto u1 = [&](double x) {
            return c.F2 * std::exp(iz * (x + y)) + c.F3 * std::exp(iz * (x - y));
        };
        auto du1 = [&](double x) { return iz * u1(x); };
        auto u2 = [&](double x) {
            double ax = std::abs(x - y);
            return std::exp(iz * ax) + c.G2 * std::exp(iz * (x + y)) +
                   c.G3 * std::exp(iz * (x - y)) + c.H2 * std::exp(iz * (y - x)) +
                   c.H3 * std::exp(-iz * (x + y));
        };
        auto du2 = [&](double x) {
            Complex sgn = (x > y) ? iz : -iz;
            return sgn * std::exp(iz * std::abs(x - y)) +
                   iz * (c.G2 * std::exp(iz * (x + y)) + c.G3 * std::exp(iz * (x - y)) -
                         c.H2 * std::exp(iz * (y - x)) - c.H3 * std::exp(-iz * (x + y)));
        };
        double s = std::abs(u1(0.0)) + std::abs(u2(0.0)) + 1.0;
        push(u1(0.0) - u2(0.0), s);
        push(u2(0.0) - u2(L), s);
        push(du1(0.0) + du2(0.0) - du2(L) - I * al * u1(0.0),
             (std::abs(du1(0.0)) + std::abs(du2(0.0)) + std::abs(du2(L))));
    }
    return worst;
}

} // namespace tadpole
