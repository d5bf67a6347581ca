// secular.hpp — Closed-form scalar functions: resolvent coefficients,
// determinants, and the characteristic functions d(lambda), h_alpha(lambda).
#pragma once

#include "tadpole/core.hpp"

namespace tadpole {

// The nine resolvent coefficients at frequency z (omega = -iz), plus the
// determinant D_alpha, omega_c and the A(alpha) constant.
//
// Convention (z-form, X = e^{izL} = e^{-omega L}):
//   K11 = (1/2w)(e^{iz|x-y|} - F1 e^{iz(x+y)})
//   K12 = (1/2w)(F2 e^{iz(x+y)} + F3 e^{iz(x-y)})      x in R1, y in R2
//   K21 = (1/2w)(G1 e^{iz(x+y)} + H1 e^{iz(y-x)})      x in R2, y in R1
//   K22 = (1/2w)(e^{iz|x-y|} + G2 e^{iz(x+y)} + G3 e^{iz(x-y)}
//                           + H2 e^{iz(y-x)} + H3 e^{-iz(x+y)})
// with w = omega = -iz. The identities F2 = G1, H1 = X*G1, F3 = H1,
// G3 = H2, H3 = X^2*G2 hold exactly and make K symmetric.
struct CoefficientSet {
    Complex z;
    Complex omega;   // -iz
    Complex X;       // e^{izL}
    Complex F1, F2, F3, G1, G2, G3, H1, H2, H3;
    Complex D_alpha; // (1 - i alpha/omega) e^{omega L} (1 - X)(X - omega_c)
    Complex omega_c; // (3 omega + i alpha)/(omega - i alpha)
    Complex A_alpha; // (omega+i alpha)(11 omega^2 + alpha^2 + 6 i alpha omega)
                     //   / (2 omega (omega - i alpha)^2)
};

CoefficientSet eval_coefficients(Complex z, const GraphParams& p);

// Secular determinant d(lambda) = e^{-i lambda L}((1+a/l)e^{2ilL} - 4e^{ilL} + 3 - a/l)
Complex eval_d(Complex lambda, const GraphParams& p);
Complex eval_d_prime(Complex lambda, const GraphParams& p);

// h_alpha(lambda) = e^{i lambda L} + 4 alpha/(lambda+alpha) - 3
Complex eval_h(Complex lambda, const GraphParams& p);

// Max relative residual of the nine continuity/Kirchhoff equations the
// coefficients must satisfy, evaluated directly at the vertex (analytic
// derivatives of the kernel ansatz; sources y in R1 and two y in R2).
double coefficient_system_residual(const CoefficientSet& c, const GraphParams& p);

} // namespace tadpole
