// modes.hpp — Eigenfunctions (confined and damped), Gram matrices,
// Riesz-basis diagnostics, and the spectral projections.
#pragma once

#include "tadpole/core.hpp"
#include "tadpole/oracle.hpp"
#include "tadpole/spectrum.hpp"

#include <Eigen/Dense>

namespace tadpole {

enum class NormDomain { full_halfline, truncated };
enum class GramSegment { r2_only, full_graph };

struct ModeFunction {
    Complex lambda;
    Complex A1;          // coefficient of e^{i lambda x} on R1
    Complex A2, B2;      // coefficients of e^{+-i lambda x} on R2
    Complex norm_const;  // C_n
    Family family = Family::damped;
    NormDomain normalized_over = NormDomain::full_halfline;
    int index = 0;

    Complex eval_r1(double x) const;
    Complex eval_r2(double x) const;
    GraphFunction sampled(const GraphParams& p) const;
};

// phi^{(2k)}: zero on R1, sqrt(2/L) sin(2k pi x / L) on R2.
ModeFunction build_confined_mode(int k, const GraphParams& p);

// psi_n: A2 = C, B2 = C (3 lambda - alpha)/(lambda + alpha),
// A1 = C 4 lambda/(lambda + alpha); unit norm over the full half-line when
// Im lambda > 0, over [0, x_max] otherwise (flagged truncated).
ModeFunction build_damped_mode(const SpectralPoint& point, const GraphParams& p);

struct GramMatrix {
    Eigen::MatrixXcd entries;
    GramSegment segment = GramSegment::full_graph;
    std::vector<int> indices;
};

// Entries by quadrature on the requested segment.
GramMatrix gram_matrix(const std::vector<ModeFunction>& modes, GramSegment segment,
                       const GraphParams& p);

// Closed-form <e^{i a x}, e^{i b x}>_{[0,L]} = (e^{i(a - conj(b))L} - 1)/(i(a - conj(b))).
// (The printed Lemma 3.2 formula omits the factor i in the denominator.)
Complex exp_pair_inner(Complex a, Complex b, double L);

// Closed-form R2 Gram of the two-exponential modes (exact, no quadrature).
GramMatrix gram_matrix_closed_form(const std::vector<ModeFunction>& modes, const GraphParams& p);

struct RieszDiagnostics {
    double fitted_C;  // max |G_nm| <min(n,m)> |m-n| over off-diagonal entries
    double min_eig;
    double max_eig;
};

RieszDiagnostics riesz_diagnostics(const GramMatrix& G);

struct Projection {
    std::vector<Complex> coeffs;
    GraphFunction remainder;
};

// P_pp^+ f = sum <f, phi^{(2k)}> phi^{(2k)}, k = 1..kmax.
Projection project_pp_plus(const GraphFunction& f, int kmax, const GraphParams& p);

struct Expansion {
    std::vector<Complex> coeffs;
    double residual; // ||f - sum c_n psi_n||
};

// Solve the Gram system G c = (<f, psi_n>)_n; Gram must be well-conditioned.
Expansion expand_damped(const GraphFunction& f, const std::vector<ModeFunction>& modes,
                        const GraphParams& p);

// First generalized eigenfunction at a detected double root (Jordan chain of
// order 2), built by solving the discrete bordered system (A - mu) w = psi.
GraphFunction generalized_mode_at_double_root(const SpectralPoint& point,
                                              const GraphParams& p);

// JSON sidecar {lambda_re, lambda_im, A1, A2, B2, norm_const, family}
// (complex numbers as two-element arrays).
void write_mode_json(const ModeFunction& m, const std::string& path);

} // namespace tadpole
