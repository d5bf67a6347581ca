// spectrum.hpp — Point-spectrum enumeration: embedded eigenvalues, the
// asymptotic family by Newton refinement, argument-principle certification,
// and the explicit search of the disk |lambda - alpha/2| < alpha/2.
#pragma once

#include "tadpole/core.hpp"

#include <vector>

namespace tadpole {

enum class Family { embedded, damped, resonance_candidate };
enum class SeedSign { plus, minus };

const char* family_name(Family f);

struct SpectralPoint {
    Complex lambda;
    Complex lambda_sq;
    Family family = Family::damped;
    int index = 0;      // k for embedded, n for the family, 0 for disk roots
    double residual = 0.0; // |d(lambda)| after refinement
    Complex seed;       // asymptotic seed used (lambda itself for embedded)
    bool duplicate_of_embedded = false; // Newton landed on a lattice root
};

struct RootCertificate {
    double re_lo, re_hi, im_lo, im_hi;
    int winding_count = 0;
    int roots_found = 0;
};

std::vector<SpectralPoint> embedded_eigenvalues(int kmax, const GraphParams& p);

// 2n*pi/L +- i ln3/L + a*alpha + b*alpha^2, with a, b evaluated at the chosen
// branch of lambda_n(0). `plus` is the paper's printed seed; `minus` the
// closed-form root of e^{i lambda L} = 3 (lower half-plane).
Complex asymptotic_seed(int n, const GraphParams& p, SeedSign sign);

// Newton on d with the analytic derivative; residual target 1e-12 (1+|lambda|).
SpectralPoint refine_root(Complex seed, const GraphParams& p);

// Winding number of d around the rectangle boundary (adaptive trapezoid on
// d'/d). Throws ConvergenceError if |d| < 1e-8 anywhere on the contour.
RootCertificate count_roots_rectangle(double re_lo, double re_hi,
                                      double im_lo, double im_hi,
                                      const GraphParams& p);

// Genuine upper-half-plane eigenvalues: deterministic multistart Newton over
// the disk |lambda - alpha/2| < alpha/2 (where the algebra confines them).
std::vector<SpectralPoint> disk_eigenvalue_search(const GraphParams& p);

// Embedded k = 1..nmax, the refined family n = 1..nmax (both seed signs,
// duplicates merged at |dlambda| < 1e-8), plus the disk roots (index 0).
std::vector<SpectralPoint> point_spectrum(int nmax, const GraphParams& p);

// Proposition 2.4 expansion of lambda_n^2 on the chosen branch:
// 4 pi^2 n^2/L^2 - ln^2(3)/L^2 + i(8 alpha/(3L) +- 4 pi ln3 n/L^2).
Complex prop24_lambda_sq(int n, const GraphParams& p, SeedSign sign);

// lambda_n'(alpha) = 4 i lambda / (3 L lambda^2 + 2 alpha L lambda - alpha^2 L + 4 i alpha)
Complex lambda_prime_formula(Complex lambda, const GraphParams& p);

// CSV export: family,index,re_lambda,im_lambda,re_lambda_sq,im_lambda_sq,residual,re_seed,im_seed
void write_spectrum_csv(const std::vector<SpectralPoint>& pts, const std::string& path,
                        const std::string& header_comment = "");

// Figure 2 dataset: the refined family roots for each alpha in the sweep,
// with the -8 alpha/(3L) reference column.
// Columns: alpha,n,re_lambda,im_lambda,re_i_lambda_sq,ref_re_i_lambda_sq
void write_figure2_csv(const std::string& path, double L,
                       const std::vector<double>& alphas, int nmax,
                       const std::string& header_comment = "");

} // namespace tadpole
