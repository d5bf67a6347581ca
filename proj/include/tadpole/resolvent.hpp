// resolvent.hpp — Resolvent kernel of (H - z^2)^{-1}, its c/pp+/pp- split,
// and application of the resolvent to sampled data by quadrature.
#pragma once

#include "tadpole/core.hpp"
#include "tadpole/secular.hpp"

namespace tadpole {

enum class Edge { r1, r2 };

struct EdgePoint {
    Edge edge;
    double x;
};

struct KernelParts {
    Complex total;
    Complex k_c;
    Complex k_pp_plus;
    Complex k_pp_minus;
    EdgePoint x, y;
    Complex z;
};

// Direct kernel of Theorem 2.1 (corrected coefficients, prefactor 1/(2 omega)).
Complex kernel_direct(EdgePoint x, EdgePoint y, const CoefficientSet& c);
Complex kernel_direct(EdgePoint x, EdgePoint y, Complex z, const GraphParams& p);

enum class SplitPath { printed, rederived };

struct DecompositionReport {
    SplitPath path = SplitPath::rederived;
    double printed_max_err = 0.0; // worst relative sum-identity error, printed split
    double chosen_max_err = 0.0;  // same for the path in use
};

// Decomposition K = K_c + K_pp^+ + K_pp^-. The printed Theorem 2.5 formulas
// are tried first at 20 fixed probe points; on failure the split re-derived
// from the proof's partial-fraction algebra is used and the discrepancy
// recorded.
class KernelDecomposition {
public:
    explicit KernelDecomposition(const GraphParams& p);
    KernelParts eval(EdgePoint x, EdgePoint y, Complex z) const;
    const DecompositionReport& report() const { return report_; }

    // Individual paths, exposed for tests (x, y on R2 required).
    static KernelParts eval_printed(EdgePoint x, EdgePoint y, Complex z, const GraphParams& p);
    static KernelParts eval_rederived(EdgePoint x, EdgePoint y, Complex z, const GraphParams& p);

private:
    GraphParams p_;
    DecompositionReport report_;
};

// u = (H - z^2)^{-1} g by quadrature (separable kernel terms + cumulative
// integrals for the |x-y| part, so the kink never crosses a panel).
GraphFunction apply_resolvent(const GraphFunction& g, Complex z, const GraphParams& p);

// Kernel slice export:
// edge_x,x,edge_y,y,re_z,im_z,re_K,im_K,re_Kc,im_Kc,re_Kpp_plus,im_Kpp_plus,re_Kpp_minus,im_Kpp_minus
void write_kernel_slice_csv(const KernelDecomposition& dec, EdgePoint y, Complex z,
                            const GraphParams& p, const std::string& path,
                            const std::string& header_comment = "");

} // namespace tadpole
