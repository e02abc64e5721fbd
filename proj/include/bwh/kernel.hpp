// kernel.hpp -- the scalar Wiener-Hopf kernel L(xi) = 1 + xi/(kappa*delta)
// and its multiplicative split L = L+ * L- into factors regular and zero-free
// in the upper/lower half-planes around the spectral contour.
//
// The split is numerical: the elementary carrier T = T+ * T- absorbs the two
// distinct limits of L at -inf/+inf (and the O(1/xi) approach to them), the
// remainder R = L/T tends to 1 at both ends, and log R is divided by Cauchy
// integrals along the contour. On the contour itself the one-sided limits
// come from the Plemelj half-sum, memoized at Chebyshev nodes.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bwh/contour.hpp"
#include "bwh/medium.hpp"

namespace bwh {

struct BranchPointSingularity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct KernelZeroOnContour : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ToleranceNotMet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// L(xi) evaluated directly. Throws BranchPointSingularity at xi = +-k1xz.
cplx kernel_L(cplx xi, const PropagationContext& ctx);

struct KernelSpec {
    PropagationContext ctx;
    double strip_halfwidth = 0.0;  // 0: derived from the contour tilt
    std::size_t node_budget = 40000;
};

struct KernelDiagnosticsRow {
    double t;        // contour parameter
    cplx zeta;       // contour point
    cplx log_rem;    // unwrapped log of the normalized kernel
    cplx log_plus;   // its plus-part boundary value
    double product_residual;
};

class FactorizedKernel {
  public:
    // Upper/lower factors. Either factor may be requested anywhere near the
    // strip; on the contour the Plemelj boundary values are used.
    cplx Lplus(cplx xi) const;
    cplx Lminus(cplx xi) const;

    cplx kernel_value(cplx xi) const;  // direct L at xi

    double product_error() const { return product_error_; }
    std::size_t node_count() const { return node_count_; }
    double strip_halfwidth() const { return strip_halfwidth_; }
    const SpectralContour& contour() const { return contour_; }
    const PropagationContext& ctx() const { return ctx_; }

    // location of the kernel zero (surface-wave root) on the Re < 0 side,
    // if one exists at finite distance
    cplx surface_zero() const { return surface_zero_; }

    // Fidelity probe: fresh principal-value Cauchy integral at the contour
    // parameter t against the memoized boundary value. Nonzero residual
    // means quadrature/interpolation drift in the split.
    double boundary_value_residual(double t) const;

    std::vector<KernelDiagnosticsRow> diagnostics() const;

    friend FactorizedKernel factorize(const KernelSpec& spec, double tol);

  private:
    struct Panel {
        double a = 0.0, b = 0.0;     // parameter range (contour t, or tail q)
        bool tail = false;
        int tail_sign = 0;           // -1: left tail, +1: right tail
        std::vector<double> param;   // node parameters
        std::vector<cplx> zeta;      // contour points
        std::vector<cplx> dzeta;     // d zeta / d param
        std::vector<double> weight;  // Clenshaw-Curtis weights in param
        std::vector<cplx> lr;        // unwrapped log of remainder at nodes
        std::vector<cplx> lp;        // Plemelj plus-part at nodes
    };

    cplx carrier_plus(cplx xi) const;
    cplx carrier_minus(cplx xi) const;
    cplx remainder_log_interp(double t) const;  // on-contour barycentric
    cplx plus_log_interp(double t) const;
    cplx cauchy_transform(cplx xi, bool principal_value) const;
    cplx panel_point(const Panel& p, double s) const;

    PropagationContext ctx_;
    SpectralContour contour_;
    cplx k_, delta_, loglam_plus_, loglam_minus_, gamma_hat_, tail_coeff_;
    double bshift_ = 0.0;
    cplx surface_zero_{0.0, 0.0};
    std::vector<Panel> panels_;
    double product_error_ = 0.0;
    double strip_halfwidth_ = 0.0;
    std::size_t node_count_ = 0;
};

// Builds the split with product error <= tol on validation points.
// Throws KernelZeroOnContour or ToleranceNotMet.
FactorizedKernel factorize(const KernelSpec& spec, double tol = 1e-9);

}  // namespace bwh
