// contour.hpp -- the inversion/factorization path in the complex spectral
// plane. An odd-symmetric tilted graph: zeta(t) = t + i*tilt*tanh(t/width).
// It passes above every feature on the positive real axis (plane-wave pole,
// +kxz branch point, surface-wave zero) and below their mirror images on the
// negative axis, consistent with the radiation branch of kappa.

#pragma once

#include <functional>
#include <vector>

#include "bwh/quadrature.hpp"

namespace bwh {

struct SpectralContour {
    double tilt = 0.0;    // vertical excursion
    double width = 0.0;   // transition scale of the tilt
    double pivot = 0.0;   // |t| where straight tails may replace the graph

    cplx point(double t) const;
    cplx derivative(double t) const;
    double height(double re) const;  // Im of the path at a given Re

    // signed vertical distance of a point from the path (positive = above)
    double side(cplx xi) const;
};

// Contour for a problem with wavenumber scale k_scale and features
// (pole, surface zero) inside |Re xi| <= feature_extent. With a lossy
// wavenumber (Im kxz = loss > 0) the branch points sit off the axis; the
// tilt grows past the loss so the path still passes above +kxz and below
// -kxz, which is what the radiation branch of kappa requires.
SpectralContour make_contour(double k_scale, double feature_extent, double loss = 0.0);

// Integrates f along the contour. The infinite tails beyond +-pivot are
// rotated by 45 degrees downward (tails_down = true, for observers with
// x > 0) or upward, where the integrand decays exponentially; decay_rate
// sets the rational stretch of the tail parameterization.
QuadResult integrate_contour(const SpectralContour& c, const std::function<cplx(cplx)>& f,
                             bool tails_down, double decay_rate,
                             const std::vector<double>& central_breaks, const QuadOptions& opt);

}  // namespace bwh
