#include "bwh/contour.hpp"

#include <algorithm>
#include <cmath>

namespace bwh {

// Smooth odd ramp: Im = tilt * tanh(Re / width). A corner-free path keeps
// the Cauchy transform of the kernel log analytic along the contour, so the
// memoized boundary values interpolate at spectral accuracy.

double SpectralContour::height(double re) const {
    // written so the odd symmetry is exact in floating point
    const double mag = tilt * std::tanh(std::abs(re) / width);
    return re < 0.0 ? -mag : mag;
}

cplx SpectralContour::point(double t) const { return {t, height(t)}; }

cplx SpectralContour::derivative(double t) const {
    const double c = std::cosh(std::min(std::abs(t) / width, 300.0));
    return {1.0, tilt / (width * c * c)};
}

double SpectralContour::side(cplx xi) const { return xi.imag() - height(xi.real()); }

SpectralContour make_contour(double k_scale, double feature_extent, double loss) {
    SpectralContour c;
    c.tilt = 0.05 * k_scale + 1.75 * loss;
    c.width = 0.25 * k_scale;  // tanh transition scale
    c.pivot = std::max(3.0 * k_scale, 1.4 * feature_extent);
    return c;
}

QuadResult integrate_contour(const SpectralContour& c, const std::function<cplx(cplx)>& f,
                             bool tails_down, double decay_rate,
                             const std::vector<double>& central_breaks, const QuadOptions& opt) {
    QuadOptions part = opt;
    part.abs_tol = opt.abs_tol / 3.0;

    // central section along the graph; split at the ramp corners too
    std::vector<double> breaks{-c.pivot, -c.width, 0.0, c.width, c.pivot};
    for (double b : central_breaks)
        if (b > -c.pivot && b < c.pivot) breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    QuadResult out = integrate_segments(
        [&](double t) { return f(c.point(t)) * c.derivative(t); }, breaks, part);

    // rotated tails: xi = corner + s*u, s in (0, inf), mapped s = S*q/(1-q)
    const double ang = tails_down ? -0.25 * 3.14159265358979323846 : 0.25 * 3.14159265358979323846;
    const cplx u_right = std::polar(1.0, ang);
    const cplx u_left = std::polar(1.0, 3.14159265358979323846 - ang);
    const double S = 3.0 / std::max(decay_rate, 1e-12);

    auto tail = [&](cplx corner, cplx u) {
        auto g = [&](double q) -> cplx {
            const double om = 1.0 - q;
            const double s = S * q / om;
            const cplx xi = corner + s * u;
            const cplx val = f(xi);
            return val * u * (S / (om * om));
        };
        return integrate_adaptive(g, 0.0, 1.0 - 1e-14, part);
    };

    // left tail runs from infinity to the corner: minus the outgoing integral
    QuadResult tl = tail(c.point(-c.pivot), u_left);
    QuadResult tr = tail(c.point(c.pivot), u_right);

    out.value += tr.value - tl.value;
    out.error_estimate += tr.error_estimate + tl.error_estimate;
    out.evaluations += tr.evaluations + tl.evaluations;
    out.converged = out.converged && tr.converged && tl.converged;
    return out;
}

}  // namespace bwh
