#include "bwh/incident.hpp"

#include <cmath>

#include "bwh/specfun.hpp"

namespace bwh {

namespace {
constexpr double kPi = 3.14159265358979323846264338;
const cplx kI{0.0, 1.0};
}  // namespace

cplx line_source_amplitude(cplx kxz, double r0) {
    return -0.25 * kI * std::sqrt(2.0 / (kPi * kxz * r0)) *
           std::exp(-kI * (kxz * r0 - cplx(0.25 * kPi, 0.0)));
}

SourceSpec SourceSpec::from_polar(double r0, double phi0, const PropagationContext& ctx) {
    if (!(r0 > 0.0)) throw std::invalid_argument("SourceSpec: r0 must be positive");
    SourceSpec s;
    s.r0 = r0;
    s.phi0 = phi0;
    s.x0 = -r0 * std::cos(phi0);
    s.z0 = -r0 * std::sin(phi0);
    s.k1x = ctx.k1xz * std::cos(phi0);
    s.k1z = ctx.k1xz * std::sin(phi0);
    s.amplitude_c = line_source_amplitude(ctx.k1xz, r0);
    return s;
}

SourceSpec SourceSpec::from_cartesian(double x0, double z0, const PropagationContext& ctx) {
    const double r0 = std::hypot(x0, z0);
    if (!(r0 > 0.0)) throw std::invalid_argument("SourceSpec: source cannot sit on the edge");
    return from_polar(r0, std::atan2(-z0, -x0), ctx);
}

cplx incident_exact(double x, double z, const SourceSpec& src, const PropagationContext& ctx) {
    const double R = std::hypot(x + src.x0, z + src.z0);
    if (R == 0.0) throw SourcePointSingularity("incident_exact: evaluation at the source point");
    return -0.25 * kI * hankel2_0(ctx.k1xz * R);
}

QuadResult incident_spectral(double x, double z, const SourceSpec& src,
                             const PropagationContext& ctx, const QuadOptions& opt) {
    const double X = x + src.x0;
    const double Z = std::abs(z + src.z0);
    if (X == 0.0 && Z == 0.0)
        throw SourcePointSingularity("incident_spectral: evaluation at the source point");

    const cplx k = ctx.k1xz;
    const double ks = std::abs(k.real()) > 0.0 ? std::abs(k.real()) : std::abs(k);
    SpectralContour c = make_contour(ks, ks, ctx.loss);

    auto integrand = [&](cplx xi) -> cplx {
        const cplx kap = kappa_branch(xi, k);
        return std::exp(-kI * (xi * X + kap * Z)) / kap;
    };

    const bool tails_down = X >= 0.0;
    const double decay = 0.7 * (std::abs(X) + Z);
    QuadResult r = integrate_contour(c, integrand, tails_down, decay, {-ks, 0.0, ks}, opt);
    r.value *= cplx(0.0, -1.0 / (4.0 * kPi));  // 1/(4*pi*i)
    if (!r.converged)
        throw QuadratureFailure("incident_spectral: estimate did not reach tolerance");
    return r;
}

cplx incident_far(double x, double z, const SourceSpec& src) {
    return src.amplitude_c * std::exp(kI * (src.k1x * x + src.k1z * z));
}

}  // namespace bwh
