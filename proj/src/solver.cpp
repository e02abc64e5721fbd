#include "bwh/solver.hpp"

#include <cmath>

#include "bwh/specfun.hpp"

namespace bwh {

namespace {
constexpr double kPi = 3.14159265358979323846264338;
const cplx kI{0.0, 1.0};
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
}  // namespace

SpectralSolution::SpectralSolution(std::shared_ptr<const FactorizedKernel> kernel, SourceSpec src)
    : kernel_(std::move(kernel)), src_(std::move(src)) {
    k_ = kernel_->ctx().k1xz;
    delta_ = kernel_->ctx().delta;
    pole_ = -src_.k1x;
    kminus_at_pole_ = kappa_minus(pole_, k_);
    lplus_at_k1x_ = kernel_->Lplus(src_.k1x);
}

SpectralSolution SpectralSolution::build(const PropagationContext& ctx, const SourceSpec& src,
                                         double kernel_tol) {
    KernelSpec ks;
    ks.ctx = ctx;
    auto fk = std::make_shared<FactorizedKernel>(factorize(ks, kernel_tol));
    return SpectralSolution(std::move(fk), src);
}

SpectralUnknowns SpectralSolution::spectral_unknowns(cplx xi) const {
    if (std::abs(xi - pole_) < 1e-12 * std::abs(k_))
        throw PoleEvaluation("spectral_unknowns: xi at the plane-wave pole");
    const cplx den_pole = xi + src_.k1x;
    const cplx lm = kernel_->Lminus(-xi);
    SpectralUnknowns u;
    u.jump = kI * src_.amplitude_c * src_.k1z /
             (kSqrt2Pi * den_pole * kminus_at_pole_ * lplus_at_k1x_ * kappa_plus(xi, k_) * lm);
    u.jump_deriv =
        -src_.amplitude_c * src_.k1x / (kSqrt2Pi * delta_ * den_pole * lm * lplus_at_k1x_);
    return u;
}

cplx SpectralSolution::amplitude(cplx xi, double sgn_z) const {
    const SpectralUnknowns u = spectral_unknowns(xi);
    const cplx kap = kappa_branch(xi, k_);
    return sgn_z * u.jump + kI * u.jump_deriv / kap;
}

cplx SpectralSolution::spectral_G(cplx xi) const { return amplitude(xi, +1.0); }
cplx SpectralSolution::lower_amplitude(cplx xi) const { return amplitude(xi, -1.0); }

FieldValue SpectralSolution::transform(double x, double z,
                                       const std::function<cplx(cplx, cplx)>& weight, double tol,
                                       double extra_decay) const {
    const double sgn = (z > 0.0 || (z == 0.0 && !std::signbit(z))) ? 1.0 : -1.0;
    const double az = std::abs(z);

    auto f = [&](cplx xi) -> cplx {
        const cplx kap = kappa_branch(xi, k_);
        const cplx amp = amplitude(xi, sgn);
        return weight(xi, kap) * amp * std::exp(-kI * (kap * az + xi * x));
    };

    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    const SpectralContour& c = kernel_->contour();
    const double kr = std::abs(k_.real());
    std::vector<double> breaks{-kr, 0.0, kr, pole_.real(), -pole_.real()};
    const cplx z0 = kernel_->surface_zero();
    if (std::abs(z0) > 0.0) {
        breaks.push_back(z0.real());
        breaks.push_back(-z0.real());
    }
    const bool tails_down = x >= 0.0;
    const double decay = 0.7 * (std::abs(x) + az) + extra_decay;
    QuadResult r = integrate_contour(c, f, tails_down, decay, breaks, opt);

    FieldValue out;
    out.value = r.value / kSqrt2Pi;
    out.converged = r.converged;
    out.error_estimate = r.error_estimate / kSqrt2Pi;
    const double rr = std::hypot(x, z);
    if (rr > 0.0) {
        const double saddle = k_.real() * x / rr;
        out.shadow_flag = std::abs(saddle - pole_.real()) < 0.02 * std::abs(k_);
    }
    return out;
}

FieldValue SpectralSolution::scattered_field_ex(double x, double z, double tol) const {
    return transform(x, z, [](cplx, cplx) { return cplx(1.0, 0.0); }, tol, 0.0);
}

cplx SpectralSolution::scattered_field(double x, double z, double tol) const {
    FieldValue v = scattered_field_ex(x, z, tol);
    if (!v.converged)
        throw QuadratureFailure("scattered_field: quadrature did not reach tolerance");
    return v.value;
}

cplx SpectralSolution::scattered_dx(double x, double z, double tol) const {
    FieldValue v = transform(x, z, [](cplx xi, cplx) { return -cplx(0.0, 1.0) * xi; }, tol, 0.0);
    if (!v.converged) throw QuadratureFailure("scattered_dx: quadrature did not reach tolerance");
    return v.value;
}

cplx SpectralSolution::scattered_dz(double x, double z, double tol) const {
    const double sgn = (z > 0.0 || (z == 0.0 && !std::signbit(z))) ? 1.0 : -1.0;
    FieldValue v = transform(
        x, z, [sgn](cplx, cplx kap) { return -cplx(0.0, 1.0) * kap * sgn; }, tol, 0.0);
    if (!v.converged) throw QuadratureFailure("scattered_dz: quadrature did not reach tolerance");
    return v.value;
}

cplx SpectralSolution::pole_residue_circle() const {
    // trapezoid rule around a small circle; spectrally accurate for the
    // analytic integrand
    const int n = 64;
    const double rho = 1e-3 * std::abs(k_);
    cplx acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        const double a = 2.0 * kPi * j / n;
        const cplx d = std::polar(rho, a);
        acc += spectral_G(pole_ + d) * d;  // f(z) dz with dz = i d dtheta
    }
    return acc / double(n);  // (1/2pi i) * integral
}

cplx SpectralSolution::pole_residue_limit() const {
    // Richardson extrapolation of (xi + k1x) G along a ray toward the pole
    const double base = 1e-3 * std::abs(k_);
    cplx v1 = (base + 0.0) * spectral_G(pole_ + base);
    cplx v2 = (0.5 * base) * spectral_G(pole_ + 0.5 * base);
    cplx v4 = (0.25 * base) * spectral_G(pole_ + 0.25 * base);
    const cplx r12 = 2.0 * v2 - v1;
    const cplx r24 = 2.0 * v4 - v2;
    return 2.0 * r24 - r12;
}

cplx SpectralSolution::pole_contribution(double x, double z) const {
    // clockwise closure below the contour picks up -2 pi i times the residue
    const cplx res = pole_residue_circle();
    const cplx kap_pole = kappa_branch(pole_, k_);
    return -kI * kSqrt2Pi * res * std::exp(-kI * (pole_ * x + kap_pole * z));
}

std::pair<cplx, cplx> SpectralSolution::transverse_components(double x, double z,
                                                              double tol) const {
    const PropagationContext& c = kernel_->ctx();
    const cplx ksq = k_ * k_;
    const cplx iky(0.0, c.ky);
    const double g1 = c.medium.gamma1;

    const cplx inc = incident_far(x, z, src_);
    const cplx inc_dx = kI * src_.k1x * inc;
    const cplx inc_dz = kI * src_.k1z * inc;
    const cplx dx = scattered_dx(x, z, tol) + inc_dx;
    const cplx dz = scattered_dz(x, z, tol) + inc_dz;

    const cplx qx = (iky * dx - g1 * dz) / ksq;
    const cplx qz = (iky * dz + g1 * dx) / ksq;
    return {qx, qz};
}

cplx SpectralSolution::total_field(double x, double z, double tol) const {
    return incident_far(x, z, src_) + scattered_field(x, z, tol);
}

cplx SpectralSolution::boundary_combo_scattered(double x, int side, double tol) const {
    const double sgn = side >= 0 ? 1.0 : -1.0;
    const double zarg = side >= 0 ? 0.0 : -0.0;
    const cplx d = delta_;
    // d/dx -+ delta d/dz with the face's own normal-derivative sign
    FieldValue v = transform(
        x, zarg,
        [d, sgn](cplx xi, cplx kap) {
            return -cplx(0.0, 1.0) * xi - sgn * d * (-cplx(0.0, 1.0) * kap * sgn);
        },
        tol, 0.0);
    if (!v.converged)
        throw QuadratureFailure("boundary_combo_scattered: tolerance not reached");
    return v.value;
}

cplx SpectralSolution::field_jump(double x, double tol) const {
    // upper minus lower amplitude = 2 * jump part
    auto f = [&](cplx xi) -> cplx {
        const SpectralUnknowns u = spectral_unknowns(xi);
        return 2.0 * u.jump * std::exp(-kI * xi * x);
    };
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    const QuadResult r = integrate_contour(kernel_->contour(), f, x >= 0.0,
                                           0.7 * std::abs(x) + 1e-3, {pole_.real()}, opt);
    return r.value / kSqrt2Pi;
}

cplx SpectralSolution::deriv_jump(double x, double tol) const {
    auto f = [&](cplx xi) -> cplx {
        const SpectralUnknowns u = spectral_unknowns(xi);
        return 2.0 * u.jump_deriv * std::exp(-kI * xi * x);
    };
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    const QuadResult r = integrate_contour(kernel_->contour(), f, x >= 0.0,
                                           0.7 * std::abs(x) + 1e-3, {pole_.real()}, opt);
    return r.value / kSqrt2Pi;
}

}  // namespace bwh
