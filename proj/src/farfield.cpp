#include "bwh/farfield.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace bwh {

namespace {
constexpr double kPi = 3.14159265358979323846264338;
const cplx kI{0.0, 1.0};

unsigned pick_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}
}  // namespace

cplx diffraction_coefficient(double theta, const SpectralSolution& sol, bool* shadow_flag) {
    if (!(theta > 0.0 && theta < kPi))
        throw std::invalid_argument("diffraction_coefficient: need 0 < theta < pi");
    const cplx k = sol.ctx().k1xz;
    cplx saddle = k * std::cos(theta);
    const bool near_pole = std::abs(saddle - sol.pole_location()) < 0.02 * std::abs(k);
    if (shadow_flag) *shadow_flag = near_pole;
    // on an exact pole hit the (already flagged) value is still returned,
    // evaluated a hair to the side
    if (std::abs(saddle - sol.pole_location()) < 1e-9 * std::abs(k))
        saddle += 1e-6 * std::abs(k);
    const cplx kap = k * std::sin(theta);
    return kap * std::sqrt(2.0 / kPi) * sol.spectral_G(saddle);
}

cplx far_field(double r, double theta, const SpectralSolution& sol, bool* shadow_flag) {
    const cplx k = sol.ctx().k1xz;
    const cplx coeff = diffraction_coefficient(theta, sol, shadow_flag);
    return coeff * std::sqrt(kPi / (2.0 * k * r)) * std::exp(-kI * (k * r - kPi / 4.0));
}

FarFieldCut far_field_cut(const std::vector<double>& thetas, double r,
                          const SpectralSolution& sol, unsigned workers) {
    FarFieldCut cut;
    cut.theta = thetas;
    cut.r = r;
    cut.coefficient.resize(thetas.size());
    cut.field_at_r.resize(thetas.size());
    cut.shadow_flags.assign(thetas.size(), 0);

    const unsigned nw = std::min<std::size_t>(pick_workers(workers), std::max<std::size_t>(thetas.size(), 1));
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= thetas.size()) return;
            bool flag = false;
            cut.coefficient[i] = diffraction_coefficient(thetas[i], sol, &flag);
            const cplx k = sol.ctx().k1xz;
            cut.field_at_r[i] = cut.coefficient[i] * std::sqrt(kPi / (2.0 * k * r)) *
                                std::exp(-kI * (k * r - kPi / 4.0));
            cut.shadow_flags[i] = flag ? 1 : 0;
        }
    };
    for (unsigned t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return cut;
}

cplx total_field(double x, double z, const SpectralSolution& sol, double tol) {
    return sol.total_field(x, z, tol);
}

SpectralSolution q2_pipeline(const DerivedMedium& m, double ky, double loss, double r0,
                             double phi0, double kernel_tol) {
    const PropagationContext base = propagation_context(m, ky, loss);
    if (base.k2xz.real() <= 0.0 || base.k2xz.imag() < -1e-15)
        throw EvanescentPartialWave("q2_pipeline: right-handed partial wave does not propagate");

    // mirror context: the scalar problem for the right-handed component uses
    // k2xz with the same boundary coupling constant
    PropagationContext ctx2 = base;
    ctx2.k1xz = base.k2xz;
    ctx2.k2xz = base.k1xz;

    const SourceSpec src2 = SourceSpec::from_polar(r0, phi0, ctx2);
    return SpectralSolution::build(ctx2, src2, kernel_tol);
}

FieldGrid field_map(double x0, double x1, double z0, double z1, std::size_t nx, std::size_t nz,
                    const SpectralSolution& sol, double tol, unsigned workers) {
    FieldGrid g;
    g.x0 = x0;
    g.x1 = x1;
    g.z0 = z0;
    g.z1 = z1;
    g.nx = nx;
    g.nz = nz;
    if (nx == 0 || nz == 0) return g;
    g.samples.resize(nx * nz);

    const double k = std::abs(sol.ctx().k1xz);
    const double lambda = 2.0 * kPi / k;
    const double excl = 1e-3 * lambda;
    const double sx = -sol.source().x0;
    const double sz = -sol.source().z0;

    auto eval_row = [&](std::size_t iz) {
        const double z = nz == 1 ? z0 : z0 + (z1 - z0) * double(iz) / double(nz - 1);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = nx == 1 ? x0 : x0 + (x1 - x0) * double(ix) / double(nx - 1);
            FieldSample& s = g.samples[iz * nx + ix];
            s.x = x;
            s.z = z;
            if (std::hypot(x, z) < excl || std::hypot(x - sx, z - sz) < excl) {
                s.converged = false;
                continue;
            }
            try {
                const FieldValue v = sol.scattered_field_ex(x, z, tol);
                s.value = v.value + incident_far(x, z, sol.source());
                s.converged = v.converged;
            } catch (const std::exception&) {
                s.converged = false;
            }
        }
    };

    const unsigned nw = std::min<std::size_t>(pick_workers(workers), nz);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t iz = next.fetch_add(1);
            if (iz >= nz) return;
            eval_row(iz);
        }
    };
    for (unsigned t = 0; t < std::max(1u, nw); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return g;
}

}  // namespace bwh
