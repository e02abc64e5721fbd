#include "bwh/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "bwh/specfun.hpp"

namespace bwh {

namespace {

constexpr double kPi = 3.14159265358979323846264338;
const cplx kI{0.0, 1.0};

constexpr int kLobattoN = 16;   // nodes per panel = kLobattoN + 1
constexpr int kPlemeljN = 24;   // interior boundary-value nodes per panel
constexpr double kTailEnd = 1.0 - 1e-7;

struct LobattoRule {
    std::vector<double> x, w;
    LobattoRule() {
        const int n = kLobattoN;
        x.resize(n + 1);
        w.assign(n + 1, 0.0);
        for (int j = 0; j <= n; ++j) x[j] = -std::cos(kPi * j / n);
        // Clenshaw-Curtis weights via coefficients of the cardinal functions
        for (int j = 0; j <= n; ++j) {
            for (int m = 0; m <= n; m += 2) {
                double a = std::cos(kPi * m * j / n);
                if (j == 0 || j == n) a *= 0.5;
                a *= 2.0 / n;
                if (m == 0 || m == n) a *= 0.5;
                w[j] += a * 2.0 / (1.0 - m * m);
            }
        }
    }
};

const LobattoRule& lobatto() {
    static const LobattoRule r;
    return r;
}

std::vector<double> lobatto_bary_weights() {
    std::vector<double> w(kLobattoN + 1);
    for (int j = 0; j <= kLobattoN; ++j) {
        w[j] = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == kLobattoN) w[j] *= 0.5;
    }
    return w;
}

std::vector<double> firstkind_bary_weights() {
    std::vector<double> w(kPlemeljN);
    for (int j = 0; j < kPlemeljN; ++j)
        w[j] = ((j % 2 == 0) ? 1.0 : -1.0) * std::sin((2.0 * j + 1.0) * kPi / (2.0 * kPlemeljN));
    return w;
}

cplx barycentric(const std::vector<double>& xs, const std::vector<cplx>& fs,
                 const std::vector<double>& ws, double x) {
    cplx num(0.0, 0.0), den(0.0, 0.0);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double d = x - xs[j];
        if (d == 0.0) return fs[j];
        const double q = ws[j] / d;
        num += q * fs[j];
        den += q;
    }
    return num / den;
}

double wrap_to_pi(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

}  // namespace

cplx kernel_L(cplx xi, const PropagationContext& ctx) {
    const cplx kap = kappa_branch(xi, ctx.k1xz);
    if (kap == cplx(0.0, 0.0))
        throw BranchPointSingularity("kernel_L: xi at a branch point of kappa");
    return 1.0 + xi / (kap * ctx.delta);
}

// ---------------------------------------------------------------------------
// carrier
// ---------------------------------------------------------------------------

cplx FactorizedKernel::carrier_plus(cplx xi) const {
    const cplx zb = xi + cplx(0.0, bshift_);
    return std::exp(0.5 * loglam_plus_ - gamma_hat_ * std::log(zb) + 0.5 * tail_coeff_ / zb);
}

cplx FactorizedKernel::carrier_minus(cplx xi) const {
    const cplx zb = xi - cplx(0.0, bshift_);
    return std::exp(0.5 * loglam_plus_ + gamma_hat_ * std::log(zb) + 0.5 * tail_coeff_ / zb);
}

cplx FactorizedKernel::kernel_value(cplx xi) const { return kernel_L(xi, ctx_); }

// Tail panels live in a mapped parameter: |s| in (0,1) with
//   t = sign * (pivot + S |s| / (1 - |s|)),  S = 3|k|.
// Ascending s is ascending position along the path for every panel.
cplx FactorizedKernel::panel_point(const Panel& p, double s) const {
    if (!p.tail) return contour_.point(s);
    const double S = 3.0 * std::abs(k_);
    const double a = std::abs(s);
    const double t = p.tail_sign * (contour_.pivot + S * a / (1.0 - a));
    return {t, p.tail_sign > 0 ? contour_.tilt : -contour_.tilt};
}

cplx FactorizedKernel::remainder_log_interp(double t) const {
    static const std::vector<double> bw = lobatto_bary_weights();
    for (const Panel& p : panels_) {
        if (p.tail) continue;
        if (t >= p.a && t <= p.b) return barycentric(p.param, p.lr, bw, t);
    }
    return cplx(0.0, 0.0);
}

cplx FactorizedKernel::plus_log_interp(double t) const {
    static const std::vector<double> bw = firstkind_bary_weights();
    for (const Panel& p : panels_) {
        if (p.tail || t < p.a || t > p.b) continue;
        std::vector<double> xs(kPlemeljN);
        const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
        for (int j = 0; j < kPlemeljN; ++j)
            xs[j] = mid - half * std::cos(kPi * (2.0 * j + 1.0) / (2.0 * kPlemeljN));
        return barycentric(xs, p.lp, bw, t);
    }
    return cplx(0.0, 0.0);
}

cplx FactorizedKernel::cauchy_transform(cplx xi, bool principal_value) const {
    static const std::vector<double> lbw = lobatto_bary_weights();
    cplx acc(0.0, 0.0);

    if (principal_value) {
        // Principal value via Richardson-extrapolated symmetric averages of
        // the one-sided transform: avg(F(x+ie), F(x-ie)) = PV + O(e^2), and
        // two levels cancel the quadratic term. Measured against the direct
        // on-path closed form this is the more robust evaluation near the
        // branch-point panels.
        const cplx zt = contour_.point(xi.real());
        const double e1 = 1e-3 * std::abs(k_);
        auto sym = [&](double e) {
            return 0.5 * (cauchy_transform(zt + cplx(0.0, e), false) +
                          cauchy_transform(zt - cplx(0.0, e), false));
        };
        const cplx a1 = sym(e1);
        const cplx a2 = sym(0.5 * e1);
        return (4.0 * a2 - a1) / 3.0;
    }

    for (const Panel& p : panels_) {
        const cplx za = p.zeta.front();
        const cplx zb = p.zeta.back();
        const double chord = std::abs(zb - za);
        double dist = 1e300;
        for (const cplx& z : p.zeta) dist = std::min(dist, std::abs(z - xi));

        // 17-node rule on the panel is good past one chord of separation;
        // closer evaluations get the subtracted adaptive treatment
        if (dist > 1.0 * chord) {
            cplx s(0.0, 0.0);
            for (std::size_t j = 0; j < p.param.size(); ++j)
                s += p.weight[j] * p.lr[j] * p.dzeta[j] / (p.zeta[j] - xi);
            acc += s;
            continue;
        }

        // subtract the density at the projection of xi onto the panel, so
        // the regularized integrand loses its near-pole entirely
        double sstar;
        if (!p.tail) {
            sstar = std::clamp(xi.real(), p.a, p.b);
        } else {
            const double S = 3.0 * std::abs(k_);
            const double u = std::max(std::abs(xi.real()) - contour_.pivot, 0.0);
            const double mag = u / (S + u);
            sstar = std::clamp(p.tail_sign > 0 ? mag : -mag, p.a, p.b);
        }
        const cplx pstar = barycentric(p.param, p.lr, lbw, sstar);

        auto reg = [&](double s) -> cplx {
            cplx z = panel_point(p, s);
            cplx dz = z - xi;
            double seff = s;
            if (std::abs(dz) < 1e-13 * (1.0 + std::abs(xi))) {
                seff = s + 1e-9 * (p.b - p.a);
                z = panel_point(p, seff);
                dz = z - xi;
            }
            cplx dzeta;
            if (!p.tail) {
                dzeta = contour_.derivative(seff);
            } else {
                // dt/ds = S/(1-|s|)^2 on either tail; both ascend along the path
                const double S = 3.0 * std::abs(k_);
                const double a2 = std::abs(seff);
                dzeta = cplx(S / ((1.0 - a2) * (1.0 - a2)), 0.0);
            }
            return (barycentric(p.param, p.lr, lbw, seff) - pstar) / dz * dzeta;
        };
        QuadOptions qo;
        qo.abs_tol = 1e-11 * (1.0 + std::abs(pstar));
        qo.rel_tol = 1e-10;
        qo.max_evaluations = 200000;
        QuadResult qr = integrate_adaptive(reg, p.a, p.b, qo);
        if (!qr.converged) {
            // split at the projection; the two halves see the quasi-pole at
            // an endpoint, which the bisection handles gracefully
            QuadResult qa = integrate_adaptive(reg, p.a, sstar, qo);
            QuadResult qb = integrate_adaptive(reg, sstar, p.b, qo);
            qr.value = qa.value + qb.value;
        }
        acc += qr.value;
        // d zeta/(zeta - xi) along the curved panel, telescoped over the node
        // sub-chords; the single endpoint log can drop 2*pi*i when xi sits in
        // the sliver between the chord and the curve
        cplx cf(0.0, 0.0);
        for (std::size_t j = 0; j + 1 < p.zeta.size(); ++j)
            cf += std::log((p.zeta[j + 1] - xi) / (p.zeta[j] - xi));
        acc += pstar * cf;
    }
    return acc / (2.0 * kPi * kI);
}

cplx FactorizedKernel::Lplus(cplx xi) const {
    const double snap = 1e-9 * std::abs(k_);
    double s = contour_.side(xi);
    if (std::abs(s) <= snap) {
        if (std::abs(xi.real()) <= contour_.pivot)
            return carrier_plus(xi) * std::exp(plus_log_interp(xi.real()));
        xi += cplx(0.0, 3.0 * snap);  // on-path request beyond the stored grid
        s = contour_.side(xi);
    }
    if (s > 0.0) return carrier_plus(xi) * std::exp(cauchy_transform(xi, false));
    return kernel_value(xi) / Lminus(xi);
}

cplx FactorizedKernel::Lminus(cplx xi) const {
    const double snap = 1e-9 * std::abs(k_);
    double s = contour_.side(xi);
    if (std::abs(s) <= snap) {
        if (std::abs(xi.real()) <= contour_.pivot) {
            const double t = xi.real();
            return carrier_minus(xi) * std::exp(remainder_log_interp(t) - plus_log_interp(t));
        }
        xi -= cplx(0.0, 3.0 * snap);
        s = contour_.side(xi);
    }
    if (s < 0.0) return carrier_minus(xi) * std::exp(-cauchy_transform(xi, false));
    return kernel_value(xi) / Lplus(xi);
}

double FactorizedKernel::boundary_value_residual(double t) const {
    const cplx pv = cauchy_transform(contour_.point(t), true);
    const cplx fresh = 0.5 * remainder_log_interp(t) + pv;
    return std::abs(fresh - plus_log_interp(t));
}

std::vector<KernelDiagnosticsRow> FactorizedKernel::diagnostics() const {
    std::vector<KernelDiagnosticsRow> rows;
    for (const Panel& p : panels_) {
        for (std::size_t j = 0; j < p.param.size(); ++j) {
            KernelDiagnosticsRow r;
            r.t = p.zeta[j].real();
            r.zeta = p.zeta[j];
            r.log_rem = p.lr[j];
            r.log_plus = p.tail ? cplx(0.0, 0.0) : plus_log_interp(p.zeta[j].real());
            const cplx L = kernel_value(p.zeta[j]);
            const cplx prod =
                carrier_plus(p.zeta[j]) * carrier_minus(p.zeta[j]) * std::exp(p.lr[j]);
            r.product_residual = std::abs(prod / L - 1.0);
            rows.push_back(r);
        }
    }
    return rows;
}

FactorizedKernel factorize(const KernelSpec& spec, double tol) {
    FactorizedKernel fk;
    fk.ctx_ = spec.ctx;
    fk.k_ = spec.ctx.k1xz;
    fk.delta_ = spec.ctx.delta;

    const double kscale = std::abs(fk.k_.real()) > 0.0 ? std::abs(fk.k_.real()) : std::abs(fk.k_);
    const double loss = std::max(fk.k_.imag(), 0.0);

    // surface-wave root: zero of delta*kappa + xi (Re < 0 side); its mirror
    // zeroes delta*kappa - xi
    bool have_zero = false;
    cplx z0(0.0, 0.0);
    {
        const cplx den = std::sqrt(1.0 + fk.delta_ * fk.delta_);
        if (std::abs(den) > 0.0) {
            z0 = -fk.k_ * fk.delta_ / den;
            if (z0.real() > 0.0) z0 = -z0;
            const cplx n0 = fk.delta_ * kappa_branch(z0, fk.k_) + z0;
            have_zero = std::isfinite(std::abs(z0)) && std::abs(n0) < 1e-6 * std::abs(z0);
            if (have_zero) fk.surface_zero_ = z0;
        }
    }

    const double extent = have_zero ? std::abs(z0) : kscale;
    fk.contour_ = make_contour(kscale, extent, loss);
    fk.strip_halfwidth_ =
        spec.strip_halfwidth > 0.0 ? spec.strip_halfwidth : 0.8 * fk.contour_.tilt;

    const cplx lam_plus = 1.0 + kI / fk.delta_;
    const cplx lam_minus = 1.0 - kI / fk.delta_;
    fk.loglam_plus_ = std::log(lam_plus);
    fk.loglam_minus_ = std::log(lam_minus);
    fk.gamma_hat_ = (fk.loglam_plus_ - fk.loglam_minus_) / (2.0 * kPi * kI);
    fk.bshift_ = std::abs(fk.k_);
    fk.tail_coeff_ = (fk.loglam_plus_ - fk.loglam_minus_) * fk.bshift_ / kPi;

    auto log_remainder_principal = [&](cplx zeta) -> cplx {
        const cplx L = kernel_L(zeta, spec.ctx);
        const cplx T = fk.carrier_plus(zeta) * fk.carrier_minus(zeta);
        return std::log(L / T);
    };

    using Panel = FactorizedKernel::Panel;
    const LobattoRule& rule = lobatto();

    auto fill_panel = [&](Panel& p) {
        const int n = kLobattoN;
        p.param.resize(n + 1);
        p.zeta.resize(n + 1);
        p.dzeta.resize(n + 1);
        p.weight.resize(n + 1);
        p.lr.resize(n + 1);
        const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
        const double S = 3.0 * std::abs(fk.k_);
        for (int j = 0; j <= n; ++j) {
            const double s = mid + half * rule.x[j];
            p.param[j] = s;
            p.zeta[j] = fk.panel_point(p, s);
            p.weight[j] = rule.w[j] * half;
            p.lr[j] = log_remainder_principal(p.zeta[j]);
            if (!p.tail) {
                p.dzeta[j] = fk.contour_.derivative(s);
            } else {
                const double a2 = std::abs(s);
                p.dzeta[j] = cplx(S / ((1.0 - a2) * (1.0 - a2)), 0.0);
            }
        }
    };

    auto panel_tail_coeff = [&](const Panel& p) {
        const int n = kLobattoN;
        double e = 0.0;
        for (int m = n - 1; m <= n; ++m) {
            cplx a(0.0, 0.0);
            for (int i = 0; i <= n; ++i) {
                cplx term = p.lr[i] * std::cos(kPi * m * i / n);
                if (i == 0 || i == n) term *= 0.5;
                a += term;
            }
            a *= 2.0 / n;
            if (m == n) a *= 0.5;
            e += std::abs(a);
        }
        return e;
    };

    std::vector<double> seeds{-fk.contour_.pivot, -fk.contour_.width, 0.0, fk.contour_.width,
                              fk.contour_.pivot};
    auto add_seed = [&](double v) {
        if (v > -fk.contour_.pivot && v < fk.contour_.pivot) seeds.push_back(v);
    };
    for (double sgn : {-1.0, 1.0}) {
        add_seed(sgn * std::abs(fk.k_.real()));
        if (have_zero) add_seed(sgn * std::abs(z0.real()));
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end(),
                            [&](double a, double b) { return std::abs(a - b) < 1e-3 * kscale; }),
                seeds.end());

    const double node_tol = std::max(tol * 1e-2, 1e-13);
    std::vector<Panel> work;
    for (std::size_t i = 0; i + 1 < seeds.size(); ++i) {
        Panel p;
        p.a = seeds[i];
        p.b = seeds[i + 1];
        work.push_back(p);
    }
    for (int sgn : {-1, 1}) {
        for (auto [qa, qb] : {std::pair{0.0, 0.35}, std::pair{0.35, 0.75},
                              std::pair{0.75, 0.97}, std::pair{0.97, kTailEnd}}) {
            Panel p;
            p.tail = true;
            p.tail_sign = sgn;
            p.a = sgn > 0 ? qa : -qb;
            p.b = sgn > 0 ? qb : -qa;
            work.push_back(p);
        }
    }

    std::size_t nodes_used = 0;
    std::vector<Panel> done;
    while (!work.empty()) {
        Panel p = work.back();
        work.pop_back();
        nodes_used += kLobattoN + 1;
        if (nodes_used > spec.node_budget)
            throw ToleranceNotMet("factorize: node budget exhausted");
        fill_panel(p);
        const double min_len = p.tail ? 1e-4 : 1e-6 * kscale;
        if (panel_tail_coeff(p) > node_tol && (p.b - p.a) > min_len) {
            Panel l = p, r = p;
            l.b = r.a = 0.5 * (p.a + p.b);
            l.param.clear();
            r.param.clear();
            work.push_back(l);
            work.push_back(r);
            continue;
        }
        done.push_back(p);
    }
    fk.node_count_ = nodes_used;

    // path order = ascending real part of the first node
    std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) {
        return x.zeta.front().real() < y.zeta.front().real();
    });

    // unwrap the log along the path, anchored near zero at the far left
    double shift = 0.0;
    cplx prev(0.0, 0.0);
    bool first = true;
    for (Panel& p : done) {
        for (cplx& v : p.lr) {
            if (!first) {
                const double d = wrap_to_pi(v.imag() + shift - prev.imag());
                shift = prev.imag() + d - v.imag();
            }
            v += cplx(0.0, shift);
            prev = v;
            first = false;
        }
    }
    if (std::abs(prev.imag()) > 1.0)
        throw KernelZeroOnContour("factorize: kernel log winds along the contour");

    double minmod = 1e300;
    for (const Panel& p : done)
        for (const cplx& v : p.lr) minmod = std::min(minmod, std::exp(v.real()));
    if (minmod < 1e-4)
        throw KernelZeroOnContour("factorize: kernel nearly vanishes on the contour");

    fk.panels_ = std::move(done);

    // Plemelj boundary values of the plus part on the first-kind grid
    static const std::vector<double> lbw = lobatto_bary_weights();
    for (auto& p : fk.panels_) {
        if (p.tail) continue;
        p.lp.resize(kPlemeljN);
        const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
        for (int j = 0; j < kPlemeljN; ++j) {
            const double t = mid - half * std::cos(kPi * (2.0 * j + 1.0) / (2.0 * kPlemeljN));
            const cplx zt = fk.contour_.point(t);
            const cplx halfv = 0.5 * barycentric(p.param, p.lr, lbw, t);
            fk.node_count_ += 1;
            p.lp[j] = halfv + fk.cauchy_transform(zt, true);
        }
    }

    // validation: product identity through the public samplers on the strip
    double perr = 0.0;
    const int nval = 200;
    for (int i = 0; i < nval; ++i) {
        const double t = -fk.contour_.pivot + (2.0 * fk.contour_.pivot) * (i + 0.5) / nval;
        const cplx zt = fk.contour_.point(t);
        const cplx L = fk.kernel_value(zt);
        const cplx prod = fk.Lplus(zt) * fk.Lminus(zt);
        perr = std::max(perr, std::abs(prod / L - 1.0));
    }
    fk.product_error_ = perr;
    if (perr > tol) throw ToleranceNotMet("factorize: product identity above tolerance");
    return fk;
}

}  // namespace bwh
