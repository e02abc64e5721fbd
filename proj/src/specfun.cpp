#include "bwh/specfun.hpp"

#include <cmath>

namespace bwh {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kPi = 3.14159265358979323846264338;

// Series/asymptotic switchover. The double-precision sweet spot: the
// alternating Maclaurin series loses ~4 digits of cancellation at |z| = 14
// while the asymptotic tail already bottoms out below 1e-10 there.
constexpr double kSwitchover = 14.0;

struct J0Y0 {
    cplx j0;
    cplx y0;
};

// Maclaurin series for J0 and Y0, complex argument (|z| small/moderate).
J0Y0 cyl0_series(cplx z) {
    const cplx q = 0.25 * z * z;  // (z/2)^2
    cplx term(1.0, 0.0);
    cplx j0 = term;
    cplx ysum(0.0, 0.0);  // sum of (-1)^{m+1} H_m q^m / (m!)^2
    double harmonic = 0.0;
    for (int m = 1; m <= 200; ++m) {
        term *= -q / double(m * m);
        harmonic += 1.0 / double(m);
        j0 += term;
        ysum -= term * harmonic;  // term already carries (-1)^m
        if (std::abs(term) * (harmonic + 1.0) < 1e-18 * (std::abs(j0) + 1.0))
            break;
    }
    const cplx y0 = (2.0 / kPi) * ((std::log(0.5 * z) + kEulerGamma) * j0 + ysum);
    return {j0, y0};
}

// Asymptotic expansion of H0^(2)(z), |z| large, |arg z| small:
//   H0^(2)(z) ~ sqrt(2/(pi z)) e^{-i(z - pi/4)} sum_m (+i)^m B_m / z^m,
//   B_m = prod_{j<=m} (2j-1)^2 / (8j).
cplx hankel2_asymptotic(cplx z) {
    cplx sum(1.0, 0.0);
    cplx term(1.0, 0.0);
    double prev = 1.0;
    const cplx iz = cplx(0.0, 1.0) / z;
    for (int m = 1; m <= 60; ++m) {
        const double b = double(2 * m - 1) * double(2 * m - 1) / (8.0 * m);
        term *= b * iz;
        const double mag = std::abs(term);
        if (mag > prev) break;  // divergent tail reached; stop at smallest term
        sum += term;
        prev = mag;
        if (mag < 1e-17) break;
    }
    const cplx amp = std::sqrt(2.0 / (kPi * z));
    const cplx phase = std::exp(cplx(0.0, -1.0) * (z - cplx(kPi / 4.0, 0.0)));
    return amp * phase * sum;
}

// exact multiplication by -i / +i (no rounding, no signed-zero surprises)
inline cplx mul_neg_i(cplx z) { return cplx(z.imag(), -z.real()); }
inline cplx mul_pos_i(cplx z) { return cplx(-z.imag(), z.real()); }

const cplx kExpIPi4 = std::polar(1.0, kPi / 4.0);
const cplx kExpNegIPi4 = std::polar(1.0, -kPi / 4.0);

}  // namespace

double bessel_j0(double x) {
    x = std::abs(x);
    if (x <= kSwitchover) return cyl0_series(cplx(x, 0.0)).j0.real();
    return hankel2_asymptotic(cplx(x, 0.0)).real();
}

double bessel_y0(double x) {
    if (!(x > 0.0)) throw DomainError("bessel_y0: requires x > 0");
    if (x <= kSwitchover) return cyl0_series(cplx(x, 0.0)).y0.real();
    return -hankel2_asymptotic(cplx(x, 0.0)).imag();  // H2 = J0 - i Y0
}

cplx hankel2_0(cplx z) {
    if (z == cplx(0.0, 0.0)) throw DomainError("hankel2_0: logarithmic singularity at z = 0");
    if (std::abs(z) <= kSwitchover) {
        const J0Y0 v = cyl0_series(z);
        return v.j0 - cplx(0.0, 1.0) * v.y0;
    }
    return hankel2_asymptotic(z);
}

cplx kappa_plus(cplx xi, cplx kxz) {
    // sqrt(xi - kxz) continued with the cut running downward from +kxz
    return kExpIPi4 * std::sqrt(mul_neg_i(xi - kxz));
}

cplx kappa_minus(cplx xi, cplx kxz) {
    // -i * sqrt(xi + kxz), cut running upward from -kxz
    return mul_neg_i(kExpNegIPi4 * std::sqrt(mul_pos_i(xi + kxz)));
}

cplx kappa_branch(cplx xi, cplx kxz) {
    // Equals kappa_plus * kappa_minus with the unit phase factors cancelled
    // analytically; written this way the evenness in xi is exact in floating
    // point (negating xi swaps the two sqrt arguments bit-for-bit).
    const cplx s1 = std::sqrt(mul_neg_i(xi - kxz));
    const cplx s2 = std::sqrt(mul_pos_i(xi + kxz));
    return mul_neg_i(s1 * s2);
}

}  // namespace bwh
