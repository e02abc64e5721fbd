// oracle_bessel.hpp -- test-only high-precision oracle for the order-zero
// cylinder functions, built on 256-bit MPFR arithmetic with plain Maclaurin
// series. Deliberately shares no code or algorithm with the library (which
// switches to an asymptotic expansion); converges for every argument the
// tests probe because the working precision absorbs the cancellation.

#pragma once

#include <mpfr.h>

#include <complex>
#include <functional>

namespace oracle {

inline constexpr mpfr_prec_t kPrec = 256;

// J0(x) = sum (-1)^m (x^2/4)^m / (m!)^2
inline double j0(double x) {
    mpfr_t q, term, sum, tmp;
    mpfr_inits2(kPrec, q, term, sum, tmp, (mpfr_ptr)nullptr);
    mpfr_set_d(q, x, MPFR_RNDN);
    mpfr_sqr(q, q, MPFR_RNDN);
    mpfr_div_ui(q, q, 4, MPFR_RNDN);
    mpfr_set_ui(term, 1, MPFR_RNDN);
    mpfr_set_ui(sum, 1, MPFR_RNDN);
    for (unsigned m = 1; m <= 2000; ++m) {
        mpfr_mul(term, term, q, MPFR_RNDN);
        mpfr_div_ui(term, term, m, MPFR_RNDN);
        mpfr_div_ui(term, term, m, MPFR_RNDN);
        mpfr_neg(term, term, MPFR_RNDN);
        mpfr_add(sum, sum, term, MPFR_RNDN);
        mpfr_abs(tmp, term, MPFR_RNDN);
        if (mpfr_cmp_d(tmp, 1e-60) < 0) break;
    }
    const double out = mpfr_get_d(sum, MPFR_RNDN);
    mpfr_clears(q, term, sum, tmp, (mpfr_ptr)nullptr);
    return out;
}

// Y0(x) = (2/pi)[(ln(x/2) + gamma) J0(x) + sum (-1)^{m+1} H_m (x^2/4)^m/(m!)^2]
inline double y0(double x) {
    mpfr_t q, term, hsum, acc, j0s, lg, pi, gamma, tmp;
    mpfr_inits2(kPrec, q, term, hsum, acc, j0s, lg, pi, gamma, tmp, (mpfr_ptr)nullptr);

    mpfr_set_d(q, x, MPFR_RNDN);
    mpfr_sqr(q, q, MPFR_RNDN);
    mpfr_div_ui(q, q, 4, MPFR_RNDN);

    mpfr_set_ui(term, 1, MPFR_RNDN);
    mpfr_set_ui(j0s, 1, MPFR_RNDN);
    mpfr_set_ui(hsum, 0, MPFR_RNDN);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    for (unsigned m = 1; m <= 2000; ++m) {
        mpfr_mul(term, term, q, MPFR_RNDN);
        mpfr_div_ui(term, term, m, MPFR_RNDN);
        mpfr_div_ui(term, term, m, MPFR_RNDN);
        mpfr_neg(term, term, MPFR_RNDN);
        mpfr_add(j0s, j0s, term, MPFR_RNDN);
        mpfr_set_ui(tmp, 1, MPFR_RNDN);
        mpfr_div_ui(tmp, tmp, m, MPFR_RNDN);
        mpfr_add(hsum, hsum, tmp, MPFR_RNDN);
        mpfr_mul(tmp, term, hsum, MPFR_RNDN);
        mpfr_sub(acc, acc, tmp, MPFR_RNDN);  // (-1)^{m+1} H_m q^m/(m!)^2
        mpfr_abs(tmp, term, MPFR_RNDN);
        mpfr_mul(tmp, tmp, hsum, MPFR_RNDN);
        if (mpfr_cmp_d(tmp, 1e-60) < 0) break;
    }

    mpfr_set_d(lg, x, MPFR_RNDN);
    mpfr_div_ui(lg, lg, 2, MPFR_RNDN);
    mpfr_log(lg, lg, MPFR_RNDN);
    mpfr_const_euler(gamma, MPFR_RNDN);
    mpfr_add(lg, lg, gamma, MPFR_RNDN);
    mpfr_mul(lg, lg, j0s, MPFR_RNDN);
    mpfr_add(lg, lg, acc, MPFR_RNDN);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_ui_div(pi, 2, pi, MPFR_RNDN);
    mpfr_mul(lg, lg, pi, MPFR_RNDN);

    const double out = mpfr_get_d(lg, MPFR_RNDN);
    mpfr_clears(q, term, hsum, acc, j0s, lg, pi, gamma, tmp, (mpfr_ptr)nullptr);
    return out;
}

inline std::complex<double> hankel2(double x) { return {j0(x), -y0(x)}; }

// Bisection for a sign change of f on [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace oracle
