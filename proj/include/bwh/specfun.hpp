// specfun.hpp -- self-contained cylinder functions and branch-controlled
// square roots for the half-plane diffraction solver.

#pragma once

#include <complex>
#include <stdexcept>

namespace bwh {

using cplx = std::complex<double>;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bessel functions of order zero, real argument.
// Power series below the switchover, Hankel-type asymptotic expansion above.
// Absolute error < 1e-10 on 0 < x <= 50.
double bessel_j0(double x);
double bessel_y0(double x);  // throws DomainError for x <= 0

// Hankel function of the second kind, order zero, for arguments at or near
// the positive real axis. hankel2_0(x) = j0(x) - i*y0(x) for real x > 0.
cplx hankel2_0(cplx z);  // throws DomainError at z = 0

// kappa_branch(xi, kxz) = sqrt(kxz^2 - xi^2) on the radiation branch:
//   kappa(0) = kxz,
//   kappa(xi) = -i*sqrt(xi^2 - kxz^2) for real xi outside the propagating
//   band, so |exp(-i*kappa*|z|)| <= 1 there.
// Even in xi exactly. Cuts run vertically from +kxz downward and from -kxz
// upward; the function is analytic off those cuts. Branch points map to 0.
cplx kappa_branch(cplx xi, cplx kxz);

// Factors of kappa_branch: kappa = kappa_plus * kappa_minus.
// kappa_plus carries the +kxz branch point (cut downward, regular in the
// upper half-plane); kappa_minus carries -kxz (cut upward, regular below).
cplx kappa_plus(cplx xi, cplx kxz);
cplx kappa_minus(cplx xi, cplx kxz);

}  // namespace bwh
