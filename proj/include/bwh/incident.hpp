// incident.hpp -- the line-source incident field three ways: exact Hankel
// form, spectral integral, and far-field plane-wave reduction.

#pragma once

#include "bwh/contour.hpp"
#include "bwh/medium.hpp"
#include "bwh/quadrature.hpp"

namespace bwh {

struct SourcePointSingularity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Line source at (-x0, -z0) = r0*(cos phi0, sin phi0) with the derived
// plane-wave surrogate (amplitude c, wavevector (k1x, k1z)).
struct SourceSpec {
    double x0 = 0.0;
    double z0 = 0.0;
    double r0 = 0.0;
    double phi0 = 0.0;  // -pi < phi0 < -pi/2 for a source below-left of the edge
    cplx amplitude_c{0.0, 0.0};
    cplx k1x{0.0, 0.0};
    cplx k1z{0.0, 0.0};

    static SourceSpec from_polar(double r0, double phi0, const PropagationContext& ctx);
    static SourceSpec from_cartesian(double x0, double z0, const PropagationContext& ctx);
};

// Scale of the plane-wave amplitude for a unit-strength line source at
// distance r0 (the asymptotic Hankel prefactor).
cplx line_source_amplitude(cplx kxz, double r0);

// Exact field: -(i/4) * H0^(2)(k1xz * R), R = |(x + x0, z + z0)|.
cplx incident_exact(double x, double z, const SourceSpec& src, const PropagationContext& ctx);

// Same field by numerical inversion of its plane-wave spectrum.
QuadResult incident_spectral(double x, double z, const SourceSpec& src,
                             const PropagationContext& ctx, const QuadOptions& opt = {});

// Far-field plane-wave reduction: c * exp(i(k1x*x + k1z*z)).
cplx incident_far(double x, double z, const SourceSpec& src);

}  // namespace bwh
