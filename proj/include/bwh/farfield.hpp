// farfield.hpp -- saddle-point far zone, diffraction coefficient, total
// field assembly, the mirrored right-handed pipeline, and field maps.

#pragma once

#include <vector>

#include "bwh/solver.hpp"

namespace bwh {

struct EvanescentPartialWave : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FarFieldCut {
    std::vector<double> theta;       // observation angles (rad), 0 < theta < pi
    std::vector<cplx> coefficient;   // diffraction coefficient per angle
    std::vector<cplx> field_at_r;    // far field at the reference radius
    std::vector<char> shadow_flags;  // near a geometric-optics boundary
    double r = 0.0;
};

// Diffraction coefficient: the saddle-point amplitude at the observation
// angle. Carries the kappa*sqrt(2/pi) normalization so that
//   far_field = coefficient * sqrt(pi/(2 k r)) * exp(-i(k r - pi/4)).
cplx diffraction_coefficient(double theta, const SpectralSolution& sol,
                             bool* shadow_flag = nullptr);

// Far-zone field at (r, theta); documented validity floor k*r >~ 20.
cplx far_field(double r, double theta, const SpectralSolution& sol,
               bool* shadow_flag = nullptr);

FarFieldCut far_field_cut(const std::vector<double>& thetas, double r,
                          const SpectralSolution& sol, unsigned workers = 0);

// Total scalar field: plane-wave incident plus scattered. The contour
// integral already carries the pole, so nothing is added separately.
cplx total_field(double x, double z, const SpectralSolution& sol, double tol = 1e-8);

// Runs the whole pipeline for the right-handed partial wave: the same
// geometry and coupling constant, with the in-plane wavenumber k2xz and
// source constants rebuilt for it. Throws EvanescentPartialWave when the
// second partial wave does not propagate.
SpectralSolution q2_pipeline(const DerivedMedium& m, double ky, double loss, double r0,
                             double phi0, double kernel_tol = 1e-9);

struct FieldSample {
    double x = 0.0, z = 0.0;
    cplx value{0.0, 0.0};
    bool converged = false;
};

struct FieldGrid {
    double x0 = 0.0, x1 = 0.0, z0 = 0.0, z1 = 0.0;
    std::size_t nx = 0, nz = 0;
    std::vector<FieldSample> samples;  // row-major over z then x
};

// Grid of total-field values; rows are evaluated in parallel but assembled
// in a fixed order. Points inside the edge/source exclusion discs are
// flagged unconverged and left at zero.
FieldGrid field_map(double x0, double x1, double z0, double z1, std::size_t nx, std::size_t nz,
                    const SpectralSolution& sol, double tol = 1e-8, unsigned workers = 0);

}  // namespace bwh
