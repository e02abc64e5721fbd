// verify.hpp -- independent residual checkers that certify the analytic
// steps without trusting the code paths they probe. Each checker emits a
// ResidualReport; sampling is driven by a seeded generator so reports are
// bit-reproducible.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bwh/farfield.hpp"

namespace bwh {

struct SampleRecord {
    double x = 0.0, z = 0.0;
    double residual = 0.0;
    std::string note;
};

struct ResidualReport {
    std::string check_name;
    std::size_t samples = 0;
    double max_residual = 0.0;
    double median_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<SampleRecord> details;

    void finalize();  // computes the aggregates and the pass flag
    std::string to_json() const;
    std::string to_text() const;
};

struct Region {
    double x0 = 0.0, x1 = 0.0, z0 = 0.0, z1 = 0.0;
};

// Five-point stencil residual of (dxx + dzz + kxz^2) applied to the sampled
// field, normalized by |kxz^2 Q|. The reported residual per sample is the
// deviation of the estimated convergence order from 2 (runs at h and h/2);
// a field with the wrong wavenumber plateaus and fails loudly.
ResidualReport helmholtz_residual(const std::function<cplx(double, double)>& field, cplx kxz,
                                  const Region& region, double h, std::size_t n_samples = 20,
                                  std::uint64_t seed = 42, double tolerance = 0.2);

// Relative deviation between the spectral and Hankel forms of the incident
// field at seeded points with k*R in [2, 50].
ResidualReport spectral_identity_check(const SourceSpec& src, const PropagationContext& ctx,
                                       std::size_t n_points = 20, std::uint64_t seed = 42,
                                       double tolerance = 1e-6);

// Product identity of the split through the public samplers, plus zero
// winding counts of each factor on its half-plane rectangle.
ResidualReport factorization_check(const FactorizedKernel& kernel, std::size_t n_points = 50,
                                   std::uint64_t seed = 42, double tolerance = 1e-8);

// Impedance-condition residual on both faces of the conductor and
// continuity residuals across the open half of the plane, all relative to
// the local field/gradient scale. With incident_only = true the scattered
// part is dropped; that configuration must fail (negative control).
ResidualReport boundary_check(const SpectralSolution& sol, std::size_t n_surface = 200,
                              std::uint64_t seed = 42, double tolerance = 1e-3,
                              bool incident_only = false);

// |incident + pole contribution| / |incident| at seeded points.
ResidualReport cancellation_check(const SpectralSolution& sol, std::size_t n_points = 50,
                                  std::uint64_t seed = 42, double tolerance = 1e-10);

}  // namespace bwh
