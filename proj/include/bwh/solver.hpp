// solver.hpp -- assembles the half-plane scattering solution from the
// factorized kernel: closed-form spectral unknowns, the spectral amplitude
// of the scattered field, its numerical inverse transform, the plane-wave
// pole contribution, and transverse component reconstruction.

#pragma once

#include <memory>

#include "bwh/incident.hpp"
#include "bwh/kernel.hpp"

namespace bwh {

struct PoleEvaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectralUnknowns {
    cplx jump;        // half the transform of the field jump across the plane
    cplx jump_deriv;  // half the transform of the normal-derivative jump
};

struct FieldValue {
    cplx value{0.0, 0.0};
    bool converged = true;
    bool shadow_flag = false;  // pole within 0.02*k of the saddle abscissa
    double error_estimate = 0.0;
};

class SpectralSolution {
  public:
    SpectralSolution(std::shared_ptr<const FactorizedKernel> kernel, SourceSpec src);

    // Convenience: factorize and assemble in one step.
    static SpectralSolution build(const PropagationContext& ctx, const SourceSpec& src,
                                  double kernel_tol = 1e-9);

    const SourceSpec& source() const { return src_; }
    const PropagationContext& ctx() const { return kernel_->ctx(); }
    const FactorizedKernel& kernel() const { return *kernel_; }
    cplx pole_location() const { return pole_; }

    // Closed-form unknowns; throws PoleEvaluation at xi = -k1x.
    SpectralUnknowns spectral_unknowns(cplx xi) const;

    // Spectral amplitude of the scattered field on the upper side (z > 0);
    // the lower side differs by the sign of the jump part.
    cplx spectral_G(cplx xi) const;
    cplx lower_amplitude(cplx xi) const;

    // Scattered field by contour quadrature. At z = 0 the face is selected
    // by the sign bit (use -0.0 for the lower face).
    FieldValue scattered_field_ex(double x, double z, double tol = 1e-8) const;
    cplx scattered_field(double x, double z, double tol = 1e-8) const;

    // Spectral derivatives of the scattered field.
    cplx scattered_dx(double x, double z, double tol = 1e-8) const;
    cplx scattered_dz(double x, double z, double tol = 1e-8) const;

    // Plane-wave term carried by the spectral pole, computed from a numeric
    // residue (small-circle contour integral), not hard-coded.
    cplx pole_contribution(double x, double z) const;
    cplx pole_residue_circle() const;    // (1/2 pi i) contour integral of G
    cplx pole_residue_limit() const;     // Richardson limit of (xi+k1x) G

    // Transverse components of the total left-handed field at (x, z).
    // Returns {Qx, Qz}; the y component is the scalar the solver works with.
    std::pair<cplx, cplx> transverse_components(double x, double z, double tol = 1e-8) const;

    // Total scalar field: plane-wave incident plus scattered.
    cplx total_field(double x, double z, double tol = 1e-8) const;

    // Boundary-condition combination d/dx -+ delta d/dz of the *scattered*
    // field on the face z = 0+- (side = +1 or -1), evaluated spectrally.
    cplx boundary_combo_scattered(double x, int side, double tol = 1e-9) const;

    // Jumps of the total field across z = 0 (conductor absent for x < 0):
    // field jump and normal-derivative jump at abscissa x.
    cplx field_jump(double x, double tol = 1e-9) const;
    cplx deriv_jump(double x, double tol = 1e-9) const;

  private:
    cplx amplitude(cplx xi, double sgn_z) const;
    FieldValue transform(double x, double z, const std::function<cplx(cplx, cplx)>& weight,
                         double tol, double extra_decay) const;

    std::shared_ptr<const FactorizedKernel> kernel_;
    SourceSpec src_;
    cplx k_, delta_, pole_;
    cplx kminus_at_pole_, lplus_at_k1x_;
};

}  // namespace bwh
