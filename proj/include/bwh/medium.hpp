// medium.hpp -- constitutive parameters of the bi-isotropic background,
// derived Beltrami wavenumbers/impedances, and the 2-D propagation context.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include "bwh/specfun.hpp"

namespace bwh {

struct SingularMedium : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DecoupledCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AchiralDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constitutive scalars. Units are the caller's responsibility; normalized
// (epsilon = mu = 1) input is fine everywhere.
struct MediumParams {
    double epsilon = 1.0;
    double mu = 1.0;
    double alpha = 0.0;  // bi-isotropy length scalars
    double beta = 0.0;
    double omega = 1.0;
};

struct DerivedMedium {
    double k = 0.0;       // background wavenumber omega*sqrt(eps*mu)
    double eta = 0.0;     // background impedance sqrt(mu/eps)
    double gamma1 = 0.0;  // left-handed Beltrami wavenumber
    double gamma2 = 0.0;  // right-handed Beltrami wavenumber
    double eta1 = 0.0;    // left impedance
    double eta2 = 0.0;    // right impedance
};

// Everything the scalar 2-D problem needs once the transverse wavenumber ky
// is fixed. k1xz/k2xz carry +i*loss; spectral machinery maps that to its own
// damping convention internally.
struct PropagationContext {
    DerivedMedium medium;
    double ky = 0.0;
    double loss = 0.0;
    cplx k1xz{0.0, 0.0};
    cplx k2xz{0.0, 0.0};
    cplx delta{0.0, 0.0};  // boundary coupling constant
};

using Vec3c = std::array<cplx, 3>;

struct BeltramiPair {
    Vec3c Q1{};  // left-handed
    Vec3c Q2{};  // right-handed
};

struct EHPair {
    Vec3c E{};
    Vec3c H{};
};

// throws SingularMedium when k^2*alpha*beta = 1
DerivedMedium derive_medium(const MediumParams& p);

// throws DecoupledCase (ky = 0) or AchiralDegenerate (gamma1 = gamma2)
PropagationContext propagation_context(const DerivedMedium& m, double ky, double loss = 0.0);

BeltramiPair beltrami_from_eh(const Vec3c& E, const Vec3c& H, const DerivedMedium& m);
EHPair eh_from_beltrami(const BeltramiPair& q, const DerivedMedium& m);

}  // namespace bwh
