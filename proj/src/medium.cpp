#include "bwh/medium.hpp"

#include <cmath>

namespace bwh {

DerivedMedium derive_medium(const MediumParams& p) {
    if (!(p.epsilon > 0.0) || !(p.mu > 0.0) || !(p.omega > 0.0))
        throw std::invalid_argument("derive_medium: epsilon, mu, omega must be positive");

    DerivedMedium m;
    m.k = p.omega * std::sqrt(p.epsilon * p.mu);
    m.eta = std::sqrt(p.mu / p.epsilon);

    const double kab = m.k * m.k * p.alpha * p.beta;
    const double denom = 1.0 - kab;
    if (denom == 0.0) throw SingularMedium("derive_medium: k^2*alpha*beta = 1");

    const double d = 0.5 * m.k * (p.alpha - p.beta);
    const double s = 0.5 * m.k * (p.alpha + p.beta);
    const double root = std::sqrt(1.0 + d * d);

    m.gamma1 = m.k / denom * (root + s);
    m.gamma2 = m.k / denom * (root - s);

    // The impedance pair carries opposite signs of the k(alpha-beta)/2 term,
    // which keeps eta1*eta2 = eta^2 and the achiral limit exact.
    m.eta1 = m.eta / (root - d);
    m.eta2 = m.eta / (root + d);
    return m;
}

PropagationContext propagation_context(const DerivedMedium& m, double ky, double loss) {
    if (ky == 0.0)
        throw DecoupledCase("propagation_context: ky = 0 decouples the two polarizations");
    if (m.gamma1 == m.gamma2)
        throw AchiralDegenerate("propagation_context: gamma1 = gamma2 makes delta singular");
    if (loss < 0.0) throw std::invalid_argument("propagation_context: loss must be >= 0");

    PropagationContext c;
    c.medium = m;
    c.ky = ky;
    c.loss = loss;

    const double q1 = m.gamma1 * m.gamma1 - ky * ky;
    const double q2 = m.gamma2 * m.gamma2 - ky * ky;
    c.k1xz = std::sqrt(cplx(q1, 0.0)) + cplx(0.0, loss);
    c.k2xz = std::sqrt(cplx(q2, 0.0)) + cplx(0.0, loss);

    const cplx k1sq = c.k1xz * c.k1xz;
    const cplx k2sq = c.k2xz * c.k2xz;
    if (k1sq == k2sq)
        throw AchiralDegenerate("propagation_context: k1xz^2 = k2xz^2");
    c.delta = (m.gamma2 * k1sq + m.gamma1 * k2sq) / (cplx(0.0, ky) * (k2sq - k1sq));
    return c;
}

namespace {
inline Vec3c lin(const Vec3c& a, cplx ca, const Vec3c& b, cplx cb) {
    return {ca * a[0] + cb * b[0], ca * a[1] + cb * b[1], ca * a[2] + cb * b[2]};
}
}  // namespace

BeltramiPair beltrami_from_eh(const Vec3c& E, const Vec3c& H, const DerivedMedium& m) {
    const cplx a = cplx(m.eta1 / (m.eta1 + m.eta2), 0.0);
    BeltramiPair q;
    q.Q1 = lin(E, a, H, a * cplx(0.0, m.eta2));
    q.Q2 = lin(H, a, E, a * cplx(0.0, 1.0 / m.eta1));
    return q;
}

EHPair eh_from_beltrami(const BeltramiPair& q, const DerivedMedium& m) {
    // Inverse of the 2x2 map: E = Q1 - i*eta2*Q2, H = Q2 - i*Q1/eta1.
    EHPair f;
    f.E = lin(q.Q1, cplx(1.0, 0.0), q.Q2, cplx(0.0, -m.eta2));
    f.H = lin(q.Q2, cplx(1.0, 0.0), q.Q1, cplx(0.0, -1.0 / m.eta1));
    return f;
}

}  // namespace bwh
