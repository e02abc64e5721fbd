#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bwh/medium.hpp"

using namespace bwh;

namespace {

MediumParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ueps(0.2, 5.0);
    std::uniform_real_distribution<double> uom(0.2, 5.0);
    MediumParams p;
    p.epsilon = ueps(rng);
    p.mu = ueps(rng);
    p.omega = uom(rng);
    const double k = p.omega * std::sqrt(p.epsilon * p.mu);
    std::uniform_real_distribution<double> uab(-0.6 / (k * k), 0.6 / (k * k));
    p.alpha = uab(rng);
    p.beta = uab(rng);
    return p;
}

}  // namespace

TEST_CASE("achiral limit collapses to the background") {
    MediumParams p;
    p.epsilon = 1.0;
    p.mu = 1.0;
    p.omega = 2.0;
    const DerivedMedium m = derive_medium(p);
    CHECK(m.k == doctest::Approx(2.0));
    CHECK(m.gamma1 == doctest::Approx(2.0));
    CHECK(m.gamma2 == doctest::Approx(2.0));
    CHECK(m.eta1 == doctest::Approx(1.0));
    CHECK(m.eta2 == doctest::Approx(1.0));
}

TEST_CASE("hand-substituted chiral example") {
    MediumParams p;
    p.omega = 1.0;  // k = 1
    p.alpha = 0.1;
    p.beta = 0.1;
    const DerivedMedium m = derive_medium(p);
    CHECK(m.gamma1 == doctest::Approx(1.1 / 0.99).epsilon(1e-12));
    CHECK(m.gamma2 == doctest::Approx(0.9 / 0.99).epsilon(1e-12));
}

TEST_CASE("singular medium rejected") {
    MediumParams p;
    p.omega = 1.0;
    p.alpha = 1.0;
    p.beta = 1.0;  // k^2 alpha beta = 1
    CHECK_THROWS_AS(derive_medium(p), SingularMedium);
}

TEST_CASE("algebraic identities over random parameter sweeps") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 2000; ++i) {
        const MediumParams p = random_params(rng);
        const DerivedMedium m = derive_medium(p);
        const double k2 = m.k * m.k;
        const double lhs = m.gamma1 * m.gamma2 * (1.0 - k2 * p.alpha * p.beta);
        CHECK(std::abs(lhs - k2) <= 1e-12 * k2);

        const double diff = m.gamma1 - m.gamma2;
        const double rhs = k2 * (p.alpha + p.beta) / (1.0 - k2 * p.alpha * p.beta);
        CHECK(std::abs(diff - rhs) <= 1e-12 * (std::abs(rhs) + k2));

        CHECK(m.eta1 * m.eta2 == doctest::Approx(m.eta * m.eta).epsilon(1e-12));
    }
}

TEST_CASE("achiral limit is continuous") {
    MediumParams p;
    p.omega = 1.3;
    double prev_g1 = 0.0;
    for (double a = 1e-2; a > 1e-12; a *= 0.1) {
        p.alpha = a;
        p.beta = 0.5 * a;
        const DerivedMedium m = derive_medium(p);
        CHECK(m.gamma1 >= m.gamma2);
        prev_g1 = m.gamma1;
    }
    CHECK(prev_g1 == doctest::Approx(1.3).epsilon(1e-9));
}

TEST_CASE("propagation context worked example") {
    DerivedMedium m;
    m.gamma1 = 2.0;
    m.gamma2 = 1.5;
    m.k = 1.0;
    m.eta = 1.0;
    const PropagationContext c = propagation_context(m, 1.0, 0.0);
    CHECK(std::abs(c.k1xz - std::sqrt(cplx(3.0, 0.0))) < 1e-14);
    CHECK(std::abs(c.k2xz - std::sqrt(cplx(1.25, 0.0))) < 1e-14);
    CHECK(std::abs(c.delta - cplx(0.0, 4.0)) < 1e-13);
}

TEST_CASE("propagation context degenerate inputs") {
    DerivedMedium m;
    m.gamma1 = 2.0;
    m.gamma2 = 2.0;
    CHECK_THROWS_AS(propagation_context(m, 1.0, 0.0), AchiralDegenerate);
    m.gamma2 = 1.5;
    CHECK_THROWS_AS(propagation_context(m, 0.0, 0.0), DecoupledCase);
}

TEST_CASE("beltrami conversion round trips and special inputs") {
    MediumParams p;
    p.omega = 1.0;
    p.alpha = 0.15;
    p.beta = -0.05;
    const DerivedMedium m = derive_medium(p);

    const Vec3c zero{};
    const BeltramiPair q0 = beltrami_from_eh(zero, zero, m);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(q0.Q1[i]) == 0.0);
        CHECK(std::abs(q0.Q2[i]) == 0.0);
    }

    // H = -iE/eta1 kills the right-handed part and leaves Q1 = E
    const Vec3c E{cplx(1.0, 0.5), cplx(-2.0, 0.1), cplx(0.3, -0.7)};
    Vec3c H;
    for (int i = 0; i < 3; ++i) H[i] = -cplx(0.0, 1.0) * E[i] / m.eta1;
    const BeltramiPair q = beltrami_from_eh(E, H, m);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(q.Q2[i]) < 1e-14);
        CHECK(std::abs(q.Q1[i] - E[i]) < 1e-13);
    }

    // inverse worked example: pure Q1 implies H = -i Q1 / eta1
    BeltramiPair pure;
    pure.Q1 = E;
    const EHPair f = eh_from_beltrami(pure, m);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(f.E[i] - E[i]) < 1e-14);
        CHECK(std::abs(f.H[i] - (-cplx(0.0, 1.0) * E[i] / m.eta1)) < 1e-14);
    }

    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        Vec3c Er, Hr;
        for (int i = 0; i < 3; ++i) {
            Er[i] = cplx(u(rng), u(rng));
            Hr[i] = cplx(u(rng), u(rng));
        }
        const EHPair back = eh_from_beltrami(beltrami_from_eh(Er, Hr, m), m);
        double scale = 0.0, err = 0.0;
        for (int i = 0; i < 3; ++i) {
            scale = std::max({scale, std::abs(Er[i]), std::abs(Hr[i])});
            err = std::max({err, std::abs(back.E[i] - Er[i]), std::abs(back.H[i] - Hr[i])});
        }
        CHECK(err <= 1e-13 * scale);
    }
}
