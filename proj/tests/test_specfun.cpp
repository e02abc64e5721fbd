#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bwh/specfun.hpp"
#include "oracle_bessel.hpp"

using namespace bwh;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx I{0.0, 1.0};
}  // namespace

TEST_CASE("j0 basics and oracle agreement") {
    CHECK(bessel_j0(0.0) == doctest::Approx(1.0).epsilon(1e-15));

    // first zero located by bisection on the oracle
    const double z1 = oracle::bisect([](double x) { return oracle::j0(x); }, 2.0, 3.0);
    CHECK(std::abs(z1 - 2.404826) < 1e-6);
    CHECK(std::abs(bessel_j0(2.404826)) < 1e-6);

    // absolute accuracy across the contract range, including both branches
    for (double x = 0.05; x <= 50.0; x += 0.37) {
        CHECK(std::abs(bessel_j0(x) - oracle::j0(x)) < 1e-10);
        CHECK(std::abs(bessel_y0(x) - oracle::y0(x)) < 1e-10);
    }
}

TEST_CASE("y0 domain and worked value") {
    CHECK(std::abs(oracle::y0(1.0) - 0.088257) < 1e-6);
    CHECK(bessel_y0(1.0) == doctest::Approx(oracle::y0(1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_y0(0.0), DomainError);
    CHECK_THROWS_AS(bessel_y0(-1.0), DomainError);
}

TEST_CASE("hankel2_0 values and identities") {
    CHECK_THROWS_AS(hankel2_0(cplx(0.0, 0.0)), DomainError);

    const cplx h1 = hankel2_0(cplx(1.0, 0.0));
    CHECK(std::abs(h1 - cplx(0.765198, -0.088257)) < 1e-6);
    CHECK(std::abs(h1 - oracle::hankel2(1.0)) < 1e-9);

    for (double x = 0.3; x < 40.0; x += 1.7)
        CHECK(hankel2_0(cplx(x, 0.0)).real() == doctest::Approx(bessel_j0(x)).epsilon(1e-12));

    const double mag100 = std::abs(hankel2_0(cplx(100.0, 0.0)));
    CHECK(std::abs(mag100 - std::sqrt(2.0 / (kPi * 100.0))) / mag100 < 3e-3);
}

TEST_CASE("hankel2_0 asymptotic consistency band") {
    for (double x = 20.0; x <= 200.0; x += 4.5) {
        const cplx h = hankel2_0(cplx(x, 0.0));
        const cplx lead = std::sqrt(2.0 / (kPi * x)) * std::exp(-I * (x - kPi / 4.0));
        CHECK(std::abs(h - lead) / std::abs(h) < 1.0 / (4.0 * x));
    }
}

TEST_CASE("cross-check band around the series/asymptotic switchover") {
    for (double x = 10.0; x <= 18.0; x += 0.23) {
        CHECK(std::abs(bessel_j0(x) - oracle::j0(x)) < 1e-10);
        CHECK(std::abs(bessel_y0(x) - oracle::y0(x)) < 1e-10);
    }
}

TEST_CASE("Wronskian-style check with finite differences") {
    const double h = 1e-6;
    for (double x = 0.5; x <= 30.0; x += 0.61) {
        const double j0p = (bessel_j0(x + h) - bessel_j0(x - h)) / (2.0 * h);
        const double y0p = (bessel_y0(x + h) - bessel_y0(x - h)) / (2.0 * h);
        const double w = bessel_j0(x) * y0p - j0p * bessel_y0(x);
        CHECK(std::abs(w - 2.0 / (kPi * x)) < 1e-5);
    }
}

TEST_CASE("kappa_branch pinned values") {
    const cplx k(1.3, 0.0);
    CHECK(std::abs(kappa_branch(cplx(0.0, 0.0), k) - k) < 1e-14);

    const cplx v = kappa_branch(2.0 * k, k);
    CHECK(std::abs(v - (-I * k * std::sqrt(3.0))) < 1e-13);

    // branch points map to zero
    CHECK(std::abs(kappa_branch(k, k)) == 0.0);
    CHECK(std::abs(kappa_branch(-k, k)) == 0.0);

    // in-band positive root
    CHECK(std::abs(kappa_branch(cplx(0.5, 0.0), cplx(1.0, 0.0)) - std::sqrt(0.75)) < 1e-14);
}

TEST_CASE("kappa_branch is exactly even") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ure(-5.0, 5.0);
    std::uniform_real_distribution<double> uim(-0.2, 0.2);
    const cplx k(1.0, 0.0);
    for (int i = 0; i < 500; ++i) {
        const cplx xi(ure(rng), uim(rng));
        const cplx a = kappa_branch(xi, k);
        const cplx b = kappa_branch(-xi, k);
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
    }
}

TEST_CASE("kappa_branch continuity along the real axis away from cut points") {
    // A genuine branch flip shows up as an O(|kappa|) defect in the second
    // difference; smooth sqrt variation leaves only h^2 * kappa''.
    const cplx k(1.0, 0.0);
    const double h = 5e-5;
    double worst = 0.0;
    for (double x = -3.0; x < 3.0; x += 7e-4) {
        if (std::abs(std::abs(x) - 1.0) < 0.1) continue;  // cut crossings excluded
        const cplx a = kappa_branch(cplx(x, 0.0), k);
        const cplx m = kappa_branch(cplx(x + 0.5 * h, 0.0), k);
        const cplx b = kappa_branch(cplx(x + h, 0.0), k);
        worst = std::max(worst, std::abs(a - 2.0 * m + b));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("kappa factors multiply back and sit in their half-planes") {
    const cplx k(1.0, 0.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ure(-4.0, 4.0);
    std::uniform_real_distribution<double> uim(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const cplx xi(ure(rng), uim(rng));
        const cplx prod = kappa_plus(xi, k) * kappa_minus(xi, k);
        CHECK(std::abs(prod - kappa_branch(xi, k)) < 1e-12 * (1.0 + std::abs(prod)));
    }
    // kappa_plus analytic above: sample continuity across the upper half-plane
    // at the +k abscissa (its cut runs downward)
    const cplx up1 = kappa_plus(cplx(1.0 - 1e-9, 0.5), k);
    const cplx up2 = kappa_plus(cplx(1.0 + 1e-9, 0.5), k);
    CHECK(std::abs(up1 - up2) < 1e-6);
    // kappa_minus analytic below at the -k abscissa (cut runs upward)
    const cplx dn1 = kappa_minus(cplx(-1.0 - 1e-9, -0.5), k);
    const cplx dn2 = kappa_minus(cplx(-1.0 + 1e-9, -0.5), k);
    CHECK(std::abs(dn1 - dn2) < 1e-6);
}

TEST_CASE("kappa_branch decay guarantee outside the band") {
    const cplx k(2.0, 0.0);
    for (double x = 2.05; x < 40.0; x += 0.13) {
        const cplx kap = kappa_branch(cplx(x, 0.0), k);
        CHECK(std::abs(std::exp(-I * kap * 1.0)) <= 1.0 + 1e-14);
        const cplx kap2 = kappa_branch(cplx(-x, 0.0), k);
        CHECK(std::abs(std::exp(-I * kap2 * 1.0)) <= 1.0 + 1e-14);
    }
}
