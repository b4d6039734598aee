#include "blflux/error.hpp"
#include "blflux/jet.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace blflux;
using blflux::testing::jet_close;
using blflux::testing::rel_close;

namespace {

// s^1.1 exp(s^10) in extended precision, for finite differences.
long double counterexample(long double s) { return std::pow(s, 1.1L) * std::exp(std::pow(s, 10.0L)); }

// Central differences of orders 1..3 with step h.
struct Differences {
    double d1, d2, d3;
};

Differences central(long double (*f)(long double), long double x, long double h) {
    const long double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
    return {static_cast<double>((fp1 - fm1) / (2 * h)),
            static_cast<double>((fp1 - 2 * f0 + fm1) / (h * h)),
            static_cast<double>((fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h * h * h))};
}

Jet3 counterexample_jet(double s) {
    const Jet3 x = seed(s);
    return mul(pow_const(x, 1.1), exp_jet(pow_const(x, 10.0)));
}

}  // namespace

TEST_CASE("seed is the identity jet") {
    CHECK(seed(0.5) == Jet3(0.5, 1, 0, 0));
    CHECK(seed(0.0) == Jet3(0, 1, 0, 0));
    CHECK(seed(1.0) == Jet3(1, 1, 0, 0));
}

TEST_CASE("mul follows the Leibniz rule") {
    CHECK(mul(seed(0.5), seed(0.5)) == Jet3(0.25, 1, 2, 0));
    const Jet3 x(0.3, -1.2, 4.5, 7.0);
    CHECK(mul(x, Jet3::constant(1.0)) == x);

    // third component: a3 b0 + 3 a2 b1 + 3 a1 b2 + a0 b3
    const Jet3 a(1, 2, 3, 4), b(5, 6, 7, 8);
    CHECK(mul(a, b).f3 == doctest::Approx(4 * 5 + 3 * 3 * 6 + 3 * 2 * 7 + 1 * 8));
}

TEST_CASE("composed jet matches finite differences") {
    const double s = 0.7;
    const Jet3 j = counterexample_jet(s);
    const auto d = central(counterexample, s, 1e-4L);
    CHECK(rel_close(j.f0, static_cast<double>(counterexample(s)), 1e-14));
    CHECK(rel_close(j.f1, d.d1, 1e-5));
    CHECK(rel_close(j.f2, d.d2, 1e-5));
    CHECK(rel_close(j.f3, d.d3, 1e-5));
}

TEST_CASE("composed jet matches the hand-derived derivatives of s^1.1 exp(s^10)") {
    for (double s : {0.1, 0.4355, 0.7, 0.95}) {
        const double e = std::exp(std::pow(s, 10));
        const double d1 = 1.1 * std::pow(s, 0.1) * e + 10 * std::pow(s, 10.1) * e;
        const double d2 = 0.11 * std::pow(s, -0.9) * e + 112 * std::pow(s, 9.1) * e +
                          100 * std::pow(s, 19.1) * e;
        const Jet3 j = counterexample_jet(s);
        CHECK(rel_close(j.f1, d1, 1e-13));
        CHECK(rel_close(j.f2, d2, 1e-13));
    }
}

TEST_CASE("sum, difference and quotient rules") {
    const Jet3 a(0.3, -1.2, 4.5, 7.0);
    CHECK(add(a, neg(a)) == Jet3(0, 0, 0, 0));
    CHECK(div(seed(0.5), seed(0.5)) == Jet3(1, 0, 0, 0));

    // 1/s at 0.5: (1/s, -1/s^2, 2/s^3, -6/s^4) = (2, -4, 16, -96)
    const Jet3 s2 = mul(seed(0.5), seed(0.5));
    const Jet3 s3 = mul(s2, seed(0.5));
    const Jet3 q = div(s2, s3);
    CHECK(jet_close(q, Jet3(2, -4, 16, -96), 1e-15));
}

TEST_CASE("division by a zero-valued jet is a domain error") {
    CHECK_THROWS_AS(div(seed(1.0), Jet3(0, 1, 0, 0)), DomainError);
}

TEST_CASE("pow and exp") {
    CHECK(exp_jet(Jet3(0, 1, 0, 0)) == Jet3(1, 1, 1, 1));
    CHECK(jet_close(pow_const(seed(0.5), 2.0), Jet3(0.25, 1, 2, 0), 1e-15));
    CHECK(pow_const(seed(0.0), 2.0) == Jet3(0, 0, 2, 0));
    CHECK(pow_const(seed(0.0), 4.0) == Jet3(0, 0, 0, 0));
    CHECK(pow_const(seed(-0.5), 3.0).f0 == doctest::Approx(-0.125));
    CHECK(pow_const(seed(0.3), 0.0) == Jet3::constant(1.0));

    CHECK_THROWS_AS(pow_const(seed(0.0), 1.1), DomainError);
    CHECK_THROWS_AS(pow_const(seed(-0.2), 0.5), DomainError);
    CHECK_THROWS_AS(pow_const(seed(0.0), -1.0), DomainError);
}

TEST_CASE("reflect evaluates m(1 - s)") {
    const JetFunction square = [](const Jet3& x) { return mul(x, x); };
    // (1 - s)^2 at 0.3: value 0.49, slope -2(1 - s) = -1.4, curvature 2
    CHECK(jet_close(reflect(square, 0.3), Jet3(0.49, -1.4, 2, 0), 1e-15));

    // reflecting twice gives back m
    const JetFunction cube = [](const Jet3& x) { return pow_const(x, 3.0); };
    const JetFunction reflected = [&](const Jet3& x) {
        const Jet3 one_minus = sub(Jet3::constant(1.0), x);
        return cube(one_minus);
    };
    for (double s : {0.1, 0.25, 0.6}) {
        CHECK(jet_close(reflect(reflected, s), cube(seed(s)), 1e-15));
    }
}

TEST_CASE("property: mul is commutative and associative") {
    blflux::testing::Rng rng(20240611);
    for (int i = 0; i < 500; ++i) {
        const Jet3 a = rng.jet(), b = rng.jet(), c = rng.jet();
        CHECK(jet_close(mul(a, b), mul(b, a), 1e-13));
        CHECK(jet_close(mul(mul(a, b), c), mul(a, mul(b, c)), 1e-13));
    }
}

TEST_CASE("property: div undoes mul") {
    blflux::testing::Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const Jet3 a = rng.jet();
        Jet3 b = rng.jet();
        b.f0 = rng.uniform(0.5, 2.0) * (rng.index(2) ? 1.0 : -1.0);
        CHECK(jet_close(div(mul(a, b), b), a, 1e-12));
    }
}
