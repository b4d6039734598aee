#include "blflux/classifier.hpp"
#include "blflux/error.hpp"
#include "blflux/flux.hpp"
#include "blflux/models.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

using namespace blflux;
using namespace blflux::flux;
using models::ModelPair;
using models::parse;
using blflux::testing::rel_close;

namespace {

ModelPair symmetric(const models::ModelExpr& m) { return {m, m}; }

ModelPair random_pair(blflux::testing::Rng& rng) {
    const auto cat = blflux::testing::catalog();
    const auto pick = [&] { return cat[static_cast<std::size_t>(rng.index(static_cast<int>(cat.size())))].expr; };
    return {pick(), pick()};
}

}  // namespace

TEST_CASE("flux values") {
    CHECK(f_jet(symmetric(models::power(1, 2)), 0.5).f0 == 0.5);

    const ModelPair pair{parse("s^2"), parse("s^3")};
    CHECK(rel_close(f_jet(pair, 0.5).f0, 2.0 / 3.0, 1e-15));

    for (const auto& [name, m] : blflux::testing::catalog()) {
        CAPTURE(name);
        const ModelPair p = symmetric(m);
        for (int i = 1; i <= 100; ++i) {
            const double s = 0.1 + 0.8 * i / 101.0;
            CHECK(std::abs(f_jet(p, s).f0 + f_jet(p, 1 - s).f0 - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("zero total mobility is a domain error") {
    const ModelPair pair{parse("s - s"), parse("s - s")};
    CHECK_THROWS_AS(f_jet(pair, 0.3), DomainError);
    CHECK_THROWS_AS(f2_closed(pair, 0.3), DomainError);
}

TEST_CASE("closed-form second derivative") {
    const ModelPair square = symmetric(models::power(1, 2));
    CHECK(std::abs(f2_closed(square, 0.5)) <= 1e-15);
    CHECK(f2_closed(square, 0.25) > 0.0);
    CHECK(f2_closed(square, 0.75) < 0.0);

    // f = s^2 / (s^2 + (1 - s)^2), differentiated by hand:
    // f' = 2 s (1 - s) / D^2 with D = 2 s^2 - 2 s + 1.
    for (double s : {0.2, 0.4, 0.9}) {
        const double D = 2 * s * s - 2 * s + 1;
        CHECK(rel_close(f1_closed(square, s), 2 * s * (1 - s) / (D * D), 1e-14));
        CHECK(rel_close(f_jet(square, s).f1, 2 * s * (1 - s) / (D * D), 1e-14));
    }
}

TEST_CASE("property: closed forms agree with jet arithmetic") {
    blflux::testing::Rng rng(1234);
    for (int i = 0; i < 1000; ++i) {
        const ModelPair p = random_pair(rng);
        const double s = rng.uniform(0.05, 0.95);
        const Jet3 j = f_jet(p, s);
        CAPTURE(p.m_a.to_string());
        CAPTURE(p.m_b.to_string());
        CAPTURE(s);
        // f'' vanishes at inflections; measure against the size of its terms.
        const double scale = 1e-6 * std::abs(j.f1);
        CHECK(rel_close(f2_closed(p, s), j.f2, 1e-10, scale));
        CHECK(rel_close(f1_closed(p, s), j.f1, 1e-10));
    }
}

TEST_CASE("auxiliary roots") {
    const auto sym = symmetric(models::power(1, 2));
    REQUIRE(find_s1(sym));
    REQUIRE(find_s2(sym));
    CHECK(std::abs(find_s1(sym)->s - 0.5) <= 1e-12);
    CHECK(std::abs(find_s2(sym)->s - 0.5) <= 1e-12);

    // 2 s - 3 (1 - s)^2 = 0  <=>  3 s^2 - 8 s + 3 = 0
    const ModelPair pair{parse("s^2"), parse("s^3")};
    const double a = 3, b = -8, c = 3;
    const double root = (-b - std::sqrt(b * b - 4 * a * c)) / (2 * a);
    const auto s1 = find_s1(pair);
    REQUIRE(s1);
    CHECK(std::abs(s1->s - root) <= 1e-11);
    CHECK(s1->sign_changes == 1);

    // 2 (1 - s)^3 - 6 s^2 (1 - s) = 0  <=>  (1 - s)^2 = 3 s^2
    const double s2_root = 1.0 / (1.0 + std::sqrt(3.0));
    const auto s2 = find_s2(pair);
    REQUIRE(s2);
    CHECK(std::abs(s2->s - s2_root) <= 1e-11);

    const auto analysis = inflection_points(pair);
    REQUIRE(analysis.inflections.size() == 1);
    const double x = analysis.inflections[0].s;
    CHECK(x >= std::min(s1->s, s2->s));
    CHECK(x <= std::max(s1->s, s2->s));
}

TEST_CASE("inflection counts") {
    const auto ce1 = inflection_points(symmetric(models::counterexample_exp()));
    REQUIRE(ce1.inflections.size() == 3);
    CHECK(std::abs(ce1.inflections[1].s - 0.5) <= 1e-9);
    CHECK(ce1.inflections[1].direction == Direction::rising);
    CHECK_FALSE(ce1.s_shaped);
    REQUIRE(ce1.f3_at_half);
    CHECK(*ce1.f3_at_half > 0.0);

    CHECK(inflection_points(symmetric(models::counterexample_poly10())).inflections.size() == 3);

    const auto ce3 = inflection_points(symmetric(models::counterexample_poly30()));
    CHECK(ce3.inflections.size() == 5);
    REQUIRE(ce3.f3_at_half);
    CHECK(*ce3.f3_at_half < 0.0);

    const auto sq = inflection_points(symmetric(models::power(1, 2)));
    REQUIRE(sq.inflections.size() == 1);
    CHECK(std::abs(sq.inflections[0].s - 0.5) <= 1e-9);
    CHECK(sq.inflections[0].direction == Direction::falling);
    CHECK(sq.s_shaped);

    const auto asym = inflection_points({parse("s^2"), parse("s^3")});
    CHECK_FALSE(asym.f3_at_half);
}

TEST_CASE("analysis invariants") {
    for (const auto& m : {models::counterexample_exp(), models::counterexample_poly30(), models::corey_b()}) {
        const auto a = inflection_points(symmetric(m));
        CHECK(a.s_shaped == (a.inflections.size() == 1));
        for (std::size_t i = 0; i < a.inflections.size(); ++i) {
            CHECK(a.inflections[i].s > 0.0);
            CHECK(a.inflections[i].s < 1.0);
            if (i > 0) CHECK(a.inflections[i].s > a.inflections[i - 1].s);
            // directions alternate
            if (i > 0) CHECK(a.inflections[i].direction != a.inflections[i - 1].direction);
        }
    }
    CHECK_THROWS_AS(inflection_points(symmetric(models::power(1, 2)), {.grid_n = 999}),
                    std::invalid_argument);
}

TEST_CASE("property: boundary values and monotonicity") {
    blflux::testing::Rng rng(555);
    for (int i = 0; i < 100; ++i) {
        const ModelPair p{blflux::testing::random_member(rng).expr, blflux::testing::random_member(rng).expr};
        CAPTURE(p.m_a.to_string());
        CAPTURE(p.m_b.to_string());
        CHECK(f_jet(p, 1e-6).f0 <= 1e-3);
        CHECK(f_jet(p, 1 - 1e-6).f0 >= 1 - 1e-3);
        for (int k = 1; k < 100; ++k) {
            const double s = k / 100.0;
            const Jet3 f = f_jet(p, s);
            // Chierici mobilities underflow close to their zero end, and f'
            // with them.
            if (f.f0 > 1e-250 && f.f0 < 1.0) CHECK(f.f1 > 0.0);
        }
    }
}

TEST_CASE("property: class M pairs give exactly one inflection between s1 and s2") {
    blflux::testing::Rng rng(8128);
    for (int i = 0; i < 100; ++i) {
        const auto a = blflux::testing::random_member(rng);
        const auto b = blflux::testing::random_member(rng);
        CAPTURE(a.name);
        CAPTURE(b.name);
        const ModelPair p{a.expr, b.expr};
        const auto analysis = inflection_points(p);
        REQUIRE(analysis.inflections.size() == 1);
        CHECK(analysis.s_shaped);
        REQUIRE(analysis.s1);
        REQUIRE(analysis.s2);
        const double lo = std::min(analysis.s1->s, analysis.s2->s) - 1e-9;
        const double hi = std::max(analysis.s1->s, analysis.s2->s) + 1e-9;
        CHECK(analysis.inflections[0].s >= lo);
        CHECK(analysis.inflections[0].s <= hi);
    }
}

TEST_CASE("property: positive criterion forces extra inflections") {
    // Symmetric pairs s^p (1 + c s^q) and s^p exp(c s^q).
    blflux::testing::Rng rng(9001);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 50; ++i) {
        const double p = rng.uniform(1.05, 2.0);
        const double c = rng.uniform(1.0, 30.0);
        const double q = rng.uniform(6.0, 30.0);
        const std::string text = rng.index(2) == 0
                                     ? "s^" + std::to_string(p) + " * (1 + " + std::to_string(c) + " * s^" +
                                           std::to_string(q) + ")"
                                     : "s^" + std::to_string(p) + " * exp(" + std::to_string(c / 10) + " * s^" +
                                           std::to_string(q) + ")";
        const auto m = parse(text);
        if (!(classifier::criterion_T3(m) > 0.0)) continue;
        CAPTURE(text);
        CHECK(inflection_points(symmetric(m)).inflections.size() >= 3);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("property: symmetric pairs have mirror-symmetric inflections") {
    for (const auto& [name, m] : blflux::testing::catalog()) {
        CAPTURE(name);
        const auto a = inflection_points(symmetric(m), {.grid_n = 4096});
        const auto& xs = a.inflections;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            CHECK(std::abs(xs[i].s + xs[xs.size() - 1 - i].s - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("tabulate") {
    const auto rows = tabulate(symmetric(models::power(1, 2)), 11);
    REQUIRE(rows.size() == 11);
    CHECK(rows.front().s == 0.0);
    CHECK(rows.front().f == 0.0);
    CHECK(rows.back().s == 1.0);
    CHECK(rows.back().f == 1.0);
    CHECK(rows[5].f == doctest::Approx(0.5));
    CHECK(rows[2].f2 > 0.0);
    CHECK(rows[8].f2 < 0.0);
}
