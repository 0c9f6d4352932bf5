#include <gtest/gtest.h>

#include <set>

#include "padyn/symbolic.hpp"
#include "test_support.hpp"

using namespace padyn;
using namespace padyn::testing;

namespace {

SymbolicSystem system13() {
    static const SymbolicSystem sys = make_symbolic_system(
        MapParams(PadicNumber::from_integer(PrimeContext(13), 170), PadicNumber::from_integer(PrimeContext(13), 14)));
    return sys;
}

PadicNumber iterate_k(const MapParams& p, PadicNumber x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x = eval_k(p, x);
    return x;
}

PadicNumber random_in_ball(const SymbolicSystem& sys, int j, std::mt19937_64& rng) {
    const Ball b = sys.geometry.ball(j);
    std::uniform_int_distribution<int> extra(1, 6);
    return b.center + random_with_valuation(sys.params.context(), rng,
                                            static_cast<int>(-b.radius_exponent) + extra(rng));
}

} // namespace

TEST(Words, ParseAndEnumerate) {
    EXPECT_EQ(parse_word("122"), (Word{1, 2, 2}));
    EXPECT_EQ(parse_word("1,2,2"), (Word{1, 2, 2}));
    EXPECT_THROW(parse_word("13"), ParseError);
    EXPECT_THROW(parse_word(""), ParseError);
    EXPECT_EQ(to_string(Word{2, 1}), "21");
    const auto w3 = all_words(3);
    ASSERT_EQ(w3.size(), 8u);
    EXPECT_EQ(w3.front(), (Word{1, 1, 1}));
    EXPECT_EQ(w3.back(), (Word{2, 2, 2}));
}

TEST(KSet, Membership) {
    const SymbolicSystem sys = system13();
    const PrimeContext& ctx = sys.params.context();
    EXPECT_TRUE(k_membership(sys.params, sys.geometry.alpha1));
    EXPECT_TRUE(k_membership(sys.params, sys.geometry.x1));
    std::mt19937_64 rng(47);
    for (int i = 0; i < 20; ++i) EXPECT_FALSE(k_membership(sys.params, random_near_one(ctx, rng, 1)));
    EXPECT_TRUE(k_equals_closed_balls(sys));

    PrimeContext ctx7(7);
    const MapParams p7(PadicNumber::from_integer(ctx7, 50), PadicNumber::from_integer(ctx7, 8));
    for (int i = 0; i < 50; ++i) EXPECT_FALSE(k_membership(p7, random_padic(ctx7, rng, -1, 2)));
    EXPECT_THROW(make_symbolic_system(p7), DomainError);
}

TEST(Basin, Dichotomy) {
    const SymbolicSystem sys = system13();
    const PrimeContext& ctx = sys.params.context();
    const BasinStatus one = basin_status(sys.params, PadicNumber::from_integer(ctx, 1), 100);
    EXPECT_EQ(one.outcome, BasinOutcome::InBasin);
    EXPECT_EQ(one.steps, 0u);
    ASSERT_TRUE(one.converged_after);
    EXPECT_LE(*one.converged_after, static_cast<std::size_t>(ctx.precision() + ctx.guard()));

    // g(alpha) = -a, which has |(-a)^2 + 1| = 1.
    EXPECT_TRUE(eq_to_tolerance(eval_g(sys.params, sys.geometry.alpha1), -sys.params.a()));
    const BasinStatus alpha = basin_status(sys.params, sys.geometry.alpha1, 100);
    EXPECT_EQ(alpha.outcome, BasinOutcome::InBasin);
    EXPECT_EQ(alpha.steps, 1u);
    EXPECT_TRUE(alpha.converged_after);

    const BasinStatus per = basin_status(sys.params, periodic_point_g(sys, {1, 2}), 100);
    EXPECT_EQ(per.outcome, BasinOutcome::StaysInK);
    EXPECT_EQ(per.steps, 100u);
    EXPECT_EQ(per.cycle_length, std::optional<std::size_t>(2));
}

TEST(Geometry, BallsAndScaling) {
    const SymbolicSystem sys = system13();
    const auto& g = sys.geometry;
    EXPECT_TRUE(k_balls_disjoint(sys));
    EXPECT_EQ(g.expansion_exponent, sys.params.b_order());
    EXPECT_EQ(distance(g.x1sq, g.x2sq), PNorm::power(13, -g.kappa));
    // Squaring is not an isometry across the two balls.
    EXPECT_LT(distance(g.x1sq, g.x2sq), distance(g.x1, g.x2));
    EXPECT_TRUE(eq_to_tolerance(g.alpha1 * g.alpha1, PadicNumber::from_integer(sys.params.context(), -1)));
}

TEST(Geometry, GScalesByInverseRadiusNearAlpha) {
    const SymbolicSystem sys = system13();
    std::mt19937_64 rng(53);
    const int base = sys.params.b_order() + 1;
    for (int i = 0; i < 50; ++i) {
        const PadicNumber& c = i % 2 ? sys.geometry.alpha1 : sys.geometry.alpha2;
        const PadicNumber x = c + random_with_valuation(sys.params.context(), rng, base + i % 4);
        const PadicNumber y = c + random_with_valuation(sys.params.context(), rng, base + i % 3);
        EXPECT_EQ(distance(eval_g(sys.params, x), eval_g(sys.params, y)), distance(x, y) / sys.params.r());
    }
}

TEST(Geometry, KScalesByInverseRadiusInBalls) {
    const SymbolicSystem sys = system13();
    std::mt19937_64 rng(59);
    for (int i = 0; i < 100; ++i) {
        const int j = 1 + i % 2;
        const PadicNumber x = random_in_ball(sys, j, rng);
        const PadicNumber y = random_in_ball(sys, j, rng);
        const PNorm before = distance(x, y);
        const PNorm after = distance(eval_k(sys.params, x), eval_k(sys.params, y));
        EXPECT_EQ(after * sys.params.r(), before);
    }
    EXPECT_TRUE(check_expansion(sys, 6).holds);
}

TEST(InverseBranches, FixedCentersAndRoundTrip) {
    const SymbolicSystem sys = system13();
    EXPECT_TRUE(eq_to_tolerance(inverse_branch(sys, 1, sys.geometry.x1sq), sys.geometry.x1sq));
    EXPECT_TRUE(eq_to_tolerance(inverse_branch(sys, 2, sys.geometry.x2sq), sys.geometry.x2sq));
    std::mt19937_64 rng(61);
    for (int i = 0; i < 50; ++i) {
        const PadicNumber x = random_in_ball(sys, 1 + i % 2, rng);
        for (int j : {1, 2}) {
            const PadicNumber y = inverse_branch(sys, j, x);
            EXPECT_TRUE(in_ball(y, sys.geometry.ball(j)));
            EXPECT_TRUE(eq_to_tolerance(eval_k(sys.params, y), x));
        }
    }
    EXPECT_THROW(inverse_branch(sys, 1, PadicNumber::from_integer(sys.params.context(), 1)), DomainError);
    EXPECT_THROW(inverse_branch(sys, 3, sys.geometry.x1sq), DomainError);
}

TEST(Periodic, FixedWordsGiveFixedPoints) {
    const SymbolicSystem sys = system13();
    EXPECT_TRUE(eq_to_tolerance(periodic_point_k(sys, {1}), sys.geometry.x1sq));
    EXPECT_TRUE(eq_to_tolerance(periodic_point_k(sys, {2}), sys.geometry.x2sq));
    EXPECT_TRUE(eq_to_tolerance(periodic_point_g(sys, {1}), sys.geometry.x1));
    EXPECT_TRUE(eq_to_tolerance(periodic_point_g(sys, {2}), sys.geometry.x2));
}

TEST(Periodic, PeriodTwo) {
    const SymbolicSystem sys = system13();
    const PadicNumber y = periodic_point_k(sys, {1, 2});
    EXPECT_FALSE(eq_to_tolerance(eval_k(sys.params, y), y));
    EXPECT_TRUE(eq_to_tolerance(iterate_k(sys.params, y, 2), y));
    const PadicNumber h = periodic_point_g(sys, {1, 2});
    EXPECT_FALSE(eq_to_tolerance(eval_g(sys.params, h), h));
    EXPECT_TRUE(eq_to_tolerance(eval_g(sys.params, eval_g(sys.params, h)), h));
    EXPECT_TRUE(eq_to_tolerance(h * h, y));
    const auto orbit = backward_orbit(sys.params, h, 2);
    ASSERT_EQ(orbit.size(), 2u);
    EXPECT_TRUE(eq_to_tolerance(orbit[0], eval_g(sys.params, orbit[1])));
    EXPECT_TRUE(eq_to_tolerance(orbit[1], eval_g(sys.params, orbit[0])));
}

TEST(Periodic, ItineraryRoundTrip) {
    const SymbolicSystem sys = system13();
    EXPECT_EQ(itinerary(sys, periodic_point_k(sys, {1, 2, 2}), 6), (Word{1, 2, 2, 1, 2, 2}));
    EXPECT_EQ(itinerary(sys, sys.geometry.x1sq, 4), (Word{1, 1, 1, 1}));
    try {
        itinerary(sys, sys.params.a(), 3);
        ADD_FAILURE() << "expected EscapeError";
    } catch (const EscapeError& e) {
        EXPECT_EQ(e.step(), 0u);
    }
}

TEST(Periodic, CensusUpToFour) {
    const SymbolicSystem sys = system13();
    for (std::size_t m = 1; m <= 4; ++m) {
        std::vector<PadicNumber> points;
        for (const Word& w : all_words(m)) {
            const PadicNumber x = periodic_point_k(sys, w);
            EXPECT_TRUE(eq_to_tolerance(iterate_k(sys.params, x, m), x));
            points.push_back(x);
        }
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            bool fresh = true;
            for (std::size_t j = 0; j < i; ++j)
                if (eq_to_tolerance(points[i], points[j])) fresh = false;
            distinct += fresh;
        }
        EXPECT_EQ(distinct, std::size_t{1} << m);
    }
}

TEST(Metric, ExamplesAndConjugacy) {
    const SymbolicSystem sys = system13();
    const int tau = sys.geometry.expansion_exponent, kappa = sys.geometry.kappa;
    EXPECT_EQ(subshift_metric(sys, {1, 2, 1}, {1, 2, 1}), PNorm::zero(13));
    EXPECT_EQ(subshift_metric(sys, {1, 2, 1}, {2, 2, 1}), PNorm::power(13, -kappa));
    EXPECT_EQ(subshift_metric(sys, {1, 2, 1}, {1, 2, 2}), PNorm::power(13, -(2 * tau + kappa)));
    EXPECT_THROW(subshift_metric(sys, {1}, {1, 2}), LengthMismatch);
    const auto words = all_words(3);
    for (const Word& u : words)
        for (const Word& v : words)
            EXPECT_EQ(distance(periodic_point_k(sys, u), periodic_point_k(sys, v)), subshift_metric(sys, u, v))
                << to_string(u) << " " << to_string(v);
}

TEST(Cylinders, DepthOneAndTwo) {
    const SymbolicSystem sys = system13();
    const auto d1 = julia_cylinders(sys, 1);
    ASSERT_EQ(d1.size(), 2u);
    EXPECT_TRUE(eq_to_tolerance(d1[0].ball.center, sys.geometry.x1sq));
    EXPECT_EQ(d1[0].ball.radius(), sys.params.r());
    const auto d2 = julia_cylinders(sys, 2);
    ASSERT_EQ(d2.size(), 4u);
    for (std::size_t i = 0; i < d2.size(); ++i) {
        EXPECT_EQ(d2[i].ball.radius(), sys.params.r() * PNorm::power(13, -sys.geometry.expansion_exponent));
        EXPECT_TRUE(in_ball(periodic_point_k(sys, d2[i].word), d2[i].ball));
        for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(in_ball(d2[j].ball.center, d2[i].ball));
    }
    const auto inc = incidence_matrix(sys);
    EXPECT_EQ(inc[0][0] + inc[0][1] + inc[1][0] + inc[1][1], 4);
}
