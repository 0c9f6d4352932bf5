#include <gtest/gtest.h>

#include "padyn/gibbs.hpp"
#include "padyn/symbolic.hpp"
#include "test_support.hpp"

using namespace padyn;
using namespace padyn::testing;

namespace {

PadicNumber num(const PrimeContext& ctx, long v) { return PadicNumber::from_integer(ctx, v); }

Couplings five_couplings(long J, long J1, long J0 = 0) {
    PrimeContext ctx(5);
    return Couplings(num(ctx, J), num(ctx, J1), num(ctx, J0));
}

// Brute-force Hamiltonian: classify every vertex pair of V_n by tree distance.
PadicNumber hamiltonian_oracle(const CayleyTree& tree, const Couplings& c, const Configuration& s,
                               std::size_t n) {
    const auto ball = tree.ball(n);
    long nj = 0, nj1 = 0, nj0 = 0;
    for (std::size_t i = 0; i < ball.size(); ++i)
        for (std::size_t j = i + 1; j < ball.size(); ++j) {
            const long prod = s[i] * s[j];
            const std::size_t d = tree_distance(ball[i], ball[j]);
            const std::size_t depth_gap = ball[j].size() - ball[i].size();
            if (d == 1) nj += prod;
            if (d == 2 && depth_gap == 2) nj1 += prod;
            if (d == 2 && depth_gap == 0) nj0 += prod;
        }
    const PrimeContext& ctx = c.context();
    return c.J() * num(ctx, nj) + c.J1() * num(ctx, nj1) + c.J0() * num(ctx, nj0);
}

GibbsField solved_field(const CayleyTree& tree, const Couplings& c, std::size_t depth) {
    const SolveResult r = solve_product_system(tree, c, {HVector::unit(c.context())});
    return level_periodic_field(tree, r.classes, depth);
}

} // namespace

TEST(Couplings, Validation) {
    PrimeContext ctx(5);
    EXPECT_THROW(Couplings(num(ctx, 1), num(ctx, 5), num(ctx, 0)), DomainError);
    EXPECT_THROW(Couplings(num(ctx, 5), PadicNumber::from_rational(ctx, 1, 5), num(ctx, 0)), DomainError);
    const Couplings c = five_couplings(5, 10);
    EXPECT_TRUE(c.a() == exp_p(num(ctx, 5)));
    EXPECT_TRUE(c.b() == exp_p(num(ctx, 10)));
}

TEST(Hamiltonian, MatchesPairEnumeration) {
    std::mt19937_64 rng(67);
    const Couplings c = five_couplings(5, 25, 125);
    for (int k : {1, 2, 3}) {
        const CayleyTree tree(k);
        for (std::size_t n = 0; n <= 2; ++n) {
            const std::size_t size = tree.ball_size(n);
            for (int i = 0; i < 10; ++i) {
                const Configuration s = configuration_from_bits(size, rng());
                const PadicNumber h = hamiltonian(tree, c, s, n);
                EXPECT_TRUE(h == hamiltonian_oracle(tree, c, s, n));
                Configuration flipped = s;
                for (int& v : flipped) v = -v;
                EXPECT_TRUE(hamiltonian(tree, c, flipped, n) == h);
                EXPECT_LE(norm(h), PNorm::power(5, -1));
            }
        }
    }
}

TEST(Hamiltonian, AllPlusOnSmallestBall) {
    const Couplings c = five_couplings(5, 25, 125);
    const CayleyTree tree(2);
    const PrimeContext& ctx = c.context();
    EXPECT_TRUE(hamiltonian(tree, c, Configuration(3, 1), 1) == num(ctx, 2) * c.J() + c.J0());
    EXPECT_THROW(hamiltonian(tree, c, Configuration(2, 1), 1), LengthMismatch);
}

TEST(Measure, UniformForZeroCouplingsAndUnitField) {
    PrimeContext ctx(5);
    const CayleyTree tree(2);
    const Couplings c = Couplings::zero(ctx);
    const GibbsField field = translation_invariant_field(tree, HVector::unit(ctx), 2);
    const FiniteMeasure mu(tree, c, field, 2);
    const PadicNumber expected = num(ctx, 1) / pow(num(ctx, 2), 7);
    for (unsigned long long bits = 0; bits < 128; bits += 9)
        EXPECT_TRUE(mu.measure(configuration_from_bits(7, bits)) == expected);
}

TEST(Measure, WeightOfAllPlusAtDepthOne) {
    std::mt19937_64 rng(71);
    PrimeContext ctx(5);
    const CayleyTree tree(2);
    const Couplings c = five_couplings(5, 25, 10);
    GibbsField field;
    HVector e1{random_unit(ctx, rng), random_unit(ctx, rng), random_unit(ctx, rng), random_unit(ctx, rng)};
    HVector e2{random_unit(ctx, rng), random_unit(ctx, rng), random_unit(ctx, rng), random_unit(ctx, rng)};
    field.set({1}, e1);
    field.set({2}, e2);
    const PadicNumber expected = exp_p(num(ctx, 2) * c.J() + c.J0()) * e1.pp * e2.pp;
    EXPECT_TRUE(eq_to_tolerance(measure_weight(tree, c, field, Configuration(3, 1), 1), expected));
    // Mixed spins enter with exponent -1.
    const Configuration mixed{1, -1, 1};
    const PadicNumber expected_mixed = exp_p(c.J0() * num(ctx, -1)) * e2.pp / e1.pm;
    EXPECT_TRUE(eq_to_tolerance(measure_weight(tree, c, field, mixed, 1), expected_mixed));
}

TEST(Measure, NormalisedForRandomFields) {
    std::mt19937_64 rng(73);
    PrimeContext ctx(5);
    const CayleyTree tree(2);
    const Couplings c = five_couplings(5, 25, 5);
    GibbsField field;
    for (std::size_t l = 1; l <= 2; ++l)
        for (const Vertex& y : tree.level(l))
            field.set(y, {random_near_one(ctx, rng, 1), random_near_one(ctx, rng, 1), random_near_one(ctx, rng, 2),
                          random_near_one(ctx, rng, 1)});
    const FiniteMeasure mu(tree, c, field, 2);
    PadicNumber total(ctx);
    for (unsigned long long bits = 0; bits < 128; ++bits) total = total + mu.measure(configuration_from_bits(7, bits));
    EXPECT_TRUE(eq_to_tolerance(total, num(ctx, 1)));
    EXPECT_TRUE(eq_to_tolerance(partition_fn(tree, c, field, 2), mu.partition()));
}

TEST(Measure, MissingEdgeIsDomainError) {
    PrimeContext ctx(5);
    const CayleyTree tree(2);
    const GibbsField field = translation_invariant_field(tree, HVector::unit(ctx), 1);
    EXPECT_THROW(FiniteMeasure(tree, Couplings::zero(ctx), field, 2), DomainError);
    GibbsField bad;
    EXPECT_THROW(bad.set({1}, HVector{PadicNumber(ctx), num(ctx, 1), num(ctx, 1), num(ctx, 1)}), DomainError);
}

TEST(Compatibility, ZeroCouplingsUnitField) {
    PrimeContext ctx(5);
    const CayleyTree tree(2);
    const GibbsField field = translation_invariant_field(tree, HVector::unit(ctx), 2);
    const CompatibilityReport r = check_compatibility(tree, Couplings::zero(ctx), field, 2);
    EXPECT_TRUE(r.compatible);
    EXPECT_EQ(r.worst, PNorm::zero(5));
    EXPECT_EQ(r.base_configurations, 8u);
    EXPECT_EQ(r.boundary_configurations, 16u);
}

TEST(Solve, UnitFieldSolvesZeroCouplings) {
    PrimeContext ctx(5);
    const CayleyTree tree(2);
    const SolveResult r = solve_product_system(tree, Couplings::zero(ctx), {HVector::unit(ctx)});
    EXPECT_TRUE(r.classes.front() == HVector::unit(ctx));
    EXPECT_EQ(r.iterations, 1u);
}

TEST(Solve, ConvergedFieldIsCompatible) {
    const CayleyTree tree(2);
    const Couplings c = five_couplings(5, 5);
    const SolveResult r = solve_product_system(tree, c, {HVector::unit(c.context())});
    const HVector& h = r.classes.front();
    for (int sx : {-1, 1})
        for (int sy : {-1, 1}) EXPECT_TRUE(in_Ep(h.at(sx, sy)));
    // Symmetric solution: h_{++} = h_{--}, h_{+-} = h_{-+}.
    EXPECT_TRUE(h.pp == h.mm);
    EXPECT_TRUE(h.pm == h.mp);
    const GibbsField field = level_periodic_field(tree, r.classes, 3);
    EXPECT_TRUE(system_residual(tree, c, field, 3).holds);
    for (std::size_t n : {1u, 2u, 3u}) EXPECT_TRUE(check_compatibility(tree, c, field, n).compatible) << n;
}

TEST(Solve, StopsWithTraceWhenBudgetIsTooSmall) {
    const CayleyTree tree(2);
    const Couplings c = five_couplings(5, 5);
    try {
        solve_product_system(tree, c, {HVector::unit(c.context())}, 3);
        ADD_FAILURE() << "expected NoConvergence";
    } catch (const NoConvergence& e) {
        EXPECT_NE(std::string(e.what()).find("5^-"), std::string::npos);
    }
}

TEST(Solve, OtherTreeOrders) {
    for (int k : {1, 3}) {
        const CayleyTree tree(k);
        const Couplings c = five_couplings(5, 5);
        const GibbsField field = solved_field(tree, c, 2);
        EXPECT_TRUE(check_compatibility(tree, c, field, 2).compatible) << k;
    }
}

TEST(Compatibility, PerturbedComponentRegression) {
    const CayleyTree tree(2);
    const Couplings c = five_couplings(5, 5);
    const GibbsField good = solved_field(tree, c, 2);
    const PadicNumber onep = num(c.context(), 6);
    GibbsField bad = good;
    HVector h = good.at({1, 1});
    h.pp = h.pp * onep;
    bad.set({1, 1}, h);
    const CompatibilityReport r = check_compatibility(tree, c, bad, 2);
    EXPECT_FALSE(r.compatible);
    EXPECT_GE(r.worst, PNorm::power(5, -2));
    EXPECT_EQ(r.worst, PNorm::power(5, -1));
}

TEST(Compatibility, NonzeroSiblingCouplingBreaksIt) {
    const CayleyTree tree(2);
    for (long J0 : {5L, 25L}) {
        const Couplings c = five_couplings(5, 5, J0);
        const CompatibilityReport r = check_compatibility(tree, c, solved_field(tree, c, 2), 2);
        EXPECT_FALSE(r.compatible);
        EXPECT_EQ(r.worst, norm(c.J0()) * PNorm::power(5, -2));
    }
}

TEST(Placements, SingleComponentPlacementsFail) {
    const CayleyTree tree(2);
    const Couplings c = five_couplings(25, 5);
    const MapParams params(c.a(), c.b());
    const std::vector<PadicNumber> orbit{find_x0(params)};
    for (const PlacementCandidate& cand : scan_placements(tree, c, orbit, 3)) {
        if (cand.placement == Placement::ConjugateSquare) {
            EXPECT_TRUE(cand.residual.holds);
            EXPECT_TRUE(check_compatibility(tree, c, cand.field, 2).compatible);
            EXPECT_TRUE(is_level_periodic(tree, cand.field, 1, 3));
        } else {
            EXPECT_FALSE(cand.residual.holds) << to_string(cand.placement);
        }
    }
}

TEST(Placements, PeriodTwoOrbit) {
    const CayleyTree tree(2);
    const Couplings c = five_couplings(25, 5);
    const SymbolicSystem sys = make_symbolic_system(MapParams(c.a(), c.b()));
    const auto orbit = backward_orbit(sys.params, periodic_point_g(sys, {1, 2}), 2);
    const auto valid = valid_placements(tree, c, orbit, 4);
    ASSERT_EQ(valid.size(), 1u);
    EXPECT_EQ(valid.front().placement, Placement::ConjugateSquare);
    EXPECT_TRUE(is_level_periodic(tree, valid.front().field, 2, 4));
    EXPECT_FALSE(is_level_periodic(tree, valid.front().field, 1, 4));
    EXPECT_TRUE(check_compatibility(tree, c, valid.front().field, 2).compatible);
}

TEST(Placements, ConstantOrbitReproducesPeriodOne) {
    const CayleyTree tree(2);
    const Couplings c = five_couplings(25, 5);
    const PadicNumber x0 = find_x0(MapParams(c.a(), c.b()));
    const GibbsField one = periodic_field_from_orbit(tree, c, {x0}, Placement::ConjugateSquare, 3);
    const GibbsField two = periodic_field_from_orbit(tree, c, {x0, x0}, Placement::ConjugateSquare, 3);
    EXPECT_EQ(one.edges(), two.edges());
}

TEST(Placements, OnlyTreeOrderTwoHasAValidPlacement) {
    const Couplings c = five_couplings(25, 5);
    const PadicNumber x0 = find_x0(MapParams(c.a(), c.b()));
    for (int k : {1, 3}) EXPECT_THROW(valid_placements(CayleyTree(k), c, {x0}, 3), NoValidPlacement) << k;
}
