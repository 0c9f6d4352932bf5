#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace padyn;
using namespace padyn::testing;

TEST(Literal, RationalAndIntegerForms) {
    PrimeContext ctx(5);
    EXPECT_TRUE(parse_literal(ctx, "3/4") == PadicNumber::from_rational(ctx, 3, 4));
    EXPECT_TRUE(parse_literal(ctx, "-12") == PadicNumber::from_integer(ctx, -12));
    EXPECT_TRUE(parse_literal(ctx, "14/1") == PadicNumber::from_integer(ctx, 14));
    EXPECT_EQ(parse_literal(ctx, "1/25").valuation(), -2);
}

TEST(Literal, DigitForm) {
    PrimeContext ctx(5);
    EXPECT_TRUE(parse_literal(ctx, "0;2,1") == PadicNumber::from_integer(ctx, 7));
    EXPECT_TRUE(parse_literal(ctx, "2;1") == PadicNumber::from_integer(ctx, 25));
    EXPECT_TRUE(parse_literal(ctx, "-1;3") == PadicNumber::from_rational(ctx, 3, 5));
    EXPECT_EQ(to_digit_literal(PadicNumber::from_integer(ctx, 7)), "0;2,1");
    EXPECT_EQ(to_digit_literal(PadicNumber(ctx)), "0");
}

TEST(Literal, RoundTrips) {
    std::mt19937_64 rng(17);
    PrimeContext ctx(13);
    for (int i = 0; i < 50; ++i) {
        const PadicNumber x = random_padic(ctx, rng, -5, 5);
        EXPECT_TRUE(parse_literal(ctx, to_digit_literal(x)) == x);
        EXPECT_TRUE(padic_from_json(ctx, to_json(x)) == x);
    }
    EXPECT_TRUE(padic_from_json(ctx, to_json(PadicNumber(ctx))).is_zero());
    EXPECT_TRUE(padic_from_json(ctx, nlohmann::json("1/2")) == PadicNumber::from_rational(ctx, 1, 2));
    EXPECT_TRUE(padic_from_json(ctx, nlohmann::json(26)) == PadicNumber::from_integer(ctx, 26));
}

TEST(Literal, JsonShape) {
    PrimeContext ctx(5);
    const auto j = to_json(PadicNumber::from_integer(ctx, 7));
    EXPECT_EQ(j.at("p"), 5);
    EXPECT_EQ(j.at("valuation"), 0);
    EXPECT_EQ(j.at("digits")[0], 2);
    EXPECT_EQ(j.at("digits")[1], 1);
    EXPECT_TRUE(to_json(PadicNumber(ctx)).at("valuation").is_null());
}

TEST(Literal, Rejects) {
    PrimeContext ctx(5);
    for (const char* bad : {"", "abc", "1/", "1/0", "170/1?", "0;5", "0;-1", ";1", "1;2;3", "1.5"})
        EXPECT_THROW(parse_literal(ctx, bad), ParseError) << bad;
    nlohmann::json wrong_p = to_json(PadicNumber::from_integer(PrimeContext(7), 3));
    EXPECT_THROW(padic_from_json(ctx, wrong_p), ParseError);
}
