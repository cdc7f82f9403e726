#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace osculata;
using osculata::testing::ints;
using osculata::testing::random_poly;
using osculata::testing::random_vector;

namespace {

MultiIndex mi(std::initializer_list<std::uint32_t> e) { return MultiIndex(std::vector<std::uint32_t>(e)); }

MultiPoly s(std::size_t n, std::size_t i) { return MultiPoly::variable(n, i); }

} // namespace

TEST(MultiIndexTest, GradedOrderForTwoVariables)
{
    const auto idx = indices_up_to(2, 2);
    ASSERT_EQ(idx.size(), 6u);
    EXPECT_EQ(idx[0], mi({0, 0}));
    EXPECT_EQ(idx[1], mi({1, 0}));
    EXPECT_EQ(idx[2], mi({0, 1}));
    EXPECT_EQ(idx[3], mi({2, 0}));
    EXPECT_EQ(idx[4], mi({1, 1}));
    EXPECT_EQ(idx[5], mi({0, 2}));
    EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
}

TEST(MultiIndexTest, CountsMatchBinomials)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::uint32_t k = 0; k <= 4; ++k) {
            EXPECT_EQ(BigInt(indices_up_to(n, k).size()), binomial(static_cast<std::uint32_t>(n) + k, k));
        }
    }
}

TEST(MultiIndexTest, SubtractionBelowZeroThrows)
{
    EXPECT_THROW(mi({0, 1}) - mi({1, 0}), InputError);
    EXPECT_EQ(mi({2, 1}) - mi({1, 0}), mi({1, 1}));
}

TEST(RationalTest, SerializationAlwaysCarriesDenominator)
{
    EXPECT_EQ(to_string(Rational{3}), "3/1");
    EXPECT_EQ(to_string(Rational{-2, 4}), "-1/2");
    EXPECT_EQ(to_display(Rational{3}), "3");
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_THROW(parse_rational("1/0"), InputError);
    EXPECT_THROW(parse_rational("1.5"), InputError);
}

TEST(HasseDerivativeTest, ZeroIndexIsIdentity)
{
    const auto f = s(1, 0).pow(3);
    EXPECT_EQ(hasse_derivative(f, mi({0})), f);
}

TEST(HasseDerivativeTest, MixedSecondOrder)
{
    const auto f = s(2, 0).pow(2) * s(2, 1);
    auto expected = s(2, 0);
    expected *= Rational{2};
    EXPECT_EQ(hasse_derivative(f, mi({1, 1})), expected);
}

TEST(HasseDerivativeTest, DividedPowerNormalization)
{
    auto expected = s(1, 0);
    expected *= Rational{3};
    EXPECT_EQ(hasse_derivative(s(1, 0).pow(3), mi({2})), expected);
}

TEST(HasseDerivativeTest, LengthMismatchThrows)
{
    EXPECT_THROW(hasse_derivative(s(2, 0), mi({1})), InputError);
}

TEST(EvaluateTest, Examples)
{
    const auto f = s(2, 0).pow(2) * s(2, 1);
    EXPECT_EQ(evaluate(f, ints({2, 3})), Rational{12});
    EXPECT_EQ(evaluate(MultiPoly(2), ints({5, 7})), Rational{0});
    EXPECT_EQ(evaluate(s(1, 0).pow(3) - s(1, 0), ints({1})), Rational{0});
    EXPECT_THROW(evaluate(f, ints({1})), InputError);
}

TEST(TaylorShiftTest, Examples)
{
    const auto sq = taylor_shift(s(1, 0).pow(2), ints({1}));
    const MultiPoly::TermMap expected_sq{{mi({0}), 1}, {mi({1}), 2}, {mi({2}), 1}};
    EXPECT_EQ(sq, expected_sq);

    const auto prod = taylor_shift(s(2, 0) * s(2, 1), ints({0, 0}));
    const MultiPoly::TermMap expected_prod{{mi({1, 1}), 1}};
    EXPECT_EQ(prod, expected_prod);

    const auto c = taylor_shift(MultiPoly::constant(3, Rational{7, 2}), ints({4, -1, 2}));
    const MultiPoly::TermMap expected_c{{mi({0, 0, 0}), Rational(7, 2)}};
    EXPECT_EQ(c, expected_c);

    EXPECT_THROW(taylor_shift(s(2, 0), ints({1})), InputError);
}

TEST(DirectionalDerivativeTest, Examples)
{
    auto two_s1 = s(2, 0);
    two_s1 *= Rational{2};
    EXPECT_EQ(directional_derivative(s(2, 0).pow(2), ints({1, 0})), two_s1);
    EXPECT_EQ(directional_derivative(s(2, 0) * s(2, 1), ints({1, 1})), s(2, 0) + s(2, 1));
    EXPECT_TRUE(directional_derivative(MultiPoly::constant(2, Rational{5}), ints({3, 4})).is_zero());
    EXPECT_THROW(directional_derivative(s(2, 0), ints({1})), InputError);
}

TEST(MultiPolyTest, NoStoredZeros)
{
    auto f = s(2, 0) - s(2, 0);
    EXPECT_TRUE(f.is_zero());
    EXPECT_EQ(f.degree(), -1);
    f.add_term(mi({1, 0}), Rational{0});
    EXPECT_TRUE(f.terms().empty());
}

// Property suites ---------------------------------------------------------

TEST(PolyjetProperties, TaylorShiftAgreesWithHasseDerivative)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto f = random_poly(rng, n, 4);
        const auto deg = static_cast<std::uint32_t>(std::max(f.degree(), 0));
        for (int pt = 0; pt < 20; ++pt) {
            const auto x = random_vector(rng, n);
            const auto shifted = taylor_shift(f, x);
            for (const auto& p : indices_up_to(n, deg)) {
                auto it = shifted.find(p);
                const Rational lhs = it == shifted.end() ? Rational{0} : it->second;
                ASSERT_EQ(lhs, evaluate(hasse_derivative(f, p), x)) << "p = " << p.str();
            }
        }
    }
}

TEST(PolyjetProperties, LeibnizIdentity)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto f = random_poly(rng, n, 2);
        const auto g = random_poly(rng, n, 2);
        const auto fg = f * g;
        for (const auto& p : indices_up_to(n, 4)) {
            MultiPoly rhs(n);
            for (const auto& q : indices_up_to(n, p.degree())) {
                if (!p.dominates(q)) continue;
                rhs += hasse_derivative(f, q) * hasse_derivative(g, p - q);
            }
            ASSERT_EQ(hasse_derivative(fg, p), rhs) << "p = " << p.str();
        }
    }
}

TEST(PolyjetProperties, PartialOfHasseIsShiftedHasse)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto f = random_poly(rng, n, 5);
        for (const auto& p : indices_up_to(n, 3)) {
            for (std::size_t i = 0; i < n; ++i) {
                auto rhs = hasse_derivative(f, p.bumped(i));
                rhs *= Rational{p[i] + 1};
                ASSERT_EQ(partial_derivative(hasse_derivative(f, p), i), rhs);
            }
        }
    }
}

TEST(PolyjetProperties, HasseVanishesAboveDegree)
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto f = random_poly(rng, n, 3);
        const auto deg = static_cast<std::uint32_t>(std::max(f.degree(), 0));
        for (const auto& p : indices_of_degree(n, deg + 1)) ASSERT_TRUE(hasse_derivative(f, p).is_zero());
        for (const auto& p : indices_of_degree(n, deg + 2)) ASSERT_TRUE(hasse_derivative(f, p).is_zero());
    }
}
