#include <gtest/gtest.h>

#include <ecount/exact.hpp>

#include "test_support.hpp"

using namespace ecount;

TEST(Factorial, SmallValues)
{
    EXPECT_EQ(factorial(0), 1);
    EXPECT_EQ(factorial(1), 1);
    EXPECT_EQ(factorial(10), 3628800);
    for (long n = 0; n <= 60; ++n)
        EXPECT_EQ(factorial(n), oracle::product_factorial(n)) << n;
}

TEST(Factorial, NegativeIsDomainError) { EXPECT_THROW(factorial(-1), DomainError); }

TEST(PartialSumPos, Examples)
{
    EXPECT_EQ(partial_sum_pos(1), 2);
    EXPECT_EQ(partial_sum_pos(2), 5);
    EXPECT_EQ(partial_sum_pos(4), 65);
    EXPECT_THROW(partial_sum_pos(0), DomainError);
}

TEST(PartialSumPos, RecurrenceAndDirectSum)
{
    BigInt prev = 1; // extension: value 1 at n = 0
    for (long n = 1; n <= 500; ++n) {
        BigInt s = partial_sum_pos(n);
        EXPECT_EQ(s, n * prev + 1) << n;
        prev = s;
    }
    for (long n = 1; n <= 40; ++n)
        EXPECT_EQ(Rat(partial_sum_pos(n)), oracle::scaled_exp_sum(n, 1)) << n;
}

TEST(Derangements, Examples)
{
    EXPECT_EQ(derangements(0), 1);
    EXPECT_EQ(derangements(4), 9);
    EXPECT_EQ(derangements(5), 44);
    EXPECT_EQ(derangements(10), 1334961);
    EXPECT_EQ(derangements(20), BigInt("895014631192902121"));
    EXPECT_THROW(derangements(-2), DomainError);
}

TEST(Derangements, MatchPermutationCountAndAlternatingSum)
{
    for (int n = 0; n <= 9; ++n)
        EXPECT_EQ(derangements(n), BigInt(static_cast<unsigned long>(oracle::count_derangements_by_permutation(n))))
            << n;
    for (long n = 0; n <= 60; ++n)
        EXPECT_EQ(Rat(derangements(n)), oracle::scaled_exp_sum(n, -1)) << n;
}

TEST(Dpoly, Coefficients)
{
    EXPECT_EQ(dpoly(0).coeffs, std::vector<BigInt>{1});
    EXPECT_EQ(dpoly(1).coeffs, (std::vector<BigInt>{1, 1}));
    EXPECT_EQ(dpoly(3).coeffs, (std::vector<BigInt>{6, 6, 3, 1}));
    EXPECT_THROW(dpoly(-1), DomainError);
}

TEST(Dpoly, CoefficientTimesIFactorialIsNFactorial)
{
    for (long n = 0; n <= 100; ++n) {
        auto p = dpoly(n);
        ASSERT_EQ(p.coeffs.size(), static_cast<std::size_t>(n + 1));
        EXPECT_EQ(p.coeffs.back(), 1);
        EXPECT_EQ(p.coeffs.front(), factorial(n));
        for (long i = 0; i <= n; ++i)
            EXPECT_EQ(p.coeffs[static_cast<std::size_t>(i)] * factorial(i), factorial(n)) << n << "," << i;
    }
}

TEST(DpolyEval, Examples)
{
    EXPECT_EQ(dpoly_eval(1, 1), 2);
    EXPECT_EQ(dpoly_eval(5, -1), 44);
    EXPECT_EQ(dpoly_eval(3, Rat(1, 2)), Rat(79, 8));
}

TEST(DpolyEval, AtZeroIsNFactorial)
{
    for (long n = 0; n <= 30; ++n)
        EXPECT_EQ(dpoly_eval(n, 0), Rat(factorial(n))) << n;
}

TEST(DpolyEval, SpecialPoints)
{
    for (long n = 0; n <= 200; ++n)
        EXPECT_EQ(dpoly_eval(n, -1), Rat(derangements(n))) << n;
    for (long n = 1; n <= 200; ++n)
        EXPECT_EQ(dpoly_eval(n, 1), Rat(partial_sum_pos(n))) << n;
}

TEST(DpolyEval, RecurrencesAgreeOnRandomRationals)
{
    oracle::RatGen gen(0xD1A5);
    for (int trial = 0; trial < 40; ++trial) {
        Rat x = gen();
        for (long n = 0; n <= 100; n += (n < 10 ? 1 : 9)) {
            Rat two = dpoly_eval(n, x);
            EXPECT_EQ(two, dpoly_eval_three_term(n, x)) << n << " x=" << to_string(x);
            EXPECT_EQ(two, dpoly(n)(x));
            EXPECT_EQ(two, oracle::scaled_exp_sum(n, x));
        }
    }
}

TEST(DpolyOde, ResidualIsMonomial)
{
    // D_n(x) - D_n'(x) = x^n, coefficient by coefficient.
    for (long n = 0; n <= 50; ++n) {
        auto p = dpoly(n).coeffs;
        auto d = formal_derivative(p);
        std::vector<BigInt> residual(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            residual[i] = p[i] - (i < d.size() ? d[i] : BigInt(0));
        std::vector<BigInt> expected(p.size(), 0);
        expected.back() = 1;
        EXPECT_EQ(residual, expected) << n;
    }
}
