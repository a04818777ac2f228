#include <gtest/gtest.h>

#include <ecount/counts.hpp>
#include <ecount/oracles.hpp>

#include "test_support.hpp"

using namespace ecount;

TEST(PathCountByLength, Examples)
{
    EXPECT_EQ(path_count_by_length(4, 1), 1);
    EXPECT_EQ(path_count_by_length(4, 3), 2);
    EXPECT_EQ(path_count_by_length(5, 2), 3);
    EXPECT_THROW(path_count_by_length(4, 0), DomainError);
    EXPECT_THROW(path_count_by_length(4, 4), DomainError);
    EXPECT_THROW(path_count_by_length(2, 1), DomainError);
}

TEST(PathCount, Examples)
{
    EXPECT_EQ(path_count(3), 2);
    EXPECT_EQ(path_count(4), 5);
    // sum_{i=0}^{8} 8!/i! by plain machine arithmetic
    std::uint64_t w10 = 0, f8 = 40320, fi = 1;
    for (std::uint64_t i = 0; i <= 8; ++i) {
        if (i > 0)
            fi *= i;
        w10 += f8 / fi;
    }
    EXPECT_EQ(w10, 109601u);
    EXPECT_EQ(path_count(10), 109601);
    EXPECT_THROW(path_count(2), DomainError);
}

TEST(PathLengthSum, Examples)
{
    EXPECT_EQ(path_length_sum(3), 3);
    EXPECT_EQ(path_length_sum(4), 11);
    EXPECT_EQ(path_length_sum(5), 49);
    EXPECT_THROW(path_length_sum(1), DomainError);
}

TEST(PathsCycles, DualRoutesAgree)
{
    for (long n = 3; n <= 60; ++n) {
        EXPECT_TRUE(path_count_routes(n).agree()) << n;
        EXPECT_TRUE(path_length_sum_routes(n).agree()) << n;
        EXPECT_TRUE(cycle_count_routes(n).agree()) << n;
        EXPECT_TRUE(cycle_length_sum_routes(n).agree()) << n;
        EXPECT_EQ(path_length_sum(n), path_length_sum_routes(n).exact_sum);
    }
}

TEST(PathsCycles, MatchEnumeration)
{
    for (int n = 3; n <= 9; ++n) {
        auto b = brute_paths(n);
        EXPECT_EQ(b.count, path_count(n)) << n;
        EXPECT_EQ(b.total_length, path_length_sum(n)) << n;
    }
    for (int n = 3; n <= 8; ++n) {
        auto b = brute_cycles(n);
        EXPECT_EQ(b.count, cycle_count(n)) << n;
        EXPECT_EQ(b.total_length, cycle_length_sum(n)) << n;
    }
}

TEST(AveragePathLength, ExamplesAndIdentity)
{
    EXPECT_EQ(average_path_length(3), Rat(3, 2));
    EXPECT_EQ(average_path_length(4), Rat(11, 5));
    EXPECT_EQ(average_path_length(6), Rat(4) + Rat(1, 65));
    for (long n = 3; n <= 60; ++n)
        EXPECT_EQ(average_path_length(n) - (n - 2), make_rat(1, path_count(n))) << n;
}

TEST(PathArgmax, Examples)
{
    EXPECT_EQ(path_argmax_lengths(4), (std::vector<long>{2, 3}));
    EXPECT_EQ(path_argmax_lengths(6), (std::vector<long>{4, 5}));
    EXPECT_EQ(path_argmax_lengths(3), (std::vector<long>{1, 2}));
    EXPECT_THROW(path_argmax_lengths(2), DomainError);
    for (long n = 4; n <= 60; ++n)
        EXPECT_EQ(path_argmax_lengths(n), (std::vector<long>{n - 2, n - 1})) << n;
}

TEST(CycleCount, Examples)
{
    EXPECT_EQ(cycle_count(3), 2);
    EXPECT_EQ(cycle_count(4), 12);
    EXPECT_EQ(cycle_count(5), 60);
    EXPECT_THROW(cycle_count(2), DomainError);
}

TEST(CycleLengthSum, Examples)
{
    EXPECT_EQ(cycle_length_sum(3), 6);
    EXPECT_EQ(cycle_length_sum(4), 42);
    // K_5: 12 ordered 3-cycles, 24 ordered 4-cycles, 24 ordered 5-cycles through a vertex.
    EXPECT_EQ(cycle_length_sum(5), 12 * 3 + 24 * 4 + 24 * 5);
    EXPECT_EQ(brute_cycles(5).total_length, cycle_length_sum(5));
}

TEST(PathCycleCounts, Invariants)
{
    for (long n = 3; n <= 20; ++n) {
        auto c = path_cycle_counts(n);
        EXPECT_GE(c.w_n, 1);
        EXPECT_EQ(c.L_w, 1 + (n - 2) * c.w_n);
        EXPECT_GE(c.c_n, 0);
    }
}

TEST(DerangementLambda, ExamplesAndWindowSharpness)
{
    EXPECT_EQ(derangement_lambda(4, Rat(1, 2)), 9);
    EXPECT_EQ(derangement_lambda(2, 0), 0);
    EXPECT_NE(derangement_lambda(2, 0), derangements(2));
    EXPECT_EQ(derangement_lambda(3, 1), 3);
    EXPECT_NE(derangement_lambda(3, 1), derangements(3));
    EXPECT_THROW(derangement_lambda(0, Rat(1, 2)), DomainError);
}

TEST(DerangementFormulas, Examples)
{
    EXPECT_EQ(derangement_eq2(1), 0);
    EXPECT_EQ(derangement_eq2(5), 44);
    EXPECT_EQ(derangement_eq2(20), derangements(20));
    EXPECT_EQ(derangement_eq3(2), 1);
    EXPECT_EQ(derangement_eq4(3), 2);
    EXPECT_EQ(derangement_eq3(100), derangements(100));
    EXPECT_EQ(derangement_eq5(2, 3), 1);
    EXPECT_EQ(derangement_eq5(5, 3), 44);
    EXPECT_EQ(derangement_eq5(10, 6), 1334961);
    EXPECT_EQ(derangement_eq6(2), 1);
    EXPECT_EQ(derangement_eq6(3), 2);
    EXPECT_EQ(derangement_eq6(50), derangements(50));
    EXPECT_EQ(derangement_thm7(2, 1), 1);
    EXPECT_EQ(derangement_thm7(7, 2), 1854);
    EXPECT_EQ(derangement_thm7(4, 5), 9);
}

TEST(DerangementFormulas, Eq6FloorsIndividually)
{
    EXPECT_EQ(certified_floor(EForm(0, 2, 2)), 6);
    EXPECT_EQ(certified_floor(EForm(0, 2, 0)), 5);
    EXPECT_EQ(certified_floor(EForm(0, 6, 6)), 18);
    EXPECT_EQ(certified_floor(EForm(0, 6, 0)), 16);
}

TEST(DerangementFormulas, DomainErrors)
{
    EXPECT_THROW(derangement_eq2(0), DomainError);
    EXPECT_THROW(derangement_eq3(1), DomainError);
    EXPECT_THROW(derangement_eq4(1), DomainError);
    EXPECT_THROW(derangement_eq5(1, 3), DomainError);
    EXPECT_THROW(derangement_eq5(4, 2), DomainError);
    EXPECT_THROW(derangement_eq6(1), DomainError);
    EXPECT_THROW(derangement_thm7(1, 1), DomainError);
    EXPECT_THROW(derangement_thm7(3, 0), DomainError);
}

TEST(DerangementFormulas, FamilyAgreesUpTo200)
{
    for (long n = 1; n <= 200; ++n) {
        BigInt d = derangements(n);
        EXPECT_EQ(derangement_eq2(n), d) << n;
        for (Rat lambda : {Rat(1, 3), Rat(5, 12), Rat(1, 2)})
            EXPECT_EQ(derangement_lambda(n, lambda), d) << n;
        if (n < 2)
            continue;
        EXPECT_EQ(derangement_eq3(n), d) << n;
        EXPECT_EQ(derangement_eq4(n), d) << n;
        EXPECT_EQ(derangement_eq6(n), d) << n;
        for (long m = 3; m <= 6; ++m)
            EXPECT_EQ(derangement_eq5(n, m), d) << n << "," << m;
        for (long m = 1; m <= 3; ++m)
            EXPECT_EQ(derangement_thm7(n, m), d) << n << "," << m;
    }
}

TEST(BoundM, Examples)
{
    EXPECT_EQ(bound_M(5, 1), Rat(1, 5));
    EXPECT_EQ(bound_M(5, 2), Rat(7, 36));
    // sum_{i=6}^{6} 1/i! is one term: 5! (8/(7 * 7!) + 1/6!) = 19/98
    EXPECT_EQ(bound_M(5, 3), Rat(120) * (Rat(8, 7 * 5040) + Rat(1, 720)));
    EXPECT_EQ(bound_M(5, 3), Rat(19, 98));
}

TEST(BoundM, MatchesNestedForm)
{
    // M_m(n) = 1/(n+1) (1 + 1/(n+2) (... (1 + 1/(n+m-1) (n+m)/(n+m-1)) ...))
    for (long n = 1; n <= 30; ++n)
        for (long m = 3; m <= 9; ++m) {
            Rat inner = make_rat(n + m, n + m - 1);
            for (long k = n + m - 1; k >= n + 2; --k)
                inner = 1 + inner / k;
            EXPECT_EQ(bound_M(n, m), inner / (n + 1)) << n << "," << m;
        }
}

TEST(BoundM, StrictlyDecreasingInM)
{
    for (long n = 2; n <= 50; ++n)
        for (long m = 1; m < 8; ++m) {
            EXPECT_LT(bound_M(n, m + 1), bound_M(n, m)) << n << "," << m;
            EXPECT_LT(bound_M(n, m), 1);
            EXPECT_GT(bound_M(n, m), 0);
        }
}

TEST(BoundN, ExamplesAndMonotonicity)
{
    EXPECT_TRUE(certified_less(bound_N(2, 1), EForm(-5, 2, 0)));
    EXPECT_TRUE(certified_less(bound_N(3, 2), bound_N(3, 1)));
    EXPECT_EQ(certified_sign(bound_N(1, 1)), 1);
    for (long n = 2; n <= 20; ++n)
        for (long m = 1; m <= 6; ++m)
            EXPECT_TRUE(certified_less(bound_N(n, m + 1), bound_N(n, m))) << n << "," << m;
}

TEST(BoundN, TailPlacementReadings)
{
    // The two readings coincide at m = 1 and the tail-in-sum reading is larger after.
    for (long n = 2; n <= 12; ++n) {
        EXPECT_EQ(bound_N(n, 1), bound_N_tail_in_sum(n, 1));
        for (long m = 2; m <= 5; ++m)
            EXPECT_TRUE(certified_less(bound_N(n, m), bound_N_tail_in_sum(n, m)));
    }
    // Added-once satisfies N_1 < {e n!} and the derangement formula.
    for (long n = 2; n <= 30; ++n)
        EXPECT_TRUE(certified_less(bound_N(n, 1), frac_e_nfact(n))) << n;
}

TEST(ChainCheck, Examples)
{
    auto ch = chain_check(2, 3);
    EXPECT_EQ(ch.lower_bounds.size(), 3u);
    EXPECT_EQ(ch.upper_bounds.size(), 5u);
    EXPECT_NO_THROW(chain_check(10, 8));
    auto one = chain_check(2, 1);
    EXPECT_TRUE(certified_less(one.lower_bounds[0], EForm(-5, 2, 0)));
    EXPECT_THROW(chain_check(1, 2), DomainError);
}

TEST(ChainCheck, AllHoldUpTo50)
{
    for (long n = 2; n <= 50; ++n)
        EXPECT_NO_THROW(chain_check(n, 8)) << n;
}

TEST(ChainCheck, DeviationIsPositive)
{
    for (long n = 1; n <= 40; ++n)
        EXPECT_EQ(certified_sign(derangement_deviation(n)), 1) << n;
}
