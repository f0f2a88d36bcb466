#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"

using namespace necs;

TEST(EnumerateNecs, CardinalityNoDuplicatesAndGcd)
{
    const CountTable t = count_size_gcd(9);
    for (std::size_t k = 1; k <= 9; ++k) {
        std::size_t total = 0;
        for (std::size_t m = 1; m <= k; ++m) {
            const auto v = enumerate_necs(k, m);
            EXPECT_EQ(BigInt(v.size()), t.at(k, m));
            for (const auto& c : v) ASSERT_EQ(c.gcd(), m);
            total += v.size();
        }
        const auto all = enumerate_necs(k);
        EXPECT_EQ(all.size(), total);
        EXPECT_EQ(std::set<CoveringSystem>(all.begin(), all.end()).size(), all.size());
    }
    EXPECT_EQ(enumerate_necs(7).size(), 691u);
    EXPECT_TRUE(enumerate_necs(3, 4).empty());
    EXPECT_THROW(enumerate_necs(0), std::invalid_argument);
}

TEST(EnumerateNecs, EverySystemExactAndNatural)
{
    for (std::size_t k = 1; k <= 8; ++k)
        for (const auto& c : enumerate_necs(k)) {
            ASSERT_TRUE(oracle::exact_by_period(c));
            ASSERT_TRUE(is_natural(c));
        }
}

TEST(EnumerateNecs, SmallSizesInListingOrder)
{
    EXPECT_EQ(enumerate_necs(1), std::vector<CoveringSystem>{CoveringSystem{}});
    EXPECT_EQ(enumerate_necs(3), (std::vector<CoveringSystem>{CoveringSystem{{0, 3}, {1, 3}, {2, 3}},
                                                              CoveringSystem{{0, 2}, {1, 4}, {3, 4}},
                                                              CoveringSystem{{1, 2}, {0, 4}, {2, 4}}}));
    for (std::size_t k = 1; k <= 7; ++k) {
        const auto v = enumerate_necs(k);
        EXPECT_TRUE(std::is_sorted(v.begin(), v.end(), listing_less));
    }
}

TEST(EnumerateNecs, StreamMatchesSplitClosure)
{
    const auto closure = oracle::split_closure(7);
    std::set<CoveringSystem> streamed;
    for (std::size_t k = 1; k <= 7; ++k) for_each_necs(k, 0, [&](const CoveringSystem& c) { streamed.insert(c); });
    EXPECT_EQ(streamed, closure);
}

TEST(ShiftClasses, CountsAndOrbitSizes)
{
    const std::vector<std::size_t> expect{1, 1, 2, 4, 10, 26, 75, 226, 718};
    const IntSeries a = A_series(9);
    for (std::size_t k = 1; k <= expect.size(); ++k) {
        const auto classes = shift_classes(k);
        EXPECT_EQ(classes.size(), expect[k - 1]) << k;
        std::size_t sum = 0;
        for (const auto& [rep, n] : classes) {
            EXPECT_EQ(rep.lcm() % n, 0u);
            EXPECT_EQ(canonical_shift(rep).first, rep);
            sum += n;
        }
        EXPECT_EQ(BigInt(sum), a[k]);
    }
}

TEST(ShiftClasses, IndependentOfWorkerCount)
{
    EXPECT_EQ(shift_classes(8, 1), shift_classes(8, 3));
    EXPECT_EQ(shift_class_count(9, 4), 718u);
}

TEST(ShiftClasses, OrbitSizeMatchesDistinctTranslates)
{
    for (const auto& [rep, n] : shift_classes(6)) {
        std::set<CoveringSystem> orbit;
        for (u64 t = 0; t < rep.lcm(); ++t) orbit.insert(shift(rep, static_cast<i64>(t)));
        EXPECT_EQ(orbit.size(), n);
    }
}

TEST(EnumerateEcs, EqualsNaturalSystemsForSmallSizes)
{
    for (std::size_t k = 1; k <= 6; ++k) {
        EcsSearchConfig cfg;
        cfg.max_modulus = u64{1} << (k - 1);
        const auto r = enumerate_ecs(k, cfg);
        EXPECT_TRUE(r.complete);
        EXPECT_EQ(r.systems, enumerate_necs(k)) << k;
    }
}

TEST(EnumerateEcs, ModulusBoundAndGcdFilter)
{
    EcsSearchConfig cfg;
    cfg.max_modulus = 6;
    const auto r = enumerate_ecs(4, cfg);
    ASSERT_TRUE(r.complete);
    std::vector<CoveringSystem> expect;
    for (const auto& c : enumerate_necs(4))
        if (std::all_of(c.begin(), c.end(), [](const ResidueClass& x) { return x.modulus <= 6; })) expect.push_back(c);
    EXPECT_EQ(r.systems, expect);

    cfg.max_modulus = 8;
    cfg.gcd = 3;
    EXPECT_EQ(enumerate_ecs(4, cfg).systems, enumerate_necs(4, 3));
}

TEST(EnumerateEcs, BudgetIsReported)
{
    EcsSearchConfig cfg;
    cfg.max_modulus = 64;
    cfg.budget_seconds = 1e-9;
    const auto r = enumerate_ecs(9, cfg);
    EXPECT_FALSE(r.complete);
    EXPECT_THROW(enumerate_ecs(0, cfg), std::invalid_argument);
    cfg.max_modulus = 0;
    EXPECT_THROW(enumerate_ecs(3, cfg), std::invalid_argument);
}
