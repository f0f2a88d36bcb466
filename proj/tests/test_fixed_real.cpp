#include <gtest/gtest.h>

#include <random>

#include <necs/fixed_real.hpp>

using namespace necs;

namespace {

// Exact rational value of the mantissa.
BigRational value(const FixedReal& x) { return BigRational(x.mantissa(), detail::pow10(x.scale())); }

BigRational radius(const FixedReal& x) { return BigRational(x.error(), detail::pow10(x.scale())); }

bool encloses(const FixedReal& x, const BigRational& v)
{
    const BigRational d = value(x) - v;
    return (d < 0 ? BigRational(-d) : d) <= radius(x);
}

} // namespace

TEST(FixedReal, ParseAndPrint)
{
    EXPECT_EQ(FixedReal::parse("0.35", 5).mantissa(), 35000);
    EXPECT_EQ(FixedReal::parse("-0.58", 5).mantissa(), -58000);
    EXPECT_EQ(FixedReal::parse("007.5", 2).mantissa(), 750);
    EXPECT_EQ(FixedReal::parse("0.35", 5).error(), 0);
    EXPECT_EQ(FixedReal::parse("0.123456", 3).error(), 1);
    EXPECT_EQ(FixedReal::parse("0.125", 2).to_string(2), "0.13");
    EXPECT_EQ(FixedReal::parse("-0.005", 3).to_string(2), "-0.01");
    EXPECT_EQ(FixedReal::from_int(3, 2).to_string(4), "3.0000");
    EXPECT_THROW(FixedReal::parse("1.2x", 5), std::invalid_argument);
    EXPECT_THROW(FixedReal(1, 2, -1), std::invalid_argument);
}

TEST(FixedReal, ArithmeticEnclosesExactResults)
{
    std::mt19937_64 rng(31337);
    const std::size_t s = 12;
    for (int trial = 0; trial < 500; ++trial) {
        auto draw = [&] {
            const BigInt p = static_cast<long long>(rng() % 2000001) - 1000000;
            const BigInt q = static_cast<long long>(rng() % 999) + 1;
            return std::make_pair(FixedReal::from_ratio(p, q, s), BigRational(p, q));
        };
        auto [a, av] = draw();
        auto [b, bv] = draw();
        ASSERT_TRUE(encloses(a, av));
        ASSERT_TRUE(encloses(a + b, av + bv));
        ASSERT_TRUE(encloses(a - b, av - bv));
        ASSERT_TRUE(encloses(a * b, av * bv));
        ASSERT_TRUE(encloses(a * 7, av * 7));
        ASSERT_TRUE(encloses(a / 7, av / 7));
        if (b.certified_sign() != 0) {
            ASSERT_TRUE(encloses(a / b, av / bv));
        }
    }
}

TEST(FixedReal, SqrtEnclosesRoot)
{
    for (long long n : {2, 3, 5, 10, 1000, 123456789}) {
        const FixedReal x = sqrt(FixedReal::from_int(n, 30));
        // root^2 - n changes sign across the enclosure
        const BigRational lo = value(x) - radius(x), hi = value(x) + radius(x);
        EXPECT_LE(lo * lo, BigRational(n));
        EXPECT_GE(hi * hi, BigRational(n));
    }
    EXPECT_THROW(sqrt(FixedReal::from_int(-1, 5)), std::domain_error);
}

TEST(FixedReal, PiDigits)
{
    const FixedReal p = pi(60);
    EXPECT_EQ(p.to_string(50), "3.14159265358979323846264338327950288419716939937511");
    EXPECT_TRUE(p.error_below_digits(58));
}

TEST(FixedReal, SignRescaleAndContainment)
{
    EXPECT_EQ(FixedReal(5, 2, 4).certified_sign(), 1);
    EXPECT_EQ(FixedReal(-5, 2, 4).certified_sign(), -1);
    EXPECT_EQ(FixedReal(5, 2, 5).certified_sign(), 0);
    const FixedReal x = FixedReal::parse("1.23456789", 8);
    const FixedReal r = x.rescaled(4);
    EXPECT_EQ(r.mantissa(), 12346);
    EXPECT_TRUE(x.inside(r));
    EXPECT_FALSE(r.inside(x));
    EXPECT_EQ(r.rescaled(8).mantissa(), 123460000);
    EXPECT_THROW(x + r, std::invalid_argument);
    EXPECT_THROW(x / FixedReal(0, 8, 1), std::domain_error);
}
