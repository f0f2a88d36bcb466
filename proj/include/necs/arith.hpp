#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace necs {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Exact integer used for every count and series coefficient.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

inline u64 checked_mul(u64 a, u64 b)
{
    u64 r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("necs: 64-bit overflow in modulus arithmetic");
    return r;
}

inline u64 checked_add(u64 a, u64 b)
{
    u64 r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("necs: 64-bit overflow in modulus arithmetic");
    return r;
}

inline u64 checked_lcm(u64 a, u64 b)
{
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / std::gcd(a, b), b);
}

inline u64 smallest_prime_factor(u64 n)
{
    if (n < 2) return n;
    if (n % 2 == 0) return 2;
    for (u64 p = 3; p <= n / p; p += 2)
        if (n % p == 0) return p;
    return n;
}

// ((v mod m) + m) mod m for signed v.
inline u64 floor_mod(i64 v, u64 m)
{
    if (m == 0) throw std::invalid_argument("necs: zero modulus");
    if (v >= 0) return static_cast<u64>(v) % m;
    // -(v+1) avoids overflow at INT64_MIN.
    u64 neg = static_cast<u64>(-(v + 1)) % m;
    return (m - 1 - neg) % m;
}

inline BigInt binomial(i64 n, i64 k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (i64 i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

} // namespace detail

inline std::string to_string(const BigInt& v) { return v.str(); }

} // namespace necs
