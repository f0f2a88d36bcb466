#pragma once

// Truncated formal power series with exact integer coefficients, the
// Moebius sieve, and the generating functions built from them.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"

namespace necs {

/// Coefficients c_0..c_N of a power series known modulo x^{N+1}.
class IntSeries {
public:
    IntSeries() : c_(1) {}
    explicit IntSeries(std::size_t order) : c_(order + 1) {}
    IntSeries(std::initializer_list<BigInt> coeffs, std::size_t order) : c_(order + 1)
    {
        std::size_t i = 0;
        for (const auto& v : coeffs) {
            if (i > order) break;
            c_[i++] = v;
        }
    }

    /// The series x truncated at the given order.
    static IntSeries x(std::size_t order)
    {
        IntSeries s(order);
        if (order >= 1) s.c_[1] = 1;
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    BigInt& operator[](std::size_t i) { return c_[i]; }
    /// Coefficient i, or zero beyond the truncation order.
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const std::vector<BigInt>& coeffs() const { return c_; }

    IntSeries truncated(std::size_t order) const
    {
        IntSeries s(order);
        for (std::size_t i = 0; i <= order && i < c_.size(); ++i) s.c_[i] = c_[i];
        return s;
    }

    /// Index of the first nonzero coefficient; order()+1 for the zero series.
    std::size_t valuation() const
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return i;
        return c_.size();
    }

    friend IntSeries operator+(const IntSeries& a, const IntSeries& b)
    {
        IntSeries s(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= s.order(); ++i) s.c_[i] = a.c_[i] + b.c_[i];
        return s;
    }
    friend IntSeries operator-(const IntSeries& a, const IntSeries& b)
    {
        IntSeries s(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= s.order(); ++i) s.c_[i] = a.c_[i] - b.c_[i];
        return s;
    }

    friend bool operator==(const IntSeries&, const IntSeries&) = default;

private:
    std::vector<BigInt> c_;
};

// ---------------------------------------------------------------------------
// Moebius function

/// mu(0..n) by a linear sieve; entry 0 is 0.
inline std::vector<int> mobius_upto(std::size_t n)
{
    std::vector<int> mu(n + 1, 0);
    if (n >= 1) mu[1] = 1;
    std::vector<std::size_t> primes;
    std::vector<bool> composite(n + 1, false);
    for (std::size_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::size_t p : primes) {
            if (i * p > n) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

inline int mobius(std::size_t n)
{
    if (n == 0) throw std::invalid_argument("necs: mobius is defined for n >= 1");
    // Trial factorisation; the sieve is for batches.
    int sign = 1;
    for (std::size_t p = 2; p <= n / p; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

/// M(x) = sum_{k>=1} mu(k) x^k.
inline IntSeries mobius_series(std::size_t order)
{
    const auto mu = mobius_upto(order);
    IntSeries s(order);
    for (std::size_t k = 1; k <= order; ++k) s[k] = mu[k];
    return s;
}

// ---------------------------------------------------------------------------
// Series algebra. Every operation takes its truncation order explicitly.

inline IntSeries mul(const IntSeries& a, const IntSeries& b, std::size_t order)
{
    IntSeries out(order);
    const std::size_t na = std::min(a.order(), order);
    for (std::size_t i = 0; i <= na; ++i) {
        if (a[i] == 0) continue;
        const std::size_t nb = std::min(b.order(), order - i);
        for (std::size_t j = 0; j <= nb; ++j)
            if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline IntSeries power(const IntSeries& s, std::size_t n, std::size_t order)
{
    IntSeries result(order);
    result[0] = 1;
    IntSeries base = s.truncated(order);
    while (n) {
        if (n & 1) result = mul(result, base, order);
        n >>= 1;
        if (n) base = mul(base, base, order);
    }
    return result;
}

/// S(R(x)) through the given order; R must have zero constant term.
inline IntSeries compose(const IntSeries& s, const IntSeries& r, std::size_t order)
{
    if (r[0] != 0) throw std::invalid_argument("necs: compose needs R(0) = 0");
    const std::size_t top = std::min(s.order(), order);
    IntSeries acc(order);
    acc[0] = s[top];
    // Horner: acc <- acc * R + s_i.
    for (std::size_t i = top; i-- > 0;) {
        acc = mul(acc, r, order);
        acc[0] += s[i];
    }
    return acc;
}

inline IntSeries derivative(const IntSeries& s)
{
    if (s.order() == 0) return IntSeries(0);
    IntSeries d(s.order() - 1);
    for (std::size_t i = 1; i <= s.order(); ++i) d[i - 1] = s[i] * i;
    return d;
}

/// 1/S for S(0) = +-1.
inline IntSeries reciprocal(const IntSeries& s, std::size_t order)
{
    if (s[0] != 1 && s[0] != -1) throw std::invalid_argument("necs: reciprocal needs a unit constant term");
    IntSeries out(order);
    out[0] = s[0]; // 1/(+-1) = +-1
    for (std::size_t n = 1; n <= order; ++n) {
        BigInt acc = 0;
        for (std::size_t i = 1; i <= n && i <= s.order(); ++i) acc += s[i] * out[n - i];
        out[n] = -acc * s[0];
    }
    return out;
}

/// Compositional inverse R with S(R(x)) = x through the given order.
///
/// Coefficient n of S(R) is s_1 r_n plus terms in r_1..r_{n-1}, so r_n is
/// solved for one order at a time. The table pw[j][m] = [x^m] R^j is filled
/// alongside; [x^n] R^j for j >= 2 only involves r_i with i < n.
inline IntSeries revert(const IntSeries& s, std::size_t order)
{
    if (s[0] != 0) throw std::invalid_argument("necs: revert needs S(0) = 0");
    if (s.order() < 1 || (s[1] != 1 && s[1] != -1))
        throw std::invalid_argument("necs: revert needs a unit linear coefficient");
    const BigInt& s1 = s[1];
    IntSeries r(order);
    if (order == 0) return r;
    std::vector<std::vector<BigInt>> pw(order + 1, std::vector<BigInt>(order + 1));
    for (std::size_t n = 1; n <= order; ++n) {
        BigInt rest = 0;
        for (std::size_t j = 2; j <= n; ++j) {
            BigInt v = 0;
            for (std::size_t i = 1; i + (j - 1) <= n; ++i) v += r[i] * pw[j - 1][n - i];
            pw[j][n] = v;
            if (j <= s.order()) rest += s[j] * v;
        }
        // s1 * r_n + rest = [n == 1], and s1 = +-1 is its own inverse.
        r[n] = ((n == 1 ? BigInt(1) : BigInt(0)) - rest) * s1;
        pw[1][n] = r[n];
    }
    return r;
}

// ---------------------------------------------------------------------------
// Generating functions.

/// A(x): the reversion of M(x). Its coefficients count natural exact
/// covering systems by size.
inline IntSeries A_series(std::size_t order) { return revert(mobius_series(order), order); }

/// A_m(x) = M(A(x)^m): natural systems of gcd exactly m, by size.
inline IntSeries Am_series(std::size_t m, std::size_t order)
{
    if (m == 0) throw std::invalid_argument("necs: Am_series needs m >= 1");
    const IntSeries a = A_series(order);
    return compose(mobius_series(order), power(a, m, order), order);
}

/// Small Schroeder numbers t_k from 2T^2 - (1+x)T + x = 0, T(0) = 0.
inline IntSeries schroeder_series(std::size_t order)
{
    IntSeries t(order);
    for (std::size_t n = 1; n <= order; ++n) {
        BigInt sq = 0;
        for (std::size_t i = 1; i < n; ++i) sq += t[i] * t[n - i];
        t[n] = 2 * sq - t[n - 1] + (n == 1 ? 1 : 0);
    }
    return t;
}

/// phi(u) = u / M(u) = 1 / G(u) with G(u) = sum mu(k) u^{k-1}.
inline IntSeries phi_series(std::size_t order)
{
    const auto mu = mobius_upto(order + 1);
    IntSeries g(order);
    for (std::size_t i = 0; i <= order; ++i) g[i] = mu[i + 1];
    return reciprocal(g, order);
}

} // namespace necs
