#pragma once

// Decimal fixed-point reals with a rigorous absolute error bound.
//
// A FixedReal stands for some real number v with
//     |v - mantissa / 10^scale| <= error / 10^scale,
// where mantissa and error are exact integers. Arithmetic rounds to the
// common scale and widens the error to keep the enclosure valid.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "arith.hpp"

namespace necs {

namespace detail {

inline BigInt pow10(std::size_t e)
{
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= 10;
    return r;
}

inline BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// n/d rounded to nearest (ties away from zero), d > 0.
inline BigInt div_round(const BigInt& n, const BigInt& d)
{
    BigInt q = abs_big(n) / d;
    BigInt r = abs_big(n) - q * d;
    if (2 * r >= d) ++q;
    return n < 0 ? BigInt(-q) : q;
}

// ceil(n/d) for n >= 0, d > 0.
inline BigInt div_ceil(const BigInt& n, const BigInt& d) { return (n + d - 1) / d; }

} // namespace detail

class FixedReal {
public:
    FixedReal() = default;
    FixedReal(BigInt mantissa, std::size_t scale, BigInt error = 0)
        : m_(std::move(mantissa)), s_(scale), e_(std::move(error))
    {
        if (e_ < 0) throw std::invalid_argument("necs: negative error bound");
    }

    static FixedReal from_int(long long v, std::size_t scale) { return FixedReal(BigInt(v) * detail::pow10(scale), scale); }

    /// p/q rounded to the scale.
    static FixedReal from_ratio(const BigInt& p, const BigInt& q, std::size_t scale)
    {
        if (q == 0) throw std::domain_error("necs: zero denominator");
        BigInt num = p * detail::pow10(scale), den = q;
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const BigInt m = detail::div_round(num, den);
        return FixedReal(m, scale, m * den == num ? BigInt(0) : BigInt(1));
    }

    /// Parses a decimal literal such as "-0.5629"; exact unless it carries
    /// more fractional digits than the scale.
    static FixedReal parse(std::string_view text, std::size_t scale)
    {
        bool neg = false;
        if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
            neg = text[0] == '-';
            text.remove_prefix(1);
        }
        const auto dot = text.find('.');
        std::string digits(text.substr(0, dot));
        std::string frac = dot == std::string_view::npos ? std::string() : std::string(text.substr(dot + 1));
        if (digits.empty()) digits = "0";
        for (char ch : digits + frac)
            if (ch < '0' || ch > '9') throw std::invalid_argument("necs: bad decimal literal");
        std::string all = digits + frac;
        // a leading zero would make the string read as octal
        all.erase(0, std::min(all.find_first_not_of('0'), all.size() - 1));
        BigInt num(all);
        if (neg) num = -num;
        return from_ratio(num, detail::pow10(frac.size()), scale);
    }

    const BigInt& mantissa() const { return m_; }
    std::size_t scale() const { return s_; }
    /// Error bound in units of 10^-scale.
    const BigInt& error() const { return e_; }

    /// Same value with the error set to zero: used for iterates whose
    /// exact position does not matter, only the point itself.
    FixedReal point() const { return FixedReal(m_, s_); }

    /// +1 or -1 when the enclosure excludes zero, 0 otherwise.
    int certified_sign() const
    {
        if (m_ - e_ > 0) return 1;
        if (m_ + e_ < 0) return -1;
        return 0;
    }

    /// error <= 10^-digits.
    bool error_below_digits(std::size_t digits) const
    {
        if (digits > s_) return e_ == 0;
        return e_ <= detail::pow10(s_ - digits);
    }

    /// Upper bound of |value|.
    BigRational abs_upper() const { return BigRational(detail::abs_big(m_) + e_, detail::pow10(s_)); }

    /// True when this enclosure lies inside `outer`'s.
    bool inside(const FixedReal& outer) const
    {
        // compare at the finer scale
        const std::size_t s = std::max(s_, outer.s_);
        const BigInt a = m_ * detail::pow10(s - s_), ea = e_ * detail::pow10(s - s_);
        const BigInt b = outer.m_ * detail::pow10(s - outer.s_), eb = outer.e_ * detail::pow10(s - outer.s_);
        return a - ea >= b - eb && a + ea <= b + eb;
    }

    FixedReal rescaled(std::size_t scale) const
    {
        if (scale == s_) return *this;
        if (scale > s_) {
            const BigInt f = detail::pow10(scale - s_);
            return FixedReal(m_ * f, scale, e_ * f);
        }
        const BigInt f = detail::pow10(s_ - scale);
        const BigInt m = detail::div_round(m_, f);
        return FixedReal(m, scale, detail::div_ceil(e_, f) + (m * f == m_ ? 0 : 1));
    }

    /// Decimal rendering of the mantissa rounded to `digits` fractional digits.
    std::string to_string(std::size_t digits) const
    {
        BigInt m = digits >= s_ ? BigInt(m_ * detail::pow10(digits - s_))
                                : detail::div_round(m_, detail::pow10(s_ - digits));
        const bool neg = m < 0;
        std::string body = detail::abs_big(m).str();
        if (digits > 0) {
            if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
            body.insert(body.size() - digits, ".");
        }
        return neg ? "-" + body : body;
    }

    /// The enclosure radius as a decimal number (rounded up to a few digits).
    std::string error_string() const
    {
        if (e_ == 0) return "0";
        const std::string d = e_.str();
        // e_ * 10^-s ~ d[0].d[1..] * 10^(len-1-s)
        const long long exp10 = static_cast<long long>(d.size()) - 1 - static_cast<long long>(s_);
        return std::string(1, d[0]) + "e" + std::to_string(exp10 + (d.size() > 1 ? 1 : 0));
    }

    friend FixedReal operator-(const FixedReal& a) { return FixedReal(-a.m_, a.s_, a.e_); }

    friend FixedReal operator+(const FixedReal& a, const FixedReal& b)
    {
        same_scale(a, b);
        return FixedReal(a.m_ + b.m_, a.s_, a.e_ + b.e_);
    }
    friend FixedReal operator-(const FixedReal& a, const FixedReal& b)
    {
        same_scale(a, b);
        return FixedReal(a.m_ - b.m_, a.s_, a.e_ + b.e_);
    }

    friend FixedReal operator*(const FixedReal& a, const FixedReal& b)
    {
        same_scale(a, b);
        const BigInt f = detail::pow10(a.s_);
        const BigInt prod = a.m_ * b.m_;
        const BigInt m = detail::div_round(prod, f);
        BigInt spread = detail::abs_big(a.m_) * b.e_ + detail::abs_big(b.m_) * a.e_ + a.e_ * b.e_;
        BigInt e = detail::div_ceil(spread, f);
        if (m * f != prod) e += 1;
        return FixedReal(m, a.s_, e);
    }

    friend FixedReal operator*(const FixedReal& a, long long k)
    {
        const BigInt kk = k;
        return FixedReal(a.m_ * kk, a.s_, a.e_ * detail::abs_big(kk));
    }

    friend FixedReal operator/(const FixedReal& a, const FixedReal& b)
    {
        same_scale(a, b);
        const BigInt bm = detail::abs_big(b.m_);
        if (bm <= b.e_) throw std::domain_error("necs: division by an enclosure containing zero");
        const BigInt f = detail::pow10(a.s_);
        const BigInt num = a.m_ * f;
        const BigInt m = detail::div_round(b.m_ < 0 ? BigInt(-num) : num, bm);
        // |A/B - a/b| <= (ea|b| + |a|eb) / (|b|(|b|-eb)), in ulps.
        BigInt spread = (a.e_ * bm + detail::abs_big(a.m_) * b.e_) * f;
        BigInt e = detail::div_ceil(spread, bm * (bm - b.e_));
        if (m * b.m_ != num) e += 1;
        return FixedReal(m, a.s_, e);
    }

    friend FixedReal operator/(const FixedReal& a, long long k)
    {
        if (k == 0) throw std::domain_error("necs: division by zero");
        const BigInt kk = k;
        const BigInt m = detail::div_round(a.m_, kk < 0 ? BigInt(-kk) : kk) * (k < 0 ? -1 : 1);
        return FixedReal(m, a.s_, detail::div_ceil(a.e_, detail::abs_big(kk)) + 1);
    }

private:
    static void same_scale(const FixedReal& a, const FixedReal& b)
    {
        if (a.s_ != b.s_) throw std::invalid_argument("necs: FixedReal scale mismatch");
    }

    BigInt m_ = 0;
    std::size_t s_ = 0;
    BigInt e_ = 0;
};

inline FixedReal sqrt(const FixedReal& a)
{
    const BigInt lo = a.mantissa() - a.error();
    if (lo <= 0) throw std::domain_error("necs: sqrt of an enclosure reaching zero or below");
    const BigInt f = detail::pow10(a.scale());
    const BigInt m = boost::multiprecision::sqrt(BigInt(a.mantissa() * f));
    // |sqrt(A) - sqrt(a)| <= e / sqrt(a - e); in ulps e * 10^s / sqrt((m-e) 10^s).
    const BigInt denom = boost::multiprecision::sqrt(BigInt(lo * f));
    BigInt e = a.error() == 0 ? BigInt(0) : detail::div_ceil(a.error() * f, denom);
    e += 1; // floor of the integer square root
    return FixedReal(m, a.scale(), e);
}

/// pi via Machin's formula pi = 16 atan(1/5) - 4 atan(1/239).
inline FixedReal pi(std::size_t scale)
{
    const std::size_t guard = 10;
    const std::size_t s = scale + guard;
    const BigInt one = detail::pow10(s);
    // atan(1/n) = sum (-1)^i / ((2i+1) n^(2i+1)); each term truncated
    // (error < 1 ulp), series tail below the last term computed.
    auto atan_inv = [&](unsigned n, std::size_t& terms) {
        BigInt sum = 0;
        BigInt pw = one / n; // 1/n^(2i+1), truncated
        const BigInt n2 = BigInt(n) * n;
        terms = 0;
        for (unsigned i = 0; pw != 0; ++i) {
            BigInt term = pw / (2 * i + 1);
            sum += (i % 2 == 0) ? term : BigInt(-term);
            pw /= n2;
            ++terms;
        }
        return sum;
    };
    std::size_t t5 = 0, t239 = 0;
    const BigInt a5 = atan_inv(5, t5), a239 = atan_inv(239, t239);
    const BigInt m = 16 * a5 - 4 * a239;
    // each truncated power and quotient is off by < 2 ulps per term, plus the tail
    const BigInt err = 16 * (2 * BigInt(t5) + 2) + 4 * (2 * BigInt(t239) + 2);
    return FixedReal(m, s, err).rescaled(scale);
}

} // namespace necs
