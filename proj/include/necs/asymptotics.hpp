#pragma once

// Certified high-precision evaluation of the Moebius power series and the
// constants governing the growth of a_k ~ c gamma^k k^{-3/2}.
//
// All sums are truncated at an index N chosen so that a rigorous geometric
// tail bound falls below one unit in the last place; the bound is added to
// the error of the result.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "counting.hpp"
#include "fixed_real.hpp"
#include "series.hpp"

namespace necs {

/// Largest |x| accepted by the series evaluators.
inline const BigRational eval_radius{71, 100};

namespace detail {

inline constexpr std::size_t guard_digits = 12;

// Upper bound for sum_{k>N} k^p q^(k-shift), 0 <= q < 1. Successive terms
// have ratio ((k+1)/k)^p q <= ((N+2)/(N+1))^p q, so the tail is at most
// term(N+1) / (1 - ratio).
inline std::optional<BigRational> power_tail(std::size_t p, std::size_t shift, const BigRational& q, std::size_t n)
{
    if (q == 0) return BigRational(0);
    if (n + 1 < shift) return std::nullopt;
    BigRational ratio = q;
    for (std::size_t i = 0; i < p; ++i) ratio *= BigRational(n + 2, n + 1);
    if (ratio >= 1) return std::nullopt;
    BigRational term = 1;
    for (std::size_t i = 0; i < p; ++i) term *= (n + 1);
    for (std::size_t i = 0; i < n + 1 - shift; ++i) term *= q;
    return term / (1 - ratio);
}

inline BigInt ceil_ulps(const BigRational& v, std::size_t scale)
{
    const BigRational scaled = v * BigRational(pow10(scale));
    const BigInt num = boost::multiprecision::numerator(scaled), den = boost::multiprecision::denominator(scaled);
    return div_ceil(num, den);
}

// Smallest N (up to a coarse step) whose tail is below one ulp at `scale`.
inline std::size_t terms_needed(std::size_t p, std::size_t shift, const BigRational& q, std::size_t scale)
{
    if (q == 0) return shift;
    const double qd = q.convert_to<double>();
    const double target = -static_cast<double>(scale) * std::log(10.0);
    // Rough start: p log N + N log q < target.
    std::size_t n = std::max<std::size_t>(shift, 8);
    while (static_cast<double>(p) * std::log(static_cast<double>(n + 1)) + static_cast<double>(n) * std::log(qd) >
           target)
        n += 8;
    const BigRational ulp(1, pow10(scale));
    for (;;) {
        if (auto t = power_tail(p, shift, q, n); t && *t <= ulp) return n;
        n += 8;
    }
}

// |x| rounded up to four decimals, as an exact rational.
inline BigRational abs_bound(const FixedReal& x)
{
    const BigRational a = x.abs_upper();
    const BigRational scaled = a * 10000;
    const BigInt up = div_ceil(boost::multiprecision::numerator(scaled), boost::multiprecision::denominator(scaled));
    return BigRational(up, 10000);
}

// sum_{k >= kmin} coeff(k) x^(k-shift) where |coeff(k)| <= k^p, with the
// tail bound folded into the error.
inline FixedReal eval_power_sum(const FixedReal& x, std::size_t shift, std::size_t p, std::size_t kmin,
                                const std::function<long long(std::size_t)>& coeff)
{
    const BigRational q = abs_bound(x);
    if (q > eval_radius) throw std::domain_error("necs: series evaluation needs |x| <= 0.71");
    const std::size_t s = x.scale();
    const std::size_t n = terms_needed(p, shift, q, s);
    FixedReal acc(0, s);
    FixedReal pw = FixedReal::from_int(1, s); // x^(k-shift)
    for (std::size_t k = shift; k <= n; ++k) {
        if (k > shift) pw = pw * x;
        if (k < kmin) continue;
        const long long c = coeff(k);
        if (c != 0) acc = acc + pw * c;
    }
    const auto tail = power_tail(p, shift, q, n);
    return FixedReal(acc.mantissa(), s, acc.error() + ceil_ulps(*tail, s));
}

class MobiusTable {
public:
    int operator()(std::size_t k)
    {
        if (k >= mu_.size()) mu_ = mobius_upto(std::max<std::size_t>(2 * k, 1024));
        return mu_[k];
    }

private:
    std::vector<int> mu_;
};

inline MobiusTable& mobius_table()
{
    thread_local MobiusTable t;
    return t;
}

} // namespace detail

/// M(x) = sum mu(k) x^k at the scale of x.
inline FixedReal eval_M(const FixedReal& x)
{
    return detail::eval_power_sum(x, 0, 0, 1, [](std::size_t k) { return detail::mobius_table()(k); });
}

/// M'(x) = sum k mu(k) x^(k-1).
inline FixedReal eval_Mprime(const FixedReal& x)
{
    return detail::eval_power_sum(x, 1, 1, 1, [](std::size_t k) {
        return static_cast<long long>(k) * detail::mobius_table()(k);
    });
}

/// M''(x) = sum k(k-1) mu(k) x^(k-2).
inline FixedReal eval_Mdoubleprime(const FixedReal& x)
{
    return detail::eval_power_sum(x, 2, 2, 2, [](std::size_t k) {
        return static_cast<long long>(k * (k - 1)) * detail::mobius_table()(k);
    });
}

/// G(u) = M(u)/u = sum mu(k) u^(k-1).
inline FixedReal eval_G(const FixedReal& u)
{
    return detail::eval_power_sum(u, 1, 0, 1, [](std::size_t k) { return detail::mobius_table()(k); });
}

/// G'(u) = sum (k-1) mu(k) u^(k-2).
inline FixedReal eval_Gprime(const FixedReal& u)
{
    return detail::eval_power_sum(u, 2, 1, 2, [](std::size_t k) {
        return static_cast<long long>(k - 1) * detail::mobius_table()(k);
    });
}

/// Evaluators taking a decimal point and a digit count; the working scale
/// carries guard digits beyond `digits`.
inline FixedReal eval_M(std::string_view x, std::size_t digits)
{
    return eval_M(FixedReal::parse(x, digits + detail::guard_digits));
}
inline FixedReal eval_Mprime(std::string_view x, std::size_t digits)
{
    return eval_Mprime(FixedReal::parse(x, digits + detail::guard_digits));
}
inline FixedReal eval_Mdoubleprime(std::string_view x, std::size_t digits)
{
    return eval_Mdoubleprime(FixedReal::parse(x, digits + detail::guard_digits));
}

// ---------------------------------------------------------------------------
// Certified roots.

using RealFunction = std::function<FixedReal(const FixedReal&)>;

/// Root of f in [lo, hi] to `digits` digits. Bisection at low precision
/// locates it, Newton polishes at the working scale, and the result is
/// certified by a sign change of f, with error bounds, across a window of
/// radius 10^-(digits+2) around the estimate. That radius is the returned
/// error bound.
inline FixedReal find_root(const RealFunction& f, const RealFunction& df, std::string_view lo_text,
                           std::string_view hi_text, std::size_t digits)
{
    if (digits == 0) throw std::invalid_argument("necs: need at least one digit");
    // Low precision bracket.
    const std::size_t coarse = 30;
    FixedReal lo = FixedReal::parse(lo_text, coarse), hi = FixedReal::parse(hi_text, coarse);
    const int slo = f(lo).certified_sign(), shi = f(hi).certified_sign();
    if (slo == 0 || shi == 0 || slo == shi) throw std::runtime_error("necs: initial bracket has no certified sign change");
    for (int i = 0; i < 45; ++i) {
        FixedReal mid = ((lo + hi) / 2).point();
        const int sm = f(mid).certified_sign();
        if (sm == 0) break;
        (sm == slo ? lo : hi) = mid;
    }
    const std::size_t scale = digits + detail::guard_digits;
    FixedReal x = ((lo + hi) / 2).point().rescaled(scale).point();
    const BigInt tiny = detail::pow10(4);
    for (int it = 0; it < 60; ++it) {
        const FixedReal step = (f(x).point() / df(x).point()).point();
        x = (x - step).point();
        if (detail::abs_big(step.mantissa()) <= tiny) break;
    }
    const FixedReal radius(detail::pow10(scale - digits - 2), scale);
    const int sa = f((x - radius).point()).certified_sign();
    const int sb = f((x + radius).point()).certified_sign();
    if (sa == 0 || sb == 0 || sa == sb) throw std::runtime_error("necs: failed to certify root bracket");
    return FixedReal(x.mantissa(), scale, radius.mantissa());
}

/// tau: the zero of M' in (0, alpha); solves the characteristic equation.
inline FixedReal find_tau(std::size_t digits)
{
    return find_root([](const FixedReal& x) { return eval_Mprime(x); },
                     [](const FixedReal& x) { return eval_Mdoubleprime(x); }, "0.3", "0.35", digits);
}

/// alpha: the positive zero of G(u) = M(u)/u of least modulus.
inline FixedReal find_alpha(std::size_t digits)
{
    return find_root([](const FixedReal& x) { return eval_M(x); },
                     [](const FixedReal& x) { return eval_Mprime(x); }, "0.55", "0.6", digits);
}

/// beta: the negative zero of M' in (-alpha, 0).
inline FixedReal find_beta(std::size_t digits)
{
    return find_root([](const FixedReal& x) { return eval_Mprime(x); },
                     [](const FixedReal& x) { return eval_Mdoubleprime(x); }, "-0.58", "-0.54", digits);
}

struct AsymptoticConstants {
    std::size_t digits = 0;
    FixedReal tau;   // zero of M'
    FixedReal rho;   // M(tau), radius of convergence of A
    FixedReal gamma; // 1 / rho
    FixedReal M2tau; // M''(tau)
    FixedReal d1;    // sqrt(-2 M(tau) / M''(tau))
    FixedReal c;     // d1 / (2 sqrt(pi))
};

/// tau, rho, gamma, M''(tau), d1 and c, each with error at most 10^-digits.
inline AsymptoticConstants constants(std::size_t digits)
{
    AsymptoticConstants k;
    k.digits = digits;
    k.tau = find_tau(digits);
    k.rho = eval_M(k.tau);
    k.gamma = FixedReal::from_int(1, k.tau.scale()) / k.rho;
    k.M2tau = eval_Mdoubleprime(k.tau);
    k.d1 = sqrt((k.rho * -2) / k.M2tau);
    k.c = k.d1 / (sqrt(pi(k.tau.scale())) * 2);
    for (const FixedReal* v : {&k.tau, &k.rho, &k.gamma, &k.M2tau, &k.d1, &k.c})
        if (!v->error_below_digits(digits)) throw std::runtime_error("necs: constant not certified to requested digits");
    return k;
}

/// m tau^(m-1) M'(tau^m) c: the constant in a_{k,m} ~ (.) gamma^k k^{-3/2}.
inline FixedReal gcd_constant(const AsymptoticConstants& k, std::size_t m)
{
    if (m == 0) throw std::invalid_argument("necs: gcd must be positive");
    FixedReal tp = FixedReal::from_int(1, k.tau.scale());
    for (std::size_t i = 1; i < m; ++i) tp = tp * k.tau; // tau^(m-1)
    const FixedReal tm = tp * k.tau;                        // tau^m
    return tp * eval_Mprime(tm) * static_cast<long long>(m) * k.c;
}

// ---------------------------------------------------------------------------
// Ratio tables.

struct RatioRow {
    std::size_t k = 0;
    long double ratio = 0; // count * k^{3/2} * gamma^{-k}
    long double target = 0;
    long double gap = 0;   // |ratio - target| / target, or |ratio| if target is 0
    bool improved = true;  // gap smaller than on the previous row
};

namespace detail {

inline std::vector<RatioRow> ratio_rows(const std::function<BigInt(std::size_t)>& count, std::size_t kmin,
                                        std::size_t kmax, long double gamma, long double target)
{
    std::vector<RatioRow> rows;
    for (std::size_t k = kmin; k <= kmax; ++k) {
        RatioRow r;
        r.k = k;
        const long double a = count(k).convert_to<long double>();
        const long double kk = static_cast<long double>(k);
        r.ratio = a * std::pow(kk, 1.5L) * std::pow(gamma, -kk);
        r.target = target;
        r.gap = target != 0 ? std::fabs(r.ratio - target) / target : std::fabs(r.ratio);
        r.improved = rows.empty() || r.gap < rows.back().gap;
        rows.push_back(r);
    }
    return rows;
}

inline long double to_ld(const FixedReal& v) { return std::stold(v.to_string(30)); }

} // namespace detail

/// a_k k^{3/2} gamma^{-k} against c for k = 1..K, counts from the table.
inline std::vector<RatioRow> ratio_check(const CountTable& table, const AsymptoticConstants& k)
{
    return detail::ratio_rows([&](std::size_t n) { return table.total(n); }, 1, table.max_size(),
                              detail::to_ld(k.gamma), detail::to_ld(k.c));
}

/// a_{k,m} k^{3/2} gamma^{-k} against m tau^(m-1) M'(tau^m) c, for k = m..K.
inline std::vector<RatioRow> gcd_ratio_check(const CountTable& table, std::size_t m, const AsymptoticConstants& k)
{
    return detail::ratio_rows([&](std::size_t n) { return table.at(n, m); }, m, table.max_size(),
                              detail::to_ld(k.gamma), detail::to_ld(gcd_constant(k, m)));
}

// ---------------------------------------------------------------------------
// Identities.

struct IdentityReport {
    std::string point;
    FixedReal lambert;       // sum_{m>=1} M(x^m) - x
    FixedReal derivative;    // sum_{m>=1} m x^(m-1) M'(x^m) - 1
    std::optional<FixedReal> consistency; // sum_{m>=2} m tau^(m-1) M'(tau^m) - 1 (at tau only)
    std::size_t terms = 0;

    /// Every residual enclosure lies within 10^-digits of zero.
    bool within(std::size_t digits) const
    {
        const BigRational tol(1, detail::pow10(digits));
        auto ok = [&](const FixedReal& r) { return r.abs_upper() <= tol; };
        return ok(lambert) && ok(derivative) && (!consistency || ok(*consistency));
    }
};

/// Residuals of the Lambert-series identities at x, truncated in m where a
/// geometric tail bound drops below one ulp (added to the errors).
inline IdentityReport identity_residuals(const FixedReal& x, bool at_tau)
{
    const std::size_t s = x.scale();
    const BigRational q = detail::abs_bound(x);
    if (q >= 1) throw std::domain_error("necs: identities need |x| < 1");
    IdentityReport rep;
    rep.point = x.to_string(std::min<std::size_t>(s, 20));
    const FixedReal one = FixedReal::from_int(1, s);
    // |M(y)| <= |y|/(1-q), |M'(y)| <= 1/(1-q)^2 for |y| <= q.
    const BigRational inv = 1 / (1 - q);
    const std::size_t mc =
        std::max(detail::terms_needed(0, 0, q, s + 3), detail::terms_needed(1, 1, q, s + 3));
    FixedReal lam(0, s), der(0, s), con(0, s);
    FixedReal pw_prev = one; // x^(m-1)
    for (std::size_t m = 1; m <= mc; ++m) {
        const FixedReal pw = pw_prev * x;
        lam = lam + eval_M(pw);
        const FixedReal t = pw_prev * eval_Mprime(pw) * static_cast<long long>(m);
        der = der + t;
        if (m >= 2) con = con + t;
        pw_prev = pw;
    }
    const BigInt tail_lam = detail::ceil_ulps(*detail::power_tail(0, 0, q, mc) * inv, s);
    const BigInt tail_der = detail::ceil_ulps(*detail::power_tail(1, 1, q, mc) * inv * inv, s);
    rep.lambert = lam - x;
    rep.lambert = FixedReal(rep.lambert.mantissa(), s, rep.lambert.error() + tail_lam);
    rep.derivative = der - one;
    rep.derivative = FixedReal(rep.derivative.mantissa(), s, rep.derivative.error() + tail_der);
    if (at_tau) {
        const FixedReal r = con - one;
        rep.consistency = FixedReal(r.mantissa(), s, r.error() + tail_der);
    }
    rep.terms = mc;
    return rep;
}

/// The identity battery at tau and at 0.1 and 0.5, at `digits` digits
/// plus guard digits.
inline std::vector<IdentityReport> identity_checks(std::size_t digits)
{
    std::vector<IdentityReport> out;
    const FixedReal tau = find_tau(digits + 4);
    const std::size_t s = tau.scale();
    out.push_back(identity_residuals(tau, true));
    out.push_back(identity_residuals(FixedReal::parse("0.1", s), false));
    out.push_back(identity_residuals(FixedReal::parse("0.5", s), false));
    return out;
}

/// phi(u) - u phi'(u) - M'(u)/G(u)^2 with phi = 1/G evaluated through G and
/// G'; zero up to rounding.
inline FixedReal characteristic_residual(const FixedReal& u)
{
    const FixedReal g = eval_G(u), gp = eval_Gprime(u);
    const FixedReal g2 = g * g;
    const FixedReal one = FixedReal::from_int(1, u.scale());
    const FixedReal lhs = one / g + (u * gp) / g2;
    return lhs - eval_Mprime(u) / g2;
}

} // namespace necs
