#pragma once

// Independent reference implementations for the tests. Each one is the
// slow, obvious computation; none calls the code path it checks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <necs/necs.hpp>

namespace oracle {

using necs::BigInt;
using necs::CoveringSystem;
using necs::ResidueClass;
using necs::u64;

/// Exact cover by counting hits over one full period of the lcm.
inline bool exact_by_period(const CoveringSystem& c)
{
    u64 l = 1;
    for (const auto& r : c) l = std::lcm(l, r.modulus);
    std::vector<int> hits(l, 0);
    for (const auto& r : c)
        for (u64 x = r.offset; x < l; x += r.modulus) ++hits[x];
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

/// Moebius function by trial division.
inline int mobius(u64 n)
{
    int sign = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

/// Schoolbook truncated product.
inline std::vector<BigInt> mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::size_t n)
{
    std::vector<BigInt> r(n + 1);
    for (std::size_t i = 0; i < a.size() && i <= n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// S(R(x)) as sum s_k R^k, powers by repeated schoolbook products.
inline std::vector<BigInt> compose(const std::vector<BigInt>& s, const std::vector<BigInt>& r, std::size_t n)
{
    std::vector<BigInt> out(n + 1), pw(n + 1);
    pw[0] = 1;
    for (std::size_t k = 0; k < s.size() && k <= n; ++k) {
        for (std::size_t i = 0; i <= n; ++i) out[i] += s[k] * pw[i];
        pw = mul(pw, r, n);
    }
    return out;
}

/// The least translate by scanning every t in [0, lcm).
inline std::pair<CoveringSystem, u64> canonical_shift(const CoveringSystem& c)
{
    u64 l = 1;
    for (const auto& r : c) l = std::lcm(l, r.modulus);
    std::optional<CoveringSystem> best;
    u64 bt = 0;
    for (u64 t = 0; t < l; ++t) {
        std::vector<ResidueClass> v;
        for (const auto& r : c) v.push_back(ResidueClass{(r.offset + t) % r.modulus, r.modulus});
        CoveringSystem s(std::move(v));
        if (!best || s < *best) {
            best = s;
            bt = t;
        }
    }
    return {*best, bt};
}

/// Every system reachable from {<0,1>} by split sequences, of size <= k.
inline std::set<CoveringSystem> split_closure(std::size_t k)
{
    std::set<CoveringSystem> seen{CoveringSystem{}};
    std::vector<CoveringSystem> frontier{CoveringSystem{}};
    while (!frontier.empty()) {
        std::vector<CoveringSystem> next;
        for (const auto& c : frontier)
            for (const auto& cls : c)
                for (u64 r = 2; c.size() + r - 1 <= k; ++r) {
                    std::vector<ResidueClass> v;
                    for (const auto& x : c)
                        if (x != cls) v.push_back(x);
                    for (u64 j = 0; j < r; ++j) v.push_back(ResidueClass{cls.offset + j * cls.modulus, r * cls.modulus});
                    CoveringSystem s(std::move(v));
                    if (seen.insert(s).second) next.push_back(s);
                }
        frontier = std::move(next);
    }
    return seen;
}

/// Literal sum over compositions of k into n parts and tuples (m_i) with
/// 1 <= m_i <= j_i and gcd exactly d, of the product of a(j_i, m_i).
inline BigInt composition_sum(const necs::CountTable& t, std::size_t k, std::size_t n, std::size_t d)
{
    BigInt total = 0;
    std::vector<std::size_t> parts(n), gcds(n);
    auto tuples = [&](auto&& self, std::size_t i, std::size_t g) -> void {
        if (i == n) {
            if (g != d) return;
            BigInt p = 1;
            for (std::size_t q = 0; q < n; ++q) p *= t.at(parts[q], gcds[q]);
            total += p;
            return;
        }
        for (std::size_t m = 1; m <= parts[i]; ++m) {
            gcds[i] = m;
            self(self, i + 1, std::gcd(g, m));
        }
    };
    auto comps = [&](auto&& self, std::size_t i, std::size_t left) -> void {
        if (i + 1 == n) {
            parts[i] = left;
            tuples(tuples, 0, 0);
            return;
        }
        for (std::size_t v = 1; v + (n - i - 1) <= left; ++v) {
            parts[i] = v;
            self(self, i + 1, left - v);
        }
    };
    if (n >= 1 && k >= n) comps(comps, 0, k);
    return total;
}

/// A natural system built by `splits` random splits with r in [2, max_r].
inline CoveringSystem random_necs(std::mt19937_64& rng, std::size_t splits, u64 max_r = 3)
{
    CoveringSystem c;
    for (std::size_t i = 0; i < splits; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
        std::uniform_int_distribution<u64> r(2, max_r);
        c = necs::r_split(c, c[pick(rng)], r(rng));
    }
    return c;
}

/// A random tree with every vertex of up-degree 0 or 2..max_r.
inline necs::Tree random_tree(std::mt19937_64& rng, std::size_t depth, std::size_t max_r = 3)
{
    std::bernoulli_distribution leaf(depth == 0 ? 1.0 : 0.4);
    if (leaf(rng)) return necs::Tree{};
    std::uniform_int_distribution<std::size_t> r(2, max_r);
    std::vector<necs::Tree> kids;
    const std::size_t n = r(rng);
    for (std::size_t i = 0; i < n; ++i) kids.push_back(random_tree(rng, depth - 1, max_r));
    return necs::Tree(std::move(kids));
}

} // namespace oracle
