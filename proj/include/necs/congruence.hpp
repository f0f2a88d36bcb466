#pragma once

// Residue classes, covering systems, and the constructions that relate
// them: expansion, r-splitting, contraction and shifting.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace necs {

/// The congruence class <offset, modulus> = { x : x = offset (mod modulus) }.
struct ResidueClass {
    u64 offset = 0;
    u64 modulus = 1;

    constexpr ResidueClass() = default;
    ResidueClass(u64 a, u64 n) : offset(a), modulus(n)
    {
        if (n == 0) throw std::invalid_argument("necs: residue class modulus must be positive");
        if (a >= n) throw std::invalid_argument("necs: residue class offset must lie in [0, modulus)");
    }

    // Canonical order: modulus first, then offset.
    friend constexpr std::strong_ordering operator<=>(const ResidueClass& l, const ResidueClass& r)
    {
        if (auto c = l.modulus <=> r.modulus; c != 0) return c;
        return l.offset <=> r.offset;
    }
    friend constexpr bool operator==(const ResidueClass&, const ResidueClass&) = default;

    bool contains(u64 x) const { return x % modulus == offset; }
};

/// Two classes intersect iff their offsets agree modulo gcd of the moduli (CRT).
inline bool disjoint(const ResidueClass& x, const ResidueClass& y)
{
    u64 g = std::gcd(x.modulus, y.modulus);
    return x.offset % g != y.offset % g;
}

/// A finite nonempty set of residue classes, kept sorted in canonical order.
class CoveringSystem {
public:
    CoveringSystem() : classes_{ResidueClass{0, 1}} {}

    explicit CoveringSystem(std::vector<ResidueClass> classes) : classes_(std::move(classes))
    {
        if (classes_.empty()) throw std::invalid_argument("necs: a covering system needs at least one class");
        std::sort(classes_.begin(), classes_.end());
        if (std::adjacent_find(classes_.begin(), classes_.end()) != classes_.end())
            throw std::invalid_argument("necs: duplicate residue class");
    }

    CoveringSystem(std::initializer_list<ResidueClass> classes)
        : CoveringSystem(std::vector<ResidueClass>(classes))
    {
    }

    /// Wraps an already canonical (sorted, duplicate-free, nonempty) sequence.
    static CoveringSystem from_canonical(std::vector<ResidueClass> classes)
    {
        CoveringSystem c;
        c.classes_ = std::move(classes);
        return c;
    }

    std::span<const ResidueClass> classes() const { return classes_; }
    const std::vector<ResidueClass>& vec() const { return classes_; }
    std::size_t size() const { return classes_.size(); }
    const ResidueClass& operator[](std::size_t i) const { return classes_[i]; }
    auto begin() const { return classes_.begin(); }
    auto end() const { return classes_.end(); }

    u64 gcd() const
    {
        u64 g = 0;
        for (const auto& c : classes_) g = std::gcd(g, c.modulus);
        return g;
    }

    u64 lcm() const
    {
        u64 l = 1;
        for (const auto& c : classes_) l = detail::checked_lcm(l, c.modulus);
        return l;
    }

    bool contains(const ResidueClass& c) const
    {
        return std::binary_search(classes_.begin(), classes_.end(), c);
    }

    bool is_trivial() const { return classes_.size() == 1 && classes_[0].modulus == 1; }

    friend auto operator<=>(const CoveringSystem&, const CoveringSystem&) = default;
    friend bool operator==(const CoveringSystem&, const CoveringSystem&) = default;

private:
    std::vector<ResidueClass> classes_;
};

/// Listing order for printed tables: size, then lcm, then the class
/// sequences compared lexicographically with each class keyed by
/// (offset, modulus).
inline bool listing_less(const CoveringSystem& x, const CoveringSystem& y)
{
    if (x.size() != y.size()) return x.size() < y.size();
    if (const u64 lx = x.lcm(), ly = y.lcm(); lx != ly) return lx < ly;
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](const ResidueClass& a, const ResidueClass& b) {
                                            return std::tie(a.offset, a.modulus) < std::tie(b.offset, b.modulus);
                                        });
}

inline std::size_t size_of(const CoveringSystem& c) { return c.size(); }
inline u64 gcd_of(const CoveringSystem& c) { return c.gcd(); }
inline u64 lcm_of(const CoveringSystem& c) { return c.lcm(); }

/// True iff the classes partition the integers: pairwise disjoint and
/// densities summing to exactly one.
inline bool is_exact(const CoveringSystem& c)
{
    const auto& v = c.vec();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (!disjoint(v[i], v[j])) return false;
    BigRational density = 0;
    for (const auto& r : v) density += BigRational(1, r.modulus);
    return density == 1;
}

/// True iff every integer lies in some class, checked over one period of
/// the lcm. Throws std::length_error when the lcm exceeds `max_period`.
inline bool is_covering(const CoveringSystem& c, u64 max_period = u64{1} << 28)
{
    const u64 l = c.lcm();
    if (l > max_period) throw std::length_error("necs: lcm too large for a covering check");
    std::vector<bool> hit(l, false);
    for (const auto& r : c)
        for (u64 x = r.offset; x < l; x += r.modulus) hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

/// The <b,c>-expansion { <b + c*a, c*n> }.
inline CoveringSystem expand(const CoveringSystem& c, u64 b, u64 scale)
{
    if (scale == 0 || b >= scale) throw std::invalid_argument("necs: expand needs 0 <= b < c");
    std::vector<ResidueClass> out;
    out.reserve(c.size());
    // Multiplying by c and adding b < c preserves the canonical order.
    for (const auto& r : c)
        out.push_back(ResidueClass{detail::checked_add(b, detail::checked_mul(scale, r.offset)),
                                   detail::checked_mul(scale, r.modulus)});
    return CoveringSystem::from_canonical(std::move(out));
}

/// Replaces `target` by its r-split { <a + j*n, r*n> : j = 0..r-1 }.
inline CoveringSystem r_split(const CoveringSystem& c, const ResidueClass& target, u64 r)
{
    if (r < 2) throw std::invalid_argument("necs: r-split needs r >= 2");
    if (!c.contains(target)) throw std::invalid_argument("necs: split target is not a class of the system");
    std::vector<ResidueClass> out;
    out.reserve(c.size() + r - 1);
    for (const auto& x : c)
        if (x != target) out.push_back(x);
    const u64 m = detail::checked_mul(r, target.modulus);
    for (u64 j = 0; j < r; ++j)
        out.push_back(ResidueClass{target.offset + j * target.modulus, m});
    return CoveringSystem(std::move(out));
}

namespace detail {

// Contraction without the exactness check; every class modulus must be a
// multiple of n. Pieces may come back empty for inexact input, so callers
// must have validated exactness.
inline std::vector<std::vector<ResidueClass>> contract_raw(const CoveringSystem& c, u64 n)
{
    std::vector<std::vector<ResidueClass>> pieces(n);
    for (const auto& r : c) {
        const u64 i = r.offset % n;
        pieces[i].push_back(ResidueClass{(r.offset - i) / n, r.modulus / n});
    }
    return pieces;
}

} // namespace detail

/// Splits an exact system with n | gcd into n subsystems by residue mod n;
/// piece i collects the classes with offset = i (mod n), rescaled.
inline std::vector<CoveringSystem> contract(const CoveringSystem& c, u64 n)
{
    if (n < 2) throw std::invalid_argument("necs: contract needs n >= 2");
    if (c.gcd() % n != 0) throw std::invalid_argument("necs: contraction factor must divide the gcd");
    if (!is_exact(c)) throw std::invalid_argument("necs: contraction needs an exact covering system");
    std::vector<CoveringSystem> out;
    out.reserve(n);
    for (auto& piece : detail::contract_raw(c, n))
        out.push_back(CoveringSystem::from_canonical(std::move(piece)));
    return out;
}

/// Inverse of contract: the union of expand(pieces[i], i, n).
inline CoveringSystem reassemble(std::span<const CoveringSystem> pieces)
{
    const u64 n = pieces.size();
    if (n == 0) throw std::invalid_argument("necs: nothing to reassemble");
    if (n == 1) return pieces[0];
    std::vector<ResidueClass> out;
    for (u64 i = 0; i < n; ++i)
        for (const auto& r : pieces[i])
            out.push_back(ResidueClass{detail::checked_add(i, detail::checked_mul(n, r.offset)),
                                       detail::checked_mul(n, r.modulus)});
    std::sort(out.begin(), out.end());
    return CoveringSystem::from_canonical(std::move(out));
}

namespace detail {

inline bool is_natural_unchecked(const CoveringSystem& c)
{
    if (c.is_trivial()) return true;
    const u64 g = c.gcd();
    if (g == 1) return false;
    const u64 p = smallest_prime_factor(g);
    for (auto& piece : contract_raw(c, p))
        if (!is_natural_unchecked(CoveringSystem::from_canonical(std::move(piece)))) return false;
    return true;
}

} // namespace detail

/// Membership in the natural systems (those reachable from {<0,1>} by
/// splits). An exact system with p | gcd is natural iff each of its p
/// contraction pieces is, and a natural system other than {<0,1>} has
/// gcd > 1, so recursing on the smallest prime of the gcd decides it.
inline bool is_natural(const CoveringSystem& c)
{
    if (!is_exact(c)) throw std::domain_error("necs: not a covering system (classes are not an exact cover)");
    return detail::is_natural_unchecked(c);
}

/// Translates every class by t: <a,n> -> <(a+t) mod n, n>.
inline CoveringSystem shift(const CoveringSystem& c, i64 t)
{
    std::vector<ResidueClass> out;
    out.reserve(c.size());
    for (const auto& r : c) {
        const u64 tm = detail::floor_mod(t, r.modulus);
        out.push_back(ResidueClass{(r.offset + tm) % r.modulus, r.modulus});
    }
    return CoveringSystem(std::move(out));
}

/// The lexicographically least translate of C and the least t in [0, lcm)
/// producing it.
///
/// Classes are compared group by group in increasing modulus, and the
/// sorted offsets of the modulus-n group depend only on t mod n. Candidate
/// shifts are therefore refined modulo the running lcm of the processed
/// moduli, keeping only the lifts whose current group is minimal.
inline std::pair<CoveringSystem, u64> canonical_shift(const CoveringSystem& c)
{
    const auto& v = c.vec();
    std::vector<u64> candidates{0};
    u64 period = 1;
    std::vector<u64> best, key;
    std::size_t i = 0;
    while (i < v.size()) {
        const u64 n = v[i].modulus;
        std::size_t j = i;
        while (j < v.size() && v[j].modulus == n) ++j;

        const u64 next_period = detail::checked_lcm(period, n);
        const u64 lifts = next_period / period;
        std::vector<u64> survivors;
        best.clear();
        for (u64 cand : candidates) {
            for (u64 s = 0; s < lifts; ++s) {
                const u64 t = cand + s * period;
                key.clear();
                for (std::size_t q = i; q < j; ++q) key.push_back((v[q].offset + t) % n);
                std::sort(key.begin(), key.end());
                if (best.empty() || key < best) {
                    best = key;
                    survivors.clear();
                    survivors.push_back(t);
                } else if (key == best) {
                    survivors.push_back(t);
                }
            }
        }
        candidates = std::move(survivors);
        period = next_period;
        i = j;
    }
    const u64 t = *std::min_element(candidates.begin(), candidates.end());
    return {shift(c, static_cast<i64>(t)), t};
}

} // namespace necs

template <>
struct std::hash<necs::CoveringSystem> {
    std::size_t operator()(const necs::CoveringSystem& c) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ull;
        for (const auto& r : c) {
            h ^= r.modulus + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h ^= r.offset + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};
