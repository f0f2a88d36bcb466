#pragma once

// Explicit generation of natural exact covering systems, shift classes,
// and a bounded backtracking search over all exact covering systems.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "congruence.hpp"

namespace necs {

using SystemVisitor = std::function<void(const CoveringSystem&)>;

namespace detail {

// Generates natural systems of size k and gcd exactly n through the tuple
// decomposition: compositions of k into n parts, coprime tuples of piece
// gcds, then every choice of pieces, reassembled by expansion. Distinct
// tuples give distinct systems, so nothing is deduplicated.
class NecsGenerator {
public:
    const std::vector<CoveringSystem>& list(std::size_t k, std::size_t n)
    {
        auto key = std::make_pair(k, n);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        std::vector<CoveringSystem> out;
        visit(k, n, [&](const CoveringSystem& c) { out.push_back(c); });
        return cache_.emplace(key, std::move(out)).first->second;
    }

    void visit(std::size_t k, std::size_t n, const SystemVisitor& fn)
    {
        if (n == 0 || n > k) return;
        if (n == 1) {
            if (k == 1) fn(CoveringSystem{});
            return;
        }
        for (const auto& comp : compositions(static_cast<int>(k), static_cast<int>(n))) {
            std::vector<std::size_t> gcds(n, 1);
            visit_gcd_tuples(comp, gcds, 0, 0, fn);
        }
    }

private:
    void visit_gcd_tuples(const std::vector<int>& comp, std::vector<std::size_t>& gcds, std::size_t i, u64 running,
                          const SystemVisitor& fn)
    {
        const std::size_t n = comp.size();
        if (i == n) {
            if (running != 1) return;
            std::vector<const std::vector<CoveringSystem>*> lists(n);
            for (std::size_t q = 0; q < n; ++q) {
                lists[q] = &list(static_cast<std::size_t>(comp[q]), gcds[q]);
                if (lists[q]->empty()) return;
            }
            std::vector<CoveringSystem> pieces(n);
            product(lists, 0, pieces, fn);
            return;
        }
        for (std::size_t m = 1; m <= static_cast<std::size_t>(comp[i]); ++m) {
            gcds[i] = m;
            visit_gcd_tuples(comp, gcds, i + 1, std::gcd(running, static_cast<u64>(m)), fn);
        }
    }

    static void product(const std::vector<const std::vector<CoveringSystem>*>& lists, std::size_t i,
                        std::vector<CoveringSystem>& pieces, const SystemVisitor& fn)
    {
        if (i == lists.size()) {
            fn(reassemble(pieces));
            return;
        }
        for (const auto& c : *lists[i]) {
            pieces[i] = c;
            product(lists, i + 1, pieces, fn);
        }
    }

    std::map<std::pair<std::size_t, std::size_t>, std::vector<CoveringSystem>> cache_;
};

} // namespace detail

/// Streams every natural system of size k (and gcd m when m != 0) exactly
/// once, in generation order: gcd ascending, then compositions in colex
/// order.
inline void for_each_necs(std::size_t k, std::size_t m, const SystemVisitor& fn)
{
    if (k == 0) throw std::invalid_argument("necs: enumeration needs k >= 1");
    if (m > k) return;
    detail::NecsGenerator gen;
    if (m != 0) {
        gen.visit(k, m, fn);
        return;
    }
    for (std::size_t n = 1; n <= k; ++n) gen.visit(k, n, fn);
}

/// All natural systems of size k (gcd m if nonzero) in listing order.
inline std::vector<CoveringSystem> enumerate_necs(std::size_t k, std::size_t m = 0)
{
    std::vector<CoveringSystem> out;
    for_each_necs(k, m, [&](const CoveringSystem& c) { out.push_back(c); });
    std::sort(out.begin(), out.end(), listing_less);
    return out;
}

// ---------------------------------------------------------------------------
// Shift classes.

/// Canonical representatives of the shift classes of natural systems of
/// size k, each with its class size (orbit length).
///
/// Work is sharded by the gcd of the generated systems; each shard builds
/// its own map and the maps are merged, so the result does not depend on
/// the worker count. Shifting preserves the gcd, so shards never share a
/// class.
inline std::map<CoveringSystem, std::size_t> shift_classes(std::size_t k, unsigned workers = 1)
{
    if (k == 0) throw std::invalid_argument("necs: shift classes need k >= 1");
    using Shard = std::unordered_map<CoveringSystem, std::size_t>;
    std::vector<Shard> shards(k + 1);
    auto run_shard = [&](std::size_t n) {
        detail::NecsGenerator gen;
        gen.visit(k, n, [&](const CoveringSystem& c) { ++shards[n][canonical_shift(c).first]; });
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        for (std::size_t n = 1; n <= k; ++n) run_shard(n);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t n = 1 + w; n <= k; n += workers) run_shard(n);
            });
        for (auto& t : pool) t.join();
    }
    std::map<CoveringSystem, std::size_t> merged;
    for (auto& s : shards)
        for (auto& [c, count] : s) merged.emplace(c, count);
    return merged;
}

/// s(k): number of natural systems of size k up to translation.
inline std::size_t shift_class_count(std::size_t k, unsigned workers = 1)
{
    return shift_classes(k, workers).size();
}

// ---------------------------------------------------------------------------
// Exhaustive search for exact covering systems (natural or not).

struct EcsSearchConfig {
    u64 max_modulus = 64;
    /// Wall-clock budget; zero means unlimited.
    double budget_seconds = 0;
    /// When nonzero, only systems with exactly this gcd are reported.
    u64 gcd = 0;
};

struct EcsSearchResult {
    std::vector<CoveringSystem> systems; // in listing order
    bool complete = false;               // false: budget ran out first
    std::size_t nodes = 0;
};

namespace detail {

using i128 = __int128;

// Nonnegative fraction with 128-bit parts, kept reduced.
struct Density {
    i128 num = 1, den = 1;

    static i128 gcd128(i128 a, i128 b)
    {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    Density minus_unit(u64 n) const
    {
        // num/den - 1/n = (num*n - den) / (den*n)
        i128 a = 0, b = 0, c = 0;
        if (__builtin_mul_overflow(num, static_cast<i128>(n), &a) ||
            __builtin_mul_overflow(den, static_cast<i128>(n), &c))
            throw std::overflow_error("necs: density denominator overflow in ECS search");
        b = a - den;
        Density d{b, c};
        const i128 g = gcd128(b == 0 ? c : b, c);
        d.num /= g;
        d.den /= g;
        return d;
    }
    // this >= p/q
    bool at_least(i128 p, i128 q) const { return num * q >= p * den; }
};

class EcsSearch {
public:
    EcsSearch(std::size_t k, const EcsSearchConfig& cfg) : k_(k), cfg_(cfg)
    {
        start_ = std::chrono::steady_clock::now();
    }

    EcsSearchResult run()
    {
        EcsSearchResult res;
        aborted_ = false;
        std::vector<ResidueClass> chosen;
        dfs(chosen, 0, Density{}, res);
        std::sort(res.systems.begin(), res.systems.end(), listing_less);
        res.complete = !aborted_;
        res.nodes = nodes_;
        return res;
    }

private:
    bool out_of_time()
    {
        if (cfg_.budget_seconds <= 0) return false;
        if ((nodes_ & 0x3ff) != 0) return aborted_;
        const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
        if (el.count() > cfg_.budget_seconds) aborted_ = true;
        return aborted_;
    }

    static bool covered(const std::vector<ResidueClass>& chosen, u64 y)
    {
        for (const auto& c : chosen)
            if (c.contains(y)) return true;
        return false;
    }

    void dfs(std::vector<ResidueClass>& chosen, u64 x, const Density& remaining, EcsSearchResult& res)
    {
        ++nodes_;
        if (aborted_ || out_of_time()) return;
        const std::size_t left = k_ - chosen.size();
        for (u64 n = 1; n <= cfg_.max_modulus; ++n) {
            // The new class takes density 1/n out of the remaining budget.
            if (!remaining.at_least(1, n)) continue;
            const Density after = remaining.minus_unit(n);
            if (left == 1) {
                if (after.num != 0) continue;
            } else {
                // Each of the other left-1 classes needs density >= 1/max_modulus.
                if (after.num == 0 || !after.at_least(static_cast<i128>(left - 1), cfg_.max_modulus)) continue;
            }
            const ResidueClass cand{x % n, n};
            bool ok = true;
            for (const auto& c : chosen)
                if (!disjoint(c, cand)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(cand);
            if (left == 1) {
                // Disjoint classes of total density one cover everything.
                CoveringSystem sys(chosen);
                if (cfg_.gcd == 0 || sys.gcd() == cfg_.gcd) res.systems.push_back(std::move(sys));
            } else {
                u64 y = x + 1;
                while (covered(chosen, y)) ++y;
                dfs(chosen, y, after, res);
            }
            chosen.pop_back();
            if (aborted_) return;
        }
    }

    std::size_t k_;
    EcsSearchConfig cfg_;
    std::chrono::steady_clock::time_point start_;
    std::size_t nodes_ = 0;
    bool aborted_ = false;
};

} // namespace detail

/// Every exact covering system of size k whose moduli are at most
/// cfg.max_modulus, each exactly once.
///
/// The search always extends a partial system by the class that covers the
/// smallest integer not yet covered, choosing its modulus; that class is
/// determined by the finished system, so each system has a single path.
/// Branches are cut by disjointness and by the exact density budget.
inline EcsSearchResult enumerate_ecs(std::size_t k, const EcsSearchConfig& cfg = {})
{
    if (k == 0) throw std::invalid_argument("necs: enumeration needs k >= 1");
    if (cfg.max_modulus == 0) throw std::invalid_argument("necs: max modulus must be positive");
    return detail::EcsSearch(k, cfg).run();
}

} // namespace necs
