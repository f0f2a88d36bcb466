#pragma once

// Counting natural exact covering systems by size, gcd and lcm without
// listing them.
//
// A natural system C with gcd exactly n >= 2 corresponds to an n-tuple of
// natural systems (its contraction pieces) whose gcds are coprime as a
// tuple; sizes add, gcd(C) = n * gcd(piece gcds) and lcm(C) = n * lcm(piece
// lcms). The only natural system of gcd 1 is {<0,1>}.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arith.hpp"
#include "series.hpp"

namespace necs {

/// a(k, m): number of natural systems of size k and gcd m, 1 <= m <= k <= K.
class CountTable {
public:
    CountTable() = default;
    explicit CountTable(std::size_t max_size) : rows_(max_size + 1)
    {
        for (std::size_t k = 0; k <= max_size; ++k) rows_[k].assign(k + 1, BigInt(0));
    }

    std::size_t max_size() const { return rows_.empty() ? 0 : rows_.size() - 1; }

    BigInt at(std::size_t k, std::size_t m) const
    {
        if (k == 0 || k > max_size()) throw std::out_of_range("necs: size outside the count table");
        if (m == 0 || m > k) return 0;
        return rows_[k][m];
    }
    BigInt& ref(std::size_t k, std::size_t m) { return rows_.at(k).at(m); }

    /// Row sum: all natural systems of size k.
    BigInt total(std::size_t k) const
    {
        BigInt s = 0;
        for (std::size_t m = 1; m <= k; ++m) s += at(k, m);
        return s;
    }

    friend bool operator==(const CountTable&, const CountTable&) = default;

private:
    std::vector<std::vector<BigInt>> rows_;
};

/// Fills a(k, m) for k <= K.
///
/// For n >= 2 the count is a sum over compositions (j_1..j_n) of k and
/// coprime tuples (m_1..m_n) of prod a(j_i, m_i). The coprimality filter is
/// removed by Moebius inversion over common divisors d,
///   a(k, n) = sum_d mu(d) [x^k] S_d(x)^n,   S_d(x) = sum_j x^j sum_{d|m} a(j, m),
/// and [x^k] S_d^n is the composition sum itself, accumulated one part at a
/// time so only rows below k are read.
inline CountTable count_size_gcd(std::size_t max_size)
{
    if (max_size == 0) throw std::invalid_argument("necs: count_size_gcd needs K >= 1");
    const std::size_t K = max_size;
    CountTable table(K);
    const auto mu = mobius_upto(K);
    // s[d][j] = sum over multiples m of d of a(j, m)
    std::vector<std::vector<BigInt>> s(K + 1, std::vector<BigInt>(K + 1));
    // pw[d][n][j] = [x^j] S_d(x)^n
    std::vector<std::vector<std::vector<BigInt>>> pw(
        K + 1, std::vector<std::vector<BigInt>>(K + 1, std::vector<BigInt>(K + 1)));

    for (std::size_t k = 1; k <= K; ++k) {
        if (k == 1) {
            table.ref(1, 1) = 1;
        } else {
            for (std::size_t d = 1; d <= k; ++d) {
                for (std::size_t n = 2; n <= k; ++n) {
                    BigInt v = 0;
                    for (std::size_t j = 1; j + (n - 1) <= k; ++j)
                        if (s[d][j] != 0) v += s[d][j] * pw[d][n - 1][k - j];
                    pw[d][n][k] = std::move(v);
                }
            }
            for (std::size_t n = 2; n <= k; ++n) {
                BigInt v = 0;
                for (std::size_t d = 1; d <= k; ++d)
                    if (mu[d] != 0) v += mu[d] * pw[d][n][k];
                table.ref(k, n) = std::move(v);
            }
        }
        for (std::size_t d = 1; d <= K; ++d) {
            BigInt v = 0;
            for (std::size_t m = d; m <= k; m += d) v += table.at(k, m);
            s[d][k] = v;
            pw[d][1][k] = std::move(v);
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Disk cache for count tables: a small JSON document with a format version.

inline constexpr int count_cache_version = 1;

inline void save_count_cache(const CountTable& t, const std::filesystem::path& path)
{
    nlohmann::json doc;
    doc["format"] = "necs-count-table";
    doc["version"] = count_cache_version;
    doc["max_size"] = t.max_size();
    auto entries = nlohmann::json::array();
    for (std::size_t k = 1; k <= t.max_size(); ++k)
        for (std::size_t m = 1; m <= k; ++m) entries.push_back({k, m, t.at(k, m).str()});
    doc["entries"] = std::move(entries);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write count cache " + path.string());
    out << doc.dump() << "\n";
}

/// Reads a cache file; nullopt when absent, of another version, or
/// malformed.
inline std::optional<CountTable> load_count_cache(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        auto doc = nlohmann::json::parse(in);
        if (doc.value("format", "") != "necs-count-table" || doc.value("version", 0) != count_cache_version)
            return std::nullopt;
        CountTable t(doc.at("max_size").get<std::size_t>());
        for (const auto& e : doc.at("entries")) {
            const auto k = e.at(0).get<std::size_t>(), m = e.at(1).get<std::size_t>();
            t.ref(k, m) = BigInt(e.at(2).get<std::string>());
        }
        return t;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

/// count_size_gcd through a cache file: reuses a cached table that covers
/// K, otherwise computes and rewrites the cache.
inline CountTable count_size_gcd_cached(std::size_t max_size, const std::filesystem::path& path)
{
    if (auto cached = load_count_cache(path); cached && cached->max_size() >= max_size) {
        CountTable t(max_size);
        for (std::size_t k = 1; k <= max_size; ++k)
            for (std::size_t m = 1; m <= k; ++m) t.ref(k, m) = cached->at(k, m);
        return t;
    }
    auto t = count_size_gcd(max_size);
    save_count_cache(t, path);
    return t;
}

// ---------------------------------------------------------------------------
// Size, gcd and lcm.

/// a(k, m, l) with lcm values above a cap collected per (k, m) in an
/// explicit overflow bucket.
class LcmCountTable {
public:
    LcmCountTable(std::size_t max_size, u64 lcm_max) : max_size_(max_size), lcm_max_(lcm_max) {}

    std::size_t max_size() const { return max_size_; }
    u64 lcm_max() const { return lcm_max_; }

    BigInt at(std::size_t k, std::size_t m, u64 l) const
    {
        auto it = entries_.find({k, m});
        if (it == entries_.end()) return 0;
        auto jt = it->second.find(l);
        return jt == it->second.end() ? BigInt(0) : jt->second;
    }

    /// Systems of size k and gcd m whose lcm exceeds lcm_max.
    BigInt overflow(std::size_t k, std::size_t m) const
    {
        auto it = overflow_.find({k, m});
        return it == overflow_.end() ? BigInt(0) : it->second;
    }
    bool has_overflow() const { return !overflow_.empty(); }

    /// lcm -> count for fixed (k, m).
    const std::map<u64, BigInt>& row(std::size_t k, std::size_t m) const
    {
        static const std::map<u64, BigInt> empty;
        auto it = entries_.find({k, m});
        return it == entries_.end() ? empty : it->second;
    }

    void add(std::size_t k, std::size_t m, std::optional<u64> l, const BigInt& v)
    {
        if (l) entries_[{k, m}][*l] += v;
        else overflow_[{k, m}] += v;
    }

private:
    std::size_t max_size_;
    u64 lcm_max_;
    std::map<std::pair<std::size_t, std::size_t>, std::map<u64, BigInt>> entries_;
    std::map<std::pair<std::size_t, std::size_t>, BigInt> overflow_;
};

namespace detail {

// Key of a partial tuple: (gcd of piece gcds, lcm of piece lcms); lcm 0
// marks "already above the cap".
using TupleKey = std::pair<u64, u64>;
using TupleDist = std::map<TupleKey, BigInt>;

inline u64 capped_lcm(u64 a, u64 b, u64 cap)
{
    if (a == 0 || b == 0) return 0;
    const u64 g = std::gcd(a, b);
    u64 r = 0;
    if (__builtin_mul_overflow(a / g, b, &r) || r > cap) return 0;
    return r;
}

} // namespace detail

/// a(k, m, l) for k <= K. Uses the same tuple decomposition as
/// count_size_gcd but tracks the lcm explicitly, so tuples are folded one
/// piece at a time over (size, gcd, lcm) states.
inline LcmCountTable count_size_gcd_lcm(std::size_t max_size, u64 lcm_max = ~u64{0})
{
    if (max_size == 0) throw std::invalid_argument("necs: count_size_gcd_lcm needs K >= 1");
    const std::size_t K = max_size;
    LcmCountTable table(K, lcm_max);
    // tuples[n][s]: distribution of n-tuples with total size s.
    std::vector<std::vector<detail::TupleDist>> tuples(K + 1, std::vector<detail::TupleDist>(K + 1));

    for (std::size_t k = 1; k <= K; ++k) {
        if (k == 1) {
            table.add(1, 1, lcm_max >= 1 ? std::optional<u64>(1) : std::nullopt, 1);
        } else {
            for (std::size_t n = 2; n <= k; ++n) {
                detail::TupleDist dist;
                for (std::size_t j = 1; j + (n - 1) <= k; ++j) {
                    for (const auto& [head, hv] : tuples[1][j]) {
                        for (const auto& [tail, tv] : tuples[n - 1][k - j]) {
                            detail::TupleKey key{std::gcd(head.first, tail.first),
                                                 detail::capped_lcm(head.second, tail.second, lcm_max)};
                            dist[key] += hv * tv;
                        }
                    }
                }
                for (const auto& [key, v] : dist) {
                    if (key.first != 1) continue;
                    std::optional<u64> l;
                    if (key.second != 0) {
                        u64 r = 0;
                        if (!__builtin_mul_overflow(key.second, static_cast<u64>(n), &r) && r <= lcm_max) l = r;
                    }
                    table.add(k, n, l, v);
                }
                tuples[n][k] = std::move(dist);
            }
        }
        detail::TupleDist singles;
        for (std::size_t m = 1; m <= k; ++m) {
            for (const auto& [l, v] : table.row(k, m)) singles[{m, l}] += v;
            if (auto o = table.overflow(k, m); o != 0) singles[{m, 0}] += o;
        }
        tuples[1][k] = std::move(singles);
    }
    return table;
}

/// The distinct lcm values taken by natural systems of size k, by
/// reachability: an n-tuple of natural systems of total size k yields one
/// of lcm n * lcm(piece lcms), for every n >= 2 and every tuple.
inline std::vector<std::set<u64>> lcm_values_upto(std::size_t max_size)
{
    const std::size_t K = max_size;
    std::vector<std::set<u64>> values(K + 1);
    // reach[n][s]: lcm of lcms over n-tuples of total size s
    std::vector<std::vector<std::set<u64>>> reach(K + 1, std::vector<std::set<u64>>(K + 1));
    for (std::size_t k = 1; k <= K; ++k) {
        if (k == 1) {
            values[1] = {1};
        } else {
            for (std::size_t n = 2; n <= k; ++n) {
                std::set<u64> acc;
                for (std::size_t j = 1; j + (n - 1) <= k; ++j)
                    for (u64 a : reach[1][j])
                        for (u64 b : reach[n - 1][k - j]) acc.insert(detail::checked_lcm(a, b));
                for (u64 l : acc) values[k].insert(detail::checked_mul(l, n));
                reach[n][k] = std::move(acc);
            }
        }
        reach[1][k] = values[k];
    }
    return values;
}

inline std::set<u64> distinct_lcm_values(std::size_t k)
{
    if (k == 0) throw std::invalid_argument("necs: distinct_lcm_values needs k >= 1");
    return lcm_values_upto(k)[k];
}

/// t(k): how many distinct lcm values natural systems of size k take.
/// (Named apart from the Schroeder numbers, which share the letter.)
inline std::size_t lcm_value_count(std::size_t k) { return distinct_lcm_values(k).size(); }

} // namespace necs
