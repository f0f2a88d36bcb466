#pragma once

// Rooted ordered trees whose vertices have 0 or at least 2 children, and
// the leaf-labelling map chi onto natural exact covering systems.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "combinatorics.hpp"
#include "congruence.hpp"

namespace necs {

class Tree {
public:
    Tree() = default; // the single-vertex tree
    explicit Tree(std::vector<Tree> children) : children_(std::move(children))
    {
        if (children_.size() == 1) throw std::invalid_argument("necs: a tree vertex cannot have exactly one child");
    }

    /// The root with r leaf children.
    static Tree star(std::size_t r) { return Tree(std::vector<Tree>(r)); }

    const std::vector<Tree>& children() const { return children_; }
    std::size_t up_degree() const { return children_.size(); }
    bool is_leaf() const { return children_.empty(); }

    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b)
    {
        return std::lexicographical_compare_three_way(a.children_.begin(), a.children_.end(), b.children_.begin(),
                                                      b.children_.end());
    }
    friend bool operator==(const Tree& a, const Tree& b) { return a.children_ == b.children_; }

private:
    std::vector<Tree> children_;
};

inline std::size_t leaf_count(const Tree& t)
{
    if (t.is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& c : t.children()) n += leaf_count(c);
    return n;
}

inline std::size_t height(const Tree& t)
{
    std::size_t h = 0;
    for (const auto& c : t.children()) h = std::max(h, 1 + height(c));
    return h;
}

namespace detail {

inline void assign_labels(const Tree& t, u64 a, u64 n, std::vector<ResidueClass>& out)
{
    if (t.is_leaf()) {
        out.push_back(ResidueClass{a, n});
        return;
    }
    const u64 r = t.up_degree();
    const u64 child_mod = checked_mul(r, n);
    for (u64 j = 0; j < r; ++j) assign_labels(t.children()[j], a + j * n, child_mod, out);
}

} // namespace detail

/// Leaf labels of the tree: the root carries <0,1> and child j (0-based)
/// of a vertex labelled <a,n> with r children carries <a + j*n, r*n>.
inline CoveringSystem chi(const Tree& t)
{
    std::vector<ResidueClass> labels;
    detail::assign_labels(t, 0, 1, labels);
    return CoveringSystem(std::move(labels));
}

// ---------------------------------------------------------------------------
// Parenthesised format: a leaf is `()`, an inner vertex with r children is
// `(r c1 c2 ... cr)`.

inline std::string to_string(const Tree& t)
{
    if (t.is_leaf()) return "()";
    std::string s = "(" + std::to_string(t.up_degree());
    for (const auto& c : t.children()) s += " " + to_string(c);
    return s + ")";
}

namespace detail {

class TreeParser {
public:
    explicit TreeParser(std::string_view s) : s_(s) {}

    Tree parse()
    {
        Tree t = node();
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return t;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("tree format, offset " + std::to_string(pos_) + ": " + what);
    }
    void expect(char c)
    {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    Tree node()
    {
        expect('(');
        skip();
        if (pos_ < s_.size() && s_[pos_] == ')') {
            ++pos_;
            return Tree{};
        }
        std::size_t r = 0;
        bool any = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            r = r * 10 + static_cast<std::size_t>(s_[pos_++] - '0');
            any = true;
            if (r > 1'000'000) fail("up-degree too large");
        }
        if (!any) fail("expected an up-degree or ')'");
        if (r < 2) fail("up-degree must be at least 2");
        std::vector<Tree> kids;
        kids.reserve(r);
        for (std::size_t i = 0; i < r; ++i) kids.push_back(node());
        expect(')');
        return Tree(std::move(kids));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Tree parse_tree(std::string_view s) { return detail::TreeParser(s).parse(); }

// ---------------------------------------------------------------------------
// Regrouping bijection between trees with root up-degree a*b and trees whose
// root has a children each of up-degree b. Leaf labels are unchanged.

inline Tree ab_bijection(const Tree& t, std::size_t a, std::size_t b)
{
    if (a < 2 || b < 2) throw std::invalid_argument("necs: ab_bijection needs a, b >= 2");
    if (t.up_degree() != a * b) throw std::invalid_argument("necs: root up-degree must equal a*b");
    std::vector<Tree> groups;
    groups.reserve(a);
    for (std::size_t i = 0; i < a; ++i) {
        std::vector<Tree> kids;
        kids.reserve(b);
        for (std::size_t j = 0; j < b; ++j) kids.push_back(t.children()[i + j * a]);
        groups.emplace_back(std::move(kids));
    }
    return Tree(std::move(groups));
}

inline Tree ab_bijection_inverse(const Tree& s, std::size_t a, std::size_t b)
{
    if (a < 2 || b < 2) throw std::invalid_argument("necs: ab_bijection needs a, b >= 2");
    if (s.up_degree() != a) throw std::invalid_argument("necs: root up-degree must equal a");
    for (const auto& c : s.children())
        if (c.up_degree() != b) throw std::invalid_argument("necs: every root child must have up-degree b");
    std::vector<Tree> kids(a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) kids[i + j * a] = s.children()[i].children()[j];
    return Tree(std::move(kids));
}

// ---------------------------------------------------------------------------
// Enumeration of all trees with k leaves (counted by the Schroeder numbers).
// Order: root up-degree ascending, then leaf-count compositions of the
// children in colex order, then the cartesian product of child lists with
// the first child varying slowest.

namespace detail {

class TreeEnumerator {
public:
    const std::vector<Tree>& all(std::size_t k)
    {
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        std::vector<Tree> out;
        visit(k, 0, [&](const Tree& t) { out.push_back(t); });
        return cache_.emplace(k, std::move(out)).first->second;
    }

    // root_degree == 0 means every root degree.
    void visit(std::size_t k, std::size_t root_degree, const std::function<void(const Tree&)>& fn)
    {
        if (k == 1) {
            if (root_degree == 0) fn(Tree{});
            return;
        }
        for (std::size_t r = 2; r <= k; ++r) {
            if (root_degree != 0 && r != root_degree) continue;
            for (const auto& comp : compositions(static_cast<int>(k), static_cast<int>(r))) {
                std::vector<const std::vector<Tree>*> lists;
                for (int part : comp) lists.push_back(&all(static_cast<std::size_t>(part)));
                std::vector<Tree> kids(r);
                product(lists, 0, kids, fn);
            }
        }
    }

private:
    static void product(const std::vector<const std::vector<Tree>*>& lists, std::size_t i, std::vector<Tree>& kids,
                        const std::function<void(const Tree&)>& fn)
    {
        if (i == lists.size()) {
            fn(Tree(kids));
            return;
        }
        for (const auto& t : *lists[i]) {
            kids[i] = t;
            product(lists, i + 1, kids, fn);
        }
    }

    std::map<std::size_t, std::vector<Tree>> cache_;
};

} // namespace detail

/// Calls fn on every tree with k leaves exactly once, in a fixed order.
/// A nonzero root_degree restricts to trees with that root up-degree
/// (one shard of the full stream).
inline void for_each_tree(std::size_t k, const std::function<void(const Tree&)>& fn, std::size_t root_degree = 0)
{
    if (k == 0) throw std::invalid_argument("necs: trees have at least one leaf");
    detail::TreeEnumerator e;
    e.visit(k, root_degree, fn);
}

inline std::vector<Tree> enumerate_trees(std::size_t k)
{
    std::vector<Tree> out;
    for_each_tree(k, [&](const Tree& t) { out.push_back(t); });
    return out;
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<Tree> witness_unchecked(const CoveringSystem& c)
{
    if (c.is_trivial()) return Tree{};
    const u64 g = c.gcd();
    if (g == 1) return std::nullopt;
    const u64 p = smallest_prime_factor(g);
    std::vector<Tree> kids;
    kids.reserve(p);
    for (auto& piece : contract_raw(c, p)) {
        auto w = witness_unchecked(CoveringSystem::from_canonical(std::move(piece)));
        if (!w) return std::nullopt;
        kids.push_back(std::move(*w));
    }
    return Tree(std::move(kids));
}

} // namespace detail

/// A split tree T with chi(T) == c when c is natural, nullopt when it is
/// exact but not natural. Throws std::domain_error on inexact input.
inline std::optional<Tree> naturality_witness(const CoveringSystem& c)
{
    if (!is_exact(c)) throw std::domain_error("necs: not a covering system (classes are not an exact cover)");
    return detail::witness_unchecked(c);
}

} // namespace necs
