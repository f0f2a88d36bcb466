#pragma once

// Text and JSON encodings of covering systems.
//
// Text: one class per line written `a mod n`; `#` starts a comment and
// blank lines are ignored. JSON: an array of [a, n] pairs. Output is
// always in canonical order.

#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "congruence.hpp"

namespace necs::io {

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::string_view strip_comment(std::string_view line)
{
    if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
    return trim(line);
}

inline u64 parse_u64(std::string_view tok, std::size_t line_no)
{
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad integer '" + std::string(tok) + "'");
    return v;
}

inline ResidueClass parse_class_line(std::string_view line, std::size_t line_no)
{
    std::istringstream in{std::string(line)};
    std::string a, kw, n, extra;
    if (!(in >> a >> kw >> n) || kw != "mod" || (in >> extra))
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'a mod n'");
    const u64 off = parse_u64(a, line_no);
    const u64 mod = parse_u64(n, line_no);
    if (mod == 0 || off >= mod)
        throw std::invalid_argument("line " + std::to_string(line_no) + ": need 0 <= a < n");
    return ResidueClass{off, mod};
}

} // namespace detail

inline CoveringSystem parse_text(std::string_view text)
{
    std::vector<ResidueClass> classes;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto line = detail::strip_comment(text.substr(start, end - start));
        if (!line.empty()) classes.push_back(detail::parse_class_line(line, line_no));
        start = end + 1;
    }
    if (classes.empty()) throw std::invalid_argument("no residue classes in input");
    return CoveringSystem(std::move(classes));
}

inline std::string to_text(const CoveringSystem& c)
{
    std::string out;
    for (const auto& r : c) out += std::to_string(r.offset) + " mod " + std::to_string(r.modulus) + "\n";
    return out;
}

/// Several systems in text form, separated by one blank line.
inline std::string to_text(std::span<const CoveringSystem> systems)
{
    std::string out;
    for (std::size_t i = 0; i < systems.size(); ++i) {
        if (i) out += "\n";
        out += to_text(systems[i]);
    }
    return out;
}

/// Splits a multi-system text stream at blank lines; comment-only lines
/// do not separate blocks.
inline std::vector<CoveringSystem> parse_text_stream(std::string_view text)
{
    std::vector<CoveringSystem> out;
    std::vector<ResidueClass> block;
    std::size_t line_no = 0, start = 0;
    auto flush = [&] {
        if (!block.empty()) out.emplace_back(std::move(block));
        block.clear();
    };
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto raw = text.substr(start, end - start);
        if (detail::trim(raw).empty()) {
            flush();
        } else if (auto line = detail::strip_comment(raw); !line.empty()) {
            block.push_back(detail::parse_class_line(line, line_no));
        }
        start = end + 1;
    }
    flush();
    return out;
}

inline nlohmann::json to_json(const CoveringSystem& c)
{
    auto arr = nlohmann::json::array();
    for (const auto& r : c) arr.push_back({r.offset, r.modulus});
    return arr;
}

inline CoveringSystem from_json(const nlohmann::json& j)
{
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of [a, n] pairs");
    std::vector<ResidueClass> classes;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
            throw std::invalid_argument("expected [a, n] with nonnegative integers");
        const u64 a = p[0].get<u64>(), n = p[1].get<u64>();
        if (n == 0 || a >= n) throw std::invalid_argument("need 0 <= a < n");
        classes.push_back(ResidueClass{a, n});
    }
    return CoveringSystem(std::move(classes));
}

/// Accepts either encoding; JSON is recognised by a leading '['.
inline CoveringSystem parse_any(std::string_view text)
{
    auto t = detail::trim(text);
    if (!t.empty() && t.front() == '[') return from_json(nlohmann::json::parse(t));
    return parse_text(text);
}

} // namespace necs::io
