#pragma once

// The `necs` command-line tool. run() takes the argument vector and the
// streams, so tests can drive it without a process.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <necs/necs.hpp>

namespace necs::cli {

enum ExitCode : int {
    ok = 0,
    failed = 1,
    usage = 2,
    not_natural = 3,
    not_exact = 4,
    budget_exhausted = 5,
};

/// Environment variable naming the default directory for count caches.
inline constexpr const char* cache_env = "NECS_CACHE_DIR";

namespace detail {

struct SeriesOpts {
    std::string which = "A";
    std::size_t terms = 10;
    std::string format = "lines";
};

struct CountOpts {
    std::size_t max_size = 13;
    u64 lcm_max = 0;
    std::string cache;
    std::string format = "csv";
};

struct EnumerateOpts {
    std::size_t size = 0;
    std::size_t gcd = 0;
    std::string canonical;
    std::string format = "lines";
    bool cumulative = false;
    bool ecs = false;
    double budget = 0;
    u64 max_modulus = 64;
};

struct AsymptOpts {
    std::size_t digits = 50;
    std::size_t ratios = 0;
    bool identities = false;
    std::string format = "text";
};

struct PolyOpts {
    std::size_t n = 6;
    std::size_t check_diffs = 0;
};

struct VerifyOpts {
    std::size_t order = 24;
    std::string golden_dir;
};

struct TreesOpts {
    std::size_t leaves = 0;
    std::string chi;
    bool count_only = false;
};

inline std::string read_input(const std::string& path, std::istream& in)
{
    if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline std::optional<std::filesystem::path> cache_path(const std::string& flag)
{
    if (!flag.empty()) return std::filesystem::path(flag);
    if (const char* dir = std::getenv(cache_env); dir && *dir) return std::filesystem::path(dir) / "size-gcd.json";
    return std::nullopt;
}

inline int run_series(const SeriesOpts& o, std::ostream& out)
{
    IntSeries s(0);
    std::size_t first = 1;
    if (o.which == "M") {
        s = mobius_series(o.terms);
    } else if (o.which == "A") {
        s = A_series(o.terms);
    } else if (o.which.rfind("Am:", 0) == 0) {
        const std::size_t m = std::stoul(o.which.substr(3));
        if (m == 0) throw CLI::ValidationError("--which", "Am needs m >= 1");
        first = m;
        s = Am_series(m, o.terms + m - 1);
    } else if (o.which == "phi") {
        first = 0;
        s = phi_series(o.terms == 0 ? 0 : o.terms - 1);
    } else if (o.which == "schroeder") {
        s = schroeder_series(o.terms);
    } else {
        throw CLI::ValidationError("--which", "expected M, A, Am:<m>, phi or schroeder");
    }
    if (o.format == "csv") out << "k,coefficient\n";
    for (std::size_t i = 0; i < o.terms; ++i) {
        const std::size_t k = first + i;
        if (o.format == "csv") out << k << ",";
        out << s.coeff(k) << "\n";
    }
    return ok;
}

inline void write_count_csv(const CountTable& t, std::ostream& out)
{
    out << "k,m,count\n";
    for (std::size_t k = 1; k <= t.max_size(); ++k)
        for (std::size_t m = 1; m <= k; ++m) out << k << "," << m << "," << t.at(k, m) << "\n";
}

inline int run_count(const CountOpts& o, std::ostream& out)
{
    if (o.lcm_max != 0) {
        const auto t = count_size_gcd_lcm(o.max_size, o.lcm_max);
        if (o.format == "json") {
            auto rows = nlohmann::json::array();
            for (std::size_t k = 1; k <= o.max_size; ++k)
                for (std::size_t m = 1; m <= k; ++m) {
                    for (const auto& [l, n] : t.row(k, m)) rows.push_back({{"k", k}, {"m", m}, {"l", l}, {"count", n.str()}});
                    if (t.overflow(k, m) != 0)
                        rows.push_back({{"k", k}, {"m", m}, {"l", ">" + std::to_string(o.lcm_max)},
                                        {"count", t.overflow(k, m).str()}});
                }
            out << rows.dump(1) << "\n";
            return ok;
        }
        out << "k,m,l,count\n";
        for (std::size_t k = 1; k <= o.max_size; ++k)
            for (std::size_t m = 1; m <= k; ++m) {
                for (const auto& [l, n] : t.row(k, m)) out << k << "," << m << "," << l << "," << n << "\n";
                if (t.overflow(k, m) != 0) out << k << "," << m << ",>" << o.lcm_max << "," << t.overflow(k, m) << "\n";
            }
        return ok;
    }
    const auto path = cache_path(o.cache);
    const CountTable t = path ? count_size_gcd_cached(o.max_size, *path) : count_size_gcd(o.max_size);
    if (o.format == "json") {
        auto rows = nlohmann::json::array();
        for (std::size_t k = 1; k <= t.max_size(); ++k)
            for (std::size_t m = 1; m <= k; ++m) rows.push_back({{"k", k}, {"m", m}, {"count", t.at(k, m).str()}});
        out << rows.dump(1) << "\n";
    } else {
        write_count_csv(t, out);
    }
    return ok;
}

inline void write_systems(const std::vector<CoveringSystem>& v, const std::string& format, std::ostream& out)
{
    if (format == "count-only") {
        out << v.size() << "\n";
    } else if (format == "json") {
        auto arr = nlohmann::json::array();
        for (const auto& c : v) arr.push_back(io::to_json(c));
        out << arr.dump() << "\n";
    } else {
        out << io::to_text(std::span<const CoveringSystem>(v));
    }
}

inline int run_enumerate(const EnumerateOpts& o, unsigned workers, std::ostream& out, std::ostream& err)
{
    if (o.ecs) {
        EcsSearchConfig cfg;
        cfg.max_modulus = o.max_modulus;
        cfg.budget_seconds = o.budget;
        cfg.gcd = o.gcd;
        auto res = enumerate_ecs(o.size, cfg);
        write_systems(res.systems, o.format, out);
        if (!res.complete) {
            err << "budget exhausted after " << res.nodes << " nodes; output is partial\n";
            return budget_exhausted;
        }
        return ok;
    }
    if (o.canonical == "shift") {
        if (o.gcd != 0) throw CLI::ValidationError("--canonical", "shift classes cover all gcds; drop --gcd");
        if (o.format == "count-only") {
            out << shift_class_count(o.size, workers) << "\n";
            return ok;
        }
        std::vector<CoveringSystem> reps;
        for (auto& [c, n] : shift_classes(o.size, workers)) reps.push_back(c);
        std::sort(reps.begin(), reps.end(), listing_less);
        write_systems(reps, o.format, out);
        return ok;
    }
    if (o.format == "count-only") {
        std::size_t n = 0;
        for_each_necs(o.size, o.gcd, [&](const CoveringSystem&) { ++n; });
        out << n << "\n";
        return ok;
    }
    std::vector<CoveringSystem> all;
    for (std::size_t k = o.cumulative ? 1 : o.size; k <= o.size; ++k)
        for (auto& c : enumerate_necs(k, o.gcd)) all.push_back(std::move(c));
    write_systems(all, o.format, out);
    return ok;
}

inline std::string describe(const CoveringSystem& c)
{
    std::ostringstream s;
    s << "size " << c.size() << ", gcd " << c.gcd() << ", lcm " << c.lcm();
    return s.str();
}

inline int run_recognize(const std::string& path, std::istream& in, std::ostream& out)
{
    const CoveringSystem c = io::parse_any(read_input(path, in));
    if (!is_exact(c)) {
        std::string cover = "unknown";
        try {
            cover = is_covering(c) ? "yes" : "no";
        } catch (const std::length_error&) {
        }
        out << "not exact (" << describe(c) << ", covering: " << cover << ")\n";
        return not_exact;
    }
    const auto w = naturality_witness(c);
    if (!w) {
        out << "exact, not natural (" << describe(c) << ")\n";
        return not_natural;
    }
    out << "natural (" << describe(c) << ")\n";
    out << "witness " << to_string(*w) << "\n";
    return ok;
}

inline int run_check(const std::string& path, std::istream& in, std::ostream& out)
{
    const CoveringSystem c = io::parse_any(read_input(path, in));
    BigRational density = 0;
    for (const auto& r : c) density += BigRational(1, r.modulus);
    out << describe(c) << ", density " << density << "\n";
    const bool exact = is_exact(c);
    out << "exact: " << (exact ? "yes" : "no") << "\n";
    if (exact) out << "natural: " << (is_natural(c) ? "yes" : "no") << "\n";
    return exact ? ok : not_exact;
}

inline nlohmann::json fixed_json(const FixedReal& v)
{
    return {{"mantissa", v.mantissa().str()}, {"scale", v.scale()}, {"error", v.error().str()}};
}

inline int run_asympt(const AsymptOpts& o, std::ostream& out)
{
    const auto k = constants(o.digits);
    const FixedReal alpha = find_alpha(o.digits);
    const FixedReal beta = find_beta(o.digits);
    const std::vector<std::pair<std::string, FixedReal>> named = {
        {"tau", k.tau}, {"rho", k.rho}, {"gamma", k.gamma}, {"M''(tau)", k.M2tau},
        {"d1", k.d1},   {"c", k.c},     {"alpha", alpha},   {"beta", beta},
    };
    std::vector<RatioRow> rows;
    if (o.ratios != 0) rows = ratio_check(count_size_gcd(o.ratios), k);
    std::vector<IdentityReport> ids;
    if (o.identities) ids = identity_checks(o.digits);

    if (o.format == "json") {
        nlohmann::json doc;
        doc["digits"] = o.digits;
        for (const auto& [name, v] : named) doc["constants"][name] = fixed_json(v);
        for (const auto& r : rows)
            doc["ratios"].push_back({{"k", r.k}, {"ratio", static_cast<double>(r.ratio)}, {"gap", static_cast<double>(r.gap)}});
        for (const auto& r : ids) {
            nlohmann::json e{{"point", r.point}, {"lambert", fixed_json(r.lambert)}, {"derivative", fixed_json(r.derivative)}};
            if (r.consistency) e["consistency"] = fixed_json(*r.consistency);
            doc["identities"].push_back(e);
        }
        out << doc.dump(1) << "\n";
        return ok;
    }
    for (const auto& [name, v] : named) {
        std::string label = name;
        label.resize(10, ' ');
        const std::string digits = v.to_string(o.digits);
        out << label << (digits[0] == '-' ? "" : " ") << digits << "  +/- " << v.error_string() << "\n";
    }
    if (!rows.empty()) {
        out << "\nk,ratio,relative_gap\n";
        out.precision(12);
        for (const auto& r : rows) out << r.k << "," << static_cast<double>(r.ratio) << "," << static_cast<double>(r.gap) << "\n";
    }
    if (!ids.empty()) {
        out << "\npoint,lambert_bound,derivative_bound,consistency_bound\n";
        for (const auto& r : ids) {
            auto bound = [](const FixedReal& v) {
                std::ostringstream b;
                b << std::scientific << std::setprecision(2) << v.abs_upper().convert_to<double>();
                return b.str();
            };
            out << r.point << "," << bound(r.lambert) << "," << bound(r.derivative) << ","
                << (r.consistency ? bound(*r.consistency) : std::string("-")) << "\n";
        }
    }
    return ok;
}

inline int run_poly(const PolyOpts& o, std::ostream& out)
{
    if (o.n == 0) throw CLI::ValidationError("--n", "must be at least 1");
    const BinomialBasisTable t(std::max(o.n, 2 * o.check_diffs + 1));
    out << "n,k,coefficient\n";
    for (std::size_t n = 1; n <= o.n; ++n)
        for (std::size_t k = 1; k <= n; ++k) out << n << "," << k << "," << t.at(n, k) << "\n";
    if (o.check_diffs == 0) return ok;
    const std::size_t mmax = std::max(o.n, o.check_diffs);
    const BinomialBasisTable d(mmax + o.check_diffs);
    out << "\nl,m,difference,expected\n";
    bool all = true;
    for (std::size_t l = 1; l <= o.check_diffs; ++l) {
        BigInt expect = 1;
        for (std::size_t i = 0; i < l; ++i) expect *= 3;
        for (std::size_t m = l; m <= mmax; ++m) {
            const BigInt v = backward_difference(d, l, m);
            all = all && v == expect;
            out << l << "," << m << "," << v << "," << expect << "\n";
        }
    }
    return all ? ok : failed;
}

inline int run_verify(const VerifyOpts& o, std::ostream& out)
{
    const std::size_t N = o.order;
    bool all = true;
    auto report = [&](const std::string& name, bool pass) {
        all = all && pass;
        out << (pass ? "PASS " : "FAIL ") << name << "\n";
    };
    const IntSeries M = mobius_series(N), A = A_series(N);
    report("compose(M, A) = x", compose(M, A, N) == IntSeries::x(N));
    report("compose(A, M) = x", compose(A, M, N) == IntSeries::x(N));
    bool powers = true;
    for (std::size_t n = 2; n <= std::min<std::size_t>(N, 6); ++n) {
        IntSeries sum(N);
        for (std::size_t d = 1; n * d <= N; ++d) sum = sum + Am_series(n * d, N);
        powers = powers && power(A, n, N) == sum;
    }
    report("A^n = sum_d A_{nd}", powers);
    const CountTable t = count_size_gcd(N);
    bool rows = true;
    for (std::size_t k = 1; k <= N; ++k) rows = rows && t.total(k) == A[k];
    report("size/gcd row sums = reversion coefficients", rows);
    bool cols = true;
    for (std::size_t m = 1; m <= std::min<std::size_t>(N, 4); ++m) {
        const IntSeries am = Am_series(m, N);
        for (std::size_t k = 1; k <= N; ++k) cols = cols && t.at(k, m) == am[k];
    }
    report("size/gcd columns = A_m coefficients", cols);
    if (!o.golden_dir.empty()) {
        const std::filesystem::path dir(o.golden_dir);
        std::ostringstream t2;
        write_count_csv(count_size_gcd(13), t2);
        std::ifstream g2(dir / "size_gcd.csv");
        const std::string want2{std::istreambuf_iterator<char>(g2), std::istreambuf_iterator<char>()};
        report("size_gcd.csv golden", want2 == t2.str());
        std::vector<CoveringSystem> small;
        for (std::size_t k = 1; k <= 4; ++k)
            for (auto& c : enumerate_necs(k)) small.push_back(std::move(c));
        std::ifstream g1(dir / "small_systems.txt");
        const std::string want1{std::istreambuf_iterator<char>(g1), std::istreambuf_iterator<char>()};
        report("small_systems.txt golden", want1 == io::to_text(std::span<const CoveringSystem>(small)));
    }
    return all ? ok : failed;
}

inline int run_trees(const TreesOpts& o, std::ostream& out)
{
    if (!o.chi.empty()) {
        out << io::to_text(chi(parse_tree(o.chi)));
        return ok;
    }
    if (o.leaves == 0) throw CLI::ValidationError("--leaves", "give --leaves K or --chi TREE");
    if (o.count_only) {
        std::size_t n = 0;
        for_each_tree(o.leaves, [&](const Tree&) { ++n; });
        out << n << "\n";
        return ok;
    }
    for_each_tree(o.leaves, [&](const Tree& t) { out << to_string(t) << "\n"; });
    return ok;
}

} // namespace detail

/// Runs the tool on `args` (without the program name) and returns the exit
/// code. Usage errors print a message to `err` and return 2.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Natural exact covering systems: counting, enumeration and asymptotics", "necs"};
    app.require_subcommand(1);
    unsigned workers = 1;
    app.add_option("--workers", workers, "Worker threads for sharded enumeration")->check(CLI::Range(1u, 256u));

    detail::SeriesOpts series;
    auto* s = app.add_subcommand("series", "Print coefficients of a generating function");
    s->add_option("--which", series.which, "M | A | Am:<m> | phi | schroeder")->capture_default_str();
    s->add_option("--terms", series.terms, "Number of coefficients")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--format", series.format)->check(CLI::IsMember({"lines", "csv"}))->capture_default_str();

    detail::CountOpts count;
    auto* c = app.add_subcommand("count", "Count natural systems by size and gcd (and lcm)");
    c->add_option("--max-size", count.max_size)->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--lcm-max", count.lcm_max, "Refine by lcm up to this cap")->check(CLI::PositiveNumber);
    c->add_option("--cache", count.cache, "Count-table cache file");
    c->add_option("--format", count.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    detail::EnumerateOpts en;
    auto* e = app.add_subcommand("enumerate", "List natural (or, with --ecs, all exact) covering systems");
    e->add_option("--size", en.size)->required()->check(CLI::PositiveNumber);
    e->add_option("--gcd", en.gcd, "Restrict to this gcd");
    e->add_option("--canonical", en.canonical, "Quotient by translation")->check(CLI::IsMember({"shift"}));
    e->add_option("--format", en.format)->check(CLI::IsMember({"lines", "json", "count-only"}))->capture_default_str();
    e->add_flag("--cumulative", en.cumulative, "Include every size from 1 up to --size");
    e->add_flag("--ecs", en.ecs, "Backtracking search over all exact covering systems");
    e->add_option("--budget", en.budget, "ECS search budget in seconds (0: none)")->check(CLI::NonNegativeNumber);
    e->add_option("--max-modulus", en.max_modulus, "ECS search modulus bound")->check(CLI::PositiveNumber)->capture_default_str();

    std::string rec_path;
    auto* r = app.add_subcommand("recognize", "Decide naturality of a system file ('-' for stdin)");
    r->add_option("file", rec_path)->required();

    std::string check_path;
    auto* ck = app.add_subcommand("check", "Report size, gcd, lcm, density and exactness of a system file");
    ck->add_option("file", check_path)->required();

    detail::AsymptOpts as;
    auto* a = app.add_subcommand("asympt", "Certified asymptotic constants");
    a->add_option("--digits", as.digits)->check(CLI::Range(std::size_t{1}, std::size_t{2000}))->capture_default_str();
    a->add_option("--ratios", as.ratios, "Print a_k k^{3/2} gamma^{-k} for k up to this size");
    a->add_flag("--identities", as.identities, "Lambert-series identity residuals");
    a->add_option("--format", as.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    detail::PolyOpts po;
    auto* p = app.add_subcommand("poly", "Binomial-basis coefficients of the diagonal polynomials");
    p->add_option("--n", po.n)->check(CLI::PositiveNumber)->capture_default_str();
    p->add_option("--check-diffs", po.check_diffs, "Check backward differences for l up to this");

    detail::VerifyOpts ve;
    auto* v = app.add_subcommand("verify", "Run the identity battery");
    v->add_option("--order", ve.order)->check(CLI::Range(std::size_t{2}, std::size_t{200}))->capture_default_str();
    v->add_option("--golden-dir", ve.golden_dir, "Directory holding small_systems.txt and size_gcd.csv");

    detail::TreesOpts tr;
    auto* t = app.add_subcommand("trees", "Enumerate trees by leaf count, or map one tree to its system");
    t->add_option("--leaves", tr.leaves);
    t->add_option("--chi", tr.chi, "Tree in parenthesized form");
    t->add_flag("--count-only", tr.count_only);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n" << "run with --help for usage\n";
        return usage;
    }

    try {
        if (*s) return detail::run_series(series, out);
        if (*c) return detail::run_count(count, out);
        if (*e) return detail::run_enumerate(en, workers, out, err);
        if (*r) return detail::run_recognize(rec_path, in, out);
        if (*ck) return detail::run_check(check_path, in, out);
        if (*a) return detail::run_asympt(as, out);
        if (*p) return detail::run_poly(po, out);
        if (*v) return detail::run_verify(ve, out);
        if (*t) return detail::run_trees(tr, out);
    } catch (const CLI::ValidationError& ex) {
        err << "error: " << ex.what() << "\n";
        return usage;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return usage;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return failed;
    }
    return usage;
}

} // namespace necs::cli
