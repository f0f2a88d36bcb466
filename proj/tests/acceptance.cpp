// One PASS/FAIL line per acceptance criterion; nonzero exit on any failure.
// --slow adds the long-running extensions.

#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cli.hpp"

using namespace necs;

namespace {

// Empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    Check check;
};

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

template <class T>
std::string mismatch(const std::string& what, const T& got, const T& want)
{
    std::ostringstream s;
    s << what << ": got " << got << ", expected " << want;
    return s.str();
}

// Every printed digit is reproduced: the enclosure is below half a unit in
// the last printed place and the value rounds or truncates to the text.
std::string reproduces(const std::string& name, const FixedReal& x, const std::string& text)
{
    const std::size_t places = text.size() - text.find('.') - 1;
    if (!x.error_below_digits(places + 1)) return name + ": enclosure too wide for " + std::to_string(places) + " digits";
    const std::string rounded = x.to_string(places);
    const BigInt f = detail::pow10(x.scale() - places);
    const BigInt t = (x.mantissa() < 0 ? BigInt(-(detail::abs_big(x.mantissa()) / f)) : BigInt(x.mantissa() / f));
    const std::string truncated = FixedReal(t, places).to_string(places);
    if (rounded == text || truncated == text) return "";
    return name + ": computed " + rounded + ", printed " + text;
}

const char* const tau_text = "0.32299391330283353998122564696308569320205174841752276244233373344634953499";
const char* const beta_text = "-0.562976540744649358189645954216416402249939799218087618317349878994076506622";
const char* const alpha_text = "0.580294623807326723064776237226780436649";
const char* const rho_text = "0.18223393401633630828235226904174072905168066104";
const char* const m2_text = "-4.426886252469575251674551833111186610459374194161738";
const char* const gamma_text = "5.48745218829746214756744529323030925532004291024";
const char* const c_text = "0.08094229418609730035861577123355531751035381267";

std::vector<Criterion> criteria(bool slow)
{
    std::vector<Criterion> v;

    v.push_back({1, "reversion of the Moebius series", 1, [] {
                     const IntSeries r = revert(mobius_series(8), 8);
                     const std::vector<int> want{1, 1, 3, 10, 39, 160, 691, 3081};
                     for (std::size_t k = 1; k <= 8; ++k)
                         if (r[k] != want[k - 1]) return mismatch("coefficient " + std::to_string(k), r[k], BigInt(want[k - 1]));
                     return std::string();
                 }});

    v.push_back({2, "compose(M, A) = x through order 64", 30, [] {
                     const IntSeries c = compose(mobius_series(64), A_series(64), 64);
                     for (std::size_t k = 0; k <= 64; ++k)
                         if (c[k] != (k == 1 ? 1 : 0)) return mismatch("coefficient " + std::to_string(k), c[k], BigInt(k == 1));
                     return std::string();
                 }});

    v.push_back({3, slow ? "size/gcd table for k <= 13, row sums for k <= 22" : "size/gcd table for k <= 13", slow ? 1800.0 : 60.0,
                 [slow] {
                     const CountTable t = count_size_gcd(13);
                     std::istringstream golden(read_file(std::string(NECS_TEST_DATA) + "/size_gcd.csv"));
                     std::string line;
                     std::getline(golden, line);
                     std::size_t rows = 0;
                     while (std::getline(golden, line)) {
                         std::size_t k = 0, m = 0;
                         std::string count;
                         char c1 = 0, c2 = 0;
                         std::istringstream ls(line);
                         ls >> k >> c1 >> m >> c2 >> count;
                         if (t.at(k, m) != BigInt(count)) return mismatch("a(" + line + ")", t.at(k, m), BigInt(count));
                         ++rows;
                     }
                     if (rows != 91) return mismatch("table rows", rows, std::size_t{91});
                     if (slow) {
                         const CountTable big = count_size_gcd(22);
                         const IntSeries a = revert(mobius_series(22), 22);
                         for (std::size_t k = 1; k <= 22; ++k)
                             if (big.total(k) != a[k]) return mismatch("row sum " + std::to_string(k), big.total(k), a[k]);
                     }
                     return std::string();
                 }});

    v.push_back({4, "A^n = sum_d A_{nd} through order 24, n = 2..6", 60, [] {
                     const IntSeries a = A_series(24);
                     for (std::size_t n = 2; n <= 6; ++n) {
                         IntSeries s(24);
                         for (std::size_t d = 1; n * d <= 24; ++d) s = s + Am_series(n * d, 24);
                         const IntSeries p = power(a, n, 24);
                         for (std::size_t k = 0; k <= 24; ++k)
                             if (p[k] != s[k]) return mismatch("n=" + std::to_string(n) + " coefficient " + std::to_string(k), p[k], s[k]);
                     }
                     return std::string();
                 }});

    v.push_back({5, "natural systems enumerated for k <= 10; k <= 4 listing", 300, [] {
                     const IntSeries a = A_series(10);
                     for (std::size_t k = 1; k <= 10; ++k) {
                         std::set<CoveringSystem> seen;
                         std::size_t n = 0;
                         bool dup = false;
                         for_each_necs(k, 0, [&](const CoveringSystem& c) {
                             ++n;
                             dup = !seen.insert(c).second || dup;
                         });
                         if (dup) return "duplicate system at k = " + std::to_string(k);
                         if (BigInt(n) != a[k]) return mismatch("count at k = " + std::to_string(k), BigInt(n), a[k]);
                     }
                     std::istringstream in;
                     std::ostringstream out, err;
                     cli::run({"enumerate", "--size", "4", "--cumulative"}, in, out, err);
                     if (out.str() != read_file(std::string(NECS_TEST_DATA) + "/small_systems.txt")) return std::string("k <= 4 listing differs");
                     return std::string();
                 }});

    v.push_back({6, "tree images and tree counts for k <= 9", 300, [] {
                     const IntSeries a = A_series(9), s = schroeder_series(9);
                     for (std::size_t k = 1; k <= 9; ++k) {
                         std::set<CoveringSystem> image;
                         std::size_t trees = 0;
                         for_each_tree(k, [&](const Tree& t) {
                             ++trees;
                             image.insert(chi(t));
                         });
                         if (BigInt(image.size()) != a[k]) return mismatch("image size at k = " + std::to_string(k), BigInt(image.size()), a[k]);
                         if (BigInt(trees) != s[k]) return mismatch("tree count at k = " + std::to_string(k), BigInt(trees), s[k]);
                     }
                     return std::string();
                 }});

    v.push_back({7, slow ? "shift classes s(k) for k <= 12" : "shift classes s(k) for k <= 10", 600, [slow] {
                     const std::vector<std::size_t> want{1, 1, 2, 4, 10, 26, 75, 226, 718, 2368, 8083, 28367};
                     const std::size_t kmax = slow ? 12 : 10;
                     for (std::size_t k = 1; k <= kmax; ++k) {
                         const std::size_t s = shift_class_count(k);
                         if (s != want[k - 1]) return mismatch("s(" + std::to_string(k) + ")", s, want[k - 1]);
                     }
                     return std::string();
                 }});

    v.push_back({8, "distinct lcm values t(k) for k <= 12", 60, [] {
                     const std::vector<std::size_t> want{1, 1, 2, 3, 6, 8, 15, 18, 31, 35, 56, 62};
                     for (std::size_t k = 1; k <= 12; ++k)
                         if (lcm_value_count(k) != want[k - 1]) return mismatch("t(" + std::to_string(k) + ")", lcm_value_count(k), want[k - 1]);
                     return std::string();
                 }});

    v.push_back({9, slow ? "asymptotic constants (tau to 74 digits)" : "asymptotic constants (tau to 50 digits)", slow ? 1800.0 : 60.0,
                 [slow] {
                     const std::string tau_all = tau_text;
                     const auto k = constants(slow ? 80 : 53);
                     std::string r = reproduces("tau", k.tau, slow ? tau_all : tau_all.substr(0, 52));
                     if (r.empty()) r = reproduces("rho", k.rho, rho_text);
                     if (r.empty()) r = reproduces("gamma", k.gamma, gamma_text);
                     if (r.empty()) r = reproduces("c", k.c, c_text);
                     if (r.empty()) r = reproduces("M''(tau)", k.M2tau, m2_text);
                     if (!r.empty()) return r;
                     const FixedReal alpha = find_alpha(40);
                     if (r = reproduces("alpha", alpha, alpha_text); !r.empty()) return r;
                     if (r = reproduces("beta", find_beta(77), beta_text); !r.empty()) return r;
                     if (r = reproduces("M'(alpha)", eval_Mprime(alpha), "-1.5863869"); !r.empty()) return r;
                     const FixedReal m07 = eval_M("0.7", 12);
                     return reproduces("|M(0.7)|", m07.certified_sign() < 0 ? -m07 : m07, "0.2582108");
                 }});

    v.push_back({10, "phi coefficients and positivity to 200", 10, [] {
                     const IntSeries p = phi_series(200);
                     const std::vector<int> want{1, 1, 2, 3, 6, 9, 17, 28, 50, 83};
                     for (std::size_t n = 0; n < want.size(); ++n)
                         if (p[n] != want[n]) return mismatch("phi_" + std::to_string(n), p[n], BigInt(want[n]));
                     for (std::size_t n = 0; n <= 200; ++n)
                         if (p[n] < 0) return "phi_" + std::to_string(n) + " is negative";
                     return std::string();
                 }});

    v.push_back({11, "identity residuals at tau below 1e-30", 10, [] {
                     const FixedReal tau = find_tau(34);
                     const IdentityReport r = identity_residuals(tau, true);
                     if (!r.within(30)) return "lambert " + r.lambert.error_string() + ", derivative " + r.derivative.error_string();
                     return std::string();
                 }});

    v.push_back({12, "diagonal polynomials in the binomial basis", 60, [] {
                     const std::vector<std::vector<long long>> want{
                         {1}, {3, 1}, {10, 6, 1}, {39, 29, 9, 1}, {160, 138, 57, 12, 1}, {691, 654, 324, 94, 15, 1}};
                     const CountTable t = count_size_gcd(22);
                     for (std::size_t n = 1; n <= 6; ++n) {
                         const BinomialPolynomial p = binomial_coeffs(n);
                         for (std::size_t k = 1; k <= n; ++k)
                             if (p.coeff(k) != want[n - 1][k - 1])
                                 return mismatch("c(" + std::to_string(n) + "," + std::to_string(k) + ")", p.coeff(k), BigInt(want[n - 1][k - 1]));
                         for (std::size_t g = n + 1; g <= 16; ++g)
                             if (p(g) != t.at(g + n, g)) return mismatch("f_" + std::to_string(n) + "(" + std::to_string(g) + ")", p(g), t.at(g + n, g));
                     }
                     const BinomialBasisTable bt(21);
                     for (std::size_t l = 1; l <= 5; ++l) {
                         BigInt p = 1;
                         for (std::size_t i = 0; i < l; ++i) p *= 3;
                         for (std::size_t m = l; m <= 16; ++m)
                             if (backward_difference(bt, l, m) != p)
                                 return mismatch("difference l=" + std::to_string(l) + " m=" + std::to_string(m), backward_difference(bt, l, m), p);
                     }
                     return std::string();
                 }});

    v.push_back({13, "ratios approach the asymptotic constants", 60, [] {
                     const auto k = constants(30);
                     const CountTable t = count_size_gcd(22);
                     auto trend = [](const std::vector<RatioRow>& rows, const std::string& what) -> std::string {
                         for (const auto& r : rows)
                             if (r.k > 15 && !r.improved) return what + ": gap grew at k = " + std::to_string(r.k);
                         return "";
                     };
                     const auto rows = ratio_check(t, k);
                     if (rows.back().gap >= 0.10L) return "gap at k = 22 is " + std::to_string(static_cast<double>(rows.back().gap));
                     if (auto r = trend(rows, "a_k"); !r.empty()) return r;
                     for (std::size_t m : {2, 3})
                         if (auto r = trend(gcd_ratio_check(t, m, k), "gcd " + std::to_string(m)); !r.empty()) return r;
                     return std::string();
                 }});

    v.push_back({14, "exact covering system search", slow ? 3600.0 : 600.0, [slow] {
                     for (std::size_t k = 1; k <= 6; ++k) {
                         EcsSearchConfig cfg;
                         cfg.max_modulus = u64{1} << (k - 1);
                         const auto r = enumerate_ecs(k, cfg);
                         if (!r.complete || r.systems != enumerate_necs(k)) return "search differs at k = " + std::to_string(k);
                     }
                     EcsSearchConfig cfg;
                     cfg.max_modulus = 30;
                     cfg.gcd = 1;
                     const auto r = enumerate_ecs(13, cfg);
                     if (!r.complete) return std::string("gcd-1 search at k = 13 did not complete");
                     if (r.systems.size() != 30) return mismatch("gcd-1 systems at k = 13", r.systems.size(), std::size_t{30});
                     for (const auto& c : r.systems)
                         if (is_natural(c) || !is_exact(c)) return "unexpected system " + io::to_text(c);
                     if (slow) {
                         EcsSearchConfig all;
                         all.max_modulus = 64;
                         all.budget_seconds = 1200;
                         const auto full = enumerate_ecs(13, all);
                         if (full.complete && full.systems.size() != 7267009)
                             return mismatch("all systems at k = 13", full.systems.size(), std::size_t{7267009});
                         std::cout << "  total count at k = 13: "
                                   << (full.complete ? std::to_string(full.systems.size()) : "budget exhausted, gcd-1 result stands")
                                   << "\n";
                     }
                     return std::string();
                 }});

    return v;
}

} // namespace

int main(int argc, char** argv)
{
    bool slow = false;
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--slow") == 0)
            slow = true;
        else
            only.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (const auto& c : criteria(slow)) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::string why;
        try {
            why = c.check();
        } catch (const std::exception& ex) {
            why = std::string("exception: ") + ex.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (why.empty() && secs > c.limit_seconds) why = "took longer than " + std::to_string(c.limit_seconds) + " s";
        std::printf("%s %2d %s (%.2f s)%s%s\n", why.empty() ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    why.empty() ? "" : ": ", why.c_str());
        std::fflush(stdout);
        failures += !why.empty();
    }
    return failures == 0 ? 0 : 1;
}
