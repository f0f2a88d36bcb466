// A short walk through the library: build a system by splitting, recognize
// it, count and enumerate small systems, and map a tree to its system.

#include <iostream>

#include <necs/necs.hpp>

int main()
{
    using namespace necs;

    // Split <0,1> into thirds, then split <1,3> in two.
    CoveringSystem c;
    c = r_split(c, ResidueClass{0, 1}, 3);
    c = r_split(c, ResidueClass{1, 3}, 2);
    std::cout << "system:\n" << io::to_text(c);
    std::cout << "exact " << is_exact(c) << ", natural " << is_natural(c) << ", gcd " << c.gcd() << ", lcm "
              << c.lcm() << "\n";
    if (auto w = naturality_witness(c)) std::cout << "witness tree " << to_string(*w) << "\n";

    // A system that covers but overlaps.
    const CoveringSystem erdos{{0, 2}, {0, 3}, {1, 4}, {3, 8}, {7, 12}, {23, 24}};
    std::cout << "\ncovering " << is_covering(erdos) << ", exact " << is_exact(erdos) << "\n";

    // Counts by size agree with the coefficients of the reversion of M.
    const auto table = count_size_gcd(10);
    const auto a = A_series(10);
    std::cout << "\nk  a_k  enumerated\n";
    for (std::size_t k = 1; k <= 8; ++k) {
        std::size_t n = 0;
        for_each_necs(k, 0, [&](const CoveringSystem&) { ++n; });
        std::cout << k << "  " << a[k] << "  " << n << "  (table " << table.total(k) << ")\n";
    }

    // The leaves of a tree, read left to right, form a natural system.
    const Tree t = parse_tree("(2 (3 () () ()) ())");
    std::cout << "\nchi" << to_string(t) << ":\n" << io::to_text(chi(t));

    std::cout << "\nshift classes of size 6: " << shift_class_count(6) << "\n";
}
