// Prints the certified growth constants and compares a_k k^{3/2} gamma^{-k}
// with its limit c.

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <necs/necs.hpp>

int main(int argc, char** argv)
{
    using namespace necs;
    const std::size_t digits = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 40;
    const auto k = constants(digits);
    std::cout << "tau   " << k.tau.to_string(digits) << "\n";
    std::cout << "rho   " << k.rho.to_string(digits) << "\n";
    std::cout << "gamma " << k.gamma.to_string(digits) << "\n";
    std::cout << "c     " << k.c.to_string(digits) << "\n\n";

    std::cout << std::setprecision(10);
    for (const auto& r : ratio_check(count_size_gcd(30), k))
        if (r.k % 5 == 0) std::cout << "k=" << r.k << "  ratio " << static_cast<double>(r.ratio) << "\n";
}
