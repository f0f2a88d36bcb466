#pragma once

// Diagonals of the size/gcd table as polynomials in the binomial basis.
//
// With F(x) = A(x)/x, the number of natural systems of size g+n and gcd g
// is f_n(g) = [x^n] F(x)^g whenever g > n, and expanding F^g = (1 + (F-1))^g
// gives f_n(g) = sum_k c_{n,k} C(g,k) with c_{n,k} = [x^n] (F-1)^k.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "arith.hpp"
#include "series.hpp"

namespace necs {

/// f_n(x) = sum_{k=1..n} c_{n,k} C(x,k).
struct BinomialPolynomial {
    std::size_t n = 0;
    std::vector<BigInt> coeffs; // coeffs[k-1] = c_{n,k}

    BigInt coeff(std::size_t k) const { return k >= 1 && k <= n ? coeffs[k - 1] : BigInt(0); }

    BigInt operator()(std::size_t g) const
    {
        BigInt v = 0;
        for (std::size_t k = 1; k <= n; ++k) v += coeffs[k - 1] * detail::binomial(static_cast<i64>(g), static_cast<i64>(k));
        return v;
    }
};

/// c_{m,k} for 0 <= k, m <= max_n, by repeated multiplication by F - 1.
class BinomialBasisTable {
public:
    explicit BinomialBasisTable(std::size_t max_n) : max_n_(max_n), c_(max_n + 1, std::vector<BigInt>(max_n + 1))
    {
        // F - 1 = A(x)/x - 1 through x^max_n needs A through x^(max_n+1).
        const IntSeries a = A_series(max_n + 1);
        IntSeries f1(max_n);
        for (std::size_t i = 1; i <= max_n; ++i) f1[i] = a[i + 1];
        IntSeries pw(max_n);
        pw[0] = 1;
        for (std::size_t k = 0; k <= max_n; ++k) {
            for (std::size_t m = 0; m <= max_n; ++m) c_[m][k] = pw[m];
            pw = mul(pw, f1, max_n);
        }
    }

    std::size_t max_n() const { return max_n_; }

    /// [x^m] (F-1)^k; zero for k > m, and c_{0,0} = 1.
    const BigInt& at(std::size_t m, std::size_t k) const { return c_.at(m).at(k); }

    BinomialPolynomial poly(std::size_t n) const
    {
        if (n == 0 || n > max_n_) throw std::out_of_range("necs: polynomial index outside the table");
        BinomialPolynomial p;
        p.n = n;
        for (std::size_t k = 1; k <= n; ++k) p.coeffs.push_back(c_[n][k]);
        return p;
    }

private:
    std::size_t max_n_;
    std::vector<std::vector<BigInt>> c_;
};

inline BinomialPolynomial binomial_coeffs(std::size_t n)
{
    if (n == 0) throw std::invalid_argument("necs: binomial_coeffs needs n >= 1");
    return BinomialBasisTable(n).poly(n);
}

struct DiagonalValue {
    BigInt value;
    /// g > n: only there does f_n(g) count systems of size g+n and gcd g.
    bool counts_systems = false;
};

inline DiagonalValue evaluate_f(std::size_t n, std::size_t g)
{
    return {binomial_coeffs(n)(g), g > n};
}

/// sum_{j=0..l} C(l,j) (-1)^j c_{m+l-j, m-j}; equals 3^l for m >= l >= 1.
inline BigInt backward_difference(const BinomialBasisTable& t, std::size_t l, std::size_t m)
{
    if (m < l) throw std::invalid_argument("necs: backward difference needs m >= l");
    BigInt sum = 0;
    for (std::size_t j = 0; j <= l; ++j) {
        const BigInt term = detail::binomial(static_cast<i64>(l), static_cast<i64>(j)) * t.at(m + l - j, m - j);
        sum += (j % 2 == 0) ? term : BigInt(-term);
    }
    return sum;
}

inline BigInt backward_difference_check(std::size_t l, std::size_t m)
{
    return backward_difference(BinomialBasisTable(m + l), l, m);
}

/// B(x) with A(x)/x = 1 + x + x B(x); its leading coefficient is
/// [x^2] A(x)/x = 3.
inline IntSeries remainder_series(std::size_t order)
{
    const IntSeries a = A_series(order + 3);
    IntSeries b(order);
    // A/x = sum a_{i+1} x^i, so B = sum_{i>=2} a_{i+1} x^(i-1).
    for (std::size_t i = 1; i <= order; ++i) b[i] = a[i + 2];
    return b;
}

} // namespace necs
