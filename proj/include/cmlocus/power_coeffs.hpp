// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <cstdint>
#include <vector>

#include "cmlocus/dense_poly.hpp"

namespace cmlocus {

/// Polynomial in x whose coefficients are polynomials in t over F_p. This is
/// where f(x)^((p-1)/2) lives. Entry i of the coefficient list is the
/// t-polynomial multiplying x^i; the highest entry is nonzero (or the list is
/// empty for the zero polynomial).
class BiPoly {
  public:
    explicit BiPoly(u64 modulus);
    BiPoly(u64 modulus, std::vector<DensePoly> x_coeffs);

    static BiPoly one(u64 modulus);

    u64 modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return xc_.empty(); }
    int x_degree() const noexcept { return static_cast<int>(xc_.size()) - 1; }

    /// t-polynomial multiplying x^i; the zero polynomial beyond the degree.
    const DensePoly& x_coeff(std::size_t i) const;
    const std::vector<DensePoly>& x_coeffs() const noexcept { return xc_; }

    /// Largest t-degree over all x-coefficients (-1 for the zero polynomial).
    int max_t_degree() const noexcept;

    /// Evaluate t := t0, yielding a univariate polynomial in x.
    DensePoly specialize(Fp t0) const;

    bool operator==(const BiPoly& o) const noexcept;
    bool operator!=(const BiPoly& o) const noexcept { return !(*this == o); }

  private:
    void normalize();

    u64 p_;
    std::vector<DensePoly> xc_;
    DensePoly zero_; // returned by x_coeff out of range
};

/// Product truncated to x-degree <= x_cap. Retained x-coefficients equal
/// those of the full product: a product coefficient at x-degree k depends
/// only on factor coefficients at x-degrees <= k.
BiPoly bipoly_mul_truncated(const BiPoly& a, const BiPoly& b, std::size_t x_cap);

/// f^e by square-and-multiply, truncating x-degrees above x_cap after every
/// multiplication.
BiPoly bipoly_pow_truncated(const BiPoly& f, u64 e, std::size_t x_cap);

/// For f of even x-degree with f(r, t) identically zero, the substitution
/// x = r + 1/u followed by clearing denominators: u^(deg f) * f(r + 1/u, t).
/// Drops the root r to produce an x-degree one lower. Polynomials of odd
/// x-degree pass through unchanged.
BiPoly bipoly_odd_degree_model(const BiPoly& f, Fp root);

/// g x g matrix of t-polynomials, entry (i, j) = c_{ip-j}(t) with 1-based
/// i, j. Entries are elements of F_p[t]; specialized curves give constants.
class PolyMatrix {
  public:
    PolyMatrix(u64 modulus, std::size_t genus);

    u64 modulus() const noexcept { return p_; }
    std::size_t genus() const noexcept { return g_; }

    /// Zero-based row/column access; at(i, j) holds c_{(i+1)p - (j+1)}.
    const DensePoly& at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, DensePoly v);

    DensePoly det() const;

  private:
    u64 p_;
    std::size_t g_;
    std::vector<DensePoly> e_;
};

/// The coefficient matrix N = (c_{ip-j}) of f(x)^((p-1)/2), read from the
/// truncated power with x-cap gp-1. Requires deg_x f = 2g+1 (even degrees
/// must go through an odd-degree model first) and f squarefree over the
/// rational function field in t, certified by specializing t until the
/// discriminant is nonzero.
PolyMatrix extract_coeff_entries(const BiPoly& f, std::size_t genus);

/// One term of the multinomial expansion of (x^5 - 5x^3 + 5x + (2-4t))^e:
/// indices a+b+c+d = e contributing to x-degree 5a+3b+c, with the multinomial
/// value e!/(a! b! c! d!) mod p.
struct MultinomialTerm {
    u64 a, b, c, d;
    Fp coefficient;
};

/// All terms of the expansion above with e = (p-1)/2 and 5a+3b+c = r.
std::vector<MultinomialTerm> multinomial_terms(u64 p, u64 r);

/// The coefficient of x^r in (x^5 - 5x^3 + 5x + (2-4t))^((p-1)/2) as a
/// polynomial in t, summed directly from the multinomial expansion:
/// sum over 5a+3b+c = r of (a,b,c,d)! (-1)^b 5^(b+c) (2-4t)^d. Factorials
/// stay below p, so every multinomial reduces exactly. An out-of-range r
/// yields the zero polynomial. Independent of the binary-exponentiation
/// route; the two are cross-checked in the tests.
DensePoly multinomial_coeff_oracle(u64 p, u64 r);

} // namespace cmlocus
