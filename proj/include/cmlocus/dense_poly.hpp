// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "cmlocus/fp.hpp"

namespace cmlocus {

/// Dense univariate polynomial over F_p, coefficients stored lowest degree
/// first. The zero polynomial has an empty coefficient list; otherwise the
/// leading coefficient is nonzero. All coefficients share the modulus.
class DensePoly {
  public:
    /// The zero polynomial over F_p.
    explicit DensePoly(u64 modulus);

    /// From signed integer coefficients, lowest degree first.
    DensePoly(u64 modulus, std::initializer_list<std::int64_t> coeffs);
    DensePoly(u64 modulus, const std::vector<std::int64_t>& coeffs);

    /// From field elements; all must share `modulus`.
    DensePoly(u64 modulus, std::vector<Fp> coeffs);

    static DensePoly constant(Fp c);
    static DensePoly one(u64 modulus) { return DensePoly(modulus, {1}); }

    u64 modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return c_.empty(); }

    /// Degree, with deg 0 = -1 by convention.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    /// Coefficient of t^i; zero beyond the degree.
    Fp coeff(std::size_t i) const;
    Fp leading_coeff() const; // zero element for the zero polynomial
    const std::vector<Fp>& coeffs() const noexcept { return c_; }

    bool is_monic() const;
    Fp eval(Fp x) const;

    DensePoly operator+(const DensePoly& o) const;
    DensePoly operator-(const DensePoly& o) const;
    DensePoly operator-() const;
    DensePoly operator*(const DensePoly& o) const;
    DensePoly operator*(Fp s) const;
    bool operator==(const DensePoly& o) const noexcept;
    bool operator!=(const DensePoly& o) const noexcept { return !(*this == o); }

    /// Human-readable form, e.g. "3*t^2 + 4*t + 1".
    std::string to_string(const char* var = "t") const;

  private:
    void normalize();
    static DensePoly from_reduced(u64 p, std::vector<u64> values);

    u64 p_;
    std::vector<Fp> c_;

    friend DensePoly poly_mul(const DensePoly&, const DensePoly&, std::optional<std::size_t>);
    friend DensePoly derivative(const DensePoly&);
    friend DensePoly truncated(const DensePoly&, std::size_t);
};

/// Product, truncated to degree <= degree_cap when a cap is given. Every
/// retained coefficient equals the corresponding coefficient of the full
/// product.
DensePoly poly_mul(const DensePoly& a, const DensePoly& b,
                   std::optional<std::size_t> degree_cap = std::nullopt);

struct DivRem {
    DensePoly quot;
    DensePoly rem;
};

/// Euclidean division by a nonzero divisor.
DivRem poly_divrem(const DensePoly& a, const DensePoly& b);

/// Monic gcd via the Euclidean algorithm. Errors when both inputs are zero.
DensePoly poly_gcd(const DensePoly& a, const DensePoly& b);

DensePoly monic(const DensePoly& f);
DensePoly derivative(const DensePoly& f);
DensePoly truncated(const DensePoly& f, std::size_t degree_cap);

/// f^e keeping only coefficients of degree <= degree_cap, by binary
/// exponentiation with truncation after every multiplication.
DensePoly pow_truncated(const DensePoly& f, u64 e, std::size_t degree_cap);

bool is_squarefree(const DensePoly& f);

/// Product of the distinct irreducible factors of d, made monic. Its degree
/// is the number of distinct roots of d in an algebraic closure; p-th power
/// factors are extracted repeatedly so this holds unconditionally.
DensePoly squarefree_part(const DensePoly& d);

enum class RootCountMode {
    Rational, // roots in F_p: deg gcd(d, t^p - t)
    Closure,  // distinct roots in the algebraic closure: deg squarefree_part(d)
};

std::size_t count_roots(const DensePoly& d, RootCountMode mode);

} // namespace cmlocus
