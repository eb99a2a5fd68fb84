// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "cmlocus/dense_poly.hpp"
#include "cmlocus/power_coeffs.hpp"

namespace cmlocus {

/// A hyperelliptic curve y^2 = f(x) over F_p with deg f = 2g+1 and f
/// squarefree. Even-degree models go through odd_degree_model first.
class CurveModel {
  public:
    explicit CurveModel(DensePoly f);

    const DensePoly& f() const noexcept { return f_; }
    std::size_t genus() const noexcept { return g_; }
    u64 modulus() const noexcept { return f_.modulus(); }

  private:
    DensePoly f_;
    std::size_t g_;
};

/// Move the rational root r of a squarefree degree-(2g+2) polynomial to
/// infinity: u |-> u^(2g+2) f(r + 1/u), giving a squarefree degree-(2g+1)
/// model of an isomorphic curve. Odd-degree inputs pass through unchanged
/// (r is ignored).
CurveModel odd_degree_model(const DensePoly& f, Fp r);

/// The g x g coefficient matrix N with entry (i, j) = c_{ip-j}, where
/// f^((p-1)/2) = sum c_r x^r. N is the entrywise p-th power of the
/// Cartier-Manin matrix of the curve.
class CoeffMatrix {
  public:
    CoeffMatrix(u64 modulus, std::size_t genus);
    CoeffMatrix(u64 modulus, std::size_t genus, std::vector<Fp> entries_row_major);

    u64 modulus() const noexcept { return p_; }
    std::size_t genus() const noexcept { return g_; }

    Fp at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, Fp v);

    bool is_zero() const noexcept;
    bool operator==(const CoeffMatrix& o) const noexcept { return p_ == o.p_ && e_ == o.e_; }
    bool operator!=(const CoeffMatrix& o) const noexcept { return !(*this == o); }

  private:
    u64 p_;
    std::size_t g_;
    std::vector<Fp> e_;
};

CoeffMatrix coeff_matrix(const CurveModel& curve);

/// Entrywise p-th power.
CoeffMatrix frobenius(const CoeffMatrix& m);
CoeffMatrix operator*(const CoeffMatrix& a, const CoeffMatrix& b);
Fp det(const CoeffMatrix& m);

/// Matrix rank over F_p by Gaussian elimination; an upper bound for the
/// p-rank of the Jacobian.
std::size_t p_rank_bound(const CoeffMatrix& m);

/// Evaluate a parametric matrix at t = t0.
CoeffMatrix evaluate(const PolyMatrix& m, Fp t0);

enum class JacobianType {
    Ordinary,                 // det N != 0
    Supersingular,            // g = 2 and N^(p) N = 0 (with N != 0)
    ProductOfSupersingularEC, // N = 0; implies supersingular when g <= 2
    NonOrdinaryOther,         // det N = 0 but none of the above certificates
};

std::string_view to_string(JacobianType t);

struct Classification {
    JacobianType type;
    std::size_t p_rank_upper_bound; // rank(N) = rank of the Cartier-Manin matrix
};

/// Supersingular in the isogeny sense (a product of supersingular elliptic
/// curves is supersingular).
bool is_supersingular(const Classification& c);

/// Decide the type of the Jacobian from N. For g > 2 the vanishing of
/// N^(p) N alone does not certify supersingularity, so only N = 0 is
/// reported as a product of supersingular elliptic curves there.
Classification classify(const CoeffMatrix& n);

} // namespace cmlocus
