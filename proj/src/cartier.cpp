// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#include "cmlocus/cartier.hpp"

#include <algorithm>

namespace cmlocus {

CurveModel::CurveModel(DensePoly f) : f_(std::move(f)), g_(0) {
    const int deg = f_.degree();
    if (deg < 3)
        throw std::invalid_argument("CurveModel: defining polynomial must have degree >= 3");
    if (deg % 2 == 0)
        throw std::invalid_argument(
            "CurveModel: defining polynomial has even degree; reduce with odd_degree_model");
    if (!is_squarefree(f_))
        throw std::invalid_argument("CurveModel: defining polynomial has a multiple root");
    g_ = static_cast<std::size_t>((deg - 1) / 2);
}

CurveModel odd_degree_model(const DensePoly& f, Fp r) {
    const u64 p = f.modulus();
    if (r.modulus() != p) throw std::invalid_argument("odd_degree_model: root from a different field");
    const int deg = f.degree();
    if (deg < 3) throw std::invalid_argument("odd_degree_model: degree must be >= 3");
    if (deg % 2 == 1) return CurveModel(f); // already odd degree; r is ignored

    if (!f.eval(r).is_zero())
        throw std::invalid_argument("odd_degree_model: r is not a root of f");

    // Taylor coefficients of f at r via repeated synthetic division, then
    // reverse: u^deg * f(r + 1/u) = sum_{i>=1} a_i u^(deg-i).
    std::vector<Fp> v = f.coeffs();
    std::vector<Fp> taylor;
    taylor.reserve(v.size());
    while (!v.empty()) {
        Fp carry(0, p);
        for (std::size_t k = v.size(); k-- > 0;) {
            carry = v[k] + carry * r;
            v[k] = carry;
        }
        taylor.push_back(v.front());
        v.erase(v.begin());
    }

    std::vector<Fp> out;
    out.reserve(static_cast<std::size_t>(deg));
    for (std::size_t k = 0; k < static_cast<std::size_t>(deg); ++k)
        out.push_back(taylor[static_cast<std::size_t>(deg) - k]);
    DensePoly g(p, std::move(out));

    if (g.degree() != deg - 1)
        throw std::domain_error("odd_degree_model: r is a multiple root of f");
    if (!is_squarefree(g))
        throw std::domain_error("odd_degree_model: transformed polynomial is not squarefree");
    return CurveModel(std::move(g));
}

CoeffMatrix::CoeffMatrix(u64 modulus, std::size_t genus)
    : p_(modulus), g_(genus), e_(genus * genus, Fp(0, modulus)) {
    if (genus == 0) throw std::invalid_argument("CoeffMatrix: genus must be positive");
}

CoeffMatrix::CoeffMatrix(u64 modulus, std::size_t genus, std::vector<Fp> entries_row_major)
    : p_(modulus), g_(genus), e_(std::move(entries_row_major)) {
    if (genus == 0) throw std::invalid_argument("CoeffMatrix: genus must be positive");
    if (e_.size() != genus * genus) throw std::invalid_argument("CoeffMatrix: wrong entry count");
    for (const Fp& x : e_) {
        if (x.modulus() != p_) throw std::invalid_argument("CoeffMatrix: entry from a different field");
    }
}

Fp CoeffMatrix::at(std::size_t row, std::size_t col) const {
    if (row >= g_ || col >= g_) throw std::out_of_range("CoeffMatrix::at");
    return e_[row * g_ + col];
}

void CoeffMatrix::set(std::size_t row, std::size_t col, Fp v) {
    if (row >= g_ || col >= g_) throw std::out_of_range("CoeffMatrix::set");
    if (v.modulus() != p_) throw std::invalid_argument("CoeffMatrix::set: modulus mismatch");
    e_[row * g_ + col] = v;
}

bool CoeffMatrix::is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](Fp x) { return x.is_zero(); });
}

CoeffMatrix coeff_matrix(const CurveModel& curve) {
    const u64 p = curve.modulus();
    const std::size_t g = curve.genus();
    const std::size_t cap = g * p - 1;
    const DensePoly h = pow_truncated(curve.f(), (p - 1) / 2, cap);
    CoeffMatrix n(p, g);
    for (std::size_t i = 1; i <= g; ++i)
        for (std::size_t j = 1; j <= g; ++j) n.set(i - 1, j - 1, h.coeff(i * p - j));
    return n;
}

CoeffMatrix frobenius(const CoeffMatrix& m) {
    const u64 p = m.modulus();
    CoeffMatrix r(p, m.genus());
    for (std::size_t i = 0; i < m.genus(); ++i)
        for (std::size_t j = 0; j < m.genus(); ++j) r.set(i, j, m.at(i, j).pow(p));
    return r;
}

CoeffMatrix operator*(const CoeffMatrix& a, const CoeffMatrix& b) {
    if (a.modulus() != b.modulus() || a.genus() != b.genus())
        throw std::invalid_argument("CoeffMatrix: incompatible product");
    const std::size_t g = a.genus();
    CoeffMatrix r(a.modulus(), g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            Fp acc(0, a.modulus());
            for (std::size_t k = 0; k < g; ++k) acc = acc + a.at(i, k) * b.at(k, j);
            r.set(i, j, acc);
        }
    return r;
}

namespace {

/// Row echelon form in place; returns (rank, det). Exact arithmetic, so no
/// pivoting subtleties arise.
std::pair<std::size_t, Fp> eliminate(std::vector<std::vector<Fp>> rows, u64 p) {
    const std::size_t g = rows.size();
    Fp d(1, p);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < g && rank < g; ++col) {
        std::size_t pivot = rank;
        while (pivot < g && rows[pivot][col].is_zero()) ++pivot;
        if (pivot == g) {
            d = Fp(0, p);
            continue;
        }
        if (pivot != rank) {
            std::swap(rows[pivot], rows[rank]);
            d = -d;
        }
        d = d * rows[rank][col];
        const Fp inv = rows[rank][col].inv();
        for (std::size_t r = rank + 1; r < g; ++r) {
            if (rows[r][col].is_zero()) continue;
            const Fp factor = rows[r][col] * inv;
            for (std::size_t c = col; c < g; ++c)
                rows[r][c] = rows[r][c] - factor * rows[rank][c];
        }
        ++rank;
    }
    if (rank < g) d = Fp(0, p);
    return {rank, d};
}

std::vector<std::vector<Fp>> to_rows(const CoeffMatrix& m) {
    std::vector<std::vector<Fp>> rows(m.genus(), std::vector<Fp>(m.genus(), Fp(0, m.modulus())));
    for (std::size_t i = 0; i < m.genus(); ++i)
        for (std::size_t j = 0; j < m.genus(); ++j) rows[i][j] = m.at(i, j);
    return rows;
}

} // namespace

Fp det(const CoeffMatrix& m) { return eliminate(to_rows(m), m.modulus()).second; }

std::size_t p_rank_bound(const CoeffMatrix& m) { return eliminate(to_rows(m), m.modulus()).first; }

CoeffMatrix evaluate(const PolyMatrix& m, Fp t0) {
    if (t0.modulus() != m.modulus()) throw std::invalid_argument("evaluate: modulus mismatch");
    CoeffMatrix r(m.modulus(), m.genus());
    for (std::size_t i = 0; i < m.genus(); ++i)
        for (std::size_t j = 0; j < m.genus(); ++j) r.set(i, j, m.at(i, j).eval(t0));
    return r;
}

std::string_view to_string(JacobianType t) {
    switch (t) {
        case JacobianType::Ordinary: return "Ordinary";
        case JacobianType::Supersingular: return "Supersingular";
        case JacobianType::ProductOfSupersingularEC: return "ProductOfSupersingularEC";
        case JacobianType::NonOrdinaryOther: return "NonOrdinaryOther";
    }
    return "?";
}

bool is_supersingular(const Classification& c) {
    return c.type == JacobianType::Supersingular ||
           c.type == JacobianType::ProductOfSupersingularEC;
}

Classification classify(const CoeffMatrix& n) {
    const std::size_t rank = p_rank_bound(n);
    if (!det(n).is_zero()) return {JacobianType::Ordinary, rank};
    if (n.is_zero()) return {JacobianType::ProductOfSupersingularEC, rank};
    if (n.genus() == 2 && (frobenius(n) * n).is_zero())
        return {JacobianType::Supersingular, rank};
    return {JacobianType::NonOrdinaryOther, rank};
}

} // namespace cmlocus
