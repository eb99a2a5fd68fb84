// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#include "cmlocus/ttv.hpp"

namespace cmlocus {

std::string_view to_string(Family f) { return f == Family::Minus ? "minus" : "plus"; }

std::string_view to_string(SplitClass c) { return c == SplitClass::Split ? "split" : "inert"; }

SplitClass split_class(u64 p) {
    if (p <= 5)
        throw std::invalid_argument("split_class: requires a prime p > 5 (p = 5 ramifies)");
    const u64 r = p % 5;
    if (r == 1 || r == 4) return SplitClass::Split;
    return SplitClass::Inert; // r = 2 or 3; r = 0 impossible for prime p > 5
}

FamilySpec::FamilySpec(Family sign_, u64 p_) : sign(sign_), p(p_), split_class(cmlocus::split_class(p_)) {
    validate_modulus(p_);
}

BiPoly family_polynomial(Family family, u64 p) {
    if (p <= 5) throw std::invalid_argument("family_polynomial: requires p > 5");
    validate_modulus(p);
    const DensePoly const_term(p, {2, -4}); // 2 - 4t
    std::vector<DensePoly> xc;
    xc.emplace_back(const_term);
    xc.emplace_back(DensePoly(p, {5}));
    xc.emplace_back(DensePoly(p));
    xc.emplace_back(DensePoly(p, {-5}));
    xc.emplace_back(DensePoly(p));
    xc.emplace_back(DensePoly(p, {1}));
    BiPoly minus(p, std::move(xc));
    if (family == Family::Minus) return minus;

    std::vector<DensePoly> lin;
    lin.emplace_back(DensePoly(p, {2}));
    lin.emplace_back(DensePoly(p, {1}));
    return bipoly_mul_truncated(BiPoly(p, std::move(lin)), minus, 6);
}

std::optional<Fp> odd_model_root(Family family, u64 p) {
    if (family == Family::Plus) return Fp::from_signed(-2, p);
    return std::nullopt;
}

PolyMatrix parametric_coeff_matrix(Family family, u64 p) {
    BiPoly f = family_polynomial(family, p);
    if (auto root = odd_model_root(family, p)) f = bipoly_odd_degree_model(f, *root);
    return extract_coeff_entries(f, 2);
}

std::string_view to_string(MatrixShape s) {
    switch (s) {
        case MatrixShape::Diagonal: return "diagonal";
        case MatrixShape::Antidiagonal: return "antidiagonal";
        case MatrixShape::UpperWithTie: return "upper_with_tie";
        case MatrixShape::InertPlus: return "inert_plus";
    }
    return "?";
}

namespace {

/// First nonzero coefficient index of a polynomial that should be zero.
std::optional<std::size_t> first_nonzero(const DensePoly& f) {
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        if (!f.coeffs()[i].is_zero()) return i;
    return std::nullopt;
}

struct Relation {
    std::size_t row, col;
    DensePoly residual; // must vanish identically
};

ShapeReport check_relations(u64 p, Family family, MatrixShape shape,
                            const std::vector<Relation>& relations) {
    ShapeReport rep{p, family, shape, true, std::nullopt, std::nullopt};
    for (const Relation& rel : relations) {
        if (auto idx = first_nonzero(rel.residual)) {
            rep.holds_identically = false;
            rep.witness = ShapeWitness{rel.row, rel.col, *idx};
            break;
        }
    }
    return rep;
}

} // namespace

ShapeReport verify_shape(Family family, u64 p) {
    return verify_shape(family, p, parametric_coeff_matrix(family, p));
}

ShapeReport verify_shape(Family family, u64 p, const PolyMatrix& m) {
    const SplitClass cls = split_class(p);
    std::vector<Relation> relations;
    MatrixShape shape;
    if (family == Family::Minus) {
        if (cls == SplitClass::Split) {
            shape = MatrixShape::Diagonal;
            relations = {{0, 1, m.at(0, 1)}, {1, 0, m.at(1, 0)}};
        } else {
            shape = MatrixShape::Antidiagonal;
            relations = {{0, 0, m.at(0, 0)}, {1, 1, m.at(1, 1)}};
        }
    } else {
        if (cls == SplitClass::Split) {
            // [[a, b-a], [0, b]]: lower-left zero, upper-right ties the diagonal
            shape = MatrixShape::UpperWithTie;
            relations = {{1, 0, m.at(1, 0)}, {0, 1, m.at(0, 1) - (m.at(1, 1) - m.at(0, 0))}};
        } else {
            // [[a, b], [a, -a]]
            shape = MatrixShape::InertPlus;
            relations = {{1, 0, m.at(1, 0) - m.at(0, 0)}, {1, 1, m.at(1, 1) + m.at(0, 0)}};
        }
    }
    ShapeReport rep = check_relations(p, family, shape, relations);
    if (cls == SplitClass::Inert)
        rep.inert_corollary_holds = scan_family(family, p).all_ordinary_or_supersingular();
    return rep;
}

std::string_view to_string(VanishingPair v) {
    return v == VanishingPair::DiagonalEntries ? "c_{p-1} and c_{2p-2}" : "c_{p-2} and c_{2p-1}";
}

RemarkReport congruence_remark_check(u64 p) {
    return congruence_remark_check(p, parametric_coeff_matrix(Family::Minus, p));
}

RemarkReport congruence_remark_check(u64 p, const PolyMatrix& m) {
    const SplitClass cls = split_class(p);
    const bool diag_vanishes = m.at(0, 0).is_zero() && m.at(1, 1).is_zero();
    const bool offdiag_vanishes = m.at(0, 1).is_zero() && m.at(1, 0).is_zero();
    if (diag_vanishes == offdiag_vanishes)
        throw std::runtime_error("congruence_remark_check: expected exactly one vanishing pair");
    const VanishingPair observed =
        diag_vanishes ? VanishingPair::DiagonalEntries : VanishingPair::OffDiagonalEntries;
    const VanishingPair printed = (cls == SplitClass::Split) ? VanishingPair::DiagonalEntries
                                                             : VanishingPair::OffDiagonalEntries;
    return {p, cls, observed, observed == printed};
}

DdtReport ddt(u64 p) { return ddt(p, parametric_coeff_matrix(Family::Minus, p)); }

DdtReport ddt(u64 p, const PolyMatrix& m) {
    DensePoly d = m.det();
    if (d.is_zero()) throw std::runtime_error("ddt: determinant vanishes identically");
    DdtReport rep{p,
                  d,
                  static_cast<std::size_t>(d.degree()),
                  count_roots(d, RootCountMode::Closure),
                  count_roots(d, RootCountMode::Rational),
                  d.leading_coeff()};
    return rep;
}

DegreeLemmaReport degree_lemma_check(u64 p) {
    return degree_lemma_check(p, parametric_coeff_matrix(Family::Minus, p));
}

DegreeLemmaReport degree_lemma_check(u64 p, const PolyMatrix& m) {
    if (split_class(p) != SplitClass::Split)
        throw std::invalid_argument("degree_lemma_check: requires a split prime");
    DegreeLemmaReport rep{};
    rep.p = p;
    if (p % 5 == 1) {
        rep.k = (p - 1) / 5;
        rep.expected_deg_a = static_cast<int>(3 * rep.k / 2);
        rep.expected_deg_b = static_cast<int>(rep.k / 2);
    } else {
        rep.k = (p + 1) / 5;
        rep.expected_deg_a = static_cast<int>(3 * rep.k / 2) - 1;
        rep.expected_deg_b = static_cast<int>(rep.k / 2) - 1;
    }
    rep.deg_a = m.at(0, 0).degree();
    rep.deg_b = m.at(1, 1).degree();
    rep.holds = rep.deg_a == rep.expected_deg_a && rep.deg_b == rep.expected_deg_b;
    return rep;
}

std::size_t ScanReport::classified() const {
    return counts[0] + counts[1] + counts[2] + counts[3];
}

bool ScanReport::all_ordinary_or_supersingular() const {
    return count(JacobianType::NonOrdinaryOther) == 0;
}

ScanReport scan_family(Family family, u64 p) {
    const BiPoly f = family_polynomial(family, p);
    const std::optional<Fp> root = odd_model_root(family, p);
    ScanReport rep{};
    rep.p = p;
    rep.family = family;
    rep.fibers.reserve(p);
    for (u64 t0 = 0; t0 < p; ++t0) {
        const DensePoly fx = f.specialize(Fp(t0, p));
        if (!is_squarefree(fx)) {
            rep.fibers.push_back({t0, true, Classification{}});
            rep.exceptional_t0.push_back(t0);
            continue;
        }
        const CurveModel curve = root ? odd_degree_model(fx, *root) : CurveModel(fx);
        const Classification cls = classify(coeff_matrix(curve));
        rep.fibers.push_back({t0, false, cls});
        ++rep.counts[static_cast<std::size_t>(cls.type)];
    }
    return rep;
}

} // namespace cmlocus
