// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#include "cmlocus/power_coeffs.hpp"

#include <algorithm>
#include <limits>

namespace cmlocus {

BiPoly::BiPoly(u64 modulus) : p_(modulus), zero_(modulus) { validate_modulus(modulus); }

BiPoly::BiPoly(u64 modulus, std::vector<DensePoly> x_coeffs)
    : p_(modulus), xc_(std::move(x_coeffs)), zero_(modulus) {
    validate_modulus(modulus);
    for (const DensePoly& c : xc_) {
        if (c.modulus() != p_) throw std::invalid_argument("BiPoly: coefficient from a different field");
    }
    normalize();
}

BiPoly BiPoly::one(u64 modulus) {
    BiPoly r(modulus);
    r.xc_.push_back(DensePoly::one(modulus));
    return r;
}

void BiPoly::normalize() {
    while (!xc_.empty() && xc_.back().is_zero()) xc_.pop_back();
}

const DensePoly& BiPoly::x_coeff(std::size_t i) const { return i < xc_.size() ? xc_[i] : zero_; }

int BiPoly::max_t_degree() const noexcept {
    int d = -1;
    for (const DensePoly& c : xc_) d = std::max(d, c.degree());
    return d;
}

DensePoly BiPoly::specialize(Fp t0) const {
    if (t0.modulus() != p_) throw std::invalid_argument("BiPoly::specialize: modulus mismatch");
    std::vector<Fp> out;
    out.reserve(xc_.size());
    for (const DensePoly& c : xc_) out.push_back(c.eval(t0));
    return DensePoly(p_, std::move(out));
}

bool BiPoly::operator==(const BiPoly& o) const noexcept { return p_ == o.p_ && xc_ == o.xc_; }

namespace {

struct Flattened {
    std::vector<u64> values;        // concatenated t-coefficients
    std::vector<std::size_t> off;   // offset per x-slot
    std::vector<std::size_t> len;   // t-length per x-slot (0 for zero slot)
};

Flattened flatten(const BiPoly& f) {
    Flattened r;
    const auto& xc = f.x_coeffs();
    r.off.resize(xc.size());
    r.len.resize(xc.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < xc.size(); ++i) total += xc[i].coeffs().size();
    r.values.reserve(total);
    for (std::size_t i = 0; i < xc.size(); ++i) {
        r.off[i] = r.values.size();
        r.len[i] = xc[i].coeffs().size();
        for (const Fp& c : xc[i].coeffs()) r.values.push_back(c.value());
    }
    return r;
}

template <typename Acc>
BiPoly accumulate_product(const BiPoly& a, const BiPoly& b, std::size_t x_cap, u64 p) {
    const Flattened fa = flatten(a);
    const Flattened fb = flatten(b);
    const std::size_t da = fa.len.size() - 1;
    const std::size_t db = fb.len.size() - 1;
    const std::size_t dmax = std::min(da + db, x_cap);
    const std::size_t stride =
        static_cast<std::size_t>(a.max_t_degree() + b.max_t_degree() + 1);

    std::vector<Acc> acc((dmax + 1) * stride, Acc{0});
    for (std::size_t i = 0; i <= da && i <= dmax; ++i) {
        const std::size_t na = fa.len[i];
        if (na == 0) continue;
        const u64* va = fa.values.data() + fa.off[i];
        const std::size_t jmax = std::min(db, dmax - i);
        for (std::size_t j = 0; j <= jmax; ++j) {
            const std::size_t nb = fb.len[j];
            if (nb == 0) continue;
            const u64* vb = fb.values.data() + fb.off[j];
            Acc* dst = acc.data() + (i + j) * stride;
            for (std::size_t k1 = 0; k1 < na; ++k1) {
                const u64 av = va[k1];
                Acc* row = dst + k1;
                // products fit in u64 on both accumulate paths (p < 2^32)
                for (std::size_t k2 = 0; k2 < nb; ++k2) row[k2] += av * vb[k2];
            }
        }
    }

    std::vector<DensePoly> out;
    out.reserve(dmax + 1);
    std::vector<Fp> tmp;
    for (std::size_t d = 0; d <= dmax; ++d) {
        tmp.clear();
        tmp.reserve(stride);
        const Acc* row = acc.data() + d * stride;
        for (std::size_t k = 0; k < stride; ++k) tmp.push_back(Fp(static_cast<u64>(row[k] % p), p));
        out.emplace_back(p, std::move(tmp));
    }
    return BiPoly(p, std::move(out));
}

BiPoly slow_product(const BiPoly& a, const BiPoly& b, std::size_t x_cap, u64 p) {
    const std::size_t da = static_cast<std::size_t>(a.x_degree());
    const std::size_t db = static_cast<std::size_t>(b.x_degree());
    const std::size_t dmax = std::min(da + db, x_cap);
    std::vector<DensePoly> out(dmax + 1, DensePoly(p));
    for (std::size_t i = 0; i <= da && i <= dmax; ++i) {
        const DensePoly& ai = a.x_coeff(i);
        if (ai.is_zero()) continue;
        const std::size_t jmax = std::min(db, dmax - i);
        for (std::size_t j = 0; j <= jmax; ++j) {
            if (b.x_coeff(j).is_zero()) continue;
            out[i + j] = out[i + j] + ai * b.x_coeff(j);
        }
    }
    return BiPoly(p, std::move(out));
}

} // namespace

BiPoly bipoly_mul_truncated(const BiPoly& a, const BiPoly& b, std::size_t x_cap) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("bipoly_mul_truncated: modulus mismatch");
    const u64 p = a.modulus();
    if (a.is_zero() || b.is_zero()) return BiPoly(p);

    const u128 term = static_cast<u128>(p - 1) * (p - 1);
    const u128 pairs = std::min(a.x_degree(), b.x_degree()) + 1;
    const u128 tlen = std::min(a.max_t_degree(), b.max_t_degree()) + 1;
    const u128 bound = pairs * tlen;

    if (term <= std::numeric_limits<u64>::max() / bound)
        return accumulate_product<u64>(a, b, x_cap, p);
    if (p < (u64{1} << 32)) return accumulate_product<u128>(a, b, x_cap, p);
    return slow_product(a, b, x_cap, p);
}

BiPoly bipoly_pow_truncated(const BiPoly& f, u64 e, std::size_t x_cap) {
    const u64 p = f.modulus();
    if (e == 0) return BiPoly::one(p);
    int bit = 63;
    while (((e >> bit) & 1) == 0) --bit;
    BiPoly r = bipoly_mul_truncated(f, BiPoly::one(p), x_cap); // truncate f itself
    for (--bit; bit >= 0; --bit) {
        r = bipoly_mul_truncated(r, r, x_cap);
        if ((e >> bit) & 1) r = bipoly_mul_truncated(r, f, x_cap);
    }
    return r;
}

BiPoly bipoly_odd_degree_model(const BiPoly& f, Fp root) {
    const u64 p = f.modulus();
    if (root.modulus() != p) throw std::invalid_argument("bipoly_odd_degree_model: root from a different field");
    const int deg = f.x_degree();
    if (deg < 0) throw std::invalid_argument("bipoly_odd_degree_model: zero polynomial");
    if (deg % 2 == 1) return f;

    // Taylor coefficients of f at x = root by repeated synthetic division.
    std::vector<DensePoly> v = f.x_coeffs();
    std::vector<DensePoly> taylor;
    taylor.reserve(v.size());
    while (!v.empty()) {
        // divide by (x - root): quotient in place, remainder comes out front
        DensePoly carry(p);
        for (std::size_t k = v.size(); k-- > 0;) {
            DensePoly next = v[k] + carry * root;
            carry = next;
            v[k] = std::move(next);
        }
        taylor.push_back(v.front());
        v.erase(v.begin());
    }
    if (!taylor[0].is_zero())
        throw std::invalid_argument("bipoly_odd_degree_model: f does not vanish at the given root");

    // u^deg * f(root + 1/u) = sum_{i>=1} a_i u^(deg - i)
    std::vector<DensePoly> out;
    out.reserve(deg);
    for (std::size_t k = 0; k < static_cast<std::size_t>(deg); ++k)
        out.push_back(taylor[static_cast<std::size_t>(deg) - k]);
    return BiPoly(p, std::move(out));
}

PolyMatrix::PolyMatrix(u64 modulus, std::size_t genus)
    : p_(modulus), g_(genus), e_(genus * genus, DensePoly(modulus)) {
    if (genus == 0) throw std::invalid_argument("PolyMatrix: genus must be positive");
}

const DensePoly& PolyMatrix::at(std::size_t row, std::size_t col) const {
    if (row >= g_ || col >= g_) throw std::out_of_range("PolyMatrix::at");
    return e_[row * g_ + col];
}

void PolyMatrix::set(std::size_t row, std::size_t col, DensePoly v) {
    if (row >= g_ || col >= g_) throw std::out_of_range("PolyMatrix::set");
    if (v.modulus() != p_) throw std::invalid_argument("PolyMatrix::set: modulus mismatch");
    e_[row * g_ + col] = std::move(v);
}

DensePoly PolyMatrix::det() const {
    if (g_ == 1) return at(0, 0);
    if (g_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    throw std::invalid_argument("PolyMatrix::det: only genus 1 and 2 supported");
}

PolyMatrix extract_coeff_entries(const BiPoly& f, std::size_t genus) {
    const u64 p = f.modulus();
    const int deg = f.x_degree();
    if (deg >= 0 && deg % 2 == 0)
        throw std::invalid_argument(
            "extract_coeff_entries: f has even x-degree; reduce with an odd-degree model first");
    if (deg != static_cast<int>(2 * genus + 1))
        throw std::invalid_argument("extract_coeff_entries: x-degree does not match 2g+1");

    // Certify f squarefree over F_p(t): find one specialization with full
    // degree and nonzero discriminant. The discriminant locus has bounded
    // degree in t, so a bounded sweep suffices whenever p is large enough.
    const std::size_t tmax = static_cast<std::size_t>(std::max(f.max_t_degree(), 0));
    const u64 candidates = std::min<u64>(p, static_cast<u64>((2 * deg - 1) * tmax + tmax + 2));
    bool certified = false;
    for (u64 t0 = 0; t0 < candidates; ++t0) {
        DensePoly fiber = f.specialize(Fp(t0, p));
        if (fiber.degree() != deg) continue; // leading coefficient vanished here
        if (is_squarefree(fiber)) {
            certified = true;
            break;
        }
    }
    if (!certified)
        throw std::domain_error("extract_coeff_entries: could not certify f squarefree over F_p(t)");

    const std::size_t x_cap = genus * p - 1;
    const BiPoly h = bipoly_pow_truncated(f, (p - 1) / 2, x_cap);
    PolyMatrix n(p, genus);
    for (std::size_t i = 1; i <= genus; ++i)
        for (std::size_t j = 1; j <= genus; ++j) n.set(i - 1, j - 1, h.x_coeff(i * p - j));
    return n;
}

std::vector<MultinomialTerm> multinomial_terms(u64 p, u64 r) {
    if (p <= 5) throw std::invalid_argument("multinomial_terms: requires p > 5");
    const u64 e = (p - 1) / 2;
    std::vector<MultinomialTerm> terms;
    if (r > 5 * e) return terms;

    // factorial tables; all arguments are <= e < p, so everything is a unit
    std::vector<u64> fact(e + 1), inv_fact(e + 1);
    fact[0] = 1;
    for (u64 i = 1; i <= e; ++i) fact[i] = mulmod(fact[i - 1], i % p, p);
    inv_fact[e] = powmod(fact[e], p - 2, p);
    for (u64 i = e; i > 0; --i) inv_fact[i - 1] = mulmod(inv_fact[i], i % p, p);

    for (u64 a = 0; a <= e && 5 * a <= r; ++a) {
        const u64 rem = r - 5 * a;
        for (u64 b = 0; a + b <= e && 3 * b <= rem; ++b) {
            const u64 c = rem - 3 * b;
            if (a + b + c > e) continue;
            const u64 d = e - a - b - c;
            u64 m = mulmod(fact[e], mulmod(inv_fact[a], inv_fact[b], p), p);
            m = mulmod(m, mulmod(inv_fact[c], inv_fact[d], p), p);
            terms.push_back({a, b, c, d, Fp(m, p)});
        }
    }
    return terms;
}

DensePoly multinomial_coeff_oracle(u64 p, u64 r) {
    const u64 e = (p - 1) / 2;
    const std::vector<MultinomialTerm> terms = multinomial_terms(p, r);

    // collect scalar weights by the exponent d of (2 - 4t)
    std::vector<Fp> by_d(e + 1, Fp(0, p));
    const Fp five(5, p);
    for (const MultinomialTerm& t : terms) {
        Fp w = t.coefficient * five.pow(t.b + t.c);
        if (t.b % 2 == 1) w = -w;
        by_d[t.d] = by_d[t.d] + w;
    }

    // Horner in (2 - 4t)
    const DensePoly base(p, {2, -4});
    DensePoly acc(p);
    for (std::size_t d = e + 1; d-- > 0;) acc = acc * base + DensePoly::constant(by_d[d]);
    return acc;
}

} // namespace cmlocus
