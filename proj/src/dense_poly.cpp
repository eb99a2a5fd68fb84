// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#include "cmlocus/dense_poly.hpp"

#include <algorithm>
#include <limits>

namespace cmlocus {

namespace {

void require_same_modulus(const DensePoly& a, const DensePoly& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("DensePoly: modulus mismatch (" + std::to_string(a.modulus()) +
                                    " vs " + std::to_string(b.modulus()) + ")");
}

} // namespace

DensePoly::DensePoly(u64 modulus) : p_(modulus) { validate_modulus(modulus); }

DensePoly::DensePoly(u64 modulus, std::initializer_list<std::int64_t> coeffs) : p_(modulus) {
    validate_modulus(modulus);
    c_.reserve(coeffs.size());
    for (std::int64_t v : coeffs) c_.push_back(Fp::from_signed(v, modulus));
    normalize();
}

DensePoly::DensePoly(u64 modulus, const std::vector<std::int64_t>& coeffs) : p_(modulus) {
    validate_modulus(modulus);
    c_.reserve(coeffs.size());
    for (std::int64_t v : coeffs) c_.push_back(Fp::from_signed(v, modulus));
    normalize();
}

DensePoly::DensePoly(u64 modulus, std::vector<Fp> coeffs) : p_(modulus), c_(std::move(coeffs)) {
    validate_modulus(modulus);
    for (const Fp& c : c_) {
        if (c.modulus() != p_)
            throw std::invalid_argument("DensePoly: coefficient from a different field");
    }
    normalize();
}

DensePoly DensePoly::constant(Fp c) {
    DensePoly r(c.modulus());
    if (!c.is_zero()) r.c_.push_back(c);
    return r;
}

void DensePoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DensePoly DensePoly::from_reduced(u64 p, std::vector<u64> values) {
    DensePoly r(p);
    r.c_.reserve(values.size());
    for (u64 v : values) r.c_.push_back(Fp(v, p));
    r.normalize();
    return r;
}

Fp DensePoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fp(0, p_); }

Fp DensePoly::leading_coeff() const { return c_.empty() ? Fp(0, p_) : c_.back(); }

bool DensePoly::is_monic() const { return !c_.empty() && c_.back().value() == 1; }

Fp DensePoly::eval(Fp x) const {
    if (x.modulus() != p_) throw std::invalid_argument("DensePoly::eval: modulus mismatch");
    Fp acc(0, p_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

DensePoly DensePoly::operator+(const DensePoly& o) const {
    require_same_modulus(*this, o);
    DensePoly r(p_);
    const std::size_t n = std::max(c_.size(), o.c_.size());
    r.c_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) + o.coeff(i));
    r.normalize();
    return r;
}

DensePoly DensePoly::operator-(const DensePoly& o) const {
    require_same_modulus(*this, o);
    DensePoly r(p_);
    const std::size_t n = std::max(c_.size(), o.c_.size());
    r.c_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) - o.coeff(i));
    r.normalize();
    return r;
}

DensePoly DensePoly::operator-() const {
    DensePoly r(p_);
    r.c_.reserve(c_.size());
    for (const Fp& c : c_) r.c_.push_back(-c);
    return r;
}

DensePoly DensePoly::operator*(const DensePoly& o) const { return poly_mul(*this, o); }

DensePoly DensePoly::operator*(Fp s) const {
    if (s.modulus() != p_) throw std::invalid_argument("DensePoly: scalar from a different field");
    if (s.is_zero()) return DensePoly(p_);
    DensePoly r(p_);
    r.c_.reserve(c_.size());
    for (const Fp& c : c_) r.c_.push_back(c * s);
    r.normalize();
    return r;
}

bool DensePoly::operator==(const DensePoly& o) const noexcept {
    return p_ == o.p_ && c_ == o.c_;
}

std::string DensePoly::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += std::to_string(c_[i].value());
        } else {
            if (c_[i].value() != 1) s += std::to_string(c_[i].value()) + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

DensePoly poly_mul(const DensePoly& a, const DensePoly& b, std::optional<std::size_t> degree_cap) {
    require_same_modulus(a, b);
    const u64 p = a.modulus();
    if (a.is_zero() || b.is_zero()) return DensePoly(p);

    const std::size_t da = static_cast<std::size_t>(a.degree());
    const std::size_t db = static_cast<std::size_t>(b.degree());
    const std::size_t dmax = degree_cap ? std::min(da + db, *degree_cap) : da + db;
    const std::size_t n = dmax + 1;

    std::vector<u64> va(da + 1), vb(db + 1);
    for (std::size_t i = 0; i <= da; ++i) va[i] = a.c_[i].value();
    for (std::size_t i = 0; i <= db; ++i) vb[i] = b.c_[i].value();

    std::vector<u64> out(n);
    const u128 term = static_cast<u128>(p - 1) * (p - 1);
    const u128 terms = std::min(da, db) + 1;

    if (term <= std::numeric_limits<u64>::max() / terms) {
        // Accumulate raw 64-bit products, reduce once per coefficient.
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t lo = k > db ? k - db : 0;
            const std::size_t hi = std::min(da, k);
            u64 acc = 0;
            for (std::size_t i = lo; i <= hi; ++i) acc += va[i] * vb[k - i];
            out[k] = acc % p;
        }
    } else if (p < (u64{1} << 32)) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t lo = k > db ? k - db : 0;
            const std::size_t hi = std::min(da, k);
            u128 acc = 0;
            for (std::size_t i = lo; i <= hi; ++i) acc += va[i] * vb[k - i];
            out[k] = static_cast<u64>(acc % p);
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t lo = k > db ? k - db : 0;
            const std::size_t hi = std::min(da, k);
            u64 acc = 0;
            for (std::size_t i = lo; i <= hi; ++i) {
                acc += mulmod(va[i], vb[k - i], p);
                if (acc >= p) acc -= p;
            }
            out[k] = acc;
        }
    }
    return DensePoly::from_reduced(p, std::move(out));
}

DivRem poly_divrem(const DensePoly& a, const DensePoly& b) {
    require_same_modulus(a, b);
    const u64 p = a.modulus();
    if (b.is_zero()) throw std::invalid_argument("poly_divrem: division by zero polynomial");
    if (a.degree() < b.degree()) return {DensePoly(p), a};

    const Fp inv_lead = b.leading_coeff().inv();
    std::vector<Fp> r = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Fp> q(r.size() - db, Fp(0, p));
    for (std::size_t k = r.size() - 1; k >= db; --k) {
        if (!r[k].is_zero()) {
            const std::size_t shift = k - db;
            const Fp c = r[k] * inv_lead;
            q[shift] = c;
            for (std::size_t i = 0; i <= db; ++i) r[shift + i] = r[shift + i] - c * b.coeffs()[i];
        }
        if (k == db) break;
    }
    r.resize(db);
    return {DensePoly(p, std::move(q)), DensePoly(p, std::move(r))};
}

DensePoly poly_gcd(const DensePoly& a, const DensePoly& b) {
    require_same_modulus(a, b);
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_gcd: gcd(0, 0) is undefined");
    DensePoly x = a, y = b;
    while (!y.is_zero()) {
        DensePoly r = poly_divrem(x, y).rem;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

DensePoly monic(const DensePoly& f) {
    if (f.is_zero() || f.is_monic()) return f;
    return f * f.leading_coeff().inv();
}

DensePoly derivative(const DensePoly& f) {
    const u64 p = f.modulus();
    DensePoly r(p);
    if (f.degree() < 1) return r;
    r.c_.reserve(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i)
        r.c_.push_back(f.coeffs()[i] * Fp(i % p, p));
    r.normalize();
    return r;
}

DensePoly truncated(const DensePoly& f, std::size_t degree_cap) {
    if (static_cast<std::size_t>(std::max(f.degree(), 0)) <= degree_cap) return f;
    DensePoly r = f;
    r.c_.resize(degree_cap + 1);
    r.normalize();
    return r;
}

DensePoly pow_truncated(const DensePoly& f, u64 e, std::size_t degree_cap) {
    const u64 p = f.modulus();
    if (e == 0) return DensePoly::one(p);
    int bit = 63;
    while (((e >> bit) & 1) == 0) --bit;
    DensePoly r = truncated(f, degree_cap);
    for (--bit; bit >= 0; --bit) {
        r = poly_mul(r, r, degree_cap);
        if ((e >> bit) & 1) r = poly_mul(r, f, degree_cap);
    }
    return r;
}

bool is_squarefree(const DensePoly& f) {
    if (f.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
    if (f.degree() <= 0) return true;
    return poly_gcd(f, derivative(f)).degree() == 0;
}

namespace {

/// Inverse of the Frobenius on F_p[t^p]: caller guarantees f lies in F_p[t^p].
DensePoly pth_root(const DensePoly& f) {
    const u64 p = f.modulus();
    std::vector<Fp> out;
    out.reserve(f.coeffs().size() / p + 1);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i % p == 0) {
            out.push_back(f.coeffs()[i]); // a^p = a in F_p
        } else if (!f.coeffs()[i].is_zero()) {
            throw std::logic_error("pth_root: polynomial is not a p-th power");
        }
    }
    return DensePoly(p, std::move(out));
}

} // namespace

DensePoly squarefree_part(const DensePoly& d) {
    if (d.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    const u64 p = d.modulus();
    DensePoly result = DensePoly::one(p);
    DensePoly cur = monic(d);
    while (cur.degree() > 0) {
        DensePoly der = derivative(cur);
        if (der.is_zero()) {
            // every exponent divisible by p; peel one Frobenius layer
            cur = pth_root(cur);
            continue;
        }
        DensePoly g = poly_gcd(cur, der);
        if (g.degree() == 0) {
            result = result * cur;
            break;
        }
        // factors whose multiplicity is not divisible by p, each once
        DensePoly w = poly_divrem(cur, g).quot;
        result = result * w;
        // strip those factors entirely; what is left is a p-th power
        DensePoly r = cur;
        for (;;) {
            DensePoly h = poly_gcd(r, w);
            if (h.degree() == 0) break;
            r = poly_divrem(r, h).quot;
        }
        if (r.degree() == 0) break;
        cur = pth_root(r);
    }
    return monic(result);
}

std::size_t count_roots(const DensePoly& d, RootCountMode mode) {
    if (d.is_zero()) throw std::invalid_argument("count_roots: zero polynomial");
    if (mode == RootCountMode::Closure)
        return static_cast<std::size_t>(squarefree_part(d).degree());

    if (d.degree() == 0) return 0;
    const u64 p = d.modulus();
    // t^p mod d by square-and-multiply in F_p[t]/(d)
    const DensePoly t(p, {0, 1});
    DensePoly base = poly_divrem(t, d).rem;
    DensePoly acc = DensePoly::one(p);
    u64 e = p;
    while (e) {
        if (e & 1) acc = poly_divrem(acc * base, d).rem;
        e >>= 1;
        if (e) base = poly_divrem(base * base, d).rem;
    }
    const DensePoly diff = acc - poly_divrem(t, d).rem; // t^p - t mod d
    if (diff.is_zero()) return static_cast<std::size_t>(d.degree());
    return static_cast<std::size_t>(poly_gcd(d, diff).degree());
}

} // namespace cmlocus
