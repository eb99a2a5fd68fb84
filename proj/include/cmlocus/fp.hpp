// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cmlocus {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

#if !defined(__SIZEOF_INT128__)
#error "cmlocus requires compiler support for unsigned __int128 (GCC/Clang)."
#endif

/// Deterministic Miller-Rabin for n < 2^62.
bool is_prime(u64 n) noexcept;

/// Throws std::invalid_argument unless p is an odd prime with 2 < p < 2^62.
/// Results are memoized per thread, so repeated construction of elements
/// over the same modulus costs a couple of comparisons.
void validate_modulus(u64 p);

inline u64 mulmod(u64 a, u64 b, u64 p) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % p);
}

u64 powmod(u64 base, u64 exp, u64 p) noexcept;

/// An element of the prime field F_p. Stores its modulus and refuses to
/// combine with elements of a different field; scans over many primes keep
/// values from different fields side by side, and a silent mix-up would
/// corrupt every table built downstream.
class Fp {
  public:
    Fp() = default; // invalid element; any arithmetic on it throws

    Fp(u64 value, u64 modulus) : p_(modulus) {
        validate_modulus(modulus);
        v_ = value < modulus ? value : value % modulus;
    }

    static Fp from_signed(std::int64_t value, u64 modulus) {
        validate_modulus(modulus);
        std::int64_t r = value % static_cast<std::int64_t>(modulus);
        if (r < 0) r += static_cast<std::int64_t>(modulus);
        return Fp(static_cast<u64>(r), modulus);
    }

    u64 value() const noexcept { return v_; }
    u64 modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }

    Fp operator+(Fp o) const {
        check(o);
        u64 s = v_ + o.v_; // p < 2^62, no overflow
        if (s >= p_) s -= p_;
        return unchecked(s, p_);
    }

    Fp operator-(Fp o) const {
        check(o);
        return unchecked(v_ >= o.v_ ? v_ - o.v_ : v_ + (p_ - o.v_), p_);
    }

    Fp operator-() const {
        require_valid();
        return unchecked(v_ == 0 ? 0 : p_ - v_, p_);
    }

    Fp operator*(Fp o) const {
        check(o);
        return unchecked(mulmod(v_, o.v_, p_), p_);
    }

    Fp pow(u64 e) const {
        require_valid();
        return unchecked(powmod(v_, e, p_), p_);
    }

    /// Multiplicative inverse via Fermat's little theorem.
    Fp inv() const {
        require_valid();
        if (v_ == 0) throw std::domain_error("Fp::inv: inverse of zero");
        return pow(p_ - 2);
    }

    bool operator==(Fp o) const noexcept { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(Fp o) const noexcept { return !(*this == o); }

  private:
    static Fp unchecked(u64 v, u64 p) noexcept {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }

    void require_valid() const {
        if (p_ == 0) throw std::invalid_argument("Fp: uninitialized element");
    }

    void check(Fp o) const {
        if (p_ != o.p_ || p_ == 0)
            throw std::invalid_argument("Fp: modulus mismatch (" + std::to_string(p_) + " vs " +
                                        std::to_string(o.p_) + ")");
    }

    u64 v_ = 0;
    u64 p_ = 0;
};

} // namespace cmlocus
