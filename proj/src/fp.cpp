// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#include "cmlocus/fp.hpp"

#include <array>

namespace cmlocus {

u64 powmod(u64 base, u64 exp, u64 p) noexcept {
    u64 r = 1 % p;
    u64 b = base % p;
    while (exp) {
        if (exp & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
        exp >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin(u64 n, u64 a) noexcept {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    // Deterministic for n < 3.3 * 10^24, far beyond the 2^62 bound used here.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

void validate_modulus(u64 p) {
    if (p <= 2 || p >= (u64{1} << 62))
        throw std::invalid_argument("modulus must be an odd prime below 2^62, got " + std::to_string(p));
    static thread_local std::array<u64, 8> seen{};
    static thread_local unsigned next = 0;
    for (u64 s : seen) {
        if (s == p) return;
    }
    if (!is_prime(p))
        throw std::invalid_argument("modulus must be an odd prime below 2^62, got " + std::to_string(p));
    seen[next] = p;
    next = (next + 1) % seen.size();
}

} // namespace cmlocus
