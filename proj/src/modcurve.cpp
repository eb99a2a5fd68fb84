// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#include "cmlocus/modcurve.hpp"

#include <stdexcept>

namespace cmlocus {

GenusRecord modular_curve_genus(u64 p) {
    GenusRecord rec{};
    rec.p = p;
    rec.split_class = split_class(p); // rejects p <= 5
    if (rec.split_class == SplitClass::Split) {
        rec.m = (p % 5 == 1) ? 2 : 0;
        rec.n = (p + 1 - rec.m) / 5;
        rec.k = (p % 5 == 1) ? (p - 1) / 5 : (p + 1) / 5;
        rec.genus = 2 * rec.n - 1;
        rec.delta = (p % 5 == 1) ? -1 : 1;
    } else {
        // p^2 stays below 2^124; the quotient is exact since p^2 + 1 is
        // divisible by 5 for p = 2, 3 (mod 5).
        const u128 num = 2 * (static_cast<u128>(p) * p + 1) / 5;
        const u128 g = num - p;
        if (g > static_cast<u128>(~u64{0}))
            throw std::overflow_error("modular_curve_genus: genus exceeds 64 bits");
        rec.genus = static_cast<u64>(g);
    }
    return rec;
}

int genus_delta(u64 p) {
    if (split_class(p) != SplitClass::Split)
        throw std::invalid_argument("genus_delta: requires a split prime");
    return (p % 5 == 1) ? -1 : 1;
}

GenusRelationReport verify_genus_relation(u64 p) { return verify_genus_relation(p, ddt(p).degree); }

GenusRelationReport verify_genus_relation(u64 p, std::size_t deg_d) {
    const GenusRecord rec = modular_curve_genus(p);
    if (rec.split_class != SplitClass::Split)
        throw std::invalid_argument("verify_genus_relation: requires a split prime");
    const std::int64_t rhs = static_cast<std::int64_t>(deg_d) + rec.delta;
    return {p, rec.genus, deg_d, rec.delta, static_cast<std::int64_t>(rec.genus) == rhs};
}

} // namespace cmlocus
