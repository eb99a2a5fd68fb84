// This file is part of cmlocus.
//
// Licensed under the Apache License, Version 2.0
// (see https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <cstdint>

#include "cmlocus/ttv.hpp"

namespace cmlocus {

/// Genus data for the level-p quotient of the (5, inf, inf) triangle group,
/// as a function of p alone (both prime ideals above a split p give the same
/// genus).
struct GenusRecord {
    u64 p;
    SplitClass split_class;
    /// Split decomposition p + 1 = 5n + m with m in {0, 2}, and k from
    /// p = 5k +- 1. All zero for inert p, where they do not apply.
    u64 n = 0, m = 0, k = 0;
    u64 genus = 0;
    int delta = 0; // -1 for p = 1 (mod 5), +1 for p = 4 (mod 5), 0 inert
};

/// Split p: genus = 2n - 1 from p + 1 = 5n + m. Inert p: the closed form
/// 2(p^2+1)/5 - p, which is a fit validated against thirteen reference
/// values (primes 7..103) in the test suite rather than a derived formula;
/// treat values beyond that range as extrapolation.
GenusRecord modular_curve_genus(u64 p);

/// -1 for p = 1 (mod 5), +1 for p = 4 (mod 5); split primes only.
int genus_delta(u64 p);

struct GenusRelationReport {
    u64 p;
    u64 genus;
    std::size_t deg_d;
    int delta;
    bool holds; // genus == deg d(t) + delta
};

/// Compare the genus formula against the independently computed degree of
/// d(t) = det N(t) for the minus family.
GenusRelationReport verify_genus_relation(u64 p);
GenusRelationReport verify_genus_relation(u64 p, std::size_t deg_d);

} // namespace cmlocus
