#pragma once

#include <cstdint>
#include <cstdlib>

#include "isowitt/numeric.hpp"

namespace isowitt {

// Caps for the exhaustive searches.  A search that hits a cap throws
// budget_exceeded; it never degrades to a guess.
struct Budget {
    // Max number of candidate vectors examined by the stable-lagrangian search.
    std::uint64_t enum_cap = 10'000'000;
    // Max size of an enumerated discriminant p-group, as exponent: p^torsion_exp.
    unsigned torsion_exp = 12;
    // Unit search box in realize::construct: coefficient height and max candidates.
    long unit_height = 6;
    std::uint64_t unit_cap = 2'000'000;
    // RNG seed for randomized factorization splitting and test generators.
    std::uint64_t seed = 0x15077477;
    int threads = 1;

    static Budget from_env() {
        Budget b;
        if (const char* s = std::getenv("ISOWITT_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) b.enum_cap = v;
        }
        return b;
    }
};

}  // namespace isowitt
