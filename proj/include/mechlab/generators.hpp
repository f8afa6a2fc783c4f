#pragma once

#include <cstdint>
#include <string>

#include "mechlab/instance.hpp"

namespace mechlab {

enum class InstanceFamily {
    Diagonal,            // n = m; bidder i values only item i, a power of two <= m
    RandomAdditive,
    RandomXos,
    RandomBudgetAdditive,
    Dominant,            // bidder 0's grand-bundle value dwarfs the rest
};

InstanceFamily parse_family(const std::string& name);
const char* family_name(InstanceFamily family);

struct GeneratorSpec {
    InstanceFamily family = InstanceFamily::RandomAdditive;
    int n = 1;
    int m = 1;
    long long value_min = 0;
    long long value_max = 8;
    int clause_count = 3;  // XOS only
    uint64_t seed = 0;
};

/// Deterministic instance generation: identical specs give identical
/// instances. All generated values are integers.
Instance generate(const GeneratorSpec& spec);

}  // namespace mechlab
