#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mechlab/rational.hpp"

namespace mechlab {

/// Item index in [0, m).
using ItemId = int;

/// Sorted, duplicate-free list of item ids.
using Bundle = std::vector<ItemId>;

/// One nonnegative price per item.
using PriceVector = std::vector<Rational>;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a demand query cannot be answered exactly for the given
/// valuation family and price structure.
struct UnsupportedQueryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_bundle_range(const Bundle& b, int m) {
    if (!std::is_sorted(b.begin(), b.end()) ||
        std::adjacent_find(b.begin(), b.end()) != b.end())
        throw InputError("bundle not sorted/duplicate-free");
    if (!b.empty() && (b.front() < 0 || b.back() >= m))
        throw InputError("item index out of range");
}

inline bool is_sorted_unique(const Bundle& b) {
    for (size_t i = 1; i < b.size(); ++i)
        if (b[i - 1] >= b[i]) return false;
    return true;
}

inline bool bundle_contains(const Bundle& b, ItemId j) {
    return std::binary_search(b.begin(), b.end(), j);
}

inline Bundle bundle_union(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Bundle bundle_diff(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Bundle bundle_intersect(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Bundle full_bundle(int m) {
    Bundle b(m);
    for (int j = 0; j < m; ++j) b[j] = j;
    return b;
}

}  // namespace mechlab
