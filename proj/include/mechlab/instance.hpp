#pragma once

#include <vector>

#include "mechlab/valuation.hpp"

namespace mechlab {

/// n bidders over m items; the unit of I/O.
struct Instance {
    int m = 0;
    std::vector<Valuation> bidders;

    int n() const { return static_cast<int>(bidders.size()); }

    void validate() const {
        if (m < 1) throw InputError("instance needs at least one item");
        if (bidders.empty()) throw InputError("instance needs at least one bidder");
        for (const Valuation& v : bidders)
            if (v.item_count() != m) throw InputError("bidder item count mismatch");
    }
};

}  // namespace mechlab
