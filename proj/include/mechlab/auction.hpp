#pragma once

#include <vector>

#include "mechlab/instance.hpp"

namespace mechlab {

/// One bundle per bidder, pairwise disjoint.
struct Allocation {
    std::vector<Bundle> bundles;

    static Allocation empty(int n) { return Allocation{std::vector<Bundle>(static_cast<size_t>(n))}; }
    Bundle allocated_items() const;
    bool disjoint() const;
};

Rational welfare(const Instance& instance, const Allocation& a);

/// One demand interaction of a fixed-price auction.
struct AuctionEvent {
    int bidder;
    PriceVector prices;  // prices the bidder actually faced (after availability inflation)
    Bundle taken;
};

struct AuctionResult {
    Allocation allocation;
    std::vector<Rational> payments;  // one per bidder, 0 for non-winners
    std::vector<AuctionEvent> events;
};

/// Sequential posted-price auction: participants arrive in the given order,
/// each takes its demanded bundle among still-available items and pays the
/// posted prices. Unavailable items are modeled by inflating their price to
/// v_i(M) + 1, which keeps the per-family demand oracles exact.
AuctionResult fixed_price_auction(const Instance& instance, const std::vector<int>& participants,
                                  const PriceVector& prices, const Bundle& available);

/// Second-price auction on the grand bundle M. Winner = argmax v_i(M), lowest
/// index on ties; pays the second-highest v_i(M) (0 if alone).
AuctionResult second_price_grand_bundle(const Instance& instance,
                                        const std::vector<int>& participants);

/// Marginal-value greedy: items in ascending id order, each given to the
/// participant with the largest strictly positive marginal value (lowest
/// index on ties). 2-approximate for submodular inputs; used by the mechanism
/// only through its welfare.
Allocation greedy_allocation(const Instance& instance, const std::vector<int>& participants);

}  // namespace mechlab
