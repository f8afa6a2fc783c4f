#include "mechlab/auction.hpp"

#include <algorithm>
#include <set>

namespace mechlab {

Bundle Allocation::allocated_items() const {
    Bundle all;
    for (const Bundle& b : bundles) all = bundle_union(all, b);
    return all;
}

bool Allocation::disjoint() const {
    size_t total = 0;
    for (const Bundle& b : bundles) total += b.size();
    return allocated_items().size() == total;
}

Rational welfare(const Instance& instance, const Allocation& a) {
    Rational total;
    for (int i = 0; i < instance.n(); ++i)
        total += instance.bidders[static_cast<size_t>(i)].value(a.bundles[static_cast<size_t>(i)]);
    return total;
}

namespace {

void check_participants(const Instance& instance, const std::vector<int>& participants) {
    std::set<int> seen;
    for (int i : participants) {
        if (i < 0 || i >= instance.n()) throw InputError("participant index out of range");
        if (!seen.insert(i).second) throw InputError("duplicate participant");
    }
}

}  // namespace

AuctionResult fixed_price_auction(const Instance& instance, const std::vector<int>& participants,
                                  const PriceVector& prices, const Bundle& available) {
    instance.validate();
    check_participants(instance, participants);
    if (static_cast<int>(prices.size()) != instance.m) throw InputError("price vector size mismatch");
    check_bundle_range(available, instance.m);

    AuctionResult result;
    result.allocation = Allocation::empty(instance.n());
    result.payments.assign(static_cast<size_t>(instance.n()), Rational());

    Bundle remaining = available;
    for (int i : participants) {
        const Valuation& v = instance.bidders[static_cast<size_t>(i)];
        Rational blocked = v.value(full_bundle(instance.m)) + Rational(1);
        PriceVector faced = prices;
        for (int j = 0; j < instance.m; ++j)
            if (!bundle_contains(remaining, j)) faced[static_cast<size_t>(j)] = blocked;
        Bundle taken = demand(v, faced);
        for (ItemId j : taken)
            if (!bundle_contains(remaining, j))
                throw std::logic_error("demand returned an unavailable item");
        remaining = bundle_diff(remaining, taken);
        Rational payment;
        for (ItemId j : taken) payment += prices[static_cast<size_t>(j)];
        result.allocation.bundles[static_cast<size_t>(i)] = taken;
        result.payments[static_cast<size_t>(i)] = payment;
        result.events.push_back(AuctionEvent{i, std::move(faced), std::move(taken)});
    }
    return result;
}

AuctionResult second_price_grand_bundle(const Instance& instance,
                                        const std::vector<int>& participants) {
    instance.validate();
    check_participants(instance, participants);
    if (participants.empty()) throw InputError("second-price auction needs a participant");

    Bundle grand = full_bundle(instance.m);
    int winner = -1;
    Rational best, second;
    for (int i : participants) {
        Rational bid = instance.bidders[static_cast<size_t>(i)].value(grand);
        if (winner < 0 || bid > best) {
            if (winner >= 0) second = std::max(second, best);
            best = bid;
            winner = i;
        } else {
            second = std::max(second, bid);
        }
    }

    AuctionResult result;
    result.allocation = Allocation::empty(instance.n());
    result.payments.assign(static_cast<size_t>(instance.n()), Rational());
    result.allocation.bundles[static_cast<size_t>(winner)] = grand;
    result.payments[static_cast<size_t>(winner)] = second;
    return result;
}

Allocation greedy_allocation(const Instance& instance, const std::vector<int>& participants) {
    instance.validate();
    check_participants(instance, participants);
    Allocation alloc = Allocation::empty(instance.n());
    std::vector<int> order = participants;
    std::sort(order.begin(), order.end());  // ties go to the lowest bidder index
    std::vector<Rational> current(static_cast<size_t>(instance.n()));
    for (int j = 0; j < instance.m; ++j) {
        int best_bidder = -1;
        Rational best_marginal;
        for (int i : order) {
            Bundle with = bundle_union(alloc.bundles[static_cast<size_t>(i)], Bundle{j});
            Rational marginal =
                instance.bidders[static_cast<size_t>(i)].value(with) - current[static_cast<size_t>(i)];
            if (marginal > best_marginal) {
                best_marginal = marginal;
                best_bidder = i;
            }
        }
        if (best_bidder >= 0 && best_marginal.sign() > 0) {
            alloc.bundles[static_cast<size_t>(best_bidder)] =
                bundle_union(alloc.bundles[static_cast<size_t>(best_bidder)], Bundle{j});
            current[static_cast<size_t>(best_bidder)] += best_marginal;
        }
    }
    return alloc;
}

}  // namespace mechlab
