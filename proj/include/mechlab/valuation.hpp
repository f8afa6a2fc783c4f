#pragma once

#include <map>
#include <vector>

#include "mechlab/types.hpp"

namespace mechlab {

/// One additive clause: a weight per item.
struct AdditiveClause {
    std::vector<Rational> weights;

    Rational sum(const Bundle& s) const {
        Rational total;
        for (ItemId j : s) total += weights.at(static_cast<size_t>(j));
        return total;
    }
};

enum class ValuationKind { Additive, BudgetAdditive, Xos };

/// Supporting prices of a bundle: item -> weight in the maximizing clause.
using SupportingPriceMap = std::map<ItemId, Rational>;

/// Monotone normalized valuation, one of three families. Immutable after
/// construction; all queries are pure.
class Valuation {
public:
    static Valuation additive(std::vector<Rational> weights);
    static Valuation budget_additive(std::vector<Rational> weights, Rational budget);
    static Valuation xos(std::vector<AdditiveClause> clauses);

    ValuationKind kind() const { return kind_; }
    int item_count() const { return m_; }

    /// Item weights (Additive and BudgetAdditive only).
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& budget() const { return budget_; }
    /// Clause list (Xos only).
    const std::vector<AdditiveClause>& clauses() const { return clauses_; }

    Rational value(const Bundle& s) const;

private:
    Valuation() = default;

    ValuationKind kind_ = ValuationKind::Additive;
    int m_ = 0;
    std::vector<Rational> weights_;
    Rational budget_;
    std::vector<AdditiveClause> clauses_;
};

/// True when bundle `a` is preferred over `b` at prices `p` under the global
/// demand tie-break chain: higher profit, then lower price sum, then fewer
/// items, then lexicographically smaller item list.
bool demand_prefers(const Valuation& v, const PriceVector& p, const Bundle& a, const Bundle& b);

/// Exact profit-maximizing bundle at prices `p` with the global tie rules.
/// Additive and Xos use closed forms; BudgetAdditive is solved by the grid
/// dynamic program (any finite rational price vector lies on a grid), falling
/// back to brute force for m <= 20 when the grid is too fine.
Bundle demand(const Valuation& v, const PriceVector& p);

/// Ground-truth oracle: exhaustive scan of all 2^m bundles with the same tie
/// rules as demand(). m <= 20.
Bundle demand_bruteforce(const Valuation& v, const PriceVector& p);

/// Demand query for a budget-additive valuation at grid prices p_j = c * t_j
/// with integer t_j >= 1. Exact, including the tie-break chain; knapsack-style
/// table over price sums.
Bundle budget_additive_demand_dp(const Valuation& v, const std::vector<long long>& t,
                                 const Rational& c);

/// Supporting prices of bundle `s`: weights of the maximizing clause (lowest
/// clause index on ties). Additive valuations use their single clause;
/// budget-additive ones use a greedy per-bundle clause, filling items in
/// ascending order up to the budget.
SupportingPriceMap supporting_prices(const Valuation& v, const Bundle& s);

/// Value-equivalent explicit XOS form. A budget-additive valuation with a
/// binding budget expands to one clause per bundle; `cap` bounds the number
/// of enumerated bundles.
Valuation to_xos(const Valuation& v, long long cap);

}  // namespace mechlab
