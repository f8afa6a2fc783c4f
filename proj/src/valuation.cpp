#include "mechlab/valuation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mechlab {

namespace {

using i128 = __int128;

void check_weights(const std::vector<Rational>& weights) {
    for (const Rational& w : weights)
        if (w.sign() < 0) throw InputError("negative item weight");
}

void check_bundle(const Bundle& s, int m) {
    if (!is_sorted_unique(s)) throw InputError("bundle not sorted/duplicate-free");
    if (!s.empty() && (s.front() < 0 || s.back() >= m))
        throw InputError("item index out of range");
}

void check_prices(const PriceVector& p, int m) {
    if (static_cast<int>(p.size()) != m) throw InputError("price vector size mismatch");
    for (const Rational& q : p)
        if (q.sign() < 0) throw InputError("negative price");
}

Rational price_sum(const PriceVector& p, const Bundle& s) {
    Rational total;
    for (ItemId j : s) total += p[static_cast<size_t>(j)];
    return total;
}

long long narrow128(i128 v, const char* what) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error(what);
    return static_cast<long long>(v);
}

// gcd of two nonnegative rationals: gcd(n1/d1, n2/d2) = gcd(n1*d2, n2*d1) / (d1*d2).
Rational rational_gcd(const Rational& a, const Rational& b) {
    i128 x = i128(a.num()) * b.den();
    i128 y = i128(b.num()) * a.den();
    while (y != 0) {
        i128 t = x % y;
        x = y;
        y = t;
    }
    i128 d = i128(a.den()) * b.den();
    return Rational(narrow128(x, "rational_gcd overflow"), narrow128(d, "rational_gcd overflow"));
}

constexpr long long kBruteForceCap = 20;        // max m for 2^m enumeration
constexpr long long kGridSumCap = 2'000'000;    // max sum of grid steps in demand dispatch

// --- budget-additive grid demand core ------------------------------------
//
// Works in units of v' = v/c, so prices are the integers t_j (t_j = 0
// allowed here; the public DP op requires t_j >= 1). Exact under the full
// tie-break chain:
//   stage 1  max raw weight per exact price sum -> optimal profit, minimal
//            price sum k*
//   stage 2a budget slack at k*: one additive DP maximizing
//            weight*(m+1) - cardinality, reconstructed lex-smallest
//   stage 2b budget binds at k*: minimal cardinality reaching the budget,
//            then lex-smallest, via a card-indexed suffix table
struct GridProblem {
    int m;
    std::vector<long long> t;    // price grid steps, >= 0
    std::vector<long long> w;    // weights scaled to a common denominator L
    long long b;                 // budget scaled by L
    long long scale;             // L
    long long total_steps;       // sum of t
};

GridProblem scale_problem(const std::vector<Rational>& weights, const Rational& budget,
                          const std::vector<long long>& t) {
    GridProblem gp;
    gp.m = static_cast<int>(weights.size());
    gp.t = t;
    long long lcm = budget.den();
    for (const Rational& w : weights) {
        long long g = std::gcd(lcm, w.den());
        lcm = narrow128(i128(lcm) / g * w.den(), "weight lcm overflow");
    }
    gp.scale = lcm;
    gp.w.reserve(weights.size());
    for (const Rational& w : weights)
        gp.w.push_back(narrow128(i128(w.num()) * (gp.scale / w.den()), "scaled weight overflow"));
    gp.b = narrow128(i128(budget.num()) * (gp.scale / budget.den()), "scaled budget overflow");
    gp.total_steps = 0;
    for (long long tj : t) {
        if (tj < 0) throw InputError("negative grid step");
        gp.total_steps += tj;
    }
    if (gp.total_steps > 50'000'000) throw SizeError("grid too fine for the demand DP");
    return gp;
}

// Max raw scaled weight for each exact price sum; -1 marks unreachable sums.
std::vector<long long> max_weight_per_sum(const GridProblem& gp, long long kmax) {
    std::vector<long long> best(static_cast<size_t>(kmax) + 1, -1);
    best[0] = 0;
    for (int j = 0; j < gp.m; ++j) {
        long long tj = gp.t[static_cast<size_t>(j)];
        long long wj = gp.w[static_cast<size_t>(j)];
        for (long long k = kmax; k >= tj; --k) {
            long long prev = best[static_cast<size_t>(k - tj)];
            if (prev < 0) continue;
            best[static_cast<size_t>(k)] = std::max(best[static_cast<size_t>(k)], prev + wj);
        }
    }
    return best;
}

// Suffix DP maximizing sum of w_j*(m+1) - 1 at each exact price sum, with
// per-item take bits; preferring inclusion on ties makes the reconstruction
// walk produce the lexicographically smallest optimal bundle.
Bundle max_weight_min_card_bundle(const GridProblem& gp, long long kstar) {
    const i128 unreachable = std::numeric_limits<i128>::min() / 4;
    size_t cols = static_cast<size_t>(kstar) + 1;
    std::vector<i128> next(cols, unreachable), cur(cols, unreachable);
    next[0] = 0;
    std::vector<std::vector<bool>> take(static_cast<size_t>(gp.m), std::vector<bool>(cols, false));
    for (int j = gp.m - 1; j >= 0; --j) {
        long long tj = gp.t[static_cast<size_t>(j)];
        i128 zj = i128(gp.w[static_cast<size_t>(j)]) * (gp.m + 1) - 1;
        for (long long k = 0; k <= kstar; ++k) {
            i128 exclude = next[static_cast<size_t>(k)];
            i128 include = unreachable;
            if (k >= tj && next[static_cast<size_t>(k - tj)] > unreachable)
                include = zj + next[static_cast<size_t>(k - tj)];
            if (include > unreachable && include >= exclude) {
                cur[static_cast<size_t>(k)] = include;
                take[static_cast<size_t>(j)][static_cast<size_t>(k)] = true;
            } else {
                cur[static_cast<size_t>(k)] = exclude;
                take[static_cast<size_t>(j)][static_cast<size_t>(k)] = false;
            }
        }
        std::swap(next, cur);
    }
    Bundle s;
    long long k = kstar;
    for (int j = 0; j < gp.m; ++j) {
        if (take[static_cast<size_t>(j)][static_cast<size_t>(k)]) {
            s.push_back(j);
            k -= gp.t[static_cast<size_t>(j)];
        }
    }
    return s;
}

// Budget-binding case: among bundles with price sum exactly kstar and raw
// weight >= b, the tie chain reduces to minimal cardinality then lex order.
Bundle min_card_budget_bundle(const GridProblem& gp, long long kstar, int card_ub) {
    size_t cols = static_cast<size_t>(kstar) + 1;
    size_t layers = static_cast<size_t>(card_ub) + 1;
    i128 cells = i128(gp.m + 1) * layers * cols;
    if (cells > 30'000'000)
        throw SizeError("binding-budget tie resolution exceeds the table guard");

    // suffix[j][c][k] = max capped weight using items {j..m-1}, card exactly c,
    // price sum exactly k; -1 unreachable. Capping partial sums at b keeps the
    // ">= b" test exact.
    auto cap = [&](i128 x) { return x > gp.b ? gp.b : narrow128(x, "capped weight"); };
    std::vector<std::vector<std::vector<long long>>> suffix(
        static_cast<size_t>(gp.m) + 1,
        std::vector<std::vector<long long>>(layers, std::vector<long long>(cols, -1)));
    suffix[static_cast<size_t>(gp.m)][0][0] = 0;
    for (int j = gp.m - 1; j >= 0; --j) {
        long long tj = gp.t[static_cast<size_t>(j)];
        long long wj = gp.w[static_cast<size_t>(j)];
        auto& out = suffix[static_cast<size_t>(j)];
        auto& in = suffix[static_cast<size_t>(j) + 1];
        for (size_t c = 0; c < layers; ++c) {
            for (long long k = 0; k <= kstar; ++k) {
                long long v = in[c][static_cast<size_t>(k)];
                if (c >= 1 && k >= tj) {
                    long long prev = in[c - 1][static_cast<size_t>(k - tj)];
                    if (prev >= 0) v = std::max(v, cap(i128(prev) + wj));
                }
                out[c][static_cast<size_t>(k)] = v;
            }
        }
    }

    int cstar = -1;
    for (int c = 0; c <= card_ub; ++c) {
        if (suffix[0][static_cast<size_t>(c)][static_cast<size_t>(kstar)] >= gp.b) {
            cstar = c;
            break;
        }
    }
    if (cstar < 0) throw std::logic_error("budget-binding bundle lost in DP");

    Bundle s;
    long long k = kstar;
    int c = cstar;
    i128 acc = 0;
    for (int j = 0; j < gp.m && c > 0; ++j) {
        long long tj = gp.t[static_cast<size_t>(j)];
        long long wj = gp.w[static_cast<size_t>(j)];
        if (k < tj) continue;
        long long rest = suffix[static_cast<size_t>(j) + 1][static_cast<size_t>(c - 1)]
                               [static_cast<size_t>(k - tj)];
        if (rest < 0) continue;
        i128 total = acc + wj + rest;
        if (total >= gp.b) {
            s.push_back(j);
            acc = acc + wj > gp.b ? i128(gp.b) : acc + wj;
            k -= tj;
            --c;
        }
    }
    if (c != 0) throw std::logic_error("budget-binding reconstruction failed");
    return s;
}

Bundle ba_demand_grid(const std::vector<Rational>& weights, const Rational& budget,
                      const std::vector<long long>& t) {
    GridProblem gp = scale_problem(weights, budget, t);
    long long kmax = gp.total_steps;
    std::vector<long long> best = max_weight_per_sum(gp, kmax);

    i128 best_score = 0;  // empty bundle: profit 0
    long long kstar = 0;
    for (long long k = 0; k <= kmax; ++k) {
        long long wk = best[static_cast<size_t>(k)];
        if (wk < 0) continue;
        i128 score = i128(std::min(wk, gp.b)) - i128(k) * gp.scale;
        if (score > best_score) {
            best_score = score;
            kstar = k;
        }
    }

    if (best[static_cast<size_t>(kstar)] < gp.b)
        return max_weight_min_card_bundle(gp, kstar);

    Bundle any_opt = max_weight_min_card_bundle(gp, kstar);
    return min_card_budget_bundle(gp, kstar, static_cast<int>(any_opt.size()));
}

Bundle ba_demand(const Valuation& v, const PriceVector& p) {
    // Any finite set of rationals lies on a grid c * t_j; the fallback only
    // triggers when the implied grid is too fine or the scaling overflows.
    try {
        Rational c;
        for (const Rational& q : p)
            if (!q.is_zero()) c = c.is_zero() ? q : rational_gcd(c, q);
        if (c.is_zero()) c = Rational(1);
        std::vector<long long> t;
        t.reserve(p.size());
        i128 total = 0;
        for (const Rational& q : p) {
            Rational steps = q / c;
            if (steps.den() != 1) throw std::logic_error("grid reduction not integral");
            t.push_back(steps.num());
            total += steps.num();
        }
        if (total > kGridSumCap) throw SizeError("grid too fine");
        // the grid core prices item j at exactly t_j, so rescale v to v/c
        std::vector<Rational> w;
        w.reserve(p.size());
        for (const Rational& wj : v.weights()) w.push_back(wj / c);
        return ba_demand_grid(w, v.budget() / c, t);
    } catch (const std::overflow_error&) {
    } catch (const SizeError&) {
    }
    if (v.item_count() <= kBruteForceCap) return demand_bruteforce(v, p);
    throw UnsupportedQueryError(
        "budget-additive demand needs grid prices at this size; got an off-grid vector");
}

}  // namespace

Valuation Valuation::additive(std::vector<Rational> weights) {
    check_weights(weights);
    Valuation v;
    v.kind_ = ValuationKind::Additive;
    v.m_ = static_cast<int>(weights.size());
    v.weights_ = std::move(weights);
    return v;
}

Valuation Valuation::budget_additive(std::vector<Rational> weights, Rational budget) {
    check_weights(weights);
    if (budget.sign() < 0) throw InputError("negative budget");
    Valuation v;
    v.kind_ = ValuationKind::BudgetAdditive;
    v.m_ = static_cast<int>(weights.size());
    v.weights_ = std::move(weights);
    v.budget_ = budget;
    return v;
}

Valuation Valuation::xos(std::vector<AdditiveClause> clauses) {
    if (clauses.empty()) throw InputError("XOS valuation needs at least one clause");
    size_t m = clauses.front().weights.size();
    for (const AdditiveClause& c : clauses) {
        if (c.weights.size() != m) throw InputError("XOS clause size mismatch");
        check_weights(c.weights);
    }
    Valuation v;
    v.kind_ = ValuationKind::Xos;
    v.m_ = static_cast<int>(m);
    v.clauses_ = std::move(clauses);
    return v;
}

Rational Valuation::value(const Bundle& s) const {
    check_bundle(s, m_);
    switch (kind_) {
        case ValuationKind::Additive: {
            Rational total;
            for (ItemId j : s) total += weights_[static_cast<size_t>(j)];
            return total;
        }
        case ValuationKind::BudgetAdditive: {
            Rational total;
            for (ItemId j : s) total += weights_[static_cast<size_t>(j)];
            return std::min(total, budget_);
        }
        case ValuationKind::Xos: {
            Rational best = clauses_.front().sum(s);
            for (size_t r = 1; r < clauses_.size(); ++r)
                best = std::max(best, clauses_[r].sum(s));
            return best;
        }
    }
    throw std::logic_error("unknown valuation kind");
}

bool demand_prefers(const Valuation& v, const PriceVector& p, const Bundle& a, const Bundle& b) {
    Rational profit_a = v.value(a) - price_sum(p, a);
    Rational profit_b = v.value(b) - price_sum(p, b);
    if (profit_a != profit_b) return profit_a > profit_b;
    Rational pa = price_sum(p, a);
    Rational pb = price_sum(p, b);
    if (pa != pb) return pa < pb;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Bundle demand(const Valuation& v, const PriceVector& p) {
    check_prices(p, v.item_count());
    switch (v.kind()) {
        case ValuationKind::Additive: {
            Bundle s;
            for (int j = 0; j < v.item_count(); ++j)
                if (v.weights()[static_cast<size_t>(j)] > p[static_cast<size_t>(j)])
                    s.push_back(j);
            return s;
        }
        case ValuationKind::Xos: {
            // Per clause, the candidate {j : a_r(j) > p_j} attains the clause
            // optimum and is tie-chain minimal; the global optimum is always
            // one of these candidates.
            Bundle best;
            bool have = false;
            for (const AdditiveClause& c : v.clauses()) {
                Bundle cand;
                for (int j = 0; j < v.item_count(); ++j)
                    if (c.weights[static_cast<size_t>(j)] > p[static_cast<size_t>(j)])
                        cand.push_back(j);
                if (!have || demand_prefers(v, p, cand, best)) {
                    best = std::move(cand);
                    have = true;
                }
            }
            return best;
        }
        case ValuationKind::BudgetAdditive:
            return ba_demand(v, p);
    }
    throw std::logic_error("unknown valuation kind");
}

Bundle demand_bruteforce(const Valuation& v, const PriceVector& p) {
    check_prices(p, v.item_count());
    int m = v.item_count();
    if (m > kBruteForceCap) throw SizeError("demand_bruteforce limited to m <= 20");
    Bundle best;  // empty bundle, profit 0
    for (unsigned long long mask = 1; mask < (1ULL << m); ++mask) {
        Bundle s;
        for (int j = 0; j < m; ++j)
            if (mask & (1ULL << j)) s.push_back(j);
        if (demand_prefers(v, p, s, best)) best = std::move(s);
    }
    return best;
}

Bundle budget_additive_demand_dp(const Valuation& v, const std::vector<long long>& t,
                                 const Rational& c) {
    if (v.kind() != ValuationKind::BudgetAdditive)
        throw InputError("budget_additive_demand_dp needs a budget-additive valuation");
    if (static_cast<int>(t.size()) != v.item_count()) throw InputError("grid size mismatch");
    for (long long tj : t)
        if (tj <= 0) throw InputError("grid steps must be positive integers");
    if (c.sign() <= 0) throw InputError("grid unit must be positive");
    // Dividing the valuation by c makes the prices exactly the integers t_j;
    // the tie chain is invariant under the positive rescaling.
    std::vector<Rational> w;
    w.reserve(v.weights().size());
    for (const Rational& wj : v.weights()) w.push_back(wj / c);
    return ba_demand_grid(w, v.budget() / c, t);
}

SupportingPriceMap supporting_prices(const Valuation& v, const Bundle& s) {
    check_bundle(s, v.item_count());
    SupportingPriceMap out;
    switch (v.kind()) {
        case ValuationKind::Additive:
            for (ItemId j : s) out[j] = v.weights()[static_cast<size_t>(j)];
            return out;
        case ValuationKind::BudgetAdditive: {
            Rational remaining = v.budget();
            for (ItemId j : s) {
                Rational q = std::min(v.weights()[static_cast<size_t>(j)], remaining);
                out[j] = q;
                remaining -= q;
            }
            return out;
        }
        case ValuationKind::Xos: {
            size_t best = 0;
            Rational best_sum = v.clauses()[0].sum(s);
            for (size_t r = 1; r < v.clauses().size(); ++r) {
                Rational sum = v.clauses()[r].sum(s);
                if (sum > best_sum) {
                    best_sum = sum;
                    best = r;
                }
            }
            for (ItemId j : s) out[j] = v.clauses()[best].weights[static_cast<size_t>(j)];
            return out;
        }
    }
    throw std::logic_error("unknown valuation kind");
}

Valuation to_xos(const Valuation& v, long long cap) {
    switch (v.kind()) {
        case ValuationKind::Xos:
            return v;
        case ValuationKind::Additive:
            return Valuation::xos({AdditiveClause{v.weights()}});
        case ValuationKind::BudgetAdditive: {
            Rational total;
            for (const Rational& w : v.weights()) total += w;
            if (v.budget() >= total) return Valuation::xos({AdditiveClause{v.weights()}});
            int m = v.item_count();
            if (m > 62 || (1LL << m) > cap)
                throw SizeError("explicit XOS expansion of a binding budget exceeds cap");
            std::vector<AdditiveClause> clauses;
            for (long long mask = 0; mask < (1LL << m); ++mask) {
                Bundle s;
                for (int j = 0; j < m; ++j)
                    if (mask & (1LL << j)) s.push_back(j);
                SupportingPriceMap q = supporting_prices(v, s);
                AdditiveClause clause{std::vector<Rational>(static_cast<size_t>(m))};
                for (const auto& [j, qj] : q) clause.weights[static_cast<size_t>(j)] = qj;
                clauses.push_back(std::move(clause));
            }
            std::sort(clauses.begin(), clauses.end(),
                      [](const AdditiveClause& a, const AdditiveClause& b) {
                          return a.weights < b.weights;
                      });
            clauses.erase(std::unique(clauses.begin(), clauses.end(),
                                      [](const AdditiveClause& a, const AdditiveClause& b) {
                                          return a.weights == b.weights;
                                      }),
                          clauses.end());
            return Valuation::xos(std::move(clauses));
        }
    }
    throw std::logic_error("unknown valuation kind");
}

}  // namespace mechlab
