#include "mechlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mechlab/rng.hpp"

namespace mechlab {

namespace {

constexpr long long kDefaultAssignmentCap = 2'000'000;

long long assignment_cap(long long requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MECHLAB_BRUTE_CAP")) {
        long long cap = std::atoll(env);
        if (cap > 0) return cap;
    }
    return kDefaultAssignmentCap;
}

double stderr_of(double sum, double sum_sq, long long n) {
    if (n < 2) return 0.0;
    double mean = sum / static_cast<double>(n);
    double var = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    if (var < 0) var = 0;
    return std::sqrt(var / static_cast<double>(n));
}

// Incremental welfare tracker for the assignment odometer.
struct WelfareTracker {
    const Instance& instance;
    std::vector<std::vector<char>> member;  // bidder x item
    std::vector<Rational> weight_sum;       // additive / budget-additive running sums
    std::vector<Rational> bidder_value;
    Rational total;

    explicit WelfareTracker(const Instance& inst)
        : instance(inst),
          member(static_cast<size_t>(inst.n()), std::vector<char>(static_cast<size_t>(inst.m), 0)),
          weight_sum(static_cast<size_t>(inst.n())),
          bidder_value(static_cast<size_t>(inst.n())) {}

    void refresh(int i) {
        const Valuation& v = instance.bidders[static_cast<size_t>(i)];
        Rational before = bidder_value[static_cast<size_t>(i)];
        switch (v.kind()) {
            case ValuationKind::Additive:
                bidder_value[static_cast<size_t>(i)] = weight_sum[static_cast<size_t>(i)];
                break;
            case ValuationKind::BudgetAdditive:
                bidder_value[static_cast<size_t>(i)] =
                    std::min(weight_sum[static_cast<size_t>(i)], v.budget());
                break;
            case ValuationKind::Xos: {
                Bundle b;
                for (int j = 0; j < instance.m; ++j)
                    if (member[static_cast<size_t>(i)][static_cast<size_t>(j)]) b.push_back(j);
                bidder_value[static_cast<size_t>(i)] = v.value(b);
                break;
            }
        }
        total += bidder_value[static_cast<size_t>(i)] - before;
    }

    void give(int i, int j) {
        member[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
        const Valuation& v = instance.bidders[static_cast<size_t>(i)];
        if (v.kind() != ValuationKind::Xos)
            weight_sum[static_cast<size_t>(i)] += v.weights()[static_cast<size_t>(j)];
        refresh(i);
    }

    void take(int i, int j) {
        member[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0;
        const Valuation& v = instance.bidders[static_cast<size_t>(i)];
        if (v.kind() != ValuationKind::Xos)
            weight_sum[static_cast<size_t>(i)] -= v.weights()[static_cast<size_t>(j)];
        refresh(i);
    }
};

}  // namespace

std::pair<Allocation, Rational> brute_force_opt(const Instance& instance,
                                                long long max_assignments) {
    instance.validate();
    long long cap = assignment_cap(max_assignments);
    double count = std::pow(static_cast<double>(instance.n() + 1), instance.m);
    if (count > static_cast<double>(cap))
        throw SizeError("brute_force_opt: (n+1)^m exceeds the assignment cap");

    int m = instance.m;
    int base = instance.n() + 1;  // digit 0 = nobody, digit i+1 = bidder i
    std::vector<int> digits(static_cast<size_t>(m), 0);
    WelfareTracker tracker(instance);

    std::vector<int> best_digits = digits;
    Rational best = tracker.total;

    // Lexicographic odometer; strict improvement keeps the lex-smallest argmax.
    while (true) {
        int pos = m - 1;
        while (pos >= 0) {
            int d = digits[static_cast<size_t>(pos)];
            if (d > 0) tracker.take(d - 1, pos);
            if (d + 1 < base) {
                digits[static_cast<size_t>(pos)] = d + 1;
                tracker.give(d, pos);
                break;
            }
            digits[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        if (tracker.total > best) {
            best = tracker.total;
            best_digits = digits;
        }
    }

    Allocation alloc = Allocation::empty(instance.n());
    for (int j = 0; j < m; ++j) {
        int d = best_digits[static_cast<size_t>(j)];
        if (d > 0) alloc.bundles[static_cast<size_t>(d - 1)].push_back(j);
    }
    return {std::move(alloc), best};
}

Rational SupportedAllocation::support_value() const {
    Rational total;
    for (const Bundle& b : allocation.bundles)
        for (ItemId j : b) total += support[static_cast<size_t>(j)];
    return total;
}

Rational SupportedAllocation::q_value() const {
    Rational total;
    for (const SupportingPriceMap& map : q)
        for (const auto& [j, qj] : map) total += qj;
    return total;
}

SupportedAllocation make_supported(const Instance& instance, const Allocation& allocation,
                                   const PriceVector& support) {
    instance.validate();
    if (static_cast<int>(allocation.bundles.size()) != instance.n())
        throw InputError("allocation size mismatch");
    if (static_cast<int>(support.size()) != instance.m) throw InputError("support size mismatch");
    if (!allocation.disjoint()) throw InputError("allocation bundles overlap");

    SupportedAllocation sa;
    sa.allocation = allocation;
    sa.support = support;
    for (int i = 0; i < instance.n(); ++i) {
        SupportingPriceMap q = supporting_prices(instance.bidders[static_cast<size_t>(i)],
                                                 allocation.bundles[static_cast<size_t>(i)]);
        for (const auto& [j, qj] : q)
            if (qj < support[static_cast<size_t>(j)])
                throw InputError("allocation not supported: q_j < p'_j");
        sa.q.push_back(std::move(q));
    }
    return sa;
}

SupportedAllocation random_supported_allocation(const Instance& instance, uint64_t seed) {
    instance.validate();
    Rng rng(seed);
    Allocation alloc = Allocation::empty(instance.n());
    for (int j = 0; j < instance.m; ++j) {
        uint64_t pick = rng.below(static_cast<uint64_t>(instance.n()) + 1);
        if (pick > 0) alloc.bundles[pick - 1].push_back(j);
    }
    // p'_j <= q_j for allocated items; arbitrary nonnegative elsewhere.
    PriceVector support(static_cast<size_t>(instance.m));
    Rational max_q;
    for (int i = 0; i < instance.n(); ++i) {
        SupportingPriceMap q = supporting_prices(instance.bidders[static_cast<size_t>(i)],
                                                 alloc.bundles[static_cast<size_t>(i)]);
        for (const auto& [j, qj] : q) {
            long long quarters = static_cast<long long>(rng.below(5));  // 0..4
            support[static_cast<size_t>(j)] = qj * Rational(quarters, 4);
            max_q = std::max(max_q, qj);
        }
    }
    Bundle taken = alloc.allocated_items();
    for (int j = 0; j < instance.m; ++j)
        if (!bundle_contains(taken, j))
            support[static_cast<size_t>(j)] = max_q * Rational(static_cast<long long>(rng.below(5)), 4);
    return make_supported(instance, alloc, support);
}

RevenueBoundResult check_revenue_bound(const Instance& instance, const SupportedAllocation& sa,
                                       const std::vector<int>& order) {
    PriceVector half(sa.support.size());
    for (size_t j = 0; j < sa.support.size(); ++j) half[j] = sa.support[j] / Rational(2);
    AuctionResult res = fixed_price_auction(instance, order, half, full_bundle(instance.m));
    RevenueBoundResult out;
    out.auction_welfare = welfare(instance, res.allocation);
    out.half_support_value = sa.support_value() / Rational(2);
    out.margin = out.auction_welfare - out.half_support_value;
    out.ok = out.margin.sign() >= 0;
    return out;
}

RandomOrderBoundReport check_random_order_bound(const Instance& instance,
                                                const SupportedAllocation& sa,
                                                const Rational& r_prob, long long trials,
                                                uint64_t seed) {
    if (trials < 1) throw InputError("check_random_order_bound needs trials >= 1");
    PriceVector half(sa.support.size());
    for (size_t j = 0; j < sa.support.size(); ++j) half[j] = sa.support[j] / Rational(2);
    Rational o = sa.q_value();

    Rng rng(seed);
    RandomOrderBoundReport report;
    report.trials = trials;
    double lhs_sum = 0, lhs_sq = 0, rhs_sum = 0, margin_sum = 0, margin_sq = 0;
    for (long long t = 0; t < trials; ++t) {
        std::vector<int> participants;
        for (int i = 0; i < instance.n(); ++i)
            if (rng.chance(r_prob)) participants.push_back(i);
        rng.shuffle(participants);
        AuctionResult res = fixed_price_auction(instance, participants, half,
                                                full_bundle(instance.m));
        Rational w = welfare(instance, res.allocation);

        Rational allocated_q;
        Bundle taken = res.allocation.allocated_items();
        for (const SupportingPriceMap& map : sa.q)
            for (const auto& [j, qj] : map)
                if (bundle_contains(taken, j)) allocated_q += qj;
        // c = 1 - allocated_q / o; rhs contribution = o*c*r/4 = (o - allocated_q)*r/4
        Rational rhs = (o - allocated_q) * r_prob / Rational(4);
        double lhs = w.to_double();
        double margin = (w - rhs).to_double();
        lhs_sum += lhs;
        lhs_sq += lhs * lhs;
        rhs_sum += rhs.to_double();
        margin_sum += margin;
        margin_sq += margin * margin;
    }
    report.lhs_mean = lhs_sum / static_cast<double>(trials);
    report.lhs_stderr = stderr_of(lhs_sum, lhs_sq, trials);
    report.rhs_mean = rhs_sum / static_cast<double>(trials);
    report.margin_mean = margin_sum / static_cast<double>(trials);
    report.margin_stderr = stderr_of(margin_sum, margin_sq, trials);
    report.ok = report.margin_mean + 3.0 * report.margin_stderr >= 0.0;
    return report;
}

ConcentrationReport check_sampling_concentration(const std::vector<Rational>& values,
                                                 const Rational& p, long long trials,
                                                 uint64_t seed) {
    if (trials < 1) throw InputError("check_sampling_concentration needs trials >= 1");
    ConcentrationReport report;
    report.trials = trials;
    Rational total, maxv;
    for (const Rational& v : values) {
        if (v.sign() < 0) throw InputError("values must be nonnegative");
        total += v;
        maxv = std::max(maxv, v);
    }
    if (total.is_zero()) {
        // The failure event {subset sum < p*0/2} is impossible.
        report.bound = 1.0;
        report.ok = true;
        return report;
    }
    double r_param = (total / maxv).to_double();
    report.r_param = r_param;
    report.bound = 2.0 * std::exp(-p.to_double() * r_param / 2.0);

    Rational threshold = p * total / Rational(2);
    Rng rng(seed);
    long long failures = 0;
    for (long long t = 0; t < trials; ++t) {
        Rational sum;
        for (const Rational& v : values)
            if (rng.chance(p)) sum += v;
        if (sum < threshold) ++failures;
    }
    double fhat = static_cast<double>(failures) / static_cast<double>(trials);
    report.empirical_failure = fhat;
    report.stderr_ = std::sqrt(std::max(fhat * (1.0 - fhat), 1e-12) / static_cast<double>(trials));
    report.ok = fhat <= report.bound + 3.0 * report.stderr_;
    return report;
}

std::vector<Deviation> default_deviations() {
    auto scale = [](const Valuation& v, const Rational& factor) {
        auto scale_weights = [&](const std::vector<Rational>& w) {
            std::vector<Rational> out;
            out.reserve(w.size());
            for (const Rational& x : w) out.push_back(x * factor);
            return out;
        };
        switch (v.kind()) {
            case ValuationKind::Additive:
                return Valuation::additive(scale_weights(v.weights()));
            case ValuationKind::BudgetAdditive:
                return Valuation::budget_additive(scale_weights(v.weights()), v.budget() * factor);
            case ValuationKind::Xos: {
                std::vector<AdditiveClause> clauses;
                for (const AdditiveClause& c : v.clauses())
                    clauses.push_back(AdditiveClause{scale_weights(c.weights)});
                return Valuation::xos(std::move(clauses));
            }
        }
        throw std::logic_error("unknown valuation kind");
    };

    std::vector<Deviation> out;
    out.push_back({"scale_x2", [scale](const Valuation& v) { return scale(v, Rational(2)); }});
    out.push_back({"scale_half", [scale](const Valuation& v) { return scale(v, Rational(1, 2)); }});
    out.push_back({"zero", [scale](const Valuation& v) { return scale(v, Rational(0)); }});
    out.push_back({"all_ones_additive", [](const Valuation& v) {
                       return Valuation::additive(
                           std::vector<Rational>(static_cast<size_t>(v.item_count()), Rational(1)));
                   }});
    out.push_back({"swap_items_01", [](const Valuation& v) {
                       if (v.item_count() < 2) return v;
                       auto swap01 = [](std::vector<Rational> w) {
                           std::swap(w[0], w[1]);
                           return w;
                       };
                       switch (v.kind()) {
                           case ValuationKind::Additive:
                               return Valuation::additive(swap01(v.weights()));
                           case ValuationKind::BudgetAdditive:
                               return Valuation::budget_additive(swap01(v.weights()), v.budget());
                           case ValuationKind::Xos: {
                               std::vector<AdditiveClause> clauses;
                               for (const AdditiveClause& c : v.clauses())
                                   clauses.push_back(AdditiveClause{swap01(c.weights)});
                               return Valuation::xos(std::move(clauses));
                           }
                       }
                       throw std::logic_error("unknown valuation kind");
                   }});
    out.push_back({"halve_budget", [](const Valuation& v) {
                       // Non-BA families are reported as budget-additive with
                       // a budget of half their grand-bundle value.
                       Bundle grand = full_bundle(v.item_count());
                       Rational half_total = v.value(grand) / Rational(2);
                       if (v.kind() == ValuationKind::BudgetAdditive)
                           return Valuation::budget_additive(v.weights(), v.budget() / Rational(2));
                       if (v.kind() == ValuationKind::Additive)
                           return Valuation::budget_additive(v.weights(), half_total);
                       return Valuation::budget_additive(v.clauses().front().weights, half_total);
                   }});
    out.push_back({"double_budget", [](const Valuation& v) {
                       if (v.kind() == ValuationKind::BudgetAdditive)
                           return Valuation::budget_additive(v.weights(), v.budget() * Rational(2));
                       // No budget to perturb: report only the single best item.
                       std::vector<Rational> w(static_cast<size_t>(v.item_count()));
                       int best = 0;
                       for (int j = 1; j < v.item_count(); ++j)
                           if (v.value(Bundle{j}) > v.value(Bundle{best})) best = j;
                       w[static_cast<size_t>(best)] = v.value(Bundle{best});
                       return Valuation::additive(std::move(w));
                   }});
    out.push_back({"drop_clause", [](const Valuation& v) {
                       if (v.kind() == ValuationKind::Xos && v.clauses().size() > 1) {
                           std::vector<AdditiveClause> rest(v.clauses().begin() + 1,
                                                            v.clauses().end());
                           return Valuation::xos(std::move(rest));
                       }
                       // Other families: zero out item 0's weight.
                       if (v.kind() == ValuationKind::Xos) return v;
                       std::vector<Rational> w = v.weights();
                       if (!w.empty()) w[0] = Rational(0);
                       if (v.kind() == ValuationKind::BudgetAdditive)
                           return Valuation::budget_additive(std::move(w), v.budget());
                       return Valuation::additive(std::move(w));
                   }});
    return out;
}

DeviationReport truthfulness_sweep(const Instance& instance, const MechanismParams& params,
                                   const std::vector<Deviation>& deviations,
                                   const std::vector<uint64_t>& seeds,
                                   const MechanismRunner& runner) {
    instance.validate();
    DeviationReport report;
    bool first_utility = true;
    for (uint64_t seed : seeds) {
        CoinRecord coins = draw_coins(instance.n(), params, seed);
        MechanismOutcome truthful = runner(instance, params, coins);
        for (int i = 0; i < instance.n(); ++i) {
            Rational truthful_u = utility(instance, i, truthful);
            if (first_utility || truthful_u < report.min_truthful_utility) {
                report.min_truthful_utility = truthful_u;
                first_utility = false;
            }
            for (const Deviation& dev : deviations) {
                Instance misreported = instance;
                misreported.bidders[static_cast<size_t>(i)] =
                    dev.apply(instance.bidders[static_cast<size_t>(i)]);
                MechanismOutcome deviant = runner(misreported, params, coins);
                Rational deviant_u =
                    instance.bidders[static_cast<size_t>(i)].value(
                        deviant.allocation.bundles[static_cast<size_t>(i)]) -
                    deviant.payments[static_cast<size_t>(i)];
                ++report.comparisons;
                if (deviant_u > truthful_u)
                    report.violations.push_back(
                        DeviationViolation{seed, i, dev.id, truthful_u, deviant_u});
            }
        }
    }
    return report;
}

RatioReport empirical_ratio(const Instance& instance, const MechanismParams& params,
                            long long trials, uint64_t seed,
                            std::optional<Rational> opt_override) {
    if (trials < 1) throw InputError("empirical_ratio needs trials >= 1");
    instance.validate();

    RatioReport report;
    report.trials = trials;
    report.opt = opt_override ? *opt_override : brute_force_opt(instance).second;

    Bundle grand = full_bundle(instance.m);
    for (const Valuation& v : instance.bidders)
        report.max_grand_value = std::max(report.max_grand_value, v.value(grand));

    Rational welfare_total;
    double sum = 0, sum_sq = 0;
    for (long long t = 0; t < trials; ++t) {
        uint64_t trial_seed = seed + static_cast<uint64_t>(t);
        CoinRecord coins = draw_coins(instance.n(), params, trial_seed);
        MechanismOutcome outcome = run_mechanism(instance, params, coins);
        Rational w = welfare(instance, outcome.allocation);
        welfare_total += w;
        double wd = w.to_double();
        sum += wd;
        sum_sq += wd * wd;
        ++report.branch_histogram[branch_name(outcome.branch)];
        report.rows.push_back(TrialRow{trial_seed, outcome.branch, w});
    }
    report.mean_welfare = welfare_total / Rational(trials);
    report.welfare_stderr = stderr_of(sum, sum_sq, trials);
    report.ratio = report.opt.is_zero() ? 1.0
                                        : (report.mean_welfare / report.opt).to_double();
    double floor = (params.grand_bundle_prob * report.max_grand_value).to_double();
    report.floor_ok = report.mean_welfare.to_double() + 3.0 * report.welfare_stderr >= floor;
    return report;
}

}  // namespace mechlab
