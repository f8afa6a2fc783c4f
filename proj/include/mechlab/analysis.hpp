#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "mechlab/mechanism.hpp"

namespace mechlab {

/// Exact welfare-maximizing allocation by exhaustive assignment enumeration.
/// Ties broken by the lexicographically smallest assignment vector (item ->
/// nobody < bidder 0 < bidder 1 < ...). The guard counts assignments:
/// (n+1)^m must stay within `max_assignments` (default 2e6, overridable via
/// the MECHLAB_BRUTE_CAP environment variable).
std::pair<Allocation, Rational> brute_force_opt(const Instance& instance,
                                                long long max_assignments = 0);

/// Allocation together with the prices that support it (q_j >= p'_j for
/// every allocated item j). Supporting prices are always derived from the
/// actual valuations, never user-supplied.
struct SupportedAllocation {
    Allocation allocation;
    PriceVector support;                   // p'
    std::vector<SupportingPriceMap> q;     // per bidder, domain = its bundle
    Rational support_value() const;        // sum of p'_j over allocated items
    Rational q_value() const;              // o = sum of q_j over allocated items
};

/// Validates the support condition and derives q; throws InputError if any
/// allocated item has q_j < p'_j.
SupportedAllocation make_supported(const Instance& instance, const Allocation& allocation,
                                   const PriceVector& support);

/// Random allocation plus a support vector drawn at or below the derived
/// supporting prices; used by the bound-check harnesses.
SupportedAllocation random_supported_allocation(const Instance& instance, uint64_t seed);

struct RevenueBoundResult {
    bool ok;
    Rational auction_welfare;
    Rational half_support_value;
    Rational margin;  // welfare - half_support_value
};

/// Deterministic revenue bound: a fixed-price auction at p'/2 earns welfare
/// at least half the supported value of the allocation, for any bidder order.
RevenueBoundResult check_revenue_bound(const Instance& instance, const SupportedAllocation& sa,
                                       const std::vector<int>& order);

struct RandomOrderBoundReport {
    double lhs_mean = 0;      // E[welfare] estimate
    double lhs_stderr = 0;
    double rhs_mean = 0;      // o * E[c] * r / 4 estimate
    double margin_mean = 0;   // per-trial welfare - o*c*r/4
    double margin_stderr = 0;
    long long trials = 0;
    bool ok = true;           // margin_mean + 3*stderr >= 0
};

/// Monte Carlo check of the random-participant fixed-price auction bound:
/// each bidder joins independently with probability r_prob, order uniform,
/// prices p'/2.
RandomOrderBoundReport check_random_order_bound(const Instance& instance,
                                                const SupportedAllocation& sa,
                                                const Rational& r_prob, long long trials,
                                                uint64_t seed);

struct ConcentrationReport {
    double empirical_failure = 0;
    double bound = 0;       // 2 * exp(-p*R/2)
    double stderr_ = 0;
    double r_param = 0;
    long long trials = 0;
    bool ok = true;
};

/// Sampling concentration: frequency of {sum over a p-random subset < p*total/2}
/// must stay below the Hoeffding-style bound plus statistical slack.
ConcentrationReport check_sampling_concentration(const std::vector<Rational>& values,
                                                 const Rational& p, long long trials,
                                                 uint64_t seed);

/// A misreport: transforms a bidder's true valuation into a reported one.
struct Deviation {
    std::string id;
    std::function<Valuation(const Valuation&)> apply;
};

/// The shipped 8-deviation corpus (scalings, zeroing, clause drops, budget
/// perturbations, item swap, all-ones).
std::vector<Deviation> default_deviations();

struct DeviationViolation {
    uint64_t seed;
    int bidder;
    std::string deviation;
    Rational truthful_utility;
    Rational deviant_utility;
};

struct DeviationReport {
    std::vector<DeviationViolation> violations;
    long long comparisons = 0;
    Rational min_truthful_utility;  // over all (seed, bidder) truthful runs
};

using MechanismRunner =
    std::function<MechanismOutcome(const Instance&, const MechanismParams&, const CoinRecord&)>;

/// For each seed: draw coins once, run truthful, then replay the identical
/// coins with each bidder's report swapped for each deviation. A violation is
/// a strict utility gain measured with the true valuation; exact rationals,
/// so no false positives. The runner is injectable so tests can verify the
/// sweep detects a broken mechanism.
DeviationReport truthfulness_sweep(const Instance& instance, const MechanismParams& params,
                                   const std::vector<Deviation>& deviations,
                                   const std::vector<uint64_t>& seeds,
                                   const MechanismRunner& runner = run_mechanism);

struct TrialRow {
    uint64_t seed;
    BranchTag branch;
    Rational trial_welfare;
};

struct RatioReport {
    Rational opt;
    Rational mean_welfare;
    long long trials = 0;
    std::map<std::string, long long> branch_histogram;
    double ratio = 1.0;  // mean_welfare / opt; 1 by convention when opt = 0
    double welfare_stderr = 0;
    Rational max_grand_value;  // max_i v_i(M)
    bool floor_ok = true;      // mean welfare >= grand_bundle_prob * max_grand_value - 3*stderr
    std::vector<TrialRow> rows;
};

/// Mean welfare over seeded runs (trial t uses seed base_seed + t), branch
/// histogram, ratio against brute-force OPT (or a supplied bound), and the
/// grand-bundle welfare floor check.
RatioReport empirical_ratio(const Instance& instance, const MechanismParams& params,
                            long long trials, uint64_t seed,
                            std::optional<Rational> opt_override = std::nullopt);

}  // namespace mechlab
