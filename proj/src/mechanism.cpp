#include "mechlab/mechanism.hpp"

#include <algorithm>
#include <cmath>

#include "mechlab/rng.hpp"

namespace mechlab {

namespace {

using json = nlohmann::ordered_json;

int ceil_log2(int m) {
    int k = 0;
    while ((1LL << k) < m) ++k;
    return k;
}

json rationals_json(const PriceVector& p) {
    json arr = json::array();
    for (const Rational& q : p) arr.push_back(q.str());
    return arr;
}

json allocation_json(const Allocation& a) {
    json arr = json::array();
    for (const Bundle& b : a.bundles) arr.push_back(b);
    return arr;
}

json payments_json(const std::vector<Rational>& payments) {
    json arr = json::array();
    for (const Rational& q : payments) arr.push_back(q.str());
    return arr;
}

json coins_json(const CoinRecord& coins) {
    json groups = json::array();
    for (Group g : coins.group_of) groups.push_back(group_name(g));
    json stops = json::array();
    for (bool s : coins.stop_coin) stops.push_back(s ? 1 : 0);
    return json{{"grand_bundle_coin", coins.grand_bundle_coin ? 1 : 0},
                {"groups", groups},
                {"pi", coins.pi},
                {"r", coins.r},
                {"stop_coins", stops}};
}

void check_coins(const Instance& instance, const MechanismParams& params,
                 const CoinRecord& coins) {
    if (static_cast<int>(coins.group_of.size()) != instance.n())
        throw InputError("coin record drawn for a different bidder count");
    if (static_cast<int>(coins.stop_coin.size()) != params.alpha)
        throw InputError("coin record drawn for a different chunk count");
    if (coins.r < 1 || coins.r > params.bins_per_chunk())
        throw InputError("coin record r out of range");
    std::vector<int> uniform;
    for (int i = 0; i < instance.n(); ++i)
        if (coins.group_of[static_cast<size_t>(i)] == Group::Uniform) uniform.push_back(i);
    std::vector<int> pi_sorted = coins.pi;
    std::sort(pi_sorted.begin(), pi_sorted.end());
    if (pi_sorted != uniform) throw InputError("pi is not a permutation of the UNIFORM group");
}

}  // namespace

const char* branch_name(BranchTag tag) {
    switch (tag) {
        case BranchTag::GrandBundle: return "GRAND_BUNDLE";
        case BranchTag::ChunkStop: return "CHUNK_STOP";
        case BranchTag::FinalAuction: return "FINAL_AUCTION";
    }
    return "?";
}

const char* group_name(Group g) {
    switch (g) {
        case Group::Stat: return "stat";
        case Group::Uniform: return "uniform";
        case Group::Final: return "final";
    }
    return "?";
}

MechanismParams MechanismParams::defaults(int m) {
    if (m < 1) throw InputError("defaults need m >= 1");
    int log_m = ceil_log2(m);
    MechanismParams p;
    p.alpha = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(log_m)))));
    int bins = std::max(4 * log_m, p.alpha);
    if (bins % p.alpha != 0) bins += p.alpha - bins % p.alpha;
    p.bin_count = bins;
    p.grand_bundle_prob = Rational(1, 2);
    p.termination_prob = Rational(1, p.alpha);
    return p;
}

void MechanismParams::validate() const {
    if (alpha < 1) throw InputError("alpha must be positive");
    if (bin_count < 1 || bin_count % alpha != 0)
        throw InputError("bin_count must be a positive multiple of alpha");
    if (grand_bundle_prob.sign() < 0 || grand_bundle_prob > Rational(1))
        throw InputError("grand_bundle_prob out of [0,1]");
    if (termination_prob.sign() < 0 || termination_prob > Rational(1))
        throw InputError("termination_prob out of [0,1]");
}

CoinRecord draw_coins(int n, const MechanismParams& params, uint64_t seed) {
    if (n < 1) throw InputError("draw_coins needs n >= 1");
    params.validate();
    Rng rng(seed);
    CoinRecord coins;
    coins.grand_bundle_coin = rng.chance(params.grand_bundle_prob);
    coins.group_of.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        switch (rng.below(3)) {
            case 0: coins.group_of.push_back(Group::Stat); break;
            case 1: coins.group_of.push_back(Group::Uniform); break;
            default: coins.group_of.push_back(Group::Final); break;
        }
    }
    for (int i = 0; i < n; ++i)
        if (coins.group_of[static_cast<size_t>(i)] == Group::Uniform) coins.pi.push_back(i);
    rng.shuffle(coins.pi);
    coins.r = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(params.bins_per_chunk())));
    for (int k = 0; k < params.alpha; ++k) coins.stop_coin.push_back(rng.chance(params.termination_prob));
    return coins;
}

std::pair<BinGrid, ChunkPlan> build_grid(const Rational& apx_value, int m,
                                         const MechanismParams& params) {
    params.validate();
    if (apx_value.sign() <= 0) throw InputError("build_grid needs a positive scale estimate");
    int e = 0;
    while (Rational::pow2(e) < apx_value) ++e;
    while (e > -62 && Rational::pow2(e - 1) >= apx_value) --e;
    BinGrid grid{Rational::pow2(e), m};
    ChunkPlan chunks{params.alpha, params.bins_per_chunk()};
    return {grid, chunks};
}

BinIndex bin_of(const Rational& q, const BinGrid& grid, int bin_count) {
    if (q.sign() < 0) throw InputError("bin_of needs q >= 0");
    if (q < grid.bin_price(1)) return {BinClass::BelowRange, 0};
    int k = 1;
    while (k < bin_count && grid.bin_price(k + 1) <= q) ++k;
    if (k == bin_count && grid.bin_price(bin_count + 1) <= q) return {BinClass::AboveRange, 0};
    return {BinClass::InRange, k};
}

MechanismOutcome run_mechanism(const Instance& instance, const MechanismParams& params,
                               const CoinRecord& coins) {
    instance.validate();
    params.validate();
    check_coins(instance, params, coins);

    MechanismOutcome outcome;
    outcome.transcript = json::array();
    outcome.transcript.push_back(json{{"step", "coins"}, {"coins", coins_json(coins)}});

    Bundle all_items = full_bundle(instance.m);

    // Grand-bundle branch: one second-price auction over everyone.
    if (coins.grand_bundle_coin) {
        std::vector<int> everyone;
        for (int i = 0; i < instance.n(); ++i) everyone.push_back(i);
        AuctionResult res = second_price_grand_bundle(instance, everyone);
        outcome.allocation = std::move(res.allocation);
        outcome.payments = std::move(res.payments);
        outcome.branch = BranchTag::GrandBundle;
        outcome.transcript.push_back(json{{"step", "grand_bundle"},
                                          {"allocation_delta", allocation_json(outcome.allocation)},
                                          {"payments", payments_json(outcome.payments)}});
        return outcome;
    }

    std::vector<int> stat, final_group;
    for (int i = 0; i < instance.n(); ++i) {
        if (coins.group_of[static_cast<size_t>(i)] == Group::Stat) stat.push_back(i);
        if (coins.group_of[static_cast<size_t>(i)] == Group::Final) final_group.push_back(i);
    }

    // Scale estimate from the STAT group; only its welfare is used.
    Allocation apx = greedy_allocation(instance, stat);
    outcome.apx_value = welfare(instance, apx);
    outcome.transcript.push_back(json{{"step", "apx"}, {"apx_value", outcome.apx_value.str()}});

    PriceVector guessed(static_cast<size_t>(instance.m));  // guessed prices start at 0

    if (outcome.apx_value.sign() > 0) {
        auto [grid, chunks] = build_grid(outcome.apx_value, instance.m, params);
        outcome.transcript.push_back(json{{"step", "grid"}, {"scale", grid.scale.str()}});

        // Chunk loop: per-chunk fixed-price auctions over UNIFORM in order pi.
        // Each chunk auction is a self-contained candidate outcome and starts
        // from the full item set.
        for (int k = 0; k < params.alpha; ++k) {
            Rational chunk_price = grid.bin_price(chunks.first_bin(k)) / Rational(2);
            PriceVector uniform_prices(static_cast<size_t>(instance.m), chunk_price);
            AuctionResult res = fixed_price_auction(instance, coins.pi, uniform_prices, all_items);
            outcome.transcript.push_back(
                json{{"step", "chunk_auction"},
                     {"chunk", k},
                     {"prices", rationals_json(uniform_prices)},
                     {"allocation_delta", allocation_json(res.allocation)},
                     {"payments", payments_json(res.payments)}});
            if (coins.stop_coin[static_cast<size_t>(k)]) {
                outcome.allocation = std::move(res.allocation);
                outcome.payments = std::move(res.payments);
                outcome.branch = BranchTag::ChunkStop;
                outcome.stopped_chunk = k;
                outcome.guessed_prices = std::move(guessed);
                outcome.transcript.push_back(json{{"step", "chunk_stop"}, {"chunk", k}});
                return outcome;
            }
            // Overwrite the price of every item allocated in this chunk
            // with half the price of the chunk's r-th smallest bin.
            Rational guess = grid.bin_price(chunks.first_bin(k) + coins.r - 1) / Rational(2);
            for (ItemId j : res.allocation.allocated_items())
                guessed[static_cast<size_t>(j)] = guess;
            outcome.transcript.push_back(json{{"step", "price_update"},
                                              {"chunk", k},
                                              {"prices", rationals_json(guessed)}});
        }
    } else {
        // Degenerate scale estimate: no grid exists; the final auction runs
        // with all-zero prices.
        outcome.transcript.push_back(json{{"step", "degenerate_scale"}});
    }

    // Final fixed-price auction over FINAL at the guessed prices.
    AuctionResult res = fixed_price_auction(instance, final_group, guessed, all_items);
    outcome.allocation = std::move(res.allocation);
    outcome.payments = std::move(res.payments);
    outcome.branch = BranchTag::FinalAuction;
    outcome.transcript.push_back(json{{"step", "final_auction"},
                                      {"prices", rationals_json(guessed)},
                                      {"allocation_delta", allocation_json(outcome.allocation)},
                                      {"payments", payments_json(outcome.payments)}});
    outcome.guessed_prices = std::move(guessed);
    return outcome;
}

Rational utility(const Instance& instance, int bidder, const MechanismOutcome& outcome) {
    if (bidder < 0 || bidder >= instance.n()) throw InputError("bidder index out of range");
    const Valuation& v = instance.bidders[static_cast<size_t>(bidder)];
    return v.value(outcome.allocation.bundles[static_cast<size_t>(bidder)]) -
           outcome.payments[static_cast<size_t>(bidder)];
}

}  // namespace mechlab
