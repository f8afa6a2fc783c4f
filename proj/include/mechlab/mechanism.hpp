#pragma once

#include <cstdint>
#include <utility>

#include "json.hpp"
#include "mechlab/auction.hpp"

namespace mechlab {

struct MechanismParams {
    int alpha = 1;                  // number of chunks
    int bin_count = 1;              // multiple of alpha
    Rational grand_bundle_prob{1, 2};
    Rational termination_prob{1, 1};  // per-chunk stop probability, default 1/alpha

    /// alpha = ceil(sqrt(log2 m)), bin_count = 4*ceil(log2 m) rounded up to a
    /// multiple of alpha (integer variants of sqrt(log m) and 4 log m).
    static MechanismParams defaults(int m);

    int bins_per_chunk() const { return bin_count / alpha; }
    void validate() const;
};

enum class Group { Stat, Uniform, Final };

/// Every random draw of one mechanism run, fixed before any valuation is
/// queried. The replay key: (instance, params, CoinRecord) fully determines
/// the outcome.
struct CoinRecord {
    bool grand_bundle_coin = false;
    std::vector<Group> group_of;
    std::vector<int> pi;          // order over UNIFORM bidders
    int r = 1;                    // uniform in [1, bin_count/alpha]
    std::vector<bool> stop_coin;  // one per chunk

    friend bool operator==(const CoinRecord&, const CoinRecord&) = default;
};

/// Draws all coins in a fixed documented order: grand-bundle coin, group of
/// each bidder, the UNIFORM order, r, then the per-chunk stop coins.
CoinRecord draw_coins(int n, const MechanismParams& params, uint64_t seed);

/// Geometric price grid anchored at the scale estimate: bin k has price
/// 2^k * scale / m^2, scale = |APX| rounded up to a power of two.
struct BinGrid {
    Rational scale;
    int m = 1;

    Rational bin_price(int k) const {
        return Rational::pow2(k) * scale / Rational(static_cast<long long>(m) * m);
    }
};

enum class BinClass { InRange, BelowRange, AboveRange };

struct BinIndex {
    BinClass cls;
    int k;  // valid when cls == InRange
};

/// Largest k in [1, bin_count] with bin_price(k) <= q, with explicit
/// out-of-range markers.
BinIndex bin_of(const Rational& q, const BinGrid& grid, int bin_count);

/// Chunk c (0-based) covers bins [c*bins_per_chunk + 1, (c+1)*bins_per_chunk].
struct ChunkPlan {
    int alpha = 1;
    int bins_per_chunk = 1;

    int first_bin(int chunk) const { return chunk * bins_per_chunk + 1; }
    int last_bin(int chunk) const { return (chunk + 1) * bins_per_chunk; }
};

std::pair<BinGrid, ChunkPlan> build_grid(const Rational& apx_value, int m,
                                         const MechanismParams& params);

enum class BranchTag { GrandBundle, ChunkStop, FinalAuction };

struct MechanismOutcome {
    Allocation allocation;
    std::vector<Rational> payments;
    BranchTag branch = BranchTag::FinalAuction;
    int stopped_chunk = -1;  // valid when branch == ChunkStop
    Rational apx_value;
    PriceVector guessed_prices;        // state of the guessed prices at the end
    nlohmann::ordered_json transcript;  // ordered event list
};

/// The full mechanism run as a pure function of (instance, params, coins).
MechanismOutcome run_mechanism(const Instance& instance, const MechanismParams& params,
                               const CoinRecord& coins);

/// v_i(allocated bundle) - payment, measured with the given instance's
/// (true) valuation.
Rational utility(const Instance& instance, int bidder, const MechanismOutcome& outcome);

const char* branch_name(BranchTag tag);
const char* group_name(Group g);

}  // namespace mechlab
