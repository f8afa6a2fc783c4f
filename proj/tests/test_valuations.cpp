#include "doctest.h"
#include "mechlab/generators.hpp"
#include "mechlab/rng.hpp"
#include "mechlab/valuation.hpp"

using namespace mechlab;

namespace {

Valuation adtv(std::vector<Rational> w) { return Valuation::additive(std::move(w)); }

Valuation ba(std::vector<Rational> w, Rational b) {
    return Valuation::budget_additive(std::move(w), b);
}

Valuation xos2(std::vector<Rational> c0, std::vector<Rational> c1) {
    return Valuation::xos({AdditiveClause{std::move(c0)}, AdditiveClause{std::move(c1)}});
}

Valuation random_valuation(Rng& rng, int m, int max_w) {
    switch (rng.below(3)) {
        case 0: {
            std::vector<Rational> w;
            for (int j = 0; j < m; ++j)
                w.push_back(Rational(static_cast<long long>(rng.below(max_w + 1))));
            return Valuation::additive(std::move(w));
        }
        case 1: {
            std::vector<Rational> w;
            Rational sum;
            for (int j = 0; j < m; ++j) {
                w.push_back(Rational(static_cast<long long>(rng.below(max_w + 1))));
                sum += w.back();
            }
            long long cap = std::max<long long>(1, sum.num());
            return Valuation::budget_additive(std::move(w),
                                              Rational(1 + static_cast<long long>(rng.below(cap))));
        }
        default: {
            std::vector<AdditiveClause> clauses;
            int t = 1 + static_cast<int>(rng.below(3));
            for (int r = 0; r < t; ++r) {
                std::vector<Rational> w;
                for (int j = 0; j < m; ++j)
                    w.push_back(Rational(static_cast<long long>(rng.below(max_w + 1))));
                clauses.push_back(AdditiveClause{std::move(w)});
            }
            return Valuation::xos(std::move(clauses));
        }
    }
}

PriceVector random_prices(Rng& rng, int m, int max_num, int den) {
    PriceVector p;
    for (int j = 0; j < m; ++j)
        p.push_back(Rational(static_cast<long long>(rng.below(max_num + 1)), den));
    return p;
}

Bundle random_bundle(Rng& rng, int m) {
    Bundle s;
    for (int j = 0; j < m; ++j)
        if (rng.below(2)) s.push_back(j);
    return s;
}

}  // namespace

TEST_CASE("value queries per family") {
    CHECK(adtv({3, 1}).value({0, 1}) == Rational(4));
    CHECK(ba({3, 3}, Rational(4)).value({0, 1}) == Rational(4));
    CHECK(xos2({2, 0}, {0, 3}).value({0, 1}) == Rational(3));
    CHECK(adtv({3, 1}).value({}) == Rational(0));
    CHECK_THROWS_AS(adtv({3, 1}).value({2}), InputError);
}

TEST_CASE("demand closed forms and tie rules") {
    CHECK(demand(adtv({3, 1}), {Rational(1), Rational(2)}) == Bundle{0});
    // symmetric clause tie resolved lexicographically
    CHECK(demand(xos2({2, 0}, {0, 2}), {Rational(1), Rational(1)}) == Bundle{0});
    // {0,1} matches the profit of {0} but has a larger price sum
    CHECK(demand(ba({3, 3}, Rational(4)), {Rational(1), Rational(1)}) == Bundle{0});
    // weight equal to price is excluded
    CHECK(demand(adtv({2, 5}), {Rational(2), Rational(1)}) == Bundle{1});
}

TEST_CASE("demand with all-zero prices on additive takes positive weights") {
    CHECK(demand(adtv({0, 2, 0, 1}), PriceVector(4)) == Bundle{1, 3});
}

TEST_CASE("demand_bruteforce spot checks") {
    CHECK(demand_bruteforce(xos2({5, 1}, {1, 5}), {Rational(2), Rational(2)}) == Bundle{0});
    // every nonempty bundle priced above the grand-bundle value
    CHECK(demand_bruteforce(adtv({3, 1}), {Rational(5), Rational(5)}) == Bundle{});
    CHECK_THROWS_AS(demand_bruteforce(adtv(std::vector<Rational>(21, Rational(1))),
                                      PriceVector(21)),
                    SizeError);
}

TEST_CASE("budget-additive grid DP examples") {
    CHECK(budget_additive_demand_dp(ba({3, 3}, Rational(4)), {1, 1}, Rational(1)) == Bundle{0});
    CHECK(budget_additive_demand_dp(ba({0, 0, 0}, Rational(5)), {2, 1, 3}, Rational(1)) ==
          Bundle{});
    // slack budget reduces to the additive rule
    CHECK(budget_additive_demand_dp(ba({5, 4, 3}, Rational(100)), {2, 3, 1}, Rational(1)) ==
          Bundle{0, 1, 2});
    CHECK_THROWS_AS(budget_additive_demand_dp(ba({1, 1}, Rational(2)), {1, 0}, Rational(1)),
                    InputError);
    CHECK_THROWS_AS(budget_additive_demand_dp(adtv({1, 1}), {1, 1}, Rational(1)), InputError);
}

TEST_CASE("demand matches bruteforce on random inputs, all families") {
    Rng rng(101);
    for (int c = 0; c < 300; ++c) {
        int m = 1 + static_cast<int>(rng.below(12));
        Valuation v = random_valuation(rng, m, 10);
        PriceVector p = random_prices(rng, m, 21, 2);
        Bundle a = demand(v, p);
        Bundle b = demand_bruteforce(v, p);
        REQUIRE(a == b);
        // profit of the demanded bundle is never negative
        Rational profit = v.value(a);
        for (ItemId j : a) profit -= p[static_cast<size_t>(j)];
        CHECK(profit.sign() >= 0);
    }
}

TEST_CASE("grid DP matches bruteforce on random grids") {
    Rng rng(202);
    for (int c = 0; c < 200; ++c) {
        int m = 1 + static_cast<int>(rng.below(12));
        std::vector<Rational> w;
        for (int j = 0; j < m; ++j) w.push_back(Rational(static_cast<long long>(rng.below(9))));
        Rational sum;
        for (const Rational& x : w) sum += x;
        Rational b(1 + static_cast<long long>(rng.below(std::max<long long>(1, sum.num()))));
        Valuation v = Valuation::budget_additive(w, b);
        Rational unit(1, 1 + static_cast<long long>(rng.below(3)));
        std::vector<long long> t;
        PriceVector p;
        for (int j = 0; j < m; ++j) {
            t.push_back(1 + static_cast<long long>(rng.below(8)));
            p.push_back(unit * Rational(t.back()));
        }
        REQUIRE(budget_additive_demand_dp(v, t, unit) == demand_bruteforce(v, p));
    }
}

TEST_CASE("monotonicity and the XOS max-clause identity") {
    Rng rng(303);
    for (int c = 0; c < 200; ++c) {
        int m = 1 + static_cast<int>(rng.below(8));
        Valuation v = random_valuation(rng, m, 7);
        Bundle big = random_bundle(rng, m);
        Bundle small;
        for (ItemId j : big)
            if (rng.below(2)) small.push_back(j);
        CHECK(v.value(small) <= v.value(big));
        CHECK(v.value({}) == Rational(0));
        if (v.kind() == ValuationKind::Xos) {
            Rational best;
            for (const AdditiveClause& cl : v.clauses()) {
                Rational s = cl.sum(big);
                CHECK(s <= v.value(big));
                best = std::max(best, s);
            }
            CHECK(best == v.value(big));
        }
    }
}

TEST_CASE("supporting price examples") {
    SupportingPriceMap q = supporting_prices(xos2({2, 0}, {0, 3}), {0, 1});
    REQUIRE(q.size() == 2);
    CHECK(q.at(0) == Rational(0));
    CHECK(q.at(1) == Rational(3));
    CHECK(supporting_prices(adtv({3, 1}), {}).empty());
    SupportingPriceMap single = supporting_prices(Valuation::xos({AdditiveClause{{1, 1}}}), {0, 1});
    CHECK(single.at(0) == Rational(1));
    CHECK(single.at(1) == Rational(1));
}

TEST_CASE("supporting prices sum to the value and witness subadditivity") {
    Rng rng(404);
    for (int c = 0; c < 200; ++c) {
        int m = 1 + static_cast<int>(rng.below(7));
        Valuation v = random_valuation(rng, m, 7);
        Bundle s = random_bundle(rng, m);
        SupportingPriceMap q = supporting_prices(v, s);
        Rational total;
        for (ItemId j : s) {
            REQUIRE(q.count(j) == 1);
            CHECK(q.at(j).sign() >= 0);
            total += q.at(j);
        }
        CHECK(q.size() == s.size());
        CHECK(total == v.value(s));
        // q restricted to any subset never exceeds that subset's value
        Bundle sub;
        for (ItemId j : s)
            if (rng.below(2)) sub.push_back(j);
        Rational sub_sum;
        for (ItemId j : sub) sub_sum += q.at(j);
        CHECK(sub_sum <= v.value(sub));
    }
}

TEST_CASE("to_xos conversions") {
    Valuation x = to_xos(adtv({3, 1}), 100);
    REQUIRE(x.kind() == ValuationKind::Xos);
    REQUIRE(x.clauses().size() == 1);
    CHECK(x.clauses()[0].weights == std::vector<Rational>{3, 1});

    // slack budget: the weights themselves form the single clause
    Valuation slack = to_xos(ba({2, 3}, Rational(10)), 100);
    REQUIRE(slack.clauses().size() == 1);
    CHECK(slack.clauses()[0].weights == std::vector<Rational>{2, 3});

    // binding budget: clause on {0,1} fills greedily to (3,1)
    SupportingPriceMap q = supporting_prices(ba({3, 3}, Rational(4)), {0, 1});
    CHECK(q.at(0) == Rational(3));
    CHECK(q.at(1) == Rational(1));

    // explicit expansion stays value-equivalent
    Valuation v = ba({3, 3, 2}, Rational(4));
    Valuation full = to_xos(v, 100);
    Rng rng(505);
    for (int c = 0; c < 30; ++c) {
        Bundle s = random_bundle(rng, 3);
        CHECK(full.value(s) == v.value(s));
    }
    CHECK_THROWS_AS(to_xos(ba(std::vector<Rational>(12, Rational(2)), Rational(3)), 100),
                    SizeError);
}
