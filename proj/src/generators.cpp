#include "mechlab/generators.hpp"

#include <cmath>

#include "mechlab/rng.hpp"

namespace mechlab {

namespace {

Rational uniform_value(Rng& rng, long long lo, long long hi) {
    return Rational(lo + static_cast<long long>(rng.below(static_cast<uint64_t>(hi - lo + 1))));
}

std::vector<Rational> random_weights(Rng& rng, int m, long long lo, long long hi) {
    std::vector<Rational> w;
    w.reserve(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) w.push_back(uniform_value(rng, lo, hi));
    return w;
}

}  // namespace

InstanceFamily parse_family(const std::string& name) {
    if (name == "diagonal") return InstanceFamily::Diagonal;
    if (name == "random_additive") return InstanceFamily::RandomAdditive;
    if (name == "random_xos") return InstanceFamily::RandomXos;
    if (name == "random_budget_additive") return InstanceFamily::RandomBudgetAdditive;
    if (name == "dominant") return InstanceFamily::Dominant;
    throw InputError("unknown instance family: " + name);
}

const char* family_name(InstanceFamily family) {
    switch (family) {
        case InstanceFamily::Diagonal: return "diagonal";
        case InstanceFamily::RandomAdditive: return "random_additive";
        case InstanceFamily::RandomXos: return "random_xos";
        case InstanceFamily::RandomBudgetAdditive: return "random_budget_additive";
        case InstanceFamily::Dominant: return "dominant";
    }
    return "?";
}

Instance generate(const GeneratorSpec& spec) {
    if (spec.n < 1 || spec.m < 1) throw InputError("generator needs n, m >= 1");
    if (spec.value_min < 0 || spec.value_max < spec.value_min)
        throw InputError("generator value range invalid");
    Rng rng(spec.seed);
    Instance inst;
    inst.m = spec.m;

    switch (spec.family) {
        case InstanceFamily::Diagonal: {
            if (spec.n != spec.m) throw InputError("diagonal family needs n = m");
            // Powers of two up to m.
            int levels = 1;
            while ((1LL << levels) <= spec.m) ++levels;
            for (int i = 0; i < spec.n; ++i) {
                std::vector<Rational> w(static_cast<size_t>(spec.m));
                w[static_cast<size_t>(i)] =
                    Rational(1LL << rng.below(static_cast<uint64_t>(levels)));
                inst.bidders.push_back(Valuation::additive(std::move(w)));
            }
            return inst;
        }
        case InstanceFamily::RandomAdditive: {
            for (int i = 0; i < spec.n; ++i)
                inst.bidders.push_back(Valuation::additive(
                    random_weights(rng, spec.m, spec.value_min, spec.value_max)));
            return inst;
        }
        case InstanceFamily::RandomXos: {
            if (spec.clause_count < 1) throw InputError("clause_count must be >= 1");
            for (int i = 0; i < spec.n; ++i) {
                std::vector<AdditiveClause> clauses;
                for (int r = 0; r < spec.clause_count; ++r)
                    clauses.push_back(AdditiveClause{
                        random_weights(rng, spec.m, spec.value_min, spec.value_max)});
                inst.bidders.push_back(Valuation::xos(std::move(clauses)));
            }
            return inst;
        }
        case InstanceFamily::RandomBudgetAdditive: {
            for (int i = 0; i < spec.n; ++i) {
                std::vector<Rational> w =
                    random_weights(rng, spec.m, spec.value_min, spec.value_max);
                Rational total;
                for (const Rational& x : w) total += x;
                long long hi = std::max<long long>(1, total.num() / total.den());
                Rational budget = uniform_value(rng, 1, hi);
                inst.bidders.push_back(Valuation::budget_additive(std::move(w), budget));
            }
            return inst;
        }
        case InstanceFamily::Dominant: {
            long long rest_total = 0;
            std::vector<std::vector<Rational>> rest;
            for (int i = 1; i < spec.n; ++i) {
                std::vector<Rational> w =
                    random_weights(rng, spec.m, std::max<long long>(1, spec.value_min),
                                   std::max<long long>(1, spec.value_max));
                for (const Rational& x : w) rest_total += x.num();
                rest.push_back(std::move(w));
            }
            // Bidder 0's grand-bundle value exceeds sqrt(log2 m) times the sum
            // of everyone else's, so it is dominant for any optimum.
            double root = std::sqrt(std::log2(std::max(2, spec.m)));
            long long factor = static_cast<long long>(std::ceil(root)) + 1;
            long long per_item = (factor * std::max<long long>(1, rest_total)) / spec.m + 1;
            std::vector<Rational> big(static_cast<size_t>(spec.m), Rational(per_item));
            inst.bidders.push_back(Valuation::additive(std::move(big)));
            for (auto& w : rest) inst.bidders.push_back(Valuation::additive(std::move(w)));
            return inst;
        }
    }
    throw std::logic_error("unknown instance family");
}

}  // namespace mechlab
