#include "mechlab/io.hpp"

#include <fstream>
#include <sstream>

namespace mechlab {

using json = nlohmann::ordered_json;

json rational_to_json(const Rational& q) {
    if (q.den() == 1) return json(q.num());
    return json(q.str());
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw InputError("expected an integer or \"num/den\" string");
}

namespace {

json weights_to_json(const std::vector<Rational>& w) {
    json arr = json::array();
    for (const Rational& x : w) arr.push_back(rational_to_json(x));
    return arr;
}

std::vector<Rational> weights_from_json(const json& j) {
    std::vector<Rational> w;
    for (const auto& x : j) w.push_back(rational_from_json(x));
    return w;
}

}  // namespace

json instance_to_json(const Instance& instance) {
    json bidders = json::array();
    for (const Valuation& v : instance.bidders) {
        json b;
        switch (v.kind()) {
            case ValuationKind::Additive:
                b["kind"] = "additive";
                b["weights"] = weights_to_json(v.weights());
                break;
            case ValuationKind::BudgetAdditive:
                b["kind"] = "budget_additive";
                b["weights"] = weights_to_json(v.weights());
                b["budget"] = rational_to_json(v.budget());
                break;
            case ValuationKind::Xos: {
                b["kind"] = "xos";
                json clauses = json::array();
                for (const AdditiveClause& c : v.clauses()) clauses.push_back(weights_to_json(c.weights));
                b["clauses"] = clauses;
                break;
            }
        }
        bidders.push_back(std::move(b));
    }
    return json{{"m", instance.m}, {"bidders", bidders}};
}

Instance instance_from_json(const json& j) {
    Instance inst;
    inst.m = j.at("m").get<int>();
    for (const auto& b : j.at("bidders")) {
        std::string kind = b.at("kind").get<std::string>();
        if (kind == "additive") {
            inst.bidders.push_back(Valuation::additive(weights_from_json(b.at("weights"))));
        } else if (kind == "budget_additive") {
            inst.bidders.push_back(Valuation::budget_additive(
                weights_from_json(b.at("weights")), rational_from_json(b.at("budget"))));
        } else if (kind == "xos") {
            std::vector<AdditiveClause> clauses;
            for (const auto& c : b.at("clauses"))
                clauses.push_back(AdditiveClause{weights_from_json(c)});
            inst.bidders.push_back(Valuation::xos(std::move(clauses)));
        } else {
            throw InputError("unknown valuation kind: " + kind);
        }
    }
    inst.validate();
    return inst;
}

json coins_to_json(const CoinRecord& coins) {
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

CoinRecord coins_from_json(const json& j) {
    CoinRecord coins;
    coins.grand_bundle_coin = j.at("grand_bundle_coin").get<int>() != 0;
    for (const auto& g : j.at("groups")) {
        std::string name = g.get<std::string>();
        if (name == "stat") coins.group_of.push_back(Group::Stat);
        else if (name == "uniform") coins.group_of.push_back(Group::Uniform);
        else if (name == "final") coins.group_of.push_back(Group::Final);
        else throw InputError("unknown group: " + name);
    }
    coins.pi = j.at("pi").get<std::vector<int>>();
    coins.r = j.at("r").get<int>();
    for (const auto& s : j.at("stop_coins")) coins.stop_coin.push_back(s.get<int>() != 0);
    return coins;
}

json ratio_report_to_json(const RatioReport& report) {
    json hist;
    for (const auto& [branch, count] : report.branch_histogram) hist[branch] = count;
    return json{{"opt", rational_to_json(report.opt)},
                {"mean_welfare", rational_to_json(report.mean_welfare)},
                {"trials", report.trials},
                {"branch_histogram", hist},
                {"ratio", report.ratio},
                {"welfare_stderr", report.welfare_stderr},
                {"max_grand_value", rational_to_json(report.max_grand_value)},
                {"floor_ok", report.floor_ok}};
}

std::string ratio_report_to_csv(const RatioReport& report) {
    std::ostringstream out;
    out << "seed,branch,welfare_num,welfare_den,opt,ratio\n";
    for (const TrialRow& row : report.rows) {
        double trial_ratio = report.opt.is_zero()
                                 ? 1.0
                                 : (row.trial_welfare / report.opt).to_double();
        out << row.seed << ',' << branch_name(row.branch) << ',' << row.trial_welfare.num() << ','
            << row.trial_welfare.den() << ',' << report.opt.str() << ',' << trial_ratio << '\n';
    }
    return out.str();
}

json deviation_report_to_json(const DeviationReport& report) {
    json violations = json::array();
    for (const DeviationViolation& v : report.violations)
        violations.push_back(json{{"seed", v.seed},
                                  {"bidder", v.bidder},
                                  {"deviation", v.deviation},
                                  {"truthful_utility", v.truthful_utility.str()},
                                  {"deviant_utility", v.deviant_utility.str()}});
    return json{{"comparisons", report.comparisons},
                {"min_truthful_utility", report.min_truthful_utility.str()},
                {"violations", violations}};
}

std::string deviation_report_to_csv(const DeviationReport& report) {
    std::ostringstream out;
    out << "seed,bidder,deviation,truthful_utility,deviant_utility\n";
    for (const DeviationViolation& v : report.violations)
        out << v.seed << ',' << v.bidder << ',' << v.deviation << ',' << v.truthful_utility.str()
            << ',' << v.deviant_utility.str() << '\n';
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << contents;
}

}  // namespace mechlab
