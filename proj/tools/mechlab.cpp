// mechlab command-line driver: instance generation, mechanism runs, ratio
// evaluation, bound/truthfulness check suites, and transcript replay.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mechlab/analysis.hpp"
#include "mechlab/generators.hpp"
#include "mechlab/io.hpp"
#include "mechlab/rng.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace mechlab;

struct InstanceOptions {
    std::string instance_path;
    std::string family = "random_additive";
    int n = 4;
    int m = 6;
    long long value_min = 0;
    long long value_max = 8;
    int clauses = 3;
    uint64_t gen_seed = 1;
};

void add_instance_options(CLI::App* cmd, InstanceOptions& opts) {
    cmd->add_option("--instance", opts.instance_path, "Instance JSON file");
    cmd->add_option("--family", opts.family,
                    "Generator family (diagonal, random_additive, random_xos, "
                    "random_budget_additive, dominant)");
    cmd->add_option("--n", opts.n, "Number of bidders");
    cmd->add_option("--m", opts.m, "Number of items");
    cmd->add_option("--min", opts.value_min, "Minimum generated weight");
    cmd->add_option("--max", opts.value_max, "Maximum generated weight");
    cmd->add_option("--clauses", opts.clauses, "XOS clause count");
    cmd->add_option("--gen-seed", opts.gen_seed, "Generator seed");
}

GeneratorSpec to_spec(const InstanceOptions& opts) {
    GeneratorSpec spec;
    spec.family = parse_family(opts.family);
    spec.n = opts.n;
    spec.m = opts.m;
    spec.value_min = opts.value_min;
    spec.value_max = opts.value_max;
    spec.clause_count = opts.clauses;
    spec.seed = opts.gen_seed;
    return spec;
}

Instance load_instance(const InstanceOptions& opts) {
    if (!opts.instance_path.empty())
        return instance_from_json(json::parse(read_file(opts.instance_path)));
    return generate(to_spec(opts));
}

MechanismParams make_params(int m, int alpha, int bins) {
    MechanismParams params = MechanismParams::defaults(m);
    if (alpha > 0) {
        params.alpha = alpha;
        params.termination_prob = Rational(1, alpha);
        if (params.bin_count % alpha != 0)
            params.bin_count += alpha - params.bin_count % alpha;
    }
    if (bins > 0) params.bin_count = bins;
    params.validate();
    return params;
}

void emit(const std::string& out_path, const std::string& contents) {
    if (out_path.empty())
        std::cout << contents;
    else
        write_file(out_path, contents);
}

int cmd_gen(const InstanceOptions& opts, const std::string& out_path) {
    Instance inst = generate(to_spec(opts));
    emit(out_path, instance_to_json(inst).dump(2) + "\n");
    return 0;
}

int cmd_run(const InstanceOptions& opts, long long trials, uint64_t seed, int alpha, int bins,
            const std::string& coins_path, const std::string& save_coins_path,
            const std::string& transcripts_path, const std::string& out_path,
            const std::string& format) {
    Instance inst = load_instance(opts);
    MechanismParams params = make_params(inst.m, alpha, bins);

    std::optional<CoinRecord> replay_coins;
    if (!coins_path.empty()) {
        replay_coins = coins_from_json(json::parse(read_file(coins_path)));
        if (trials != 1) throw InputError("--coins replay requires --trials 1");
    }

    RatioReport report;
    report.trials = trials;
    report.opt = brute_force_opt(inst).second;
    Bundle grand = full_bundle(inst.m);
    for (const Valuation& v : inst.bidders)
        report.max_grand_value = std::max(report.max_grand_value, v.value(grand));

    json transcripts = json::array();
    Rational welfare_total;
    for (long long t = 0; t < trials; ++t) {
        uint64_t trial_seed = seed + static_cast<uint64_t>(t);
        CoinRecord coins =
            replay_coins ? *replay_coins : draw_coins(inst.n(), params, trial_seed);
        if (t == 0 && !save_coins_path.empty())
            write_file(save_coins_path, coins_to_json(coins).dump(2) + "\n");
        MechanismOutcome outcome = run_mechanism(inst, params, coins);
        Rational w = welfare(inst, outcome.allocation);
        welfare_total += w;
        ++report.branch_histogram[branch_name(outcome.branch)];
        report.rows.push_back(TrialRow{trial_seed, outcome.branch, w});
        if (!transcripts_path.empty()) transcripts.push_back(outcome.transcript);
    }
    report.mean_welfare = welfare_total / Rational(trials);
    report.ratio = report.opt.is_zero() ? 1.0 : (report.mean_welfare / report.opt).to_double();
    report.floor_ok = true;  // run does not gate on the floor; eval reports it

    if (!transcripts_path.empty()) write_file(transcripts_path, transcripts.dump(2) + "\n");
    if (format == "csv")
        emit(out_path, ratio_report_to_csv(report));
    else
        emit(out_path, ratio_report_to_json(report).dump(2) + "\n");
    return 0;
}

int cmd_eval(const InstanceOptions& opts, long long trials, uint64_t seed, int alpha, int bins,
             const std::string& out_path, const std::string& format) {
    Instance inst = load_instance(opts);
    MechanismParams params = make_params(inst.m, alpha, bins);
    RatioReport report = empirical_ratio(inst, params, trials, seed);
    if (format == "csv")
        emit(out_path, ratio_report_to_csv(report));
    else
        emit(out_path, ratio_report_to_json(report).dump(2) + "\n");
    return 0;
}

int cmd_replay(const InstanceOptions& opts, const std::string& coins_path, int alpha, int bins,
               const std::string& out_path) {
    Instance inst = load_instance(opts);
    MechanismParams params = make_params(inst.m, alpha, bins);
    CoinRecord coins = coins_from_json(json::parse(read_file(coins_path)));
    MechanismOutcome outcome = run_mechanism(inst, params, coins);
    emit(out_path, outcome.transcript.dump(2) + "\n");
    return 0;
}

int cmd_check(uint64_t seed, long long scale) {
    int deterministic_failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail,
                      bool deterministic) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail)
                  << "\n";
        if (!ok && deterministic) ++deterministic_failures;
    };

    Rng pick(seed);
    const char* families[] = {"random_additive", "random_xos", "random_budget_additive"};

    // Demand oracle equivalence per family.
    for (const char* fam : families) {
        bool ok = true;
        for (long long c = 0; c < 40 * scale && ok; ++c) {
            GeneratorSpec spec;
            spec.family = parse_family(fam);
            spec.n = 1;
            spec.m = 2 + static_cast<int>(pick.below(8));
            spec.value_max = 12;
            spec.seed = pick.next();
            Instance inst = generate(spec);
            PriceVector p(static_cast<size_t>(inst.m));
            for (auto& q : p) q = Rational(static_cast<long long>(pick.below(25)), 2);
            ok = demand(inst.bidders[0], p) == demand_bruteforce(inst.bidders[0], p);
        }
        report(std::string("demand_oracle_equivalence_") + fam, ok, "", true);
    }

    // Budget-additive grid DP against brute force.
    {
        bool ok = true;
        for (long long c = 0; c < 40 * scale && ok; ++c) {
            GeneratorSpec spec;
            spec.family = InstanceFamily::RandomBudgetAdditive;
            spec.n = 1;
            spec.m = 2 + static_cast<int>(pick.below(8));
            spec.value_max = 12;
            spec.seed = pick.next();
            Instance inst = generate(spec);
            std::vector<long long> t;
            PriceVector p;
            Rational unit(1, 2);
            for (int j = 0; j < inst.m; ++j) {
                t.push_back(1 + static_cast<long long>(pick.below(10)));
                p.push_back(unit * Rational(t.back()));
            }
            ok = budget_additive_demand_dp(inst.bidders[0], t, unit) ==
                 demand_bruteforce(inst.bidders[0], p);
        }
        report("budget_additive_dp_vs_bruteforce", ok, "", true);
    }

    // Fixed-price revenue bound, adversarial orders.
    {
        bool ok = true;
        for (long long c = 0; c < 30 * scale && ok; ++c) {
            GeneratorSpec spec;
            spec.family =
                parse_family(families[pick.below(3)]);
            spec.n = 2 + static_cast<int>(pick.below(4));
            spec.m = 2 + static_cast<int>(pick.below(6));
            spec.value_max = 10;
            spec.seed = pick.next();
            Instance inst = generate(spec);
            SupportedAllocation sa = random_supported_allocation(inst, pick.next());
            for (int reps = 0; reps < 3 && ok; ++reps) {
                std::vector<int> order;
                for (int i = 0; i < inst.n(); ++i) order.push_back(i);
                pick.shuffle(order);
                ok = check_revenue_bound(inst, sa, order).ok;
            }
        }
        report("fixed_price_revenue_bound", ok, "", true);
    }

    // Truthfulness and individual rationality.
    {
        bool truthful_ok = true;
        bool ir_ok = true;
        for (long long c = 0; c < 8 * scale; ++c) {
            GeneratorSpec spec;
            spec.family = parse_family(families[pick.below(3)]);
            spec.n = 2 + static_cast<int>(pick.below(4));
            spec.m = 2 + static_cast<int>(pick.below(5));
            spec.value_max = 8;
            spec.seed = pick.next();
            Instance inst = generate(spec);
            MechanismParams params = MechanismParams::defaults(inst.m);
            std::vector<uint64_t> seeds;
            for (int s = 0; s < 5; ++s) seeds.push_back(pick.next());
            DeviationReport rep =
                truthfulness_sweep(inst, params, default_deviations(), seeds);
            truthful_ok = truthful_ok && rep.violations.empty();
            ir_ok = ir_ok && rep.min_truthful_utility.sign() >= 0;
        }
        report("truthfulness_sweep", truthful_ok, "", true);
        report("individual_rationality", ir_ok, "", true);
    }

    // Statistical suites (reported with z-scores, never a hard failure).
    {
        std::vector<Rational> values(40, Rational(3));
        ConcentrationReport cr =
            check_sampling_concentration(values, Rational(1, 2), 4000 * scale, pick.next());
        std::ostringstream detail;
        detail << "failure=" << cr.empirical_failure << " bound=" << cr.bound
               << " stderr=" << cr.stderr_;
        report("sampling_concentration", cr.ok, detail.str(), false);
    }
    {
        bool ok = true;
        double worst_z = 1e18;
        for (long long c = 0; c < 5 * scale; ++c) {
            GeneratorSpec spec;
            spec.family = InstanceFamily::RandomAdditive;
            spec.n = 5;
            spec.m = 7;
            spec.value_max = 9;
            spec.seed = pick.next();
            Instance inst = generate(spec);
            SupportedAllocation sa = random_supported_allocation(inst, pick.next());
            RandomOrderBoundReport rep =
                check_random_order_bound(inst, sa, Rational(1, 2), 400 * scale, pick.next());
            ok = ok && rep.ok;
            if (rep.margin_stderr > 0)
                worst_z = std::min(worst_z, rep.margin_mean / rep.margin_stderr);
        }
        std::ostringstream detail;
        detail << "worst margin z-score=" << worst_z;
        report("random_order_welfare_bound", ok, detail.str(), false);
    }

    return deterministic_failures > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial-auction mechanism laboratory"};
    app.require_subcommand(1);

    InstanceOptions gen_opts, run_opts, eval_opts, replay_opts;
    std::string gen_out, run_out, eval_out, replay_out;
    std::string run_coins, run_save_coins, run_transcripts, replay_coins;
    std::string run_format = "json", eval_format = "json";
    long long run_trials = 1, eval_trials = 1000, check_scale = 1;
    uint64_t run_seed = 0, eval_seed = 0, check_seed = 0;
    int run_alpha = 0, run_bins = 0, eval_alpha = 0, eval_bins = 0, replay_alpha = 0,
        replay_bins = 0;

    CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
    add_instance_options(gen, gen_opts);
    gen->add_option("--out", gen_out, "Output file (default stdout)");

    CLI::App* run = app.add_subcommand("run", "Run seeded mechanism executions");
    add_instance_options(run, run_opts);
    run->add_option("--trials", run_trials, "Number of runs");
    run->add_option("--seed", run_seed, "Base seed (trial t uses seed+t)");
    run->add_option("--alpha", run_alpha, "Override chunk count");
    run->add_option("--bins", run_bins, "Override bin count");
    run->add_option("--coins", run_coins, "Replay a saved coin record (requires --trials 1)");
    run->add_option("--save-coins", run_save_coins, "Save the first trial's coins");
    run->add_option("--transcripts", run_transcripts, "Write per-trial transcripts");
    run->add_option("--out", run_out, "Report file (default stdout)");
    run->add_option("--format", run_format, "json or csv");

    CLI::App* eval = app.add_subcommand("eval", "Empirical approximation ratio");
    add_instance_options(eval, eval_opts);
    eval->add_option("--trials", eval_trials, "Number of runs");
    eval->add_option("--seed", eval_seed, "Base seed");
    eval->add_option("--alpha", eval_alpha, "Override chunk count");
    eval->add_option("--bins", eval_bins, "Override bin count");
    eval->add_option("--out", eval_out, "Report file (default stdout)");
    eval->add_option("--format", eval_format, "json or csv");

    CLI::App* check = app.add_subcommand("check", "Oracle, bound, and truthfulness suites");
    check->add_option("--seed", check_seed, "Suite seed");
    check->add_option("--scale", check_scale, "Workload multiplier");

    CLI::App* replay = app.add_subcommand("replay", "Re-run a saved coin record");
    add_instance_options(replay, replay_opts);
    replay->add_option("--coins", replay_coins, "Coin record file")->required();
    replay->add_option("--alpha", replay_alpha, "Override chunk count");
    replay->add_option("--bins", replay_bins, "Override bin count");
    replay->add_option("--out", replay_out, "Transcript file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_opts, gen_out);
        if (run->parsed())
            return cmd_run(run_opts, run_trials, run_seed, run_alpha, run_bins, run_coins,
                           run_save_coins, run_transcripts, run_out, run_format);
        if (eval->parsed())
            return cmd_eval(eval_opts, eval_trials, eval_seed, eval_alpha, eval_bins, eval_out,
                            eval_format);
        if (check->parsed()) return cmd_check(check_seed, check_scale);
        if (replay->parsed())
            return cmd_replay(replay_opts, replay_coins, replay_alpha, replay_bins, replay_out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
