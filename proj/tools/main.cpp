#include <charconv>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "paper_check.hpp"
#include "twoenv/analysis.hpp"
#include "twoenv/beliefs.hpp"
#include "twoenv/game.hpp"
#include "twoenv/money.hpp"
#include "twoenv/simulate.hpp"
#include "twoenv/strategies.hpp"

namespace {

using namespace twoenv;

// Exit codes: 0 success, 1 check failure, 2 usage or input validation error.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct SimulateArgs {
    std::string prior;
    std::string strategy;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string format = "text";
    std::string dump_path;
};

struct CompareArgs {
    std::string prior;
    std::string strategy_a = "always-switch";
    std::string strategy_b = "never-switch";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string format = "text";
    std::string dump_path;
};

// Shortest round-trip rendering; identical inputs give identical bytes.
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::ofstream open_dump(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open dump file '" + path + "'");
    return out;
}

int cmd_simulate(const SimulateArgs& args) {
    const SimConfig config{Prior::parse(args.prior), Strategy::parse(args.strategy), args.trials,
                           args.seed, args.workers};

    std::optional<std::ofstream> dump;
    TrialSink sink;
    if (!args.dump_path.empty()) {
        dump = open_dump(args.dump_path);
        *dump << trial_csv_header() << "\n";
        sink = [&dump](std::uint64_t i, const Trial& t) { *dump << trial_csv_row(i, t) << "\n"; };
    }

    const RunSummary summary = run(config, sink);
    if (dump && !*dump) throw std::runtime_error("failed writing dump file '" + args.dump_path + "'");

    if (args.format == "json") {
        std::cout << nlohmann::json(summary).dump(2) << "\n";
    } else if (args.format == "csv") {
        std::cout << run_summary_csv_header() << "\n" << run_summary_csv_row(summary) << "\n";
    } else {
        std::cout << "prior:                 " << config.prior.to_string() << "\n"
                  << "strategy:              " << config.strategy.to_string() << "\n"
                  << "trials:                " << summary.trials << "\n"
                  << "seed:                  " << args.seed << "\n"
                  << "mean payoff:           " << format_double(summary.mean_payoff) << " dollars\n"
                  << "sample variance:       " << format_double(summary.sample_variance) << "\n"
                  << "95% CI half-width:     " << format_double(summary.ci95_halfwidth) << "\n"
                  << "exact expected payoff: " << summary.exact_expected_payoff.display() << "\n"
                  << "mean switch gain:      " << format_double(summary.mean_switch_gain)
                  << " dollars\n";
    }
    return kExitOk;
}

int cmd_compare(const CompareArgs& args) {
    const Prior prior = Prior::parse(args.prior);
    const Strategy a = Strategy::parse(args.strategy_a);
    const Strategy b = Strategy::parse(args.strategy_b);

    std::optional<std::ofstream> dump;
    CompareTrialSink sink;
    if (!args.dump_path.empty()) {
        dump = open_dump(args.dump_path);
        *dump << compare_trial_csv_header() << "\n";
        sink = [&dump](std::uint64_t i, const Trial& ta, const Trial& tb) {
            *dump << compare_trial_csv_row(i, ta, tb) << "\n";
        };
    }

    const CompareSummary summary = compare(prior, a, b, args.trials, args.seed, args.workers, sink);
    if (dump && !*dump) throw std::runtime_error("failed writing dump file '" + args.dump_path + "'");

    if (args.format == "json") {
        std::cout << nlohmann::json(summary).dump(2) << "\n";
    } else if (args.format == "csv") {
        std::cout << compare_summary_csv_header() << "\n"
                  << compare_summary_csv_row(summary) << "\n";
    } else {
        std::cout << "prior:                      " << prior.to_string() << "\n"
                  << "strategy a:                 " << a.to_string() << "\n"
                  << "strategy b:                 " << b.to_string() << "\n"
                  << "trials:                     " << summary.trials << "\n"
                  << "seed:                       " << args.seed << "\n"
                  << "mean difference (a - b):    " << format_double(summary.mean_difference)
                  << " dollars\n"
                  << "sample variance:            " << format_double(summary.sample_variance) << "\n"
                  << "95% CI half-width:          " << format_double(summary.ci95_halfwidth) << "\n"
                  << "exact expected difference:  " << summary.exact_expected_difference.display()
                  << "\n";
    }
    return kExitOk;
}

int cmd_exact(const std::string& prior_text, const std::string& strategy_text) {
    const Prior prior = Prior::parse(prior_text);
    const Strategy strategy = Strategy::parse(strategy_text);
    const Money ev = exact_expected_payoff(prior, strategy);
    std::cout << "exact expected payoff: " << ev.display() << "\n";
    return kExitOk;
}

int cmd_asymmetry(const std::string& smaller_dollars) {
    const EnvelopePair pair(Money::parse_dollars(smaller_dollars));
    std::cout << "pair: smaller " << pair.smaller().display() << ", larger "
              << pair.larger().display() << "\n\n";
    std::cout << "held     observed      believed other   actual other   error\n";
    for (Role held : {Role::Smaller, Role::Larger}) {
        const Money seen = observed(pair, held);
        const Money believed = naive_switch_ev(seen);
        const Money actual = observed(pair, other(held));
        const GainDelta err = estimation_error(pair, held);
        std::cout << std::left << std::setw(9) << to_string(held) << std::setw(14)
                  << seen.display() << std::setw(17) << believed.display() << std::setw(15)
                  << actual.display() << err.display() << "\n";
    }
    const GainDelta err_small = estimation_error(pair, Role::Smaller);
    const GainDelta err_large = estimation_error(pair, Role::Larger);
    std::cout << "\n|error(larger)| / |error(smaller)| = "
              << fraction_string(Rational(abs(err_large).cents() / abs(err_small).cents())) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two Envelope Paradox toolkit: exact expectation analysis and seeded simulation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read default flag values from an INI file");

    CLI::App* paper = app.add_subcommand(
        "paper-check", "Verify the full chain of exact identities; exit 0 only if all hold");

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo run with exact oracle");
    simulate->add_option("--prior", sim.prior,
                         "point:<dollars> | uniform:<d1>,<d2>,... | table:<d1>=<p1>,...")
        ->required();
    simulate->add_option("--strategy", sim.strategy,
                         "always-switch | never-switch | random:<p> | naive-bayesian")
        ->required();
    simulate->add_option("--trials", sim.trials, "Number of trials (>= 1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed, "64-bit stream seed")->capture_default_str();
    simulate->add_option("--workers", sim.workers, "Worker threads (never changes results)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--format", sim.format,
                         "Output format; csv columns: trials,mean_payoff,sample_variance,"
                         "ci95_halfwidth,exact_expected_payoff,mean_switch_gain")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    simulate->add_option("--dump-trials", sim.dump_path,
                         "Write per-trial CSV (trial_index,base,held,observed,decision,payoff)");

    CompareArgs cmp;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "Paired strategy comparison on common random numbers");
    compare_cmd->add_option("--prior", cmp.prior,
                            "point:<dollars> | uniform:<d1>,<d2>,... | table:<d1>=<p1>,...")
        ->required();
    compare_cmd->add_option("--strategy-a", cmp.strategy_a, "First strategy")->capture_default_str();
    compare_cmd->add_option("--strategy-b", cmp.strategy_b, "Second strategy")->capture_default_str();
    compare_cmd->add_option("--trials", cmp.trials, "Number of trials (>= 1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare_cmd->add_option("--seed", cmp.seed, "64-bit stream seed")->capture_default_str();
    compare_cmd->add_option("--workers", cmp.workers, "Worker threads (never changes results)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare_cmd->add_option("--format", cmp.format,
                            "Output format; csv columns: trials,mean_difference,sample_variance,"
                            "ci95_halfwidth,exact_expected_difference")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    compare_cmd->add_option(
        "--dump-trials", cmp.dump_path,
        "Write per-trial CSV (trial_index,base,held,observed,decision_a,payoff_a,decision_b,payoff_b)");

    std::string exact_prior;
    std::string exact_strategy;
    CLI::App* exact_cmd =
        app.add_subcommand("exact", "Exact expected payoff by full enumeration");
    exact_cmd->add_option("--prior", exact_prior, "Prior over the smaller amount")->required();
    exact_cmd->add_option("--strategy", exact_strategy, "Decision rule")->required();

    std::string pair_dollars;
    CLI::App* asymmetry_cmd =
        app.add_subcommand("asymmetry", "Estimation-error table for a concrete pair");
    asymmetry_cmd->add_option("--pair", pair_dollars, "Dollars in the smaller envelope")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (paper->parsed()) return twoenv::cli::run_paper_check(std::cout) == 0 ? kExitOk : kExitCheckFailed;
        if (simulate->parsed()) return cmd_simulate(sim);
        if (compare_cmd->parsed()) return cmd_compare(cmp);
        if (exact_cmd->parsed()) return cmd_exact(exact_prior, exact_strategy);
        if (asymmetry_cmd->parsed()) return cmd_asymmetry(pair_dollars);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
