#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <json.hpp>

#include "twoenv/game.hpp"
#include "twoenv/money.hpp"
#include "twoenv/strategies.hpp"

namespace twoenv {

struct SimConfig {
    Prior prior;
    Strategy strategy;
    std::uint64_t trials = 1;  // >= 1
    std::uint64_t seed = 0;
    unsigned workers = 1;  // >= 1; never affects results, only wall time
};

/// Monte Carlo statistics plus the matching ground truth. The decimal
/// fields are dollars and use floating point — they summarize samples; every
/// ground-truth comparison goes through the exact oracle instead.
struct RunSummary {
    std::uint64_t trials = 0;
    double mean_payoff = 0.0;
    double sample_variance = 0.0;
    /// Normal-approximation 95% CI half-width, 1.96·s/√n (approximate).
    double ci95_halfwidth = 0.0;
    /// Enumeration-oracle value for the same (prior, strategy); computed
    /// independently of the sampled trials.
    Money exact_expected_payoff;
    /// Mean over trials of (other envelope − held envelope), regardless of
    /// the decision actually taken.
    double mean_switch_gain = 0.0;

    bool operator==(const RunSummary&) const = default;
};

/// Exact per-trial payoff moments from the same enumeration as
/// exact_expected_payoff; variance backs the 4σ Monte Carlo checks.
struct ExactMoments {
    Rational mean_cents;
    Rational variance_cents_sq;
};

/// Paired-difference summary from running two strategies on identical trial
/// streams (common random numbers). Positive means `a` paid more.
struct CompareSummary {
    std::uint64_t trials = 0;
    double mean_difference = 0.0;  // dollars
    double sample_variance = 0.0;
    double ci95_halfwidth = 0.0;
    GainDelta exact_expected_difference;

    bool operator==(const CompareSummary&) const = default;
};

/// Ground truth by full enumeration: sums q(base) · 1/2 · P(decision) ·
/// payoff over the whole (base, role, decision) outcome space with exact
/// rationals. No sampling, no approximation.
Money exact_expected_payoff(const Prior& prior, const Strategy& strategy);

ExactMoments exact_payoff_moments(const Prior& prior, const Strategy& strategy);

using TrialSink = std::function<void(std::uint64_t trial_index, const Trial&)>;

/// Runs config.trials independent rounds (deal → choose → observe → decide
/// → resolve). Trial i draws from trial_stream(seed, i), so the result is a
/// pure function of (prior, strategy, trials, seed): bit-identical across
/// worker counts and repeated runs.
///
/// When a sink is supplied, trials are additionally delivered in index
/// order; the run then executes sequentially, which cannot change results.
RunSummary run(const SimConfig& config, const TrialSink& sink = {});

using CompareTrialSink =
    std::function<void(std::uint64_t trial_index, const Trial& a, const Trial& b)>;

/// Evaluates both strategies on identical deals and envelope choices; a
/// randomized decision in either strategy reads the same third draw of the
/// trial stream.
CompareSummary compare(const Prior& prior, const Strategy& a, const Strategy& b,
                       std::uint64_t trials, std::uint64_t seed, unsigned workers = 1,
                       const CompareTrialSink& sink = {});

void to_json(nlohmann::json& j, const RunSummary& s);
void to_json(nlohmann::json& j, const CompareSummary& s);

// One header line + one row per summary. Money renders via display();
// decimal fields render with max round-trip precision.
std::string run_summary_csv_header();
std::string run_summary_csv_row(const RunSummary& s);
std::string compare_summary_csv_header();
std::string compare_summary_csv_row(const CompareSummary& s);

// Per-trial dump rows (the --dump-trials format).
std::string trial_csv_header();
std::string trial_csv_row(std::uint64_t trial_index, const Trial& t);
std::string compare_trial_csv_header();
std::string compare_trial_csv_row(std::uint64_t trial_index, const Trial& a, const Trial& b);

}  // namespace twoenv
