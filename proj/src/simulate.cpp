#include "twoenv/simulate.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <thread>
#include <vector>

namespace twoenv {

namespace {

// Per-prior lookup tables so the sampling loop touches no rational
// arithmetic: everything a trial can produce is enumerated up front.
struct OutcomeTable {
    std::vector<Money> observed_by_role;    // [base*2 + role]
    std::vector<Rational> payoff_cents;     // [(base*2 + role)*2 + decision]
    std::vector<Rational> switch_gain_cents;  // [base*2 + role]

    explicit OutcomeTable(const Prior& prior) {
        const std::size_t n = prior.size();
        observed_by_role.reserve(n * 2);
        payoff_cents.reserve(n * 4);
        switch_gain_cents.reserve(n * 2);
        for (const Prior::Entry& e : prior.entries()) {
            const EnvelopePair pair(e.base);
            for (Role role : {Role::Smaller, Role::Larger}) {
                observed_by_role.push_back(observed(pair, role));
                payoff_cents.push_back(resolve(pair, role, Decision::Stay).cents());
                payoff_cents.push_back(resolve(pair, role, Decision::Switch).cents());
                switch_gain_cents.push_back(
                    Rational(resolve(pair, role, Decision::Switch).cents() -
                             resolve(pair, role, Decision::Stay).cents()));
            }
        }
    }

    static std::size_t role_index(std::size_t base, Role r) {
        return base * 2 + (r == Role::Larger ? 1 : 0);
    }
    static std::size_t cell_index(std::size_t base, Role r, Decision d) {
        return role_index(base, r) * 2 + (d == Decision::Switch ? 1 : 0);
    }
};

// Decisions of a deterministic strategy depend only on the observed amount,
// so they are resolved once per (base, role) instead of once per trial.
struct DecisionPlan {
    bool deterministic;
    std::vector<Decision> fixed;  // [base*2 + role], deterministic only

    DecisionPlan(const Strategy& strategy, const OutcomeTable& table)
        : deterministic(strategy.is_deterministic()) {
        if (!deterministic) return;
        SplitMix64 unused{0};
        fixed.reserve(table.observed_by_role.size());
        for (const Money& obs : table.observed_by_role) {
            fixed.push_back(decide(strategy, obs, unused));
        }
    }
};

// Splits [0, trials) into per-worker contiguous ranges. Counters are plain
// integers, so merge order cannot affect any result.
template <typename PerTrial>
void for_each_trial_parallel(std::uint64_t trials, unsigned workers, const PerTrial& body) {
    if (workers <= 1 || trials < 2) {
        body(0, trials, 0);
        return;
    }
    const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
    std::vector<std::thread> threads;
    threads.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        const std::uint64_t begin = trials / n * w + std::min<std::uint64_t>(w, trials % n);
        const std::uint64_t end = begin + trials / n + (w < trials % n ? 1 : 0);
        threads.emplace_back([&, begin, end, w] { body(begin, end, w); });
    }
    for (std::thread& t : threads) t.join();
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double to_dollars(const Rational& cents) {
    return Rational(cents / 100).convert_to<double>();
}

double to_dollars_squared(const Rational& cents_sq) {
    return Rational(cents_sq / 10000).convert_to<double>();
}

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;
    double ci95 = 0.0;
};

// Exact rational mean/variance from outcome counts, converted to floating
// point dollars only at the very end.
SampleStats stats_from_counts(const std::vector<std::uint64_t>& counts,
                              const std::vector<Rational>& values_cents, std::uint64_t n) {
    Rational sum = 0;
    Rational sum_sq = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        const Rational& v = values_cents[i];
        sum += v * counts[i];
        sum_sq += v * v * counts[i];
    }
    const Rational mean_cents = sum / n;
    Rational var_cents_sq = 0;
    if (n > 1) var_cents_sq = (sum_sq - mean_cents * mean_cents * n) / (n - 1);

    SampleStats s;
    s.mean = to_dollars(mean_cents);
    s.variance = to_dollars_squared(var_cents_sq);
    s.ci95 = 1.96 * std::sqrt(s.variance / static_cast<double>(n));
    return s;
}

}  // namespace

Money exact_expected_payoff(const Prior& prior, const Strategy& strategy) {
    Rational total = 0;
    const Rational half(1, 2);
    for (const Prior::Entry& e : prior.entries()) {
        const EnvelopePair pair(e.base);
        for (Role role : {Role::Smaller, Role::Larger}) {
            const Rational p_switch = strategy.switch_probability_for(observed(pair, role));
            total += e.prob * half *
                     (p_switch * resolve(pair, role, Decision::Switch).cents() +
                      (1 - p_switch) * resolve(pair, role, Decision::Stay).cents());
        }
    }
    return Money(total);
}

ExactMoments exact_payoff_moments(const Prior& prior, const Strategy& strategy) {
    Rational first = 0;
    Rational second = 0;
    const Rational half(1, 2);
    for (const Prior::Entry& e : prior.entries()) {
        const EnvelopePair pair(e.base);
        for (Role role : {Role::Smaller, Role::Larger}) {
            const Rational p_switch = strategy.switch_probability_for(observed(pair, role));
            const Rational stay = resolve(pair, role, Decision::Stay).cents();
            const Rational sw = resolve(pair, role, Decision::Switch).cents();
            first += e.prob * half * (p_switch * sw + (1 - p_switch) * stay);
            second += e.prob * half * (p_switch * sw * sw + (1 - p_switch) * stay * stay);
        }
    }
    ExactMoments m;
    m.mean_cents = first;
    m.variance_cents_sq = second - first * first;
    return m;
}

RunSummary run(const SimConfig& config, const TrialSink& sink) {
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (config.workers < 1) throw std::invalid_argument("workers must be at least 1");

    const Prior& prior = config.prior;
    const OutcomeTable table(prior);
    const DecisionPlan plan(config.strategy, table);

    const std::size_t cell_count = prior.size() * 4;
    std::vector<std::vector<std::uint64_t>> worker_counts(
        config.workers, std::vector<std::uint64_t>(cell_count, 0));

    const auto run_range = [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
        std::vector<std::uint64_t>& counts = worker_counts[worker];
        for (std::uint64_t i = begin; i < end; ++i) {
            SplitMix64 stream = trial_stream(config.seed, i);
            const std::size_t base = prior.sample_index(stream.next());
            const Role held = choose(stream);
            const std::size_t role_idx = OutcomeTable::role_index(base, held);
            const Decision d = plan.deterministic
                                   ? plan.fixed[role_idx]
                                   : decide(config.strategy, table.observed_by_role[role_idx], stream);
            ++counts[role_idx * 2 + (d == Decision::Switch ? 1 : 0)];
            if (sink) {
                const EnvelopePair pair(prior.entries()[base].base);
                sink(i, Trial{pair, held, observed(pair, held), d, resolve(pair, held, d)});
            }
        }
    };

    // A sink needs trials delivered in index order; determinism makes the
    // sequential result identical to any parallel one.
    for_each_trial_parallel(config.trials, sink ? 1 : config.workers, run_range);

    std::vector<std::uint64_t> counts(cell_count, 0);
    for (const std::vector<std::uint64_t>& w : worker_counts) {
        for (std::size_t i = 0; i < cell_count; ++i) counts[i] += w[i];
    }

    const SampleStats stats = stats_from_counts(counts, table.payoff_cents, config.trials);

    Rational gain_sum = 0;
    for (std::size_t role_idx = 0; role_idx < prior.size() * 2; ++role_idx) {
        const std::uint64_t c = counts[role_idx * 2] + counts[role_idx * 2 + 1];
        if (c != 0) gain_sum += table.switch_gain_cents[role_idx] * c;
    }

    RunSummary summary;
    summary.trials = config.trials;
    summary.mean_payoff = stats.mean;
    summary.sample_variance = stats.variance;
    summary.ci95_halfwidth = stats.ci95;
    summary.exact_expected_payoff = exact_expected_payoff(prior, config.strategy);
    summary.mean_switch_gain = to_dollars(Rational(gain_sum / config.trials));
    return summary;
}

CompareSummary compare(const Prior& prior, const Strategy& a, const Strategy& b,
                       std::uint64_t trials, std::uint64_t seed, unsigned workers,
                       const CompareTrialSink& sink) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");

    const OutcomeTable table(prior);
    const DecisionPlan plan_a(a, table);
    const DecisionPlan plan_b(b, table);

    // Joint cells: (base, role, decision_a, decision_b).
    const std::size_t cell_count = prior.size() * 8;
    std::vector<std::vector<std::uint64_t>> worker_counts(
        workers, std::vector<std::uint64_t>(cell_count, 0));

    const auto run_range = [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
        std::vector<std::uint64_t>& counts = worker_counts[worker];
        for (std::uint64_t i = begin; i < end; ++i) {
            SplitMix64 stream = trial_stream(seed, i);
            const std::size_t base = prior.sample_index(stream.next());
            const Role held = choose(stream);
            const std::size_t role_idx = OutcomeTable::role_index(base, held);
            // Both strategies read the same post-choice stream state, so a
            // randomized decision on either side sees the same draw.
            Decision da;
            Decision db;
            if (plan_a.deterministic) {
                da = plan_a.fixed[role_idx];
            } else {
                SplitMix64 sa = stream;
                da = decide(a, table.observed_by_role[role_idx], sa);
            }
            if (plan_b.deterministic) {
                db = plan_b.fixed[role_idx];
            } else {
                SplitMix64 sb = stream;
                db = decide(b, table.observed_by_role[role_idx], sb);
            }
            ++counts[role_idx * 4 + (da == Decision::Switch ? 2 : 0) +
                     (db == Decision::Switch ? 1 : 0)];
            if (sink) {
                const EnvelopePair pair(prior.entries()[base].base);
                const Money seen = observed(pair, held);
                sink(i, Trial{pair, held, seen, da, resolve(pair, held, da)},
                     Trial{pair, held, seen, db, resolve(pair, held, db)});
            }
        }
    };

    for_each_trial_parallel(trials, sink ? 1 : workers, run_range);

    std::vector<std::uint64_t> counts(cell_count, 0);
    for (const std::vector<std::uint64_t>& w : worker_counts) {
        for (std::size_t i = 0; i < cell_count; ++i) counts[i] += w[i];
    }

    std::vector<Rational> diff_cents(cell_count, Rational(0));
    for (std::size_t role_idx = 0; role_idx < prior.size() * 2; ++role_idx) {
        for (int da = 0; da < 2; ++da) {
            for (int db = 0; db < 2; ++db) {
                diff_cents[role_idx * 4 + da * 2 + db] =
                    table.payoff_cents[role_idx * 2 + da] - table.payoff_cents[role_idx * 2 + db];
            }
        }
    }
    const SampleStats stats = stats_from_counts(counts, diff_cents, trials);

    CompareSummary summary;
    summary.trials = trials;
    summary.mean_difference = stats.mean;
    summary.sample_variance = stats.variance;
    summary.ci95_halfwidth = stats.ci95;
    summary.exact_expected_difference =
        delta(exact_expected_payoff(prior, b), exact_expected_payoff(prior, a));
    return summary;
}

void to_json(nlohmann::json& j, const RunSummary& s) {
    j = nlohmann::json{{"trials", s.trials},
                       {"mean_payoff", s.mean_payoff},
                       {"sample_variance", s.sample_variance},
                       {"ci95_halfwidth", s.ci95_halfwidth},
                       {"exact_expected_payoff", s.exact_expected_payoff},
                       {"mean_switch_gain", s.mean_switch_gain}};
}

void to_json(nlohmann::json& j, const CompareSummary& s) {
    j = nlohmann::json{{"trials", s.trials},
                       {"mean_difference", s.mean_difference},
                       {"sample_variance", s.sample_variance},
                       {"ci95_halfwidth", s.ci95_halfwidth},
                       {"exact_expected_difference", s.exact_expected_difference}};
}

std::string run_summary_csv_header() {
    return "trials,mean_payoff,sample_variance,ci95_halfwidth,exact_expected_payoff,mean_switch_gain";
}

std::string run_summary_csv_row(const RunSummary& s) {
    return std::to_string(s.trials) + "," + format_double(s.mean_payoff) + "," +
           format_double(s.sample_variance) + "," + format_double(s.ci95_halfwidth) + "," +
           s.exact_expected_payoff.display() + "," + format_double(s.mean_switch_gain);
}

std::string compare_summary_csv_header() {
    return "trials,mean_difference,sample_variance,ci95_halfwidth,exact_expected_difference";
}

std::string compare_summary_csv_row(const CompareSummary& s) {
    return std::to_string(s.trials) + "," + format_double(s.mean_difference) + "," +
           format_double(s.sample_variance) + "," + format_double(s.ci95_halfwidth) + "," +
           s.exact_expected_difference.display();
}

std::string trial_csv_header() { return "trial_index,base,held,observed,decision,payoff"; }

std::string trial_csv_row(std::uint64_t trial_index, const Trial& t) {
    return std::to_string(trial_index) + "," + t.pair.smaller().display() + "," +
           std::string(to_string(t.held)) + "," + t.observed.display() + "," +
           std::string(to_string(t.decision)) + "," + t.payoff.display();
}

std::string compare_trial_csv_header() {
    return "trial_index,base,held,observed,decision_a,payoff_a,decision_b,payoff_b";
}

std::string compare_trial_csv_row(std::uint64_t trial_index, const Trial& a, const Trial& b) {
    return std::to_string(trial_index) + "," + a.pair.smaller().display() + "," +
           std::string(to_string(a.held)) + "," + a.observed.display() + "," +
           std::string(to_string(a.decision)) + "," + a.payoff.display() + "," +
           std::string(to_string(b.decision)) + "," + b.payoff.display();
}

}  // namespace twoenv
