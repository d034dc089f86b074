#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "test_support.hpp"
#include "twoenv/beliefs.hpp"
#include "twoenv/simulate.hpp"

using namespace twoenv;

namespace {

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

bool bit_identical(const RunSummary& a, const RunSummary& b) {
    return a.trials == b.trials && bits(a.mean_payoff) == bits(b.mean_payoff) &&
           bits(a.sample_variance) == bits(b.sample_variance) &&
           bits(a.ci95_halfwidth) == bits(b.ci95_halfwidth) &&
           a.exact_expected_payoff == b.exact_expected_payoff &&
           bits(a.mean_switch_gain) == bits(b.mean_switch_gain);
}

Prior prior_from_support(const std::vector<std::pair<Rational, Rational>>& support) {
    std::vector<Prior::Entry> entries;
    for (const auto& [base_cents, prob] : support) entries.push_back({Money(base_cents), prob});
    return Prior(std::move(entries));
}

}  // namespace

TEST_SUITE("simulate") {
    TEST_CASE("exact expected payoff: point mass at $5.00") {
        const Prior prior = Prior::parse("point:5.00");
        CHECK(exact_expected_payoff(prior, Strategy::never_switch()) == Money::parse_dollars("7.50"));
        CHECK(exact_expected_payoff(prior, Strategy::always_switch()) == Money::parse_dollars("7.50"));
    }

    TEST_CASE("exact expected payoff: uniform {$2,$4} under random:1/3") {
        const Prior prior = Prior::parse("uniform:2.00,4.00");
        const Strategy strategy = Strategy::random_switch(Rational(1, 3));
        CHECK(exact_expected_payoff(prior, strategy) == Money::parse_dollars("4.50"));

        // Brute-force oracle over the full outcome space.
        const std::vector<std::pair<Rational, Rational>> support = {{Rational(200), Rational(1, 2)},
                                                                    {Rational(400), Rational(1, 2)}};
        const auto oracle = test::oracle_moments(
            support, [](const Rational&) { return Rational(1, 3); });
        CHECK(exact_expected_payoff(prior, strategy).cents() == oracle.mean_cents);

        const ExactMoments moments = exact_payoff_moments(prior, strategy);
        CHECK(moments.mean_cents == oracle.mean_cents);
        CHECK(moments.variance_cents_sq ==
              Rational(oracle.second_moment_cents_sq - oracle.mean_cents * oracle.mean_cents));
    }

    TEST_CASE("switching has zero exact value for every prior and every switch probability") {
        SplitMix64 g{5150};
        for (int i = 0; i < 100; ++i) {
            const auto support = test::random_prior_support(g);
            const Prior prior = prior_from_support(support);

            const Money always = exact_expected_payoff(prior, Strategy::always_switch());
            const Money never = exact_expected_payoff(prior, Strategy::never_switch());
            CHECK(always == never);

            // The closed form: sum of prob * (3/2) * base.
            Rational closed_form = 0;
            for (const auto& [base_cents, prob] : support) {
                closed_form += prob * Rational(3, 2) * base_cents;
            }
            CHECK(always.cents() == closed_form);

            for (int k = 0; k < 10; ++k) {
                const Strategy random = Strategy::random_switch(test::random_probability(g));
                CHECK(exact_expected_payoff(prior, random) == always);
            }
            CHECK(exact_expected_payoff(prior, Strategy::naive_bayesian()) == always);
        }
    }

    TEST_CASE("one-trial run lands on one of the two outcomes") {
        for (std::uint64_t seed : {0ULL, 7ULL, 42ULL, 12345ULL}) {
            const SimConfig config{Prior::parse("point:5.00"), Strategy::never_switch(), 1, seed, 1};
            const RunSummary s = run(config);
            CHECK((s.mean_payoff == 5.0 || s.mean_payoff == 10.0));
            CHECK(s.sample_variance == 0.0);
        }
    }

    TEST_CASE("runs are bit-identical across repetition and worker counts") {
        const Prior prior = Prior::parse("table:1.00=1/3,2.50=1/6,4.00=1/2");
        const Strategy strategy = Strategy::random_switch(Rational(1, 3));
        const RunSummary base = run(SimConfig{prior, strategy, 40000, 99, 1});
        CHECK(bit_identical(base, run(SimConfig{prior, strategy, 40000, 99, 1})));
        CHECK(bit_identical(base, run(SimConfig{prior, strategy, 40000, 99, 2})));
        CHECK(bit_identical(base, run(SimConfig{prior, strategy, 40000, 99, 4})));
        CHECK(bit_identical(base, run(SimConfig{prior, strategy, 40000, 99, 7})));
    }

    TEST_CASE("empirical mean stays within 4 sigma of the exact oracle") {
        const Prior prior = Prior::parse("point:5.00");
        const Strategy strategy = Strategy::always_switch();
        const std::uint64_t n = 100000;
        const RunSummary s = run(SimConfig{prior, strategy, n, 42, 4});

        const ExactMoments m = exact_payoff_moments(prior, strategy);
        const double exact_mean = Rational(m.mean_cents / 100).convert_to<double>();
        const double exact_var = Rational(m.variance_cents_sq / 10000).convert_to<double>();
        const double four_sigma = 4 * std::sqrt(exact_var / static_cast<double>(n));
        CHECK(std::abs(s.mean_payoff - exact_mean) < four_sigma);
        CHECK(s.exact_expected_payoff == Money::parse_dollars("7.50"));
    }

    TEST_CASE("per-trial sink sees every trial in order with consistent fields") {
        const Prior prior = Prior::parse("uniform:1.00,3.00");
        const SimConfig config{prior, Strategy::random_switch(Rational(1, 2)), 3000, 11, 4};

        std::uint64_t expected_index = 0;
        Rational switch_gain_sum = 0;
        const RunSummary s = run(config, [&](std::uint64_t i, const Trial& t) {
            REQUIRE(i == expected_index);
            ++expected_index;
            CHECK(t.observed == observed(t.pair, t.held));
            CHECK(t.payoff == resolve(t.pair, t.held, t.decision));
            CHECK(t.pair.larger() == scale(t.pair.smaller(), Rational(2)));

            // Believed-vs-actual gap per held role: +3/2 base on the larger
            // envelope, -3/4 base on the smaller one, on every single trial.
            const GainDelta gap = delta(observed(t.pair, other(t.held)), naive_switch_ev(t.observed));
            if (t.held == Role::Larger) {
                CHECK(gap.cents() == Rational(t.pair.smaller().cents() * 3 / 2));
            } else {
                CHECK(gap.cents() == Rational(t.pair.smaller().cents() * -3 / 4));
            }
            switch_gain_sum += resolve(t.pair, t.held, Decision::Switch).cents() -
                               resolve(t.pair, t.held, Decision::Stay).cents();
        });
        CHECK(expected_index == config.trials);

        // The counting path and the per-trial path agree exactly.
        const double expected_gain =
            Rational(switch_gain_sum / config.trials / 100).convert_to<double>();
        CHECK(bits(s.mean_switch_gain) == bits(expected_gain));
        CHECK(bit_identical(s, run(SimConfig{prior, config.strategy, config.trials, 11, 1})));
    }

    TEST_CASE("compare: identical strategies differ by exactly zero on every trial") {
        const Prior prior = Prior::parse("uniform:1.00,3.00");
        for (const Strategy& s : {Strategy::always_switch(), Strategy::random_switch(Rational(1, 2))}) {
            const CompareSummary c = compare(prior, s, s, 20000, 42, 2);
            CHECK(c.mean_difference == 0.0);
            CHECK(c.sample_variance == 0.0);
            CHECK(c.ci95_halfwidth == 0.0);
            CHECK(c.exact_expected_difference == GainDelta{});
        }
    }

    TEST_CASE("compare: naive-bayesian vs always-switch is zero on every trial") {
        const CompareSummary c = compare(Prior::parse("point:5.00"), Strategy::naive_bayesian(),
                                         Strategy::always_switch(), 20000, 7, 1);
        CHECK(c.mean_difference == 0.0);
        CHECK(c.sample_variance == 0.0);
        CHECK(c.exact_expected_difference == GainDelta{});
    }

    TEST_CASE("compare: always vs never switch on common random numbers") {
        const std::uint64_t n = 100000;
        const CompareSummary c = compare(Prior::parse("point:5.00"), Strategy::always_switch(),
                                         Strategy::never_switch(), n, 42, 4);
        // Per-trial difference is +/-$5.00 with equal odds: variance 25.
        const double four_sigma = 4 * std::sqrt(25.0 / static_cast<double>(n));
        CHECK(std::abs(c.mean_difference) < four_sigma);
        CHECK(c.exact_expected_difference == GainDelta{});
        CHECK(c.sample_variance > 24.0);
        CHECK(c.sample_variance < 26.0);
    }

    TEST_CASE("compare couples randomized decisions monotonically") {
        // Whenever the 1/3 rule switches, the 2/3 rule must switch too: both
        // read the same decision draw.
        const CompareSummary c = compare(
            Prior::parse("point:2.00"), Strategy::random_switch(Rational(1, 3)),
            Strategy::random_switch(Rational(2, 3)), 5000, 3, 1,
            [&](std::uint64_t, const Trial& a, const Trial& b) {
                if (a.decision == Decision::Switch) CHECK(b.decision == Decision::Switch);
                CHECK(a.pair == b.pair);
                CHECK(a.held == b.held);
            });
        CHECK(c.trials == 5000);
    }

    TEST_CASE("input validation") {
        const Prior prior = Prior::parse("point:1.00");
        CHECK_THROWS_AS(run(SimConfig{prior, Strategy::always_switch(), 0, 0, 1}),
                        std::invalid_argument);
        CHECK_THROWS_AS(run(SimConfig{prior, Strategy::always_switch(), 1, 0, 0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            compare(prior, Strategy::always_switch(), Strategy::never_switch(), 0, 0, 1),
            std::invalid_argument);
    }

    TEST_CASE("run summary json shape") {
        const RunSummary s = run(SimConfig{Prior::parse("point:5.00"), Strategy::never_switch(),
                                           100, 1, 1});
        const nlohmann::json j = s;
        CHECK(j.at("trials") == 100);
        CHECK(j.at("exact_expected_payoff").at("dollars") == "7.50");
        CHECK(j.at("mean_payoff").is_number());
        CHECK(j.at("sample_variance").is_number());
        CHECK(j.at("ci95_halfwidth").is_number());
        CHECK(j.at("mean_switch_gain").is_number());
    }

    TEST_CASE("csv rows") {
        const RunSummary s = run(SimConfig{Prior::parse("point:5.00"), Strategy::never_switch(),
                                           100, 1, 1});
        CHECK(run_summary_csv_header() ==
              "trials,mean_payoff,sample_variance,ci95_halfwidth,exact_expected_payoff,"
              "mean_switch_gain");
        const std::string row = run_summary_csv_row(s);
        CHECK(row.substr(0, 4) == "100,");
        CHECK(row.find("$7.50") != std::string::npos);

        const Trial t{EnvelopePair(Money::parse_dollars("5.00")), Role::Smaller,
                      Money::parse_dollars("5.00"), Decision::Switch, Money::parse_dollars("10.00")};
        CHECK(trial_csv_row(3, t) == "3,$5.00,smaller,$5.00,switch,$10.00");
    }
}
