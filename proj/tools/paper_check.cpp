#include "paper_check.hpp"

#include <string>
#include <vector>

#include "twoenv/analysis.hpp"
#include "twoenv/beliefs.hpp"
#include "twoenv/game.hpp"
#include "twoenv/money.hpp"

namespace twoenv::cli {

namespace {

// Records named identity checks; every computed value printed alongside a
// check comes from a library call, the expectations are the published
// constants being verified.
class Checker {
public:
    explicit Checker(std::ostream& out) : out_(out) {}

    void line(const std::string& text) { out_ << text << "\n"; }

    void check(const std::string& name, bool ok, const std::string& text) {
        out_ << text << (ok ? "   ok" : "   FAIL") << "\n";
        ++total_;
        if (!ok && first_failure_.empty()) first_failure_ = name;
    }

    int finish() {
        out_ << "\n";
        if (first_failure_.empty()) {
            out_ << "all " << total_ << " checks passed\n";
            return 0;
        }
        out_ << "FAIL: first failing identity: " << first_failure_ << "\n";
        return 1;
    }

private:
    std::ostream& out_;
    int total_ = 0;
    std::string first_failure_;
};

std::string gains_text(const GainDistribution& d) {
    std::string s = "{";
    for (std::size_t i = 0; i < d.outcomes().size(); ++i) {
        if (i) s += ", ";
        s += d.outcomes()[i].delta.display() + " w.p. " + fraction_string(d.outcomes()[i].prob);
    }
    return s + "}";
}

std::string multiple_text(const Rational& r) {
    std::string s = fraction_string(r);
    if (auto dec = exact_decimal_string(r)) s += " (= " + *dec + ")";
    return s;
}

GainDistribution expected_gains(std::vector<std::pair<long long, Rational>> cents_prob) {
    std::vector<GainDistribution::Outcome> outcomes;
    for (auto& [cents, prob] : cents_prob) {
        outcomes.push_back({GainDelta::from_cents(cents), prob});
    }
    return GainDistribution(std::move(outcomes));
}

}  // namespace

int run_paper_check(std::ostream& out) {
    Checker c(out);
    const Rational half(1, 2);

    c.line("two-envelope paradox: exact identity check");
    c.line("");

    // --- the naive switching argument -----------------------------------
    c.line("[1] a player observing amount A values the other envelope at");
    c.line("    .5(A/2) + .5(2A) = (5/4)A");
    {
        const Money ev10 = naive_switch_ev(Money::parse_dollars("10.00"));
        c.check("naive-switch-ev($10.00)", ev10 == Money::parse_dollars("12.50"),
                "    observed $10.00 -> believed other-envelope value " + ev10.display());
        const Money ev5 = naive_switch_ev(Money::parse_dollars("5.00"));
        c.check("naive-switch-ev($5.00)", ev5 == Money::parse_dollars("6.25"),
                "    observed $5.00  -> believed other-envelope value " + ev5.display());
    }

    // --- the $5.00/$10.00 game, three perspectives ----------------------
    const EnvelopePair pair(Money::parse_dollars("5.00"));
    c.line("");
    c.line("[2] one game, two envelopes: $5.00 and $10.00");
    {
        const GainDistribution naive5 = naive_gain_distribution(observed(pair, Role::Smaller));
        c.check("naive-gain-distribution($5.00)",
                naive5 == expected_gains({{-250, half}, {500, half}}),
                "    naive player holding $5.00 sees switch gains  " + gains_text(naive5));
        const GainDistribution naive10 = naive_gain_distribution(observed(pair, Role::Larger));
        c.check("naive-gain-distribution($10.00)",
                naive10 == expected_gains({{-500, half}, {1000, half}}),
                "    naive player holding $10.00 sees switch gains " + gains_text(naive10));

        const PerspectiveReport third = perspective_report(pair, Role::Smaller, Perspective::ThirdParty);
        c.check("third-party-gain-distribution",
                third.gains == expected_gains({{500, half}, {-500, half}}),
                "    third party (amounts known, pick unknown):    " + gains_text(third.gains));
        c.check("third-party-expected-gain", third.expected_gain == GainDelta{},
                "    third party's expected switch gain:           " + third.expected_gain.display());
        c.check("third-party-envelope-ev", third.other_envelope_ev == Money::parse_dollars("7.50"),
                "    third party values each envelope at:          " + third.other_envelope_ev.display());

        const GainDistribution omni_small = omniscient_gain(pair, Role::Smaller);
        c.check("omniscient-gain(holding smaller)",
                omni_small == expected_gains({{500, Rational(1)}}),
                "    game runner, player holds smaller:            " + gains_text(omni_small));
        const GainDistribution omni_large = omniscient_gain(pair, Role::Larger);
        c.check("omniscient-gain(holding larger)",
                omni_large == expected_gains({{-500, Rational(1)}}),
                "    game runner, player holds larger:             " + gains_text(omni_large));
    }

    // --- estimation error, by held envelope -----------------------------
    c.line("");
    c.line("[3] believed value of the other envelope minus its actual value");
    {
        const GainDelta err_small = estimation_error(pair, Role::Smaller);
        c.check("estimation-error(holding smaller)", err_small == GainDelta::from_cents(-375),
                "    holding the smaller envelope: " + naive_switch_ev(observed(pair, Role::Smaller)).display() +
                    " believed - " + observed(pair, Role::Larger).display() + " actual = " + err_small.display());
        const GainDelta err_large = estimation_error(pair, Role::Larger);
        c.check("estimation-error(holding larger)", err_large == GainDelta::from_cents(750),
                "    holding the larger envelope:  " + naive_switch_ev(observed(pair, Role::Larger)).display() +
                    " believed - " + observed(pair, Role::Smaller).display() + " actual = " + err_large.display());
        c.check("estimation-error-magnitude-ratio",
                abs(err_large).cents() == Rational(abs(err_small).cents() * 2),
                "    the overestimate is exactly twice the underestimate in magnitude");
    }

    // --- the aggregate ratio ---------------------------------------------
    c.line("");
    c.line("[4] averaging both equally likely holders, in multiples of the");
    c.line("    smaller amount X");
    {
        const RatioDerivation d = derive_aggregate_ratio();
        c.check("believed-small-holder", d.believed_small_holder == Rational(5, 4),
                "    believed value, X holder:   " + multiple_text(d.believed_small_holder) + " X");
        c.check("believed-large-holder", d.believed_large_holder == Rational(5, 2),
                "    believed value, 2X holder:  " + multiple_text(d.believed_large_holder) + " X");
        c.check("believed-average", d.believed_average == Rational(15, 8),
                "    believed average:           " + multiple_text(d.believed_average) + " X");
        c.check("objective-average", d.objective_average == Rational(3, 2),
                "    objective average:          " + multiple_text(d.objective_average) + " X");
        c.check("aggregate-ratio", d.ratio == Rational(5, 4),
                "    ratio believed/objective:   " + multiple_text(d.ratio));

        c.check("ratio-verified-against-pair", verify_ratio_against_pair(pair) == d,
                "    recomputed in dollars for the $5.00/$10.00 pair and normalized: identical");
        c.check("aggregate-bias-equals-role-averaged-error",
                aggregate_bias(d) == Rational(3, 8) &&
                    aggregate_bias(d) == role_averaged_estimation_error(pair),
                "    believed - objective = " + multiple_text(aggregate_bias(d)) +
                    " X, the role-averaged estimation error");
    }

    return c.finish();
}

}  // namespace twoenv::cli
