#include "twoenv/beliefs.hpp"

#include <stdexcept>
#include <utility>

namespace twoenv {

GainDistribution::GainDistribution(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) throw std::invalid_argument("gain distribution must be non-empty");
    Rational total = 0;
    for (const Outcome& o : outcomes_) total += o.prob;
    if (total != 1) {
        throw std::invalid_argument("gain distribution probabilities must sum to exactly 1, got " +
                                    fraction_string(total));
    }
}

GainDelta GainDistribution::expected_gain() const {
    GainDelta sum;
    for (const Outcome& o : outcomes_) sum = sum + scale(o.delta, o.prob);
    return sum;
}

std::string_view to_string(Perspective p) noexcept {
    switch (p) {
        case Perspective::NaivePlayer: return "naive-player";
        case Perspective::ThirdParty: return "third-party";
        case Perspective::Omniscient: return "omniscient";
    }
    return "unknown";
}

namespace {

void require_positive(const Money& observed) {
    if (!observed.is_positive()) {
        throw std::domain_error("observed amount must be strictly positive");
    }
}

}  // namespace

Money naive_switch_ev(const Money& observed) {
    require_positive(observed);
#ifdef TWOENV_FAULT_INJECTION
    // Test-only build that corrupts the valuation ratio; paper-check must
    // catch this and fail.
    static const Rational half_or_double_mean(63, 50);
#else
    // .5(A/2) + .5(2A) collapses to (5/4)A.
    static const Rational half_or_double_mean = Rational(1, 2) * Rational(1, 2) + Rational(1, 2) * Rational(2);
#endif
    return scale(observed, half_or_double_mean);
}

GainDistribution naive_gain_distribution(const Money& observed) {
    require_positive(observed);
    const GainDelta lose_half(Rational(-observed.cents() / 2));
    const GainDelta gain_full(Rational(observed.cents()));
    return GainDistribution({{lose_half, Rational(1, 2)}, {gain_full, Rational(1, 2)}});
}

GainDistribution third_party_gain_distribution(const EnvelopePair& pair) {
    const GainDelta swing(Rational(pair.smaller().cents()));
    return GainDistribution({{swing, Rational(1, 2)}, {-swing, Rational(1, 2)}});
}

Money third_party_envelope_ev(const EnvelopePair& pair) {
    // .5(smaller) + .5(larger) = (3/2) smaller.
    return scale(pair.smaller(), Rational(3, 2));
}

GainDistribution omniscient_gain(const EnvelopePair& pair, Role held) {
    const GainDelta swing(Rational(pair.smaller().cents()));
    return GainDistribution({{held == Role::Smaller ? swing : -swing, Rational(1)}});
}

GainDelta estimation_error(const EnvelopePair& pair, Role held) {
    const Money believed = naive_switch_ev(observed(pair, held));
    const Money actual = observed(pair, other(held));
    return delta(actual, believed);
}

PerspectiveReport perspective_report(const EnvelopePair& pair, Role held, Perspective p) {
    switch (p) {
        case Perspective::NaivePlayer: {
            const Money seen = observed(pair, held);
            GainDistribution gains = naive_gain_distribution(seen);
            GainDelta expected = gains.expected_gain();
            return PerspectiveReport{p, std::move(gains), expected, naive_switch_ev(seen)};
        }
        case Perspective::ThirdParty: {
            // Expected gain and per-envelope value are stated independently,
            // not derived from one another; both are separately checkable.
            return PerspectiveReport{p, third_party_gain_distribution(pair), GainDelta{},
                                     third_party_envelope_ev(pair)};
        }
        case Perspective::Omniscient: {
            GainDistribution gains = omniscient_gain(pair, held);
            GainDelta expected = gains.expected_gain();
            return PerspectiveReport{p, std::move(gains), expected, resolve(pair, held, Decision::Switch)};
        }
    }
    throw std::logic_error("unreachable perspective");
}

void to_json(nlohmann::json& j, const GainDistribution& d) {
    j = nlohmann::json::array();
    for (const auto& o : d.outcomes()) {
        j.push_back({{"delta", o.delta}, {"prob", fraction_string(o.prob)}});
    }
}

void to_json(nlohmann::json& j, const PerspectiveReport& r) {
    j = nlohmann::json{{"perspective", std::string(to_string(r.perspective))},
                       {"outcomes", r.gains},
                       {"expected_gain", r.expected_gain},
                       {"other_envelope_ev", r.other_envelope_ev}};
}

}  // namespace twoenv
