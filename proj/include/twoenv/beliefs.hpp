#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "twoenv/game.hpp"
#include "twoenv/money.hpp"

namespace twoenv {

/// Distribution over signed switch gains. Probabilities are exact and must
/// sum to exactly 1.
class GainDistribution {
public:
    struct Outcome {
        GainDelta delta;
        Rational prob;
        bool operator==(const Outcome&) const = default;
    };

    explicit GainDistribution(std::vector<Outcome> outcomes);  // validates

    const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }

    /// Exact probability-weighted mean gain.
    GainDelta expected_gain() const;

    bool operator==(const GainDistribution&) const = default;

private:
    std::vector<Outcome> outcomes_;
};

/// The three vantage points on one round:
///  - NaivePlayer: sees the held amount A, believes the other envelope holds
///    A/2 or 2A with equal odds;
///  - ThirdParty: knows both amounts but not which one the player holds;
///  - Omniscient: the game runner, who knows everything.
enum class Perspective { NaivePlayer, ThirdParty, Omniscient };

std::string_view to_string(Perspective p) noexcept;

struct PerspectiveReport {
    Perspective perspective;
    GainDistribution gains;
    GainDelta expected_gain;
    Money other_envelope_ev;
};

/// The switch-is-favorable valuation: .5(A/2) + .5(2A) = (5/4)A for observed
/// amount A. Rejects a zero amount (the game deals positive money only, and
/// 0 would satisfy the identity vacuously).
Money naive_switch_ev(const Money& observed);

/// The player's believed switch gains: lose A/2 or gain A, equal odds.
GainDistribution naive_gain_distribution(const Money& observed);

/// Gain or lose the smaller amount, equal odds; expected gain exactly zero.
GainDistribution third_party_gain_distribution(const EnvelopePair& pair);

/// Either envelope, to someone who knows both amounts but not the player's
/// pick, is worth .5(smaller) + .5(larger) = (3/2)·smaller.
Money third_party_envelope_ev(const EnvelopePair& pair);

/// The game runner's view: the switch gain is certain, +smaller when the
/// player holds the smaller envelope and −smaller otherwise.
GainDistribution omniscient_gain(const EnvelopePair& pair, Role held);

/// Believed other-envelope value minus its actual value, signed so that an
/// overestimate is positive:
///   holding the smaller envelope: (5/4)s − 2s = −(3/4)s
///   holding the larger envelope:  (5/2)s − s  = +(3/2)s
/// The overestimate is always exactly twice the underestimate in magnitude.
GainDelta estimation_error(const EnvelopePair& pair, Role held);

/// Assembles the full report for one perspective on one round. ThirdParty
/// ignores `held` and sets expected_gain to zero and other_envelope_ev to
/// third_party_envelope_ev independently, not one derived from the other.
PerspectiveReport perspective_report(const EnvelopePair& pair, Role held, Perspective p);

// {"perspective": ..., "outcomes": [{"delta": ..., "prob": "1/2"}, ...],
//  "expected_gain": ..., "other_envelope_ev": ...}
void to_json(nlohmann::json& j, const GainDistribution& d);
void to_json(nlohmann::json& j, const PerspectiveReport& r);

}  // namespace twoenv
