#pragma once

#include <string>
#include <string_view>

#include "twoenv/game.hpp"
#include "twoenv/money.hpp"
#include "twoenv/random.hpp"

namespace twoenv {

/// A decision rule mapping an observed amount to Switch/Stay.
///
/// NaiveBayesian switches whenever the believed other-envelope value exceeds
/// the observed amount. Since that valuation is (5/4)A, it decides exactly
/// like AlwaysSwitch for every positive amount — the equivalence is checked
/// by tests rather than hard-coded.
class Strategy {
public:
    enum class Kind { AlwaysSwitch, NeverSwitch, RandomSwitch, NaiveBayesian };

    static Strategy always_switch() { return Strategy(Kind::AlwaysSwitch, Rational(1)); }
    static Strategy never_switch() { return Strategy(Kind::NeverSwitch, Rational(0)); }
    static Strategy random_switch(Rational p);  // throws unless 0 <= p <= 1
    static Strategy naive_bayesian() { return Strategy(Kind::NaiveBayesian, Rational(1)); }

    /// CLI syntax: always-switch | never-switch | random:<p> | naive-bayesian
    /// where <p> is a fraction or exact decimal in [0,1].
    static Strategy parse(std::string_view text);
    std::string to_string() const;  // round-trips through parse()

    Kind kind() const noexcept { return kind_; }

    /// RandomSwitch only: the configured switch probability.
    const Rational& switch_probability() const;

    /// The exact probability this strategy switches on the given observed
    /// amount: 1, 0, p, or the naive-valuation comparison collapsed to 0/1.
    /// This is what the enumeration oracle integrates over.
    Rational switch_probability_for(const Money& observed) const;

    bool is_deterministic() const noexcept { return kind_ != Kind::RandomSwitch; }

    bool operator==(const Strategy&) const = default;

private:
    Strategy(Kind kind, Rational p);

    friend Decision decide(const Strategy&, const Money&, SplitMix64&);

    Kind kind_;
    Rational p_;                             // meaningful for RandomSwitch
    unsigned __int128 switch_threshold_{0};  // ceil(p * 2^64), precomputed
};

/// Applies the rule to one observed amount. Deterministic variants consume
/// no randomness; RandomSwitch consumes exactly one draw and switches iff
/// draw/2^64 < p. Rejects a zero observed amount.
Decision decide(const Strategy& strategy, const Money& observed, SplitMix64& rand);

}  // namespace twoenv
