#pragma once

#include <json.hpp>

#include "twoenv/beliefs.hpp"
#include "twoenv/game.hpp"
#include "twoenv/money.hpp"

namespace twoenv {

/// The aggregate switching argument, in multiples of the smaller amount X:
/// what a player believes the other envelope is worth on average, what it is
/// objectively worth on average, and the quotient of the two.
struct RatioDerivation {
    Rational believed_small_holder;  // 5/4
    Rational believed_large_holder;  // 5/2
    Rational believed_average;       // 15/8
    Rational objective_average;      // 3/2
    Rational ratio;                  // 5/4

    bool operator==(const RatioDerivation&) const = default;
};

/// Closed-form derivation, prior-independent. Works symbolically in
/// multiples of X: a holder of amount A values the other envelope at
/// .5(A/2) + .5(2A), the two holders are equally likely, and the objective
/// per-envelope value is .5(X + 2X).
RatioDerivation derive_aggregate_ratio();

/// The same derivation recomputed in absolute money for a concrete pair,
/// through the belief calculators, then normalized by the smaller amount.
/// Scale invariance makes the result equal derive_aggregate_ratio() exactly
/// for every pair.
RatioDerivation verify_ratio_against_pair(const EnvelopePair& pair);

/// believed_average − objective_average: 3/8 in multiples of X.
Rational aggregate_bias(const RatioDerivation& d);

/// The per-role estimation errors averaged with weight 1/2 each, as a
/// multiple of the smaller amount: .5(−3/4) + .5(+3/2) = 3/8. Equals
/// aggregate_bias(derive_aggregate_ratio()) — the role asymmetry and the
/// aggregate overvaluation are the same quantity.
Rational role_averaged_estimation_error(const EnvelopePair& pair);

// Fraction-string fields: {"believed_small_holder": "5/4", ...}
void to_json(nlohmann::json& j, const RatioDerivation& d);

}  // namespace twoenv
