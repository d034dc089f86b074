#include "twoenv/analysis.hpp"

namespace twoenv {

RatioDerivation derive_aggregate_ratio() {
    const Rational half(1, 2);
    const Rational double_up(2);

    // A holder of amount A values the other envelope at .5(A/2) + .5(2A);
    // in multiples of X that is 5/4 for the X holder and 5/2 for the 2X
    // holder (same formula applied to A = 2X).
    const Rational believed_small = half * (Rational(1) / 2) + half * double_up;
    const Rational believed_large = half * (double_up / 2) + half * (double_up * 2);

    RatioDerivation d;
    d.believed_small_holder = believed_small;
    d.believed_large_holder = believed_large;
    d.believed_average = half * (believed_small + believed_large);
    d.objective_average = half * (Rational(1) + double_up);
    d.ratio = d.believed_average / d.objective_average;
    return d;
}

RatioDerivation verify_ratio_against_pair(const EnvelopePair& pair) {
    // Absolute-money route: believed values from the naive valuation, the
    // objective value from the third party, everything then normalized by
    // the smaller amount. Homogeneity makes the result pair-independent.
    const Rational unit = pair.smaller().cents();

    const Money believed_small = naive_switch_ev(observed(pair, Role::Smaller));
    const Money believed_large = naive_switch_ev(observed(pair, Role::Larger));
    const Money believed_average =
        scale(believed_small, Rational(1, 2)) + scale(believed_large, Rational(1, 2));
    const Money objective_average = third_party_envelope_ev(pair);

    RatioDerivation d;
    d.believed_small_holder = believed_small.cents() / unit;
    d.believed_large_holder = believed_large.cents() / unit;
    d.believed_average = believed_average.cents() / unit;
    d.objective_average = objective_average.cents() / unit;
    d.ratio = Rational(believed_average.cents()) / Rational(objective_average.cents());
    return d;
}

Rational aggregate_bias(const RatioDerivation& d) {
    return d.believed_average - d.objective_average;
}

Rational role_averaged_estimation_error(const EnvelopePair& pair) {
    const Rational unit = pair.smaller().cents();
    const Rational err_small = estimation_error(pair, Role::Smaller).cents() / unit;
    const Rational err_large = estimation_error(pair, Role::Larger).cents() / unit;
    return Rational(1, 2) * err_small + Rational(1, 2) * err_large;
}

void to_json(nlohmann::json& j, const RatioDerivation& d) {
    j = nlohmann::json{{"believed_small_holder", fraction_string(d.believed_small_holder)},
                       {"believed_large_holder", fraction_string(d.believed_large_holder)},
                       {"believed_average", fraction_string(d.believed_average)},
                       {"objective_average", fraction_string(d.objective_average)},
                       {"ratio", fraction_string(d.ratio)}};
}

}  // namespace twoenv
