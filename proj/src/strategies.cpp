#include "twoenv/strategies.hpp"

#include "twoenv/beliefs.hpp"

#include <stdexcept>
#include <utility>

namespace twoenv {

namespace {

unsigned __int128 switch_threshold(const Rational& p) {
    // ceil(p * 2^64): Switch iff draw/2^64 < p, matching the prior sampler's
    // threshold scheme; selection bias per draw is below 2^-64.
    const BigInt two64 = BigInt(1) << 64;
    BigInt k = (numerator(p) * two64 + denominator(p) - 1) / denominator(p);
    return k.convert_to<unsigned __int128>();
}

}  // namespace

Strategy::Strategy(Kind kind, Rational p) : kind_(kind), p_(std::move(p)) {
    if (kind_ == Kind::RandomSwitch) switch_threshold_ = switch_threshold(p_);
}

Strategy Strategy::random_switch(Rational p) {
    if (p < 0 || p > 1) {
        throw std::invalid_argument("switch probability must lie in [0, 1], got " + fraction_string(p));
    }
    return Strategy(Kind::RandomSwitch, std::move(p));
}

Strategy Strategy::parse(std::string_view text) {
    if (text == "always-switch") return always_switch();
    if (text == "never-switch") return never_switch();
    if (text == "naive-bayesian") return naive_bayesian();
    constexpr std::string_view random_prefix = "random:";
    if (text.substr(0, random_prefix.size()) == random_prefix) {
        return random_switch(parse_rational(text.substr(random_prefix.size())));
    }
    throw std::invalid_argument("unknown strategy '" + std::string(text) +
                                "'; expected always-switch | never-switch | random:<p> | naive-bayesian");
}

std::string Strategy::to_string() const {
    switch (kind_) {
        case Kind::AlwaysSwitch: return "always-switch";
        case Kind::NeverSwitch: return "never-switch";
        case Kind::NaiveBayesian: return "naive-bayesian";
        case Kind::RandomSwitch: return "random:" + fraction_string(p_);
    }
    return "unknown";
}

const Rational& Strategy::switch_probability() const {
    if (kind_ != Kind::RandomSwitch) {
        throw std::logic_error("switch_probability() is only defined for random:<p> strategies");
    }
    return p_;
}

Rational Strategy::switch_probability_for(const Money& observed) const {
    switch (kind_) {
        case Kind::AlwaysSwitch: return Rational(1);
        case Kind::NeverSwitch: return Rational(0);
        case Kind::RandomSwitch: return p_;
        case Kind::NaiveBayesian:
            return naive_switch_ev(observed) > observed ? Rational(1) : Rational(0);
    }
    throw std::logic_error("unreachable strategy kind");
}

Decision decide(const Strategy& strategy, const Money& observed, SplitMix64& rand) {
    if (!observed.is_positive()) {
        throw std::domain_error("observed amount must be strictly positive");
    }
    switch (strategy.kind()) {
        case Strategy::Kind::AlwaysSwitch:
            return Decision::Switch;
        case Strategy::Kind::NeverSwitch:
            return Decision::Stay;
        case Strategy::Kind::NaiveBayesian:
            return naive_switch_ev(observed) > observed ? Decision::Switch : Decision::Stay;
        case Strategy::Kind::RandomSwitch:
            break;
    }
    const std::uint64_t draw = rand.next();
    return static_cast<unsigned __int128>(draw) < strategy.switch_threshold_ ? Decision::Switch
                                                                             : Decision::Stay;
}

}  // namespace twoenv
