#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twoenv/money.hpp"
#include "twoenv/random.hpp"

namespace twoenv {

/// Which envelope the player currently holds. There is no envelope identity
/// beyond this role: the held amount is always either the smaller or the
/// larger of the pair, never a free-standing constant.
enum class Role { Smaller, Larger };

enum class Decision { Stay, Switch };

constexpr Role other(Role r) noexcept {
    return r == Role::Smaller ? Role::Larger : Role::Smaller;
}

std::string_view to_string(Role r) noexcept;
std::string_view to_string(Decision d) noexcept;

/// The two envelopes. Only the smaller amount is stored; the larger one is
/// derived, so a pair violating larger = 2 x smaller cannot exist.
class EnvelopePair {
public:
    explicit EnvelopePair(Money smaller);  // throws std::domain_error unless smaller > 0

    const Money& smaller() const noexcept { return smaller_; }
    Money larger() const { return scale(smaller_, Rational(2)); }

    bool operator==(const EnvelopePair&) const = default;

private:
    Money smaller_;
};

/// Finite discrete distribution over the base (smaller) amount.
///
/// Probabilities are exact rationals and must sum to exactly 1; bases are
/// strictly positive and pairwise distinct. Immutable once constructed.
class Prior {
public:
    struct Entry {
        Money base;
        Rational prob;
        bool operator==(const Entry&) const = default;
    };

    explicit Prior(std::vector<Entry> entries);  // validates all invariants
    static Prior point_mass(Money base);
    static Prior uniform(const std::vector<Money>& bases);

    /// Text form used by the CLI and config files:
    ///   point:<dollars>
    ///   uniform:<d1>,<d2>,...
    ///   table:<d1>=<p1>,<d2>=<p2>,...
    /// Probabilities may be fractions ("1/3") or decimals ("0.25"), parsed
    /// exactly. Throws std::invalid_argument on malformed or invalid input.
    static Prior parse(std::string_view text);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Maps a uniform 64-bit draw to a support index via cumulative
    /// exact-rational thresholds: index i wins iff draw/2^64 lands in
    /// [C(i-1), C(i)). Per-draw selection bias is below 2^-64; threshold
    /// ties resolve to the earliest entry in listed order.
    std::size_t sample_index(std::uint64_t draw) const noexcept;

    /// Text form; round-trips through parse() whenever every base has an
    /// exact decimal-dollar rendering (always true for parsed priors).
    std::string to_string() const;

private:
    std::vector<Entry> entries_;
    std::vector<unsigned __int128> thresholds_;  // ceil(C(i) * 2^64)
};

/// One simulated round and its resolution.
struct Trial {
    EnvelopePair pair;
    Role held;
    Money observed;
    Decision decision;
    Money payoff;
};

/// Draws a base amount from the prior and forms the (base, 2·base) pair.
/// Consumes exactly one draw.
EnvelopePair deal(const Prior& prior, SplitMix64& rand);

/// Uniform envelope choice: each role with probability exactly 1/2.
/// Consumes exactly one draw.
Role choose(SplitMix64& rand);

/// The amount the player sees in the held envelope.
Money observed(const EnvelopePair& pair, Role held);

/// Final payoff: Stay keeps the held amount, Switch takes the other one.
Money resolve(const EnvelopePair& pair, Role held, Decision decision);

}  // namespace twoenv
