#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace twoenv {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational; always in lowest terms, sign carried by the numerator.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-3", "0.25", "1/3" into an exact rational. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Renders a rational as "num/den", or just "num" when the denominator is 1.
std::string fraction_string(const Rational& value);

/// Exact decimal expansion ("1.875") when the reduced denominator has no
/// prime factors other than 2 and 5; nullopt otherwise.
std::optional<std::string> exact_decimal_string(const Rational& value);

/// An exact, non-negative amount of currency, stored as rational cents.
///
/// Halving, doubling and 5/4-scaling are all lossless; equality is exact.
/// Values are immutable once constructed and freely shareable across threads.
class Money {
public:
    Money() = default;  // zero
    explicit Money(Rational cents);
    static Money from_cents(long long cents);

    /// Exact decimal-dollar parse: "5", "5.00", "0.015". No floats involved.
    static Money parse_dollars(std::string_view text);

    const Rational& cents() const noexcept { return cents_; }
    BigInt cents_numerator() const { return numerator(cents_); }
    BigInt cents_denominator() const { return denominator(cents_); }

    bool is_zero() const { return cents_ == 0; }
    bool is_positive() const { return cents_ > 0; }
    bool is_whole_cents() const { return denominator(cents_) == 1; }

    /// "d.cc" (e.g. "7.50") — defined only for whole-cent values.
    std::optional<std::string> dollars_string() const;

    /// "$7.50" when whole cents, otherwise the exact fraction of cents,
    /// e.g. "5/4c".
    std::string display() const;

    Money operator+(const Money& rhs) const { return Money(Rational(cents_ + rhs.cents_)); }
    Money operator-(const Money& rhs) const;  // throws std::domain_error if negative

    bool operator==(const Money&) const = default;
    std::strong_ordering operator<=>(const Money& rhs) const {
        if (cents_ < rhs.cents_) return std::strong_ordering::less;
        if (cents_ > rhs.cents_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    Rational cents_{0};
};

/// A signed exact gain (+) or loss (−) in rational cents. Closed under
/// addition and scaling by arbitrary rationals, with no rounding anywhere.
class GainDelta {
public:
    GainDelta() = default;  // zero
    explicit GainDelta(Rational cents) : cents_(std::move(cents)) {}
    static GainDelta from_cents(long long cents) { return GainDelta(Rational(cents)); }

    const Rational& cents() const noexcept { return cents_; }
    bool is_zero() const { return cents_ == 0; }

    GainDelta operator+(const GainDelta& rhs) const { return GainDelta(Rational(cents_ + rhs.cents_)); }
    GainDelta operator-(const GainDelta& rhs) const { return GainDelta(Rational(cents_ - rhs.cents_)); }
    GainDelta operator-() const { return GainDelta(Rational(-cents_)); }

    bool operator==(const GainDelta&) const = default;
    std::strong_ordering operator<=>(const GainDelta& rhs) const {
        if (cents_ < rhs.cents_) return std::strong_ordering::less;
        if (cents_ > rhs.cents_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "+$5.00" / "-$2.50" / "$0.00" when whole cents, else signed fraction
    /// of cents, e.g. "+5/4c".
    std::string display() const;

private:
    Rational cents_{0};
};

/// Exact product `amount * ratio`, reduced to lowest terms.
/// The ratio must be non-negative; Money is closed under such scaling.
Money scale(const Money& amount, const Rational& ratio);

/// Signed scaling for deltas; any rational ratio is allowed.
GainDelta scale(const GainDelta& amount, const Rational& ratio);

/// to − from, as a signed exact delta. delta(a, a) is zero.
GainDelta delta(const Money& from, const Money& to);

GainDelta abs(const GainDelta& d);

// JSON form: {"num": "<cents numerator>", "den": "<cents denominator>"},
// plus "dollars": "d.cc" when the value is a whole number of cents.
// Numerals are strings so arbitrary-precision values survive round-trips.
void to_json(nlohmann::json& j, const Money& m);
void from_json(const nlohmann::json& j, Money& m);
void to_json(nlohmann::json& j, const GainDelta& d);
void from_json(const nlohmann::json& j, GainDelta& d);

}  // namespace twoenv
