#include "twoenv/money.hpp"

#include <stdexcept>
#include <utility>

namespace twoenv {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

BigInt pow10(std::size_t k) {
    BigInt r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= 10;
    return r;
}

// Digit-by-digit accumulation; cpp_int's string constructor would read a
// leading zero as an octal prefix.
BigInt from_digits(std::string_view digits) {
    BigInt value = 0;
    for (char c : digits) value = value * 10 + (c - '0');
    return value;
}

// "12", "12.345", optional leading sign. Exact: 12.345 -> 12345/1000.
Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string_view whole = s;
    std::string_view frac;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        whole = s.substr(0, dot);
        frac = s.substr(dot + 1);
        if (frac.empty()) throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
    }
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) {
        throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
    }
    BigInt num = from_digits(whole) * pow10(frac.size()) + from_digits(frac);
    if (negative) num = -num;
    return Rational(num, pow10(frac.size()));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        Rational n = parse_decimal(num);
        Rational d = parse_decimal(den);
        if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
        if (denominator(n) != 1 || denominator(d) != 1) {
            throw std::invalid_argument("fraction parts must be integers: '" + std::string(text) + "'");
        }
        return Rational(n / d);
    }
    return parse_decimal(text);
}

std::string fraction_string(const Rational& value) {
    std::string s = numerator(value).str();
    if (denominator(value) != 1) {
        s += '/';
        s += denominator(value).str();
    }
    return s;
}

std::optional<std::string> exact_decimal_string(const Rational& value) {
    BigInt den = denominator(value);
    std::size_t twos = 0;
    std::size_t fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return std::nullopt;

    const std::size_t digits = std::max(twos, fives);
    BigInt scaled = numerator(value) * pow10(digits) / denominator(value);
    bool negative = scaled < 0;
    std::string body = (negative ? -scaled : scaled).str();
    if (body.size() <= digits) body.insert(0, digits - body.size() + 1, '0');
    std::string out = negative ? "-" : "";
    out += body.substr(0, body.size() - digits);
    if (digits > 0) {
        out += '.';
        out += body.substr(body.size() - digits);
    }
    return out;
}

Money::Money(Rational cents) : cents_(std::move(cents)) {
    if (cents_ < 0) throw std::domain_error("Money cannot be negative: " + fraction_string(cents_) + "c");
}

Money Money::from_cents(long long cents) { return Money(Rational(cents)); }

Money Money::parse_dollars(std::string_view text) {
    Rational dollars = parse_decimal(text);
    if (dollars < 0) throw std::invalid_argument("negative dollar amount: '" + std::string(text) + "'");
    return Money(Rational(dollars * 100));
}

std::optional<std::string> Money::dollars_string() const {
    if (!is_whole_cents()) return std::nullopt;
    const BigInt cents = numerator(cents_);
    const std::string body = BigInt(cents / 100).str();
    const BigInt rem(cents % 100);
    std::string frac = rem.str();
    if (frac.size() < 2) frac.insert(0, 2 - frac.size(), '0');
    return body + "." + frac;
}

std::string Money::display() const {
    if (auto d = dollars_string()) return "$" + *d;
    return fraction_string(cents_) + "c";
}

Money Money::operator-(const Money& rhs) const {
    if (cents_ < rhs.cents_) {
        throw std::domain_error("Money subtraction would be negative; use delta() for signed results");
    }
    return Money(Rational(cents_ - rhs.cents_));
}

std::string GainDelta::display() const {
    const bool negative = cents_ < 0;
    Money magnitude{Rational(negative ? -cents_ : cents_)};
    std::string sign = negative ? "-" : (cents_ > 0 ? "+" : "");
    if (auto d = magnitude.dollars_string()) return sign + "$" + *d;
    return sign + fraction_string(magnitude.cents()) + "c";
}

Money scale(const Money& amount, const Rational& ratio) {
    if (ratio < 0) throw std::domain_error("scale ratio must be non-negative: " + fraction_string(ratio));
    return Money(Rational(amount.cents() * ratio));
}

GainDelta scale(const GainDelta& amount, const Rational& ratio) {
    return GainDelta(Rational(amount.cents() * ratio));
}

GainDelta delta(const Money& from, const Money& to) {
    return GainDelta(Rational(to.cents() - from.cents()));
}

GainDelta abs(const GainDelta& d) {
    return d.cents() < 0 ? -d : d;
}

namespace {

void rational_to_json(nlohmann::json& j, const Rational& cents, const std::optional<std::string>& dollars) {
    j = nlohmann::json{{"num", numerator(cents).str()}, {"den", denominator(cents).str()}};
    if (dollars) j["dollars"] = *dollars;
}

Rational rational_from_json(const nlohmann::json& j) {
    const auto parse_int = [](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty integer field");
        const bool negative = s.front() == '-';
        const std::string_view digits = negative ? std::string_view(s).substr(1) : std::string_view(s);
        if (!all_digits(digits)) throw std::invalid_argument("malformed integer: '" + s + "'");
        return negative ? BigInt(-from_digits(digits)) : from_digits(digits);
    };
    BigInt num = parse_int(j.at("num").get<std::string>());
    BigInt den = parse_int(j.at("den").get<std::string>());
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rational(num, den);
}

}  // namespace

void to_json(nlohmann::json& j, const Money& m) {
    rational_to_json(j, m.cents(), m.dollars_string());
}

void from_json(const nlohmann::json& j, Money& m) {
    m = Money(rational_from_json(j));
}

void to_json(nlohmann::json& j, const GainDelta& d) {
    std::optional<std::string> dollars;
    if (denominator(d.cents()) == 1) {
        Money magnitude{Rational(d.cents() < 0 ? -d.cents() : d.cents())};
        dollars = (d.cents() < 0 ? "-" : "") + *magnitude.dollars_string();
    }
    rational_to_json(j, d.cents(), dollars);
}

void from_json(const nlohmann::json& j, GainDelta& d) {
    d = GainDelta(rational_from_json(j));
}

}  // namespace twoenv
