#include "twoenv/game.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace twoenv {

std::string_view to_string(Role r) noexcept {
    return r == Role::Smaller ? "smaller" : "larger";
}

std::string_view to_string(Decision d) noexcept {
    return d == Decision::Stay ? "stay" : "switch";
}

EnvelopePair::EnvelopePair(Money smaller) : smaller_(std::move(smaller)) {
    if (!smaller_.is_positive()) {
        throw std::domain_error("envelope pair needs a strictly positive base amount");
    }
}

Prior::Prior(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("prior support must be non-empty");

    Rational total = 0;
    for (const Entry& e : entries_) {
        if (!e.base.is_positive()) {
            throw std::invalid_argument("prior base amounts must be strictly positive");
        }
        if (e.prob <= 0 || e.prob > 1) {
            throw std::invalid_argument("prior probabilities must lie in (0, 1]: " + fraction_string(e.prob));
        }
        total += e.prob;
    }
    if (total != 1) {
        throw std::invalid_argument("prior probabilities must sum to exactly 1, got " + fraction_string(total));
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            if (entries_[i].base == entries_[j].base) {
                throw std::invalid_argument("prior base amounts must be pairwise distinct: " +
                                            entries_[i].base.display());
            }
        }
    }

    // Cumulative thresholds ceil(C(i) * 2^64); the final one is exactly 2^64.
    const BigInt two64 = BigInt(1) << 64;
    Rational cumulative = 0;
    thresholds_.reserve(entries_.size());
    for (const Entry& e : entries_) {
        cumulative += e.prob;
        BigInt k = (numerator(cumulative) * two64 + denominator(cumulative) - 1) / denominator(cumulative);
        thresholds_.push_back(k.convert_to<unsigned __int128>());
    }
}

Prior Prior::point_mass(Money base) {
    return Prior({Entry{std::move(base), Rational(1)}});
}

Prior Prior::uniform(const std::vector<Money>& bases) {
    if (bases.empty()) throw std::invalid_argument("uniform prior needs at least one base amount");
    std::vector<Entry> entries;
    entries.reserve(bases.size());
    for (const Money& b : bases) {
        entries.push_back(Entry{b, Rational(1, static_cast<unsigned long long>(bases.size()))});
    }
    return Prior(std::move(entries));
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        auto pos = s.find(sep);
        if (pos == std::string_view::npos) {
            parts.push_back(s);
            return parts;
        }
        parts.push_back(s.substr(0, pos));
        s.remove_prefix(pos + 1);
    }
}

}  // namespace

Prior Prior::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("prior must look like point:<dollars>, uniform:<d1>,<d2>,... or "
                                    "table:<d1>=<p1>,...: got '" + std::string(text) + "'");
    }
    std::string_view kind = text.substr(0, colon);
    std::string_view body = text.substr(colon + 1);

    if (kind == "point") {
        return point_mass(Money::parse_dollars(body));
    }
    if (kind == "uniform") {
        std::vector<Money> bases;
        for (std::string_view part : split(body, ',')) bases.push_back(Money::parse_dollars(part));
        return uniform(bases);
    }
    if (kind == "table") {
        std::vector<Entry> entries;
        for (std::string_view part : split(body, ',')) {
            auto eq = part.find('=');
            if (eq == std::string_view::npos) {
                throw std::invalid_argument("table prior entries must look like <dollars>=<prob>: got '" +
                                            std::string(part) + "'");
            }
            entries.push_back(Entry{Money::parse_dollars(part.substr(0, eq)),
                                    parse_rational(part.substr(eq + 1))});
        }
        return Prior(std::move(entries));
    }
    throw std::invalid_argument("unknown prior kind '" + std::string(kind) + "'");
}

std::size_t Prior::sample_index(std::uint64_t draw) const noexcept {
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(),
                               static_cast<unsigned __int128>(draw));
    return static_cast<std::size_t>(it - thresholds_.begin());
}

namespace {

std::string dollars_text(const Money& m) {
    // Canonical "d.cc" for whole-cent amounts, exact decimal for sub-cent
    // ones; fraction-of-cents fallback otherwise (such a base cannot come
    // from the text format anyway).
    if (auto d = m.dollars_string()) return *d;
    if (auto d = exact_decimal_string(Rational(m.cents() / 100))) return *d;
    return fraction_string(m.cents()) + "c";
}

}  // namespace

std::string Prior::to_string() const {
    if (entries_.size() == 1) return "point:" + dollars_text(entries_[0].base);

    const Rational uniform_prob(1, static_cast<unsigned long long>(entries_.size()));
    bool is_uniform = std::all_of(entries_.begin(), entries_.end(),
                                  [&](const Entry& e) { return e.prob == uniform_prob; });
    std::string out;
    if (is_uniform) {
        out = "uniform:";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) out += ',';
            out += dollars_text(entries_[i].base);
        }
        return out;
    }
    out = "table:";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += ',';
        out += dollars_text(entries_[i].base);
        out += '=';
        out += fraction_string(entries_[i].prob);
    }
    return out;
}

EnvelopePair deal(const Prior& prior, SplitMix64& rand) {
    return EnvelopePair(prior.entries()[prior.sample_index(rand.next())].base);
}

Role choose(SplitMix64& rand) {
    // Exactly half the 64-bit space each: draw/2^64 < 1/2.
    return rand.next() < (std::uint64_t{1} << 63) ? Role::Smaller : Role::Larger;
}

Money observed(const EnvelopePair& pair, Role held) {
    return held == Role::Smaller ? pair.smaller() : pair.larger();
}

Money resolve(const EnvelopePair& pair, Role held, Decision decision) {
    return decision == Decision::Stay ? observed(pair, held) : observed(pair, other(held));
}

}  // namespace twoenv
