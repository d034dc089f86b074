#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "test_support.hpp"
#include "twoenv/game.hpp"

using namespace twoenv;

namespace {

Prior::Entry entry(long long cents, Rational prob) {
    return Prior::Entry{Money::from_cents(cents), std::move(prob)};
}

}  // namespace

TEST_SUITE("game") {
    TEST_CASE("pair is defined by its smaller amount") {
        const EnvelopePair pair(Money::parse_dollars("5.00"));
        CHECK(pair.smaller() == Money::parse_dollars("5.00"));
        CHECK(pair.larger() == Money::parse_dollars("10.00"));
        CHECK_THROWS_AS(EnvelopePair(Money{}), std::domain_error);
    }

    TEST_CASE("prior validation") {
        CHECK_THROWS_AS(Prior({}), std::invalid_argument);
        CHECK_THROWS_AS(Prior({entry(100, Rational(1, 2))}), std::invalid_argument);  // sum != 1
        CHECK_THROWS_AS(Prior({entry(100, Rational(3, 2)), entry(200, Rational(-1, 2))}),
                        std::invalid_argument);  // out of range
        CHECK_THROWS_AS(Prior({entry(100, Rational(1, 2)), entry(100, Rational(1, 2))}),
                        std::invalid_argument);  // duplicate base
        CHECK_THROWS_AS(Prior({entry(0, Rational(1))}), std::invalid_argument);  // zero base
        CHECK_NOTHROW(Prior({entry(100, Rational(1, 3)), entry(200, Rational(2, 3))}));
    }

    TEST_CASE("prior text format") {
        const Prior point = Prior::parse("point:5.00");
        CHECK(point.size() == 1);
        CHECK(point.entries()[0].base == Money::parse_dollars("5.00"));
        CHECK(point.entries()[0].prob == 1);

        const Prior uni = Prior::parse("uniform:1.00,2.00,4.00");
        CHECK(uni.size() == 3);
        CHECK(uni.entries()[1].base == Money::parse_dollars("2.00"));
        CHECK(uni.entries()[2].prob == Rational(1, 3));

        const Prior table = Prior::parse("table:1.00=1/3,2.00=0.5,3.00=1/6");
        CHECK(table.entries()[0].prob == Rational(1, 3));
        CHECK(table.entries()[1].prob == Rational(1, 2));
        CHECK(table.entries()[2].prob == Rational(1, 6));

        CHECK(Prior::parse("point:5.00").to_string() == "point:5.00");
        CHECK(Prior::parse("uniform:1.00,2.00").to_string() == "uniform:1.00,2.00");
        CHECK(Prior::parse("table:1.00=1/3,2.00=2/3").to_string() == "table:1.00=1/3,2.00=2/3");

        CHECK_THROWS_AS(Prior::parse("5.00"), std::invalid_argument);
        CHECK_THROWS_AS(Prior::parse("gauss:5.00"), std::invalid_argument);
        CHECK_THROWS_AS(Prior::parse("table:1.00=1/3"), std::invalid_argument);  // sum != 1
        CHECK_THROWS_AS(Prior::parse("table:1.00"), std::invalid_argument);
        CHECK_THROWS_AS(Prior::parse("uniform:"), std::invalid_argument);
    }

    TEST_CASE("sample_index maps threshold boundaries to the first entry") {
        const Prior prior({entry(100, Rational(1, 4)), entry(200, Rational(3, 4))});
        const std::uint64_t boundary = std::uint64_t{1} << 62;  // ceil(1/4 * 2^64)
        CHECK(prior.sample_index(0) == 0);
        CHECK(prior.sample_index(boundary - 1) == 0);
        CHECK(prior.sample_index(boundary) == 1);
        CHECK(prior.sample_index(~std::uint64_t{0}) == 1);
    }

    TEST_CASE("deal: point masses are certain") {
        SplitMix64 g{1};
        const EnvelopePair five = deal(Prior::parse("point:5.00"), g);
        CHECK(five.smaller() == Money::parse_dollars("5.00"));
        CHECK(five.larger() == Money::parse_dollars("10.00"));

        const EnvelopePair cent = deal(Prior::parse("point:0.01"), g);
        CHECK(cent.smaller() == Money::from_cents(1));
        CHECK(cent.larger() == Money::from_cents(2));
    }

    TEST_CASE("deal: uniform two-point frequencies within 4 sigma") {
        const Prior prior = Prior::parse("uniform:1.00,2.00");
        const int n = 100000;
        int first = 0;
        SplitMix64 g{42};
        for (int i = 0; i < n; ++i) {
            if (deal(prior, g).smaller() == Money::parse_dollars("1.00")) ++first;
        }
        const double freq = static_cast<double>(first) / n;
        const double four_sigma = 4 * std::sqrt(0.25 / n);
        CHECK(freq > 0.5 - four_sigma);
        CHECK(freq < 0.5 + four_sigma);
    }

    TEST_CASE("deal: sampled pairs always double the base") {
        const Prior prior = Prior::parse("table:0.50=1/8,2.00=1/2,31.41=3/8");
        SplitMix64 g{5};
        for (int i = 0; i < 10000; ++i) {
            const EnvelopePair pair = deal(prior, g);
            CHECK(pair.larger() == scale(pair.smaller(), Rational(2)));
        }
    }

    TEST_CASE("choose: deterministic per seed, roughly balanced, non-constant") {
        SplitMix64 a{123};
        SplitMix64 b{123};
        for (int i = 0; i < 100; ++i) CHECK(choose(a) == choose(b));

        SplitMix64 g{2024};
        int smaller = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            if (choose(g) == Role::Smaller) ++smaller;
        }
        const double freq = static_cast<double>(smaller) / n;
        CHECK(freq > 0.49);
        CHECK(freq < 0.51);

        std::set<Role> seen;
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            SplitMix64 s = trial_stream(seed, 0);
            seen.insert(choose(s));
        }
        CHECK(seen.size() == 2);
    }

    TEST_CASE("observed and resolve") {
        const EnvelopePair pair(Money::parse_dollars("5.00"));
        CHECK(observed(pair, Role::Smaller) == Money::parse_dollars("5.00"));
        CHECK(observed(pair, Role::Larger) == Money::parse_dollars("10.00"));
        CHECK(resolve(pair, Role::Smaller, Decision::Switch) == Money::parse_dollars("10.00"));
        CHECK(resolve(pair, Role::Larger, Decision::Switch) == Money::parse_dollars("5.00"));
        CHECK(resolve(pair, Role::Smaller, Decision::Stay) == Money::parse_dollars("5.00"));
        CHECK(resolve(pair, Role::Larger, Decision::Stay) == Money::parse_dollars("10.00"));
    }

    TEST_CASE("switch and stay partition the pair") {
        SplitMix64 g{77};
        for (int i = 0; i < 200; ++i) {
            const EnvelopePair pair(test::random_positive_money(g));
            for (Role held : {Role::Smaller, Role::Larger}) {
                CHECK(resolve(pair, held, Decision::Switch) + resolve(pair, held, Decision::Stay) ==
                      pair.smaller() + pair.larger());
                CHECK(observed(pair, other(held)) ==
                      (held == Role::Smaller ? pair.larger() : pair.smaller()));
            }
            CHECK(resolve(pair, Role::Smaller, Decision::Switch) ==
                  resolve(pair, Role::Larger, Decision::Stay));
        }
    }
}
