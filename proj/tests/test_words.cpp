#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "shiftlab/functions.hpp"
#include "shiftlab/rng.hpp"
#include "shiftlab/words.hpp"

using namespace shiftlab;

namespace {

EPSequence random_ep(Rng& rng, const std::string& symbols) {
    auto rand_word = [&](int lo, int hi) {
        Word w;
        int len = static_cast<int>(rng.range(lo, hi));
        for (int i = 0; i < len; ++i) w += symbols[rng.below(symbols.size())];
        return w;
    };
    return EPSequence(rand_word(0, 3), rand_word(1, 3));
}

}  // namespace

TEST_CASE("EPSequence canonical form") {
    EPSequence a("0111", "1");
    CHECK(a.preperiod() == "0");
    CHECK(a.period() == "1");
    EPSequence b("", "0101");
    CHECK(b.period() == "01");  // primitive root
    CHECK(EPSequence("", "01").shifted(1) == EPSequence("", "10"));
    CHECK(EPSequence("ab", "c").shifted(3) == EPSequence("", "c"));
    // Equality after preperiod absorption: 0010101... two ways.
    CHECK(EPSequence("00", "10") == EPSequence("0", "01"));
}

TEST_CASE("metric distance examples") {
    MetricParam p = MetricParam::half();
    EPSequence x01("", "01");
    CHECK(metric_distance(x01, x01, p) == 0);
    CHECK(metric_distance(EPSequence("", "0"), EPSequence("", "1"), p) == 1);
    // First disagreement at index 2.
    CHECK(metric_distance(EPSequence("011", "0"), EPSequence("010", "0"), p) == Rat(1, 4));
}

TEST_CASE("metric is an ultrametric") {
    MetricParam p(Rat(2, 5));
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        EPSequence x = random_ep(rng, "01");
        EPSequence y = random_ep(rng, "01");
        EPSequence z = random_ep(rng, "01");
        Rat dxz = metric_distance(x, z, p);
        Rat dxy = metric_distance(x, y, p);
        Rat dyz = metric_distance(y, z, p);
        CHECK(dxz <= std::max(dxy, dyz));
    }
}

TEST_CASE("Birkhoff sums") {
    Alphabet bin = Alphabet::binary();
    auto c = LocallyConstantFn::constant(bin, Rat(7, 3));
    CHECK(birkhoff_sum(c, EPSequence("", "01"), 5) == Rat(35, 3));

    auto first = LocallyConstantFn::first_symbol_values(bin, {Rat(0), Rat(1)});
    CHECK(birkhoff_sum(first, EPSequence("", "01"), 4) == 2);

    auto ind = LocallyConstantFn::indicator(bin, "01");
    CHECK(birkhoff_sum(ind, EPSequence("", "011"), 6) == 2);

    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        EPSequence x = random_ep(rng, "01");
        long long n = rng.range(1, 9);
        Rat s = birkhoff_sum(ind, x, n);
        CHECK(rat_abs(s) <= Rat(n) * ind.sup_norm());
    }
}

TEST_CASE("Lipschitz seminorm") {
    Alphabet bin = Alphabet::binary();
    MetricParam p = MetricParam::half();
    CHECK(lipschitz_seminorm(LocallyConstantFn::constant(bin, Rat(3)), p) == 0);
    CHECK(lipschitz_seminorm(LocallyConstantFn::first_symbol_values(bin, {Rat(0), Rat(1)}), p) ==
          1);
    // Words 00 and 01 agree at the first symbol: |1 - 0| / (1/2) = 2.
    CHECK(lipschitz_seminorm(LocallyConstantFn::indicator(bin, "01"), p) == 2);

    // The seminorm dominates differences at the metric scale.
    auto f = LocallyConstantFn::indicator(bin, "010");
    Rat lip = lipschitz_seminorm(f, p);
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        EPSequence x = random_ep(rng, "01");
        EPSequence y = random_ep(rng, "01");
        CHECK(rat_abs(f.eval(x) - f.eval(y)) <= lip * metric_distance(x, y, p));
    }
}

TEST_CASE("Morse substitution words") {
    CHECK(morse_word(0) == "0");
    CHECK(morse_word(1) == "01");
    CHECK(morse_word(4) == "0110100110010110");
    for (unsigned n = 0; n <= 12; ++n)
        CHECK(morse_word(n + 1) == morse_word(n) + morse_complement(morse_word(n)));
}

TEST_CASE("Morse factor oracle") {
    const MorseOracle& oracle = shared_morse_oracle();
    CHECK(oracle.is_factor("0110"));
    CHECK_FALSE(oracle.is_factor("000"));
    CHECK_FALSE(oracle.is_factor("11011011"));
    // Longest factor prefix of an eventually periodic point is finite.
    CHECK(oracle.longest_factor_prefix(EPSequence("", "0")) == 2);
    CHECK(oracle.longest_factor_prefix(EPSequence("#", "0")) == 0);
}

TEST_CASE("truncated distance to orbit") {
    MetricParam p = MetricParam::half();
    std::vector<EPSequence> q{EPSequence("", "01"), EPSequence("", "10")};
    // Window on the orbit: clamped at depth.
    CHECK(truncated_distance_to_orbit("010101", q, 6, p) == rat_pow(Rat(1, 2), 6));
    std::vector<EPSequence> qz{EPSequence("", "0")};
    CHECK(truncated_distance_to_orbit("1111", qz, 4, p) == 1);
    CHECK(truncated_distance_to_orbit("0010", qz, 4, p) == Rat(1, 4));

    // Against the exhaustive minimum with a deep horizon the truncation is
    // off by at most alpha^depth.
    Rng rng(3);
    int depth = 4;
    for (int trial = 0; trial < 100; ++trial) {
        Word window;
        for (int i = 0; i < 4 * depth; ++i) window += (rng.coin() ? '1' : '0');
        Rat truncated = truncated_distance_to_orbit(window, q, depth, p);
        Rat exhaustive;
        bool have = false;
        for (const EPSequence& z : q) {
            std::size_t n = 0;
            while (n < window.size() && window[n] == z.at(n)) ++n;
            Rat d = rat_pow(p.alpha, n);
            if (!have || d < exhaustive) exhaustive = d, have = true;
        }
        CHECK(truncated >= exhaustive);
        CHECK(truncated - exhaustive <= rat_pow(p.alpha, depth));
    }
}

TEST_CASE("locally constant function serialization") {
    Alphabet bin = Alphabet::binary();
    auto f = LocallyConstantFn::indicator(bin, "01").scaled(Rat(5, 3));
    auto g = LocallyConstantFn::deserialize(f.serialize());
    CHECK(f.serialize() == g.serialize());
    CHECK(g.depth() == 2);
    CHECK(g.eval_word("011") == Rat(5, 3));
}
