#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "shiftlab/rational.hpp"

namespace shiftlab {

// Words are plain strings of single-character symbol labels; the empty word
// is the empty string.
using Word = std::string;

class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::string symbols);

    std::size_t size() const { return symbols_.size(); }
    char symbol(std::size_t i) const { return symbols_[i]; }
    const std::string& symbols() const { return symbols_; }
    bool contains(char c) const;
    int index(char c) const;  // -1 when absent
    bool contains_word(std::string_view w) const;

    bool operator==(const Alphabet&) const = default;

    static Alphabet binary() { return Alphabet("01"); }

  private:
    std::string symbols_;  // ordered, pairwise distinct, non-empty
};

struct MetricParam {
    Rat alpha;  // in (0,1); d(x,y) = alpha^(index of first disagreement)

    explicit MetricParam(Rat a);
    static MetricParam half() { return MetricParam(Rat(1, 2)); }
};

// One-sided eventually periodic sequence preperiod . period^inf, kept in
// canonical form: the period is primitive and the preperiod is shortest.
// These are the only points the library materialises exactly.
class EPSequence {
  public:
    EPSequence(Word preperiod, Word period);
    static EPSequence periodic(Word period) { return EPSequence("", std::move(period)); }

    const Word& preperiod() const { return pre_; }
    const Word& period() const { return per_; }

    char at(std::size_t i) const {
        return i < pre_.size() ? pre_[i] : per_[(i - pre_.size()) % per_.size()];
    }
    Word prefix(std::size_t n) const;
    EPSequence shifted(std::size_t n) const;

    bool operator==(const EPSequence&) const = default;
    std::strong_ordering operator<=>(const EPSequence&) const = default;

    std::string to_string() const;  // "pre|per" display form

  private:
    Word pre_;
    Word per_;
};

// alpha^N with N the first index where x and y disagree; 0 when x == y.
// Termination relies on the eventual periodicity of both arguments: if they
// agree up to max(preperiods) + lcm(period lengths) they agree everywhere.
Rat metric_distance(const EPSequence& x, const EPSequence& y, const MetricParam& p);

// First disagreement index of two raw symbol windows (npos when the shorter
// one is a prefix of the other).
std::size_t first_disagreement(std::string_view a, std::string_view b);

// First disagreement index of two eventually periodic sequences; npos when
// they are equal. metric_distance is alpha to this power.
std::size_t ep_first_disagreement(const EPSequence& x, const EPSequence& y);

bool is_primitive_word(std::string_view w);
Word primitive_root(const Word& w);

// Morse substitution 0 -> 01, 1 -> 10.
Word morse_substitution(std::string_view w);
Word morse_complement(std::string_view w);

// theta_n = n-fold substitution image of "0"; length 2^n.
Word morse_word(unsigned n);

// Shared immutable view of a long Morse prefix, used by factor tests and by
// empirical-measure constructions. Thread safe after construction.
class MorseOracle {
  public:
    // Supports factor queries for words up to max_word_len symbols.
    explicit MorseOracle(std::size_t max_word_len = 4096);

    bool is_factor(std::string_view w) const;
    const std::string& sequence() const { return omega_; }
    std::size_t max_word_len() const { return max_word_len_; }

    // Longest prefix of the sequence (pre,per) that is a Morse factor. Scans
    // at most pre + 4*per symbols; an overlap-free sequence cannot contain a
    // fourth power, so the scan always terminates below that cap.
    std::size_t longest_factor_prefix(const EPSequence& x) const;

  private:
    std::size_t max_word_len_;
    std::string omega_;  // theta_m with 2^m >= 16 * max_word_len
    std::size_t short_len_ = 0;
    std::unordered_set<std::string> short_factors_;  // all factors up to short_len_
};

const MorseOracle& shared_morse_oracle();

}  // namespace shiftlab
