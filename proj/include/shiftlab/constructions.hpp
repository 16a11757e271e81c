#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftlab/follower.hpp"
#include "shiftlab/int_set.hpp"
#include "shiftlab/shift_space.hpp"

namespace shiftlab {

// A family V of words of a base space Y, used as interspersion blocks.
class WordFamily {
  public:
    enum class Kind { Lengths, MorseWords, Explicit };

    static WordFamily lengths(IntSet lengths);  // all Y-words with length in the set
    static WordFamily morse_words();            // the substitution words theta_n
    static WordFamily explicit_list(std::vector<Word> words);

    Kind kind() const { return kind_; }
    const IntSet* length_set() const { return kind_ == Kind::Lengths ? &lengths_ : nullptr; }

    bool contains(const ShiftSpace& base, const Word& w) const;
    bool prefix_of_member(const ShiftSpace& base, const Word& w) const;
    bool suffix_of_member(const ShiftSpace& base, const Word& w) const;
    bool factor_of_member(const ShiftSpace& base, const Word& w) const;
    bool finite_family(const ShiftSpace& base) const;
    // Members with length <= max_len, in length-then-lex order.
    std::vector<Word> enumerate(const ShiftSpace& base, int max_len,
                                std::size_t budget = 1'000'000) const;

    std::string serialize() const;
    static WordFamily deserialize(const std::string& text);

  private:
    WordFamily(Kind k, IntSet lengths, std::vector<Word> words)
        : kind_(k), lengths_(std::move(lengths)), words_(std::move(words)) {}
    Kind kind_;
    IntSet lengths_;
    std::vector<Word> words_;
};

// The interspersion of `base` by the family V: magic-delimited concatenations
// of V-blocks, closed under factors. Allowed words decompose at their magic
// symbols as  suffix # block # ... # block # prefix  with interior blocks in
// V; magic-free words are factors of V-words.
ShiftSpace interspersion(const ShiftSpace& base, const WordFamily& family, char magic = '#');

// Length-constrained interspersion: blocks are all base words with length in S.
ShiftSpace length_constrained(const ShiftSpace& base, const IntSet& lengths, char magic = '#');

// Interspersion of the Morse shift by the substitution words, magic '#'.
ShiftSpace make_magic_morse();

// Strictly increasing with strictly increasing consecutive differences.
bool is_superlinear(const std::vector<long long>& prefix);

struct DescriptiveVerdict {
    bool positive = true;
    std::optional<Word> counterexample;  // sampled prefix that never matched
};

// Depth-bounded check that prefixes of base points keep matching suffixes of
// family members: each sampled length-h word must match at some cut at or
// beyond min_reach (default h/2). A counterexample is a failed search at this
// horizon, not a disproof.
DescriptiveVerdict is_descriptive(const ShiftSpace& base, const WordFamily& family, int horizon,
                                  const std::vector<Word>& sample_prefixes,
                                  int min_reach = -1);

// The subshift of points in which every occurrence of w is preceded only by
// contexts that leave its follower set unchanged. Follower equality is tested
// at the given depth: exact for automaton-backed spaces, a sound refutation /
// depth-limited confirmation otherwise. depth < 0 selects 2|w|+8.
ShiftSpace x_w(const ShiftSpace& base, const Word& w, int depth = -1);

struct XwqResult {
    std::optional<SftSpace> sft;  // step q+|w| when non-empty
    std::string status;           // "ok", "empty", or "budget"
    std::string detail;
};

// Window SFT of points of x_w(base, w) in which w recurs within every gap of
// q positions. Step q+|w|.
XwqResult x_wq(const ShiftSpace& base, const Word& w, int q, int depth = -1,
               std::size_t budget = 2'000'000);

void register_construction_kinds();

}  // namespace shiftlab
