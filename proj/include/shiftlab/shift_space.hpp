#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "shiftlab/int_set.hpp"
#include "shiftlab/words.hpp"

namespace shiftlab {

class ShiftSpace;

// Right-resolving labelled graph presentation of a sofic shift. States are
// pruned at construction to those lying on a bi-infinite path.
class SoficAutomaton {
  public:
    SoficAutomaton(std::vector<std::string> state_names, Alphabet alphabet,
                   std::map<std::pair<int, char>, int> transitions);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return names_.size(); }
    const std::string& state_name(int s) const { return names_[s]; }
    int step(int state, char symbol) const;  // -1 when undefined
    // Image of a state set under a word; result sorted and deduplicated.
    std::vector<int> step_set(const std::vector<int>& states, std::string_view w) const;
    std::vector<int> all_states() const;
    bool reads(std::string_view w) const;
    const std::map<std::pair<int, char>, int>& transitions() const { return transitions_; }

  private:
    std::vector<std::string> names_;
    Alphabet alphabet_;
    std::map<std::pair<int, char>, int> transitions_;
};

// Immutable behaviour object behind a ShiftSpace value. Membership must be a
// pure function: spaces are shared freely across threads.
class ShiftSpaceImpl : public std::enable_shared_from_this<ShiftSpaceImpl> {
  public:
    virtual ~ShiftSpaceImpl() = default;
    virtual const Alphabet& alphabet() const = 0;
    virtual std::string kind() const = 0;
    // w is over the alphabet and non-empty; emptiness is handled by the wrapper.
    virtual bool allows(std::string_view w) const = 0;
    virtual bool is_empty_space() const { return false; }

    // Markov boundary when the construction decides it exactly; nullptr when
    // unknown. Sofic constructions report the empty space.
    virtual std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const { return nullptr; }

    // Canonical token for an allowed word such that equal tokens imply equal
    // follower sets. Constructions whose follower structure reduces to finite
    // data (plus a bounded length) expose it so follower-set computations can
    // pool their work; nullopt means no reduction is known.
    virtual std::optional<std::string> residual_key(std::string_view w) const {
        (void)w;
        return std::nullopt;
    }

    // Construction-level knowledge consumed by the follower analysis.
    // Words listed here are synchronizing by construction; this is what lets
    // follower-set computations collapse contexts exactly.
    virtual std::vector<Word> known_sync_words() const { return {}; }
    // Set when the language is an m-step SFT: every word of length >= m is
    // then synchronizing.
    virtual std::optional<int> sft_step() const { return std::nullopt; }
    virtual const SoficAutomaton* automaton() const { return nullptr; }
    // Exact soficity when the construction decides it; nullopt = unknown.
    virtual std::optional<bool> sofic_exact() const { return std::nullopt; }
    // True when the construction guarantees no synchronizing word exists
    // (e.g. dynamically minimal and non-periodic).
    virtual bool has_no_sync_word() const { return false; }

    virtual std::string describe() const = 0;  // JSON definition body
};

class ShiftSpace {
  public:
    explicit ShiftSpace(std::shared_ptr<const ShiftSpaceImpl> impl) : impl_(std::move(impl)) {}

    const Alphabet& alphabet() const { return impl_->alphabet(); }
    std::string kind() const { return impl_->kind(); }
    bool empty_space() const { return impl_->is_empty_space(); }
    const ShiftSpaceImpl& impl() const { return *impl_; }
    std::shared_ptr<const ShiftSpaceImpl> impl_ptr() const { return impl_; }

    bool allows(std::string_view w) const;

    std::vector<Word> known_sync_words() const { return impl_->known_sync_words(); }
    std::optional<int> sft_step() const { return impl_->sft_step(); }
    const SoficAutomaton* automaton() const { return impl_->automaton(); }
    std::optional<bool> sofic_exact() const { return impl_->sofic_exact(); }
    bool has_no_sync_word() const { return impl_->has_no_sync_word(); }

    std::string serialize() const;
    static ShiftSpace deserialize(const std::string& text);

  private:
    std::shared_ptr<const ShiftSpaceImpl> impl_;
};

// Shift of finite type given by its allowed transition windows of length
// step+1, pruned so that every window extends to a bi-infinite chain.
class SftSpace {
  public:
    SftSpace(Alphabet alphabet, int step, std::set<Word> windows);
    static SftSpace from_forbidden(const Alphabet& alphabet, const std::vector<Word>& forbidden);

    const Alphabet& alphabet() const { return alphabet_; }
    int step() const { return step_; }
    const std::vector<Word>& windows() const { return windows_; }
    bool empty_space() const { return windows_.empty(); }
    bool allows(std::string_view w) const;
    bool allows_cycle(const Word& u) const;  // u^inf allowed

    ShiftSpace as_shift_space() const;
    // True when every window of other is an allowed word here.
    bool contains_windows_of(const SftSpace& other) const;

  private:
    Alphabet alphabet_;
    int step_;
    std::vector<Word> windows_;  // sorted
};

// Named constructors from the catalogue of spaces the toolkit studies.
ShiftSpace make_full_shift(const Alphabet& alphabet);
ShiftSpace make_golden_mean();
ShiftSpace make_even_shift();
ShiftSpace make_context_free_shift();
ShiftSpace make_morse_shift();
ShiftSpace make_s_gap_shift(const IntSet& gaps);
ShiftSpace make_s_graph_shift(const Alphabet& alphabet,
                              const std::vector<std::pair<char, char>>& edges,
                              const std::map<char, IntSet>& runs);
ShiftSpace make_empty_space(const Alphabet& alphabet);
ShiftSpace sofic_from_table(std::vector<std::string> state_names, Alphabet alphabet,
                            std::map<std::pair<int, char>, int> transitions);
ShiftSpace sft_from_word_set(const Alphabet& alphabet, int step, const std::set<Word>& windows);

const SftSpace* as_sft(const ShiftSpace& space);  // null when not window-backed

struct EnumerationBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exactly the allowed words of length n, by breadth-first right extension
// with membership pruning. Throws EnumerationBudgetExceeded when more than
// `budget` words would have to be inspected.
std::vector<Word> words_of_length(const ShiftSpace& space, int n,
                                  std::size_t budget = 2'000'000);
std::vector<Word> words_up_to_length(const ShiftSpace& space, int max_len,
                                     std::size_t budget = 2'000'000);

// Registry hook so that composite kinds defined elsewhere can participate in
// deserialization.
using SpaceParser = std::function<ShiftSpace(const std::string&)>;
void register_space_kind(const std::string& kind, SpaceParser parser);

}  // namespace shiftlab
