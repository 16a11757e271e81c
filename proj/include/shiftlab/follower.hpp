#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shiftlab/shift_space.hpp"

namespace shiftlab {

// Depth-truncated follower set: the words v with |v| <= depth and wv allowed.
struct FollowerSetApprox {
    Word base;
    int depth = 0;
    std::vector<Word> members;  // sorted; downward closed under prefixes
};

FollowerSetApprox follower_set(const ShiftSpace& space, const Word& w, int depth);

// Computes canonical identifiers for depth-k follower sets. Two words get
// the same identifier iff their depth-k follower sets coincide. Contexts are
// collapsed through known synchronizing words before memoisation: if z is
// synchronizing and s = pzq then F(s) = F(zq), so the tail alone determines
// the follower set and unrelated prefixes share all work.
//
// One analyzer is confined to a single thread; independent analyzers over the
// same space may run concurrently.
class FollowerAnalyzer {
  public:
    explicit FollowerAnalyzer(ShiftSpace space, std::size_t budget = 5'000'000);

    const ShiftSpace& space() const { return space_; }

    // s must be allowed. Returns the interned id of the depth-k follower set.
    int follower_signature(const Word& s, int k);

    // Canonical tail with equal follower set (s itself when nothing is known).
    Word collapse(const Word& s) const;

    // Number of distinct depth-k follower sets F(uw) over predecessors u with
    // |u| <= context_len (including u = empty).
    long long distinct_follower_count(const Word& w, int context_len, int depth);

    // All distinct collapsed forms of uw over predecessors u with |u| <= context_len.
    std::vector<Word> context_tails(const Word& w, int context_len);

  private:
    int intern(const std::vector<std::pair<char, int>>& children);

    ShiftSpace space_;
    std::size_t budget_;
    std::size_t spent_ = 0;
    std::vector<Word> sync_words_;
    std::optional<int> sft_step_;
    std::unordered_map<std::string, int> memo_;  // "k:tail" -> signature id
    std::map<std::vector<std::pair<char, int>>, int> intern_;
};

long long distinct_follower_count(const ShiftSpace& space, const Word& w, int context_len,
                                  int depth);

// Escalating horizon pairs (context length, follower depth).
struct Schedule {
    std::vector<std::pair<int, int>> entries;
    static Schedule standard() { return Schedule{{{4, 6}, {8, 10}, {12, 14}}}; }
};

struct WordClassification {
    bool growing = false;
    std::vector<long long> counts;  // one per schedule entry
    long long stabilized_count() const { return counts.empty() ? 0 : counts.back(); }
};

// Growing when the distinct-follower count still moves between the last two
// schedule entries. A finite-horizon verdict: exactness is only claimed where
// boundary_exact corroborates it.
WordClassification classify_word(const ShiftSpace& space, const Word& w,
                                 const Schedule& schedule);
WordClassification classify_word(FollowerAnalyzer& analyzer, const Word& w,
                                 const Schedule& schedule);

struct BoundaryReport {
    int max_len = 0;
    Schedule schedule;
    std::vector<Word> growing;             // sorted; sub-word closed
    std::map<Word, long long> stabilized;  // word -> stabilized count
    std::map<Word, std::vector<long long>> counts;

    std::string serialize() const;
    static BoundaryReport deserialize(const std::string& text);
    std::string to_csv() const;
};

// Classifies every allowed word of length <= max_len. The parallel variant
// fans the per-word classification out over OpenMP threads; both variants
// produce identical reports.
BoundaryReport boundary_estimate(const ShiftSpace& space, int max_len, const Schedule& schedule,
                                 std::size_t budget = 2'000'000);
BoundaryReport boundary_estimate_parallel(const ShiftSpace& space, int max_len,
                                          const Schedule& schedule,
                                          std::size_t budget = 2'000'000);

// Exact Markov boundary for constructions that decide it; nullopt = unknown.
std::optional<ShiftSpace> boundary_exact(const ShiftSpace& space);
std::optional<bool> is_sofic_exact(const ShiftSpace& space);

enum class SyncVerdict { Certified, Refuted, DepthLimited };

// Certified via construction metadata or automaton analysis; otherwise the
// bounded necessary-condition check (refutation is exact, a pass is only a
// depth-limited verdict).
SyncVerdict is_synchronizing(const ShiftSpace& space, const Word& w, int depth);
// The bounded check alone, ignoring certificates.
SyncVerdict sync_check_generic(const ShiftSpace& space, const Word& w, int depth);

struct EventualSoficResult {
    std::optional<int> level;  // empty = not decided within the bound
    std::string diagnostic;
    std::vector<std::string> chain;  // kinds encountered along the boundary chain
};

EventualSoficResult eventual_sofic_level(const ShiftSpace& space, int max_level);

}  // namespace shiftlab
