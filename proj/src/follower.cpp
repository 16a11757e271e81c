#include "shiftlab/follower.hpp"

#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

using nlohmann::json;

FollowerSetApprox follower_set(const ShiftSpace& space, const Word& w, int depth) {
    if (!space.allows(w)) throw std::invalid_argument("follower_set: base word is not allowed");
    FollowerSetApprox out{w, depth, {}};
    std::vector<Word> frontier{""};
    out.members.push_back("");
    for (int len = 0; len < depth; ++len) {
        std::vector<Word> next;
        for (const Word& v : frontier) {
            for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
                Word ext = v + space.alphabet().symbol(i);
                if (space.allows(w + ext)) next.push_back(ext);
            }
        }
        out.members.insert(out.members.end(), next.begin(), next.end());
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

// ---------------------------------------------------------------------------
// FollowerAnalyzer

FollowerAnalyzer::FollowerAnalyzer(ShiftSpace space, std::size_t budget)
    : space_(std::move(space)), budget_(budget) {
    sync_words_ = space_.known_sync_words();
    sft_step_ = space_.sft_step();
}

Word FollowerAnalyzer::collapse(const Word& s) const {
    if (sft_step_ && static_cast<int>(s.size()) > *sft_step_)
        return s.substr(s.size() - static_cast<std::size_t>(*sft_step_));
    std::size_t best = Word::npos;
    for (const Word& z : sync_words_) {
        std::size_t pos = s.rfind(z);
        if (pos != Word::npos && (best == Word::npos || pos > best)) best = pos;
    }
    if (best != Word::npos && best > 0) return s.substr(best);
    return s;
}

int FollowerAnalyzer::intern(const std::vector<std::pair<char, int>>& children) {
    auto [it, inserted] = intern_.emplace(children, static_cast<int>(intern_.size()));
    return it->second;
}

int FollowerAnalyzer::follower_signature(const Word& s, int k) {
    // The working word stays the synchronizing tail: recursion on it keeps
    // strings short, while a construction-supplied residual token widens the
    // memoisation further.
    Word tail = collapse(s);
    auto residual = space_.impl().residual_key(tail);
    std::string key = std::to_string(k) + ":" + (residual ? *residual : "w:" + tail);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++spent_ > budget_)
        throw EnumerationBudgetExceeded("follower signature budget exceeded");
    int id;
    if (k == 0) {
        id = intern({});
    } else {
        std::vector<std::pair<char, int>> children;
        for (std::size_t i = 0; i < space_.alphabet().size(); ++i) {
            char a = space_.alphabet().symbol(i);
            Word ext = tail + a;
            if (space_.allows(ext)) children.push_back({a, follower_signature(ext, k - 1)});
        }
        id = intern(children);
    }
    memo_[key] = id;
    return id;
}

std::vector<Word> FollowerAnalyzer::context_tails(const Word& w, int context_len) {
    if (!space_.allows(w)) throw std::invalid_argument("context_tails: word is not allowed");
    // One representative per distinct follower-set token.
    std::map<std::string, Word> records;
    auto record = [&](const Word& tail) {
        auto residual = space_.impl().residual_key(tail);
        records.emplace(residual ? *residual : "w:" + tail, tail);
    };
    std::vector<Word> frontier;
    Word base = collapse(w);
    record(base);
    // Left extensions only matter while the word has not yet collapsed: once a
    // synchronizing tail is fixed, every further extension shares it.
    if (base == w) frontier.push_back(w);
    for (int t = 0; t < context_len && !frontier.empty(); ++t) {
        std::vector<Word> next;
        for (const Word& s : frontier) {
            for (std::size_t i = 0; i < space_.alphabet().size(); ++i) {
                Word ext = space_.alphabet().symbol(i) + s;
                if (++spent_ > budget_)
                    throw EnumerationBudgetExceeded("context enumeration budget exceeded");
                if (!space_.allows(ext)) continue;
                Word tail = collapse(ext);
                record(tail);
                if (tail == ext) next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    std::vector<Word> out;
    for (const auto& [key, rep] : records) out.push_back(rep);
    return out;
}

namespace {

// Exact depth-k follower signatures for automaton presentations: the
// follower set of a word is determined by the set of states its paths end
// in, so signatures are computed on state sets directly.
class SubsetSignatures {
  public:
    explicit SubsetSignatures(const SoficAutomaton& aut) : aut_(aut) {}

    int sig(const std::vector<int>& subset, int k) {
        std::string key = std::to_string(k) + ":";
        for (int s : subset) key += std::to_string(s) + ",";
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        int id;
        if (k == 0) {
            id = intern({});
        } else {
            std::vector<std::pair<char, int>> children;
            for (std::size_t i = 0; i < aut_.alphabet().size(); ++i) {
                char a = aut_.alphabet().symbol(i);
                auto next = aut_.step_set(subset, std::string_view(&a, 1));
                if (!next.empty()) children.push_back({a, sig(next, k - 1)});
            }
            id = intern(children);
        }
        memo_[key] = id;
        return id;
    }

  private:
    int intern(const std::vector<std::pair<char, int>>& children) {
        auto [it, inserted] = intern_.emplace(children, static_cast<int>(intern_.size()));
        return it->second;
    }

    const SoficAutomaton& aut_;
    std::unordered_map<std::string, int> memo_;
    std::map<std::vector<std::pair<char, int>>, int> intern_;
};

long long automaton_follower_count(const SoficAutomaton& aut, const Word& w, int context_len,
                                   int depth) {
    // State sets delta(All, u) over contexts u with |u| <= context_len.
    std::set<std::vector<int>> seen;
    std::deque<std::pair<std::vector<int>, int>> queue;
    auto all = aut.all_states();
    queue.push_back({all, 0});
    seen.insert(all);
    std::set<std::vector<int>> images;
    while (!queue.empty()) {
        auto [subset, len] = queue.front();
        queue.pop_front();
        auto image = aut.step_set(subset, w);
        if (!image.empty()) images.insert(image);
        if (len == context_len) continue;
        for (std::size_t i = 0; i < aut.alphabet().size(); ++i) {
            char a = aut.alphabet().symbol(i);
            auto next = aut.step_set(subset, std::string_view(&a, 1));
            if (!next.empty() && seen.insert(next).second) queue.push_back({next, len + 1});
        }
    }
    SubsetSignatures sigs(aut);
    std::set<int> distinct;
    for (const auto& image : images) distinct.insert(sigs.sig(image, depth));
    return static_cast<long long>(distinct.size());
}

}  // namespace

long long FollowerAnalyzer::distinct_follower_count(const Word& w, int context_len, int depth) {
    if (const SoficAutomaton* aut = space_.automaton())
        return automaton_follower_count(*aut, w, context_len, depth);
    std::set<int> distinct;
    for (const Word& tail : context_tails(w, context_len))
        distinct.insert(follower_signature(tail, depth));
    return static_cast<long long>(distinct.size());
}

long long distinct_follower_count(const ShiftSpace& space, const Word& w, int context_len,
                                  int depth) {
    FollowerAnalyzer analyzer(space);
    return analyzer.distinct_follower_count(w, context_len, depth);
}

// ---------------------------------------------------------------------------
// Classification and boundary reports

WordClassification classify_word(FollowerAnalyzer& analyzer, const Word& w,
                                 const Schedule& schedule) {
    if (schedule.entries.size() < 2)
        throw std::invalid_argument("classification schedule needs at least two entries");
    WordClassification out;
    for (const auto& [len, depth] : schedule.entries)
        out.counts.push_back(analyzer.distinct_follower_count(w, len, depth));
    auto n = out.counts.size();
    out.growing = out.counts[n - 1] != out.counts[n - 2];
    return out;
}

WordClassification classify_word(const ShiftSpace& space, const Word& w,
                                 const Schedule& schedule) {
    FollowerAnalyzer analyzer(space);
    return classify_word(analyzer, w, schedule);
}

namespace {

BoundaryReport assemble_report(int max_len, const Schedule& schedule,
                               const std::vector<Word>& words,
                               const std::vector<WordClassification>& verdicts) {
    BoundaryReport report;
    report.max_len = max_len;
    report.schedule = schedule;
    std::set<Word> growing;
    for (std::size_t i = 0; i < words.size(); ++i) {
        report.counts[words[i]] = verdicts[i].counts;
        if (verdicts[i].growing) growing.insert(words[i]);
    }
    // The boundary language is factorial, so any word with a growing
    // extension within the horizon is promoted as well.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Word& w : words) {
            if (growing.count(w)) continue;
            for (const Word& g : growing) {
                if (g.find(w) != Word::npos) {
                    growing.insert(w);
                    changed = true;
                    break;
                }
            }
        }
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (growing.count(words[i]))
            report.growing.push_back(words[i]);
        else
            report.stabilized[words[i]] = verdicts[i].stabilized_count();
    }
    std::sort(report.growing.begin(), report.growing.end());
    return report;
}

}  // namespace

BoundaryReport boundary_estimate(const ShiftSpace& space, int max_len, const Schedule& schedule,
                                 std::size_t budget) {
    std::vector<Word> words = words_up_to_length(space, max_len, budget);
    std::vector<WordClassification> verdicts(words.size());
    FollowerAnalyzer analyzer(space);
    for (std::size_t i = 0; i < words.size(); ++i)
        verdicts[i] = classify_word(analyzer, words[i], schedule);
    return assemble_report(max_len, schedule, words, verdicts);
}

BoundaryReport boundary_estimate_parallel(const ShiftSpace& space, int max_len,
                                          const Schedule& schedule, std::size_t budget) {
    std::vector<Word> words = words_up_to_length(space, max_len, budget);
    std::vector<WordClassification> verdicts(words.size());
#ifdef _OPENMP
#pragma omp parallel
    {
        // Analyzers memoise internally, so each thread owns one.
        FollowerAnalyzer analyzer(space);
#pragma omp for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(words.size()); ++i)
            verdicts[static_cast<std::size_t>(i)] =
                classify_word(analyzer, words[static_cast<std::size_t>(i)], schedule);
    }
#else
    FollowerAnalyzer analyzer(space);
    for (std::size_t i = 0; i < words.size(); ++i)
        verdicts[i] = classify_word(analyzer, words[i], schedule);
#endif
    return assemble_report(max_len, schedule, words, verdicts);
}

std::string BoundaryReport::serialize() const {
    json j;
    j["L"] = max_len;
    json sched = json::array();
    for (const auto& [len, depth] : schedule.entries) sched.push_back({len, depth});
    j["schedule"] = sched;
    j["growing"] = growing;
    json stab = json::object();
    for (const auto& [w, c] : stabilized) stab[w.empty() ? "(empty)" : w] = c;
    j["stabilized"] = stab;
    json counts_json = json::object();
    for (const auto& [w, cs] : counts) counts_json[w.empty() ? "(empty)" : w] = cs;
    j["counts"] = counts_json;
    return j.dump();
}

BoundaryReport BoundaryReport::deserialize(const std::string& text) {
    json j = json::parse(text);
    BoundaryReport report;
    report.max_len = j.at("L").get<int>();
    for (const auto& e : j.at("schedule"))
        report.schedule.entries.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    report.growing = j.at("growing").get<std::vector<Word>>();
    auto decode = [](const std::string& s) { return s == "(empty)" ? Word("") : Word(s); };
    for (const auto& [w, c] : j.at("stabilized").items())
        report.stabilized[decode(w)] = c.get<long long>();
    for (const auto& [w, cs] : j.at("counts").items())
        report.counts[decode(w)] = cs.get<std::vector<long long>>();
    return report;
}

std::string BoundaryReport::to_csv() const {
    std::ostringstream out;
    out << "\"word\",\"verdict\"";
    for (const auto& [len, depth] : schedule.entries)
        out << ",\"count_l" << len << "_k" << depth << "\"";
    out << "\n";
    std::set<Word> growing_set(growing.begin(), growing.end());
    for (const auto& [w, cs] : counts) {
        out << "\"" << w << "\",\"" << (growing_set.count(w) ? "growing" : "stabilized") << "\"";
        for (long long c : cs) out << ",\"" << c << "\"";
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Exact dispatches

std::optional<ShiftSpace> boundary_exact(const ShiftSpace& space) {
    auto impl = space.impl().exact_boundary();
    if (!impl) return std::nullopt;
    return ShiftSpace(std::move(impl));
}

std::optional<bool> is_sofic_exact(const ShiftSpace& space) { return space.sofic_exact(); }

EventualSoficResult eventual_sofic_level(const ShiftSpace& space, int max_level) {
    EventualSoficResult result;
    ShiftSpace current = space;
    for (int level = 0; level <= max_level; ++level) {
        result.chain.push_back(current.kind());
        if (current.empty_space()) {
            result.diagnostic = "boundary chain reached the empty space at level " +
                                std::to_string(level);
            return result;
        }
        auto sofic = is_sofic_exact(current);
        if (!sofic.has_value()) {
            result.diagnostic = "soficity undecided for kind '" + current.kind() +
                                "' at level " + std::to_string(level);
            return result;
        }
        if (*sofic) {
            result.level = level;
            return result;
        }
        auto next = boundary_exact(current);
        if (!next.has_value()) {
            result.diagnostic = "exact boundary unknown for kind '" + current.kind() +
                                "' at level " + std::to_string(level);
            return result;
        }
        current = *next;
    }
    result.diagnostic = "no sofic boundary within " + std::to_string(max_level) + " iterations";
    return result;
}

// ---------------------------------------------------------------------------
// Synchronizing words

namespace {

// Exact decision on an automaton: w is synchronizing iff all context images
// delta(S, w) have the same (untruncated) future language. Futures are
// compared by partition refinement over the reachable subset closure.
SyncVerdict automaton_sync_check(const SoficAutomaton& aut, const Word& w) {
    std::set<std::vector<int>> contexts;
    std::deque<std::vector<int>> queue;
    auto all = aut.all_states();
    contexts.insert(all);
    queue.push_back(all);
    while (!queue.empty()) {
        auto subset = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < aut.alphabet().size(); ++i) {
            char a = aut.alphabet().symbol(i);
            auto next = aut.step_set(subset, std::string_view(&a, 1));
            if (!next.empty() && contexts.insert(next).second) queue.push_back(next);
        }
    }
    std::set<std::vector<int>> images;
    for (const auto& subset : contexts) {
        auto image = aut.step_set(subset, w);
        if (!image.empty()) images.insert(image);
    }
    if (images.size() <= 1) return SyncVerdict::Certified;
    // Close the image family under single steps, then refine.
    std::set<std::vector<int>> universe = images;
    std::deque<std::vector<int>> todo(images.begin(), images.end());
    while (!todo.empty()) {
        auto subset = todo.front();
        todo.pop_front();
        for (std::size_t i = 0; i < aut.alphabet().size(); ++i) {
            char a = aut.alphabet().symbol(i);
            auto next = aut.step_set(subset, std::string_view(&a, 1));
            if (!next.empty() && universe.insert(next).second) todo.push_back(next);
        }
    }
    std::map<std::vector<int>, int> cls;
    for (const auto& s : universe) cls[s] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::vector<std::pair<char, int>>, int> next_ids;
        std::map<std::vector<int>, int> next_cls;
        for (const auto& [subset, c] : cls) {
            std::vector<std::pair<char, int>> signature;
            signature.push_back({'\0', c});
            for (std::size_t i = 0; i < aut.alphabet().size(); ++i) {
                char a = aut.alphabet().symbol(i);
                auto next = aut.step_set(subset, std::string_view(&a, 1));
                signature.push_back({a, next.empty() ? -1 : cls.at(next)});
            }
            auto [it, ins] = next_ids.emplace(signature, static_cast<int>(next_ids.size()));
            next_cls[subset] = it->second;
        }
        if (next_cls != cls) {
            changed = true;
            cls = std::move(next_cls);
        }
    }
    std::set<int> image_classes;
    for (const auto& image : images) image_classes.insert(cls.at(image));
    return image_classes.size() == 1 ? SyncVerdict::Certified : SyncVerdict::Refuted;
}

}  // namespace

SyncVerdict sync_check_generic(const ShiftSpace& space, const Word& w, int depth) {
    if (!space.allows(w)) throw std::invalid_argument("sync check: word is not allowed");
    FollowerAnalyzer analyzer(space);
    std::vector<Word> tails = analyzer.context_tails(w, depth);
    // Walk the follower tree of w; any tail that cannot read an allowed
    // follower refutes the synchronizing property.
    std::vector<Word> frontier{""};
    for (int len = 0; len < depth && !frontier.empty(); ++len) {
        std::vector<Word> next;
        for (const Word& v : frontier) {
            for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
                Word ext = v + space.alphabet().symbol(i);
                if (!space.allows(w + ext)) continue;
                for (const Word& tail : tails)
                    if (!space.allows(tail + ext)) return SyncVerdict::Refuted;
                next.push_back(ext);
            }
        }
        frontier = std::move(next);
    }
    return SyncVerdict::DepthLimited;
}

SyncVerdict is_synchronizing(const ShiftSpace& space, const Word& w, int depth) {
    if (!space.allows(w)) throw std::invalid_argument("sync check: word is not allowed");
    if (!w.empty()) {
        // A word containing a synchronizing factor z, say w = pzq, satisfies
        // F(uw) = F(zq) = F(w) for every predecessor u, hence is itself
        // synchronizing.
        for (const Word& z : space.known_sync_words())
            if (w.find(z) != Word::npos) return SyncVerdict::Certified;
        if (auto step = space.sft_step(); step && static_cast<int>(w.size()) >= *step)
            return SyncVerdict::Certified;
    }
    if (const SoficAutomaton* aut = space.automaton()) return automaton_sync_check(*aut, w);
    return sync_check_generic(space, w, depth);
}

}  // namespace shiftlab
