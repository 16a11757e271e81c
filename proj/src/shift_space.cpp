#include "shiftlab/shift_space.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace shiftlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// SoficAutomaton

SoficAutomaton::SoficAutomaton(std::vector<std::string> state_names, Alphabet alphabet,
                               std::map<std::pair<int, char>, int> transitions)
    : names_(std::move(state_names)), alphabet_(std::move(alphabet)) {
    int n = static_cast<int>(names_.size());
    for (const auto& [key, to] : transitions) {
        if (key.first < 0 || key.first >= n || to < 0 || to >= n)
            throw std::invalid_argument("transition references an unknown state");
        if (!alphabet_.contains(key.second))
            throw std::invalid_argument("transition labelled outside the alphabet");
    }
    // Keep only states on a bi-infinite path: repeatedly drop states without
    // an outgoing or without an incoming transition.
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<bool> has_out(n, false), has_in(n, false);
        for (const auto& [key, to] : transitions) {
            if (alive[key.first] && alive[to]) {
                has_out[key.first] = true;
                has_in[to] = true;
            }
        }
        for (int s = 0; s < n; ++s) {
            if (alive[s] && (!has_out[s] || !has_in[s])) {
                alive[s] = false;
                changed = true;
            }
        }
    }
    std::vector<int> remap(n, -1);
    std::vector<std::string> kept;
    for (int s = 0; s < n; ++s) {
        if (alive[s]) {
            remap[s] = static_cast<int>(kept.size());
            kept.push_back(names_[s]);
        }
    }
    if (kept.empty()) throw std::invalid_argument("automaton has no live state");
    for (const auto& [key, to] : transitions)
        if (alive[key.first] && alive[to])
            transitions_[{remap[key.first], key.second}] = remap[to];
    names_ = std::move(kept);
}

int SoficAutomaton::step(int state, char symbol) const {
    auto it = transitions_.find({state, symbol});
    return it == transitions_.end() ? -1 : it->second;
}

std::vector<int> SoficAutomaton::step_set(const std::vector<int>& states, std::string_view w) const {
    std::vector<int> cur = states;
    for (char c : w) {
        std::vector<int> next;
        for (int s : cur) {
            int t = step(s, c);
            if (t >= 0) next.push_back(t);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
        if (cur.empty()) break;
    }
    return cur;
}

std::vector<int> SoficAutomaton::all_states() const {
    std::vector<int> v(names_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
    return v;
}

bool SoficAutomaton::reads(std::string_view w) const { return !step_set(all_states(), w).empty(); }

// ---------------------------------------------------------------------------
// SftSpace

SftSpace::SftSpace(Alphabet alphabet, int step, std::set<Word> windows)
    : alphabet_(std::move(alphabet)), step_(step) {
    if (step_ < 1) throw std::invalid_argument("SFT step must be positive");
    for (const Word& w : windows)
        if (static_cast<int>(w.size()) != step_ + 1 || !alphabet_.contains_word(w))
            throw std::invalid_argument("window of wrong length or outside the alphabet: " + w);
    // Prune windows that cannot continue in either direction.
    std::set<Word> live = std::move(windows);
    bool changed = true;
    while (changed && !live.empty()) {
        changed = false;
        std::set<std::string> prefixes, suffixes;
        for (const Word& w : live) {
            prefixes.insert(w.substr(0, step_));
            suffixes.insert(w.substr(1));
        }
        for (auto it = live.begin(); it != live.end();) {
            bool ok = suffixes.count(it->substr(0, step_)) && prefixes.count(it->substr(1));
            if (!ok) {
                it = live.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    windows_.assign(live.begin(), live.end());
}

SftSpace SftSpace::from_forbidden(const Alphabet& alphabet, const std::vector<Word>& forbidden) {
    int maxlen = 1;
    for (const Word& f : forbidden) {
        if (f.empty() || !alphabet.contains_word(f))
            throw std::invalid_argument("forbidden word must be non-empty and over the alphabet");
        maxlen = std::max<int>(maxlen, static_cast<int>(f.size()));
    }
    int step = std::max(1, maxlen - 1);
    std::set<Word> windows;
    Word w;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(w.size()) == step + 1) {
            for (const Word& f : forbidden)
                if (w.find(f) != std::string::npos) return;
            windows.insert(w);
            return;
        }
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            w.push_back(alphabet.symbol(i));
            rec();
            w.pop_back();
        }
    };
    rec();
    return SftSpace(alphabet, step, std::move(windows));
}

bool SftSpace::allows(std::string_view w) const {
    if (windows_.empty()) return false;
    if (w.empty()) return true;
    if (static_cast<int>(w.size()) <= step_) {
        for (const Word& win : windows_)
            if (win.find(w) != std::string::npos) return true;
        return false;
    }
    for (std::size_t i = 0; i + step_ < w.size(); ++i) {
        Word win(w.substr(i, step_ + 1));
        if (!std::binary_search(windows_.begin(), windows_.end(), win)) return false;
    }
    return true;
}

bool SftSpace::allows_cycle(const Word& u) const {
    if (u.empty()) return false;
    Word rep = u;
    while (static_cast<int>(rep.size()) < step_ + 1 + static_cast<int>(u.size())) rep += u;
    return allows(rep);
}

bool SftSpace::contains_windows_of(const SftSpace& other) const {
    return std::all_of(other.windows().begin(), other.windows().end(),
                       [&](const Word& w) { return allows(w); });
}

// ---------------------------------------------------------------------------
// Behaviour implementations

namespace {

std::shared_ptr<const ShiftSpaceImpl> empty_boundary(const Alphabet& a);

class SftImpl final : public ShiftSpaceImpl {
  public:
    SftImpl(SftSpace sft, std::optional<std::vector<Word>> forbidden_origin)
        : sft_(std::move(sft)), forbidden_(std::move(forbidden_origin)) {}

    const Alphabet& alphabet() const override { return sft_.alphabet(); }
    std::string kind() const override { return forbidden_ ? "sft-forbidden" : "sft-windows"; }
    bool allows(std::string_view w) const override { return sft_.allows(w); }
    bool is_empty_space() const override { return sft_.empty_space(); }
    std::optional<int> sft_step() const override { return sft_.step(); }
    std::optional<bool> sofic_exact() const override { return true; }
    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        return empty_boundary(alphabet());
    }
    const SftSpace& sft() const { return sft_; }

    std::string describe() const override {
        json j;
        j["kind"] = kind();
        j["alphabet"] = sft_.alphabet().symbols();
        if (forbidden_) {
            j["forbidden"] = *forbidden_;
        } else {
            j["step"] = sft_.step();
            j["windows"] = sft_.windows();
        }
        return j.dump();
    }

  private:
    SftSpace sft_;
    std::optional<std::vector<Word>> forbidden_;
};

class FullShiftImpl final : public ShiftSpaceImpl {
  public:
    explicit FullShiftImpl(Alphabet a) : alphabet_(std::move(a)) {}
    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "full"; }
    bool allows(std::string_view) const override { return true; }
    std::optional<int> sft_step() const override { return 1; }
    std::optional<bool> sofic_exact() const override { return true; }
    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        return empty_boundary(alphabet_);
    }
    std::string describe() const override {
        json j;
        j["kind"] = "full";
        j["alphabet"] = alphabet_.symbols();
        return j.dump();
    }

  private:
    Alphabet alphabet_;
};

class SoficImpl final : public ShiftSpaceImpl {
  public:
    explicit SoficImpl(SoficAutomaton automaton, std::string kind_name = "sofic")
        : automaton_(std::move(automaton)), kind_(std::move(kind_name)) {}

    const Alphabet& alphabet() const override { return automaton_.alphabet(); }
    std::string kind() const override { return kind_; }
    bool allows(std::string_view w) const override { return automaton_.reads(w); }
    const SoficAutomaton* automaton() const override { return &automaton_; }
    std::optional<bool> sofic_exact() const override { return true; }
    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        return empty_boundary(alphabet());
    }

    std::string describe() const override {
        json j;
        j["kind"] = kind_;
        if (kind_ == "sofic") {
            j["alphabet"] = automaton_.alphabet().symbols();
            std::vector<std::string> names;
            for (std::size_t s = 0; s < automaton_.state_count(); ++s)
                names.push_back(automaton_.state_name(static_cast<int>(s)));
            j["states"] = names;
            json trans = json::array();
            for (const auto& [key, to] : automaton_.transitions()) {
                json t;
                t["from"] = names[key.first];
                t["symbol"] = std::string(1, key.second);
                t["to"] = names[to];
                trans.push_back(t);
            }
            j["transitions"] = trans;
        }
        return j.dump();
    }

  private:
    SoficAutomaton automaton_;
    std::string kind_;
};

class EvenShiftImpl final : public ShiftSpaceImpl {
  public:
    EvenShiftImpl()
        : automaton_({"e", "o"}, Alphabet("01"),
                     {{{0, '1'}, 0}, {{0, '0'}, 1}, {{1, '0'}, 0}}) {}

    const Alphabet& alphabet() const override { return automaton_.alphabet(); }
    std::string kind() const override { return "even"; }
    bool allows(std::string_view w) const override { return automaton_.reads(w); }
    const SoficAutomaton* automaton() const override { return &automaton_; }
    std::optional<bool> sofic_exact() const override { return true; }
    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        return empty_boundary(alphabet());
    }
    std::vector<Word> known_sync_words() const override { return {"1", "01", "10"}; }
    std::string describe() const override { return json{{"kind", "even"}}.dump(); }

  private:
    SoficAutomaton automaton_;
};

// Sequences over {a,b,c} with no factor a b^m c^n a for m != n.
class ContextFreeImpl final : public ShiftSpaceImpl {
  public:
    ContextFreeImpl() : alphabet_("abc") {}
    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "context-free"; }
    std::optional<bool> sofic_exact() const override { return false; }
    std::vector<Word> known_sync_words() const override { return {"a", "cb"}; }
    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        return std::make_shared<SftImpl>(SftSpace::from_forbidden(Alphabet("bc"), {"cb"}),
                                         std::vector<Word>{"cb"});
    }

    bool allows(std::string_view w) const override {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != 'a') continue;
            std::size_t j = i + 1;
            std::size_t m = 0, n = 0;
            while (j < w.size() && w[j] == 'b') ++j, ++m;
            while (j < w.size() && w[j] == 'c') ++j, ++n;
            if (j < w.size() && w[j] == 'a' && m != n) return false;
        }
        return true;
    }

    std::string describe() const override { return json{{"kind", "context-free"}}.dump(); }

  private:
    Alphabet alphabet_;
};

class MorseImpl final : public ShiftSpaceImpl {
  public:
    MorseImpl() : alphabet_("01") {}
    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "morse"; }
    bool allows(std::string_view w) const override { return shared_morse_oracle().is_factor(w); }
    std::optional<bool> sofic_exact() const override { return false; }
    bool has_no_sync_word() const override { return true; }
    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        return shared_from_this();
    }
    std::string describe() const override { return json{{"kind", "morse"}}.dump(); }

  private:
    Alphabet alphabet_;
};

// Binary sequences whose 0-runs between consecutive 1s lie in the gap set.
class SGapImpl final : public ShiftSpaceImpl {
  public:
    explicit SGapImpl(IntSet gaps) : alphabet_("01"), gaps_(std::move(gaps)) {}

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "s-gap"; }
    std::optional<bool> sofic_exact() const override {
        return gaps_.differences_eventually_periodic();
    }
    const IntSet& gaps() const { return gaps_; }

    bool allows(std::string_view w) const override {
        long long run = 0;
        bool seen_one = false;
        for (char c : w) {
            if (c == '0') {
                ++run;
                continue;
            }
            if (seen_one) {
                if (!gaps_.contains(run)) return false;
            } else {
                if (!gaps_.contains_geq(run)) return false;
                seen_one = true;
            }
            run = 0;
        }
        return gaps_.contains_geq(run);
    }

    std::vector<Word> known_sync_words() const override {
        std::vector<Word> out{"1"};
        for (Word w : {Word("01"), Word("10")})
            if (allows(w)) out.push_back(w);
        return out;
    }

    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        if (gaps_.differences_eventually_periodic()) return empty_boundary(alphabet());
        return std::make_shared<SftImpl>(SftSpace(Alphabet("01"), 1, {"00"}), std::nullopt);
    }

    std::string describe() const override {
        json j;
        j["kind"] = "s-gap";
        j["S"] = gaps_.serialize();
        return j.dump();
    }

  private:
    Alphabet alphabet_;
    IntSet gaps_;
};

class SGraphImpl final : public ShiftSpaceImpl {
  public:
    SGraphImpl(Alphabet alphabet, std::vector<std::pair<char, char>> edges,
               std::map<char, IntSet> runs)
        : alphabet_(std::move(alphabet)), edges_(std::move(edges)), runs_(std::move(runs)) {
        for (const auto& [from, to] : edges_) {
            if (!alphabet_.contains(from) || !alphabet_.contains(to))
                throw std::invalid_argument("edge endpoint outside the alphabet");
            if (from == to) throw std::invalid_argument("run-length graphs must be loop-free");
        }
        for (std::size_t i = 0; i < alphabet_.size(); ++i) {
            char a = alphabet_.symbol(i);
            if (!runs_.count(a)) throw std::invalid_argument("missing run set for a letter");
            if (runs_.at(a).contains(0))
                throw std::invalid_argument("run lengths must be strictly positive");
            bool has_out = std::any_of(edges_.begin(), edges_.end(),
                                       [&](const auto& e) { return e.first == a; });
            if (!has_out) throw std::invalid_argument("every letter needs an outgoing edge");
        }
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "s-graph"; }
    const std::map<char, IntSet>& runs() const { return runs_; }
    const std::vector<std::pair<char, char>>& edges() const { return edges_; }

    std::optional<bool> sofic_exact() const override {
        for (const auto& [a, s] : runs_)
            if (!s.differences_eventually_periodic()) return false;
        return true;
    }

    bool has_edge(char from, char to) const {
        return std::find(edges_.begin(), edges_.end(), std::make_pair(from, to)) != edges_.end();
    }

    bool allows(std::string_view w) const override {
        // Decompose into maximal runs; interior runs must hit the run set
        // exactly, boundary runs only need an element at least as large.
        std::vector<std::pair<char, long long>> blocks;
        for (char c : w) {
            if (!blocks.empty() && blocks.back().first == c)
                ++blocks.back().second;
            else
                blocks.push_back({c, 1});
        }
        for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
            if (!has_edge(blocks[i].first, blocks[i + 1].first)) return false;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const IntSet& s = runs_.at(blocks[i].first);
            bool interior = (i > 0 && i + 1 < blocks.size());
            if (interior ? !s.contains(blocks[i].second) : !s.contains_geq(blocks[i].second))
                return false;
        }
        return true;
    }

    std::vector<Word> known_sync_words() const override {
        std::vector<Word> out;
        for (const auto& [from, to] : edges_) out.push_back(Word{from, to});
        std::sort(out.begin(), out.end());
        return out;
    }

    // Fixed points a^inf with non-eventually-periodic run-length differences
    // are exactly the boundary; everything else is screened off by the
    // synchronizing edge words.
    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        std::set<Word> windows;
        for (const auto& [a, s] : runs_)
            if (!s.differences_eventually_periodic()) windows.insert(Word{a, a});
        if (windows.empty()) return empty_boundary(alphabet());
        return std::make_shared<SftImpl>(SftSpace(alphabet_, 1, windows), std::nullopt);
    }

    std::string describe() const override {
        json j;
        j["kind"] = "s-graph";
        j["alphabet"] = alphabet_.symbols();
        json e = json::array();
        for (const auto& [from, to] : edges_) e.push_back(Word{from, to});
        j["edges"] = e;
        json r = json::object();
        for (const auto& [a, s] : runs_) r[std::string(1, a)] = s.serialize();
        j["S"] = r;
        return j.dump();
    }

  private:
    Alphabet alphabet_;
    std::vector<std::pair<char, char>> edges_;
    std::map<char, IntSet> runs_;
};

class EmptyImpl final : public ShiftSpaceImpl {
  public:
    explicit EmptyImpl(Alphabet a) : alphabet_(std::move(a)) {}
    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "empty"; }
    bool allows(std::string_view) const override { return false; }
    bool is_empty_space() const override { return true; }
    std::optional<bool> sofic_exact() const override { return true; }
    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        return shared_from_this();
    }
    std::string describe() const override {
        json j;
        j["kind"] = "empty";
        j["alphabet"] = alphabet_.symbols();
        return j.dump();
    }

  private:
    Alphabet alphabet_;
};

std::shared_ptr<const ShiftSpaceImpl> empty_boundary(const Alphabet& a) {
    return std::make_shared<EmptyImpl>(a);
}

}  // namespace

ShiftSpace SftSpace::as_shift_space() const {
    return ShiftSpace(std::make_shared<SftImpl>(*this, std::nullopt));
}

// ---------------------------------------------------------------------------
// ShiftSpace wrapper

bool ShiftSpace::allows(std::string_view w) const {
    if (!alphabet().contains_word(w))
        throw std::invalid_argument("word uses symbols outside the space's alphabet");
    if (impl_->is_empty_space()) return false;
    if (w.empty()) return true;
    return impl_->allows(w);
}

std::string ShiftSpace::serialize() const { return impl_->describe(); }

// ---------------------------------------------------------------------------
// Constructors

ShiftSpace make_full_shift(const Alphabet& alphabet) {
    return ShiftSpace(std::make_shared<FullShiftImpl>(alphabet));
}

ShiftSpace sft_from_word_set(const Alphabet& alphabet, int step, const std::set<Word>& windows) {
    return ShiftSpace(std::make_shared<SftImpl>(SftSpace(alphabet, step, windows), std::nullopt));
}

ShiftSpace make_golden_mean() {
    auto sft = SftSpace::from_forbidden(Alphabet("01"), {"11"});
    return ShiftSpace(std::make_shared<SftImpl>(std::move(sft), std::vector<Word>{"11"}));
}

ShiftSpace make_even_shift() { return ShiftSpace(std::make_shared<EvenShiftImpl>()); }

ShiftSpace make_context_free_shift() { return ShiftSpace(std::make_shared<ContextFreeImpl>()); }

ShiftSpace make_morse_shift() { return ShiftSpace(std::make_shared<MorseImpl>()); }

ShiftSpace make_s_gap_shift(const IntSet& gaps) {
    return ShiftSpace(std::make_shared<SGapImpl>(gaps));
}

ShiftSpace make_s_graph_shift(const Alphabet& alphabet,
                              const std::vector<std::pair<char, char>>& edges,
                              const std::map<char, IntSet>& runs) {
    return ShiftSpace(std::make_shared<SGraphImpl>(alphabet, edges, runs));
}

ShiftSpace make_empty_space(const Alphabet& alphabet) {
    return ShiftSpace(std::make_shared<EmptyImpl>(alphabet));
}

ShiftSpace sofic_from_table(std::vector<std::string> state_names, Alphabet alphabet,
                            std::map<std::pair<int, char>, int> transitions) {
    return ShiftSpace(std::make_shared<SoficImpl>(
        SoficAutomaton(std::move(state_names), std::move(alphabet), std::move(transitions))));
}

const SftSpace* as_sft(const ShiftSpace& space) {
    if (const auto* impl = dynamic_cast<const SftImpl*>(&space.impl())) return &impl->sft();
    return nullptr;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Word> words_of_length(const ShiftSpace& space, int n, std::size_t budget) {
    if (space.empty_space()) return {};
    std::vector<Word> frontier{""};
    std::size_t inspected = 0;
    for (int len = 0; len < n; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
                Word ext = w + space.alphabet().symbol(i);
                if (++inspected > budget)
                    throw EnumerationBudgetExceeded("word enumeration budget exceeded");
                if (space.allows(ext)) next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return frontier;
}

std::vector<Word> words_up_to_length(const ShiftSpace& space, int max_len, std::size_t budget) {
    std::vector<Word> out;
    if (space.empty_space()) return out;
    out.push_back("");
    std::vector<Word> frontier{""};
    std::size_t inspected = 0;
    for (int len = 0; len < max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
                Word ext = w + space.alphabet().symbol(i);
                if (++inspected > budget)
                    throw EnumerationBudgetExceeded("word enumeration budget exceeded");
                if (space.allows(ext)) next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
        out.insert(out.end(), frontier.begin(), frontier.end());
        if (frontier.empty()) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization registry

namespace {

std::map<std::string, SpaceParser>& parser_registry() {
    static std::map<std::string, SpaceParser> registry;
    return registry;
}

ShiftSpace parse_builtin(const std::string& text) {
    json j = json::parse(text);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "full") return make_full_shift(Alphabet(j.at("alphabet").get<std::string>()));
    if (kind == "even") return make_even_shift();
    if (kind == "context-free") return make_context_free_shift();
    if (kind == "morse") return make_morse_shift();
    if (kind == "empty") return make_empty_space(Alphabet(j.at("alphabet").get<std::string>()));
    if (kind == "s-gap") return make_s_gap_shift(IntSet::deserialize(j.at("S").get<std::string>()));
    if (kind == "s-graph") {
        Alphabet a(j.at("alphabet").get<std::string>());
        std::vector<std::pair<char, char>> edges;
        for (const auto& e : j.at("edges")) {
            std::string s = e.get<std::string>();
            edges.push_back({s.at(0), s.at(1)});
        }
        std::map<char, IntSet> runs;
        for (const auto& [key, val] : j.at("S").items())
            runs.emplace(key.at(0), IntSet::deserialize(val.get<std::string>()));
        return make_s_graph_shift(a, edges, runs);
    }
    if (kind == "sft-forbidden") {
        Alphabet a(j.at("alphabet").get<std::string>());
        std::vector<Word> forbidden = j.at("forbidden").get<std::vector<Word>>();
        auto sft = SftSpace::from_forbidden(a, forbidden);
        return ShiftSpace(std::make_shared<SftImpl>(std::move(sft), forbidden));
    }
    if (kind == "sft-windows") {
        Alphabet a(j.at("alphabet").get<std::string>());
        auto windows = j.at("windows").get<std::vector<Word>>();
        return sft_from_word_set(a, j.at("step").get<int>(),
                                 std::set<Word>(windows.begin(), windows.end()));
    }
    if (kind == "sofic") {
        Alphabet a(j.at("alphabet").get<std::string>());
        auto names = j.at("states").get<std::vector<std::string>>();
        std::map<std::string, int> index;
        for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
        std::map<std::pair<int, char>, int> transitions;
        for (const auto& t : j.at("transitions")) {
            int from = index.at(t.at("from").get<std::string>());
            int to = index.at(t.at("to").get<std::string>());
            transitions[{from, t.at("symbol").get<std::string>().at(0)}] = to;
        }
        return sofic_from_table(names, a, transitions);
    }
    throw std::invalid_argument("unknown shift-space kind: " + kind);
}

}  // namespace

void register_space_kind(const std::string& kind, SpaceParser parser) {
    parser_registry()[kind] = std::move(parser);
}

void register_construction_kinds();  // defined with the interspersion code

ShiftSpace ShiftSpace::deserialize(const std::string& text) {
    register_construction_kinds();
    json j = json::parse(text);
    std::string kind = j.at("kind").get<std::string>();
    auto it = parser_registry().find(kind);
    if (it != parser_registry().end()) return it->second(text);
    return parse_builtin(text);
}

}  // namespace shiftlab
