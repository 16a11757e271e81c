#include "shiftlab/constructions.hpp"

#include <json.hpp>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace shiftlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// WordFamily

WordFamily WordFamily::lengths(IntSet lengths) {
    return WordFamily(Kind::Lengths, std::move(lengths), {});
}

WordFamily WordFamily::morse_words() { return WordFamily(Kind::MorseWords, IntSet::all(), {}); }

WordFamily WordFamily::explicit_list(std::vector<Word> words) {
    if (words.empty()) throw std::invalid_argument("explicit word family must be non-empty");
    std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return WordFamily(Kind::Explicit, IntSet::all(), std::move(words));
}

namespace {

// Smallest n with 2^n >= len.
unsigned morse_level(std::size_t len) {
    unsigned n = 0;
    std::size_t p = 1;
    while (p < len) {
        p *= 2;
        ++n;
    }
    return n;
}

bool is_suffix(const Word& w, const Word& of) {
    return w.size() <= of.size() && of.compare(of.size() - w.size(), w.size(), w) == 0;
}

bool is_prefix(const Word& w, const Word& of) {
    return w.size() <= of.size() && of.compare(0, w.size(), w) == 0;
}

}  // namespace

bool WordFamily::contains(const ShiftSpace& base, const Word& w) const {
    switch (kind_) {
        case Kind::Lengths:
            return lengths_.contains(static_cast<long long>(w.size())) && base.allows(w);
        case Kind::MorseWords: {
            if (w.empty()) return false;
            unsigned n = morse_level(w.size());
            return w.size() == (std::size_t{1} << n) && w == morse_word(n);
        }
        case Kind::Explicit:
            return std::find(words_.begin(), words_.end(), w) != words_.end();
    }
    return false;
}

bool WordFamily::prefix_of_member(const ShiftSpace& base, const Word& w) const {
    switch (kind_) {
        case Kind::Lengths:
            // Right extendability: an allowed word stretches to any longer
            // allowed word, so only the existence of a large enough length matters.
            return base.allows(w) && lengths_.contains_geq(static_cast<long long>(w.size()));
        case Kind::MorseWords:
            // Every substitution word is a prefix of all later ones.
            return is_prefix(w, morse_word(morse_level(w.size())));
        case Kind::Explicit:
            return std::any_of(words_.begin(), words_.end(),
                               [&](const Word& m) { return is_prefix(w, m); });
    }
    return false;
}

bool WordFamily::suffix_of_member(const ShiftSpace& base, const Word& w) const {
    switch (kind_) {
        case Kind::Lengths:
            return base.allows(w) && lengths_.contains_geq(static_cast<long long>(w.size()));
        case Kind::MorseWords: {
            // For lengths <= 2^n the suffixes of all theta_m, m >= n, are the
            // suffixes of theta_n together with those of its complement.
            Word theta = morse_word(morse_level(w.size()));
            return is_suffix(w, theta) || is_suffix(w, morse_complement(theta));
        }
        case Kind::Explicit:
            return std::any_of(words_.begin(), words_.end(),
                               [&](const Word& m) { return is_suffix(w, m); });
    }
    return false;
}

bool WordFamily::factor_of_member(const ShiftSpace& base, const Word& w) const {
    switch (kind_) {
        case Kind::Lengths:
            return base.allows(w) && lengths_.contains_geq(static_cast<long long>(w.size()));
        case Kind::MorseWords:
            // The substitution words exhaust the factors of the fixed point.
            return base.allows(w);
        case Kind::Explicit:
            return std::any_of(words_.begin(), words_.end(), [&](const Word& m) {
                return m.find(w) != Word::npos;
            });
    }
    return false;
}

bool WordFamily::finite_family(const ShiftSpace& base) const {
    (void)base;
    switch (kind_) {
        case Kind::Lengths:
            return lengths_.finite_set();
        case Kind::MorseWords:
            return false;
        case Kind::Explicit:
            return true;
    }
    return true;
}

std::vector<Word> WordFamily::enumerate(const ShiftSpace& base, int max_len,
                                        std::size_t budget) const {
    std::vector<Word> out;
    switch (kind_) {
        case Kind::Lengths: {
            for (int n = 0; n <= max_len; ++n) {
                if (!lengths_.contains(n)) continue;
                for (Word& w : words_of_length(base, n, budget)) out.push_back(std::move(w));
            }
            break;
        }
        case Kind::MorseWords: {
            for (unsigned n = 0; (std::size_t{1} << n) <= static_cast<std::size_t>(max_len); ++n)
                out.push_back(morse_word(n));
            break;
        }
        case Kind::Explicit: {
            for (const Word& w : words_)
                if (static_cast<int>(w.size()) <= max_len) out.push_back(w);
            break;
        }
    }
    return out;
}

std::string WordFamily::serialize() const {
    switch (kind_) {
        case Kind::Lengths:
            return "lengths:" + lengths_.serialize();
        case Kind::MorseWords:
            return "morse-words";
        case Kind::Explicit: {
            std::string s = "explicit:";
            for (std::size_t i = 0; i < words_.size(); ++i) {
                if (i) s += ',';
                s += words_[i];
            }
            return s;
        }
    }
    return "";
}

WordFamily WordFamily::deserialize(const std::string& text) {
    if (text == "morse-words") return morse_words();
    if (text.rfind("lengths:", 0) == 0) return lengths(IntSet::deserialize(text.substr(8)));
    if (text.rfind("explicit:", 0) == 0) {
        std::vector<Word> words;
        std::string body = text.substr(9);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            if (comma == std::string::npos) comma = body.size();
            words.push_back(body.substr(pos, comma - pos));
            pos = comma + 1;
        }
        return explicit_list(std::move(words));
    }
    throw std::invalid_argument("bad word-family literal: " + text);
}

// ---------------------------------------------------------------------------
// Interspersion

namespace {

class InterspersionImpl final : public ShiftSpaceImpl {
  public:
    InterspersionImpl(ShiftSpace base, WordFamily family, char magic)
        : base_(std::move(base)),
          family_(std::move(family)),
          magic_(magic),
          alphabet_(base_.alphabet().symbols() + std::string(1, magic)) {
        if (base_.alphabet().contains(magic))
            throw std::invalid_argument("magic symbol must be new to the alphabet");
        // The family must consist of base words; check the enumerable stretch.
        for (const Word& v : family_.enumerate(base_, 12, 200'000))
            if (!v.empty() && !base_.allows(v))
                throw std::invalid_argument("family emits a word outside the base language: " + v);
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "interspersion"; }
    const ShiftSpace& base() const { return base_; }
    const WordFamily& family() const { return family_; }
    char magic() const { return magic_; }

    bool allows(std::string_view w) const override {
        std::vector<Word> blocks;
        Word cur;
        for (char c : w) {
            if (c == magic_) {
                blocks.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        blocks.push_back(cur);
        if (blocks.size() == 1) return family_.factor_of_member(base_, blocks[0]);
        if (!family_.suffix_of_member(base_, blocks.front())) return false;
        if (!family_.prefix_of_member(base_, blocks.back())) return false;
        for (std::size_t i = 1; i + 1 < blocks.size(); ++i)
            if (!family_.contains(base_, blocks[i])) return false;
        return true;
    }

    std::vector<Word> known_sync_words() const override { return {Word(1, magic_)}; }

    // With a length-constrained family over an automaton-backed base, the
    // follower set of a word is pinned down by the block after its last magic
    // symbol: the automaton states that block reaches, its length, and
    // whether a magic symbol was seen at all (suffix blocks and interior
    // blocks obey different rules).
    std::optional<std::string> residual_key(std::string_view w) const override {
        if (family_.kind() != WordFamily::Kind::Lengths) return std::nullopt;
        const SoficAutomaton* aut = base_.automaton();
        if (!aut) return std::nullopt;
        std::size_t cut = w.rfind(magic_);
        bool saw_magic = cut != std::string_view::npos;
        std::string_view block = saw_magic ? w.substr(cut + 1) : w;
        auto states = aut->step_set(aut->all_states(), block);
        std::string key = saw_magic ? "m:" : "f:";
        for (int s : states) key += std::to_string(s) + ",";
        key += ":" + std::to_string(block.size());
        return key;
    }

    std::optional<bool> sofic_exact() const override {
        if (family_.finite_family(base_)) return true;  // finite block inventory
        if (family_.kind() == WordFamily::Kind::MorseWords) return false;
        if (const IntSet* s = family_.length_set()) {
            if (!s->differences_eventually_periodic()) return false;  // boundary is the base
            if (base_.has_no_sync_word()) return false;
        }
        return std::nullopt;
    }

    std::shared_ptr<const ShiftSpaceImpl> exact_boundary() const override {
        if (family_.finite_family(base_)) {
            // Long words all contain the magic symbol, which is synchronizing.
            return make_empty_space(alphabet_).impl_ptr();
        }
        if (family_.kind() == WordFamily::Kind::MorseWords) return base_.impl_ptr();
        if (const IntSet* s = family_.length_set()) {
            // Superlinear length sets pin the boundary to the base exactly;
            // so does any infinite length set over a base without a
            // synchronizing word.
            if (!s->differences_eventually_periodic()) return base_.impl_ptr();
            if (base_.has_no_sync_word()) return base_.impl_ptr();
        }
        return nullptr;
    }

    std::string describe() const override {
        json j;
        j["kind"] = "interspersion";
        j["base"] = json::parse(base_.serialize());
        std::string packed = family_.serialize();
        if (packed.rfind("lengths:", 0) == 0) {
            j["family"] = "lengths";
            j["S"] = packed.substr(8);
        } else if (packed.rfind("explicit:", 0) == 0) {
            j["family"] = "explicit";
            std::vector<Word> words;
            std::string body = packed.substr(9);
            std::size_t pos = 0;
            while (pos <= body.size()) {
                std::size_t comma = body.find(',', pos);
                if (comma == std::string::npos) comma = body.size();
                words.push_back(body.substr(pos, comma - pos));
                pos = comma + 1;
            }
            j["words"] = words;
        } else {
            j["family"] = packed;  // morse-words
        }
        j["magic"] = std::string(1, magic_);
        return j.dump();
    }

  private:
    ShiftSpace base_;
    WordFamily family_;
    char magic_;
    Alphabet alphabet_;
};

}  // namespace

ShiftSpace interspersion(const ShiftSpace& base, const WordFamily& family, char magic) {
    return ShiftSpace(std::make_shared<InterspersionImpl>(base, family, magic));
}

ShiftSpace length_constrained(const ShiftSpace& base, const IntSet& lengths, char magic) {
    return interspersion(base, WordFamily::lengths(lengths), magic);
}

ShiftSpace make_magic_morse() {
    return interspersion(make_morse_shift(), WordFamily::morse_words(), '#');
}

bool is_superlinear(const std::vector<long long>& prefix) {
    for (std::size_t i = 1; i < prefix.size(); ++i)
        if (prefix[i] <= prefix[i - 1])
            throw std::invalid_argument("superlinearity check needs a strictly increasing list");
    if (prefix.size() < 3) return true;
    for (std::size_t i = 2; i < prefix.size(); ++i)
        if (prefix[i] - prefix[i - 1] <= prefix[i - 1] - prefix[i - 2]) return false;
    return true;
}

DescriptiveVerdict is_descriptive(const ShiftSpace& base, const WordFamily& family, int horizon,
                                  const std::vector<Word>& sample_prefixes, int min_reach) {
    if (min_reach < 0) min_reach = (horizon + 1) / 2;
    DescriptiveVerdict verdict;
    for (const Word& p : sample_prefixes) {
        bool matched = false;
        for (int s = std::min<int>(horizon, static_cast<int>(p.size())); s >= min_reach; --s) {
            if (family.suffix_of_member(base, p.substr(0, s))) {
                matched = true;
                break;
            }
        }
        if (!matched) {
            verdict.positive = false;
            verdict.counterexample = p;
            return verdict;
        }
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// x_w and the recurrence window SFT

namespace {

class XwImpl final : public ShiftSpaceImpl {
  public:
    XwImpl(ShiftSpace base, Word w, int depth)
        : base_(std::move(base)), w_(std::move(w)), depth_(depth), analyzer_(base_) {
        if (!base_.allows(w_)) throw std::invalid_argument("x_w: the pivot word is not allowed");
        pivot_sig_ = analyzer_.follower_signature(w_, depth_);
    }

    const Alphabet& alphabet() const override { return base_.alphabet(); }
    std::string kind() const override { return "x-w"; }

    bool allows(std::string_view m) const override {
        if (!base_.allows(m)) return false;
        // Every occurrence of the pivot must look the same to the future:
        // the full prefix ending at the occurrence is the binding context
        // (shorter contexts only enlarge the follower set).
        std::lock_guard<std::mutex> lock(mu_);
        Word word(m);
        for (std::size_t p = word.find(w_); p != Word::npos; p = word.find(w_, p + 1)) {
            Word context = word.substr(0, p + w_.size());
            if (analyzer_.follower_signature(context, depth_) != pivot_sig_) return false;
        }
        return true;
    }

    std::string describe() const override {
        json j;
        j["kind"] = "x-w";
        j["base"] = json::parse(base_.serialize());
        j["w"] = w_;
        j["depth"] = depth_;
        return j.dump();
    }

  private:
    ShiftSpace base_;
    Word w_;
    int depth_;
    mutable std::mutex mu_;
    mutable FollowerAnalyzer analyzer_;
    int pivot_sig_;
};

}  // namespace

ShiftSpace x_w(const ShiftSpace& base, const Word& w, int depth) {
    if (depth < 0) depth = 2 * static_cast<int>(w.size()) + 8;
    return ShiftSpace(std::make_shared<XwImpl>(base, w, depth));
}

XwqResult x_wq(const ShiftSpace& base, const Word& w, int q, int depth, std::size_t budget) {
    if (q < 1) throw std::invalid_argument("x_wq needs q >= 1");
    if (w.empty()) throw std::invalid_argument("x_wq needs a non-empty word");
    XwqResult result;
    int step = q + static_cast<int>(w.size());
    ShiftSpace xw = x_w(base, w, depth);
    std::vector<Word> candidates;
    try {
        candidates = words_of_length(xw, step + 1, budget);
    } catch (const EnumerationBudgetExceeded& e) {
        result.status = "budget";
        result.detail = e.what();
        return result;
    }
    // Keep windows in which every stretch of q+|w|-1 symbols sees the pivot
    // start within its first q positions.
    std::set<Word> windows;
    int span = step - 1;
    for (const Word& cand : candidates) {
        std::vector<bool> starts(cand.size(), false);
        for (std::size_t p = cand.find(w); p != Word::npos; p = cand.find(w, p + 1))
            starts[p] = true;
        bool ok = true;
        for (std::size_t i = 0; ok && i + span <= cand.size(); ++i) {
            bool seen = false;
            for (int j = 0; j < q && !seen; ++j) seen = starts[i + j];
            ok = seen;
        }
        if (ok) windows.insert(cand);
    }
    if (windows.empty()) {
        result.status = "empty";
        result.detail = "the pivot never recurs within gap " + std::to_string(q);
        return result;
    }
    SftSpace sft(base.alphabet(), step, windows);
    if (sft.empty_space()) {
        result.status = "empty";
        result.detail = "window pruning removed every candidate";
        return result;
    }
    result.status = "ok";
    result.sft = std::move(sft);
    return result;
}

// ---------------------------------------------------------------------------
// Serialization hooks

void register_construction_kinds() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        register_space_kind("interspersion", [](const std::string& text) {
            json j = json::parse(text);
            ShiftSpace base = ShiftSpace::deserialize(j.at("base").dump());
            std::string name = j.at("family").get<std::string>();
            WordFamily family = WordFamily::morse_words();
            if (name == "lengths")
                family = WordFamily::lengths(IntSet::deserialize(j.at("S").get<std::string>()));
            else if (name == "explicit")
                family = WordFamily::explicit_list(j.at("words").get<std::vector<Word>>());
            else if (name != "morse-words")
                throw std::invalid_argument("unknown interspersion family: " + name);
            char magic = j.at("magic").get<std::string>().at(0);
            return interspersion(base, family, magic);
        });
        register_space_kind("x-w", [](const std::string& text) {
            json j = json::parse(text);
            ShiftSpace base = ShiftSpace::deserialize(j.at("base").dump());
            return x_w(base, j.at("w").get<Word>(), j.at("depth").get<int>());
        });
    });
}

}  // namespace shiftlab
