#include "shiftlab/functions.hpp"

#include <json.hpp>

#include <functional>
#include <stdexcept>

namespace shiftlab {

namespace {

void enumerate_words(const Alphabet& a, int len, const std::function<void(const Word&)>& fn) {
    Word w;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(w.size()) == len) {
            fn(w);
            return;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            w.push_back(a.symbol(i));
            rec();
            w.pop_back();
        }
    };
    rec();
}

}  // namespace

LocallyConstantFn::LocallyConstantFn(Alphabet alphabet, int depth, std::map<Word, Rat> table)
    : alphabet_(std::move(alphabet)), depth_(depth), table_(std::move(table)) {
    if (depth_ < 1) throw std::invalid_argument("depth must be positive");
    std::size_t expect = 1;
    for (int i = 0; i < depth_; ++i) expect *= alphabet_.size();
    if (table_.size() != expect)
        throw std::invalid_argument("table must be total over alphabet^depth");
    for (const auto& [w, v] : table_)
        if (static_cast<int>(w.size()) != depth_ || !alphabet_.contains_word(w))
            throw std::invalid_argument("table key outside alphabet^depth: " + w);
}

LocallyConstantFn LocallyConstantFn::constant(const Alphabet& a, const Rat& c) {
    std::map<Word, Rat> t;
    enumerate_words(a, 1, [&](const Word& w) { t[w] = c; });
    return LocallyConstantFn(a, 1, std::move(t));
}

LocallyConstantFn LocallyConstantFn::indicator(const Alphabet& a, const Word& prefix) {
    if (prefix.empty() || !a.contains_word(prefix))
        throw std::invalid_argument("indicator prefix must be a non-empty word over the alphabet");
    std::map<Word, Rat> t;
    int k = static_cast<int>(prefix.size());
    enumerate_words(a, k, [&](const Word& w) { t[w] = (w == prefix) ? 1 : 0; });
    return LocallyConstantFn(a, k, std::move(t));
}

LocallyConstantFn LocallyConstantFn::first_symbol_values(const Alphabet& a,
                                                         const std::vector<Rat>& values) {
    if (values.size() != a.size())
        throw std::invalid_argument("one value per alphabet symbol expected");
    std::map<Word, Rat> t;
    for (std::size_t i = 0; i < a.size(); ++i) t[Word(1, a.symbol(i))] = values[i];
    return LocallyConstantFn(a, 1, std::move(t));
}

const Rat& LocallyConstantFn::eval_word(std::string_view w) const {
    if (static_cast<int>(w.size()) < depth_)
        throw std::invalid_argument("window shorter than the function depth");
    auto it = table_.find(Word(w.substr(0, depth_)));
    if (it == table_.end()) throw std::invalid_argument("window outside the alphabet");
    return it->second;
}

Rat LocallyConstantFn::eval(const EPSequence& x) const { return eval_word(x.prefix(depth_)); }

Rat LocallyConstantFn::sup_norm() const {
    Rat m = 0;
    for (const auto& [w, v] : table_) m = std::max(m, rat_abs(v));
    return m;
}

LocallyConstantFn LocallyConstantFn::scaled(const Rat& c) const {
    std::map<Word, Rat> t = table_;
    for (auto& [w, v] : t) v *= c;
    return LocallyConstantFn(alphabet_, depth_, std::move(t));
}

LocallyConstantFn LocallyConstantFn::shifted(const Rat& c) const {
    std::map<Word, Rat> t = table_;
    for (auto& [w, v] : t) v += c;
    return LocallyConstantFn(alphabet_, depth_, std::move(t));
}

LocallyConstantFn operator+(const LocallyConstantFn& f, const LocallyConstantFn& g) {
    if (!(f.alphabet_ == g.alphabet_)) throw std::invalid_argument("alphabet mismatch");
    const LocallyConstantFn& deep = f.depth_ >= g.depth_ ? f : g;
    const LocallyConstantFn& shallow = f.depth_ >= g.depth_ ? g : f;
    std::map<Word, Rat> t;
    for (const auto& [w, v] : deep.table_) t[w] = v + shallow.eval_word(w);
    return LocallyConstantFn(f.alphabet_, deep.depth_, std::move(t));
}

std::string LocallyConstantFn::serialize() const {
    nlohmann::json j;
    j["alphabet"] = alphabet_.symbols();
    j["depth"] = depth_;
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [w, v] : table_) table[w] = rat_to_string(v);
    j["table"] = table;
    return j.dump();
}

LocallyConstantFn LocallyConstantFn::deserialize(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Alphabet a(j.at("alphabet").get<std::string>());
    int depth = j.at("depth").get<int>();
    std::map<Word, Rat> t;
    for (const auto& [w, v] : j.at("table").items()) t[w] = rat_from_string(v.get<std::string>());
    return LocallyConstantFn(std::move(a), depth, std::move(t));
}

Rat birkhoff_sum(const LocallyConstantFn& f, const EPSequence& x, long long n) {
    if (n < 1) throw std::invalid_argument("birkhoff_sum needs n >= 1");
    Word window = x.prefix(static_cast<std::size_t>(n) + f.depth() - 1);
    Rat s = 0;
    std::string_view view(window);
    for (long long i = 0; i < n; ++i) s += f.eval_word(view.substr(i));
    return s;
}

Rat lipschitz_seminorm(const LocallyConstantFn& f, const MetricParam& p) {
    // Pairs of depth-k words realise every possible quotient: sequences
    // agreeing on the first k coordinates have equal values.
    std::vector<std::pair<Word, Rat>> entries(f.table().begin(), f.table().end());
    Rat best = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            std::size_t n = first_disagreement(entries[i].first, entries[j].first);
            if (n == std::string::npos) continue;
            Rat q = rat_abs(entries[i].second - entries[j].second) / rat_pow(p.alpha, n);
            best = std::max(best, q);
        }
    }
    return best;
}

Rat truncated_distance_to_orbit(std::string_view window, const std::vector<EPSequence>& orbit,
                                int depth, const MetricParam& p) {
    if (orbit.empty()) throw std::invalid_argument("orbit must be non-empty");
    if (static_cast<int>(window.size()) < depth)
        throw std::invalid_argument("window shorter than the truncation depth");
    std::size_t best = 0;  // largest agreement length seen, clamped at depth
    for (const EPSequence& z : orbit) {
        std::size_t n = 0;
        while (n < static_cast<std::size_t>(depth) && window[n] == z.at(n)) ++n;
        best = std::max(best, n);
    }
    return rat_pow(p.alpha, best);
}

}  // namespace shiftlab
