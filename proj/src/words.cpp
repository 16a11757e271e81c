#include "shiftlab/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace shiftlab {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must be non-empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        for (std::size_t j = i + 1; j < symbols_.size(); ++j)
            if (symbols_[i] == symbols_[j])
                throw std::invalid_argument("alphabet labels must be distinct");
}

bool Alphabet::contains(char c) const { return symbols_.find(c) != std::string::npos; }

int Alphabet::index(char c) const {
    auto pos = symbols_.find(c);
    return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

bool Alphabet::contains_word(std::string_view w) const {
    return std::all_of(w.begin(), w.end(), [&](char c) { return contains(c); });
}

MetricParam::MetricParam(Rat a) : alpha(std::move(a)) {
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");
}

bool is_primitive_word(std::string_view w) {
    if (w.empty()) return false;
    for (std::size_t d = 1; d <= w.size() / 2; ++d) {
        if (w.size() % d != 0) continue;
        bool rep = true;
        for (std::size_t i = d; i < w.size() && rep; ++i) rep = (w[i] == w[i - d]);
        if (rep) return false;
    }
    return true;
}

Word primitive_root(const Word& w) {
    for (std::size_t d = 1; d <= w.size(); ++d) {
        if (w.size() % d != 0) continue;
        bool rep = true;
        for (std::size_t i = d; i < w.size() && rep; ++i) rep = (w[i] == w[i - d]);
        if (rep) return w.substr(0, d);
    }
    return w;
}

EPSequence::EPSequence(Word preperiod, Word period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw std::invalid_argument("period must be non-empty");
    per_ = primitive_root(per_);
    // Absorb the preperiod tail into the period: rotating the period right by
    // one matches a trailing preperiod symbol equal to the period's last.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        per_.insert(per_.begin(), per_.back());
        per_.pop_back();
    }
}

Word EPSequence::prefix(std::size_t n) const {
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

EPSequence EPSequence::shifted(std::size_t n) const {
    if (n <= pre_.size()) return EPSequence(pre_.substr(n), per_);
    std::size_t r = (n - pre_.size()) % per_.size();
    return EPSequence("", per_.substr(r) + per_.substr(0, r));
}

std::string EPSequence::to_string() const { return pre_ + "|" + per_; }

std::size_t first_disagreement(std::string_view a, std::string_view b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return i;
    return std::string::npos;
}

std::size_t ep_first_disagreement(const EPSequence& x, const EPSequence& y) {
    if (x == y) return std::string::npos;
    std::size_t horizon = std::max(x.preperiod().size(), y.preperiod().size()) +
                          std::lcm(x.period().size(), y.period().size());
    for (std::size_t i = 0; i < horizon; ++i)
        if (x.at(i) != y.at(i)) return i;
    throw std::logic_error("distinct canonical sequences agree past the comparison horizon");
}

Rat metric_distance(const EPSequence& x, const EPSequence& y, const MetricParam& p) {
    std::size_t n = ep_first_disagreement(x, y);
    if (n == std::string::npos) return 0;
    return rat_pow(p.alpha, n);
}

Word morse_substitution(std::string_view w) {
    Word out;
    out.reserve(2 * w.size());
    for (char c : w) {
        if (c == '0')
            out += "01";
        else if (c == '1')
            out += "10";
        else
            throw std::invalid_argument("Morse substitution is defined over {0,1}");
    }
    return out;
}

Word morse_complement(std::string_view w) {
    Word out(w);
    for (char& c : out) c = (c == '0') ? '1' : '0';
    return out;
}

Word morse_word(unsigned n) {
    Word w = "0";
    for (unsigned i = 0; i < n; ++i) w = morse_substitution(w);
    return w;
}

MorseOracle::MorseOracle(std::size_t max_word_len) : max_word_len_(max_word_len) {
    std::size_t need = 16 * std::max<std::size_t>(max_word_len, 1);
    unsigned m = 0;
    std::size_t len = 1;
    while (len < need) {
        len *= 2;
        ++m;
    }
    omega_ = morse_word(m);
    // Short factors are the hot queries; collect them once from a window
    // already long enough to contain every factor at these lengths.
    short_len_ = std::min<std::size_t>(34, max_word_len_);
    std::string window = omega_.substr(0, std::min<std::size_t>(omega_.size(), 4096));
    for (std::size_t l = 1; l <= short_len_; ++l)
        for (std::size_t i = 0; i + l <= window.size(); ++i)
            short_factors_.insert(window.substr(i, l));
}

bool MorseOracle::is_factor(std::string_view w) const {
    if (w.size() > max_word_len_)
        throw std::length_error("Morse factor query exceeds the oracle horizon");
    if (w.empty()) return true;
    if (w.size() <= short_len_) return short_factors_.count(std::string(w)) != 0;
    return omega_.find(w) != std::string::npos;
}

std::size_t MorseOracle::longest_factor_prefix(const EPSequence& x) const {
    std::size_t cap = x.preperiod().size() + 4 * x.period().size();
    if (is_factor(x.prefix(cap)))
        throw std::logic_error("eventually periodic prefix of length pre+4*per is a Morse factor");
    // Factor-ness of prefixes is monotone in the length, so binary search on
    // the invariant: prefix(lo) is a factor, prefix(hi) is not.
    std::size_t lo = 0, hi = cap;
    while (lo + 1 < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (is_factor(x.prefix(mid)))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

const MorseOracle& shared_morse_oracle() {
    static const MorseOracle oracle(4096);
    return oracle;
}

}  // namespace shiftlab
