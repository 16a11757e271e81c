#include "shiftlab/int_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftlab {

IntSet IntSet::finite(std::vector<long long> elems) {
    if (elems.empty()) throw std::invalid_argument("finite gap set must be non-empty");
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.front() < 0) throw std::invalid_argument("gap sets live in the non-negative integers");
    return IntSet(Kind::Finite, std::move(elems));
}

IntSet IntSet::pow2() { return IntSet(Kind::Pow2, {}); }
IntSet IntSet::even() { return IntSet(Kind::Even, {}); }
IntSet IntSet::squares() { return IntSet(Kind::Squares, {}); }
IntSet IntSet::all() { return IntSet(Kind::All, {}); }

bool IntSet::contains(long long n) const {
    if (n < 0) return false;
    switch (kind_) {
        case Kind::Finite:
            return std::binary_search(elems_.begin(), elems_.end(), n);
        case Kind::Pow2:
            return n >= 1 && (n & (n - 1)) == 0;
        case Kind::Even:
            return n % 2 == 0;
        case Kind::Squares: {
            if (n < 1) return false;
            long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
            for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c)
                if (c * c == n) return true;
            return false;
        }
        case Kind::All:
            return true;
    }
    return false;
}

bool IntSet::contains_geq(long long n) const {
    if (kind_ != Kind::Finite) return true;
    return elems_.back() >= n;
}

long long IntSet::max_element() const {
    if (kind_ != Kind::Finite) throw std::logic_error("max_element of an infinite set");
    return elems_.back();
}

std::vector<long long> IntSet::prefix(int count) const {
    std::vector<long long> out;
    if (kind_ == Kind::Finite) {
        for (long long e : elems_) {
            if (static_cast<int>(out.size()) == count) break;
            out.push_back(e);
        }
        return out;
    }
    long long n = 0;
    while (static_cast<int>(out.size()) < count) {
        if (contains(n)) out.push_back(n);
        if (kind_ == Kind::Pow2 && n > (1LL << 50)) break;
        ++n;
    }
    return out;
}

bool IntSet::differences_eventually_periodic() const {
    switch (kind_) {
        case Kind::Finite:
        case Kind::Even:
        case Kind::All:
            return true;
        case Kind::Pow2:
        case Kind::Squares:
            return false;
    }
    return false;
}

std::string IntSet::serialize() const {
    switch (kind_) {
        case Kind::Pow2:
            return "pow2";
        case Kind::Even:
            return "even";
        case Kind::Squares:
            return "squares";
        case Kind::All:
            return "all";
        case Kind::Finite: {
            std::string s = "finite:";
            for (std::size_t i = 0; i < elems_.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(elems_[i]);
            }
            return s;
        }
    }
    return "";
}

IntSet IntSet::deserialize(const std::string& text) {
    if (text == "pow2") return pow2();
    if (text == "even") return even();
    if (text == "squares") return squares();
    if (text == "all") return all();
    if (text.rfind("finite:", 0) == 0) {
        std::vector<long long> elems;
        std::string body = text.substr(7);
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t comma = body.find(',', pos);
            if (comma == std::string::npos) comma = body.size();
            elems.push_back(std::stoll(body.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return finite(std::move(elems));
    }
    throw std::invalid_argument("bad gap-set literal: " + text);
}

}  // namespace shiftlab
