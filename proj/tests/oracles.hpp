// Test-only oracles: independent implementations used to cross-check the
// library. Everything here is written directly from first definitions and
// shares no code with the paths under test.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "shiftlab/measure.hpp"
#include "shiftlab/rational.hpp"
#include "shiftlab/words.hpp"

namespace oracle {

using shiftlab::MetricParam;
using shiftlab::Rat;
using shiftlab::Word;

// Direct definition scans, independent of the automaton / window machinery.

inline bool golden_mean_allows(const Word& w) { return w.find("11") == Word::npos; }

inline bool even_allows(const Word& w) {
    // Between consecutive 1s the number of 0s is even.
    int zeros = 0;
    bool seen_one = false;
    for (char c : w) {
        if (c == '0') {
            ++zeros;
        } else {
            if (seen_one && zeros % 2 != 0) return false;
            seen_one = true;
            zeros = 0;
        }
    }
    return true;
}

inline bool context_free_allows(const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != 'a') continue;
        std::size_t j = i + 1;
        std::size_t b = 0, c = 0;
        while (j < w.size() && w[j] == 'b') ++j, ++b;
        while (j < w.size() && w[j] == 'c') ++j, ++c;
        if (j < w.size() && w[j] == 'a' && b != c) return false;
    }
    return true;
}

// All words of the given length over `symbols` accepted by the predicate.
inline std::vector<Word> language_brute_force(const std::string& symbols, int len,
                                              const std::function<bool(const Word&)>& allows) {
    std::vector<Word> out;
    Word w;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(w.size()) == len) {
            if (allows(w)) out.push_back(w);
            return;
        }
        for (char c : symbols) {
            w.push_back(c);
            rec();
            w.pop_back();
        }
    };
    rec();
    return out;
}

// Depth-bounded follower set straight from the definition.
inline std::vector<Word> follower_brute_force(const std::string& symbols, const Word& base,
                                              int depth,
                                              const std::function<bool(const Word&)>& allows) {
    std::vector<Word> out;
    for (int len = 0; len <= depth; ++len)
        for (const Word& v : language_brute_force(symbols, len,
                                                  [&](const Word& u) { return allows(base + u); }))
            out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Exact transport oracles.

// Minimum transport cost by enumerating basic feasible solutions: every
// vertex of the polytope is supported on a spanning forest of at most
// m+n-1 edges, so trying all edge subsets of that size covers the optimum.
// Only sensible for supports up to about 4x4.
inline Rat transport_polytope_minimum(const std::vector<Rat>& supply,
                                      const std::vector<Rat>& demand,
                                      const std::vector<std::vector<Rat>>& cost) {
    int m = static_cast<int>(supply.size());
    int n = static_cast<int>(demand.size());
    int edges = m * n;
    int basis = m + n - 1;
    Rat best;
    bool have = false;

    std::vector<int> chosen;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(chosen.size()) == basis) {
            // Solve the flow on the chosen edge set, if it is uniquely solvable.
            std::vector<Rat> s(supply), d(demand);
            std::vector<Rat> flow(chosen.size(), Rat(0));
            std::vector<bool> settled(chosen.size(), false);
            bool progress = true;
            int remaining = basis;
            while (progress && remaining > 0) {
                progress = false;
                // A row or column whose last free edge is forced.
                for (int i = 0; i < m; ++i) {
                    int count = 0, last = -1;
                    for (std::size_t e = 0; e < chosen.size(); ++e)
                        if (!settled[e] && chosen[e] / n == i) ++count, last = static_cast<int>(e);
                    if (count == 1) {
                        flow[last] = s[i];
                        settled[last] = true;
                        d[chosen[last] % n] -= flow[last];
                        s[i] = 0;
                        --remaining;
                        progress = true;
                    }
                }
                for (int j = 0; j < n; ++j) {
                    int count = 0, last = -1;
                    for (std::size_t e = 0; e < chosen.size(); ++e)
                        if (!settled[e] && chosen[e] % n == j) ++count, last = static_cast<int>(e);
                    if (count == 1) {
                        flow[last] = d[j];
                        settled[last] = true;
                        s[chosen[last] / n] -= flow[last];
                        d[j] = 0;
                        --remaining;
                        progress = true;
                    }
                }
            }
            if (remaining > 0) return;  // degenerate selection, not a forest
            for (const Rat& f : flow)
                if (f < 0) return;
            for (const Rat& leftover : s)
                if (leftover != 0) return;
            for (const Rat& leftover : d)
                if (leftover != 0) return;
            Rat total = 0;
            for (std::size_t e = 0; e < chosen.size(); ++e)
                total += flow[e] * cost[chosen[e] / n][chosen[e] % n];
            if (!have || total < best) {
                best = total;
                have = true;
            }
            return;
        }
        for (int e = start; e < edges; ++e) {
            chosen.push_back(e);
            rec(e + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    if (!have) throw std::logic_error("transport oracle found no basic solution");
    return best;
}

// Closed form for nested-partition (ultrametric) costs: mass that must cross
// the depth-j refinement costs the increment alpha^(j-1) - alpha^j, summed
// until the supports are fully separated.
inline Rat ultrametric_wasserstein(const shiftlab::FiniteMeasure& mu,
                                   const shiftlab::FiniteMeasure& nu, const MetricParam& p) {
    std::size_t deepest = 0;
    for (const auto& [x, wx] : mu.atoms())
        for (const auto& [y, wy] : nu.atoms()) {
            std::size_t d = shiftlab::ep_first_disagreement(x, y);
            if (d != std::string::npos) deepest = std::max(deepest, d + 1);
        }
    for (const auto& side : {mu.atoms(), nu.atoms()})
        for (std::size_t i = 0; i < side.size(); ++i)
            for (std::size_t j = i + 1; j < side.size(); ++j) {
                std::size_t d = shiftlab::ep_first_disagreement(side[i].first, side[j].first);
                if (d != std::string::npos) deepest = std::max(deepest, d + 1);
            }

    Rat total = 0;
    Rat crossing_floor = 0;
    for (std::size_t j = 1; j <= deepest; ++j) {
        // e_j = half the total variation between the depth-j marginals.
        std::map<Word, Rat> diff;
        for (const auto& [x, w] : mu.atoms()) diff[x.prefix(j)] += w;
        for (const auto& [y, w] : nu.atoms()) diff[y.prefix(j)] -= w;
        Rat tv = 0;
        for (const auto& [cell, v] : diff) tv += shiftlab::rat_abs(v);
        Rat crossing = tv / 2;
        total += (shiftlab::rat_pow(p.alpha, j - 1) - shiftlab::rat_pow(p.alpha, j)) * crossing;
        crossing_floor = crossing;
    }
    // Beyond the separation depth the crossing mass is constant; the
    // geometric tail sums to alpha^deepest times that mass.
    {
        std::map<shiftlab::EPSequence, Rat> diff;
        for (const auto& [x, w] : mu.atoms()) diff[x] += w;
        for (const auto& [y, w] : nu.atoms()) diff[y] -= w;
        Rat tv = 0;
        for (const auto& [atom, v] : diff) tv += shiftlab::rat_abs(v);
        total += shiftlab::rat_pow(p.alpha, deepest) * (tv / 2);
    }
    return total;
}

}  // namespace oracle
