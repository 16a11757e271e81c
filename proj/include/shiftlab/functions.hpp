#pragma once

#include <map>
#include <string>
#include <vector>

#include "shiftlab/rational.hpp"
#include "shiftlab/words.hpp"

namespace shiftlab {

// Real-valued function on sequence space depending on the first `depth`
// coordinates, stored as a total table over all depth-length words of the
// alphabet. Values on words that a particular subshift forbids are simply
// never consulted by the graph builders.
class LocallyConstantFn {
  public:
    LocallyConstantFn(Alphabet alphabet, int depth, std::map<Word, Rat> table);

    static LocallyConstantFn constant(const Alphabet& a, const Rat& c);
    // 1 on words starting with `prefix`, 0 elsewhere; depth = |prefix|.
    static LocallyConstantFn indicator(const Alphabet& a, const Word& prefix);
    static LocallyConstantFn first_symbol_values(const Alphabet& a,
                                                 const std::vector<Rat>& values);

    const Alphabet& alphabet() const { return alphabet_; }
    int depth() const { return depth_; }
    const std::map<Word, Rat>& table() const { return table_; }

    // w must have length >= depth; reads the first depth symbols.
    const Rat& eval_word(std::string_view w) const;
    Rat eval(const EPSequence& x) const;

    Rat sup_norm() const;  // max |table value|

    LocallyConstantFn scaled(const Rat& c) const;
    LocallyConstantFn shifted(const Rat& c) const;  // f + c
    // Pointwise sum; result depth is the max of the two depths.
    friend LocallyConstantFn operator+(const LocallyConstantFn& f, const LocallyConstantFn& g);

    std::string serialize() const;
    static LocallyConstantFn deserialize(const std::string& text);

  private:
    Alphabet alphabet_;
    int depth_;
    std::map<Word, Rat> table_;  // total over alphabet^depth
};

// Sum of f over the first n shift iterates of x, exact.
Rat birkhoff_sum(const LocallyConstantFn& f, const EPSequence& x, long long n);

// Exact Lipschitz seminorm of f with respect to d_alpha, taken over the full
// shift: max over word pairs of |f(u)-f(v)| / alpha^(first disagreement).
// This upper-bounds the seminorm of the restriction to any subshift.
Rat lipschitz_seminorm(const LocallyConstantFn& f, const MetricParam& p);

// Locally constant surrogate for the distance to a finite orbit Q:
// min over z in Q of alpha^min(N, depth) with N the first disagreement of the
// window with z. Differs from the true distance by at most alpha^depth.
Rat truncated_distance_to_orbit(std::string_view window, const std::vector<EPSequence>& orbit,
                                int depth, const MetricParam& p);

}  // namespace shiftlab
