#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftlab/functions.hpp"
#include "shiftlab/rng.hpp"
#include "shiftlab/words.hpp"

namespace shiftlab {

// Finitely supported probability measure with eventually periodic atoms.
class FiniteMeasure {
  public:
    explicit FiniteMeasure(std::vector<std::pair<EPSequence, Rat>> atoms);

    const std::vector<std::pair<EPSequence, Rat>>& atoms() const { return atoms_; }
    std::size_t support_size() const { return atoms_.size(); }

    Rat cylinder_mass(const Word& prefix) const;
    Rat integrate(const LocallyConstantFn& f) const;
    // Window frequencies at the given depth; keys in sorted order.
    std::vector<std::pair<Word, Rat>> window_frequencies(int depth) const;

  private:
    std::vector<std::pair<EPSequence, Rat>> atoms_;  // sorted, distinct, weights > 0, sum 1
};

FiniteMeasure dirac(EPSequence x);
FiniteMeasure empirical_measure(const EPSequence& x, long long n);
// Reduces a non-primitive word to its root (the measure is the same); the
// reduction is reported through the optional flag.
FiniteMeasure periodic_measure(const Word& u, bool* reduced = nullptr);
FiniteMeasure mix(const std::vector<std::pair<Rat, FiniteMeasure>>& parts);

struct TransportPlan {
    struct Flow {
        int source;
        int target;
        Rat mass;
    };
    std::vector<Flow> flows;  // positive masses, lexicographically sorted
    Rat cost;
};

struct WassersteinResult {
    Rat cost;
    TransportPlan plan;
};

// Exact pairwise distance matrix between supports; the parallel variant
// splits rows over OpenMP threads and returns identical values.
std::vector<std::vector<Rat>> pairwise_distance_matrix(const FiniteMeasure& mu,
                                                       const FiniteMeasure& nu,
                                                       const MetricParam& p, bool parallel);

// Exact optimal transport cost by successive shortest paths on the bipartite
// support graph, all arithmetic rational. The plan's marginals match the two
// measures exactly and its cost equals the dual optimum by finite LP duality.
WassersteinResult wasserstein(const FiniteMeasure& mu, const FiniteMeasure& nu,
                              const MetricParam& p, bool parallel_matrix = false);

// Integral of the distance to the Morse shift: an atom's distance is alpha
// to the length of its longest prefix that is still a Morse factor (a magic
// symbol caps that length at its position). The parallel flag fans the
// per-atom factor probes out over OpenMP threads.
Rat distance_integral(const FiniteMeasure& rho, const MetricParam& p, bool parallel = false);

// Empirical window of the Morse sequence: the first n shift iterates, each
// materialised as a true prefix up to `horizon` and an arbitrary fixed
// periodic tail beyond it. Distances computed against these atoms are exact
// as long as comparisons resolve before the padding; verify_* assert this.
FiniteMeasure morse_empirical(long long n, std::size_t horizon);

struct MorseBoundResult {
    bool certified = false;
    int n = 0;
    int m = 0;
    long long sample_size = 0;   // number of iterates averaged on the left
    long long lambda_size = 0;   // iterates of the Morse sequence on the right
    Rat wasserstein_value;
    Rat bound;
};

// W(E_{2^n}(x), E_{2^n M}(omega)) <= (2a/(1-a))/2^n for x = theta_n # tail.
MorseBoundResult verify_prefix_bound(int n, int M, const EPSequence& tail, const MetricParam& p);
// W(E_{2^n+1}(x), E_{2^n M}(omega)) <= ((1+a)/(1-a))/(2^n+1).
MorseBoundResult verify_plus_one_bound(int n, int M, const EPSequence& tail,
                                       const MetricParam& p);

struct NonTpoSample {
    Word periodic_word;
    int magic_count = 0;
    int period = 0;
    Rat phi_seminorm;
    Rat rho_distance_integral;
    Rat margin;  // integral of (f + phi) against the empirical Morse window
                 // minus the same against rho, f = -d(., Morse shift)
    Rat slack;   // |phi|_lip * 4a/((1-a) 2^n)
    bool strict = false;      // margin > 0
    bool conclusive = false;  // margin > slack
};

struct NonTpoReport {
    int n_scale = 0;
    long long lambda_len = 0;
    Rat ball_radius;            // (1-a)/(1+a)
    Rat seminorm_cap;           // sampled seminorms stay at or below this
    std::vector<NonTpoSample> rows;

    int violations() const;
    int inconclusive_count() const;
};

// Samples interspersed periodic measures and small-seminorm test functions;
// certifies the strict optimality gap of the Morse measure against each
// sample, with the finite-approximation slack reported per row.
NonTpoReport verify_non_tpo_ball(int measure_samples, int phi_samples, int n_scale, int M,
                                 const MetricParam& p, Rng& rng, bool parallel = false);

}  // namespace shiftlab
