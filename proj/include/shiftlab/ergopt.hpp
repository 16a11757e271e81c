#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/functions.hpp"
#include "shiftlab/rng.hpp"
#include "shiftlab/shift_space.hpp"

namespace shiftlab {

// Overlap graph of a window SFT: vertices are allowed words of length L,
// edges merge on L-1 symbols, weights read the function on the merged word.
// Vertices are pruned to those lying on a cycle; cross edges between cycles
// remain, so walks of the language are still represented.
struct DeBruijnGraph {
    Alphabet alphabet;
    int word_len = 0;
    std::vector<Word> vertices;  // sorted
    struct Edge {
        int from;
        int to;
        Rat weight;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> out;  // edge indices per vertex
    std::vector<std::vector<int>> in;

    static DeBruijnGraph build(const SftSpace& space, const LocallyConstantFn& f,
                               int min_word_len = 0);
    int vertex_index(const Word& w) const;
};

struct TightSubgraph {
    Rat beta;
    int word_len = 0;
    std::map<Word, Rat> potentials;
    std::vector<std::pair<Word, Word>> tight_edges;
    std::vector<std::pair<Word, Word>> core_edges;
    std::vector<Word> core_vertices;

    bool core_is_single_cycle() const {
        return !core_vertices.empty() && core_edges.size() == core_vertices.size();
    }
    bool cycle_in_core(const Word& periodic_word) const;
};

struct CycleMeanResult {
    Rat beta;
    Word witness;  // primitive periodic word attaining the mean
    TightSubgraph tight;

    std::string serialize() const;
};

// Maximum cycle mean of the overlap graph, with an argmax simple cycle and
// the potential-tight subgraph. For window SFTs with locally constant
// weights this is the maximum ergodic average: extreme invariant measures
// sit on simple cycles.
CycleMeanResult max_ergodic_average(const SftSpace& space, const LocallyConstantFn& f);

// Independent oracle: exhaustive maximum of Birkhoff means over primitive
// periodic words of period <= max_period.
std::pair<Rat, Word> brute_force_beta(const SftSpace& space, const LocallyConstantFn& f,
                                      int max_period);

TightSubgraph tight_subgraph(const SftSpace& space, const LocallyConstantFn& f);

// sub must be window-contained in ambient. True iff the maxima agree.
bool is_maximizable(const SftSpace& sub, const LocallyConstantFn& f, const SftSpace& ambient);

// True iff every cycle mean of sub equals the ambient maximum.
bool is_completely_maximizing(const SftSpace& sub, const LocallyConstantFn& f,
                              const SftSpace& ambient);

struct ClosedOrbit {
    Word periodic_word;
    Rat distance_sum;  // certified < alpha/(1-alpha)
};

// Returns to the cylinder of a synchronizing word close an orbit segment:
// x_prefix must start with sync_word and show it again at position
// return_time. The resulting periodic word is validated by a bounded
// membership certificate (word^3 sync_word), and the shadowing distances are
// summed with unknown symbols bounded pessimistically.
ClosedOrbit close_orbit(const ShiftSpace& space, const Word& x_prefix, int return_time,
                        const Word& sync_word, const MetricParam& p);

struct LockingReport {
    int samples = 0;
    int locked = 0;
    Rat admissible_seminorm;  // strict upper bound used for the samples
    Rat fraction() const { return samples ? Rat(locked, samples) : Rat(0); }
};

// Perturbation-stability experiment around a uniquely maximizing cycle:
// f_eps = f - eps * truncated distance to the maximizing orbit, perturbed by
// random g whose seminorm keeps it inside the admissible ball. Reports how
// many samples leave the tight core unchanged.
LockingReport locking_test(const SftSpace& space, const LocallyConstantFn& f, const Rat& eps,
                           int trunc_depth, int samples, const MetricParam& p, Rng& rng);

// Engineered perturbation violating the admissible bound; returns true when
// it moves the tight core away from the base cycle.
bool unlock_demo(const SftSpace& space, const LocallyConstantFn& f, const Rat& eps,
                 int trunc_depth, const MetricParam& p);

struct BirkhoffBound {
    std::optional<int> bound;        // smallest N: every avoiding walk with >= N
                                     // vertices has strictly negative weight
    std::optional<Word> refutation;  // avoiding cycle with mean >= the maximum
    bool inconclusive = false;
    std::string detail;
};

// Normalises f to maximum zero, then searches walks avoiding vertices that
// begin with the cylinder word.
BirkhoffBound birkhoff_bound_check(const SftSpace& space, const LocallyConstantFn& f,
                                   const Word& cylinder, int max_n);

struct ManeTranscript {
    Rat cover_beta;
    struct Row {
        int n;
        Rat birkhoff;
        Rat distance;
    };
    std::vector<Row> rows;
    std::vector<std::string> lines;
};

// The three-letter factor system whose cover has maximum zero while
// one-coordinate sums along a^n b a^inf stay at one: no continuous potential
// can dominate the function, exhibited numerically.
ManeTranscript mane_obstruction_demo(int max_n, const MetricParam& p);

}  // namespace shiftlab
