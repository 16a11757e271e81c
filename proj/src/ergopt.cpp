#include "shiftlab/ergopt.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Graph construction

namespace {

void enumerate_sft_words(const SftSpace& space, int len, std::vector<Word>& out) {
    std::vector<Word> frontier{""};
    for (int t = 0; t < len; ++t) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
                Word ext = w + space.alphabet().symbol(i);
                if (space.allows(ext)) next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    out = std::move(frontier);
}

// Tarjan strongly connected components.
std::vector<int> scc_ids(int n, const std::vector<std::vector<int>>& succ) {
    std::vector<int> ids(n, -1), low(n, 0), num(n, -1), stk;
    std::vector<bool> on(n, false);
    int counter = 0, comp = 0;
    std::function<void(int)> dfs = [&](int v) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        on[v] = true;
        for (int w : succ[v]) {
            if (num[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], num[w]);
            }
        }
        if (low[v] == num[v]) {
            while (true) {
                int w = stk.back();
                stk.pop_back();
                on[w] = false;
                ids[w] = comp;
                if (w == v) break;
            }
            ++comp;
        }
    };
    for (int v = 0; v < n; ++v)
        if (num[v] < 0) dfs(v);
    return ids;
}

}  // namespace

DeBruijnGraph DeBruijnGraph::build(const SftSpace& space, const LocallyConstantFn& f,
                                   int min_word_len) {
    if (space.empty_space()) throw std::invalid_argument("cannot build a graph on the empty space");
    if (!(space.alphabet() == f.alphabet()))
        throw std::invalid_argument("function alphabet differs from the space alphabet");
    DeBruijnGraph g;
    g.alphabet = space.alphabet();
    g.word_len = std::max({space.step(), f.depth() - 1, min_word_len, 1});
    std::vector<Word> verts;
    enumerate_sft_words(space, g.word_len, verts);
    std::map<Word, int> index;
    for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> succ(verts.size());
    std::vector<std::tuple<int, int, Word>> raw_edges;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t a = 0; a < g.alphabet.size(); ++a) {
            Word merged = verts[i] + g.alphabet.symbol(a);
            if (!space.allows(merged)) continue;
            auto it = index.find(merged.substr(1));
            if (it == index.end()) continue;
            succ[i].push_back(it->second);
            raw_edges.push_back({static_cast<int>(i), it->second, merged});
        }
    }
    // Keep vertices lying on a cycle: inside a non-trivial component or
    // carrying a self loop.
    auto ids = scc_ids(static_cast<int>(verts.size()), succ);
    std::vector<int> comp_size(verts.size(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i) ++comp_size[ids[i]];
    std::vector<bool> keep(verts.size(), false);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (comp_size[ids[i]] > 1) keep[i] = true;
        for (int j : succ[i])
            if (j == static_cast<int>(i)) keep[i] = true;
    }
    std::vector<int> remap(verts.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (keep[i]) {
            remap[i] = static_cast<int>(g.vertices.size());
            g.vertices.push_back(verts[i]);
        }
    }
    g.out.resize(g.vertices.size());
    g.in.resize(g.vertices.size());
    for (const auto& [from, to, merged] : raw_edges) {
        if (remap[from] < 0 || remap[to] < 0) continue;
        Edge e{remap[from], remap[to], f.eval_word(merged)};
        int idx = static_cast<int>(g.edges.size());
        g.edges.push_back(e);
        g.out[e.from].push_back(idx);
        g.in[e.to].push_back(idx);
    }
    return g;
}

int DeBruijnGraph::vertex_index(const Word& w) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
    if (it == vertices.end() || *it != w) return -1;
    return static_cast<int>(it - vertices.begin());
}

// ---------------------------------------------------------------------------
// Maximum cycle mean (extremal-walk recurrence) and the tight core

namespace {

struct MeanCycleOutcome {
    Rat beta;
    TightSubgraph tight;
    Word witness;
};

// Walk-value table D[t][v] = best weight of a t-edge walk ending at v,
// started anywhere. Every vertex lies on a cycle so all entries are finite.
Rat karp_max_mean(const DeBruijnGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<Rat>> d(n + 1, std::vector<Rat>(n, Rat(0)));
    for (int t = 1; t <= n; ++t) {
        for (int v = 0; v < n; ++v) {
            bool first = true;
            for (int ei : g.in[v]) {
                Rat cand = d[t - 1][g.edges[ei].from] + g.edges[ei].weight;
                if (first || cand > d[t][v]) d[t][v] = cand;
                first = false;
            }
            if (first) throw std::logic_error("cycle-pruned vertex without incoming edge");
        }
    }
    bool have = false;
    Rat best = 0;
    for (int v = 0; v < n; ++v) {
        bool inner_have = false;
        Rat inner = 0;
        for (int t = 0; t < n; ++t) {
            Rat cand = (d[n][v] - d[t][v]) / Rat(n - t);
            if (!inner_have || cand < inner) inner = cand;
            inner_have = true;
        }
        if (!have || inner > best) best = inner;
        have = true;
    }
    if (!have) throw std::logic_error("empty graph in cycle-mean computation");
    return best;
}

TightSubgraph build_tight(const DeBruijnGraph& g, const Rat& beta) {
    int n = static_cast<int>(g.vertices.size());
    // Longest-walk potentials under weights - beta; no positive cycles remain,
    // so n rounds reach the fixpoint.
    std::vector<Rat> phi(n, Rat(0));
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        std::vector<Rat> next = phi;
        for (int v = 0; v < n; ++v) {
            for (int ei : g.in[v]) {
                Rat cand = phi[g.edges[ei].from] + g.edges[ei].weight - beta;
                if (cand > next[v]) {
                    next[v] = cand;
                    changed = true;
                }
            }
        }
        phi = std::move(next);
        if (!changed) break;
        if (round == n) throw std::logic_error("potential iteration failed to stabilise");
    }
    TightSubgraph tight;
    tight.beta = beta;
    tight.word_len = g.word_len;
    for (int v = 0; v < n; ++v) tight.potentials[g.vertices[v]] = phi[v];
    std::vector<bool> edge_tight(g.edges.size(), false);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        Rat slack = e.weight + phi[e.from] - phi[e.to] - beta;
        if (slack > 0) throw std::logic_error("potential certificate violated");
        edge_tight[i] = (slack == 0);
        if (edge_tight[i]) tight.tight_edges.push_back({g.vertices[e.from], g.vertices[e.to]});
    }
    // Core: maximal subgraph where every vertex keeps a tight edge in and out.
    std::vector<bool> alive(n, false);
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (edge_tight[i]) alive[g.edges[i].from] = alive[g.edges[i].to] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            bool has_in = false, has_out = false;
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                if (!edge_tight[i]) continue;
                const auto& e = g.edges[i];
                if (e.to == v && alive[e.from]) has_in = true;
                if (e.from == v && alive[e.to]) has_out = true;
            }
            if (!has_in || !has_out) {
                alive[v] = false;
                changed = true;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (alive[v]) tight.core_vertices.push_back(g.vertices[v]);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (edge_tight[i] && alive[e.from] && alive[e.to])
            tight.core_edges.push_back({g.vertices[e.from], g.vertices[e.to]});
    }
    std::sort(tight.core_edges.begin(), tight.core_edges.end());
    std::sort(tight.tight_edges.begin(), tight.tight_edges.end());
    return tight;
}

Word extract_witness(const TightSubgraph& tight) {
    if (tight.core_vertices.empty()) throw std::logic_error("tight core is empty");
    // Deterministic walk: start at the least core vertex, always take the
    // least tight-core successor, stop at the first repeat.
    std::map<Word, Word> least_succ;
    for (const auto& [from, to] : tight.core_edges) {
        auto it = least_succ.find(from);
        if (it == least_succ.end() || to < it->second) least_succ[from] = to;
    }
    std::vector<Word> path{tight.core_vertices.front()};
    std::map<Word, int> seen{{path[0], 0}};
    while (true) {
        const Word& next = least_succ.at(path.back());
        auto it = seen.find(next);
        if (it != seen.end()) {
            Word cycle_word;
            for (std::size_t i = it->second; i < path.size(); ++i) cycle_word += path[i][0];
            return cycle_word;
        }
        seen[next] = static_cast<int>(path.size());
        path.push_back(next);
    }
}

MeanCycleOutcome solve_mean_cycle(const DeBruijnGraph& g) {
    MeanCycleOutcome out;
    out.beta = karp_max_mean(g);
    out.tight = build_tight(g, out.beta);
    out.witness = extract_witness(out.tight);
    return out;
}

}  // namespace

bool TightSubgraph::cycle_in_core(const Word& periodic_word) const {
    if (periodic_word.empty()) return false;
    EPSequence x = EPSequence::periodic(periodic_word);
    std::size_t period = x.period().size();
    std::set<std::pair<Word, Word>> edges(core_edges.begin(), core_edges.end());
    for (std::size_t i = 0; i < period; ++i) {
        Word from = x.shifted(i).prefix(word_len);
        Word to = x.shifted(i + 1).prefix(word_len);
        if (!edges.count({from, to})) return false;
    }
    return true;
}

CycleMeanResult max_ergodic_average(const SftSpace& space, const LocallyConstantFn& f) {
    DeBruijnGraph g = DeBruijnGraph::build(space, f);
    if (g.vertices.empty()) throw std::invalid_argument("space has no cycle");
    MeanCycleOutcome out = solve_mean_cycle(g);
    CycleMeanResult result{out.beta, out.witness, std::move(out.tight)};
    // The witness must reproduce the mean exactly.
    Rat mean = birkhoff_sum(f, EPSequence::periodic(result.witness),
                            static_cast<long long>(result.witness.size())) /
               Rat(result.witness.size());
    if (mean != result.beta) throw std::logic_error("witness cycle does not attain the maximum");
    return result;
}

std::pair<Rat, Word> brute_force_beta(const SftSpace& space, const LocallyConstantFn& f,
                                      int max_period) {
    if (max_period < 1) throw std::invalid_argument("max_period must be positive");
    Rat best;
    Word best_word;
    bool have = false;
    std::vector<Word> frontier{""};
    for (int len = 1; len <= max_period; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
                Word u = w + space.alphabet().symbol(i);
                if (space.allows(u)) next.push_back(u);
            }
        }
        frontier = std::move(next);
        for (const Word& u : frontier) {
            if (!is_primitive_word(u) || !space.allows_cycle(u)) continue;
            Rat mean = birkhoff_sum(f, EPSequence::periodic(u), len) / Rat(len);
            if (!have || mean > best) {
                best = mean;
                best_word = u;
                have = true;
            }
        }
    }
    if (!have) throw std::invalid_argument("no allowed periodic word within the period bound");
    return {best, best_word};
}

TightSubgraph tight_subgraph(const SftSpace& space, const LocallyConstantFn& f) {
    return max_ergodic_average(space, f).tight;
}

bool is_maximizable(const SftSpace& sub, const LocallyConstantFn& f, const SftSpace& ambient) {
    if (!ambient.contains_windows_of(sub))
        throw std::invalid_argument("candidate is not a subshift of the ambient space");
    return max_ergodic_average(sub, f).beta == max_ergodic_average(ambient, f).beta;
}

bool is_completely_maximizing(const SftSpace& sub, const LocallyConstantFn& f,
                              const SftSpace& ambient) {
    if (!ambient.contains_windows_of(sub))
        throw std::invalid_argument("candidate is not a subshift of the ambient space");
    Rat ambient_beta = max_ergodic_average(ambient, f).beta;
    Rat sub_max = max_ergodic_average(sub, f).beta;
    Rat sub_min = -max_ergodic_average(sub, f.scaled(-1)).beta;
    return sub_max == ambient_beta && sub_min == ambient_beta;
}

// ---------------------------------------------------------------------------
// Orbit closing

ClosedOrbit close_orbit(const ShiftSpace& space, const Word& x_prefix, int return_time,
                        const Word& sync_word, const MetricParam& p) {
    if (sync_word.empty()) throw std::invalid_argument("close_orbit needs a non-empty word");
    if (return_time < 1) throw std::invalid_argument("return time must be positive");
    std::size_t n = static_cast<std::size_t>(return_time);
    if (x_prefix.size() < n + sync_word.size())
        throw std::invalid_argument("prefix too short for the stated return time");
    if (x_prefix.compare(0, sync_word.size(), sync_word) != 0)
        throw std::invalid_argument("prefix does not start with the synchronizing word");
    if (x_prefix.compare(n, sync_word.size(), sync_word) != 0)
        throw std::invalid_argument("no return to the synchronizing word at the stated time");
    if (!space.allows(x_prefix)) throw std::invalid_argument("prefix is not allowed");

    Word u = x_prefix.substr(0, n);
    if (!space.allows(u + u + u + sync_word))
        throw std::invalid_argument("periodic closure refuted by the membership certificate");

    EPSequence z = EPSequence::periodic(u);
    Rat sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // Compare the shifted prefix with the shifted periodic point; when
        // the observable window runs out, charge the worst case at its end.
        std::size_t window = x_prefix.size() - i;
        std::size_t j = 0;
        while (j < window && x_prefix[i + j] == z.at(i + j)) ++j;
        sum += rat_pow(p.alpha, j);
    }
    Rat bound = p.alpha / (1 - p.alpha);
    if (!(sum < bound)) throw std::logic_error("closing sum reached alpha/(1-alpha)");
    return ClosedOrbit{u, sum};
}

// ---------------------------------------------------------------------------
// Locking

namespace {

Word canonical_rotation(const Word& w) {
    Word best = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word rot = w.substr(i) + w.substr(0, i);
        if (rot < best) best = rot;
    }
    return best;
}

LocallyConstantFn orbit_penalised(const SftSpace& space, const LocallyConstantFn& f,
                                  const Rat& eps, int trunc_depth,
                                  const std::vector<EPSequence>& orbit, const MetricParam& p) {
    int depth = std::max(f.depth(), trunc_depth);
    std::map<Word, Rat> table;
    std::vector<Word> all;
    std::function<void(Word&)> rec = [&](Word& w) {
        if (static_cast<int>(w.size()) == depth) {
            table[w] = f.eval_word(w) - eps * truncated_distance_to_orbit(w, orbit, trunc_depth, p);
            return;
        }
        for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
            w.push_back(space.alphabet().symbol(i));
            rec(w);
            w.pop_back();
        }
    };
    Word w;
    rec(w);
    return LocallyConstantFn(space.alphabet(), depth, std::move(table));
}

}  // namespace

LockingReport locking_test(const SftSpace& space, const LocallyConstantFn& f, const Rat& eps,
                           int trunc_depth, int samples, const MetricParam& p, Rng& rng) {
    CycleMeanResult base = max_ergodic_average(space, f);
    if (!base.tight.core_is_single_cycle())
        throw std::invalid_argument("locking test needs a unique maximizing cycle");
    Word u = base.witness;
    std::size_t q = u.size();
    std::vector<EPSequence> orbit;
    EPSequence ux = EPSequence::periodic(u);
    for (std::size_t i = 0; i < q; ++i) orbit.push_back(ux.shifted(i));

    LocallyConstantFn f_eps = orbit_penalised(space, f, eps, trunc_depth, orbit, p);
    Word base_cycle = canonical_rotation(u);

    // Admissible ball: |g| * sum_{i<q} alpha^{-i} < eps/2.
    Rat stretch = 0;
    for (std::size_t i = 0; i < q; ++i) stretch += rat_pow(1 / p.alpha, i);
    Rat budget = eps / (2 * stretch);

    LockingReport report;
    report.samples = samples;
    report.admissible_seminorm = budget;
    const int g_depth = 3;
    for (int s = 0; s < samples; ++s) {
        std::map<Word, Rat> g_table;
        std::function<void(Word&)> rec = [&](Word& w) {
            if (static_cast<int>(w.size()) == g_depth) {
                g_table[w] = rng.rat(-8, 8, 16);
                return;
            }
            for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
                w.push_back(space.alphabet().symbol(i));
                rec(w);
                w.pop_back();
            }
        };
        Word w;
        rec(w);
        LocallyConstantFn g(space.alphabet(), g_depth, std::move(g_table));
        Rat seminorm = lipschitz_seminorm(g, p);
        if (seminorm != 0) {
            Rat scale = budget * Rat(rng.range(1, 127), 128) / seminorm;
            g = g.scaled(scale);
        }
        CycleMeanResult perturbed = max_ergodic_average(space, f_eps + g);
        bool locked = perturbed.tight.core_is_single_cycle() &&
                      canonical_rotation(perturbed.witness) == base_cycle;
        if (locked) ++report.locked;
    }
    return report;
}

bool unlock_demo(const SftSpace& space, const LocallyConstantFn& f, const Rat& eps,
                 int trunc_depth, const MetricParam& p) {
    CycleMeanResult base = max_ergodic_average(space, f);
    if (!base.tight.core_is_single_cycle())
        throw std::invalid_argument("unlock demo needs a unique maximizing cycle");
    Word u = base.witness;
    std::vector<EPSequence> orbit;
    EPSequence ux = EPSequence::periodic(u);
    for (std::size_t i = 0; i < u.size(); ++i) orbit.push_back(ux.shifted(i));
    LocallyConstantFn f_eps = orbit_penalised(space, f, eps, trunc_depth, orbit, p);

    // Reward a window off the maximizing orbit, far beyond the admissible ball.
    Word off;
    for (const Word& win : space.windows()) {
        bool on_orbit = false;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (ux.shifted(i).prefix(win.size()) == win) on_orbit = true;
        if (!on_orbit) {
            off = win;
            break;
        }
    }
    if (off.empty()) return false;
    LocallyConstantFn g = LocallyConstantFn::indicator(space.alphabet(), off).scaled(2);
    CycleMeanResult perturbed = max_ergodic_average(space, f_eps + g);
    return !(perturbed.tight.core_is_single_cycle() &&
             canonical_rotation(perturbed.witness) == canonical_rotation(u));
}

// ---------------------------------------------------------------------------
// Minimax Birkhoff bound search

BirkhoffBound birkhoff_bound_check(const SftSpace& space, const LocallyConstantFn& f,
                                   const Word& cylinder, int max_n) {
    BirkhoffBound result;
    Rat beta = max_ergodic_average(space, f).beta;
    LocallyConstantFn f0 = f.shifted(-beta);
    DeBruijnGraph g = DeBruijnGraph::build(space, f0, static_cast<int>(cylinder.size()));
    int n = static_cast<int>(g.vertices.size());
    std::vector<bool> avoid(n, false);
    bool any_target = false;
    for (int v = 0; v < n; ++v) {
        if (g.vertices[v].compare(0, cylinder.size(), cylinder) == 0) {
            avoid[v] = true;
            any_target = true;
        }
    }
    if (!any_target) throw std::invalid_argument("cylinder word names no vertex of the graph");

    // Cycle check inside the avoiding subgraph.
    std::vector<std::vector<int>> succ(n);
    for (const auto& e : g.edges)
        if (!avoid[e.from] && !avoid[e.to]) succ[e.from].push_back(e.to);
    auto ids = scc_ids(n, succ);
    std::vector<int> comp_size(n, 0);
    for (int v = 0; v < n; ++v)
        if (!avoid[v]) ++comp_size[ids[v]];
    bool has_cycle = false;
    for (int v = 0; v < n; ++v) {
        if (avoid[v]) continue;
        if (comp_size[ids[v]] > 1) has_cycle = true;
        for (int w : succ[v])
            if (w == v) has_cycle = true;
    }

    Rat mu_star;
    bool mu_valid = false;
    if (has_cycle) {
        // Build the pruned avoiding graph and take its maximum cycle mean.
        std::set<Word> windows;
        for (const auto& e : g.edges) {
            if (avoid[e.from] || avoid[e.to]) continue;
            windows.insert(g.vertices[e.from] + g.vertices[e.to].back());
        }
        SftSpace avoiding(space.alphabet(), g.word_len, windows);
        if (!avoiding.empty_space()) {
            CycleMeanResult sub = max_ergodic_average(avoiding, f0);
            if (sub.beta >= 0) {
                result.refutation = sub.witness;
                result.detail = "avoiding cycle attains the maximum";
                return result;
            }
            mu_star = sub.beta;
            mu_valid = true;
        }
    }

    // Horizon: any avoiding walk with non-negative weight fits a simple path
    // plus strictly negative cycles, so its edge count is bounded.
    long long horizon = n;
    if (mu_valid) {
        Rat wmax = 0;
        for (const auto& e : g.edges) wmax = std::max(wmax, e.weight);
        Rat t_edges = Rat(n - 1) * (1 + wmax / (-mu_star));
        horizon = (numerator(t_edges) / denominator(t_edges)).convert_to<long long>() + 2;
    }
    if (horizon > 100000) {
        result.inconclusive = true;
        result.detail = "certified horizon too large to sweep";
        return result;
    }

    // M[v] = best weight over avoiding walks with V vertices ending at v.
    std::vector<Rat> cur(n, Rat(0));
    std::vector<bool> reach(n, false);
    for (int v = 0; v < n; ++v) reach[v] = !avoid[v];
    long long last_nonneg = 1;  // single vertices carry the empty sum
    for (long long vertices = 2; vertices <= horizon + 1; ++vertices) {
        std::vector<Rat> next(n, Rat(0));
        std::vector<bool> next_reach(n, false);
        for (const auto& e : g.edges) {
            if (avoid[e.from] || avoid[e.to] || !reach[e.from]) continue;
            Rat cand = cur[e.from] + e.weight;
            if (!next_reach[e.to] || cand > next[e.to]) {
                next[e.to] = cand;
                next_reach[e.to] = true;
            }
        }
        cur = std::move(next);
        reach = std::move(next_reach);
        bool any = false;
        Rat best = 0;
        bool best_have = false;
        for (int v = 0; v < n; ++v) {
            if (!reach[v]) continue;
            any = true;
            if (!best_have || cur[v] > best) {
                best = cur[v];
                best_have = true;
            }
        }
        if (!any) break;
        if (best >= 0) last_nonneg = vertices;
    }
    int candidate = static_cast<int>(last_nonneg + 1);
    if (candidate > max_n) {
        result.inconclusive = true;
        result.detail = "bound exceeds the requested range";
        return result;
    }
    result.bound = candidate;
    return result;
}

// ---------------------------------------------------------------------------
// Cohomology obstruction transcript

ManeTranscript mane_obstruction_demo(int max_n, const MetricParam& p) {
    // Six-state cover of the three-letter factor system; letters p,q,r,s play
    // the marker roles, b and c keep their names.
    Alphabet cover_alphabet("pqrsbc");
    std::set<Word> windows{"pp", "pb", "bq", "qr", "rr", "rc", "cs", "sp"};
    SftSpace cover(cover_alphabet, 1, windows);
    LocallyConstantFn f_cover = LocallyConstantFn::first_symbol_values(
        cover_alphabet, {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1), Rat(-1)});

    ManeTranscript transcript;
    transcript.cover_beta = max_ergodic_average(cover, f_cover).beta;

    Alphabet base_alphabet("abc");
    LocallyConstantFn f_base =
        LocallyConstantFn::first_symbol_values(base_alphabet, {Rat(0), Rat(1), Rat(-1)});
    EPSequence fixed = EPSequence::periodic("a");
    for (int n = 1; n <= max_n; ++n) {
        EPSequence x(Word(static_cast<std::size_t>(n), 'a') + "b", "a");
        Rat s = birkhoff_sum(f_base, x, n + 1);
        Rat dist = metric_distance(x, fixed, p);
        transcript.rows.push_back({n, s, dist});
        std::ostringstream line;
        line << "n=" << n << "  S_" << (n + 1) << "f(a^n b a^inf)=" << rat_to_string(s)
             << "  d(a^n b a^inf, a^inf)=" << rat_to_string(dist);
        transcript.lines.push_back(line.str());
    }
    return transcript;
}

// ---------------------------------------------------------------------------
// Serialization

std::string CycleMeanResult::serialize() const {
    json j;
    j["beta"] = rat_to_string(beta);
    j["witness"] = witness;
    json edges = json::array();
    for (const auto& [from, to] : tight.tight_edges) edges.push_back({from, to});
    j["tight_edges"] = edges;
    json core = json::array();
    for (const auto& [from, to] : tight.core_edges) core.push_back({from, to});
    j["core_edges"] = core;
    return j.dump();
}

}  // namespace shiftlab
