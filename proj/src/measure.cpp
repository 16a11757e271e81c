#include "shiftlab/measure.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <iostream>
#include <map>
#include <stdexcept>

#include "shiftlab/constructions.hpp"

namespace shiftlab {

// ---------------------------------------------------------------------------
// FiniteMeasure

FiniteMeasure::FiniteMeasure(std::vector<std::pair<EPSequence, Rat>> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [x, w] : atoms) {
        if (w <= 0) throw std::invalid_argument("atom weights must be positive");
        if (!atoms_.empty() && atoms_.back().first == x)
            atoms_.back().second += w;
        else
            atoms_.push_back({std::move(x), std::move(w)});
    }
    Rat total = 0;
    for (const auto& [x, w] : atoms_) total += w;
    if (total != 1) throw std::invalid_argument("atom weights must sum to one");
}

Rat FiniteMeasure::cylinder_mass(const Word& prefix) const {
    Rat mass = 0;
    for (const auto& [x, w] : atoms_)
        if (x.prefix(prefix.size()) == prefix) mass += w;
    return mass;
}

Rat FiniteMeasure::integrate(const LocallyConstantFn& f) const {
    Rat total = 0;
    for (const auto& [x, w] : atoms_) total += w * f.eval(x);
    return total;
}

std::vector<std::pair<Word, Rat>> FiniteMeasure::window_frequencies(int depth) const {
    std::map<Word, Rat> freq;
    for (const auto& [x, w] : atoms_) freq[x.prefix(depth)] += w;
    return {freq.begin(), freq.end()};
}

FiniteMeasure dirac(EPSequence x) { return FiniteMeasure({{std::move(x), Rat(1)}}); }

FiniteMeasure empirical_measure(const EPSequence& x, long long n) {
    if (n < 1) throw std::invalid_argument("empirical measure needs n >= 1");
    std::vector<std::pair<EPSequence, Rat>> atoms;
    for (long long i = 0; i < n; ++i)
        atoms.push_back({x.shifted(static_cast<std::size_t>(i)), Rat(1, n)});
    return FiniteMeasure(std::move(atoms));
}

FiniteMeasure periodic_measure(const Word& u, bool* reduced) {
    if (u.empty()) throw std::invalid_argument("periodic measure needs a non-empty word");
    Word root = primitive_root(u);
    if (reduced)
        *reduced = root.size() != u.size();
    else if (root.size() != u.size())
        std::cerr << "periodic_measure: reduced non-primitive word to its root\n";
    return empirical_measure(EPSequence::periodic(root), static_cast<long long>(root.size()));
}

FiniteMeasure mix(const std::vector<std::pair<Rat, FiniteMeasure>>& parts) {
    std::vector<std::pair<EPSequence, Rat>> atoms;
    for (const auto& [a, mu] : parts) {
        if (a == 0) continue;
        for (const auto& [x, w] : mu.atoms()) atoms.push_back({x, a * w});
    }
    return FiniteMeasure(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Optimal transport

std::vector<std::vector<Rat>> pairwise_distance_matrix(const FiniteMeasure& mu,
                                                       const FiniteMeasure& nu,
                                                       const MetricParam& p, bool parallel) {
    const auto& a = mu.atoms();
    const auto& b = nu.atoms();
    std::vector<std::vector<Rat>> d(a.size(), std::vector<Rat>(b.size()));
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                d[static_cast<std::size_t>(i)][j] =
                    metric_distance(a[static_cast<std::size_t>(i)].first, b[j].first, p);
    } else {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                d[i][j] = metric_distance(a[i].first, b[j].first, p);
    }
    return d;
}

WassersteinResult wasserstein(const FiniteMeasure& mu, const FiniteMeasure& nu,
                              const MetricParam& p, bool parallel_matrix) {
    const auto d = pairwise_distance_matrix(mu, nu, p, parallel_matrix);
    const int m = static_cast<int>(mu.atoms().size());
    const int k = static_cast<int>(nu.atoms().size());

    // All arc costs share a common denominator, so the shortest-path side of
    // the computation runs on plain big integers; only the transported
    // masses stay rational.
    BigInt denom = 1;
    for (const auto& row : d)
        for (const Rat& v : row) denom = boost::multiprecision::lcm(denom, denominator(v));
    std::vector<std::vector<BigInt>> cost(m, std::vector<BigInt>(k));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j) cost[i][j] = numerator(d[i][j]) * (denom / denominator(d[i][j]));

    std::vector<Rat> supply, demand;
    for (const auto& [x, w] : mu.atoms()) supply.push_back(w);
    for (const auto& [x, w] : nu.atoms()) demand.push_back(w);

    // Successive shortest paths with node potentials; reduced costs stay
    // non-negative, so plain Dijkstra applies at every phase.
    std::map<std::pair<int, int>, Rat> flow;
    std::vector<std::vector<bool>> has_flow(m, std::vector<bool>(k, false));
    std::vector<BigInt> pot_src(m, BigInt(0)), pot_snk(k, BigInt(0));
    Rat remaining = 1;

    while (remaining > 0) {
        std::vector<BigInt> dist_src(m), dist_snk(k);
        std::vector<bool> seen_src(m, false), seen_snk(k, false);
        std::vector<bool> done_src(m, false), done_snk(k, false);
        std::vector<int> parent_snk(k, -1);  // source feeding the sink
        std::vector<int> parent_src(m, -1);  // sink feeding the source (residual)
        for (int i = 0; i < m; ++i) {
            if (supply[i] > 0) {
                dist_src[i] = 0;
                seen_src[i] = true;
            }
        }

        while (true) {
            int si = -1, sj = -1;
            for (int i = 0; i < m; ++i)
                if (seen_src[i] && !done_src[i] && (si < 0 || dist_src[i] < dist_src[si])) si = i;
            for (int j = 0; j < k; ++j)
                if (seen_snk[j] && !done_snk[j] && (sj < 0 || dist_snk[j] < dist_snk[sj])) sj = j;
            bool take_src = si >= 0 && (sj < 0 || dist_src[si] <= dist_snk[sj]);
            if (!take_src && sj < 0) break;
            if (take_src) {
                done_src[si] = true;
                const BigInt base = dist_src[si] + pot_src[si];
                for (int j = 0; j < k; ++j) {
                    if (done_snk[j]) continue;
                    BigInt nd = base + cost[si][j] - pot_snk[j];
                    if (!seen_snk[j] || nd < dist_snk[j]) {
                        dist_snk[j] = std::move(nd);
                        seen_snk[j] = true;
                        parent_snk[j] = si;
                    }
                }
            } else {
                done_snk[sj] = true;
                const BigInt base = dist_snk[sj] + pot_snk[sj];
                for (int i = 0; i < m; ++i) {
                    if (done_src[i] || !has_flow[i][sj]) continue;
                    BigInt nd = base - cost[i][sj] - pot_src[i];
                    if (!seen_src[i] || nd < dist_src[i]) {
                        dist_src[i] = std::move(nd);
                        seen_src[i] = true;
                        parent_src[i] = sj;
                    }
                }
            }
        }
        int best_sink = -1;
        for (int j = 0; j < k; ++j) {
            if (!seen_snk[j] || demand[j] == 0) continue;
            if (best_sink < 0 || dist_snk[j] < dist_snk[best_sink]) best_sink = j;
        }
        if (best_sink < 0) throw std::logic_error("transport network disconnected");

        // Trace the augmenting path and find its bottleneck.
        Rat push = demand[best_sink];
        {
            int j = best_sink;
            while (true) {
                int i = parent_snk[j];
                int pj = parent_src[i];
                if (pj < 0) {
                    if (supply[i] < push) push = supply[i];
                    break;
                }
                const Rat& f = flow.at({i, pj});
                if (f < push) push = f;
                j = pj;
            }
        }
        {
            int j = best_sink;
            while (true) {
                int i = parent_snk[j];
                Rat& f = flow[{i, j}];
                f += push;
                has_flow[i][j] = f != 0;
                int pj = parent_src[i];
                if (pj < 0) {
                    supply[i] -= push;
                    break;
                }
                Rat& back = flow.at({i, pj});
                back -= push;
                has_flow[i][pj] = back != 0;
                j = pj;
            }
            demand[best_sink] -= push;
        }
        remaining -= push;

        // Standard potential update keeps reduced costs non-negative.
        const BigInt& reach = dist_snk[best_sink];
        for (int i = 0; i < m; ++i)
            if (seen_src[i]) pot_src[i] += std::min(dist_src[i], reach);
        for (int j = 0; j < k; ++j)
            if (seen_snk[j]) pot_snk[j] += std::min(dist_snk[j], reach);
    }

    WassersteinResult result;
    result.cost = 0;
    for (const auto& [key, mass] : flow) {
        if (mass == 0) continue;
        if (mass < 0) throw std::logic_error("negative transport mass");
        result.plan.flows.push_back({key.first, key.second, mass});
        result.cost += mass * d[key.first][key.second];
    }
    result.plan.cost = result.cost;
    return result;
}

// ---------------------------------------------------------------------------
// Morse-side integrals and empirical windows

Rat distance_integral(const FiniteMeasure& rho, const MetricParam& p, bool parallel) {
    const MorseOracle& oracle = shared_morse_oracle();
    const auto& atoms = rho.atoms();
    std::vector<std::size_t> cuts(atoms.size());
    auto cut_of = [&](std::size_t idx) {
        const EPSequence& x = atoms[idx].first;
        std::size_t span = x.preperiod().size() + x.period().size();
        for (std::size_t i = 0; i < span; ++i)
            if (x.at(i) == '#') return i;
        return oracle.longest_factor_prefix(x);
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(atoms.size()); ++i)
            cuts[static_cast<std::size_t>(i)] = cut_of(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < atoms.size(); ++i) cuts[i] = cut_of(i);
    }
    Rat total = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        total += atoms[i].second * rat_pow(p.alpha, cuts[i]);
    return total;
}

FiniteMeasure morse_empirical(long long n, std::size_t horizon) {
    if (n < 1) throw std::invalid_argument("empirical window needs n >= 1");
    const std::string& omega = shared_morse_oracle().sequence();
    if (horizon + 2 > omega.size())
        throw std::length_error("requested horizon exceeds the Morse oracle");
    if (static_cast<std::size_t>(n) >= horizon)
        throw std::invalid_argument("horizon must exceed the number of iterates");
    EPSequence padded(omega.substr(0, horizon), "01");
    return empirical_measure(padded, n);
}

namespace {

// Distances at the tested scales must resolve strictly before the padding of
// either side; otherwise the finite representation is too short.
void assert_padding_unseen(const FiniteMeasure& mu, const FiniteMeasure& nu,
                           std::size_t pad_floor) {
    for (const auto& [x, wx] : mu.atoms()) {
        for (const auto& [y, wy] : nu.atoms()) {
            std::size_t d = ep_first_disagreement(x, y);
            if (d != std::string::npos && d + 1 >= pad_floor)
                throw std::length_error("insufficient prefix budget for exact distances");
        }
    }
}

EPSequence theta_magic_point(int n, const EPSequence& tail) {
    return EPSequence(morse_word(static_cast<unsigned>(n)) + "#" + tail.preperiod(),
                      tail.period());
}

void check_magic_point(const EPSequence& x, int n) {
    static const ShiftSpace magic = make_magic_morse();
    std::size_t probe = (std::size_t{1} << n) + 2 * x.period().size() +
                        x.preperiod().size() + 2;
    if (!magic.allows(x.prefix(probe)))
        throw std::invalid_argument("the point theta_n # tail is not in the magic Morse shift");
}

}  // namespace

MorseBoundResult verify_prefix_bound(int n, int M, const EPSequence& tail, const MetricParam& p) {
    if (n < 1 || M < 1) throw std::invalid_argument("verify_prefix_bound needs n, M >= 1");
    MorseBoundResult result;
    result.n = n;
    result.m = M;
    long long block = 1LL << n;
    result.sample_size = block;
    result.lambda_size = block * M;
    EPSequence x = theta_magic_point(n, tail);
    check_magic_point(x, n);
    FiniteMeasure mu = empirical_measure(x, block);
    std::size_t horizon = static_cast<std::size_t>(block * M) + (std::size_t{16} << n);
    FiniteMeasure nu = morse_empirical(block * M, horizon);
    assert_padding_unseen(mu, nu, (std::size_t{8} << n));
    result.wasserstein_value = wasserstein(mu, nu, p).cost;
    result.bound = (2 * p.alpha / (1 - p.alpha)) / Rat(block);
    result.certified = result.wasserstein_value <= result.bound;
    return result;
}

MorseBoundResult verify_plus_one_bound(int n, int M, const EPSequence& tail,
                                       const MetricParam& p) {
    if (n < 1 || M < 1) throw std::invalid_argument("verify_plus_one_bound needs n, M >= 1");
    MorseBoundResult result;
    result.n = n;
    result.m = M;
    long long block = 1LL << n;
    result.sample_size = block + 1;
    result.lambda_size = block * M;
    EPSequence x = theta_magic_point(n, tail);
    check_magic_point(x, n);
    FiniteMeasure mu = empirical_measure(x, block + 1);
    std::size_t horizon = static_cast<std::size_t>(block * M) + (std::size_t{16} << n);
    FiniteMeasure nu = morse_empirical(block * M, horizon);
    assert_padding_unseen(mu, nu, (std::size_t{8} << n));
    result.wasserstein_value = wasserstein(mu, nu, p).cost;
    result.bound = ((1 + p.alpha) / (1 - p.alpha)) / Rat(block + 1);
    result.certified = result.wasserstein_value <= result.bound;
    return result;
}

// ---------------------------------------------------------------------------
// The non-locking ball around -d(., Morse shift)

int NonTpoReport::violations() const {
    int v = 0;
    for (const auto& row : rows)
        if (!row.strict) ++v;
    return v;
}

int NonTpoReport::inconclusive_count() const {
    int v = 0;
    for (const auto& row : rows)
        if (row.strict && !row.conclusive) ++v;
    return v;
}

namespace {

LocallyConstantFn sample_phi(const Alphabet& alphabet, const Rat& cap, const MetricParam& p,
                             Rng& rng) {
    const int depth = 3;
    std::map<Word, Rat> table;
    std::vector<Word> stack{""};
    std::function<void(Word&)> rec = [&](Word& w) {
        if (static_cast<int>(w.size()) == depth) {
            table[w] = rng.rat(-8, 8, 16);
            return;
        }
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            w.push_back(alphabet.symbol(i));
            rec(w);
            w.pop_back();
        }
    };
    Word w;
    rec(w);
    LocallyConstantFn phi(alphabet, depth, std::move(table));
    Rat seminorm = lipschitz_seminorm(phi, p);
    if (seminorm == 0) return phi;
    return phi.scaled(cap * Rat(rng.range(64, 127), 128) / seminorm);
}

}  // namespace

NonTpoReport verify_non_tpo_ball(int measure_samples, int phi_samples, int n_scale, int M,
                                 const MetricParam& p, Rng& rng, bool parallel) {
    NonTpoReport report;
    report.n_scale = n_scale;
    long long L = (1LL << n_scale) * M;
    report.lambda_len = L;
    report.ball_radius = (1 - p.alpha) / (1 + p.alpha);
    report.seminorm_cap = report.ball_radius * Rat(9, 10);
    Alphabet alphabet("01#");

    std::size_t horizon = static_cast<std::size_t>(L) + (std::size_t{16} << n_scale);
    FiniteMeasure lambda_window = morse_empirical(L, horizon);
    Rat lambda_d_integral = distance_integral(lambda_window, p, parallel);
    const int freq_depth = 3;
    auto lambda_freq = lambda_window.window_frequencies(freq_depth);

    // Draw the sample grid up front so that parallel evaluation cannot
    // influence the random stream.
    std::vector<Word> words;
    for (int s = 0; s < measure_samples; ++s) {
        int blocks = static_cast<int>(rng.range(1, 3));
        Word u;
        for (int b = 0; b < blocks; ++b) {
            unsigned level = static_cast<unsigned>(rng.range(0, 4));
            u += morse_word(level);
            u += '#';
        }
        words.push_back(std::move(u));
    }
    std::vector<LocallyConstantFn> phis;
    for (int t = 0; t < phi_samples; ++t)
        phis.push_back(sample_phi(alphabet, report.seminorm_cap, p, rng));

    std::vector<Rat> phi_lips(phis.size());
    std::vector<Rat> phi_lambda(phis.size());
    for (std::size_t t = 0; t < phis.size(); ++t) {
        phi_lips[t] = lipschitz_seminorm(phis[t], p);
        Rat v = 0;
        for (const auto& [w, f] : lambda_freq) v += f * phis[t].eval_word(w);
        phi_lambda[t] = v;
    }

    report.rows.resize(words.size() * phis.size());
    auto eval_measure = [&](std::size_t s) {
        const Word& u = words[s];
        bool reduced = false;
        FiniteMeasure rho = periodic_measure(u, &reduced);
        Rat rho_d = distance_integral(rho, p);
        auto rho_freq = rho.window_frequencies(freq_depth);
        int magic_count = static_cast<int>(std::count(u.begin(), u.end(), '#'));
        for (std::size_t t = 0; t < phis.size(); ++t) {
            Rat rho_phi = 0;
            for (const auto& [w, f] : rho_freq) rho_phi += f * phis[t].eval_word(w);
            NonTpoSample row;
            row.periodic_word = u;
            row.magic_count = magic_count;
            row.period = static_cast<int>(u.size());
            row.phi_seminorm = phi_lips[t];
            row.rho_distance_integral = rho_d;
            row.margin = (phi_lambda[t] - lambda_d_integral) - (rho_phi - rho_d);
            row.slack = phi_lips[t] * 4 * p.alpha / ((1 - p.alpha) * Rat(1LL << n_scale));
            row.strict = row.margin > 0;
            row.conclusive = row.margin > row.slack;
            report.rows[s * phis.size() + t] = std::move(row);
        }
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long s = 0; s < static_cast<long long>(words.size()); ++s)
            eval_measure(static_cast<std::size_t>(s));
    } else {
        for (std::size_t s = 0; s < words.size(); ++s) eval_measure(s);
    }
    return report;
}

}  // namespace shiftlab
