// Acceptance suite: every quantitative claim the workbench certifies, run at
// its stated tolerance (all comparisons exact). Prints one line per
// criterion and exits non-zero when any of them fails.

#include <chrono>
#include <iomanip>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "shiftlab/constructions.hpp"
#include "shiftlab/ergopt.hpp"
#include "shiftlab/follower.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/rng.hpp"

using namespace shiftlab;

namespace {

int failures = 0;

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& run) {
    std::string detail;
    bool ok = false;
    double t0 = now();
    try {
        ok = run(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double dt = now() - t0;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << name << " (" << detail
         << ", " << static_cast<long long>(dt * 1000) << " ms)";
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
}

// Shared random instance generator for criteria 1 and 2: window SFTs over at
// most three symbols with step at most two and random rational tables of
// depth at most three.
std::pair<SftSpace, LocallyConstantFn> random_instance(Rng& rng) {
    while (true) {
        int alphabet_size = static_cast<int>(rng.range(2, 3));
        Alphabet a(std::string("012").substr(0, static_cast<std::size_t>(alphabet_size)));
        int step = static_cast<int>(rng.range(1, 2));
        std::set<Word> windows;
        std::function<void(Word&)> rec = [&](Word& w) {
            if (static_cast<int>(w.size()) == step + 1) {
                if (rng.below(100) < 65) windows.insert(w);
                return;
            }
            for (std::size_t i = 0; i < a.size(); ++i) {
                w.push_back(a.symbol(i));
                rec(w);
                w.pop_back();
            }
        };
        Word scratch;
        rec(scratch);
        SftSpace sft(a, step, windows);
        if (sft.empty_space()) continue;
        int depth = static_cast<int>(rng.range(1, 3));
        std::map<Word, Rat> table;
        std::function<void(Word&)> fill = [&](Word& w) {
            if (static_cast<int>(w.size()) == depth) {
                table[w] = rng.rat(-6, 6, static_cast<long long>(rng.range(1, 5)));
                return;
            }
            for (std::size_t i = 0; i < a.size(); ++i) {
                w.push_back(a.symbol(i));
                fill(w);
                w.pop_back();
            }
        };
        Word scratch2;
        fill(scratch2);
        return {sft, LocallyConstantFn(a, depth, std::move(table))};
    }
}

}  // namespace

int main() {
    std::vector<std::pair<SftSpace, LocallyConstantFn>> instances;
    {
        Rng rng(20260809);
        for (int i = 0; i < 25; ++i) instances.push_back(random_instance(rng));
    }

    criterion(1, "maximum mean equals the exhaustive periodic oracle on 25 random systems",
              [&](std::string& detail) {
                  double t0 = now();
                  for (const auto& [sft, f] : instances) {
                      CycleMeanResult exact = max_ergodic_average(sft, f);
                      DeBruijnGraph g = DeBruijnGraph::build(sft, f);
                      auto [oracle_beta, oracle_word] =
                          brute_force_beta(sft, f, static_cast<int>(g.vertices.size()));
                      if (exact.beta != oracle_beta) {
                          detail = "disagreement at beta=" + rat_to_string(exact.beta) + " vs " +
                                   rat_to_string(oracle_beta);
                          return false;
                      }
                  }
                  double dt = now() - t0;
                  std::ostringstream s;
                  s << "25/25 exact matches in " << static_cast<long long>(dt * 1000) << " ms";
                  detail = s.str();
                  return dt < 10.0;
              });

    criterion(2, "potential certificate and periodic words of maximal mean sit in the core",
              [&](std::string& detail) {
                  long long edge_checks = 0, cycle_checks = 0;
                  for (const auto& [sft, f] : instances) {
                      CycleMeanResult r = max_ergodic_average(sft, f);
                      DeBruijnGraph g = DeBruijnGraph::build(sft, f);
                      for (const auto& e : g.edges) {
                          Rat slack = e.weight + r.tight.potentials.at(g.vertices[e.from]) -
                                      r.tight.potentials.at(g.vertices[e.to]);
                          ++edge_checks;
                          if (slack > r.beta) {
                              detail = "edge above the certified level";
                              return false;
                          }
                      }
                      int cap = static_cast<int>(g.vertices.size());
                      for (int len = 1; len <= cap; ++len) {
                          for (const Word& u : words_of_length(sft.as_shift_space(), len)) {
                              if (!is_primitive_word(u) || !sft.allows_cycle(u)) continue;
                              Rat mean =
                                  birkhoff_sum(f, EPSequence::periodic(u), len) / Rat(len);
                              if (mean != r.beta) continue;
                              ++cycle_checks;
                              if (!r.tight.cycle_in_core(u)) {
                                  detail = "maximal periodic word " + u + " outside the core";
                                  return false;
                              }
                          }
                      }
                  }
                  detail = std::to_string(edge_checks) + " edges, " +
                           std::to_string(cycle_checks) + " maximal periodic words";
                  return true;
              });

    criterion(3, "context-free boundary: growth flags, exact boundary, level one",
              [&](std::string& detail) {
                  ShiftSpace cf = make_context_free_shift();
                  Schedule schedule = Schedule::standard();
                  std::set<Word> growing;
                  for (const Word& w : words_up_to_length(cf, 6))
                      if (classify_word(cf, w, schedule).growing) growing.insert(w);
                  std::set<Word> expect;
                  for (int b = 0; b <= 6; ++b)
                      for (int c = 0; b + c <= 6; ++c)
                          expect.insert(Word(static_cast<std::size_t>(b), 'b') +
                                        Word(static_cast<std::size_t>(c), 'c'));
                  if (growing != expect) {
                      detail = "growth flags mismatch: " + std::to_string(growing.size()) +
                               " flagged, " + std::to_string(expect.size()) + " expected";
                      return false;
                  }
                  auto boundary = boundary_exact(cf);
                  if (!boundary || boundary->empty_space()) {
                      detail = "exact boundary missing";
                      return false;
                  }
                  if (boundary->kind() != "sft-forbidden" ||
                      boundary->alphabet().symbols() != "bc") {
                      detail = "boundary is not the expected finite-type system";
                      return false;
                  }
                  for (const Word& w : oracle::language_brute_force(
                           "bc", 6, [](const Word& v) { return v.find("cb") == Word::npos; }))
                      if (!boundary->allows(w)) {
                          detail = "boundary rejects " + w;
                          return false;
                      }
                  if (boundary->allows("cb")) {
                      detail = "boundary admits the forbidden word";
                      return false;
                  }
                  auto level = eventual_sofic_level(cf, 3);
                  if (level.level != 1) {
                      detail = "eventual soficity level mismatch";
                      return false;
                  }
                  detail = std::to_string(expect.size()) + " growth flags exact, level 1";
                  return true;
              });

    criterion(4, "closing constant: 100 random magic returns stay below alpha/(1-alpha)",
              [&](std::string& detail) {
                  ShiftSpace magic = make_magic_morse();
                  MetricParam p = MetricParam::half();
                  Rat bound = p.alpha / (1 - p.alpha);
                  Rng rng(4100);
                  Rat worst = 0;
                  for (int i = 0; i < 100; ++i) {
                      int blocks = static_cast<int>(rng.range(2, 5));
                      Word prefix = "#";
                      std::vector<int> returns{0};
                      for (int b = 0; b < blocks; ++b) {
                          prefix += morse_word(static_cast<unsigned>(rng.range(0, 4)));
                          returns.push_back(static_cast<int>(prefix.size()));
                          prefix += '#';
                      }
                      prefix += morse_word(static_cast<unsigned>(rng.range(0, 3)));
                      int n = returns[static_cast<std::size_t>(rng.range(1, blocks))];
                      ClosedOrbit closed = close_orbit(magic, prefix, n, "#", p);
                      if (!(closed.distance_sum < bound)) {
                          detail = "distance sum reached the constant";
                          return false;
                      }
                      if (closed.distance_sum > worst) worst = closed.distance_sum;
                  }
                  detail = "100 closures, worst sum " + rat_to_string(worst) + " < 1";
                  return true;
              });

    criterion(5, "empirical-window transport bounds for n=1..5, M=1,2,4,8",
              [&](std::string& detail) {
                  double t0 = now();
                  MetricParam p = MetricParam::half();
                  EPSequence tail = EPSequence::periodic("0#");
                  int count = 0;
                  for (int n = 1; n <= 5; ++n) {
                      for (int M : {1, 2, 4, 8}) {
                          MorseBoundResult block = verify_prefix_bound(n, M, tail, p);
                          Rat expect_block = Rat(2) / Rat(1LL << n);
                          if (!block.certified || block.bound != expect_block) {
                              detail = "block bound failed at n=" + std::to_string(n);
                              return false;
                          }
                          MorseBoundResult plus = verify_plus_one_bound(n, M, tail, p);
                          Rat expect_plus = Rat(3) / Rat((1LL << n) + 1);
                          if (!plus.certified || plus.bound != expect_plus) {
                              detail = "block+1 bound failed at n=" + std::to_string(n);
                              return false;
                          }
                          count += 2;
                      }
                  }
                  double dt = now() - t0;
                  std::ostringstream s;
                  s << count << " bounds certified in " << static_cast<long long>(dt * 1000)
                    << " ms";
                  detail = s.str();
                  return dt < 60.0;
              });

    criterion(6, "strict optimality gap across 50 x 20 sampled perturbations",
              [&](std::string& detail) {
                  MetricParam p = MetricParam::half();
                  Rng rng(616);
                  NonTpoReport report = verify_non_tpo_ball(50, 20, 6, 8, p, rng, false);
                  if (report.rows.size() != 1000) {
                      detail = "sample count off";
                      return false;
                  }
                  Rat min_margin;
                  bool have = false;
                  for (const auto& row : report.rows) {
                      if (row.phi_seminorm > Rat(3, 10)) {
                          detail = "sampled seminorm above the cap";
                          return false;
                      }
                      if (!(row.margin > row.slack)) {
                          detail = "margin at or below the slack for " + row.periodic_word;
                          return false;
                      }
                      Rat gap = row.margin - row.slack;
                      if (!have || gap < min_margin) min_margin = gap, have = true;
                  }
                  std::ostringstream s;
                  s << "1000 strict gaps, min margin-minus-slack ~" << std::setprecision(4)
                    << min_margin.convert_to<double>();
                  detail = s.str();
                  return report.violations() == 0;
              });

    criterion(7, "interspersion boundary: base words grow, magic words stabilise, level two",
              [&](std::string& detail) {
                  ShiftSpace even = make_even_shift();
                  IntSet pow2 = IntSet::pow2();  // materialised as {2^i : i <= 6} at this horizon
                  ShiftSpace inter = length_constrained(even, pow2, '#');
                  BoundaryReport report = boundary_estimate(inter, 5, Schedule::standard());
                  std::set<Word> growing(report.growing.begin(), report.growing.end());
                  std::set<Word> expect;
                  for (Word& w : words_up_to_length(even, 5)) expect.insert(std::move(w));
                  if (growing != expect) {
                      detail = "growth flags mismatch: " + std::to_string(growing.size()) +
                               " flagged, " + std::to_string(expect.size()) + " expected";
                      return false;
                  }
                  for (const auto& [w, count] : report.stabilized) {
                      (void)count;
                      if (!w.empty() && w.find('#') == Word::npos) {
                          detail = "magic-free word stabilised: " + w;
                          return false;
                      }
                  }
                  ShiftSpace twice = length_constrained(inter, pow2, '$');
                  auto level = eventual_sofic_level(twice, 4);
                  if (level.level != 2) {
                      detail = "iterated interspersion level mismatch";
                      return false;
                  }
                  detail = std::to_string(expect.size()) + " base words growing, level 2";
                  return true;
              });

    criterion(8, "recurrence-window systems pass the depth-8 synchronizing check",
              [&](std::string& detail) {
                  struct Fixture {
                      ShiftSpace space;
                      Word pivot;
                      int gap;
                  };
                  std::vector<Fixture> fixtures;
                  ShiftSpace gm = make_golden_mean();
                  ShiftSpace full = make_full_shift(Alphabet::binary());
                  ShiftSpace even = make_even_shift();
                  ShiftSpace magic = make_magic_morse();
                  ShiftSpace cf = make_context_free_shift();
                  fixtures.push_back({gm, "0", 1});
                  fixtures.push_back({gm, "0", 2});
                  fixtures.push_back({gm, "01", 2});
                  fixtures.push_back({full, "0", 1});
                  fixtures.push_back({full, "0", 3});
                  fixtures.push_back({full, "01", 2});
                  fixtures.push_back({even, "1", 2});
                  fixtures.push_back({magic, "#", 2});
                  fixtures.push_back({magic, "#", 3});
                  fixtures.push_back({cf, "a", 2});
                  int words_checked = 0;
                  for (const auto& fixture : fixtures) {
                      if (static_cast<int>(fixture.pivot.size()) + fixture.gap > 5) {
                          detail = "fixture exceeds the step budget";
                          return false;
                      }
                      XwqResult r = x_wq(fixture.space, fixture.pivot, fixture.gap);
                      if (r.status != "ok") {
                          detail = "window construction failed: " + r.detail;
                          return false;
                      }
                      ShiftSpace as_space = r.sft->as_shift_space();
                      for (const Word& w : words_of_length(as_space, r.sft->step())) {
                          ++words_checked;
                          if (sync_check_generic(as_space, w, 8) == SyncVerdict::Refuted) {
                              detail = "refutation at " + w;
                              return false;
                          }
                      }
                  }
                  detail = "10 fixtures, " + std::to_string(words_checked) +
                           " step-length words, no refutations";
                  return true;
              });

    criterion(9, "locking holds on 100 admissible samples and fails outside the ball",
              [&](std::string& detail) {
                  SftSpace gm = SftSpace::from_forbidden(Alphabet::binary(), {"11"});
                  LocallyConstantFn ind = LocallyConstantFn::indicator(Alphabet::binary(), "01");
                  MetricParam p = MetricParam::half();
                  Rng rng(909);
                  LockingReport report = locking_test(gm, ind, Rat(1, 4), 6, 100, p, rng);
                  if (report.locked != report.samples) {
                      detail = std::to_string(report.samples - report.locked) +
                               " admissible samples unlocked";
                      return false;
                  }
                  if (!unlock_demo(gm, ind, Rat(1, 4), 6, p)) {
                      detail = "engineered perturbation failed to unlock";
                      return false;
                  }
                  detail = "100/100 locked, engineered unlock moved the core";
                  return true;
              });

    criterion(10, "transport lemma properties over 200 random instances",
              [&](std::string& detail) {
                  MetricParam p = MetricParam::half();
                  Rng rng(1010);
                  auto random_measure = [&](int max_atoms) {
                      int count = static_cast<int>(rng.range(1, max_atoms));
                      long long total = 0;
                      std::vector<long long> weights;
                      for (int i = 0; i < count; ++i) {
                          weights.push_back(rng.range(1, 5));
                          total += weights.back();
                      }
                      std::vector<std::pair<EPSequence, Rat>> atoms;
                      for (int i = 0; i < count; ++i) {
                          Word pre, per;
                          int pre_len = static_cast<int>(rng.range(0, 2));
                          int per_len = static_cast<int>(rng.range(1, 3));
                          for (int j = 0; j < pre_len; ++j) pre += (rng.coin() ? '1' : '0');
                          for (int j = 0; j < per_len; ++j) per += (rng.coin() ? '1' : '0');
                          atoms.push_back({EPSequence(pre, per), Rat(weights[i], total)});
                      }
                      return FiniteMeasure(std::move(atoms));
                  };
                  int brute_checked = 0;
                  for (int trial = 0; trial < 200; ++trial) {
                      FiniteMeasure mu = random_measure(4);
                      FiniteMeasure nu = random_measure(4);
                      FiniteMeasure pi = random_measure(3);
                      Rat w = wasserstein(mu, nu, p).cost;
                      if (w > 1) {
                          detail = "diameter bound violated";
                          return false;
                      }
                      EPSequence x = mu.atoms()[rng.below(mu.atoms().size())].first;
                      EPSequence y = nu.atoms()[rng.below(nu.atoms().size())].first;
                      if (wasserstein(dirac(x), dirac(y), p).cost != metric_distance(x, y, p)) {
                          detail = "point-mass distance mismatch";
                          return false;
                      }
                      Rat a = Rat(rng.range(1, 7), 8);
                      if (wasserstein(mix({{a, mu}, {1 - a, pi}}), mix({{a, nu}, {1 - a, pi}}), p)
                              .cost > a * w) {
                          detail = "convex combination bound violated";
                          return false;
                      }
                      if (w > wasserstein(mu, pi, p).cost + wasserstein(pi, nu, p).cost) {
                          detail = "triangle inequality violated";
                          return false;
                      }
                      if (mu.atoms().size() <= 4 && nu.atoms().size() <= 4) {
                          std::vector<Rat> supply, demand;
                          for (const auto& [atom, mass] : mu.atoms()) supply.push_back(mass);
                          for (const auto& [atom, mass] : nu.atoms()) demand.push_back(mass);
                          auto matrix = pairwise_distance_matrix(mu, nu, p, false);
                          if (w != oracle::transport_polytope_minimum(supply, demand, matrix)) {
                              detail = "polytope minimum mismatch";
                              return false;
                          }
                          ++brute_checked;
                      }
                  }
                  detail = "200 instances, " + std::to_string(brute_checked) +
                           " checked against the polytope oracle";
                  return true;
              });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
