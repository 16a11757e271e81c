#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/rng.hpp"

using namespace shiftlab;

namespace {

FiniteMeasure random_measure(Rng& rng, int max_atoms) {
    int count = static_cast<int>(rng.range(1, max_atoms));
    std::vector<std::pair<EPSequence, Rat>> atoms;
    std::vector<long long> weights;
    long long total = 0;
    for (int i = 0; i < count; ++i) {
        long long w = rng.range(1, 5);
        weights.push_back(w);
        total += w;
    }
    for (int i = 0; i < count; ++i) {
        Word pre, per;
        int pre_len = static_cast<int>(rng.range(0, 2));
        int per_len = static_cast<int>(rng.range(1, 3));
        for (int j = 0; j < pre_len; ++j) pre += (rng.coin() ? '1' : '0');
        for (int j = 0; j < per_len; ++j) per += (rng.coin() ? '1' : '0');
        atoms.push_back({EPSequence(pre, per), Rat(weights[i], total)});
    }
    return FiniteMeasure(std::move(atoms));
}

}  // namespace

TEST_CASE("empirical and periodic measures") {
    FiniteMeasure zero = empirical_measure(EPSequence("", "0"), 5);
    CHECK(zero.support_size() == 1);
    CHECK(zero.atoms()[0].second == 1);

    FiniteMeasure alt = empirical_measure(EPSequence("", "01"), 2);
    CHECK(alt.support_size() == 2);
    CHECK(alt.atoms()[0].second == Rat(1, 2));

    FiniteMeasure four = empirical_measure(EPSequence("0110#", "0#"), 4);
    CHECK(four.support_size() == 4);

    bool reduced = false;
    FiniteMeasure rho = periodic_measure("0101", &reduced);
    CHECK(reduced);
    CHECK(rho.support_size() == 2);

    FiniteMeasure magic = periodic_measure("#0#01");
    CHECK(magic.support_size() == 5);
    CHECK(magic.cylinder_mass("#") == Rat(2, 5));

    CHECK_THROWS(FiniteMeasure({{EPSequence("", "0"), Rat(1, 2)}}));
}

TEST_CASE("transport distance basics") {
    MetricParam p = MetricParam::half();
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        FiniteMeasure mu = random_measure(rng, 4);
        CHECK(wasserstein(mu, mu, p).cost == 0);
    }
    EPSequence x("", "0"), y("011", "0");
    CHECK(wasserstein(dirac(x), dirac(y), p).cost == metric_distance(x, y, p));

    FiniteMeasure mixed({{EPSequence("", "0"), Rat(1, 2)}, {EPSequence("", "1"), Rat(1, 2)}});
    CHECK(wasserstein(mixed, dirac(EPSequence("", "0")), p).cost == Rat(1, 2));
}

TEST_CASE("transport matches the polytope minimum and the nested formula") {
    MetricParam p = MetricParam::half();
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteMeasure mu = random_measure(rng, 4);
        FiniteMeasure nu = random_measure(rng, 4);
        WassersteinResult got = wasserstein(mu, nu, p);

        // Plan invariants: marginals match, cost re-adds exactly.
        std::vector<Rat> out_mass(mu.atoms().size(), Rat(0));
        std::vector<Rat> in_mass(nu.atoms().size(), Rat(0));
        Rat recost = 0;
        for (const auto& flow : got.plan.flows) {
            CHECK(flow.mass > 0);
            out_mass[static_cast<std::size_t>(flow.source)] += flow.mass;
            in_mass[static_cast<std::size_t>(flow.target)] += flow.mass;
            recost += flow.mass * metric_distance(mu.atoms()[flow.source].first,
                                                  nu.atoms()[flow.target].first, p);
        }
        for (std::size_t i = 0; i < mu.atoms().size(); ++i)
            CHECK(out_mass[i] == mu.atoms()[i].second);
        for (std::size_t j = 0; j < nu.atoms().size(); ++j)
            CHECK(in_mass[j] == nu.atoms()[j].second);
        CHECK(recost == got.cost);

        // Independent oracles.
        std::vector<Rat> supply, demand;
        for (const auto& [a, w] : mu.atoms()) supply.push_back(w);
        for (const auto& [a, w] : nu.atoms()) demand.push_back(w);
        auto matrix = pairwise_distance_matrix(mu, nu, p, false);
        CHECK(got.cost == oracle::transport_polytope_minimum(supply, demand, matrix));
        CHECK(got.cost == oracle::ultrametric_wasserstein(mu, nu, p));
    }
}

TEST_CASE("transport obeys the lemma bounds") {
    MetricParam p = MetricParam::half();
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteMeasure mu = random_measure(rng, 4);
        FiniteMeasure nu = random_measure(rng, 4);
        FiniteMeasure pi = random_measure(rng, 3);
        Rat w_mu_nu = wasserstein(mu, nu, p).cost;
        CHECK(w_mu_nu <= 1);  // diameter bound at alpha^0
        // Triangle inequality.
        CHECK(w_mu_nu <= wasserstein(mu, pi, p).cost + wasserstein(pi, nu, p).cost);
        // Convexity in both arguments.
        Rat a = Rat(rng.range(1, 7), 8);
        FiniteMeasure mix_left = mix({{a, mu}, {1 - a, pi}});
        FiniteMeasure mix_right = mix({{a, nu}, {1 - a, pi}});
        CHECK(wasserstein(mix_left, mix_right, p).cost <= a * w_mu_nu);
    }
}

TEST_CASE("dual test functions lower-bound the cost") {
    // phi(z) = min over pivots of d(z, pivot) + offset is 1-Lipschitz; its
    // integral difference never exceeds the transport cost.
    MetricParam p = MetricParam::half();
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        FiniteMeasure mu = random_measure(rng, 4);
        FiniteMeasure nu = random_measure(rng, 4);
        Rat cost = wasserstein(mu, nu, p).cost;
        for (int probe = 0; probe < 5; ++probe) {
            EPSequence pivot = mu.atoms()[rng.below(mu.atoms().size())].first;
            auto phi = [&](const EPSequence& z) { return metric_distance(z, pivot, p); };
            Rat lhs = 0;
            for (const auto& [x, w] : mu.atoms()) lhs += w * phi(x);
            for (const auto& [y, w] : nu.atoms()) lhs -= w * phi(y);
            CHECK(lhs <= cost);
        }
    }
}

TEST_CASE("distance integral against the Morse shift") {
    MetricParam p = MetricParam::half();
    FiniteMeasure rho = periodic_measure("#0#01");
    Rat integral = distance_integral(rho, p);
    // Shifts of (#0#01)^inf sit at distances 1, 1/2, 1, 1/4, 1/2.
    CHECK(integral == Rat(13, 20));
    CHECK(integral >= rho.cylinder_mass("#"));

    // Atoms inside the Morse language score by their factor horizon.
    FiniteMeasure single = dirac(EPSequence("01101001", "10"));
    CHECK(distance_integral(single, p) < rat_pow(Rat(1, 2), 7));
}

TEST_CASE("padded Morse windows") {
    FiniteMeasure window = morse_empirical(8, 200);
    CHECK(window.support_size() == 8);
    CHECK_THROWS(morse_empirical(300, 200));

    MetricParam p = MetricParam::half();
    MorseBoundResult small = verify_prefix_bound(1, 1, EPSequence::periodic("0#"), p);
    CHECK(small.certified);
    CHECK(small.bound == 1);

    MorseBoundResult mid = verify_prefix_bound(3, 4, EPSequence::periodic("0#"), p);
    CHECK(mid.certified);
    CHECK(mid.bound == Rat(1, 4));

    MorseBoundResult plus = verify_plus_one_bound(3, 4, EPSequence::periodic("0#"), p);
    CHECK(plus.certified);
    CHECK(plus.bound == Rat(1, 3));

    // A tail that breaks the block structure is rejected up front.
    CHECK_THROWS(verify_prefix_bound(2, 1, EPSequence::periodic("11"), p));
}

TEST_CASE("transport bound against the finite Morse window") {
    // W(rho, E_L(omega)) <= ((1+a)/(1-a)) k/|u| + 4a/((1-a) 2^n) at L = 2^n M.
    MetricParam p = MetricParam::half();
    int n = 5, M = 4;
    long long L = (1LL << n) * M;
    FiniteMeasure window = morse_empirical(L, static_cast<std::size_t>(L) + (16u << n));
    for (const Word& u : {Word("0#"), Word("01#"), Word("0#01#"), Word("0110#0#")}) {
        FiniteMeasure rho = periodic_measure(u);
        Rat k(std::count(u.begin(), u.end(), '#'));
        Rat bound = Rat(3) * k / Rat(u.size()) + Rat(1, 8);
        CHECK(wasserstein(rho, window, p).cost <= bound);
    }
}

TEST_CASE("optimality-gap sampling stays strict") {
    MetricParam p = MetricParam::half();
    Rng rng(2026);
    NonTpoReport report = verify_non_tpo_ball(6, 4, 6, 8, p, rng, false);
    CHECK(report.rows.size() == 24);
    CHECK(report.violations() == 0);
    CHECK(report.inconclusive_count() == 0);
    CHECK(report.ball_radius == Rat(1, 3));
    for (const auto& row : report.rows) {
        CHECK(row.phi_seminorm <= Rat(3, 10));
        CHECK(row.margin > row.slack);
        CHECK(row.rho_distance_integral >= Rat(row.magic_count, row.period));
    }
}
