#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blockspin/hamiltonian.hpp"
#include "blockspin/rng.hpp"

using namespace blockspin;

namespace {

ModelParams params_for(const BlockGraph& g, double beta, double alpha) {
    ModelParams mp;
    mp.beta = beta;
    mp.alpha = alpha;
    mp.p = g.p();
    mp.q = g.q();
    return mp;
}

// oracle: the Hamiltonian as a literal double sum over ordered pairs
double brute_energy(const BlockGraph& g, const ModelParams& mp,
                    const SpinConfig& s) {
    double eps_sum = 0.0, delta_sum = 0.0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            if (g.eps().get(i, j)) eps_sum += s.spin(i) * s.spin(j);
            if (g.delta().get(i, j)) delta_sum += s.spin(i) * s.spin(j);
        }
    return -(mp.beta * eps_sum + mp.alpha * delta_sum) / (2.0 * g.n() * mp.p);
}

} // namespace

TEST_CASE("energy on the empty graph vanishes") {
    const auto g = BlockGraph::empty(8, 0.5, 0.25);
    const auto mp = params_for(g, 1.3, 0.4);
    SplitMix64 rng(1);
    for (int rep = 0; rep < 20; ++rep)
        CHECK(energy_random(g, mp, SpinConfig::random(8, rng)) == 0.0);
}

TEST_CASE("complete graph energy, all plus") {
    const auto g = gen_graph(4, 1.0, 1.0, 3);
    const auto mp = params_for(g, 2.0, 1.0);
    CHECK(energy_random(g, mp, SpinConfig::all_plus(4)) == doctest::Approx(-2.0));
}

TEST_CASE("energy matches the double-sum oracle") {
    SplitMix64 rng(99);
    for (int rep = 0; rep < 30; ++rep) {
        const auto g = gen_graph(10, 0.6, 0.3, 400 + rep);
        const auto mp = params_for(g, 1.8, -0.7);
        const SpinConfig s = SpinConfig::random(10, rng);
        CHECK(energy_random(g, mp, s) == doctest::Approx(brute_energy(g, mp, s))
                                             .epsilon(1e-12));
    }
}

TEST_CASE("rewrite decompositions agree with the direct sum") {
    SplitMix64 rng(123);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 8 + 2 * static_cast<int>(rng.below(20));
        const auto g = gen_graph(n, 0.7, 0.35, 900 + rep, rep % 3 != 0);
        const auto mp = params_for(g, 2.2, 0.9);
        const SpinConfig s = SpinConfig::random(n, rng);
        const double direct = energy_random(g, mp, s);
        const double scale = std::max(1.0, std::abs(direct));
        CHECK(std::abs(energy_random_rewrite(g, mp, s) - direct) / scale < 1e-12);
        CHECK(std::abs(energy_random_rewrite2(g, mp, s) - direct) / scale < 1e-12);
    }
}

TEST_CASE("spin-flip symmetry") {
    SplitMix64 rng(7);
    const auto g = gen_graph(12, 0.5, 0.25, 11);
    const auto mp = params_for(g, 1.1, 0.5);
    for (int rep = 0; rep < 20; ++rep) {
        SpinConfig s = SpinConfig::random(12, rng);
        SpinConfig neg = s;
        for (int i = 0; i < 12; ++i) neg.flip(i);
        CHECK(energy_random(g, mp, s) ==
              doctest::Approx(energy_random(g, mp, neg)).epsilon(1e-14));
    }
}

TEST_CASE("reference energy values") {
    CHECK(energy_complete(4, 2.0, 1.0, {0.0, 0.0}) == 0.0);
    CHECK(energy_complete(4, 2.0, 1.0, {1.0, -1.0}) == doctest::Approx(-1.0));
    CHECK(energy_complete(4, 2.0, 1.0, {1.0, 1.0}) == doctest::Approx(-3.0));
    // invariant under global flip
    CHECK(energy_complete(10, 1.7, -0.4, {0.6, -0.2}) ==
          doctest::Approx(energy_complete(10, 1.7, -0.4, {-0.6, 0.2})));
}

TEST_CASE("block flip maps lambda to -lambda") {
    for (double m1 : {-0.8, 0.0, 0.4, 1.0})
        for (double m2 : {-1.0, -0.2, 0.6})
            CHECK(energy_complete(12, 2.0, 0.7, {m1, m2}) ==
                  doctest::Approx(energy_complete(12, 2.0, -0.7, {m1, -m2})));
}

TEST_CASE("complete-graph energies differ from the reference by beta/2") {
    // p = q = 1 and lambda = alpha: only the diagonal terms differ, which is
    // a sigma-independent beta/2
    const auto g = gen_graph(8, 1.0, 1.0, 5);
    const auto mp = params_for(g, 1.9, 0.8);
    SpinConfig s = SpinConfig::all_minus(8);
    for (int mask = 0; mask < 256; ++mask) {
        for (int i = 0; i < 8; ++i) s.set_spin(i, (mask >> i) & 1 ? 1 : -1);
        const double gap = energy_random(g, mp, s) -
                           energy_complete(8, mp.beta, mp.alpha, magnetization(s));
        CHECK(gap == doctest::Approx(mp.beta / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("gap bound values and Monte Carlo coverage") {
    ModelParams mp;
    mp.beta = 2.0;
    mp.alpha = 1.0;
    mp.p = 0.5;
    mp.q = 0.25; // a = 0.5, alpha*a = 0.5
    CHECK(energy_gap_bound(mp, 100, 0.0, 0.0) == 0.0);
    CHECK(energy_gap_bound(mp, 100, 0.1, 0.1) == doctest::Approx(30.0));
    CHECK_THROWS_AS(energy_gap_bound(mp, 100, -0.1, 0.1), std::invalid_argument);

    // on sampled graphs the gap |H - H~| stays below the bound for nearly
    // every configuration (the event has high probability, not certainty)
    const int n = 200;
    const double c = 3.0;
    const double gamma = c / std::sqrt(mp.p * n);
    const double kappa = c / std::sqrt(mp.q * n);
    const double bound = energy_gap_bound(mp, n, gamma, kappa);
    const auto g = gen_graph(n, mp.p, mp.q, 2042);
    SplitMix64 rng(555);
    int ok = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const SpinConfig s = SpinConfig::random(n, rng);
        const double gap = std::abs(
            energy_random(g, mp, s) -
            energy_complete(n, mp.beta, mp.alpha * mp.q / mp.p, magnetization(s)));
        if (gap <= bound) ++ok;
    }
    CHECK(ok >= trials * 99 / 100);
}

TEST_CASE("input validation") {
    const auto g = gen_graph(8, 0.5, 0.25, 1);
    auto mp = params_for(g, 1.0, 0.5);
    CHECK_THROWS_AS(energy_random(g, mp, SpinConfig::all_plus(10)),
                    std::invalid_argument);
    mp.p = 0.6; // disagrees with the graph
    CHECK_THROWS_AS(energy_random(g, mp, SpinConfig::all_plus(8)),
                    std::invalid_argument);

    ModelParams bad;
    bad.beta = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ModelParams{};
    bad.p = 0.3;
    bad.q = 0.5; // p < q
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ModelParams{};
    bad.beta = 0.5;
    bad.alpha = 2.0;
    bad.p = 1.0;
    bad.q = 1.0; // |alpha| q/p > beta
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
