#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "blockspin/entropy.hpp"
#include "blockspin/errors.hpp"
#include "blockspin/exact.hpp"
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

} // namespace

TEST_CASE("near-zero coupling gives the product of scaled binomials") {
    const auto g = gen_graph(10, 0.5, 0.25, 4);
    const auto mp = params_for(g, 1e-12, 0.0);
    const auto dist = enumerate_gibbs(g, mp);
    const int h = 5;
    for (int k1 = 0; k1 <= h; ++k1)
        for (int k2 = 0; k2 <= h; ++k2) {
            const double expected =
                std::exp(log_binomial(h, k1) + log_binomial(h, k2) -
                         10.0 * std::log(2.0));
            CHECK(dist.prob(k1, k2) == doctest::Approx(expected).epsilon(1e-9));
        }
}

TEST_CASE("two-agent reference model by hand") {
    // configs (s1,s2): H~ = -(beta + lambda s1 s2)/2, so
    // P(m=(1,1)) = e^{(beta+lambda)/2} / (2 e^{(beta+lambda)/2} + 2 e^{(beta-lambda)/2})
    const double beta = 1.3, lambda = 0.4;
    const auto dist = enumerate_gibbs_complete(2, beta, lambda);
    const double zp = std::exp((beta + lambda) / 2.0);
    const double zm = std::exp((beta - lambda) / 2.0);
    CHECK(dist.prob(1, 1) ==
          doctest::Approx(zp / (2.0 * zp + 2.0 * zm)).epsilon(1e-12));
    CHECK(dist.prob(0, 0) ==
          doctest::Approx(zp / (2.0 * zp + 2.0 * zm)).epsilon(1e-12));
    CHECK(dist.prob(1, 0) ==
          doctest::Approx(zm / (2.0 * zp + 2.0 * zm)).epsilon(1e-12));
    CHECK(dist.log_partition() ==
          doctest::Approx(std::log(2.0 * zp + 2.0 * zm)).epsilon(1e-12));
}

TEST_CASE("distribution symmetry and normalization") {
    const auto g = gen_graph(10, 0.7, 0.3, 15);
    const auto mp = params_for(g, 1.9, -0.8);
    const auto dist = enumerate_gibbs(g, mp);
    CHECK(std::abs(dist.total() - 1.0) < 1e-12);
    const int h = 5;
    for (int k1 = 0; k1 <= h; ++k1)
        for (int k2 = 0; k2 <= h; ++k2)
            CHECK(dist.prob(k1, k2) ==
                  doctest::Approx(dist.prob(h - k1, h - k2)).epsilon(1e-10));
}

TEST_CASE("enumeration size cap") {
    const auto g = BlockGraph::empty(22, 0.5, 0.5);
    const auto mp = params_for(g, 1.0, 0.0);
    CHECK_THROWS_AS(enumerate_gibbs(g, mp), ResourceLimitError);
    CHECK_THROWS_AS(log_partition_random(g, mp), ResourceLimitError);
}

TEST_CASE("log partition of the empty graph is n log 2") {
    const auto g = BlockGraph::empty(12, 0.5, 0.25);
    const auto mp = params_for(g, 1.7, 0.2);
    CHECK(log_partition_random(g, mp) ==
          doctest::Approx(12.0 * std::log(2.0)).epsilon(1e-13));
    // vanishing couplings do the same on any graph
    const auto g2 = gen_graph(10, 0.5, 0.25, 3);
    CHECK(log_partition_random(g2, params_for(g2, 1e-13, 0.0)) ==
          doctest::Approx(10.0 * std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("log partition agrees with a direct log-sum over energies") {
    const auto g = gen_graph(8, 0.6, 0.3, 23);
    const auto mp = params_for(g, 2.1, 0.9);
    // independent path: enumerate states in plain binary order and
    // accumulate log-sum-exp with a fixed shift
    std::vector<double> energies;
    for (int mask = 0; mask < 256; ++mask) {
        SpinConfig s = SpinConfig::all_minus(8);
        for (int i = 0; i < 8; ++i)
            if ((mask >> i) & 1) s.set_spin(i, 1);
        energies.push_back(-energy_random(g, mp, s));
    }
    double max = energies[0];
    for (double e : energies) max = std::max(max, e);
    double sum = 0.0;
    for (double e : energies) sum += std::exp(e - max);
    CHECK(log_partition_random(g, mp) ==
          doctest::Approx(max + std::log(sum)).epsilon(1e-12));
    // and the enumeration's own log partition matches
    CHECK(enumerate_gibbs(g, mp).log_partition() ==
          doctest::Approx(max + std::log(sum)).epsilon(1e-12));
}

TEST_CASE("complete-model log partition") {
    const double beta = 1.3, lambda = 0.4;
    const double zp = std::exp((beta + lambda) / 2.0);
    const double zm = std::exp((beta - lambda) / 2.0);
    CHECK(log_partition_complete(2, beta, lambda) ==
          doctest::Approx(std::log(2.0 * zp + 2.0 * zm)).epsilon(1e-12));
    CHECK(log_partition_complete(1000, 0.0, 0.0) ==
          doctest::Approx(1000.0 * std::log(2.0)).epsilon(1e-10));

    // brute force over all 2^n configurations of the reference model
    for (int n : {8, 12, 16}) {
        double max = -1e300;
        std::vector<double> logw;
        for (int mask = 0; mask < (1 << n); ++mask) {
            SpinConfig s = SpinConfig::all_minus(n);
            for (int i = 0; i < n; ++i)
                if ((mask >> i) & 1) s.set_spin(i, 1);
            const double lw = -energy_complete(n, 2.4, -0.6, magnetization(s));
            logw.push_back(lw);
            max = std::max(max, lw);
        }
        double sum = 0.0;
        for (double lw : logw) sum += std::exp(lw - max);
        CHECK(log_partition_complete(n, 2.4, -0.6) ==
              doctest::Approx(max + std::log(sum)).epsilon(1e-10));
    }
}

TEST_CASE("reference model factorizes at lambda = 0") {
    const auto dist = enumerate_gibbs_complete(12, 2.2, 0.0);
    const int h = 6;
    std::vector<double> marg1(h + 1, 0.0), marg2(h + 1, 0.0);
    for (int k1 = 0; k1 <= h; ++k1)
        for (int k2 = 0; k2 <= h; ++k2) {
            marg1[k1] += dist.prob(k1, k2);
            marg2[k2] += dist.prob(k1, k2);
        }
    for (int k1 = 0; k1 <= h; ++k1)
        for (int k2 = 0; k2 <= h; ++k2)
            CHECK(dist.prob(k1, k2) ==
                  doctest::Approx(marg1[k1] * marg2[k2]).epsilon(1e-12));
}

TEST_CASE("concentration report on the complete graph is exact") {
    const auto g = gen_graph(10, 1.0, 1.0, 2);
    const auto rep = concentration_report_all(g, 0.05, 0.05);
    CHECK(rep.member);
    CHECK(rep.member_fraction == 1.0);
    CHECK(rep.worst_within == 0.0);
    CHECK(rep.worst_between_plus == 0.0);
    CHECK(rep.worst_between_minus == 0.0);
    CHECK(rep.tested == 1024);
}

TEST_CASE("all-plus configuration reduces to the edge count") {
    const auto g = gen_graph(12, 0.6, 0.3, 19);
    const double gamma = 0.4, kappa = 0.4;
    const auto rep =
        concentration_report(g, gamma, kappa, {SpinConfig::all_plus(12)});
    const auto [within, between] = edge_counts(g);
    const double Lb = 12.0 * 12.0 / 2.0 - 12.0; // diagonal-adjusted
    const double Lnb = 12.0 * 12.0 / 2.0;       // every between pair aligned
    const bool expect =
        std::abs(within - g.p() * Lb) <= gamma * g.p() * Lb &&
        std::abs(between - g.q() * Lnb) <= kappa * g.q() * Lnb;
    CHECK(rep.member == expect);
    CHECK(rep.worst_within ==
          doctest::Approx(std::abs(within - g.p() * Lb) / (g.p() * Lb)));
}

TEST_CASE("membership at scale") {
    const int n = 500;
    const double p = 0.05, q = 0.03;
    const auto g = gen_graph(n, p, q, 31);
    const double gamma = 3.0 / std::sqrt(p * n);
    const double kappa = 3.0 / std::sqrt(q * n);
    const auto rep = concentration_report_sampled(g, gamma, kappa, 20000, 7);
    CHECK(rep.member_fraction >= 0.999);
}

TEST_CASE("sandwich on the complete graph has slack bound -+ beta/2") {
    const auto g = gen_graph(12, 1.0, 1.0, 44);
    const auto mp = params_for(g, 1.7, 0.6);
    const auto sw = sandwich_check(g, mp, 3.0);
    CHECK(sw.lower_slack ==
          doctest::Approx(sw.bound - mp.beta / 2.0).epsilon(1e-9));
    CHECK(sw.upper_slack ==
          doctest::Approx(sw.bound + mp.beta / 2.0).epsilon(1e-9));
    CHECK(sw.lower_slack > 0.0);
    CHECK(sw.upper_slack > 0.0);
}

TEST_CASE("empty-edge fixture breaks the sandwich at small c") {
    const auto g = BlockGraph::empty(12, 0.6, 0.3);
    const auto mp = params_for(g, 2.0, 1.0);
    const auto sw = sandwich_check(g, mp, 0.05);
    CHECK(sw.lower_slack < 0.0); // log Z = n log 2 falls below the window
}

TEST_CASE("sandwich holds on most random graphs") {
    int positive = 0;
    for (int seed = 1; seed <= 10; ++seed) {
        const auto g = gen_graph(16, 0.6, 0.3, static_cast<std::uint64_t>(seed));
        const auto sw = sandwich_check(g, params_for(g, 2.0, 1.0), 3.0);
        if (sw.lower_slack > 0.0 && sw.upper_slack > 0.0) ++positive;
    }
    CHECK(positive >= 9);
}

TEST_CASE("entropy kernel basics") {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CHECK(rel_entropy(p, p) == doctest::Approx(0.0).epsilon(1e-15));
        for (double x : {0.05, 0.2, 0.45, 0.6, 0.85, 0.99}) {
            if (std::abs(x - p) < 1e-9) continue;
            CHECK(rel_entropy(x, p) > 0.0);
        }
    }
    CHECK(rel_entropy(0.0, 0.4) == doctest::Approx(std::log(1.0 / 0.6)));
    CHECK(rel_entropy(1.0, 0.4) == doctest::Approx(std::log(1.0 / 0.4)));
    CHECK_THROWS_AS(rel_entropy(1.2, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(rel_entropy(0.5, 0.0), std::invalid_argument);

    CHECK(spin_entropy(0.0) == 0.0);
    CHECK(spin_entropy(1.0) == doctest::Approx(std::log(2.0)));
    CHECK(spin_entropy(-1.0) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(spin_entropy(1.1), std::invalid_argument);
}

TEST_CASE("Taylor lower bounds for the entropy") {
    // (1+x)log(1+x) >= x + x^2/2 (1 - x/3) and >= x;
    // (1-x)log(1-x) >= -x and >= -x + x^2/2, for x in [0, 0.99]
    for (int k = 1; k <= 990; ++k) {
        const double x = k / 1000.0;
        const double up = (1.0 + x) * std::log(1.0 + x);
        const double dn = (1.0 - x) * std::log(1.0 - x);
        CHECK(up >= x + 0.5 * x * x * (1.0 - x / 3.0) - 1e-14);
        CHECK(up >= x - 1e-14);
        CHECK(dn >= -x - 1e-14);
        CHECK(dn >= -x + 0.5 * x * x - 1e-14);
    }
}

TEST_CASE("entropy lower bounds for the concentration rates") {
    // I_p(p(1+g)) >= p g^2/3 and I_p(p(1-g)) >= p g^2/2 on the valid domain
    for (int pi = 1; pi <= 9; ++pi) {
        const double p = pi / 10.0;
        const double gmax = std::min(0.99, (1.0 - p) / p);
        for (int k = 1; k <= 200; ++k) {
            const double gam = k * gmax / 200.0;
            CHECK(rel_entropy(p * (1.0 + gam), p) >= p * gam * gam / 3.0 - 1e-15);
            CHECK(rel_entropy(p * (1.0 - gam), p) >= p * gam * gam / 2.0 - 1e-15);
        }
    }
}
