#include "blockspin/exact.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "blockspin/entropy.hpp"
#include "blockspin/errors.hpp"
#include "blockspin/glauber.hpp"
#include "blockspin/hamiltonian.hpp"
#include "blockspin/rng.hpp"

namespace blockspin {

namespace {

// Online max-shifted log-sum-exp accumulator.
struct LogSum {
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;

    void add(double logw) {
        if (logw <= max) {
            sum += std::exp(logw - max);
        } else {
            sum = sum * std::exp(max - logw) + 1.0;
            max = logw;
        }
    }

    double value() const {
        return sum > 0.0 ? max + std::log(sum)
                         : -std::numeric_limits<double>::infinity();
    }
};

void check_enumeration_size(int n, int cap) {
    if (n > cap)
        throw ResourceLimitError("exact enumeration is capped at n = " +
                                 std::to_string(cap));
}

// Gray-code walk over all 2^n configurations. visit(sigma, energy, k1, k2)
// is called once per state with the exact quenched energy; successive states
// differ by one flip, so the energy update costs one local-field evaluation.
// The running energy is recomputed from scratch every 4096 steps to keep
// accumulated rounding far below the 1e-12 guarantees.
template <typename Visit>
void gray_enumerate(const BlockGraph& g, const ModelParams& params,
                    Visit&& visit) {
    const int n = g.n();
    const int h = n / 2;
    SpinConfig sigma = SpinConfig::all_minus(n);
    double energy = energy_random(g, params, sigma);
    int k1 = 0, k2 = 0;
    visit(sigma, energy, k1, k2);

    const std::uint64_t total = 1ull << n;
    for (std::uint64_t t = 1; t < total; ++t) {
        const int site = std::countr_zero(t);
        const int old_spin = sigma.spin(site);
        energy += 2.0 * old_spin * local_field(g, params, sigma, site);
        sigma.flip(site);
        if (site < h)
            k1 -= old_spin;
        else
            k2 -= old_spin;
        if ((t & 0xfffull) == 0) energy = energy_random(g, params, sigma);
        visit(sigma, energy, k1, k2);
    }
}

} // namespace

MagnetizationDistribution::MagnetizationDistribution(int n,
                                                     std::vector<double> prob,
                                                     double log_z)
    : n_(n), prob_(std::move(prob)), log_z_(log_z) {
    if (prob_.size() !=
        static_cast<std::size_t>(n / 2 + 1) * static_cast<std::size_t>(n / 2 + 1))
        throw std::invalid_argument("probability grid has the wrong size");
}

std::vector<std::array<double, 3>> MagnetizationDistribution::rows() const {
    std::vector<std::array<double, 3>> out;
    const int h = n_ / 2;
    out.reserve(static_cast<std::size_t>(h + 1) * (h + 1));
    for (int k1 = 0; k1 <= h; ++k1)
        for (int k2 = 0; k2 <= h; ++k2) {
            const Magnetization m = m_at(k1, k2);
            out.push_back({m.m1, m.m2, prob(k1, k2)});
        }
    return out;
}

double MagnetizationDistribution::total() const {
    double s = 0.0;
    for (double v : prob_) s += v;
    return s;
}

double MagnetizationDistribution::total_variation(
    const MagnetizationDistribution& other) const {
    if (n_ != other.n_)
        throw std::invalid_argument("distributions live on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < prob_.size(); ++i)
        s += std::abs(prob_[i] - other.prob_[i]);
    return 0.5 * s;
}

MagnetizationDistribution enumerate_gibbs(const BlockGraph& g,
                                          const ModelParams& params) {
    check_enumeration_size(g.n(), kMaxEnumerationN);
    const int h = g.n() / 2;
    std::vector<LogSum> buckets(static_cast<std::size_t>(h + 1) *
                                static_cast<std::size_t>(h + 1));
    gray_enumerate(g, params,
                   [&](const SpinConfig&, double energy, int k1, int k2) {
                       buckets[static_cast<std::size_t>(k1) * (h + 1) + k2].add(
                           -energy);
                   });

    LogSum z;
    for (const auto& b : buckets)
        if (b.sum > 0.0) z.add(b.value());
    const double log_z = z.value();

    std::vector<double> prob(buckets.size(), 0.0);
    for (std::size_t i = 0; i < buckets.size(); ++i)
        if (buckets[i].sum > 0.0) prob[i] = std::exp(buckets[i].value() - log_z);
    return {g.n(), std::move(prob), log_z};
}

MagnetizationDistribution enumerate_gibbs_complete(int n, double beta,
                                                   double lambda) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("n must be even and >= 2");
    const int h = n / 2;
    std::vector<double> logw(static_cast<std::size_t>(h + 1) *
                             static_cast<std::size_t>(h + 1));
    LogSum z;
    for (int k1 = 0; k1 <= h; ++k1)
        for (int k2 = 0; k2 <= h; ++k2) {
            const Magnetization m{(2.0 * k1 - h) / h, (2.0 * k2 - h) / h};
            const double lw = log_binomial(h, k1) + log_binomial(h, k2) -
                              energy_complete(n, beta, lambda, m);
            logw[static_cast<std::size_t>(k1) * (h + 1) + k2] = lw;
            z.add(lw);
        }
    const double log_z = z.value();
    std::vector<double> prob(logw.size());
    for (std::size_t i = 0; i < logw.size(); ++i)
        prob[i] = std::exp(logw[i] - log_z);
    return {n, std::move(prob), log_z};
}

double log_partition_random(const BlockGraph& g, const ModelParams& params) {
    check_enumeration_size(g.n(), kMaxEnumerationN);
    LogSum z;
    gray_enumerate(g, params, [&](const SpinConfig&, double energy, int, int) {
        z.add(-energy);
    });
    return z.value();
}

double log_partition_complete(int n, double beta, double lambda) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("n must be even and >= 2");
    const int h = n / 2;
    // precomputed log C(h, k) row; the (k1, k2) sum then costs O(n^2/4) adds
    std::vector<double> logc(static_cast<std::size_t>(h + 1));
    for (int k = 0; k <= h; ++k)
        logc[static_cast<std::size_t>(k)] = log_binomial(h, k);

    LogSum z;
    const double scale = n / 8.0;
    for (int k1 = 0; k1 <= h; ++k1) {
        const double m1 = (2.0 * k1 - h) / h;
        for (int k2 = 0; k2 <= h; ++k2) {
            const double m2 = (2.0 * k2 - h) / h;
            const double energy =
                -scale * (2.0 * lambda * m1 * m2 + beta * (m1 * m1 + m2 * m2));
            z.add(logc[static_cast<std::size_t>(k1)] +
                  logc[static_cast<std::size_t>(k2)] - energy);
        }
    }
    return z.value();
}

namespace {

struct DeviationTracker {
    double worst_within = 0.0;
    double worst_between_plus = 0.0;
    double worst_between_minus = 0.0;
    std::int64_t tested = 0;
    std::int64_t members = 0;

    // |sum - r L| <= tol * r * L, deviations reported relative to r L
    static bool check(double sum, double r, double L, double tol,
                      double& worst) {
        if (L <= 0.0) return true;
        const double dev = std::abs(sum - r * L) / (r * L);
        if (dev > worst) worst = dev;
        return dev <= tol;
    }

    void account(const BlockGraph& g, const SpinConfig& sigma, double gamma,
                 double kappa) {
        const AlignedEdgeSums sums = aligned_edge_sums(g, sigma);
        const LinkCounts lc = link_counts(sigma);
        const Magnetization m = magnetization(sigma);
        bool ok = check(static_cast<double>(sums.eps_aligned), g.p(),
                        static_cast<double>(lc.Lb_plus - g.n()), gamma,
                        worst_within);
        if (m.m1 * m.m2 >= 0.0) {
            ok = check(static_cast<double>(sums.delta_aligned), g.q(),
                       static_cast<double>(lc.Lnb_plus), kappa,
                       worst_between_plus) &&
                 ok;
        } else {
            ok = check(static_cast<double>(sums.delta_unaligned), g.q(),
                       static_cast<double>(lc.Lnb_minus), kappa,
                       worst_between_minus) &&
                 ok;
        }
        ++tested;
        if (ok) ++members;
    }

    ConcentrationReport report() const {
        ConcentrationReport r;
        r.worst_within = worst_within;
        r.worst_between_plus = worst_between_plus;
        r.worst_between_minus = worst_between_minus;
        r.tested = tested;
        r.member = members == tested;
        r.member_fraction =
            tested == 0 ? 1.0
                        : static_cast<double>(members) / static_cast<double>(tested);
        return r;
    }
};

void check_rates(double gamma, double kappa) {
    if (!(gamma > 0.0) || !(kappa > 0.0))
        throw std::invalid_argument("gamma and kappa must be > 0");
}

} // namespace

ConcentrationReport concentration_report_all(const BlockGraph& g, double gamma,
                                             double kappa) {
    check_rates(gamma, kappa);
    check_enumeration_size(g.n(), 14);
    DeviationTracker t;
    const std::uint64_t total = 1ull << g.n();
    SpinConfig sigma = SpinConfig::all_minus(g.n());
    t.account(g, sigma, gamma, kappa);
    for (std::uint64_t s = 1; s < total; ++s) {
        sigma.flip(std::countr_zero(s));
        t.account(g, sigma, gamma, kappa);
    }
    return t.report();
}

ConcentrationReport concentration_report_sampled(const BlockGraph& g,
                                                 double gamma, double kappa,
                                                 std::int64_t samples,
                                                 std::uint64_t seed) {
    check_rates(gamma, kappa);
    if (samples <= 0) throw std::invalid_argument("samples must be positive");
    DeviationTracker t;
    SplitMix64 rng(split_seed(seed, 0xc0c0));
    for (std::int64_t s = 0; s < samples; ++s) {
        const SpinConfig sigma = SpinConfig::random(g.n(), rng);
        t.account(g, sigma, gamma, kappa);
    }
    return t.report();
}

ConcentrationReport concentration_report(const BlockGraph& g, double gamma,
                                         double kappa,
                                         const std::vector<SpinConfig>& configs) {
    check_rates(gamma, kappa);
    DeviationTracker t;
    for (const SpinConfig& sigma : configs) t.account(g, sigma, gamma, kappa);
    return t.report();
}

SandwichResult sandwich_check(const BlockGraph& g, const ModelParams& params,
                              double c) {
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
    SandwichResult r;
    r.gamma = c / std::sqrt(params.p * g.n());
    r.kappa = c / std::sqrt(params.q * g.n());
    r.bound = energy_gap_bound(params, g.n(), r.gamma, r.kappa);
    r.log_z = log_partition_random(g, params);
    r.log_z_complete =
        log_partition_complete(g.n(), params.beta, params.lambda());
    r.lower_slack = r.log_z - (r.log_z_complete - r.bound);
    r.upper_slack = (r.log_z_complete + r.bound) - r.log_z;
    return r;
}

} // namespace blockspin
