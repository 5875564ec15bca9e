#include "blockspin/glauber.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "blockspin/errors.hpp"
#include "blockspin/exact.hpp"
#include "blockspin/hamiltonian.hpp"

namespace blockspin {

namespace {

inline double field(const BlockGraph& g, const ModelParams& params,
                    const SpinConfig& sigma, int i) {
    // signed neighbor sums: 2 * popcount(row & sigma) - popcount(row),
    // taken along row i and column i of each edge set
    const auto sw = sigma.words();
    const std::int64_t plus =
        static_cast<std::int64_t>(g.eps().row_count_and(i, sw)) +
        static_cast<std::int64_t>(g.eps_t().row_count_and(i, sw));
    const std::int64_t dplus =
        static_cast<std::int64_t>(g.delta().row_count_and(i, sw)) +
        static_cast<std::int64_t>(g.delta_t().row_count_and(i, sw));
    const std::int64_t eps_sum =
        2 * plus - g.eps_row_count(i) - g.eps_col_count(i);
    const std::int64_t delta_sum =
        2 * dplus - g.delta_row_count(i) - g.delta_col_count(i);
    return (params.beta * eps_sum + params.alpha * delta_sum) /
           (2.0 * g.n() * params.p);
}

} // namespace

double local_field(const BlockGraph& g, const ModelParams& params,
                   const SpinConfig& sigma, int i) {
    if (i < 0 || i >= g.n()) throw std::invalid_argument("site out of range");
    if (g.n() != sigma.n())
        throw std::invalid_argument("graph and configuration sizes differ");
    return field(g, params, sigma, i);
}

double flip_probability(const BlockGraph& g, const ModelParams& params,
                        const SpinConfig& sigma, int i) {
    const double x = local_field(g, params, sigma, i);
    return 1.0 / (1.0 + std::exp(-2.0 * x));
}

void sweep(const BlockGraph& g, const ModelParams& params, ChainState& state) {
    const int n = g.n();
    for (int step = 0; step < n; ++step) {
        const int i = static_cast<int>(state.rng.below(n));
        const double p_plus =
            1.0 / (1.0 + std::exp(-2.0 * field(g, params, state.sigma, i)));
        state.sigma.set_spin(i, state.rng.uniform() < p_plus ? +1 : -1);
    }
    ++state.sweep_index;
}

SpinConfig make_initial(const ChainInit& init, int n, std::uint64_t seed) {
    switch (init.kind) {
    case ChainInit::Kind::AllPlus: return SpinConfig::all_plus(n);
    case ChainInit::Kind::AllMinus: return SpinConfig::all_minus(n);
    case ChainInit::Kind::Given:
        if (init.given.n() != n)
            throw std::invalid_argument("given configuration has the wrong size");
        return init.given;
    case ChainInit::Kind::Random:
    default: {
        SplitMix64 rng(split_seed(seed, 0x1417));
        return SpinConfig::random(n, rng);
    }
    }
}

MagnetizationTrace run_chain(const BlockGraph& g, const ModelParams& params,
                             std::uint64_t sweeps, std::uint64_t burnin,
                             std::uint64_t thin, std::uint64_t seed,
                             const ChainInit& init) {
    params.validate();
    if (sweeps < burnin)
        throw std::invalid_argument("sweeps must be >= burnin");
    if (thin < 1) throw std::invalid_argument("thin must be >= 1");

    MagnetizationTrace trace;
    trace.burnin = burnin;
    trace.thin = thin;
    trace.seed = seed;
    trace.samples.reserve((sweeps - burnin) / thin);

    ChainState state(make_initial(init, g.n(), seed), split_seed(seed, 0x5eed));
    for (std::uint64_t t = 1; t <= sweeps; ++t) {
        sweep(g, params, state);
        if (t > burnin && (t - burnin) % thin == 0)
            trace.samples.push_back(magnetization(state.sigma));
    }
    return trace;
}

double detailed_balance_check(const BlockGraph& g, const ModelParams& params) {
    return detailed_balance_check(g, params, params);
}

double detailed_balance_check(const BlockGraph& g, const ModelParams& params,
                              const ModelParams& kernel_params) {
    const int n = g.n();
    if (n > 16)
        throw ResourceLimitError("detailed-balance scan is capped at n = 16");

    const double log_z = log_partition_random(g, params);
    const double inv_n = 1.0 / n;

    // walk states in Gray order so mu can be carried incrementally
    SpinConfig sigma = SpinConfig::all_minus(n);
    double energy = energy_random(g, params, sigma);
    double worst = 0.0;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t t = 0;; ++t) {
        const double mu = std::exp(-energy - log_z);
        for (int i = 0; i < n; ++i) {
            const double x = field(g, kernel_params, sigma, i);
            const double p_to_flip =
                1.0 / (1.0 + std::exp(2.0 * sigma.spin(i) * x));
            // energy and measure of the flipped state
            const double e_flip =
                energy + 2.0 * sigma.spin(i) * field(g, params, sigma, i);
            const double mu_flip = std::exp(-e_flip - log_z);
            const double p_back = 1.0 - p_to_flip;
            const double violation =
                std::abs(mu * inv_n * p_to_flip - mu_flip * inv_n * p_back);
            if (violation > worst) worst = violation;
        }
        if (t + 1 == total) break;
        const int site = std::countr_zero(t + 1);
        energy += 2.0 * sigma.spin(site) * field(g, params, sigma, site);
        sigma.flip(site);
        if (((t + 1) & 0xfffull) == 0) energy = energy_random(g, params, sigma);
    }
    return worst;
}

} // namespace blockspin
