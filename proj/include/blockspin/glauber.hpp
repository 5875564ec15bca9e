#ifndef BLOCKSPIN_GLAUBER_HPP
#define BLOCKSPIN_GLAUBER_HPP

#include <cstdint>
#include <vector>

#include "blockspin/graph.hpp"
#include "blockspin/params.hpp"
#include "blockspin/rng.hpp"
#include "blockspin/spin.hpp"

namespace blockspin {

/// Local field of site i under the Gibbs measure of energy_random:
///   x_i = beta/(2np) sum_j (eps_ij + eps_ji) s_j
///       + alpha/(2np) sum_j (delta_ij + delta_ji) s_j,
/// so that H = (terms without s_i) - s_i x_i. Both edge directions enter; on
/// an undirected graph this reduces to beta/(np) * (neighbor sum).
double local_field(const BlockGraph& g, const ModelParams& params,
                   const SpinConfig& sigma, int i);

/// Heat-bath conditional P(sigma_i = +1 | rest) = 1/(1 + exp(-2 x_i)).
/// Computed through the logistic form only, never as a ratio of exponentials.
double flip_probability(const BlockGraph& g, const ModelParams& params,
                        const SpinConfig& sigma, int i);

/// State of one chain. Single-site updates are order-dependent, so a chain is
/// sequential; run several chains with distinct seeds for parallelism.
struct ChainState {
    SpinConfig sigma;
    std::uint64_t sweep_index = 0;
    SplitMix64 rng;

    ChainState(SpinConfig s, std::uint64_t seed)
        : sigma(std::move(s)), rng(seed) {}
};

/// One sweep = n single-site heat-bath updates at uniformly random sites
/// (the embedded discrete-time chain of the Poisson-clock dynamics; same
/// invariant measure, no event queue).
void sweep(const BlockGraph& g, const ModelParams& params, ChainState& state);

struct MagnetizationTrace {
    std::vector<Magnetization> samples;
    std::uint64_t burnin = 0;
    std::uint64_t thin = 1;
    std::uint64_t seed = 0;
};

struct ChainInit {
    enum class Kind { AllPlus, AllMinus, Random, Given };
    Kind kind = Kind::Random;
    SpinConfig given;

    static ChainInit all_plus() { return {Kind::AllPlus, {}}; }
    static ChainInit all_minus() { return {Kind::AllMinus, {}}; }
    static ChainInit random() { return {Kind::Random, {}}; }
    static ChainInit from(SpinConfig s) { return {Kind::Given, std::move(s)}; }
};

SpinConfig make_initial(const ChainInit& init, int n, std::uint64_t seed);

/// Run one chain for `sweeps` sweeps, recording m every `thin` sweeps once
/// `burnin` sweeps have passed. sweeps == burnin yields an empty trace.
MagnetizationTrace run_chain(const BlockGraph& g, const ModelParams& params,
                             std::uint64_t sweeps, std::uint64_t burnin,
                             std::uint64_t thin, std::uint64_t seed,
                             const ChainInit& init = ChainInit::random());

/// Max over all sigma (2^n of them) and all single-site flips of
///   | mu(sigma) P(sigma -> sigma^i) - mu(sigma^i) P(sigma^i -> sigma) |
/// with mu the exact Gibbs measure of `params` and the kernel built from
/// `kernel_params` (defaults to params; pass something else as a negative
/// control). n <= 16.
double detailed_balance_check(const BlockGraph& g, const ModelParams& params);
double detailed_balance_check(const BlockGraph& g, const ModelParams& params,
                              const ModelParams& kernel_params);

} // namespace blockspin

#endif
