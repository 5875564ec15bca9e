#ifndef BLOCKSPIN_HAMILTONIAN_HPP
#define BLOCKSPIN_HAMILTONIAN_HPP

#include "blockspin/graph.hpp"
#include "blockspin/params.hpp"
#include "blockspin/spin.hpp"

namespace blockspin {

/// Quenched energy
///   H(sigma) = -beta/(2np) sum_{i~j} eps_ij s_i s_j
///              -alpha/(2np) sum_{i!~j} delta_ij s_i s_j
/// with both sums over ordered pairs i != j carried by the edge sets.
double energy_random(const BlockGraph& g, const ModelParams& params,
                     const SpinConfig& sigma);

/// Same value through the aligned-pair decomposition
///   H = -(2 beta E_b^+ - beta E_b + 2 alpha E_nb^+ - alpha E_nb) / (2np).
double energy_random_rewrite(const BlockGraph& g, const ModelParams& params,
                             const SpinConfig& sigma);

/// Same value through the unaligned between-block form
///   H = -(2 beta E_b^+ - beta E_b + alpha E_nb - 2 alpha E_nb^-) / (2np).
double energy_random_rewrite2(const BlockGraph& g, const ModelParams& params,
                              const SpinConfig& sigma);

/// Fully-connected reference energy (diagonal pairs included)
///   H~(m) = -(n/8) (2 lambda m1 m2 + beta m1^2 + beta m2^2).
double energy_complete(int n, double beta, double lambda,
                       const Magnetization& m);

/// Uniform bound on |H - H~| valid on the concentration event:
///   beta*gamma*n + 2|alpha*a|*kappa*n.
double energy_gap_bound(const ModelParams& params, int n, double gamma,
                        double kappa);

} // namespace blockspin

#endif
