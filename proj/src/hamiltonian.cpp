#include "blockspin/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace blockspin {

namespace {

void check_inputs(const BlockGraph& g, const ModelParams& params,
                  const SpinConfig& sigma) {
    if (g.n() != sigma.n())
        throw std::invalid_argument("graph and configuration sizes differ");
    if (params.p != g.p() || params.q != g.q())
        throw std::invalid_argument("params (p,q) disagree with the graph");
    params.validate();
}

// sum over ordered pairs of eps_ij s_i s_j (resp. delta), as exact integers
std::pair<std::int64_t, std::int64_t> pair_sums(const BlockGraph& g,
                                                const SpinConfig& sigma) {
    std::int64_t eps_sum = 0, delta_sum = 0;
    for (int i = 0; i < g.n(); ++i) {
        // row sum of spins: 2*popcount(row & sigma) - popcount(row)
        const std::int64_t re =
            2 * static_cast<std::int64_t>(g.eps().row_count_and(i, sigma.words())) -
            static_cast<std::int64_t>(g.eps().row_count(i));
        const std::int64_t rd =
            2 * static_cast<std::int64_t>(
                    g.delta().row_count_and(i, sigma.words())) -
            static_cast<std::int64_t>(g.delta().row_count(i));
        eps_sum += sigma.spin(i) * re;
        delta_sum += sigma.spin(i) * rd;
    }
    return {eps_sum, delta_sum};
}

} // namespace

double energy_random(const BlockGraph& g, const ModelParams& params,
                     const SpinConfig& sigma) {
    check_inputs(g, params, sigma);
    const auto [eps_sum, delta_sum] = pair_sums(g, sigma);
    const double norm = 2.0 * g.n() * params.p;
    return -(params.beta * eps_sum + params.alpha * delta_sum) / norm;
}

double energy_random_rewrite(const BlockGraph& g, const ModelParams& params,
                             const SpinConfig& sigma) {
    check_inputs(g, params, sigma);
    const AlignedEdgeSums s = aligned_edge_sums(g, sigma);
    const auto [eps_total, delta_total] = edge_counts(g);
    const double norm = 2.0 * g.n() * params.p;
    return -(params.beta * (2.0 * s.eps_aligned - eps_total) +
             params.alpha * (2.0 * s.delta_aligned - delta_total)) /
           norm;
}

double energy_random_rewrite2(const BlockGraph& g, const ModelParams& params,
                              const SpinConfig& sigma) {
    check_inputs(g, params, sigma);
    const AlignedEdgeSums s = aligned_edge_sums(g, sigma);
    const auto [eps_total, delta_total] = edge_counts(g);
    const double norm = 2.0 * g.n() * params.p;
    return -(params.beta * (2.0 * s.eps_aligned - eps_total) +
             params.alpha * (delta_total - 2.0 * s.delta_unaligned)) /
           norm;
}

double energy_complete(int n, double beta, double lambda,
                       const Magnetization& m) {
    return -(n / 8.0) *
           (2.0 * lambda * m.m1 * m.m2 + beta * (m.m1 * m.m1 + m.m2 * m.m2));
}

double energy_gap_bound(const ModelParams& params, int n, double gamma,
                        double kappa) {
    if (!(gamma >= 0.0) || !(kappa >= 0.0))
        throw std::invalid_argument("gamma and kappa must be >= 0");
    return params.beta * gamma * n +
           2.0 * std::abs(params.alpha * params.a()) * kappa * n;
}

} // namespace blockspin
