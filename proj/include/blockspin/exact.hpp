#ifndef BLOCKSPIN_EXACT_HPP
#define BLOCKSPIN_EXACT_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "blockspin/graph.hpp"
#include "blockspin/params.hpp"
#include "blockspin/spin.hpp"

namespace blockspin {

/// Exact pushforward of a Gibbs measure to the magnetization vector:
/// probabilities over the admissible (m1, m2) grid, indexed by the +1 counts
/// (k1, k2) of the two blocks.
class MagnetizationDistribution {
  public:
    MagnetizationDistribution() = default;
    MagnetizationDistribution(int n, std::vector<double> prob, double log_z);

    int n() const { return n_; }
    int half() const { return n_ / 2; }
    double log_partition() const { return log_z_; }

    double prob(int k1, int k2) const {
        return prob_[static_cast<std::size_t>(k1) * (n_ / 2 + 1) + k2];
    }
    Magnetization m_at(int k1, int k2) const {
        const double h = n_ / 2.0;
        return {(2.0 * k1 - h) / h, (2.0 * k2 - h) / h};
    }

    /// Rows (m1, m2, prob) over the full admissible grid.
    std::vector<std::array<double, 3>> rows() const;

    double total() const;

    /// 0.5 * sum |p - q| against another distribution on the same grid.
    double total_variation(const MagnetizationDistribution& other) const;

  private:
    int n_ = 0;
    std::vector<double> prob_;
    double log_z_ = 0.0;
};

/// Enumeration cap: 2^n states, about a million at the limit.
inline constexpr int kMaxEnumerationN = 20;

/// Exact distribution of m under the quenched Gibbs measure, by Gray-code
/// enumeration of all 2^n configurations. n <= 20.
MagnetizationDistribution enumerate_gibbs(const BlockGraph& g,
                                          const ModelParams& params);

/// Exact distribution of m under the fully-connected lambda-model, through
/// the binomial decomposition (any even n; O(n^2) work).
MagnetizationDistribution enumerate_gibbs_complete(int n, double beta,
                                                   double lambda);

/// log Z of the quenched model by enumeration (max-shifted). n <= 20.
double log_partition_random(const BlockGraph& g, const ModelParams& params);

/// log Z~ of the fully-connected lambda-model via the admissible-m sum with
/// log-binomial weights; O(n^2), fine up to n ~ 10^5 and beyond.
double log_partition_complete(int n, double beta, double lambda);

/// Concentration-event membership (the three defining inequalities of the
/// high-probability event, diagonal-adjusted: the within-block target is
/// p * (Lb_plus - n) because edge sums never see the diagonal while Lb_plus
/// counts it).
struct ConcentrationReport {
    // worst relative deviations |sum - r L| / (r L) seen over the tested set
    double worst_within = 0.0;
    double worst_between_plus = 0.0;
    double worst_between_minus = 0.0;
    // true when every tested sigma satisfied its inequalities
    bool member = true;
    // fraction of tested sigma satisfying their inequalities
    double member_fraction = 1.0;
    std::int64_t tested = 0;
};

/// Evaluate the event over all 2^n configurations (n <= 14).
ConcentrationReport concentration_report_all(const BlockGraph& g, double gamma,
                                             double kappa);

/// Evaluate the event over `samples` random configurations.
ConcentrationReport concentration_report_sampled(const BlockGraph& g,
                                                 double gamma, double kappa,
                                                 std::int64_t samples,
                                                 std::uint64_t seed);

/// Evaluate the event on explicitly given configurations.
ConcentrationReport concentration_report(const BlockGraph& g, double gamma,
                                         double kappa,
                                         const std::vector<SpinConfig>& configs);

/// Partition-function sandwich: with gamma = c/sqrt(p n), kappa = c/sqrt(q n)
/// and bound = beta gamma n + 2|alpha a| kappa n (a = q/p),
///   lower_slack = log Z - (log Z~ - bound),
///   upper_slack = (log Z~ + bound) - log Z.
/// Both positive means log Z~ +- bound brackets log Z.
struct SandwichResult {
    double log_z = 0.0;
    double log_z_complete = 0.0;
    double bound = 0.0;
    double lower_slack = 0.0;
    double upper_slack = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
};

SandwichResult sandwich_check(const BlockGraph& g, const ModelParams& params,
                              double c = 3.0);

} // namespace blockspin

#endif
