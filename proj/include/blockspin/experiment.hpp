#ifndef BLOCKSPIN_EXPERIMENT_HPP
#define BLOCKSPIN_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockspin/glauber.hpp"
#include "blockspin/graph.hpp"
#include "blockspin/meanfield.hpp"
#include "blockspin/params.hpp"

namespace blockspin {

/// How the chains of an experiment start. The first three apply to every
/// chain; the rest are chain-indexed policies:
///   symmetrized — all_plus / all_minus by chain parity
///   mirrored    — block-sign patterns +- / -+ by chain parity
///   dispersed   — the four block-sign patterns ++, --, +-, -+ round-robin
enum class InitPolicy {
    AllPlus,
    AllMinus,
    Random,
    Symmetrized,
    Mirrored,
    Dispersed
};

std::string init_policy_name(InitPolicy p);
InitPolicy init_policy_from_name(const std::string& name);

ChainInit chain_init_for(InitPolicy policy, int chain_index, int n);

/// One experiment = one graph, several chains, one output directory.
/// Chain i runs with seed base_seed + i.
struct ExperimentConfig {
    int n = 100;
    double p = 1.0;
    double q = 1.0;
    double beta = 1.0;
    double alpha = 0.0;
    std::optional<double> a_override;
    bool directed = true;

    int chains = 4;
    std::uint64_t sweeps = 1000;
    std::uint64_t burnin = 100;
    std::uint64_t thin = 1;
    std::uint64_t base_seed = 1;
    std::uint64_t graph_seed = 1;
    std::optional<std::string> graph_file; // load instead of generating
    InitPolicy init = InitPolicy::Random;

    ModelParams params() const;
    void validate() const;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
};

/// Per-chain and pooled statistics of the traces against the predicted
/// limit points (always taken from classify_phase, never hard-coded).
struct ChainSummary {
    double mean_abs_m1 = 0.0;
    double mean_abs_m2 = 0.0;
    int corr_sign = 0;                  // sign of the sample mean of m1*m2
    double frac_m1m2_positive = 0.0;    // fraction of samples with m1*m2 > 0
    double frac_m1m2_negative = 0.0;
    std::vector<double> assignment_fraction;
    std::uint64_t samples = 0;
};

struct TraceSummary {
    PhaseDiagnosis prediction;
    std::vector<ChainSummary> chains;
    ChainSummary pooled;
    // centroid of the samples assigned to each limit point, and its distance
    // to the prediction; distance is NaN for points that received no samples
    std::vector<Magnetization> mode_centroids;
    std::vector<double> mode_distances;
    bool insufficient_samples = false;
};

TraceSummary summarize_traces(const std::vector<MagnetizationTrace>& traces,
                              const PhaseDiagnosis& prediction);

/// Generate (or load) the graph, run the chains in parallel, compare against
/// the phase prediction. With out_dir nonempty, writes config.json,
/// graph.json, trace_<k>.csv, metadata.json and summary.json there.
/// Parallelism is chain-level, capped by BLOCKSPIN_THREADS.
TraceSummary run_experiment(const ExperimentConfig& config,
                            const std::string& out_dir = "");

/// Run the chains only (no filesystem side effects).
std::vector<MagnetizationTrace> run_chains(const BlockGraph& g,
                                           const ModelParams& params,
                                           const ExperimentConfig& config);

/// Grid sweep over (beta, alpha*a) at fixed n, p, q. Each cell runs a full
/// experiment with cell-deterministic seeds and yields one summary row.
struct SweepSpec {
    ExperimentConfig base;
    std::vector<double> betas;
    std::vector<double> alpha_as;
};

struct SweepRow {
    double beta = 0.0;
    double alpha_a = 0.0;
    std::string phase;
    double z_star = 0.0;
    double mean_abs_m1 = 0.0;
    double mean_abs_m2 = 0.0;
    int corr_sign = 0;
    double max_mode_distance = 0.0;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// CSV body for the sweep rows (deterministic formatting).
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Thread cap: BLOCKSPIN_THREADS if set, else hardware concurrency.
int thread_budget();

} // namespace blockspin

#endif
