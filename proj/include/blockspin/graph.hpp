#ifndef BLOCKSPIN_GRAPH_HPP
#define BLOCKSPIN_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blockspin/bitmat.hpp"

namespace blockspin {

/// Quenched communication structure of the two-group model.
///
/// Agents 0..n/2-1 form the first block, n/2..n-1 the second. eps holds the
/// within-block indicators (row i = out-edges of i inside its block), delta
/// the between-block ones. Rows are full n-bit rows; entries outside the
/// legal column range of a row are structurally zero, as is the diagonal.
/// Transposes are kept alongside because a site's Gibbs conditional needs
/// column sums as well as row sums.
///
/// Immutable after construction; share freely across threads.
class BlockGraph {
  public:
    BlockGraph(int n, double p, double q, std::uint64_t seed, bool directed,
               BitMatrix eps, BitMatrix delta);

    int n() const { return n_; }
    int half() const { return n_ / 2; }
    double p() const { return p_; }
    double q() const { return q_; }
    std::uint64_t seed() const { return seed_; }
    bool directed() const { return directed_; }

    const BitMatrix& eps() const { return eps_; }
    const BitMatrix& delta() const { return delta_; }
    const BitMatrix& eps_t() const { return eps_t_; }
    const BitMatrix& delta_t() const { return delta_t_; }

    // cached row popcounts (out-degree / in-degree per site)
    int eps_row_count(int i) const { return eps_rows_[static_cast<std::size_t>(i)]; }
    int eps_col_count(int i) const { return eps_cols_[static_cast<std::size_t>(i)]; }
    int delta_row_count(int i) const { return delta_rows_[static_cast<std::size_t>(i)]; }
    int delta_col_count(int i) const { return delta_cols_[static_cast<std::size_t>(i)]; }

    /// Block of vertex i: 0 for the first half, 1 for the second.
    int block_of(int i) const { return i < n_ / 2 ? 0 : 1; }

    bool operator==(const BlockGraph& o) const {
        return n_ == o.n_ && p_ == o.p_ && q_ == o.q_ && seed_ == o.seed_ &&
               directed_ == o.directed_ && eps_ == o.eps_ && delta_ == o.delta_;
    }

    /// All-zero edge sets (test fixtures, negative controls).
    static BlockGraph empty(int n, double p = 1.0, double q = 1.0);

    std::string to_json() const;
    static BlockGraph from_json(const std::string& text);
    void save(const std::string& path) const;
    static BlockGraph load(const std::string& path);

  private:
    int n_;
    double p_, q_;
    std::uint64_t seed_;
    bool directed_;
    BitMatrix eps_, delta_, eps_t_, delta_t_;
    std::vector<int> eps_rows_, eps_cols_, delta_rows_, delta_cols_;
};

/// Draw the quenched graph: every ordered within-block pair (i,j), i != j,
/// gets an edge independently with probability p, every ordered between-block
/// pair with probability q. With directed=false the (i,j) and (j,i)
/// indicators are a single coin. Deterministic in (n,p,q,seed,directed).
BlockGraph gen_graph(int n, double p, double q, std::uint64_t seed,
                     bool directed = true);

/// Set-bit totals of eps and delta.
std::pair<std::int64_t, std::int64_t> edge_counts(const BlockGraph& g);

/// Edge-probability schedules (p_N), (q_N) for the nested graph family.
/// Entries are 1-indexed by level: p_seq[0] is p_1 and must equal 1, and both
/// sequences must be non-increasing.
struct GraphSequence {
    std::vector<double> p_seq;
    std::vector<double> q_seq;
    std::uint64_t seed = 0;

    void validate(int upto) const;
};

/// Nested family coupling. Agents keep a fixed group given by index parity
/// (group of agent a is a mod 2) so a pair's within/between class never
/// changes as the level grows; each level's snapshot relabels agents into the
/// contiguous blocks of BlockGraph. An ordered pair (a,b) is born at level
/// max(a,b)+1 with state Bernoulli(rate at birth) and afterwards survives
/// level N-1 -> N with probability r_N / r_{N-1} (r = p or q by class), so
/// the marginal at every level N is exactly r_N and edge sets only shrink.
/// Every pair draws from its own substream keyed by (seed, a, b).
///
/// Returns snapshots for N = 2, 4, ..., upto.
std::vector<BlockGraph> gen_nested(const GraphSequence& seq, int upto);

/// Agent <-> vertex maps of the nested family at level n.
int nested_vertex_of_agent(int agent, int n);
int nested_agent_of_vertex(int vertex, int n);

/// Presence states of one ordered agent pair (a,b) of the nested family at
/// levels birth..upto (element k is level birth+k). Exposed so the per-pair
/// survival chain can be checked at odd levels too.
std::vector<bool> nested_pair_states(const GraphSequence& seq, int a, int b,
                                     int upto);

} // namespace blockspin

#endif
