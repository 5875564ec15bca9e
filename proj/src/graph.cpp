#include "blockspin/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "blockspin/errors.hpp"
#include "blockspin/rng.hpp"

namespace blockspin {

namespace {

constexpr int kGraphFormatVersion = 1;

const char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<std::uint8_t>& data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        const std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back(kB64Alphabet[v & 63]);
    }
    const std::size_t rest = data.size() - i;
    if (rest == 1) {
        const std::uint32_t v = data[i] << 16;
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out += "==";
    } else if (rest == 2) {
        const std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out += "=";
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    int rev[256];
    for (int& r : rev) r = -1;
    for (int k = 0; k < 64; ++k) rev[static_cast<unsigned char>(kB64Alphabet[k])] = k;

    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    std::uint32_t acc = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=' || c == '\n' || c == '\r') continue;
        const int v = rev[static_cast<unsigned char>(c)];
        if (v < 0) throw IoError("invalid base64 character in graph file");
        acc = (acc << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
        }
    }
    return out;
}

void check_graph_args(int n, double p, double q) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("n must be even and >= 2");
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("p must lie in (0,1]");
    if (!(q > 0.0) || q > 1.0)
        throw std::invalid_argument("q must lie in (0,1]");
}

void check_block_structure(int n, const BitMatrix& eps, const BitMatrix& delta) {
    const std::size_t un = static_cast<std::size_t>(n);
    if (eps.rows() != un || eps.cols() != un || delta.rows() != un ||
        delta.cols() != un)
        throw std::invalid_argument("edge matrices must be n x n");
    const int h = n / 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const bool same = (i < h) == (j < h);
            if (i == j || !same) {
                if (eps.get(i, j))
                    throw std::invalid_argument(
                        "eps carries a diagonal or between-block entry");
            }
            if (same && delta.get(i, j))
                throw std::invalid_argument("delta carries a within-block entry");
        }
}

} // namespace

BlockGraph::BlockGraph(int n, double p, double q, std::uint64_t seed,
                       bool directed, BitMatrix eps, BitMatrix delta)
    : n_(n), p_(p), q_(q), seed_(seed), directed_(directed),
      eps_(std::move(eps)), delta_(std::move(delta)) {
    check_graph_args(n, p, q);
    check_block_structure(n, eps_, delta_);
    eps_t_ = eps_.transposed();
    delta_t_ = delta_.transposed();
    eps_rows_.resize(static_cast<std::size_t>(n));
    eps_cols_.resize(static_cast<std::size_t>(n));
    delta_rows_.resize(static_cast<std::size_t>(n));
    delta_cols_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        eps_rows_[static_cast<std::size_t>(i)] = static_cast<int>(eps_.row_count(i));
        eps_cols_[static_cast<std::size_t>(i)] = static_cast<int>(eps_t_.row_count(i));
        delta_rows_[static_cast<std::size_t>(i)] = static_cast<int>(delta_.row_count(i));
        delta_cols_[static_cast<std::size_t>(i)] = static_cast<int>(delta_t_.row_count(i));
    }
}

BlockGraph BlockGraph::empty(int n, double p, double q) {
    const std::size_t un = static_cast<std::size_t>(n);
    return BlockGraph(n, p, q, 0, true, BitMatrix(un, un), BitMatrix(un, un));
}

BlockGraph gen_graph(int n, double p, double q, std::uint64_t seed,
                     bool directed) {
    check_graph_args(n, p, q);
    const std::size_t un = static_cast<std::size_t>(n);
    BitMatrix eps(un, un), delta(un, un);
    const int h = n / 2;
    SplitMix64 rng(split_seed(seed, 0xb10c));

    // fixed row-major draw order: reproducibility depends on it
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool same = (i < h) == (j < h);
            if (!directed && j < i) continue; // mirrored below
            const double r = rng.uniform();
            const bool edge = r < (same ? p : q);
            if (!edge) continue;
            BitMatrix& m = same ? eps : delta;
            m.set(i, j, true);
            if (!directed) m.set(j, i, true);
        }
    return BlockGraph(n, p, q, seed, directed, std::move(eps), std::move(delta));
}

std::pair<std::int64_t, std::int64_t> edge_counts(const BlockGraph& g) {
    return {static_cast<std::int64_t>(g.eps().count()),
            static_cast<std::int64_t>(g.delta().count())};
}

std::string BlockGraph::to_json() const {
    nlohmann::json j;
    j["format_version"] = kGraphFormatVersion;
    j["n"] = n_;
    j["p"] = p_;
    j["q"] = q_;
    j["seed"] = seed_;
    j["directed"] = directed_;
    j["eps"] = base64_encode(eps_.to_bytes());
    j["delta"] = base64_encode(delta_.to_bytes());
    return j.dump(2) + "\n";
}

BlockGraph BlockGraph::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("graph file is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != kGraphFormatVersion)
            throw IoError("unsupported graph format_version");
        const int n = j.at("n").get<int>();
        const auto eps_bytes = base64_decode(j.at("eps").get<std::string>());
        const auto delta_bytes = base64_decode(j.at("delta").get<std::string>());
        const std::size_t un = static_cast<std::size_t>(n);
        const std::size_t need = un * ((un + 7) / 8);
        if (eps_bytes.size() != need || delta_bytes.size() != need)
            throw IoError("graph bit matrices have the wrong size");
        return BlockGraph(n, j.at("p").get<double>(), j.at("q").get<double>(),
                          j.at("seed").get<std::uint64_t>(),
                          j.at("directed").get<bool>(),
                          BitMatrix::from_bytes(un, un, eps_bytes),
                          BitMatrix::from_bytes(un, un, delta_bytes));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("graph file is missing fields: ") + e.what());
    }
}

void BlockGraph::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << to_json();
    if (!out) throw IoError("write failed: " + path);
}

BlockGraph BlockGraph::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void GraphSequence::validate(int upto) const {
    if (upto < 2) throw std::invalid_argument("upto must be >= 2");
    if (static_cast<int>(p_seq.size()) < upto ||
        static_cast<int>(q_seq.size()) < upto)
        throw std::invalid_argument("sequences must be defined through upto");
    if (p_seq[0] != 1.0 || q_seq[0] != 1.0)
        throw std::invalid_argument("sequences must start at 1");
    for (int k = 0; k < upto; ++k) {
        if (!(p_seq[k] > 0.0) || p_seq[k] > 1.0 || !(q_seq[k] > 0.0) ||
            q_seq[k] > 1.0)
            throw std::invalid_argument("sequence entries must lie in (0,1]");
        if (k > 0 && (p_seq[k] > p_seq[k - 1] || q_seq[k] > q_seq[k - 1]))
            throw std::invalid_argument("sequences must be non-increasing");
    }
}

int nested_vertex_of_agent(int agent, int n) {
    return (agent % 2 == 0) ? agent / 2 : n / 2 + agent / 2;
}

int nested_agent_of_vertex(int vertex, int n) {
    const int h = n / 2;
    return (vertex < h) ? 2 * vertex : 2 * (vertex - h) + 1;
}

namespace {

// Survival chain of one ordered agent pair. rate[k] is the level-(k+1)
// probability; the pair is born at level max(a,b)+1.
std::vector<bool> pair_chain(const std::vector<double>& rate,
                             std::uint64_t seed, int a, int b, int upto) {
    const int birth = std::max(a, b) + 1;
    SplitMix64 rng(split_seed(seed, static_cast<std::uint64_t>(a),
                              static_cast<std::uint64_t>(b)));
    std::vector<bool> states;
    states.reserve(static_cast<std::size_t>(upto - birth + 1));
    bool present = rng.uniform() < rate[birth - 1];
    states.push_back(present);
    for (int level = birth + 1; level <= upto; ++level) {
        if (present) {
            const double survive = rate[level - 1] / rate[level - 2];
            present = rng.uniform() < survive;
        } else {
            rng.next(); // keep the stream aligned; an absent edge never returns
        }
        states.push_back(present);
    }
    return states;
}

} // namespace

std::vector<bool> nested_pair_states(const GraphSequence& seq, int a, int b,
                                     int upto) {
    seq.validate(upto);
    if (a == b || a < 0 || b < 0 || std::max(a, b) >= upto)
        throw std::invalid_argument("pair must be two distinct agents below upto");
    const bool same = (a % 2) == (b % 2);
    return pair_chain(same ? seq.p_seq : seq.q_seq, seq.seed, a, b, upto);
}

std::vector<BlockGraph> gen_nested(const GraphSequence& seq, int upto) {
    seq.validate(upto);

    // states[a][b] = presence of ordered pair (a,b) at levels birth..upto
    std::vector<std::vector<std::vector<bool>>> states(
        static_cast<std::size_t>(upto));
    for (int a = 0; a < upto; ++a) {
        states[a].resize(static_cast<std::size_t>(upto));
        for (int b = 0; b < upto; ++b) {
            if (a == b) continue;
            const bool same = (a % 2) == (b % 2);
            states[a][b] =
                pair_chain(same ? seq.p_seq : seq.q_seq, seq.seed, a, b, upto);
        }
    }

    std::vector<BlockGraph> graphs;
    for (int level = 2; level <= upto; level += 2) {
        const std::size_t un = static_cast<std::size_t>(level);
        BitMatrix eps(un, un), delta(un, un);
        for (int a = 0; a < level; ++a)
            for (int b = 0; b < level; ++b) {
                if (a == b) continue;
                const int birth = std::max(a, b) + 1;
                if (!states[a][b][static_cast<std::size_t>(level - birth)])
                    continue;
                const int va = nested_vertex_of_agent(a, level);
                const int vb = nested_vertex_of_agent(b, level);
                if ((a % 2) == (b % 2))
                    eps.set(va, vb, true);
                else
                    delta.set(va, vb, true);
            }
        graphs.emplace_back(level, seq.p_seq[static_cast<std::size_t>(level - 1)],
                            seq.q_seq[static_cast<std::size_t>(level - 1)],
                            seq.seed, true, std::move(eps), std::move(delta));
    }
    return graphs;
}

} // namespace blockspin
