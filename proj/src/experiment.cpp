#include "blockspin/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "blockspin/errors.hpp"

namespace blockspin {

namespace {

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << body;
    if (!out) throw IoError("write failed: " + path.string());
}

nlohmann::json diagnosis_json(const PhaseDiagnosis& d) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& [m, w] : d.limit_points)
        points.push_back({m.m1, m.m2, w});
    return {{"phase", phase_name(d.phase)},
            {"z_star", d.z_star},
            {"limit_points", points}};
}

nlohmann::json chain_summary_json(const ChainSummary& c) {
    return {{"mean_abs_m1", c.mean_abs_m1},
            {"mean_abs_m2", c.mean_abs_m2},
            {"corr_sign", c.corr_sign},
            {"frac_m1m2_positive", c.frac_m1m2_positive},
            {"frac_m1m2_negative", c.frac_m1m2_negative},
            {"assignment_fraction", c.assignment_fraction},
            {"samples", c.samples}};
}

} // namespace

std::string init_policy_name(InitPolicy p) {
    switch (p) {
    case InitPolicy::AllPlus: return "all_plus";
    case InitPolicy::AllMinus: return "all_minus";
    case InitPolicy::Random: return "random";
    case InitPolicy::Symmetrized: return "symmetrized";
    case InitPolicy::Mirrored: return "mirrored";
    case InitPolicy::Dispersed: return "dispersed";
    }
    return "?";
}

InitPolicy init_policy_from_name(const std::string& name) {
    if (name == "all_plus") return InitPolicy::AllPlus;
    if (name == "all_minus") return InitPolicy::AllMinus;
    if (name == "random") return InitPolicy::Random;
    if (name == "symmetrized") return InitPolicy::Symmetrized;
    if (name == "mirrored") return InitPolicy::Mirrored;
    if (name == "dispersed") return InitPolicy::Dispersed;
    throw std::invalid_argument("unknown init policy: " + name);
}

ChainInit chain_init_for(InitPolicy policy, int chain_index, int n) {
    switch (policy) {
    case InitPolicy::AllPlus: return ChainInit::all_plus();
    case InitPolicy::AllMinus: return ChainInit::all_minus();
    case InitPolicy::Random: return ChainInit::random();
    case InitPolicy::Symmetrized:
        return chain_index % 2 == 0 ? ChainInit::all_plus()
                                    : ChainInit::all_minus();
    case InitPolicy::Mirrored:
    case InitPolicy::Dispersed: {
        // block-sign patterns: mirrored alternates +-, -+; dispersed cycles
        // through ++, --, +-, -+
        static constexpr int kSigns[4][2] = {{+1, +1}, {-1, -1}, {+1, -1}, {-1, +1}};
        const int idx = policy == InitPolicy::Mirrored ? 2 + chain_index % 2
                                                       : chain_index % 4;
        const auto& s = kSigns[idx];
        SpinConfig sigma(n, s[0]);
        if (s[1] != s[0])
            for (int i = n / 2; i < n; ++i) sigma.set_spin(i, s[1]);
        return ChainInit::from(std::move(sigma));
    }
    }
    return ChainInit::random();
}

ModelParams ExperimentConfig::params() const {
    ModelParams mp;
    mp.beta = beta;
    mp.alpha = alpha;
    mp.p = p;
    mp.q = q;
    mp.a_override = a_override;
    return mp;
}

void ExperimentConfig::validate() const {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("n must be even and >= 2");
    if (chains < 1) throw std::invalid_argument("chains must be >= 1");
    if (sweeps < burnin)
        throw std::invalid_argument("sweeps must be >= burnin");
    if (thin < 1) throw std::invalid_argument("thin must be >= 1");
    params().validate();
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["p"] = p;
    j["q"] = q;
    j["beta"] = beta;
    j["alpha"] = alpha;
    j["a_override"] = a_override ? nlohmann::json(*a_override) : nlohmann::json();
    j["directed"] = directed;
    j["chains"] = chains;
    j["sweeps"] = sweeps;
    j["burnin"] = burnin;
    j["thin"] = thin;
    j["base_seed"] = base_seed;
    j["graph_seed"] = graph_seed;
    j["graph_file"] = graph_file ? nlohmann::json(*graph_file) : nlohmann::json();
    j["init"] = init_policy_name(init);
    return j.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                    e.what());
    }
    ExperimentConfig c;
    try {
        c.n = j.value("n", c.n);
        c.p = j.value("p", c.p);
        c.q = j.value("q", c.q);
        c.beta = j.value("beta", c.beta);
        c.alpha = j.value("alpha", c.alpha);
        if (j.contains("a_override") && !j["a_override"].is_null())
            c.a_override = j["a_override"].get<double>();
        c.directed = j.value("directed", c.directed);
        c.chains = j.value("chains", c.chains);
        c.sweeps = j.value("sweeps", c.sweeps);
        c.burnin = j.value("burnin", c.burnin);
        c.thin = j.value("thin", c.thin);
        c.base_seed = j.value("base_seed", c.base_seed);
        c.graph_seed = j.value("graph_seed", c.graph_seed);
        if (j.contains("graph_file") && !j["graph_file"].is_null())
            c.graph_file = j["graph_file"].get<std::string>();
        if (j.contains("init"))
            c.init = init_policy_from_name(j["init"].get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad config field: ") + e.what());
    }
    return c;
}

int thread_budget() {
    if (const char* env = std::getenv("BLOCKSPIN_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

std::vector<MagnetizationTrace> run_chains(const BlockGraph& g,
                                           const ModelParams& params,
                                           const ExperimentConfig& config) {
    std::vector<MagnetizationTrace> traces(
        static_cast<std::size_t>(config.chains));
    const int workers = std::min(thread_budget(), config.chains);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int c = w; c < config.chains; c += workers) {
                    traces[static_cast<std::size_t>(c)] = run_chain(
                        g, params, config.sweeps, config.burnin, config.thin,
                        config.base_seed + static_cast<std::uint64_t>(c),
                        chain_init_for(config.init, c, g.n()));
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return traces;
}

TraceSummary summarize_traces(const std::vector<MagnetizationTrace>& traces,
                              const PhaseDiagnosis& prediction) {
    TraceSummary s;
    s.prediction = prediction;
    const std::size_t points = prediction.limit_points.size();

    std::vector<double> pooled_cx(points, 0.0), pooled_cy(points, 0.0);
    std::vector<std::uint64_t> pooled_count(points, 0);
    double pooled_m1 = 0.0, pooled_m2 = 0.0, pooled_prod = 0.0;
    std::uint64_t pooled_pos = 0, pooled_neg = 0;
    std::uint64_t pooled_n = 0;

    for (const MagnetizationTrace& tr : traces) {
        ChainSummary c;
        c.assignment_fraction.assign(points, 0.0);
        double sum_m1 = 0.0, sum_m2 = 0.0, sum_prod = 0.0;
        std::uint64_t pos = 0, neg = 0;
        std::vector<std::uint64_t> count(points, 0);
        for (const Magnetization& m : tr.samples) {
            sum_m1 += std::abs(m.m1);
            sum_m2 += std::abs(m.m2);
            sum_prod += m.m1 * m.m2;
            if (m.m1 * m.m2 > 0.0)
                ++pos;
            else if (m.m1 * m.m2 < 0.0)
                ++neg;
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < points; ++k) {
                const auto& lp = prediction.limit_points[k].first;
                const double d = std::hypot(m.m1 - lp.m1, m.m2 - lp.m2);
                if (d < best_d) {
                    best_d = d;
                    best = k;
                }
            }
            ++count[best];
            pooled_cx[best] += m.m1;
            pooled_cy[best] += m.m2;
        }
        c.samples = tr.samples.size();
        if (c.samples > 0) {
            c.mean_abs_m1 = sum_m1 / static_cast<double>(c.samples);
            c.mean_abs_m2 = sum_m2 / static_cast<double>(c.samples);
            const double mean_prod = sum_prod / static_cast<double>(c.samples);
            c.corr_sign = mean_prod > 0.0 ? 1 : (mean_prod < 0.0 ? -1 : 0);
            c.frac_m1m2_positive =
                static_cast<double>(pos) / static_cast<double>(c.samples);
            c.frac_m1m2_negative =
                static_cast<double>(neg) / static_cast<double>(c.samples);
            for (std::size_t k = 0; k < points; ++k)
                c.assignment_fraction[k] =
                    static_cast<double>(count[k]) / static_cast<double>(c.samples);
        }
        for (std::size_t k = 0; k < points; ++k) pooled_count[k] += count[k];
        pooled_m1 += sum_m1;
        pooled_m2 += sum_m2;
        pooled_prod += sum_prod;
        pooled_pos += pos;
        pooled_neg += neg;
        pooled_n += c.samples;
        s.chains.push_back(std::move(c));
    }

    s.pooled.samples = pooled_n;
    s.pooled.assignment_fraction.assign(points, 0.0);
    if (pooled_n > 0) {
        s.pooled.mean_abs_m1 = pooled_m1 / static_cast<double>(pooled_n);
        s.pooled.mean_abs_m2 = pooled_m2 / static_cast<double>(pooled_n);
        const double mean_prod = pooled_prod / static_cast<double>(pooled_n);
        s.pooled.corr_sign = mean_prod > 0.0 ? 1 : (mean_prod < 0.0 ? -1 : 0);
        s.pooled.frac_m1m2_positive =
            static_cast<double>(pooled_pos) / static_cast<double>(pooled_n);
        s.pooled.frac_m1m2_negative =
            static_cast<double>(pooled_neg) / static_cast<double>(pooled_n);
        for (std::size_t k = 0; k < points; ++k)
            s.pooled.assignment_fraction[k] =
                static_cast<double>(pooled_count[k]) /
                static_cast<double>(pooled_n);
    }

    s.mode_centroids.resize(points);
    s.mode_distances.resize(points);
    for (std::size_t k = 0; k < points; ++k) {
        if (pooled_count[k] > 0) {
            const double cx = pooled_cx[k] / static_cast<double>(pooled_count[k]);
            const double cy = pooled_cy[k] / static_cast<double>(pooled_count[k]);
            s.mode_centroids[k] = {cx, cy};
            const auto& lp = prediction.limit_points[k].first;
            s.mode_distances[k] = std::hypot(cx - lp.m1, cy - lp.m2);
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            s.mode_centroids[k] = {nan, nan};
            s.mode_distances[k] = nan;
        }
    }
    s.insufficient_samples = pooled_n == 0;
    return s;
}

namespace {

std::string trace_csv(const MagnetizationTrace& tr) {
    std::string body = "sweep,m1,m2\n";
    for (std::size_t k = 0; k < tr.samples.size(); ++k) {
        const std::uint64_t sweep_idx =
            tr.burnin + (static_cast<std::uint64_t>(k) + 1) * tr.thin;
        body += std::to_string(sweep_idx);
        body += ',';
        body += fmt(tr.samples[k].m1);
        body += ',';
        body += fmt(tr.samples[k].m2);
        body += '\n';
    }
    return body;
}

} // namespace

TraceSummary run_experiment(const ExperimentConfig& config,
                            const std::string& out_dir) {
    // a loaded graph is authoritative for n, p, q
    ExperimentConfig cfg = config;
    std::optional<BlockGraph> loaded;
    if (cfg.graph_file) {
        loaded = BlockGraph::load(*cfg.graph_file);
        cfg.n = loaded->n();
        cfg.p = loaded->p();
        cfg.q = loaded->q();
    }
    cfg.validate();
    const ModelParams params = cfg.params();
    const BlockGraph g = loaded ? std::move(*loaded)
                                : gen_graph(cfg.n, cfg.p, cfg.q, cfg.graph_seed,
                                            cfg.directed);

    const std::vector<MagnetizationTrace> traces = run_chains(g, params, cfg);
    const PhaseDiagnosis prediction =
        classify_phase(params.beta, params.lambda());
    TraceSummary summary = summarize_traces(traces, prediction);

    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create output directory: " + out_dir);
        const fs::path dir(out_dir);

        write_file(dir / "config.json", cfg.to_json());
        g.save((dir / "graph.json").string());
        for (std::size_t k = 0; k < traces.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof(name), "trace_%03zu.csv", k);
            write_file(dir / name, trace_csv(traces[k]));
        }

        nlohmann::json meta;
        meta["n"] = cfg.n;
        meta["p"] = cfg.p;
        meta["q"] = cfg.q;
        meta["beta"] = cfg.beta;
        meta["alpha"] = cfg.alpha;
        meta["a"] = params.a();
        meta["lambda"] = params.lambda();
        meta["directed"] = cfg.directed;
        meta["chains"] = cfg.chains;
        meta["sweeps"] = cfg.sweeps;
        meta["burnin"] = cfg.burnin;
        meta["thin"] = cfg.thin;
        meta["base_seed"] = cfg.base_seed;
        meta["graph_seed"] = g.seed();
        meta["init"] = init_policy_name(cfg.init);
        meta["chain_seeds"] = [&] {
            std::vector<std::uint64_t> seeds;
            for (int c = 0; c < cfg.chains; ++c)
                seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(c));
            return seeds;
        }();
        meta["timestamp"] =
            static_cast<std::int64_t>(std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
        write_file(dir / "metadata.json", meta.dump(2) + "\n");

        nlohmann::json js;
        js["prediction"] = diagnosis_json(summary.prediction);
        js["pooled"] = chain_summary_json(summary.pooled);
        js["chains"] = [&] {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : summary.chains) arr.push_back(chain_summary_json(c));
            return arr;
        }();
        js["mode_centroids"] = [&] {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& m : summary.mode_centroids) {
                if (std::isnan(m.m1))
                    arr.push_back(nlohmann::json());
                else
                    arr.push_back({m.m1, m.m2});
            }
            return arr;
        }();
        js["mode_distances"] = [&] {
            nlohmann::json arr = nlohmann::json::array();
            for (double d : summary.mode_distances) {
                if (std::isnan(d))
                    arr.push_back(nlohmann::json());
                else
                    arr.push_back(d);
            }
            return arr;
        }();
        js["insufficient_samples"] = summary.insufficient_samples;
        write_file(dir / "summary.json", js.dump(2) + "\n");
    }
    return summary;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.betas.empty() || spec.alpha_as.empty())
        throw std::invalid_argument("sweep grid must be non-empty");
    std::vector<SweepRow> rows;
    int cell = 0;
    for (double beta : spec.betas)
        for (double alpha_a : spec.alpha_as) {
            ExperimentConfig c = spec.base;
            c.beta = beta;
            const double a = c.params().a();
            c.alpha = alpha_a / a;
            c.base_seed = spec.base.base_seed +
                          static_cast<std::uint64_t>(cell) *
                              static_cast<std::uint64_t>(c.chains);
            c.validate();
            const TraceSummary s = run_experiment(c);
            SweepRow row;
            row.beta = beta;
            row.alpha_a = alpha_a;
            row.phase = phase_name(s.prediction.phase);
            row.z_star = s.prediction.z_star;
            row.mean_abs_m1 = s.pooled.mean_abs_m1;
            row.mean_abs_m2 = s.pooled.mean_abs_m2;
            row.corr_sign = s.pooled.corr_sign;
            double worst = 0.0;
            for (double d : s.mode_distances)
                if (!std::isnan(d)) worst = std::max(worst, d);
            row.max_mode_distance = worst;
            rows.push_back(std::move(row));
            ++cell;
        }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string body =
        "beta,alpha_a,phase,z_star,mean_abs_m1,mean_abs_m2,corr_sign,"
        "max_mode_distance\n";
    for (const SweepRow& r : rows) {
        body += fmt(r.beta);
        body += ',';
        body += fmt(r.alpha_a);
        body += ',';
        body += r.phase;
        body += ',';
        body += fmt(r.z_star);
        body += ',';
        body += fmt(r.mean_abs_m1);
        body += ',';
        body += fmt(r.mean_abs_m2);
        body += ',';
        body += std::to_string(r.corr_sign);
        body += ',';
        body += fmt(r.max_mode_distance);
        body += '\n';
    }
    return body;
}

} // namespace blockspin
