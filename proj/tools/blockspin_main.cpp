// blockspin — simulate and analyze the two-group binary-choice model on a
// random directed communication graph.
//
// Subcommands: graph, sample, exact, phase, rate, free-energy, sweep.
// Exit codes: 0 ok, 2 invalid config/arguments, 3 resource limit, 4 IO.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockspin/errors.hpp"
#include "blockspin/exact.hpp"
#include "blockspin/experiment.hpp"
#include "blockspin/glauber.hpp"
#include "blockspin/graph.hpp"
#include "blockspin/meanfield.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw blockspin::IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out, const std::string& body) {
    if (out.empty() || out == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw blockspin::IoError("cannot open for writing: " + out);
    f << body;
    if (!f) throw blockspin::IoError("write failed: " + out);
}

json diagnosis_json(const blockspin::PhaseDiagnosis& d) {
    json points = json::array();
    for (const auto& [m, w] : d.limit_points) points.push_back({m.m1, m.m2, w});
    return {{"phase", blockspin::phase_name(d.phase)},
            {"z_star", d.z_star},
            {"limit_points", points}};
}

int run(int argc, char** argv) {
    CLI::App app{"two-group binary-choice model on a random communication graph"};
    app.require_subcommand(1);

    // ---- graph ----
    auto* graph_cmd = app.add_subcommand("graph", "generate a quenched graph");
    int g_n = 100;
    double g_p = 0.5, g_q = 0.25;
    std::uint64_t g_seed = 1;
    bool g_undirected = false;
    std::string g_out;
    graph_cmd->add_option("--n", g_n, "number of agents (even)")->required();
    graph_cmd->add_option("--p", g_p, "within-block edge probability")->required();
    graph_cmd->add_option("--q", g_q, "between-block edge probability")->required();
    graph_cmd->add_option("--seed", g_seed, "RNG seed");
    graph_cmd->add_flag("--undirected", g_undirected, "force symmetric edges");
    graph_cmd->add_option("--out", g_out, "output file")->required();

    // ---- sample ----
    auto* sample_cmd =
        app.add_subcommand("sample", "run Glauber chains and summarize");
    std::string s_config, s_out_dir, s_graph_file, s_init;
    blockspin::ExperimentConfig s_base;
    std::optional<int> s_n;
    std::optional<double> s_p, s_q, s_beta, s_alpha, s_a;
    std::optional<int> s_chains;
    std::optional<std::uint64_t> s_sweeps, s_burnin, s_thin, s_seed, s_gseed;
    sample_cmd->add_option("--config", s_config, "experiment config JSON");
    sample_cmd->add_option("--n", s_n, "number of agents");
    sample_cmd->add_option("--p", s_p, "within-block edge probability");
    sample_cmd->add_option("--q", s_q, "between-block edge probability");
    sample_cmd->add_option("--beta", s_beta, "within-group coupling");
    sample_cmd->add_option("--alpha", s_alpha, "between-group coupling");
    sample_cmd->add_option("--a", s_a, "override the ratio q/p");
    sample_cmd->add_option("--chains", s_chains, "number of chains");
    sample_cmd->add_option("--sweeps", s_sweeps, "total sweeps per chain");
    sample_cmd->add_option("--burnin", s_burnin, "sweeps to discard");
    sample_cmd->add_option("--thin", s_thin, "sweeps between samples");
    sample_cmd->add_option("--seed", s_seed, "base seed (chain i adds i)");
    sample_cmd->add_option("--graph-seed", s_gseed, "graph seed");
    sample_cmd->add_option("--graph", s_graph_file, "load graph from file");
    sample_cmd->add_option("--init", s_init,
                           "all_plus|all_minus|random|symmetrized|dispersed");
    sample_cmd->add_option("--out-dir", s_out_dir, "output directory")->required();

    // ---- exact ----
    auto* exact_cmd =
        app.add_subcommand("exact", "exact enumeration and sandwich bound");
    std::string e_graph, e_out;
    double e_beta = 1.0, e_alpha = 0.0, e_c = 3.0;
    exact_cmd->add_option("--graph", e_graph, "graph file")->required();
    exact_cmd->add_option("--beta", e_beta, "within-group coupling")->required();
    exact_cmd->add_option("--alpha", e_alpha, "between-group coupling")->required();
    exact_cmd->add_option("--gamma-c", e_c, "concentration constant c");
    exact_cmd->add_option("--out", e_out, "output file (default stdout)");

    // ---- phase ----
    auto* phase_cmd = app.add_subcommand("phase", "phase classification");
    double ph_beta = 1.0, ph_alpha = 0.0, ph_a = 1.0;
    std::string ph_out;
    phase_cmd->add_option("--beta", ph_beta, "within-group coupling")->required();
    phase_cmd->add_option("--alpha", ph_alpha, "between-group coupling")->required();
    phase_cmd->add_option("--a", ph_a, "limit ratio q/p")->required();
    phase_cmd->add_option("--out", ph_out, "output file (default stdout)");

    // ---- rate ----
    auto* rate_cmd = app.add_subcommand("rate", "rate function on a grid");
    double r_beta = 1.0, r_lambda = 0.0;
    int r_grid = 101;
    std::string r_out;
    rate_cmd->add_option("--beta", r_beta, "within-group coupling")->required();
    rate_cmd->add_option("--lambda", r_lambda, "reference coupling alpha*a")
        ->required();
    rate_cmd->add_option("--grid", r_grid, "grid points per axis");
    rate_cmd->add_option("--out", r_out, "output file (default stdout)");

    // ---- free-energy ----
    auto* fe_cmd = app.add_subcommand("free-energy", "variational free energy");
    double f_beta = 1.0, f_lambda = 0.0;
    std::optional<int> f_n;
    std::string f_out;
    fe_cmd->add_option("--beta", f_beta, "within-group coupling")->required();
    fe_cmd->add_option("--lambda", f_lambda, "reference coupling alpha*a")
        ->required();
    fe_cmd->add_option("--n", f_n, "also report (1/n) log Z~ at this size");
    fe_cmd->add_option("--out", f_out, "output file (default stdout)");

    // ---- sweep ----
    auto* sweep_cmd =
        app.add_subcommand("sweep", "grid sweep over beta and alpha*a");
    std::string w_config, w_out;
    sweep_cmd->add_option("--config", w_config, "sweep config JSON")->required();
    sweep_cmd->add_option("--out", w_out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // bad flags count as invalid config
    }

    if (graph_cmd->parsed()) {
        const auto g =
            blockspin::gen_graph(g_n, g_p, g_q, g_seed, !g_undirected);
        g.save(g_out);
        const auto [within, between] = blockspin::edge_counts(g);
        std::cout << "wrote " << g_out << " (within=" << within
                  << ", between=" << between << ")\n";
        return 0;
    }

    if (sample_cmd->parsed()) {
        blockspin::ExperimentConfig cfg;
        if (!s_config.empty())
            cfg = blockspin::ExperimentConfig::from_json(read_file(s_config));
        if (s_n) cfg.n = *s_n;
        if (s_p) cfg.p = *s_p;
        if (s_q) cfg.q = *s_q;
        if (s_beta) cfg.beta = *s_beta;
        if (s_alpha) cfg.alpha = *s_alpha;
        if (s_a) cfg.a_override = *s_a;
        if (s_chains) cfg.chains = *s_chains;
        if (s_sweeps) cfg.sweeps = *s_sweeps;
        if (s_burnin) cfg.burnin = *s_burnin;
        if (s_thin) cfg.thin = *s_thin;
        if (s_seed) cfg.base_seed = *s_seed;
        if (s_gseed) cfg.graph_seed = *s_gseed;
        if (!s_graph_file.empty()) cfg.graph_file = s_graph_file;
        if (!s_init.empty()) cfg.init = blockspin::init_policy_from_name(s_init);
        const auto summary = blockspin::run_experiment(cfg, s_out_dir);
        std::cout << "phase " << blockspin::phase_name(summary.prediction.phase)
                  << ", pooled mean |m1| " << fmt(summary.pooled.mean_abs_m1)
                  << ", |m2| " << fmt(summary.pooled.mean_abs_m2) << ", "
                  << summary.pooled.samples << " samples";
        if (summary.insufficient_samples) std::cout << " (insufficient samples)";
        std::cout << "\n";
        return 0;
    }

    if (exact_cmd->parsed()) {
        const auto g = blockspin::BlockGraph::load(e_graph);
        blockspin::ModelParams params;
        params.beta = e_beta;
        params.alpha = e_alpha;
        params.p = g.p();
        params.q = g.q();
        params.validate();
        const auto sw = blockspin::sandwich_check(g, params, e_c);
        const auto dist = blockspin::enumerate_gibbs(g, params);
        json out;
        out["log_Z"] = sw.log_z;
        out["log_Z_tilde"] = sw.log_z_complete;
        out["bound"] = sw.bound;
        out["lower_slack"] = sw.lower_slack;
        out["upper_slack"] = sw.upper_slack;
        json rows = json::array();
        for (const auto& r : dist.rows()) rows.push_back({r[0], r[1], r[2]});
        out["distribution"] = rows;
        write_output(e_out, out.dump(2) + "\n");
        return 0;
    }

    if (phase_cmd->parsed()) {
        const auto d = blockspin::classify_phase(ph_beta, ph_alpha * ph_a);
        write_output(ph_out, diagnosis_json(d).dump(2) + "\n");
        return 0;
    }

    if (rate_cmd->parsed()) {
        if (r_grid < 2) throw std::invalid_argument("--grid must be >= 2");
        const auto ls = blockspin::rate_landscape(r_beta, r_lambda);
        std::string body = "x1,x2,J\n";
        for (int i = 0; i < r_grid; ++i) {
            const double x1 = -0.5 + i / double(r_grid - 1);
            for (int j = 0; j < r_grid; ++j) {
                const double x2 = -0.5 + j / double(r_grid - 1);
                body += fmt(x1);
                body += ',';
                body += fmt(x2);
                body += ',';
                body += fmt(ls.rate(x1, x2));
                body += '\n';
            }
        }
        write_output(r_out, body);
        return 0;
    }

    if (fe_cmd->parsed()) {
        json out;
        out["beta"] = f_beta;
        out["lambda"] = f_lambda;
        out["f_variational"] = blockspin::free_energy_variational(f_beta, f_lambda);
        if (f_n) {
            const double per_n =
                blockspin::log_partition_complete(*f_n, f_beta, f_lambda) / *f_n;
            out["n"] = *f_n;
            out["log_Z_complete_per_n"] = per_n;
            out["gap"] = std::abs(per_n - out["f_variational"].get<double>());
        }
        write_output(f_out, out.dump(2) + "\n");
        return 0;
    }

    if (sweep_cmd->parsed()) {
        const std::string text = read_file(w_config);
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("bad sweep config: ") +
                                        e.what());
        }
        blockspin::SweepSpec spec;
        spec.base = blockspin::ExperimentConfig::from_json(text);
        if (!j.contains("beta_grid") || !j.contains("alpha_a_grid"))
            throw std::invalid_argument(
                "sweep config needs beta_grid and alpha_a_grid arrays");
        spec.betas = j["beta_grid"].get<std::vector<double>>();
        spec.alpha_as = j["alpha_a_grid"].get<std::vector<double>>();
        const auto rows = blockspin::run_sweep(spec);
        write_output(w_out, blockspin::sweep_csv(rows));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const blockspin::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const blockspin::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
