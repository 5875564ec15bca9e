#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "blockspin/entropy.hpp"
#include "blockspin/errors.hpp"
#include "blockspin/exact.hpp"
#include "blockspin/experiment.hpp"
#include "blockspin/glauber.hpp"
#include "blockspin/graph.hpp"
#include "blockspin/hamiltonian.hpp"
#include "blockspin/meanfield.hpp"

namespace py = pybind11;
using namespace blockspin;

namespace {

ModelParams make_params(double beta, double alpha, double p, double q,
                        std::optional<double> a) {
    ModelParams mp;
    mp.beta = beta;
    mp.alpha = alpha;
    mp.p = p;
    mp.q = q;
    mp.a_override = a;
    mp.validate();
    return mp;
}

ChainInit init_from_py(const py::object& init, int n) {
    if (py::isinstance<py::str>(init)) {
        const std::string name = init.cast<std::string>();
        if (name == "all_plus") return ChainInit::all_plus();
        if (name == "all_minus") return ChainInit::all_minus();
        if (name == "random") return ChainInit::random();
        throw std::invalid_argument("init must be all_plus|all_minus|random or "
                                    "a list of +-1 spins");
    }
    auto signs = init.cast<std::vector<int>>();
    if (static_cast<int>(signs.size()) != n)
        throw std::invalid_argument("init spin list has the wrong length");
    return ChainInit::from(SpinConfig::from_signs(signs));
}

std::vector<std::pair<double, double>> points_of(
    const std::vector<Magnetization>& ms) {
    std::vector<std::pair<double, double>> out;
    out.reserve(ms.size());
    for (const auto& m : ms) out.emplace_back(m.m1, m.m2);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-group binary-choice model on a random communication graph";

    py::register_exception<ResourceLimitError>(m, "ResourceLimitError");
    py::register_exception<IoError>(m, "IoError");

    py::class_<BlockGraph>(m, "BlockGraph")
        .def_property_readonly("n", &BlockGraph::n)
        .def_property_readonly("p", &BlockGraph::p)
        .def_property_readonly("q", &BlockGraph::q)
        .def_property_readonly("seed", &BlockGraph::seed)
        .def_property_readonly("directed", &BlockGraph::directed)
        .def("edge_counts", [](const BlockGraph& g) { return edge_counts(g); })
        .def("has_within_edge",
             [](const BlockGraph& g, int i, int j) { return g.eps().get(i, j); })
        .def("has_between_edge",
             [](const BlockGraph& g, int i, int j) { return g.delta().get(i, j); })
        .def("save", &BlockGraph::save)
        .def("to_json", &BlockGraph::to_json)
        .def_static("load", &BlockGraph::load)
        .def_static("from_json", &BlockGraph::from_json)
        .def_static("empty", &BlockGraph::empty, py::arg("n"),
                    py::arg("p") = 1.0, py::arg("q") = 1.0)
        .def("__eq__", [](const BlockGraph& a, const BlockGraph& b) { return a == b; })
        .def("__repr__", [](const BlockGraph& g) {
            return "<BlockGraph n=" + std::to_string(g.n()) + ">";
        });

    m.def("gen_graph", &gen_graph, py::arg("n"), py::arg("p"), py::arg("q"),
          py::arg("seed"), py::arg("directed") = true);

    m.def(
        "gen_nested",
        [](std::vector<double> p_seq, std::vector<double> q_seq,
           std::uint64_t seed, int upto) {
            GraphSequence seq{std::move(p_seq), std::move(q_seq), seed};
            return gen_nested(seq, upto);
        },
        py::arg("p_seq"), py::arg("q_seq"), py::arg("seed"), py::arg("upto"));
    m.def("nested_agent_of_vertex", &nested_agent_of_vertex);
    m.def("nested_vertex_of_agent", &nested_vertex_of_agent);

    py::class_<SpinConfig>(m, "SpinConfig")
        .def(py::init([](const std::vector<int>& signs) {
            return SpinConfig::from_signs(signs);
        }))
        .def_static("all_plus", &SpinConfig::all_plus)
        .def_static("all_minus", &SpinConfig::all_minus)
        .def_property_readonly("n", &SpinConfig::n)
        .def("spin", &SpinConfig::spin)
        .def("to_list", &SpinConfig::to_signs);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init(&make_params), py::arg("beta"), py::arg("alpha") = 0.0,
             py::arg("p") = 1.0, py::arg("q") = 1.0,
             py::arg("a") = std::optional<double>())
        .def_readonly("beta", &ModelParams::beta)
        .def_readonly("alpha", &ModelParams::alpha)
        .def_readonly("p", &ModelParams::p)
        .def_readonly("q", &ModelParams::q)
        .def_property_readonly("a", &ModelParams::a)
        .def_property_readonly("lam", &ModelParams::lambda);

    m.def("magnetization", [](const SpinConfig& s) {
        const Magnetization mm = magnetization(s);
        return std::make_pair(mm.m1, mm.m2);
    });
    m.def("link_counts", [](const SpinConfig& s) {
        const LinkCounts lc = link_counts(s);
        return py::make_tuple(lc.Lb_plus, lc.Lnb_plus, lc.Lnb_minus);
    });

    m.def("energy_random", &energy_random);
    m.def("energy_complete",
          [](int n, double beta, double lambda, std::pair<double, double> mm) {
              return energy_complete(n, beta, lambda, {mm.first, mm.second});
          });
    m.def("energy_gap_bound", &energy_gap_bound);

    m.def("local_field", &local_field);
    m.def("flip_probability", &flip_probability);
    m.def(
        "run_chain",
        [](const BlockGraph& g, const ModelParams& params, std::uint64_t sweeps,
           std::uint64_t burnin, std::uint64_t thin, std::uint64_t seed,
           const py::object& init) {
            const MagnetizationTrace tr = run_chain(
                g, params, sweeps, burnin, thin, seed, init_from_py(init, g.n()));
            std::vector<std::pair<double, double>> out;
            out.reserve(tr.samples.size());
            for (const auto& mm : tr.samples) out.emplace_back(mm.m1, mm.m2);
            return out;
        },
        py::arg("graph"), py::arg("params"), py::arg("sweeps"),
        py::arg("burnin") = 0, py::arg("thin") = 1, py::arg("seed") = 1,
        py::arg("init") = py::str("random"));
    m.def("detailed_balance_check",
          py::overload_cast<const BlockGraph&, const ModelParams&>(
              &detailed_balance_check));

    py::class_<MagnetizationDistribution>(m, "MagnetizationDistribution")
        .def_property_readonly("n", &MagnetizationDistribution::n)
        .def_property_readonly("log_partition",
                               &MagnetizationDistribution::log_partition)
        .def("prob", &MagnetizationDistribution::prob)
        .def("rows", &MagnetizationDistribution::rows)
        .def("total", &MagnetizationDistribution::total)
        .def("total_variation", &MagnetizationDistribution::total_variation);

    m.def("enumerate_gibbs", &enumerate_gibbs);
    m.def("enumerate_gibbs_complete", &enumerate_gibbs_complete);
    m.def("log_partition_random", &log_partition_random);
    m.def("log_partition_complete", &log_partition_complete);

    py::class_<ConcentrationReport>(m, "ConcentrationReport")
        .def_readonly("worst_within", &ConcentrationReport::worst_within)
        .def_readonly("worst_between_plus",
                      &ConcentrationReport::worst_between_plus)
        .def_readonly("worst_between_minus",
                      &ConcentrationReport::worst_between_minus)
        .def_readonly("member", &ConcentrationReport::member)
        .def_readonly("member_fraction", &ConcentrationReport::member_fraction)
        .def_readonly("tested", &ConcentrationReport::tested);
    m.def("concentration_report_all", &concentration_report_all);
    m.def("concentration_report_sampled", &concentration_report_sampled);

    py::class_<SandwichResult>(m, "SandwichResult")
        .def_readonly("log_z", &SandwichResult::log_z)
        .def_readonly("log_z_complete", &SandwichResult::log_z_complete)
        .def_readonly("bound", &SandwichResult::bound)
        .def_readonly("lower_slack", &SandwichResult::lower_slack)
        .def_readonly("upper_slack", &SandwichResult::upper_slack);
    m.def("sandwich_check", &sandwich_check, py::arg("graph"), py::arg("params"),
          py::arg("c") = 3.0);

    m.def("rel_entropy", &rel_entropy);
    m.def("spin_entropy", &spin_entropy);
    m.def("log_binomial", &log_binomial);

    m.def("cw_fixed_point", &cw_fixed_point);
    py::class_<PhaseDiagnosis>(m, "PhaseDiagnosis")
        .def_property_readonly(
            "phase", [](const PhaseDiagnosis& d) { return phase_name(d.phase); })
        .def_readonly("z_star", &PhaseDiagnosis::z_star)
        .def_property_readonly("limit_points", [](const PhaseDiagnosis& d) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& [mm, w] : d.limit_points)
                out.emplace_back(mm.m1, mm.m2, w);
            return out;
        });
    m.def("classify_phase", &classify_phase);

    py::class_<RateLandscape>(m, "RateLandscape")
        .def_readonly("beta", &RateLandscape::beta)
        .def_readonly("lam", &RateLandscape::lambda)
        .def_readonly("sup", &RateLandscape::sup)
        .def_property_readonly(
            "maximizers",
            [](const RateLandscape& ls) { return points_of(ls.maximizers); })
        .def("rate", &RateLandscape::rate);
    m.def("rate_landscape", &rate_landscape);
    m.def("rate_function", &rate_function, py::arg("x1"), py::arg("x2"),
          py::arg("beta"), py::arg("lam"));
    m.def("rate_minimizers", [](double beta, double lambda) {
        return points_of(rate_minimizers(beta, lambda));
    });
    m.def("free_energy_variational", &free_energy_variational);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_static("from_json", &ExperimentConfig::from_json)
        .def("to_json", &ExperimentConfig::to_json);
    m.def(
        "run_experiment",
        [](const ExperimentConfig& cfg, const std::string& out_dir) {
            const TraceSummary s = run_experiment(cfg, out_dir);
            py::dict out;
            out["phase"] = phase_name(s.prediction.phase);
            out["z_star"] = s.prediction.z_star;
            out["mean_abs_m1"] = s.pooled.mean_abs_m1;
            out["mean_abs_m2"] = s.pooled.mean_abs_m2;
            out["corr_sign"] = s.pooled.corr_sign;
            out["assignment_fraction"] = s.pooled.assignment_fraction;
            out["samples"] = s.pooled.samples;
            out["insufficient_samples"] = s.insufficient_samples;
            return out;
        },
        py::arg("config"), py::arg("out_dir") = std::string());
}
