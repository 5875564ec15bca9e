#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "blockspin/errors.hpp"
#include "blockspin/experiment.hpp"

using namespace blockspin;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig tiny_config() {
    ExperimentConfig c;
    c.n = 12;
    c.p = 1.0;
    c.q = 1.0;
    c.beta = 1.0;
    c.alpha = 0.0;
    c.chains = 2;
    c.sweeps = 300;
    c.burnin = 100;
    c.thin = 2;
    c.base_seed = 77;
    c.graph_seed = 5;
    c.init = InitPolicy::Random;
    return c;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("blockspin_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config json round trip and overrides") {
    ExperimentConfig c = tiny_config();
    c.a_override = 0.4;
    const auto back = ExperimentConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK(back.params().a() == 0.4);

    CHECK_THROWS_AS(ExperimentConfig::from_json("{nope"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json("{\"init\": \"bogus\"}"),
                    std::invalid_argument);
    // defaults survive a partial config
    const auto partial = ExperimentConfig::from_json("{\"n\": 24}");
    CHECK(partial.n == 24);
    CHECK(partial.thin == ExperimentConfig{}.thin);
}

TEST_CASE("config validation") {
    ExperimentConfig c = tiny_config();
    c.n = 7;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = tiny_config();
    c.burnin = c.sweeps + 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = tiny_config();
    c.chains = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = tiny_config();
    c.q = 0.5;
    c.p = 0.25; // p < q
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("chain init policies") {
    CHECK(chain_init_for(InitPolicy::Symmetrized, 0, 8).kind ==
          ChainInit::Kind::AllPlus);
    CHECK(chain_init_for(InitPolicy::Symmetrized, 1, 8).kind ==
          ChainInit::Kind::AllMinus);
    const auto d2 = chain_init_for(InitPolicy::Dispersed, 2, 8);
    REQUIRE(d2.kind == ChainInit::Kind::Given);
    CHECK(d2.given.spin(0) == 1);
    CHECK(d2.given.spin(4) == -1);
    const auto d3 = chain_init_for(InitPolicy::Dispersed, 3, 8);
    CHECK(d3.given.spin(0) == -1);
    CHECK(d3.given.spin(4) == 1);
    CHECK(init_policy_from_name("dispersed") == InitPolicy::Dispersed);
    CHECK(init_policy_name(InitPolicy::AllMinus) == "all_minus");
    CHECK_THROWS_AS(init_policy_from_name("nope"), std::invalid_argument);
}

TEST_CASE("empty schedule flags insufficient samples") {
    ExperimentConfig c = tiny_config();
    c.sweeps = c.burnin;
    const auto s = run_experiment(c);
    CHECK(s.insufficient_samples);
    CHECK(s.pooled.samples == 0);
}

TEST_CASE("experiment writes a reproducible bundle") {
    TempDir t1, t2;
    ExperimentConfig c = tiny_config();
    const auto s = run_experiment(c, t1.path.string());
    CHECK_FALSE(s.insufficient_samples);
    CHECK(s.pooled.samples == 2 * 100);

    for (const char* name :
         {"config.json", "graph.json", "trace_000.csv", "trace_001.csv",
          "metadata.json", "summary.json"})
        CHECK(fs::exists(t1.path / name));

    const std::string head = slurp(t1.path / "trace_000.csv").substr(0, 11);
    CHECK(head == "sweep,m1,m2");

    // rerun with identical config: byte-identical CSV bodies
    run_experiment(c, t2.path.string());
    CHECK(slurp(t1.path / "trace_000.csv") == slurp(t2.path / "trace_000.csv"));
    CHECK(slurp(t1.path / "trace_001.csv") == slurp(t2.path / "trace_001.csv"));
    CHECK(slurp(t1.path / "graph.json") == slurp(t2.path / "graph.json"));

    // assignment fractions sum to one per chain
    for (const auto& chain : s.chains) {
        double sum = 0.0;
        for (double f : chain.assignment_fraction) sum += f;
        CHECK(sum == doctest::Approx(1.0));
    }

    // the prediction embedded in the summary is classify_phase's
    const auto expected = classify_phase(c.beta, c.params().lambda());
    CHECK(s.prediction.phase == expected.phase);
    REQUIRE(s.prediction.limit_points.size() == expected.limit_points.size());
    for (std::size_t k = 0; k < expected.limit_points.size(); ++k)
        CHECK(s.prediction.limit_points[k].first.m1 ==
              expected.limit_points[k].first.m1);
}

TEST_CASE("experiment can reload its own graph file") {
    TempDir t;
    ExperimentConfig c = tiny_config();
    run_experiment(c, t.path.string());

    ExperimentConfig c2 = tiny_config();
    c2.graph_file = (t.path / "graph.json").string();
    c2.n = 10;  // the loaded graph is authoritative
    c2.p = 0.5; // (n, p, q) are adopted from the file
    c2.q = 0.4;
    const auto s = run_experiment(c2);
    CHECK(s.pooled.samples == 200);

    c2.graph_file = (t.path / "missing.json").string();
    CHECK_THROWS_AS(run_experiment(c2), IoError);
}

TEST_CASE("sweep over a single cell reduces to one experiment") {
    SweepSpec spec;
    spec.base = tiny_config();
    spec.betas = {1.0};
    spec.alpha_as = {0.0};
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);

    const auto direct = run_experiment(tiny_config());
    CHECK(rows[0].mean_abs_m1 == doctest::Approx(direct.pooled.mean_abs_m1));
    CHECK(rows[0].phase == "Paramagnetic");

    const std::string csv = sweep_csv(rows);
    CHECK(csv.rfind("beta,alpha_a,phase,z_star,", 0) == 0);

    SweepSpec empty = spec;
    empty.betas.clear();
    CHECK_THROWS_AS(run_sweep(empty), std::invalid_argument);
}

TEST_CASE("sweep crossing the boundary picks up magnetization") {
    // small-n analogue of the phase-boundary crossing: mean |m| jumps
    SweepSpec spec;
    spec.base = tiny_config();
    spec.base.n = 40;
    spec.base.sweeps = 3000;
    spec.base.burnin = 500;
    spec.base.chains = 2;
    spec.betas = {0.5, 3.5};
    spec.alpha_as = {0.4};
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].mean_abs_m1 < rows[1].mean_abs_m1);
    CHECK(rows[1].mean_abs_m1 > 0.5);
    CHECK(rows[0].phase == "Paramagnetic");
    CHECK(rows[1].phase == "AlignedTwoPoint");
}
