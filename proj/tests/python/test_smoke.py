import math

import pytest

import blockspin as bs


def test_graph_roundtrip(tmp_path):
    g = bs.gen_graph(16, 0.5, 0.25, seed=42)
    within, between = g.edge_counts()
    assert 0 < within < 2 * 8 * 7
    assert 0 < between < 2 * 8 * 8
    path = tmp_path / "graph.json"
    g.save(str(path))
    back = bs.BlockGraph.load(str(path))
    assert back == g
    assert back.to_json() == g.to_json()


def test_graph_validation():
    with pytest.raises(ValueError):
        bs.gen_graph(5, 0.5, 0.5, seed=1)
    with pytest.raises(ValueError):
        bs.gen_graph(4, 0.0, 0.5, seed=1)


def test_magnetization_and_link_counts():
    sigma = bs.SpinConfig([+1, +1, -1, -1])
    assert bs.magnetization(sigma) == (1.0, -1.0)
    assert bs.link_counts(sigma) == (8, 0, 8)


def test_energies_agree_on_complete_graph():
    g = bs.gen_graph(8, 1.0, 1.0, seed=7)
    params = bs.ModelParams(beta=1.9, alpha=0.8)
    sigma = bs.SpinConfig.all_plus(8)
    gap = bs.energy_random(g, params, sigma) - bs.energy_complete(
        8, 1.9, 0.8, bs.magnetization(sigma)
    )
    assert gap == pytest.approx(1.9 / 2.0, abs=1e-12)


def test_chain_and_detailed_balance():
    g = bs.gen_graph(10, 0.6, 0.3, seed=3)
    params = bs.ModelParams(beta=1.5, alpha=0.4, p=0.6, q=0.3)
    assert bs.detailed_balance_check(g, params) < 1e-12
    trace = bs.run_chain(g, params, sweeps=500, burnin=100, thin=2, seed=9)
    assert len(trace) == 200
    again = bs.run_chain(g, params, sweeps=500, burnin=100, thin=2, seed=9)
    assert trace == again  # reproducible

    explicit = bs.run_chain(
        g, params, sweeps=10, burnin=0, thin=1, seed=1, init=[1] * 5 + [-1] * 5
    )
    assert len(explicit) == 10
    with pytest.raises(ValueError):
        bs.run_chain(g, params, sweeps=10, burnin=0, thin=1, seed=1, init=[1, -1])


def test_exact_enumeration():
    g = bs.gen_graph(10, 1.0, 1.0, seed=5)
    params = bs.ModelParams(beta=1.2, alpha=0.3)
    dist = bs.enumerate_gibbs(g, params)
    assert dist.total() == pytest.approx(1.0, abs=1e-12)
    ref = bs.enumerate_gibbs_complete(10, 1.2, 0.3)
    assert dist.total_variation(ref) < 1e-9  # same law up to a constant shift
    with pytest.raises(bs.ResourceLimitError):
        bs.enumerate_gibbs(bs.BlockGraph.empty(22), bs.ModelParams(beta=1.0))


def test_meanfield_predictions():
    assert bs.cw_fixed_point(0.8) == 0.0
    z = bs.cw_fixed_point(2.0)
    assert z == pytest.approx(0.957504, abs=1e-6)
    diag = bs.classify_phase(3.0, 0.5)
    assert diag.phase == "AlignedTwoPoint"
    assert len(diag.limit_points) == 2
    mins = bs.rate_minimizers(3.0, 0.5)
    assert len(mins) == 2
    assert mins[0][0] == pytest.approx(diag.z_star, abs=1e-8)
    assert bs.free_energy_variational(1e-9, 0.0) == pytest.approx(
        math.log(2.0), abs=1e-12
    )


def test_free_energy_matches_finite_size():
    f = bs.free_energy_variational(3.0, 0.5)
    per_n = bs.log_partition_complete(2000, 3.0, 0.5) / 2000.0
    assert abs(per_n - f) < 5e-3


def test_sandwich_and_entropy():
    g = bs.gen_graph(12, 0.6, 0.3, seed=11)
    sw = bs.sandwich_check(g, bs.ModelParams(beta=2.0, alpha=1.0, p=0.6, q=0.3))
    assert sw.lower_slack > 0.0
    assert sw.upper_slack > 0.0
    assert bs.rel_entropy(0.5, 0.5) == pytest.approx(0.0, abs=1e-15)
    assert bs.spin_entropy(1.0) == pytest.approx(math.log(2.0))


def test_experiment_bundle(tmp_path):
    cfg = bs.ExperimentConfig.from_json(
        """
        {"n": 12, "p": 1.0, "q": 1.0, "beta": 1.0, "alpha": 0.0,
         "chains": 2, "sweeps": 300, "burnin": 100, "thin": 2,
         "base_seed": 5, "graph_seed": 3, "init": "random"}
        """
    )
    out = tmp_path / "run"
    summary = bs.run_experiment(cfg, str(out))
    assert summary["samples"] == 200
    assert not summary["insufficient_samples"]
    assert summary["phase"] == "Paramagnetic"
    for name in ("config.json", "graph.json", "trace_000.csv", "summary.json"):
        assert (out / name).exists()


def test_nested_family():
    graphs = bs.gen_nested([1, 0.8, 0.6, 0.5], [1, 0.7, 0.5, 0.4], seed=2, upto=4)
    assert [g.n for g in graphs] == [2, 4]
    # containment on the shared agents
    small, big = graphs
    for va in range(big.n):
        for vb in range(big.n):
            a = bs.nested_agent_of_vertex(va, big.n)
            b = bs.nested_agent_of_vertex(vb, big.n)
            if a >= small.n or b >= small.n:
                continue
            pa = bs.nested_vertex_of_agent(a, small.n)
            pb = bs.nested_vertex_of_agent(b, small.n)
            if big.has_between_edge(va, vb):
                assert small.has_between_edge(pa, pb)
