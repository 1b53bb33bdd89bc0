import json
import math
import os
import subprocess

import numpy as np
import pytest

import exind

M_BLK = exind.ExponentMeasure(3, [([0.5, 0.5, 0.0], 2.0), ([0.0, 0.0, 1.0], 1.0)])
M_DEP = exind.ExponentMeasure(2, [([0.5, 0.5], 2.0)])


def test_measure_basics():
    assert M_BLK.dim == 3
    assert len(M_BLK) == 2
    assert M_BLK.faces == [[0, 1], [2]]
    assert exind.exponent_function(M_BLK, [1.0, 2.0, 1.0]) == pytest.approx(2.0)
    assert exind.margins(M_BLK) == pytest.approx([1.0, 1.0, 1.0])
    assert exind.parse_measure(M_BLK.to_json()) == M_BLK
    assert exind.validate(exind.ExponentMeasure(2, [([0.0, 0.0], 1.0)])) == ["AllZeroDirection(atom 0)"]


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        exind.parse_measure("{")
    with pytest.raises(ValueError):
        exind.margins(exind.ExponentMeasure(2, [([1.0, 0.0], 1.0)]))


def test_check_and_graph():
    report = exind.check(M_BLK, [0, 1], [2])
    assert report["cond_i"] and report["new_notion"] and report["agree"]
    assert not exind.check(M_DEP, [0], [1])["cond_i"]
    assert exind.finest_partition(M_BLK) == [[0, 1], [2]]
    assert exind.build_graph(M_BLK)["components"] == [[1, 2], [3]]
    assert exind.certify_partition_bruteforce(M_BLK)
    assert exind.joint_exceedance_mass(M_DEP, [0], [1], [1.0, 1.0]) == pytest.approx(1.0)


def test_conditional_law():
    law = exind.build_conditional(M_DEP, 0)
    assert law.weights == pytest.approx([1.0])
    assert law.r_min == pytest.approx([2.0])
    assert law.rectangle_probability([2.0, 2.0]) == pytest.approx(0.5)


def test_sampling_and_estimation():
    x = exind.sample_max_stable(M_BLK, 20000, seed=3)
    assert x.shape == (20000, 3)
    assert np.array_equal(x, exind.sample_max_stable(M_BLK, 20000, seed=3))
    chi = exind.chi_empirical(x, 0.95)
    assert abs(chi[0, 1] - 1.0) < 0.05
    assert chi[0, 2] < 0.05
    assert exind.chi_exact(M_BLK, 0, 1) == pytest.approx(1.0)

    y = exind.sample_conditional(M_BLK, 0, 1000, seed=4)
    assert np.all(y[:, 2] == 0.0)
    assert np.all(y[:, 0] > 1.0)
    result = exind.factorization_test(y, 0, [0, 1], [2], seed=1)
    assert result["trivially_independent"]

    y = exind.sample_conditional(M_DEP, 0, 2000, seed=5)
    assert exind.factorization_test(y, 0, [0], [1], seed=1)["reject"]


def test_marginal_is_unit_frechet():
    x = exind.sample_max_stable(M_DEP, 100000, seed=9)
    assert np.mean(x[:, 0] <= 1.0) == pytest.approx(math.exp(-1.0), abs=0.01)


def test_crosscheck_and_generator():
    summary = exind.crosscheck(2, 4, 0, 6, 30, 7)
    assert summary["lemma_disagreements"] == 0
    assert summary["theorem_disagreements"] == 0
    m = exind.generate_random_measure(4, 6, ([0, 1], [2, 3]), seed=2)
    assert exind.check(m, [0, 1], [2, 3])["cond_i"]


@pytest.mark.skipif("EXIND_CLI" not in os.environ, reason="command-line tool path not provided")
def test_cli_round_trip(tmp_path):
    cli = os.environ["EXIND_CLI"]
    measure = tmp_path / "blk.json"
    measure.write_text(M_BLK.to_json())
    run = subprocess.run([cli, "check", str(measure), "--A", "1,2", "--C", "3"], capture_output=True, text=True)
    assert run.returncode == 0
    assert json.loads(run.stdout)["agree"]

    samples = tmp_path / "x.csv"
    run = subprocess.run([cli, "simulate", str(measure), "--n", "5000", "--seed", "1", "--out", str(samples)])
    assert run.returncode == 0
    data = np.loadtxt(samples, delimiter=",", skiprows=1)
    assert np.array_equal(data, exind.sample_max_stable(M_BLK, 5000, seed=1))
    assert subprocess.run([cli, "simulate", str(measure), "--n", "5", "--out", str(samples)]).returncode == 2
