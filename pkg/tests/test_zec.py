import math

import numpy as np
import pytest

from conftest import random_instances
from hyperc.hypergraph import ConvergenceError, NotConnectedError, UniformHypergraph
from hyperc.models import sunflower, sunflower_zec_family
from hyperc.tensor import apply
from hyperc.zec import (
    ZecOptions,
    ZEigenpair,
    classify_stability,
    is_boundary,
    options_dict,
    random_starts,
    restart_vectors,
    sshopm,
    zec,
    zec_single,
)


def test_single_edge(single_edge):
    pair = zec_single(single_edge, np.ones(3))
    np.testing.assert_allclose(pair.vector, [1 / math.sqrt(3)] * 3, atol=1e-12)
    assert pair.eigenvalue == pytest.approx(2 / math.sqrt(3), abs=1e-12)
    # projected Hessian is 2*T[x] - lambda*I on the complement of x, i.e. -4/sqrt(3) I
    assert pair.stability == "negative-stable"


def test_single_edge_ensemble(single_edge):
    res, ens = zec(single_edge, ZecOptions(restarts=10))
    np.testing.assert_allclose(res.scores, [1 / 3] * 3, atol=1e-12)
    assert ens.counts == [10] and ens.failed == 0 and ens.rejected == 0


def test_sunflower_uniform_start_reaches_sqrt_r():
    h = sunflower(4, 5)
    pair = zec_single(h, np.ones(h.n))
    assert pair.vector[0] / pair.vector[1] == pytest.approx(math.sqrt(5), abs=1e-6)
    assert pair.stability == "unstable"


def test_fixture_uniform_perturbation_returns(fixture_pair):
    h, ref = fixture_pair
    pair = zec_single(h, ref.vector + 1e-3)
    assert np.linalg.norm(pair.vector - ref.vector) <= 1e-6


def test_fixture_random_perturbation_escapes(fixture_pair):
    h, ref = fixture_pair
    rng = np.random.default_rng(1)
    pair = zec_single(h, ref.vector + 1e-3 * rng.uniform(-1, 1, h.n), ZecOptions(max_iters=50_000))
    assert np.linalg.norm(pair.vector - ref.vector) > 1e-2
    assert pair.stability == "negative-stable"


def test_sshopm_single_edge(single_edge):
    pair = sshopm(single_edge, [0.2, 0.5, 0.9])
    np.testing.assert_allclose(pair.vector, [1 / math.sqrt(3)] * 3, atol=1e-8)


def test_sshopm_symmetric_start_keeps_symmetry():
    h = sunflower(4, 5)
    pair = sshopm(h, np.ones(h.n))
    assert pair.vector[0] / pair.vector[1] == pytest.approx(math.sqrt(5), abs=1e-6)


def test_sshopm_misses_unstable_fixture(fixture_pair):
    h, ref = fixture_pair
    for x0 in random_starts(h.n, 50, seed=3):
        pair = sshopm(h, x0, alpha=1.0, classify=False)
        assert np.linalg.norm(pair.vector - ref.vector) > 1e-2


def test_zec_sunflower_single_cluster():
    h = sunflower(4, 3)
    res, ens = zec(h, ZecOptions(restarts=12))
    assert len(ens.pairs) == 1 and ens.counts == [1]
    assert ens.rejected + ens.failed == 11
    assert res.scores[0] / res.scores[1] == pytest.approx(math.sqrt(3), abs=1e-6)


def test_zec_three_uniform_sunflower_has_many_clusters():
    h = sunflower(3, 2)
    res, ens = zec(h, ZecOptions(restarts=20))
    assert len(ens.pairs) >= 2
    for p in ens.pairs:
        x = p.vector
        # member of the family: core squared equals the summed petal squares
        assert x[0] ** 2 == pytest.approx(x[1] ** 2 + x[3] ** 2, abs=1e-7)
        assert p.stability == "degenerate"


@pytest.mark.parametrize("petals", [[1.0], [1.0, 2.0], [0.3, 0.5, 4.0]])
def test_three_uniform_family_is_eigenvector(petals):
    h = sunflower(3, len(petals))
    x = sunflower_zec_family(petals)
    x = x / np.linalg.norm(x)
    y = apply(h, x)
    lam = x @ y
    assert np.linalg.norm(y - lam * x) <= 1e-12


def test_classify_fixture_unstable(fixture_pair):
    h, ref = fixture_pair
    assert classify_stability(h, ref) == "unstable"


def test_classify_requires_unit_vector(fixture_pair):
    h, ref = fixture_pair
    with pytest.raises(ValueError):
        classify_stability(h, ZEigenpair(2 * ref.vector, ref.eigenvalue, 0.0))


def test_scale_covariance():
    h = random_instances(31, 1, n_range=(8, 15))[0]
    x0 = np.random.default_rng(0).uniform(0.1, 1, h.n)
    a = zec_single(h, x0)
    b = zec_single(h, 2 * x0)
    np.testing.assert_allclose(a.vector, b.vector, atol=1e-12)


def test_deterministic_and_threaded():
    h = random_instances(31, 1)[0]
    r1, e1 = zec(h, ZecOptions(restarts=16, seed=4))
    r2, e2 = zec(h, ZecOptions(restarts=16, seed=4))
    r3, e3 = zec(h, ZecOptions(restarts=16, seed=4, threads=4))
    assert r1.scores.tolist() == r2.scores.tolist() == r3.scores.tolist()
    assert e1.report() == e2.report() == e3.report()


def test_restart_vectors():
    opts = ZecOptions(restarts=5, seed=9)
    X = restart_vectors(6, opts)
    np.testing.assert_allclose(X[0], np.full(6, 1 / math.sqrt(6)))
    np.testing.assert_allclose(np.linalg.norm(X, axis=1), 1.0)
    assert (X > 0).all()
    Y = restart_vectors(6, ZecOptions(restarts=5, seed=9, uniform_first=False))
    np.testing.assert_array_equal(X[1:], Y[1:])


def test_is_boundary():
    h = sunflower(4, 2)
    # one live petal: a nonnegative eigenvector with zero entries
    x = np.array([1, 1, 1, 1, 0, 0, 0], dtype=float) / 2
    lam = x @ apply(h, x)
    assert is_boundary(h, ZEigenpair(x, lam, 0.0), 1e-8)
    pair = zec_single(h, np.ones(h.n))
    assert not is_boundary(h, pair, 1e-8)


def test_report_layout(single_edge):
    _, ens = zec(single_edge, ZecOptions(restarts=3))
    rep = ens.report()
    assert set(rep) == {"chosen", "failed", "rejected_nonpositive", "clusters"}
    assert set(rep["clusters"][0]) == {"eigenvalue", "multiplicity", "residual", "stability", "min_entry"}


@pytest.mark.parametrize(
    "kw", [{"algorithm": "power"}, {"step": 0}, {"step": 1.5}, {"alpha": -1}, {"restarts": 0}, {"tol": 0}, {"threads": 0}]
)
def test_option_validation(kw):
    with pytest.raises(ValueError):
        ZecOptions(**kw)


def test_options_dict_round_trips():
    opts = ZecOptions(seed=3, algorithm="sshopm")
    assert ZecOptions(**options_dict(opts)) == opts


def test_errors(single_edge):
    with pytest.raises(NotConnectedError):
        zec(UniformHypergraph.from_edges(3, [[0, 1, 2], [3, 4, 5]]))
    with pytest.raises(ValueError):
        zec_single(single_edge, [-1.0, 1.0, 1.0])
    with pytest.raises(ConvergenceError) as err:
        zec_single(sunflower(4, 5), np.random.default_rng(0).uniform(size=16), ZecOptions(max_iters=2))
    assert err.value.iterations == 2


def test_path_like_input_has_only_boundary_solutions():
    # every restart decays onto a sub-hypergraph and leaves zeros elsewhere
    h = UniformHypergraph.from_edges(3, [[0, 1, 4], [2, 5, 6], [3, 6, 7], [4, 5, 6]])
    with pytest.raises(ConvergenceError, match="20 rejected"):
        zec(h, ZecOptions(restarts=20))
