import json
import math

import numpy as np
import pytest

from farpoint import (
    Coordinates,
    EmptySet,
    Euclidean,
    FiniteSet,
    GridFunction,
    IndexOutOfRange,
    InvalidParameter,
    NormOf,
    OneMinusNormPlus,
    PairIndicator,
    SequenceWithLimit,
    SupNormOnK,
    UnsupportedCombination,
    Zero,
    alpha,
    build_ck_family,
    element,
    load_finite_set,
    norm,
    objective_tail_bound,
    perturbation_eval,
)
from farpoint.sets import ck_profile

from conftest import random_grid_function

S = SupNormOnK()


def hat_oracle(t, n):
    """Independent form of x_n: the hat through (0,0), (1/(2n),1), (1/n,0)."""
    t = np.asarray(t, dtype=float)
    return np.clip(1.0 - np.abs(t - 0.5 / n) * 2 * n, 0.0, None)


@pytest.fixture(scope="module")
def ck():
    return build_ck_family(200, extra_grid_points=[0.3])


def test_ck_first_element_is_zero(ck):
    z1 = element(ck, 1)
    assert np.all(z1.values == 0.0)
    assert norm(S, z1) == 0.0


def test_ck_fifth_element_at_its_peak(ck):
    assert element(ck, 5)(0.1) == pytest.approx(0.8, abs=1e-15)


def test_finite_set_indexing(triangle):
    assert element(triangle, 2) == Coordinates((0, 1))
    with pytest.raises(IndexOutOfRange):
        element(triangle, 3)


def test_ck_index_range(ck):
    with pytest.raises(IndexOutOfRange):
        ck.element(0)
    with pytest.raises(IndexOutOfRange):
        ck.element(201)


def test_alpha(triangle, ck):
    # enumeration oracle
    assert alpha(triangle) == max(math.hypot(*p) for p in [(0, 0), (1, 0), (0, 1)])
    assert alpha(ck) == 1.0
    assert alpha(build_ck_family(3)) == 1.0


def test_empty_finite_set():
    with pytest.raises(EmptySet):
        FiniteSet([])


def test_mixed_representations_rejected():
    from farpoint import RepresentationMismatch
    with pytest.raises(RepresentationMismatch):
        FiniteSet([Coordinates((1, 2)), Coordinates((1, 2, 3))])


def test_ck_profile_is_the_hat():
    t = np.linspace(0, 1, 10_001)
    for n in (1, 2, 3, 7, 50, 1000):
        np.testing.assert_allclose(ck_profile(t, n), hat_oracle(t, n), atol=1e-12)


def test_ck_bumps_peak_and_vanish():
    ck = build_ck_family(10)
    for n in range(1, 11):
        xn = ck.unit_element(n)
        assert xn(0.5 / n) == 1.0
        assert xn(0.0) == 0.0
        t = np.linspace(1.0 / n, 1.0, 97)
        assert np.all(xn(t) == 0.0)


def test_ck_pointwise_convergence_at_fixed_t():
    ck = build_ck_family(50)
    vals = [ck.unit_element(n)(0.3) for n in range(1, 51)]
    assert all(v == 0.0 for v in vals[3:])  # n >= 4
    assert vals[2] > 0.0  # n = 3: 0.3 < 1/3


def test_ck_element_norms(ck):
    ns = np.arange(1, 201)
    norms = np.array([norm(S, ck.element(int(n))) for n in ns])
    np.testing.assert_array_equal(norms, 1.0 - 1.0 / ns)
    np.testing.assert_array_equal(ck.norms(S, ns), norms)
    assert np.all(np.diff(norms) > 0) and np.all(norms < 1.0)
    assert np.all(norms <= alpha(ck) + 1e-12)


def test_ck_grid_includes_key_points(ck):
    for n in (1, 4, 13):
        g = ck.grid(n)
        for t in (0.0, 0.5 / n, 1.0 / n, 0.3, 1.0):
            assert t in g


@pytest.mark.parametrize("n_max, extra", [(1, ()), (0, ()), (10, [1.5]), (10, [-0.1])])
def test_build_ck_family_rejects(n_max, extra):
    with pytest.raises(InvalidParameter):
        build_ck_family(n_max, extra)


def test_fast_distances_match_enumeration(ck):
    rng = np.random.default_rng(3)
    ns = np.arange(1, 201)
    for _ in range(20):
        x = random_grid_function(rng, n=int(rng.integers(2, 30)), radius=3.0)
        fast = ck.distances(S, x, ns)
        slow = ck.distances_by_enumeration(S, x, ns)
        np.testing.assert_allclose(fast, slow, atol=1e-12, rtol=0)


def test_tail_bound_ck_constant_two():
    ck = build_ck_family(200)
    assert objective_tail_bound(ck, S, OneMinusNormPlus(), GridFunction.constant(2.0), 100) == 2.0


def test_tail_bound_finite_set_empty(triangle, plane):
    assert objective_tail_bound(triangle, plane, Zero(), Coordinates((1, 1)), 3) == -math.inf


def test_tail_bound_declared():
    seq = SequenceWithLimit(lambda n: Coordinates((1.0 / n,)), 50, [Coordinates((0.0,))],
                            tail_bound=lambda x, f, N: 7.0)
    assert objective_tail_bound(seq, Euclidean(1), Zero(), Coordinates((1.0,)), 10) == 7.0


def test_tail_bound_unregistered():
    ck = build_ck_family(20)
    x = GridFunction([0, 1], [0.5, 2.0])  # dips below 1
    with pytest.raises(UnsupportedCombination):
        objective_tail_bound(ck, S, OneMinusNormPlus(), x, 5)
    line = FiniteSet([Coordinates((v,)) for v in (0.0, 0.5, 1.0)])
    with pytest.raises(UnsupportedCombination):
        objective_tail_bound(line, Euclidean(1), PairIndicator(2), Coordinates((0.2,)), 1)
    with pytest.raises(InvalidParameter):
        objective_tail_bound(line, Euclidean(1), Zero(), Coordinates((0.2,)), 0)


@pytest.mark.parametrize("f", [OneMinusNormPlus(), NormOf(), Zero()])
def test_tail_bound_is_sound_on_ck(f):
    ck = build_ck_family(500)
    rng = np.random.default_rng(7)
    ns = np.arange(1, 501)
    for _ in range(25):
        x = random_grid_function(rng, center=2.0, radius=1.0)
        obj = ck.distances_by_enumeration(S, x, ns) - np.array(
            [perturbation_eval(f, S, ck.element(int(n))) for n in ns])
        for N in (1, 10, 100, 499):
            assert obj[N:].max() <= objective_tail_bound(ck, S, f, x, N) + 1e-12


def test_tail_bound_is_sound_on_finite_sets(plane):
    rng = np.random.default_rng(11)
    for _ in range(50):
        pts = [Coordinates(p) for p in rng.normal(size=(12, 2))]
        C = FiniteSet(pts)
        x = Coordinates(rng.normal(size=2) * 3)
        for f in (Zero(), NormOf()):
            obj = [norm(plane, x - z) - perturbation_eval(f, plane, z) for z in pts]
            for N in (1, 5, 11):
                assert max(obj[N:]) <= objective_tail_bound(C, plane, f, x, N) + 1e-12


def test_load_finite_set(tmp_path):
    doc = json.dumps({"dimension": 2, "points": [[0, 0], [1, 0], [0, 1]]})
    C = load_finite_set(doc)
    assert C.size == 3 and C.element(1) == Coordinates((1, 0))
    p = tmp_path / "pts.json"
    p.write_text(doc)
    assert load_finite_set(p).size == 3
    with pytest.raises(InvalidParameter):
        load_finite_set(json.dumps({"dimension": 3, "points": [[0, 0]]}))
    with pytest.raises(InvalidParameter):
        load_finite_set(json.dumps({"points": [[0, 0]]}))
    with pytest.raises(EmptySet):
        load_finite_set(json.dumps({"dimension": 2, "points": []}))


def test_sequence_with_limit_alpha():
    seq = SequenceWithLimit(lambda n: Coordinates((1.0 - 1.0 / n,)), 100, [Coordinates((1.0,))],
                            tail_bound=lambda x, f, N: 0.0)
    assert alpha(seq) == 1.0
    seq2 = SequenceWithLimit(lambda n: Coordinates((1.0 / n,)), 10, [Coordinates((0.0,))],
                             tail_bound=lambda x, f, N: 0.0, alpha_bound=3.0)
    assert alpha(seq2) == 3.0
