import itertools
import math

import numpy as np
import pytest

from choimap.core import build_map
from choimap.errors import ConditionNotSaturated, DegenerateEdge
from choimap.geometry import optimal_points_iee
from choimap.optimality import (
    ProductVector,
    SpanningReport,
    classify_case,
    edge_spanning_vectors,
    interior_spanning_vectors,
    random_phase_basis,
    spanning_report,
    tensor_rank,
    vertex_spanning_vector,
    zero_value_check,
)


def basis(i, j):
    t = np.zeros(9)
    t[3 * i + j] = 1
    return t


DIAG_DIFFS = [basis(0, 0) - basis(1, 1), basis(1, 1) - basis(2, 2)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_phase_basis_count_and_rank(n):
    tuples = random_phase_basis(n)
    assert len(tuples) == n * n - n + 1
    rng = np.random.default_rng(n)
    for moduli in (np.ones(n), rng.uniform(0.3, 2.0, n)):
        T = np.array([np.kron(moduli * np.exp(1j * np.array(t)), (moduli * np.exp(1j * np.array(t))).conj()) for t in tuples])
        assert np.linalg.matrix_rank(T, tol=1e-10) == n * n - n + 1


def test_phase_basis_rejects_small_n():
    with pytest.raises(ValueError):
        random_phase_basis(1)


@pytest.mark.parametrize("params", [(1, 1, 1), (2, 1, 0)])
def test_interior_vectors(params):
    m = build_map(*params)
    vs = interior_spanning_vectors(m)
    assert tensor_rank(vs)[0] == 7
    for v in vs:
        assert abs(zero_value_check(m, v)) < 1e-12
        for g in DIAG_DIFFS:
            assert abs(g @ v.tensor) < 1e-12


def test_interior_needs_saturation():
    with pytest.raises(ConditionNotSaturated):
        interior_spanning_vectors(build_map(2, 1, 0.5))


def test_hyperbola_edge_vectors(hyperbola):
    vs = edge_spanning_vectors(hyperbola, 3)
    assert len(vs) == 3 and tensor_rank(vs)[0] == 3
    support = {3 * i + j for i in (1, 2) for j in (1, 2)}
    for v in vs:
        t = v.tensor
        assert np.abs(np.delete(t, sorted(support))).max() == 0
        assert abs(zero_value_check(hyperbola, v)) < 1e-12
        # block entries (22, 23, 32, 33) follow [k, s e^{i eta}, e^{-i eta}/s, 1/k]
        k = t[4] / t[8]
        assert abs(k.imag) < 1e-12 and abs(abs(t[5] * t[7]) - abs(t[4] * t[8])) < 1e-12


def test_choi_edges_degenerate(choi):
    for k in (1, 2, 3):
        with pytest.raises(DegenerateEdge):
            edge_spanning_vectors(choi, k)


def test_same_shape_edge_zero_values(same_shape):
    for k in (2, 3):
        for v in edge_spanning_vectors(same_shape, k):
            assert abs(zero_value_check(same_shape, v)) < 1e-10
    with pytest.raises(ConditionNotSaturated):
        edge_spanning_vectors(same_shape, 1)


def test_vertex_vectors(reduction, choi):
    v = vertex_spanning_vector(reduction, 3)
    np.testing.assert_array_equal(v.tensor, basis(2, 2))
    m = build_map(1.5, 0.75, 0.75, -0.5, 0.25, 0.25)
    assert m.W[2, 2] == 1
    assert abs(zero_value_check(m, vertex_spanning_vector(m, 3))) == 0
    with pytest.raises(ConditionNotSaturated):
        vertex_spanning_vector(choi, 1)


def test_zero_value_examples(reduction, choi):
    u = np.ones(3) / math.sqrt(3)
    assert abs(zero_value_check(reduction, ProductVector(u, u, "interior"))) < 1e-15
    assert abs(zero_value_check(choi, ProductVector(u, u, "interior"))) < 1e-15
    e1 = np.array([1, 0, 0], dtype=complex)
    assert zero_value_check(reduction, ProductVector(e1, e1, "vertex_1")) == 0


def test_spanning_reduction(reduction):
    r = spanning_report(reduction)
    assert r.rank == 9 and r.optimal_by_spanning and r.case_label == "ivv"
    assert r.singular_values[-1] / r.singular_values[0] > 1e-6


def test_spanning_choi(choi):
    r = spanning_report(choi)
    assert r.rank < 9 and not r.optimal_by_spanning
    assert r.singular_values[-1] / r.singular_values[0] < 1e-12
    assert set(r.skipped) == {"edge_1", "edge_2", "edge_3"}


def test_spanning_hyperbola(hyperbola):
    r = spanning_report(hyperbola)
    assert r.rank == 9
    assert r.singular_values[-1] / r.singular_values[0] > 1e-6


def test_spanning_non_positive():
    r = spanning_report(build_map(1, 0.5, 0.5))
    assert r.case_label == "none" and r.rank == 0 and r.vectors == []


def test_classify_case_examples(hyperbola, same_shape, reduction):
    assert classify_case(hyperbola) == "eee_kye"
    assert classify_case(same_shape) == "eee_sameshape"
    assert classify_case(reduction) == "ivv"
    assert classify_case(build_map(2, 1.5, 0.5)) == "none"


def test_interior_plus_one_edge_adds_one():
    pts = optimal_points_iee(0.7, 0.4)
    for p in pts.points:
        m = build_map(1.9, 0.7, 0.4, *p)
        base = interior_spanning_vectors(m)
        for k in (1, 2, 3):
            try:
                edge = edge_spanning_vectors(m, k)
            except ConditionNotSaturated:
                continue
            assert tensor_rank(base + edge)[0] == 8


def test_global_phase_invariance():
    m = build_map(1.9, 0.7, 0.4, *optimal_points_iee(0.7, 0.4).points[0])
    base = interior_spanning_vectors(m)
    shifted = interior_spanning_vectors(m, [tuple(x + 0.7 for x in t) for t in random_phase_basis(3)])
    assert tensor_rank(base)[0] == tensor_rank(shifted)[0] == tensor_rank(base + shifted)[0] == 7


def test_all_emitted_vectors_are_zeros():
    rng = np.random.default_rng(5)
    count = 0
    while count < 10:
        b, c = rng.uniform(0.2, 1.1, 2)
        try:
            pts = optimal_points_iee(b, c)
        except Exception:
            continue
        count += 1
        for p in pts.points:
            m = build_map(3 - b - c, b, c, *p)
            for v in spanning_report(m).vectors:
                assert abs(zero_value_check(m, v)) < 1e-10


def test_report_round_trip(hyperbola):
    r = spanning_report(hyperbola)
    r2 = SpanningReport.from_dict(r.to_dict())
    assert r2.rank == r.rank and r2.case_label == r.case_label
    np.testing.assert_array_equal(r2.singular_values, r.singular_values)
    for v, w in zip(r.vectors, r2.vectors):
        np.testing.assert_array_equal(v.tensor, w.tensor)


def test_rank_invariant_under_factor_order(hyperbola):
    r = spanning_report(hyperbola)
    swapped = [ProductVector(v.phi.conj(), v.psi.conj(), v.source) for v in r.vectors]
    assert tensor_rank(swapped)[0] == r.rank
