import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from choimap.core import _apply_unchecked, build_map, from_matrix
from choimap.errors import EmptyIndexSet, NegativeRadicand
from choimap.geometry import region_scan
from choimap.positivity import (
    ConditionReport,
    PositivityVerdict,
    classify_positivity,
    condition_report,
    edge_functions,
    edge_gradients,
    finite_difference_gradients,
    gradient_deviation,
    hessian_radius,
    min_eigenvalue,
    min_minor_scan,
    minor,
    projected_edge_gradients,
    simplex_grid,
)

from conftest import saturated_edge_point


def edge_from_matrix(W, p, q):
    # independent transcription: sqrt((w_pp-1)(w_qq-1)) + sqrt(w_pq w_qp)
    return math.sqrt((W[p, p] - 1) * (W[q, q] - 1)) + math.sqrt(W[p, q] * W[q, p])


def test_report_choi(choi):
    rep = condition_report(choi)
    assert rep.interior_value == 0
    np.testing.assert_allclose(rep.edge_values, 0, atol=1e-15)
    assert rep.vertex_values == (1, 1, 1)
    assert rep.saturated == {"interior", "edge_1", "edge_2", "edge_3"}
    assert rep.hessian_holds


def test_report_reduction(reduction):
    rep = condition_report(reduction)
    assert rep.vertex_values == (0, 0, 0)
    assert rep.interior_value == 0
    np.testing.assert_allclose(rep.edge_values, 0, atol=1e-15)
    assert rep.saturated == {"interior", "vertex_1", "vertex_2", "vertex_3", "edge_1", "edge_2", "edge_3"}


def test_hessian_radius_hand_value():
    # sqrt((1.7 - 2.8)^2 + 3 * 0.16) = sqrt(1.69) = 1.3
    m = build_map(1.7, 0.9, 0.5)
    rep = condition_report(m)
    assert abs(rep.r_h - 1.8 / math.sqrt(6)) < 1e-12
    assert abs(rep.delta - 0.4) < 1e-15


@settings(max_examples=50)
@given(st.floats(1.0, 3.0), st.floats(0.3, 2.0), st.floats(0.3, 2.0), st.floats(-0.25, 0.25), st.floats(-0.25, 0.25))
def test_edge_values_match_matrix_form(a, b, c, d, e):
    assume(min(b, c) + min(d, e, -d - e) >= 0)
    m = build_map(a, b, c, d, e, -d - e)
    W = m.W
    if min(np.diag(W)) < 1:
        return
    F = edge_functions(m)
    expected = (edge_from_matrix(W, 0, 1), edge_from_matrix(W, 0, 2), edge_from_matrix(W, 1, 2))
    np.testing.assert_allclose(F, expected, rtol=1e-12)


def test_edge_function_examples(choi, reduction, hyperbola):
    for m in (choi, reduction, hyperbola):
        np.testing.assert_allclose(edge_functions(m), 1.0, atol=1e-15)
    with pytest.raises(NegativeRadicand):
        edge_functions(build_map(1.2, 1, 1, 0.3, 0, -0.3))


@given(st.floats(1.0, 3.0), st.floats(0, 2), st.floats(0, 2))
def test_edges_at_origin(a, b, c):
    F = edge_functions(build_map(a, b, c))
    np.testing.assert_allclose(F, a - 1 + math.sqrt(b * c), rtol=1e-12, atol=1e-15)


def test_minor_examples(reduction, choi):
    rng = np.random.default_rng(0)
    for _ in range(5):
        x = rng.dirichlet(np.ones(3))
        assert abs(minor(reduction, [1], x) - (1 - x[0])) < 1e-15
    assert abs(minor(choi, (1, 2, 3), [1 / 3] * 3)) < 1e-15
    m = build_map(1, 0.5, 0.5)
    assert abs(minor(m, (1, 2, 3), [1 / 3] * 3) - (8 / 27 - 12 / 27)) < 1e-15
    with pytest.raises(EmptyIndexSet):
        minor(m, [], [1, 0, 0])


@settings(max_examples=40)
@given(st.floats(1.0, 2.5), st.floats(0.2, 1.5), st.floats(0.2, 1.5), st.floats(-0.2, 0.2), st.floats(-0.2, 0.2))
def test_minor_is_principal_determinant(a, b, c, d, e):
    assume(min(b, c) + min(d, e, -d - e) >= 0)
    m = build_map(a, b, c, d, e, -d - e)
    rng = np.random.default_rng(7)
    x = rng.dirichlet(np.ones(3))
    M = _apply_unchecked(m.W, np.outer(np.sqrt(x), np.sqrt(x)))
    for r in (1, 2, 3):
        for I in itertools.combinations((1, 2, 3), r):
            idx = [i - 1 for i in I]
            det = np.linalg.det(M[np.ix_(idx, idx)])
            assert abs(minor(m, I, x) - det) < 1e-10


@settings(max_examples=30)
@given(st.permutations([0, 1, 2]), st.floats(1.0, 2.5), st.floats(0.2, 1.5), st.floats(0.2, 1.5), st.floats(-0.2, 0.2), st.floats(-0.2, 0.2))
def test_minor_permutation_symmetry(perm, a, b, c, d, e):
    assume(min(b, c) + min(d, e, -d - e) >= 0)
    m = build_map(a, b, c, d, e, -d - e)
    P = np.eye(3)[list(perm)]
    mp = from_matrix(P @ m.W @ P.T)
    x = np.array([0.2, 0.5, 0.3])
    inv = {old + 1: new + 1 for new, old in enumerate(perm)}
    for r in (1, 2, 3):
        for I in itertools.combinations((1, 2, 3), r):
            J = sorted(inv[i] for i in I)
            assert abs(minor(m, I, x) - minor(mp, J, P @ x)) < 1e-10


def test_simplex_grid():
    X = simplex_grid(4)
    assert len(X) == 15
    np.testing.assert_allclose(X.sum(axis=1), 1.0)
    assert (X >= 0).all()


def test_scan_examples(choi, reduction):
    r = min_minor_scan(choi, 60)
    assert abs(r.value) < 1e-8
    # the global minimum 0 is shared by the centre and simplex vertices
    assert abs(minor(choi, (1, 2, 3), [1 / 3] * 3)) < 1e-12
    assert min_minor_scan(build_map(1, 0.5, 0.5), 60).value < -1e-3
    r = min_minor_scan(reduction, 60)
    assert abs(r.value) < 1e-12


def test_scan_is_deterministic_and_on_simplex():
    m = build_map(1.2, 0.7, 0.6, 0.1, 0.05, -0.15)
    r1, r2 = min_minor_scan(m, 30), min_minor_scan(m, 30)
    assert r1 == r2
    assert abs(sum(r1.x) - 1) < 1e-12 and min(r1.x) >= 0
    assert abs(minor(m, r1.index_set, r1.x) - r1.value) < 1e-15
    with pytest.raises(ValueError):
        min_minor_scan(m, 1)


def test_classify_examples(choi):
    assert classify_positivity(choi).kind == "positive"
    v = classify_positivity(build_map(1, 0.5, 0.5))
    assert v.kind == "not_positive"
    assert minor(build_map(1, 0.5, 0.5), v.index_set, v.witness) < -1e-9


def test_unknown_outside_hessian():
    a, b, c = 1.7, 0.9, 0.5
    recs = [r for r in region_scan(a, b, c, 1.2, 41) if r.positivity == "unknown"]
    assert recs
    kinds = set()
    for r in recs[:: max(1, len(recs) // 15)]:
        m = build_map(a, b, c, r.d, r.e, -r.d - r.e)
        assert not condition_report(m).hessian_holds
        kinds.add(classify_positivity(m).kind)
    assert "positive" not in kinds
    assert "unknown" in kinds


@settings(max_examples=40, deadline=None)
@given(st.floats(0.8, 2.5), st.floats(0, 1.5), st.floats(0, 1.5), st.floats(-0.2, 0.2), st.floats(-0.2, 0.2))
def test_not_positive_carries_witness(a, b, c, d, e):
    try:
        m = build_map(a, b, c, d, e, -d - e)
    except ValueError:
        return
    v = classify_positivity(m, resolution=20)
    if v.kind == "not_positive":
        assert minor(m, v.index_set, v.witness) < -1e-9
        assert abs(sum(v.witness) - 1) < 1e-9
    assert PositivityVerdict.from_dict(v.to_dict()) == v


def test_oracle_equivalence_small_grid():
    g = np.linspace(0.5, 3.0, 6)
    for a, b, c in itertools.product(g, g, g):
        m = build_map(a, b, c)
        v = classify_positivity(m, 30)
        s = min_minor_scan(m, 30).value
        if abs(s) > 1e-7:
            assert (v.kind == "positive") == (s > 0), (a, b, c)


def test_phase_independence():
    rng = np.random.default_rng(3)
    m = build_map(1.5, 0.8, 0.7, 0.1, -0.3, 0.2)
    for _ in range(20):
        x = rng.dirichlet(np.ones(3))
        base = min_eigenvalue(m, np.sqrt(x))
        for _ in range(3):
            ph = np.exp(1j * rng.uniform(0, 2 * np.pi, 3))
            assert abs(min_eigenvalue(m, np.sqrt(x) * ph) - base) < 1e-12


def test_eigenvalue_sign_matches_minors():
    rng = np.random.default_rng(4)
    X = simplex_grid(40)
    for _ in range(15):
        a, b, c = rng.uniform(0.8, 2.2), rng.uniform(0, 1.5), rng.uniform(0, 1.5)
        m = build_map(a, b, c)
        lam = min(min_eigenvalue(m, np.sqrt(x)) for x in X)
        s = min_minor_scan(m, 40).value
        if abs(s) > 1e-6 and abs(lam) > 1e-6:
            assert (lam < 0) == (s < 0)


def test_report_round_trip(same_shape):
    rep = condition_report(same_shape)
    assert ConditionReport.from_dict(rep.to_dict()) == rep


def test_same_shape_gradient_is_radial(same_shape):
    for g in edge_gradients(same_shape):
        np.testing.assert_allclose(g, -3 * np.array(same_shape.plane_point), atol=1e-12)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gradients_match_finite_differences(k):
    rng = np.random.default_rng(10 + k)
    for _ in range(10):
        a, b, c, p = saturated_edge_point(rng, k)
        m = build_map(a, b, c, *p)
        dev, edges = gradient_deviation(m, edges=[k])
        assert dev < 1e-5


def test_gradient_scale_factor():
    m = build_map(1.4, 0.8, 0.8, 0.4, -0.2, -0.2)
    g29 = edge_gradients(m)[1]
    fd = finite_difference_gradients(m)[1]
    # diagonal radicand of F_2 is (a+f-1)(a+d-1) = 0.2 * 0.8
    np.testing.assert_allclose(g29, 6 * math.sqrt(0.16) * fd, rtol=1e-6)
    np.testing.assert_allclose(projected_edge_gradients(m)[1], fd, rtol=1e-6)


def test_circulant_gradients_differ_when_b_ne_c():
    # ellipse point a=1.5, b+c=1.5, bc=0.25 saturates all three edges at the origin
    r = math.sqrt(1.5 ** 2 - 1)
    m = build_map(1.5, (1.5 + r) / 2, (1.5 - r) / 2)
    G = edge_gradients(m)
    for i, j in itertools.combinations(range(3), 2):
        assert np.linalg.norm(G[i] - G[j]) > 1e-3
