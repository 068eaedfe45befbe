"""Positivity of Phi_W: closed-form conditions, principal-minor oracle, edge gradients.

Index conventions: minors take index sets drawn from {1, 2, 3}; edge k and
vertex k are numbered 1..3.  Edge k lives on the simplex edge where
x_{4-k} = 0, i.e. edge 1 couples coordinates (1, 2), edge 2 couples (1, 3) and
edge 3 couples (2, 3).  Its function F_k is

    F_k = sqrt((w_pp - 1)(w_qq - 1)) + sqrt(w_pq w_qp)

which in the (a..f) chart reads F_1 = sqrt((a+f-1)(a+e-1)) + sqrt((b+d)(c+d))
and cyclically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import GeneralizedMap, _apply_unchecked
from .errors import EmptyIndexSet, NegativeRadicand
from .tolerances import DEFAULT_TOL, ToleranceConfig

EDGE_PAIRS = {1: (0, 1), 2: (0, 2), 3: (1, 2)}
# coordinate of (d, e, f) that enters the off-diagonal product of F_k
EDGE_COORD = {1: 0, 2: 1, 3: 2}
SUBSETS = ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3))
CONDITION_LABELS = (
    "vertex_1", "vertex_2", "vertex_3", "edge_1", "edge_2", "edge_3", "interior",
)

# unit vectors of the orthonormal chart on the d+e+f=0 plane
PLANE_U = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
PLANE_V = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)


# -- closed-form conditions --------------------------------------------------

def hessian_radius(a, b, c):
    """Signed radius r_H of the Hessian circle on the d+e+f=0 plane."""
    return (a + b + c - math.sqrt((a - 2 * b - 2 * c) ** 2 + 3 * (b - c) ** 2)) / math.sqrt(6.0)


def _edge_radicands(a, b, c, d, e, f):
    """Diagonal and off-diagonal radicands (P_k, Q_k) of F_1..F_3; broadcasts over arrays."""
    P = (
        (a + f - 1) * (a + e - 1),
        (a + d - 1) * (a + f - 1),
        (a + e - 1) * (a + d - 1),
    )
    Q = ((b + d) * (c + d), (b + e) * (c + e), (b + f) * (c + f))
    return P, Q


def edge_values_raw(a, b, c, d, e, f, clamp=DEFAULT_TOL.radicand_clamp):
    """F_1..F_3 without validation; negative radicands below -clamp give NaN.

    Works elementwise on numpy arrays, which is what the scans use.
    """
    P, Q = _edge_radicands(a, b, c, d, e, f)
    out = []
    with np.errstate(invalid="ignore"):
        for p, q in zip(P, Q):
            p = np.asarray(p, dtype=float)
            q = np.asarray(q, dtype=float)
            bad = (p < -clamp) | (q < -clamp)
            val = np.sqrt(np.maximum(p, 0.0)) + np.sqrt(np.maximum(q, 0.0))
            out.append(np.where(bad, np.nan, val))
    return tuple(out)


def edge_functions(m: GeneralizedMap, tol: ToleranceConfig = DEFAULT_TOL):
    """(F_1, F_2, F_3); the edge conditions read F_k >= 1."""
    P, Q = _edge_radicands(*m.params)
    out = []
    for k, (p, q) in enumerate(zip(P, Q), start=1):
        for r in (p, q):
            if r < -tol.radicand_tol:
                raise NegativeRadicand(f"edge {k}: radicand {r!r} < 0")
        out.append(math.sqrt(max(p, 0.0)) + math.sqrt(max(q, 0.0)))
    return tuple(out)


@dataclass(frozen=True)
class ConditionReport:
    vertex_values: tuple
    edge_values: tuple
    interior_value: float
    hessian_lhs: float
    hessian_rhs: float
    hessian_holds: bool
    r_h: float
    delta: float
    # slack of the vertex triangle d, e, f >= -mu
    side_values: tuple
    zero_entries: tuple
    saturated: frozenset

    @property
    def conditions_hold(self):
        return self.failing(DEFAULT_TOL.sat_tol) == []

    def failing(self, sat_tol):
        vals = dict(zip(CONDITION_LABELS, self.vertex_values + self.edge_values + (self.interior_value,)))
        return [k for k, v in vals.items() if not (v >= -sat_tol)]

    @property
    def sides_saturated(self):
        return frozenset(k + 1 for k, v in enumerate(self.side_values) if abs(v) <= DEFAULT_TOL.sat_tol)

    def to_dict(self):
        def num(v):
            return None if v is None or not math.isfinite(v) else float(v)

        return {
            "vertex_values": [num(v) for v in self.vertex_values],
            "edge_values": [num(v) for v in self.edge_values],
            "interior_value": num(self.interior_value),
            "hessian_lhs": num(self.hessian_lhs),
            "hessian_rhs": num(self.hessian_rhs),
            "hessian_holds": bool(self.hessian_holds),
            "r_h": num(self.r_h),
            "delta": num(self.delta),
            "side_values": [num(v) for v in self.side_values],
            "zero_entries": [list(p) for p in self.zero_entries],
            "saturated": sorted(self.saturated),
        }

    @classmethod
    def from_dict(cls, data):
        def num(v):
            return math.nan if v is None else float(v)

        return cls(
            vertex_values=tuple(num(v) for v in data["vertex_values"]),
            edge_values=tuple(num(v) for v in data["edge_values"]),
            interior_value=num(data["interior_value"]),
            hessian_lhs=num(data["hessian_lhs"]),
            hessian_rhs=num(data["hessian_rhs"]),
            hessian_holds=bool(data["hessian_holds"]),
            r_h=num(data["r_h"]),
            delta=num(data["delta"]),
            side_values=tuple(num(v) for v in data["side_values"]),
            zero_entries=tuple(tuple(p) for p in data["zero_entries"]),
            saturated=frozenset(data["saturated"]),
        )


def condition_report(m: GeneralizedMap, tol: ToleranceConfig = DEFAULT_TOL):
    """Evaluate the vertex, edge and interior conditions and the Hessian gate.

    Edge values are NaN when a radicand is negative, which only happens once a
    vertex condition already fails.
    """
    W = m.W
    vertex = tuple(float(W[i, i] - 1.0) for i in range(3))
    try:
        edge = tuple(F - 1.0 for F in edge_functions(m, tol))
    except NegativeRadicand:
        edge = tuple(float(F) - 1.0 for F in edge_values_raw(*m.params, clamp=tol.radicand_tol))
    interior = m.w - 3.0
    r_h = hessian_radius(m.a, m.b, m.c)
    lhs = r_h * r_h
    rhs = m.d ** 2 + m.e ** 2 + m.f ** 2
    # boundary ties count as holding
    holds = lhs - rhs >= -tol.sat_tol
    mu = m.mu
    sides = (m.d + mu, m.e + mu, m.f + mu)
    zeros = tuple(
        (i + 1, j + 1) for i in range(3) for j in range(3) if i != j and W[i, j] <= tol.sat_tol
    )
    values = vertex + edge + (interior,)
    saturated = frozenset(
        lab for lab, v in zip(CONDITION_LABELS, values) if math.isfinite(v) and abs(v) <= tol.sat_tol
    )
    return ConditionReport(
        vertex_values=vertex,
        edge_values=edge,
        interior_value=interior,
        hessian_lhs=lhs,
        hessian_rhs=rhs,
        hessian_holds=bool(holds),
        r_h=r_h,
        delta=abs(m.b - m.c),
        side_values=sides,
        zero_entries=zeros,
        saturated=saturated,
    )


# -- principal minors ----------------------------------------------------------

def _check_index_set(I):
    I = tuple(sorted(set(int(i) for i in I)))
    if not I:
        raise EmptyIndexSet("index set must be nonempty")
    if any(i not in (1, 2, 3) for i in I):
        raise ValueError(f"index set {I} must be a subset of {{1, 2, 3}}")
    return I


def _minor_py(W, I, x):
    # W as nested lists, I zero-based tuple; pure Python is faster than numpy for 3-vectors
    z = [W[i][0] * x[0] + W[i][1] * x[1] + W[i][2] * x[2] for i in I]
    if len(I) == 1:
        return z[0] - x[I[0]]
    if len(I) == 2:
        return z[0] * z[1] - x[I[0]] * z[1] - x[I[1]] * z[0]
    return (
        z[0] * z[1] * z[2]
        - x[I[0]] * z[1] * z[2]
        - x[I[1]] * z[0] * z[2]
        - x[I[2]] * z[0] * z[1]
    )


def minor(m: GeneralizedMap, I, x):
    """Principal minor M_I of Phi_W(psi psi^dag) at moduli x_i = |psi_i|^2."""
    I = _check_index_set(I)
    x = [float(v) for v in x]
    if len(x) != 3:
        raise ValueError("x must have three components")
    return _minor_py(m.W.tolist(), tuple(i - 1 for i in I), x)


def minors_on_points(W, X):
    """All seven minors at each row of X; returns an array of shape (7, len(X))."""
    X = np.asarray(X, dtype=float)
    Z = X @ np.asarray(W).T
    out = np.empty((len(SUBSETS), len(X)))
    for s, I in enumerate(SUBSETS):
        I0 = [i - 1 for i in I]
        val = np.prod(Z[:, I0], axis=1)
        for i in I0:
            others = [j for j in I0 if j != i]
            val = val - X[:, i] * (np.prod(Z[:, others], axis=1) if others else 1.0)
        out[s] = val
    return out


@lru_cache(maxsize=8)
def simplex_grid(resolution):
    """Barycentric grid with `resolution` subdivisions per edge, in lexicographic order."""
    n = int(resolution)
    pts = [(i, j, n - i - j) for i in range(n + 1) for j in range(n + 1 - i)]
    X = np.array(pts, dtype=float) / n
    X.flags.writeable = False
    return X


def _refine(Wl, I0, x, h, min_step=1e-12):
    """Coordinate descent along e_i - e_j directions, staying on the simplex."""
    x = list(x)
    best = _minor_py(Wl, I0, x)
    while h > min_step:
        improved = False
        for i in range(3):
            for j in range(3):
                if i == j or x[j] <= 0.0:
                    continue
                y = list(x)
                if x[j] <= h:
                    y[i] += y[j]
                    y[j] = 0.0
                else:
                    y[i] += h
                    y[j] -= h
                v = _minor_py(Wl, I0, y)
                if v < best:
                    best, x, improved = v, y, True
        if not improved:
            h *= 0.5
    return best, x


@dataclass(frozen=True)
class MinorScanResult:
    value: float
    x: tuple
    index_set: tuple


def min_minor_scan(m: GeneralizedMap, resolution=60, refine_margin=1e-2):
    """Brute-force positivity oracle: global minimum of all seven minors on the simplex.

    Every minor is evaluated on the barycentric grid; the best grid point of
    each minor within `refine_margin` of the overall grid minimum is then
    polished by coordinate descent.  Ties are broken on (value, index set, x)
    so repeated runs return identical results.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    X = simplex_grid(resolution)
    vals = minors_on_points(m.W, X)
    best_idx = vals.argmin(axis=1)
    best_vals = vals[np.arange(len(SUBSETS)), best_idx]
    gmin = best_vals.min()
    Wl = m.W.tolist()
    candidates = []
    for s, I in enumerate(SUBSETS):
        if best_vals[s] > gmin + refine_margin:
            continue
        v, x = _refine(Wl, tuple(i - 1 for i in I), X[best_idx[s]].tolist(), 1.0 / resolution)
        candidates.append((v, I, tuple(x)))
    v, I, x = min(candidates)
    return MinorScanResult(float(v), x, I)


# -- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class PositivityVerdict:
    kind: str  # "positive" | "not_positive" | "unknown"
    witness: tuple = None
    index_set: tuple = None
    minor_value: float = None

    @property
    def is_positive(self):
        return self.kind == "positive"

    def to_dict(self):
        out = {"kind": self.kind}
        if self.kind == "not_positive":
            out.update(
                witness=[float(v) for v in self.witness],
                index_set=list(self.index_set),
                minor_value=float(self.minor_value),
            )
        return out

    @classmethod
    def from_dict(cls, data):
        if data["kind"] == "not_positive":
            return cls(
                "not_positive",
                tuple(data["witness"]),
                tuple(data["index_set"]),
                float(data["minor_value"]),
            )
        if data["kind"] not in ("positive", "unknown"):
            raise ValueError(f"unknown verdict kind {data['kind']!r}")
        return cls(data["kind"])


POSITIVE = PositivityVerdict("positive")
UNKNOWN = PositivityVerdict("unknown")


def _analytic_witnesses(m: GeneralizedMap, tol):
    """Simplex points where a failing closed-form condition shows up as a negative minor."""
    W = m.W
    out = []
    for i in range(3):
        x = [0.0, 0.0, 0.0]
        x[i] = 1.0
        out.append(((i + 1,), x))
    out.append(((1, 2, 3), [1 / 3, 1 / 3, 1 / 3]))
    for k, (p, q) in EDGE_PAIRS.items():
        rp = W[q, p] * (W[p, p] - 1.0)
        rq = W[p, q] * (W[q, q] - 1.0)
        if rp > tol.degen_tol and rq > tol.degen_tol:
            x = [0.0, 0.0, 0.0]
            x[p], x[q] = rp ** -0.5, rq ** -0.5
            s = x[p] + x[q]
            out.append(((p + 1, q + 1), [v / s for v in x]))
    return [(minor(m, I, x), I, tuple(x)) for I, x in out]


def classify_positivity(m: GeneralizedMap, resolution=60, tol: ToleranceConfig = DEFAULT_TOL):
    """Positive / NotPositive / UnknownOutsideHessian.

    Inside the Hessian gate the closed-form conditions decide exactly.
    Outside it only a negative minor found by the oracle can settle the
    question, so a clean oracle run yields ``unknown``, never ``positive``.
    """
    rep = condition_report(m, tol)
    if rep.hessian_holds and not rep.failing(tol.sat_tol):
        return POSITIVE
    scan = min_minor_scan(m, resolution)
    cands = [(scan.value, scan.index_set, scan.x)]
    if rep.hessian_holds:
        cands += _analytic_witnesses(m, tol)
    v, I, x = min(cands)
    if rep.hessian_holds or v < -tol.sat_tol:
        return PositivityVerdict("not_positive", tuple(x), tuple(I), float(v))
    return UNKNOWN


def min_eigenvalue(m: GeneralizedMap, psi):
    """Smallest eigenvalue of Phi_W(psi psi^dag)."""
    psi = np.asarray(psi, dtype=complex)
    return float(np.linalg.eigvalsh(_apply_unchecked(m.W, np.outer(psi, psi.conj())))[0])


# -- gradients of the edge functions ------------------------------------------

_EDGE_NORMALS = (
    np.array([-2.0, 1.0, 1.0]),
    np.array([1.0, -2.0, 1.0]),
    np.array([1.0, 1.0, -2.0]),
)


def edge_kappas(a, b, c, d, e, f):
    """kappa_k = (b + c + 2 x_k) / sqrt((b + x_k)(c + x_k)) with x = (d, e, f)."""
    out = []
    for x in (d, e, f):
        q = (b + x) * (c + x)
        if q <= 0:
            raise NegativeRadicand(f"(b+x)(c+x) = {q!r} must be positive for the gradient")
        out.append((b + c + 2 * x) / math.sqrt(q))
    return tuple(out)


def edge_gradients(m: GeneralizedMap, tol: ToleranceConfig = DEFAULT_TOL):
    """Closed-form projected gradients of F_1..F_3, valid on the curves F_k = 1.

    Returns (a+b+c-1-kappa_k) n_k - 3 (d, e, f) with n_1 = (-2, 1, 1) and
    cyclic.  These vectors carry the positive factor 6 sqrt(P_k) relative to
    the true gradient (P_k the diagonal radicand of F_k); see
    :func:`projected_edge_gradients` for the unscaled version.
    """
    edge_functions(m, tol)
    p = np.array(m.plane_point)
    kap = edge_kappas(*m.params)
    return tuple((m.w - 1.0 - k) * n - 3.0 * p for k, n in zip(kap, _EDGE_NORMALS))


def projected_edge_gradients(m: GeneralizedMap, tol: ToleranceConfig = DEFAULT_TOL):
    """True gradients of F_k restricted to the d+e+f=0 plane, from the closed form.

    Only meaningful where F_k = 1 and the diagonal radicand is positive.
    """
    P, _ = _edge_radicands(*m.params)
    out = []
    for g, p in zip(edge_gradients(m, tol), P):
        if p <= 0:
            raise NegativeRadicand(f"diagonal radicand {p!r} must be positive")
        out.append(g / (6.0 * math.sqrt(p)))
    return tuple(out)


def finite_difference_gradients(m: GeneralizedMap, h=1e-6):
    """Central differences of F_1..F_3 along an orthonormal basis of the d+e+f=0 plane."""
    a, b, c = m.a, m.b, m.c
    p = np.array(m.plane_point)
    grads = [np.zeros(3) for _ in range(3)]
    for t in (PLANE_U, PLANE_V):
        fp = edge_values_raw(a, b, c, *(p + h * t))
        fm = edge_values_raw(a, b, c, *(p - h * t))
        for k in range(3):
            grads[k] = grads[k] + (float(fp[k]) - float(fm[k])) / (2 * h) * t
    return tuple(grads)


def gradient_deviation(m: GeneralizedMap, edges=None, h=1e-6, tol: ToleranceConfig = DEFAULT_TOL):
    """Max relative deviation between closed-form and finite-difference gradients.

    By default compares the edges saturated at m (F_k = 1 within sat_tol).
    """
    if edges is None:
        rep = condition_report(m, tol)
        edges = [k for k in (1, 2, 3) if f"edge_{k}" in rep.saturated]
    analytic = projected_edge_gradients(m, tol)
    numeric = finite_difference_gradients(m, h)
    dev = 0.0
    for k in edges:
        g, n = analytic[k - 1], numeric[k - 1]
        dev = max(dev, float(np.linalg.norm(g - n) / max(np.linalg.norm(n), 1e-300)))
    return dev, list(edges)
