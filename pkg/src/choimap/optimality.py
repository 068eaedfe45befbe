"""Kernel product vectors of saturated conditions and the spanning test for optimality.

A product vector (psi, phi) is a zero of Phi_W when <phi| Phi_W(psi psi^dag) |phi> = 0.
Its tensor is stored as conj(phi) (x) psi; swapping the factor order permutes
the coordinates of C^9 and leaves every rank unchanged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .core import GeneralizedMap, sandwich
from .errors import ConditionNotSaturated, DegenerateEdge
from .positivity import EDGE_PAIRS, classify_positivity, condition_report
from .tolerances import DEFAULT_TOL, ToleranceConfig

CASE_LABELS = ("eee_kye", "eee_sameshape", "iee", "iev", "ivv", "insufficient", "none")
EDGE_PHASES = (0.0, math.pi / 2, math.pi)


@dataclass(frozen=True)
class ProductVector:
    psi: np.ndarray
    phi: np.ndarray
    source: str
    phases: tuple = ()

    @property
    def tensor(self):
        return np.kron(self.phi.conj(), self.psi)

    def to_dict(self):
        return {
            "psi": [[float(z.real), float(z.imag)] for z in self.psi],
            "phi": [[float(z.real), float(z.imag)] for z in self.phi],
            "source": self.source,
            "phases": [float(p) for p in self.phases],
        }

    @classmethod
    def from_dict(cls, data):
        def vec(pairs):
            return np.array([complex(re, im) for re, im in pairs])

        return cls(vec(data["psi"]), vec(data["phi"]), data["source"], tuple(data["phases"]))


def random_phase_basis(n=3):
    """n^2 - n + 1 phase tuples whose vectors psi (x) conj(psi), |psi_i| = 1, are independent.

    The all-zero tuple fixes the diagonal.  Each ordered pair (k, l), k != l,
    contributes the tuple with theta_k = pi/2, theta_l = pi and zeros elsewhere.
    Despite the name the construction is deterministic.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    out = [(0.0,) * n]
    for k, l in combinations(range(n), 2):
        for p, q in ((k, l), (l, k)):
            t = [0.0] * n
            t[p], t[q] = math.pi / 2, math.pi
            out.append(tuple(t))
    return out


def _require(rep, label, sat_tol):
    if label not in rep.saturated:
        raise ConditionNotSaturated(f"condition {label} is not saturated (tolerance {sat_tol})")


def interior_spanning_vectors(m: GeneralizedMap, phase_tuples=None, tol: ToleranceConfig = DEFAULT_TOL):
    """psi = phi = (e^{i a1}, e^{i a2}, e^{i a3}) for each phase tuple; needs a+b+c = 3."""
    _require(condition_report(m, tol), "interior", tol.sat_tol)
    if phase_tuples is None:
        phase_tuples = random_phase_basis(3)
    out = []
    for al in phase_tuples:
        psi = np.exp(1j * np.asarray(al, dtype=float))
        out.append(ProductVector(psi, psi.copy(), "interior", tuple(float(x) for x in al)))
    return out


def edge_spanning_vectors(m: GeneralizedMap, k, phases=EDGE_PHASES, tol: ToleranceConfig = DEFAULT_TOL):
    """Three kernel vectors supported on the coordinate pair of edge k.

    With (p, q) the pair of edge k,
        psi_p = 1 / (w_qp (w_pp - 1))^(1/4),  psi_q = e^{i eta} / (w_pq (w_qq - 1))^(1/4)
        phi_p = 1 / (w_pq (w_pp - 1))^(1/4),  phi_q = e^{i eta} / (w_qp (w_qq - 1))^(1/4)
    for each relative phase eta.

    When w_pp = w_qq = 1 the diagonal factors cancel (the quadratic form on
    the edge vanishes identically) and the vectors reduce to
    psi = (w_qp^(-1/4), w_pq^(-1/4)), phi = (w_pq^(-1/4), w_qp^(-1/4)).
    A single vanishing diagonal factor, or a vanishing w_pq or w_qp, raises
    DegenerateEdge.
    """
    if k not in EDGE_PAIRS:
        raise ValueError(f"edge index must be 1, 2 or 3, got {k!r}")
    _require(condition_report(m, tol), f"edge_{k}", tol.sat_tol)
    W = m.W
    p, q = EDGE_PAIRS[k]
    off = {"w_pq": W[p, q], "w_qp": W[q, p]}
    diag = {"w_pp-1": W[p, p] - 1.0, "w_qq-1": W[q, q] - 1.0}
    bad = {name: v for name, v in off.items() if v <= tol.degen_tol}
    flat = [name for name, v in diag.items() if v <= tol.degen_tol]
    if len(flat) == 1:
        bad[flat[0]] = diag[flat[0]]
    if bad:
        raise DegenerateEdge(f"edge {k}: vanishing radicands {bad}")
    if flat:
        diag = {"w_pp-1": 1.0, "w_qq-1": 1.0}
    r = {
        "psi_p": off["w_qp"] * diag["w_pp-1"],
        "psi_q": off["w_pq"] * diag["w_qq-1"],
        "phi_p": off["w_pq"] * diag["w_pp-1"],
        "phi_q": off["w_qp"] * diag["w_qq-1"],
    }
    out = []
    for eta in phases:
        psi = np.zeros(3, dtype=complex)
        phi = np.zeros(3, dtype=complex)
        ph = np.exp(1j * eta)
        psi[p], psi[q] = r["psi_p"] ** -0.25, ph * r["psi_q"] ** -0.25
        phi[p], phi[q] = r["phi_p"] ** -0.25, ph * r["phi_q"] ** -0.25
        alphas = [0.0, 0.0, 0.0]
        alphas[q] = float(eta)
        out.append(ProductVector(psi, phi, f"edge_{k}", tuple(alphas)))
    return out


def vertex_spanning_vector(m: GeneralizedMap, i, tol: ToleranceConfig = DEFAULT_TOL):
    """psi = phi = e_i, a zero of Phi_W whenever w_ii = 1."""
    if i not in (1, 2, 3):
        raise ValueError(f"vertex index must be 1, 2 or 3, got {i!r}")
    _require(condition_report(m, tol), f"vertex_{i}", tol.sat_tol)
    e = np.zeros(3, dtype=complex)
    e[i - 1] = 1.0
    return ProductVector(e, e.copy(), f"vertex_{i}", ())


def zero_value_check(m: GeneralizedMap, pv: ProductVector):
    """<phi| Phi_W(psi psi^dag) |phi>, real because Phi_W preserves Hermiticity."""
    z = sandwich(m, pv.psi, pv.phi)
    assert abs(z.imag) < 1e-12 * max(1.0, abs(z.real)), f"imaginary residue {z.imag}"
    return float(z.real)


def tensor_rank(vectors, rank_tol=DEFAULT_TOL.rank_tol):
    """(rank, singular values padded to 9) of the normalized tensors."""
    if not vectors:
        return 0, np.zeros(9)
    T = np.array([v.tensor / np.linalg.norm(v.tensor) for v in vectors]).T
    s = np.linalg.svd(T, compute_uv=False)
    s = np.concatenate([s, np.zeros(max(0, 9 - len(s)))])[:9]
    rank = int(np.sum(s > rank_tol * s[0])) if s[0] > 0 else 0
    return rank, s


@dataclass(frozen=True)
class SpanningReport:
    vectors: list
    singular_values: np.ndarray
    rank: int
    case_label: str
    skipped: tuple = ()

    @property
    def optimal_by_spanning(self):
        """True certifies optimality; False is inconclusive, not a proof of non-optimality."""
        return self.rank == 9

    def to_dict(self):
        return {
            "case_label": self.case_label,
            "rank": self.rank,
            "optimal_by_spanning": self.optimal_by_spanning,
            "singular_values": [float(s) for s in self.singular_values],
            "skipped": list(self.skipped),
            "vectors": [v.to_dict() for v in self.vectors],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            vectors=[ProductVector.from_dict(v) for v in data["vectors"]],
            singular_values=np.array(data["singular_values"], dtype=float),
            rank=int(data["rank"]),
            case_label=data["case_label"],
            skipped=tuple(data.get("skipped", ())),
        )


def classify_case(m: GeneralizedMap, tol: ToleranceConfig = DEFAULT_TOL, report=None):
    """Label the saturation pattern of a positive map.

    With the interior saturated the label counts edge conditions (e) and
    saturated sides of the vertex triangle d, e, f >= -mu (v).  Without it
    only the two all-edge families qualify; every other pattern, including
    two edges with three vertices, is ``insufficient``.
    """
    rep = report or condition_report(m, tol)
    st = tol.sat_tol
    if not rep.saturated:
        return "none"
    edges = sum(f"edge_{k}" in rep.saturated for k in (1, 2, 3))
    at_origin = max(abs(x) for x in m.plane_point) <= st
    if edges == 3 and at_origin and abs(m.b - m.c) > st:
        return "eee_kye"
    interior = "interior" in rep.saturated
    A = m.a - 1.0
    if (
        edges >= 1
        and interior
        and abs(m.b - m.c) <= st
        and A > st
        and abs(sum(x * x for x in m.plane_point) - 1.5 * A * A) <= st
    ):
        return "eee_sameshape"
    if interior:
        v = len(rep.sides_saturated)
        if v >= 2:
            return "ivv"
        if edges >= 2:
            return "iee"
        if edges >= 1 and v >= 1:
            return "iev"
    return "insufficient"


def spanning_report(m: GeneralizedMap, tol: ToleranceConfig = DEFAULT_TOL, resolution=60):
    """Collect every available kernel vector and test whether they span C^9."""
    if not classify_positivity(m, resolution, tol).is_positive:
        return SpanningReport([], np.zeros(9), 0, "none")
    rep = condition_report(m, tol)
    vectors, skipped = [], []
    if "interior" in rep.saturated:
        vectors += interior_spanning_vectors(m, tol=tol)
    for k in (1, 2, 3):
        if f"edge_{k}" in rep.saturated:
            try:
                vectors += edge_spanning_vectors(m, k, tol=tol)
            except DegenerateEdge:
                skipped.append(f"edge_{k}")
    for i in (1, 2, 3):
        if f"vertex_{i}" in rep.saturated:
            vectors.append(vertex_spanning_vector(m, i, tol))
    rank, s = tensor_rank(vectors, tol.rank_tol)
    return SpanningReport(vectors, s, rank, classify_case(m, tol, rep), tuple(skipped))
