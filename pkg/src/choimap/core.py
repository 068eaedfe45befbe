"""Generalized Choi maps X -> D_W(X) - X on 3x3 complex matrices.

W is parameterized by six reals (a, b, c, d, e, f) with the gauge fixed to
d + e + f = 0::

    W = [[a+f, b+d, c+e],
         [c+d, a+e, b+f],
         [b+e, c+f, a+d]]

so that every row and column of W sums to w = a + b + c.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    GaugeViolation,
    InvalidState,
    NegativeEntry,
    NonHermitianInput,
    NotDoublyScalable,
)
from .tolerances import DEFAULT_TOL, ToleranceConfig


def birkhoff_matrix(a, b, c, d, e, f):
    """Assemble W from the circulant part (a, b, c) and the transposition weights (d, e, f)."""
    return np.array(
        [
            [a + f, b + d, c + e],
            [c + d, a + e, b + f],
            [b + e, c + f, a + d],
        ],
        dtype=float,
    )


@dataclass(frozen=True)
class GeneralizedMap:
    """Immutable map Phi_W.  Build it with :func:`build_map` or :func:`from_matrix`."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    W: np.ndarray = field(repr=False, compare=False)

    @property
    def w(self):
        return self.a + self.b + self.c

    @property
    def mu(self):
        return min(self.a - 1.0, self.b, self.c)

    @property
    def params(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def plane_point(self):
        return (self.d, self.e, self.f)

    def to_dict(self):
        return dict(zip("abcdef", map(float, self.params)))


def build_map(a, b, c, d=0.0, e=0.0, f=0.0, tol: ToleranceConfig = DEFAULT_TOL):
    """Validate the parameters and return the map with its W matrix cached.

    Raises GaugeViolation when |d+e+f| exceeds ``tol.gauge_tol`` (use
    :func:`gauge_fix` first for arbitrary parameters) and NegativeEntry when
    some w_ij < -``tol.entry_tol``.
    """
    a, b, c, d, e, f = (float(v) for v in (a, b, c, d, e, f))
    if not all(np.isfinite((a, b, c, d, e, f))):
        raise GaugeViolation("parameters must be finite")
    s = d + e + f
    if abs(s) > tol.gauge_tol:
        raise GaugeViolation(f"d+e+f = {s!r} violates the gauge d+e+f=0")
    W = birkhoff_matrix(a, b, c, d, e, f)
    for i in range(3):
        for j in range(3):
            if W[i, j] < -tol.entry_tol:
                raise NegativeEntry(i + 1, j + 1, W[i, j])
    W.flags.writeable = False
    return GeneralizedMap(a, b, c, d, e, f, W)


def gauge_fix(a, b, c, d, e, f):
    """Shift (a,b,c) up and (d,e,f) down by (d+e+f)/3; W is unchanged."""
    xi = (d + e + f) / 3.0
    return (a + xi, b + xi, c + xi, d - xi, e - xi, f - xi)


def to_matrix(m: GeneralizedMap):
    return np.array(m.W)


def from_matrix(W, tol: ToleranceConfig = DEFAULT_TOL):
    """Recover the gauge-fixed parameters of a matrix with equal row and column sums."""
    W = np.asarray(W, dtype=float)
    if W.shape != (3, 3):
        raise NotDoublyScalable(f"expected a 3x3 matrix, got shape {W.shape}")
    sums = np.concatenate([W.sum(axis=1), W.sum(axis=0)])
    if np.ptp(sums) > tol.scalable_tol * max(1.0, abs(sums).max()):
        raise NotDoublyScalable(f"row/column sums differ: {sums}")
    a = np.trace(W) / 3.0
    b = (W[0, 1] + W[1, 2] + W[2, 0]) / 3.0
    c = (W[0, 2] + W[1, 0] + W[2, 1]) / 3.0
    d = W[0, 1] - b
    e = W[2, 0] - b
    f = W[1, 2] - b
    # the c-channel must agree once sums are equal
    for got, want in ((W[1, 0] - c, d), (W[0, 2] - c, e), (W[2, 1] - c, f)):
        if abs(got - want) > tol.scalable_tol * max(1.0, abs(W).max()):
            raise NotDoublyScalable("matrix is not of Birkhoff form")
    # absorb rounding in the gauge sum
    s = (d + e + f) / 3.0
    return build_map(a, b, c, d - s, e - s, f - s, tol=tol)


def _check_hermitian(X, tol, exc=NonHermitianInput):
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise exc(f"expected a square matrix, got shape {X.shape}")
    scale = max(1.0, np.abs(X).max())
    if np.abs(X - X.conj().T).max() > tol.herm_tol * scale:
        raise exc("matrix is not Hermitian")
    return X


def apply(m: GeneralizedMap, X, tol: ToleranceConfig = DEFAULT_TOL):
    """Return Phi_W(X) = diag(W @ diag(X)) - X for a Hermitian 3x3 matrix X."""
    X = _check_hermitian(X, tol)
    if X.shape != (3, 3):
        raise NonHermitianInput(f"expected a 3x3 matrix, got shape {X.shape}")
    return _apply_unchecked(m.W, X)


def _apply_unchecked(W, X):
    return np.diag(W @ np.diag(X)) - X


def choi_matrix(m: GeneralizedMap):
    """9x9 matrix whose (i, j) block is Phi_W(E_ij)."""
    C = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            E = np.zeros((3, 3), dtype=complex)
            E[i, j] = 1.0
            C[3 * i : 3 * i + 3, 3 * j : 3 * j + 3] = _apply_unchecked(m.W, E)
    return C


def sandwich(m: GeneralizedMap, psi, phi):
    """<phi| Phi_W(|psi><psi|) |phi>, the right-hand side of the Choi sandwich identity."""
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    out = phi.conj() @ _apply_unchecked(m.W, np.outer(psi, psi.conj())) @ phi
    return out


def validate_state(rho, tol: ToleranceConfig = DEFAULT_TOL):
    rho = _check_hermitian(rho, tol, exc=InvalidState)
    if rho.shape != (9, 9):
        raise InvalidState(f"expected a 9x9 density matrix, got shape {rho.shape}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol.state_tol:
        raise InvalidState(f"trace is {tr}, not 1")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0] < -tol.state_tol:
        raise InvalidState("density matrix is not positive semidefinite")
    return rho


def witness_value(m: GeneralizedMap, rho, tol: ToleranceConfig = DEFAULT_TOL):
    """Tr(C(Phi_W) rho).  A negative value certifies that rho is entangled when the map is positive."""
    rho = validate_state(rho, tol)
    return float(np.real(np.trace(choi_matrix(m) @ rho)))


# -- serialization -----------------------------------------------------------

def map_to_dict(m: GeneralizedMap):
    return m.to_dict()


def map_from_dict(data, tol: ToleranceConfig = DEFAULT_TOL):
    return build_map(*(data[k] for k in "abcdef"), tol=tol)


def matrix_to_json(M):
    """Row-major nested list of [re, im] pairs."""
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_json(data):
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("matrix must be a nested list of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


PRESETS = {
    "choi": (2.0, 1.0, 0.0, 0.0, 0.0, 0.0),
    "reduction": (1.0, 1.0, 1.0, 0.0, 0.0, 0.0),
}
