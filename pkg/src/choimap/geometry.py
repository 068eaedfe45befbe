"""Geometry of the admissible set on the plane d+e+f=0 and on the (b, c) plane.

On the plane d+e+f=0 three sets matter for fixed (a, b, c):

* Bob, the straight triangle d, e, f >= -mu with mu = min(a-1, b, c);
* Alice, the curved triangle F_1, F_2, F_3 >= 1;
* the Hessian disk d^2+e^2+f^2 <= r_H^2.

Plane points are exchanged either as (d, e, f) or in the orthonormal chart
u = (d-e)/sqrt(2), v = (d+e-2f)/sqrt(6).
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .core import build_map
from .errors import (
    ConvergenceFailure,
    GaugeViolation,
    Inadmissible,
    InadmissibleBase,
    NoRealIntersection,
    NotOnCirculantSlice,
    NotPositiveMap,
    OutOfRange,
    WrongRegion,
)
from .optimality import spanning_report
from .positivity import (
    PLANE_U,
    PLANE_V,
    classify_positivity,
    condition_report,
    edge_values_raw,
    hessian_radius,
)
from .tolerances import DEFAULT_TOL, ToleranceConfig

SQ2, SQ6 = math.sqrt(2.0), math.sqrt(6.0)


def chart_to_plane(u, v):
    """(u, v) -> (d, e, f); broadcasts over arrays."""
    return (u / SQ2 + v / SQ6, -u / SQ2 + v / SQ6, -2.0 * v / SQ6)


def plane_to_chart(d, e, f):
    return ((d - e) / SQ2, (d + e - 2.0 * f) / SQ6)


def _mu(a, b, c):
    return min(a - 1.0, b, c)


# -- membership on the d+e+f=0 plane ------------------------------------------

@dataclass(frozen=True)
class MembershipFlags:
    in_bob: bool
    in_alice: bool
    in_hessian: bool

    def to_dict(self):
        return {"inBob": self.in_bob, "inAlice": self.in_alice, "inHessian": self.in_hessian}


def _check_base(a, b, c, tol):
    if not (a >= 1.0 - tol.sat_tol and b >= -tol.sat_tol and c >= -tol.sat_tol):
        raise InadmissibleBase(f"need a >= 1 and b, c >= 0, got ({a}, {b}, {c})")


def _flags_arrays(a, b, c, d, e, f, tol):
    mu = _mu(a, b, c)
    st = tol.sat_tol
    in_bob = np.minimum(np.minimum(d, e), f) + mu >= -st
    F = edge_values_raw(a, b, c, d, e, f, clamp=tol.radicand_tol)
    with np.errstate(invalid="ignore"):
        in_alice = (F[0] >= 1 - st) & (F[1] >= 1 - st) & (F[2] >= 1 - st)
    r_h = hessian_radius(a, b, c)
    in_hess = r_h * r_h - (d * d + e * e + f * f) >= -st
    return in_bob, in_alice, in_hess


def plane_membership(a, b, c, p, tol: ToleranceConfig = DEFAULT_TOL):
    """Bob, Alice and Hessian-disk membership of the plane point p = (d, e, f)."""
    _check_base(a, b, c, tol)
    d, e, f = (float(x) for x in p)
    if abs(d + e + f) > tol.gauge_tol:
        raise GaugeViolation(f"plane point {p} has d+e+f = {d + e + f!r}")
    flags = _flags_arrays(a, b, c, np.float64(d), np.float64(e), np.float64(f), tol)
    return MembershipFlags(*(bool(x) for x in flags))


@dataclass(frozen=True)
class ScanRecord:
    u: float
    v: float
    d: float
    e: float
    f: float
    flags: MembershipFlags
    positivity: str


SCAN_FIELDS = ("u", "v", "d", "e", "f", "inAlice", "inBob", "inHessian", "positivity")


def region_scan(a, b, c, radius, n, tol: ToleranceConfig = DEFAULT_TOL):
    """Sample an n x n grid of [-radius, radius]^2 in the (u, v) chart.

    Records are ordered row-major: v is the slow index, u the fast one.  The
    positivity column is ``positive`` inside Bob, Alice and the Hessian disk,
    ``not_positive`` when a vertex, edge or interior condition fails, and
    ``unknown`` in the remaining region where only the Hessian gate fails.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_base(a, b, c, tol)
    g = np.linspace(-radius, radius, n)
    U, V = np.meshgrid(g, g)
    U, V = U.ravel(), V.ravel()
    d, e, f = chart_to_plane(U, V)
    in_bob, in_alice, in_hess = _flags_arrays(a, b, c, d, e, f, tol)
    interior_ok = a + b + c - 3.0 >= -tol.sat_tol
    necessary = in_bob & in_alice & interior_ok
    pos = np.where(necessary & in_hess, "positive", np.where(necessary, "unknown", "not_positive"))
    return [
        ScanRecord(
            float(U[i]), float(V[i]), float(d[i]), float(e[i]), float(f[i]),
            MembershipFlags(bool(in_bob[i]), bool(in_alice[i]), bool(in_hess[i])),
            str(pos[i]),
        )
        for i in range(len(U))
    ]


def fmt(x):
    """17 significant digits, the float format used by every export."""
    return format(float(x), ".17g")


def write_region_csv(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SCAN_FIELDS)
    for r in records:
        w.writerow(
            [fmt(r.u), fmt(r.v), fmt(r.d), fmt(r.e), fmt(r.f),
             int(r.flags.in_alice), int(r.flags.in_bob), int(r.flags.in_hessian), r.positivity]
        )


# -- (b, c) plane with a = 3 - b - c ------------------------------------------

class BCRegion(str, enum.Enum):
    BLUE = "blue"  # Bob inside Alice
    VIOLET = "violet"  # proper intersection
    RED = "red"  # Alice inside Bob
    BOUNDARY_BLUE_VIOLET = "boundary_blue_violet"
    BOUNDARY_VIOLET_RED = "boundary_violet_red"
    INADMISSIBLE = "inadmissible"


def bc_admissible(b, c, tol: ToleranceConfig = DEFAULT_TOL):
    """b, c >= 0 and the origin of the plane satisfies the edge condition, b+c-1 <= sqrt(bc)."""
    if b < -tol.sat_tol or c < -tol.sat_tol:
        return False
    return b + c - 1.0 <= math.sqrt(max(b, 0.0) * max(c, 0.0)) + tol.sat_tol


def bc_region_values(b, c):
    """(blue, red) margins for a = 3-b-c.

    blue = F(Bob vertex) - 1, red = 1 - F(midpoint of a Bob side); the region
    is Blue when blue >= 0 and Red when red > 0.
    """
    a = 3.0 - b - c
    A = a - 1.0
    mu = _mu(a, b, c)
    off = math.sqrt(max((b - mu) * (c - mu), 0.0))
    blue = math.sqrt(max((A + 2 * mu) * (A - mu), 0.0)) + off - 1.0
    red = 1.0 - (A + mu / 2) - off
    return blue, red


def bc_region_class(b, c, tol: ToleranceConfig = DEFAULT_TOL):
    """Shape class of Alice versus Bob for a = 3-b-c; raises Inadmissible off the admissible set."""
    if not bc_admissible(b, c, tol):
        raise Inadmissible(f"(b, c) = ({b}, {c}) is not admissible")
    blue, red = bc_region_values(b, c)
    st = tol.sat_tol
    if abs(blue) <= st:
        return BCRegion.BOUNDARY_BLUE_VIOLET
    if blue > 0:
        return BCRegion.BLUE
    if abs(red) <= st:
        return BCRegion.BOUNDARY_VIOLET_RED
    if red > 0:
        return BCRegion.RED
    return BCRegion.VIOLET


def bc_scan(n, lo=0.0, hi=4.0 / 3.0, tol: ToleranceConfig = DEFAULT_TOL):
    """Region class on an n x n grid of (b, c); rows ordered with c slow and b fast."""
    if n < 2:
        raise ValueError("n must be >= 2")
    g = np.linspace(lo, hi, n)
    out = []
    for c in g:
        for b in g:
            b, c = float(b), float(c)
            try:
                region = bc_region_class(b, c, tol)
            except Inadmissible:
                region = BCRegion.INADMISSIBLE
            a = 3.0 - b - c
            out.append((b, c, a, _mu(a, b, c), region))
    return out


def write_bc_csv(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(("b", "c", "a", "mu", "region"))
    for b, c, a, mu, region in records:
        w.writerow([fmt(b), fmt(c), fmt(a), fmt(mu), region.value])


# -- optimal points with interior saturation -----------------------------------

@dataclass(frozen=True)
class OptimalPointSet:
    case: str
    b: float
    c: float
    points: list
    boundary: bool = False
    degenerate: bool = False
    notes: dict = field(default_factory=dict)

    @property
    def a(self):
        return 3.0 - self.b - self.c

    def to_dict(self):
        return {
            "case": self.case,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "points": [list(map(float, p)) for p in self.points],
            "boundary": self.boundary,
            "degenerate": self.degenerate,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class PointValidation:
    point: tuple
    positivity: str
    saturated: frozenset
    sides_saturated: frozenset
    edge_residuals: tuple
    rank: int
    case_label: str
    # max(0, RHS - LHS) of the Hessian condition; zero when it holds
    hessian_residual: float
    hessian_gap: float

    @property
    def edges(self):
        return sorted(int(s[-1]) for s in self.saturated if s.startswith("edge_"))

    def to_dict(self):
        return {
            "point": list(map(float, self.point)),
            "positivity": self.positivity,
            "saturated": sorted(self.saturated),
            "sides_saturated": sorted(self.sides_saturated),
            "edge_residuals": [float(x) for x in self.edge_residuals],
            "rank": self.rank,
            "case_label": self.case_label,
            "hessian_residual": float(self.hessian_residual),
            "hessian_gap": float(self.hessian_gap),
        }


def validate_point(b, c, p, tol: ToleranceConfig = DEFAULT_TOL):
    """Assemble the map (3-b-c, b, c, p) and report positivity, saturations and spanning rank."""
    m = build_map(3.0 - b - c, b, c, *p, tol=tol)
    rep = condition_report(m, tol)
    span = spanning_report(m, tol)
    return PointValidation(
        point=tuple(float(x) for x in p),
        positivity=classify_positivity(m, tol=tol).kind,
        saturated=rep.saturated,
        sides_saturated=rep.sides_saturated,
        edge_residuals=rep.edge_values,
        rank=span.rank,
        case_label=span.case_label,
        hessian_residual=max(0.0, rep.hessian_rhs - rep.hessian_lhs),
        hessian_gap=rep.hessian_lhs - rep.hessian_rhs,
    )


def _closed_gauge(p):
    s = sum(p) / 3.0
    return tuple(x - s for x in p)


def optimal_points_ivv(b, c, tol: ToleranceConfig = DEFAULT_TOL):
    """The three vertices of Bob, (2mu, -mu, -mu) and permutations."""
    region = bc_region_class(b, c, tol)
    if region not in (BCRegion.BLUE, BCRegion.BOUNDARY_BLUE_VIOLET):
        raise WrongRegion(f"(b, c) = ({b}, {c}) is {region.value}, need blue")
    mu = _mu(3.0 - b - c, b, c)
    pts = [(2 * mu, -mu, -mu), (-mu, 2 * mu, -mu), (-mu, -mu, 2 * mu)]
    return OptimalPointSet("ivv", b, c, pts, boundary=region is BCRegion.BOUNDARY_BLUE_VIOLET)


def iev_discriminants(b, c):
    """(direct, literal): discriminant of the pinned-side system and the printed closed form."""
    a = 3.0 - b - c
    A = a - 1.0
    mu = _mu(a, b, c)
    R = 1.0 - math.sqrt(max((b - mu) * (c - mu), 0.0))
    direct = mu * mu + 4 * A * (A + mu) - 4 * R * R
    literal = mu * mu - 4 * (A + mu) * A + 4
    return direct, literal


def optimal_points_iev(b, c, tol: ToleranceConfig = DEFAULT_TOL):
    """Crossings of a Bob side with Alice.

    A coordinate pinned at -mu leaves (s, t) with s + t = mu and
    (a-1+s)(a-1+t) = (1 - sqrt((b-mu)(c-mu)))^2, the edge function that
    carries the pinned coordinate set to 1.  Every ordering is kept that lies
    in Bob and Alice.
    """
    region = bc_region_class(b, c, tol)
    if region in (BCRegion.BLUE, BCRegion.RED):
        raise WrongRegion(f"(b, c) = ({b}, {c}) is {region.value}, need violet")
    a = 3.0 - b - c
    mu = _mu(a, b, c)
    direct, literal = iev_discriminants(b, c)
    if direct < -tol.sat_tol:
        raise NoRealIntersection(f"discriminant {direct!r} < 0")
    root = math.sqrt(max(direct, 0.0))
    s, t = (mu + root) / 2, (mu - root) / 2
    pts = []
    for k in range(3):
        for x, y in ((s, t), (t, s)):
            p = [0.0, 0.0, 0.0]
            p[k] = -mu
            others = [i for i in range(3) if i != k]
            p[others[0]], p[others[1]] = x, y
            p = _closed_gauge(p)
            fl = _flags_arrays(a, b, c, *(np.float64(v) for v in p), tol)
            if fl[0] and fl[1] and p not in pts:
                pts.append(p)
    return OptimalPointSet(
        "iev",
        b,
        c,
        pts,
        boundary=region is not BCRegion.VIOLET,
        notes={"discriminant": direct, "literal_discriminant": literal},
    )


def _edge_jacobian(a, b, c, p, pair):
    """Exact derivatives of (F_i, F_j) along the (u, v) chart directions."""
    A = a - 1.0
    d, e, f = p
    rows = []
    # F_k = sqrt((A+y)(A+z)) + sqrt((b+x)(c+x)) with x the coordinate of edge k
    spec = {1: (0, 2, 1), 2: (1, 2, 0), 3: (2, 1, 0)}
    for k in pair:
        ix, iy, iz = spec[k]
        x, y, z = p[ix], p[iy], p[iz]
        g = np.zeros(3)
        P = (A + y) * (A + z)
        Q = (b + x) * (c + x)
        sP, sQ = math.sqrt(max(P, 1e-300)), math.sqrt(max(Q, 1e-300))
        g[ix] = (b + c + 2 * x) / (2 * sQ)
        g[iy] = (A + z) / (2 * sP)
        g[iz] = (A + y) / (2 * sP)
        rows.append([g @ PLANE_U, g @ PLANE_V])
    return np.array(rows)


def _edge_residual(a, b, c, p, pair):
    F = edge_values_raw(a, b, c, *p, clamp=np.inf)
    return np.array([float(F[k - 1]) - 1.0 for k in pair])


# pairs of edge functions and the coordinate that the symmetric ray makes positive
_IEE_PAIRS = {(1, 2): 2, (1, 3): 1, (2, 3): 0}


def _ray_point(t, k_pos):
    p = [t, t, t]
    p[k_pos] = -2.0 * t
    return tuple(p)


def _iee_vertex(a, b, c, pair, k_pos, tol, max_iter=200):
    mu = _mu(a, b, c)
    u0, v0 = plane_to_chart(*_ray_point(-0.5 * mu, k_pos))
    z = np.array([u0, v0])
    res_tol = 1e-13
    for _ in range(max_iter):
        p = chart_to_plane(*z)
        r = _edge_residual(a, b, c, p, pair)
        if not np.all(np.isfinite(r)):
            break
        if np.max(np.abs(r)) < res_tol:
            return tuple(p), "newton"
        J = _edge_jacobian(a, b, c, p, pair)
        try:
            step = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            break
        lam, n0 = 1.0, np.max(np.abs(r))
        while lam > 1e-6:
            zn = z + lam * step
            pn = chart_to_plane(*zn)
            rn = _edge_residual(a, b, c, pn, pair)
            # stay inside Bob, where every radicand is positive
            if min(pn) > -mu and np.all(np.isfinite(rn)) and np.max(np.abs(rn)) < n0:
                break
            lam *= 0.5
        else:
            break
        z = zn
    # fallback: the pair is symmetric under swapping its two coordinates, so the vertex lies on the ray
    g = lambda t: float(_edge_residual(a, b, c, _ray_point(t, k_pos), pair)[0])
    lo, hi = -mu, 0.0
    if not (g(lo) <= 0 <= g(hi)):
        raise ConvergenceFailure(f"edges {pair}: no sign change on the symmetric ray")
    if g(hi) == 0.0:
        return _ray_point(0.0, k_pos), "ray"
    t = brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=max_iter)
    return _ray_point(t, k_pos), "ray"


def optimal_points_iee(b, c, tol: ToleranceConfig = DEFAULT_TOL):
    """Vertices of Alice, where two edge functions equal 1, found by damped Newton."""
    region = bc_region_class(b, c, tol)
    if region in (BCRegion.BLUE, BCRegion.BOUNDARY_BLUE_VIOLET):
        raise WrongRegion(f"(b, c) = ({b}, {c}) is {region.value}, need red or violet")
    a = 3.0 - b - c
    pts, methods, resid = [], [], []
    for pair, k_pos in _IEE_PAIRS.items():
        p, how = _iee_vertex(a, b, c, pair, k_pos, tol)
        p = _closed_gauge(p)
        r = float(np.max(np.abs(_edge_residual(a, b, c, p, pair))))
        if r >= 1e-11:
            raise ConvergenceFailure(f"edges {pair}: residual {r!r}")
        pts.append(tuple(float(x) for x in p))
        methods.append(how)
        resid.append(r)
    degenerate = abs(b - c) <= tol.sat_tol or max(np.abs(pts).max(axis=1)) <= tol.sat_tol
    return OptimalPointSet(
        "iee",
        b,
        c,
        pts,
        boundary=region is BCRegion.BOUNDARY_VIOLET_RED,
        degenerate=bool(degenerate),
        notes={"methods": methods, "residuals": resid},
    )


def optimal_points(b, c, tol: ToleranceConfig = DEFAULT_TOL):
    """Every optimal-point family that exists for (b, c)."""
    region = bc_region_class(b, c, tol)
    out = []
    if region in (BCRegion.BLUE, BCRegion.BOUNDARY_BLUE_VIOLET):
        out.append(optimal_points_ivv(b, c, tol))
    if region not in (BCRegion.BLUE, BCRegion.RED):
        out.append(optimal_points_iev(b, c, tol))
    if region not in (BCRegion.BLUE, BCRegion.BOUNDARY_BLUE_VIOLET):
        out.append(optimal_points_iee(b, c, tol))
    return region, out


# -- shape of Alice against Bob --------------------------------------------------

def bob_vertices(a, b, c):
    mu = _mu(a, b, c)
    return [(2 * mu, -mu, -mu), (-mu, 2 * mu, -mu), (-mu, -mu, 2 * mu)]


def bob_boundary(a, b, c, n=64):
    """Points on the three sides of Bob, vertices and side midpoints included."""
    V = np.array(bob_vertices(a, b, c))
    t = np.linspace(0.0, 1.0, 2 * n + 1)[:, None]
    return np.concatenate([(1 - t) * V[i] + t * V[(i + 1) % 3] for i in range(3)])


def shape_relation(b, c, n=64, tol: ToleranceConfig = DEFAULT_TOL):
    """alice_in_bob, bob_in_alice or intersecting, judged on samples of Bob's boundary.

    Boundary contact counts as lying inside Alice.
    """
    a = 3.0 - b - c
    P = bob_boundary(a, b, c, n)
    F = edge_values_raw(a, b, c, P[:, 0], P[:, 1], P[:, 2], clamp=tol.radicand_tol)
    with np.errstate(invalid="ignore"):
        inside = np.min(np.vstack(F), axis=0) >= 1.0 - tol.sat_tol
    if inside.all():
        return "bob_in_alice"
    if not inside.any():
        return "alice_in_bob"
    return "intersecting"


def bisect_predicate(pred, lo, hi, xtol=1e-12, max_iter=200):
    """Boundary between pred(lo) and pred(hi) (which must differ) by bisection."""
    plo = pred(lo)
    if pred(hi) == plo:
        raise ValueError("predicate does not change on [lo, hi]")
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid) == plo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def shape_transition(diff, lo, hi, n=64, tol: ToleranceConfig = DEFAULT_TOL):
    """b+c where shape_relation changes along the line b-c = diff, bracketed by [lo, hi]."""

    def rel(s):
        return shape_relation((s + diff) / 2, (s - diff) / 2, n, tol)

    return bisect_predicate(rel, lo, hi)


# -- the same-shape family b = c = (3-a)/2 --------------------------------------

@dataclass(frozen=True)
class SameShapeStructure:
    a: float
    radius: float
    inradius: float
    circumradius: float
    regime: str
    hessian_radius: float
    special_points: list

    def to_dict(self):
        return {
            "a": self.a,
            "radius": self.radius,
            "inradius": self.inradius,
            "circumradius": self.circumradius,
            "regime": self.regime,
            "hessian_radius": self.hessian_radius,
            "special_points": [list(map(float, p)) for p in self.special_points],
        }


def _same_shape_radii(a):
    b = (3.0 - a) / 2
    mu = min(a - 1.0, b)
    return math.sqrt(1.5) * (a - 1.0), math.sqrt(1.5) * mu, SQ6 * mu


def same_shape_structure(a, tol: ToleranceConfig = DEFAULT_TOL):
    """Alice (a circle) against Bob when b = c = (3-a)/2.

    Regimes: ``point`` at a = 1, ``full_circle`` while the circle is Bob's
    incircle, ``tangent`` at a = 5/3, ``three_arcs`` up to a = 2, ``joining``
    at a = 2 where the circle passes through Bob's vertices and
    ``three_vertex_points`` beyond.
    """
    if not (1.0 - tol.sat_tol <= a <= 3.0 + tol.sat_tol):
        raise OutOfRange(f"a = {a} outside [1, 3]")
    b = (3.0 - a) / 2
    radius, inr, circ = _same_shape_radii(a)
    st = tol.sat_tol
    mu = min(a - 1.0, b)
    mids = [(-mu, mu / 2, mu / 2), (mu / 2, -mu, mu / 2), (mu / 2, mu / 2, -mu)]
    verts = bob_vertices(a, b, b)
    if abs(a - 1.0) <= st:
        regime, special = "point", [(0.0, 0.0, 0.0)]
    elif abs(a - 5.0 / 3.0) <= st:
        regime, special = "tangent", mids
    elif abs(a - 2.0) <= st:
        regime, special = "joining", verts
    elif a < 5.0 / 3.0:
        regime, special = "full_circle", []
    elif a < 2.0:
        regime, special = "three_arcs", []
    else:
        regime, special = "three_vertex_points", verts
    hess = SQ6 * b if b <= 0.5 else SQ6 * abs(b - 1.0)
    return SameShapeStructure(a, radius, inr, circ, regime, hess, special)


def same_shape_transitions(lo=1.2, hi=2.5, xtol=1e-12):
    """(a where the circle leaves Bob's incircle, a where it reaches Bob's vertices).

    Both are located by bisection on the radii alone, independently of the
    regime thresholds hard-coded in :func:`same_shape_structure`.
    """
    def beyond_incircle(a):
        r, inr, _ = _same_shape_radii(a)
        return r - inr > 1e-13

    def reaches_vertices(a):
        r, _, circ = _same_shape_radii(a)
        return r >= circ

    tangent = bisect_predicate(beyond_incircle, lo, 1.9, xtol)
    joining = bisect_predicate(reaches_vertices, 1.7, hi, xtol)
    return tangent, joining


def same_shape_circle_point(a, theta):
    """Point at angle theta on the circle of radius sqrt(3/2)(a-1)."""
    r = math.sqrt(1.5) * (a - 1.0)
    return _closed_gauge(chart_to_plane(r * math.cos(theta), r * math.sin(theta)))


# -- circulant slice --------------------------------------------------------------

def kye_boundary_classify(a, b, c, d=0.0, e=0.0, f=0.0, tol: ToleranceConfig = DEFAULT_TOL):
    """Facets of the circulant positive cone that (a, b, c) lies on."""
    if max(abs(d), abs(e), abs(f)) > tol.gauge_tol:
        raise NotOnCirculantSlice(f"need d = e = f = 0, got ({d}, {e}, {f})")
    st = tol.sat_tol
    edge = a + math.sqrt(max(b * c, 0.0)) - 2.0 if b >= 0 and c >= 0 else -math.inf
    if a < 1 - st or b < -st or c < -st or a + b + c < 3 - st or (a <= 2 and edge < -st):
        raise NotPositiveMap(f"({a}, {b}, {c}) is not a positive circulant map")
    labels = set()
    if abs(a - 1.0) <= st:
        labels.add("vertex_a")
    if abs(b) <= st:
        labels.add("vertex_b")
    if abs(c) <= st:
        labels.add("vertex_c")
    if abs(edge) <= st:
        labels.add("edge")
    if abs(a + b + c - 3.0) <= st:
        labels.add("interior")
    return frozenset(labels) or frozenset({"interior_of_cone"})


def ellipse_point(a):
    """(b, c) with b >= c on the ellipse a+b+c = 3, a+sqrt(bc) = 2."""
    s, p = 3.0 - a, (2.0 - a) ** 2
    disc = s * s - 4 * p
    if disc < 0:
        raise OutOfRange(f"no real ellipse point for a = {a}")
    r = math.sqrt(disc)
    return (s + r) / 2, (s - r) / 2
