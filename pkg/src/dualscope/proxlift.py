"""Numerical layer: roots on the sphere, proximity functions, root tracking.

Points of the Riemann sphere are handled internally as unit vectors of
homogeneous coordinates ``(p, q)`` standing for ``p/q``; infinity is
``(1, 0)``. Distances between such points are chordal:
``|p1 q2 - p2 q1|`` for unit representatives.

Degenerating paths are certified exactly (Sturm counts on the restriction of
the dual form); root tracking along them is numeric.
"""
import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _upoly as up
from .binaryform import BinaryForm, multiplicity_partition
from .dualgeom import (DUAL, ImplicitCurve, LineCoords, ParametricCurve, dual_form,
                       dual_membership)
from .errors import (AmbiguousAssignmentError, CertificationError, DegenerateConfigError,
                     DegreeError, LatticeError, PreconditionError, RootFindingError,
                     StepUnderflowError)
from .polycore import ExactPoly, restrict_to_line

__all__ = [
    "SpherePoint", "MarkedConfig", "FlatTorus", "LiftPath", "DegeneratingPath",
    "FormFamily", "ProxSeries", "roots_numeric", "cross_ratio", "prox_p1",
    "prox_p1_detail", "prox_torus", "degenerating_path", "lift_path",
    "prox_limit_experiment", "chordal",
]

EPS = np.finfo(float).eps


# --------------------------------------------------------------------------
# points and configurations

@dataclass(frozen=True)
class SpherePoint:
    """A point of the Riemann sphere with an error radius.

    ``value`` is a complex number or ``None`` for infinity. The radius of a
    finite point bounds the error of ``value``; for infinity it is 0 and any
    uncertainty is expressed in the ``1/z`` chart by the producer.
    """

    value: object = None
    radius: float = 0.0

    @classmethod
    def inf(cls):
        return cls(None, 0.0)

    @classmethod
    def of(cls, z, radius=0.0):
        if isinstance(z, SpherePoint):
            return z
        if z is None or (isinstance(z, str) and z.lower() in ("inf", "oo", "infinity")):
            return cls(None, 0.0)
        z = complex(z)
        if math.isinf(z.real) or math.isinf(z.imag):
            return cls(None, 0.0)
        return cls(z, float(radius))

    @property
    def is_inf(self):
        return self.value is None

    def homogeneous(self):
        if self.value is None:
            return np.array([1.0 + 0j, 0j])
        v = np.array([self.value, 1.0 + 0j])
        return v / np.linalg.norm(v)

    def to_json(self):
        if self.value is None:
            return {"point": "inf", "radius": 0.0}
        return {"point": [_clean(self.value.real), _clean(self.value.imag)],
                "radius": float(self.radius)}


def _clean(x, digits=12):
    x = round(float(x), digits)
    return 0.0 if x == 0 else x


def _from_homogeneous(h, radius=0.0, inf_cut=1e-300):
    p, q = h
    if abs(q) <= inf_cut * max(abs(p), 1e-300) or q == 0:
        return SpherePoint(None, 0.0)
    return SpherePoint(complex(p / q), float(radius))


@dataclass(frozen=True)
class MarkedConfig:
    points: tuple

    def __post_init__(self):
        if len(self.points) < 1:
            raise DegenerateConfigError("a configuration needs at least one point")

    @classmethod
    def of(cls, values, radii=None):
        radii = radii if radii is not None else [0.0] * len(values)
        return cls(tuple(SpherePoint.of(v, r) for v, r in zip(values, radii)))

    @property
    def n(self):
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def homogeneous(self):
        return np.array([p.homogeneous() for p in self.points])

    def radii(self):
        return np.array([p.radius for p in self.points])

    def values(self):
        return np.array([complex("inf") if p.is_inf else p.value for p in self.points])

    def to_json(self):
        return [p.to_json() for p in self.points]


def chordal(h1, h2):
    """Chordal distance between unit homogeneous vectors (broadcasting)."""
    return np.abs(h1[..., 0] * h2[..., 1] - h1[..., 1] * h2[..., 0])


def _unit(h):
    h = np.asarray(h, dtype=complex)
    return h / np.linalg.norm(h, axis=-1, keepdims=True)


# --------------------------------------------------------------------------
# root finding

def _horner(c, z):
    """Value of the polynomial with coefficients ``c`` (highest first)."""
    acc = np.zeros_like(z)
    for a in c:
        acc = acc * z + a
    return acc


def _aberth(coeffs, start=None, tol=None, max_iter=400, rng=None):
    """Simultaneous roots of a polynomial with complex coefficients given
    lowest degree first (nonzero leading coefficient)."""
    a = np.asarray(coeffs, dtype=complex)
    n = len(a) - 1
    if n == 0:
        return np.zeros(0, dtype=complex), True
    c = a[::-1] / a[-1]
    dc = c[:-1] * np.arange(n, 0, -1)
    if n == 1:
        return np.array([-c[1]]), True
    if start is None or len(start) != n:
        rng = rng or np.random.default_rng(0)
        radius = 2.0 * max(abs(c[k]) ** (1.0 / k) for k in range(1, n + 1))
        radius = max(radius, 1e-12)
        ang = 2 * np.pi * np.arange(n) / n + 0.4 + 0.01 * rng.random()
        z = radius * np.exp(1j * ang)
    else:
        z = np.array(start, dtype=complex)
        # coincident starts stall the iteration
        scale = max(1.0, float(np.max(np.abs(z))))
        for i in range(n):
            for j in range(i):
                if abs(z[i] - z[j]) < 1e-14 * scale:
                    z[i] += 1e-9 * scale * np.exp(1j * (1 + i))
    tol = tol if tol is not None else 4 * EPS
    converged = False
    for _ in range(max_iter):
        p = _horner(c, z)
        dp = _horner(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dp != 0, p / dp, p)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            s = np.sum(1.0 / diff, axis=1) - 1.0
            denom = 1.0 - ratio * s
            w = np.where(denom != 0, ratio / denom, ratio)
        w = np.nan_to_num(w)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1.0, np.abs(z))):
            converged = True
            break
    # Newton polish
    for _ in range(2):
        p = _horner(c, z)
        dp = _horner(dc, z)
        ok = np.abs(dp) > 1e-300
        step = np.zeros_like(z)
        step[ok] = p[ok] / dp[ok]
        better = np.abs(_horner(c, z - step)) <= np.abs(p)
        z = np.where(better, z - step, z)
    return z, converged


def _inclusion_radii(coeffs, z):
    """A posteriori radii ``n |p(z_i)| / |lc prod (z_i - z_j)|`` with the
    rounding error of the evaluation added to the residual."""
    a = np.asarray(coeffs, dtype=complex)
    n = len(a) - 1
    if n <= 0:
        return np.zeros(0)
    c = a[::-1]
    res = np.abs(_horner(c, z))
    absz = np.abs(z)
    err = 2 * n * EPS * _horner(np.abs(c), absz)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    prod = np.abs(a[-1]) * np.prod(np.abs(diff), axis=1)
    with np.errstate(divide="ignore"):
        r = n * (res + err) / prod
    return np.where(prod > 0, r, np.inf)


def _float_coeffs(coeffs):
    coeffs = [Fraction(c) for c in coeffs]
    m = max(abs(c) for c in coeffs)
    return np.array([float(c / m) for c in coeffs], dtype=complex)


def roots_numeric(f, target_accuracy=1e-9, seed=0):
    """Roots of a binary form as ``d`` points of the sphere.

    The exact squarefree decomposition supplies the multiplicities, including
    that of ``[1:0]``; the simple roots of each squarefree factor are found by
    Aberth iteration and given inclusion radii. The accuracy test is relative,
    ``radius <= target_accuracy * max(1, |z|)``.
    """
    if not isinstance(f, BinaryForm):
        raise TypeError("expected a BinaryForm")
    rng = np.random.default_rng(seed)
    values, radii = [], []
    for factor, mult in f.root_structure():
        if factor == "inf":
            values.extend([None] * mult)
            radii.extend([0.0] * mult)
            continue
        fc = _float_coeffs(factor)
        best = None
        for attempt in range(3):
            z, _ = _aberth(fc, rng=rng, max_iter=400 * (attempt + 1))
            r = _inclusion_radii(fc, z)
            if best is None or np.max(r / np.maximum(1, np.abs(z))) < \
                    np.max(best[1] / np.maximum(1, np.abs(best[0]))):
                best = (z, r)
            if np.all(r <= target_accuracy * np.maximum(1.0, np.abs(z))):
                break
        z, r = best
        if not np.all(r <= target_accuracy * np.maximum(1.0, np.abs(z))):
            raise RootFindingError(
                f"roots of a degree-{len(factor) - 1} factor not certified to "
                f"{target_accuracy}", radii=[float(x) for x in r])
        order = np.lexsort((z.imag, z.real))
        for i in order:
            for _ in range(mult):
                values.append(complex(z[i]))
                radii.append(float(r[i]))
    return MarkedConfig(tuple(SpherePoint.of(v, r) for v, r in zip(values, radii)))


# --------------------------------------------------------------------------
# cross ratio and proximity

def _det(h, i, j):
    return h[..., i, 0] * h[..., j, 1] - h[..., j, 0] * h[..., i, 1]


def cross_ratio(z1, z2, z3, z4):
    """Cross ratio normalised by ``CR(oo, 0, 1, z) = z``.

    In homogeneous coordinates ``CR = [4,2][3,1] / ([4,1][3,2])`` with
    ``[i,j] = p_i q_j - p_j q_i``.
    """
    pts = [SpherePoint.of(z) for z in (z1, z2, z3, z4)]
    h = np.array([p.homogeneous() for p in pts])
    for i in range(4):
        for j in range(i):
            if abs(h[i, 0] * h[j, 1] - h[j, 0] * h[i, 1]) <= pts[i].radius + pts[j].radius:
                raise DegenerateConfigError(
                    f"points {j + 1} and {i + 1} coincide within their error radii")
    num = _det(h, 3, 1) * _det(h, 2, 0)
    den = _det(h, 3, 0) * _det(h, 2, 1)
    return complex(num / den)


def _ordered_quadruples(n):
    idx = np.array(np.meshgrid(*[np.arange(n)] * 4, indexing="ij")).reshape(4, -1).T
    keep = np.ones(len(idx), dtype=bool)
    for a in range(4):
        for b in range(a):
            keep &= idx[:, a] != idx[:, b]
    return idx[keep]


_QUADS = {}


def _abs_det_matrix(h):
    return np.abs(h[:, None, 0] * h[None, :, 1] - h[None, :, 0] * h[:, None, 1])


def prox_p1_detail(config):
    """``(value, diagonal)``: the proximity and whether the configuration was
    treated as lying on the big diagonal (two points within their combined
    error radii)."""
    if isinstance(config, MarkedConfig):
        h = config.homogeneous()
        radii = config.radii()
    else:
        h = _unit(config)
        radii = np.zeros(len(h))
    n = len(h)
    if n < 4:
        raise DegreeError(f"proximity needs at least four points, got {n}")
    D = _abs_det_matrix(h)
    close = D <= radii[:, None] + radii[None, :]
    np.fill_diagonal(close, False)
    if np.any(close):
        return 0.0, True
    if n not in _QUADS:
        _QUADS[n] = _ordered_quadruples(n)
    q = _QUADS[n]
    i, j, k, l = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    vals = D[l, j] * D[k, i] / (D[l, i] * D[k, j])
    return float(np.min(vals)), False


def prox_p1(config):
    """Minimum of ``|CR(z_i, z_j, z_k, z_l)|`` over ordered quadruples of
    distinct indices; 0 on the big diagonal."""
    return prox_p1_detail(config)[0]


class FlatTorus:
    """The torus ``C / (Z w1 + Z w2)`` with its flat metric.

    The basis is Lagrange-Gauss reduced on construction and oriented so
    that ``Im(w2 / w1) > 0``.
    """

    def __init__(self, w1, w2):
        w1, w2 = complex(w1), complex(w2)
        area = (w1.conjugate() * w2).imag
        if not (abs(w1) > 0 and abs(w2) > 0) or abs(area) <= 1e-12 * abs(w1) * abs(w2):
            raise LatticeError("lattice basis is not R-linearly independent")
        if abs(w2) < abs(w1):
            w1, w2 = w2, w1
        for _ in range(200):
            m = round(((w2 * w1.conjugate()).real) / abs(w1) ** 2)
            if m == 0:
                break
            w2 = w2 - m * w1
            if abs(w2) < abs(w1):
                w1, w2 = w2, w1
        if (w2 / w1).imag < 0:
            w2 = -w2
        self.w1, self.w2 = w1, w2
        self.reduced = True

    def distance(self, a, b):
        delta = complex(a) - complex(b)
        # real coordinates of delta in the basis, then nearby translates
        m = np.array([[self.w1.real, self.w2.real], [self.w1.imag, self.w2.imag]])
        x, y = np.linalg.solve(m, [delta.real, delta.imag])
        bx, by = round(x), round(y)
        best = math.inf
        for i in range(bx - 2, bx + 3):
            for j in range(by - 2, by + 3):
                best = min(best, abs(delta - i * self.w1 - j * self.w2))
        return best


def prox_torus(T, points):
    """Minimum flat distance between distinct marked points."""
    if not isinstance(T, FlatTorus):
        T = FlatTorus(*T)
    pts = [complex(p) for p in points]
    if len(pts) < 2:
        raise DegreeError("torus proximity needs at least two points")
    return min(T.distance(pts[i], pts[j])
               for i in range(len(pts)) for j in range(i))


# --------------------------------------------------------------------------
# paths

class FormFamily:
    """A family of degree-``d`` binary forms whose coefficients are
    polynomials in a time parameter ``t`` (lists, lowest degree first)."""

    def __init__(self, coeff_polys, degree):
        self.degree = int(degree)
        polys = [up.trim([Fraction(c) for c in p]) for p in coeff_polys]
        polys += [[] for _ in range(self.degree + 1 - len(polys))]
        self.coeff_polys = polys
        self._float = [np.array([float(c) for c in p[::-1]]) if p else np.zeros(1)
                       for p in polys]

    def form_at(self, t):
        t = Fraction(t)
        return BinaryForm([up.evaluate(p, t) for p in self.coeff_polys], self.degree)

    def coeffs_at(self, t):
        return np.array([np.polyval(p, t) for p in self._float], dtype=complex)

    def value_at_point(self, u, v):
        """Exact value of the form at ``[u:v]`` as a polynomial in ``t``."""
        acc = []
        for i, p in enumerate(self.coeff_polys):
            acc = up.add(acc, up.scale(p, Fraction(u) ** i * Fraction(v) ** (self.degree - i)))
        return acc

    def boundary(self):
        return self.form_at(0)


@dataclass
class DegeneratingPath:
    """The segment ``L(t) = L0 + t (L1 - L0)`` of lines, certified to meet the
    dual curve only at ``t = 0``."""

    L0: LineCoords
    L1: LineCoords
    restriction: str
    zero_order: int
    attempts: list
    family: FormFamily = None
    chart: int = None
    seed: int = 0

    def line_at(self, t):
        t = Fraction(t)
        return tuple(a + t * (b - a) for a, b in zip(self.L0, self.L1))

    def to_dict(self):
        return {"L0": self.L0.to_list(), "L1": self.L1.to_list(),
                "restriction": self.restriction, "zero_order": self.zero_order,
                "attempts": self.attempts, "seed": self.seed}


def _section_family(curve, L0, L1, chart=None):
    """Exact section coefficients along ``L0 + t (L1 - L0)``."""
    d = curve.degree
    a = [Fraction(x) for x in L0]
    b = [Fraction(x) for x in L1]
    lines = [[a[i], b[i] - a[i]] for i in range(3)]   # coordinate i as poly in t
    if isinstance(curve, ParametricCurve):
        comps = curve.lists()
        coeffs = [[] for _ in range(d + 1)]
        for i in range(3):
            for j, c in enumerate(comps[i]):
                coeffs[j] = up.add(coeffs[j], up.scale(lines[i], c))
        return FormFamily(coeffs, d)
    # implicit: spanning points of the fixed chart, linear in t
    U, V, W = lines
    zero = []
    neg = lambda p: up.scale(p, -1)
    pts = {0: ((V, neg(U), zero), (W, zero, neg(U))),
           1: ((V, neg(U), zero), (zero, W, neg(V))),
           2: ((W, zero, neg(U)), (zero, W, neg(V)))}[chart]
    # F(s P1 + P2): expand term by term with coefficients polynomial in t
    coeffs = [[] for _ in range(d + 1)]
    for e, c in curve.form.terms.items():
        poly = {0: [c]}    # s-degree -> poly in t
        for k, x in enumerate(e):
            for _ in range(x):
                new = {}
                for sd, p in poly.items():
                    new[sd + 1] = up.add(new.get(sd + 1, []), up.mul(p, pts[0][k]))
                    new[sd] = up.add(new.get(sd, []), up.mul(p, pts[1][k]))
                poly = new
        for sd, p in poly.items():
            coeffs[sd] = up.add(coeffs[sd], p)
    return FormFamily(coeffs, d)


def _common_chart(L0, L1):
    for i in range(3):
        if L0[i] and L1[i] and (L0[i] > 0) == (L1[i] > 0):
            return i
    return None


def degenerating_path(curve, L0, trials=20, seed=0, L1=None, box=5):
    """Certify a segment of lines starting on the dual curve and leaving it.

    The dual form restricted to ``L0 + t (L1 - L0)`` is divided by its power
    of ``t``; a Sturm count of zero on ``(0, 1]`` certifies the segment. A
    given ``L1`` is tried first, then seeded random endpoints ``K L0 + delta``
    with ``delta`` in a small box and ``K`` doubling every second trial.
    """
    if not isinstance(L0, LineCoords):
        L0 = LineCoords(L0)
    if not dual_membership(curve, L0):
        raise PreconditionError(f"{L0} is not a tangent line of the curve")
    G = dual_form(curve)
    if G.form.evaluate(dict(zip(G.names, L0.coords))) != 0:
        raise PreconditionError(f"dual form does not vanish at {L0}")
    rng = random.Random(seed)
    attempts = []
    candidates = []
    if L1 is not None:
        candidates.append(L1 if isinstance(L1, LineCoords) else LineCoords(L1))
    implicit = isinstance(curve, ImplicitCurve)
    tried = 0
    while tried < trials:
        if candidates:
            cand = candidates.pop(0)
        else:
            # K L0 + delta: larger K gives projectively shorter segments
            scale = 2 ** (tried // 2)
            vals = [scale * a + rng.randint(-box, box) for a in L0]
            if not any(vals):
                continue
            cand = LineCoords(vals)
        tried += 1
        if cand == L0:
            attempts.append({"L1": cand.to_list(), "accepted": False, "reason": "equals L0"})
            continue
        chart = None
        if implicit:
            chart = _common_chart(L0, cand)
            if chart is None:
                attempts.append({"L1": cand.to_list(), "accepted": False,
                                 "reason": "no coordinate keeps its sign along the segment"})
                continue
        direction = [b - a for a, b in zip(L0, cand)]
        g = restrict_to_line(G.form, list(L0), direction)
        if not g:
            attempts.append({"L1": cand.to_list(), "accepted": False,
                             "reason": "segment lies in the dual curve"})
            continue
        k = 0
        while g[k] == 0:
            k += 1
        g = g[k:]
        n = up.count_real_roots(g, 0, 1)
        if n:
            roots = [[float(lo), float(hi)] for lo, hi in up.isolate_real_roots(g)
                     if hi > 0 and lo < 1]
            attempts.append({"L1": cand.to_list(), "accepted": False,
                             "reason": f"{n} root(s) of the restricted dual form in (0,1]",
                             "root_intervals": roots})
            continue
        attempts.append({"L1": cand.to_list(), "accepted": True, "reason": "certified"})
        fam = _section_family(curve, L0.coords, cand.coords, chart)
        return DegeneratingPath(L0=L0, L1=cand, zero_order=k, attempts=attempts,
                                restriction=str(ExactPoly.from_univariate(g, "t")),
                                family=fam, chart=chart, seed=seed)
    raise CertificationError(f"no certified segment from {L0} in {trials} trials", attempts)


# --------------------------------------------------------------------------
# lifting

@dataclass
class LiftPath:
    """Root tracks along a path, ordered by increasing time.

    ``homog[j, i]`` is the unit homogeneous vector of track ``i`` at
    ``times[j]``; ``times[0] = 0`` holds the exact boundary roots the tracks
    cluster onto.
    """

    times: np.ndarray
    homog: np.ndarray
    radii: np.ndarray
    witnesses: list
    boundary_partition: tuple
    clusters: list
    chart: tuple
    degree: int
    family: object = None
    stop_reason: str = "t_min"

    @property
    def configs(self):
        return [MarkedConfig(tuple(_from_homogeneous(h, r) for h, r in zip(hs, rs)))
                for hs, rs in zip(self.homog, self.radii)]

    def values(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            v = self.homog[..., 0] / self.homog[..., 1]
        v[np.abs(self.homog[..., 1]) == 0] = np.inf
        return v

    def to_dict(self, include_tracks=False):
        out = {"steps": int(len(self.times) - 1), "degree": self.degree,
               "boundary_partition": list(self.boundary_partition),
               "clusters": self.clusters, "chart": list(self.chart),
               "stop_reason": self.stop_reason,
               "t_min": float(self.times[1]) if len(self.times) > 1 else 0.0,
               "max_step_cost": float(max((w["cost"] for w in self.witnesses), default=0.0))}
        if include_tracks:
            out["tracks"] = [[[_clean(z.real), _clean(z.imag)] if np.isfinite(z) else "inf"
                              for z in row] for row in self.values()]
        return out


def _moebius_chart(family, rng):
    """Coordinates ``z = (a w + b)/(c w + e)`` in which the leading
    coefficient of every form of the family is nonzero on ``[0, 1]``."""
    cands = [(1, 0)] + [(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(60)]
    for a, c in cands:
        if math.gcd(a, c) != 1:
            continue
        lead = family.value_at_point(a, c)
        if not lead:
            continue
        if up.evaluate(lead, 0) == 0 or up.count_real_roots(lead, 0, 1):
            continue
        # complete to a unimodular matrix
        g, x, y = _egcd(a, c)
        b, e = -y, x
        return (a, b, c, e)
    raise CertificationError("no chart keeps all roots finite along the path")


def _egcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return (g, y, x - (a // b) * y)


def _chart_coeffs(coeffs, chart, degree):
    """Float coefficients of ``f(a w + b, c w + e)`` (lowest first)."""
    a, b, c, e = chart
    if (a, b, c, e) == (1, 0, 0, 1):
        return coeffs
    out = np.zeros(degree + 1, dtype=complex)
    for i, x in enumerate(coeffs):
        if x == 0:
            continue
        term = np.array([x])
        for _ in range(i):
            term = np.convolve(term, [b, a])
        for _ in range(degree - i):
            term = np.convolve(term, [e, c])
        out[:len(term)] += term
    return out


def _to_homog(w, chart):
    a, b, c, e = chart
    h = np.stack([a * w + b, c * w + e], axis=-1)
    return _unit(h)


def _second_best(cost, rows, cols):
    best = math.inf
    for r, c in zip(rows, cols):
        m = cost.copy()
        m[r, c] = 1e300
        rr, cc = linear_sum_assignment(m)
        best = min(best, float(m[rr, cc].sum()))
    return best


def _roots_at(family, chart, t, start, rng):
    coeffs = _chart_coeffs(family.coeffs_at(t), chart, family.degree)
    scale = np.max(np.abs(coeffs))
    coeffs = coeffs / scale
    w, _ = _aberth(coeffs, start=start, rng=rng)
    r = _inclusion_radii(coeffs, w)
    return w, r


def lift_path(curve, path, steps=120, tol=1e-8, t_min=1e-12, seed=0, max_halvings=40):
    """Track the ``d`` roots of the line sections from ``t = 1`` to ``t = 0``.

    The time grid is geometric between ``t_min`` and 1. At each step the
    roots are recomputed (Aberth, warm-started from a linear predictor) and
    matched to the predicted positions by an optimal assignment on chordal
    distance; if the second-best assignment costs less than twice the best,
    the step is halved. The descent stops early once the inclusion radii of
    the recomputed roots exceed ``tol`` (relative), since clustering roots
    lose accuracy in double precision. The last accepted configuration is
    then clustered onto the exact roots of the boundary section at ``t = 0``
    and the cluster sizes must reproduce its multiplicities.

    ``curve`` may be ``None`` when ``path`` is a :class:`FormFamily`.
    """
    family = path.family if isinstance(path, DegeneratingPath) else path
    if not isinstance(family, FormFamily):
        raise PreconditionError("lift_path needs a certified path or a form family")
    d = family.degree
    rng = random.Random(seed)
    nrng = np.random.default_rng(seed)
    chart = _moebius_chart(family, rng)
    grid = list(np.geomspace(1.0, t_min, steps))
    times = [1.0]
    w, r = _roots_at(family, chart, 1.0, None, nrng)
    if d > 1 and np.min(np.abs(w[:, None] - w[None, :]) + np.eye(d) * 1e300) <= 0:
        raise PreconditionError("section at t = 1 has a repeated root")
    ws = [w]
    rs = [r]
    witnesses = []
    pending = grid[1:]
    halvings = 0
    stop_reason = "t_min"
    while pending:
        t_new = pending[0]
        t_old = times[-1]
        if len(ws) >= 2:
            ratio = (t_new - t_old) / (times[-2] - t_old) if times[-2] != t_old else 0.0
            pred = ws[-1] + (ws[-1] - ws[-2]) * (-ratio)
        else:
            pred = ws[-1]
        w_new, r_new = _roots_at(family, chart, t_new, pred, nrng)
        if np.any(r_new > tol * np.maximum(1.0, np.abs(w_new))):
            # roots of the clustering section are no longer resolved to tol
            stop_reason = "precision"
            break
        h_prev = _to_homog(ws[-1], chart)
        h_pred = _to_homog(pred, chart)
        h_new = _to_homog(w_new, chart)
        cost = chordal(h_pred[:, None, :], h_new[None, :, :])
        rows, cols = linear_sum_assignment(cost)
        best = float(cost[rows, cols].sum())
        second = _second_best(cost, rows, cols) if d > 1 else math.inf
        if second < 2 * best:
            halvings += 1
            if halvings > max_halvings or abs(t_new - t_old) < 1e-15 * max(t_old, 1e-300):
                raise StepUnderflowError(
                    f"step size underflow near t = {t_old:.3e}: assignment stays ambiguous")
            pending.insert(0, math.sqrt(t_new * t_old))
            continue
        halvings = 0
        order = np.empty(d, dtype=int)
        order[rows] = cols
        w_new = w_new[order]
        r_new = r_new[order]
        disp = chordal(h_prev, h_new[order])
        witnesses.append({"t": float(t_new), "cost": best, "second": second,
                          "max_disp": float(np.max(disp)) if d else 0.0})
        ws.append(w_new)
        rs.append(r_new)
        times.append(t_new)
        pending.pop(0)
    # boundary clustering
    f0 = family.boundary()
    partition = multiplicity_partition(f0).parts
    targets, mults = _boundary_roots(f0)
    h_last = _to_homog(ws[-1], chart)
    dist = chordal(h_last[:, None, :], targets[None, :, :])
    owner = np.argmin(dist, axis=1)
    counts = np.bincount(owner, minlength=len(targets))
    if list(counts) != list(mults):
        raise AmbiguousAssignmentError(
            f"tracks cluster as {sorted(counts.tolist(), reverse=True)} but the boundary "
            f"section has partition {list(partition)}")
    clusters = sorted((int(c) for c in counts), reverse=True)
    hom = [_to_homog(w, chart) for w in ws]
    hom.append(targets[owner])
    rad = rs + [np.zeros(d)]
    times.append(0.0)
    # store ascending in time, radii converted to chordal-safe upper bounds
    hom = np.array(hom[::-1])
    rad = np.array([np.asarray(x, dtype=float) for x in rad[::-1]])
    return LiftPath(times=np.array(times[::-1]), homog=hom, radii=rad,
                    witnesses=witnesses[::-1], boundary_partition=partition,
                    clusters=clusters, chart=chart, degree=d, family=family,
                    stop_reason=stop_reason)


def _boundary_roots(f):
    pts, mults = [], []
    for factor, m in f.root_structure():
        if factor == "inf":
            pts.append(np.array([1.0 + 0j, 0j]))
            mults.append(m)
            continue
        fc = _float_coeffs(factor)
        z, _ = _aberth(fc)
        for x in z:
            pts.append(_unit(np.array([x, 1.0])))
            mults.append(m)
    return np.array(pts), mults


def verify_lift(lift, samples=50, tol=1e-8):
    """Largest discrepancy between the tracked configuration and roots
    recomputed independently with ``numpy.roots`` at sampled times ``t > 0``
    (optimal matching on chordal distance)."""
    idx = np.unique(np.linspace(1, len(lift.times) - 1, samples).round().astype(int))
    worst = 0.0
    for j in idx:
        t = lift.times[j]
        coeffs = lift.family.coeffs_at(t)
        aff = np.trim_zeros(coeffs, "b")
        roots = np.roots(aff[::-1]) if len(aff) > 1 else np.zeros(0)
        h = [_unit(np.array([z, 1.0])) for z in roots]
        h += [np.array([1.0 + 0j, 0j])] * (lift.degree - len(roots))
        h = np.array(h)
        cost = chordal(lift.homog[j][:, None, :], h[None, :, :])
        rows, cols = linear_sum_assignment(cost)
        worst = max(worst, float(np.max(cost[rows, cols])))
    return worst


# --------------------------------------------------------------------------
# experiments

@dataclass
class ProxSeries:
    times: list
    prox: list
    max_radius: list
    diagonal: list
    verdict: str
    boundary_partition: tuple
    epsilon: float
    path: object = None

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "prox", "max_radius"])
        for t, p, r in zip(self.times, self.prox, self.max_radius):
            w.writerow([repr(float(t)), repr(float(p)), repr(float(r))])
        return buf.getvalue()

    def to_dict(self):
        return {"verdict": self.verdict, "epsilon": self.epsilon,
                "boundary_partition": list(self.boundary_partition),
                "final_prox": self.prox[0] if self.prox else None,
                "initial_prox": self.prox[-1] if self.prox else None,
                "points": len(self.times)}

    def to_json(self):
        return json.dumps({"series": [{"t": t, "prox": p, "max_radius": r}
                                      for t, p, r in zip(self.times, self.prox, self.max_radius)],
                           **self.to_dict()}, sort_keys=True)


def prox_limit_experiment(curve, path, steps=120, tol=1e-8, epsilon=1e-3, seed=0, lift=None):
    """Proximity of the lifted roots along a degenerating path.

    Rows are ``(t, prox, max_radius)`` for ``t > 0`` in increasing ``t``. The
    verdict is ``"tends-to-zero"`` when the boundary partition has no part of
    size ``d-1`` or more and the proximity at the smallest time is below
    ``epsilon``, and ``"bounded-below"`` otherwise.
    """
    if curve is not None and not isinstance(curve, ParametricCurve):
        raise PreconditionError("the experiment marks roots on a rational parameterisation")
    family = path.family if isinstance(path, DegeneratingPath) else path
    if family.degree < 4:
        raise DegreeError("proximity needs at least four marked points (degree >= 4)")
    lift = lift or lift_path(curve, path, steps=steps, tol=tol, seed=seed)
    times, prox, radii, diag = [], [], [], []
    for j in range(1, len(lift.times)):
        h = lift.homog[j]
        r = lift.radii[j]
        rad = np.where(np.isfinite(r), r, 0.0)
        cfg = MarkedConfig(tuple(_from_homogeneous(x, 0.0) for x in h))
        val, on_diag = prox_p1_detail(cfg)
        times.append(float(lift.times[j]))
        prox.append(val)
        radii.append(float(np.max(rad)) if len(rad) else 0.0)
        diag.append(on_diag)
    part = lift.boundary_partition
    d = family.degree
    tame = max(part) <= d - 2
    verdict = "tends-to-zero" if tame and prox and prox[0] < epsilon else "bounded-below"
    return ProxSeries(times=times, prox=prox, max_radius=radii, diagonal=diag,
                      verdict=verdict, boundary_partition=part, epsilon=epsilon, path=lift)
