"""Plane curves, their duals, and line sections.

Two kinds of curve are supported: :class:`ParametricCurve`, a map
``t -> [x(t) : y(t) : z(t)]`` given by coprime polynomials, and
:class:`ImplicitCurve`, a reduced ternary form. A line ``U x + V y + W z = 0``
is a :class:`LineCoords` triple.

Duals are computed by elimination. For parametric curves the tangent line at
``t`` is ``P(t) x P'(t)`` and its image is implicitised with resultants; for
smooth implicit curves the dual is the discriminant of the restriction of
``F`` to a moving line. Both routes strip the extraneous factors that the
elimination introduces and cross-check several affine charts.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd as igcd

import numpy as np

from . import _upoly as up
from .binaryform import BinaryForm
from .errors import (ChartMismatchError, ContainedInLineError, DegenerateConfigError,
                     DegenerateCurveError, DegreeError, NotHomogeneousError,
                     NotSmoothError, PreconditionError, ZeroPolynomialError)
from .polycore import (ExactPoly, divexact, formal_resultant, gcd, is_squarefree,
                       parse_poly, restrict_to_line, resultant, squarefree_part)

__all__ = [
    "LineCoords", "ParametricCurve", "ImplicitCurve", "dual_parametrization",
    "implicitize", "dual_implicit", "dual_form", "line_section", "dual_membership",
    "smoothly_branched_check", "high_tangency_scan", "BranchReport",
    "TangencyPoint", "TangencyScan", "SmoothnessCertificate", "parse_curve",
]

PRIMAL = ("X", "Y", "Z")
DUAL = ("U", "V", "W")


def _other_names(names):
    return DUAL if tuple(names) == PRIMAL else PRIMAL


# --------------------------------------------------------------------------
# lines

class LineCoords:
    """A line ``[U:V:W]`` in primitive integral form, first nonzero entry
    positive."""

    __slots__ = ("coords",)

    def __init__(self, u, v=None, w=None):
        vals = tuple(u) if v is None else (u, v, w)
        if len(vals) != 3:
            raise DegenerateConfigError("a line needs exactly three coordinates")
        vals = [Fraction(x) for x in vals]
        if not any(vals):
            raise DegenerateConfigError("[0:0:0] is not a line")
        den = 1
        for x in vals:
            den = den * x.denominator // igcd(den, x.denominator)
        ints = [int(x * den) for x in vals]
        g = 0
        for x in ints:
            g = igcd(g, x)
        first = next(x for x in ints if x)
        if first < 0:
            g = -g
        self.coords = tuple(x // g for x in ints)

    @classmethod
    def parse(cls, text):
        parts = [p.strip() for p in text.replace(":", ",").strip("[]() ").split(",")]
        if len(parts) != 3:
            raise DegenerateConfigError(f"expected three coordinates U,V,W, got {text!r}")
        return cls(*(Fraction(p) for p in parts))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, LineCoords) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return "[" + ":".join(map(str, self.coords)) + "]"

    def __repr__(self):
        return f"LineCoords{self.coords}"

    def to_list(self):
        return list(self.coords)

    def spanning_points(self):
        """Two points spanning the line, from the chart of the first nonzero
        coordinate; their cross product is ``c * (U, V, W)``."""
        u, v, w = self.coords
        if u:
            return (v, -u, 0), (w, 0, -u)
        if v:
            return (v, -u, 0), (0, w, -v)
        return (w, 0, -u), (0, w, -v)


# --------------------------------------------------------------------------
# helpers on coefficient lists

def _as_ulist(obj, var):
    if isinstance(obj, str):
        obj = parse_poly(obj, [var])
    if isinstance(obj, ExactPoly):
        if any(v != var for v in obj.used_vars()):
            raise DegenerateCurveError(
                f"component {obj} involves variables other than {var}")
        return obj.to_univariate(var) if obj.used_vars() else (
            [obj.constant_value()] if obj else [])
    if isinstance(obj, (int, Fraction)):
        return up.trim([Fraction(obj)])
    return up.trim([Fraction(c) for c in obj])


def _cross(a, b):
    return [up.sub(up.mul(a[1], b[2]), up.mul(a[2], b[1])),
            up.sub(up.mul(a[2], b[0]), up.mul(a[0], b[2])),
            up.sub(up.mul(a[0], b[1]), up.mul(a[1], b[0]))]


def _det3(rows):
    return up.add(up.add(
        up.mul(rows[0][0], up.sub(up.mul(rows[1][1], rows[2][2]), up.mul(rows[1][2], rows[2][1]))),
        up.mul(rows[0][1], up.sub(up.mul(rows[1][2], rows[2][0]), up.mul(rows[1][0], rows[2][2])))),
        up.mul(rows[0][2], up.sub(up.mul(rows[1][0], rows[2][1]), up.mul(rows[1][1], rows[2][0]))))


def _dot(line, comps):
    acc = []
    for c, p in zip(line, comps):
        acc = up.add(acc, up.scale(p, Fraction(c)))
    return acc


def _gcd_all(polys):
    g = []
    for p in polys:
        g = up.gcd(g, p)
        if g == [1]:
            break
    return g


def _rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = max((len(r) for r in m), default=0)
    m = [r + [Fraction(0)] * (ncols - len(r)) for r in m]
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank, m


def _fmt_u(coeffs, var="t"):
    return str(ExactPoly.from_univariate(coeffs, var)) if coeffs else "0"


# --------------------------------------------------------------------------
# curves

class ParametricCurve:
    """Rational curve ``t -> [x(t) : y(t) : z(t)]``.

    A common polynomial factor of the components is divided out on
    construction and kept in ``removed_factor``. The degree is the largest
    component degree; the point ``t = oo`` is included through the
    homogenisation of that degree.
    """

    def __init__(self, x, y, z, var="t", names=PRIMAL):
        comps = [_as_ulist(c, var) for c in (x, y, z)]
        if not any(comps):
            raise ZeroPolynomialError("all three components vanish")
        g = _gcd_all([c for c in comps if c])
        self.removed_factor = g if up.deg(g) > 0 else [1]
        if up.deg(g) > 0:
            comps = [up.exquo(c, g) if c else [] for c in comps]
        self.comps = tuple(tuple(c) for c in comps)
        self.var = var
        self.names = tuple(names)
        self.degree = max(up.deg(c) for c in comps if c)
        rank, reduced = _rank(comps)
        self._rank = rank
        self._reduced = reduced
        if rank < 2:
            raise DegenerateCurveError("the parameterisation is constant (image is a point)")
        self._cache = {}

    @classmethod
    def parse(cls, text, var="t", names=PRIMAL):
        parts = [p for p in text.split(",")]
        if len(parts) != 3:
            raise DegenerateCurveError(
                f"a parameterisation needs three comma-separated components, got {len(parts)}")
        return cls(*(parse_poly(p, [var]) for p in parts), var=var, names=names)

    @property
    def components(self):
        return tuple(ExactPoly.from_univariate(c, self.var) for c in self.comps)

    def lists(self):
        return [list(c) for c in self.comps]

    def derivative(self, n=1):
        out = self.lists()
        for _ in range(n):
            out = [up.deriv(c) for c in out]
        return out

    def contained_line(self):
        """The line containing the image, or ``None``."""
        if self._rank == 3:
            return None
        # kernel of the 3 x (d+1) coefficient matrix, transposed
        cols = max(len(c) for c in self.comps)
        mat = [[Fraction(c[i]) if i < len(c) else Fraction(0) for c in self.comps]
               for i in range(cols)]
        _, red = _rank(mat)
        pivots = []
        for r in red:
            nz = next((j for j, x in enumerate(r) if x), None)
            if nz is not None:
                pivots.append(nz)
        free = next(j for j in range(3) if j not in pivots)
        vec = [Fraction(0)] * 3
        vec[free] = Fraction(1)
        for r in red:
            nz = next((j for j, x in enumerate(r) if x), None)
            if nz is not None:
                vec[nz] = -r[free] / r[nz]
        return LineCoords(vec)

    def at_infinity(self):
        """The curve re-parameterised by ``u = 1/t`` (homogenised to degree
        ``d``), so that ``u = 0`` is the point ``t = oo``."""
        return ParametricCurve(*(up.reverse(list(c), self.degree) if c else []
                                 for c in self.comps), var=self.var, names=self.names)

    def point(self, t):
        if t == "inf":
            return tuple(Fraction(c[self.degree]) if len(c) > self.degree else Fraction(0)
                         for c in self.comps)
        return tuple(up.evaluate(list(c), Fraction(t)) for c in self.comps)

    def __eq__(self, other):
        return (isinstance(other, ParametricCurve) and self.comps == other.comps
                and self.var == other.var)

    def __hash__(self):
        return hash(self.comps)

    def __str__(self):
        return ", ".join(_fmt_u(list(c), self.var) for c in self.comps)

    def __repr__(self):
        return f"ParametricCurve({str(self)!r})"

    def to_dict(self):
        return {"type": "parametric", "components": [_fmt_u(list(c), self.var) for c in self.comps],
                "degree": self.degree}


@dataclass(frozen=True)
class SmoothnessCertificate:
    smooth: object          # True, False, or None when undecided
    witness: str
    attempts: int = 0

    def to_dict(self):
        return {"smooth": self.smooth, "witness": self.witness, "attempts": self.attempts}


class ImplicitCurve:
    """Reduced plane curve ``F = 0`` for a homogeneous ternary form ``F``."""

    def __init__(self, F, names=None, check_reduced=True):
        if isinstance(F, str):
            F = parse_poly(F, list(names or PRIMAL), require_homogeneous=True)
        if names is None:
            used = F.used_vars()
            names = DUAL if used and set(used) <= set(DUAL) else PRIMAL
        names = tuple(names)
        extra = [v for v in F.used_vars() if v not in names]
        if extra:
            raise DegenerateCurveError(f"form uses variables {extra} outside {names}")
        F = F.with_vars(names) if F.vars != names else F
        if F.is_zero():
            raise ZeroPolynomialError("the zero form does not define a curve")
        if not F.is_homogeneous():
            raise NotHomogeneousError("a plane curve needs a homogeneous form")
        if F.degree < 1:
            raise DegreeError("a plane curve needs a form of positive degree")
        if check_reduced and not is_squarefree(F):
            raise DegenerateCurveError("the form has a repeated factor (curve is not reduced)")
        self.form = F.canonical()
        self.names = names
        self.degree = F.degree
        self.info = {}
        self._smooth = None
        self._cache = {}

    def __eq__(self, other):
        return isinstance(other, ImplicitCurve) and self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def __str__(self):
        return str(self.form)

    def __repr__(self):
        return f"ImplicitCurve({str(self)!r})"

    def to_dict(self):
        return {"type": "implicit", "form": str(self.form), "degree": self.degree}

    def evaluate(self, point):
        return self.form.evaluate(dict(zip(self.names, point)))

    def smoothness(self, seed=0, attempts=2):
        """Exact smoothness certificate (cached).

        After a seeded random unimodular change of coordinates with
        ``F(1,0,0) != 0``, the leading coefficient of ``F_X`` in ``X`` is a
        nonzero constant, so any singular point projects to a common zero of
        ``Res_X(F_X, F_Y)`` and ``Res_X(F_X, F_Z)``. A constant gcd of these
        two binary forms proves smoothness.
        """
        if self._smooth is not None:
            return self._smooth
        self._smooth = _certify_smooth(self.form, self.names, seed, attempts)
        return self._smooth

    @property
    def is_smooth(self):
        return self.smoothness().smooth is True


def _unimodular(rng):
    m = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        c = rng.randint(-3, 3)
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def _res_or_power(p, q, var):
    """Res_var(p, q) where ``p`` has positive degree and ``q`` may not."""
    if q.degree_in(var) <= 0:
        return q ** p.degree_in(var)
    return resultant(p, q, var)


def _certify_smooth(F, names, seed, attempts):
    d = F.degree
    if d == 1:
        return SmoothnessCertificate(True, "lines are smooth", 0)
    X, Y, Z = names
    rng = random.Random(seed)
    tried = 0
    while tried < attempts:
        m = _unimodular(rng)
        images = {v: sum((ExactPoly.variable(w, names) * m[i][j]
                          for j, w in enumerate(names)), ExactPoly.zero(names))
                  for i, v in enumerate(names)}
        G = F.subs(images, vars=names)
        if G.evaluate({X: 1, Y: 0, Z: 0}) == 0:
            continue
        tried += 1
        gx, gy, gz = G.diff(X), G.diff(Y), G.diff(Z)
        if gy.is_zero() or gz.is_zero():
            return SmoothnessCertificate(False, "a partial derivative vanishes identically "
                                         "(cone over points)", tried)
        r1 = _res_or_power(gx, gy, X)
        r2 = _res_or_power(gx, gz, X)
        if r1.is_zero() or r2.is_zero():
            return SmoothnessCertificate(False, "two partial derivatives share a component",
                                         tried)
        g = gcd(r1, r2)
        if g.is_constant():
            return SmoothnessCertificate(
                True, f"gcd of projected partial-derivative resultants is constant "
                      f"(change of coordinates {m})", tried)
    return SmoothnessCertificate(None, "not certified: projected resultants share a factor "
                                 f"in {tried} coordinate systems", tried)


def parse_curve(implicit=None, parametric=None):
    if (implicit is None) == (parametric is None):
        raise PreconditionError("give exactly one of an implicit form or a parameterisation")
    if implicit is not None:
        return ImplicitCurve(implicit)
    return ParametricCurve.parse(parametric)


# --------------------------------------------------------------------------
# duals

def dual_parametrization(P):
    """Parameterisation of the dual curve by tangent lines ``P x P'``,
    divided by the gcd of its components."""
    line = P.contained_line()
    if line is not None:
        raise DegenerateCurveError(f"the curve lies in the line {line}")
    comps = P.lists()
    q = _cross(comps, P.derivative())
    if not any(q):
        raise DegenerateCurveError("P x P' vanishes identically")
    return ParametricCurve(*q, var=P.var, names=_other_names(P.names))


def _strip_var(p, var):
    k = p.vars.index(var)
    m = min(e[k] for e in p.terms)
    if not m:
        return p, 0
    return ExactPoly._raw(p.vars, {e[:k] + (e[k] - m,) + e[k + 1:]: c
                                   for e, c in p.terms.items()}), m


def _power_root(p):
    """Write ``p = c * G^k`` with ``G`` squarefree; returns ``(G, k)`` or
    ``(None, None)`` when the factors carry different multiplicities."""
    if is_squarefree(p):
        return p.canonical(), 1
    G = squarefree_part(p)
    if p.degree % G.degree:
        return None, None
    k = p.degree // G.degree
    try:
        rest = divexact(p, G ** k)
    except ArithmeticError:
        return None, None
    if not rest.is_constant():
        return None, None
    return G, k


def implicitize(P):
    """Implicit equation of the image of ``P`` and the degree of the map.

    In the chart of each coordinate with a nonzero component, say ``x``, the
    resultant ``Res_t(x Y - y X, x Z - z X)`` equals ``c X^a G^k`` where
    ``G`` is the image curve and ``k`` the degree of ``P`` onto it. Every
    usable chart is computed and the results must agree.
    """
    d = P.degree
    names = P.names
    vars = names + (P.var,)
    comps = P.lists()
    T = [ExactPoly.from_univariate(c, P.var, vars) for c in comps]
    V = [ExactPoly.variable(n, vars) for n in names]
    found = []
    checks = []
    for i in range(3):
        if not comps[i]:
            continue
        j, k = [x for x in range(3) if x != i]
        A = T[i] * V[j] - T[j] * V[i]
        B = T[i] * V[k] - T[k] * V[i]
        if A.degree_in(P.var) <= 0 or B.degree_in(P.var) <= 0:
            continue
        R = resultant(A, B, P.var)
        if R.is_zero():
            raise ChartMismatchError(f"chart {names[i]}: resultant vanishes identically")
        R, _ = _strip_var(R, names[i])
        if R.is_constant():
            continue
        G, mult = _power_root(R)
        if G is None:
            raise ChartMismatchError(
                f"chart {names[i]}: eliminant is not a power of a squarefree form")
        found.append(G)
        checks.append({"chart": names[i], "degree": G.degree, "power": mult})
    if not found:
        raise DegenerateCurveError("no chart produced an implicit equation")
    G = found[0]
    for other, info in zip(found[1:], checks[1:]):
        if other != G:
            raise ChartMismatchError(f"chart {info['chart']} disagrees: {other} vs {G}")
    for info in checks:
        info["agrees"] = True
    if d % G.degree:
        raise ChartMismatchError(f"image degree {G.degree} does not divide {d}")
    curve = ImplicitCurve(G, names=names, check_reduced=False)
    curve.info = {"route": "parametric", "chart_checks": checks}
    return curve, d // G.degree


def _pencil_discriminant(F, chart, names):
    """Discriminant of ``F`` on the line ``[U:V:W]`` spanned by the two
    points of the given chart, as a form in ``U, V, W`` including the
    extraneous power of the chart variable."""
    U, V, W = (ExactPoly.variable(n, DUAL + ("s",)) for n in DUAL)
    zero = ExactPoly.zero(DUAL + ("s",))
    pts = {
        0: ((V, -U, zero), (W, zero, -U)),
        1: ((V, -U, zero), (zero, W, -V)),
        2: ((W, zero, -U), (zero, W, -V)),
    }[chart]
    s = ExactPoly.variable("s", DUAL + ("s",))
    # f(s, r) = F(s P1 + r P2); with r = 1 the binary form in (s, r) of degree d
    images = {n: s * pts[0][i] + pts[1][i] for i, n in enumerate(names)}
    f1 = F.subs(images, vars=DUAL + ("s",))
    d = F.degree
    coeffs = f1.coeffs_in("s")
    coeffs += [ExactPoly.zero(f1.vars)] * (d + 1 - len(coeffs))
    # homogeneous partials: f_s has coefficients (i+1) c_{i+1}, f_r has (d-i) c_i
    fs = [coeffs[i + 1] * (i + 1) for i in range(d)]
    fr = [coeffs[i] * (d - i) for i in range(d)]
    fs = [_drop_s(c) for c in fs]
    fr = [_drop_s(c) for c in fr]
    return formal_resultant(fs, fr, DUAL)


def _drop_s(c):
    k = c.vars.index("s")
    return ExactPoly._raw(DUAL, {e[:k] + e[k + 1:]: x for e, x in c.terms.items()})


def dual_implicit(C, charts=(0, 1, 2)):
    """Dual of a smooth implicit curve of degree ``d >= 2``.

    The discriminant of the restriction to a moving line carries the chart
    variable to the power ``d(d-1)``; after removing it the remaining form has
    degree ``d(d-1)``, and the charts must agree up to a scalar.
    """
    if C.degree < 2:
        raise DegreeError("the dual of a line is a point, not a curve")
    cert = C.smoothness()
    if cert.smooth is not True:
        raise NotSmoothError(
            f"the discriminant route needs a smooth curve ({cert.witness}); "
            "supply a parameterisation of the normalisation instead")
    d = C.degree
    if C.names != PRIMAL:
        F = ExactPoly._raw(PRIMAL, dict(C.form.terms))
    else:
        F = C.form
    found = []
    checks = []
    for chart in charts:
        R = _pencil_discriminant(F, chart, PRIMAL)
        var = DUAL[chart]
        x = ExactPoly.variable(var, DUAL) ** (d * (d - 1))
        try:
            R = divexact(R, x)
        except ArithmeticError:
            raise ChartMismatchError(
                f"chart {var}: discriminant is not divisible by {var}^{d * (d - 1)}")
        G = squarefree_part(R)
        if G.degree != d * (d - 1):
            raise ChartMismatchError(
                f"chart {var}: dual has degree {G.degree}, expected {d * (d - 1)}")
        found.append(G)
        checks.append({"chart": var, "degree": G.degree})
    G = found[0]
    for other, info in zip(found[1:], checks[1:]):
        if other != G:
            raise ChartMismatchError(f"chart {info['chart']} disagrees with chart {checks[0]['chart']}")
    for info in checks:
        info["agrees"] = True
    names = _other_names(C.names)
    if names != DUAL:
        G = ExactPoly._raw(names, dict(G.terms))
    dual = ImplicitCurve(G, names=names, check_reduced=False)
    dual.info = {"route": "implicit", "chart_checks": checks}
    return dual


def dual_form(curve):
    """The dual curve as an :class:`ImplicitCurve` (cached on the curve)."""
    if "dual" not in curve._cache:
        if isinstance(curve, ImplicitCurve):
            curve._cache["dual"] = dual_implicit(curve)
        else:
            dual, _ = implicitize(dual_parametrization(curve))
            curve._cache["dual"] = dual
    return curve._cache["dual"]


# --------------------------------------------------------------------------
# line sections

def line_section(curve, L):
    """The binary form of degree ``d`` cutting ``curve`` by the line ``L``.

    For a parameterisation this is ``U x + V y + W z`` homogenised to degree
    ``d`` (so ``t = oo`` is the root ``[1:0]``); for an implicit curve it is
    ``F`` restricted to the line through its two spanning points.
    """
    if not isinstance(L, LineCoords):
        L = LineCoords(L)
    if isinstance(curve, ParametricCurve):
        sec = _dot(L, curve.lists())
    else:
        p1, p2 = L.spanning_points()
        F = curve.form
        sec = restrict_to_line(F, p2, p1)
    if not sec:
        raise ContainedInLineError(f"the curve is contained in the line {L}")
    return BinaryForm(sec, curve.degree)


def dual_membership(curve, L):
    """Whether ``L`` is tangent to the curve, i.e. its section is not
    squarefree."""
    return not line_section(curve, L).is_squarefree()


# --------------------------------------------------------------------------
# branching and high tangency

@dataclass
class BranchReport:
    passed: bool
    minor_gcd: str
    ramification: list = field(default_factory=list)
    infinity_ok: bool = True
    map_degree: int = 1
    reasons: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {"passed": self.passed, "minor_gcd": self.minor_gcd,
                "ramification": self.ramification, "infinity_ok": self.infinity_ok,
                "map_degree": self.map_degree, "reasons": list(self.reasons)}


def _param_str(x):
    return str(x) if not isinstance(x, str) else x


def smoothly_branched_check(P):
    """Immersion at every parameter (including ``oo``) and birationality.

    Ramification points are the common roots of the three 2x2 minors of the
    matrix with rows ``P`` and ``P'``; at ``oo`` the same test is applied to
    the re-parameterised curve at ``u = 0``.
    """
    line = P.contained_line()
    if line is not None:
        raise DegenerateCurveError(f"the curve lies in the line {line}")
    minors = _cross(P.lists(), P.derivative())
    g = _gcd_all([m for m in minors if m])
    reasons = []
    ram = []
    if up.deg(g) > 0:
        roots = up.rational_roots(g)
        ram.extend(_param_str(r) for r in roots)
        rest = g
        for r in roots:
            while up.evaluate(rest, r) == 0:
                rest = up.exquo(rest, [-r, 1])
        if up.deg(rest) > 0:
            ram.append(f"roots of {_fmt_u(up.primitive(rest)[1], P.var)}")
        reasons.append(f"rank drops where {_fmt_u(g, P.var)} vanishes")
    Q = P.at_infinity()
    c0 = [up.evaluate(m, 0) for m in _cross(Q.lists(), Q.derivative())]
    inf_ok = any(c0)
    if not inf_ok:
        ram.append("inf")
        reasons.append("rank drops at t = oo")
    _, mdeg = implicitize(P)
    if mdeg != 1:
        reasons.append(f"parameterisation has degree {mdeg} onto its image")
    passed = up.deg(g) == 0 and inf_ok and mdeg == 1
    return BranchReport(passed=passed, minor_gcd=_fmt_u(g, P.var), ramification=ram,
                        infinity_ok=inf_ok, map_degree=mdeg, reasons=reasons)


def _r12(x):
    return round(float(x), 12) + 0.0      # + 0.0 drops the sign of zero


@dataclass(frozen=True)
class TangencyPoint:
    param: object       # Fraction, complex, or "inf"
    exact: bool
    line: object        # LineCoords when exact, else tuple of complex
    contact: int
    factor: str = ""

    def to_dict(self):
        if self.exact:
            param = _param_str(self.param)
            line = self.line.to_list()
        else:
            param = [_r12(self.param.real), _r12(self.param.imag)]
            line = [[_r12(z.real), _r12(z.imag)] for z in self.line]
        return {"param": param, "exact": self.exact, "line": line,
                "contact": self.contact, "factor": self.factor}


@dataclass
class TangencyScan:
    k: int
    points: list
    non_isolated: bool = False
    minor_gcd: str = ""

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def empty(self):
        return not self.points and not self.non_isolated

    def params(self):
        return [p.param for p in self.points]

    def to_dict(self):
        return {"k": self.k, "non_isolated": self.non_isolated, "minor_gcd": self.minor_gcd,
                "points": [p.to_dict() for p in self.points]}


def _jet_minor_gcd(comps, k):
    jets = [comps]
    for _ in range(k - 1):
        jets.append([up.deriv(c) for c in jets[-1]])
    minors = [_det3([jets[a], jets[b], jets[c]]) for a, b, c in combinations(range(k), 3)]
    return _gcd_all([m for m in minors if m]) if any(minors) else []


def _contact_at(P, r):
    comps = P.lists()
    pt = [up.evaluate(c, r) for c in comps]
    dp = [up.evaluate(c, r) for c in P.derivative()]
    line = [pt[1] * dp[2] - pt[2] * dp[1], pt[2] * dp[0] - pt[0] * dp[2],
            pt[0] * dp[1] - pt[1] * dp[0]]
    if not any(line):
        raise PreconditionError(f"the curve is not immersed at t = {r}")
    sec = _dot(line, comps)
    return LineCoords(line), up.root_multiplicity(sec, r)


def high_tangency_scan(P, k):
    """Parameters admitting a line with contact order at least ``k``.

    These are the common roots of the 3x3 minors of the jet matrix with rows
    ``P, P', ..., P^(k-1)``. Rational parameters and ``oo`` are reported
    exactly with their tangent line; other roots are reported numerically,
    with their contact order read off from the chain of jet-minor gcds.
    For ``k = 2`` every tangent qualifies and the result is flagged
    ``non_isolated``.
    """
    d = P.degree
    if not 2 <= k <= d:
        raise DegreeError(f"k must lie between 2 and the degree {d}, got {k}")
    if P.contained_line() is not None:
        raise DegenerateCurveError("the curve lies in a line")
    if k == 2:
        return TangencyScan(k=k, points=[], non_isolated=True, minor_gcd="0")
    comps = P.lists()
    g = _jet_minor_gcd(comps, k)
    points = []
    if up.deg(g) > 0:
        _, sq = up.primitive(g)
        h = up.gcd(sq, up.deriv(sq))
        if up.deg(h) > 0:
            sq = up.primitive(up.exquo(sq, h))[1]
        roots = up.rational_roots(sq)
        for r in roots:
            line, contact = _contact_at(P, r)
            points.append(TangencyPoint(r, True, line, contact, _fmt_u([-r.numerator, r.denominator], P.var)))
            sq = up.primitive(up.exquo(sq, [-r, 1]))[1]
        if up.deg(sq) > 0:
            points.extend(_irrational_points(P, sq, k))
    Q = P.at_infinity()
    line, contact = _contact_at(Q, Fraction(0))
    if contact >= k:
        points.append(TangencyPoint("inf", True, line, contact, "1/" + P.var))
    return TangencyScan(k=k, points=points, minor_gcd=_fmt_u(g, P.var))


def _irrational_points(P, h, k):
    comps = P.lists()
    d = P.degree
    # contact exactly j on the roots of gcd(h, g_j) / gcd(h, g_{j+1})
    levels = [h]
    for j in range(k + 1, d + 2):
        gj = _jet_minor_gcd(comps, j)
        levels.append(up.gcd(h, gj) if gj else h)
    out = []
    for idx in range(len(levels)):
        cur = levels[idx]
        nxt = levels[idx + 1] if idx + 1 < len(levels) else [1]
        if up.deg(cur) <= 0:
            continue
        piece = up.primitive(up.exquo(cur, nxt))[1] if up.deg(nxt) > 0 else cur
        if up.deg(piece) <= 0:
            continue
        contact = k + idx
        fstr = _fmt_u(piece, P.var)
        for z in np.roots([float(c) for c in reversed(piece)]):
            z = complex(z)
            pt = [np.polyval([float(c) for c in reversed(c_)], z) if c_ else 0j for c_ in comps]
            dp = [np.polyval([float(c) for c in reversed(c_)], z) if c_ else 0j
                  for c_ in P.derivative()]
            line = (pt[1] * dp[2] - pt[2] * dp[1], pt[2] * dp[0] - pt[0] * dp[2],
                    pt[0] * dp[1] - pt[1] * dp[0])
            nrm = max(abs(c) for c in line) or 1.0
            pivot = max(line, key=abs)
            line = tuple(complex(c / pivot) for c in line) if nrm else line
            out.append(TangencyPoint(z, False, line, contact, fstr))
    out.sort(key=lambda p: (p.param.real, p.param.imag))
    return out
