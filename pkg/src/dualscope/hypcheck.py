"""Which hyperbolicity criterion applies to a plane curve, with witnesses.

The verdict engine runs a fixed sequence of exact subchecks and reports the
first criterion whose hypotheses all hold:

* smooth implicit curves: the complement of the dual is arithmetically
  hyperbolic (AH) iff ``d >= 3``; conics and lines get NOT_AH;
* rational, smoothly branched, nondegenerate curves of degree ``d >= 4``:
  integral points are Zariski degenerate (ZD), upgraded to AH when no line
  has contact ``d - 1`` or more;
* the same with ``d >= 5`` and a semistable dual point whose section is not
  a simple tangency: uniformly Zariski degenerate (UZD).

NOT_AH is only reported for degree at most 2 or for two maximal-contact
tangents whose pencil meets the dual curve in those two points alone (the
complement of the dual then contains a doubly punctured line). Anything
else is UNDECIDED.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import _upoly as up
from .binaryform import STABLE, STRICTLY_SEMISTABLE, fiber_shape, git_classify
from .dualgeom import (ImplicitCurve, LineCoords, ParametricCurve, _contact_at,
                       _cross, dual_form, high_tangency_scan, line_section,
                       smoothly_branched_check)
from .errors import DualscopeError
from .polycore import ExactPoly, divexact, resultant

__all__ = ["Verdict", "Hypothesis", "genus_of", "check_hyperbolicity",
           "bitangent_candidates", "UNSUPPORTED",
           "AH", "ZD", "UZD", "NOT_AH", "UNDECIDED", "CRITERIA"]

AH, ZD, UZD, NOT_AH, UNDECIDED = "AH", "ZD", "UZD", "NOT_AH", "UNDECIDED"
UNSUPPORTED = "unsupported"
CRITERIA = ("thm-genus>=1", "cor-smooth-plane", "prop-rational", "prop-rational-AH",
            "prop-GIT-uniform", "sharpness-counterexample", "none")


@dataclass(frozen=True)
class Hypothesis:
    name: str
    passed: bool
    witness: object = None

    def to_dict(self):
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class Verdict:
    criterion: str
    hypotheses: list
    conclusion: str
    artifacts: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {self.criterion!r}")
        # soundness gate: positive conclusions need every cited hypothesis
        if self.conclusion in (AH, ZD, UZD) and not all(h.passed for h in self.hypotheses):
            failed = [h.name for h in self.hypotheses if not h.passed]
            raise ValueError(f"{self.conclusion} with failed hypotheses {failed}")

    def to_dict(self):
        return {"criterion": self.criterion,
                "hypotheses": [h.to_dict() for h in self.hypotheses],
                "conclusion": self.conclusion,
                "artifacts": self.artifacts}


def genus_of(curve):
    """Geometric genus where it is known without a normalisation:
    0 for parameterised curves, ``(d-1)(d-2)/2`` for certified smooth
    implicit curves, else ``"unsupported"``."""
    if isinstance(curve, ParametricCurve):
        return 0
    if curve.smoothness().smooth is True:
        d = curve.degree
        return (d - 1) * (d - 2) // 2
    return UNSUPPORTED


def _rational_point(curve, height=10):
    """A small rational point of a conic, or None."""
    rng = range(-height, height + 1)
    best = None
    for p in product(rng, repeat=3):
        if not any(p) or curve.evaluate(p) != 0:
            continue
        key = (max(map(abs, p)), p)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return list(LineCoords(best[1]))


def _check_implicit(C):
    cert = C.smoothness()
    d = C.degree
    smooth = Hypothesis("smooth", cert.smooth is True, cert.witness)
    if cert.smooth is not True:
        return Verdict("none", [smooth], UNDECIDED,
                       {"dual_degree": None, "partitions_at_boundary": [],
                        "reasons": ["no smoothness certificate; supply a "
                                    "parameterisation of the normalisation"]})
    big = Hypothesis("degree>=3", d >= 3, d)
    if d >= 3:
        dual = dual_form(C)
        return Verdict("cor-smooth-plane", [smooth, big], AH,
                       {"dual_degree": dual.degree, "genus": genus_of(C),
                        "partitions_at_boundary": []})
    witness = {"degree": d}
    if d == 2:
        # lines through a point p of the conic form a line of the dual plane
        # tangent to the dual conic, so it meets the complement in an A^1
        p = _rational_point(C)
        if p is not None:
            grads = [C.form.diff(v).evaluate(dict(zip(C.names, p))) for v in C.names]
            witness.update({"point": p, "pencil": p,
                            "tangent_line": LineCoords(grads).to_list()})
    dual_degree = 2 if d == 2 else 0
    return Verdict("cor-smooth-plane", [smooth, big], NOT_AH,
                   {"dual_degree": dual_degree, "partitions_at_boundary": [],
                    "not_ah": witness})


def _dual_point_report(P, param, line):
    sec = line_section(P, line)
    shape = fiber_shape(sec)
    cls = git_classify(sec) if sec.degree >= 3 else None
    return {"param": param, "line": line.to_list(),
            "partition": shape.partition.as_list(), "class": cls,
            "simple_tangency": shape.simple_tangency}


def bitangent_candidates(P):
    """Rational parameters ``s`` whose tangent line meets the curve again
    with multiplicity at least two, plus ``"inf"``.

    With ``D(s)`` the tangent line at ``s``, ``D(s) . P(t)`` vanishes to
    order two along ``t = s``; after dividing that out, a repeated root in
    ``t`` is detected by the discriminant in ``t``, a polynomial in ``s``.
    Every rational root is returned; the caller reads the actual section.
    """
    names = ("s", "t")
    comps = P.lists()
    tangent = _cross(comps, P.derivative())
    h = ExactPoly.zero(names)
    for D, c in zip(tangent, comps):
        h = h + ExactPoly.from_univariate(D, "s", names) * ExactPoly.from_univariate(c, "t", names)
    diag = ExactPoly.variable("t", names) - ExactPoly.variable("s", names)
    k = divexact(h, diag * diag)
    params = []
    if k.degree_in("t") >= 2:
        R = resultant(k, k.diff("t"), "t")
        if not R.is_zero():
            params = up.rational_roots(R.to_univariate("s")) if not R.is_constant() else []
    return params + ["inf"]


def _uzd_witness(P):
    """A semistable dual point with a section that is not a simple
    tangency, found among rational bitangent and flex parameters."""
    seen = {}
    for s in bitangent_candidates(P):
        Q, r = (P.at_infinity(), Fraction(0)) if s == "inf" else (P, s)
        line, _ = _contact_at(Q, r)
        if line in seen:
            seen[line]["params"].append(str(s))
            continue
        rep = _dual_point_report(P, str(s), line)
        rep["params"] = [str(s)]
        seen[line] = rep
    found = [r for r in seen.values()
             if r["class"] in (STABLE, STRICTLY_SEMISTABLE) and not r["simple_tangency"]]
    for r in found:
        del r["param"]
    found.sort(key=lambda r: r["line"])
    return found


def _full_contact_pattern(P, G, top):
    """Pairs of contact-``d`` tangents whose pencil meets the dual curve only
    in those two lines."""
    d = P.degree
    pts = [p for p in top.points if p.exact and p.contact == d]
    out = []
    names = G.names
    for a, b in combinations(pts, 2):
        la, lb = list(a.line), list(b.line)
        lam, mu = ExactPoly.variable("l", ("l", "m")), ExactPoly.variable("m", ("l", "m"))
        sub = {n: lam * x + mu * y for n, x, y in zip(names, la, lb)}
        g = G.form.subs(sub, ("l", "m"))
        if len(g.terms) == 1:
            (e, _), = g.terms.items()
            out.append({"params": [str(a.param), str(b.param)],
                        "lines": [a.line.to_list(), b.line.to_list()],
                        "pencil_restriction": str(g.canonical()),
                        "orders": list(e)})
    return out


def _check_parametric(P):
    d = P.degree
    rational = Hypothesis("rational", True, "parameterised input (genus 0)")
    line = P.contained_line()
    nondeg = Hypothesis("nondegenerate", line is None,
                        None if line is None else {"contained_in": line.to_list()})
    if line is not None:
        return Verdict("none", [rational, nondeg], UNDECIDED,
                       {"dual_degree": None, "partitions_at_boundary": [],
                        "reasons": ["the curve lies in a line"]})
    branch = smoothly_branched_check(P)
    sb = Hypothesis("smoothly_branched", branch.passed, branch.to_dict())
    if not branch.passed:
        return Verdict("none", [rational, nondeg, sb], UNDECIDED,
                       {"dual_degree": None, "partitions_at_boundary": [],
                        "reasons": list(branch.reasons)})
    G = dual_form(P)
    arts = {"dual_degree": G.degree, "partitions_at_boundary": []}
    if d == 2:
        # a smooth conic; lines through one of its points give a dual-plane
        # line meeting the complement in an A^1
        pt = [up.evaluate(c, 0) for c in P.lists()]
        tl, _ = _contact_at(P, Fraction(0))
        arts["not_ah"] = {"degree": 2, "point": list(LineCoords(pt)), "pencil": list(LineCoords(pt)),
                          "tangent_line": tl.to_list()}
        return Verdict("cor-smooth-plane",
                       [Hypothesis("smooth", True, branch.to_dict()),
                        Hypothesis("degree>=3", False, d)], NOT_AH, arts)
    top = high_tangency_scan(P, d)
    pattern = _full_contact_pattern(P, G, top)
    if pattern:
        arts["not_ah"] = pattern
    if d == 3:
        big = Hypothesis("degree>=4", False, d)
        if pattern:
            return Verdict("sharpness-counterexample", [rational, nondeg, sb], NOT_AH, arts)
        arts["reasons"] = ["degree 3 rational curve without the two-tangent pattern"]
        return Verdict("none", [rational, nondeg, sb, big], UNDECIDED, arts)
    hyps = [rational, sb, nondeg, Hypothesis("degree>=4", True, d)]
    scan = high_tangency_scan(P, d - 1)
    arts["partitions_at_boundary"] = [
        _dual_point_report(P, str(p.param), p.line) for p in scan.points if p.exact]
    tangent_at = []
    for p in scan.points:
        tag = str(p.param) if p.exact else f"roots of {p.factor}"
        if tag not in tangent_at:
            tangent_at.append(tag)
    ah_check = Hypothesis(f"no_contact>={d - 1}", scan.empty, tangent_at)
    if ah_check.passed:
        return Verdict("prop-rational-AH", hyps + [ah_check], AH, arts)
    arts["subchecks"] = [ah_check.to_dict()]
    if d >= 5:
        found = _uzd_witness(P)
        if found:
            ss = Hypothesis("semistable_nonsimple_dual_point", True, found)
            return Verdict("prop-GIT-uniform",
                           [rational, sb, Hypothesis("degree>=5", True, d), ss], UZD, arts)
        arts["subchecks"].append(
            Hypothesis("semistable_nonsimple_dual_point", False,
                       "no rational bitangent or flex with a semistable section").to_dict())
    return Verdict("prop-rational", hyps, ZD, arts)


def check_hyperbolicity(curve):
    """Run the criteria in order and return a :class:`Verdict`.

    Domain errors raised by a subcheck turn into UNDECIDED with the error
    recorded, never into a positive conclusion.
    """
    try:
        if isinstance(curve, ImplicitCurve):
            if curve.degree == 1:
                return Verdict("cor-smooth-plane",
                               [Hypothesis("smooth", True, "a line"),
                                Hypothesis("degree>=3", False, 1)], NOT_AH,
                               {"dual_degree": 0, "partitions_at_boundary": [],
                                "not_ah": {"degree": 1}})
            return _check_implicit(curve)
        return _check_parametric(curve)
    except DualscopeError as exc:
        return Verdict("none", [Hypothesis("subchecks", False, exc.to_dict())], UNDECIDED,
                       {"dual_degree": None, "partitions_at_boundary": [],
                        "reasons": [str(exc)]})
