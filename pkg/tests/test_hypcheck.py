import json
from pathlib import Path

import pytest
import sympy as sp

from conftest import NODAL_QUINTIC, full_contact
from dualscope.catalog import curve
from dualscope.dualgeom import ImplicitCurve, ParametricCurve
from dualscope.hypcheck import (AH, NOT_AH, UNDECIDED, UNSUPPORTED, UZD, ZD, Hypothesis,
                                Verdict, bitangent_candidates, check_hyperbolicity, genus_of)

GOLDENS = Path(__file__).parent / "goldens"
t = sp.Symbol("t")


def verdict(c):
    return check_hyperbolicity(c).to_dict()


def golden(name):
    return json.loads((GOLDENS / f"verdict_{name}.json").read_text())


@pytest.mark.parametrize("name", ["fermat", "conic", "full-contact-5", "nodal-quintic"])
def test_verdict_goldens(name):
    assert verdict(curve(name)) == golden(name)


def test_genus():
    assert genus_of(ImplicitCurve("X^3+Y^3+Z^3")) == 1
    assert genus_of(ImplicitCurve("X^4+Y^4+Z^4")) == 3
    assert genus_of(ParametricCurve.parse("t^2,t,1")) == 0
    assert genus_of(ImplicitCurve("Y^2*Z - X^3 - X^2*Z")) == UNSUPPORTED


def test_smooth_plane_degree_rule():
    assert verdict(ImplicitCurve("X^4+Y^4-Z^4+X*Y*Z^2"))["conclusion"] == AH
    assert verdict(ImplicitCurve("X + 2*Y - Z"))["conclusion"] == NOT_AH


def test_conic_witness_is_on_the_curve():
    v = verdict(ImplicitCurve("X^2+Y^2-Z^2"))
    p = v["artifacts"]["not_ah"]["point"]
    L = v["artifacts"]["not_ah"]["tangent_line"]
    assert p[0] ** 2 + p[1] ** 2 - p[2] ** 2 == 0
    # tangent line is the gradient at p
    grad = [2 * p[0], 2 * p[1], -2 * p[2]]
    assert L[0] * grad[1] == L[1] * grad[0] and L[0] * grad[2] == L[2] * grad[0]


def test_conic_without_rational_points():
    v = verdict(ImplicitCurve("X^2+Y^2+Z^2"))
    assert v["conclusion"] == NOT_AH


def test_singular_implicit_is_undecided():
    v = verdict(ImplicitCurve("Y^2*Z - X^3 - X^2*Z"))
    assert v["conclusion"] == UNDECIDED and v["criterion"] == "none"


def test_cusp_is_undecided():
    v = verdict(ParametricCurve.parse("t^2,t^3,1"))
    assert v["conclusion"] == UNDECIDED
    assert [h["pass"] for h in v["hypotheses"] if h["name"] == "smoothly_branched"] == [False]


def test_rational_conic_and_cubics():
    assert verdict(ParametricCurve.parse("t^2,t,1"))["conclusion"] == NOT_AH
    v = verdict(ParametricCurve.parse(full_contact(3)))
    assert (v["conclusion"], v["criterion"]) == (NOT_AH, "sharpness-counterexample")


def test_full_contact_quartic_pattern():
    v = verdict(ParametricCurve.parse(full_contact(4)))
    assert v["conclusion"] == ZD
    pat = v["artifacts"]["not_ah"][0]
    assert pat["lines"] == [[1, 0, 0], [0, 0, 1]]
    assert pat["pencil_restriction"] == "l^3*m^3"


def test_full_contact_quintic_oracle():
    # X = 0 cuts (t^5, f, 1) in t^5: contact 5 at t = 0; Z = 0 cuts it in the
    # constant 1, so all 5 intersections sit at t = oo
    x, _, z = [sp.sympify(c.replace("^", "**")) for c in full_contact(5).split(",")]
    assert sp.roots(sp.Poly(x, t)) == {0: 5}
    assert 5 - sp.degree(z, t) == 5
    v = golden("full-contact-5")
    assert v["conclusion"] == ZD
    assert v["artifacts"]["subchecks"][0] == {"name": "no_contact>=4", "pass": False,
                                              "witness": ["0", "inf"]}


def test_nodal_quintic_bitangent_oracle():
    # independent check of the dual node: X - Y restricted to the curve
    comps = [sp.sympify(c.replace("^", "**")) for c in NODAL_QUINTIC.split(",")]
    sec = sp.factor(comps[0] - comps[1])
    assert sp.expand(sec + (t - 3) * (t - 1) ** 2 * (t + 1) ** 2) == 0
    w = golden("nodal-quintic")["hypotheses"][-1]["witness"][0]
    assert w["line"] == [1, -1, 0] and w["params"] == ["-1", "1"]
    assert w["partition"] == [2, 2, 1] and w["class"] == "stable"


def test_bitangent_candidates_quintic():
    P = ParametricCurve.parse(NODAL_QUINTIC)
    assert {-1, 1} <= set(bitangent_candidates(P))


def test_soundness_gate():
    bad = Hypothesis("smooth", False, "no")
    with pytest.raises(ValueError):
        Verdict("cor-smooth-plane", [bad], AH)
    with pytest.raises(ValueError):
        Verdict("no-such-criterion", [], UNDECIDED)
    # a negative conclusion may cite failed hypotheses
    Verdict("cor-smooth-plane", [bad], NOT_AH)


@pytest.mark.parametrize("text", [
    "t^4+t,t^3-t^2+2,t^2+3*t+1",
    "t^4-t,t^3+2*t,1",
    "t^5-t,t^2+t^4,t+1",
])
def test_generic_rational_curves_are_sound(text):
    v = check_hyperbolicity(ParametricCurve.parse(text))
    if v.conclusion in (AH, ZD, UZD):
        assert all(h.passed for h in v.hypotheses)
    assert v.conclusion in (AH, ZD, UZD, NOT_AH, UNDECIDED)
