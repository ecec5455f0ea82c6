import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linear_sum_assignment

from dualscope.binaryform import BinaryForm, parse_form
from dualscope.catalog import PATHS, load_path
from dualscope.dualgeom import ParametricCurve
from dualscope.errors import (DegenerateConfigError, DegreeError, LatticeError,
                              PreconditionError)
from dualscope.proxlift import (FlatTorus, FormFamily, MarkedConfig, chordal, cross_ratio,
                                degenerating_path, lift_path, prox_limit_experiment, prox_p1,
                                prox_p1_detail, prox_torus, roots_numeric, verify_lift)


def brute_prox(zs):
    """Independent oracle: affine cross ratios over all ordered quadruples."""
    best = math.inf
    for a, b, c, d in itertools.permutations(zs, 4):
        best = min(best, abs((d - b) * (c - a) / ((d - a) * (c - b))))
    return best


def moebius(z, m):
    a, b, c, d = m
    if z is None:
        return None if c == 0 else a / c
    den = c * z + d
    return None if den == 0 else (a * z + b) / den


# --- roots -----------------------------------------------------------------

def test_roots_of_unity():
    cfg = roots_numeric(parse_form("u^4 - v^4", 4))
    got = sorted((round(p.value.real, 12), round(p.value.imag, 12)) for p in cfg)
    assert got == [(-1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)]
    assert max(cfg.radii()) < 1e-12


def test_roots_with_infinity_and_multiplicity():
    cfg = roots_numeric(BinaryForm([0, 0, 1], 4))     # u^2 v^2
    vals = [p.value for p in cfg]
    assert vals.count(None) == 2 and vals.count(0j) == 2


def test_roots_need_binary_form():
    with pytest.raises(TypeError):
        roots_numeric([1, 0, 1])


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_roots_match_numpy(coeffs):
    f = BinaryForm(coeffs, len(coeffs) - 1)
    cfg = roots_numeric(f)
    want = np.roots(coeffs[::-1])
    got = np.array([p.value for p in cfg])
    h1 = np.array([p.homogeneous() for p in cfg])
    h2 = np.array([[z, 1.0] for z in want]) / np.sqrt(1 + np.abs(want)[:, None] ** 2)
    cost = chordal(h1[:, None, :], h2[None, :, :])
    r, c = linear_sum_assignment(cost)
    # repeated roots are where numpy itself is least accurate
    assert cost[r, c].max() < 1e-5
    assert len(got) == len(coeffs) - 1


# --- cross ratio and proximity ---------------------------------------------

def test_cross_ratio_normalisation():
    for z in (2.0, -0.5 + 1j, 3j):
        assert abs(cross_ratio("inf", 0, 1, z) - z) < 1e-12


def test_cross_ratio_coincident_points():
    with pytest.raises(DegenerateConfigError):
        cross_ratio(0, 1, 1, 2)


def test_prox_square_is_half():
    zs = [1, 1j, -1, -1j]
    assert abs(brute_prox(zs) - 0.5) < 1e-15
    assert abs(prox_p1(MarkedConfig.of(zs)) - 0.5) < 1e-12


def test_prox_on_diagonal_is_zero():
    val, diag = prox_p1_detail(MarkedConfig.of([0, 1, 1, 5]))
    assert (val, diag) == (0.0, True)
    val, diag = prox_p1_detail(MarkedConfig.of([0, 1, 1 + 1e-9, 5], radii=[1e-8] * 4))
    assert diag


def test_prox_needs_four_points():
    with pytest.raises(DegreeError):
        prox_p1(MarkedConfig.of([0, 1, 2]))


@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
                min_size=4, max_size=6))
def test_prox_matches_brute_force(zs):
    zs = [complex(round(z.real, 3), round(z.imag, 3)) for z in zs]
    if min(abs(a - b) for a, b in itertools.combinations(zs, 2)) < 1e-2:
        return
    assert abs(prox_p1(MarkedConfig.of(zs)) - brute_prox(zs)) <= 1e-9 * max(1, brute_prox(zs))


ints = st.integers(-4, 4)


@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=4, max_size=6,
                unique=True),
       st.tuples(ints, ints, ints, ints).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0),
       st.randoms(use_true_random=False))
def test_prox_moebius_and_permutation_invariant(pts, m, rnd):
    zs = [complex(a, b) / 4 for a, b in pts]
    moved = [moebius(z, m) for z in zs]
    rnd.shuffle(moved)
    p0 = prox_p1(MarkedConfig.of(zs))
    p1 = prox_p1(MarkedConfig.of(["inf" if z is None else z for z in moved]))
    assert abs(p0 - p1) <= 1e-9 * max(p0, 1e-300)


# --- torus -----------------------------------------------------------------

def test_torus_distance_square_lattice():
    T = FlatTorus(1, 1j)
    assert abs(T.distance(0.1, 0.9) - 0.2) < 1e-12
    assert abs(prox_torus(T, [0, 0.5, 0.5j]) - 0.5) < 1e-12


def test_torus_basis_independent():
    a, b = FlatTorus(1, 1j), FlatTorus(1, 3 + 1j)
    for z, w in [(0.2 + 0.1j, 0.9 + 0.8j), (0.3, 0.3 + 0.45j)]:
        assert abs(a.distance(z, w) - b.distance(z, w)) < 1e-12


def test_torus_degenerate_lattice():
    with pytest.raises(LatticeError):
        FlatTorus(1, 2)


@given(st.floats(0, 1), st.floats(0, 1), st.integers(-3, 3), st.integers(-3, 3))
def test_torus_distance_periodic(x, y, m, n):
    T = FlatTorus(1, 0.3 + 1.1j)
    z = x + y * 1j
    assert abs(T.distance(z, 0.25j) - T.distance(z + m * T.w1 + n * T.w2, 0.25j)) < 1e-9


# --- degenerating paths ----------------------------------------------------

def test_path_rejects_non_tangent_start():
    C = ParametricCurve.parse("t^4,t^3-3*t^2+2*t,1")
    with pytest.raises(PreconditionError):
        degenerating_path(C, [0, 1, 1])


def test_full_contact_path_restriction():
    C, p = load_path("full-contact-4-line")
    assert p.L1.to_list() == [1, 0, 1]
    assert p.zero_order >= 1
    assert p.attempts[-1]["accepted"]


def test_quartic_path_is_deterministic():
    _, p1 = load_path("quartic-211")
    _, p2 = load_path("quartic-211")
    assert p1.to_dict() == p2.to_dict()


# --- lifting ---------------------------------------------------------------

def test_lift_square_root_family():
    # u^2 - t v^2: the two roots are +-sqrt(t) and collide at t = 0
    fam = FormFamily([[0, -1], [], [1]], 2)
    lift = lift_path(None, fam, steps=60)
    assert lift.clusters == [2]
    vals = lift.values()
    for j in range(1, len(lift.times)):
        r = math.sqrt(lift.times[j])
        assert sorted(abs(v.real) for v in vals[j]) == pytest.approx([r, r], rel=1e-7, abs=1e-12)


@pytest.mark.parametrize("name", sorted(PATHS))
def test_shipped_lift_clusters(name):
    C, path = load_path(name)
    lift = lift_path(C, path)
    assert tuple(lift.clusters) == PATHS[name][4] == tuple(lift.boundary_partition)
    assert verify_lift(lift, tol=1e-8) <= 1e-7


def test_lift_steps_are_small():
    # consecutive accepted configurations move by a small chordal amount
    C, path = load_path("quartic-211")
    lift = lift_path(C, path)
    assert max(w["max_disp"] for w in lift.witnesses) < 0.1
    assert all(w["second"] >= 2 * w["cost"] for w in lift.witnesses)


def test_fermat_lift_partition():
    C, path = load_path("fermat-flex")
    lift = lift_path(C, path)
    assert lift.clusters == [3]


# --- experiments -----------------------------------------------------------

def test_prox_series_full_contact_constant():
    C, path = load_path("full-contact-4-line")
    s = prox_limit_experiment(C, path)
    # the section is s^4 + t: a square at every t, prox 1/2
    assert max(abs(p - 0.5) for p in s.prox) < 1e-9
    assert s.verdict == "bounded-below"
    assert s.to_csv().splitlines()[0] == "t,prox,max_radius"


def test_prox_experiment_needs_degree_four():
    C = ParametricCurve.parse("t^3,t^2-t,1")
    path = degenerating_path(C, [1, 0, 0], L1=[1, 0, 1])
    with pytest.raises(DegreeError):
        prox_limit_experiment(C, path)


def test_prox_experiment_rejects_implicit():
    C, path = load_path("fermat-flex")
    with pytest.raises(PreconditionError):
        prox_limit_experiment(C, path)


def test_unit_circle_roots_phase():
    cfg = roots_numeric(parse_form("u^3 - v^3", 3))
    angles = sorted(round(cmath.phase(p.value), 9) for p in cfg)
    assert angles == pytest.approx([-2 * math.pi / 3, 0.0, 2 * math.pi / 3])


def test_cross_ratio_swap_rule():
    # swapping the first two points inverts the cross ratio
    assert abs(cross_ratio(0, "inf", 1, 2) - 0.5) < 1e-12
    z = 0.3 + 0.7j
    assert abs(cross_ratio(0, "inf", 1, z) * cross_ratio("inf", 0, 1, z) - 1) < 1e-12


def test_prox_with_infinity_orbit():
    assert abs(prox_p1(MarkedConfig.of(["inf", 0, 1, 2])) - 0.5) < 1e-12
    assert prox_p1(MarkedConfig.of(["inf", 0, 1, 1e-6])) <= 1e-6 * (1 + 1e-9)


def test_torus_examples():
    T = FlatTorus(1, 1j)
    assert abs(prox_torus(T, [0, 0.5]) - 0.5) < 1e-12
    assert abs(prox_torus(T, [0, 0.9]) - 0.1) < 1e-12
    assert prox_torus(T, [0.25, 0.25, 0.7]) == 0.0


def test_roots_declared_degree_adds_infinity():
    cfg = roots_numeric(parse_form("t^2+1", 3))
    assert [p.value for p in cfg] == [-1j, 1j, None]


def test_fermat_endpoint_retry():
    # [0:0:1] shares no coordinate sign with [1:1:0], so no single affine chart
    # carries the segment and a seeded endpoint is used instead
    C, _ = load_path("fermat-flex")
    p = degenerating_path(C, [1, 1, 0], L1=[0, 0, 1])
    assert p.attempts[0]["L1"] == [0, 0, 1] and not p.attempts[0]["accepted"]
    assert p.L1.to_list() != [0, 0, 1]


def test_boundary_partition_decides_verdict():
    # the same quartic: a simple tangent drives the roots together, the
    # full-contact line does not
    C1, simple = load_path("quartic-211")
    C2, full = load_path("full-contact-4-line")
    assert str(C1) == str(C2)
    assert prox_limit_experiment(C1, simple).verdict == "tends-to-zero"
    assert prox_limit_experiment(C2, full).verdict == "bounded-below"
