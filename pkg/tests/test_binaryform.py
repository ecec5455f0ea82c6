from fractions import Fraction
import random

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from dualscope.binaryform import (STABLE, STRICTLY_SEMISTABLE, UNSTABLE, BinaryForm,
                                  fiber_shape, git_classify, multiplicity_partition, parse_form)
from dualscope.errors import DegreeError, ZeroPolynomialError


def form_from_roots(mults, inf=0):
    """prod (u - i v)^m_i times v^0 ... u^inf: roots i = 0, 1, 2, ... and [1:0]."""
    coeffs = [Fraction(1)]
    for i, m in enumerate(mults):
        for _ in range(m):
            # multiply by (u - i v): affine u - i
            coeffs = [(coeffs[k - 1] if k else 0) - i * (coeffs[k] if k < len(coeffs) else 0)
                      for k in range(len(coeffs) + 1)]
    d = sum(mults) + inf
    return BinaryForm(coeffs, d)


def test_partition_examples():
    assert multiplicity_partition(parse_form("s^3+t^3")).as_list() == [1, 1, 1]
    assert multiplicity_partition(parse_form("u^2*v^2", 4)).as_list() == [2, 2]
    assert multiplicity_partition(parse_form("u^5", 5)).as_list() == [5]


def test_declared_degree_puts_roots_at_infinity():
    f = parse_form("t^2+1", 3)
    assert f.multiplicity_at_infinity() == 1
    assert multiplicity_partition(f).as_list() == [1, 1, 1]


def test_git_examples():
    assert git_classify(parse_form("u^2*v^2", 4)) == STRICTLY_SEMISTABLE
    assert git_classify(parse_form("u^3*v", 4)) == UNSTABLE
    assert git_classify(parse_form("t^5 - t - 1", 5)) == STABLE


def test_git_needs_degree_three():
    with pytest.raises(DegreeError):
        git_classify(parse_form("u*v", 2))


def test_zero_form_rejected():
    with pytest.raises(ZeroPolynomialError):
        BinaryForm([0, 0, 0], 2)
    with pytest.raises(ZeroPolynomialError):
        parse_form("u - u", 2)


def test_fiber_shape_examples():
    s = fiber_shape(form_from_roots([2, 1, 1]))
    assert (s.etale, s.tame, s.simple_tangency) == (False, True, True)
    assert fiber_shape(form_from_roots([3, 1])).tame is False
    assert fiber_shape(form_from_roots([1, 1, 1, 1])).etale is True


def test_partition_matches_sympy_roots():
    rng = random.Random(2)
    t = sp.Symbol("t")
    for _ in range(40):
        coeffs = [rng.randint(-3, 3) for _ in range(rng.randint(2, 6))]
        if not any(coeffs[1:]):
            coeffs[1] = 1
        extra = rng.randint(0, 2)
        d = len(coeffs) - 1 + extra
        f = BinaryForm(coeffs, d)
        aff = sp.Poly(list(reversed(coeffs)), t)
        parts = []
        if aff.degree() > 0:
            for _, m in sp.roots(aff, multiple=False).items():
                parts.append(m)
            # sp.roots may miss roots without radicals; fall back to sqf counts
            if sum(parts) != aff.degree():
                parts = []
                for fac, m in sp.sqf_list(aff)[1]:
                    parts += [m] * fac.degree()
        inf = d - max(aff.degree(), 0)
        if inf:
            parts.append(inf)
        assert multiplicity_partition(f).as_list() == sorted(parts, reverse=True)


partitions = st.lists(st.integers(1, 4), min_size=1, max_size=4)


@given(partitions, st.integers(0, 3))
def test_weighted_sum_is_degree(mults, inf):
    f = form_from_roots(mults, inf)
    assert sum(multiplicity_partition(f).parts) == f.degree


@given(partitions, st.integers(-5, 5).filter(bool), st.integers(-4, 4).filter(bool))
def test_git_scaling_invariance(mults, num, den):
    f = form_from_roots(mults)
    if f.degree < 3:
        return
    assert git_classify(f * Fraction(num, den)) == git_classify(f)


@given(partitions, st.integers(0, 2))
def test_git_exhaustive_single_class(mults, inf):
    f = form_from_roots(mults, inf)
    if f.degree < 3:
        return
    assert git_classify(f) in (STABLE, STRICTLY_SEMISTABLE, UNSTABLE)


def test_partition_invariant_under_substitution():
    rng = random.Random(7)
    done = 0
    while done < 100:
        mults = [rng.randint(1, 3) for _ in range(rng.randint(1, 4))]
        f = form_from_roots(mults, rng.randint(0, 2))
        a, b, c, d = (rng.randint(-4, 4) for _ in range(4))
        if a * d - b * c == 0:
            continue
        g = f.substitute(a, b, c, d)
        assert multiplicity_partition(g) == multiplicity_partition(f)
        done += 1


def test_bivariate_form_input():
    f = parse_form("u^3*v - u*v^3")
    assert f.degree == 4
    assert multiplicity_partition(f).as_list() == [1, 1, 1, 1]
