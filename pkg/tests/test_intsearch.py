import itertools
from math import gcd

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import FERMAT_DUAL
from dualscope.errors import PreconditionError, ZeroPolynomialError
from dualscope.intsearch import SearchSpec, is_s_unit, s_unit_search, worker_count


def oracle(D_text, S, H, line=None):
    """Independent enumeration: sympy evaluation and factorisation."""
    U, V, W = sp.symbols("U V W")
    D = sp.lambdify((U, V, W), sp.sympify(D_text.replace("^", "**")), "math")
    out = []
    for p in itertools.product(range(-H, H + 1), repeat=3):
        if not any(p) or gcd(gcd(p[0], p[1]), p[2]) != 1:
            continue
        if next(x for x in p if x) < 0:
            continue
        if line and sum(a * b for a, b in zip(line, p)) != 0:
            continue
        val = int(D(*p))
        if val and set(sp.factorint(abs(val))) <= set(S):
            out.append(p)
    return sorted(out)


def test_uvw_height_ten():
    rep = s_unit_search(SearchSpec("U*V*W", (), 10))
    assert rep.points == [(1, -1, -1), (1, -1, 1), (1, 1, -1), (1, 1, 1)]
    assert rep.points == oracle("U*V*W", (), 10)


@pytest.mark.parametrize("S,H", [((), 8), ((2,), 6), ((2, 3), 5), ((5,), 4)])
def test_fermat_dual_matches_oracle(S, H):
    assert s_unit_search(SearchSpec(FERMAT_DUAL, S, H)).points == oracle(FERMAT_DUAL, S, H)


def test_restricted_line_matches_oracle():
    D = "U^2*W + V^3 - U*V*W"
    got = s_unit_search(SearchSpec(D, (2, 3), 12, restrict_line=(1, -1, 2))).points
    assert got == oracle(D, (2, 3), 12, line=(1, -1, 2))


def test_shell_counts_and_bookkeeping():
    rep = s_unit_search(SearchSpec("U*V*W", (2,), 6))
    assert sum(rep.shell_counts) == len(rep.points)
    assert len(rep.shell_counts) == 6
    for h, n in enumerate(rep.shell_counts, 1):
        assert n == sum(1 for p in rep.points if max(map(abs, p)) == h)
    assert rep.shells_csv().splitlines()[0] == "height,count"


def test_pool_matches_inline(monkeypatch):
    spec = SearchSpec(FERMAT_DUAL, (2, 3), 14)
    monkeypatch.setenv("DUALSCOPE_THREADS", "1")
    one = s_unit_search(spec)
    monkeypatch.setenv("DUALSCOPE_THREADS", "3")
    many = s_unit_search(spec, workers=3)
    assert many.workers == 3 and one.workers == 1
    assert one.to_dict() == many.to_dict()


def test_timing_only_on_request():
    rep = s_unit_search(SearchSpec("U*V*W", (), 3))
    assert "elapsed_s" not in rep.to_dict()
    assert "elapsed_s" in rep.to_dict(timing=True)


def test_worker_env_validation(monkeypatch):
    monkeypatch.setenv("DUALSCOPE_THREADS", "lots")
    with pytest.raises(PreconditionError):
        worker_count()


@pytest.mark.parametrize("kwargs,err", [
    (dict(D="U*V*W", S=(4,)), PreconditionError),
    (dict(D="U*V*W", S=(2, 2)), PreconditionError),
    (dict(D="U*V*W", H=0), PreconditionError),
    (dict(D="U*V + W", H=3), PreconditionError),
    (dict(D="1/2*U*V*W"), PreconditionError),
    (dict(D="U*V*W", restrict_line=(0, 0, 0)), PreconditionError),
    (dict(D="U - U"), ZeroPolynomialError),
])
def test_search_settings_validation(kwargs, err):
    with pytest.raises(err):
        SearchSpec(**kwargs)


def test_primal_names_accepted():
    rep = s_unit_search(SearchSpec("X*Y*Z", (), 2))
    assert rep.spec.D.vars == ("X", "Y", "Z") and len(rep.points) == 4


@given(st.integers(-10 ** 6, 10 ** 6))
def test_s_unit_against_factorint(n):
    for S in ((), (2,), (2, 3), (3, 7)):
        want = n != 0 and set(sp.factorint(abs(n))) <= set(S)
        assert is_s_unit(n, S) == want


@settings(max_examples=15)
@given(st.integers(1, 5), st.sampled_from([(), (2,), (3,), (2, 3)]))
def test_monotone_in_height_and_primes(H, S):
    small = set(s_unit_search(SearchSpec("U*V*W + V^3", S, H)).points)
    taller = set(s_unit_search(SearchSpec("U*V*W + V^3", S, H + 1)).points)
    wider = set(s_unit_search(SearchSpec("U*V*W + V^3", tuple(S) + (5,), H)).points)
    assert small <= taller and small <= wider
