"""Dense univariate polynomials over Q.

A polynomial is a list of coefficients, lowest degree first. Coefficients
are ``int`` or ``Fraction``; the zero polynomial is the empty list. All
helpers return trimmed lists and never mutate their inputs.
"""
from fractions import Fraction
from math import gcd as igcd

__all__ = [
    "trim", "deg", "add", "sub", "mul", "scale", "deriv", "divmod_",
    "exquo", "evaluate", "to_integer", "primitive", "gcd", "yun",
    "sturm_sequence", "count_real_roots", "isolate_real_roots",
    "rational_roots", "root_multiplicity", "reverse",
]


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n)])


def sub(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                 for i in range(n)])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def scale(a, c):
    return trim([c * x for x in a])


def deriv(a):
    return trim([i * a[i] for i in range(1, len(a))])


def reverse(a, n=None):
    """Coefficients of ``t^n a(1/t)``; ``n`` defaults to ``deg a``."""
    a = trim(a)
    n = deg(a) if n is None else n
    out = [0] * (n + 1)
    for i, c in enumerate(a):
        out[n - i] = c
    return trim(out)


def divmod_(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    db = deg(b)
    while len(r) - 1 >= db and r:
        s = len(r) - 1 - db
        c = r[-1] / lb
        q[s] = c
        for i, y in enumerate(b):
            r[s + i] -= c * y
        r = trim(r)
    return trim(q), r


def exquo(a, b):
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def to_integer(a):
    """Return ``(ints, den)`` with ``a == ints / den`` and ``den > 0``."""
    den = 1
    for c in a:
        if isinstance(c, Fraction):
            den = den * c.denominator // igcd(den, c.denominator)
    return [int(c * den) for c in a], den


def primitive(a):
    """Split ``a`` as ``content * prim`` with ``prim`` integral, primitive and
    with positive leading coefficient."""
    a = trim(a)
    if not a:
        return Fraction(0), []
    ints, den = to_integer(a)
    g = 0
    for c in ints:
        g = igcd(g, c)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [c // g for c in ints]


def _prem(a, b):
    """Pseudo-remainder of integer polynomials."""
    r = list(a)
    db = deg(b)
    lb = b[-1]
    while r and deg(r) >= db:
        s = deg(r) - db
        lr = r[-1]
        r = [lb * c for c in r]
        for i, y in enumerate(b):
            r[s + i] -= lr * y
        r = trim(r)
    return r


def gcd(a, b):
    """Primitive integral gcd with positive leading coefficient (``[1]`` for
    coprime inputs, ``[]`` when both are zero)."""
    _, a = primitive(a)
    _, b = primitive(b)
    if not a:
        return b
    if not b:
        return a
    if deg(a) < deg(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, primitive(r)[1]
    if deg(a) == 0:
        return [1]
    return a


def yun(a):
    """Squarefree decomposition of a nonzero polynomial.

    Returns ``(content, [(factor, mult), ...])`` where the factors are
    primitive integral with positive leading coefficient, pairwise coprime and
    squarefree, and ``content * prod(factor**mult) == a``.
    """
    content, f = primitive(a)
    if not f:
        raise ValueError("zero polynomial has no squarefree decomposition")
    parts = []
    if deg(f) == 0:
        return content, parts
    fp = deriv(f)
    g = gcd(f, fp)
    b = exquo(f, g)
    c = exquo(fp, g)
    d = sub(c, deriv(b))
    i = 1
    while deg(b) > 0:
        a_i = gcd(b, d)
        _, a_i = primitive(a_i)
        if deg(a_i) > 0:
            parts.append((a_i, i))
        b = exquo(b, a_i)
        c = exquo(d, a_i)
        d = sub(c, deriv(b))
        i += 1
    # the factors were normalised one at a time; fold the leftover scalar in
    prod = [1]
    for fac, m in parts:
        for _ in range(m):
            prod = mul(prod, fac)
    ratio = Fraction(f[-1], prod[-1])
    return content * ratio, [(primitive(p)[1], m) for p, m in parts]


def root_multiplicity(a, x):
    """Multiplicity of ``x`` as a root of the nonzero polynomial ``a``."""
    a = trim(a)
    m = 0
    while a and evaluate(a, x) == 0:
        a = exquo(a, [-x, 1])
        m += 1
    return m


# --- real roots -----------------------------------------------------------

def sturm_sequence(a):
    """Sturm sequence of the squarefree part of ``a``, every member scaled to
    a primitive integer polynomial by a positive factor."""
    _, p0 = primitive(a)
    if deg(p0) < 1:
        return [p0]
    g = gcd(p0, deriv(p0))
    if deg(g) > 0:
        _, p0 = primitive(exquo(p0, g))
    p1 = deriv(p0)
    seq = [p0, p1]
    while deg(seq[-1]) > 0:
        u, v = seq[-2], seq[-1]
        delta = deg(u) - deg(v)
        r = _prem(u, v)
        if not r:
            break
        # prem = lc(v)^(delta+1) * rem
        if v[-1] < 0 and (delta + 1) % 2 == 1:
            r = [-c for c in r]
        g = 0
        for c in r:
            g = igcd(g, c)
        seq.append([-c // g for c in r])
    return seq


def _sign_at(p, x):
    if x == float("inf"):
        return (p[-1] > 0) - (p[-1] < 0)
    if x == float("-inf"):
        s = (p[-1] > 0) - (p[-1] < 0)
        return s if deg(p) % 2 == 0 else -s
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    n = deg(p)
    acc = 0
    for i, c in enumerate(p):
        acc += c * num ** i * den ** (n - i)
    return (acc > 0) - (acc < 0)


def _variations(seq, x):
    signs = [s for s in (_sign_at(p, x) for p in seq if p) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(a, lo, hi, seq=None):
    """Number of distinct real roots of ``a`` in the half-open ``(lo, hi]``."""
    if seq is None:
        seq = sturm_sequence(a)
    return _variations(seq, lo) - _variations(seq, hi)


def _cauchy_bound(p):
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=0)


def isolate_real_roots(a):
    """Disjoint intervals ``(lo, hi]`` with rational ends, each containing
    exactly one distinct real root of ``a``, in increasing order."""
    a = trim(a)
    if deg(a) < 1:
        return []
    seq = sturm_sequence(a)
    b = _cauchy_bound(a)
    b = Fraction(int(b) + 1)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(a, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def rational_roots(a):
    """All rational roots of ``a`` (exact, sorted, without multiplicity).

    A rational root ``p/q`` in lowest terms has ``q`` dividing the leading
    coefficient ``L`` of the primitive integer form; two such numbers differ
    by at least ``1/L^2``. Each isolating interval is therefore shrunk below
    that gap and the unique candidate of denominator at most ``L`` nearest
    its midpoint is checked exactly.
    """
    a = trim(a)
    if deg(a) < 1:
        return []
    _, parts = yun(a)
    sq = [1]
    for f, _m in parts:
        sq = mul(sq, f)
    _, sq = primitive(sq)
    out = []
    if sq[0] == 0:
        out.append(Fraction(0))
        sq = exquo(sq, [0, 1])
        _, sq = primitive(sq)
    if deg(sq) < 1:
        return sorted(out)
    lead = abs(sq[-1])
    width = Fraction(1, 4 * lead * lead)
    for lo, hi in isolate_real_roots(sq):
        s_hi = _sign_at(sq, hi)
        if s_hi == 0:
            if Fraction(hi).denominator <= lead:
                out.append(Fraction(hi))
            continue
        while hi - lo > width:
            mid = (lo + hi) / 2
            s_mid = _sign_at(sq, mid)
            if s_mid == 0:
                lo = hi = mid
                break
            if s_mid == s_hi:
                hi = mid
            else:
                lo = mid
        cand = ((lo + hi) / 2).limit_denominator(lead)
        if evaluate(sq, cand) == 0:
            out.append(cand)
    return sorted(set(out))
