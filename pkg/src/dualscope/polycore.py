"""Exact multivariate polynomials over the rationals.

:class:`ExactPoly` is an immutable sparse polynomial with ``Fraction``
coefficients over an ordered list of variable names. On top of it this module
provides parsing and canonical printing, Sylvester resultants computed by
fraction-free elimination, gcds, and Yun squarefree decomposition.
"""
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd as igcd

from . import _upoly as up
from .errors import (DegreeError, NotExactError, NotHomogeneousError,
                     PolySyntaxError, UnknownVariableError, ZeroPolynomialError)

__all__ = [
    "ExactPoly", "SquarefreeDecomposition", "parse_poly", "resultant",
    "sylvester_matrix", "bareiss_det", "squarefree_decompose", "gcd",
    "divexact", "squarefree_part", "is_squarefree", "restrict_to_line",
]

NEG_INF = float("-inf")


def _merge_vars(a, b):
    if a == b:
        return a
    out = list(a)
    out.extend(v for v in b if v not in a)
    return tuple(out)


def _grlex_key(exps):
    return (sum(exps), exps)


class ExactPoly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    ``Fraction`` coefficients. Instances are immutable and hashable; two
    polynomials compare equal when they have the same variables and terms.
    """

    __slots__ = ("vars", "terms", "_degree", "_hash")

    def __init__(self, vars, terms=None):
        vars = tuple(vars)
        n = len(vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._init(vars, clean)

    def _init(self, vars, terms):
        self.vars = vars
        self.terms = terms
        self._degree = max((sum(e) for e in terms), default=NEG_INF)
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        obj = cls.__new__(cls)
        obj._init(tuple(vars), terms)
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, vars=()):
        return cls._raw(vars, {})

    @classmethod
    def constant(cls, c, vars=()):
        c = Fraction(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def variable(cls, name, vars=None):
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            vars = vars + (name,)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: Fraction(1)})

    @classmethod
    def from_univariate(cls, coeffs, var, vars=None):
        """Build from coefficients listed lowest degree first."""
        vars = tuple(vars) if vars is not None else (var,)
        k = vars.index(var)
        terms = {}
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                e = [0] * len(vars)
                e[k] = i
                terms[tuple(e)] = c
        return cls._raw(vars, terms)

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self):
        return self._degree

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars)
                     if any(e[i] for e in self.terms))

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def degree_in(self, var):
        if var not in self.vars:
            return 0 if self.terms else NEG_INF
        k = self.vars.index(var)
        return max((e[k] for e in self.terms), default=NEG_INF)

    def coeffs_in(self, var):
        """Coefficients of ``var^0, var^1, ...`` as polynomials over the same
        variable list (with ``var`` absent from their terms)."""
        if var not in self.vars:
            return [self] if self.terms else []
        k = self.vars.index(var)
        buckets = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[k], {})[e[:k] + (0,) + e[k + 1:]] = c
        n = max(buckets, default=-1)
        return [ExactPoly._raw(self.vars, buckets.get(i, {})) for i in range(n + 1)]

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    @property
    def lc(self):
        return self.leading_term()[1]

    # -- variables --------------------------------------------------------
    def with_vars(self, vars):
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            if v in vars:
                idx.append(vars.index(v))
            else:
                idx.append(None)
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, x in enumerate(e):
                if x:
                    if idx[i] is None:
                        raise ValueError(f"variable {self.vars[i]} is used")
                    ne[idx[i]] = x
            terms[tuple(ne)] = c
        return ExactPoly._raw(vars, terms)

    def _coerce(self, other):
        if isinstance(other, ExactPoly):
            vars = _merge_vars(self.vars, other.vars)
            return self.with_vars(vars), other.with_vars(vars)
        if isinstance(other, (int, Fraction)):
            return self, ExactPoly.constant(other, self.vars)
        return None, None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return ExactPoly._raw(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if isinstance(other, ExactPoly):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ExactPoly.zero(self.vars)
            return ExactPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return ExactPoly._raw(a.vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, ExactPoly):
            return divexact(self, other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ExactPoly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactPoly.constant(other, self.vars)
        if not isinstance(other, ExactPoly):
            return NotImplemented
        if self.vars != other.vars:
            vars = _merge_vars(self.vars, other.vars)
            return self.with_vars(vars).terms == other.with_vars(vars).terms
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            used = self.used_vars()
            self._hash = hash(frozenset(self.with_vars(used).terms.items()) if used
                              else frozenset(self.terms.values()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and substitution ---------------------------------------
    def diff(self, var, n=1):
        p = self
        for _ in range(n):
            if var not in p.vars:
                return ExactPoly.zero(p.vars)
            k = p.vars.index(var)
            terms = {}
            for e, c in p.terms.items():
                if e[k]:
                    ne = e[:k] + (e[k] - 1,) + e[k + 1:]
                    terms[ne] = c * e[k]
            p = ExactPoly._raw(p.vars, terms)
        return p

    def evaluate(self, point):
        """Exact value at ``point`` (mapping every used variable to a number)."""
        vals = [point.get(v, 0) if v in point else None for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, x in enumerate(e):
                if x:
                    if vals[i] is None:
                        raise KeyError(f"no value for variable {self.vars[i]}")
                    term *= vals[i] ** x
            total += term
        return total

    def __call__(self, *args):
        return self.evaluate(dict(zip(self.vars, args)))

    def subs(self, mapping, vars=None):
        """Substitute polynomials (or numbers) for variables.

        The result lives over ``vars`` if given, otherwise over the variables
        not substituted plus those of the substituted polynomials.
        """
        new_vars = [v for v in self.vars if v not in mapping]
        for img in mapping.values():
            if isinstance(img, ExactPoly):
                new_vars.extend(v for v in img.vars if v not in new_vars)
        new_vars = tuple(vars) if vars is not None else tuple(new_vars)
        images = []
        for v in self.vars:
            img = mapping.get(v, None)
            if img is None:
                img = ExactPoly.variable(v, new_vars)
            elif isinstance(img, ExactPoly):
                img = img.with_vars(new_vars)
            else:
                img = ExactPoly.constant(img, new_vars)
            images.append(img)
        powers = [{0: ExactPoly.constant(1, new_vars)} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        acc = {}
        for e, c in self.terms.items():
            term = ExactPoly.constant(c, new_vars)
            for i, x in enumerate(e):
                if x:
                    term = term * power(i, x)
            for te, tc in term.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return ExactPoly._raw(new_vars, {e: c for e, c in acc.items() if c})

    # -- normalisation ----------------------------------------------------
    def content(self):
        """Positive rational content (gcd of numerators over lcm of
        denominators)."""
        num, den = 0, 1
        for c in self.terms.values():
            num = igcd(num, c.numerator)
            den = den * c.denominator // igcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """``(scalar, prim)`` with ``scalar * prim == self``; ``prim`` has
        coprime integer coefficients and positive grlex leading coefficient."""
        if not self.terms:
            return Fraction(0), self
        c = self.content()
        if self.lc < 0:
            c = -c
        return c, self * (1 / c)

    def canonical(self):
        return self.primitive()[1]

    def monic(self):
        return self * (1 / self.lc)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.terms.values())

    # -- univariate views -------------------------------------------------
    def to_univariate(self, var=None):
        """Coefficient list (lowest first) of a polynomial in one variable."""
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"polynomial is not univariate: {used}")
            var = used[0] if used else (self.vars[0] if self.vars else None)
        elif any(v != var for v in used):
            raise ValueError(f"polynomial involves variables other than {var}")
        if var is None or var not in self.vars:
            return up.trim([self.constant_value()]) if self.terms else []
        k = self.vars.index(var)
        n = self.degree_in(var)
        out = [Fraction(0)] * (n + 1 if n != NEG_INF else 0)
        for e, c in self.terms.items():
            out[e[k]] = c
        return out

    # -- printing ---------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(self.vars, e) if x)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"ExactPoly({str(self)!r}, vars={self.vars})"


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (m.group(0).strip() == "" and m.end() >= len(text)):
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _split_name(name, vars):
    """Split juxtaposed single-token products such as ``XYZ`` against the
    known variable names (longest match first)."""
    out = []
    i = 0
    names = sorted(vars, key=len, reverse=True)
    while i < len(name):
        for v in names:
            if name.startswith(v, i):
                out.append(v)
                i += len(v)
                break
        else:
            return None
    return out


def parse_poly(text, expected_vars=None, require_homogeneous=False):
    """Parse a polynomial written as a sum of monomial terms.

    Grammar: terms joined by ``+``/``-``; a term is an optional rational
    ``int[/int]`` followed by an optional ``*`` and a product of powers
    ``var[^int]`` (``*`` between factors optional). Whitespace is ignored.

    Parameters
    ----------
    text : str
    expected_vars : sequence of str, optional
        Fixes the variable list (and its order). Unknown names are rejected.
        Without it, the variables found are used in sorted order.
    require_homogeneous : bool
        Reject non-homogeneous input and the zero polynomial.
    """
    tokens = _tokenize(text)
    known = list(expected_vars) if expected_vars is not None else []
    terms = []
    i = 0

    def tok():
        return tokens[i]

    def fail(msg):
        raise PolySyntaxError(msg, tok()[2])

    if tok()[0] == "end":
        fail("empty polynomial")
    first = True
    while True:
        sign = 1
        kind, val, _ = tok()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            fail(f"expected '+' or '-', found {val!r}")
        first = False
        coef = Fraction(sign)
        have_coef = False
        kind, val, _ = tok()
        if kind == "int":
            num = val
            i += 1
            if tok()[0] == "op" and tok()[1] == "/":
                i += 1
                if tok()[0] != "int":
                    fail("expected denominator")
                if tok()[1] == 0:
                    fail("zero denominator")
                num = Fraction(num, tok()[1])
                i += 1
            coef *= Fraction(num)
            have_coef = True
            if tok()[0] == "op" and tok()[1] == "*":
                i += 1
                if tok()[0] != "name":
                    fail("expected variable after '*'")
        powers = {}
        while tok()[0] == "name":
            name, where = tok()[1], tok()[2]
            i += 1
            if expected_vars is not None and name not in known:
                parts = _split_name(name, known)
                if parts is None:
                    raise UnknownVariableError(
                        f"unknown variable {name!r} at position {where}; expected {tuple(known)}")
            else:
                parts = [name]
                if name not in known:
                    known.append(name)
            exp = 1
            if tok()[0] == "op" and tok()[1] == "^":
                i += 1
                if tok()[0] != "int":
                    fail("expected non-negative integer exponent")
                exp = tok()[1]
                i += 1
            for j, p in enumerate(parts):
                e = exp if j == len(parts) - 1 else 1
                powers[p] = powers.get(p, 0) + e
            if tok()[0] == "op" and tok()[1] == "*":
                i += 1
                if tok()[0] != "name":
                    fail("expected variable after '*'")
        if not have_coef and not powers:
            fail("expected a term")
        terms.append((coef, powers))
        if tok()[0] == "end":
            break
        if not (tok()[0] == "op" and tok()[1] in "+-"):
            fail(f"unexpected {tok()[1]!r}")
    vars = tuple(known) if expected_vars is not None else tuple(sorted(known))
    acc = {}
    for coef, powers in terms:
        e = tuple(powers.get(v, 0) for v in vars)
        acc[e] = acc.get(e, 0) + coef
    p = ExactPoly._raw(vars, {e: c for e, c in acc.items() if c})
    if require_homogeneous:
        if p.is_zero():
            raise ZeroPolynomialError("the zero polynomial is not a form")
        if not p.is_homogeneous():
            degs = sorted({sum(e) for e in p.terms})
            raise NotHomogeneousError(f"terms have mixed total degrees {degs}")
    return p


# --------------------------------------------------------------------------
# resultants

def bareiss_det(matrix):
    """Determinant of a square matrix over an integral domain by Bareiss
    fraction-free elimination (exact division by the previous pivot)."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                v = rowi[j] * pivot - mik * rowk[j]
                rowi[j] = v // prev if isinstance(v, int) and isinstance(prev, int) else v / prev
            rowi[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _sylvester(pc, qc):
    """Sylvester matrix from coefficient lists given lowest degree first; the
    list lengths fix the formal degrees."""
    n, m = len(pc) - 1, len(qc) - 1
    size = n + m
    rows = []
    ph = list(reversed(pc))
    qh = list(reversed(qc))
    zero = 0
    for i in range(m):
        rows.append([zero] * i + ph + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + qh + [zero] * (size - m - 1 - i))
    return rows


def sylvester_matrix(p, q, var):
    """Sylvester matrix of ``p`` and ``q`` with respect to ``var``; entries are
    :class:`ExactPoly` in the remaining variables."""
    p, q = p._coerce(q)
    pc, qc = p.coeffs_in(var), q.coeffs_in(var)
    zero = ExactPoly.zero(p.vars)
    rows = _sylvester(pc, qc)
    return [[x if isinstance(x, ExactPoly) else zero for x in row] for row in rows]


def _int_det_of(pc, qc):
    return bareiss_det(_sylvester(pc, qc))


def _newton_to_monomial(values):
    """Interpolating polynomial through ``(i, values[i])`` for i = 0..n,
    returned as monomial coefficients (lowest first)."""
    n = len(values)
    dd = [Fraction(v) for v in values]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / j
    # Horner expansion of the Newton form with nodes 0..n-1
    coeffs = [Fraction(0)] * n
    coeffs[0] = dd[n - 1]
    for k in range(n - 2, -1, -1):
        # coeffs <- coeffs * (x - k) + dd[k]
        new = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            if coeffs[i]:
                if i + 1 < n:
                    new[i + 1] += coeffs[i]
                new[i] -= k * coeffs[i]
        new[0] += dd[k]
        coeffs = new
    return coeffs


def _interpolate_grid(values, shape):
    """Tensor-grid interpolation on nodes ``0..shape[k]-1`` in every axis.

    ``values`` maps grid index tuples to numbers; returns exponent-tuple ->
    coefficient.
    """
    data = dict(values)
    dims = len(shape)
    for axis in range(dims):
        lines = {}
        for idx, v in data.items():
            key = idx[:axis] + idx[axis + 1:]
            lines.setdefault(key, [0] * shape[axis])[idx[axis]] = v
        data = {}
        for key, line in lines.items():
            coeffs = _newton_to_monomial(line)
            for k, c in enumerate(coeffs):
                if c:
                    data[key[:axis] + (k,) + key[axis:]] = c
    return data


def _homogeneous_weight(coeffs):
    degs = {sum(e) for c in coeffs for e in c.terms}
    return degs.pop() if len(degs) == 1 else None


def _resultant_lists(pc, qc, vars):
    """Resultant of two polynomials given as coefficient lists (ExactPoly
    coefficients over ``vars``, lowest degree first, formal degrees taken from
    the list lengths)."""
    n, m = len(pc) - 1, len(qc) - 1
    # clear denominators: Res(a p, b q) = a^m b^n Res(p, q)
    def clear(cs):
        den = 1
        for c in cs:
            for x in c.terms.values():
                den = den * x.denominator // igcd(den, x.denominator)
        return [c * den for c in cs], den
    pc, dp = clear(pc)
    qc, dq = clear(qc)
    scale = Fraction(1, dp ** m * dq ** n)

    used = [v for v in vars if any(c.degree_in(v) > 0 for c in pc + qc)]
    if not used:
        pi = [int(c.constant_value()) if c else 0 for c in pc]
        qi = [int(c.constant_value()) if c else 0 for c in qc]
        return ExactPoly.constant(scale * _int_det_of(pi, qi), vars)

    k_idx = [vars.index(v) for v in used]
    bounds = []
    for v in used:
        bp = max((c.degree_in(v) for c in pc if c), default=0)
        bq = max((c.degree_in(v) for c in qc if c), default=0)
        bounds.append(m * max(bp, 0) + n * max(bq, 0))

    homog_deg = None
    if len(used) >= 2:
        wp = _homogeneous_weight([c.with_vars(vars) for c in pc if c])
        wq = _homogeneous_weight([c.with_vars(vars) for c in qc if c])
        if wp is not None and wq is not None and all(
                set(c.used_vars()) <= set(used) for c in pc + qc if c):
            homog_deg = m * wp + n * wq
    if homog_deg is not None:
        grid_vars = used[:-1]
        grid_bounds = [min(b, homog_deg) for b in bounds[:-1]]
        fixed = {used[-1]: 1}
    else:
        grid_vars = used
        grid_bounds = bounds
        fixed = {}

    def compile_coeffs(cs):
        out = []
        for c in cs:
            out.append([(int(x), tuple(e[vars.index(v)] for v in used))
                        for e, x in c.terms.items()])
        return out

    pcc, qcc = compile_coeffs(pc), compile_coeffs(qc)
    shape = tuple(b + 1 for b in grid_bounds)
    gpos = [used.index(v) for v in grid_vars]
    fixed_pos = [used.index(v) for v in fixed]
    maxexp = [max(bounds[j], 1) for j in range(len(used))]
    values = {}
    for idx in product(*(range(s) for s in shape)):
        point = [0] * len(used)
        for g, x in zip(gpos, idx):
            point[g] = x
        for f in fixed_pos:
            point[f] = 1
        pw = []
        for j, x in enumerate(point):
            row = [1]
            for _ in range(maxexp[j] + 1):
                row.append(row[-1] * x)
            pw.append(row)

        def ev(terms):
            s = 0
            for c, e in terms:
                t = c
                for j, x in enumerate(e):
                    if x:
                        t *= pw[j][x]
                s += t
            return s

        values[idx] = _int_det_of([ev(t) for t in pcc], [ev(t) for t in qcc])
    coeffs = _interpolate_grid(values, shape)
    terms = {}
    for ge, c in coeffs.items():
        e = [0] * len(vars)
        for v, x in zip(grid_vars, ge):
            e[vars.index(v)] = x
        if homog_deg is not None:
            rest = homog_deg - sum(ge)
            if rest < 0:
                raise ArithmeticError("interpolated resultant exceeds its degree")
            e[vars.index(used[-1])] = rest
        terms[tuple(e)] = c * scale
    return ExactPoly(vars, terms)


def resultant(p, q, var):
    """Resultant of ``p`` and ``q`` with respect to ``var``.

    This is the determinant of the Sylvester matrix built from the actual
    degrees of ``p`` and ``q`` in ``var``. Coefficients are cleared to
    integers; with no other variables the determinant is taken by Bareiss
    elimination directly, otherwise it is evaluated by Bareiss at the nodes of
    an integer grid sized by the standard degree bounds and recovered exactly
    by interpolation. The sign follows ``Res(p, q) = lc(p)^deg(q) * prod q(r)``
    over the roots ``r`` of ``p``.
    """
    if not isinstance(p, ExactPoly) or not isinstance(q, ExactPoly):
        raise TypeError("resultant expects ExactPoly arguments")
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomialError("resultant of the zero polynomial")
    p, q = p._coerce(q)
    if p.degree_in(var) <= 0 or q.degree_in(var) <= 0:
        raise DegreeError(f"both polynomials need positive degree in {var}")
    vars = tuple(v for v in p.vars if v != var)
    pc = [c.with_vars(p.vars) for c in p.coeffs_in(var)]
    qc = [c.with_vars(p.vars) for c in q.coeffs_in(var)]
    pc = [_drop_var(c, var, vars) for c in pc]
    qc = [_drop_var(c, var, vars) for c in qc]
    return _resultant_lists(pc, qc, vars)


def formal_resultant(pc, qc, vars):
    """Resultant from explicit coefficient lists (lowest degree first) whose
    lengths fix the formal degrees; used for binary-form resultants where the
    top coefficient may vanish."""
    vars = tuple(vars)
    pc = [c.with_vars(vars) if isinstance(c, ExactPoly) else ExactPoly.constant(c, vars)
          for c in pc]
    qc = [c.with_vars(vars) if isinstance(c, ExactPoly) else ExactPoly.constant(c, vars)
          for c in qc]
    if len(pc) < 2 or len(qc) < 2:
        raise DegreeError("formal degrees must be positive")
    return _resultant_lists(pc, qc, vars)


def _drop_var(c, var, vars):
    k = c.vars.index(var)
    return ExactPoly._raw(vars, {e[:k] + e[k + 1:]: x for e, x in c.terms.items()})


# --------------------------------------------------------------------------
# division and gcd

def divexact(a, b):
    """Exact quotient ``a / b``; raises :class:`NotExactError` otherwise."""
    a, b = a._coerce(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    be, bc = b.leading_term()
    if len(b.terms) == 1:
        q = {}
        for e, c in a.terms.items():
            ne = tuple(x - y for x, y in zip(e, be))
            if any(x < 0 for x in ne):
                raise NotExactError("monomial does not divide")
            q[ne] = c / bc
        return ExactPoly._raw(a.vars, q)
    r = dict(a.terms)
    q = {}
    bterms = list(b.terms.items())
    while r:
        e = max(r, key=_grlex_key)
        c = r[e]
        ne = tuple(x - y for x, y in zip(e, be))
        if any(x < 0 for x in ne):
            raise NotExactError("polynomial division is not exact")
        f = c / bc
        q[ne] = f
        for te, tc in bterms:
            k = tuple(x + y for x, y in zip(te, ne))
            v = r.get(k, 0) - f * tc
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return ExactPoly._raw(a.vars, q)


def _content_in(p, var):
    g = None
    for c in p.coeffs_in(var):
        if c.is_zero():
            continue
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            return ExactPoly.constant(1, p.vars)
    return g if g is not None else ExactPoly.zero(p.vars)


def gcd(a, b):
    """Greatest common divisor, normalised by :meth:`ExactPoly.canonical`.

    Univariate inputs use the primitive remainder sequence over Z; several
    variables are handled recursively (content in the main variable times the
    primitive pseudo-remainder sequence of the primitive parts).
    """
    a, b = a._coerce(b)
    vars = a.vars
    if a.is_zero():
        return b.canonical()
    if b.is_zero():
        return a.canonical()
    if a.is_constant() or b.is_constant():
        return ExactPoly.constant(1, vars)
    used = [v for v in vars if a.degree_in(v) > 0 or b.degree_in(v) > 0]
    if len(used) >= 2 and a.is_homogeneous() and b.is_homogeneous():
        return _gcd_homogeneous(a, b, used[-1])
    if len(used) == 1:
        v = used[0]
        g = up.gcd(a.to_univariate(v), b.to_univariate(v))
        return ExactPoly.from_univariate(g, v, vars)
    v = used[0]
    if a.degree_in(v) <= 0 or b.degree_in(v) <= 0:
        # v divides neither side's structure jointly: gcd lives in the content
        ca = _content_in(a, v) if a.degree_in(v) > 0 else a
        cb = _content_in(b, v) if b.degree_in(v) > 0 else b
        return gcd(ca, cb)
    ca, cb = _content_in(a, v), _content_in(b, v)
    g_cont = gcd(ca, cb)
    pa, pb = divexact(a, ca), divexact(b, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while not pb.is_zero() and pb.degree_in(v) > 0:
        r = _prem(pa, pb, v)
        if r.is_zero():
            pa, pb = pb, r
            break
        pa, pb = pb, divexact(r, _content_in(r, v))
    if pb.is_zero():
        g = divexact(pa, _content_in(pa, v))
    else:
        g = ExactPoly.constant(1, vars)
    return (g_cont * g).canonical()


def _gcd_homogeneous(a, b, v):
    # forms not divisible by v correspond one-to-one to their dehomogenisations
    k = a.vars.index(v)
    m = min(min(e[k] for e in a.terms), min(e[k] for e in b.terms))
    a1 = ExactPoly(a.vars, {e[:k] + (0,) + e[k + 1:]: c for e, c in a.terms.items()})
    b1 = ExactPoly(b.vars, {e[:k] + (0,) + e[k + 1:]: c for e, c in b.terms.items()})
    g1 = gcd(a1, b1)
    dg = g1.degree
    terms = {}
    for e, c in g1.terms.items():
        terms[e[:k] + (dg - sum(e) + m,) + e[k + 1:]] = c
    return ExactPoly._raw(a.vars, terms).canonical()


def _prem(a, b, v):
    db = b.degree_in(v)
    lb = b.coeffs_in(v)[db]
    r = a
    x = ExactPoly.variable(v, a.vars)
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = r.coeffs_in(v)[dr]
        r = lb * r - lr * b * x ** (dr - db)
    return r


def squarefree_part(p):
    """Product of the distinct irreducible factors of ``p`` (canonical)."""
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if p.is_constant() or _line_certifies_squarefree(p):
        return p.canonical()
    g = p
    for v in p.used_vars():
        g = gcd(g, p.diff(v))
        if g.is_constant():
            return p.canonical()
    return divexact(p, g).canonical()


def restrict_to_line(p, base, direction):
    """Univariate coefficients of ``p(base + s * direction)``."""
    out = [Fraction(0)] * (max(p.degree, 0) + 1)
    lines = [[Fraction(b), Fraction(d)] for b, d in zip(base, direction)]
    for e, c in p.terms.items():
        poly = [c]
        for (b, d), x in zip(lines, e):
            for _ in range(x):
                poly = up.mul(poly, [b, d])
        for i, y in enumerate(poly):
            out[i] += y
    return up.trim(out)


def is_squarefree(p, rng=None, trials=4):
    """Exact squarefreeness test.

    A restriction to a line along which the top-degree form does not vanish
    keeps every factor non-constant, so a squarefree restriction certifies
    ``p`` squarefree. If no random line certifies, the multivariate gcd with
    the partial derivatives decides.
    """
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if p.is_constant():
        return True
    if _line_certifies_squarefree(p, rng, trials):
        return True
    return squarefree_part(p).degree == p.degree


def _line_certifies_squarefree(p, rng=None, trials=4):
    rng = rng or random.Random(0x5F)
    n = len(p.vars)
    top = ExactPoly._raw(p.vars, {e: c for e, c in p.terms.items() if sum(e) == p.degree})
    for _ in range(trials):
        d = [rng.randint(-7, 7) for _ in range(n)]
        if top.evaluate(dict(zip(p.vars, d))) == 0:
            continue
        b = [rng.randint(-7, 7) for _ in range(n)]
        f = restrict_to_line(p, b, d)
        if up.deg(up.gcd(f, up.deriv(f))) == 0:
            return True
    return False


# --------------------------------------------------------------------------
# squarefree decomposition

@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``content * prod(factor**mult for factor, mult in parts)``."""

    parts: tuple
    content: Fraction
    var: str

    def expand(self, vars=None):
        vars = vars or (self.var,)
        acc = ExactPoly.constant(self.content, vars)
        for f, m in self.parts:
            acc = acc * f.with_vars(vars) ** m
        return acc

    def multiplicities(self):
        return {str(f): m for f, m in self.parts}


def squarefree_decompose(p, var=None):
    """Yun decomposition of a nonzero univariate polynomial.

    Factors come out primitive over Z with positive leading coefficient and
    are sorted by multiplicity.
    """
    if not isinstance(p, ExactPoly):
        raise TypeError("expected ExactPoly")
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial has no squarefree decomposition")
    used = p.used_vars()
    if var is None:
        if len(used) > 1:
            raise ValueError(f"polynomial is not univariate: {used}")
        var = used[0] if used else (p.vars[0] if p.vars else "x")
    coeffs = p.to_univariate(var) if var in p.vars else [p.constant_value()]
    content, parts = up.yun(coeffs)
    return SquarefreeDecomposition(
        parts=tuple((ExactPoly.from_univariate(f, var), m) for f, m in parts),
        content=Fraction(content), var=var)

