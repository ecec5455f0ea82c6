"""Binary forms: exact root multiplicities and GIT stability.

A degree-d binary form is stored by its coefficients ``c[i]`` of
``u^i v^(d-i)``. Setting ``v = 1`` gives the affine polynomial in ``u``;
the point ``[1:0]`` is a root of multiplicity equal to the number of
vanishing top coefficients.
"""
from dataclasses import dataclass
from fractions import Fraction

from . import _upoly as up
from .errors import DegreeError, NotHomogeneousError, ZeroPolynomialError
from .polycore import ExactPoly, parse_poly

__all__ = [
    "BinaryForm", "MultiplicityPartition", "FiberShape",
    "multiplicity_partition", "git_classify", "fiber_shape", "parse_form",
    "STABLE", "STRICTLY_SEMISTABLE", "UNSTABLE",
]

STABLE = "stable"
STRICTLY_SEMISTABLE = "strictly-semistable"
UNSTABLE = "unstable"


class BinaryForm:
    """Homogeneous form of declared degree ``d`` in two variables."""

    __slots__ = ("coeffs", "degree")

    def __init__(self, coeffs, degree=None):
        coeffs = [Fraction(c) for c in coeffs]
        if degree is None:
            degree = len(up.trim(coeffs)) - 1
        degree = int(degree)
        if len(up.trim(coeffs)) - 1 > degree:
            raise DegreeError(
                f"coefficient list of length {len(coeffs)} exceeds degree {degree}")
        if not any(coeffs):
            raise ZeroPolynomialError("the zero binary form")
        if degree < 0:
            raise DegreeError("degree must be non-negative")
        coeffs = coeffs[:degree + 1] + [Fraction(0)] * (degree + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.degree = degree

    @classmethod
    def from_poly(cls, p, degree=None):
        """From an :class:`ExactPoly` that is either univariate (the
        dehomogenised form, ``degree`` defaults to its degree) or a
        homogeneous form in two variables (taken in sorted name order)."""
        used = p.used_vars()
        if len(used) <= 1:
            c = p.to_univariate(used[0]) if used else ([p.constant_value()] if p else [])
            return cls(c, degree if degree is not None else len(c) - 1)
        if len(used) > 2:
            raise DegreeError(f"binary form in more than two variables: {used}")
        if not p.is_homogeneous():
            raise NotHomogeneousError("bivariate input must be homogeneous")
        u, v = sorted(used)
        d = p.degree
        if degree is not None and int(degree) != d:
            raise DegreeError(f"form has degree {d}, declared {degree}")
        ku = p.vars.index(u)
        c = [Fraction(0)] * (d + 1)
        for e, x in p.terms.items():
            c[e[ku]] = x
        return cls(c, d)

    def affine(self):
        """Dehomogenised polynomial ``f(u, 1)`` as a trimmed coefficient list."""
        return up.trim(self.coeffs)

    def multiplicity_at_infinity(self):
        """Order of vanishing at ``[1:0]``."""
        return self.degree - (len(self.affine()) - 1)

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __mul__(self, c):
        return BinaryForm([x * c for x in self.coeffs], self.degree)

    __rmul__ = __mul__

    def substitute(self, a, b, c, d):
        """The form ``f(a u + b v, c u + d v)``."""
        n = self.degree
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            term = [x]
            for _ in range(i):
                term = up.mul(term, [b, a])
            for _ in range(n - i):
                term = up.mul(term, [d, c])
            for j, y in enumerate(term):
                out[j] += y
        return BinaryForm(out, n)

    def is_squarefree(self):
        return max(multiplicity_partition(self).parts, default=1) <= 1

    def to_poly(self, names=("u", "v")):
        u, v = names
        terms = {(i, self.degree - i): c for i, c in enumerate(self.coeffs) if c}
        return ExactPoly((u, v), terms)

    def __str__(self):
        return str(self.to_poly())

    def __repr__(self):
        return f"BinaryForm({str(self)!r}, degree={self.degree})"

    def root_structure(self):
        """Exact roots grouped by multiplicity.

        Returns a list of ``(factor, mult)`` where ``factor`` is a primitive
        integer coefficient list of a squarefree affine factor, or the string
        ``"inf"`` for the point ``[1:0]``.
        """
        out = []
        aff = self.affine()
        if len(aff) > 1:
            _, parts = up.yun(aff)
            out.extend((f, m) for f, m in parts)
        m_inf = self.multiplicity_at_infinity()
        if m_inf:
            out.append(("inf", m_inf))
        return out


@dataclass(frozen=True)
class MultiplicityPartition:
    """Root multiplicities of a binary form, sorted in decreasing order."""

    parts: tuple

    @property
    def degree(self):
        return sum(self.parts)

    @property
    def max(self):
        return max(self.parts, default=0)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def as_list(self):
        return list(self.parts)

    def __str__(self):
        return "{" + ",".join(map(str, self.parts)) + "}"


def multiplicity_partition(f):
    if not isinstance(f, BinaryForm):
        raise TypeError("expected a BinaryForm")
    parts = []
    for factor, m in f.root_structure():
        k = 1 if factor == "inf" else up.deg(factor)
        parts.extend([m] * k)
    return MultiplicityPartition(tuple(sorted(parts, reverse=True)))


def git_classify(f):
    """GIT class of a binary form of degree at least 3 under SL2."""
    d = f.degree
    if d < 3:
        raise DegreeError(f"stability is only classified for degree >= 3, got {d}")
    m = multiplicity_partition(f).max
    if 2 * m < d:
        return STABLE
    if 2 * m == d:
        return STRICTLY_SEMISTABLE
    return UNSTABLE


@dataclass(frozen=True)
class FiberShape:
    etale: bool
    tame: bool
    simple_tangency: bool
    partition: MultiplicityPartition

    def to_dict(self):
        return {"etale": self.etale, "tame": self.tame,
                "simple_tangency": self.simple_tangency,
                "partition": self.partition.as_list()}


def fiber_shape(f):
    """Shape of the zero scheme of ``f``.

    ``etale``: all roots simple. ``tame``: no root of multiplicity d-1 or
    more. ``simple_tangency``: exactly one double root, the rest simple.
    """
    p = multiplicity_partition(f)
    d = f.degree
    parts = p.parts
    return FiberShape(
        etale=all(m == 1 for m in parts),
        tame=p.max <= d - 2,
        simple_tangency=bool(parts) and parts[0] == 2 and all(m == 1 for m in parts[1:]),
        partition=p)


def parse_form(text, degree=None):
    """Parse a binary form: a univariate polynomial with optional declared
    degree, or a homogeneous polynomial in two variables."""
    p = parse_poly(text)
    if p.is_zero():
        raise ZeroPolynomialError("the zero binary form")
    return BinaryForm.from_poly(p, degree)
