"""Search for (D, S)-integral points of the plane by brute enumeration.

A rational point of P^2 written as a primitive integer triple ``(a, b, c)``
is integral away from ``D`` over the S-integers exactly when ``D(a, b, c)``
is a nonzero S-unit, i.e. no prime outside ``S`` divides it. The search
walks every primitive triple of naive height at most ``H`` (largest
absolute coordinate), normalised so that the first nonzero coordinate is
positive.

Work is split over the first coordinate and may run in a process pool;
``DUALSCOPE_THREADS`` caps the number of workers. Results are merged and
sorted, so the output never depends on the split.
"""
import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .dualgeom import DUAL, PRIMAL
from .errors import PreconditionError, ZeroPolynomialError
from .polycore import ExactPoly, parse_poly

__all__ = ["SearchSpec", "SearchReport", "s_unit_search", "is_s_unit", "worker_count"]


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def is_s_unit(n, primes):
    """Whether the integer ``n`` is ``+-1`` times a product of ``primes``."""
    n = abs(int(n))
    if n == 0:
        return False
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1


@dataclass(frozen=True)
class SearchSpec:
    """``D`` a ternary form with integer coefficients, ``S`` a set of primes,
    ``H`` the height bound and ``restrict_line`` an optional line
    ``(u, v, w)``: only points with ``u a + v b + w c = 0`` are searched."""

    D: ExactPoly
    S: tuple = ()
    H: int = 10
    restrict_line: tuple = None

    def __init__(self, D, S=(), H=10, restrict_line=None, names=None):
        if isinstance(D, str):
            D = parse_poly(D)
        if D.is_zero():
            raise ZeroPolynomialError("D must be nonzero")
        if names is None:
            used = set(D.used_vars())
            names = DUAL if used <= set(DUAL) else PRIMAL
        extra = [v for v in D.used_vars() if v not in names]
        if extra:
            raise PreconditionError(f"D uses variables {extra} outside {tuple(names)}")
        D = D.with_vars(tuple(names))
        if not D.is_homogeneous():
            raise PreconditionError("D must be homogeneous")
        if not D.is_integral():
            raise PreconditionError("D must have integer coefficients")
        S = [int(p) for p in S]
        if len(set(S)) != len(S):
            raise PreconditionError(f"repeated primes in {S}")
        bad = [p for p in S if not _is_prime(p)]
        if bad:
            raise PreconditionError(f"not prime: {bad}")
        H = int(H)
        if H < 1:
            raise PreconditionError("the height bound must be at least 1")
        if restrict_line is not None:
            restrict_line = tuple(int(x) for x in restrict_line)
            if len(restrict_line) != 3 or not any(restrict_line):
                raise PreconditionError("restrict_line needs three integers, not all zero")
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "S", tuple(sorted(S)))
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "restrict_line", restrict_line)

    def to_dict(self):
        return {"D": str(self.D), "vars": list(self.D.vars), "S": list(self.S),
                "H": self.H,
                "restrict_line": list(self.restrict_line) if self.restrict_line else None}


@dataclass
class SearchReport:
    points: list
    shell_counts: list          # shell_counts[h-1] = points with max |coord| == h
    candidates: int
    excluded_on_D: int
    spec: SearchSpec = None
    elapsed: float = 0.0
    workers: int = 1
    extra: dict = field(default_factory=dict)

    def to_dict(self, timing=False):
        out = {"spec": self.spec.to_dict() if self.spec else None,
               "points": [list(p) for p in self.points],
               "count": len(self.points),
               "shell_counts": {str(h + 1): n for h, n in enumerate(self.shell_counts)},
               "candidates": self.candidates,
               "excluded_on_D": self.excluded_on_D}
        if timing:
            out["elapsed_s"] = self.elapsed
            out["workers"] = self.workers
        return out

    def shells_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["height", "count"])
        for h, n in enumerate(self.shell_counts, 1):
            w.writerow([h, n])
        return buf.getvalue()


def _coeff_table(D):
    """Nested ``table[i][j][k]`` of integer coefficients of ``a^i b^j c^k``."""
    n = D.degree
    table = [[[0] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for (i, j, k), c in D.terms.items():
        table[i][j][k] = int(c)
    return table


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _scan(args):
    table, primes, H, line, a_values = args
    n = len(table) - 1
    found = []
    shells = [0] * H
    cand = 0
    on_D = 0
    for a in a_values:
        # collapse a, then b, so the inner loop is one Horner pass in c
        Mb = [[sum(table[i][j][k] * a ** i for i in range(n + 1)) for k in range(n + 1)]
              for j in range(n + 1)]
        b_range = range(0 if a == 0 else -H, H + 1)
        for b in b_range:
            vc = [_horner([Mb[j][k] for j in range(n + 1)], b) for k in range(n + 1)]
            if a == 0 and b == 0:
                c_range = (1,)
            else:
                c_range = range(-H, H + 1)
            gab = gcd(a, b)
            for c in c_range:
                if gcd(gab, c) != 1:
                    continue
                if line is not None and line[0] * a + line[1] * b + line[2] * c != 0:
                    continue
                cand += 1
                val = _horner(vc, c)
                if val == 0:
                    on_D += 1
                    continue
                if is_s_unit(val, primes):
                    found.append((a, b, c))
                    shells[max(abs(a), abs(b), abs(c)) - 1] += 1
    return found, shells, cand, on_D


def worker_count(default=None):
    """Workers allowed by ``DUALSCOPE_THREADS`` (default: CPU count)."""
    n = default or os.cpu_count() or 1
    env = os.environ.get("DUALSCOPE_THREADS")
    if env:
        try:
            n = min(n, max(1, int(env)))
        except ValueError:
            raise PreconditionError(f"DUALSCOPE_THREADS must be an integer, got {env!r}")
    return max(1, n)


def s_unit_search(spec, workers=None):
    """All primitive triples of height at most ``spec.H`` on which ``D`` is
    a nonzero S-unit, in lexicographic order."""
    t0 = time.perf_counter()
    table = _coeff_table(spec.D)
    a_all = list(range(0, spec.H + 1))
    nw = worker_count(workers)
    nw = min(nw, len(a_all))
    # small searches are faster inline than through a pool
    if spec.H < 12:
        nw = 1
    chunks = [a_all[i::nw] for i in range(nw)]
    jobs = [(table, spec.S, spec.H, spec.restrict_line, ch) for ch in chunks]
    if nw == 1:
        results = [_scan(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=nw) as ex:
            results = list(ex.map(_scan, jobs))
    points = []
    shells = [0] * spec.H
    cand = on_D = 0
    for found, sh, c, z in results:
        points.extend(found)
        shells = [x + y for x, y in zip(shells, sh)]
        cand += c
        on_D += z
    points.sort()
    return SearchReport(points=points, shell_counts=shells, candidates=cand,
                        excluded_on_D=on_D, spec=spec,
                        elapsed=time.perf_counter() - t0, workers=nw)

