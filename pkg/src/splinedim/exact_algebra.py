"""Exact rational matrices and sparse multivariate polynomials.

Everything in this module is exact: matrix entries are `fractions.Fraction`,
polynomial coefficients are rationals, and nothing ever touches a float.
Rank, kernel and determinant use pivoting rational Gaussian elimination;
symbolic determinants use a memoized cofactor expansion behind a size guard.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NonSquare, SizeGuard, UnboundVariable, ZeroDivisor

Rat = Fraction

DET_POLY_MAX = 12  # cofactor expansion refused above this size


def rational(value) -> Fraction:
    """Coerce ints, strings like "3/2", and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use strings or Fractions")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    return str(q)


def as_matrix(rows: Iterable[Iterable]) -> tuple[tuple[Fraction, ...], ...]:
    """Coerce to a rectangular tuple-of-tuples of Fractions."""
    out = tuple(tuple(rational(x) for x in row) for row in rows)
    if out:
        width = len(out[0])
        if any(len(r) != width for r in out):
            raise ValueError("ragged matrix")
    return out


def _eliminate(rows):
    """Row-reduce a mutable copy; return (reduced rows, pivot column list)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows) -> int:
    m = as_matrix(rows)
    if not m or not m[0]:
        return 0
    _, pivots = _eliminate(m)
    return len(pivots)


def kernel_basis(rows) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space; len = cols - rank."""
    m = as_matrix(rows)
    if not m:
        return []
    ncols = len(m[0])
    red, pivots = _eliminate(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(tuple(vec))
    return basis


def det(rows) -> Fraction:
    m = as_matrix(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise NonSquare("determinant of a %dx%d matrix" % (n, len(m[0]) if m else 0))
    work = [list(r) for r in m]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            sign = -sign
        result *= work[c][c]
        inv = work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] / inv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return sign * result


def mat_vec(rows, vec) -> tuple[Fraction, ...]:
    return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in rows)


class MultiPoly:
    """Sparse polynomial with exact coefficients.

    Terms map exponent tuples (one slot per variable) to nonzero rational
    coefficients.  Canonical ordering is graded lexicographic, highest
    first, which fixes both equality-of-display and the display format:
    `+1*a1^2*a2 -1*a1*a2^2`.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=()):
        self.nvars = int(nvars)
        clean: dict[tuple[int, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for expo, coeff in items:
            expo = tuple(int(k) for k in expo)
            if len(expo) != self.nvars or any(k < 0 for k in expo):
                raise ValueError("bad exponent vector %r" % (expo,))
            c = clean.get(expo, Fraction(0)) + rational(coeff)
            if c:
                clean[expo] = c
            else:
                clean.pop(expo, None)
        self.terms = clean

    # -- constructors ------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: rational(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise ValueError("variable index %d out of range" % index)
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {expo: Fraction(1)})

    # -- arithmetic --------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts %d and %d" % (self.nvars, other.nvars))

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        self._check(other)
        merged = dict(self.terms)
        for expo, c in other.terms.items():
            merged[expo] = merged.get(expo, Fraction(0)) + c
        return MultiPoly(self.nvars, merged)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                acc[expo] = acc.get(expo, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, acc)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = rational(c)
        return MultiPoly(self.nvars, {e: k * c for e, k in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def equals(self, other: "MultiPoly") -> bool:
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    __eq__ = equals

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def variables_used(self) -> set[int]:
        used = set()
        for expo in self.terms:
            used.update(i for i, k in enumerate(expo) if k)
        return used

    def evaluate(self, assignment) -> Fraction:
        """Evaluate at a point.

        `assignment` is a mapping from variable index to rational, or a
        sequence covering all variables.  A variable that actually occurs
        (positive exponent somewhere) must be bound.
        """
        if not isinstance(assignment, Mapping):
            assignment = {i: v for i, v in enumerate(assignment)}
        total = Fraction(0)
        for expo, coeff in self.terms.items():
            val = coeff
            for i, k in enumerate(expo):
                if k == 0:
                    continue
                if i not in assignment:
                    raise UnboundVariable("variable a%d has no value" % (i + 1))
                val *= rational(assignment[i]) ** k
            total += val
        return total

    def substitute_variables(self, var_map: Sequence[int], nvars_new: int) -> "MultiPoly":
        """Rename variable i to var_map[i] in a ring with nvars_new slots."""
        acc: dict[tuple[int, ...], Fraction] = {}
        for expo, coeff in self.terms.items():
            new = [0] * nvars_new
            for i, k in enumerate(expo):
                if k:
                    new[var_map[i]] += k
            key = tuple(new)
            acc[key] = acc.get(key, Fraction(0)) + coeff
        return MultiPoly(nvars_new, acc)

    # -- ordering and display ----------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        expo = max(self.terms, key=lambda e: (sum(e), e))
        return expo, self.terms[expo]

    def display(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["a%d" % (i + 1) for i in range(self.nvars)]
        parts = []
        for expo, coeff in self.sorted_terms():
            sign = "+" if coeff > 0 else "-"
            mag = -coeff if coeff < 0 else coeff
            factors = "*".join(
                name if k == 1 else "%s^%d" % (name, k)
                for name, k in zip(names, expo)
                if k
            )
            if factors:
                parts.append("%s%s*%s" % (sign, mag, factors))
            else:
                parts.append("%s%s" % (sign, mag))
        return " ".join(parts)

    def __str__(self):
        return self.display()

    def __repr__(self):
        return "MultiPoly(%d, %s)" % (self.nvars, self.display())


def det_poly(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Symbolic determinant by cofactor expansion (memoized subset DP).

    Refuses matrices larger than DET_POLY_MAX x DET_POLY_MAX; callers with
    bigger inputs must use the edge-injective expansion or go numeric.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("symbolic determinant needs a square matrix")
    if n == 0:
        raise NonSquare("empty matrix")
    if n > DET_POLY_MAX:
        raise SizeGuard("symbolic determinant refused for %dx%d (max %d)" % (n, n, DET_POLY_MAX))
    nvars = rows[0][0].nvars
    zero = MultiPoly.zero(nvars)
    cache: dict[int, MultiPoly] = {}
    full = (1 << n) - 1

    def minor(row: int, colmask: int) -> MultiPoly:
        if row == n:
            return MultiPoly.const(nvars, 1)
        got = cache.get(colmask)
        if got is not None:
            return got
        acc = zero
        sign = 1  # parity of the column's position among the available ones
        for c in range(n):
            bit = 1 << c
            if not colmask & bit:
                continue
            entry = rows[row][c]
            if not entry.is_zero():
                sub = minor(row + 1, colmask & ~bit)
                term = entry * sub
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        cache[colmask] = acc
        return acc

    return minor(0, full)


@dataclass(frozen=True)
class Quadratic:
    """c_xx*x^2 + c_xy*x*y + c_yy*y^2 + c_x*x + c_y*y + c1, all exact."""

    c_xx: Fraction = Fraction(0)
    c_xy: Fraction = Fraction(0)
    c_yy: Fraction = Fraction(0)
    c_x: Fraction = Fraction(0)
    c_y: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)

    @classmethod
    def of(cls, c_xx=0, c_xy=0, c_yy=0, c_x=0, c_y=0, c1=0) -> "Quadratic":
        return cls(*(rational(v) for v in (c_xx, c_xy, c_yy, c_x, c_y, c1)))

    def __add__(self, other: "Quadratic") -> "Quadratic":
        return Quadratic(
            self.c_xx + other.c_xx, self.c_xy + other.c_xy, self.c_yy + other.c_yy,
            self.c_x + other.c_x, self.c_y + other.c_y, self.c1 + other.c1,
        )

    def __sub__(self, other: "Quadratic") -> "Quadratic":
        return self + other.scale(-1)

    def scale(self, c) -> "Quadratic":
        c = rational(c)
        return Quadratic(
            self.c_xx * c, self.c_xy * c, self.c_yy * c,
            self.c_x * c, self.c_y * c, self.c1 * c,
        )

    def is_zero(self) -> bool:
        return not any((self.c_xx, self.c_xy, self.c_yy, self.c_x, self.c_y, self.c1))

    def to_poly(self) -> MultiPoly:
        return MultiPoly(2, {
            (2, 0): self.c_xx, (1, 1): self.c_xy, (0, 2): self.c_yy,
            (1, 0): self.c_x, (0, 1): self.c_y, (0, 0): self.c1,
        })

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "Quadratic":
        if p.nvars != 2 or p.total_degree() > 2:
            raise ValueError("not a bivariate quadratic")
        t = p.terms
        return cls(
            t.get((2, 0), Fraction(0)), t.get((1, 1), Fraction(0)), t.get((0, 2), Fraction(0)),
            t.get((1, 0), Fraction(0)), t.get((0, 1), Fraction(0)), t.get((0, 0), Fraction(0)),
        )

    def display(self) -> str:
        return self.to_poly().display(names=("x", "y"))

    def __str__(self):
        return self.display()


def expand_label(label) -> Quadratic:
    """Expand (x + a*y + b)^2; b absent (None) means the homogeneous (x + a*y)^2."""
    a = rational(label.a)
    b = rational(label.b) if getattr(label, "b", None) is not None else Fraction(0)
    return Quadratic(
        c_xx=Fraction(1), c_xy=2 * a, c_yy=a * a,
        c_x=2 * b, c_y=2 * a * b, c1=b * b,
    )


def _as_poly(p) -> MultiPoly:
    if isinstance(p, MultiPoly):
        return p
    if isinstance(p, Quadratic):
        return p.to_poly()
    raise TypeError("expected MultiPoly or Quadratic, got %r" % type(p).__name__)


def divides(g, p) -> tuple[bool, MultiPoly | None]:
    """Does g divide p in the polynomial ring?  Returns (flag, cofactor).

    Single-divisor multivariate division: under a monomial order the
    leading term of any multiple of g is divisible by g's leading term,
    so a failed leading-term division decides the question.
    """
    g = _as_poly(g)
    p = _as_poly(p)
    if g.nvars != p.nvars:
        raise ValueError("mixed variable counts")
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    glead_e, glead_c = g.leading_term()
    quot: dict[tuple[int, ...], Fraction] = {}
    r = p
    while not r.is_zero():
        rlead_e, rlead_c = r.leading_term()
        if any(a < b for a, b in zip(rlead_e, glead_e)):
            return False, None
        qe = tuple(a - b for a, b in zip(rlead_e, glead_e))
        qc = rlead_c / glead_c
        quot[qe] = quot.get(qe, Fraction(0)) + qc
        r = r - MultiPoly(g.nvars, {qe: qc}) * g
    return True, MultiPoly(g.nvars, quot)


def vandermonde_rows(values: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], ...]:
    """Rows (1,...), (a_i,...), (a_i^2,...) over the given values."""
    vals = [rational(v) for v in values]
    return tuple(tuple(v ** k for v in vals) for k in range(len(vals)))


def all_distinct(values: Iterable) -> bool:
    seen = set()
    for v in values:
        if v in seen:
            return False
        seen.add(v)
    return True
