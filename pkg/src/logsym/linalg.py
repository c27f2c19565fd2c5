"""Exact linear algebra over the polynomial ring and its fraction field.

Hamiltonian vector fields, homotopy primitives and operator decompositions all
reduce to solving small linear systems whose entries are polynomials.  The
solver here clears denominators row by row, runs fraction-free (Bareiss)
elimination so every intermediate division is exact, back-substitutes in the
fraction field, and then *verifies* A*x == b before returning: a wrong answer
is a bug we want to see, not propagate.
"""

from __future__ import annotations

from typing import List, Optional

from .poly import Poly, PolyError, divides, exact_quotient, gcd_mv
from .scalars import Scalar


class LinAlgError(ArithmeticError):
    pass


class RationalFunction:
    """Quotient num/den of polynomials, kept normalised by their gcd.

    The denominator is normalised so its leading scalar has unit part one;
    invertible monomials (torus units) migrate into the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None, _normalized=False):
        if den is None:
            den = Poly.one(num.ctx)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        num.ctx.check_same(den.ctx)
        if not _normalized:
            num, den = _normalize_fraction(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p: Poly) -> "RationalFunction":
        return RationalFunction(p, Poly.one(p.ctx), _normalized=True)

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_poly(self) -> Optional[Poly]:
        """The underlying polynomial when the denominator is invertible, else None."""
        if self.den.is_one():
            return self.num
        if self.den.is_unit_monomial():
            return self.num * self.den.inverse_unit()
        ok, q = divides(self.den, self.num)
        return q if ok else None

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        n = self.num * other.den + other.num * self.den
        return RationalFunction(n, self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __repr__(self):
        return "RationalFunction(%r / %r)" % (self.num, self.den)


def _normalize_fraction(num: Poly, den: Poly):
    if num.is_zero():
        return num, Poly.one(num.ctx)
    g = gcd_mv(num, den)
    if not g.is_one():
        num = exact_quotient(num, g)
        den = exact_quotient(den, g)
    if den.is_unit_monomial():
        num = num * den.inverse_unit()
        den = Poly.one(num.ctx)
    else:
        _, lc = den.leading()
        u = lc.unit_part()
        if not u.is_one():
            inv = u.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
    return num, den


# -- fraction-free elimination ---------------------------------------------


def det_poly(rows: List[List[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by Bareiss elimination.

    All divisions along the way are exact (a classical property of the
    Bareiss scheme over any integral domain), so the result is again a
    polynomial with no fraction arithmetic.
    """
    n = len(rows)
    if n == 0:
        raise LinAlgError("empty matrix")
    ctx = rows[0][0].ctx
    a = [list(r) for r in rows]
    for r in a:
        if len(r) != n:
            raise LinAlgError("matrix is not square")
    sign = 1
    prev = Poly.one(ctx)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(ctx)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_quotient(t, prev)
            a[i][k] = Poly.zero(ctx)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def solve_linear(rows: List[List[Poly]], rhs: List[Poly]) -> List[RationalFunction]:
    """Solve A x = b exactly over the fraction field.

    Raises LinAlgError when A is singular or the verification A*x == b fails
    (the latter would mean an internal arithmetic bug, so it is checked every
    time rather than trusted).
    """
    n = len(rows)
    if n == 0 or len(rhs) != n:
        raise LinAlgError("bad system shape")
    ctx = rows[0][0].ctx
    # augmented fraction-free elimination
    a = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for r in a:
        if len(r) != n + 1:
            raise LinAlgError("matrix is not square")
    prev = Poly.one(ctx)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    break
            else:
                raise LinAlgError("singular matrix")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                t = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_quotient(t, prev)
            a[i][k] = Poly.zero(ctx)
        prev = a[k][k]
    if a[n - 1][n - 1].is_zero():
        raise LinAlgError("singular matrix")
    # back-substitution in the fraction field
    x: List[RationalFunction] = [RationalFunction.from_poly(Poly.zero(ctx))] * n
    for i in range(n - 1, -1, -1):
        acc = RationalFunction.from_poly(a[i][n])
        for j in range(i + 1, n):
            acc = acc - RationalFunction.from_poly(a[i][j]) * x[j]
        x[i] = acc / RationalFunction.from_poly(a[i][i])
    for i in range(n):
        acc = RationalFunction.from_poly(Poly.zero(ctx))
        for j in range(n):
            acc = acc + RationalFunction.from_poly(rows[i][j]) * x[j]
        if not (acc - RationalFunction.from_poly(rhs[i])).is_zero():
            raise LinAlgError("solution verification failed")
    return x


def solve_linear_poly(rows: List[List[Poly]], rhs: List[Poly]) -> Optional[List[Poly]]:
    """Like solve_linear but insisting on polynomial solutions; None if any
    component fails to clear its denominator."""
    sols = solve_linear(rows, rhs)
    out = []
    for s in sols:
        p = s.as_poly()
        if p is None:
            return None
        out.append(p)
    return out


def matrix_of_scalars(rows: List[List[Scalar]], ctx) -> List[List[Poly]]:
    return [[Poly.constant(ctx, c) for c in r] for r in rows]
