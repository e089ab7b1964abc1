"""Algebraic solutions of a first-order autonomous equation F(y, y') = 0.

The search expands the power series solution through a regular initial
datum and looks for a polynomial Q(x, y) of bounded degree annihilating it
(a nullspace computation on the truncated series).  A candidate is accepted
only after the exact check that F pseudo-reduces to zero modulo Q and Q'.
Since every non-constant solution of an irreducible F is algebraic as soon
as one is, a single regular datum decides the question.
"""
from __future__ import annotations

from typing import List, Optional

from gmpy2 import mpq

from .diffring import derive, prem
from .factor import DEFAULT_DEGREE_CAP, adjoin_root, factor_over
from .numberfield import DEFAULT_EXTENSION_CAP, ExtensionCapError
from .poly import ONE_POLY, Polynomial, Var, X, gcd, squarefree_part
from .puiseux import ode_series_solution

GUARD_TERMS = 8


class InitialDatumError(ArithmeticError):
    """No regular initial datum was found within the scan and extension caps."""


class MinimalPolynomial:
    """A normalized minimal polynomial Q(x, y) of an algebraic solution."""

    __slots__ = ("poly", "var", "x_degree", "y_degree", "datum")

    def __init__(self, poly: Polynomial, var: Var, datum=None):
        self.poly = poly
        self.var = var
        self.x_degree = poly.degree(X)
        self.y_degree = poly.degree(var)
        self.datum = datum

    def field(self):
        return self.poly.field()

    def __eq__(self, other):
        if isinstance(other, MinimalPolynomial):
            return self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"MinimalPolynomial({self.poly})"


def _single_var(F: Polynomial) -> Var:
    bases = {w.base() for w in F.jet_variables()}
    if len(bases) != 1:
        raise ValueError("expected an equation in a single indeterminate")
    return bases.pop()


def constant_solutions(F: Polynomial, var: Optional[Var] = None) -> Polynomial:
    """Square-free polynomial whose roots are the constant solutions.

    Returns the zero polynomial when every constant is a solution and the
    constant 1 when there is none.
    """
    var = var or _single_var(F)
    g = F.subs({var.shifted(1): Polynomial()})
    if not g:
        return Polynomial()
    if g.is_constant():
        return ONE_POLY
    return squarefree_part(g, var).primitive()


def verify_solution_polynomial(F: Polynomial, Q: Polynomial, var: Optional[Var] = None) -> bool:
    """Every root of Q(x, y) solves F: F reduces to zero modulo Q and Q'
    while the initial and separant of Q stay nonzero modulo Q."""
    var = var or _single_var(Q if Q.jet_variables() else F)
    if Q.degree(var) < 1:
        return False
    if prem(F, [Q, derive(Q)]):
        return False
    init = Q.coeff(var, Q.degree(var))
    sep = Q.diff(var)
    return bool(prem(init, [Q], differential=False)) and bool(prem(sep, [Q], differential=False))


def _nullspace(rows: List[list], ncols: int) -> List[list]:
    """Basis of {v : rows * v = 0} by exact Gauss-Jordan elimination."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [mpq(0)] * ncols
        v[fc] = mpq(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def _candidates():
    yield mpq(0)
    for k in range(1, 13):
        yield mpq(k)
        yield mpq(-k)
    for den in (2, 3):
        for num in range(1, 7):
            if num % den:
                yield mpq(num, den)
                yield mpq(-num, den)


def regular_datum(F: Polynomial, var: Var, cap: int = DEFAULT_EXTENSION_CAP,
                  max_degree: int = DEFAULT_DEGREE_CAP, avoid: Optional[Polynomial] = None):
    """First (y0, p0, extension) with F(y0, .) square-free of full degree and
    p0 a nonzero root; rational roots are preferred over extensions.
    Values of y0 where ``avoid`` vanishes are skipped."""
    d1 = var.shifted(1)
    dx = F.degree(d1)
    field = F.field()
    for y0 in _candidates():
        if avoid is not None and not avoid.subs({var: Polynomial.constant(y0)}):
            continue
        f = F.subs({var: Polynomial.constant(y0)})
        if f.degree(d1) < dx or f.jet_variables() - {d1}:
            continue
        if gcd(f, f.diff(d1)).degree(d1) > 0:
            continue
        facs = [g for g, _ in factor_over(f, field, max_degree) if g.subs({d1: Polynomial()})]
        if not facs:
            continue
        facs.sort(key=lambda g: (g.degree(d1), str(g)))
        for g in facs:
            try:
                ext = adjoin_root(g, d1, field, cap)
            except ExtensionCapError:
                continue
            return y0, ext.root, ext
    raise InitialDatumError("initial datum cap: no regular initial datum found")


def _complete_shift(Q: Polynomial) -> Polynomial:
    """Shift x so the x^(d-1) y^e coefficient vanishes for the largest usable e."""
    d = Q.degree(X)
    if d < 1:
        return Q
    v = max(Q.variables() - {X})
    top = Q.coeff(X, d)
    sub = Q.coeff(X, d - 1)
    for e in range(Q.degree(v), -1, -1):
        a = top.coeff(v, e)
        if a:
            c = -sub.coeff(v, e).constant_value() / (d * a.constant_value()) if sub.coeff(v, e) else 0
            if c:
                Q = Q.subs({X: Polynomial.variable(X) + Polynomial.constant(c)})
            return Q
    return Q


def algebraic_solve(F: Polynomial, var: Optional[Var] = None, cap: int = DEFAULT_EXTENSION_CAP,
                    max_degree: int = DEFAULT_DEGREE_CAP, guard: int = GUARD_TERMS) -> Optional[MinimalPolynomial]:
    """Minimal polynomial of a non-constant algebraic solution of F(y, y') = 0, or None.

    F should be irreducible.  The returned Q is normalized by completing
    the shift and made primitive; all non-constant solutions are the roots
    of Q(x + c, y).
    """
    var = var or _single_var(F)
    d1 = var.shifted(1)
    dx = F.degree(d1)
    if dx < 1:
        raise ValueError("equation does not involve the derivative")
    if F.jet_leader() != d1 or X in F.variables():
        raise ValueError("expected an autonomous first-order equation")
    dy_max = F.degree(var) + dx
    N = (dx + 1) * (dy_max + 1) + guard
    y0, p0, ext = regular_datum(F, var, cap, max_degree)
    FK = F.map_coeffs(ext.embed)
    series = ode_series_solution(FK, y0, p0, N, var)
    powers = [None, series]
    for j in range(2, dy_max + 1):
        powers.append(powers[-1] * series)
    for db in range(1, dy_max + 1):
        cols = [(i, j) for j in range(db + 1) for i in range(dx + 1)]
        rows = []
        for k in range(N):
            row = []
            for i, j in cols:
                if j == 0:
                    row.append(mpq(1) if k == i else mpq(0))
                else:
                    row.append(powers[j].terms.get(k - i, mpq(0)) if k >= i else mpq(0))
            rows.append(row)
        for vec in _nullspace(rows, len(cols)):
            Q = Polynomial.from_terms(
                ((((var, j),) if j else ()) + (((X, i),) if i else ()), c)
                for (i, j), c in zip(cols, vec) if c
            )
            if Q.degree(var) < 1:
                continue
            Q = _complete_shift(Q.primitive()).primitive()
            if verify_solution_polynomial(FK, Q, var):
                return MinimalPolynomial(Q, var, (y0, p0))
    return None


def shift_equivalent(Q1, Q2, var: Optional[Var] = None):
    """The constant c with Q1(x, y) = Q2(x + c, y) up to a scalar, or None."""
    Q1 = getattr(Q1, "poly", Q1)
    Q2 = getattr(Q2, "poly", Q2)
    if var is None:
        var = max(Q1.variables() - {X})
    d = Q1.degree(X)
    if d != Q2.degree(X) or Q1.degree(var) != Q2.degree(var):
        return None
    if d == 0:
        return mpq(0) if Q1.primitive() == Q2.primitive() else None
    a_top, b_top = Q1.coeff(X, d), Q2.coeff(X, d)
    e = max(k for k in range(b_top.degree(var) + 1) if b_top.coeff(var, k))
    b = b_top.coeff(var, e).constant_value()
    a = a_top.coeff(var, e)
    if not a:
        return None
    lam = a.constant_value() / b
    a1 = Q1.coeff(X, d - 1).coeff(var, e)
    b1 = Q2.coeff(X, d - 1).coeff(var, e)
    a1 = a1.constant_value() if a1 else mpq(0)
    b1 = b1.constant_value() if b1 else mpq(0)
    c = (a1 / lam - b1) / (d * b)
    shifted = Q2.subs({X: Polynomial.variable(X) + Polynomial.constant(c)}) if c else Q2
    return c if shifted.scale(lam) == Q1 else None
