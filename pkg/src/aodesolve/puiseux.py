"""Truncated formal Puiseux series with exact coefficients.

A series is a finite map from rational exponents to coefficients plus a
truncation order: ``sum c_q x^q + O(x^prec)``.  ``prec=None`` marks an exact
(finite) series.  Every operation derives the truncation order of its
result from the orders and valuations of its inputs, so nothing is ever
silently extended.  Series at infinity are stored in ``t = 1/x`` and printed
in ``x``.

The module also provides Newton-polygon expansion of bivariate algebraic
equations, power-series solutions of first-order autonomous ODEs from a
regular initial datum, Hensel lifting of simple roots, residual-order
verification, and the ``x = 1/t`` transform of differential systems.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Dict, List, Optional, Sequence

from gmpy2 import mpq

from .diffring import derive
from .factor import DEFAULT_DEGREE_CAP, adjoin_root, factor_over
from .numberfield import DEFAULT_EXTENSION_CAP, AlgNum, NumberField
from .poly import Polynomial, Var, X, squarefree

POINTS = ("0", "inf")

_C = Var("~c", -1, 0)


def _point(p) -> str:
    p = str(p)
    if p in ("0", "zero"):
        return "0"
    if p in ("inf", "infinity", "oo"):
        return "inf"
    raise ValueError(f"unknown expansion point {p!r}")


def _cstr(c) -> str:
    return f"({c})" if isinstance(c, AlgNum) else str(c)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PuiseuxSeries:
    """``sum c_q x^q + O(x^prec)`` around 0, or around infinity in ``t = 1/x``."""

    __slots__ = ("terms", "prec", "point")

    def __init__(self, terms: Optional[Dict] = None, prec=None, point: str = "0"):
        self.point = _point(point)
        self.prec = None if prec is None else Fraction(prec)
        out = {}
        for q, c in (terms or {}).items():
            q = Fraction(q)
            if c and (self.prec is None or q < self.prec):
                out[q] = c
        self.terms = out

    # -- constructors ------------------------------------------------------------

    @classmethod
    def constant(cls, c, point="0"):
        return cls({Fraction(0): c}, None, point)

    @classmethod
    def monomial(cls, c, q, point="0"):
        return cls({Fraction(q): c}, None, point)

    @classmethod
    def variable(cls, point="0"):
        """The independent variable x itself."""
        point = _point(point)
        return cls({Fraction(1 if point == "0" else -1): mpq(1)}, None, point)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, start: int = 0, e: int = 1, order=None, point="0"):
        """Dense form: ``coeffs[k]`` is the coefficient of ``x^((start+k)/e)``;
        ``order`` is the truncation order in units of ``1/e``."""
        terms = {Fraction(start + k, e): c for k, c in enumerate(coeffs)}
        return cls(terms, None if order is None else Fraction(order, e), point)

    # -- structure ---------------------------------------------------------------

    def valuation(self) -> Optional[Fraction]:
        """Lowest exponent with a nonzero coefficient, None if zero to precision."""
        return min(self.terms) if self.terms else None

    def leading_coefficient(self):
        v = self.valuation()
        return None if v is None else self.terms[v]

    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def ramification(self) -> int:
        e = 1
        for q in self.terms:
            e = lcm(e, q.denominator)
        if self.prec is not None:
            e = lcm(e, self.prec.denominator)
        return e

    @property
    def start(self) -> Optional[int]:
        v = self.valuation()
        return None if v is None else int(v * self.ramification)

    @property
    def order(self) -> Optional[int]:
        """Truncation order in units of ``1/e``."""
        return None if self.prec is None else int(self.prec * self.ramification)

    def coefficients(self) -> List:
        """Dense coefficient list from the start exponent up to the order."""
        e = self.ramification
        v = self.valuation()
        if v is None:
            return []
        hi = self.order if self.prec is not None else int(max(self.terms) * e) + 1
        lo = int(v * e)
        return [self.terms.get(Fraction(k, e), mpq(0)) for k in range(lo, hi)]

    def field(self) -> Optional[NumberField]:
        for c in self.terms.values():
            if isinstance(c, AlgNum):
                return c.field
        return None

    def map_coeffs(self, fn) -> "PuiseuxSeries":
        return PuiseuxSeries({q: fn(c) for q, c in self.terms.items()}, self.prec, self.point)

    def truncate(self, prec) -> "PuiseuxSeries":
        return PuiseuxSeries(self.terms, _min_prec(self.prec, Fraction(prec)), self.point)

    def with_precision(self, prec) -> "PuiseuxSeries":
        """Same known terms, declared precision ``prec`` (used when the caller
        knows the terms are exact up to ``prec``)."""
        return PuiseuxSeries(self.terms, prec, self.point)

    # -- arithmetic ----------------------------------------------------------------

    def _coerce(self, other) -> "PuiseuxSeries":
        if isinstance(other, PuiseuxSeries):
            if other.point != self.point:
                raise ValueError("series at different expansion points")
            return other
        if isinstance(other, int):
            other = mpq(other)
        return PuiseuxSeries.constant(other, self.point)

    def __add__(self, other):
        other = self._coerce(other)
        prec = _min_prec(self.prec, other.prec)
        terms = dict(self.terms)
        for q, c in other.terms.items():
            terms[q] = terms[q] + c if q in terms else c
        return PuiseuxSeries(terms, prec, self.point)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({q: -c for q, c in self.terms.items()}, self.prec, self.point)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _low(self):
        """Lower bound for the true valuation (None for the exact zero)."""
        v = self.valuation()
        return v if v is not None else self.prec

    def __mul__(self, other):
        other = self._coerce(other)
        la, lb = self._low(), other._low()
        if la is None or lb is None:
            return PuiseuxSeries({}, None, self.point)
        prec = None
        if self.prec is not None:
            prec = self.prec + lb
        if other.prec is not None:
            prec = _min_prec(prec, other.prec + la)
        # integer exponents over a common denominator, sorted for early exits
        e = lcm(1, *(q.denominator for q in self.terms), *(q.denominator for q in other.terms))
        if prec is not None:
            e = lcm(e, prec.denominator)
        lim = None if prec is None else int(prec * e)
        a = sorted((int(q * e), c) for q, c in self.terms.items())
        b = sorted((int(q * e), c) for q, c in other.terms.items())
        acc: Dict[int, object] = {}
        for ka, ca in (a if b else []):
            if lim is not None and ka + b[0][0] >= lim:
                break
            for kb, cb in b:
                k = ka + kb
                if lim is not None and k >= lim:
                    break
                p = ca * cb
                acc[k] = acc[k] + p if k in acc else p
        terms = {Fraction(k, e): c for k, c in acc.items()}
        return PuiseuxSeries(terms, prec, self.point)

    __rmul__ = __mul__

    def inverse(self, prec=None) -> "PuiseuxSeries":
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("series is zero to its precision")
        target = None if self.prec is None else self.prec - 2 * v
        if prec is not None:
            target = _min_prec(target, Fraction(prec))
        if target is None:
            raise ValueError("inverse of a non-monomial exact series needs a precision")
        c = self.terms[v]
        if len(self.terms) == 1:
            return PuiseuxSeries({-v: 1 / c}, target if self.prec is not None or prec is not None else None,
                                 self.point)
        rel = target + v
        e = lcm(rel.denominator, *(q.denominator for q in self.terms), v.denominator)
        size = int(rel * e) if rel * e == int(rel * e) else int(rel * e) + 1
        inv_c = 1 / c
        u = {}
        for q, cq in self.terms.items():
            k = (q - v) * e
            if 0 < k < size:
                u[int(k)] = cq * inv_c
        s = [mpq(1)] + [mpq(0)] * max(size - 1, 0)
        uk = sorted(u.items())
        for k in range(1, size):
            acc = mpq(0)
            for j, cj in uk:
                if j > k:
                    break
                if s[k - j]:
                    acc = acc - cj * s[k - j]
            s[k] = acc
        terms = {Fraction(k, e) - v: s[k] * inv_c for k in range(size) if s[k]}
        return PuiseuxSeries(terms, target, self.point)

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            limit = None
            if other.prec is None and len(other.terms) > 1:
                if self.prec is None:
                    raise ValueError("exact division needs a precision")
                limit = self.prec - (other.valuation() or 0)
            return self * other.inverse(limit)
        return self * (1 / (other if isinstance(other, AlgNum) else mpq(other)))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PuiseuxSeries.constant(mpq(1), self.point)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def derivative(self) -> "PuiseuxSeries":
        """d/dx; at infinity this is ``-t^2 d/dt``."""
        if self.point == "0":
            terms = {q - 1: _scale(c, q) for q, c in self.terms.items() if q != 0}
            prec = None if self.prec is None else self.prec - 1
        else:
            terms = {q + 1: -_scale(c, q) for q, c in self.terms.items() if q != 0}
            prec = None if self.prec is None else self.prec + 1
        return PuiseuxSeries(terms, prec, self.point)

    # -- comparison and display ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self.point, self.prec, self.terms) == (other.point, other.prec, other.terms)

    def __hash__(self):
        return hash((self.point, self.prec, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def _xexp(self, q: Fraction) -> Fraction:
        return q if self.point == "0" else -q

    def __str__(self):
        parts = []
        for q in sorted(self.terms):
            c = self.terms[q]
            sign = "+"
            if not isinstance(c, AlgNum) and c < 0:
                sign, c = "-", -c
            xq = self._xexp(q)
            if xq == 0:
                parts.append((sign, _cstr(c)))
            elif c == 1:
                parts.append((sign, _xpow(xq)))
            else:
                parts.append((sign, f"{_cstr(c)} * {_xpow(xq)}"))
        if self.prec is not None:
            parts.append(("+", f"O({_xpow(self._xexp(self.prec))})"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"PuiseuxSeries({self}, point={self.point})"

    def to_pairs(self):
        """``[[exponent, coefficient], ...]`` as strings, exponents in x."""
        return [[str(self._xexp(q)), str(self.terms[q])] for q in sorted(self.terms)]


def _scale(c, q: Fraction):
    return c * mpq(q.numerator, q.denominator)


def _xpow(q: Fraction) -> str:
    if q == 1:
        return "x"
    if q.denominator == 1:
        return f"x^{q.numerator}" if q > 0 else f"x^({q.numerator})"
    return f"x^({q.numerator}/{q.denominator})"


def zero_series(prec=None, point="0") -> PuiseuxSeries:
    return PuiseuxSeries({}, prec, point)


# -----------------------------------------------------------------------------
# substitution
# -----------------------------------------------------------------------------


def substitute(p: Polynomial, values: Dict[Var, PuiseuxSeries], point: str = "0") -> PuiseuxSeries:
    """Evaluate the differential polynomial ``p`` at series values.

    ``values`` maps base indeterminates to series; derivatives are taken as
    needed and ``x`` maps to the independent variable at ``point``.
    """
    point = _point(point)
    cache: Dict[Var, PuiseuxSeries] = {X: PuiseuxSeries.variable(point)}

    def value(v: Var) -> PuiseuxSeries:
        if v in cache:
            return cache[v]
        if v.order == 0:
            if v not in values:
                raise KeyError(f"no series given for {v}")
            s = values[v]
            if s.point != point:
                raise ValueError("series at different expansion points")
        else:
            s = value(v.shifted(-1)).derivative()
        cache[v] = s
        return s

    powers: Dict[tuple, PuiseuxSeries] = {}

    def power(v: Var, e: int) -> PuiseuxSeries:
        key = (v, e)
        if key not in powers:
            powers[key] = value(v) if e == 1 else power(v, e - 1) * value(v)
        return powers[key]

    total = PuiseuxSeries({}, None, point)
    for mono, c in p.terms.items():
        term = PuiseuxSeries.constant(c, point)
        for v, e in mono:
            term = term * power(v, e)
        total = total + term
    return total


# -----------------------------------------------------------------------------
# Newton iteration for simple roots
# -----------------------------------------------------------------------------


def _horner(coeffs: Sequence[PuiseuxSeries], y: PuiseuxSeries) -> PuiseuxSeries:
    acc = coeffs[-1]
    for a in reversed(coeffs[:-1]):
        acc = acc * y + a
    return acc


def lift_root(coeffs: Sequence[PuiseuxSeries], start: PuiseuxSeries, target) -> PuiseuxSeries:
    """Newton iteration for a root of ``sum coeffs[j] y^j`` whose derivative
    has valuation zero at the root.

    ``start`` must be correct to its own precision (which must be positive).
    The result is correct to ``target`` or to the best order the
    coefficients support, whichever is smaller.
    """
    target = Fraction(target)
    point = start.point
    dcoeffs = [coeffs[j] * mpq(j) for j in range(1, len(coeffs))] or [zero_series(None, point)]
    y = start
    p = start.prec
    if p is None:
        raise ValueError("start value needs a precision")
    while p < target:
        w = min(2 * p, target)
        yw = y.with_precision(w)
        val = _horner(coeffs, yw)
        der = _horner(dcoeffs, yw)
        if der.valuation() != 0:
            raise ArithmeticError("root is not simple")
        step = val * der.inverse(w)
        new = yw - step
        reached = new.prec if new.prec is not None else w
        reached = min(reached, w)
        if reached <= p:
            break
        y = new.truncate(reached)
        p = reached
    return y.truncate(min(p, target))


# -----------------------------------------------------------------------------
# Newton polygon expansion
# -----------------------------------------------------------------------------


class Branch:
    """One Puiseux root of H(x, y) per conjugacy class.

    ``count`` is the number of conjugate roots this series stands for and
    ``multiplicity`` the root multiplicity in H.  Coefficients live in
    ``field`` (None for Q); ``embed`` maps elements of the input field into it.
    """

    __slots__ = ("series", "count", "multiplicity", "field", "embed")

    def __init__(self, series: PuiseuxSeries, count: int, multiplicity: int, field, embed=None):
        self.series = series
        self.count = count
        self.multiplicity = multiplicity
        self.field = field
        self.embed = embed or _identity

    def __repr__(self):
        return f"Branch({self.series}, count={self.count}, mult={self.multiplicity})"


def _identity(c):
    return c


def _to_dict(H: Polynomial, v: Var, point: str) -> Dict:
    extra = H.variables() - {X, v}
    if extra:
        raise ValueError("expected a polynomial in x and " + str(v))
    sign = 1 if point == "0" else -1
    out = {}
    for mono, c in H.terms.items():
        q, j = 0, 0
        for w, e in mono:
            if w == v:
                j = e
            else:
                q = e
        out[(Fraction(sign * q), j)] = c
    return out


def _lower_hull(points):
    hull = []
    for p in points:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _transform(h: Dict, gamma: Fraction, c) -> Dict:
    """x^-beta * H(x, x^gamma (c + y1)), beta the edge height."""
    beta = min(q + j * gamma for (q, j) in h)
    out: Dict = {}
    for (q, j), a in h.items():
        base = q + j * gamma - beta
        for i in range(j + 1):
            coef = a * comb(j, i) * (c ** (j - i) if j - i else 1)
            key = (base, i)
            out[key] = out[key] + coef if key in out else coef
    return {k: v for k, v in out.items() if v}


class _Expander:
    def __init__(self, point, N, cap, max_degree):
        self.point = point
        self.N = Fraction(N)
        self.cap = cap
        self.max_degree = max_degree
        self.out: List[Branch] = []
        self.depth = 0

    def run(self, h, field, prefix, gamma_total, count, mult, top, emb=_identity):
        self.depth += 1
        if self.depth > 500:
            raise ArithmeticError("Newton polygon recursion did not terminate")
        js: Dict[int, Fraction] = {}
        for (q, j) in h:
            js[j] = min(js.get(j, q), q)
        jmin = min(js)
        if jmin > 0:
            self.out.append(Branch(PuiseuxSeries(dict(prefix), None, self.point), count, mult * jmin, field, emb))
            h = {(q, j - jmin): c for (q, j), c in h.items()}
            js = {j - jmin: q for j, q in js.items()}
        pts = sorted(js.items())
        hull = _lower_hull(pts)
        for (ja, va), (jb, vb) in zip(hull, hull[1:]):
            gamma = (va - vb) / (jb - ja)
            if not top and gamma <= 0:
                continue
            phi_items = []
            for j in range(ja, jb + 1):
                if j in js and js[j] == va - gamma * (j - ja):
                    phi_items.append(((((_C, j - ja),) if j > ja else ()), h[(js[j], j)]))
            phi = Polynomial.from_terms(phi_items)
            for f, m in factor_over(phi, field, self.max_degree):
                if f.degree(_C) < 1 or (f.degree(_C) == 1 and len(f.terms) == 1):
                    continue
                ext = adjoin_root(f, _C, field, self.cap)
                step = ext.embed
                h2 = {k: step(c) for k, c in h.items()} if ext.field is not field else h
                pre2 = {q: step(c) for q, c in prefix.items()} if ext.field is not field else dict(prefix)
                emb2 = emb if ext.field is field else (lambda c, _a=emb, _b=step: _b(_a(c)))
                g2 = gamma_total + gamma
                pre2[g2] = ext.root
                count2 = count * f.degree(_C)
                h1 = _transform(h2, gamma, ext.root)
                if m == 1:
                    self._simple(h1, ext.field, pre2, g2, count2, mult, emb2)
                else:
                    self.run(h1, ext.field, pre2, g2, count2, mult, False, emb2)

    def _simple(self, h1, field, prefix, gamma_total, count, mult, emb):
        target = self.N - gamma_total
        if target <= 0:
            y1 = zero_series(target, self.point)
        else:
            deg = max(j for (_, j) in h1)
            coeffs = [dict() for _ in range(deg + 1)]
            den = 1
            for (q, j), c in h1.items():
                coeffs[j][q] = c
                den = lcm(den, q.denominator)
            series = [PuiseuxSeries(t, None, self.point) for t in coeffs]
            start = zero_series(Fraction(1, den), self.point)
            y1 = lift_root(series, start, target)
        terms = dict(prefix)
        for q, c in y1.terms.items():
            terms[q + gamma_total] = c
        prec = None if y1.prec is None else y1.prec + gamma_total
        self.out.append(Branch(PuiseuxSeries(terms, prec, self.point), count, mult, field, emb))


def newton_expand(H: Polynomial, v: Var, point: str = "0", N=12, field: Optional[NumberField] = None,
                  cap: int = DEFAULT_EXTENSION_CAP, max_degree: int = DEFAULT_DEGREE_CAP) -> List[Branch]:
    """All Puiseux roots y(x) of H(x, y) = 0 at ``point``, to order ``N``.

    One branch per conjugacy class over the coefficient field; the counts
    times multiplicities add up to deg_y(H).  At infinity the series are in
    ``t = 1/x``.
    """
    point = _point(point)
    if not H or H.degree(v) < 1:
        raise ValueError("polynomial must have positive degree in " + str(v))
    if field is None:
        field = H.field()
    exp = _Expander(point, N, cap, max_degree)
    for g, m in squarefree(H, v).factors:
        if g.degree(v) < 1:
            continue
        exp.run(_to_dict(g, v, point), field, {}, Fraction(0), 1, m, True)
    return sorted(exp.out, key=_branch_key)


def _branch_key(b: Branch):
    s = b.series
    return (s.valuation() if s.valuation() is not None else Fraction(10 ** 9), b.count, str(s))


# -----------------------------------------------------------------------------
# power series solutions of first-order autonomous ODEs
# -----------------------------------------------------------------------------


def ode_series_solution(F: Polynomial, y0, p0, N: int, var: Optional[Var] = None) -> PuiseuxSeries:
    """The formal power series solution of F(y, y') = 0 with y(0)=y0, y'(0)=p0.

    Coefficients are found one at a time: the coefficient of x^k in
    F(y, y') is linear in a_{k+1} with slope (k+1) * dF/dy'(y0, p0).
    """
    if var is None:
        bases = {w.base() for w in F.jet_variables()}
        if len(bases) != 1:
            raise ValueError("expected an equation in one indeterminate")
        var = bases.pop()
    d1 = var.shifted(1)
    if F.jet_leader() is None or F.jet_leader().order > 1 or X in F.variables():
        raise ValueError("expected an autonomous first-order equation")
    at = {var: Polynomial.constant(y0), d1: Polynomial.constant(p0)}
    if F.subs(at):
        raise ValueError("initial datum does not satisfy the equation")
    sep = F.diff(d1).subs(at)
    if not sep:
        raise ValueError("singular initial datum")
    slope = sep.constant_value()
    a = [y0, p0]
    for k in range(1, N - 1):
        # a_{k+1} = 0 for now, so y is known exactly below x^(k+2)
        y = PuiseuxSeries({i: c for i, c in enumerate(a)}, k + 2)
        r = substitute(F, {var: y})
        rk = r.terms.get(Fraction(k), mpq(0))
        a.append(-rk / (slope * (k + 1)))
    return PuiseuxSeries({i: c for i, c in enumerate(a[:N])}, N)


def hensel_root(P: Polynomial, v: Var, values: Dict[Var, PuiseuxSeries], r0, N, point="0") -> PuiseuxSeries:
    """Lift the simple root ``r0`` of P(values(0), v) to a series root."""
    d = P.degree(v)
    coeffs = [substitute(P.coeff(v, j), values, point) for j in range(d + 1)]
    den = 1
    for s in coeffs:
        for q in s.terms:
            den = lcm(den, q.denominator)
    start = PuiseuxSeries.constant(r0, point).with_precision(Fraction(1, den))
    return lift_root(coeffs, start, N)


# -----------------------------------------------------------------------------
# residual verification
# -----------------------------------------------------------------------------


class ResidualEntry:
    __slots__ = ("member", "kind", "valuation", "precision", "status")

    def __init__(self, member, kind, valuation, precision, status):
        self.member = member
        self.kind = kind
        self.valuation = valuation
        self.precision = precision
        self.status = status

    def __repr__(self):
        return f"ResidualEntry({self.member} {self.kind}: val={self.valuation}, prec={self.precision}, {self.status})"


class ResidualReport:
    """Per-member residual valuations and an overall pass/fail/inconclusive."""

    __slots__ = ("entries", "N", "verdict")

    def __init__(self, entries: List[ResidualEntry], N):
        self.entries = entries
        self.N = N
        statuses = {e.status for e in entries}
        if "fail" in statuses:
            self.verdict = "fail"
        elif "inconclusive" in statuses:
            self.verdict = "inconclusive"
        else:
            self.verdict = "pass"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __repr__(self):
        return f"ResidualReport({self.verdict}, {self.entries})"


def residual_order(system, values: Dict[Var, PuiseuxSeries], N, point: str = "0") -> ResidualReport:
    """Substitute series into every member of ``system``.

    An equation passes when its residual is known to vanish below ``N``
    and fails when some coefficient below ``N`` is nonzero; too short a
    truncation is reported as inconclusive.  An inequation passes when its
    residual has a nonzero coefficient below its truncation order.
    """
    N = Fraction(N)
    entries = []
    for f in system.equations:
        r = substitute(f, values, point)
        v = r.valuation()
        if v is not None:
            status = "fail" if v < N else "pass"
        elif r.prec is None or r.prec >= N:
            status = "pass"
        else:
            status = "inconclusive"
        entries.append(ResidualEntry(f, "eq", v, r.prec, status))
    for u in system.inequations:
        r = substitute(u, values, point)
        v = r.valuation()
        if v is not None:
            status = "pass"
        elif r.prec is None:
            status = "fail"
        else:
            status = "inconclusive"
        entries.append(ResidualEntry(u, "ineq", v, r.prec, status))
    return ResidualReport(entries, N)


# -----------------------------------------------------------------------------
# expansion at infinity
# -----------------------------------------------------------------------------


def _infinity_member(f: Polynomial) -> Polynomial:
    images: Dict[Var, Polynomial] = {}

    def image(w: Var) -> Polynomial:
        if w not in images:
            if w.order == 0:
                images[w] = Polynomial.variable(w)
            else:
                prev = image(w.shifted(-1))
                images[w] = -(Polynomial.variable(X, 2) * derive(prev))
        return images[w]

    top = f.degree(X)
    out = Polynomial()
    for mono, c in f.terms.items():
        a = 0
        term = Polynomial.constant(c)
        for w, e in mono:
            if w.is_x:
                a = e
            else:
                term = term * image(w) ** e
        out = out + term * Polynomial.variable(X, top - a)
    return out


def at_infinity_transform(system):
    """Substitute x = 1/t with d/dx = -t^2 d/dt; the result uses ``x`` for t.

    Powers of t introduced by clearing denominators are units and are
    stripped by the system normalization.
    """
    from .systems import DiffSystem

    return DiffSystem([_infinity_member(f) for f in system.equations],
                      [_infinity_member(u) for u in system.inequations], system.universe)
