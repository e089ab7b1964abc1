"""Sparse multivariate polynomials over Q or a single extension Q(a).

Variables are :class:`Var` tuples ``(stem, index, order)``.  Tuple order is
the ranking: the independent variable ``X`` sorts below every jet variable,
and jet variables sort by indeterminate name (natural order, so ``y < z``
and ``y2 < y10``) and then by derivative order.  A monomial is a tuple of
``(Var, exponent)`` pairs in decreasing variable order, so plain tuple
comparison of monomials is the lexicographic term order with the highest
ranked variable most significant.

Polynomials are immutable once built.  Nothing here normalizes implicitly;
``primitive()`` is the explicit canonical form used for generators.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, NamedTuple, Optional, Tuple

from gmpy2 import mpq, gcd as igcd, lcm as ilcm

from .numberfield import AlgNum, ONE, ZERO, common_field


class Var(NamedTuple):
    stem: str
    index: int
    order: int

    @property
    def name(self) -> str:
        if not self.stem:
            return "x"
        return self.stem if self.index < 0 else f"{self.stem}{self.index}"

    @property
    def is_x(self) -> bool:
        return not self.stem

    def shifted(self, k: int = 1) -> "Var":
        if self.is_x:
            raise ValueError("cannot differentiate the independent variable as a jet")
        return Var(self.stem, self.index, self.order + k)

    def base(self) -> "Var":
        return Var(self.stem, self.index, 0)

    def __str__(self) -> str:
        if self.order == 0:
            return self.name
        if self.order <= 3:
            return self.name + "'" * self.order
        return f"{self.name}^({self.order})"

    def __repr__(self) -> str:
        return f"Var({str(self)!r})"


X = Var("", -1, 0)

_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z_]*?)(\d*)$")


def jet(name: str, order: int = 0) -> Var:
    """Jet variable ``name^(order)``; ``jet('x')`` is the independent variable."""
    if name == "x":
        if order:
            raise ValueError("derivative of the independent variable x")
        return X
    m = _NAME_RE.match(name)
    if not m:
        raise ValueError(f"invalid indeterminate name {name!r}")
    stem, digits = m.groups()
    return Var(stem, int(digits) if digits else -1, order)


Monomial = Tuple[Tuple[Var, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va > vb:
            out.append(a[i])
            i += 1
        elif vb > va:
            out.append(b[j])
            j += 1
        else:
            out.append((va, ea + eb))
            i += 1
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def _mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """a / b if b divides a, else None."""
    db = dict(b)
    out = []
    for v, e in a:
        f = db.pop(v, 0)
        if f > e:
            return None
        if e > f:
            out.append((v, e - f))
    if db:
        return None
    return tuple(out)


def _coerce_coeff(c):
    if isinstance(c, AlgNum):
        return c
    return mpq(c)


class Polynomial:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[Monomial, object]] = None):
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = _coerce_coeff(c)
        return cls({(): c} if c else {})

    @classmethod
    def variable(cls, v: Var, exp: int = 1) -> "Polynomial":
        if exp == 0:
            return cls({(): ONE})
        return cls({((v, exp),): ONE})

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Monomial, object]]) -> "Polynomial":
        terms: Dict[Monomial, object] = {}
        for m, c in items:
            m = tuple(sorted(((v, e) for v, e in m if e), reverse=True))
            c = terms.get(m, ZERO) + _coerce_coeff(c)
            if c:
                terms[m] = c
            else:
                terms.pop(m, None)
        return cls(terms)

    # -- basic predicates ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self):
        return self.terms.get((), ZERO)

    def is_rational(self) -> bool:
        return not any(isinstance(c, AlgNum) for c in self.terms.values())

    def field(self):
        return common_field(self.terms.values())

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def jet_variables(self) -> set:
        return {v for v in self.variables() if not v.is_x}

    def is_unit(self) -> bool:
        """Nonzero and free of jet variables: invertible over K(x)."""
        if not self.terms:
            return False
        for m in self.terms:
            for v, _ in m:
                if not v.is_x:
                    return False
        return True

    def leader(self) -> Optional[Var]:
        best = None
        for m in self.terms:
            if m and (best is None or m[0][0] > best):
                best = m[0][0]
        return best

    def jet_leader(self) -> Optional[Var]:
        lv = self.leader()
        return None if lv is None or lv.is_x else lv

    def degree(self, v: Var) -> int:
        """Degree in ``v``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        d = 0
        for m in self.terms:
            for w, e in m:
                if w == v:
                    if e > d:
                        d = e
                    break
                if w < v:
                    break
        return d

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    # -- arithmetic ------------------------------------------------------------

    def _as_poly(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            return other
        try:
            return Polynomial.constant(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial()
        if c == 1:
            return self
        return Polynomial({m: a * c for m, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = _coerce_coeff(other)
            except (TypeError, ValueError):
                return NotImplemented
            return self.scale(c)
        if not self.terms or not other.terms:
            return Polynomial()
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return Polynomial({_mono_mul(m, mb): c * cb for m, c in a.items()})
        terms: Dict[Monomial, object] = {}
        get = terms.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _mono_mul(ma, mb)
                s = get(m)
                terms[m] = ca * cb if s is None else s + ca * cb
        return Polynomial({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def mul_monomial(self, mono: Monomial, c=ONE) -> "Polynomial":
        return Polynomial({_mono_mul(m, mono): a * c for m, a in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a scalar or an exact polynomial divisor."""
        if isinstance(other, Polynomial):
            q = divide_exact(self, other)
            if q is None:
                raise ArithmeticError("inexact polynomial division")
            return q
        inv = 1 / _coerce_coeff(other)
        return self.scale(inv)

    # -- equality / hashing ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        try:
            o = Polynomial.constant(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure in one variable --------------------------------------------

    def coefficients(self, v: Var) -> Dict[int, "Polynomial"]:
        """Map ``k -> coefficient of v^k`` (coefficients free of ``v``)."""
        out: Dict[int, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            k = 0
            rest = m
            for i, (w, e) in enumerate(m):
                if w == v:
                    k = e
                    rest = m[:i] + m[i + 1:]
                    break
                if w < v:
                    break
            out.setdefault(k, {})[rest] = c
        return {k: Polynomial(t) for k, t in out.items()}

    def coeff(self, v: Var, k: int) -> "Polynomial":
        terms = {}
        for m, c in self.terms.items():
            e = 0
            rest = m
            for i, (w, f) in enumerate(m):
                if w == v:
                    e = f
                    rest = m[:i] + m[i + 1:]
                    break
                if w < v:
                    break
            if e == k:
                terms[rest] = c
        return Polynomial(terms)

    def initial(self, v: Optional[Var] = None) -> "Polynomial":
        if v is None:
            v = self.leader()
            if v is None:
                return self
        return self.coeff(v, self.degree(v))

    def reductum(self, v: Optional[Var] = None) -> "Polynomial":
        if v is None:
            v = self.leader()
            if v is None:
                return Polynomial()
        d = self.degree(v)
        return self - self.coeff(v, d) * Polynomial.variable(v, d)

    def separant(self) -> "Polynomial":
        v = self.leader()
        if v is None:
            return Polynomial()
        return self.diff(v)

    def diff(self, v: Var) -> "Polynomial":
        terms = {}
        for m, c in self.terms.items():
            for i, (w, e) in enumerate(m):
                if w == v:
                    nm = m[:i] + (((w, e - 1),) if e > 1 else ()) + m[i + 1:]
                    terms[nm] = terms.get(nm, ZERO) + c * e
                    break
                if w < v:
                    break
        return Polynomial({m: c for m, c in terms.items() if c})

    def subs(self, mapping: Dict[Var, object]) -> "Polynomial":
        """Substitute polynomials (or scalars) for variables simultaneously."""
        if not mapping:
            return self
        images = {v: (p if isinstance(p, Polynomial) else Polynomial.constant(p))
                  for v, p in mapping.items()}
        powers: Dict[Tuple[Var, int], Polynomial] = {}

        def power(v, e):
            key = (v, e)
            p = powers.get(key)
            if p is None:
                p = images[v] ** e
                powers[key] = p
            return p

        result = Polynomial()
        # group by the substituted part of the monomial to share work
        groups: Dict[Monomial, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            sub = tuple((v, e) for v, e in m if v in images)
            keep = tuple((v, e) for v, e in m if v not in images)
            groups.setdefault(sub, {})[keep] = c
        for sub, rest in groups.items():
            factor = Polynomial.constant(1)
            for v, e in sub:
                factor = factor * power(v, e)
            result = result + factor * Polynomial(rest)
        return result

    def map_coeffs(self, fn) -> "Polynomial":
        terms = {}
        for m, c in self.terms.items():
            c2 = fn(c)
            if c2:
                terms[m] = c2
        return Polynomial(terms)

    def rename(self, mapping: Dict[Var, Var]) -> "Polynomial":
        return Polynomial.from_terms(
            (tuple((mapping.get(v, v), e) for v, e in m), c) for m, c in self.terms.items()
        )

    # -- normal forms ---------------------------------------------------------

    def leading_monomial(self) -> Monomial:
        return max(self.terms)

    def lc(self):
        """Leading coefficient in the lexicographic term order."""
        if not self.terms:
            return ZERO
        return self.terms[max(self.terms)]

    def primitive(self) -> "Polynomial":
        """Canonical scalar normalization.

        Rational coefficients: integral with content 1 and positive leading
        coefficient.  Extension coefficients: leading coefficient 1.
        """
        if not self.terms:
            return self
        coeffs = self.terms.values()
        if any(isinstance(c, AlgNum) for c in coeffs):
            return self.scale(1 / self.lc())
        den = 1
        for c in coeffs:
            den = ilcm(den, c.denominator)
        num = 0
        for c in coeffs:
            num = igcd(num, c.numerator * (den // c.denominator))
        factor = mpq(den, num)
        if self.lc() < 0:
            factor = -factor
        if factor == 1:
            return self
        return self.scale(factor)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.lc())

    # -- printing ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)
            if isinstance(c, AlgNum):
                coeff = f"({c})"
                neg = False
            else:
                neg = c < 0
                a = -c if neg else c
                coeff = "" if (a == 1 and mono) else str(a)
            if coeff and mono:
                body = f"{coeff}*{mono}"
            else:
                body = coeff or mono
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


ZERO_POLY = Polynomial()
ONE_POLY = Polynomial.constant(1)


def var(name: str, order: int = 0) -> Polynomial:
    return Polynomial.variable(jet(name, order))


def xpoly() -> Polynomial:
    return Polynomial.variable(X)


# -----------------------------------------------------------------------------
# division
# -----------------------------------------------------------------------------


def divide_exact(p: Polynomial, q: Polynomial) -> Optional[Polynomial]:
    """Return ``p / q`` if ``q`` divides ``p`` exactly, else ``None``."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return Polynomial()
    if q.is_constant():
        return p.scale(1 / q.constant_value())
    lm_q = max(q.terms)
    inv_lc = 1 / q.terms[lm_q]
    qterms = list(q.terms.items())
    r = dict(p.terms)
    quot: Dict[Monomial, object] = {}
    while r:
        m = max(r)
        t = _mono_div(m, lm_q)
        if t is None:
            return None
        c = r[m] * inv_lc
        quot[t] = c
        for mq, cq in qterms:
            mm = _mono_mul(mq, t)
            s = r.get(mm, ZERO) - c * cq
            if s:
                r[mm] = s
            else:
                r.pop(mm, None)
    return Polynomial(quot)


def pseudo_divide(a: Polynomial, b: Polynomial, v: Var):
    """Lazy pseudo-division of ``a`` by ``b`` with respect to ``v``.

    Returns ``(q, r, e)`` with ``init(b)^e * a == q*b + r`` and
    ``deg_v(r) < deg_v(b)``.  The initial is multiplied in only when the
    current leading coefficient is not already divisible by it, so ``e`` is
    the number of steps that actually needed it.
    """
    db = b.degree(v)
    if db <= 0:
        raise ValueError("not a divisor variable")
    ib = b.coeff(v, db)
    unit_init = ib.is_constant()
    q = Polynomial()
    r = a
    e = 0
    dr = r.degree(v)
    while dr >= db:
        lead = r.coeff(v, dr)
        shift = Polynomial.variable(v, dr - db)
        t = None if unit_init else divide_exact(lead, ib)
        if unit_init:
            t = lead.scale(1 / ib.constant_value())
        if t is not None:
            term = t * shift
            r = r - term * b
            q = q + term
        else:
            term = lead * shift
            r = ib * r - term * b
            q = ib * q + term
            e += 1
        dr = r.degree(v)
    return q, r, e


def prem(a: Polynomial, b: Polynomial, v: Var) -> Polynomial:
    """Classical pseudo-remainder with multiplier ``lc(b)^(deg a - deg b + 1)``."""
    da, db = a.degree(v), b.degree(v)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if da < db:
        return a
    ib = b.coeff(v, db)
    r = a
    n = da - db + 1
    dr = da
    while dr >= db and r:
        lead = r.coeff(v, dr)
        r = ib * r - lead * Polynomial.variable(v, dr - db) * b
        n -= 1
        dr = r.degree(v)
    if n:
        r = r * ib ** n
    return r


def pquo(a: Polynomial, b: Polynomial, v: Var) -> Polynomial:
    return pseudo_divide(a, b, v)[0]


# -----------------------------------------------------------------------------
# subresultants, resultant, gcd
# -----------------------------------------------------------------------------


def _exact(p: Polynomial, q: Polynomial) -> Polynomial:
    r = divide_exact(p, q)
    if r is None:
        raise ArithmeticError("subresultant division was not exact")
    return r


def subresultant_prs(f: Polynomial, g: Polynomial, v: Var):
    """Subresultant PRS of ``f, g`` (deg f >= deg g > 0) in ``v``.

    Returns ``(R, S)``: the remainder sequence and the principal subresultant
    coefficients, following the Brown-Traub formulation.
    """
    n, m = f.degree(v), g.degree(v)
    R = [f, g]
    d = n - m
    b = Polynomial.constant((-1) ** (d + 1))
    h = prem(f, g, v) * b
    lc = g.coeff(v, m)
    c = lc ** d
    S = [ONE_POLY, c]
    c = -c
    while h:
        k = h.degree(v)
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = _exact(prem(f, g, v), b)
        lc = g.coeff(v, m)
        if d > 1:
            c = _exact((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        S.append(-c)
    return R, S


def resultant(a: Polynomial, b: Polynomial, v: Var) -> Polynomial:
    if not a or not b:
        return Polynomial()
    da, db = a.degree(v), b.degree(v)
    if da == 0 and db == 0:
        return ONE_POLY
    if da == 0:
        return a ** db
    if db == 0:
        return b ** da
    if da < db:
        r = resultant(b, a, v)
        return -r if (da * db) % 2 else r
    R, S = subresultant_prs(a, b, v)
    if R[-1].degree(v) > 0:
        return Polynomial()
    return S[-1]


def discriminant(a: Polynomial, v: Var) -> Polynomial:
    """``resultant(a, da/dv, v)``, without the usual sign/initial normalization."""
    return resultant(a, a.diff(v), v)


def content(p: Polynomial, v: Var) -> Polynomial:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``v``."""
    if not p:
        return Polynomial()
    coeffs = sorted(p.coefficients(v).values(), key=lambda c: len(c.terms))
    g = coeffs[0].primitive()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = gcd(g, c)
    if g.is_constant():
        return ONE_POLY
    return g


def primitive_part(p: Polynomial, v: Var) -> Polynomial:
    c = content(p, v)
    if c.is_constant():
        return p.primitive()
    return _exact(p, c).primitive()


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Multivariate gcd over the coefficient field, normalized by ``primitive``."""
    if not a.terms:
        return b.primitive()
    if not b.terms:
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return ONE_POLY
    if a == b:
        return a.primitive()
    va, vb = a.variables(), b.variables()
    v = max(va | vb)
    if v not in va:
        return gcd(a, content(b, v))
    if v not in vb:
        return gcd(content(a, v), b)
    ca, cb = content(a, v), content(b, v)
    pa = a if ca.is_constant() else _exact(a, ca)
    pb = b if cb.is_constant() else _exact(b, cb)
    c = gcd(ca, cb)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    R, _ = subresultant_prs(pa, pb, v)
    last = R[-1]
    if last.degree(v) == 0:
        g = ONE_POLY
    else:
        g = primitive_part(last, v)
    return (c * g).primitive()


def lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    g = gcd(a, b)
    return (_exact(a, g) * b).primitive()


# -----------------------------------------------------------------------------
# square-free decomposition
# -----------------------------------------------------------------------------


class Factorization:
    """``unit * prod(f**m for f, m in factors)``.

    ``certified`` is ``"certified-irreducible"`` when every factor is known
    irreducible over the coefficient field, ``"squarefree-only"`` otherwise.
    """

    __slots__ = ("unit", "factors", "certified")

    def __init__(self, unit, factors, certified: str):
        self.unit = unit
        self.factors = list(factors)
        self.certified = certified

    def expand(self) -> Polynomial:
        out = Polynomial.constant(self.unit)
        for f, m in self.factors:
            out = out * f ** m
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        fs = ", ".join(f"({f})^{m}" for f, m in self.factors)
        return f"Factorization({self.unit}; {fs}; {self.certified})"


def _yun(p: Polynomial, v: Var):
    """Yun's algorithm for a polynomial primitive in ``v``."""
    out = []
    dp = p.diff(v)
    g = gcd(p, dp)
    b = _exact(p, g)
    c = _exact(dp, g)
    d = c - b.diff(v)
    i = 1
    while b.degree(v) > 0:
        a = gcd(b, d)
        b2 = _exact(b, a)
        c = _exact(d, a)
        d = c - b2.diff(v)
        if a.degree(v) > 0:
            out.append((a.primitive(), i))
        b = b2
        i += 1
    return out


def squarefree(a: Polynomial, v: Optional[Var] = None) -> Factorization:
    """Square-free decomposition with respect to ``v`` (default: leader).

    The content in ``v`` is decomposed recursively with respect to its own
    leader, so every returned factor is square-free in its leading variable
    and the factors are pairwise coprime.
    """
    if not a:
        raise ValueError("square-free decomposition of zero")
    if v is None:
        v = a.leader()
    if v is None or a.degree(v) == 0:
        if a.is_constant():
            return Factorization(a.constant_value(), [], "squarefree-only")
        return squarefree(a, a.leader())
    c = content(a, v)
    p = a if c.is_constant() else _exact(a, c)
    factors = []
    if not c.is_constant():
        factors.extend(squarefree(c).factors)
    factors.extend(_yun(p.primitive(), v))
    prod = ONE_POLY
    for f, m in factors:
        prod = prod * f ** m
    unit = _exact(a, prod)
    if not unit.is_constant():
        raise ArithmeticError("square-free decomposition lost a factor")
    return Factorization(unit.constant_value(), factors, "squarefree-only")


def squarefree_part(a: Polynomial, v: Optional[Var] = None) -> Polynomial:
    fac = squarefree(a, v)
    out = ONE_POLY
    for f, _ in fac.factors:
        out = out * f
    return out.primitive()
