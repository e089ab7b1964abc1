"""Factorization over Q and Q(a), and simple-extension bookkeeping.

Irreducible factorization over Q is delegated to sympy's ``factor_list``
(Zassenhaus/Hensel based).  Over Q(a) we use Trager's norm method on top of
our own gcd, with the norm factored over Q.  A second extension on top of
Q(a) is collapsed to a single primitive element so that at most one simple
extension is ever live.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

import sympy
from gmpy2 import mpq

from .numberfield import AlgNum, DEFAULT_EXTENSION_CAP, ExtensionCapError, NumberField
from .poly import (
    Factorization,
    ONE_POLY,
    Polynomial,
    Var,
    divide_exact,
    gcd,
    resultant,
    squarefree,
)

DEFAULT_DEGREE_CAP = 20

# auxiliary variable standing for the field generator while computing norms;
# its stem sorts above every letter so it never collides with user names
_ALPHA = Var("~alpha", -1, 0)


class FactorizationCapError(ArithmeticError):
    """Raised when an input exceeds the configured factorization degree cap."""


# -- sympy bridge (rational coefficients only) ---------------------------------


def _symbols(vars_):
    return [sympy.Symbol(f"v{i}") for i in range(len(vars_))]


def to_sympy(p: Polynomial, vars_):
    gens = _symbols(vars_)
    index = {v: i for i, v in enumerate(vars_)}
    terms = {}
    for m, c in p.terms.items():
        exps = [0] * len(vars_)
        for v, e in m:
            exps[index[v]] = e
        terms[tuple(exps)] = sympy.Rational(int(c.numerator), int(c.denominator))
    return sympy.Poly.from_dict(terms, *gens, domain=sympy.QQ), gens


def from_sympy(sp, vars_) -> Polynomial:
    items = []
    for exps, c in sp.terms():
        c = sympy.Rational(c)
        mono = tuple((vars_[i], e) for i, e in enumerate(exps) if e)
        items.append((mono, mpq(int(c.p), int(c.q))))
    return Polynomial.from_terms(items)


def _factor_rational(p: Polynomial) -> Tuple[object, List[Tuple[Polynomial, int]]]:
    vars_ = sorted(p.variables(), reverse=True)
    sp, _ = to_sympy(p, vars_)
    coeff, facs = sp.factor_list()
    out = []
    unit = mpq(int(sympy.Rational(coeff).p), int(sympy.Rational(coeff).q))
    for f, m in facs:
        fp = from_sympy(f, vars_)
        prim = fp.primitive()
        unit *= (fp.lc() / prim.lc()) ** m
        out.append((prim, m))
    out.sort(key=lambda fm: (fm[0].leader() or Var("", -2, 0), fm[0].total_degree(), str(fm[0])))
    return unit, out


def factor(a: Polynomial, max_degree: int = DEFAULT_DEGREE_CAP) -> Factorization:
    """Factor ``a``.

    Rational coefficients with at most two variables: certified irreducible
    factors over Q.  Extension coefficients or three or more variables:
    square-free decomposition only.
    """
    if not a:
        raise ValueError("factorization of zero")
    if a.is_constant():
        return Factorization(a.constant_value(), [], "certified-irreducible")
    if a.total_degree() > max_degree:
        raise FactorizationCapError(
            f"factorization cap: total degree {a.total_degree()} exceeds {max_degree}"
        )
    if not a.is_rational() or len(a.variables()) > 2:
        return squarefree(a)
    unit, facs = _factor_rational(a)
    return Factorization(unit, facs, "certified-irreducible")


# -- norms and factorization over Q(a) ----------------------------------------


def lift_alpha(p: Polynomial) -> Polynomial:
    """Replace extension coefficients by polynomials in the auxiliary variable."""
    items = []
    for m, c in p.terms.items():
        if isinstance(c, AlgNum):
            for k, ck in enumerate(c.coeffs):
                if ck:
                    items.append((m + (((_ALPHA, k),) if k else ()), ck))
        else:
            items.append((m, c))
    return Polynomial.from_terms(items)


def _minpoly_poly(field: NumberField) -> Polynomial:
    return Polynomial.from_terms(
        (((_ALPHA, k),) if k else (), c) for k, c in enumerate(field.minpoly) if c
    )


def _shift(p: Polynomial, v: Var, s) -> Polynomial:
    """p(v - s*alpha), alpha being the auxiliary variable."""
    if s == 0:
        return p
    return p.subs({v: Polynomial.variable(v) - Polynomial.variable(_ALPHA).scale(mpq(s))})


def norm(p: Polynomial, field: NumberField) -> Polynomial:
    """Norm of ``p`` from Q(a)[...] down to Q[...]."""
    return resultant(_minpoly_poly(field), lift_alpha(p), _ALPHA)


def _to_field(p: Polynomial, field: NumberField) -> Polynomial:
    """Evaluate the auxiliary variable at the field generator."""
    return p.subs({_ALPHA: Polynomial.constant(field.gen)}) if _ALPHA in p.variables() else p


def _is_squarefree(p: Polynomial, v: Var) -> bool:
    return gcd(p, p.diff(v)).degree(v) <= 0


def factor_over(a: Polynomial, field: Optional[NumberField],
                max_degree: int = DEFAULT_DEGREE_CAP) -> List[Tuple[Polynomial, int]]:
    """Irreducible factors (with multiplicity) of ``a`` over Q or Q(a).

    Only factors of positive degree are returned; constants are dropped.
    Intended for univariate and bivariate inputs.
    """
    if a.is_constant():
        return []
    if field is None:
        if not a.is_rational():
            field = a.field()
        else:
            return _factor_rational(a)[1] if a.total_degree() <= max_degree else _cap(a, max_degree)
    if a.total_degree() > max_degree:
        _cap(a, max_degree)
    out = []
    for g, m in squarefree(a).factors:
        for h in _trager(g, field, max_degree):
            out.append((h, m))
    return out


def _cap(a, max_degree):
    raise FactorizationCapError(
        f"factorization cap: total degree {a.total_degree()} exceeds {max_degree}"
    )


def _trager(g: Polynomial, field: NumberField, max_degree: int) -> List[Polynomial]:
    v = g.leader()
    if g.degree(v) == 1:
        return [g.monic() if not g.is_rational() else g.primitive()]
    for s in (0, 1, -1, 2, -2, 3, -3, 4, -4, 5):
        shifted = _shift(lift_alpha(g), v, s)
        n = resultant(_minpoly_poly(field), shifted, _ALPHA)
        if n.degree(v) > 0 and _is_squarefree(n, v):
            break
    else:
        raise ArithmeticError("no square-free norm found")
    if n.total_degree() > max_degree * field.degree:
        raise FactorizationCapError("factorization cap: norm degree too large")
    _, nfacs = _factor_rational(n)
    if len(nfacs) == 1:
        return [_normalize(g)]
    back = Polynomial.variable(v) + Polynomial.constant(field.gen).scale(mpq(s))
    pieces = []
    rest = g
    for f, _ in nfacs:
        fb = f.subs({v: back})
        h = gcd(rest, fb)
        if h.degree(v) > 0:
            pieces.append(_normalize(h))
            q = divide_exact(rest, h)
            rest = q if q is not None else rest
    return pieces


def _normalize(p: Polynomial) -> Polynomial:
    return p.primitive()


# -- extension by a root of an irreducible polynomial --------------------------


class Extension:
    """Result of adjoining a root: the new field, an embedding of the old
    field's elements, and the adjoined root expressed in the new field."""

    __slots__ = ("field", "embed", "root")

    def __init__(self, field, embed, root):
        self.field = field
        self.embed = embed
        self.root = root


def _identity(c):
    return c


def univariate_coeffs(p: Polynomial, v: Var):
    d = p.degree(v)
    return [p.coeff(v, k).constant_value() for k in range(d + 1)]


def adjoin_root(g: Polynomial, v: Var, field: Optional[NumberField],
                cap: int = DEFAULT_EXTENSION_CAP, name: str = "a") -> Extension:
    """Adjoin a root of ``g`` (univariate in ``v``, irreducible over ``field``).

    Returns an Extension whose field is a single simple extension of Q.
    Degree-one ``g`` needs no extension.
    """
    d = g.degree(v)
    if d < 1:
        raise ValueError("cannot adjoin a root of a constant")
    if d == 1:
        c1, c0 = g.coeff(v, 1).constant_value(), g.coeff(v, 0).constant_value()
        return Extension(field, _identity, -c0 / c1)
    if field is None:
        coeffs = univariate_coeffs(g, v)
        new = NumberField([c / coeffs[-1] for c in coeffs], name)
        if new.degree > cap:
            raise ExtensionCapError(f"extension cap exceeded: degree {new.degree} > {cap}")
        return Extension(new, _identity, new.gen)
    total = d * field.degree
    if total > cap:
        raise ExtensionCapError(f"extension cap exceeded: degree {total} > {cap}")
    lifted = lift_alpha(g)
    mp = _minpoly_poly(field)
    for s in (1, -1, 2, -2, 3, -3, 4, -4, 5, -5):
        n = resultant(mp, _shift(lifted, v, s), _ALPHA)
        if _is_squarefree(n, v):
            break
    else:
        raise ArithmeticError("no primitive element found")
    coeffs = univariate_coeffs(n, v)
    new = NumberField([c / coeffs[-1] for c in coeffs], name)
    beta = Polynomial.constant(new.gen)
    # alpha is the common root in T of m(T) and g(beta - s*T, T) over the new field
    lhs = mp
    rhs = lifted.subs({v: beta - Polynomial.variable(_ALPHA).scale(mpq(s))})
    common = gcd(lhs, rhs)
    if common.degree(_ALPHA) != 1:
        raise ArithmeticError("primitive element construction failed")
    common = common.monic()
    alpha_img = -common.coeff(_ALPHA, 0).constant_value()
    root = new.gen - mpq(s) * alpha_img

    def embed(c, _alpha=alpha_img):
        if not isinstance(c, AlgNum):
            return c
        out = mpq(0)
        pw = mpq(1)
        for ck in c.coeffs:
            if ck:
                out = out + pw * ck
            pw = pw * _alpha
        return out

    return Extension(new, embed, root)


def roots_in_field(g: Polynomial, v: Var, field: Optional[NumberField]):
    """Roots of univariate ``g`` lying in ``field`` (with multiplicities)."""
    out = []
    for f, m in factor_over(g, field):
        if f.degree(v) == 1:
            c1, c0 = f.coeff(v, 1).constant_value(), f.coeff(v, 0).constant_value()
            out.append((-c0 / c1, m))
    return out
