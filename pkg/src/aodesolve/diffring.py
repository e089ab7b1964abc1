"""Differential polynomial ring: derivation, leaders, and pseudo-reduction.

Differential polynomials are plain :class:`Polynomial` values whose
variables are jet variables (plus possibly ``x``).  The ranking is the
variable order of :class:`Var`: all derivatives of ``y1`` come before
``y2``, and within one indeterminate by derivative order.  ``x`` is a
coefficient-like variable and is never a leader.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .poly import ONE_POLY, Polynomial, Var


class IrreduciblePair(ValueError):
    """Raised by :func:`reduce_step` when F cannot be reduced modulo G."""


class FuelExhausted(RuntimeError):
    """A reduction or decomposition loop ran past its iteration budget."""


def leader(f: Polynomial) -> Optional[Var]:
    return f.jet_leader()


def initial(f: Polynomial) -> Polynomial:
    v = f.jet_leader()
    return f if v is None else f.coeff(v, f.degree(v))


def separant(f: Polynomial) -> Polynomial:
    v = f.jet_leader()
    return Polynomial() if v is None else f.diff(v)


def derive(f: Polynomial, times: int = 1) -> Polynomial:
    """Total derivative d/dx applied ``times`` times (x' = 1)."""
    for _ in range(times):
        out = Polynomial()
        for v in f.variables():
            d = f.diff(v)
            if not d:
                continue
            if v.is_x:
                out = out + d
            else:
                out = out + d * Polynomial.variable(v.shifted(1))
        f = out
    return f


def _same_indeterminate(a: Var, b: Var) -> bool:
    return a.stem == b.stem and a.index == b.index


def reducible(f: Polynomial, g: Polynomial, w: Optional[Var] = None) -> bool:
    """Whether the occurrence of ``w`` (default: the leader of f) is reducible by g."""
    if w is None:
        w = f.jet_leader()
    lg = g.jet_leader()
    if w is None or lg is None or not _same_indeterminate(w, lg):
        return False
    if w.order > lg.order:
        return f.degree(w) > 0
    if w.order == lg.order:
        return f.degree(w) >= g.degree(lg)
    return False


def _step(f: Polynomial, g: Polynomial, w: Var):
    """One reduction of the occurrence ``w`` in ``f`` by ``g``.

    Returns ``(R, multiplier, cofactor, shift)`` with
    ``R = multiplier*f - cofactor * g^(shift)``.
    """
    lg = g.jet_leader()
    d_f = f.degree(w)
    c_f = f.coeff(w, d_f)
    if w.order == lg.order:
        d_g = g.degree(lg)
        m = g.coeff(lg, d_g)
        cof = c_f * Polynomial.variable(w, d_f - d_g)
        return m * f - cof * g, m, cof, 0
    shift = w.order - lg.order
    gd = derive(g, shift)
    m = g.diff(lg)
    cof = c_f * Polynomial.variable(w, d_f - 1)
    return m * f - cof * gd, m, cof, shift


def reduce_step(f: Polynomial, g: Polynomial) -> Polynomial:
    """One differential pseudo-reduction of ``f`` modulo ``g``, exactly as
    ``init(G) F - init(F) v^(dF-dG) G`` or ``sep(G) F - init(F) v^(dF-1) G^(k-l)``."""
    if g.jet_leader() is None or f.jet_leader() is None or not reducible(f, g):
        raise IrreduciblePair("irreducible pair")
    return _step(f, g, f.jet_leader())[0]


class Remainder:
    """Pseudo-remainder with its certificate.

    ``multiplier * F - sum(cofactors[(i, k)] * derive(Gs[i], k)) == remainder``.
    """

    __slots__ = ("remainder", "multiplier", "cofactors", "steps")

    def __init__(self, remainder, multiplier, cofactors, steps):
        self.remainder = remainder
        self.multiplier = multiplier
        self.cofactors = cofactors
        self.steps = steps

    def check(self, f: Polynomial, gs: Sequence[Polynomial]) -> bool:
        total = self.multiplier * f
        for (i, k), c in self.cofactors.items():
            total = total - c * derive(gs[i], k)
        return total == self.remainder


def _find(f: Polynomial, gs: Sequence[Polynomial], complete: bool, differential: bool):
    """Highest-ranked reducible occurrence and the reducer to use."""
    if complete:
        candidates = sorted(f.jet_variables(), reverse=True)
    else:
        lv = f.jet_leader()
        candidates = [lv] if lv is not None else []
    for w in candidates:
        best = None
        for i, g in enumerate(gs):
            lg = g.jet_leader()
            if lg is None or not _same_indeterminate(w, lg):
                continue
            if not differential and lg != w:
                continue
            if reducible(f, g, w) and (best is None or lg < gs[best].jet_leader()):
                best = i
        if best is not None:
            return w, best
    return None


def prem(f: Polynomial, gs: Sequence[Polynomial], complete: bool = False,
         differential: bool = True, track: bool = False, fuel: int = 100000):
    """Pseudo-remainder of ``f`` modulo ``gs``.

    ``complete`` also reduces non-leading occurrences (the recursive
    coefficients).  ``differential=False`` restricts to algebraic reduction
    (no proper derivatives of the reducers).  With ``track`` a
    :class:`Remainder` certificate is returned instead of the polynomial.
    When the multiplier of a step is a scalar it is divided out, so scalar
    initials and separants never inflate the remainder.
    """
    gs = [g for g in gs if g.jet_leader() is not None]
    mult = ONE_POLY
    cofs: Dict[Tuple[int, int], Polynomial] = {}
    steps = 0
    r = f
    while r:
        hit = _find(r, gs, complete, differential)
        if hit is None:
            break
        steps += 1
        if steps > fuel:
            raise FuelExhausted("pseudo-reduction fuel exhausted")
        w, i = hit
        r, m, cof, shift = _step(r, gs[i], w)
        if m.is_constant():
            inv = 1 / m.constant_value()
            r = r.scale(inv)
            cof = cof.scale(inv)
            m = ONE_POLY
        if track:
            if m != ONE_POLY:
                mult = mult * m
                cofs = {k: c * m for k, c in cofs.items()}
            key = (i, shift)
            cofs[key] = cofs.get(key, Polynomial()) + cof
    if track:
        return Remainder(r, mult, cofs, steps)
    return r


def is_reduced(f: Polynomial, gs: Sequence[Polynomial], complete: bool = False) -> bool:
    gs = [g for g in gs if g.jet_leader() is not None]
    return _find(f, gs, complete, True) is None
