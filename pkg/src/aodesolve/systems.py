"""Differential systems, simplicity checks, algebraic dimension, and the
I/II/III/IV shape classifier for dimension-one simple systems."""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .diffring import is_reduced, initial, prem
from .poly import ONE_POLY, Polynomial, Var, X, divide_exact, gcd


def strip_units(p: Polynomial) -> Polynomial:
    """Divide out the largest factor of ``p`` that depends on ``x`` only.

    Such factors are units over K(x).  The result is primitive.
    """
    if not p or p.is_unit():
        return p.primitive() if p else p
    if X in p.variables():
        groups: Dict[tuple, Dict] = {}
        for m, c in p.terms.items():
            jet = tuple((v, e) for v, e in m if not v.is_x)
            xs = tuple((v, e) for v, e in m if v.is_x)
            groups.setdefault(jet, {})[xs] = c
        coeffs = sorted((Polynomial(t) for t in groups.values()), key=lambda q: len(q.terms))
        g = coeffs[0].primitive()
        for c in coeffs[1:]:
            if g.is_constant():
                break
            g = gcd(g, c)
        if not g.is_constant():
            p = divide_exact(p, g)
    return p.primitive()


def sort_key(p: Polynomial):
    lv = p.jet_leader()
    return (lv if lv is not None else Var("", -2, 0), p.degree(lv) if lv else 0, str(p))


class InconsistentSystem(Exception):
    pass


class DiffSystem:
    """Equations ``F = 0`` and inequations ``U != 0`` over K(x).

    Members are normalized on construction: x-only factors are stripped,
    polynomials made primitive, duplicates removed, and members sorted by
    leader.  A zero inequation or a unit equation makes the system
    inconsistent (``inconsistent`` is set, members are kept for display).
    ``universe`` lists the indeterminates of the problem the system came
    from, used to report free variables.
    """

    __slots__ = ("equations", "inequations", "universe", "inconsistent", "_key")

    def __init__(self, equations: Iterable[Polynomial] = (),
                 inequations: Iterable[Polynomial] = (),
                 universe: Optional[Iterable[Var]] = None):
        inconsistent = False
        eqs = set()
        for f in equations:
            if not f:
                continue
            if f.is_unit():
                inconsistent = True
                continue
            eqs.add(strip_units(f))
        ineqs = set()
        for u in inequations:
            if not u:
                inconsistent = True
                continue
            if u.is_unit():
                continue
            ineqs.add(strip_units(u))
        self.equations: Tuple[Polynomial, ...] = tuple(sorted(eqs, key=sort_key))
        self.inequations: Tuple[Polynomial, ...] = tuple(sorted(ineqs, key=sort_key))
        present = {v.base() for p in self.equations + self.inequations for v in p.jet_variables()}
        if universe is None:
            universe = present
        else:
            universe = set(universe) | present
        self.universe: Tuple[Var, ...] = tuple(sorted(universe))
        self.inconsistent = inconsistent
        self._key = None

    # -- structure -------------------------------------------------------------

    def members(self) -> Tuple[Polynomial, ...]:
        return self.equations + self.inequations

    def jet_variables(self) -> set:
        out = set()
        for p in self.members():
            out |= p.jet_variables()
        return out

    def indeterminates(self) -> List[Var]:
        return sorted({v.base() for v in self.jet_variables()})

    def has_x(self) -> bool:
        return any(X in p.variables() for p in self.members())

    def ambient(self) -> Dict[Var, int]:
        """Per occurring indeterminate, the highest derivative order."""
        out: Dict[Var, int] = {}
        for v in self.jet_variables():
            b = v.base()
            out[b] = max(out.get(b, 0), v.order)
        return out

    def coordinates(self) -> List[Var]:
        return [b.shifted(k) if k else b
                for b, m in sorted(self.ambient().items()) for k in range(m + 1)]

    def equation_leaders(self) -> List[Var]:
        return [f.jet_leader() for f in self.equations]

    def inequation_leaders(self) -> List[Var]:
        return [u.jet_leader() for u in self.inequations]

    def free_variables(self) -> List[Var]:
        present = set(self.indeterminates())
        return [v for v in self.universe if v not in present]

    def with_members(self, equations=(), inequations=()) -> "DiffSystem":
        return DiffSystem(self.equations + tuple(equations),
                          self.inequations + tuple(inequations), self.universe)

    def max_order(self) -> int:
        return max((v.order for v in self.jet_variables()), default=0)

    # -- identity ----------------------------------------------------------------

    def key(self):
        if self._key is None:
            self._key = (tuple(map(str, self.equations)), tuple(map(str, self.inequations)))
        return self._key

    def __eq__(self, other):
        return isinstance(other, DiffSystem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def lines(self) -> List[str]:
        return [f"{f} = 0" for f in self.equations] + [f"{u} /= 0" for u in self.inequations]

    def __str__(self):
        return "{" + ", ".join(self.lines()) + "}"

    def __repr__(self):
        return f"DiffSystem({self})"


# -----------------------------------------------------------------------------
# simplicity checks
# -----------------------------------------------------------------------------


class Verdict:
    """Result of a simplicity check: ``ok`` plus the first violation found."""

    __slots__ = ("ok", "reason", "member")

    def __init__(self, ok: bool, reason: str = "", member: Optional[Polynomial] = None):
        self.ok = ok
        self.reason = reason
        self.member = member

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "Verdict(simple)"
        return f"Verdict({self.reason}: {self.member})"


def _below(system: DiffSystem, v: Var) -> DiffSystem:
    return DiffSystem([f for f in system.equations if f.jet_leader() < v],
                      [u for u in system.inequations if u.jet_leader() < v],
                      system.universe)


def is_algebraic_simple(system: DiffSystem) -> Verdict:
    """Check triangularity and that no initial or discriminant of a member
    vanishes anywhere on the solution set of the members below it."""
    from .thomas import algebraic_decompose
    from .poly import discriminant

    if system.inconsistent:
        return Verdict(False, "inconsistent member")
    members = sorted(system.members(), key=sort_key)
    leaders = [p.jet_leader() for p in members]
    for p, v in zip(members, leaders):
        if v is None:
            return Verdict(False, "constant member", p)
    if len(set(leaders)) != len(leaders):
        dup = next(p for p, v in zip(members, leaders) if leaders.count(v) > 1)
        return Verdict(False, "repeated leader", dup)
    for p, v in zip(members, leaders):
        below = _below(system, v)
        for name, guard in (("initial", initial(p)), ("discriminant", discriminant(p, v))):
            if guard.is_unit():
                continue
            if not guard:
                return Verdict(False, f"{name} vanishes identically", p)
            test = below.with_members(equations=[guard])
            if algebraic_decompose(test, prune=False).systems:
                return Verdict(False, f"{name} has a common zero with the lower part", p)
    return Verdict(True)


def is_differential_simple(system: DiffSystem, complete: bool = False) -> Verdict:
    verdict = is_algebraic_simple(system)
    if not verdict:
        return verdict
    eqs = list(system.equations)
    for i, f in enumerate(eqs):
        others = eqs[:i] + eqs[i + 1:]
        if not is_reduced(f, others, complete):
            return Verdict(False, "equation not reduced", f)
    for u in system.inequations:
        if not is_reduced(u, eqs, complete):
            return Verdict(False, "inequation not reduced", u)
    return Verdict(True)


# -----------------------------------------------------------------------------
# dimension and classification
# -----------------------------------------------------------------------------

INCONSISTENT = "inconsistent"


def own_dimension(system: DiffSystem) -> int:
    """Ambient coordinates minus equation leaders, for a simple system."""
    return len(system.coordinates()) - len(set(system.equation_leaders()))


def dimension(system: DiffSystem, **caps):
    """Algebraic dimension in the ambient space of ``system`` itself.

    Returns the string ``"inconsistent"`` when there are no solutions.
    """
    from .thomas import algebraic_decompose

    dec = algebraic_decompose(system, prune=False, **caps)
    if not dec.systems:
        return INCONSISTENT
    ncoords = len(system.coordinates())
    return max(ncoords - len(set(s.equation_leaders())) for s in dec.systems)


class Shape:
    """Classification of a simple system."""

    __slots__ = ("type", "t", "free", "parametric")

    def __init__(self, type_: str, t: Optional[Var] = None, free=(), parametric: Optional[Var] = None):
        self.type = type_
        self.t = t
        self.free = list(free)
        self.parametric = parametric

    def __repr__(self):
        return f"Shape({self.type}, t={self.t}, free={[str(v) for v in self.free]})"


def classify(system: DiffSystem) -> Shape:
    """Match the syntactic shapes of dimension-at-most-one simple systems.

    IV: only order-zero equations, one per present indeterminate, no
    inequations, and ``x`` occurs.  III: the same without ``x``.  I: one
    equation led by a first derivative ``y_t'``, all other equations of
    order zero with distinct leaders, at most one inequation led by
    ``y_t``.  II: no derivatives, exactly one present indeterminate ``y_t``
    without an equation, inequations only led by ``y_t``.
    """
    free = system.free_variables()
    eqs, ineqs = system.equations, system.inequations
    present = system.indeterminates()
    amb = system.ambient()
    eq_leaders = [f.jet_leader() for f in eqs]
    if len(set(eq_leaders)) != len(eq_leaders):
        return Shape("other", free=free)
    orders = sorted(v.order for v in eq_leaders)
    if all(o == 0 for o in orders) and all(m == 0 for m in amb.values()):
        led = {v for v in eq_leaders}
        missing = [b for b in present if b not in led]
        if not missing:
            if ineqs:
                return Shape("other", free=free)
            return Shape("IV" if system.has_x() else "III", free=free)
        if len(missing) == 1:
            t = missing[0]
            if all(u.jet_leader() == t for u in ineqs):
                return Shape("II", t=t, free=free, parametric=t)
        return Shape("other", free=free)
    firsts = [v for v in eq_leaders if v.order == 1]
    if len(firsts) == 1 and orders.count(0) == len(orders) - 1:
        t = firsts[0].base()
        if (all(m == 0 for b, m in amb.items() if b != t) and amb.get(t) == 1
                and t not in eq_leaders):
            led = {v.base() for v in eq_leaders}
            if set(present) == led and len(ineqs) <= 1 and all(u.jet_leader() == t for u in ineqs):
                if not system.has_x():
                    return Shape("I", t=t, free=free)
    return Shape("other", free=free)
