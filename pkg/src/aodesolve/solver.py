"""Algebraic solutions of systems of autonomous AODEs of algebraic dimension one.

``simple_system_solve`` decomposes the input, keeps the algebraic subsystems
(parametric or constant), and for every subsystem with one first-order
equation G_t(y_t, y_t') = 0 looks for a minimal polynomial Q_t(x, y_t) of a
non-constant algebraic solution.  Adding Q_t = 0 and decomposing again
yields triangular algebraic systems with x-dependent coefficients whose
solutions, after any shift x -> x + c, solve the input.

The remaining entry points compute minimal polynomial systems, truncated
Puiseux solution tuples for verification, the existence verdict, the
inversion y -> 1/y of selected components, and shifted systems.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .algsolve import algebraic_solve, constant_solutions, regular_datum
from .diffring import derive
from .factor import DEFAULT_DEGREE_CAP, adjoin_root, factor, factor_over, norm
from .numberfield import DEFAULT_EXTENSION_CAP, AlgNum, to_q
from .poly import Polynomial, Var, X, resultant, squarefree_part
from .puiseux import (
    PuiseuxSeries,
    hensel_root,
    newton_expand,
    ode_series_solution,
    substitute,
    zero_series,
)
from .systems import INCONSISTENT, DiffSystem, Shape, classify, dimension, strip_units
from .thomas import DEFAULT_FUEL, Decomposition, algebraic_decompose, decompose_with_constraint, differential_decompose


class DimensionError(ValueError):
    """The input does not have the algebraic dimension the operation requires."""


class OrderError(ArithmeticError):
    """Branches could not be told apart within the series order cap."""


# -----------------------------------------------------------------------------
# result types
# -----------------------------------------------------------------------------


class MinPolySystem:
    """Per-component minimal polynomials Q_s(x, y_s) of one class of solutions."""

    __slots__ = ("polys", "bound", "count")

    def __init__(self, polys: Sequence[Tuple[Var, Polynomial]], bound: Optional[int] = None, count: int = 1):
        self.polys = list(polys)
        self.bound = bound
        self.count = count

    def degrees(self) -> List[int]:
        return [q.degree(v) for v, q in self.polys]

    def within_bound(self) -> bool:
        return self.bound is None or all(d <= self.bound for d in self.degrees())

    def key(self):
        return tuple((str(v), str(q)) for v, q in self.polys)

    def __eq__(self, other):
        return isinstance(other, MinPolySystem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return "(" + ", ".join(str(q) for _, q in self.polys) + ")"

    def __repr__(self):
        return f"MinPolySystem{self}"


class SolvedSystem:
    """One output system of the solver.

    ``shift_family``: the solutions of the system with x replaced by x + c
    are solutions for every constant c.  ``source`` is the first-order
    subsystem the system was derived from, ``constraint`` the polynomial
    added to it.
    """

    __slots__ = ("system", "shape", "shift_family", "origin", "source", "constraint", "minpoly")

    def __init__(self, system: DiffSystem, shape: Shape, shift_family: bool, origin: str,
                 source: Optional[DiffSystem] = None, constraint: Optional[Polynomial] = None):
        self.system = system
        self.shape = shape
        self.shift_family = shift_family
        self.origin = origin
        self.source = source
        self.constraint = constraint
        self.minpoly: List[MinPolySystem] = []

    def __repr__(self):
        return f"SolvedSystem({self.shape.type}, {self.system})"


class SolveOutput:
    __slots__ = ("systems", "decomposition", "diagnostics")

    def __init__(self, systems: List[SolvedSystem], decomposition: Decomposition, diagnostics: List[str]):
        self.systems = systems
        self.decomposition = decomposition
        self.diagnostics = diagnostics

    def of_type(self, *types) -> List[SolvedSystem]:
        return [s for s in self.systems if s.shape.type in types]


class ExistenceVerdict:
    """``no-solution``, ``only-constant`` or ``nonconstant-exists`` with a witness."""

    __slots__ = ("verdict", "witness", "reason", "decomposition")

    def __init__(self, verdict: str, witness: Optional[DiffSystem], reason: str, decomposition=None):
        self.verdict = verdict
        self.witness = witness
        self.reason = reason
        self.decomposition = decomposition

    def __str__(self):
        return self.verdict

    def __repr__(self):
        return f"ExistenceVerdict({self.verdict}: {self.reason})"


_TYPE_ORDER = {"I": 0, "II": 1, "III": 2, "IV": 3, "other": 4}


# -----------------------------------------------------------------------------
# helpers
# -----------------------------------------------------------------------------


def _constant_points(eqs: Sequence[Polynomial], cap: int, max_degree: int):
    """Roots of a triangular set without x, one per conjugacy class:
    ``(field, {var: value}, count)``."""
    points = [(None, {}, 1)]
    for G in sorted(eqs, key=lambda f: f.jet_leader()):
        v = G.jet_leader()
        new = []
        for K, vals, cnt in points:
            g = G.subs({w: Polynomial.constant(c) for w, c in vals.items()}) if vals else G
            if g.jet_variables() - {v}:
                raise ValueError("expected a triangular set of algebraic equations")
            for f, _ in factor_over(g, K, max_degree):
                ext = adjoin_root(f, v, K, cap)
                vals2 = {w: ext.embed(c) for w, c in vals.items()}
                vals2[v] = ext.root
                new.append((ext.field, vals2, cnt * f.degree(v)))
        points = new
    return points


def _rational(p: Polynomial) -> Polynomial:
    """``p`` itself if rational, else the square-free part of its norm."""
    if p.is_rational():
        return p.primitive()
    return strip_units(squarefree_part(norm(p, p.field())))


def degree_bound(source: DiffSystem, t: Var) -> int:
    """(deg_{y_t} G_t + deg_{y_t'} G_t) times the product of deg_{y_s} G_s, s != t."""
    bound = 1
    for g in source.equations:
        lv = g.jet_leader()
        if lv == t.shifted(1):
            bound *= g.degree(t) + g.degree(lv)
        else:
            bound *= g.degree(lv)
    return bound


def _caps(kw):
    return {k: kw[k] for k in ("fuel", "log") if k in kw}


# -----------------------------------------------------------------------------
# Algorithm 1
# -----------------------------------------------------------------------------


def _solve_first_order(S: DiffSystem, shape: Shape, diag: List[str], cap: int, max_degree: int,
                       dec_kw) -> List[SolvedSystem]:
    t = shape.t
    d1 = t.shifted(1)
    lower = [f for f in S.equations if f.jet_leader().base() < t]
    Gt = next(f for f in S.equations if f.jet_leader() == d1)
    constraints: Dict[Polynomial, str] = {}
    constant_family = False
    for K, eta, _ in _constant_points(lower, cap, max_degree):
        F = Gt.subs({w: Polynomial.constant(c) for w, c in eta.items()}) if eta else Gt
        for f, _ in factor_over(F, K, max_degree):
            if f.degree(d1) == 0:
                continue
            if not f.subs({d1: Polynomial()}):
                # f is y_t' itself: every constant solves it
                continue
            Q = algebraic_solve(f, t, cap, max_degree)
            diag.append(f"algebraic-solve\t{f}\t{Q if Q is not None else 'none'}")
            if Q is not None:
                constraints.setdefault(_rational(Q.poly), "nonconstant")
        C = constant_solutions(F, t)
        if not C:
            constant_family = True
        elif not C.is_constant():
            for g, _ in factor_over(C, K, max_degree):
                constraints.setdefault(_rational(g), "constant")
    out = []
    for P in sorted(constraints, key=str):
        kind = constraints[P]
        dec = decompose_with_constraint(S, P, **dec_kw)
        diag.append(f"constraint\t{P}\t{len(dec.systems)} system(s)")
        for sys_, sh in zip(dec.systems, dec.shapes):
            out.append(SolvedSystem(sys_, sh, kind == "nonconstant", f"{kind} solutions", S, P))
    if constant_family:
        eqs = [g.subs({d1: Polynomial()}) for g in S.equations if g is not Gt]
        ineqs = [u.subs({d1: Polynomial()}) for u in S.inequations]
        dec = algebraic_decompose(DiffSystem(eqs, ineqs, S.universe), **dec_kw)
        for sys_ in dec.systems:
            sh = classify(sys_)
            out.append(SolvedSystem(sys_, Shape("II", t=t, free=sh.free, parametric=t), False,
                                    "constant family", S, None))
    return out


def simple_system_solve(S: DiffSystem, fuel: int = DEFAULT_FUEL, max_degree: int = DEFAULT_DEGREE_CAP,
                        cap: int = DEFAULT_EXTENSION_CAP, minpoly: bool = True, log=None) -> SolveOutput:
    """Simple algebraic systems (types II, III, IV) covering all algebraic solutions.

    Type-IV systems carry ``shift_family=True``: x may be replaced by x + c.
    """
    dim = dimension(S, fuel=fuel)
    if dim != 1:
        raise DimensionError(f"expected algebraic dimension one, got {dim}")
    diag: List[str] = []
    dec_kw = {"fuel": fuel}
    if log is not None:
        dec_kw["log"] = log
    dec = differential_decompose(S, **dec_kw)
    out: List[SolvedSystem] = []
    for sys_, shape in zip(dec.systems, dec.shapes):
        if shape.type in ("II", "III"):
            out.append(SolvedSystem(sys_, shape, False, "decomposition"))
        elif shape.type == "I":
            out.extend(_solve_first_order(sys_, shape, diag, cap, max_degree, dec_kw))
        else:
            raise DimensionError(f"subsystem of unexpected shape: {sys_}")
    seen = set()
    unique = []
    for s in sorted(out, key=lambda s: (_TYPE_ORDER[s.shape.type], s.system.lines(), s.origin)):
        if s.system.key() in seen:
            continue
        seen.add(s.system.key())
        unique.append(s)
    if minpoly:
        for s in unique:
            if s.shape.type == "IV":
                bound = degree_bound(s.source, _t_of(s.source)) if s.source is not None else None
                s.minpoly = minimal_polynomial_systems(s.system, bound=bound, cap=cap, max_degree=max_degree)
    return SolveOutput(unique, dec, diag)


def _t_of(source: DiffSystem) -> Var:
    for g in source.equations:
        if g.jet_leader().order == 1:
            return g.jet_leader().base()
    raise ValueError("no first-order equation")


# -----------------------------------------------------------------------------
# triangular expansion and minimal polynomial systems
# -----------------------------------------------------------------------------


def eliminate(H: DiffSystem, v: Var) -> Polynomial:
    """Polynomial in x and ``v`` vanishing on every solution of the
    triangular set H, obtained by iterated resultants."""
    eqs = sorted(H.equations, key=lambda f: f.jet_leader())
    target = next(f for f in eqs if f.jet_leader() == v)
    R = target
    for g in reversed([f for f in eqs if f.jet_leader() < v]):
        w = g.jet_leader()
        if w in R.variables():
            R = resultant(R, g, w)
    return strip_units(squarefree_part(R, v))


class SeriesTuple:
    """Truncated Puiseux values of the components of one solution class."""

    __slots__ = ("values", "count", "field", "point")

    def __init__(self, values: Dict[Var, PuiseuxSeries], count: int, field, point: str):
        self.values = values
        self.count = count
        self.field = field
        self.point = point

    def completed(self, variables: Iterable[Var]) -> Dict[Var, PuiseuxSeries]:
        """Values with every missing (free) component set to zero."""
        out = dict(self.values)
        for v in variables:
            out.setdefault(v, zero_series(None, self.point))
        return out

    def __repr__(self):
        return "SeriesTuple(" + ", ".join(f"{v}={s}" for v, s in sorted(self.values.items())) + ")"


def _expand_triangular(H: DiffSystem, order, point: str, cap: int, max_degree: int):
    eqs = sorted(H.equations, key=lambda f: f.jet_leader())
    partial = [({}, 1, None)]
    for Hs in eqs:
        v = Hs.jet_leader()
        R = eliminate(H, v)
        expected = Hs.degree(v)
        new = []
        for vals, cnt, K in partial:
            hits = []
            for b in newton_expand(R, v, point, order, field=K, cap=cap, max_degree=max_degree):
                vals2 = {w: s.map_coeffs(b.embed) for w, s in vals.items()}
                vals2[v] = b.series
                if substitute(Hs, vals2, point).is_zero():
                    hits.append((vals2, cnt * b.count, b.field, b.count))
            if sum(h[3] for h in hits) != expected:
                return None
            new.extend(h[:3] for h in hits)
        partial = new
    return [SeriesTuple(vals, cnt, K, point) for vals, cnt, K in partial]


def triangular_branches(H: DiffSystem, N, point: str = "0", cap: int = DEFAULT_EXTENSION_CAP,
                        max_degree: int = DEFAULT_DEGREE_CAP, max_doublings: int = 3) -> List[SeriesTuple]:
    """Solution classes of an algebraic triangular system as Puiseux tuples.

    Candidate roots come from the eliminants; a candidate is kept when the
    system's own equation vanishes on it.  The order is doubled while the
    number of kept roots exceeds the degree.
    """
    order = N
    for _ in range(max_doublings + 1):
        res = _expand_triangular(H, order, point, cap, max_degree)
        if res is not None:
            return res
        order = 2 * order
    raise OrderError("raise order: branches not separated within the order cap")


def minimal_polynomial_systems(H: DiffSystem, bound: Optional[int] = None, N: int = 12,
                               cap: int = DEFAULT_EXTENSION_CAP, max_degree: int = DEFAULT_DEGREE_CAP,
                               max_doublings: int = 3) -> List[MinPolySystem]:
    """Distinct minimal polynomial systems over the solution classes of H."""
    eqs = sorted(H.equations, key=lambda f: f.jet_leader())
    cands = {}
    for Hs in eqs:
        v = Hs.jet_leader()
        cands[v] = [g for g, _ in factor(eliminate(H, v), max_degree).factors if g.degree(v) > 0]
    order = N
    for _ in range(max_doublings + 1):
        tuples = triangular_branches(H, order, "0", cap, max_degree)
        found: Dict[MinPolySystem, int] = {}
        ambiguous = False
        for tup in tuples:
            polys = []
            for Hs in eqs:
                v = Hs.jet_leader()
                hits = [g for g in cands[v] if substitute(g, {v: tup.values[v]}).is_zero()]
                if len(hits) != 1:
                    ambiguous = True
                    break
                polys.append((v, hits[0]))
            if ambiguous:
                break
            mp = MinPolySystem(polys, bound)
            found[mp] = found.get(mp, 0) + tup.count
        if not ambiguous:
            out = []
            for mp, cnt in sorted(found.items(), key=lambda kv: kv[0].key()):
                mp.count = cnt
                if not mp.within_bound():
                    raise ArithmeticError(f"degree bound {bound} violated by {mp}")
                out.append(mp)
            return out
        order *= 2
    raise OrderError("raise order: minimal polynomial branch selection ambiguous")


def minimal_polynomial_system(H: DiffSystem, bound: Optional[int] = None, **kw) -> MinPolySystem:
    systems = minimal_polynomial_systems(H, bound=bound, **kw)
    if not systems:
        raise ValueError("system has no solutions")
    return systems[0]


# -----------------------------------------------------------------------------
# truncated solutions of simple systems
# -----------------------------------------------------------------------------


def series_solutions(S: DiffSystem, N, point: str = "0", shape: Optional[Shape] = None,
                     cap: int = DEFAULT_EXTENSION_CAP, max_degree: int = DEFAULT_DEGREE_CAP,
                     parametric=None) -> List[SeriesTuple]:
    """Truncated Puiseux solution tuples of a simple system of type I-IV.

    Type II: the parametric variable is set to x, or to the constant
    ``parametric`` if given (rejected when an inequation vanishes there).  Type I: constants first,
    then the power series through the first regular initial datum, then
    the later components by Hensel lifting at x = 0.  Only algebraic
    systems can be expanded at infinity.
    """
    shape = shape or classify(S)
    if shape.type in ("III", "IV"):
        return triangular_branches(S, N, point, cap, max_degree)
    if shape.type == "II":
        t = shape.t
        if parametric is None:
            tval, tser = Polynomial.variable(X), PuiseuxSeries.variable(point)
        else:
            c = to_q(parametric)
            tval, tser = Polynomial.constant(c), PuiseuxSeries.constant(c, point)
            if any(not u.subs({t: tval}) for u in S.inequations):
                raise ValueError(f"parametric value {c} is excluded by an inequation")
        H = DiffSystem([f.subs({t: tval}) for f in S.equations], [], S.universe)
        if H.inconsistent:
            return []
        out = []
        for tup in triangular_branches(H, N, point, cap, max_degree):
            tup.values[t] = tser
            out.append(tup)
        return out
    if shape.type != "I":
        raise ValueError("system is not of type I-IV")
    if point != "0":
        raise ValueError("first-order subsystems are expanded at 0 only")
    t = shape.t
    d1 = t.shifted(1)
    lower = [f for f in S.equations if f.jet_leader().base() < t]
    upper = sorted((f for f in S.equations if f.jet_leader().base() > t), key=lambda f: f.jet_leader())
    Gt = next(f for f in S.equations if f.jet_leader() == d1)
    out = []
    for K, eta, cnt in _constant_points(lower, cap, max_degree):
        consts = {w: Polynomial.constant(c) for w, c in eta.items()}
        F = Gt.subs(consts) if consts else Gt
        avoid = None
        for u in S.inequations:
            uu = u.subs(consts) if consts else u
            avoid = uu if avoid is None else avoid * uu
        y0, p0, ext = regular_datum(F, t, cap, max_degree, avoid)
        FK = F.map_coeffs(ext.embed)
        vals = {w: PuiseuxSeries.constant(ext.embed(c)) for w, c in eta.items()}
        vals[t] = ode_series_solution(FK, y0, p0, N + 2, t)
        partial = [(vals, cnt, ext.field)]
        for Gs in upper:
            v = Gs.jet_leader()
            new = []
            for vals_, c_, L in partial:
                at0 = {w: Polynomial.constant(s.terms.get(0, mpq(0))) for w, s in vals_.items()}
                for w in list(at0):
                    at0[w.shifted(1)] = Polynomial.constant(vals_[w].derivative().terms.get(0, mpq(0)))
                g0 = Gs.subs(at0)
                for f, _ in factor_over(g0, L, max_degree):
                    e2 = adjoin_root(f, v, L, cap)
                    v2 = {w: s.map_coeffs(e2.embed) for w, s in vals_.items()}
                    v2[v] = hensel_root(Gs.map_coeffs(e2.embed), v, v2, e2.root, N, point)
                    new.append((v2, c_ * f.degree(v), e2.field))
            partial = new
        out.extend(SeriesTuple(v_, c_, L, point) for v_, c_, L in partial)
    return out


# -----------------------------------------------------------------------------
# existence decision
# -----------------------------------------------------------------------------


def _only_constant_first_order(S: DiffSystem, shape: Shape, cap: int, max_degree: int) -> bool:
    """Whether G_t reduces to a multiple of y_t' at every constant point."""
    t = shape.t
    d1 = t.shifted(1)
    lower = [f for f in S.equations if f.jet_leader().base() < t]
    Gt = next(f for f in S.equations if f.jet_leader() == d1)
    for K, eta, _ in _constant_points(lower, cap, max_degree):
        F = Gt.subs({w: Polynomial.constant(c) for w, c in eta.items()}) if eta else Gt
        for f, _ in factor_over(F, K, max_degree):
            if f.degree(d1) > 0 and f.subs({d1: Polynomial()}):
                return False
    return True


def decide_existence(S: DiffSystem, fuel: int = DEFAULT_FUEL, cap: int = DEFAULT_EXTENSION_CAP,
                     max_degree: int = DEFAULT_DEGREE_CAP) -> ExistenceVerdict:
    """Whether formal Puiseux series solutions exist, and non-constant ones."""
    dim = dimension(S, fuel=fuel)
    if dim == INCONSISTENT:
        return ExistenceVerdict("no-solution", None, "algebraically inconsistent")
    if dim > 1:
        raise DimensionError(f"expected algebraic dimension at most one, got {dim}")
    dec = differential_decompose(S, fuel=fuel)
    if not dec.systems:
        return ExistenceVerdict("no-solution", None, "every branch of the decomposition is inconsistent", dec)
    found = {}
    for sys_, shape in zip(dec.systems, dec.shapes):
        if shape.type == "I" and "I" not in found:
            if not _only_constant_first_order(sys_, shape, cap, max_degree):
                found["I"] = (sys_, f"first-order equation in {shape.t} has non-constant solutions")
        if shape.type == "II" and "II" not in found:
            found["II"] = (sys_, f"parametric variable {shape.t}")
        if shape.free and "free" not in found:
            found["free"] = (sys_, "free variable " + ", ".join(map(str, shape.free)))
        if shape.type == "other":
            raise DimensionError(f"subsystem of unexpected shape: {sys_}")
    for key in ("I", "II", "free"):
        if key in found:
            return ExistenceVerdict("nonconstant-exists", found[key][0], found[key][1], dec)
    return ExistenceVerdict("only-constant", None, "all subsystems have constant solutions only", dec)


# -----------------------------------------------------------------------------
# inversion and shifts
# -----------------------------------------------------------------------------


def _divide_monomial(f: Polynomial, vars_: Iterable[Var]) -> Polynomial:
    for v in vars_:
        k = min((dict(m).get(v, 0) for m in f.terms), default=0)
        if k:
            f = Polynomial({tuple((w, e - k if w == v else e) for w, e in m if not (w == v and e == k)): c
                            for m, c in f.terms.items()})
    return f


def inversion_numerators(w: Var, order: int) -> List[Polynomial]:
    """P_j with (1/w)^(j) = P_j / w^(j+1): P_0 = 1, P_{j+1} = P_j' w - (j+1) w' P_j."""
    out = [Polynomial.constant(mpq(1))]
    wp = Polynomial.variable(w)
    w1 = Polynomial.variable(w.shifted(1))
    for j in range(order):
        p = out[-1]
        out.append(derive(p) * wp - w1 * p.scale(mpq(j + 1)))
    return out


def _invert_member(f: Polynomial, inv: List[Var]) -> Polynomial:
    f = _divide_monomial(f, inv)
    if not f:
        return f
    maxord = {v: 0 for v in inv}
    for w in f.jet_variables():
        if w.base() in maxord:
            maxord[w.base()] = max(maxord[w.base()], w.order)
    nums = {v: inversion_numerators(v, maxord[v]) for v in inv}
    weight = {v: 0 for v in inv}
    for m in f.terms:
        acc = {v: 0 for v in inv}
        for w, e in m:
            if w.base() in acc:
                acc[w.base()] += (w.order + 1) * e
        for v in inv:
            weight[v] = max(weight[v], acc[v])
    out = Polynomial()
    for m, c in f.terms.items():
        term = Polynomial.constant(c)
        acc = {v: 0 for v in inv}
        for w, e in m:
            b = w.base()
            if b in acc:
                term = term * nums[b][w.order] ** e
                acc[b] += (w.order + 1) * e
            else:
                term = term * Polynomial.variable(w, e)
        for v in inv:
            if weight[v] - acc[v]:
                term = term * Polynomial.variable(v, weight[v] - acc[v])
        out = out + term
    return _divide_monomial(out, inv)


def _resolve_components(S: DiffSystem, components) -> List[Var]:
    order = list(S.universe)
    out = []
    for c in components:
        if isinstance(c, Var):
            out.append(c.base())
        elif isinstance(c, int):
            if not 1 <= c <= len(order):
                raise ValueError(f"component index {c} out of range")
            out.append(order[c - 1])
        else:
            match = [v for v in order if v.name == str(c)]
            if not match:
                raise ValueError(f"unknown component {c!r}")
            out.append(match[0])
    return sorted(set(out))


def invert_components(S: DiffSystem, components) -> DiffSystem:
    """Replace the listed components y_i by 1/y_i and clear denominators.

    Monomial factors in the inverted components are divided out before and
    after the substitution.  The new unknowns keep the old names.
    """
    inv = _resolve_components(S, components)
    if not inv:
        return S
    return DiffSystem([_invert_member(f, inv) for f in S.equations],
                      [_invert_member(u, inv) for u in S.inequations], S.universe)


def shifted_system(H: DiffSystem, c) -> DiffSystem:
    """Replace x by x + c in every member; c must be a concrete coefficient."""
    if isinstance(c, (Polynomial, str)):
        raise TypeError("shift must be a concrete coefficient")
    c = c if isinstance(c, AlgNum) else to_q(c)
    if not c:
        return H
    image = {X: Polynomial.variable(X) + Polynomial.constant(c)}
    return DiffSystem([f.subs(image) for f in H.equations], [u.subs(image) for u in H.inequations], H.universe)
