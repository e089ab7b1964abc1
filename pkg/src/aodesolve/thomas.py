"""Algebraic and differential Thomas decomposition.

The algebraic engine is a work queue of split tasks.  Each task carries a
triangular set ``T`` (one equation per leader), a set ``U`` of inequations
(one per leader), the queue of pending members, and the polynomials already
asserted nonzero on the branch.  Processing a member either finishes
without case distinction or raises :class:`NeedSplit`; the task is then
forked into a "c != 0" and a "c = 0" task, and the member is processed
again in both.  All Euclidean steps go through :func:`_split_gcd`, which
asks for a split whenever the initial of a remainder is not yet known to be
nonzero.  Inconsistent branches are dropped and logged.

The differential phase reduces every equation modulo the proper
derivatives of the others (and inequations modulo the equations) and
reruns the algebraic engine whenever something changed.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .diffring import FuelExhausted, prem
from .factor import FactorizationCapError, factor
from .poly import (
    Polynomial,
    Var,
    content,
    divide_exact,
    pseudo_divide,
    resultant,
    squarefree,
)
from .systems import DiffSystem, Shape, classify, sort_key, strip_units

DEFAULT_FUEL = 10000
# total degree beyond which a member is treated as coefficient blow-up
DEFAULT_DEGREE_LIMIT = 32

EQ, INEQ = 0, 1
_NONZERO, _ZERO, _UNKNOWN = "nonzero", "zero", "unknown"

STRATEGIES = ("low-degree-first", "high-degree-first")


class NeedSplit(Exception):
    def __init__(self, poly: Polynomial, why: str):
        super().__init__(why)
        self.poly = poly
        self.why = why


class Inconsistent(Exception):
    pass


class Task:
    __slots__ = ("T", "U", "queue", "nonzero", "path")

    def __init__(self, T, U, queue, nonzero, path):
        self.T: Dict[Var, Polynomial] = T
        self.U: Dict[Var, Polynomial] = U
        self.queue: Tuple[Tuple[int, Polynomial], ...] = queue
        self.nonzero: frozenset = nonzero
        self.path: str = path


class Decomposition:
    """Simple systems partitioning the solutions of ``source``."""

    def __init__(self, systems: List[DiffSystem], source: DiffSystem, mode: str,
                 log: List[str]):
        self.shapes: List[Shape] = [classify(s) for s in systems]
        order = sorted(range(len(systems)), key=lambda i: _canonical_key(systems[i], self.shapes[i]))
        self.systems = [systems[i] for i in order]
        self.shapes = [self.shapes[i] for i in order]
        self.source = source
        self.mode = mode
        self.log = log

    def __iter__(self):
        return iter(self.systems)

    def __len__(self):
        return len(self.systems)

    def __repr__(self):
        return f"Decomposition({self.mode}, {[str(s) for s in self.systems]})"


_TYPE_ORDER = {"I": 0, "II": 1, "III": 2, "IV": 3, "other": 4}


def _canonical_key(system: DiffSystem, shape: Shape):
    leaders = tuple(sort_key(p)[0] for p in system.equations)
    return (_TYPE_ORDER[shape.type], leaders, system.lines())


class Engine:
    def __init__(self, strategy: str = "low-degree-first", fuel: int = DEFAULT_FUEL,
                 log: Optional[List[str]] = None, degree_limit: int = DEFAULT_DEGREE_LIMIT):
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self.fuel = fuel
        self.used = 0
        self.log = log if log is not None else []
        self.degree_limit = degree_limit

    def _tick(self):
        self.used += 1
        if self.used > self.fuel:
            raise FuelExhausted(f"decomposition fuel exhausted after {self.fuel} iterations")

    def _note(self, path: str, action: str, poly) -> None:
        self.log.append(f"{path}\t{action}\t{poly}")

    # -- helpers ---------------------------------------------------------------

    def _reduce(self, p: Polynomial, T: Dict[Var, Polynomial], below: Optional[Var] = None):
        gs = [g for v, g in T.items() if below is None or v < below]
        if gs and p:
            p = prem(p, gs, complete=True, differential=False)
        return strip_units(p) if p else p

    def _status(self, c: Polynomial, task: Task):
        """Whether ``c`` vanishes on the branch: (status, polynomial to split on)."""
        r = self._reduce(c, task.T)
        if not r:
            return _ZERO, None
        if r.is_unit():
            return _NONZERO, None
        if r in task.nonzero:
            return _NONZERO, None
        known = list(task.U.values()) + list(task.nonzero)
        for f, _ in squarefree(r).factors:
            f = strip_units(f)
            if f.is_unit() or f in task.nonzero:
                continue
            if any(divide_exact(u, f) is not None for u in known if u.jet_leader() == f.jet_leader()):
                continue
            w = f.jet_leader()
            if w in task.T:
                res = self._reduce(resultant(task.T[w], f, w), task.T)
                if res and res.is_unit():
                    continue
            return _UNKNOWN, f
        return _NONZERO, None

    def _require_nonzero(self, c: Polynomial, task: Task, why: str) -> bool:
        """True if ``c`` is nonzero on the branch, False if it vanishes;
        raises NeedSplit when undecided."""
        st, f = self._status(c, task)
        if st == _UNKNOWN:
            raise NeedSplit(f, why)
        return st == _NONZERO

    def _split_gcd(self, a: Polynomial, b: Polynomial, v: Var, task: Task) -> Polynomial:
        """gcd in ``v`` of ``a`` (initial known nonzero) and ``b`` on the branch."""
        while True:
            self._tick()
            b = self._reduce(b, task.T, below=v)
            if not b:
                return a
            if b.degree(v) <= 0:
                return Polynomial.constant(1) if self._require_nonzero(b, task, "gcd") else a
            d = b.degree(v)
            if not self._require_nonzero(b.coeff(v, d), task, "initial"):
                b = b - b.coeff(v, d) * Polynomial.variable(v, d)
                continue
            c = content(b, v)
            if not c.is_constant() and self._status(c, task)[0] == _NONZERO:
                b = divide_exact(b, c)
            _, r, _ = pseudo_divide(a, b, v)
            a, b = b, r.primitive()

    @staticmethod
    def _isolated_derivative(c: Polynomial, p: Polynomial, task: Task, rest) -> bool:
        """Whether ``c`` involves a proper derivative occurring in no other member."""
        own = {w for w in c.jet_variables() if w.order > 0}
        if not own:
            return False
        others = list(task.T.values()) + list(task.U.values()) + list(task.nonzero) + [q for _, q in rest]
        seen = set()
        for q in others:
            if q is not p:
                seen |= q.jet_variables()
        return bool(own - seen)

    def _pquo(self, a: Polynomial, g: Polynomial, v: Var, task: Task) -> Polynomial:
        q = pseudo_divide(a, g, v)[0]
        return self._reduce(q, task.T, below=v)

    # -- queue handling --------------------------------------------------------

    def _pick(self, queue):
        def key(item):
            kind, p = item
            lv = p.jet_leader()
            d = p.degree(lv) if lv is not None else 0
            if self.strategy == "high-degree-first":
                d = -d
            return (lv if lv is not None else Var("", -2, 0), kind, d, str(p))

        i = min(range(len(queue)), key=lambda k: key(queue[k]))
        return i, queue[i]

    @staticmethod
    def _requeue_above(T, U, v, queue):
        moved = []
        for w in sorted(T):
            if w > v:
                moved.append((EQ, T.pop(w)))
        for w in sorted(U):
            if w > v:
                moved.append((INEQ, U.pop(w)))
        return queue + tuple(moved)

    # -- member processing -----------------------------------------------------

    def _process(self, task: Task, kind: int, p: Polynomial, rest) -> Task:
        if p.total_degree() > self.degree_limit:
            raise FuelExhausted(f"degree limit {self.degree_limit} exceeded at {task.path}")
        T, U = dict(task.T), dict(task.U)
        if kind == EQ:
            return self._process_eq(task, T, U, p, rest)
        return self._process_ineq(task, T, U, p, rest)

    def _process_eq(self, task, T, U, p, rest) -> Task:
        p = self._reduce(p, T)
        if not p:
            return Task(T, U, rest, task.nonzero, task.path)
        if p.is_unit():
            raise Inconsistent(f"equation reduces to unit {p}")
        v = p.jet_leader()
        c = strip_units(content(p, v))
        if not c.is_constant():
            pp = strip_units(divide_exact(p, c))
            if pp in task.nonzero:
                return Task(T, U, ((EQ, c),) + rest, task.nonzero, task.path)
            if self._status(c, task)[0] == _UNKNOWN and self._isolated_derivative(c, p, task, rest):
                # c = 0 or else pp = 0; splitting on pp keeps the derivative
                # from becoming an unconstrained coordinate of an inequation
                raise NeedSplit(pp, "primitive")
            if not self._require_nonzero(c, task, "content"):
                return Task(T, U, rest, task.nonzero, task.path)
            p = pp
        d = p.degree(v)
        init = p.coeff(v, d)
        if not self._require_nonzero(init, task, "initial"):
            red = p - init * Polynomial.variable(v, d)
            return Task(T, U, ((EQ, red),) + rest, task.nonzero, task.path)
        if v in T:
            g = self._split_gcd(T[v], p, v, task)
            if g.degree(v) <= 0:
                raise Inconsistent(f"no common root with {T[v]}")
            T[v] = strip_units(g)
        else:
            if d > 1:
                g = self._split_gcd(p, p.diff(v), v, task)
                if g.degree(v) > 0:
                    p = strip_units(self._pquo(p, g, v, task))
            if v in U:
                g = self._split_gcd(p, U.pop(v), v, task)
                if g.degree(v) > 0:
                    p = strip_units(self._pquo(p, g, v, task))
                    if p.degree(v) <= 0:
                        raise Inconsistent("all roots excluded by an inequation")
            T[v] = p
        queue = self._requeue_above(T, U, v, rest)
        return Task(T, U, queue, task.nonzero, task.path)

    def _process_ineq(self, task, T, U, u, rest) -> Task:
        u = self._reduce(u, T)
        if not u:
            raise Inconsistent("inequation reduces to zero")
        if u.is_unit():
            return Task(T, U, rest, task.nonzero, task.path)
        v = u.jet_leader()
        c = strip_units(content(u, v))
        if not c.is_constant():
            u = strip_units(divide_exact(u, c))
            return Task(T, U, ((INEQ, c), (INEQ, u)) + rest, task.nonzero, task.path)
        d = u.degree(v)
        init = u.coeff(v, d)
        if not self._require_nonzero(init, task, "initial"):
            red = u - init * Polynomial.variable(v, d)
            return Task(T, U, ((INEQ, red),) + rest, task.nonzero, task.path)
        if v in T:
            g = self._split_gcd(T[v], u, v, task)
            if g.degree(v) <= 0:
                return Task(T, U, rest, task.nonzero, task.path)
            q = strip_units(self._pquo(T[v], g, v, task))
            if q.degree(v) <= 0:
                raise Inconsistent("inequation excludes every root")
            T[v] = q
            queue = self._requeue_above(T, U, v, rest)
            return Task(T, U, queue, task.nonzero, task.path)
        if d > 1:
            g = self._split_gcd(u, u.diff(v), v, task)
            if g.degree(v) > 0:
                u = strip_units(self._pquo(u, g, v, task))
        if v in U:
            old = U[v]
            g = self._split_gcd(old, u, v, task)
            if g.degree(v) > 0:
                u = strip_units(self._pquo(u, g, v, task))
            if u.degree(v) > 0:
                U[v] = strip_units(old * u)
        else:
            U[v] = u
        return Task(T, U, rest, task.nonzero, task.path)

    # -- driver ------------------------------------------------------------------

    def run(self, system: DiffSystem, path: str = "r") -> List[DiffSystem]:
        if system.inconsistent:
            self._note(path, "inconsistent", "input")
            return []
        queue = tuple((EQ, f) for f in system.equations) + tuple((INEQ, u) for u in system.inequations)
        stack = [Task({}, {}, queue, frozenset(), path)]
        out = []
        while stack:
            self._tick()
            task = stack.pop()
            if not task.queue:
                out.append(DiffSystem(task.T.values(), task.U.values(), system.universe))
                self._note(task.path, "simple", out[-1])
                continue
            i, (kind, p) = self._pick(task.queue)
            rest = task.queue[:i] + task.queue[i + 1:]
            try:
                stack.append(self._process(task, kind, p, rest))
            except NeedSplit as s:
                f = s.poly
                self._note(task.path, f"split-{s.why}", f)
                again = ((kind, p),) + rest
                # a primitive part vanishing makes the member itself vanish
                tail = rest if s.why == "primitive" else again
                zero = Task(task.T, task.U, ((EQ, f),) + tail, task.nonzero, task.path + ".1")
                nonzero = Task(task.T, task.U, ((INEQ, f),) + again,
                               task.nonzero | {f}, task.path + ".0")
                stack.append(zero)
                stack.append(nonzero)
            except Inconsistent as e:
                self._note(task.path, "inconsistent", e)
        return out


# -----------------------------------------------------------------------------
# public operations
# -----------------------------------------------------------------------------


def _input_limit(system: DiffSystem, degree_limit: int) -> int:
    # the limit guards against growth, never against the input itself
    return max([degree_limit] + [p.total_degree() for p in system.members()])


def algebraic_decompose(system: DiffSystem, strategy: str = "high-degree-first",
                        fuel: int = DEFAULT_FUEL, log: Optional[List[str]] = None,
                        prune: bool = True,
                        degree_limit: int = DEFAULT_DEGREE_LIMIT) -> Decomposition:
    """Algebraic Thomas decomposition (jet variables treated as plain unknowns)."""
    log = log if log is not None else []
    engine = Engine(strategy, fuel, log, _input_limit(system, degree_limit))
    systems = engine.run(system)
    if prune:
        systems = [_prune(s, "algebraic", strategy, fuel) for s in systems]
    return Decomposition(systems, system, "algebraic", log)


def _ineq_factors(u: Polynomial):
    try:
        return [f for f, _ in factor(u).factors]
    except FactorizationCapError:
        return [f for f, _ in squarefree(u).factors]


PRUNE_HEIGHT_BITS = 128


def _bulky(p: Polynomial) -> bool:
    """Members whose simplicity re-checks would cost more than pruning saves."""
    if p.total_degree() > DEFAULT_DEGREE_LIMIT:
        return True
    for c in p.terms.values():
        if isinstance(c, mpq) and max(abs(c.numerator), c.denominator).bit_length() > PRUNE_HEIGHT_BITS:
            return True
    return False


def _prune(system: DiffSystem, mode: str, strategy: str, fuel: int) -> DiffSystem:
    """Drop inequation factors that the rest of the system already implies.

    A factor ``f`` of an inequation is dropped when adding ``f = 0`` to the
    system without it leaves no solutions and the smaller system is still
    simple.  The solution set is unchanged.
    """
    from .systems import is_algebraic_simple

    decompose = algebraic_decompose if mode == "algebraic" else differential_decompose
    current = system
    if any(_bulky(p) for p in system.members()):
        return system
    for u in system.inequations:
        for f in _ineq_factors(u):
            if f.is_constant():
                continue
            others = [w for w in current.inequations if w != u]
            rest = divide_exact(u, f)
            while rest is not None and divide_exact(rest, f) is not None:
                rest = divide_exact(rest, f)
            if rest is None:
                continue
            candidate = DiffSystem(current.equations, others + [rest], current.universe)
            test = candidate.with_members(equations=[f])
            try:
                if decompose(test, strategy=strategy, fuel=fuel, prune=False).systems:
                    continue
                if not is_algebraic_simple(candidate):
                    continue
            except (FuelExhausted, FactorizationCapError):
                # pruning is cosmetic; keep the factor when the test is too costly
                continue
            current = candidate
            u = rest
    return current


def _differential_pass(system: DiffSystem) -> Optional[DiffSystem]:
    """Reduce equations modulo each other's derivatives and inequations
    modulo the equations.  Returns the new system, or None if nothing changed."""
    eqs = list(system.equations)
    changed = False
    i = 0
    while i < len(eqs):
        f = eqs[i]
        others = eqs[:i] + eqs[i + 1:]
        r = prem(f, others, complete=True, differential=True)
        r = strip_units(r) if r else r
        if r != f:
            changed = True
            if r:
                eqs[i] = r
                i += 1
            else:
                eqs.pop(i)
        else:
            i += 1
    ineqs = []
    for u in system.inequations:
        r = prem(u, eqs, complete=True, differential=True)
        r = strip_units(r) if r else r
        if r != u:
            changed = True
        ineqs.append(r)
    if not changed:
        return None
    return DiffSystem(eqs, ineqs, system.universe)


def differential_decompose(system: DiffSystem, strategy: str = "low-degree-first",
                           fuel: int = DEFAULT_FUEL, log: Optional[List[str]] = None,
                           prune: bool = True,
                        degree_limit: int = DEFAULT_DEGREE_LIMIT) -> Decomposition:
    """Differential Thomas decomposition of an ordinary differential system."""
    log = log if log is not None else []
    engine = Engine(strategy, fuel, log, _input_limit(system, degree_limit))
    work = [(system, "r")]
    out: List[DiffSystem] = []
    seen = set()
    while work:
        sys_, path = work.pop()
        for k, simple in enumerate(engine.run(sys_, path)):
            engine._tick()
            nxt = _differential_pass(simple)
            if nxt is None:
                if prune:
                    simple = _prune(simple, "differential", strategy, fuel)
                if simple not in seen:
                    seen.add(simple)
                    out.append(simple)
            else:
                engine._note(f"{path}#{k}", "differential-reduction", nxt)
                work.append((nxt, f"{path}#{k}"))
    return Decomposition(out, system, "differential", log)


def decompose_with_constraint(system: DiffSystem, constraint: Polynomial, **kw) -> Decomposition:
    """Differential decomposition of a type-I system together with ``constraint = 0``."""
    lv = constraint.jet_leader()
    if lv is None or lv.order != 0:
        raise ValueError("constraint must be led by an undifferentiated indeterminate")
    return differential_decompose(system.with_members(equations=[constraint]), **kw)
