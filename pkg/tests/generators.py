"""Seeded generators of random systems for the property tests."""
import itertools
import random

from gmpy2 import mpq

from aodesolve.poly import Polynomial, jet
from aodesolve.systems import DiffSystem

NAMES = ["y", "z", "w"]


def random_diff_system(rng: random.Random) -> DiffSystem:
    """1-3 indeterminates up to first order, equations of degree <= 3."""
    n = rng.randint(1, 3)
    coords = [jet(nm, k) for nm in NAMES[:n] for k in range(rng.randint(1, 2))]

    def poly(deg):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            mono, budget = [], deg
            for v in rng.sample(coords, len(coords)):
                e = rng.randint(0, budget)
                budget -= e
                if e:
                    mono.append((v, e))
            terms[tuple(sorted(mono))] = rng.randint(-3, 3)
        return Polynomial.from_terms((m, c) for m, c in terms.items() if c)

    eqs = [poly(3) for _ in range(rng.randint(1, n + 1))]
    ineqs = [poly(2) for _ in range(rng.randint(0, 1))]
    return DiffSystem(eqs, ineqs)


GRID_COORDS = [jet("y"), jet("y", 1), jet("z")]
GRID = list(itertools.product(range(-2, 3), repeat=len(GRID_COORDS)))


def _linear(rng):
    p = Polynomial.constant(mpq(rng.randint(-2, 2)))
    for v in rng.sample(GRID_COORDS, rng.randint(1, 2)):
        p = p + Polynomial.variable(v).scale(mpq(rng.choice([-2, -1, 1, 2])))
    return p


def random_product_system(rng: random.Random) -> DiffSystem:
    """Equations that are products of linear forms, so that many integer
    grid points are solutions."""
    eqs = []
    for _ in range(rng.randint(1, 2)):
        f = _linear(rng)
        for _ in range(rng.randint(0, 2)):
            f = f * _linear(rng)
        eqs.append(f)
    ineqs = [_linear(rng) for _ in range(rng.randint(0, 1))]
    return DiffSystem(eqs, ineqs)


def contains(system: DiffSystem, point) -> bool:
    """Whether the grid point satisfies every equation and inequation."""
    vals = {v: Polynomial.constant(mpq(c)) for v, c in zip(GRID_COORDS, point)}
    for f in system.equations:
        if f.subs(vals):
            return False
    for u in system.inequations:
        if not u.subs(vals):
            return False
    return True
