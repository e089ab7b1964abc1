"""Example systems shared by the tests."""
from aodesolve.parse import parse

EX33 = [
    "y1'^2 + y2^3 = 0\n2*y1 - y1'*y2 = 0\ny1 /= 0",
    "y' + x = 0",
    "y' + y = 0\ny'' /= 0",
]

EX35 = "z'^2 + z = 0\ny*z' = 0"

EX52 = """y*y'*y'' + y'^3 - y*y'' - y'^2 = 0
z^3 - 2*y'^2 + y*y' - 1 = 0
z^3 + y*y'' - y'^2 = 0
3*z^2*z' - 4*y'*y'' = 0"""

EX53 = """8*y'^3 - 27*y = 0
z^5 - y^3 = 0
5*z^4*z' - 3*y^2*y' = 0"""

# (source, verdict): hand-checked existence answers
EXISTENCE = [
    ("y - 1 = 0\ny + 1 = 0", "no-solution"),
    ("y' = 0\ny' - 1 = 0", "no-solution"),
    ("y^2 - 1 = 0", "only-constant"),
    ("y' = 0", "only-constant"),
    ("y^2 - 2 = 0\nz^3 - y = 0", "only-constant"),
    ("y*y' - 1 = 0", "nonconstant-exists"),
    (EX35, "nonconstant-exists"),
    ("y' - y = 0\nz^2 - y = 0", "nonconstant-exists"),
    ("y - 1 = 0\nz*y - z = 0", "nonconstant-exists"),
    ("y^2 - 4 = 0\nz /= 0\nz*y - 2*z /= 0", "nonconstant-exists"),
]


def system(src):
    return parse(src)


def solution_equivalent(a, b, differential=True) -> bool:
    """Two-sided pseudo-reduction: every equation of each system reduces to
    zero modulo the other, and no inequation of one vanishes modulo the other."""
    from aodesolve.diffring import prem

    def covered(s, t):
        gs = list(t.equations)
        if any(prem(f, gs, complete=True, differential=differential) for f in s.equations):
            return False
        return all(prem(u, gs, complete=True, differential=differential) for u in s.inequations)

    return covered(a, b) and covered(b, a)
