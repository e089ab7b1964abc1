"""Exact rationals and elements of a simple algebraic extension Q(a).

Rationals are ``gmpy2.mpq`` values.  An element of ``Q(a)`` is stored as its
coefficient vector with respect to the power basis ``1, a, ..., a^(d-1)``
modulo the monic irreducible minimal polynomial of ``a``.  Arithmetic that
lands back in Q returns a plain rational, so extension elements only appear
where they are actually needed.
"""
from __future__ import annotations

from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)

DEFAULT_EXTENSION_CAP = 16


class ExtensionCapError(ArithmeticError):
    """Raised when a required field extension exceeds the configured degree cap."""


def to_q(value):
    """Coerce int/Fraction/str/mpq to mpq; extension elements pass through."""
    if isinstance(value, AlgNum):
        return value
    return mpq(value)


def is_rational(c) -> bool:
    return not isinstance(c, AlgNum)


class NumberField:
    """Q(a) for a root ``a`` of a monic irreducible polynomial over Q.

    ``minpoly`` lists coefficients from the constant term upward and must be
    monic.  Irreducibility is the caller's responsibility (fields are only
    built from factors returned by the factorization routines).
    """

    __slots__ = ("minpoly", "name", "degree", "_hash")

    def __init__(self, minpoly, name: str = "a"):
        coeffs = [mpq(c) for c in minpoly]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have positive degree")
        lead = coeffs[-1]
        if lead != 1:
            coeffs = [c / lead for c in coeffs]
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.name = name
        self._hash = hash((self.minpoly, name))

    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and self.minpoly == other.minpoly
            and self.name == other.name
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"NumberField({list(map(str, self.minpoly))}, {self.name!r})"

    @property
    def gen(self):
        if self.degree == 1:
            return -self.minpoly[0]
        return AlgNum(self, (ZERO, ONE))

    def element(self, coeffs):
        return AlgNum.make(self, coeffs)

    def minpoly_str(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.minpoly[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (self.name if k == 1 else f"{self.name}^{k}")
            if mono and abs(c) == 1:
                term = mono
            elif mono:
                term = f"{abs(c)}*{mono}"
            else:
                term = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    # -- reduction helpers on raw coefficient lists -------------------------

    def _reduce(self, coeffs):
        c = list(coeffs)
        d = self.degree
        m = self.minpoly
        for k in range(len(c) - 1, d - 1, -1):
            t = c[k]
            if t:
                for i in range(d):
                    if m[i]:
                        c[k - d + i] -= t * m[i]
        c = c[:d]
        c.extend([ZERO] * (d - len(c)))
        return c


class AlgNum:
    """Element of a NumberField.  Immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        coeffs = tuple(coeffs)
        if len(coeffs) < field.degree:
            coeffs = coeffs + (ZERO,) * (field.degree - len(coeffs))
        self.coeffs = coeffs

    @staticmethod
    def make(field: NumberField, coeffs):
        """Reduce ``coeffs`` modulo the minimal polynomial; collapse to Q if possible."""
        red = field._reduce([mpq(c) for c in coeffs])
        if all(c == 0 for c in red[1:]):
            return red[0]
        return AlgNum(field, red)

    def _coerce(self, other):
        if isinstance(other, AlgNum):
            if other.field != self.field:
                raise ValueError("arithmetic between different number fields")
            return other.coeffs
        try:
            q = mpq(other)
        except (TypeError, ValueError):
            return None
        return (q,) + (ZERO,) * (self.field.degree - 1)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgNum.make(self.field, [a + b for a, b in zip(self.coeffs, o)])

    __radd__ = __add__

    def __neg__(self):
        return AlgNum(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgNum.make(self.field, [a - b for a, b in zip(self.coeffs, o)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgNum.make(self.field, [b - a for a, b in zip(self.coeffs, o)])

    def __mul__(self, other):
        if not isinstance(other, AlgNum):
            try:
                q = mpq(other)
            except (TypeError, ValueError):
                return NotImplemented
            if q == 0:
                return ZERO
            return AlgNum(self.field, tuple(a * q for a in self.coeffs))
        o = self._coerce(other)
        d = self.field.degree
        prod = [ZERO] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    if b:
                        prod[i + j] += a * b
        return AlgNum.make(self.field, prod)

    __rmul__ = __mul__

    def inverse(self):
        # extended Euclid in Q[t] between the element and the minimal polynomial
        r0 = list(self.field.minpoly)
        r1 = _trim(list(self.coeffs))
        s0, s1 = [ZERO], [ONE]
        while len(r1) > 1:
            q, r = _divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub(s0, _mul(q, s1))
        if len(r1) != 1:
            raise ZeroDivisionError("element is not invertible (reducible modulus?)")
        inv_c = 1 / r1[0]
        return AlgNum.make(self.field, [c * inv_c for c in s1])

    def __truediv__(self, other):
        if isinstance(other, AlgNum):
            return self * other.inverse()
        q = mpq(other)
        if q == 0:
            raise ZeroDivisionError("division by zero")
        return AlgNum(self.field, tuple(a / q for a in self.coeffs))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = base * result
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, AlgNum):
            return self.field == other.field and self.coeffs == other.coeffs
        return False  # AlgNum values are never rational (see make)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"AlgNum({self})"

    def __str__(self):
        name = self.field.name
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            if mono and abs(c) == 1:
                term = mono
            elif mono:
                term = f"{abs(c)}*{mono}"
            else:
                term = str(abs(c))
            parts.append(("-" if c < 0 else "+", term))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def conjugate_count(self) -> int:
        return self.field.degree


def coeff_field(c):
    return c.field if isinstance(c, AlgNum) else None


def common_field(coeffs):
    """Return the single NumberField used among ``coeffs`` (or None for Q)."""
    field = None
    for c in coeffs:
        if isinstance(c, AlgNum):
            if field is None:
                field = c.field
            elif field != c.field:
                raise ValueError("coefficients from different number fields")
    return field


# -- dense univariate helpers over Q (coefficient lists, low degree first) ----

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else ZERO) - (b[i] if i < len(b) else ZERO) for i in range(n)]
    return _trim(out)


def _mul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _divmod(a, b):
    a = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    q = [ZERO] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        t = a[-1] * inv
        q[k] = t
        for i in range(len(b)):
            a[k + i] -= t * b[i]
        a.pop()
        _trim(a)
    return _trim(q), a
