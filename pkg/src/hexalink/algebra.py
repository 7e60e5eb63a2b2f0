"""Dual numbers, dual quaternions and lines.

Scalars are either exact (``fractions.Fraction``) or ``float``. A dual
quaternion stores eight coordinates in the fixed order
``(1, i, j, k, e, ei, ej, ek)`` where ``e`` is the dual unit (``e**2 == 0``).
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt, sqrt
from numbers import Rational

from . import _kernels

__all__ = [
    "DualNumber",
    "DualQuaternion",
    "Line",
    "LineError",
    "NotInvertibleError",
    "to_scalar",
    "parse_scalar",
    "format_scalar",
    "exact_sqrt",
    "dq_mul",
    "dq_conj_norm",
    "cross_inner",
    "make_line",
    "act_on_line",
    "cross3",
    "dot3",
    "FLOAT_TOL",
]

FLOAT_TOL = 1e-9


class LineError(ValueError):
    """A dual quaternion violates the line invariant ``h**2 == -1``."""


class NotInvertibleError(ZeroDivisionError):
    """Division by an element with vanishing primal part."""


def to_scalar(x, exact=True):
    """Coerce ``x`` to the scalar type of the requested mode."""
    if exact:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, float):
            return Fraction(x)
        return Fraction(x)
    if isinstance(x, str):
        return float(parse_scalar(x))
    return float(x)


def parse_scalar(s):
    """Parse ``"p/q"``, an integer string or a decimal string exactly."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(s)
    return Fraction(str(s).strip())


def format_scalar(x):
    """Serialize a scalar: exact values as ``"p/q"``, floats as floats."""
    if isinstance(x, Rational):
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return float(x)


def exact_sqrt(x):
    """Square root of a nonnegative Fraction if it is a rational square, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _is_exact(v):
    return not isinstance(v, float)


def cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


class DualNumber:
    """``re + e*du`` with ``e**2 == 0``."""

    __slots__ = ("re", "du")

    def __init__(self, re, du=0):
        self.re = re
        self.du = du

    def __repr__(self):
        return f"DualNumber({self.re!r}, {self.du!r})"

    def __iter__(self):
        yield self.re
        yield self.du

    def __eq__(self, other):
        if isinstance(other, DualNumber):
            return self.re == other.re and self.du == other.du
        if isinstance(other, (int, float, Fraction)):
            return self.re == other and self.du == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.du))

    def __add__(self, other):
        if isinstance(other, DualNumber):
            return DualNumber(self.re + other.re, self.du + other.du)
        return DualNumber(self.re + other, self.du)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.re, -self.du)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DualNumber):
            return DualNumber(self.re * other.re, self.re * other.du + self.du * other.re)
        if isinstance(other, DualQuaternion):
            return NotImplemented
        return DualNumber(self.re * other, self.du * other)

    __rmul__ = __mul__

    def is_invertible(self):
        return self.re != 0

    def inverse(self):
        if self.re == 0:
            raise NotInvertibleError("dual number with zero primal part")
        inv = 1 / self.re if not _is_exact(self.re) else Fraction(1) / self.re
        return DualNumber(inv, -self.du * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, DualNumber):
            return self * other.inverse()
        if other == 0:
            raise NotInvertibleError("division by zero")
        return DualNumber(self.re / other, self.du / other)

    def sqrt(self):
        """Square root with positive primal part; ``re`` must be > 0.

        Exact scalars stay exact when ``re`` is a rational square, otherwise
        the result is a float dual number.
        """
        if not self.re > 0:
            raise ValueError("dual square root needs a positive primal part")
        if _is_exact(self.re):
            root = exact_sqrt(self.re)
            if root is not None:
                return DualNumber(root, Fraction(self.du) / (2 * root))
        root = sqrt(float(self.re))
        return DualNumber(root, float(self.du) / (2 * root))


class DualQuaternion:
    """Element of the 8-dimensional algebra of dual quaternions."""

    __slots__ = ("c",)

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) != 8:
            raise ValueError("a dual quaternion has 8 coordinates")
        self.c = coords

    @classmethod
    def from_parts(cls, primal, dual=(0, 0, 0, 0)):
        return cls(tuple(primal) + tuple(dual))

    @classmethod
    def scalar(cls, s, exact=True):
        z = to_scalar(0, exact)
        return cls((to_scalar(s, exact), z, z, z, z, z, z, z))

    @classmethod
    def pure(cls, primal_vec, dual_vec):
        p = tuple(primal_vec)
        d = tuple(dual_vec)
        z = p[0] * 0
        return cls((z, p[0], p[1], p[2], z, d[0], d[1], d[2]))

    @classmethod
    def zero(cls, exact=True):
        return cls.scalar(0, exact)

    @classmethod
    def one(cls, exact=True):
        return cls.scalar(1, exact)

    # -- coordinate views
    @property
    def primal(self):
        return self.c[0:4]

    @property
    def dual(self):
        return self.c[4:8]

    @property
    def primal_vector(self):
        return self.c[1:4]

    @property
    def dual_vector(self):
        return self.c[5:8]

    @property
    def scalar_part(self):
        return DualNumber(self.c[0], self.c[4])

    def vector_part(self):
        z = self.c[0] * 0
        c = self.c
        return DualQuaternion((z, c[1], c[2], c[3], z, c[5], c[6], c[7]))

    def is_pure(self):
        return self.c[0] == 0 and self.c[4] == 0

    def is_zero(self):
        return all(x == 0 for x in self.c)

    @property
    def exact(self):
        return all(_is_exact(x) for x in self.c)

    def as_float(self):
        return DualQuaternion(tuple(float(x) for x in self.c))

    def as_exact(self):
        return DualQuaternion(tuple(to_scalar(x, True) for x in self.c))

    # -- protocol
    def __repr__(self):
        return f"{type(self).__name__}({self.c!r})"

    def __str__(self):
        names = ("", "i", "j", "k", "e", "ei", "ej", "ek")
        terms = [f"{x}{n}" for x, n in zip(self.c, names) if x != 0]
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other):
        if isinstance(other, DualQuaternion):
            return self.c == other.c
        if isinstance(other, (int, float, Fraction)):
            return self.c[0] == other and all(x == 0 for x in self.c[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __iter__(self):
        return iter(self.c)

    def __getitem__(self, k):
        return self.c[k]

    def __neg__(self):
        return DualQuaternion(tuple(-x for x in self.c))

    def __add__(self, other):
        if isinstance(other, DualQuaternion):
            return DualQuaternion(tuple(x + y for x, y in zip(self.c, other.c)))
        if isinstance(other, DualNumber):
            c = list(self.c)
            c[0] += other.re
            c[4] += other.du
            return DualQuaternion(c)
        c = list(self.c)
        c[0] += other
        return DualQuaternion(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DualQuaternion):
            return dq_mul(self, other)
        if isinstance(other, DualNumber):
            return self * DualQuaternion.scalar_dual(other)
        return DualQuaternion(tuple(x * other for x in self.c))

    def __rmul__(self, other):
        if isinstance(other, DualNumber):
            return DualQuaternion.scalar_dual(other) * self
        return DualQuaternion(tuple(other * x for x in self.c))

    def __truediv__(self, other):
        if isinstance(other, DualNumber):
            return self * other.inverse()
        if isinstance(other, DualQuaternion):
            return self * other.inverse()
        if other == 0:
            raise NotInvertibleError("division by zero")
        if _is_exact(other) and self.exact:
            other = Fraction(other)
        return DualQuaternion(tuple(x / other for x in self.c))

    @classmethod
    def scalar_dual(cls, d):
        z = d.re * 0
        return cls((d.re, z, z, z, d.du, z, z, z))

    def conj(self):
        c = self.c
        return DualQuaternion((c[0], -c[1], -c[2], -c[3], c[4], -c[5], -c[6], -c[7]))

    def norm(self):
        """``self * conj(self)``, a dual number."""
        c = self.c
        re = c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]
        du = 2 * (c[0] * c[4] + c[1] * c[5] + c[2] * c[6] + c[3] * c[7])
        return DualNumber(re, du)

    def is_invertible(self):
        return self.norm().re != 0

    def inverse(self):
        n = self.norm()
        if n.re == 0:
            raise NotInvertibleError("dual quaternion with zero primal norm")
        return self.conj() * n.inverse()


def dq_mul(a, b):
    """Product of two dual quaternions."""
    ac, bc = a.c, b.c
    if type(ac[0]) is float and type(bc[0]) is float:
        return DualQuaternion(_kernels.dq_mul_f64(ac, bc))
    return DualQuaternion(_kernels.dq_mul(ac, bc))


def dq_conj_norm(a):
    """Return ``(conj(a), a*conj(a))``; the norm is a dual number."""
    return a.conj(), a.norm()


def cross_inner(g, h):
    """Cross product and (dual) inner product of two pure dual quaternions.

    ``g*h == -inner + cross``.
    """
    if not (g.is_pure() and h.is_pure()):
        raise ValueError("cross/inner products need purely vectorial arguments")
    gp, gd = g.primal_vector, g.dual_vector
    hp, hd = h.primal_vector, h.dual_vector
    cp = cross3(gp, hp)
    c1, c2 = cross3(gp, hd), cross3(gd, hp)
    cd = (c1[0] + c2[0], c1[1] + c2[1], c1[2] + c2[2])
    inner = DualNumber(dot3(gp, hp), dot3(gp, hd) + dot3(gd, hp))
    return DualQuaternion.pure(cp, cd), inner


class Line(DualQuaternion):
    """An oriented line: pure dual quaternion with ``h**2 == -1``.

    ``h`` and ``-h`` are the same axis with opposite orientation. Orientation
    is kept as given; :meth:`canonical` picks the representative whose first
    nonzero direction coordinate is positive.
    """

    __slots__ = ()

    def __init__(self, coords, tol=FLOAT_TOL):
        super().__init__(coords)
        c = self.c
        p, m = c[1:4], c[5:8]
        if c[0] != 0 and (_is_exact(c[0]) or abs(c[0]) > tol):
            raise LineError("line has nonzero scalar part")
        if c[4] != 0 and (_is_exact(c[4]) or abs(c[4]) > tol):
            raise LineError("line has nonzero dual scalar part")
        pp, pm = dot3(p, p), dot3(p, m)
        if self.exact:
            if pp != 1:
                raise LineError(f"line direction is not a unit vector (|p|^2 = {pp})")
            if pm != 0:
                raise LineError(f"line moment is not orthogonal to direction (p.m = {pm})")
        else:
            if abs(pp - 1) > tol:
                raise LineError(f"line direction is not a unit vector (|p|^2 = {pp})")
            if abs(pm) > tol * max(1.0, sqrt(float(dot3(m, m)))):
                raise LineError(f"line moment is not orthogonal to direction (p.m = {pm})")

    @classmethod
    def from_dq(cls, q, tol=FLOAT_TOL):
        return cls(q.c, tol)

    @classmethod
    def from_plucker(cls, direction, moment):
        p, m = tuple(direction), tuple(moment)
        z = p[0] * 0
        return cls((z, p[0], p[1], p[2], z, m[0], m[1], m[2]))

    @property
    def direction(self):
        return self.c[1:4]

    @property
    def moment(self):
        return self.c[5:8]

    @property
    def anchor(self):
        """Point on the line closest to the origin, ``p x m``."""
        return cross3(self.direction, self.moment)

    def canonical(self):
        for x in self.direction:
            if x != 0:
                if x < 0:
                    return Line(tuple(-v for v in self.c))
                return self
        return self

    def reversed(self):
        return Line(tuple(-v for v in self.c))

    def same_axis(self, other, tol=None):
        a, b = self.canonical(), Line.from_dq(other).canonical()
        if tol is None and a.exact and b.exact:
            return a.c == b.c
        tol = FLOAT_TOL if tol is None else tol
        return max(abs(float(x) - float(y)) for x, y in zip(a.c, b.c)) <= tol

    def __neg__(self):
        return self.reversed()

    def as_float(self):
        return Line(tuple(float(x) for x in self.c))


def make_line(direction, anchor_point, exact=None):
    """Line through ``anchor_point`` along ``direction``: ``p + e(c x p)``.

    The direction is normalized; exact inputs stay exact only if its length
    is rational. The result is sign-canonicalized.
    """
    d = tuple(direction)
    a = tuple(anchor_point)
    if exact is None:
        exact = all(_is_exact(x) for x in d + a)
    d = tuple(to_scalar(x, exact) for x in d)
    a = tuple(to_scalar(x, exact) for x in a)
    n2 = dot3(d, d)
    if n2 == 0:
        raise LineError("zero direction vector")
    if exact:
        n = exact_sqrt(n2)
        if n is None:
            raise LineError("direction length is irrational; use float mode")
    else:
        n = sqrt(n2)
    p = tuple(x / n for x in d)
    return Line.from_plucker(p, cross3(a, p)).canonical()


def act_on_line(q, h):
    """``q h q^-1`` for an invertible dual quaternion ``q``; orientation is kept."""
    if not q.is_invertible():
        raise NotInvertibleError("acting element has zero primal norm")
    res = (q * h * q.conj()) / q.norm()
    c = list(res.c)
    c[0] = c[0] * 0
    c[4] = c[4] * 0
    return Line(c)
