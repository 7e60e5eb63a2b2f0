"""Motion polynomials over the dual quaternions and cubic factorization.

The indeterminate ``t`` commutes with all coefficients. Coefficients are
stored in ascending degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from .algebra import (
    DualQuaternion,
    Line,
    LineError,
    NotInvertibleError,
    exact_sqrt,
)
from .linkage import Linkage
from .polys import udeg, udivmod, uexact_div, ugcd, umul, utrim

__all__ = [
    "MotionPolynomial",
    "RevoluteFactor",
    "Factorization",
    "FactorizationResult",
    "MotionPolynomialError",
    "NonGenericError",
    "mp_mul_norm",
    "extract_right_factor",
    "factor_cubic",
    "linkage_from_cubic",
    "norm_quadratic",
]


class MotionPolynomialError(ValueError):
    pass


class NonGenericError(MotionPolynomialError):
    """Input lies outside the generic case the construction handles."""


class MotionPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def linear(cls, r, exact=True):
        """Monic ``t - r``."""
        return cls([-r, DualQuaternion.one(exact and r.exact)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def exact(self):
        return all(c.exact for c in self.coeffs)

    def __repr__(self):
        return f"MotionPolynomial({list(self.coeffs)!r})"

    def __eq__(self, other):
        return isinstance(other, MotionPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                term = x * y
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        return MotionPolynomial(out)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        zero = (a[0] * 0)
        return MotionPolynomial(
            [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]
        )

    def __sub__(self, other):
        return self + MotionPolynomial([-c for c in other.coeffs])

    def conj(self):
        return MotionPolynomial([c.conj() for c in self.coeffs])

    def norm_dq(self):
        return self * self.conj()

    def norm(self, tol=None):
        """``P * conj(P)`` as a real polynomial; raises if it is not real."""
        n = self.norm_dq()
        for c in n.coeffs:
            rest = c.c[1:]
            if tol is None and self.exact:
                bad = any(x != 0 for x in rest)
            else:
                tol_ = 1e-9 if tol is None else tol
                bad = max(abs(float(x)) for x in rest) > tol_ * max(1.0, abs(float(c.c[0])))
            if bad:
                raise MotionPolynomialError("norm polynomial is not real: not a motion polynomial")
        return utrim(c.c[0] for c in n.coeffs)

    def right_eval(self, x):
        """``sum c_k x^k`` with the argument to the right of the coefficients."""
        acc = None
        power = None
        for c in self.coeffs:
            power = DualQuaternion.one(x.exact) if power is None else power * x
            term = c * power
            acc = term if acc is None else acc + term
        return acc

    def divmod_real(self, m):
        """Divide by a monic real polynomial ``m`` (ascending coefficients)."""
        m = utrim(m)
        if m[-1] != 1:
            raise ValueError("divisor must be monic")
        p = list(self.coeffs)
        dm = len(m) - 1
        zero = p[0] * 0
        quot = [zero] * max(len(p) - dm, 1)
        for k in range(len(p) - 1, dm - 1, -1):
            q = p[k]
            if q.is_zero():
                continue
            quot[k - dm] = q
            for j in range(dm + 1):
                p[k - dm + j] = p[k - dm + j] - q * m[j]
        rem = p[:dm] if dm > 0 else [zero]
        return MotionPolynomial(quot), MotionPolynomial(rem)

    def right_divide_linear(self, r):
        """Quotient ``Q`` with ``self == Q * (t - r)``; raises if inexact."""
        p = self.coeffs
        n = len(p) - 1
        if n < 1:
            raise MotionPolynomialError("cannot divide a constant by a linear factor")
        q = [None] * n
        q[n - 1] = p[n]
        for k in range(n - 1, 0, -1):
            q[k - 1] = p[k] + q[k] * r
        rem = p[0] + q[0] * r
        if not _is_zero(rem, self.exact and r.exact):
            raise MotionPolynomialError("t - r is not a right factor")
        return MotionPolynomial(q)


def _is_zero(q, exact, tol=1e-9):
    if exact:
        return q.is_zero()
    return max(abs(float(x)) for x in q.c) <= tol


@dataclass(frozen=True)
class RevoluteFactor:
    """``t - a - b*h`` with ``b != 0`` and ``h`` a line."""

    a: object
    b: object
    h: Line

    def __post_init__(self):
        if self.b == 0:
            raise ValueError("revolute factor needs b != 0")

    @property
    def root(self):
        return self.h * self.b + self.a

    def poly(self):
        return MotionPolynomial.linear(self.root, self.h.exact)

    def norm_quadratic(self):
        """``t^2 - 2 a t + a^2 + b^2`` in ascending order."""
        a, b = self.a, self.b
        return (a * a + b * b, -2 * a, a * 0 + 1)

    @classmethod
    def from_root(cls, r, b_sign=1):
        """Write a root ``r = a + b*h`` as a revolute factor with ``sign(b) == b_sign``."""
        tol = None if r.exact else 1e-9
        eps_scalar = r.c[4]
        if (tol is None and eps_scalar != 0) or (tol is not None and abs(eps_scalar) > tol):
            raise MotionPolynomialError("linear factor is not a rotation (dual scalar part nonzero)")
        a = r.c[0]
        v = r.vector_part()
        b2 = sum(x * x for x in v.primal_vector)
        if b2 == 0:
            raise MotionPolynomialError("linear factor is a translation, not a rotation")
        b = exact_sqrt(b2) if r.exact else float(b2) ** 0.5
        if b is None:
            raise MotionPolynomialError("rotation factor has irrational b in exact mode")
        b = b if b_sign > 0 else -b
        try:
            h = Line.from_dq(v / b)
        except LineError as exc:
            raise MotionPolynomialError(f"linear factor is not a rotation: {exc}") from None
        return cls(a, b, h)


def norm_quadratic(r):
    """Norm ``(t - r)(t - conj r)`` of a linear factor, or None if not real."""
    s = r + r.conj()
    n = r.norm()
    if not (s.c[4] == 0 and n.du == 0) and r.exact:
        return None
    return (n.re, -s.c[0], n.re * 0 + 1)


def mp_mul_norm(P: MotionPolynomial, Q: MotionPolynomial):
    """Product ``P*Q`` and its (verified real) norm polynomial."""
    prod = P * Q
    return prod, prod.norm()


def extract_right_factor(P: MotionPolynomial, m):
    """Root ``r`` of a right factor ``t - r`` of ``P`` whose norm is ``m``.

    ``m`` is a monic real quadratic (ascending coefficients) dividing the
    norm of ``P``. The linear remainder ``c1 t + c0`` of ``P mod m`` gives
    ``r = -c1^-1 c0``.
    """
    m = tuple(m)
    if len(utrim(m)) != 3:
        raise ValueError("m must be a monic quadratic")
    if P.degree == 1:
        if P.coeffs[1] != 1:
            raise ValueError("P must be monic")
        r = -P.coeffs[0]
    else:
        _, rem = P.divmod_real(m)
        cs = list(rem.coeffs) + [P.coeffs[0] * 0] * (2 - len(rem.coeffs))
        c0, c1 = cs[0], cs[1]
        try:
            r = -(c1.inverse() * c0)
        except NotInvertibleError:
            raise NonGenericError("remainder leading coefficient is not invertible") from None
    exact = P.exact and r.exact
    if not _is_zero(P.right_eval(r), exact):
        raise MotionPolynomialError("t - r does not right-divide P")
    nq = norm_quadratic(r)
    if nq is None or not _quad_close(nq, m, exact):
        raise NonGenericError("extracted factor does not have the requested norm")
    return r


def _quad_close(a, b, exact, tol=1e-8):
    if exact:
        return tuple(a) == tuple(b)
    return all(abs(float(x) - float(y)) <= tol * max(1.0, abs(float(y))) for x, y in zip(a, b))


@dataclass(frozen=True)
class Factorization:
    """``P == (t - roots[0]) (t - roots[1]) (t - roots[2])``."""

    order: tuple  # indices of the norm quadratics, left to right
    roots: tuple
    revolute: tuple  # RevoluteFactor or None per factor


@dataclass
class FactorizationResult:
    quadratics: tuple
    factorizations: list = field(default_factory=list)
    generic: bool = True

    def __iter__(self):
        return iter(self.factorizations)

    def __len__(self):
        return len(self.factorizations)

    def by_order(self, order):
        for f in self.factorizations:
            if f.order == tuple(order):
                return f
        return None


def _norm_quadratics(norm, exact):
    """Split a real sextic without real roots into three monic quadratics."""
    if exact:
        return _norm_quadratics_exact(norm)
    coeffs = [float(c) for c in norm]
    roots = np.roots(coeffs[::-1])
    scale = max(1.0, max(abs(roots)))
    if any(abs(z.imag) <= 1e-9 * scale for z in roots):
        raise MotionPolynomialError("norm polynomial has real roots")
    upper = sorted((z for z in roots if z.imag > 0), key=lambda z: (z.real, z.imag))
    if len(upper) != 3:
        raise MotionPolynomialError("norm polynomial is not a product of three quadratics")
    quads = [(abs(z) ** 2, -2 * z.real, 1.0) for z in upper]
    check = umul(umul(quads[0], quads[1]), quads[2])
    if any(abs(a - b) > 1e-10 * max(1.0, abs(b)) for a, b in zip(check, norm)):
        raise MotionPolynomialError("numerical norm factorization failed")
    return tuple(quads)


def _norm_quadratics_exact(norm):
    # work on the square-free part so repeated quadratics are found too
    norm = utrim(norm)
    deriv = tuple(k * c for k, c in enumerate(norm))[1:]
    square_free = uexact_div(norm, ugcd(norm, deriv))
    roots = np.roots([float(c) for c in square_free][::-1])
    scale = max(1.0, max(abs(roots))) if roots.size else 1.0
    if any(abs(z.imag) <= 1e-9 * scale for z in roots):
        raise MotionPolynomialError("norm polynomial has real roots")
    quads = []
    rest = norm
    for z in sorted((z for z in roots if z.imag > 0), key=lambda z: (z.real, z.imag)):
        q = (
            Fraction(abs(z) ** 2).limit_denominator(10**8),
            Fraction(-2 * z.real).limit_denominator(10**8),
            Fraction(1),
        )
        while udeg(rest) >= 2:
            quot, rem = udivmod(rest, q)
            if rem:
                break
            quads.append(q)
            rest = quot
    if len(quads) != 3 or udeg(rest) != 0:
        raise MotionPolynomialError("norm does not split into rational quadratics")
    return tuple(sorted(quads, key=lambda q: (-q[1], q[0])))


def factor_cubic(P: MotionPolynomial, quadratics=None) -> FactorizationResult:
    """All factorizations of a monic cubic motion polynomial into monic linear factors.

    ``quadratics`` may supply the three monic quadratic factors of the norm;
    otherwise they are found numerically and, for exact input, rationalized
    and verified. With repeated quadratics the result is marked non-generic.
    """
    if P.degree != 3 or P.coeffs[3] != 1:
        raise ValueError("factor_cubic needs a monic cubic")
    norm = P.norm()
    exact = P.exact
    if quadratics is None:
        quadratics = _norm_quadratics(norm, exact)
    else:
        quadratics = tuple(tuple(q) for q in quadratics)
        if exact and umul(umul(quadratics[0], quadratics[1]), quadratics[2]) != utrim(norm):
            raise MotionPolynomialError("given quadratics do not multiply to the norm")
    for q in quadratics:
        if q[1] * q[1] - 4 * q[0] >= 0:
            raise MotionPolynomialError("norm polynomial has real roots")
    generic = len(set(quadratics)) == 3
    result = FactorizationResult(quadratics, [], generic)
    seen = set()
    for order in permutations(range(3)):
        key = tuple(quadratics[i] for i in order)
        if key in seen:
            continue
        seen.add(key)
        try:
            rc = extract_right_factor(P, quadratics[order[2]])
            Q = P.right_divide_linear(rc)
            rb = extract_right_factor(Q, quadratics[order[1]])
            Q1 = Q.right_divide_linear(rb)
        except (MotionPolynomialError, NotInvertibleError):
            continue
        ra = -Q1.coeffs[0]
        prod = (
            MotionPolynomial.linear(ra, exact)
            * MotionPolynomial.linear(rb, exact)
            * MotionPolynomial.linear(rc, exact)
        )
        if exact:
            ok = prod == P
        else:
            ok = all(_is_zero(x - y, False, 1e-8) for x, y in zip(prod.coeffs, P.coeffs))
        if not ok:
            continue
        revs = []
        for r in (ra, rb, rc):
            try:
                revs.append(RevoluteFactor.from_root(r))
            except MotionPolynomialError:
                revs.append(None)
        result.factorizations.append(Factorization(tuple(order), (ra, rb, rc), tuple(revs)))
    if not result.factorizations:
        raise MotionPolynomialError("no factorization verified")
    return result


def linkage_from_cubic(R1: RevoluteFactor, R2: RevoluteFactor, R3: RevoluteFactor) -> Linkage:
    """Cubic-polynomial-type linkage from three revolute factors.

    Finds the second factorization ``R1 R2 R3 == R6 R5 R4`` with matching
    factor norms and signs ``b_{i+3} = -b_i``; the six axes form the linkage.
    """
    Rs = (R1, R2, R3)
    quads = tuple(R.norm_quadratic() for R in Rs)
    if len(set(quads)) != 3:
        raise NonGenericError("norm quadratics of the three factors are not distinct")
    exact = all(R.h.exact for R in Rs)
    Q = R1.poly() * R2.poly() * R3.poly()
    res = factor_cubic(Q, quads)
    f = res.by_order((2, 1, 0))
    if f is None:
        raise NonGenericError("no norm-matched second factorization")
    r6, r5, r4 = f.roots
    others = []
    for R, r in zip(Rs, (r4, r5, r6)):
        rev = RevoluteFactor.from_root(r, b_sign=-1 if R.b > 0 else 1)
        if rev.a != R.a and exact:
            raise NonGenericError("matched factor has a different rotation centre")
        others.append(rev)
    L = Linkage([R1.h, R2.h, R3.h] + [o.h for o in others])
    # closure: the degree-6 product with the reversed factors must be real
    six = Q
    for R, o in zip(Rs, others):
        six = six * RevoluteFactor(R.a, R.b, o.h).poly()
    for c in six.coeffs:
        if any(x != 0 for x in c.c[1:]) if exact else max(abs(float(x)) for x in c.c[1:]) > 1e-8:
            raise MotionPolynomialError("degree-6 closure product is not real")
    return L
