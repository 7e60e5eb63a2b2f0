"""Closed 6R linkages, their configurations and the closure condition."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    FLOAT_TOL,
    DualQuaternion,
    Line,
    LineError,
    act_on_line,
    cross3,
    cross_inner,
    to_scalar,
)

__all__ = [
    "ClosureError",
    "ConfigParam",
    "Configuration",
    "SymConfiguration",
    "INF",
    "Linkage",
    "LinkageError",
    "Pairing",
    "closure_product",
    "closure_residual",
    "lambda_sign",
    "transform_by_configuration",
    "parallel_pairing",
    "link_parameters",
    "RESIDUAL_TOL",
]

RESIDUAL_TOL = 1e-9

# Index pattern of the parallel property (1-based); shifted cyclically.
PARALLEL_PATTERN = ((1, 4), (2, 3), (5, 6))


class LinkageError(ValueError):
    """Invalid linkage data."""


class ClosureError(ValueError):
    """A configuration does not satisfy the closure condition."""


@dataclass(frozen=True)
class ConfigParam:
    """Cotangent of half a rotation angle, as a projective pair.

    ``den == 0`` encodes infinity (zero rotation). The canonical form has
    ``den`` in ``{0, 1}``.
    """

    num: object
    den: object = 1

    def __post_init__(self):
        num, den = self.num, self.den
        if num == 0 and den == 0:
            raise ValueError("configuration parameter (0:0) is undefined")
        if den == 0:
            object.__setattr__(self, "num", num * 0 + 1)
            object.__setattr__(self, "den", den * 0)
        elif den != 1:
            exact = not isinstance(num, float) and not isinstance(den, float)
            num = Fraction(num) / Fraction(den) if exact else float(num) / float(den)
            object.__setattr__(self, "num", num)
            object.__setattr__(self, "den", den * 0 + 1)

    @classmethod
    def of(cls, x, exact=True):
        """Build from a number, a ``"p/q"`` string, ``"inf"``/None or another ConfigParam."""
        if isinstance(x, ConfigParam):
            return x
        if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo")):
            return cls(to_scalar(1, exact), to_scalar(0, exact))
        if isinstance(x, float) and x in (float("inf"), float("-inf")):
            return cls(to_scalar(1, exact), to_scalar(0, exact))
        return cls(to_scalar(x, exact), to_scalar(1, exact))

    @property
    def is_infinite(self):
        return self.den == 0

    @property
    def value(self):
        """Finite value, or ``None`` for infinity."""
        return None if self.is_infinite else self.num

    def as_float(self):
        if self.is_infinite:
            return ConfigParam(1.0, 0.0)
        return ConfigParam(float(self.num), 1.0)

    def to_json(self):
        from .algebra import format_scalar

        return "inf" if self.is_infinite else format_scalar(self.num)

    def __repr__(self):
        return "ConfigParam(inf)" if self.is_infinite else f"ConfigParam({self.num!r})"


INF = ConfigParam(Fraction(1), Fraction(0))


def _params(ts, n, exact=True):
    ps = tuple(ConfigParam.of(t, exact) for t in ts)
    if len(ps) != n:
        raise ValueError(f"expected {n} configuration parameters, got {len(ps)}")
    return ps


@dataclass(frozen=True)
class Configuration:
    """Six configuration parameters ``(t1, ..., t6)``."""

    t: tuple

    def __init__(self, ts: Sequence, exact=True):
        object.__setattr__(self, "t", _params(ts, 6, exact))

    @classmethod
    def infinity(cls):
        return cls([INF] * 6)

    def is_symmetric(self):
        return all(self.t[i] == self.t[i + 3] for i in range(3))

    def symmetric_part(self):
        if not self.is_symmetric():
            return None
        return SymConfiguration(self.t[:3])

    def to_json(self):
        return [p.to_json() for p in self.t]


@dataclass(frozen=True)
class SymConfiguration:
    """Angle-symmetric configuration ``(t1, t2, t3)`` with ``t4=t1, t5=t2, t6=t3``."""

    t: tuple

    def __init__(self, ts: Sequence, exact=True):
        object.__setattr__(self, "t", _params(ts, 3, exact))

    def expand(self):
        return Configuration(self.t + self.t)

    def to_json(self):
        return [p.to_json() for p in self.t]


@dataclass(frozen=True)
class Pairing:
    shift: int
    pairs: tuple

    def to_json(self):
        return {"shift": self.shift, "pairs": [list(p) for p in self.pairs]}


class Linkage:
    """Six oriented joint axes ``[h1, ..., h6]`` of a closed 6R chain.

    The orientation of every axis is significant: flipping ``h_i`` reverses
    the sense of the joint parameter ``t_i`` and changes which motions are
    angle-symmetric.
    """

    __slots__ = ("joints",)

    def __init__(self, joints):
        js = tuple(j if isinstance(j, Line) else Line.from_dq(j) for j in joints)
        if len(js) != 6:
            raise LinkageError(f"a 6R linkage needs 6 joints, got {len(js)}")
        for i in range(6):
            if js[i].same_axis(js[(i + 1) % 6]):
                raise LinkageError(f"consecutive joints {i + 1} and {(i + 1) % 6 + 1} share an axis")
        for i in range(3):
            if js[i] == js[i + 3]:
                raise LinkageError(f"h{i + 1} equals h{i + 4}")
        object.__setattr__(self, "joints", js)

    def __setattr__(self, name, value):
        raise AttributeError("Linkage is immutable")

    def __getitem__(self, k):
        return self.joints[k]

    def __iter__(self):
        return iter(self.joints)

    def __len__(self):
        return 6

    def __eq__(self, other):
        return isinstance(other, Linkage) and self.joints == other.joints

    def __hash__(self):
        return hash(self.joints)

    def __repr__(self):
        return f"Linkage({list(self.joints)!r})"

    @property
    def exact(self):
        return all(h.exact for h in self.joints)

    def as_float(self):
        return Linkage([h.as_float() for h in self.joints])

    def cyclic_shift(self, k):
        """Relabel so that joint ``k+1`` becomes the first one."""
        k %= 6
        return Linkage(self.joints[k:] + self.joints[:k])

    def with_orientation(self, signs):
        return Linkage([h if s > 0 else h.reversed() for h, s in zip(self.joints, signs)])

    def to_json(self):
        from .io import linkage_to_json

        return linkage_to_json(self)


def _factor(t: ConfigParam, h: Line, sign=-1):
    """``t + sign*h``, evaluated to 1 at infinity."""
    if t.is_infinite:
        return DualQuaternion.scalar(1, h.exact)
    one = DualQuaternion.scalar(t.num, h.exact and not isinstance(t.num, float))
    return one + h if sign > 0 else one - h


def _coerce_config(tau):
    if isinstance(tau, SymConfiguration):
        return tau.expand()
    if isinstance(tau, Configuration):
        return tau
    ts = list(tau)
    if len(ts) == 3:
        return SymConfiguration(ts).expand()
    return Configuration(ts)


def closure_product(L: Linkage, tau) -> DualQuaternion:
    """``(t1-h1)(t2-h2)...(t6-h6)`` with infinite parameters evaluated to 1."""
    tau = _coerce_config(tau)
    p = _factor(tau.t[0], L[0])
    for t, h in zip(tau.t[1:], L.joints[1:]):
        p = p * _factor(t, h)
    return p


def lambda_sign(L: Linkage, tau) -> Optional[int]:
    """Sign relating the two triple products of a symmetric configuration.

    On a closing symmetric configuration
    ``(t1-h1)(t2-h2)(t3-h3) == lam * (t3+h6)(t2+h5)(t1+h4)`` with ``lam = +-1``.
    Returns ``None`` when the two sides are not proportional.
    """
    tau = _coerce_config(tau)
    if not tau.is_symmetric():
        return None
    t1, t2, t3 = tau.t[:3]
    left = _factor(t1, L[0]) * _factor(t2, L[1]) * _factor(t3, L[2])
    right = _factor(t3, L[5], +1) * _factor(t2, L[4], +1) * _factor(t1, L[3], +1)
    plus = max(abs(x - y) for x, y in zip(left.c, right.c))
    minus = max(abs(x + y) for x, y in zip(left.c, right.c))
    scale = max(max(abs(x) for x in left.c), max(abs(x) for x in right.c))
    if scale == 0:
        return None
    exact = L.exact and not any(isinstance(p.num, float) for p in tau.t)
    tol = 0 if exact else RESIDUAL_TOL * float(scale)
    if plus <= tol:
        return 1
    if minus <= tol:
        return -1
    return None


def closure_residual(L: Linkage, tau, tol=RESIDUAL_TOL):
    """Return ``(lambda_sign, residual)`` for a configuration.

    ``residual`` is the largest absolute non-scalar coordinate of the
    closure product divided by its largest absolute coordinate; it is an
    exact rational when linkage and configuration are exact. ``lambda_sign``
    is only reported for symmetric configurations that close.
    """
    tau = _coerce_config(tau)
    p = closure_product(L, tau)
    scale = max(abs(x) for x in p.c)
    if scale == 0:
        raise ClosureError("degenerate configuration: closure product vanishes")
    residual = max(abs(x) for x in p.c[1:]) / scale
    exact = not isinstance(residual, float)
    closes = residual == 0 if exact else residual <= tol
    sign = lambda_sign(L, tau) if closes and tau.is_symmetric() else None
    return sign, residual


def transform_by_configuration(L: Linkage, tau, tol=RESIDUAL_TOL) -> Linkage:
    """Move the axes into the pose given by ``tau``.

    The link between ``h6`` and ``h1`` is held fixed; axis ``i`` is carried
    by the cumulative rotation ``r1 ... r_{i-1}`` with ``r_j = t_j - h_j``.
    """
    tau = _coerce_config(tau)
    _, residual = closure_residual(L, tau, tol)
    exact = not isinstance(residual, float)
    if (exact and residual != 0) or (not exact and residual > tol):
        raise ClosureError(f"configuration does not close (residual {float(residual):.3e})")
    float_mode = not exact
    joints = [L[i].as_float() if float_mode else L[i] for i in range(6)]
    out = [joints[0]]
    acc = None
    for i in range(1, 6):
        r = _factor(tau.t[i - 1], joints[i - 1])
        if float_mode:
            r = r.as_float()
        acc = r if acc is None else acc * r
        out.append(act_on_line(acc, joints[i]))
    if float_mode:
        out = [_renormalize(h) for h in out]
    return Linkage(out)


def _renormalize(h: Line) -> Line:
    """Project a float line back onto ``|p| = 1, p.m = 0``."""
    p = h.direction
    m = h.moment
    n = sum(x * x for x in p) ** 0.5
    p = tuple(x / n for x in p)
    m = tuple(x / n for x in m)
    pm = sum(x * y for x, y in zip(p, m))
    m = tuple(y - pm * x for x, y in zip(p, m))
    return Line.from_plucker(p, m)


def parallel_pairing(L: Linkage, tol=None) -> Optional[Pairing]:
    """First cyclic shift under which ``h1||h4, h2||h3, h5||h6`` holds.

    Anti-parallel axes count as parallel. Exact linkages are tested exactly
    unless ``tol`` is given.
    """
    if tol is None and not L.exact:
        tol = FLOAT_TOL
    for shift in range(6):
        pairs = tuple(
            tuple(sorted(((a - 1 + shift) % 6 + 1, (b - 1 + shift) % 6 + 1)))
            for a, b in PARALLEL_PATTERN
        )
        if all(_parallel(L[a - 1], L[b - 1], tol) for a, b in pairs):
            return Pairing(shift, pairs)
    return None


def _parallel(g, h, tol):
    c = cross3(g.direction, h.direction)
    if tol is None:
        return all(x == 0 for x in c)
    return max(abs(float(x)) for x in c) <= tol


def link_parameters(L: Linkage):
    """Dual angles ``<h_i, h_{i+1}>`` of the six links (cyclically)."""
    out = []
    for i in range(6):
        a, b = L[i], L[(i + 1) % 6]
        if a.same_axis(b):
            raise LinkageError(f"joints {i + 1} and {(i + 1) % 6 + 1} are identical")
        out.append(cross_inner(a, b)[1])
    return out
