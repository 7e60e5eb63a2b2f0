"""Synthesis of angle-symmetric 6R linkages of the three families."""
from __future__ import annotations

import random
from fractions import Fraction

from .algebra import (
    DualQuaternion,
    Line,
    act_on_line,
    cross3,
    dot3,
)
from .linkage import Linkage, LinkageError
from .motionpoly import RevoluteFactor, linkage_from_cubic

__all__ = [
    "ConstructionError",
    "construct_parallel",
    "construct_line_symmetric",
    "construct_cubic_type",
    "random_rational",
    "random_unit_vector",
    "random_line",
    "random_displacement",
    "random_parallel",
    "random_line_symmetric",
    "random_cubic_type",
    "example1",
    "EXAMPLE1_INPUTS",
    "EXAMPLE1_OUTPUTS",
]

BOUND = 20


class ConstructionError(ValueError):
    """A construction precondition does not hold."""


def construct_parallel(u: Line, h1: Line, h2: Line, h3: Line, r) -> Linkage:
    """Angle-symmetric linkage with the parallel property.

    ``h1`` must be perpendicular to ``u`` in direction; ``h2`` and ``h3``
    parallel and not perpendicular to ``u``. Then ``h4 = -u h1 u + r e u``,
    ``h5 = -u h2 u`` and ``h6 = -u h3 u``.
    """
    if dot3(h1.direction, u.direction) != 0:
        raise ConstructionError("step II: h1 is not perpendicular to u")
    if any(x != 0 for x in cross3(h2.direction, h3.direction)):
        raise ConstructionError("step III: h2 and h3 are not parallel")
    if dot3(h2.direction, u.direction) == 0:
        raise ConstructionError("step III: h2 is perpendicular to u")
    eps_u = DualQuaternion.pure((0, 0, 0), u.direction)
    h4 = Line.from_dq(-(u * h1 * u) + eps_u * r)
    h5 = Line.from_dq(-(u * h2 * u))
    h6 = Line.from_dq(-(u * h3 * u))
    try:
        return Linkage([h1, h2, h3, h4, h5, h6])
    except LinkageError as exc:
        raise ConstructionError(f"step VI: {exc}") from None


def construct_line_symmetric(l: Line, h1: Line, h2: Line, h3: Line) -> Linkage:
    """Linkage with ``h_{i+3} = -l h_i l``, the half-turn image of ``h_i`` about ``l``."""
    hs = [h1, h2, h3]
    images = []
    for n, h in enumerate(hs, 1):
        g = Line.from_dq(-(l * h * l))
        # h on l is fixed; h meeting l at a right angle is only reversed, which is allowed
        if g == h:
            raise ConstructionError(f"h{n} is fixed by the half-turn about l")
        images.append(g)
    try:
        return Linkage(hs + images)
    except LinkageError as exc:
        raise ConstructionError(str(exc)) from None


def construct_cubic_type(pairs, axes) -> Linkage:
    """Linkage of cubic polynomial type from ``(a_i, b_i)`` and three axes."""
    pairs = [tuple(p) for p in pairs]
    if len(pairs) != 3 or len(axes) != 3:
        raise ValueError("need three (a, b) pairs and three axes")
    factors = [RevoluteFactor(a, b, h) for (a, b), h in zip(pairs, axes)]
    return linkage_from_cubic(*factors)


# ---------------------------------------------------------------- sampling

def random_rational(rng, bound=BOUND, nonzero=False):
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x != 0 or not nonzero:
            return x


def random_unit_vector(rng, bound=BOUND):
    """Rational point on the unit sphere (inverse stereographic projection)."""
    s, t = random_rational(rng, bound), random_rational(rng, bound)
    n = 1 + s * s + t * t
    v = (2 * s / n, 2 * t / n, (1 - s * s - t * t) / n)
    perm = rng.sample(range(3), 3)
    signs = [rng.choice((1, -1)) for _ in range(3)]
    return tuple(v[perm[k]] * signs[k] for k in range(3))


def _line(direction, point):
    return Line.from_plucker(direction, cross3(point, direction))


def _point(rng, bound=BOUND):
    return tuple(random_rational(rng, bound) for _ in range(3))


def random_line(rng, bound=BOUND):
    return _line(random_unit_vector(rng, bound), _point(rng, bound))


def random_displacement(rng, bound=BOUND):
    """Rational rigid displacement as a dual quaternion (not normalized)."""
    q = [Fraction(rng.randint(-bound, bound)) for _ in range(4)]
    while all(x == 0 for x in q):
        q = [Fraction(rng.randint(-bound, bound)) for _ in range(4)]
    rot = DualQuaternion.from_parts(q, (0, 0, 0, 0))
    t = DualQuaternion.pure((0, 0, 0), _point(rng, bound))
    return rot + (t * rot) * Fraction(1, 2)


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_parallel(seed=None, bound=BOUND, max_tries=100) -> Linkage:
    """Random instance of the parallel-property construction.

    Inputs are drawn in a frame where ``u`` is the x-axis and then moved by
    a random rational displacement.
    """
    rng = _rng(seed)
    for _ in range(max_tries):
        D = random_displacement(rng, bound)
        u = Line.from_plucker((1, 0, 0), (0, 0, 0))
        c, s = _pythagorean(rng, bound)
        h1 = _line((Fraction(0), c, s), _point(rng, bound))
        d = random_unit_vector(rng, bound)
        if d[0] == 0:
            continue
        h2 = _line(d, _point(rng, bound))
        sign = rng.choice((1, -1))
        h3 = _line(tuple(sign * x for x in d), _point(rng, bound))
        r = random_rational(rng, bound)
        try:
            moved = [act_on_line(D, h) for h in (u, h1, h2, h3)]
            return construct_parallel(*moved, r)
        except (ConstructionError, LinkageError):
            continue
    raise ConstructionError("could not draw a valid parallel-property linkage")


def _pythagorean(rng, bound):
    s = random_rational(rng, bound)
    n = 1 + s * s
    return (1 - s * s) / n, 2 * s / n


def random_line_symmetric(seed=None, bound=BOUND, max_tries=100):
    """Random line-symmetric linkage; returns ``(linkage, l)``."""
    rng = _rng(seed)
    for _ in range(max_tries):
        l = random_line(rng, bound)
        hs = [random_line(rng, bound) for _ in range(3)]
        try:
            return construct_line_symmetric(l, *hs), l
        except (ConstructionError, LinkageError):
            continue
    raise ConstructionError("could not draw a valid line-symmetric linkage")


def random_cubic_type(seed=None, bound=BOUND, max_tries=100):
    """Random cubic-polynomial-type linkage; returns ``(linkage, pairs)``."""
    from .motionpoly import MotionPolynomialError

    rng = _rng(seed)
    for _ in range(max_tries):
        pairs = [(random_rational(rng, bound), random_rational(rng, bound, nonzero=True)) for _ in range(3)]
        quads = {(a, abs(b)) for a, b in pairs}
        if len(quads) != 3:
            continue
        axes = [random_line(rng, bound) for _ in range(3)]
        try:
            return construct_cubic_type(pairs, axes), pairs
        except (MotionPolynomialError, LinkageError, ZeroDivisionError):
            continue
    raise ConstructionError("could not draw a valid cubic-type linkage")


# ---------------------------------------------------------------- example

def _ex_line(p, d):
    return Line.from_plucker([Fraction(x) for x in p], [Fraction(x) for x in d])


F = Fraction
EXAMPLE1_INPUTS = {
    "u": _ex_line((1, 0, 0), (0, 0, 0)),
    "h1": _ex_line((0, 1, 0), (F(-7, 11), 0, 0)),
    "h2": _ex_line((F(-3, 5), F(-4, 5), 0), (2, F(-3, 2), -1)),
    "h3": _ex_line((F(3, 5), F(4, 5), 0), (-2, F(3, 2), 2)),
    "r": F(14, 11),
}
EXAMPLE1_OUTPUTS = {
    "h4": _ex_line((0, -1, 0), (F(7, 11), 0, 0)),
    "h5": _ex_line((F(-3, 5), F(4, 5), 0), (2, F(3, 2), 1)),
    "h6": _ex_line((F(3, 5), F(-4, 5), 0), (-2, F(-3, 2), -2)),
}
del F


def example1() -> Linkage:
    """The parallel-property example built from its reference axes."""
    e = EXAMPLE1_INPUTS
    p = EXAMPLE1_OUTPUTS
    return Linkage([e["h1"], e["h2"], e["h3"], p["h4"], p["h5"], p["h6"]])
