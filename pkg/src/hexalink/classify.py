"""Rank-based classification of angle-symmetric 6R linkages."""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import DualQuaternion, Line, LineError, format_scalar
from .lambda_matrix import (
    MONOMIAL_EXPONENTS,
    AdvisoryWarning,
    LambdaMatrix,
    build_lambda_matrix,
    lambda_rank,
)
from .linkage import ClosureError, Linkage, Pairing, parallel_pairing
from .motionpoly import MotionPolynomial, RevoluteFactor
from .polys import affine_factors, bivariate_gcd, mdeg, mtrim, resultant_linear

__all__ = [
    "ClassificationError",
    "ClassificationResult",
    "LinearRelation",
    "classify",
    "recover_symmetry_line",
    "find_linear_relations",
    "recover_cubic_parametrization",
    "row_basis",
    "trilinear_forms",
    "LINE_SYMMETRIC",
    "PARALLEL_PROPERTY",
    "CUBIC_TYPE",
    "UNDETERMINED",
]

LINE_SYMMETRIC = "LineSymmetric"
PARALLEL_PROPERTY = "ParallelProperty"
CUBIC_TYPE = "CubicPolynomialType"
UNDETERMINED = "Undetermined"


class ClassificationError(ValueError):
    """A recovery step failed or its precondition does not hold."""


@dataclass(frozen=True)
class LinearRelation:
    """``b*t_a + c*t_b + d == 0`` on the angle-symmetric curve (1-based ``vars``)."""

    b: Fraction
    c: Fraction
    d: Fraction
    vars: tuple

    def __post_init__(self):
        if self.b == 0 or self.c == 0:
            raise ValueError("linear relation needs b*c != 0")

    def solve_second(self, x):
        """Value of the second variable given the first."""
        return -(self.b * x + self.d) / self.c

    def normalized(self):
        return LinearRelation(self.b / self.b, self.c / self.b, self.d / self.b, self.vars)


@dataclass
class ClassificationResult:
    rank: int
    family: str
    axis: Optional[Line] = None
    pairing: Optional[Pairing] = None
    pairs: Optional[tuple] = None
    reason: Optional[str] = None
    notes: list = field(default_factory=list)

    def to_json(self):
        data = {}
        if self.axis is not None:
            data["axis"] = {
                "primal": [format_scalar(x) for x in self.axis.direction],
                "dual": [format_scalar(x) for x in self.axis.moment],
            }
        if self.pairing is not None:
            data.update(self.pairing.to_json())
        if self.pairs is not None:
            data["pairs"] = [[format_scalar(a), format_scalar(b)] for a, b in self.pairs]
        if self.reason is not None:
            data["reason"] = self.reason
        if self.notes:
            data["notes"] = list(self.notes)
        return {"rank": self.rank, "family": self.family, "data": data}


# ------------------------------------------------------------ line symmetry

def _conjugates_to(q, h, target, exact):
    img = q * h * q.inverse()
    if exact:
        return img == target
    return max(abs(float(x) - float(y)) for x, y in zip(img.c, target.c)) <= 1e-9


def recover_symmetry_line(L: Linkage) -> Line:
    """Symmetry line ``l`` with ``h_{i+3} = l h_i l^-1``, from a ``g_i`` with nonzero primal part.

    Raises :class:`ClassificationError` if every ``g_i`` is primally zero
    or the symmetry does not verify.
    """
    exact = L.exact
    gs = [L[i] + L[i + 3] for i in range(3)]
    candidates = [g for g in gs if any(x != 0 for x in g.primal_vector)]
    if not exact:
        candidates = [g for g in gs if max(abs(float(x)) for x in g.primal_vector) > 1e-9]
    if not candidates:
        raise ClassificationError("all g_i have zero primal part (planar degenerate linkage)")
    for g in candidates:
        # conjugation by g equals conjugation by the normalized line
        if not all(_conjugates_to(g, L[i], L[i + 3], exact) for i in range(3)):
            continue
        beta = g.norm()
        root = beta.sqrt()
        axis = g * root.inverse()
        c = list(axis.c)
        c[0] = c[0] * 0
        c[4] = c[4] * 0
        try:
            return Line(c)
        except LineError as exc:
            raise ClassificationError(f"normalized symmetry element is not a line: {exc}") from None
    raise ClassificationError("linkage is not line symmetric")


# ------------------------------------------------------------ elimination

def row_basis(M: LambdaMatrix):
    """Reduced row echelon basis of the exact real form (list of 7-vectors)."""
    m = [[Fraction(x) for x in r] for r in M.real_form]
    m = [r for r in m if any(r)]
    rank = 0
    for col in range(7):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [x / pv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return m[:rank]


def trilinear_forms(M: LambdaMatrix):
    """Independent polynomials in (t1, t2, t3) spanning the rows of ``M`` against ``X``."""
    return [mtrim(dict(zip(MONOMIAL_EXPONENTS, row))) for row in row_basis(M)]


def _project(poly, var):
    keep = [i for i in range(3) if i != var]
    return {(e[keep[0]], e[keep[1]]): c for e, c in poly.items()}


def _eliminate(forms, var):
    """Gcd of all pairwise resultants eliminating ``var`` (a bivariate polynomial)."""
    polys = []
    for i, f in enumerate(forms):
        if mdeg(f, var) <= 0:
            polys.append(f)
        for g in forms[i + 1:]:
            r = resultant_linear(f, g, var)
            if r:
                polys.append(r)
    G = {}
    for p in polys:
        G = bivariate_gcd(G, _project(p, var))
        if len(G) == 1 and list(G) == [(0, 0)]:
            break
    return G


def find_linear_relations(M: LambdaMatrix, rank=None):
    """Affine relations between pairs of joint parameters on the curve.

    Eliminates each variable in turn by resultants of the trilinear forms,
    takes the gcd and extracts factors ``b*t_a + c*t_b + d`` with ``bc != 0``.
    Returns a list of :class:`LinearRelation` for the pairs (1,2), (1,3), (2,3).
    """
    if not M.exact:
        raise ClassificationError("linear relations need exact scalars")
    if rank is None:
        rank = lambda_rank(M)
    if rank != 4:
        raise ClassificationError(f"linear relations need rank 4, got {rank}")
    forms = trilinear_forms(M)
    out = []
    for var, pair in ((2, (1, 2)), (1, (1, 3)), (0, (2, 3))):
        G = _eliminate(forms, var)
        bideg = (max((e[0] for e in G), default=-1), max((e[1] for e in G), default=-1))
        try:
            facs = affine_factors(G)
        except ValueError:
            facs = []
        if not facs:
            raise ClassificationError(
                f"no affine relation between t{pair[0]} and t{pair[1]} (gcd bidegree {bideg})"
            )
        out.extend(LinearRelation(b, c, d, pair) for b, c, d in facs)
    return out


def _revolute_identity(L: Linkage, pairs):
    """Check ``R1 R2 R3 == R6 R5 R4`` with ``b_{i+3} = -b_i``."""
    left = right = None
    for i in range(3):
        a, b = pairs[i]
        Ri = RevoluteFactor(a, b, L[i]).poly()
        left = Ri if left is None else left * Ri
    for i in (2, 1, 0):
        a, b = pairs[i]
        Rj = RevoluteFactor(a, -b, L[i + 3]).poly()
        right = Rj if right is None else right * Rj
    return left == right


def recover_cubic_parametrization(L: Linkage, gauge=(0, 1)):
    """``(a_i, b_i)`` with ``t_i = (t - a_i)/b_i`` on the curve of a rank-4 linkage.

    The parameter is fixed by ``(a_1, b_1) = gauge``. The motion polynomial
    identity is verified before returning.
    """
    if not L.exact:
        raise ClassificationError("cubic parametrization needs exact scalars")
    M = build_lambda_matrix(L)
    rank = lambda_rank(M)
    if rank != 4:
        raise ClassificationError(f"cubic parametrization needs rank 4, got {rank}")
    rels = find_linear_relations(M, rank)
    a1, b1 = Fraction(gauge[0]), Fraction(gauge[1])
    r12 = [r for r in rels if r.vars == (1, 2)]
    r13 = [r for r in rels if r.vars == (1, 3)]
    for p in r12:
        for q in r13:
            # t1 = (t - a1)/b1 ; t_k = -(b t1 + d)/c = (t - a_k)/b_k
            pairs = [(a1, b1)]
            for rel in (p, q):
                bk = -rel.c * b1 / rel.b
                ak = a1 - rel.d * b1 / rel.b
                pairs.append((ak, bk))
            if _revolute_identity(L, pairs):
                return tuple(pairs)
    raise ClassificationError("motion polynomial identity R1R2R3 = R6R5R4 does not verify")


# ------------------------------------------------------------ classification

def classify(L: Linkage, seed=0) -> ClassificationResult:
    """Decide the family of an angle-symmetric linkage from its lambda-matrix rank."""
    M = build_lambda_matrix(L)
    if L.exact:
        rank = lambda_rank(M)
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AdvisoryWarning)
            rank = lambda_rank(M, "tol")
    notes = [] if L.exact else ["float input: classification is advisory"]
    if rank == 2:
        try:
            axis = recover_symmetry_line(L)
        except ClassificationError as exc:
            return ClassificationResult(rank, UNDETERMINED, reason=f"rank 2 but {exc}", notes=notes)
        return ClassificationResult(rank, LINE_SYMMETRIC, axis=axis, notes=notes)
    if rank == 3:
        pairing = parallel_pairing(L)
        if pairing is not None:
            return ClassificationResult(rank, PARALLEL_PROPERTY, pairing=pairing, notes=notes)
        pairing = _parallel_after_motion(L, seed)
        if pairing is not None:
            notes.append("parallel property found after moving to a curve point")
            return ClassificationResult(rank, PARALLEL_PROPERTY, pairing=pairing, notes=notes)
        return ClassificationResult(
            rank, UNDETERMINED, reason="rank 3 without parallel pairing", notes=notes
        )
    if rank == 4:
        if not L.exact:
            return ClassificationResult(rank, UNDETERMINED, reason="rank 4 needs exact input", notes=notes)
        try:
            pairs = recover_cubic_parametrization(L)
        except ClassificationError as exc:
            return ClassificationResult(rank, UNDETERMINED, reason=str(exc), notes=notes)
        return ClassificationResult(rank, CUBIC_TYPE, pairs=pairs, notes=notes)
    return ClassificationResult(
        rank, UNDETERMINED, reason="no one-dimensional angle-symmetric motion certified", notes=notes
    )


def _parallel_after_motion(L: Linkage, seed):
    """Move to a random traced curve point and test the parallel property there."""
    from .linkage import transform_by_configuration
    from .sampler import SamplerError, trace_configuration_curve

    rng = random.Random(seed)
    grid = [Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(6)]
    try:
        points = trace_configuration_curve(L, grid)
    except SamplerError:
        return None
    finite = [p for p in points if not any(t.is_infinite for t in p.t)]
    if not finite:
        return None
    tau = finite[rng.randrange(len(finite))]
    try:
        moved = transform_by_configuration(L.as_float(), tau.expand(), tol=1e-8)
    except ClosureError:
        return None
    return parallel_pairing(moved, tol=1e-7)
