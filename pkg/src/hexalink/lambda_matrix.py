"""The lambda-matrix of a 6R linkage and its rank.

Row ``i`` holds the coefficients of the ``i``-th cyclic form of the
closure condition (with ``lambda = +1``) against the monomial vector
``X = [t1*t2, t1*t3, t2*t3, t3, t2, t1, 1]``. This sign convention
is kept; the direct expansion of ``left - right`` is the negation of each
row, so both have the same null space.
"""
from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from . import _kernels
from .algebra import DualQuaternion, format_scalar
from .linkage import Linkage

__all__ = [
    "LambdaMatrix",
    "GVector",
    "AdvisoryWarning",
    "build_lambda_matrix",
    "lambda_rank",
    "monomials",
    "write_real_csv",
    "MONOMIAL_EXPONENTS",
]

# exponents of (t1, t2, t3) for each column of X
MONOMIAL_EXPONENTS = (
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
    (0, 0, 1),
    (0, 1, 0),
    (1, 0, 0),
    (0, 0, 0),
)


class AdvisoryWarning(UserWarning):
    """Rank computed in floating point; classification is advisory only."""


def monomials(t1, t2, t3):
    return [t1 * t2, t1 * t3, t2 * t3, t3, t2, t1, t1 * 0 + 1]


@dataclass(frozen=True)
class GVector:
    g1: DualQuaternion
    g2: DualQuaternion
    g3: DualQuaternion

    def __iter__(self):
        return iter((self.g1, self.g2, self.g3))


class LambdaMatrix:
    """6x7 matrix of dual quaternions and its 48x7 real form."""

    __slots__ = ("rows", "linkage", "_real")

    def __init__(self, rows, linkage=None):
        self.rows = tuple(tuple(r) for r in rows)
        self.linkage = linkage
        self._real = None

    @property
    def exact(self):
        return all(e.exact for r in self.rows for e in r)

    @property
    def real_form(self):
        """48x7 nested list; row ``8*i + k`` is coordinate ``k`` of row ``i``."""
        if self._real is None:
            self._real = [
                [self.rows[i][col].c[k] for col in range(7)] for i in range(6) for k in range(8)
            ]
        return self._real

    def g(self):
        r = self.rows[0]
        return GVector(r[2], r[1], r[0])

    def row(self, i):
        """1-based row ``M_i`` as a tuple of 7 dual quaternions."""
        return self.rows[i - 1]

    def combine(self, coeffs):
        """Real linear combination of the six dual-quaternion rows."""
        zero = self.rows[0][0] * 0
        out = [zero] * 7
        for a, r in zip(coeffs, self.rows):
            if a == 0:
                continue
            out = [o + e * a for o, e in zip(out, r)]
        return out

    def contract(self, t1, t2, t3):
        """``M X`` at a finite point, as six dual quaternions."""
        x = monomials(t1, t2, t3)
        res = []
        for r in self.rows:
            acc = r[0] * x[0]
            for e, xv in zip(r[1:], x[1:]):
                acc = acc + e * xv
            res.append(acc)
        return res


def build_lambda_matrix(L: Linkage) -> LambdaMatrix:
    h = (None,) + tuple(L.joints)

    def p(*idx):
        return reduce(lambda a, b: a * b, (h[i] for i in idx))

    g1, g2, g3 = h[1] + h[4], h[2] + h[5], h[3] + h[6]
    rows = [
        (g3, g2, g1, p(5, 4) - p(1, 2), p(6, 4) - p(1, 3), p(6, 5) - p(2, 3), p(6, 5, 4) + p(1, 2, 3)),
        (g3, g2, g1, p(1, 5) - p(2, 4), p(1, 6) - p(3, 4), p(6, 5) - p(2, 3), p(1, 6, 5) + p(2, 3, 4)),
        (g3, g2, g1, p(2, 1) - p(4, 5), p(1, 6) - p(3, 4), p(2, 6) - p(3, 5), p(2, 1, 6) + p(3, 4, 5)),
        (g3, g2, g1, p(2, 1) - p(4, 5), p(3, 1) - p(4, 6), p(3, 2) - p(5, 6), p(3, 2, 1) + p(4, 5, 6)),
        (g3, g2, g1, p(4, 2) - p(5, 1), p(4, 3) - p(6, 1), p(3, 2) - p(5, 6), p(4, 3, 2) + p(5, 6, 1)),
        (g3, g2, g1, p(5, 4) - p(1, 2), p(4, 3) - p(6, 1), p(5, 3) - p(6, 2), p(5, 4, 3) + p(6, 1, 2)),
    ]
    return LambdaMatrix(rows, L)


def _integer_rows(real):
    out = []
    for row in real:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
        if any(ints):
            out.append(ints)
    return out


def exact_rank(matrix) -> int:
    """Exact rank of a rational matrix (nested lists)."""
    return _kernels.bareiss_rank(_integer_rows(matrix))


def lambda_rank(M: LambdaMatrix, mode="exact", tol=1e-9) -> int:
    """Rank of the 48x7 real form.

    ``mode="exact"`` uses fraction-free elimination and needs rational
    entries. ``mode="tol"`` counts singular values above ``tol`` times the
    largest one and emits an :class:`AdvisoryWarning`.
    """
    if mode == "exact":
        if not M.exact:
            raise ValueError("exact rank needs rational entries")
        return exact_rank(M.real_form)
    if mode in ("tol", "tolerance", "float"):
        warnings.warn("floating-point rank; classification is advisory", AdvisoryWarning, stacklevel=2)
        a = np.array(M.real_form, dtype=float)
        s = np.linalg.svd(a, compute_uv=False)
        if s.size == 0 or s[0] == 0:
            return 0
        return int(np.sum(s > tol * s[0]))
    raise ValueError(f"unknown rank mode {mode!r}")


def write_real_csv(M: LambdaMatrix, fh=None) -> str:
    """Row-major CSV of the real form; rationals as ``p/q``. Returns the text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in M.real_form:
        w.writerow([format_scalar(x) for x in row])
    text = buf.getvalue()
    if fh is not None:
        if isinstance(fh, str):
            with open(fh, "w") as f:
                f.write(text)
        else:
            fh.write(text)
    return text
