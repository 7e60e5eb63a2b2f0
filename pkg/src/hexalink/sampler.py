"""Tracing the angle-symmetric configuration curve and exporting poses."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lambda_matrix import MONOMIAL_EXPONENTS, build_lambda_matrix
from .linkage import (
    ClosureError,
    ConfigParam,
    Linkage,
    SymConfiguration,
    closure_residual,
    link_parameters,
    transform_by_configuration,
)

__all__ = [
    "SamplerError",
    "TracedPoint",
    "trace_configuration_curve",
    "trace_points",
    "export_poses",
    "format_poses",
    "POSE_HEADER",
]

POSE_HEADER = "# hexalink poses v1"
RESIDUAL_TOL = 1e-9
DEDUP_TOL = 1e-8


class SamplerError(RuntimeError):
    pass


@dataclass(frozen=True)
class TracedPoint:
    config: SymConfiguration
    grid_index: int
    residual: float


def _row_space(L: Linkage):
    """Basis of the row space of the real lambda-matrix, exact when possible."""
    M = build_lambda_matrix(L)
    if L.exact:
        from .classify import row_basis

        return row_basis(M), True
    a = np.array(M.real_form, dtype=float)
    _, s, vt = np.linalg.svd(a)
    r = int(np.sum(s > 1e-9 * s[0])) if s.size and s[0] > 0 else 0
    return [list(v) for v in vt[:r]], False


# Coefficients of a slice equation in the two free variables (u, v):
# index 0 -> u*v, 1 -> u, 2 -> v, 3 -> 1.
def _slice_rows(basis, slice_var, s):
    free = [i for i in range(3) if i != slice_var]
    rows = []
    for row in basis:
        c = [0 * s] * 4
        for coef, e in zip(row, MONOMIAL_EXPONENTS):
            if coef == 0:
                continue
            w = coef * s ** e[slice_var]
            eu, ev = e[free[0]], e[free[1]]
            c[{(1, 1): 0, (1, 0): 1, (0, 1): 2, (0, 0): 3}[(eu, ev)]] += w
        rows.append(c)
    return rows


def _independent(rows, exact):
    """Row-reduced independent subset of 4-vectors (exact rows stay rational)."""
    if exact:
        m = [list(r) for r in rows if any(x != 0 for x in r)]
        rank = 0
        for col in range(4):
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
    a = np.array(rows, dtype=float)
    if a.size == 0:
        return []
    _, sv, vt = np.linalg.svd(a)
    r = int(np.sum(sv > 1e-9 * sv[0])) if sv[0] > 0 else 0
    return [list(v) for v in vt[:r]]


def _kernel_candidate(rows, exact):
    """The single (u, v) solving three independent slice rows, or [] if inconsistent.

    The monomial vector (uv, u, v, 1) spans the kernel; infinite
    coordinates show up as a vanishing last entry.
    """
    if exact:
        pivots = [next(c for c in range(4) if r[c] != 0) for r in rows]
        free = next(c for c in range(4) if c not in pivots)
        k = [0] * 4
        k[free] = 1
        for r, p in zip(rows, pivots):
            k[p] = -r[free]
        zero = lambda x: x == 0  # noqa: E731
    else:
        _, _, vt = np.linalg.svd(np.array(rows, dtype=float).reshape(len(rows), 4), full_matrices=True)
        k = list(vt[-1])
        scale = max(abs(x) for x in k)
        k = [x / scale for x in k]
        zero = lambda x: abs(x) <= 1e-10  # noqa: E731
    if not zero(k[3]):
        u, v = k[1] / k[3], k[2] / k[3]
        return [(float(u), float(v))]
    if not zero(k[1]) and zero(k[2]):
        return [(None, float(k[0] / k[1]))]
    if zero(k[1]) and not zero(k[2]):
        return [(float(k[0] / k[2]), None)]
    if zero(k[1]) and zero(k[2]):
        return [(None, None)]
    return []


def _real_roots(coeffs_desc):
    c = np.array(coeffs_desc, dtype=float)
    nz = np.nonzero(np.abs(c) > 1e-14 * np.max(np.abs(c)))[0]
    if nz.size == 0:
        return None
    c = c[nz[0]:]
    if c.size == 1:
        return []
    roots = np.roots(c)
    out = []
    for z in roots:
        if abs(z.imag) <= 1e-7 * max(1.0, abs(z)):
            x = z.real
            # Newton refinement
            dc = np.polyder(c)
            for _ in range(5):
                d = np.polyval(dc, x)
                if d == 0:
                    break
                step = np.polyval(c, x) / d
                x -= step
                if abs(step) <= 1e-12 * max(1.0, abs(x)):
                    break
            out.append(float(x))
    return out


def _slice_candidates(rows):
    """Candidate (u, v) pairs (floats or None for infinity) solving two bilinear rows."""
    f, g = rows[0], rows[1]
    # f = (f0 v + f1) u + (f2 v + f3); resultant in u:
    # (f0 v + f1)(g2 v + g3) - (f2 v + f3)(g0 v + g1)
    res = [
        f[0] * g[2] - f[2] * g[0],
        f[0] * g[3] + f[1] * g[2] - f[2] * g[1] - f[3] * g[0],
        f[1] * g[3] - f[3] * g[1],
    ]
    cands = []
    roots = _real_roots(res)
    if roots is None:
        return None
    for v in roots:
        cands.extend(_back_solve(rows, v))
    scale = max(abs(x) for x in res)
    if abs(res[0]) <= 1e-12 * scale:
        # resultant degree drop: v = infinity; leading rows a*u + b = 0
        a1, b1 = f[0], f[2]
        a2, b2 = g[0], g[2]
        for a, b in ((a1, b1), (a2, b2)):
            if abs(a) > 1e-12:
                cands.append((-b / a, None))
                break
    return cands


def _back_solve(rows, v):
    best = None
    for r in rows[:2]:
        A = r[0] * v + r[1]
        B = r[2] * v + r[3]
        if best is None or abs(A) > abs(best[0]):
            best = (A, B)
    A, B = best
    if abs(A) > 1e-12 * max(1.0, abs(B)):
        return [(-B / A, v)]
    if abs(B) <= 1e-12:
        return []
    return [(None, v)]


def trace_points(L: Linkage, grid, slice_var=3, tol=RESIDUAL_TOL):
    """Like :func:`trace_configuration_curve` but returns :class:`TracedPoint` records."""
    sv = slice_var - 1 if isinstance(slice_var, int) else int(str(slice_var).lstrip("t")) - 1
    if sv not in (0, 1, 2):
        raise ValueError("slice variable must be t1, t2 or t3")
    basis, exact = _row_space(L)
    if not 2 <= len(basis) <= 4:
        raise SamplerError(f"lambda-matrix rank {len(basis)} outside 2..4")
    Lf = L.as_float()
    free = [i for i in range(3) if i != sv]
    out = []
    for gi, s in enumerate(grid):
        s = Fraction(s) if exact and not isinstance(s, float) else (float(s) if not exact else Fraction(s))
        rows = _independent(_slice_rows(basis, sv, s), exact)
        if len(rows) == 3:
            cands = _kernel_candidate(rows, exact)
        elif len(rows) == 2:
            # a vanishing resultant means a whole component lies in the slice
            cands = _slice_candidates([[float(x) for x in r] for r in rows])
        else:
            cands = None
        if not cands:
            continue
        pts = []
        for u, v in cands:
            vals = [None] * 3
            vals[sv] = float(s)
            vals[free[0]], vals[free[1]] = u, v
            if any(x is not None and not np.isfinite(x) for x in vals):
                continue
            cfg = SymConfiguration([ConfigParam.of(x, exact=False) for x in vals], exact=False)
            try:
                sign, resid = closure_residual(Lf, cfg, tol)
            except ClosureError:
                continue
            if resid <= tol and sign == 1:
                pts.append(TracedPoint(cfg, gi, float(resid)))
        out.extend(_dedup(pts, free))
    return out


def _key(p, free):
    t = p.config.t
    return tuple(float("inf") if t[i].is_infinite else float(t[i].num) for i in free)


def _dedup(pts, free):
    kept = []
    for p in sorted(pts, key=lambda q: _key(q, free)):
        k = _key(p, free)
        if any(
            all((a == b) or (abs(a - b) <= DEDUP_TOL * max(1.0, abs(b))) for a, b in zip(k, _key(q, free)))
            for q in kept
        ):
            continue
        kept.append(p)
    return kept


def trace_configuration_curve(L: Linkage, grid, slice_var=3, tol=RESIDUAL_TOL):
    """Points of the angle-symmetric curve (with lambda = +1) on grid slices.

    For each grid value of the slice variable the lambda system becomes
    bilinear in the other two parameters. With two independent rows a
    resultant gives the second parameter and back-substitution the first;
    with three, the point is read off the one-dimensional kernel. Every
    candidate is re-verified on the closure condition. Points are ordered
    by grid index, then by the free parameters; infinite parameters are
    kept.
    """
    pts = trace_points(L, grid, slice_var, tol)
    if not pts:
        raise SamplerError("no real angle-symmetric motion found on grid")
    return [p.config for p in pts]


def _fmt(x):
    return f"{x + 0.0:.17g}"  # + 0.0 turns -0.0 into 0.0


def format_poses(L: Linkage, configs, tol=RESIDUAL_TOL) -> str:
    """Pose text: header, then per configuration ``t1 t2 t3`` and six axis rows."""
    lines = [POSE_HEADER]
    Lf = L.as_float()
    for cfg in configs:
        tau = cfg.expand() if isinstance(cfg, SymConfiguration) else cfg
        try:
            moved = transform_by_configuration(Lf, tau, tol)
        except ClosureError as exc:
            raise SamplerError(f"unverifiable configuration {cfg.to_json()}: {exc}") from None
        ts = ["inf" if t.is_infinite else _fmt(float(t.num)) for t in tau.t[:3]]
        lines.append(" ".join(ts))
        for h in moved:
            row = [float(x) for x in h.direction] + [float(x) for x in h.anchor]
            lines.append(" ".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def export_poses(L: Linkage, configs, path):
    """Write the pose file for ``configs`` to ``path``; returns the text."""
    text = format_poses(L, configs)
    with open(path, "w") as fh:
        fh.write(text)
    return text
