"""Small exact polynomial arithmetic over the rationals.

Univariate polynomials are tuples of coefficients in ascending order with
no trailing zeros (the zero polynomial is ``()``). Multivariate
polynomials are dicts mapping exponent tuples to nonzero coefficients.
Only what elimination in three variables of low degree needs is here.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct

__all__ = [
    "utrim",
    "uadd",
    "usub",
    "umul",
    "uscale",
    "udivmod",
    "uexact_div",
    "umonic",
    "ugcd",
    "usqrt",
    "ueval",
    "udeg",
    "mtrim",
    "madd",
    "msub",
    "mmul",
    "mscale",
    "mdeg",
    "mcoeffs",
    "mfrom_coeffs",
    "msubs",
    "meval",
    "resultant_linear",
    "bivariate_gcd",
    "affine_factors",
]


# ----------------------------------------------------------------- univariate

def utrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def udeg(p):
    return len(utrim(p)) - 1


def uadd(p, q):
    n = max(len(p), len(q))
    return utrim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def usub(p, q):
    return uadd(p, tuple(-x for x in q))


def uscale(p, s):
    return utrim(x * s for x in p)


def umul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return utrim(out)


def udivmod(p, q):
    p, q = list(utrim(p)), utrim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(q[-1]) if not isinstance(q[-1], float) else q[-1]
    dq = len(q) - 1
    quot = [0] * max(len(p) - dq, 0)
    for k in range(len(p) - 1, dq - 1, -1):
        c = p[k] / lead
        if c == 0:
            continue
        quot[k - dq] = c
        for j in range(dq + 1):
            p[k - dq + j] -= c * q[j]
    return utrim(quot), utrim(p[:dq])


def uexact_div(p, q):
    quot, rem = udivmod(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quot


def umonic(p):
    p = utrim(p)
    if not p:
        return p
    lead = Fraction(p[-1])
    return tuple(Fraction(x) / lead for x in p)


def ugcd(p, q):
    """Monic gcd over the rationals (``()`` if both are zero)."""
    a, b = utrim(p), utrim(q)
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def ueval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def usqrt(p):
    """Polynomial square root over Q, or None if ``p`` is not a square."""
    from .algebra import exact_sqrt

    p = utrim(p)
    if not p:
        return ()
    if len(p) % 2 == 0:
        return None
    lead = exact_sqrt(Fraction(p[-1]))
    if lead is None:
        return None
    n = (len(p) - 1) // 2
    s = [Fraction(0)] * (n + 1)
    s[n] = lead
    # match coefficients from the top down
    for k in range(n - 1, -1, -1):
        idx = n + k
        acc = Fraction(p[idx])
        for i in range(k + 1, n):
            j = idx - i
            if k < j <= n:
                acc -= s[i] * s[j]
        s[k] = acc / (2 * lead)
    s = utrim(s)
    return s if umul(s, s) == p else None


# -------------------------------------------------------------- multivariate

def mtrim(p):
    return {e: c for e, c in p.items() if c != 0}


def madd(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return mtrim(out)


def mscale(p, s):
    return mtrim({e: c * s for e, c in p.items()})


def msub(p, q):
    return madd(p, mscale(q, -1))


def mmul(p, q):
    out = {}
    for (e1, c1), (e2, c2) in _iproduct(p.items(), q.items()):
        e = tuple(a + b for a, b in zip(e1, e2))
        out[e] = out.get(e, 0) + c1 * c2
    return mtrim(out)


def mdeg(p, var):
    return max((e[var] for e in p), default=-1)


def mcoeffs(p, var):
    """Split ``p`` by powers of ``var``: list indexed by degree of dicts (var exponent zeroed)."""
    d = mdeg(p, var)
    out = [dict() for _ in range(d + 1)]
    for e, c in p.items():
        k = e[var]
        e2 = tuple(0 if i == var else x for i, x in enumerate(e))
        out[k][e2] = c
    return out


def mfrom_coeffs(parts, var):
    out = {}
    for k, part in enumerate(parts):
        for e, c in part.items():
            e2 = tuple(k if i == var else x for i, x in enumerate(e))
            out[e2] = out.get(e2, 0) + c
    return mtrim(out)


def msubs(p, var, value):
    """Substitute a scalar for variable ``var`` (its exponent becomes 0)."""
    out = {}
    for e, c in p.items():
        e2 = tuple(0 if i == var else x for i, x in enumerate(e))
        out[e2] = out.get(e2, 0) + c * value ** e[var]
    return mtrim(out)


def meval(p, point):
    total = 0
    for e, c in p.items():
        term = c
        for x, k in zip(point, e):
            if k:
                term = term * x**k
        total += term
    return total


def resultant_linear(f, g, var):
    """Resultant with respect to ``var`` of two polynomials of degree <= 1 in it.

    ``Res(A v + B, C v + D) = A D - B C``; a polynomial free of ``var`` has
    resultant equal to itself against a linear one, and two ``var``-free
    polynomials give None (no elimination happens).
    """
    df, dg = mdeg(f, var), mdeg(g, var)
    if df > 1 or dg > 1:
        raise ValueError("resultant_linear needs degree <= 1 in the eliminated variable")
    if not f or not g:
        return {}
    if df <= 0 and dg <= 0:
        return None
    if df <= 0:
        return dict(f)
    if dg <= 0:
        return dict(g)
    fb, fa = mcoeffs(f, var)
    gd, gc = mcoeffs(g, var)
    return msub(mmul(fa, gd), mmul(fb, gc))


# --------------------------------------------------------------- bivariate
# A bivariate polynomial in (x, y) is a dict {(i, j): c}. Internally it is
# handled as a list over powers of y of univariate polynomials in x.

def _to_rows(p):
    dy = max((e[1] for e in p), default=-1)
    rows = [[] for _ in range(dy + 1)]
    for (i, j), c in p.items():
        r = rows[j]
        if len(r) <= i:
            r.extend([0] * (i + 1 - len(r)))
        r[i] += c
    return [utrim(r) for r in rows]


def _from_rows(rows):
    out = {}
    for j, r in enumerate(rows):
        for i, c in enumerate(r):
            if c != 0:
                out[(i, j)] = c
    return out


def _rows_trim(rows):
    rows = list(rows)
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _content(rows):
    g = ()
    for r in rows:
        g = ugcd(g, r)
        if len(g) == 1:
            break
    return g


def _prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` as polynomials in y over Q[x]."""
    a, b = _rows_trim(a), _rows_trim(b)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        shifted = [()] * (da - db) + [umul(la, c) for c in b]
        a = [usub(umul(lb, x), shifted[k]) for k, x in enumerate(a)]
        a = _rows_trim(a)
    return a


def bivariate_gcd(p, q):
    """Gcd of two polynomials in Q[x, y], normalized to a monic leading term."""
    a, b = _rows_trim(_to_rows(p)), _rows_trim(_to_rows(q))
    if not a:
        return _normalize(_from_rows(b))
    if not b:
        return _normalize(_from_rows(a))
    ca, cb = _content(a), _content(b)
    cont = ugcd(ca, cb)
    a = [uexact_div(r, ca) for r in a]
    b = [uexact_div(r, cb) for r in b]
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = _prem(a, b)
        if not r:
            break
        cr = _content(r)
        r = [uexact_div(x, cr) for x in r]
        a, b = b, r
    if b and len(b) == 1:
        g = [cont]
    else:
        g = [umul(cont, x) for x in b]
    return _normalize(_from_rows(g))


def _normalize(p):
    if not p:
        return p
    lead = p[max(p, key=lambda e: (e[1], e[0]))]
    return {e: Fraction(c) / lead for e, c in p.items()}


def affine_factors(p):
    """Factors ``b*x + c*y + d`` (with ``b*c != 0``) of a bivariate polynomial.

    Returns a list of ``(b, c, d)`` normalized to ``c == 1``. Supports
    degree <= 2 in ``y``, which covers resultants of trilinear forms.
    """
    rows = _rows_trim(_to_rows(p))
    if len(rows) < 2:
        return []
    cont = _content(rows)
    rows = [uexact_div(r, cont) for r in rows]
    dy = len(rows) - 1
    roots = []
    if dy == 1:
        g1, g0 = rows[1], rows[0]
        q, r = udivmod(uscale(g0, -1), g1)
        if not r:
            roots.append(q)
    elif dy == 2:
        g2, g1, g0 = rows[2], rows[1], rows[0]
        disc = usub(umul(g1, g1), uscale(umul(g2, g0), 4))
        s = usqrt(disc)
        if s is not None:
            for sgn in (1, -1):
                num = uadd(uscale(g1, -1), uscale(s, sgn))
                q, r = udivmod(num, uscale(g2, 2))
                if not r:
                    roots.append(q)
    else:
        raise ValueError(f"affine_factors supports degree <= 2 in y, got {dy}")
    out = []
    for rho in roots:
        # y = rho(x) = r0 + r1 x  <=>  -r1 x + y - r0 = 0
        if len(rho) > 2:
            continue
        r0 = rho[0] if len(rho) > 0 else Fraction(0)
        r1 = rho[1] if len(rho) > 1 else Fraction(0)
        if r1 == 0:
            continue
        f = (Fraction(-r1), Fraction(1), Fraction(-r0))
        if f not in out:
            out.append(f)
    return out
