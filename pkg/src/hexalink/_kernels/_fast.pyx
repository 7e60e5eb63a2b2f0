# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_pure``."""


def dq_mul(tuple a, tuple b):
    a0, a1, a2, a3, a4, a5, a6, a7 = a
    b0, b1, b2, b3, b4, b5, b6, b7 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        (a0 * b4 - a1 * b5 - a2 * b6 - a3 * b7)
        + (a4 * b0 - a5 * b1 - a6 * b2 - a7 * b3),
        (a0 * b5 + a1 * b4 + a2 * b7 - a3 * b6)
        + (a4 * b1 + a5 * b0 + a6 * b3 - a7 * b2),
        (a0 * b6 - a1 * b7 + a2 * b4 + a3 * b5)
        + (a4 * b2 - a5 * b3 + a6 * b0 + a7 * b1),
        (a0 * b7 + a1 * b6 - a2 * b5 + a3 * b4)
        + (a4 * b3 + a5 * b2 - a6 * b1 + a7 * b0),
    )


def dq_mul_f64(tuple a, tuple b):
    cdef double a0, a1, a2, a3, a4, a5, a6, a7
    cdef double b0, b1, b2, b3, b4, b5, b6, b7
    a0, a1, a2, a3, a4, a5, a6, a7 = a
    b0, b1, b2, b3, b4, b5, b6, b7 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        (a0 * b4 - a1 * b5 - a2 * b6 - a3 * b7)
        + (a4 * b0 - a5 * b1 - a6 * b2 - a7 * b3),
        (a0 * b5 + a1 * b4 + a2 * b7 - a3 * b6)
        + (a4 * b1 + a5 * b0 + a6 * b3 - a7 * b2),
        (a0 * b6 - a1 * b7 + a2 * b4 + a3 * b5)
        + (a4 * b2 - a5 * b3 + a6 * b0 + a7 * b1),
        (a0 * b7 + a1 * b6 - a2 * b5 + a3 * b4)
        + (a4 * b3 + a5 * b2 - a6 * b1 + a7 * b0),
    )


def bareiss_rank(rows):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows, ncols, rank, col, r, c, piv
    cdef list row, prow
    cdef object p, f, prev
    if not m:
        return 0
    nrows = len(m)
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if m[r][col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        p = prow[col]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f == 0:
                for c in range(col + 1, ncols):
                    row[c] = (p * row[c]) // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (p * row[c] - f * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
