"""GF(2) linear algebra on int-packed rows.

A row is an int whose bit j is the coefficient of unknown j; the
right-hand side of an equation sits at bit ``ncols``.
"""

from __future__ import annotations


def rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form, pivots searched left to right.

    Returns (reduced rows, pivot columns); rows beyond the rank are dropped
    unless they are inconsistent (all-zero coefficients with rhs 1).
    """
    work = [r for r in rows if r]
    pivots = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        p = None
        for i in range(r, len(work)):
            if work[i] & bit:
                p = i
                break
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        pr = work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= pr
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work, pivots


def solve(rows: list[int], ncols: int) -> int | None:
    """Solve an augmented system; None if inconsistent.

    Free unknowns are set to 0, so among all solutions the returned one has
    the all-zero free-parameter vector.
    """
    red, pivots = rref(rows, ncols)
    rhs = 1 << ncols
    mask = rhs - 1
    for row in red[len(pivots):]:
        if row & rhs and not row & mask:
            return None
    x = 0
    for row, col in zip(red, pivots):
        if row & rhs:
            x |= 1 << col
    return x


def rank(rows: list[int], ncols: int) -> int:
    return len(rref([r & ((1 << ncols) - 1) for r in rows], ncols)[1])


def apply(rows: list[int], ncols: int, x: int) -> list[int]:
    """Matrix-vector product: the parity of row & x for each row (rhs ignored)."""
    mask = (1 << ncols) - 1
    return [bin(r & mask & x).count("1") & 1 for r in rows]
