"""Dense linear algebra over F_p on numpy int64 arrays.

Only used by the truncated oracles, so it deliberately shares nothing with
the Gröbner engine.
"""

from __future__ import annotations

import numpy as np


def rref(A, p: int):
    """Reduced row echelon form of A mod p; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        col = R[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            R[mask] = (R[mask] - np.outer(col[mask], R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis (as rows) of {v : A v = 0} over F_p."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = (-R[row, f]) % p
    return basis


def same_span(A, B, p: int) -> bool:
    """True iff the row spaces of A and B coincide over F_p."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    ra, rb = rank(A, p), rank(B, p)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(np.vstack([A, B]), p) == ra


def restrict_span(rows, keep, p: int):
    """Basis of span(rows) ∩ {vectors supported on ``keep``}.

    Rows are sparse dicts column -> value.  Columns outside ``keep`` are
    eliminated first, so echelon rows whose pivot lies in ``keep`` have no
    support outside it and span the intersection.
    """
    keep = set(keep)

    def rank_of(c):
        return (c not in keep, c)

    pivots = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            c = max(r, key=rank_of)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[c]
            for k, v in piv.items():
                s = (r.get(k, 0) - f * v) % p
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
    return [row for c, row in pivots.items() if c in keep]
