"""Row reduction over F_p.

Dense rows are lists of residues; sparse rows are dicts from a hashable
column label to a nonzero residue.
"""

from __future__ import annotations

from typing import Callable, Hashable, Optional


def rref(rows, ncols: int, p: int):
    """Reduced row-echelon form of a dense matrix over F_p.

    Returns ``(basis, pivots)``: the nonzero rows of the RREF (pivot entries
    equal to 1, pivot columns increasing) and their pivot columns.
    """
    m = [[v % p for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        row = [v * inv % p for v in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], tuple(pivots)


def rank(rows, ncols: int, p: int) -> int:
    return len(rref(rows, ncols, p)[1])


def rowspace_contains(basis, pivots, vec, p: int) -> bool:
    """Whether ``vec`` lies in the row space of an RREF ``(basis, pivots)``."""
    v = [x % p for x in vec]
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return not any(v)


class SparseEchelon:
    """Incremental semi-echelon basis of sparse rows.

    The lead of a row is its column with the smallest ``key``.  Each stored
    row has lead coefficient 1 and a lead no other stored row shares.
    """

    def __init__(self, p: int, key: Callable[[Hashable], object]):
        self.p = p
        self.key = key
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        """Reduce ``row`` until its lead is not a stored lead (mutates ``row``)."""
        p, key, rows = self.p, self.key, self.rows
        while row:
            lead = min(row, key=key)
            piv = rows.get(lead)
            if piv is None:
                return row
            c = row[lead]
            for col, v in piv.items():
                nv = (row.get(col, 0) - c * v) % p
                if nv:
                    row[col] = nv
                else:
                    del row[col]
        return row

    def add(self, row: dict) -> Optional[Hashable]:
        """Insert a row; return its new lead, or None if it was dependent."""
        row = self.reduce(dict(row))
        if not row:
            return None
        lead = min(row, key=self.key)
        inv = pow(row[lead], -1, self.p)
        if inv != 1:
            row = {col: v * inv % self.p for col, v in row.items()}
        self.rows[lead] = row
        return lead
