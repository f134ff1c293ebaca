"""Sparse exact linear algebra over Q (reduced row echelon form)."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

Column = Dict[Hashable, Fraction]


def solve(columns: Sequence[Column], rhs: Optional[Column] = None
          ) -> Tuple[Optional[List[Fraction]], List[List[Fraction]]]:
    """Solve sum_j x_j * columns[j] = rhs.

    Returns ``(particular, nullspace)``; ``particular`` is None when the
    system is inconsistent.  Free variables are set to zero in the particular
    solution, and the nullspace basis has one vector per free column, in
    column order.
    """
    rhs = rhs or {}
    n = len(columns)
    rows: Dict[Hashable, Dict[int, Fraction]] = {}
    for j, col in enumerate(columns):
        for key, val in col.items():
            if val:
                rows.setdefault(key, {})[j] = Fraction(val)
    for key in rhs:
        rows.setdefault(key, {})
    # rhs is stored in column n
    for key, val in rhs.items():
        if val:
            rows[key][n] = Fraction(val)

    pending = list(rows.values())
    by_col: Dict[int, List[int]] = {}
    for r, row in enumerate(pending):
        for j in row:
            by_col.setdefault(j, []).append(r)

    pivots: Dict[int, Dict[int, Fraction]] = {}
    used = set()
    for j in range(n):
        cand = [r for r in by_col.get(j, ()) if r not in used and pending[r].get(j)]
        if not cand:
            continue
        r = min(cand, key=lambda q: len(pending[q]))
        used.add(r)
        prow = pending[r]
        inv = 1 / prow[j]
        for k in prow:
            prow[k] *= inv
        for q in by_col.get(j, ()):
            if q == r:
                continue
            row = pending[q]
            f = row.get(j)
            if not f:
                continue
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    if k not in row:
                        by_col.setdefault(k, []).append(q)
                    row[k] = nv
                else:
                    row.pop(k, None)
        pivots[j] = prow

    for r, row in enumerate(pending):
        if r not in used and row.get(n):
            particular = None
            break
    else:
        particular = [Fraction(0)] * n
        for j, prow in pivots.items():
            particular[j] = prow.get(n, Fraction(0))

    nullspace = []
    for f in range(n):
        if f in pivots:
            continue
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for j, prow in pivots.items():
            v = prow.get(f)
            if v:
                vec[j] = -v
        nullspace.append(vec)
    return particular, nullspace


def rref_vectors(vectors: List[List[Fraction]], order: Sequence[int]) -> List[List[Fraction]]:
    """Row-reduce a list of vectors with pivots searched in the given column order."""
    rows = [list(v) for v in vectors]
    out = []
    for j in order:
        idx = next((i for i, r in enumerate(rows) if r[j]), None)
        if idx is None:
            continue
        p = rows.pop(idx)
        inv = 1 / p[j]
        p = [x * inv for x in p]
        rows = [[a - r[j] * b for a, b in zip(r, p)] for r in rows]
        out = [[a - r[j] * b for a, b in zip(r, p)] for r in out]
        out.append(p)
        if not rows:
            break
    return out


def det(matrix: List[List[Fraction]]) -> Fraction:
    m = [list(map(Fraction, row)) for row in matrix]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return d
