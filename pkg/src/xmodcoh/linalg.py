"""Exact sparse linear algebra over Z, Q and GF(p).

Everything here is exact: integer Smith normal form with minimal-norm /
Markowitz pivoting, streaming fraction-free rank over Q, packed GF(2)
elimination, dense GF(p) elimination, and Fraction-based reduced row echelon
for small dense systems.  Matrices are kept as coordinate lists; elimination
always works along the smaller dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SparseIntMatrix",
    "SNFResult",
    "smith_normal_form",
    "rank_over_q",
    "rank_mod_p",
    "bareiss_rank",
    "rref_fractions",
    "nullspace_fractions",
]


@dataclass(frozen=True)
class SparseIntMatrix:
    """COO integer matrix; no duplicate coordinates, no explicit zeros."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry {(r, c)} out of bounds")
            if v == 0:
                raise ValueError(f"explicit zero at {(r, c)}")
            if (r, c) in seen:
                raise ValueError(f"duplicate coordinate {(r, c)}")
            seen.add((r, c))

    @classmethod
    def from_coo(cls, rows: int, cols: int, r, c, v) -> "SparseIntMatrix":
        """Build from parallel arrays, summing duplicates and dropping zeros."""
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if r.size:
            keys = r * cols + c
            uniq, inverse = np.unique(keys, return_inverse=True)
            sums = np.zeros(uniq.size, dtype=np.int64)
            np.add.at(sums, inverse, v)
            keep = sums != 0
            uniq, sums = uniq[keep], sums[keep]
            entries = tuple(
                (int(k // cols), int(k % cols), int(s)) for k, s in zip(uniq, sums)
            )
        else:
            entries = ()
        return cls(rows, cols, entries)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "SparseIntMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = tuple(
            (r, c, int(v))
            for r, row in enumerate(dense)
            for c, v in enumerate(row)
            if v
        )
        return cls(rows, cols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(
            self.cols, self.rows, tuple((c, r, v) for r, c, v in self.entries)
        )

    @property
    def nnz(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SNFResult:
    """Rank and elementary divisors d1 | d2 | ... (1s included)."""

    rank: int
    divisors: tuple[int, ...]

    def __post_init__(self):
        if self.rank != len(self.divisors):
            raise ValueError("rank must equal the number of divisors")
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a != 0:
                raise ValueError("divisors must form a divisibility chain")

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)


def _chain_fix(values: list[int]) -> tuple[int, ...]:
    """Normalise a diagonal multiset into a divisibility chain via gcd/lcm."""
    d = sorted(abs(v) for v in values)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return tuple(d)


def smith_normal_form(m: SparseIntMatrix) -> SNFResult:
    """Exact Smith normal form by row/column operations.

    Pivots are chosen with minimal absolute value, ties broken by a Markowitz
    fill estimate; unit pivots therefore drain first, which keeps integer
    growth down on the cochain matrices this is used for.
    """
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for r, c, v in m.entries:
        rows.setdefault(r, {})[c] = v
        col_rows.setdefault(c, set()).add(r)

    def remove_entry(r, c):
        del rows[r][c]
        if not rows[r]:
            del rows[r]
        col_rows[c].discard(r)
        if not col_rows[c]:
            del col_rows[c]

    def set_entry(r, c, v):
        if v == 0:
            if c in rows.get(r, {}):
                remove_entry(r, c)
            return
        rows.setdefault(r, {})[c] = v
        col_rows.setdefault(c, set()).add(r)

    def row_combine(rdst, rsrc, a, b):
        # row_dst = a*row_dst + b*row_src
        target = dict(rows.get(rdst, {}))
        for c in set(target) | set(rows.get(rsrc, {})):
            v = a * target.get(c, 0) + b * rows.get(rsrc, {}).get(c, 0)
            set_entry(rdst, c, v)

    def col_combine(cdst, csrc, a, b):
        for r in set(col_rows.get(cdst, set())) | set(col_rows.get(csrc, set())):
            v = a * rows.get(r, {}).get(cdst, 0) + b * rows.get(r, {}).get(csrc, 0)
            set_entry(r, cdst, v)

    diagonal: list[int] = []
    while rows:
        pivot = None
        best = None
        for r, cols in rows.items():
            for c, v in cols.items():
                score = (abs(v), (len(cols) - 1) * (len(col_rows[c]) - 1))
                if best is None or score < best:
                    best, pivot = score, (r, c)
                    if score == (1, 0):
                        break
            if best == (1, 0):
                break
        r0, c0 = pivot
        while True:
            v0 = rows[r0][c0]
            # clear the pivot column with row operations
            for r in list(col_rows[c0]):
                if r == r0:
                    continue
                v = rows[r][c0]
                if v % v0 == 0:
                    row_combine(r, r0, 1, -(v // v0))
                else:
                    g, x, y = _xgcd(v0, v)
                    # rows (r0, r) <- (x*r0 + y*r, -(v/g)*r0 + (v0/g)*r)
                    old_r0 = dict(rows.get(r0, {}))
                    old_r = dict(rows.get(r, {}))
                    for c in set(old_r0) | set(old_r):
                        a0, a1 = old_r0.get(c, 0), old_r.get(c, 0)
                        set_entry(r0, c, x * a0 + y * a1)
                        set_entry(r, c, -(v // g) * a0 + (v0 // g) * a1)
            v0 = rows[r0][c0]
            # clear the pivot row with column operations
            for c in list(rows[r0]):
                if c == c0:
                    continue
                v = rows[r0][c]
                if v % v0 == 0:
                    col_combine(c, c0, 1, -(v // v0))
                else:
                    g, x, y = _xgcd(v0, v)
                    old_c0 = {r: rows[r][c0] for r in col_rows.get(c0, set())}
                    old_c = {r: rows[r][c] for r in col_rows.get(c, set())}
                    for r in set(old_c0) | set(old_c):
                        a0, a1 = old_c0.get(r, 0), old_c.get(r, 0)
                        set_entry(r, c0, x * a0 + y * a1)
                        set_entry(r, c, -(v // g) * a0 + (v0 // g) * a1)
            col_clear = all(r == r0 for r in col_rows.get(c0, set()))
            row_clear = all(c == c0 for c in rows.get(r0, {}))
            if col_clear and row_clear:
                break
        diagonal.append(rows[r0][c0])
        remove_entry(r0, c0)
    return SNFResult(len(diagonal), _chain_fix(diagonal))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# -- exact rank over Q ------------------------------------------------------


def _coo_row_chunks(m: SparseIntMatrix, chunk: int):
    """Yield (row_ids, col_ids, values) per chunk of rows, rows ascending."""
    if not m.entries:
        return
    arr = np.array(m.entries, dtype=np.int64)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    arr = arr[order]
    r = arr[:, 0]
    starts = np.searchsorted(r, np.arange(0, m.rows, chunk))
    starts = np.append(starts, arr.shape[0])
    for k in range(len(starts) - 1):
        lo, hi = starts[k], starts[k + 1]
        if lo < hi:
            yield arr[lo:hi, 0], arr[lo:hi, 1], arr[lo:hi, 2]


def _strip_row(row):
    """Divide an integer vector by its content, preserving sign of the lead."""
    nz = row[row != 0] if isinstance(row, np.ndarray) else [v for v in row if v]
    if len(nz) == 0:
        return row
    if isinstance(row, np.ndarray):
        g = int(np.gcd.reduce(np.abs(nz)))
    else:
        g = 0
        for v in nz:
            g = gcd(g, abs(v))
    if g > 1:
        row = row // g if isinstance(row, np.ndarray) else [v // g for v in row]
    return row


def rank_over_q(m: SparseIntMatrix) -> int:
    """Exact rational rank by streaming integer elimination.

    Rows are reduced against a pivot basis keyed by leading column; each
    combination is fraction-free (cross-multiplied) with content stripping,
    falling back to python integers when 64-bit bounds would be exceeded.
    """
    if m.cols > m.rows:
        m = m.transpose()
    cols = m.cols
    basis: dict[int, object] = {}  # leading col -> row (ndarray int64 or list of int)
    rank = 0
    for rid, cid, val in _coo_row_chunks(m, 1 << 15):
        boundaries = np.flatnonzero(np.diff(rid, prepend=rid[0] - 1, append=rid[-1] + 1))
        for k in range(len(boundaries) - 1):
            lo, hi = boundaries[k], boundaries[k + 1]
            row = np.zeros(cols, dtype=np.int64)
            row[cid[lo:hi]] = val[lo:hi]
            if _reduce_insert(basis, row):
                rank += 1
                if rank == cols:
                    return rank
    return rank


def _leading(row):
    if isinstance(row, np.ndarray):
        nz = np.flatnonzero(row)
        return int(nz[0]) if nz.size else -1
    for i, v in enumerate(row):
        if v:
            return i
    return -1


def _reduce_insert(basis, row) -> bool:
    """Reduce ``row`` against the basis; insert if a new pivot appears."""
    while True:
        lead = _leading(row)
        if lead < 0:
            return False
        if lead not in basis:
            row = _strip_row(row)
            basis[lead] = row
            return True
        piv = basis[lead]
        rl = int(row[lead])
        pl = int(piv[lead])
        g = gcd(rl, pl)
        a, b = pl // g, rl // g
        row = _combine(row, piv, a, -b)
        row = _strip_row(row)


def _combine(row, piv, a, b):
    """a*row + b*piv with overflow-guarded int64 fast path."""
    if isinstance(row, np.ndarray) and isinstance(piv, np.ndarray):
        mr = int(np.abs(row).max(initial=0))
        mp = int(np.abs(piv).max(initial=0))
        if abs(a) * mr + abs(b) * mp < (1 << 62):
            return a * row + b * piv
        row = [int(v) for v in row]
        piv_l = [int(v) for v in piv]
        return [a * x + b * y for x, y in zip(row, piv_l)]
    row_l = [int(v) for v in row] if isinstance(row, np.ndarray) else row
    piv_l = [int(v) for v in piv] if isinstance(piv, np.ndarray) else piv
    return [a * x + b * y for x, y in zip(row_l, piv_l)]


# -- rank over GF(p) --------------------------------------------------------


def rank_mod_p(m: SparseIntMatrix, p: int) -> int:
    if p < 2:
        raise ValueError("p must be a prime >= 2")
    if p == 2:
        return _rank_gf2(m)
    return _rank_gfp(m, p)


def _rank_gf2(m: SparseIntMatrix) -> int:
    if m.cols > m.rows:
        m = m.transpose()
    cols = m.cols
    words = max(1, (cols + 63) // 64)
    pivots: dict[int, np.ndarray] = {}  # bit position -> packed row
    rank = 0

    def leading_bit(packed) -> int:
        for w in range(words - 1, -1, -1):
            if packed[w]:
                return (w << 6) + int(packed[w]).bit_length() - 1
        return -1

    for rid, cid, val in _coo_row_chunks(m, 1 << 16):
        odd = (val & 1) == 1
        rid, cid = rid[odd], cid[odd]
        if rid.size == 0:
            continue
        local, inverse = np.unique(rid, return_inverse=True)
        chunk = np.zeros((local.size, words), dtype=np.uint64)
        np.bitwise_xor.at(
            chunk,
            (inverse, cid >> 6),
            np.left_shift(np.uint64(1), (cid & 63).astype(np.uint64)),
        )
        # reduce against existing pivots, vectorised per pivot
        for bit, prow in pivots.items():
            sel = (chunk[:, bit >> 6] >> np.uint64(bit & 63)) & np.uint64(1)
            mask = sel.astype(bool)
            if mask.any():
                chunk[mask] ^= prow
        alive = chunk.any(axis=1)
        while alive.any():
            k = int(np.flatnonzero(alive)[0])
            prow = chunk[k].copy()
            bit = leading_bit(prow)
            # keep the basis inter-reduced so one pass per pivot is complete
            for other in pivots.values():
                if (other[bit >> 6] >> np.uint64(bit & 63)) & np.uint64(1):
                    other ^= prow
            pivots[bit] = prow
            rank += 1
            if rank == cols:
                return rank
            sel = (chunk[:, bit >> 6] >> np.uint64(bit & 63)) & np.uint64(1)
            mask = sel.astype(bool)
            if mask.any():
                chunk[mask] ^= prow
            alive = chunk.any(axis=1)
    return rank


def _rank_gfp(m: SparseIntMatrix, p: int) -> int:
    if m.cols > m.rows:
        m = m.transpose()
    cols = m.cols
    pivots: dict[int, np.ndarray] = {}
    rank = 0
    for rid, cid, val in _coo_row_chunks(m, 1 << 14):
        local, inverse = np.unique(rid, return_inverse=True)
        chunk = np.zeros((local.size, cols), dtype=np.int64)
        np.add.at(chunk, (inverse, cid), val)
        chunk %= p
        for lead, prow in pivots.items():
            factor = chunk[:, lead]
            mask = factor != 0
            if mask.any():
                chunk[mask] = (chunk[mask] - factor[mask, None] * prow) % p
        alive = chunk.any(axis=1)
        while alive.any():
            k = int(np.flatnonzero(alive)[0])
            row = chunk[k]
            lead = int(np.flatnonzero(row)[0])
            prow = (row * pow(int(row[lead]), -1, p)) % p
            for other in pivots.values():
                if other[lead]:
                    other -= other[lead] * prow
                    other %= p
            pivots[lead] = prow.copy()
            rank += 1
            if rank == cols:
                return rank
            factor = chunk[:, lead]
            mask = factor != 0
            chunk[mask] = (chunk[mask] - factor[mask, None] * prow) % p
            alive = chunk.any(axis=1)
    return rank


# -- dense exact tools ------------------------------------------------------


def bareiss_rank(dense: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination rank (independent of the streaming
    path; used as a dual-route cross-check)."""
    a = [list(map(int, row)) for row in dense]
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        pivot_row = None
        for rr in range(r, rows):
            if a[rr][c]:
                pivot_row = rr
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for rr in range(r + 1, rows):
            for cc in range(c + 1, cols):
                a[rr][cc] = (a[r][c] * a[rr][cc] - a[rr][c] * a[r][cc]) // prev
            a[rr][c] = 0
        prev = a[r][c]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def rref_fractions(dense: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rref, pivot columns)."""
    a = [[Fraction(v) for v in row] for row in dense]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((rr for rr in range(r, rows) if a[rr][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = Fraction(1, 1) / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for rr in range(rows):
            if rr != r and a[rr][c] != 0:
                f = a[rr][c]
                a[rr] = [x - f * y for x, y in zip(a[rr], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace_fractions(dense: Sequence[Sequence[Fraction]], cols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel of a dense rational matrix."""
    if not dense:
        n = cols if cols is not None else 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(dense[0])
    rref, pivots = rref_fractions(dense)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][f]
        basis.append(vec)
    return basis
