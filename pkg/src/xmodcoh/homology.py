"""Cochain complexes of nerve levels and their exact cohomology.

Normalized cochains (vanishing on degenerate simplices) are the default; the
unnormalized complex is kept for cross-checks.  The coboundary is
delta = sum_i (-1)^i d_i^*; the global bicomplex sign is dropped since a
discrete nerve has a single column and a sign on delta changes no kernels or
images.  Over a field the betti numbers come from exact ranks, over Z the
free rank and torsion come from Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .crossed import CrossedModule
from .linalg import SparseIntMatrix, rank_mod_p, rank_over_q, smith_normal_form
from .nerve import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    NerveLevels,
    _bases,
    _pair_index,
    _triple_index,
    coordinates_from_index,
    denormalize,
    normalize,
    pairs,
    triples,
)

__all__ = [
    "Ring",
    "parse_ring",
    "CohomologyResult",
    "coboundary",
    "cohomology",
    "cup_product",
    "apply_coboundary",
]


@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag: Z, Q or GF(p)."""

    kind: str  # "Z" | "Q" | "F"
    p: int = 0

    def __str__(self):
        return f"F{self.p}" if self.kind == "F" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"


def parse_ring(text: str) -> Ring:
    t = text.strip().upper()
    if t == "Z":
        return Ring("Z")
    if t == "Q":
        return Ring("Q")
    if t.startswith("F") and t[1:].isdigit():
        p = int(t[1:])
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{text!r}: modulus must be prime")
        return Ring("F", p)
    raise ValueError(f"unknown coefficient ring {text!r}")


def coboundary(
    levels: NerveLevels, q: int, normalized: bool = True, threads: int = 1
) -> SparseIntMatrix:
    """Matrix of delta: C^q -> C^(q+1) (rows = (q+1)-simplices).

    In normalized mode both bases run over nondegenerate simplices and faces
    landing on degenerate simplices are dropped.  Assembly is partitioned
    over row chunks; ``threads`` > 1 maps the chunks onto a thread pool.
    """
    if normalized:
        nd = levels.nondegenerate_indices(q + 1)
        n_rows = nd.size
        colmap = levels.column_map(q)

        def assemble(span):
            lo, hi = span
            idx = nd[lo:hi]
            rows = np.arange(lo, hi, dtype=np.int64)
            out = []
            for i in range(q + 2):
                fidx = levels.face_index_batch(q + 1, i, idx)
                col = colmap[fidx]
                keep = col >= 0
                sign = np.full(int(keep.sum()), 1 - 2 * (i % 2), dtype=np.int64)
                out.append((rows[keep], col[keep], sign))
            return out

        chunk = 1 << 17
        spans = [(lo, min(lo + chunk, n_rows)) for lo in range(0, n_rows, chunk)]
        rs, cs, vs = [], [], []
        if threads > 1 and len(spans) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(assemble, spans))
        else:
            parts = [assemble(s) for s in spans]
        for part in parts:
            for r, c, v in part:
                rs.append(r)
                cs.append(c)
                vs.append(v)
        n_cols = int(levels.nondegenerate_indices(q).size)
    else:
        levels._require_budget(q + 1)
        levels._require_budget(q)
        total = levels.count(q + 1)
        rs, cs, vs = [], [], []
        bases = _bases(levels.cm, q + 1)
        chunk = 1 << 17
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            for i in range(q + 2):
                fidx = levels.face_index_batch(q + 1, i, idx)
                rs.append(idx)
                cs.append(fidx)
                vs.append(np.full(idx.size, 1 - 2 * (i % 2), dtype=np.int64))
        n_rows, n_cols = total, levels.count(q)
    if rs:
        r = np.concatenate(rs)
        c = np.concatenate(cs)
        v = np.concatenate(vs)
    else:
        r = c = v = np.zeros(0, dtype=np.int64)
    return SparseIntMatrix.from_coo(int(n_rows), int(n_cols), r, c, v)


@dataclass(frozen=True)
class CohomologyResult:
    """Per-degree cohomology of a nerve.

    Over a field ``betti[n]`` is the dimension; over Z ``free_ranks[n]`` and
    ``torsion[n]`` describe Z^r + sum Z/d.  ``computed_degree`` may fall short
    of ``max_degree`` when the budget cuts enumeration off.
    """

    coefficients: str
    normalized: bool
    max_degree: int
    computed_degree: int
    cochain_dims: tuple[int, ...]
    betti: tuple[int, ...] | None = None
    free_ranks: tuple[int, ...] | None = None
    torsion: tuple[tuple[int, ...], ...] | None = None

    @property
    def complete(self) -> bool:
        return self.computed_degree == self.max_degree


def cohomology(
    cm: CrossedModule,
    coeffs: Ring | str,
    max_degree: int,
    budget: int = DEFAULT_BUDGET,
    normalized: bool = True,
    levels: NerveLevels | None = None,
    threads: int = 1,
) -> CohomologyResult:
    """H^n for n <= max_degree.  Raises BudgetExceeded carrying the partial
    result (``exc.partial``) when some needed level is over budget."""
    ring = parse_ring(coeffs) if isinstance(coeffs, str) else coeffs
    if levels is None:
        levels = NerveLevels(cm, budget=budget)
    # the topmost level we can afford decides the achievable degree
    top = -1
    for p in range(max_degree + 2):
        if levels.count(p) > budget:
            break
        top = p
    computed = min(max_degree, top - 1)
    if computed < 0:
        raise BudgetExceeded(
            f"level 1 already exceeds the budget of {budget}", partial=None
        )

    dims = tuple(
        int(levels.nondegenerate_indices(q).size) if normalized else levels.count(q)
        for q in range(computed + 2)
    )
    deltas = [
        coboundary(levels, q, normalized=normalized, threads=threads)
        for q in range(computed + 1)
    ]

    betti = free = tors = None
    if ring.kind == "F":
        ranks = [rank_mod_p(d, ring.p) for d in deltas]
        betti = tuple(
            dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(computed + 1)
        )
    elif ring.kind == "Q":
        ranks = [rank_over_q(d) for d in deltas]
        betti = tuple(
            dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(computed + 1)
        )
    else:
        snfs = [smith_normal_form(d) for d in deltas]
        free = tuple(
            dims[n] - snfs[n].rank - (snfs[n - 1].rank if n else 0)
            for n in range(computed + 1)
        )
        tors = tuple(
            snfs[n - 1].torsion if n else () for n in range(computed + 1)
        )

    result = CohomologyResult(
        coefficients=str(ring),
        normalized=normalized,
        max_degree=max_degree,
        computed_degree=computed,
        cochain_dims=dims[: computed + 1],
        betti=betti,
        free_ranks=free,
        torsion=tors,
    )
    if computed < max_degree:
        raise BudgetExceeded(
            f"budget {budget} only reaches degree {computed} of {max_degree}",
            partial=result,
        )
    return result


# -- cochain-level operations ------------------------------------------------


def apply_coboundary(matrix: SparseIntMatrix, vec: Sequence, ring: Ring) -> list:
    """delta(vec) as a dense list over the row basis."""
    zero = Fraction(0) if ring.kind == "Q" else 0
    out = [zero] * matrix.rows
    for r, c, v in matrix.entries:
        out[r] = out[r] + v * vec[c]
    if ring.kind == "F":
        out = [x % ring.p for x in out]
    return out


def _front_labeling(p: int, level: int, edges, gammas):
    """Restriction to vertices 0..p."""
    pidx, tidx = _pair_index(level), _triple_index(level)
    e = tuple(edges[pidx[(a, b)]] for a, b in pairs(p))
    g = tuple(gammas[tidx[(a, b, c)]] for a, b, c in triples(p))
    return e, g


def _back_labeling(q: int, level: int, edges, gammas):
    """Restriction to vertices level-q..level, shifted down."""
    s = level - q
    pidx, tidx = _pair_index(level), _triple_index(level)
    e = tuple(edges[pidx[(a + s, b + s)]] for a, b in pairs(q))
    g = tuple(gammas[tidx[(a + s, b + s, c + s)]] for a, b, c in triples(q))
    return e, g


def cup_product(
    levels: NerveLevels,
    p: int,
    q: int,
    a: Sequence,
    b: Sequence,
    ring: Ring,
) -> list:
    """Front-face/back-face product of normalized cochains.

    ``a`` and ``b`` are dense over the nondegenerate p- and q-simplices;
    the result is dense over the nondegenerate (p+q)-simplices.
    """
    cm = levels.cm
    n = p + q
    idx_n = levels.nondegenerate_indices(n)
    cmap_p = levels.column_map(p)
    cmap_q = levels.column_map(q)
    zero = Fraction(0) if ring.kind == "Q" else 0
    out = []
    for full_index in idx_n.tolist():
        coords = coordinates_from_index(cm, n, full_index)
        edges, gammas = denormalize(cm, coords)
        fe, fg = _front_labeling(p, n, edges, gammas)
        be, bg = _back_labeling(q, n, edges, gammas)
        fi = _scalar_index(cm, p, fe, fg)
        bi = _scalar_index(cm, q, be, bg)
        fa = cmap_p[fi]
        fb = cmap_q[bi]
        if fa < 0 or fb < 0:
            out.append(zero)
            continue
        val = a[int(fa)] * b[int(fb)]
        if ring.kind == "F":
            val %= ring.p
        out.append(val)
    return out


def _scalar_index(cm: CrossedModule, p: int, edges, gammas) -> int:
    coords = normalize(cm, p, edges, gammas)
    out = 0
    for base, d in zip(_bases(cm, p), coords.as_tuple()):
        out = out * base + d
    return out
