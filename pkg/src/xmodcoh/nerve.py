"""The nerve of a finite crossed module as an enumerated simplicial set.

A p-simplex is a labeling of the standard p-simplex: a 1-arrow e_{jk} in H on
every edge j<k and a 2-arrow on every triangle j<k<l, recorded by its G-part
gamma_{jkl}.  The 2-arrow on (j,k,l) has source e_{jk}*e_{kl} and target
e_{jl}, so the labels satisfy

    triangle:     e_{jl} = e_{jk} * e_{kl} * i(gamma_{jkl})
    tetrahedron:  gamma_{jkl}^{e_{lm}} * gamma_{jlm} = gamma_{klm} * gamma_{jkm}

for all j<k<l<m.  The tetrahedron rule is the commutativity of the two ways
of contracting the path j->k->l->m down to the long edge, written in the
group G x| H of 2-arrows; it pins the face maps at every level.

Free coordinates: levels 0..3 use the charts

    p=1:  (h)                       h = e01
    p=2:  (g, h, f)                 g = gamma012, h = e01*e12, f = e12
    p=3:  (g0, g2, g3, h0, f01, h2) g0 = gamma123, g2 = gamma013,
                                    g3 = gamma012, h0 = e12*e23,
                                    f01 = e23,     h2 = e01*e13

and levels p >= 4 use (gamma_{0kl} lex in (k,l); e_{0k} for k=1..p).  Every
chart is a bijection with the full labelings, so |N_p| = |G|^(p(p-1)/2)*|H|^p.
Faces are computed by vertex deletion on the full labeling followed by
re-normalisation; at p <= 3 this reproduces the closed-form face formulas
(see tests).  Enumeration order is lexicographic in the chart tuple, g-part
major, which fixes deterministic matrix layouts downstream.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .crossed import CrossedModule, require_valid
from .groups import np_tables, np_hom_table, np_action_table

__all__ = [
    "BudgetExceeded",
    "NormalizedCoordinates",
    "NerveSimplex",
    "NerveLevels",
    "KanReport",
    "level_count",
    "face",
    "degeneracy",
    "check_kan",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 1 << 24
_CHUNK = 1 << 17


class BudgetExceeded(RuntimeError):
    """A requested enumeration or complex exceeds the configured budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


@lru_cache(maxsize=None)
def pairs(p: int) -> tuple[tuple[int, int], ...]:
    return tuple((j, k) for j in range(p + 1) for k in range(j + 1, p + 1))


@lru_cache(maxsize=None)
def triples(p: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(
        (j, k, l)
        for j in range(p + 1)
        for k in range(j + 1, p + 1)
        for l in range(k + 1, p + 1)
    )


@lru_cache(maxsize=None)
def _pair_index(p: int) -> dict[tuple[int, int], int]:
    return {jk: n for n, jk in enumerate(pairs(p))}


@lru_cache(maxsize=None)
def _triple_index(p: int) -> dict[tuple[int, int, int], int]:
    return {jkl: n for n, jkl in enumerate(triples(p))}


@dataclass(frozen=True)
class NormalizedCoordinates:
    """Free coordinates of a p-simplex: g-part in G^(p(p-1)/2), h-part in H^p."""

    level: int
    g_part: tuple[int, ...]
    h_part: tuple[int, ...]

    def __post_init__(self):
        p = self.level
        if len(self.g_part) != p * (p - 1) // 2 or len(self.h_part) != p:
            raise ValueError(f"wrong coordinate arity for level {p}")

    def as_tuple(self) -> tuple[int, ...]:
        return self.g_part + self.h_part


def level_count(cm: CrossedModule, p: int) -> int:
    """|N_p| = |G|^(p(p-1)/2) * |H|^p, as an exact (arbitrary size) integer."""
    if p < 0:
        raise ValueError("level must be >= 0")
    return cm.g.order ** (p * (p - 1) // 2) * cm.h.order**p


# -- scalar reference implementation on full labelings ---------------------
#
# A labeling is a pair of tuples (edges, gammas) following pairs(p)/triples(p)
# order.  This path is written for clarity; the batch engine below mirrors it
# and the two are tested against each other.


def _derive_full(cm: CrossedModule, p: int, gam0, e0):
    """Full labeling from the canonical free data (gamma_{0kl}, e_{0k}).

    gam0 is a dict (k,l)->g for 1<=k<l<=p, e0 a dict k->h for 1<=k<=p.
    """
    g, h = cm.g, cm.h
    imap, act = cm.i.map, cm.action.act
    e = {}
    gam = {}
    for k in range(1, p + 1):
        e[(0, k)] = e0[k]
    for (k, l), v in gam0.items():
        gam[(0, k, l)] = v
        e[(k, l)] = h.mul[h.mul[h.inv[e0[k]]][e0[l]]][h.inv[imap[v]]]
    for k in range(1, p + 1):
        for l in range(k + 1, p + 1):
            for m in range(l + 1, p + 1):
                a = act[gam0[(k, l)]][e[(l, m)]]
                gam[(k, l, m)] = g.mul[g.mul[a][gam0[(l, m)]]][g.inv[gam0[(k, m)]]]
    edges = tuple(e[jk] for jk in pairs(p))
    gammas = tuple(gam[jkl] for jkl in triples(p))
    return edges, gammas


def denormalize(cm: CrossedModule, coords: NormalizedCoordinates):
    """Free coordinates -> full labeling (edges, gammas)."""
    p = coords.level
    g, h = cm.g, cm.h
    imap, act = cm.i.map, cm.action.act
    gp, hp = coords.g_part, coords.h_part
    if p == 0:
        return (), ()
    if p == 1:
        return (hp[0],), ()
    if p == 2:
        gg, hh, f = gp[0], hp[0], hp[1]
        e01 = h.mul[hh][h.inv[f]]
        e02 = h.mul[hh][imap[gg]]
        return (e01, e02, f), (gg,)
    if p == 3:
        g0, g2, g3 = gp
        h0, f01, h2 = hp
        e23 = f01
        e12 = h.mul[h0][h.inv[f01]]
        e13 = h.mul[h0][imap[g0]]
        e01 = h.mul[h2][h.inv[e13]]
        e02 = h.mul[h.mul[e01][e12]][imap[g3]]
        e03 = h.mul[h2][imap[g2]]
        g1 = g.mul[g.mul[g.inv[act[g3][f01]]][g0]][g2]
        edges = (e01, e02, e03, e12, e13, e23)
        gammas = (g3, g2, g1, g0)  # triples order: 012, 013, 023, 123
        return edges, gammas
    gam0 = {}
    n = 0
    for k in range(1, p + 1):
        for l in range(k + 1, p + 1):
            gam0[(k, l)] = gp[n]
            n += 1
    e0 = {k: hp[k - 1] for k in range(1, p + 1)}
    return _derive_full(cm, p, gam0, e0)


def normalize(cm: CrossedModule, p: int, edges, gammas) -> NormalizedCoordinates:
    """Full labeling -> free coordinates, inverse of ``denormalize``."""
    h = cm.h
    pidx, tidx = _pair_index(p), _triple_index(p)
    if p == 0:
        return NormalizedCoordinates(0, (), ())
    if p == 1:
        return NormalizedCoordinates(1, (), (edges[0],))
    if p == 2:
        s = h.mul[edges[pidx[(0, 1)]]][edges[pidx[(1, 2)]]]
        return NormalizedCoordinates(2, (gammas[0],), (s, edges[pidx[(1, 2)]]))
    if p == 3:
        h0 = h.mul[edges[pidx[(1, 2)]]][edges[pidx[(2, 3)]]]
        h2 = h.mul[edges[pidx[(0, 1)]]][edges[pidx[(1, 3)]]]
        gp = (gammas[tidx[(1, 2, 3)]], gammas[tidx[(0, 1, 3)]], gammas[tidx[(0, 1, 2)]])
        return NormalizedCoordinates(3, gp, (h0, edges[pidx[(2, 3)]], h2))
    gp = tuple(gammas[tidx[(0, k, l)]] for k in range(1, p + 1) for l in range(k + 1, p + 1))
    hp = tuple(edges[pidx[(0, k)]] for k in range(1, p + 1))
    return NormalizedCoordinates(p, gp, hp)


def face_labeling(p: int, i: int, edges, gammas):
    """Delete vertex i and restrict the labels."""
    if not 0 <= i <= p or p < 1:
        raise ValueError("face index out of range")
    pidx, tidx = _pair_index(p), _triple_index(p)
    ins = lambda a: a if a < i else a + 1
    new_edges = tuple(edges[pidx[(ins(a), ins(b))]] for a, b in pairs(p - 1))
    new_gammas = tuple(gammas[tidx[(ins(a), ins(b), ins(c))]] for a, b, c in triples(p - 1))
    return new_edges, new_gammas


def degeneracy_labeling(cm: CrossedModule, p: int, i: int, edges, gammas):
    """Duplicate vertex i, inserting identity 1- and 2-arrows."""
    if not 0 <= i <= p:
        raise ValueError("degeneracy index out of range")
    pidx, tidx = _pair_index(p), _triple_index(p)
    sig = lambda a: a if a <= i else a - 1

    def edge(a, b):
        sa, sb = sig(a), sig(b)
        return 0 if sa == sb else edges[pidx[(sa, sb)]]

    def gamma(a, b, c):
        sa, sb, sc = sig(a), sig(b), sig(c)
        if sa == sb or sb == sc:
            return 0
        return gammas[tidx[(sa, sb, sc)]]

    new_edges = tuple(edge(a, b) for a, b in pairs(p + 1))
    new_gammas = tuple(gamma(a, b, c) for a, b, c in triples(p + 1))
    return new_edges, new_gammas


def degenerate_at(p: int, i: int, edges, gammas) -> bool:
    """True iff the labeling lies in the image of s_i."""
    pidx, tidx = _pair_index(p), _triple_index(p)
    if edges[pidx[(i, i + 1)]] != 0:
        return False
    for a in range(i):
        if gammas[tidx[(a, i, i + 1)]] != 0:
            return False
    for b in range(i + 2, p + 1):
        if gammas[tidx[(i, i + 1, b)]] != 0:
            return False
    return True


def is_degenerate(p: int, edges, gammas) -> bool:
    return any(degenerate_at(p, i, edges, gammas) for i in range(p))


def face(cm: CrossedModule, p: int, i: int, coords: NormalizedCoordinates) -> NormalizedCoordinates:
    """The i-th face, computed by vertex deletion on the full labeling."""
    edges, gammas = denormalize(cm, coords)
    return normalize(cm, p - 1, *face_labeling(p, i, edges, gammas))


def degeneracy(cm: CrossedModule, p: int, i: int, coords: NormalizedCoordinates) -> NormalizedCoordinates:
    edges, gammas = denormalize(cm, coords)
    return normalize(cm, p + 1, *degeneracy_labeling(cm, p, i, edges, gammas))


@dataclass(frozen=True)
class NerveSimplex:
    """A fully labeled p-simplex: every edge and every 2-arrow.

    ``edges`` follows pairs(level) order; ``two_arrows`` stores the G-parts in
    triples(level) order.  Construction validates the triangle and tetrahedron
    conditions.
    """

    cm: CrossedModule
    level: int
    edges: tuple[int, ...]
    two_arrows: tuple[int, ...]

    def __post_init__(self):
        p = self.level
        if len(self.edges) != len(pairs(p)) or len(self.two_arrows) != len(triples(p)):
            raise ValueError("label arity mismatch")
        g, h = self.cm.g, self.cm.h
        imap, act = self.cm.i.map, self.cm.action.act
        pidx, tidx = _pair_index(p), _triple_index(p)
        e, gam = self.edges, self.two_arrows
        for j, k, l in triples(p):
            lhs = e[pidx[(j, l)]]
            rhs = h.mul[h.mul[e[pidx[(j, k)]]][e[pidx[(k, l)]]]][imap[gam[tidx[(j, k, l)]]]]
            if lhs != rhs:
                raise ValueError(f"triangle condition fails on {(j, k, l)}")
        for j in range(p + 1):
            for k in range(j + 1, p + 1):
                for l in range(k + 1, p + 1):
                    for m in range(l + 1, p + 1):
                        lhs = g.mul[act[gam[tidx[(j, k, l)]]][e[pidx[(l, m)]]]][gam[tidx[(j, l, m)]]]
                        rhs = g.mul[gam[tidx[(k, l, m)]]][gam[tidx[(j, k, m)]]]
                        if lhs != rhs:
                            raise ValueError(f"tetrahedron condition fails on {(j, k, l, m)}")

    def edge(self, j: int, k: int) -> int:
        return self.edges[_pair_index(self.level)[(j, k)]]

    def two_arrow(self, j: int, k: int, l: int) -> tuple[int, int]:
        """The 2-arrow on triangle (j,k,l) as a (g, source) pair."""
        h = self.cm.h
        src = h.mul[self.edge(j, k)][self.edge(k, l)]
        return self.two_arrows[_triple_index(self.level)[(j, k, l)]], src

    def coordinates(self) -> NormalizedCoordinates:
        return normalize(self.cm, self.level, self.edges, self.two_arrows)

    @classmethod
    def from_coordinates(cls, cm: CrossedModule, coords: NormalizedCoordinates) -> "NerveSimplex":
        edges, gammas = denormalize(cm, coords)
        return cls(cm, coords.level, edges, gammas)


# -- batch engine -----------------------------------------------------------


class _Ops:
    """Vectorised group-operation tables for one crossed module."""

    def __init__(self, cm: CrossedModule):
        self.MG, self.IG = np_tables(cm.g)
        self.MH, self.IH = np_tables(cm.h)
        self.IMAP = np_hom_table(cm.i)
        self.ACT = np_action_table(cm.action)

    def mg(self, a, b):
        return self.MG[a, b]

    def ig(self, a):
        return self.IG[a]

    def mh(self, a, b):
        return self.MH[a, b]

    def ih(self, a):
        return self.IH[a]

    def im(self, a):
        return self.IMAP[a]

    def act(self, gval, hval):
        return self.ACT[gval, hval]


class _Batch:
    """Full labelings of a batch of simplices as label -> int64 array."""

    __slots__ = ("p", "e", "g")

    def __init__(self, p, e, g):
        self.p = p
        self.e = e  # dict (j,k) -> array
        self.g = g  # dict (j,k,l) -> array


def _bases(cm: CrossedModule, p: int) -> list[int]:
    ng = p * (p - 1) // 2
    return [cm.g.order] * ng + [cm.h.order] * p


def _decode(bases: list[int], idx: np.ndarray) -> list[np.ndarray]:
    digits: list[np.ndarray] = []
    rest = idx.astype(np.int64, copy=True)
    for base in reversed(bases):
        digits.append(rest % base)
        rest //= base
    digits.reverse()
    return digits


def _encode(bases: list[int], digits: list[np.ndarray], size: int) -> np.ndarray:
    out = np.zeros(size, dtype=np.int64)
    for base, d in zip(bases, digits):
        out = out * base + d
    return out


def coordinate_index(cm: CrossedModule, coords: NormalizedCoordinates) -> int:
    """Position of the simplex in the deterministic level enumeration."""
    out = 0
    for base, d in zip(_bases(cm, coords.level), coords.as_tuple()):
        out = out * base + d
    return out


def coordinates_from_index(cm: CrossedModule, p: int, index: int) -> NormalizedCoordinates:
    bases = _bases(cm, p)
    digits = []
    for base in reversed(bases):
        digits.append(index % base)
        index //= base
    digits.reverse()
    ng = p * (p - 1) // 2
    return NormalizedCoordinates(p, tuple(digits[:ng]), tuple(digits[ng:]))


def _denorm_batch(cm: CrossedModule, ops: _Ops, p: int, digits: list[np.ndarray]) -> _Batch:
    ng = p * (p - 1) // 2
    gp, hp = digits[:ng], digits[ng:]
    e: dict = {}
    gam: dict = {}
    if p == 0:
        return _Batch(0, e, gam)
    if p == 1:
        e[(0, 1)] = hp[0]
        return _Batch(1, e, gam)
    if p == 2:
        gg, hh, f = gp[0], hp[0], hp[1]
        e[(0, 1)] = ops.mh(hh, ops.ih(f))
        e[(0, 2)] = ops.mh(hh, ops.im(gg))
        e[(1, 2)] = f
        gam[(0, 1, 2)] = gg
        return _Batch(2, e, gam)
    if p == 3:
        g0, g2, g3 = gp
        h0, f01, h2 = hp
        e[(2, 3)] = f01
        e[(1, 2)] = ops.mh(h0, ops.ih(f01))
        e[(1, 3)] = ops.mh(h0, ops.im(g0))
        e[(0, 1)] = ops.mh(h2, ops.ih(e[(1, 3)]))
        e[(0, 2)] = ops.mh(ops.mh(e[(0, 1)], e[(1, 2)]), ops.im(g3))
        e[(0, 3)] = ops.mh(h2, ops.im(g2))
        gam[(0, 1, 2)] = g3
        gam[(0, 1, 3)] = g2
        gam[(0, 2, 3)] = ops.mg(ops.mg(ops.ig(ops.act(g3, f01)), g0), g2)
        gam[(1, 2, 3)] = g0
        return _Batch(3, e, gam)
    gam0: dict = {}
    n = 0
    for k in range(1, p + 1):
        for l in range(k + 1, p + 1):
            gam0[(k, l)] = gp[n]
            n += 1
    for k in range(1, p + 1):
        e[(0, k)] = hp[k - 1]
    for (k, l), v in gam0.items():
        gam[(0, k, l)] = v
        e[(k, l)] = ops.mh(ops.mh(ops.ih(hp[k - 1]), hp[l - 1]), ops.ih(ops.im(v)))
    for k in range(1, p + 1):
        for l in range(k + 1, p + 1):
            for m in range(l + 1, p + 1):
                a = ops.act(gam0[(k, l)], e[(l, m)])
                gam[(k, l, m)] = ops.mg(ops.mg(a, gam0[(l, m)]), ops.ig(gam0[(k, m)]))
    return _Batch(p, e, gam)


def _normalize_batch(cm: CrossedModule, ops: _Ops, batch: _Batch) -> list[np.ndarray]:
    p = batch.p
    e, gam = batch.e, batch.g
    if p == 0:
        return []
    if p == 1:
        return [e[(0, 1)]]
    if p == 2:
        return [gam[(0, 1, 2)], ops.mh(e[(0, 1)], e[(1, 2)]), e[(1, 2)]]
    if p == 3:
        return [
            gam[(1, 2, 3)],
            gam[(0, 1, 3)],
            gam[(0, 1, 2)],
            ops.mh(e[(1, 2)], e[(2, 3)]),
            e[(2, 3)],
            ops.mh(e[(0, 1)], e[(1, 3)]),
        ]
    out = [gam[(0, k, l)] for k in range(1, p + 1) for l in range(k + 1, p + 1)]
    out.extend(e[(0, k)] for k in range(1, p + 1))
    return out


def _face_batch(batch: _Batch, i: int) -> _Batch:
    p = batch.p
    ins = lambda a: a if a < i else a + 1
    e = {(a, b): batch.e[(ins(a), ins(b))] for a, b in pairs(p - 1)}
    g = {(a, b, c): batch.g[(ins(a), ins(b), ins(c))] for a, b, c in triples(p - 1)}
    return _Batch(p - 1, e, g)


def _degeneracy_batch(batch: _Batch, i: int, size: int) -> _Batch:
    p = batch.p
    sig = lambda a: a if a <= i else a - 1
    zeros = np.zeros(size, dtype=np.int64)
    e = {}
    for a, b in pairs(p + 1):
        sa, sb = sig(a), sig(b)
        e[(a, b)] = zeros if sa == sb else batch.e[(sa, sb)]
    g = {}
    for a, b, c in triples(p + 1):
        sa, sb, sc = sig(a), sig(b), sig(c)
        g[(a, b, c)] = zeros if (sa == sb or sb == sc) else batch.g[(sa, sb, sc)]
    return _Batch(p + 1, e, g)


def _degenerate_mask(batch: _Batch, size: int) -> np.ndarray:
    p = batch.p
    mask = np.zeros(size, dtype=bool)
    for i in range(p):
        cond = batch.e[(i, i + 1)] == 0
        for a in range(i):
            cond &= batch.g[(a, i, i + 1)] == 0
        for b in range(i + 2, p + 1):
            cond &= batch.g[(i, i + 1, b)] == 0
        mask |= cond
    return mask


@dataclass(frozen=True)
class KanReport:
    level: int
    horn_index: int
    horn_count: int
    filled_horns: int
    min_fillers: int
    max_fillers: int

    @property
    def is_kan(self) -> bool:
        return self.horn_count == self.filled_horns

    @property
    def unique_fillers(self) -> bool:
        return self.is_kan and self.min_fillers == self.max_fillers == 1


class NerveLevels:
    """Lazy per-level enumeration of the nerve with face/degeneracy maps.

    Materialisation of a level is refused once |N_p| exceeds ``budget``; the
    cardinality itself is always available.
    """

    def __init__(self, cm: CrossedModule, budget: int = DEFAULT_BUDGET, skip_validation: bool = False):
        if not skip_validation:
            require_valid(cm)
        self.cm = cm
        self.budget = budget
        self._ops = _Ops(cm)
        self._nondeg_idx: dict[int, np.ndarray] = {}
        self._colmap: dict[int, np.ndarray] = {}

    # counting ------------------------------------------------------------

    def count(self, p: int) -> int:
        return level_count(self.cm, p)

    def nondegenerate_count(self, p: int) -> int:
        """Exact count of nondegenerate p-simplices.

        Computed arithmetically by inverting |N_p| = sum_q surj(p,q) * nd_q,
        where surj(p,q) = C(p, q) counts the monotone surjections; no
        enumeration is needed, so this also powers the budget pre-check.
        """
        nd: list[int] = []
        for q in range(p + 1):
            total = self.count(q)
            total -= sum(comb(q, r) * nd[r] for r in range(q))
            nd.append(total)
        return nd[p]

    def _require_budget(self, p: int):
        c = self.count(p)
        if c > self.budget:
            raise BudgetExceeded(
                f"level {p} has {c} simplices, over the budget of {self.budget}"
            )

    # enumeration ----------------------------------------------------------

    def nondegenerate_indices(self, p: int) -> np.ndarray:
        """Enumeration indices of the nondegenerate p-simplices, ascending."""
        if p not in self._nondeg_idx:
            self._require_budget(p)
            total = self.count(p)
            bases = _bases(self.cm, p)
            parts = []
            for start in range(0, max(total, 1), _CHUNK):
                idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
                if idx.size == 0:
                    continue
                batch = _denorm_batch(self.cm, self._ops, p, _decode(bases, idx))
                mask = _degenerate_mask(batch, idx.size)
                parts.append(idx[~mask])
            self._nondeg_idx[p] = (
                np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
            )
        return self._nondeg_idx[p]

    def column_map(self, p: int) -> np.ndarray:
        """Full enumeration index -> nondegenerate rank (-1 for degenerate)."""
        if p not in self._colmap:
            nd = self.nondegenerate_indices(p)
            cmap = np.full(self.count(p), -1, dtype=np.int64)
            cmap[nd] = np.arange(nd.size, dtype=np.int64)
            self._colmap[p] = cmap
        return self._colmap[p]

    def face_index_batch(self, p: int, i: int, idx: np.ndarray) -> np.ndarray:
        """Enumeration indices of d_i applied to the given p-simplices."""
        self._require_indexable(p)
        bases = _bases(self.cm, p)
        batch = _denorm_batch(self.cm, self._ops, p, _decode(bases, idx))
        fb = _face_batch(batch, i)
        return _encode(
            _bases(self.cm, p - 1),
            _normalize_batch(self.cm, self._ops, fb),
            idx.size,
        )

    def degeneracy_index_batch(self, p: int, i: int, idx: np.ndarray) -> np.ndarray:
        """Enumeration indices of s_i applied to the given p-simplices."""
        self._require_indexable(p + 1)
        bases = _bases(self.cm, p)
        batch = _denorm_batch(self.cm, self._ops, p, _decode(bases, idx))
        db = _degeneracy_batch(batch, i, idx.size)
        return _encode(
            _bases(self.cm, p + 1),
            _normalize_batch(self.cm, self._ops, db),
            idx.size,
        )

    def _require_indexable(self, p: int):
        # scalar indices are int64; refuse levels whose index space overflows
        if self.count(p) >= 1 << 62:
            raise BudgetExceeded(f"level {p} index space exceeds 62 bits")

    def faces_of_nondegenerate(self, p: int, chunk: int = _CHUNK):
        """Yield (rows, i, face_indices) for all faces of nondegenerate
        p-simplices, in chunks."""
        nd = self.nondegenerate_indices(p)
        bases = _bases(self.cm, p)
        fbases = _bases(self.cm, p - 1)
        for start in range(0, nd.size, chunk):
            idx = nd[start : start + chunk]
            rows = np.arange(start, start + idx.size, dtype=np.int64)
            batch = _denorm_batch(self.cm, self._ops, p, _decode(bases, idx))
            for i in range(p + 1):
                fb = _face_batch(batch, i)
                fidx = _encode(fbases, _normalize_batch(self.cm, self._ops, fb), idx.size)
                yield rows, i, fidx

    # scalar conveniences ---------------------------------------------------

    def face(self, p: int, i: int, coords: NormalizedCoordinates) -> NormalizedCoordinates:
        return face(self.cm, p, i, coords)

    def degeneracy(self, p: int, i: int, coords: NormalizedCoordinates) -> NormalizedCoordinates:
        return degeneracy(self.cm, p, i, coords)

    def check_kan(self, m: int, j: int, node_budget: int = 1 << 22) -> KanReport:
        return check_kan(self.cm, m, j, budget=self.budget, node_budget=node_budget)


def check_kan(
    cm: CrossedModule,
    m: int,
    j: int,
    budget: int = DEFAULT_BUDGET,
    node_budget: int = 1 << 22,
) -> KanReport:
    """Enumerate all horns Lambda[m, j] -> nerve and count their fillers.

    A horn is a family (x_i)_{i != j} of (m-1)-simplices with d_a x_b =
    d_{b-1} x_a for a < b; a filler is an m-simplex with faces x_i.  Every
    horn count is exact; enumeration aborts once ``node_budget`` search nodes
    are visited.
    """
    if not (1 <= m):
        raise ValueError("horn level must be >= 1")
    if not (0 <= j <= m):
        raise ValueError("horn index out of range")
    levels = NerveLevels(cm, budget=budget, skip_validation=True)
    n_faces = levels.count(m - 1)
    if n_faces > budget or levels.count(m) > budget:
        raise BudgetExceeded("kan check exceeds enumeration budget")

    # faces of every (m-1)-simplex, as enumeration indices at level m-2
    sub_faces = None
    if m >= 2:
        all_idx = np.arange(n_faces, dtype=np.int64)
        sub_faces = [
            levels.face_index_batch(m - 1, a, all_idx) for a in range(m)
        ]

    # fillers: face signatures of every m-simplex
    positions = [i for i in range(m + 1) if i != j]
    filled = Counter()
    total_m = levels.count(m)
    all_m = np.arange(total_m, dtype=np.int64)
    sigs = np.stack(
        [levels.face_index_batch(m, i, all_m) for i in positions], axis=1
    )
    for row in sigs:
        filled[tuple(int(v) for v in row)] += 1

    # abstract horns by backtracking with pairwise face compatibility
    horn_count = 0
    nodes = 0

    def extend(assignment: list[int]):
        nonlocal horn_count, nodes
        k = len(assignment)
        if k == len(positions):
            horn_count += 1
            return
        b = positions[k]
        for x in range(n_faces):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("kan horn enumeration exceeded node budget")
            ok = True
            for t, a in enumerate(positions[:k]):
                # both a < b and faces at level m-2 must agree
                if sub_faces is not None:
                    if sub_faces[a][x] != sub_faces[b - 1][assignment[t]]:
                        ok = False
                        break
            if ok:
                assignment.append(x)
                extend(assignment)
                assignment.pop()

    extend([])
    multiplicities = list(filled.values())
    return KanReport(
        level=m,
        horn_index=j,
        horn_count=horn_count,
        filled_horns=len(filled),
        min_fillers=min(multiplicities) if multiplicities else 0,
        max_fillers=max(multiplicities) if multiplicities else 0,
    )
