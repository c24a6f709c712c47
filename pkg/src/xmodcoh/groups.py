"""Finite groups, homomorphisms and actions as exact index tables.

Every group is a dense multiplication table on element indices 0..order-1,
with the identity always at index 0.  Groups in scope are tiny (order <= ~64);
dense tables keep every construction exhaustively checkable.  All types are
immutable after construction and safe to share between workers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "GroupAction",
    "make_cyclic",
    "make_table_group",
    "direct_product",
    "trivial_group",
    "trivial_hom",
    "identity_hom",
    "trivial_action",
    "subgroup_of",
    "kernel",
    "cokernel",
]

# Exhaustive axiom checks are cheap for the orders in scope; above this cost we
# fall back to seeded random spot checks.
_EXHAUSTIVE_ORDER = 64
_SPOT_CHECKS = 4096


class GroupStructureError(ValueError):
    """Raised when a table fails the group / hom / action axioms."""


def _as_table(rows: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul[a][b]`` is the index of the product a*b; index 0 is the identity.
    """

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    name: str = "G"

    def __post_init__(self):
        n = self.order
        if n <= 0:
            raise GroupStructureError("group order must be positive")
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise GroupStructureError("multiplication table must be order x order")
        if any(not (0 <= v < n) for row in self.mul for v in row):
            raise GroupStructureError("multiplication table entry out of range")
        if len(self.inv) != n:
            raise GroupStructureError("inverse table must have one entry per element")
        for x in range(n):
            if self.mul[0][x] != x or self.mul[x][0] != x:
                raise GroupStructureError(f"index 0 is not an identity (witness {x})")
            if self.mul[x][self.inv[x]] != 0 or self.mul[self.inv[x]][x] != 0:
                raise GroupStructureError(f"inverse table wrong at {x}")
        if n <= _EXHAUSTIVE_ORDER:
            triples = iproduct(range(n), range(n), range(n))
        else:
            rng = random.Random(0xA55)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(_SPOT_CHECKS)
            )
        for a, b, c in triples:
            if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                raise GroupStructureError(f"associativity fails at {(a, b, c)}")

    # -- basic operations ------------------------------------------------

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != 0:
            x = self.mul[x][a]
            k += 1
        return k

    def element_orders(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_order(a) for a in self.elements()))

    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a]
            for a in range(self.order)
            for b in range(self.order)
        )

    def conjugate(self, x: int, h: int) -> int:
        """h^-1 * x * h."""
        return self.mul[self.mul[self.inv[h]][x]][h]

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@lru_cache(maxsize=None)
def _np_mul(group: FiniteGroup) -> np.ndarray:
    return np.array(group.mul, dtype=np.int64)


@lru_cache(maxsize=None)
def _np_inv(group: FiniteGroup) -> np.ndarray:
    return np.array(group.inv, dtype=np.int64)


def np_tables(group: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    """Cached numpy mirrors of (mul, inv) for vectorised bulk evaluation."""
    return _np_mul(group), _np_inv(group)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism as a dense index table, validated exhaustively."""

    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.order:
            raise GroupStructureError("hom table must cover the source")
        if any(not (0 <= v < self.target.order) for v in self.map):
            raise GroupStructureError("hom table entry out of range")
        if self.map[0] != 0:
            raise GroupStructureError("hom must send identity to identity")
        mul_s, mul_t = self.source.mul, self.target.mul
        f = self.map
        for a in range(self.source.order):
            for b in range(self.source.order):
                if f[mul_s[a][b]] != mul_t[f[a]][f[b]]:
                    raise GroupStructureError(
                        f"multiplicativity fails at pair {(a, b)}"
                    )

    def __call__(self, a: int) -> int:
        return self.map[a]

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self o first (apply ``first``, then ``self``)."""
        if first.target is not self.source and first.target != self.source:
            raise GroupStructureError("composition mismatch")
        return GroupHom(first.source, self.target, tuple(self.map[v] for v in first.map))


@lru_cache(maxsize=None)
def _np_hom(hom: GroupHom) -> np.ndarray:
    return np.array(hom.map, dtype=np.int64)


def np_hom_table(hom: GroupHom) -> np.ndarray:
    return _np_hom(hom)


@dataclass(frozen=True)
class GroupAction:
    """A right action of ``group`` on ``space`` by automorphisms.

    ``act[g][h]`` is g^h.  Validated: act(., h) is an automorphism for each h,
    the identity acts trivially, and act(act(g,h1),h2) = act(g, h1*h2).
    """

    group: FiniteGroup  # the actor H
    space: FiniteGroup  # the acted-on G
    act: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ng, nh = self.space.order, self.group.order
        if len(self.act) != ng or any(len(row) != nh for row in self.act):
            raise GroupStructureError("action table must be |space| x |group|")
        for g in range(ng):
            if self.act[g][0] != g:
                raise GroupStructureError(f"identity must act trivially (witness {g})")
        for h in range(nh):
            seen = {self.act[g][h] for g in range(ng)}
            if len(seen) != ng:
                raise GroupStructureError(f"act(., {h}) is not a bijection")
            for a in range(ng):
                for b in range(ng):
                    if (
                        self.act[self.space.mul[a][b]][h]
                        != self.space.mul[self.act[a][h]][self.act[b][h]]
                    ):
                        raise GroupStructureError(
                            f"act(., {h}) is not a homomorphism at {(a, b)}"
                        )
        mul_h = self.group.mul
        if ng * nh * nh <= _EXHAUSTIVE_ORDER**3:
            triples = iproduct(range(ng), range(nh), range(nh))
        else:
            rng = random.Random(0x5EED)
            triples = (
                (rng.randrange(ng), rng.randrange(nh), rng.randrange(nh))
                for _ in range(_SPOT_CHECKS)
            )
        for g, h1, h2 in triples:
            if self.act[self.act[g][h1]][h2] != self.act[g][mul_h[h1][h2]]:
                raise GroupStructureError(
                    f"right-action axiom fails at {(g, h1, h2)}"
                )

    def __call__(self, g: int, h: int) -> int:
        return self.act[g][h]


@lru_cache(maxsize=None)
def _np_act(action: GroupAction) -> np.ndarray:
    return np.array(action.act, dtype=np.int64)


def np_action_table(action: GroupAction) -> np.ndarray:
    return _np_act(action)


# -- constructors ---------------------------------------------------------


def make_cyclic(n: int, name: str | None = None) -> FiniteGroup:
    """Cyclic group of order n, element k at index k."""
    if n < 1:
        raise GroupStructureError("cyclic group order must be >= 1")
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return FiniteGroup(n, mul, inv, name or f"Z{n}")


def trivial_group() -> FiniteGroup:
    return make_cyclic(1, name="1")


def make_table_group(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """Group from an explicit multiplication table (identity must be index 0)."""
    mul = _as_table(table)
    n = len(mul)
    inv = []
    for a in range(n):
        candidates = [b for b in range(n) if mul[a][b] == 0 and mul[b][a] == 0]
        if len(candidates) != 1:
            raise GroupStructureError(f"element {a} has no unique two-sided inverse")
        inv.append(candidates[0])
    return FiniteGroup(n, mul, tuple(inv), name)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Componentwise product with lexicographic index (a-index major)."""
    nb = b.order
    n = a.order * nb

    def idx(x, y):
        return x * nb + y

    rows = []
    for xa in range(a.order):
        for xb in range(nb):
            row = [0] * n
            for ya in range(a.order):
                for yb in range(nb):
                    row[idx(ya, yb)] = idx(a.mul[xa][ya], b.mul[xb][yb])
            rows.append(tuple(row))
    mul = tuple(rows)
    inv = tuple(idx(a.inv[x // nb], b.inv[x % nb]) for x in range(n))
    return FiniteGroup(n, mul, inv, f"{a.name}x{b.name}")


def product_projections(a: FiniteGroup, b: FiniteGroup, prod: FiniteGroup) -> tuple[GroupHom, GroupHom]:
    nb = b.order
    pa = GroupHom(prod, a, tuple(x // nb for x in range(prod.order)))
    pb = GroupHom(prod, b, tuple(x % nb for x in range(prod.order)))
    return pa, pb


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, (0,) * source.order)


def identity_hom(group: FiniteGroup) -> GroupHom:
    return GroupHom(group, group, tuple(range(group.order)))


def trivial_action(group: FiniteGroup, space: FiniteGroup) -> GroupAction:
    return GroupAction(group, space, tuple((g,) * group.order for g in range(space.order)))


def subgroup_of(parent: FiniteGroup, members: Iterable[int], name: str = "S") -> tuple[FiniteGroup, GroupHom]:
    """Subgroup on the given member indices, with its embedding hom.

    Members are reindexed with the identity first, then ascending parent index.
    """
    elems = sorted(set(int(m) for m in members))
    if 0 not in elems:
        raise GroupStructureError("subgroup must contain the identity")
    elems.remove(0)
    elems = [0] + elems
    pos = {e: i for i, e in enumerate(elems)}
    for x in elems:
        for y in elems:
            if parent.mul[x][y] not in pos:
                raise GroupStructureError(f"subset not closed at {(x, y)}")
    mul = tuple(tuple(pos[parent.mul[x][y]] for y in elems) for x in elems)
    inv = tuple(pos[parent.inv[x]] for x in elems)
    sub = FiniteGroup(len(elems), mul, inv, name)
    embedding = GroupHom(sub, parent, tuple(elems))
    return sub, embedding


def kernel(h: GroupHom) -> tuple[FiniteGroup, GroupHom]:
    """Kernel subgroup of the source, with its embedding."""
    members = [a for a in h.source.elements() if h.map[a] == 0]
    return subgroup_of(h.source, members, name=f"ker({h.source.name})")


def image_is_normal(h: GroupHom) -> bool:
    img = h.image()
    t = h.target
    return all(t.conjugate(m, x) in img for m in img for x in t.elements())


def cokernel(h: GroupHom) -> tuple[FiniteGroup, GroupHom]:
    """Quotient target/image(h) with the projection hom.

    Requires the image to be normal in the target (always true for crossed
    modules); cosets are indexed by their minimal member, identity coset first.
    """
    if not image_is_normal(h):
        raise GroupStructureError("image is not normal in the target")
    t = h.target
    img = sorted(h.image())
    coset_of = [-1] * t.order
    reps: list[int] = []
    for x in t.elements():
        if coset_of[x] >= 0:
            continue
        members = sorted(t.mul[x][m] for m in img)
        rep_index = len(reps)
        reps.append(members[0])
        for m in members:
            coset_of[m] = rep_index
    # reorder so the identity coset is index 0, remaining by ascending rep
    order = sorted(range(len(reps)), key=lambda i: reps[i])
    assert reps[order[0]] == 0
    relabel = {old: new for new, old in enumerate(order)}
    reps = [reps[i] for i in order]
    proj = tuple(relabel[coset_of[x]] for x in t.elements())
    n = len(reps)
    mul = tuple(tuple(proj[t.mul[reps[x]][reps[y]]] for y in range(n)) for x in range(n))
    inv = tuple(proj[t.inv[reps[x]]] for x in range(n))
    quotient = FiniteGroup(n, mul, inv, f"{t.name}/im")
    return quotient, GroupHom(t, quotient, proj)
