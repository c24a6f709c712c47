"""Finite-group cohomology with module coefficients, and the closed-form
rational cohomology of SL(2,Z)/GL(2,Z) via the amalgam Z/4 *_{Z/2} Z/6.

Representations are exact rational matrices: one per element for a finite
group, one per named generator for an arithmetic group tag.  The SL(3,Z)
support is deliberately partial: fixed subspaces of explicitly given
finite-order elements and of the elementary generators; the equivariant cell
complex and its first differential are out of scope (the cell-stabilizer page
bookkeeping in the source material is ambiguous about its page index, so only
the fixed-subspace summands are provided).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iproduct
from math import gcd

from .groups import FiniteGroup
from .homology import Ring, parse_ring
from .linalg import SparseIntMatrix, nullspace_fractions, rank_mod_p, rank_over_q

__all__ = [
    "Mat",
    "mat",
    "ModuleRep",
    "ArithmeticGroupTag",
    "SL2Z",
    "GL2Z",
    "SL3Z",
    "GL3Z",
    "standard_rep",
    "finite_rep",
    "trivial_rep",
    "exterior_power_rep",
    "invariants",
    "bar_cohomology",
    "sl2z_cohomology",
    "gl2z_cohomology",
    "SL3Z_CELL_MATRICES",
]

Mat = tuple[tuple[Fraction, ...], ...]


def mat(rows) -> Mat:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def mat_identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, m, k = len(a), len(b[0]) if b else 0, len(b)
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def mat_pow(a: Mat, e: int) -> Mat:
    out = mat_identity(len(a))
    for _ in range(e):
        out = mat_mul(out, a)
    return out


def mat_scale(a: Mat, s) -> Mat:
    return tuple(tuple(Fraction(s) * v for v in row) for row in a)


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_is_invertible(a: Mat) -> bool:
    return len(nullspace_fractions(a)) == 0 if a else True


@dataclass(frozen=True)
class ArithmeticGroupTag:
    """A named infinite matrix group given by generators."""

    name: str
    generator_names: tuple[str, ...]


SL2Z = ArithmeticGroupTag("SL2Z", ("S", "R"))
GL2Z = ArithmeticGroupTag("GL2Z", ("S", "R", "J"))
SL3Z = ArithmeticGroupTag("SL3Z", ("E12", "E13", "E21", "E23", "E31", "E32"))
GL3Z = ArithmeticGroupTag("GL3Z", ("E12", "E13", "E21", "E23", "E31", "E32", "J"))

# order-4 and order-6 generators realising SL(2,Z) = Z/4 *_{Z/2} Z/6, the
# outer involution J inverting both, and elementary matrices for SL(n,Z)
_STANDARD: dict[str, dict[str, Mat]] = {
    "SL2Z": {
        "S": mat([[0, -1], [1, 0]]),
        "R": mat([[0, -1], [1, 1]]),
    },
    "GL2Z": {
        "S": mat([[0, -1], [1, 0]]),
        "R": mat([[0, -1], [1, 1]]),
        "J": mat([[0, 1], [1, 0]]),
    },
}


def _elementary(n: int, i: int, j: int) -> Mat:
    rows = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
    rows[i][j] = Fraction(1)
    return tuple(tuple(r) for r in rows)


_STANDARD["SL3Z"] = {
    f"E{i + 1}{j + 1}": _elementary(3, i, j) for i in range(3) for j in range(3) if i != j
}
_STANDARD["GL3Z"] = dict(_STANDARD["SL3Z"])
_STANDARD["GL3Z"]["J"] = mat([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])

# the three order-2 cell-stabilizer generators used for the partial SL(3,Z)
# fixed-subspace computations
SL3Z_CELL_MATRICES: dict[str, Mat] = {
    "A": mat([[0, -1, 0], [-1, 0, 0], [0, 0, -1]]),
    "B": mat([[-1, 0, 0], [0, 0, -1], [0, -1, 0]]),
    "C": mat([[-1, 0, 0], [0, 0, 1], [0, 1, 0]]),
}


@dataclass(frozen=True)
class ModuleRep:
    """An exact rational representation.

    For a FiniteGroup, ``matrices`` has one matrix per element index and is
    validated against the whole multiplication table.  For an arithmetic tag
    it has one invertible matrix per named generator.
    """

    group: FiniteGroup | ArithmeticGroupTag
    dimension: int
    matrices: tuple[Mat, ...]

    def __post_init__(self):
        d = self.dimension
        for m in self.matrices:
            if len(m) != d or any(len(row) != d for row in m):
                raise ValueError("matrix dimensions do not match the rep")
        if isinstance(self.group, FiniteGroup):
            if len(self.matrices) != self.group.order:
                raise ValueError("finite rep needs one matrix per element")
            if self.matrices[0] != mat_identity(d):
                raise ValueError("identity element must map to the identity matrix")
            for a in range(self.group.order):
                for b in range(self.group.order):
                    if mat_mul(self.matrices[a], self.matrices[b]) != self.matrices[
                        self.group.mul[a][b]
                    ]:
                        raise ValueError(f"rep not multiplicative at {(a, b)}")
        else:
            if len(self.matrices) != len(self.group.generator_names):
                raise ValueError("arithmetic rep needs one matrix per generator")
            for m in self.matrices:
                if not mat_is_invertible(m):
                    raise ValueError("generator matrices must be invertible")

    def generator(self, name: str) -> Mat:
        if not isinstance(self.group, ArithmeticGroupTag):
            raise ValueError("named generators only exist for arithmetic tags")
        return self.matrices[self.group.generator_names.index(name)]

    def element(self, i: int) -> Mat:
        if not isinstance(self.group, FiniteGroup):
            raise ValueError("element matrices only exist for finite groups")
        return self.matrices[i]


def finite_rep(group: FiniteGroup, matrices) -> ModuleRep:
    ms = tuple(mat(m) for m in matrices)
    return ModuleRep(group, len(ms[0]) if ms else 0, ms)


def trivial_rep(group: FiniteGroup, dimension: int = 1) -> ModuleRep:
    return ModuleRep(group, dimension, (mat_identity(dimension),) * group.order)


def standard_rep(tag: ArithmeticGroupTag) -> ModuleRep:
    mats = _STANDARD[tag.name]
    return ModuleRep(tag, len(next(iter(mats.values()))), tuple(mats[n] for n in tag.generator_names))


def exterior_power_rep(rep: ModuleRep, k: int) -> ModuleRep:
    """Action on Lambda^k with the sorted k-subset basis; entries are minors."""
    d = rep.dimension
    if not 0 <= k <= d:
        raise ValueError("exterior power out of range")
    subsets = list(combinations(range(d), k))

    def minor(m: Mat, rows, cols) -> Fraction:
        if not rows:
            return Fraction(1)
        # Laplace expansion is fine at these sizes (k <= dimension <= ~6)
        if len(rows) == 1:
            return m[rows[0]][cols[0]]
        total = Fraction(0)
        r0 = rows[0]
        rest = rows[1:]
        for t, c in enumerate(cols):
            sub = cols[:t] + cols[t + 1 :]
            total += (-1) ** t * m[r0][c] * minor(m, rest, sub)
        return total

    mats = tuple(
        tuple(tuple(minor(m, I, J) for J in subsets) for I in subsets)
        for m in rep.matrices
    )
    return ModuleRep(rep.group, len(subsets), mats)


def invariants(rep: ModuleRep, character=None) -> list[list[Fraction]]:
    """Exact basis of the joint (twisted) fixed space of the rep.

    ``character`` optionally assigns +-1 to each generator (by name for
    arithmetic tags, by element index for finite groups); the result is then
    the subspace where each rho(s) acts by character(s).
    """
    d = rep.dimension
    if isinstance(rep.group, FiniteGroup):
        names = list(range(rep.group.order))
    else:
        names = list(rep.group.generator_names)
    stacked: list[list[Fraction]] = []
    for name, m in zip(names, rep.matrices):
        chi = Fraction(character(name)) if character else Fraction(1)
        diff = mat_sub(m, mat_scale(mat_identity(d), chi))
        stacked.extend([list(row) for row in diff])
    if not stacked:
        return [list(row) for row in mat_identity(d)]
    return [list(v) for v in nullspace_fractions(stacked, cols=d)]


# -- bar-resolution cohomology of finite groups ------------------------------


def _entries_rank(entries: dict, rows: int, cols: int, ring: Ring) -> int:
    if ring.kind == "Q":
        denom = 1
        for v in entries.values():
            denom = denom * v.denominator // gcd(denom, v.denominator)
        coo = [(r, c, int(v * denom)) for (r, c), v in entries.items() if v != 0]
    else:
        p = ring.p
        coo = []
        for (r, c), v in entries.items():
            if v.denominator % p == 0:
                raise ValueError(f"coefficient denominator not invertible mod {p}")
            res = (v.numerator * pow(v.denominator, -1, p)) % p
            if res:
                coo.append((r, c, res))
    m = SparseIntMatrix(rows, cols, tuple(coo))
    return rank_over_q(m) if ring.kind == "Q" else rank_mod_p(m, ring.p)


def bar_cohomology(
    grp: FiniteGroup,
    rep: ModuleRep,
    max_n: int,
    field: Ring | str = "Q",
    cochain_budget: int = 1 << 20,
) -> tuple[int, ...]:
    """H^n(grp, rep) for n <= max_n from inhomogeneous bar cochains.

    C^n = maps(grp^n -> V); (delta f)(g_1..g_{n+1}) = g_1.f(g_2..) +
    sum (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g_1..g_n).
    """
    ring = parse_ring(field) if isinstance(field, str) else field
    if ring.kind == "Z":
        raise ValueError("bar cohomology is implemented over fields only")
    if not isinstance(rep.group, FiniteGroup) or rep.group != grp:
        raise ValueError("rep must be a representation of grp")
    d = rep.dimension
    order = grp.order
    if d * order ** (max_n + 1) > cochain_budget:
        raise ValueError("bar cochain dimension exceeds budget")

    def tuple_index(t: tuple[int, ...]) -> int:
        out = 0
        for g in t:
            out = out * order + g
        return out

    def delta_entries(n: int) -> dict:
        # rows: (g_1..g_{n+1}) x component; cols: (g_1..g_n) x component
        entries: dict[tuple[int, int], Fraction] = {}

        def add(row, col, val):
            if val:
                key = (row, col)
                entries[key] = entries.get(key, Fraction(0)) + val

        for tup in iproduct(range(order), repeat=n + 1):
            row_base = tuple_index(tup) * d
            m0 = rep.matrices[tup[0]]
            col = tuple_index(tup[1:]) * d
            for a in range(d):
                for b in range(d):
                    add(row_base + a, col + b, m0[a][b])
            for i in range(1, n + 1):
                merged = tup[: i - 1] + (grp.mul[tup[i - 1]][tup[i]],) + tup[i + 1 :]
                col = tuple_index(merged) * d
                sign = (-1) ** i
                for a in range(d):
                    add(row_base + a, col + a, Fraction(sign))
            col = tuple_index(tup[:-1]) * d
            sign = (-1) ** (n + 1)
            for a in range(d):
                add(row_base + a, col + a, Fraction(sign))
        return entries

    dims = [d * order**n for n in range(max_n + 2)]
    ranks = []
    for n in range(max_n + 1):
        entries = delta_entries(n)
        ranks.append(_entries_rank(entries, dims[n + 1], dims[n], ring))
    return tuple(
        dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(max_n + 1)
    )


# -- SL(2,Z) / GL(2,Z) over Q ------------------------------------------------


def _fix_basis(m: Mat) -> list[list[Fraction]]:
    return nullspace_fractions(
        [list(row) for row in mat_sub(m, mat_identity(len(m)))], cols=len(m)
    )


def _joint_fix_dim(mats: list[Mat], d: int) -> int:
    stacked: list[list[Fraction]] = []
    for m in mats:
        stacked.extend([list(row) for row in mat_sub(m, mat_identity(d))])
    return len(nullspace_fractions(stacked, cols=d)) if stacked else d


def _span_dim(vectors: list[list[Fraction]]) -> int:
    from .linalg import rref_fractions

    if not vectors:
        return 0
    _, pivots = rref_fractions(vectors)
    return len(pivots)


def _check_sl2z(rep: ModuleRep):
    s, r = rep.generator("S"), rep.generator("R")
    ident = mat_identity(rep.dimension)
    if mat_pow(s, 4) != ident or mat_pow(r, 6) != ident or mat_pow(s, 2) != mat_pow(r, 3):
        raise ValueError("generators do not satisfy the amalgam relations")


def sl2z_cohomology(rep: ModuleRep, max_n: int) -> tuple[int, ...]:
    """H^n(SL(2,Z), rep) over Q from the amalgam exact sequence.

    H^0 = joint fixed space of S and R; H^1 = fix(S^2) modulo fix(S)+fix(R);
    everything above vanishes since finite-group cohomology is trivial over Q.
    """
    if not isinstance(rep.group, ArithmeticGroupTag) or rep.group.name != "SL2Z":
        raise ValueError("rep must carry the SL2Z tag")
    _check_sl2z(rep)
    s, r = rep.generator("S"), rep.generator("R")
    d = rep.dimension
    h0 = _joint_fix_dim([s, r], d)
    fs, fr = _fix_basis(s), _fix_basis(r)
    minus = _fix_basis(mat_pow(s, 2))
    h1 = len(minus) - _span_dim(fs + fr)
    out = [h0, h1] + [0] * max(0, max_n - 1)
    return tuple(out[: max_n + 1])


def gl2z_cohomology(rep: ModuleRep, max_n: int) -> tuple[int, ...]:
    """H^n(GL(2,Z), rep) over Q as the outer-involution invariants of
    H^n(SL(2,Z), rep)."""
    if not isinstance(rep.group, ArithmeticGroupTag) or rep.group.name != "GL2Z":
        raise ValueError("rep must carry the GL2Z tag")
    s, r, j = rep.generator("S"), rep.generator("R"), rep.generator("J")
    d = rep.dimension
    ident = mat_identity(d)
    if mat_pow(j, 2) != ident:
        raise ValueError("J must be an involution")
    jinv = j  # J^2 = I
    if mat_mul(mat_mul(j, s), jinv) != mat_pow(s, 3) or mat_mul(mat_mul(j, r), jinv) != mat_pow(r, 5):
        raise ValueError("J must invert both amalgam generators")
    _check_sl2z(ModuleRep(SL2Z, d, (s, r)))

    h0 = _joint_fix_dim([s, r, j], d)

    # H^1: J-invariants of fix(S^2) / (fix(S) + fix(R))
    v_basis = _fix_basis(mat_pow(s, 2))  # basis of V, as vectors
    w_basis = _fix_basis(s) + _fix_basis(r)
    if not v_basis:
        h1 = 0
    else:
        from .linalg import rref_fractions

        k = len(v_basis)
        # columns of T: coordinates of J*v_t in the v-basis
        t_cols = []
        for vec in v_basis:
            jv = [sum((j[i][t] * vec[t] for t in range(d)), Fraction(0)) for i in range(d)]
            aug = [[v_basis[t][i] for t in range(k)] + [jv[i]] for i in range(d)]
            rref, pivots = rref_fractions(aug)
            x = [Fraction(0)] * k
            for rr, pc in enumerate(pivots):
                if pc == k:
                    raise ValueError("J does not preserve fix(S^2)")
                x[pc] = rref[rr][k]
            t_cols.append(x)
        t_mat = tuple(tuple(t_cols[col][row] for col in range(k)) for row in range(k))
        # express W = fix(S)+fix(R) in v-coordinates
        w_coords = []
        for w in w_basis:
            aug = [[v_basis[t][i] for t in range(k)] + [w[i]] for i in range(d)]
            rref, pivots = rref_fractions(aug)
            x = [Fraction(0)] * k
            for rr, pc in enumerate(pivots):
                if pc == k:
                    raise ValueError("fix(S)+fix(R) not inside fix(S^2)")
                x[pc] = rref[rr][k]
            w_coords.append(x)
        w_dim = _span_dim(w_coords) if w_coords else 0
        tm_minus = mat_sub(t_mat, mat_identity(k))
        # {x : (T - I) x in span(W)} via the kernel of [(T-I) | W]
        block = [
            list(tm_minus[i]) + [w[i] for w in w_coords] for i in range(k)
        ]
        lifted = len(nullspace_fractions(block, cols=k + len(w_coords)))
        # W-columns are independent within the kernel only if Wy = 0 forces y = 0
        w_null = len(nullspace_fractions(
            [[w[i] for w in w_coords] for i in range(k)], cols=len(w_coords)
        )) if w_coords else 0
        h1 = (lifted - w_null) - w_dim
    out = [h0, h1] + [0] * max(0, max_n - 1)
    return tuple(out[: max_n + 1])
