"""Graded-dimension calculator for the structural cohomology statements.

Free graded-commutative algebras follow the Koszul rule (odd generators
exterior, even generators polynomial).  The calculator reproduces, at the
level of truncated dimension sequences: the cohomology of 2-groups with
torus kernel and trivial cokernel (exterior algebra on degree-3 classes),
the finite-cokernel case (invariants of that exterior algebra, concentrated
in degrees 3q), the compact simply-connected-cokernel case (quotient of
H*(BC) by the transgression image, tensor the surviving degree-3 classes),
the string 2-group, and the SL/GL second-page grids driven by the
group-cohomology module.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .groups import FiniteGroup
from .groupcoh import (
    GL2Z,
    SL2Z,
    ModuleRep,
    exterior_power_rep,
    gl2z_cohomology,
    invariants,
    sl2z_cohomology,
    standard_rep,
)

__all__ = [
    "GradedDims",
    "free_gca_dims",
    "kunneth",
    "kernel_torus_cohomology",
    "finite_cokernel_cohomology",
    "CompactGroupSpec",
    "compact_cokernel_cohomology",
    "string_cohomology",
    "exponents",
    "weyl_order",
    "e2_page",
]


@dataclass(frozen=True)
class GradedDims:
    """Dimensions per degree, truncated: ``dims[q]`` for q <= truncation."""

    truncation: int
    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) != self.truncation + 1:
            raise ValueError("dims must run from degree 0 to the truncation")
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be non-negative")

    def __getitem__(self, q: int) -> int:
        return self.dims[q]

    def nonzero_degrees(self) -> tuple[int, ...]:
        return tuple(q for q, d in enumerate(self.dims) if d)


def free_gca_dims(generator_degrees, truncation: int) -> GradedDims:
    """Dimensions of the free graded-commutative algebra on the multiset of
    generator degrees: odd degrees contribute exterior factors (1 + t^d),
    even degrees polynomial factors 1/(1 - t^d)."""
    n = truncation
    dims = [0] * (n + 1)
    dims[0] = 1
    for d in generator_degrees:
        d = int(d)
        if d < 1:
            raise ValueError("generator degrees must be >= 1")
        if d % 2:
            for q in range(n, d - 1, -1):
                dims[q] += dims[q - d]
        else:
            for q in range(d, n + 1):
                dims[q] += dims[q - d]
    return GradedDims(n, tuple(dims))


def kunneth(a: GradedDims, b: GradedDims) -> GradedDims:
    """Convolution of dimension sequences; truncations must agree."""
    if a.truncation != b.truncation:
        raise ValueError("truncation mismatch")
    n = a.truncation
    dims = tuple(
        sum(a.dims[i] * b.dims[q - i] for i in range(q + 1)) for q in range(n + 1)
    )
    return GradedDims(n, dims)


def kernel_torus_cohomology(rank: int, truncation: int) -> GradedDims:
    """Exterior algebra on ``rank`` degree-3 classes: the cohomology of a
    2-group with torus kernel of that rank and trivial cokernel."""
    if rank < 0:
        raise ValueError("rank must be >= 0")
    return free_gca_dims([3] * rank, truncation)


def finite_cokernel_cohomology(
    kernel_rank: int,
    cokernel: FiniteGroup,
    rep: ModuleRep,
    truncation: int,
) -> GradedDims:
    """Invariants of the exterior algebra on ``kernel_rank`` degree-3 classes
    under the finite cokernel action; nonzero only in degrees 3q."""
    if rep.group != cokernel:
        raise ValueError("rep must be a representation of the cokernel")
    if rep.dimension != kernel_rank:
        raise ValueError("rep dimension must equal the kernel rank")
    n = truncation
    dims = [0] * (n + 1)
    for q in range(kernel_rank + 1):
        if 3 * q > n:
            break
        dims[3 * q] = len(invariants(exterior_power_rep(rep, q)))
    return GradedDims(n, tuple(dims))


# compact simple types: exponents e_1..e_r; H*(BC) is polynomial on
# generators of degree 2e_i + 2, and prod(e_i + 1) equals the Weyl order
_EXPONENTS = {
    "A": lambda r: list(range(1, r + 1)),
    "B": lambda r: list(range(1, 2 * r, 2)),
    "C": lambda r: list(range(1, 2 * r, 2)),
    "D": lambda r: list(range(1, 2 * r - 2, 2)) + [r - 1],
    "G": {2: [1, 5]},
    "F": {4: [1, 5, 7, 11]},
    "E": {6: [1, 4, 5, 7, 8, 11], 7: [1, 5, 7, 9, 11, 13, 17], 8: [1, 7, 11, 13, 17, 19, 23, 29]},
}


def weyl_order(family: str, rank: int) -> int:
    if family == "A":
        return factorial(rank + 1)
    if family in ("B", "C"):
        return 2**rank * factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return {("G", 2): 12, ("F", 4): 1152, ("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600}[
        (family, rank)
    ]


def exponents(family: str, rank: int) -> tuple[int, ...]:
    """Exponents of the compact simple type, checked against the Weyl order."""
    family = family.upper()
    spec = _EXPONENTS.get(family)
    if spec is None:
        raise ValueError(f"unknown family {family!r}")
    if callable(spec):
        if (family in "BC" and rank < 2) or (family == "D" and rank < 3) or rank < 1:
            raise ValueError(f"invalid rank {rank} for family {family}")
        exps = spec(rank)
    else:
        if rank not in spec:
            raise ValueError(f"invalid rank {rank} for family {family}")
        exps = spec[rank]
    check = 1
    for e in exps:
        check *= e + 1
    if check != weyl_order(family, rank):
        raise RuntimeError(f"exponent table corrupt for {family}{rank}")
    return tuple(exps)


@dataclass(frozen=True)
class CompactGroupSpec:
    """Input for the compact-cokernel computation.

    ``kernel_rank`` is the dimension of the degree-3 generator space coming
    from the kernel torus.  The cokernel descriptor is one of: a simple type
    ("A2", "E8", ...), a torus ("T3"), or a finite group with a rep.  The
    transgression is given by its rank: it may only hit free degree-4
    generators of H*(B cokernel), of which a simple type has exactly one.
    """

    kernel_rank: int
    cokernel_type: str  # "A2" | "T3" | "finite"
    transgression_rank: int = 0
    finite_group: FiniteGroup | None = None
    finite_rep: ModuleRep | None = None

    def __post_init__(self):
        if self.kernel_rank < 0 or self.transgression_rank < 0:
            raise ValueError("ranks must be >= 0")
        if self.transgression_rank > self.kernel_rank:
            raise ValueError("transgression rank cannot exceed the kernel rank")


def compact_cokernel_cohomology(spec: CompactGroupSpec, truncation: int) -> GradedDims:
    """Dimensions of (H*(BC)/(im T)) tensor the exterior algebra on ker(T).

    The transgression input removes ``transgression_rank`` free degree-4
    generators from H*(BC) and the matching number of degree-3 classes.
    """
    n = truncation
    t = spec.transgression_rank
    kind = spec.cokernel_type.strip()
    surviving3 = [3] * (spec.kernel_rank - t)
    if kind.lower() == "finite":
        if t:
            raise ValueError("a finite cokernel admits no transgression targets")
        if spec.finite_group is None or spec.finite_rep is None:
            raise ValueError("finite cokernel needs a group and a rep")
        return finite_cokernel_cohomology(
            spec.kernel_rank, spec.finite_group, spec.finite_rep, n
        )
    if kind[0].upper() == "T" and kind[1:].isdigit():
        if t:
            raise ValueError("a torus cokernel has no free degree-4 generators")
        torus_rank = int(kind[1:])
        return free_gca_dims([2] * torus_rank + surviving3, n)
    family, rank = kind[0].upper(), int(kind[1:])
    gens = [2 * e + 2 for e in exponents(family, rank)]
    degree4 = gens.count(4)
    if t > degree4:
        raise ValueError(
            f"transgression rank {t} exceeds the {degree4} degree-4 generator(s)"
        )
    for _ in range(t):
        gens.remove(4)
    return free_gca_dims(gens + surviving3, n)


def string_cohomology(simple_type: str, truncation: int) -> GradedDims:
    """Dims for the 2-group refining a simply connected compact simple group:
    circle kernel, transgression an isomorphism onto the degree-4 generator."""
    spec = CompactGroupSpec(kernel_rank=1, cokernel_type=simple_type, transgression_rank=1)
    return compact_cokernel_cohomology(spec, truncation)


# -- second-page grids --------------------------------------------------------


def e2_page(variant: str, n: int, pmax: int, qmax: int) -> list[list[int]]:
    """Grid of dims E2^{p,q} = H^p(SL/GL(n,Z), Lambda^k Q^n) at q = 3k.

    Full pages for n <= 2 (closed forms over Q); for n = 3 only the p = 0
    column (joint invariants of the elementary generators) is available.
    """
    variant = variant.upper()
    if variant not in ("SL", "GL"):
        raise ValueError("variant must be SL or GL")
    if n not in (0, 1, 2, 3):
        raise ValueError("center rank must be 0..3")
    if n == 3 and pmax > 0:
        raise ValueError("n = 3 supports only the p = 0 column")
    grid = [[0] * (qmax + 1) for _ in range(pmax + 1)]

    def column(k: int) -> list[int]:
        """H^p for p = 0..pmax with coefficients Lambda^k."""
        if n == 0:
            return [1 if k == 0 else 0] + [0] * pmax
        if n == 1:
            if variant == "SL":
                h0 = 1 if k in (0, 1) else 0
            else:
                h0 = 1 if k == 0 else 0  # -1 acts by (-1)^k
            return [h0] + [0] * pmax
        if n == 2:
            tag = SL2Z if variant == "SL" else GL2Z
            rep = exterior_power_rep(standard_rep(tag), k)
            fn = sl2z_cohomology if variant == "SL" else gl2z_cohomology
            return list(fn(rep, pmax))
        # n == 3, p = 0 only
        from .groupcoh import SL3Z, GL3Z

        tag = SL3Z if variant == "SL" else GL3Z
        rep = exterior_power_rep(standard_rep(tag), k)
        return [len(invariants(rep))]

    for k in range(0, qmax // 3 + 1):
        if k > n:
            break
        col = column(k)
        for p in range(pmax + 1):
            grid[p][3 * k] = col[p]
    return grid
