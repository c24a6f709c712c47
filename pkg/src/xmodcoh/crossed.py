"""Finite crossed modules and their strict morphisms.

A crossed module is a homomorphism i: G -> H with a right H-action on G
subject to equivariance  i(g^h) = h^-1 i(g) h  and the Peiffer identity
x^{i(y)} = y^-1 x y.  Validation returns a witness report rather than
raising, so invalid candidates can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    GroupStructureError,
    cokernel,
    direct_product,
    identity_hom,
    kernel,
    subgroup_of,
    trivial_action,
    trivial_group,
    trivial_hom,
)

__all__ = [
    "CrossedModule",
    "CrossedModuleMorphism",
    "ValidationReport",
    "validate",
    "validate_morphism",
    "kernel_of_morphism",
    "cokernel_projection",
    "homotopy_invariants",
    "HomotopyInvariants",
    "is_equivalence",
]


class InvalidCrossedModule(ValueError):
    pass


@dataclass(frozen=True)
class CrossedModule:
    """The data (G, H, i: G->H, right H-action on G); see ``validate``."""

    g: FiniteGroup
    h: FiniteGroup
    i: GroupHom
    action: GroupAction
    name: str = "X"

    def __post_init__(self):
        if self.i.source != self.g or self.i.target != self.h:
            raise GroupStructureError("i must map G to H")
        if self.action.group != self.h or self.action.space != self.g:
            raise GroupStructureError("action must be an H-action on G")

    def act(self, g: int, h: int) -> int:
        return self.action.act[g][h]

    def __repr__(self):
        return f"CrossedModule({self.name}: {self.g.name}->{self.h.name})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(cm: CrossedModule) -> ValidationReport:
    """Check both crossed-module identities, reporting every witness."""
    bad: list[tuple[str, tuple[int, ...]]] = []
    g, h, i, act = cm.g, cm.h, cm.i.map, cm.action.act
    for x in g.elements():
        for y in h.elements():
            if i[act[x][y]] != h.conjugate(i[x], y):
                bad.append(("equivariance", (x, y)))
    for x in g.elements():
        for y in g.elements():
            if act[x][i[y]] != g.conjugate(x, y):
                bad.append(("peiffer", (x, y)))
    return ValidationReport(tuple(bad))


def require_valid(cm: CrossedModule) -> CrossedModule:
    report = validate(cm)
    if not report.ok:
        kind, witness = report.violations[0]
        raise InvalidCrossedModule(
            f"{cm!r} violates {kind} at {witness} "
            f"({len(report.violations)} violations total)"
        )
    return cm


@dataclass(frozen=True)
class CrossedModuleMorphism:
    """Strict morphism (phi, psi) between crossed modules."""

    source: CrossedModule
    target: CrossedModule
    phi: GroupHom  # G2 -> G1
    psi: GroupHom  # H2 -> H1

    def __post_init__(self):
        if self.phi.source != self.source.g or self.phi.target != self.target.g:
            raise GroupStructureError("phi must map source G to target G")
        if self.psi.source != self.source.h or self.psi.target != self.target.h:
            raise GroupStructureError("psi must map source H to target H")


def validate_morphism(m: CrossedModuleMorphism) -> ValidationReport:
    bad: list[tuple[str, tuple[int, ...]]] = []
    phi, psi = m.phi.map, m.psi.map
    i2, i1 = m.source.i.map, m.target.i.map
    for x in m.source.g.elements():
        if psi[i2[x]] != i1[phi[x]]:
            bad.append(("square", (x,)))
    act2, act1 = m.source.action.act, m.target.action.act
    for x in m.source.g.elements():
        for y in m.source.h.elements():
            if phi[act2[x][y]] != act1[phi[x]][psi[y]]:
                bad.append(("action", (x, y)))
    return ValidationReport(tuple(bad))


def require_valid_morphism(m: CrossedModuleMorphism) -> CrossedModuleMorphism:
    report = validate_morphism(m)
    if not report.ok:
        kind, witness = report.violations[0]
        raise InvalidCrossedModule(f"morphism violates {kind} at {witness}")
    return m


def kernel_of_morphism(
    m: CrossedModuleMorphism,
) -> tuple[CrossedModule, CrossedModuleMorphism]:
    """Kernel crossed module G2 -> H2 x_{H1} G1 with its map into the source.

    Requires psi surjective (the finite stand-in for a surjective submersion).
    The fiber product is materialised as a subgroup of H2 x G1; the returned
    morphism is (id_G2, first projection).
    """
    if not m.psi.is_surjective():
        raise GroupStructureError("kernel requires psi to be surjective")
    src, tgt = m.source, m.target
    prod = direct_product(src.h, tgt.g)
    ng1 = tgt.g.order
    members = [
        h2 * ng1 + g1
        for h2 in src.h.elements()
        for g1 in tgt.g.elements()
        if m.psi.map[h2] == tgt.i.map[g1]
    ]
    fp, fp_embed = subgroup_of(prod, members, name=f"{src.h.name}x_{tgt.h.name}{tgt.g.name}")
    # project a fiber-product element to its H2 component
    proj_h2 = tuple(fp_embed.map[x] // ng1 for x in range(fp.order))
    i_tilde = GroupHom(
        src.g,
        fp,
        tuple(
            fp_embed.map.index(src.i.map[x] * ng1 + m.phi.map[x])
            for x in src.g.elements()
        ),
    )
    act = tuple(
        tuple(src.action.act[g][proj_h2[z]] for z in range(fp.order))
        for g in src.g.elements()
    )
    ker_cm = CrossedModule(
        src.g, fp, i_tilde, GroupAction(fp, src.g, act), name=f"ker({src.name})"
    )
    into_source = CrossedModuleMorphism(
        ker_cm, src, identity_hom(src.g), GroupHom(fp, src.h, proj_h2)
    )
    return ker_cm, into_source


def product_crossed_module(a: CrossedModule, b: CrossedModule) -> CrossedModule:
    """Componentwise product [G1 x G2 -> H1 x H2] (used for Kunneth checks)."""
    g = direct_product(a.g, b.g)
    h = direct_product(a.h, b.h)
    nbg, nbh = b.g.order, b.h.order
    i = GroupHom(
        g,
        h,
        tuple(
            a.i.map[x // nbg] * nbh + b.i.map[x % nbg] for x in range(g.order)
        ),
    )
    act = tuple(
        tuple(
            a.action.act[x // nbg][y // nbh] * nbg + b.action.act[x % nbg][y % nbh]
            for y in range(h.order)
        )
        for x in range(g.order)
    )
    return CrossedModule(g, h, i, GroupAction(h, g, act), name=f"{a.name}x{b.name}")


def cokernel_projection(cm: CrossedModule) -> CrossedModuleMorphism:
    """The projection [G -> H] -> [1 -> H/i(G)]."""
    coker, proj = cokernel(cm.i)
    one = trivial_group()
    target = CrossedModule(
        one,
        coker,
        trivial_hom(one, coker),
        trivial_action(coker, one),
        name=f"[1->{coker.name}]",
    )
    return CrossedModuleMorphism(cm, target, trivial_hom(cm.g, one), proj)


@dataclass(frozen=True)
class HomotopyInvariants:
    """coker(i) with its projection and ker(i) with its embedding.

    For the realised nerve these are the fundamental group and the second
    homotopy group respectively.
    """

    pi_low: FiniteGroup
    pi_low_projection: GroupHom
    pi_high: FiniteGroup
    pi_high_embedding: GroupHom


def homotopy_invariants(cm: CrossedModule) -> HomotopyInvariants:
    coker, proj = cokernel(cm.i)
    ker, embed = kernel(cm.i)
    return HomotopyInvariants(coker, proj, ker, embed)


def _induced_kernel_map(m: CrossedModuleMorphism) -> tuple[GroupHom, FiniteGroup, FiniteGroup]:
    k2, e2 = kernel(m.source.i)
    k1, e1 = kernel(m.target.i)
    pos1 = {e1.map[x]: x for x in range(k1.order)}
    table = tuple(pos1[m.phi.map[e2.map[x]]] for x in range(k2.order))
    return GroupHom(k2, k1, table), k2, k1


def _induced_cokernel_map(m: CrossedModuleMorphism) -> GroupHom:
    c2, p2 = cokernel(m.source.i)
    c1, p1 = cokernel(m.target.i)
    table = [-1] * c2.order
    for h2 in m.source.h.elements():
        table[p2.map[h2]] = p1.map[m.psi.map[h2]]
    return GroupHom(c2, c1, tuple(table))


def is_equivalence(m: CrossedModuleMorphism) -> bool:
    """True iff the induced maps ker(i2)->ker(i1) and coker(i2)->coker(i1)
    are both bijective."""
    ker_map, _, _ = _induced_kernel_map(m)
    coker_map = _induced_cokernel_map(m)
    return ker_map.is_bijective() and coker_map.is_bijective()
