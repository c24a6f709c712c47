"""Shared fixtures: the small crossed-module corpus and group builders."""

from __future__ import annotations

from itertools import permutations

from xmodcoh.groups import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    cokernel,
    direct_product,
    make_cyclic,
    make_table_group,
    trivial_action,
    trivial_group,
    trivial_hom,
)
from xmodcoh.crossed import CrossedModule


def symmetric_group_3() -> FiniteGroup:
    """S3 with elements the lex-ordered permutations of (0,1,2); identity first."""
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(q[p[i]] for i in range(3))] for q in perms] for p in perms
    ]
    return make_table_group(table, name="S3")


def quaternion_group() -> FiniteGroup:
    """Q8 with elements 1,-1,i,-i,j,-j,k,-k at indices 0..7."""
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a, b):
        sa, ua = 1 - 2 * (a % 2), a // 2
        sb, ub = 1 - 2 * (b % 2), b // 2
        s, u = unit_mul[(ua, ub)]
        s *= sa * sb
        return u * 2 + (0 if s == 1 else 1)

    return make_table_group([[mul(a, b) for b in range(8)] for a in range(8)], name="Q8")


def inversion_action(actor: FiniteGroup, space: FiniteGroup, inverting) -> GroupAction:
    """Abelian ``space``; elements of ``actor`` in ``inverting`` act by x -> -x."""
    act = tuple(
        tuple(space.inv[g] if h in inverting else g for h in range(actor.order))
        for g in range(space.order)
    )
    return GroupAction(actor, space, act)


def xm_shift(a: FiniteGroup) -> CrossedModule:
    """[A -> 1]: nerve is the degree-2 classifying construction of A."""
    one = trivial_group()
    return CrossedModule(a, one, trivial_hom(a, one), trivial_action(one, a), name=f"[{a.name}->1]")


def xm_group(c: FiniteGroup) -> CrossedModule:
    """[1 -> C]: the ordinary classifying space of C."""
    one = trivial_group()
    return CrossedModule(one, c, trivial_hom(one, c), trivial_action(c, one), name=f"[1->{c.name}]")


def xm_z4_to_z2() -> CrossedModule:
    z4, z2 = make_cyclic(4), make_cyclic(2)
    return CrossedModule(z4, z2, GroupHom(z4, z2, (0, 1, 0, 1)), trivial_action(z2, z4), name="[Z4->Z2]")


def xm_z2_into_z4() -> CrossedModule:
    z2, z4 = make_cyclic(2), make_cyclic(4)
    return CrossedModule(z2, z4, GroupHom(z2, z4, (0, 2)), trivial_action(z4, z2), name="[Z2->Z4]")


def xm_v4_to_z2() -> CrossedModule:
    z2 = make_cyclic(2)
    v4 = direct_product(z2, z2)
    return CrossedModule(v4, z2, GroupHom(v4, z2, (0, 0, 1, 1)), trivial_action(z2, v4), name="[V4->Z2]")


def xm_identity_z2() -> CrossedModule:
    z2 = make_cyclic(2)
    act = GroupAction(z2, z2, tuple((g, g) for g in range(2)))
    return CrossedModule(z2, z2, GroupHom(z2, z2, (0, 1)), act, name="[Z2=Z2]")


def xm_z2_trivial_z2() -> CrossedModule:
    z2 = make_cyclic(2)
    return CrossedModule(z2, z2, trivial_hom(z2, z2), trivial_action(z2, z2), name="[Z2-0>Z2]")


def xm_z3_to_z4_inversion() -> CrossedModule:
    z3, z4 = make_cyclic(3), make_cyclic(4)
    return CrossedModule(
        z3, z4, trivial_hom(z3, z4), inversion_action(z4, z3, {1, 3}), name="[Z3->Z4 inv]"
    )


def xm_z3_to_z2_inversion() -> CrossedModule:
    z3, z2 = make_cyclic(3), make_cyclic(2)
    return CrossedModule(
        z3, z2, trivial_hom(z3, z2), inversion_action(z2, z3, {1}), name="[Z3->Z2 inv]"
    )


def xm_q8_to_v4() -> CrossedModule:
    """Q8 onto its central quotient, acting by conjugation through lifts."""
    q8 = quaternion_group()
    v4, proj = cokernel(GroupHom(make_cyclic(2), q8, (0, 1)))
    lift = [proj.map.index(c) for c in range(v4.order)]
    act = tuple(
        tuple(q8.conjugate(x, lift[h]) for h in range(v4.order)) for x in range(8)
    )
    return CrossedModule(q8, v4, proj, GroupAction(v4, q8, act), name="[Q8->V4]")


def xm_z3_into_s3() -> CrossedModule:
    """The 3-element subgroup inside S3, with the conjugation action."""
    s3 = symmetric_group_3()
    three_cycles = [0] + [x for x in range(6) if s3.element_order(x) == 3]
    z3 = make_cyclic(3)
    # match indices so that the embedding is a hom
    a = three_cycles[1]
    emb = [0, a, s3.mul[a][a]]
    i = GroupHom(z3, s3, tuple(emb))
    inv_emb = {v: k for k, v in enumerate(emb)}
    act = tuple(
        tuple(inv_emb[s3.conjugate(emb[x], h)] for h in range(6)) for x in range(3)
    )
    return CrossedModule(z3, s3, i, GroupAction(s3, z3, act), name="[Z3->S3]")


def corpus_small() -> list[CrossedModule]:
    """Every corpus member with |G|*|H| <= 16."""
    z2, z3, z4 = make_cyclic(2), make_cyclic(3), make_cyclic(4)
    v4 = direct_product(z2, z2)
    return [
        xm_shift(z2),
        xm_shift(z3),
        xm_shift(z4),
        xm_shift(v4),
        xm_group(z2),
        xm_group(z3),
        xm_group(z4),
        xm_z4_to_z2(),
        xm_z2_into_z4(),
        xm_v4_to_z2(),
        xm_identity_z2(),
        xm_z2_trivial_z2(),
        xm_z3_to_z4_inversion(),
        xm_z3_to_z2_inversion(),
    ]


def corpus_spot() -> list[CrossedModule]:
    """Larger members for sampled checks (nonabelian G, nonabelian H)."""
    return [xm_q8_to_v4(), xm_z3_into_s3()]
