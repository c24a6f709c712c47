import pytest

from xmodcoh.crossed import (
    CrossedModule,
    CrossedModuleMorphism,
    cokernel_projection,
    homotopy_invariants,
    is_equivalence,
    kernel_of_morphism,
    product_crossed_module,
    validate,
    validate_morphism,
)
from xmodcoh.groups import (
    GroupHom,
    GroupStructureError,
    kernel,
    make_cyclic,
    subgroup_of,
    trivial_action,
    trivial_group,
    trivial_hom,
)

from .helpers import (
    corpus_small,
    corpus_spot,
    symmetric_group_3,
    xm_group,
    xm_identity_z2,
    xm_shift,
    xm_z2_trivial_z2,
    xm_z4_to_z2,
)


def test_validate_valid_examples():
    assert validate(xm_shift(make_cyclic(2))).ok
    assert validate(xm_z4_to_z2()).ok
    for cm in corpus_small() + corpus_spot():
        assert validate(cm).ok, cm.name


def test_validate_s3_to_1_fails_peiffer():
    s3 = symmetric_group_3()
    one = trivial_group()
    cm = CrossedModule(s3, one, trivial_hom(s3, one), trivial_action(one, s3))
    report = validate(cm)
    assert not report.ok
    kinds = {k for k, _ in report.violations}
    assert kinds == {"peiffer"}
    # a witness is a non-commuting pair
    x, y = report.violations[0][1]
    assert s3.mul[x][y] != s3.mul[y][x]


def test_kernel_central_and_abelian():
    for cm in corpus_small() + corpus_spot():
        k, emb = kernel(cm.i)
        assert k.is_abelian(), cm.name
        for kk in range(k.order):
            for x in cm.g.elements():
                gk = emb.map[kk]
                assert cm.g.mul[gk][x] == cm.g.mul[x][gk], cm.name


def test_exactness_order_bookkeeping():
    for cm in corpus_small() + corpus_spot():
        inv = homotopy_invariants(cm)
        image = len(set(cm.i.map))
        assert cm.g.order == inv.pi_high.order * image
        assert cm.h.order == image * inv.pi_low.order


def test_cokernel_projection_examples():
    m = cokernel_projection(xm_z4_to_z2())
    assert m.target.h.order == 1 and m.target.g.order == 1
    z3 = make_cyclic(3)
    z2 = make_cyclic(2)
    cm = CrossedModule(z2, z3, trivial_hom(z2, z3), trivial_action(z3, z2))
    m = cokernel_projection(cm)
    assert m.target.h.order == 3
    assert validate_morphism(m).ok
    bc = xm_group(make_cyclic(4))
    m = cokernel_projection(bc)
    assert m.target.h.order == 4 and m.psi.is_bijective()


def test_homotopy_invariants_examples():
    inv = homotopy_invariants(xm_shift(make_cyclic(2)))
    assert inv.pi_low.order == 1 and inv.pi_high.order == 2
    inv = homotopy_invariants(xm_group(make_cyclic(3)))
    assert inv.pi_low.order == 3 and inv.pi_high.order == 1
    inv = homotopy_invariants(xm_z4_to_z2())
    assert inv.pi_low.order == 1 and inv.pi_high.order == 2
    assert set(inv.pi_high_embedding.map) == {0, 2}


def test_kernel_of_morphism_cokernel_projection():
    cm = xm_z4_to_z2()
    ker_cm, into = kernel_of_morphism(cokernel_projection(cm))
    # fiber over the point: H-part is i(G) inside H
    assert ker_cm.h.order == len(set(cm.i.map))
    assert validate(ker_cm).ok
    assert validate_morphism(into).ok


def test_kernel_of_identity_morphism():
    cm = xm_z4_to_z2()
    ident = CrossedModuleMorphism(
        cm, cm, GroupHom(cm.g, cm.g, tuple(range(4))), GroupHom(cm.h, cm.h, (0, 1))
    )
    ker_cm, _ = kernel_of_morphism(ident)
    # H2 x_H G1 over the identity is the graph of i, isomorphic to G
    assert ker_cm.h.order == cm.g.order
    assert validate(ker_cm).ok


def test_kernel_of_morphism_to_point():
    cm = xm_z4_to_z2()
    one = trivial_group()
    point = CrossedModule(one, one, trivial_hom(one, one), trivial_action(one, one))
    m = CrossedModuleMorphism(cm, point, trivial_hom(cm.g, one), trivial_hom(cm.h, one))
    ker_cm, _ = kernel_of_morphism(m)
    assert ker_cm.h.order == 2 and ker_cm.g.order == 4


def test_kernel_requires_surjective_psi():
    z2, z4 = make_cyclic(2), make_cyclic(4)
    src = xm_identity_z2()
    tgt = CrossedModule(z4, z4, GroupHom(z4, z4, tuple(range(4))),
                        trivial_action(z4, z4))
    # psi = inclusion Z/2 -> Z/4 is not surjective
    m = CrossedModuleMorphism(src, tgt, GroupHom(z2, z4, (0, 2)), GroupHom(z2, z4, (0, 2)))
    with pytest.raises(GroupStructureError):
        kernel_of_morphism(m)


def _canonical_equivalence():
    """[Z/2 -> 1] -> [Z/4 -> Z/2], the kernel into the surjection."""
    src = xm_shift(make_cyclic(2))
    tgt = xm_z4_to_z2()
    phi = GroupHom(src.g, tgt.g, (0, 2))
    psi = trivial_hom(src.h, tgt.h)
    return CrossedModuleMorphism(src, tgt, phi, psi)


def test_is_equivalence_examples():
    m = _canonical_equivalence()
    assert validate_morphism(m).ok
    assert is_equivalence(m)

    cm = xm_z4_to_z2()
    ident = CrossedModuleMorphism(
        cm, cm, GroupHom(cm.g, cm.g, tuple(range(4))), GroupHom(cm.h, cm.h, (0, 1))
    )
    assert is_equivalence(ident)

    one = trivial_group()
    point = CrossedModule(one, one, trivial_hom(one, one), trivial_action(one, one))
    z2_shift = xm_shift(make_cyclic(2))
    m = CrossedModuleMorphism(point, z2_shift, trivial_hom(one, z2_shift.g), trivial_hom(one, one))
    assert not is_equivalence(m)

    # [Z/2 = Z/2] -> point is an equivalence (both invariants trivial)
    idz2 = xm_identity_z2()
    m = CrossedModuleMorphism(idz2, point, trivial_hom(idz2.g, one), trivial_hom(idz2.h, one))
    assert is_equivalence(m)


def test_product_crossed_module_valid():
    a = xm_z4_to_z2()
    b = xm_z2_trivial_z2()
    p = product_crossed_module(a, b)
    assert validate(p).ok
    assert p.g.order == 8 and p.h.order == 4
