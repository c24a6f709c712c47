import random

import numpy as np
import pytest

from xmodcoh.nerve import (
    BudgetExceeded,
    NerveLevels,
    NerveSimplex,
    NormalizedCoordinates,
    check_kan,
    coordinate_index,
    coordinates_from_index,
    degeneracy,
    denormalize,
    face,
    level_count,
    normalize,
    pairs,
    triples,
    _pair_index,
    _triple_index,
)

from . import oracle_em
from .helpers import (
    corpus_small,
    corpus_spot,
    xm_group,
    xm_shift,
    xm_z2_trivial_z2,
    xm_z4_to_z2,
    xm_z3_to_z2_inversion,
)
from xmodcoh.groups import make_cyclic


def closed_form_faces(cm, coords):
    """The level-3 face formulas in the paper chart; d1 in the corrected form
    forced by the simplicial identities (see tests below for the variant)."""
    g, h = cm.g, cm.h
    imap, act = cm.i.map, cm.action.act
    g0, g2, g3 = coords.g_part
    h0, f01, h2 = coords.h_part
    d0 = NormalizedCoordinates(2, (g0,), (h0, f01))
    g1 = g.mul[g.mul[g.inv[act[g3][f01]]][g0]][g2]
    h1 = h.mul[h2][imap[g.mul[g.inv[g0]][act[g3][f01]]]]
    d1 = NormalizedCoordinates(2, (g1,), (h1, f01))
    d2 = NormalizedCoordinates(2, (g2,), (h2, h.mul[h0][imap[g0]]))
    d3 = NormalizedCoordinates(
        2,
        (g3,),
        (h.mul[h.mul[h2][imap[g.inv[g0]]]][h.inv[f01]], h.mul[h0][h.inv[f01]]),
    )
    return d0, d1, d2, d3


def printed_d1_variant(cm, coords):
    """d1 with the extra twist and untouched h-part, as displayed in the
    closed-form source; only valid on trivial-twist crossed modules."""
    g, h = cm.g, cm.h
    imap, act = cm.i.map, cm.action.act
    g0, g2, g3 = coords.g_part
    h0, f01, h2 = coords.h_part
    expo = h.mul[h.mul[h2][imap[g.inv[g0]]]][h.inv[h0]]
    g1 = g.mul[g.mul[act[g.inv[g3]][f01]][act[g0][expo]]][g2]
    return NormalizedCoordinates(2, (g1,), (h2, f01))


def _int_count(cm, p):
    return int(level_count(cm, p))


def test_level_counts_match_formula_and_enumeration():
    for cm in corpus_small():
        assert level_count(cm, 0) == 1
        for p in range(6):
            expected = cm.g.order ** (p * (p - 1) // 2) * cm.h.order**p
            assert level_count(cm, p) == expected
        levels = NerveLevels(cm)
        for p in range(5):
            if levels.count(p) > 1 << 16:
                continue
            nd = levels.nondegenerate_indices(p)
            assert nd.size == levels.nondegenerate_count(p), (cm.name, p)


def test_level_count_examples():
    assert level_count(xm_z2_trivial_z2(), 3) == 64
    z4, z2 = make_cyclic(4), make_cyclic(2)
    assert level_count(xm_z4_to_z2(), 4) == 4**6 * 2**4 == 65536


def test_arbitrary_precision_counts():
    cm = xm_z4_to_z2()
    assert level_count(cm, 12) == 4**66 * 2**12  # far beyond any budget


def test_roundtrip_denormalize_normalize():
    rng = random.Random(7)
    for cm in corpus_small():
        for p in range(0, 6):
            total = _int_count(cm, p)
            if total <= 2048:
                sample = range(total)
            else:
                sample = [rng.randrange(total) for _ in range(256)]
            for n in sample:
                coords = coordinates_from_index(cm, p, n)
                assert coordinate_index(cm, coords) == n
                edges, gammas = denormalize(cm, coords)
                assert normalize(cm, p, edges, gammas) == coords, (cm.name, p, n)


def test_denormalized_labelings_are_consistent():
    # NerveSimplex construction re-validates every triangle and tetrahedron
    rng = random.Random(11)
    for cm in corpus_small() + corpus_spot():
        for p in range(2, 6):
            total = _int_count(cm, p)
            sample = range(total) if total <= 512 else [rng.randrange(total) for _ in range(64)]
            for n in sample:
                coords = coordinates_from_index(cm, p, n)
                simplex = NerveSimplex.from_coordinates(cm, coords)
                assert simplex.coordinates() == coords


def test_level3_brute_force_matches_denormalization():
    """Independent check of the chart: enumerate raw labelings satisfying the
    triangle and tetrahedron conditions and compare with the denormalized
    enumeration."""
    cm = xm_z2_trivial_z2()
    g, h = cm.g, cm.h
    imap, act = cm.i.map, cm.action.act
    pidx, tidx = _pair_index(3), _triple_index(3)
    brute = set()
    from itertools import product as iproduct

    for edges in iproduct(range(h.order), repeat=6):
        for gammas in iproduct(range(g.order), repeat=4):
            ok = True
            for (j, k, l) in triples(3):
                lhs = edges[pidx[(j, l)]]
                rhs = h.mul[h.mul[edges[pidx[(j, k)]]][edges[pidx[(k, l)]]]][
                    imap[gammas[tidx[(j, k, l)]]]
                ]
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                lhs = g.mul[act[gammas[tidx[(0, 1, 2)]]][edges[pidx[(2, 3)]]]][
                    gammas[tidx[(0, 2, 3)]]
                ]
                rhs = g.mul[gammas[tidx[(1, 2, 3)]]][gammas[tidx[(0, 1, 3)]]]
                ok = lhs == rhs
            if ok:
                brute.add((edges, gammas))
    assert len(brute) == level_count(cm, 3) == 64
    enumerated = {
        denormalize(cm, coordinates_from_index(cm, 3, n)) for n in range(64)
    }
    assert enumerated == brute


def test_level3_faces_match_closed_forms():
    for cm in corpus_small():
        for n in range(_int_count(cm, 3)):
            coords = coordinates_from_index(cm, 3, n)
            expected = closed_form_faces(cm, coords)
            for i in range(4):
                assert face(cm, 3, i, coords) == expected[i], (cm.name, n, i)


def test_level3_face_example_all_inverses_trivial():
    # trivial i and action over Z/2: d1 reduces to (g3+g0+g2, h2, f01)
    cm = xm_z2_trivial_z2()
    coords = NormalizedCoordinates(3, (1, 1, 1), (0, 1, 0))
    assert face(cm, 3, 1, coords) == NormalizedCoordinates(2, (1,), (0, 1))
    assert face(cm, 3, 0, coords) == NormalizedCoordinates(2, (1,), (0, 1))


def test_printed_d1_variant_matches_on_trivial_twist_corpus():
    for cm in corpus_small():
        trivial_i = all(v == 0 for v in cm.i.map)
        trivial_action = all(
            cm.action.act[x][y] == x for x in cm.g.elements() for y in cm.h.elements()
        )
        if not (trivial_i and trivial_action):
            continue
        for n in range(_int_count(cm, 3)):
            coords = coordinates_from_index(cm, 3, n)
            assert face(cm, 3, 1, coords) == printed_d1_variant(cm, coords), cm.name


def test_printed_d1_variant_breaks_simplicial_identities():
    # with a nontrivial boundary map, the printed variant violates
    # d1 d3 = d2 d1, which pins the corrected form
    cm = xm_z4_to_z2()
    failures = 0
    for n in range(_int_count(cm, 3)):
        coords = coordinates_from_index(cm, 3, n)
        lhs = face(cm, 2, 1, face(cm, 3, 3, coords))
        rhs = face(cm, 2, 2, printed_d1_variant(cm, coords))
        failures += lhs != rhs
    assert failures > 0


def test_level2_and_level1_faces():
    cm = xm_z4_to_z2()
    for n in range(_int_count(cm, 2)):
        coords = coordinates_from_index(cm, 2, n)
        gg, hh, f = coords.g_part[0], coords.h_part[0], coords.h_part[1]
        assert face(cm, 2, 0, coords) == NormalizedCoordinates(1, (), (f,))
        assert face(cm, 2, 1, coords) == NormalizedCoordinates(
            1, (), (cm.h.mul[hh][cm.i.map[gg]],)
        )
        assert face(cm, 2, 2, coords) == NormalizedCoordinates(
            1, (), (cm.h.mul[hh][cm.h.inv[f]],)
        )
    point = NormalizedCoordinates(0, (), ())
    for hval in range(cm.h.order):
        e = NormalizedCoordinates(1, (), (hval,))
        assert face(cm, 1, 0, e) == point
        assert face(cm, 1, 1, e) == point


def _identity_check_batch(levels, p, idx):
    cm = levels.cm
    for j in range(p + 1):
        dj = levels.face_index_batch(p, j, idx)
        for i in range(j):
            lhs = levels.face_index_batch(p - 1, i, dj)
            rhs = levels.face_index_batch(p - 1, j - 1, levels.face_index_batch(p, i, idx))
            assert np.array_equal(lhs, rhs), (cm.name, p, i, j)


def _degeneracy_identity_batch(levels, p, idx):
    cm = levels.cm
    for j in range(p + 1):
        sj = levels.degeneracy_index_batch(p, j, idx)
        for i in range(j + 1):
            lhs = levels.degeneracy_index_batch(p + 1, i, sj)
            rhs = levels.degeneracy_index_batch(
                p + 1, j + 1, levels.degeneracy_index_batch(p, i, idx)
            )
            assert np.array_equal(lhs, rhs), (cm.name, "ss", p, i, j)
        # mixed identities d_i s_j
        for i in range(p + 2):
            ds = levels.face_index_batch(p + 1, i, sj)
            if i == j or i == j + 1:
                assert np.array_equal(ds, idx), (cm.name, "ds-id", p, i, j)
            elif i < j:
                expected = levels.degeneracy_index_batch(
                    p - 1, j - 1, levels.face_index_batch(p, i, idx)
                )
                assert np.array_equal(ds, expected), (cm.name, "ds<", p, i, j)
            else:
                expected = levels.degeneracy_index_batch(
                    p - 1, j, levels.face_index_batch(p, i - 1, idx)
                )
                assert np.array_equal(ds, expected), (cm.name, "ds>", p, i, j)


def test_simplicial_identities_exhaustive_small_levels():
    for cm in corpus_small():
        levels = NerveLevels(cm)
        for p in range(2, 5):
            total = _int_count(cm, p)
            if total > 1 << 16:
                continue
            idx = np.arange(total, dtype=np.int64)
            _identity_check_batch(levels, p, idx)
        for p in range(1, 4):
            total = _int_count(cm, p)
            if total > 1 << 12:
                continue
            idx = np.arange(total, dtype=np.int64)
            _degeneracy_identity_batch(levels, p, idx)


def test_simplicial_identities_random_high_levels():
    rng = np.random.default_rng(5)
    for cm in corpus_small() + corpus_spot():
        levels = NerveLevels(cm)
        for p in (5, 6):
            total = _int_count(cm, p)
            idx = rng.integers(0, total, size=200, dtype=np.int64)
            _identity_check_batch(levels, p, idx)


def test_batch_and_scalar_faces_agree():
    rng = random.Random(3)
    for cm in corpus_small() + corpus_spot():
        levels = NerveLevels(cm)
        for p in range(1, 6):
            total = _int_count(cm, p)
            sample = [rng.randrange(total) for _ in range(32)]
            idx = np.array(sample, dtype=np.int64)
            for i in range(p + 1):
                batch = levels.face_index_batch(p, i, idx)
                for pos, n in enumerate(sample):
                    coords = coordinates_from_index(cm, p, n)
                    scalar = coordinate_index(cm, face(cm, p, i, coords))
                    assert scalar == int(batch[pos])
            for i in range(p + 1):
                batch = levels.degeneracy_index_batch(p, i, idx)
                for pos, n in enumerate(sample):
                    coords = coordinates_from_index(cm, p, n)
                    scalar = coordinate_index(cm, degeneracy(cm, p, i, coords))
                    assert scalar == int(batch[pos])


def test_degeneracy_section_identity():
    cm = xm_z2_trivial_z2()
    for p in range(0, 3):
        for n in range(_int_count(cm, p)):
            coords = coordinates_from_index(cm, p, n)
            for i in range(p + 1):
                s = degeneracy(cm, p, i, coords)
                assert face(cm, p + 1, i, s) == coords
                assert face(cm, p + 1, i + 1, s) == coords


def test_classifying_space_is_the_bar_construction():
    """[1 -> C]: successive edges (e_{k-1,k}) give C^p with bar faces."""
    for order in (2, 3, 4):
        cm = xm_group(make_cyclic(order))
        c = cm.h
        for p in range(1, 5):
            pidx = _pair_index(p)
            for n in range(_int_count(cm, p)):
                coords = coordinates_from_index(cm, p, n)
                edges, gammas = denormalize(cm, coords)
                tup = tuple(edges[pidx[(k - 1, k)]] for k in range(1, p + 1))
                for i in range(p + 1):
                    fe, _ = denormalize(cm, face(cm, p, i, coords))
                    fpidx = _pair_index(p - 1)
                    ftup = tuple(fe[fpidx[(k - 1, k)]] for k in range(1, p))
                    if i == 0:
                        expected = tup[1:]
                    elif i == p:
                        expected = tup[:-1]
                    else:
                        expected = tup[: i - 1] + (c.mul[tup[i - 1]][tup[i]],) + tup[i + 1 :]
                    assert ftup == expected, (order, p, n, i)


def test_shifted_abelian_group_levels():
    # [A -> 1]: one 0- and 1-simplex, N_2 = A, and the whole equals the
    # independent 2-cocycle model with matching faces
    for order in (2, 3):
        a = make_cyclic(order)
        cm = xm_shift(a)
        assert level_count(cm, 1) == 1
        assert level_count(cm, 2) == order
        for p in range(2, 5):
            tidx = _triple_index(p)
            model = oracle_em.enumerate_level(order, p)
            mine = set()
            for n in range(_int_count(cm, p)):
                coords = coordinates_from_index(cm, p, n)
                _, gammas = denormalize(cm, coords)
                mine.add(tuple(gammas[tidx[t]] for t in oracle_em._triangles(p)))
            theirs = {
                tuple(c[t] for t in oracle_em._triangles(p)) for c in model
            }
            assert mine == theirs, (order, p)
            # faces agree under the identification
            for n in range(min(_int_count(cm, p), 128)):
                coords = coordinates_from_index(cm, p, n)
                _, gammas = denormalize(cm, coords)
                c = {t: gammas[tidx[t]] for t in oracle_em._triangles(p)}
                for i in range(p + 1):
                    _, fg = denormalize(cm, face(cm, p, i, coords))
                    ftidx = _triple_index(p - 1)
                    fc = oracle_em.face(c, p, i)
                    assert all(
                        fg[ftidx[t]] == fc[t] for t in oracle_em._triangles(p - 1)
                    ), (order, p, n, i)


def test_nondegenerate_counts_match_oracle():
    cm = xm_shift(make_cyclic(2))
    levels = NerveLevels(cm)
    oracle_counts = [len(oracle_em.nondegenerate_level(2, p)) for p in range(6)]
    assert [levels.nondegenerate_count(p) for p in range(6)] == oracle_counts
    assert [levels.nondegenerate_indices(p).size for p in range(6)] == oracle_counts


def test_budget_refusal():
    cm = xm_z4_to_z2()
    levels = NerveLevels(cm, budget=100)
    assert levels.count(4) == 65536  # counting always works
    with pytest.raises(BudgetExceeded):
        levels.nondegenerate_indices(3)


def test_nerve_simplex_validation():
    cm = xm_z4_to_z2()
    coords = coordinates_from_index(cm, 3, 137)
    simplex = NerveSimplex.from_coordinates(cm, coords)
    g, src = simplex.two_arrow(0, 1, 2)
    assert src == cm.h.mul[simplex.edge(0, 1)][simplex.edge(1, 2)]
    bad = list(simplex.two_arrows)
    bad[0] = (bad[0] + 1) % cm.g.order
    with pytest.raises(ValueError):
        NerveSimplex(cm, 3, simplex.edges, tuple(bad))


def test_kan_conditions():
    cm = xm_z2_trivial_z2()
    r = check_kan(cm, 1, 0)
    assert r.horn_count == 1 and r.min_fillers == r.max_fillers == 2
    for j in range(3):
        r = check_kan(cm, 2, j)
        assert r.is_kan and r.horn_count == 4
        assert r.min_fillers == r.max_fillers == cm.g.order == 2
    for j in range(4):
        r = check_kan(cm, 3, j)
        assert r.unique_fillers and r.horn_count == 64
    r = check_kan(cm, 4, 2)
    assert r.unique_fillers and r.horn_count == 1024

    cm = xm_z4_to_z2()
    r = check_kan(cm, 2, 1)
    assert r.is_kan and r.min_fillers == r.max_fillers == 4
    r = check_kan(cm, 3, 0)
    assert r.unique_fillers and r.horn_count == 512

    cm = xm_z3_to_z2_inversion()
    for j in range(4):
        r = check_kan(cm, 3, j)
        assert r.unique_fillers, (j, r)
