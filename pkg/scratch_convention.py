"""Scratch experiment: verify the tetrahedron rule against simplicial identities."""
import itertools
from xmodcoh.groups import (
    FiniteGroup, GroupHom, GroupAction, make_cyclic, direct_product,
    trivial_group, trivial_hom, identity_hom, trivial_action, make_table_group,
)
from xmodcoh.crossed import CrossedModule, validate
from xmodcoh import nerve as nv

def inversion_action(h_group, g_group, odd_elements):
    # elements of H in odd_elements act by inversion on abelian G
    act = tuple(
        tuple(g_group.inv[g] if h in odd_elements else g for h in range(h_group.order))
        for g in range(g_group.order)
    )
    return GroupAction(h_group, g_group, act)

def quaternion_group():
    # elements 1,-1,i,-i,j,-j,k,-k as 0..7
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    def mulq(a, b):
        sa, ua = (1 if a % 2 == 0 else -1), a // 2
        sb, ub = (1 if b % 2 == 0 else -1), b // 2
        # units 0=1,1=i,2=j,3=k
        table = {
            (0,0):(1,0),(0,1):(1,1),(0,2):(1,2),(0,3):(1,3),
            (1,0):(1,1),(1,1):(-1,0),(1,2):(1,3),(1,3):(-1,2),
            (2,0):(1,2),(2,1):(-1,3),(2,2):(-1,0),(2,3):(1,1),
            (3,0):(1,3),(3,1):(1,2),(3,2):(-1,1),(3,3):(-1,0),
        }
        s, u = table[(ua, ub)]
        s *= sa * sb
        return u * 2 + (0 if s == 1 else 1)
    tbl = [[mulq(a, b) for b in range(8)] for a in range(8)]
    return make_table_group(tbl, name="Q8")

# corpus of tricky crossed modules
xmods = {}

z3, z4 = make_cyclic(3), make_cyclic(4)
xmods["z3->z4 inv"] = CrossedModule(z3, z4, trivial_hom(z3, z4),
                                    inversion_action(z4, z3, {1, 3}))

z2 = make_cyclic(2)
xmods["z4->z2 surj"] = CrossedModule(z4, z2, GroupHom(z4, z2, (0,1,0,1)),
                                     trivial_action(z2, z4))

q8 = quaternion_group()
# V4 = Q8 / center; build quotient map and conjugation-by-lift action
from xmodcoh.groups import cokernel as gcok
v4, proj = gcok(GroupHom(make_cyclic(2), q8, (0, 1)))  # center {1,-1} = {0,1}
lift = [proj.map.index(c) for c in range(v4.order)]
act = tuple(tuple(q8.conjugate(x, lift[h]) for h in range(v4.order)) for x in range(8))
xmods["q8->v4 conj"] = CrossedModule(q8, v4, proj, GroupAction(v4, q8, act))

for nm, xm in xmods.items():
    rep = validate(xm)
    print(nm, "valid" if rep.ok else f"INVALID {rep.violations[:3]}")

def check_identities(xm, name, pmax=4):
    cm = xm
    bad = 0
    for p in range(1, pmax + 1):
        total = nv.level_count(cm, p)
        if total > 70000:
            continue
        for n in range(total):
            x = nv.coordinates_from_index(cm, p, n)
            # d_i d_j = d_{j-1} d_i for i < j
            if p >= 2:
                for j in range(p + 1):
                    for i in range(j):
                        a = nv.face(cm, p - 1, i, nv.face(cm, p, j, x))
                        b = nv.face(cm, p - 1, j - 1, nv.face(cm, p, i, x))
                        if a != b:
                            bad += 1
                            if bad < 3:
                                print(f"  {name} p={p} d{i}d{j} fail at {n}")
            # round trip
            e, g = nv.denormalize(cm, x)
            if nv.normalize(cm, p, e, g) != x:
                bad += 1
                print(f"  {name} roundtrip fail p={p} {n}")
        # degeneracy identities on level p-1
        totm = nv.level_count(cm, p - 1)
        if totm <= 70000:
            for n in range(totm):
                x = nv.coordinates_from_index(cm, p - 1, n)
                for i in range(p):
                    s = nv.degeneracy(cm, p - 1, i, x)
                    if nv.face(cm, p, i, s) != x or nv.face(cm, p, i + 1, s) != x:
                        bad += 1
                        print(f"  {name} d s fail p={p-1} i={i} at {n}")
    print(name, "identities:", "OK" if bad == 0 else f"{bad} FAILURES")

for nm, xm in xmods.items():
    check_identities(xm, nm, pmax=4)

# now the printed d1 variant: g1 = (g3^-1)^f01 * g0^{h2 i(g0^-1) h0^-1} * g2, h1 = h2
def printed_d1(cm, coords):
    g, h = cm.g, cm.h
    imap, act = cm.i.map, cm.action.act
    g0, g2, g3 = coords.g_part
    h0, f01, h2 = coords.h_part
    expo = h.mul[h.mul[h2][imap[g.inv[g0]]]][h.inv[h0]]
    g1 = g.mul[g.mul[act[g.inv[g3]][f01]][act[g0][expo]]][g2]
    return nv.NormalizedCoordinates(2, (g1,), (h2, f01))

for nm, xm in xmods.items():
    agree = True
    witness = None
    for n in range(nv.level_count(xm, 3)):
        x = nv.coordinates_from_index(xm, 3, n)
        mine = nv.face(xm, 3, 1, x)
        paper = printed_d1(xm, x)
        if mine != paper:
            agree = False
            witness = (x, mine, paper)
            break
    print(nm, "printed-d1 agrees" if agree else f"printed-d1 DIFFERS e.g. {witness}")

# check whether using the printed d1 satisfies d1d3 = d2d1 on z4->z2
xm = xmods["z4->z2 surj"]
fails = 0
for n in range(nv.level_count(xm, 3)):
    x = nv.coordinates_from_index(xm, 3, n)
    lhs = nv.face(xm, 2, 1, nv.face(xm, 3, 3, x))
    rhs = nv.face(xm, 2, 2, printed_d1(xm, x))
    if lhs != rhs:
        fails += 1
print("printed d1 breaks d1d3=d2d1 on z4->z2 in", fails, "of", nv.level_count(xm, 3), "cases")
