"""Independent classifying-space model of a finite group C: p-simplices are
tuples in C^p with the usual first-drop / merge / last-drop faces.  Shares no
code with the package under test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .oracle_linalg import rank_fractions, rank_gf2_bitmask, rank_mod_p_dense


def faces(mul, tup):
    p = len(tup)
    out = [tup[1:]]
    for i in range(1, p):
        out.append(tup[: i - 1] + (mul[tup[i - 1]][tup[i]],) + tup[i + 1 :])
    out.append(tup[:-1])
    return out


def betti_numbers(mul, max_degree: int, field):
    """Betti of the normalized complex (tuples avoiding the identity 0)."""
    order = len(mul)
    levels = [
        [t for t in product(range(1, order), repeat=p)] for p in range(max_degree + 2)
    ]
    index = [{t: i for i, t in enumerate(lv)} for lv in levels]
    dims = [len(lv) for lv in levels]
    ranks = []
    for q in range(max_degree + 1):
        rows = []
        for tup in levels[q + 1]:
            row = [0] * dims[q]
            for i, f in enumerate(faces(mul, tup)):
                pos = index[q].get(f)
                if pos is not None:
                    row[pos] += (-1) ** i
            rows.append(row)
        if field == "Q":
            ranks.append(rank_fractions([[Fraction(v) for v in r] for r in rows]))
        elif field == 2:
            masks = []
            for r in rows:
                v = 0
                for pos, x in enumerate(r):
                    if x % 2:
                        v |= 1 << pos
                masks.append(v)
            ranks.append(rank_gf2_bitmask(masks))
        else:
            ranks.append(rank_mod_p_dense(rows, field))
    return tuple(
        dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(max_degree + 1)
    )
