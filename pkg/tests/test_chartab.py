"""Character tables, cyclotomic arithmetic, and characters of lifts."""

from fractions import Fraction

import numpy as np
import pytest

from mackeyalg.chartab import (Cyc, character_of_lift, character_table,
                               conjugacy_classes, ordinary_multiplicities)
from mackeyalg.ffield import GF
from mackeyalg.grp import (alternating, cyclic, dihedral, quaternion, sl23,
                           subgroup_lattice, symmetric)
from mackeyalg.modrep import permutation_module


def test_cyc_arithmetic():
    z = Cyc.root(12, 1)
    assert z.galois(11) == z.conj()
    one = Cyc.rat(12, 1)
    acc = Cyc.rat(12, 0)
    prod = one
    for _ in range(12):
        prod = prod * z
    assert prod == one                       # z^12 = 1
    for j in range(12):
        acc = acc + Cyc.root(12, j)
    assert acc == Cyc.rat(12, 0)             # sum of all 12th roots
    v = Cyc.root(3, 1) + Cyc.root(3, 2)
    assert v.is_rational() and v.rational_value() == -1


def test_conjugacy_class_counts():
    for G, r in [(cyclic(4), 4), (symmetric(3), 3), (quaternion(), 5),
                 (alternating(4), 4), (sl23(), 7)]:
        classes, class_of = conjugacy_classes(G)
        assert len(classes) == r
        assert sorted(x for c in classes for x in c) == list(range(G.order))


@pytest.mark.parametrize("G,degs", [
    (cyclic(2), [1, 1]), (symmetric(3), [1, 1, 2]),
    (dihedral(4), [1, 1, 1, 1, 2]), (quaternion(), [1, 1, 1, 1, 2]),
    (alternating(4), [1, 1, 1, 3]), (sl23(), [1, 1, 1, 2, 2, 2, 3])])
def test_character_degrees(G, degs):
    ct = character_table(G)
    assert ct.degrees == degs
    assert sum(d * d for d in degs) == G.order


def test_s3_table_values():
    ct = character_table(symmetric(3))
    chi = ct.values[2]                        # the 2-dimensional character
    by_order = {o: k for k, o in enumerate(ct.orders)}
    assert chi[by_order[2]] == Cyc.rat(ct.exponent, 0)
    assert chi[by_order[3]] == Cyc.rat(ct.exponent, -1)


def test_column_orthogonality_sl23():
    ct = character_table(sl23())
    for k, cls in enumerate(ct.classes):
        s = Cyc.rat(ct.exponent, 0)
        for chi in ct.values:
            s = s + chi[k] * chi[k].conj()
        assert s.rational_value() == Fraction(24, len(cls))


@pytest.mark.parametrize("G,F", [
    (symmetric(3), GF(2)), (symmetric(3), GF(3)), (sl23(), GF(3)),
    (sl23(), GF(2, 2))])
def test_lift_is_permutation_character(G, F):
    lat = subgroup_lattice(G)
    ct = character_table(G)
    for cls in lat.classes:
        sid = cls[0]
        V = permutation_module(G, F, lat.cosact[sid])
        psi = character_of_lift(V, F.p, ct)
        for k, g in enumerate(ct.reps):
            fixed = int((lat.cosact[sid][g] == np.arange(V.dim)).sum())
            assert psi[k] == Cyc.rat(ct.exponent, fixed)
        mults = ordinary_multiplicities(ct, psi)
        assert sum(m * d for m, d in zip(mults, ct.degrees)) == V.dim


def test_ordinary_multiplicities_rejects_nonsense():
    ct = character_table(symmetric(3))
    bogus = [Cyc.rat(ct.exponent, 1), Cyc.rat(ct.exponent, 0),
             Cyc.rat(ct.exponent, 0)]
    with pytest.raises(AssertionError):
        ordinary_multiplicities(ct, bogus)
