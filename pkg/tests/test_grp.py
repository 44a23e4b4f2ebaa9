"""Group tables, subgroup lattices, quotients, and file parsing."""

import numpy as np
import pytest

from mackeyalg.grp import (alternating, build_group, cyclic, dihedral,
                           direct_product, double_cosets, from_cayley_file,
                           from_permutation_file, normal_p_complement,
                           p_subgroup_classes, quaternion, quotient_group,
                           sl23, subgroup_lattice, subgroup_table,
                           sylow_subgroup, symmetric)


@pytest.mark.parametrize("G,order", [
    (cyclic(6), 6), (dihedral(4), 8), (symmetric(3), 6),
    (alternating(4), 12), (quaternion(), 8), (sl23(), 24)])
def test_group_axioms(G, order):
    assert G.order == order
    n = G.order
    for a in range(n):
        assert G.mult[a, G.id] == a and G.mult[G.id, a] == a
        assert G.mult[a, G.inv[a]] == G.id
    # associativity on all triples
    m = G.mult
    assert (m[m, :][np.arange(n)[:, None, None], np.arange(n)[None, :, None],
                    np.arange(n)[None, None, :]]
            == m[np.arange(n)[:, None, None],
                 m[np.arange(n)[None, :, None],
                   np.arange(n)[None, None, :]]]).all()


@pytest.mark.parametrize("G,subs,classes", [
    (cyclic(2), 2, 2), (symmetric(3), 6, 4), (quaternion(), 6, 6),
    (dihedral(4), 10, 8), (alternating(4), 10, 5), (sl23(), 15, 7)])
def test_subgroup_lattice_counts(G, subs, classes):
    lat = subgroup_lattice(G)
    assert len(lat.subgroups) == subs
    assert len(lat.classes) == classes
    for S in lat.subgroups:     # Lagrange
        assert G.order % S.order == 0


def test_normalizers_and_sylow():
    G = symmetric(3)
    lat = subgroup_lattice(G)
    syl = sylow_subgroup(lat, 2)
    assert syl.order == 2
    assert lat.subgroups[lat.normalizers[syl.id]].order == 2
    assert sylow_subgroup(lat, 3).order == 3


@pytest.mark.parametrize("G,p,expected_order", [
    (symmetric(3), 2, 3), (sl23(), 3, 8), (cyclic(6), 2, 3),
    (cyclic(6), 3, 2)])
def test_normal_p_complement(G, p, expected_order):
    N = normal_p_complement(subgroup_lattice(G), p)
    assert N is not None and N.order == expected_order


def test_no_normal_p_complement():
    assert normal_p_complement(subgroup_lattice(alternating(4)), 2) is None
    assert normal_p_complement(subgroup_lattice(sl23()), 2) is None


def test_quotient_group():
    G = sl23()
    lat = subgroup_lattice(G)
    q8 = next(S for S in lat.subgroups if S.order == 8)
    Q, proj = quotient_group(G, q8.members)
    assert Q.order == 3
    for a in range(G.order):
        for b in range(G.order):
            assert proj[G.mult[a, b]] == Q.mult[proj[a], proj[b]]


def test_subgroup_table():
    G = sl23()
    lat = subgroup_lattice(G)
    q8 = next(S for S in lat.subgroups if S.order == 8)
    T, members = subgroup_table(G, q8.members)
    assert T.order == 8
    for a in range(8):
        for b in range(8):
            assert members[T.mult[a, b]] == G.mult[members[a], members[b]]


def test_double_cosets_partition():
    G = symmetric(3)
    lat = subgroup_lattice(G)
    H = next(S for S in lat.subgroups if S.order == 2)
    L = next(S for S in lat.subgroups if S.order == 3)
    reps = double_cosets(G, H.members, L.members)
    cover = set()
    for x in reps:
        for h in H.members:
            for l in L.members:
                cover.add(int(G.mult[G.mult[h, x], l]))
    assert cover == set(range(G.order))
    assert reps == sorted(reps)


def test_build_group_specs():
    assert build_group("C4").order == 4
    assert build_group("S3").order == 6
    assert build_group("SL(2,3)").order == 24
    assert build_group("C2xC2").order == 4
    with pytest.raises(ValueError):
        build_group("whatever")


def test_group_files(tmp_path):
    # Cayley table file for C3
    p = tmp_path / "c3.txt"
    p.write_text("# name: C3file\n3\n0 1 2\n1 2 0\n2 0 1\n")
    G = from_cayley_file(str(p))
    assert G.order == 3
    # permutation file: S3 from two generators in cycle notation
    q = tmp_path / "s3.txt"
    q.write_text("(1 2)\n(1 2 3)\n")
    H = from_permutation_file(str(q))
    assert H.order == 6
    assert build_group(str(q)).order == 6


def test_direct_product():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.order == 6
    assert all(G.element_order(g) in (1, 2, 3, 6) for g in range(6))
    assert max(G.element_order(g) for g in range(6)) == 6
