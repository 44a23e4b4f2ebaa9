"""Mackey algebra construction: dimensions, relations, associativity,
corner identification, and the C2 basis automorphism."""

import pytest

from mackeyalg.grp import (cyclic, dihedral, quaternion, sl23, symmetric)
from mackeyalg.mackey import (MackeyAlgebra, build_algebra,
                              corner_group_algebra, phi_automorphism_check)


# full Mackey algebra dimensions; C2 and the closed-form count
# dim = sum over (H, L) of sum_{x in [H\G/L]} #(p-)subgroup classes of
# H meet xLx^-1 are exercised through explicit construction
@pytest.mark.parametrize("G,dim", [
    (cyclic(2), 6), (cyclic(3), 7), (cyclic(4), 21), (symmetric(3), 87)])
def test_full_dimensions(G, dim):
    assert build_algebra(G).dim == dim


@pytest.mark.parametrize("G,p,dim", [
    (symmetric(3), 2, 81), (dihedral(4), 2, 306), (quaternion(), 2, 120),
    (sl23(), 2, 976), (sl23(), 3, 759)])
def test_p_local_dimensions(G, p, dim):
    assert MackeyAlgebra(G, p=p).dim == dim


def test_relations_and_labels():
    for A in (build_algebra(cyclic(4)), build_algebra(symmetric(3))):
        assert A.verify_relations()
        assert A.label_self_check()
    assert MackeyAlgebra(symmetric(3), p=2).label_self_check()


def test_associativity_exhaustive_small():
    assert build_algebra(cyclic(2)).verify_associativity()
    assert build_algebra(symmetric(3)).verify_associativity()


def test_associativity_sampled_large():
    assert MackeyAlgebra(sl23(), 3).verify_associativity(samples=2000)


def test_structure_constants_integral():
    A = build_algebra(symmetric(3))
    for terms in A.structure.values():
        for _, c in terms:
            assert isinstance(c, int) and c > 0


def test_corner_is_group_algebra():
    for G in (symmetric(3), sl23()):
        A = MackeyAlgebra(G, p=2)
        t11, orient = corner_group_algebra(A)
        assert len(t11) == G.order and orient in (+1, -1)


def test_unit_is_diagonal():
    A = MackeyAlgebra(symmetric(3), p=2)
    # the unit of mu^1 is supported on labels with equal outer subgroups
    from mackeyalg.exalg import AlgebraPresentation
    from mackeyalg.ffield import GF
    P = AlgebraPresentation.from_mackey(A, GF(2))
    for i, c in enumerate(P.unit):
        if c:
            lab = A.basis[i]
            assert lab[0] == lab[3]


def test_phi_automorphism():
    assert phi_automorphism_check()
