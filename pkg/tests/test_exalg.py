"""Exact algebra engine, validated against classical group-algebra facts."""

import numpy as np
import pytest

from mackeyalg.exalg import (AlgebraPresentation, block_idempotents,
                             cartan_matrix, commutative_split,
                             is_symmetric_algebra, primitive_idempotents,
                             primitive_idempotents_unital, radical_small,
                             required_splitting_degree, split_semisimple)
from mackeyalg.ffield import GF
from mackeyalg.grp import (alternating, cyclic, quaternion, sl23, symmetric)
from mackeyalg.mackey import build_algebra
from mackeyalg.modrep import group_algebra


def test_radical_dimensions():
    # rad kC4/GF(2) has dim 3 (augmentation-type filtration of a 2-group)
    assert radical_small(group_algebra(cyclic(4), GF(2))).shape[0] == 3
    # rad kC3/GF(3) has dim 2
    assert radical_small(group_algebra(cyclic(3), GF(3))).shape[0] == 2
    # kS3/GF(3): two 1-dim simples survive, rad has dim 4
    assert radical_small(group_algebra(symmetric(3), GF(3))).shape[0] == 4
    # kA4/GF(2): the composition-factor route must extend and descend
    assert radical_small(group_algebra(alternating(4), GF(2))).shape[0] == 9
    # characteristic coprime to the order: semisimple
    assert radical_small(group_algebra(symmetric(3), GF(5))).shape[0] == 0


def test_group_algebra_cartans():
    F = GF(2)
    cm = cartan_matrix(group_algebra(cyclic(4), F))
    assert cm.matrix.tolist() == [[4]]
    cm = cartan_matrix(group_algebra(quaternion(), F))
    assert cm.matrix.tolist() == [[8]]
    cm = cartan_matrix(group_algebra(symmetric(3), F))
    got = sorted((int(cm.matrix[i, i]), cm.class_sizes[i])
                 for i in range(len(cm.class_sizes)))
    assert got == [(1, 2), (2, 1)]       # simple-projective twice, P(triv)


def test_sl23_mod3_blocks_and_cartan():
    kg = group_algebra(sl23(), GF(3))
    blocks = block_idempotents(kg)
    assert len(blocks) == 3
    cm = cartan_matrix(kg)
    diag = sorted(int(cm.matrix[i, i]) for i in range(cm.matrix.shape[0]))
    assert diag == [1, 3, 3]
    assert (cm.matrix == np.diag(np.diag(cm.matrix))).all()


def test_a4_gf4_cartan():
    # three simples (the 2-regular classes); Cartan is ones + identity
    cm = cartan_matrix(group_algebra(alternating(4), GF(2, 2)))
    perm_free = sorted(map(sorted, cm.matrix.tolist()))
    assert perm_free == [[1, 1, 2]] * 3


def test_splitting_degrees():
    assert required_splitting_degree(group_algebra(cyclic(3), GF(2))) == 2
    assert required_splitting_degree(group_algebra(symmetric(3), GF(2))) == 1
    assert required_splitting_degree(group_algebra(symmetric(3), GF(3))) == 1
    assert required_splitting_degree(group_algebra(alternating(4), GF(2))) == 2
    assert required_splitting_degree(group_algebra(sl23(), GF(3))) == 1


def test_commutative_split_counts():
    # kC6/GF(2) = kC2 (x) kC3: two rational idempotents (C3 part over GF(2))
    kg = group_algebra(cyclic(6), GF(2))
    Z = kg            # commutative already
    idems = commutative_split(Z)
    assert len(idems) == 2
    # over GF(4) the cube roots separate: three idempotents
    idems = commutative_split(group_algebra(cyclic(6), GF(2, 2)))
    assert len(idems) == 3


def test_primitive_idempotents_certified():
    kg = group_algebra(symmetric(3), GF(2))
    idems, class_of, reps = primitive_idempotents(kg)
    # 3 primitive idempotents in 2 classes (sizes 2 and 1)
    assert len(idems) == 3 and len(reps) == 2
    sizes = sorted(class_of.count(i) for i in range(len(reps)))
    assert sizes == [1, 2]
    for e in idems:
        assert (kg.mul(np.asarray(e), np.asarray(e)) == np.asarray(e)).all()


def test_semisimple_split_matrix_algebra():
    # kS3/GF(5) is semisimple with three simples of dims 1, 1, 2
    kg = group_algebra(symmetric(3), GF(5))
    prims = primitive_idempotents_unital(kg)
    assert len(prims) == 4               # 1 + 1 + 2 primitive idempotents


def test_symmetric_algebra_group_algebras():
    ok, lam = is_symmetric_algebra(group_algebra(symmetric(3), GF(2)))
    assert ok and lam is not None


def test_mackey_symmetry_criterion():
    P2 = AlgebraPresentation.from_mackey(build_algebra(cyclic(2)), GF(2))
    ok, _ = is_symmetric_algebra(P2)
    assert ok
    P4 = AlgebraPresentation.from_mackey(build_algebra(cyclic(4)), GF(2))
    ok, _ = is_symmetric_algebra(P4)
    assert not ok


def test_rational_radical():
    # the rational Mackey algebra of C2 is semisimple
    from mackeyalg.cli import rational_mu
    PQ = rational_mu(build_algebra(cyclic(2)))
    assert len(radical_small(PQ)) == 0
