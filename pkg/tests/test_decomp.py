"""Pipeline checks on the small members: block matching, decomposition
matrices, reciprocity, and the structural theorems."""

import numpy as np
import pytest

from mackeyalg.decomp import (defect_one_structure_check,
                              match_up_to_simultaneous_permutation,
                              p_nilpotent_checks, pipeline,
                              required_field_degree)
from mackeyalg.grp import cyclic, sl23, symmetric


def test_permutation_matcher():
    A = np.array([[1, 2], [3, 4]])
    B = np.array([[4, 3], [2, 1]])
    assert match_up_to_simultaneous_permutation(A, B) == [1, 0]
    assert match_up_to_simultaneous_permutation(A, A) == [0, 1]
    C = np.array([[1, 2], [3, 5]])
    assert match_up_to_simultaneous_permutation(A, C) is None


def test_required_degrees():
    assert required_field_degree(cyclic(2), 2) == 1
    assert required_field_degree(symmetric(3), 2) == 1
    assert required_field_degree(cyclic(6), 2) == 2
    assert required_field_degree(sl23(), 2) == 2


def test_c2_pipeline():
    pi = pipeline(cyclic(2), 2)
    bm = pi.block_match()
    assert len(bm.mu_idempotents) == 1 and bm.mu_dims == [6]
    dec = pi.decomposition()
    assert dec.matrix.shape == (2, 3)
    assert sorted(map(sorted, (dec.matrix @ dec.matrix.T).tolist())) \
        == [[1, 2], [1, 2]]
    pi.verify_cartan_reciprocity()


def test_c3_cartan_paper_matrix():
    pi = pipeline(cyclic(3), 3)
    cm, _ = pi.algebra_cartan()
    assert match_up_to_simultaneous_permutation(
        np.asarray(cm.matrix), np.asarray([[2, 1], [1, 3]])) is not None
    dec = pi.decomposition()
    D = dec.matrix
    assert match_up_to_simultaneous_permutation(
        D @ D.T, np.asarray([[2, 1], [1, 3]])) is not None


def test_s3_p2_blocks_and_principal():
    pi = pipeline(symmetric(3), 2)
    bm = pi.block_match()
    assert sorted(bm.mu_dims) == [25, 56]
    assert bm.mu_dims[bm.principal] == 56
    # principal block Cartan is that of the C2 Mackey algebra
    C0 = pi.block_cartan(bm.principal)
    c2 = pipeline(cyclic(2), 2)
    CP, _ = c2.algebra_cartan()
    assert match_up_to_simultaneous_permutation(
        C0, np.asarray(CP.matrix)) is not None


def test_s3_p2_reciprocity_and_nilpotent():
    rep = pipeline(symmetric(3), 2).verify_cartan_reciprocity()
    assert len(rep) == 2
    out = p_nilpotent_checks(symmetric(3), 2)
    assert out["dim"] == 56


def test_s3_p3_defect_one():
    pi = pipeline(symmetric(3), 3)
    bm = pi.block_match()
    assert len(bm.mu_idempotents) == 1      # one block: defect-1 principal
    rep = defect_one_structure_check(symmetric(3), 3, bm.principal)
    assert rep["e"] == 2 and rep["simples"] == 4
    C = np.asarray(rep["cartan"])
    assert (C == C.T).all()


def test_column_blocks_partition():
    dec = pipeline(symmetric(3), 2).decomposition()
    assert len(dec.col_blocks) == len(dec.cols)
    for r in range(dec.matrix.shape[0]):
        for c in range(dec.matrix.shape[1]):
            if dec.matrix[r, c]:
                assert dec.row_blocks[r] == dec.col_blocks[c]
