"""Field arithmetic: axioms, linear algebra against a rational oracle,
polynomial helpers, and subfield embeddings."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mackeyalg.ffield import GF, embed_table, q_null_space, q_rank

FIELDS = [GF(2), GF(3), GF(5), GF(2, 2), GF(3, 2), GF(2, 4)]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"GF({F.p}^{F.m})")
def test_field_axioms_exhaustive(F):
    els = range(F.q)
    for a in els:
        assert F.add(a, F.zero) == a
        assert F.mul(a, F.one) == a
        assert F.add(a, F.neg(a)) == F.zero
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one
    for a in els:
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b),
                                                      F.mul(a, c))


def test_from_int_is_ring_hom():
    F = GF(7)
    for a in range(-20, 20):
        for b in range(-20, 20):
            assert F.from_int(a + b) == F.add(F.from_int(a), F.from_int(b))
            assert F.from_int(a * b) == F.mul(F.from_int(a), F.from_int(b))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2), st.data())
def test_rank_matches_rational_oracle(fi, data):
    # random 0/1 matrices have the same rank over Q as their lift, only in
    # characteristic 0; instead compare GF ranks against row-reduced shape
    F = [GF(2), GF(3), GF(5)][fi]
    n, m = data.draw(st.integers(1, 5)), data.draw(st.integers(1, 5))
    A = np.array(data.draw(st.lists(
        st.lists(st.integers(0, F.q - 1), min_size=m, max_size=m),
        min_size=n, max_size=n)), np.int64)
    R, piv = F.rref(A)
    assert F.rank(A) == len(piv)
    # R spans the same row space: every row of A solves against R
    if len(piv):
        assert F.solve(R.T, A.T) is not None
    ker = F.null_space(A)
    assert ker.shape[0] == m - len(piv)
    for v in ker:
        assert not F.mv(A, v).any()


def test_solve_and_inverse():
    F = GF(3, 2)
    rng = np.random.default_rng(7)
    A = rng.integers(0, F.q, size=(6, 6))
    while F.rank(A) < 6:
        A = rng.integers(0, F.q, size=(6, 6))
    Ai = F.inv_mat(A)
    assert (F.matmul(A, Ai) == F.eye(6)).all()
    b = rng.integers(0, F.q, size=6)
    x = F.solve(A, b)
    assert (F.mv(A, x) == b).all()


def test_polynomials_and_roots():
    F = GF(5)
    # f = (x-1)(x-2)^2  -> squarefree part has roots {1, 2}
    f = F.pmul(F.pmul([F.neg(1), 1], [F.neg(2), 1]), [F.neg(2), 1])
    sf = F.squarefree_part(f)
    assert sorted(F.proots(sf)) == [1, 2]
    q, r = F.pdivmod(f, [F.neg(1), 1])
    assert not any(r)


def test_minpoly_mat():
    F = GF(2)
    # nilpotent Jordan block: minpoly x^2
    A = np.array([[0, 1], [0, 0]], np.int64)
    assert F.minpoly_mat(A) == [0, 0, 1]
    assert F.minpoly_mat(F.eye(3)) == [1, 1]


def test_embed_table_is_hom():
    Fs, Fb = GF(2, 2), GF(2, 4)
    T = embed_table(Fs, Fb)
    for a in range(Fs.q):
        for b in range(Fs.q):
            assert T[Fs.add(a, b)] == Fb.add(T[a], T[b])
            assert T[Fs.mul(a, b)] == Fb.mul(T[a], T[b])
    assert T[Fs.one] == Fb.one


def test_rational_helpers():
    A = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert q_rank(A) == 1
    ker = q_null_space(A)
    assert len(ker) == 1
    x, y = ker[0]
    assert x + 2 * y == 0
