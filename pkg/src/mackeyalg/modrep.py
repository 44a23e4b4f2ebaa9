"""Modular representations of small groups: permutation modules, fixed
points, Brauer quotients, and the inventory of p-permutation
indecomposables (direct summands of permutation modules at p-subgroups).

Modules are column-vector spaces over a finite field with an explicit
matrix for every group element.  All decompositions run through the exact
algebra machinery in exalg (endomorphism algebras, certified radicals,
primitive idempotents), so multiplicities and vertex computations are
exact and certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exalg import (AlgebraPresentation, primitive_idempotents_unital,
                    radical_small, _span_rows, _lincomb, _quotient_by_ideal)
from .grp import (GroupTable, SubgroupLattice, subgroup_lattice,
                  subgroup_table, quotient_group, p_subgroup_classes)


class ModuleRep:
    """A group acting on F^d: one code matrix per group element."""

    def __init__(self, G: GroupTable, F, mats, validate=True):
        self.G, self.F = G, F
        self.mats = [np.asarray(M) for M in mats]
        self.dim = self.mats[0].shape[0]
        if validate:
            self.validate()

    def validate(self):
        G, F = self.G, self.F
        assert len(self.mats) == G.order
        assert (self.mats[G.id] == F.eye(self.dim)).all()
        for a in G.generators:
            for b in range(G.order):
                ab = int(G.mult[a, b])
                assert (F.matmul(self.mats[a], self.mats[b])
                        == self.mats[ab]).all()

    @classmethod
    def from_generators(cls, G, F, genmats, dim=None, validate=True):
        d = genmats[0].shape[0] if genmats else dim
        mats = []
        for g in range(G.order):
            M = F.eye(d)
            for i in G.words[g]:
                M = F.matmul(M, genmats[i])
            mats.append(M)
        return cls(G, F, mats, validate=validate)

    def restrict(self, rows):
        """Submodule on the span of the given rows (must be invariant)."""
        F = self.F
        rows = np.asarray(rows)
        mats = []
        for M in self.mats:
            co = F.solve(rows.T, F.matmul(M, rows.T))
            assert co is not None, "span is not invariant"
            mats.append(co)
        return ModuleRep(self.G, F, mats, validate=False)


def permutation_module(G: GroupTable, F, act):
    """Module of the permutation action act[g, x]."""
    act = np.asarray(act)
    size = act.shape[1]
    mats = []
    for g in range(G.order):
        M = F.zeros(size, size)
        M[act[g], np.arange(size)] = F.one
        mats.append(M)
    return ModuleRep(G, F, mats, validate=False)


def fixed_points(V: ModuleRep, members):
    """Row basis of the common fixed space of the given group elements."""
    F = V.F
    blocks = [F.msub(V.mats[h], F.eye(V.dim)) for h in members if h != V.G.id]
    if not blocks:
        return F.eye(V.dim)
    return F.null_space(np.concatenate(blocks, axis=0))


def _coset_reps_in(G, Qmembers, Rmembers):
    rset = set(Rmembers)
    reps, seen = [], set()
    for q in Qmembers:
        if q not in seen:
            reps.append(q)
            for r in rset:
                seen.add(int(G.mult[q, r]))
    return reps


def transfer_map(V: ModuleRep, Qmembers, Rmembers):
    """Matrix of the relative trace V^R -> V^Q: v -> sum over Q/R of q v."""
    F = V.F
    T = F.zeros(V.dim, V.dim)
    for q in _coset_reps_in(V.G, Qmembers, Rmembers):
        T = F.madd(T, V.mats[q])
    return T


@dataclass
class BrauerQuotient:
    module: ModuleRep        # as a module for nbar = N_G(Q)/Q
    nbar: GroupTable
    nbar_reps: list          # G-element representative of each nbar element
    basis: np.ndarray        # rows: lifts of the quotient basis, in V coords


def brauer_quotient(V: ModuleRep, sid, lat: SubgroupLattice):
    """V(Q) = V^Q / sum of transfers from maximal proper subgroups of Q,
    as a module for N_G(Q)/Q."""
    F, G = V.F, V.G
    Q = lat.subgroups[sid]
    fix = fixed_points(V, Q.members)
    maximal = [R.id for R in lat.subgroups
               if lat.inclusion[R.id, sid] and R.order < Q.order
               and not any(lat.inclusion[R.id, M.id] and lat.inclusion[M.id, sid]
                           and R.order < M.order < Q.order
                           for M in lat.subgroups)]
    tr_rows = []
    for Rsid in maximal:
        R = lat.subgroups[Rsid]
        T = transfer_map(V, Q.members, R.members)
        for w in fixed_points(V, R.members):
            tr_rows.append(F.mv(T, w))
    if tr_rows and fix.shape[0]:
        co = F.solve(fix.T, np.stack(tr_rows, axis=1))
        assert co is not None, "transfer image escaped the fixed space"
        S = _span_rows(F, [co[:, i] for i in range(co.shape[1])
                           if co[:, i].any()])
    else:
        S = F.zeros(0, fix.shape[0])
    # quotient coordinates inside the fixed space
    if S.shape[0]:
        R_, pivots = F.rref(S)
        comp = [c for c in range(fix.shape[0]) if c not in pivots]
        full = np.concatenate([R_, F.eye(fix.shape[0])[comp]], axis=0)
    else:
        comp = list(range(fix.shape[0]))
        full = F.eye(fix.shape[0]) if fix.shape[0] else F.zeros(0, 0)
        pivots = []

    def project(vfix):
        co = F.solve(full.T, vfix)
        return co[len(pivots):]

    basis = np.stack([fix[c] for c in comp]) if comp else F.zeros(0, V.dim)
    # N_G(Q)/Q and its action
    Nsub = lat.subgroups[lat.normalizers[sid]]
    NT, nmem = subgroup_table(G, Nsub.members)
    qpos = [nmem.index(q) for q in Q.members]
    nbar, proj = quotient_group(NT, qpos)
    nbar_reps = [None] * nbar.order
    for i, g in enumerate(nmem):
        c = int(proj[i])
        if nbar_reps[c] is None:
            nbar_reps[c] = g
    mats = []
    for c in range(nbar.order):
        g = nbar_reps[c]
        if basis.shape[0] == 0:
            mats.append(F.zeros(0, 0))
            continue
        imgs = F.matmul(V.mats[g], basis.T)      # columns in V coords
        cofix = F.solve(fix.T, imgs)
        assert cofix is not None, "normalizer does not preserve fixed space"
        cols = [project(cofix[:, i]) for i in range(cofix.shape[1])]
        mats.append(np.stack(cols, axis=1))
    W = ModuleRep(nbar, F, mats, validate=True)
    return BrauerQuotient(W, nbar, nbar_reps, basis)


# ----------------------------------------------------------------------
# endomorphism algebras and direct sum decomposition

def endomorphism_algebra(V: ModuleRep):
    """(AlgebraPresentation, list of endomorphism matrices)."""
    F, d = V.F, V.dim
    gens = V.G.generators
    if not gens:
        mats = []
        for i in range(d):
            for j in range(d):
                M = F.zeros(d, d)
                M[i, j] = F.one
                mats.append(M)
        return AlgebraPresentation.from_matrices(F, mats), mats
    blocks = []
    eye = F.eye(d)
    for g in gens:
        Mg = V.mats[g]
        # constraint (X Mg - Mg X) = 0 as a linear map on vec(X)
        # row index (i,j), column index (a,b):
        #   delta_{ia} Mg[b,j] - Mg[i,a] delta_{jb}
        t1 = np.einsum("ia,bj->ijab", eye, Mg)
        t2 = np.einsum("ia,jb->ijab", Mg, eye)
        blocks.append(F.msub(t1, t2).reshape(d * d, d * d))
    ker = F.null_space(np.concatenate(blocks, axis=0))
    mats = [k.reshape(d, d) for k in ker]
    return AlgebraPresentation.from_matrices(F, mats), mats


@dataclass
class Summand:
    module: ModuleRep
    rows: np.ndarray         # embedding: rows span the summand inside V


def decompose(V: ModuleRep):
    """Indecomposable direct summands of V, with embeddings.  Certified:
    the pieces are images of certified primitive orthogonal idempotents of
    End(V) summing to the identity, and their dimensions add up."""
    F = V.F
    if V.dim == 0:
        return []
    E, emats = endomorphism_algebra(V)
    prims = primitive_idempotents_unital(E)
    out = []
    total = 0
    for e in prims:
        Em = F.zeros(V.dim, V.dim)
        for k, c in enumerate(e):
            if c:
                Em = F.madd(Em, F.smul(int(c), emats[k]))
        rows = _span_rows(F, [Em[:, j] for j in range(V.dim)
                              if Em[:, j].any()])
        out.append(Summand(V.restrict(rows), rows))
        total += rows.shape[0]
    assert total == V.dim
    return out


def hom_space(V: ModuleRep, W: ModuleRep):
    """Row basis of Hom(V, W): matrices X with X rho_V(g) = rho_W(g) X."""
    F = V.F
    gens = V.G.generators
    if not gens:
        return F.eye(W.dim * V.dim)
    blocks = []
    eyeW = F.eye(W.dim)
    eyeV = F.eye(V.dim)
    for g in gens:
        A, B = V.mats[g], W.mats[g]
        t1 = np.einsum("ia,bj->ijab", eyeW, A)
        t2 = np.einsum("ia,jb->ijab", B, eyeV)
        blocks.append(F.msub(t1, t2).reshape(W.dim * V.dim, W.dim * V.dim))
    return F.null_space(np.concatenate(blocks, axis=0))


def is_isomorphic_indec(V: ModuleRep, W: ModuleRep):
    """Isomorphism test for indecomposable modules over a splitting field:
    V ~ W iff some composite W -> V -> W of hom basis elements lies
    outside rad(End W) (complete by bilinearity, since End W is local)."""
    if V.dim != W.dim:
        return False
    F = V.F
    H1 = hom_space(V, W)
    if H1.shape[0] == 0:
        return False
    H2 = hom_space(W, V)
    if H2.shape[0] == 0:
        return False
    E, emats = endomorphism_algebra(W)
    J = radical_small(E)
    assert E.dim - J.shape[0] == 1, "endomorphism algebra is not local"
    B = np.stack([M.reshape(-1) for M in emats])
    if J.shape[0]:
        Jr, pivots = F.rref(J)
        comp = [c for c in range(E.dim) if c not in pivots]
        full = np.concatenate([Jr, F.eye(E.dim)[comp]], axis=0)
    for f in H1:
        Fm = f.reshape(W.dim, V.dim)
        for g in H2:
            Gm = g.reshape(V.dim, W.dim)
            C = F.matmul(Fm, Gm).reshape(-1)
            co = F.solve(B.T, C)
            assert co is not None
            if J.shape[0] == 0:
                if co.any():
                    return True
            else:
                bar = F.solve(full.T, co)[len(pivots):]
                if bar.any():
                    return True
    return False


# ----------------------------------------------------------------------
# p-permutation indecomposables

@dataclass
class PPermClass:
    module: ModuleRep
    source: tuple            # (subgroup sid of the acted-on cosets,)
    vertex_sid: int = -1
    block: int = -1
    bq_dims: dict = dc_field(default=None)


def p_permutation_indecomposables(G: GroupTable, F, p,
                                  block_idems_kG=None):
    """One representative of each isomorphism class of indecomposable
    direct summands of the permutation modules k[G/Q], Q running over
    p-subgroups; with vertices (unique maximal p-class with nonzero Brauer
    quotient) and, when kG block idempotents are supplied, block labels."""
    lat = subgroup_lattice(G)
    psub = p_subgroup_classes(lat, p)
    classes = []
    for Qsid in psub:
        X = permutation_module(G, F, lat.cosact[Qsid])
        for s in decompose(X):
            if not any(is_isomorphic_indec(s.module, c.module)
                       for c in classes):
                classes.append(PPermClass(s.module, (Qsid,)))
    for c in classes:
        dims = {}
        for Qsid in psub:
            bq = brauer_quotient(c.module, Qsid, lat)
            dims[Qsid] = bq.module.dim
        c.bq_dims = dims
        nz = [sid for sid, d in dims.items() if d > 0]
        mo = max(lat.subgroups[sid].order for sid in nz)
        tops = [sid for sid in nz if lat.subgroups[sid].order == mo]
        assert len(tops) == 1, "vertex is not a unique conjugacy class"
        c.vertex_sid = tops[0]
        if block_idems_kG is not None:
            hits = []
            for bi, z in enumerate(block_idems_kG):
                Z = F.zeros(c.module.dim, c.module.dim)
                for g, co in enumerate(z):
                    if co:
                        Z = F.madd(Z, F.smul(int(co), c.module.mats[g]))
                if (Z == F.eye(c.module.dim)).all():
                    hits.append(bi)
                else:
                    assert not Z.any(), \
                        "block idempotent acts neither as 0 nor as 1"
            assert len(hits) == 1
            c.block = hits[0]
    return classes


def group_algebra(G: GroupTable, F):
    """The group algebra as an AlgebraPresentation (basis = elements)."""
    n = G.order
    structure = {(i, j): ((int(G.mult[i, j]), 1),)
                 for i in range(n) for j in range(n)}
    u = F.zeros(n)
    u[G.id] = F.one
    return AlgebraPresentation(F, n, structure, unit=u,
                               labels=list(range(n)))
