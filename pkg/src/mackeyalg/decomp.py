"""Top-level pipeline for the p-local Mackey algebra of a finite group.

Ties the strands together: blocks of mu^1_k(G) matched to blocks of kG
through the t^1_1 corner compression, primitive idempotents and Cartan
matrices on the algebra side, the decomposition matrix assembled from
characters of lifts of p-permutation modules on the module side, and the
structural checks that connect them (D D^T = Cartan per block, the
defect-one block shape, and the principal-block description for
p-nilpotent groups).

Every comparison is between two independently computed objects; mismatches
raise instead of being repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import lcm

import numpy as np

from .chartab import character_table, character_of_lift, \
    ordinary_multiplicities
from .exalg import (AlgebraPresentation, block_idempotents, cartan_matrix,
                    required_splitting_degree)
from .ffield import GF
from .grp import (GroupTable, normal_p_complement, p_subgroup_classes,
                  quotient_group, subgroup_lattice, subgroup_table,
                  sylow_subgroup)
from .mackey import MackeyAlgebra, corner_group_algebra
from .modrep import brauer_quotient, group_algebra, \
    p_permutation_indecomposables


def nbar_group(G: GroupTable, lat, sid):
    """N_G(Q)/Q for Q = lat.subgroups[sid]."""
    Nsub = lat.subgroups[lat.normalizers[sid]]
    NT, nmem = subgroup_table(G, Nsub.members)
    qpos = [nmem.index(q) for q in lat.subgroups[sid].members]
    nbar, _ = quotient_group(NT, qpos)
    return nbar


def required_field_degree(G: GroupTable, p):
    """Smallest m so that GF(p^m) splits every k N_G(L)/L, L a p-subgroup;
    this splits the whole pipeline (the simple mu^1-modules are indexed by
    pairs (L, simple k N_G(L)/L-module))."""
    lat = subgroup_lattice(G)
    deg = 1
    for sid in p_subgroup_classes(lat, p):
        kn = group_algebra(nbar_group(G, lat, sid), GF(p))
        deg = lcm(deg, required_splitting_degree(kn))
    return deg


def match_up_to_simultaneous_permutation(A, B):
    """A permutation pi with A[pi][:, pi] == B, or None."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        return None
    n = A.shape[0]

    def sig(M, i):
        return (M[i, i], tuple(sorted(M[i])), tuple(sorted(M[:, i])))

    cands = [[j for j in range(n) if sig(A, i) == sig(B, j)]
             for i in range(n)]
    perm = [-1] * n
    used = [False] * n

    def bt(i):
        if i == n:
            return True
        for j in cands[i]:
            if used[j]:
                continue
            if all(A[i, k] == B[j, perm[k]] and A[k, i] == B[perm[k], j]
                   for k in range(i)):
                perm[i] = j
                used[j] = True
                if bt(i + 1):
                    return True
                used[j] = False
        return False

    return perm if bt(0) else None


@dataclass
class BlockMatch:
    mu_idempotents: list      # central primitive idempotents of mu^1
    kg_idempotents: list      # central primitive idempotents of kG
    pairing: list             # mu block index -> kG block index (bijection)
    principal: int            # mu block index matched to the principal kG block
    mu_dims: list             # k-dimension of each mu^1 block


@dataclass
class DecompositionMatrix:
    matrix: np.ndarray        # rows: p-permutation classes; cols: (L, chi)
    rows: list                # PPermClass labels
    row_blocks: list          # mu block index per row
    cols: list                # (p-subgroup class sid L, character index)
    col_blocks: list          # mu block index per column
    psub: list                # p-subgroup class rep sids, column group order


class MackeyPipeline:
    """Everything derived from (G, p) over a splitting field GF(p^m)."""

    def __init__(self, G: GroupTable, p, field_degree=None, mackey=None):
        self.G, self.p = G, p
        self.lat = subgroup_lattice(G)
        self.degree = field_degree or required_field_degree(G, p)
        self.F = GF(p, self.degree)
        self.A = mackey if mackey is not None else MackeyAlgebra(G, p=p)
        self.P = AlgebraPresentation.from_mackey(self.A, self.F)
        self.kg = group_algebra(G, self.F)
        self._done = {}

    def _memo(self, key, fn):
        if key not in self._done:
            self._done[key] = fn()
        return self._done[key]

    # -- blocks ---------------------------------------------------------

    def block_match(self) -> BlockMatch:
        return self._memo("blocks", self._block_match)

    def _block_match(self):
        F = self.F
        mu_blocks = block_idempotents(self.P)
        kg_blocks = block_idempotents(self.kg)
        t11, _ = corner_group_algebra(self.A)
        pairing = []
        for b in mu_blocks:
            c = np.asarray([b[i] for i in t11])
            hits = [j for j, z in enumerate(kg_blocks)
                    if (np.asarray(z) == c).all()]
            assert len(hits) == 1, \
                "corner compression is not a group-algebra block idempotent"
            pairing.append(hits[0])
        assert sorted(pairing) == list(range(len(kg_blocks))), \
            "block matching is not a bijection"
        principal = next(
            i for i, j in enumerate(pairing)
            if reduce(F.add, (int(c) for c in kg_blocks[j])) == F.one)
        if len(mu_blocks) == 1:
            dims = [self.P.dim]
        else:
            dims = [int(F.rank(self.P.Lmat(np.asarray(b))))
                    for b in mu_blocks]
            assert sum(dims) == self.P.dim
        return BlockMatch(mu_blocks, kg_blocks, pairing, principal, dims)

    # -- algebra-side Cartan data ---------------------------------------

    def diag_seeds(self):
        """The orthogonal idempotents of the unit, one per subgroup
        diagonal; the unit of mu^1 is supported on the t^H_*^H diagonal."""
        A, P, F = self.A, self.P, self.F
        u = np.asarray(P.unit)
        seeds, sups = [], []
        total = F.zeros(P.dim)
        for sid in range(len(self.lat.subgroups)):
            sup = [i for i, lab in enumerate(A.basis)
                   if lab[0] == sid and lab[3] == sid]
            v = F.zeros(P.dim)
            v[sup] = u[sup]
            if v.any():
                seeds.append(v)
                sups.append(sup)
                total = F.madd(total, v)
        assert (total == u).all(), "unit is not diagonal-supported"
        return seeds, sups

    def algebra_cartan(self):
        """(CartanMatrix of mu^1, mu block index of each idempotent class)."""
        return self._memo("cartan", self._algebra_cartan)

    def _algebra_cartan(self):
        seeds, sups = self.diag_seeds()
        cm = cartan_matrix(self.P, seeds=seeds, seed_supports=sups)
        bm = self.block_match()
        rep_blocks = []
        for e in cm.idempotents:
            hits = [j for j, b in enumerate(bm.mu_idempotents)
                    if (self.P.mul(np.asarray(b), np.asarray(e))
                        == np.asarray(e)).all()]
            assert len(hits) == 1, "idempotent not in a unique block"
            rep_blocks.append(hits[0])
        return cm, rep_blocks

    def block_cartan(self, mu_block):
        cm, rep_blocks = self.algebra_cartan()
        idx = [i for i, b in enumerate(rep_blocks) if b == mu_block]
        return cm.matrix[np.ix_(idx, idx)]

    # -- module-side decomposition matrix -------------------------------

    def pperm_classes(self):
        return self._memo("pperm", lambda: p_permutation_indecomposables(
            self.G, self.F, self.p,
            block_idems_kG=self.block_match().kg_idempotents))

    def decomposition(self) -> DecompositionMatrix:
        return self._memo("decomp", self._decomposition)

    def _decomposition(self):
        G, p, lat = self.G, self.p, self.lat
        bm = self.block_match()
        kg_to_mu = {j: i for i, j in enumerate(bm.pairing)}
        rows = self.pperm_classes()
        row_blocks = [kg_to_mu[w.block] for w in rows]
        psub = p_subgroup_classes(lat, p)
        cols = []
        chunks = {}
        for L in psub:
            ct = character_table(nbar_group(G, lat, L))
            chunks[L] = len(ct.values)
            cols += [(L, a) for a in range(len(ct.values))]
        D = np.zeros((len(rows), len(cols)), np.int64)
        for r, w in enumerate(rows):
            ci = 0
            for L in psub:
                bq = brauer_quotient(w.module, L, lat)
                ct = character_table(bq.nbar)
                assert len(ct.values) == chunks[L]
                if bq.module.dim:
                    psi = character_of_lift(bq.module, p, ct)
                    mults = ordinary_multiplicities(ct, psi)
                    D[r, ci:ci + chunks[L]] = mults
                ci += chunks[L]
        assert all(D[r].any() for r in range(len(rows))), \
            "decomposition matrix has a zero row"
        col_blocks = []
        for c in range(len(cols)):
            owners = sorted({row_blocks[r] for r in range(len(rows))
                             if D[r, c]})
            assert len(owners) == 1, \
                "column does not belong to a unique block"
            col_blocks.append(owners[0])
        return DecompositionMatrix(D, rows, row_blocks, cols, col_blocks,
                                   psub)

    # -- cross-pipeline checks ------------------------------------------

    def verify_cartan_reciprocity(self):
        """Per block: D_b D_b^T equals the algebra-side Cartan matrix up to
        a simultaneous permutation.  Returns the per-block report."""
        cm, rep_blocks = self.algebra_cartan()
        dec = self.decomposition()
        bm = self.block_match()
        report = []
        for b in range(len(bm.mu_idempotents)):
            ridx = [r for r, rb in enumerate(dec.row_blocks) if rb == b]
            Db = dec.matrix[ridx]
            M = Db @ Db.T
            Cb = self.block_cartan(b)
            perm = match_up_to_simultaneous_permutation(M, Cb)
            assert perm is not None, \
                "decomposition-side and algebra-side Cartan matrices differ"
            report.append({"block": b, "rows": len(ridx),
                           "cartan": Cb.tolist(), "permutation": perm})
        return report


_PIPELINES = {}


def pipeline(G: GroupTable, p, field_degree=None, mackey=None) -> MackeyPipeline:
    key = (G.mult.tobytes(), p, field_degree)
    if key not in _PIPELINES:
        _PIPELINES[key] = MackeyPipeline(G, p, field_degree, mackey=mackey)
    return _PIPELINES[key]


def match_blocks(G: GroupTable, p, field_degree=None) -> BlockMatch:
    return pipeline(G, p, field_degree).block_match()


def decomposition_matrix(G: GroupTable, p) -> DecompositionMatrix:
    return pipeline(G, p).decomposition()


def verify_cartan_reciprocity(G: GroupTable, p):
    return pipeline(G, p).verify_cartan_reciprocity()


# ----------------------------------------------------------------------
# structural checks

def defect_one_structure_check(G: GroupTable, p, mu_block):
    """For a block with defect group of order p (detected: Sylow p-subgroup
    of order p): the mu-block has twice as many simples as the kG-block,
    the decomposition submatrix has the shape [D0 | 0; * | Id] up to
    permutation, and the algebra-side block Cartan matrix is symmetric."""
    pipe = pipeline(G, p)
    lat = pipe.lat
    assert sylow_subgroup(lat, p).order == p, \
        "defect-one hypothesis not established (Sylow is not of order p)"
    dec = pipe.decomposition()
    ridx = [r for r, rb in enumerate(dec.row_blocks) if rb == mu_block]
    cidx = [c for c, cb in enumerate(dec.col_blocks) if cb == mu_block]
    proj_rows = [r for r in ridx
                 if lat.subgroups[dec.rows[r].vertex_sid].order == 1]
    plus_rows = [r for r in ridx if r not in proj_rows]
    e = len(proj_rows)
    assert len(ridx) == 2 * e, "mu-block simple count is not 2e"
    triv_cols = [c for c in cidx if dec.cols[c][0] == 0]
    other_cols = [c for c in cidx if dec.cols[c][0] != 0]
    assert len(other_cols) == e
    # exceptional characters share a column; collapsed, the block matrix
    # has 2e+1 columns and 2e rows
    distinct = {tuple(dec.matrix[r, c] for r in ridx) for c in triv_cols}
    assert len(distinct) + e == 2 * e + 1, \
        "collapsed column count is not 2e+1"
    # projective-vertex rows vanish off the L=1 columns: the [D0 | 0] part
    for r in proj_rows:
        assert not dec.matrix[r][other_cols].any(), \
            "kG-projective row meets a nontrivial-vertex column"
    # remaining rows carry an identity on the remaining columns: [* | Id]
    sub = dec.matrix[np.ix_(plus_rows, other_cols)]
    assert (sorted(tuple(row) for row in sub)
            == sorted(tuple(row) for row in np.eye(e, dtype=np.int64))), \
        "added rows are not an identity on the nontrivial columns"
    Cb = pipe.block_cartan(mu_block)
    assert (Cb == Cb.T).all(), "block Cartan matrix is not symmetric"
    return {"e": e, "simples": 2 * e,
            "D0": dec.matrix[np.ix_(proj_rows, triv_cols)].tolist(),
            "cartan": Cb.tolist()}


def _mackey_pset(G: GroupTable, lat, Nmembers):
    """The G-set ⊔_{H ≤ G} G/NH: point list and the action table."""
    comps = []
    for S in lat.subgroups:
        NH = G.closure(tuple(sorted(set(Nmembers) | set(S.members))))
        comps.append(lat.subgroup_id(NH))
    pts = [(ci, c) for ci, s in enumerate(comps)
           for c in range(G.order // lat.subgroups[s].order)]
    index = {pt: i for i, pt in enumerate(pts)}
    act = np.zeros((G.order, len(pts)), np.int64)
    for g in range(G.order):
        for i, (ci, c) in enumerate(pts):
            act[g, i] = index[(ci, int(lat.cosact[comps[ci]][g, c]))]
    return pts, act


def _burnside_pair_count(G: GroupTable, lat, Nmembers, Pmembers):
    """dim of the Burnside algebra kB(X^2) for X = ⊔_H Res_P(G/NH):
    basis = pairs (Q ≤ P up to conjugacy, N_P(Q)-orbit on (X^2)^Q)."""
    pts, act = _mackey_pset(G, lat, Nmembers)
    n = len(pts)
    PT, pmem = subgroup_table(G, Pmembers)
    latP = subgroup_lattice(PT)
    total = 0
    for Qs in latP.class_reps:
        Qg = [pmem[t] for t in latP.subgroups[Qs].members]
        fixed = [(a, b) for a in range(n) for b in range(n)
                 if all(act[q, a] == a and act[q, b] == b for q in Qg)]
        Ng = [pmem[t]
              for t in latP.subgroups[latP.normalizers[Qs]].members]
        seen = set()
        for pair in fixed:
            if pair in seen:
                continue
            total += 1
            for g in Ng:
                seen.add((int(act[g, pair[0]]), int(act[g, pair[1]])))
    return total


def p_nilpotent_checks(G: GroupTable, p):
    """For p-nilpotent G = N ⋊ P: the principal mu^1-block has the Cartan
    matrix of the Mackey algebra of P, and its dimension is the rank of the
    Burnside algebra kB(X^2) with X = ⊔_{H ≤ G} Res_P(G/NH)."""
    pipe = pipeline(G, p)
    lat = pipe.lat
    N = normal_p_complement(lat, p)
    assert N is not None, "group is not p-nilpotent"
    Psub = sylow_subgroup(lat, p)
    bm = pipe.block_match()
    C0 = pipe.block_cartan(bm.principal)
    PT, _ = subgroup_table(G, Psub.members)
    pipeP = pipeline(PT, p)
    CP, rbP = pipeP.algebra_cartan()
    assert len(pipeP.block_match().mu_idempotents) >= 1
    perm = match_up_to_simultaneous_permutation(C0, np.asarray(CP.matrix))
    assert perm is not None, \
        "principal block Cartan differs from the Sylow Mackey algebra Cartan"
    dim_burnside = _burnside_pair_count(G, lat, N.members, Psub.members)
    assert dim_burnside == bm.mu_dims[bm.principal], \
        "principal block dimension differs from the Burnside-basis count"
    return {"cartan": C0.tolist(), "dim": dim_burnside,
            "sylow_order": Psub.order, "complement_order": N.order}
