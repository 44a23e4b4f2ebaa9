"""The Mackey algebra mu_R(G) and its p-local subalgebra mu^1.

The basis consists of quadruples (H, K, x, L) labelling transitive spans
G/H <- G/K -> G/L (see gset).  Structure constants are computed over Z by
composing spans: the pullback of two basis spans is decomposed into orbits
and each orbit is renamed canonically.  The p-local subalgebra keeps the
quadruples whose middle group K is a p-group; it is closed under the
product since conjugates of p-subgroups are p-subgroups.

Everything here is integral; reduction mod a finite field and unit-finding
for mu^1 happen in exalg.
"""

from __future__ import annotations

import random

import numpy as np
import scipy.sparse as sp

from .grp import GroupTable, double_cosets, subgroup_lattice
from .gset import (BurnsideElt, GMap, GSet, OmegaComponents, Span,
                   _canon_quadruple, canonical_span_label, span_from_label)


def _double_cosets_in(G, ambient, H, L):
    """Minimal reps of H\\ambient/L for subgroups H, L of the subgroup ambient."""
    seen = set()
    reps = []
    for x in ambient:
        if x not in seen:
            reps.append(x)
            for h in H:
                hx = int(G.mult[h, x])
                for l in L:
                    seen.add(int(G.mult[hx, l]))
    return reps


def enumerate_basis(G: GroupTable, p=None):
    """All canonical quadruples (H, K, x, L); K restricted to p-groups if p."""
    lat = subgroup_lattice(G)
    labels = []
    for H in lat.subgroups:
        for L in lat.subgroups:
            for x in double_cosets(G, H.members, L.members):
                xLxi = {G.conj(x, l) for l in L.members}
                T = tuple(sorted(set(H.members) & xLxi))
                T_sid = lat.by_members[T]
                subs = [S.id for S in lat.subgroups if lat.inclusion[S.id, T_sid]]
                reps = sorted({min(int(lat.conj_sub[t, s]) for t in T)
                               for s in subs})
                for K in reps:
                    if p is None or _is_p_power(lat.subgroups[K].order, p):
                        labels.append((H.id, K, x, L.id))
    return sorted(labels)


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


class MackeyAlgebra:
    """Integral structure constants of mu(G) or mu^1_p(G)."""

    def __init__(self, G: GroupTable, p=None, structure=None):
        self.G = G
        self.p = p
        self.lat = subgroup_lattice(G)
        self.basis = enumerate_basis(G, p)
        self.index = {lab: i for i, lab in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._omega = None
        self.structure = structure if structure is not None else self._build()
        # indices of the diagonal idempotents t^H_H that exist in this algebra
        self.diag_idx = {}
        for H in self.lat.subgroups:
            lab = (H.id, H.id, min(H.members), H.id)
            if lab in self.index:
                self.diag_idx[H.id] = self.index[lab]

    @property
    def omega(self):
        if self._omega is None:
            self._omega = OmegaComponents(self.G, self.lat)
        return self._omega

    # -- construction ---------------------------------------------------
    def _build(self):
        G, lat = self.G, self.lat
        n = G.order
        basis = self.basis
        cosact = lat.cosact
        cosreps = lat.cosreps

        Ks = [lab[1] for lab in basis]
        leftpt = []
        rightpt = []
        for (H, K, x, L) in basis:
            reps = cosreps[K]
            leftpt.append(lat.cosidx[H][reps])
            rightpt.append(lat.cosidx[L][G.mult[reps, x]])

        # bucket apex points of j by their left coset in G/H_j
        buckets = []
        for j, (H, K, x, L) in enumerate(basis):
            nM = n // lat.subgroups[H].order
            b = [[] for _ in range(nM)]
            for pt, m in enumerate(leftpt[j]):
                b[int(m)].append(pt)
            buckets.append(b)

        by_H = {}
        for j, lab in enumerate(basis):
            by_H.setdefault(lab[0], []).append(j)

        canon_cache = {}

        def canon(H_sid, L_sid, Ktup, w):
            key = (H_sid, L_sid, Ktup, w)
            out = canon_cache.get(key)
            if out is None:
                out = _canon_quadruple(lat, H_sid, L_sid, Ktup, w)
                canon_cache[key] = out
            return out

        mult, inv = G.mult, G.inv
        structure = {}
        for i, (Hi, Ki, xi, Li) in enumerate(basis):
            nKi = n // lat.subgroups[Ki].order
            acti = cosact[Ki]
            rp_i = rightpt[i]
            lp_i = leftpt[i]
            for j in by_H.get(Li, ()):
                Hj, Kj, xj, Lj = basis[j]
                nKj = n // lat.subgroups[Kj].order
                actj = cosact[Kj]
                bk = buckets[j]
                visited = np.zeros(nKi * nKj, dtype=bool)
                counts = {}
                for a in range(nKi):
                    for b in bk[int(rp_i[a])]:
                        code = a * nKj + b
                        if visited[code]:
                            continue
                        codes = acti[:, a] * nKj + actj[:, b]
                        visited[codes] = True
                        z0 = int(codes.min())
                        a0, b0 = divmod(z0, nKj)
                        codes0 = acti[:, a0] * nKj + actj[:, b0]
                        stab = np.nonzero(codes0 == z0)[0]
                        cH = int(lp_i[a0])
                        arep = int(cosreps[Hi][cH])
                        ai = int(inv[arep])
                        Ktup = tuple(sorted(int(mult[mult[ai, s], arep])
                                            for s in stab))
                        v = int(cosreps[Lj][rightpt[j][b0]])
                        w = int(mult[ai, v])
                        lab = canon(Hi, Lj, Ktup, w)
                        counts[lab] = counts.get(lab, 0) + 1
                if counts:
                    structure[(i, j)] = tuple(
                        sorted((self.index[lab], c) for lab, c in counts.items()))
        return structure

    # -- arithmetic over Z ----------------------------------------------
    def mul_dicts(self, e1, e2):
        out = {}
        for i, c1 in e1.items():
            for j, c2 in e2.items():
                for k, c in self.structure.get((i, j), ()):
                    v = out.get(k, 0) + c1 * c2 * c
                    if v:
                        out[k] = v
                    else:
                        del out[k]
        return out

    def unit_dict(self):
        """Unit of the full algebra: sum of all t^H_H.  (mu only.)"""
        assert self.p is None
        return {i: 1 for i in self.diag_idx.values()}

    def elt(self, label, c=1):
        return {self.index[label]: c}

    # -- generators ------------------------------------------------------
    def generator(self, kind, *args):
        """Index of a generator: ('t', K, H), ('r', K, H) with H <= K,
        or ('c', g, H).  Subgroups by lattice id."""
        lat, G = self.lat, self.G
        om = self.omega
        if kind in ("t", "r"):
            K_sid, H_sid = args
            assert lat.inclusion[H_sid, K_sid]
            apex = GSet(G, lat.cosact[H_sid], check=False)
            reps = lat.cosreps[H_sid]
            up = GMap(apex, om.gset,
                      om.offsets[K_sid] + lat.cosidx[K_sid][reps])
            ident = GMap(apex, om.gset, om.offsets[H_sid] + np.arange(apex.size))
            span = Span(up, ident) if kind == "t" else Span(ident, up)
        else:
            g, H_sid = args
            gH = int(self.lat.conj_sub[g, H_sid])
            apex = GSet(G, lat.cosact[H_sid], check=False)
            reps = lat.cosreps[H_sid]
            gi = int(G.inv[g])
            left = GMap(apex, om.gset,
                        om.offsets[gH] + lat.cosidx[gH][G.mult[reps, gi]])
            ident = GMap(apex, om.gset, om.offsets[H_sid] + np.arange(apex.size))
            span = Span(left, ident)
        lab = canonical_span_label(om, span)
        return self.index[lab]

    # -- verification -----------------------------------------------------
    def verify_relations(self):
        """Check the defining relations on generators.  Full mu only."""
        assert self.p is None
        G, lat = self.G, self.lat
        one = self.unit_dict()
        # unit
        for i in range(self.dim):
            b = {i: 1}
            assert self.mul_dicts(one, b) == b and self.mul_dicts(b, one) == b
        g_t = {}
        g_r = {}
        for K in lat.subgroups:
            for H in lat.subgroups:
                if lat.inclusion[H.id, K.id]:
                    g_t[(K.id, H.id)] = {self.generator("t", K.id, H.id): 1}
                    g_r[(K.id, H.id)] = {self.generator("r", K.id, H.id): 1}
        g_c = {(g, H.id): {self.generator("c", g, H.id): 1}
               for g in range(G.order) for H in lat.subgroups}

        ids = lat.inclusion
        subs = lat.subgroups
        for A in subs:
            for B in subs:
                if not ids[B.id, A.id]:
                    continue
                # triviality inside: c_{h,B} = t^B_B for h in B
                for C in subs:
                    if ids[C.id, B.id]:
                        # transitivity
                        assert self.mul_dicts(g_t[(A.id, B.id)], g_t[(B.id, C.id)]) \
                            == g_t[(A.id, C.id)]
                        assert self.mul_dicts(g_r[(B.id, C.id)], g_r[(A.id, B.id)]) \
                            == g_r[(A.id, C.id)]
        for H in subs:
            for h in H.members:
                assert g_c[(h, H.id)] == g_t[(H.id, H.id)]
            for g in range(G.order):
                for h in range(G.order):
                    gh = int(G.mult[g, h])
                    hH = int(lat.conj_sub[h, H.id])
                    assert self.mul_dicts(g_c[(g, hH)], g_c[(h, H.id)]) \
                        == g_c[(gh, H.id)]
        # conjugation compatibility
        for K in subs:
            for H in subs:
                if not ids[H.id, K.id]:
                    continue
                for g in range(G.order):
                    gK, gH = int(lat.conj_sub[g, K.id]), int(lat.conj_sub[g, H.id])
                    assert self.mul_dicts(g_c[(g, K.id)], g_t[(K.id, H.id)]) \
                        == self.mul_dicts(g_t[(gK, gH)], g_c[(g, H.id)])
                    assert self.mul_dicts(g_c[(g, H.id)], g_r[(K.id, H.id)]) \
                        == self.mul_dicts(g_r[(gK, gH)], g_c[(g, K.id)])
        # Mackey axiom
        for H in subs:
            for L in subs:
                if not ids[L.id, H.id]:
                    continue
                for K in subs:
                    if not ids[K.id, H.id]:
                        continue
                    lhs = self.mul_dicts(g_r[(H.id, L.id)], g_t[(H.id, K.id)])
                    rhs = {}
                    for x in _double_cosets_in(G, H.members, L.members, K.members):
                        xK = int(lat.conj_sub[x, K.id])
                        M = lat.meet(L.id, xK)             # L ∩ xK
                        xi = int(G.inv[x])
                        Mx = int(lat.conj_sub[xi, M])      # L^x ∩ K
                        term = self.mul_dicts(
                            g_t[(L.id, M)],
                            self.mul_dicts(g_c[(x, Mx)], g_r[(K.id, Mx)]))
                        for k, c in term.items():
                            rhs[k] = rhs.get(k, 0) + c
                    rhs = {k: c for k, c in rhs.items() if c}
                    assert lhs == rhs, (H.id, L.id, K.id)
        # mismatched outer subgroups compose to zero
        for K in subs:
            for H in subs:
                if not ids[H.id, K.id]:
                    continue
                for K2 in subs:
                    if K2.id == K.id:
                        continue
                    d = self.diag_idx[K2.id]
                    assert self.mul_dicts(g_r[(K.id, H.id)], {d: 1}) == {}
        return True

    def verify_associativity(self, samples=10000, seed=0, force_full=None):
        """Exhaustive over Z for |G| <= 8, else sampled triples."""
        full = (self.G.order <= 8) if force_full is None else force_full
        n = self.dim
        if full:
            Ls, Rs = [], []
            for i in range(n):
                rows, cols, vals = [], [], []
                for j in range(n):
                    for k, c in self.structure.get((i, j), ()):
                        rows.append(k), cols.append(j), vals.append(c)
                Ls.append(sp.csr_matrix((vals, (rows, cols)), shape=(n, n),
                                        dtype=np.int64))
            for j in range(n):
                rows, cols, vals = [], [], []
                for i in range(n):
                    for k, c in self.structure.get((i, j), ()):
                        rows.append(k), cols.append(i), vals.append(c)
                Rs.append(sp.csr_matrix((vals, (rows, cols)), shape=(n, n),
                                        dtype=np.int64))
            for i in range(n):
                for k in range(n):
                    d = Ls[i] @ Rs[k] - Rs[k] @ Ls[i]
                    if d.nnz:
                        return False
            return True
        rng = random.Random(seed)
        for _ in range(samples):
            i, j, k = (rng.randrange(n) for _ in range(3))
            lhs = self.mul_dicts(self.mul_dicts({i: 1}, {j: 1}), {k: 1})
            rhs = self.mul_dicts({i: 1}, self.mul_dicts({j: 1}, {k: 1}))
            if lhs != rhs:
                return False
        return True

    def label_self_check(self):
        """Every basis quadruple labels its own standard span."""
        for lab in self.basis:
            sp_ = span_from_label(self.omega, lab)
            assert canonical_span_label(self.omega, sp_) == lab, lab
        return True


def build_algebra(G: GroupTable, p=None) -> MackeyAlgebra:
    return MackeyAlgebra(G, p=p)


# ----------------------------------------------------------------------

def corner_group_algebra(A: MackeyAlgebra):
    """The corner t^1_1 mu t^1_1 with its group-algebra identification.

    Returns (labels, orientation) where labels[g] is the basis index of the
    span attached to the group element g, and orientation is +1 if
    labels[g].labels[h] = labels[gh] or -1 for the opposite order."""
    G = A.G
    t11 = [A.index[(0, 0, x, 0)] for x in range(G.order)]
    by_idx = {idx: x for x, idx in enumerate(t11)}
    ztab = np.zeros((G.order, G.order), dtype=np.int64)
    for x in range(G.order):
        for y in range(G.order):
            prod = A.structure.get((t11[x], t11[y]), ())
            assert len(prod) == 1 and prod[0][1] == 1
            ztab[x, y] = by_idx[prod[0][0]]
    if (ztab == G.mult).all():
        return t11, +1
    assert (ztab == G.mult.T).all(), "corner is not the group algebra"
    return t11, -1


def phi_automorphism_check():
    """The exchange automorphism of mu(C2) over GF(2): images of the six
    basis elements, checked unital and multiplicative on all 36 pairs."""
    from .exalg import AlgebraPresentation
    from .ffield import GF
    from .grp import cyclic

    G = cyclic(2)
    A = build_algebra(G)
    assert A.dim == 6
    t11 = A.index[(0, 0, 0, 0)]
    t11x = A.index[(0, 0, 1, 0)]
    tC = A.index[(1, 1, 0, 1)]
    t = A.generator("t", 1, 0)
    r = A.generator("r", 1, 0)
    tr = A.mul_dicts({t: 1}, {r: 1})
    assert list(tr.values()) == [1]
    trx = next(iter(tr))

    F = GF(2)
    P = AlgebraPresentation.from_mackey(A, F)
    phi = F.zeros(6, 6)

    def setimg(src, img):
        for k, c in img.items():
            phi[k, src] = c % 2
    setimg(tC, {t11: 1})
    setimg(trx, {t11: 1, t11x: 1})
    setimg(t, {r: 1})
    setimg(r, {t: 1})
    setimg(t11, {tC: 1})
    setimg(t11x, {trx: 1, tC: 1})   # t^{C2}_1 r^{C2}_1 - t^{C2}_{C2}

    assert F.rank(phi) == 6
    assert (F.mv(phi, P.unit) == P.unit).all()
    pairs = 0
    for i in range(6):
        for j in range(6):
            ei, ej = F.zeros(6), F.zeros(6)
            ei[i] = ej[j] = 1
            lhs = F.mv(phi, P.mul(ei, ej))
            rhs = P.mul(F.mv(phi, ei), F.mv(phi, ej))
            assert (lhs == rhs).all(), (i, j)
            pairs += 1
    assert pairs == 36
    return True
