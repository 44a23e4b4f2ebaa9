"""Finite G-sets, spans over Omega_G, and Burnside-style composition.

Omega_G is the disjoint union of one copy of G/L per subgroup L (all
subgroups, not only representatives of conjugacy classes).  A span is a
G-set with two equivariant maps into Omega_G; isomorphism classes of
transitive spans are labelled by quadruples

    (H, K, x, L)

meaning the span G/H <- G/K -> G/L with left leg gK -> gH and right leg
gK -> gxL, where x is the minimal element of its (H, L) double coset and K
is the minimal lattice id in its conjugacy class under H ∩ xLx^{-1}.
Composition of spans is pullback followed by orbit decomposition, with each
orbit renamed to its canonical quadruple.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grp import GroupTable, SubgroupLattice, double_cosets, subgroup_lattice


class GSet:
    """Finite left G-set: action[g, x] = g.x, validated on all pairs."""

    def __init__(self, G: GroupTable, action, check=True):
        self.G = G
        self.action = np.asarray(action, dtype=np.int64)
        self.size = self.action.shape[1]
        if check:
            n = self.size
            assert (self.action[G.id] == np.arange(n)).all()
            assert (self.action[G.mult] ==
                    self.action[:, self.action]).all(), "not a group action"

    def orbits(self):
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for x in range(self.size):
            if not seen[x]:
                orb = sorted(set(int(y) for y in self.action[:, x]))
                for y in orb:
                    seen[y] = True
                out.append(orb)
        return out

    def stabilizer(self, x):
        return tuple(g for g in range(self.G.order) if self.action[g, x] == x)

    def restrict(self, points):
        """The sub-G-set on an invariant point list (re-indexed)."""
        points = list(points)
        back = {x: i for i, x in enumerate(points)}
        act = np.array([[back[int(self.action[g, x])] for x in points]
                        for g in range(self.G.order)])
        return GSet(self.G, act, check=False), back


@dataclass
class GMap:
    src: GSet
    dst: GSet
    table: np.ndarray     # point-wise images

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        assert (self.dst.action[:, self.table] ==
                self.table[self.src.action]).all(), "map is not equivariant"


class OmegaComponents:
    """Omega_G = disjoint union of G/L over all subgroups L."""

    def __init__(self, G: GroupTable, lat: SubgroupLattice | None = None):
        self.G = G
        self.lat = lat or subgroup_lattice(G)
        self.offsets = []
        off = 0
        for H in self.lat.subgroups:
            self.offsets.append(off)
            off += G.order // H.order
        self.size = off
        blocks = [self.lat.cosact[H.id] for H in self.lat.subgroups]
        self.gset = GSet(G, np.concatenate(blocks, axis=1) +
                         np.repeat(self.offsets, [b.shape[1] for b in blocks])[None, :])

    def point(self, sid, coset):
        return self.offsets[sid] + coset

    def component(self, point):
        """(subgroup id, coset index) of a global Omega point."""
        sid = int(np.searchsorted(self.offsets, point, side="right")) - 1
        return sid, point - self.offsets[sid]


@dataclass
class Span:
    left: GMap
    right: GMap

    def __post_init__(self):
        assert self.left.src is self.right.src

    @property
    def apex(self):
        return self.left.src


class BurnsideElt(dict):
    """Z-linear combination of span labels (H, K, x, L) -> coefficient."""

    def add(self, label, c=1):
        v = self.get(label, 0) + c
        if v:
            self[label] = v
        else:
            self.pop(label, None)

    def sorted_items(self):
        return sorted(self.items())


def _canon_quadruple(lat: SubgroupLattice, H_sid, L_sid, K_members, w):
    """Canonical (H, K, x, L) for the span determined by K ≤ H with right
    leg through w (the raw span G/H <- G/K -> G/wL)."""
    G = lat.G
    Hm = lat.subgroups[H_sid].members
    Lm = lat.subgroups[L_sid].members
    x_min = min(int(G.mult[G.mult[h, w], l]) for h in Hm for l in Lm)
    xL = {int(G.mult[x_min, l]) for l in Lm}
    h0 = next(h for h in Hm if int(G.mult[h, w]) in xL)
    K1 = tuple(sorted(G.conj(h0, k) for k in K_members))
    K1_sid = lat.by_members[K1]
    xLxi = {G.conj(x_min, l) for l in Lm}
    I = [h for h in Hm if h in xLxi]
    K_sid = min(int(lat.conj_sub[n, K1_sid]) for n in I)
    return (H_sid, K_sid, x_min, L_sid)


def canonical_span_label(omega: OmegaComponents, span: Span, apex_point=None):
    """Label of the transitive span (or of the orbit of apex_point)."""
    lat = omega.lat
    G = omega.G
    ap = span.apex
    if apex_point is None:
        orbs = ap.orbits()
        assert len(orbs) == 1, "span apex is not transitive"
        z0 = orbs[0][0]
    else:
        z0 = min(int(y) for y in ap.action[:, apex_point])
    S = ap.stabilizer(z0)
    H_sid, cH = omega.component(int(span.left.table[z0]))
    L_sid, cL = omega.component(int(span.right.table[z0]))
    a = int(lat.cosreps[H_sid][cH])
    ai = int(G.inv[a])
    K = tuple(sorted(int(G.mult[G.mult[ai, s], a]) for s in S))
    assert set(K) <= set(lat.subgroups[H_sid].members)
    v = int(lat.cosreps[L_sid][cL])
    w = int(G.mult[ai, v])
    return _canon_quadruple(lat, H_sid, L_sid, K, w)


def identity_span(omega: OmegaComponents) -> Span:
    ident = GMap(omega.gset, omega.gset, np.arange(omega.size))
    return Span(ident, ident)


def span_from_label(omega: OmegaComponents, label) -> Span:
    """The standard span G/H <- G/K -> G/L for a quadruple (H, K, x, L)."""
    lat = omega.lat
    G = omega.G
    H_sid, K_sid, x, L_sid = label
    apex = GSet(G, lat.cosact[K_sid], check=False)
    reps = lat.cosreps[K_sid]
    left = GMap(apex, omega.gset,
                omega.offsets[H_sid] + lat.cosidx[H_sid][reps])
    right = GMap(apex, omega.gset,
                 omega.offsets[L_sid] + lat.cosidx[L_sid][G.mult[reps, x]])
    return Span(left, right)


def pullback(f: GMap, g: GMap):
    """Pullback of (f: Y -> X) <- (g: Z -> X): points (y, z), f(y) = g(z)."""
    assert f.dst is g.dst
    pts = [(y, z) for y in range(f.src.size) for z in range(g.src.size)
           if f.table[y] == g.table[z]]
    back = {p: i for i, p in enumerate(pts)}
    G = f.src.G
    act = np.array([[back[(int(f.src.action[gg, y]), int(g.src.action[gg, z]))]
                     for (y, z) in pts] for gg in range(G.order)]) \
        if pts else np.zeros((G.order, 0), dtype=np.int64)
    P = GSet(G, act, check=False)
    toY = GMap(P, f.src, np.array([y for y, _ in pts], dtype=np.int64))
    toZ = GMap(P, g.src, np.array([z for _, z in pts], dtype=np.int64))
    return P, toY, toZ


def compose_spans(omega: OmegaComponents, s: Span, t: Span) -> BurnsideElt:
    """Product of two spans in B(Omega^2): pullback, split into orbits,
    and record each orbit by its canonical label."""
    P, toY, toZ = pullback(s.right, t.left)
    left = GMap(P, omega.gset, s.left.table[toY.table])
    right = GMap(P, omega.gset, t.right.table[toZ.table])
    prod = Span(left, right)
    out = BurnsideElt()
    for orb in P.orbits():
        out.add(canonical_span_label(omega, prod, apex_point=orb[0]))
    return out
