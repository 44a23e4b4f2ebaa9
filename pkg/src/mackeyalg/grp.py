"""Finite groups as validated Cayley tables, plus their subgroup lattices.

Groups are given by an order-n multiplication table on element indices
0..n-1.  Builders exist for the usual small groups; arbitrary groups can be
entered as permutation generators or as a Cayley table file.  Everything is
checked (associativity on all triples, identity, inverses) at construction;
group order is capped at 48 so lattice enumeration stays trivial.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

MAX_ORDER = 48


class GroupTable:
    def __init__(self, mult, name="G", generators=None):
        mult = np.asarray(mult, dtype=np.int64)
        n = mult.shape[0]
        assert mult.shape == (n, n) and n <= MAX_ORDER
        assert ((0 <= mult) & (mult < n)).all()
        # identity
        ids = [e for e in range(n) if (mult[e] == np.arange(n)).all()
               and (mult[:, e] == np.arange(n)).all()]
        assert len(ids) == 1, "no two-sided identity"
        self.id = ids[0]
        # associativity, all triples (n^3 <= 110592 table lookups)
        assert (mult[mult, :] == mult[:, mult]).all(), \
            "multiplication table is not associative"
        # inverses
        inv = np.full(n, -1, dtype=np.int64)
        for g in range(n):
            h = np.nonzero(mult[g] == self.id)[0]
            assert len(h) == 1
            inv[g] = h[0]
        assert (mult[inv, np.arange(n)] == self.id).all()
        self.mult = mult
        self.inv = inv
        self.order = n
        self.name = name
        self.generators = list(generators) if generators else self._find_generators()
        self.words = self._word_table()

    def _find_generators(self):
        gens, known = [], {self.id}
        for g in range(self.order):
            if g not in known:
                gens.append(g)
                known = self.closure(known | {g})
                if len(known) == self.order:
                    break
        return gens

    def _word_table(self):
        """words[g] = tuple of generator positions multiplying to g (BFS)."""
        words = {self.id: ()}
        frontier = [self.id]
        while frontier:
            nxt = []
            for g in frontier:
                for i, s in enumerate(self.generators):
                    h = int(self.mult[g, s])
                    if h not in words:
                        words[h] = words[g] + (i,)
                        nxt.append(h)
            frontier = nxt
        assert len(words) == self.order
        return [words[g] for g in range(self.order)]

    def closure(self, seed):
        cur = set(seed) | {self.id}
        while True:
            new = {int(self.mult[a, b]) for a in cur for b in cur} - cur
            if not new:
                return cur
            cur |= new

    def conj(self, g, h):
        """g h g^{-1}"""
        return int(self.mult[self.mult[g, h], self.inv[g]])

    def power(self, g, k):
        r, a = self.id, g
        if k < 0:
            a, k = int(self.inv[g]), -k
        while k:
            if k & 1:
                r = int(self.mult[r, a])
            a = int(self.mult[a, a])
            k >>= 1
        return r

    def element_order(self, g):
        k, a = 1, g
        while a != self.id:
            a = int(self.mult[a, g])
            k += 1
        return k

    def exponent(self):
        return lcm(*[self.element_order(g) for g in range(self.order)])

    def __repr__(self):
        return f"GroupTable({self.name}, order {self.order})"


# ----------------------------------------------------------------------
# builders

def _table_from_elements(elems, op, name):
    """elems: hashable canonical forms, identity first, rest sorted."""
    idx = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    mult = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            mult[i, j] = idx[op(a, b)]
    return GroupTable(mult, name=name)


def _perm_closure(gens, degree, name):
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = tuple(a[g[i]] for i in range(degree))
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    ordered = [ident] + sorted(elems - {ident})
    return _table_from_elements(ordered, lambda a, b: tuple(a[b[i]] for i in range(degree)),
                                name)


def cyclic(n):
    mult = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return GroupTable(mult, name=f"C{n}", generators=[1] if n > 1 else [])


def dihedral(n):
    """Dihedral group of order 2n."""
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return _perm_closure([r, s], n, f"D{n}")


def symmetric(n):
    assert n <= 4
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return _perm_closure(gens, n, f"S{n}")


def alternating(n):
    assert n == 4
    return _perm_closure([(1, 0, 3, 2), (0, 2, 3, 1)], 4, "A4")


def quaternion():
    # unit quaternions {±1, ±i, ±j, ±k} as (sign, axis in 0..3)
    def op(a, b):
        (sa, xa), (sb, xb) = a, b
        table = {  # axis products, 0 is the scalar 1
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
            (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
            (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
            (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
        }
        s, x = table[(xa, xb)]
        return (sa * sb * s, x)
    elems = [(1, 0)] + sorted({(s, x) for s in (1, -1) for x in range(4)} - {(1, 0)})
    return _table_from_elements(elems, op, "Q8")


def sl23():
    # 2x2 matrices over GF(3) with determinant 1
    ms = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    if (a * d - b * c) % 3 == 1:
                        ms.append((a, b, c, d))
    ident = (1, 0, 0, 1)
    elems = [ident] + sorted(set(ms) - {ident})

    def op(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 3, (a * f + b * h) % 3,
                (c * e + d * g) % 3, (c * f + d * h) % 3)
    return _table_from_elements(elems, op, "SL(2,3)")


def direct_product(A, B):
    na, nb = A.order, B.order
    n = na * nb
    mult = np.zeros((n, n), dtype=np.int64)
    for a1 in range(na):
        for b1 in range(nb):
            for a2 in range(na):
                for b2 in range(nb):
                    mult[a1 * nb + b1, a2 * nb + b2] = \
                        A.mult[a1, a2] * nb + B.mult[b1, b2]
    return GroupTable(mult, name=f"{A.name}x{B.name}")


def semidirect_product(N, H, act):
    """N ⋊ H with act(h, n) giving the automorphism action of h on N."""
    nn, nh = N.order, H.order
    n = nn * nh
    mult = np.zeros((n, n), dtype=np.int64)
    for n1 in range(nn):
        for h1 in range(nh):
            for n2 in range(nn):
                for h2 in range(nh):
                    mult[n1 * nh + h1, n2 * nh + h2] = \
                        N.mult[n1, act(h1, n2)] * nh + H.mult[h1, h2]
    return GroupTable(mult, name=f"{N.name}:{H.name}")


def from_permutations(perms, name="G"):
    """Group generated by permutations (0-based image tuples)."""
    degree = max(len(p) for p in perms)
    gens = [tuple(list(p) + list(range(len(p), degree))) for p in perms]
    for g in gens:
        assert sorted(g) == list(range(degree)), f"not a permutation: {g}"
    return _perm_closure(gens, degree, name)


def parse_cycles(line, degree=None):
    """Parse 1-based cycle notation like '(1 2 3)(4 5)' into a 0-based tuple."""
    cycles = re.findall(r"\(([^()]*)\)", line)
    pts = []
    parsed = []
    for cyc in cycles:
        nums = [int(t) - 1 for t in re.split(r"[,\s]+", cyc.strip()) if t]
        assert all(x >= 0 for x in nums)
        parsed.append(nums)
        pts.extend(nums)
    d = degree or (max(pts) + 1 if pts else 1)
    img = list(range(d))
    for nums in parsed:
        for i, x in enumerate(nums):
            img[x] = nums[(i + 1) % len(nums)]
    return tuple(img)


def from_cayley_file(path):
    name = os.path.basename(path)
    rows = []
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    body = []
    for ln in lines:
        if ln.startswith("#"):
            m = re.match(r"#\s*name:\s*(\S+)", ln)
            if m:
                name = m.group(1)
            continue
        body.append(ln)
    n = int(body[0])
    for ln in body[1:1 + n]:
        rows.append([int(t) for t in ln.split()])
    return GroupTable(np.array(rows), name=name)


def from_permutation_file(path):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    degree = max(max(parse_cycles(ln)) + 1 if parse_cycles(ln) else 1
                 for ln in lines) if lines else 1
    perms = [parse_cycles(ln, degree) for ln in lines]
    return from_permutations(perms, name=os.path.basename(path))


_BUILTINS = {
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "A4": lambda: alternating(4),
    "Q8": quaternion,
    "SL(2,3)": sl23,
    "SL23": sl23,
}


def build_group(spec):
    """Group from a builtin name, a 'AxB' product, a file path, or perms."""
    if isinstance(spec, GroupTable):
        return spec
    if isinstance(spec, (list, tuple)):
        return from_permutations(spec)
    spec = spec.strip()
    if os.path.exists(spec):
        with open(spec) as fh:
            head = fh.read(2048)
        if "(" in head:
            return from_permutation_file(spec)
        return from_cayley_file(spec)
    if "x" in spec and spec not in _BUILTINS:
        parts = spec.split("x")
        g = build_group(parts[0])
        for part in parts[1:]:
            g = direct_product(g, build_group(part))
        return g
    if spec in _BUILTINS:
        return _BUILTINS[spec]()
    m = re.fullmatch(r"C(\d+)", spec)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"D(\d+)", spec)
    if m:
        return dihedral(int(m.group(1)))
    raise ValueError(f"unknown group spec: {spec!r}")


# ----------------------------------------------------------------------
# subgroup lattice

@dataclass
class Subgroup:
    members: tuple          # sorted element indices
    id: int = -1

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.members


class SubgroupLattice:
    """All subgroups of G, sorted by (order, members); and the usual frills."""

    def __init__(self, G: GroupTable):
        self.G = G
        n = G.order
        sets = {frozenset([G.id])}
        # cyclic subgroups
        for g in range(n):
            cyc, a = {G.id}, g
            while a != G.id:
                cyc.add(a)
                a = int(G.mult[a, g])
            sets.add(frozenset(cyc))
        # close under join
        while True:
            new = set()
            for A in sets:
                for B in sets:
                    if not (A <= B or B <= A):
                        j = frozenset(G.closure(A | B))
                        if j not in sets:
                            new.add(j)
            if not new:
                break
            sets |= new
        ordered = sorted(sets, key=lambda s: (len(s), tuple(sorted(s))))
        self.subgroups = [Subgroup(tuple(sorted(s)), i) for i, s in enumerate(ordered)]
        self.by_members = {H.members: H.id for H in self.subgroups}
        m = len(self.subgroups)

        # conjugation action on subgroups and conjugacy classes
        self.conj_sub = np.zeros((n, m), dtype=np.int64)
        for H in self.subgroups:
            for g in range(n):
                img = tuple(sorted(G.conj(g, h) for h in H.members))
                self.conj_sub[g, H.id] = self.by_members[img]
        self.class_of = np.full(m, -1, dtype=np.int64)
        self.classes = []
        for i in range(m):
            if self.class_of[i] < 0:
                cls = sorted(set(int(x) for x in self.conj_sub[:, i]))
                for j in cls:
                    self.class_of[j] = len(self.classes)
                self.classes.append(cls)
        self.class_reps = [cls[0] for cls in self.classes]

        self.normalizers = [
            self.by_members[tuple(sorted(
                g for g in range(n) if self.conj_sub[g, H.id] == H.id))]
            for H in self.subgroups]
        self.inclusion = np.zeros((m, m), dtype=bool)
        for a in self.subgroups:
            sa = set(a.members)
            for b in self.subgroups:
                self.inclusion[a.id, b.id] = sa <= set(b.members)

        # left coset structures per subgroup
        self.cosidx = []     # cosidx[H][g] = index of the coset gH
        self.cosreps = []    # minimal element of each coset
        self.cosact = []     # cosact[H][g, c] = index of g * (coset c)
        for H in self.subgroups:
            ci = np.full(n, -1, dtype=np.int64)
            reps = []
            for g in range(n):
                if ci[g] < 0:
                    c = len(reps)
                    reps.append(g)
                    for h in H.members:
                        ci[G.mult[g, h]] = c
            reps = np.array(reps, dtype=np.int64)
            self.cosidx.append(ci)
            self.cosreps.append(reps)
            self.cosact.append(ci[G.mult[:, reps]])

    def meet(self, i, j):
        inter = tuple(sorted(set(self.subgroups[i].members)
                             & set(self.subgroups[j].members)))
        return self.by_members[inter]

    def subgroup_id(self, members):
        return self.by_members[tuple(sorted(set(members)))]

    def minimal_conjugate(self, sid, under):
        """Minimal lattice id among conjugates of sid by elements of `under`."""
        return min(int(self.conj_sub[g, sid]) for g in under)

    def __len__(self):
        return len(self.subgroups)


def subgroup_lattice(G: GroupTable) -> SubgroupLattice:
    if not hasattr(G, "_lattice"):
        G._lattice = SubgroupLattice(G)
    return G._lattice


def double_cosets(G: GroupTable, H, L):
    """Minimal representatives of H\\G/L.  H, L: member iterables."""
    n = G.order
    seen = np.zeros(n, dtype=bool)
    reps = []
    for x in range(n):
        if not seen[x]:
            reps.append(x)
            for h in H:
                hx = int(G.mult[h, x])
                seen[G.mult[hx, list(L)]] = True
    return reps


def subgroup_table(G: GroupTable, members, name=None):
    """(GroupTable on the subgroup, list: new index -> element of G)."""
    members = sorted(members)
    pos = {g: i for i, g in enumerate(members)}
    k = len(members)
    mult = np.zeros((k, k), dtype=np.int64)
    for a, ga in enumerate(members):
        for b, gb in enumerate(members):
            mult[a, b] = pos[int(G.mult[ga, gb])]
    return GroupTable(mult, name=name or f"{G.name}|sub{k}"), members


def quotient_group(G: GroupTable, members, name=None):
    """(G/N, projection array).  members: the normal subgroup N."""
    members = tuple(sorted(members))
    nset = set(members)
    assert all(G.conj(g, h) in nset for g in range(G.order) for h in members), \
        "subgroup is not normal"
    proj = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if proj[g] < 0:
            c = len(reps)
            reps.append(g)
            for h in members:
                proj[G.mult[g, h]] = c
    k = len(reps)
    mult = np.zeros((k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            mult[a, b] = proj[G.mult[reps[a], reps[b]]]
    Q = GroupTable(mult, name=name or f"{G.name}/N{len(members)}")
    return Q, proj


def p_subgroup_classes(lat: SubgroupLattice, p):
    """Class representative ids of p-subgroups (including the trivial one)."""
    out = []
    for rep in lat.class_reps:
        o = lat.subgroups[rep].order
        while o % p == 0:
            o //= p
        if o == 1:
            out.append(rep)
    return out


def sylow_subgroup(lat: SubgroupLattice, p):
    cands = [H for H in lat.subgroups
             if _is_p_power(H.order, p)]
    return max(cands, key=lambda H: H.order)


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def normal_p_complement(lat: SubgroupLattice, p):
    """Subgroup N with G = N ⋊ P (N normal, p' order), or None."""
    G = lat.G
    P = sylow_subgroup(lat, p)
    target = G.order // P.order
    for H in lat.subgroups:
        if H.order == target and gcd(H.order, p) == 1 \
                and lat.subgroups[lat.normalizers[H.id]].order == G.order:
            return H
    return None
