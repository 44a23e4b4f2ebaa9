"""Ordinary character tables of small groups, computed exactly.

The table is found by simultaneous diagonalisation of the class-sum
matrices over a prime field GF(l) with l = 1 mod exp(G) and l > 2|G|,
then lifted to exact cyclotomic values through the discrete Fourier
inversion of the power map.  Character values live in Q(zeta_e) with
e = exp(G), represented canonically as rational polynomials modulo the
e-th cyclotomic polynomial (class Cyc).

Also provides the ordinary character of the unique lift of a
p-permutation module: at g = us (u the p-part, s the p'-part) the value
is the eigenvalue-multiplicity lift of s acting on the Brauer quotient
at <u>.  Every table and every lift is certified on the spot
(orthogonality, degree sums, multiplicity recombination).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm

import numpy as np
import sympy

from .ffield import GF, embed_table
from .grp import GroupTable, subgroup_lattice
from .modrep import ModuleRep, brauer_quotient


# ----------------------------------------------------------------------
# rational polynomials (ascending Fraction coefficients)

@lru_cache(maxsize=None)
def _phi_coeffs(e):
    x = sympy.symbols("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(e, x), x)
    return tuple(Fraction(int(c)) for c in reversed(poly.all_coeffs()))


def _rpmod(co, phi):
    """Reduce the coefficient list co modulo the monic polynomial phi."""
    co = list(co)
    d = len(phi) - 1
    for k in range(len(co) - 1, d - 1, -1):
        c = co[k]
        if c:
            for i in range(d + 1):
                co[k - d + i] -= c * phi[i]
    co = co[:d] + [Fraction(0)] * (d - len(co))
    return tuple(co[:d])


class Cyc:
    """Element of Q(zeta_e), coefficients modulo the cyclotomic polynomial."""

    __slots__ = ("e", "co")

    def __init__(self, e, co):
        self.e = e
        self.co = _rpmod([Fraction(c) for c in co], _phi_coeffs(e))

    @classmethod
    def rat(cls, e, q):
        return cls(e, [Fraction(q)])

    @classmethod
    def root(cls, e, j):
        """zeta_e ** j."""
        j %= e
        return cls(e, [0] * j + [1])

    @classmethod
    def from_mults(cls, e, d, mults):
        """sum_j mults[j] * zeta_d**j, embedded via zeta_d = zeta_e**(e/d)."""
        assert e % d == 0
        out = cls.rat(e, 0)
        for j, m in enumerate(mults):
            if m:
                out = out + cls.root(e, j * (e // d)) * cls.rat(e, m)
        return out

    def __add__(self, o):
        assert self.e == o.e
        return Cyc(self.e, [a + b for a, b in zip(self.co, o.co)])

    def __sub__(self, o):
        assert self.e == o.e
        return Cyc(self.e, [a - b for a, b in zip(self.co, o.co)])

    def __mul__(self, o):
        assert self.e == o.e
        n = len(self.co)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.co):
            if a:
                for j, b in enumerate(o.co):
                    if b:
                        prod[i + j] += a * b
        return Cyc(self.e, prod)

    def galois(self, t):
        """Apply zeta -> zeta**t (t coprime to the conductor)."""
        assert gcd(t, self.e) == 1
        out = Cyc.rat(self.e, 0)
        for k, c in enumerate(self.co):
            if c:
                out = out + Cyc.root(self.e, k * t) * Cyc.rat(self.e, c)
        return out

    def conj(self):
        return self.galois(self.e - 1) if self.e > 1 else self

    def is_rational(self):
        return not any(self.co[1:])

    def rational_value(self):
        assert self.is_rational()
        return self.co[0] if self.co else Fraction(0)

    def __eq__(self, o):
        return isinstance(o, Cyc) and self.e == o.e and self.co == o.co

    def __hash__(self):
        return hash((self.e, self.co))

    def __bool__(self):
        return any(self.co)

    def __repr__(self):
        if self.is_rational():
            return str(self.rational_value())
        return "Cyc(%d, %s)" % (self.e, list(self.co))


# ----------------------------------------------------------------------
# conjugacy classes and the ordinary table

def conjugacy_classes(G: GroupTable):
    """(classes as sorted tuples, class_of array); classes sorted by
    (element order, members) for determinism."""
    seen = np.zeros(G.order, bool)
    classes = []
    for g in range(G.order):
        if seen[g]:
            continue
        orb = {g}
        stack = [g]
        while stack:
            h = stack.pop()
            for x in range(G.order):
                c = int(G.mult[int(G.mult[x, h]), G.inv[x]])
                if c not in orb:
                    orb.add(c)
                    stack.append(c)
        for h in orb:
            seen[h] = True
        classes.append(tuple(sorted(orb)))
    classes.sort(key=lambda c: (G.element_order(c[0]), c))
    class_of = np.zeros(G.order, np.int64)
    for i, c in enumerate(classes):
        for h in c:
            class_of[h] = i
    return classes, class_of


@dataclass
class CharacterTable:
    G: GroupTable
    classes: list
    class_of: np.ndarray
    reps: list
    orders: list
    inv_class: list
    exponent: int
    values: list          # values[a][k] = Cyc value of character a at class k
    degrees: list

    def inner(self, u, v):
        """<u, v> = (1/|G|) sum |C_k| u_k conj(v_k), as a Fraction."""
        e = self.exponent
        acc = Cyc.rat(e, 0)
        for k, (a, b) in enumerate(zip(u, v)):
            acc = acc + a * b.conj() * Cyc.rat(e, len(self.classes[k]))
        acc = acc * Cyc.rat(e, Fraction(1, self.G.order))
        return acc.rational_value()


def _dixon_prime(e, bound):
    ell = e + 1
    while ell <= bound or not sympy.isprime(ell):
        ell += e
    return ell


_TABLE_CACHE = {}


def character_table(G: GroupTable) -> CharacterTable:
    """The ordinary character table, cached by multiplication table."""
    key = G.mult.tobytes()
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = _character_table(G)
    return _TABLE_CACHE[key]


def _character_table(G: GroupTable) -> CharacterTable:
    classes, class_of = conjugacy_classes(G)
    r = len(classes)
    reps = [c[0] for c in classes]
    orders = [G.element_order(g) for g in reps]
    e = lcm(*orders) if r > 1 else 1
    inv_class = [int(class_of[G.inv[g]]) for g in reps]
    ell = _dixon_prime(e, 2 * G.order)
    F = GF(ell)

    # class multiplication constants a[i,j,k]: C_i * C_j = sum a[i,j,k] C_k
    a = np.zeros((r, r, r), np.int64)
    for i, Ci in enumerate(classes):
        for k, gk in enumerate(reps):
            for x in Ci:
                a[i, class_of[int(G.mult[G.inv[x], gk])], k] += 1
    mats = [np.asarray(a[i].T % ell, np.int64) for i in range(r)]

    # common eigenvectors by iterated eigenspace refinement
    spaces = [F.eye(r)]
    for Mi in mats:
        if all(S.shape[0] == 1 for S in spaces):
            break
        new = []
        for S in spaces:
            if S.shape[0] == 1:
                new.append(S)
                continue
            B = F.solve(S.T, F.matmul(Mi, S.T))
            assert B is not None, "class-sum matrix does not preserve space"
            f = F.minpoly_mat(B)
            roots = F.proots(f)
            assert len(roots) == len(f) - 1, \
                "class-sum matrix not diagonalisable mod ell"
            for root in roots:
                K = F.null_space(F.msub(B, F.smul(root, F.eye(S.shape[0]))))
                new.append(F.matmul(K, S))
        assert sum(S.shape[0] for S in new) == r
        spaces = new
    assert all(S.shape[0] == 1 for S in spaces)

    # eigenvalue vectors lambda_i = |C_i| chi(g_i) / chi(1)  (mod ell)
    lam_rows = []
    for S in spaces:
        s = S[0]
        j = next(i for i in range(r) if s[i])
        sj = F.inv(int(s[j]))
        lam = []
        for Mi in mats:
            t = F.mv(Mi, s)
            li = F.mul(int(t[j]), sj)
            assert (t == F.smul(li, s)).all()
            lam.append(li)
        lam_rows.append(lam)

    # degrees: d^2 * sum_i lam_i lam_{i*} / |C_i| = |G|  (mod ell)
    chars = []
    for lam in lam_rows:
        tot = 0
        for i in range(r):
            tot = F.add(tot, F.mul(F.mul(lam[i], lam[inv_class[i]]),
                                   F.inv(len(classes[i]) % ell)))
        d2 = F.mul(G.order % ell, F.inv(tot))
        cands = [d for d in range(1, isqrt(G.order) + 1)
                 if F.mul(d % ell, d % ell) == d2]
        assert len(cands) == 1, "ambiguous character degree"
        d = cands[0]
        # values mod ell, then Fourier inversion over each cyclic power map
        cmod = [F.mul(F.mul(d % ell, lam[k]), F.inv(len(classes[k]) % ell))
                for k in range(r)]
        vals = []
        for k in range(r):
            m = orders[k]
            zlog = (ell - 1) // m
            mults = []
            for j in range(m):
                acc = 0
                for t in range(m):
                    zc = int(F.EXP[(-zlog * j * t) % (ell - 1)])
                    acc = F.add(acc, F.mul(
                        cmod[int(class_of[G.power(reps[k], t)])], zc))
                mj = F.mul(acc, F.inv(m % ell))
                assert mj <= d, "eigenvalue multiplicity exceeds the degree"
                mults.append(int(mj))
            assert sum(mults) == d
            vals.append(Cyc.from_mults(e, m, mults))
        assert vals[0] == Cyc.rat(e, d)
        chars.append((d, vals))

    chars.sort(key=lambda dv: (dv[0], [v.co for v in dv[1]]))
    values = [vals for _, vals in chars]
    degrees = [d for d, _ in chars]
    ct = CharacterTable(G, classes, class_of, reps, orders, inv_class,
                        e, values, degrees)
    # certificates: completeness and row orthogonality
    assert sum(d * d for d in degrees) == G.order
    for i1 in range(r):
        for i2 in range(r):
            assert ct.inner(values[i1], values[i2]) == int(i1 == i2)
    return ct


def ordinary_multiplicities(ct: CharacterTable, psi):
    """Decompose a class function as a non-negative integral combination of
    the irreducible characters; certified by exact recombination."""
    e = ct.exponent
    out = []
    for chi in ct.values:
        n = ct.inner(psi, chi)
        assert n.denominator == 1 and n >= 0, \
            "class function is not a character"
        out.append(int(n))
    for k in range(len(ct.classes)):
        acc = Cyc.rat(e, 0)
        for n, chi in zip(out, ct.values):
            if n:
                acc = acc + Cyc.rat(e, n) * chi[k]
        assert acc == psi[k], "character multiplicities do not recombine"
    return out


# ----------------------------------------------------------------------
# characters of lifts of p-permutation modules

def _eigenvalue_multiplicities(F, A, d):
    """Multiplicities of the d-th roots of unity as eigenvalues of A
    (A must be diagonalisable with eigenvalues of order dividing d)."""
    n = A.shape[0]
    step = (F.q - 1) // d
    mults = []
    for j in range(d):
        lamj = int(F.EXP[(step * j) % (F.q - 1)]) if F.q > 2 else F.one
        K = F.null_space(F.msub(A, F.smul(lamj, F.eye(n))))
        mults.append(K.shape[0])
    assert sum(mults) == n, "matrix has eigenvalues outside the expected roots"
    return mults


def character_of_lift(V: ModuleRep, p, ct: CharacterTable):
    """Ordinary character of the unique lift of the p-permutation module V:
    value at g = us (u the p-part) is the eigenvalue lift of s on the
    Brauer quotient V(<u>)."""
    G, F = V.G, V.F
    assert ct.G is G or ct.G.order == G.order
    lat = subgroup_lattice(G)
    e = ct.exponent
    vals = []
    for k, g in enumerate(ct.reps):
        m = ct.orders[k]
        pa = 1
        while m % (pa * p) == 0:
            pa *= p
        m1 = m // pa
        # g = u s with u = g**(y*m1) the p-part, s = g**(x*pa) the p'-part
        if pa == 1:
            u, s = G.id, g
        else:
            x = pow(pa, -1, m1) if m1 > 1 else 0
            s = G.power(g, x * pa)
            u = int(G.mult[g, G.inv[s]])
        sid = lat.subgroup_id(G.closure([u]))
        bq = brauer_quotient(V, sid, lat)
        n = bq.module.dim
        if n == 0:
            vals.append(Cyc.rat(e, 0))
            continue
        Qset = set(lat.subgroups[sid].members)
        c = next(c for c in range(bq.nbar.order)
                 if int(G.mult[G.inv[s], bq.nbar_reps[c]]) in Qset)
        A = bq.module.mats[c]
        d = G.element_order(s)
        if d == 1:
            vals.append(Cyc.rat(e, n))
            continue
        Mdeg = 1
        while (p ** Mdeg - 1) % d:
            Mdeg += 1
        big = lcm(F.m, Mdeg)
        if big > F.m:
            FE = GF(p, big)
            A = embed_table(F, FE)[A]
        else:
            FE = F
        mults = _eigenvalue_multiplicities(FE, A, d)
        vals.append(Cyc.from_mults(e, d, mults))
    return vals
