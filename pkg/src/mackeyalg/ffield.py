"""Exact linear algebra over small finite fields GF(p^m).

Field elements are encoded as integers in [0, q): the base-p digits of the
code are the coefficients of the residue polynomial, lowest degree first.
All arithmetic goes through precomputed numpy lookup tables, so vectors and
matrices (dtype int64 arrays of codes) can be handled with fancy indexing.

Matrix products use the digit decomposition: each GF(p^m) matrix becomes m
integer matrices, which are multiplied with float64 BLAS (exact, since the
intermediate values stay far below 2**53) and reduced mod p afterwards.

Defining polynomials are chosen deterministically: for each (p, m) we take
the first monic primitive polynomial, in a fixed enumeration order, that is
compatible with the polynomials already chosen for the proper divisors of m
(the norm-style compatibility used for Conway polynomials, with our own
enumeration order).  That makes subfield embeddings canonical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime


# ----------------------------------------------------------------------
# polynomials over the prime field, as lists of ints (ascending degree)

def _pp_trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _pp_mul(a, b, p):
    c = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                c[i + j] = (c[i + j] + ai * bj) % p
    return _pp_trim(c)


def _pp_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _pp_trim([(x - y) % p for x, y in zip(a, b)])


def _pp_mod(a, f, p):
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and any(a):
        c = a[-1] % p
        if c:
            for i in range(df + 1):
                a[len(a) - 1 - df + i] = (a[len(a) - 1 - df + i] - c * f[i]) % p
        a.pop()
    return _pp_trim(a) if a else [0]


def _pp_powmod(b, e, f, p):
    r = [1]
    b = _pp_mod(b, f, p)
    while e:
        if e & 1:
            r = _pp_mod(_pp_mul(r, b, p), f, p)
        b = _pp_mod(_pp_mul(b, b, p), f, p)
        e >>= 1
    return r


def _pp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b != [0]:
        lc = b[-1]
        binv = pow(lc, -1, p)
        bm = [(c * binv) % p for c in b]
        a, b = b, _pp_mod(a, bm, p)
    lc = a[-1]
    if lc:
        ainv = pow(lc, -1, p)
        a = [(c * ainv) % p for c in a]
    return a


def _is_irreducible(f, p):
    m = len(f) - 1
    if m < 1:
        return False
    x = [0, 1]
    if _pp_powmod(x, p ** m, f, p) != _pp_mod(x, f, p):
        return False
    for r in factorint(m):
        g = _pp_sub(_pp_powmod(x, p ** (m // r), f, p), _pp_mod(x, f, p), p)
        if g == [0] or _pp_gcd(f, g, p) != [1]:
            return False
    return True


def _is_primitive(f, p):
    # f irreducible; is x a generator of GF(p^m)* ?
    m = len(f) - 1
    q1 = p ** m - 1
    for r in factorint(q1):
        if _pp_powmod([0, 1], q1 // r, f, p) == [1]:
            return False
    return True


@lru_cache(maxsize=None)
def _primitive_root(p):
    for g in range(2, p):
        ok = all(pow(g, (p - 1) // r, p) != 1 for r in factorint(p - 1))
        if ok:
            return g
    return 1  # p == 2


@lru_cache(maxsize=None)
def defining_poly(p, m):
    """Monic primitive polynomial (ascending coeffs) defining GF(p^m)."""
    assert isprime(p)
    if m == 1:
        return ((-_primitive_root(p)) % p, 1)
    divisors = [d for d in range(1, m) if m % d == 0]
    subs = [(d, defining_poly(p, d)) for d in divisors]
    qm1 = p ** m - 1
    for c in range(p ** m):
        f = [(c // p ** j) % p for j in range(m)] + [1]
        if not _is_irreducible(f, p):
            continue
        if not _is_primitive(f, p):
            continue
        ok = True
        for d, fd in subs:
            # the norm-compatible image of the degree-d generator must be
            # a root of fd
            beta = _pp_powmod([0, 1], qm1 // (p ** d - 1), f, p)
            acc = [0]
            for coef in reversed(fd):
                acc = _pp_mod(_pp_mul(acc, beta, p), f, p)
                acc = _pp_sub(acc, [(-coef) % p], p)
            if acc != [0]:
                ok = False
                break
        if ok:
            return tuple(f)
    raise RuntimeError(f"no defining polynomial found for GF({p}^{m})")


# ----------------------------------------------------------------------

class FF:
    """The field GF(p^m) with full lookup tables."""

    def __init__(self, p, m):
        self.p, self.m = p, m
        self.q = q = p ** m
        self.poly = defining_poly(p, m)
        self.zero, self.one = 0, 1 % q

        codes = np.arange(q, dtype=np.int64)
        # DIG[c] = base-p digits of c (length m)
        self.DIG = np.stack([(codes // p ** i) % p for i in range(m)], axis=-1)
        self.ENC = np.array([p ** i for i in range(m)], dtype=np.int64)

        da, db = self.DIG[:, None, :], self.DIG[None, :, :]
        self.ADD = (((da + db) % p) @ self.ENC).astype(np.int64)
        self.NEG = (((-self.DIG) % p) @ self.ENC).astype(np.int64)

        # multiplication via polynomial representatives
        MUL = np.zeros((q, q), dtype=np.int64)
        f = list(self.poly)
        for a in range(q):
            pa = [int(x) for x in self.DIG[a]]
            for b in range(a, q):
                pb = [int(x) for x in self.DIG[b]]
                r = _pp_mod(_pp_mul(pa, pb, p), f, p)
                code = sum(ci * p ** i for i, ci in enumerate(r))
                MUL[a, b] = MUL[b, a] = code
        self.MUL = MUL

        # powers of the canonical generator
        gen = _primitive_root(p) % q if m == 1 else p  # code of "x"
        self.gen = gen
        EXP = np.zeros(q - 1, dtype=np.int64)
        LOG = np.zeros(q, dtype=np.int64)
        acc = 1
        for k in range(q - 1):
            EXP[k] = acc
            LOG[acc] = k
            acc = int(MUL[acc, gen])
        assert acc == 1, "generator is not primitive"
        self.EXP, self.LOG = EXP, LOG

        INV = np.zeros(q, dtype=np.int64)
        INV[1:] = EXP[(-LOG[1:]) % (q - 1)]
        self.INV = INV

        # x -> x^p
        FROB = np.array([self._pow_int(int(a), p) for a in codes], dtype=np.int64)
        self.FROB = FROB
        self.FROBINV = np.argsort(FROB).astype(np.int64)

        # reduction table: x^d mod poly for d in [0, 2m-2], as digit rows
        RED = np.zeros((2 * m - 1, m), dtype=np.int64)
        for d in range(2 * m - 1):
            r = _pp_mod([0] * d + [1], f, p)
            for i, ci in enumerate(r):
                RED[d, i] = ci
        self.RED = RED

    # -- scalar helpers -------------------------------------------------
    def _pow_int(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = int(self.MUL[r, a])
            a = int(self.MUL[a, a])
            e >>= 1
        return r

    def add(self, a, b):
        return int(self.ADD[a, b])

    def sub(self, a, b):
        return int(self.ADD[a, self.NEG[b]])

    def mul(self, a, b):
        return int(self.MUL[a, b])

    def inv(self, a):
        assert a != 0
        return int(self.INV[a])

    def neg(self, a):
        return int(self.NEG[a])

    def pow(self, a, e):
        if a == 0:
            assert e > 0
            return 0
        return int(self.EXP[(int(self.LOG[a]) * e) % (self.q - 1)])

    def from_int(self, n):
        """Image of the rational integer n (lands in the prime subfield)."""
        return n % self.p

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    # -- matrices -------------------------------------------------------
    def zeros(self, *shape):
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64) * self.one

    def mat(self, rows):
        return np.array(rows, dtype=np.int64)

    def madd(self, A, B):
        return self.ADD[A, B]

    def msub(self, A, B):
        return self.ADD[A, self.NEG[B]]

    def smul(self, c, A):
        return self.MUL[c, A]

    def matmul(self, A, B):
        """Exact product of code matrices over the field."""
        p, m = self.p, self.m
        if m == 1:
            C = (A.astype(np.float64) @ B.astype(np.float64)) % p
            return C.astype(np.int64)
        Ad = self.DIG[A].astype(np.float64)
        Bd = self.DIG[B].astype(np.float64)
        digits = np.zeros(A.shape[:-1] + B.shape[1:] + (m,), dtype=np.int64)
        for d in range(2 * m - 1):
            conv = None
            for i in range(max(0, d - m + 1), min(m, d + 1)):
                t = Ad[..., i] @ Bd[..., d - i]
                conv = t if conv is None else conv + t
            conv = (conv % p).astype(np.int64)
            for k in range(m):
                c = int(self.RED[d, k])
                if c:
                    digits[..., k] = (digits[..., k] + c * conv) % p
        return digits @ self.ENC

    def mv(self, A, v):
        return self.matmul(A, v[:, None])[:, 0]

    def rref(self, A):
        """Reduced row echelon form; returns (R, pivot column list)."""
        R = np.array(A, dtype=np.int64, copy=True)
        if R.ndim == 1:
            R = R[None, :]
        nr, nc = R.shape
        pivots = []
        r = 0
        for col in range(nc):
            if r >= nr:
                break
            nz = np.nonzero(R[r:, col])[0]
            if len(nz) == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                R[[r, piv]] = R[[piv, r]]
            R[r] = self.MUL[self.INV[R[r, col]], R[r]]
            mask = R[:, col] != 0
            mask[r] = False
            if mask.any():
                factors = self.NEG[R[mask, col]]
                R[mask] = self.ADD[R[mask], self.MUL[factors[:, None], R[r][None, :]]]
            pivots.append(col)
            r += 1
        return R[:r], pivots

    def rank(self, A):
        return len(self.rref(A)[1])

    def null_space(self, A):
        """Basis (rows) of {x : A @ x = 0}."""
        if A.shape[0] == 0:
            return self.eye(A.shape[1])
        R, pivots = self.rref(A)
        nc = A.shape[1]
        free = [c for c in range(nc) if c not in pivots]
        basis = self.zeros(len(free), nc)
        for i, fc in enumerate(free):
            basis[i, fc] = self.one
            for r, pc in enumerate(pivots):
                basis[i, pc] = self.neg(int(R[r, fc]))
        return basis

    def solve(self, A, b):
        """One solution x of A @ x = b, or None.  b may be a matrix."""
        one_d = b.ndim == 1
        B = b[:, None] if one_d else b
        aug = np.concatenate([A, B], axis=1)
        R, pivots = self.rref(aug)
        nc = A.shape[1]
        if any(pc >= nc for pc in pivots):
            return None
        x = self.zeros(nc, B.shape[1])
        for r, pc in enumerate(pivots):
            x[pc] = R[r, nc:]
        return x[:, 0] if one_d else x

    def inv_mat(self, A):
        n = A.shape[0]
        x = self.solve(A, self.eye(n))
        assert x is not None, "matrix not invertible"
        return x

    def row_space(self, A):
        return self.rref(A)[0]

    def coords(self, basis, v):
        """Coordinates of v in the given row basis, or None."""
        return self.solve(basis.T, v)

    # -- polynomials over the field (lists of codes, ascending) --------
    def ptrim(self, a):
        a = list(a)
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        return a if a else [0]

    def pmul(self, a, b):
        c = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    c[i + j] = self.add(c[i + j], self.mul(ai, bj))
        return self.ptrim(c)

    def pdivmod(self, a, f):
        a = list(a)
        f = self.ptrim(f)
        df = len(f) - 1
        lcinv = self.inv(f[-1])
        quo = [0] * max(1, len(a) - df)
        while len(a) - 1 >= df and any(a):
            c = self.mul(a[-1], lcinv)
            if c:
                quo[len(a) - 1 - df] = c
                for i in range(df + 1):
                    a[len(a) - 1 - df + i] = self.sub(a[len(a) - 1 - df + i],
                                                      self.mul(c, f[i]))
            a.pop()
        return self.ptrim(quo), self.ptrim(a)

    def pmod(self, a, f):
        return self.pdivmod(a, f)[1]

    def pgcd(self, a, b):
        a, b = self.ptrim(a), self.ptrim(b)
        while b != [0]:
            a, b = b, self.pmod(a, b)
        if a[-1] != 0 and a != [0]:
            c = self.inv(a[-1])
            a = [self.mul(c, x) for x in a]
        return a

    def pdiff(self, a):
        d = [self.mul((i % self.p), a[i]) for i in range(1, len(a))]
        return self.ptrim(d or [0])

    def peval(self, a, x):
        r = 0
        for c in reversed(a):
            r = self.add(self.mul(r, x), c)
        return r

    def peval_mat(self, a, M):
        n = M.shape[0]
        R = self.zeros(n, n)
        for c in reversed(a):
            R = self.matmul(R, M)
            if c:
                R = self.madd(R, self.smul(c, self.eye(n)))
        return R

    def squarefree_part(self, f):
        f = self.ptrim(f)
        if len(f) == 1:
            return f
        d = self.pdiff(f)
        if d == [0]:
            # f = h(x^p): take p-th root of the coefficients
            g = [int(self.FROBINV[f[i]]) for i in range(0, len(f), self.p)]
            return self.squarefree_part(g)
        g = self.pgcd(f, d)
        q, r = self.pdivmod(f, g)
        assert r == [0]
        if g == [1]:
            return q
        # q holds each distinct factor at least once except those whose
        # multiplicity is divisible by p; pick those up from g
        sg = self.squarefree_part(g)
        h = self.pgcd(q, sg)
        quo, r = self.pdivmod(sg, h)
        assert r == [0]
        return self.pmul(q, quo)

    def proots(self, f):
        return [a for a in range(self.q) if self.peval(f, a) == 0]

    def minpoly_mat(self, M):
        """Minimal polynomial of a square matrix (monic, ascending codes)."""
        n = M.shape[0]
        f = [1]
        for seed in range(n):
            v = self.zeros(n)
            v[seed] = self.one
            K = [v]
            w = v
            while True:
                w = self.mv(M, w)
                A = np.stack(K, axis=0)
                sol = self.solve(A.T, w)
                if sol is not None:
                    local = [self.neg(int(c)) for c in sol] + [1]
                    break
                K.append(w)
            quo, _ = self.pdivmod(self.pmul(f, local), self.pgcd(f, local))
            f = quo
            if len(f) - 1 == n or not self.peval_mat(f, M).any():
                break
        assert not self.peval_mat(f, M).any()
        return f


@lru_cache(maxsize=None)
def GF(p, m=1):
    return FF(p, m)


def embed_table(Fs, Fb):
    """Code table for the canonical embedding GF(p^a) -> GF(p^ab)."""
    assert Fs.p == Fb.p and Fb.m % Fs.m == 0
    ratio = (Fb.q - 1) // (Fs.q - 1)
    T = np.zeros(Fs.q, dtype=np.int64)
    for a in range(1, Fs.q):
        T[a] = Fb.EXP[(int(Fs.LOG[a]) * ratio) % (Fb.q - 1)]
    # certify it is a ring homomorphism
    A = np.arange(Fs.q)
    assert (T[Fs.ADD] == Fb.ADD[T[A][:, None], T[A][None, :]]).all()
    assert (T[Fs.MUL] == Fb.MUL[T[A][:, None], T[A][None, :]]).all()
    return T


# ----------------------------------------------------------------------
# exact rational linear algebra (small sizes only)

def q_rref(rows):
    """RREF over Q.  rows: list of lists of Fraction/int.  -> (rref, pivots)"""
    R = [[Fraction(x) for x in row] for row in rows]
    if not R:
        return [], []
    nc = len(R[0])
    pivots = []
    r = 0
    for col in range(nc):
        piv = next((i for i in range(r, len(R)) if R[i][col] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        c = R[r][col]
        R[r] = [x / c for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][col] != 0:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(col)
        r += 1
    return R[:r], pivots


def q_null_space(rows):
    R, pivots = q_rref(rows)
    nc = len(rows[0]) if rows else 0
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def q_rank(rows):
    return len(q_rref(rows)[1])
