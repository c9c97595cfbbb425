"""Small finite fields GF(p^k) with lookup-table arithmetic, plus dense linear algebra.

Elements are integers 0..q-1 encoding base-p digit vectors (coefficients of
the polynomial representative, least significant first).  Fields are built on
demand and cached; matrices are plain lists of lists of ints.
"""

from __future__ import annotations

from functools import lru_cache


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q):
    """Return (p, k) with q = p^k, or raise ValueError."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m == 1:
                return p, k
            raise ValueError(f"{q} is not a prime power")
    raise ValueError(f"{q} is not a prime power")


def prime_powers(count, start=2):
    """First `count` prime powers >= start, ascending."""
    out = []
    q = start
    while len(out) < count:
        try:
            factor_prime_power(q)
            out.append(q)
        except ValueError:
            pass
        q += 1
    return out


def _poly_mul_mod(a, b, mod, p):
    # a, b, mod: coefficient lists over F_p, mod monic.
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    k = len(mod) - 1
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            for j in range(k + 1):
                out[i - k + j] = (out[i - k + j] - c * mod[j]) % p
    return out[:k]


def _find_irreducible(p, k):
    """Monic irreducible of degree k over F_p, by exhaustive search."""
    if k == 1:
        return [0, 1]
    import itertools
    for tail in itertools.product(range(p), repeat=k):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        if _is_irreducible(poly, p):
            return poly
    raise RuntimeError("no irreducible polynomial found")


def _is_irreducible(poly, p):
    import itertools
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            if _poly_divides(div, poly, p):
                return False
    return True


def _poly_divides(a, b, p):
    b = list(b)
    da, db = len(a) - 1, len(b) - 1
    inv_lead = pow(a[-1], p - 2, p)
    while db >= da:
        c = (b[db] * inv_lead) % p
        if c:
            for i in range(da + 1):
                b[db - da + i] = (b[db - da + i] - c * a[i]) % p
        db -= 1
        while db >= 0 and b[db] == 0:
            db -= 1
    return db < 0


class GF:
    """The field with q elements; q <= 64 or so keeps the tables small."""

    def __init__(self, q):
        p, k = factor_prime_power(q)
        self.q = q
        self.p = p
        self.k = k
        self.modulus = _find_irreducible(p, k) if k > 1 else None
        self._build_tables()

    def _encode(self, digits):
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def _decode(self, x):
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _build_tables(self):
        q, p = self.q, self.p
        if self.k == 1:
            self.add_t = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul_t = [[(a * b) % p for b in range(p)] for a in range(p)]
            self.neg_t = [(-a) % p for a in range(p)]
        else:
            dec = [self._decode(x) for x in range(q)]
            self.add_t = [[self._encode([(x + y) % p for x, y in zip(dec[a], dec[b])])
                           for b in range(q)] for a in range(q)]
            self.neg_t = [self._encode([(-x) % p for x in dec[a]]) for a in range(q)]
            self.mul_t = [[self._encode(_poly_mul_mod(dec[a], dec[b], self.modulus, p)
                                        + [0] * self.k)
                           for b in range(q)] for a in range(q)]
        self.inv_t = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_t[a][b] == 1:
                    self.inv_t[a] = b
                    break

    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.add_t[a][self.neg_t[b]]

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return self.inv_t[a]

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def generator(self):
        """A multiplicative generator (smallest in the encoding)."""
        for g in range(1, self.q):
            x, order = g, 1
            while x != 1:
                x = self.mul(x, g)
                order += 1
            if order == self.q - 1:
                return g
        raise RuntimeError("no generator")

    def __repr__(self):
        return f"GF({self.q})"

    # -- linear algebra ----------------------------------------------------

    def zeros(self, rows, cols):
        return [[0] * cols for _ in range(rows)]

    def eye(self, n):
        m = self.zeros(n, n)
        for i in range(n):
            m[i][i] = 1
        return m

    def mat_mul(self, A, B):
        if not A or not B:
            return []
        rows, inner, cols = len(A), len(B), len(B[0])
        mul, add = self.mul_t, self.add_t
        out = self.zeros(rows, cols)
        for i in range(rows):
            Ai = A[i]
            Oi = out[i]
            for t in range(inner):
                a = Ai[t]
                if a:
                    mr = mul[a]
                    Bt = B[t]
                    for j in range(cols):
                        b = Bt[j]
                        if b:
                            Oi[j] = add[Oi[j]][mr[b]]
        return out

    def mat_vec(self, A, v):
        return [c[0] for c in self.mat_mul(A, [[x] for x in v])] if A else []

    def rref(self, M):
        """Row-reduce a copy of M; returns (rref, pivot column list)."""
        M = [row[:] for row in M]
        rows = len(M)
        cols = len(M[0]) if rows else 0
        pivots = []
        r = 0
        for c in range(cols):
            pr = None
            for i in range(r, rows):
                if M[i][c]:
                    pr = i
                    break
            if pr is None:
                continue
            M[r], M[pr] = M[pr], M[r]
            inv = self.inv(M[r][c])
            M[r] = [self.mul(inv, x) for x in M[r]]
            for i in range(rows):
                if i != r and M[i][c]:
                    f = M[i][c]
                    M[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(M[i], M[r])]
            pivots.append(c)
            r += 1
            if r == rows:
                break
        return M, pivots

    def rank(self, M):
        if not M or not M[0]:
            return 0
        return len(self.rref(M)[1])

    def nullspace(self, M):
        """Basis (list of vectors) of the right kernel of M."""
        if not M:
            return []
        cols = len(M[0])
        R, pivots = self.rref(M)
        free = [c for c in range(cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [0] * cols
            v[fc] = 1
            for r, pc in enumerate(pivots):
                v[pc] = self.neg(R[r][fc])
            basis.append(v)
        return basis

    def solve(self, M, b):
        """One solution x of Mx = b, or None."""
        if not M:
            return [] if not any(b) else None
        cols = len(M[0])
        aug = [row[:] + [bv] for row, bv in zip(M, b)]
        R, pivots = self.rref(aug)
        for row in R:
            if not any(row[:-1]) and row[-1]:
                return None
        x = [0] * cols
        for r, pc in enumerate(pivots):
            if pc == cols:
                return None
            x[pc] = R[r][-1]
        return x

    def image_complement(self, M):
        """Vectors spanning a complement of the column space of M in F_q^rows.

        Returns (pivot-free coordinate list, complement basis vectors).
        """
        rows = len(M)
        if rows == 0:
            return []
        cols = len(M[0]) if M else 0
        if cols == 0:
            return [self._unit(rows, i) for i in range(rows)]
        Mt = [[M[i][j] for i in range(rows)] for j in range(cols)]
        _, pivots = self.rref(Mt)
        # pivots of the row space of M^T = coordinates where the image "leads";
        # complement: unit vectors at non-pivot coordinates.
        return [self._unit(rows, i) for i in range(rows) if i not in pivots]

    def _unit(self, n, i):
        v = [0] * n
        v[i] = 1
        return v


@lru_cache(maxsize=None)
def field(q):
    return GF(q)
