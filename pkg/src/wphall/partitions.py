"""Partitions, cyclic multisegments, and a truncated ring of symmetric functions.

Symmetric functions are stored in one of five bases (elementary e, power sum
p, complete xi, Schur s, monomial m) up to a truncation degree.  All base
changes route through the power-sum basis, where multiplication is free;
the monomial basis is handled through explicit expansions in finitely many
variables, which double as the test oracle.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache

DEFAULT_TRUNCATION = 8


class TruncationError(ValueError):
    """Raised when an operation would need terms beyond the truncation degree."""


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts if int(x) != 0)
        if any(x < 0 for x in parts):
            raise ValueError("negative part")
        if list(parts) != sorted(parts, reverse=True):
            parts = tuple(sorted(parts, reverse=True))
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def conjugate(self):
        if not self:
            return Partition()
        return Partition(sum(1 for x in self if x > i) for i in range(self[0]))

    def mult(self, part):
        return sum(1 for x in self if x == part)

    def length_ge(self, i):
        """Number of parts of size >= i."""
        return sum(1 for x in self if x >= i)

    def length_gt(self, i):
        return sum(1 for x in self if x > i)

    def add_box_results(self):
        """All partitions obtained by adding one box, with the new row length."""
        out = []
        seen = set()
        rows = list(self) + [0]
        for j in range(len(rows)):
            if j == 0 or rows[j] < rows[j - 1]:
                nu = Partition(rows[:j] + [rows[j] + 1] + rows[j + 1:])
                if nu not in seen:
                    seen.add(nu)
                    out.append((nu, rows[j] + 1))
        return out

    def remove_part(self, part):
        lst = list(self)
        lst.remove(part)
        return Partition(lst)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self) + ")"

    @staticmethod
    def parse(s):
        s = s.strip()
        if s in ("()", ""):
            return Partition()
        return Partition(int(x) for x in s.strip("()").split(","))


def partitions_of(n, max_part=None):
    """All partitions of n, largest part first."""
    if n == 0:
        yield Partition()
        return
    if max_part is None:
        max_part = n
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + tuple(rest))


def n_stat(lam):
    """Sum of (i-1)*lam_i with rows indexed from 1."""
    return sum(i * part for i, part in enumerate(lam))


def zee(lam):
    """The centralizer order z_lambda = prod i^m_i m_i!."""
    out = 1
    for part in set(lam):
        m = lam.mult(part)
        out *= part ** m
        for j in range(1, m + 1):
            out *= j
    return out


# ---------------------------------------------------------------------------
# cyclic multisegments
# ---------------------------------------------------------------------------

class Multisegment:
    """Iso class of a nilpotent cyclic-quiver representation.

    terms maps (i, l) -- start vertex mod p and length l >= 1 -- to a
    positive multiplicity.  The segment (i, l) covers vertices
    i, i-1, ..., i-(l-1) modulo p.
    """

    __slots__ = ("p", "terms")

    def __init__(self, p, terms=()):
        p = int(p)
        if p < 1:
            raise ValueError("modulus must be >= 1")
        tidy = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for (i, l), mult in items:
            if l < 1 or mult < 0:
                raise ValueError("bad segment")
            if mult:
                key = (i % p, int(l))
                tidy[key] = tidy.get(key, 0) + int(mult)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "terms", dict(sorted(tidy.items())))

    def __setattr__(self, name, value):
        raise AttributeError("Multisegment is immutable")

    def __eq__(self, other):
        return (isinstance(other, Multisegment)
                and self.p == other.p and self.terms == other.terms)

    def __hash__(self):
        return hash((self.p, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Dimension vector in N^(Z/pZ)."""
        d = [0] * self.p
        for (i, l), mult in self.terms.items():
            for t in range(l):
                d[(i - t) % self.p] += mult
        return tuple(d)

    def total(self):
        return sum(l * m for (_, l), m in self.terms.items())

    def add(self, other):
        if other.p != self.p:
            raise ValueError("modulus mismatch")
        merged = dict(self.terms)
        for k, m in other.terms.items():
            merged[k] = merged.get(k, 0) + m
        return Multisegment(self.p, merged)

    def segments(self):
        """Expanded list of (i, l) with repetition."""
        out = []
        for (i, l), m in self.terms.items():
            out.extend([(i, l)] * m)
        return out

    def to_partition(self):
        """For p = 1, the partition of segment lengths."""
        if self.p != 1:
            raise ValueError("only meaningful for modulus 1")
        return Partition(l for (_, l) in self.segments())

    @staticmethod
    def from_partition(lam, p=1, start=0):
        """Segments [start; p*part) for each part (the one-point torsion classes)."""
        return Multisegment(p, [((start, p * part), 1) for part in lam])

    def __str__(self):
        if not self.terms:
            return f"p={self.p}: 0"
        bits = []
        for (i, l), m in self.terms.items():
            seg = f"[{i};{l})"
            bits.append(seg if m == 1 else f"{m}{seg}")
        return f"p={self.p}: " + "+".join(bits)

    __repr__ = __str__

    @staticmethod
    def parse(s):
        head, _, body = s.partition(":")
        p = int(head.strip().lstrip("p="))
        body = body.strip()
        if body in ("0", ""):
            return Multisegment(p)
        terms = []
        for piece in body.split("+"):
            m = re.fullmatch(r"(\d*)\[(-?\d+);(\d+)\)", piece.strip())
            if not m:
                raise ValueError(f"bad segment {piece!r}")
            mult = int(m.group(1)) if m.group(1) else 1
            terms.append(((int(m.group(2)), int(m.group(3))), mult))
        return Multisegment(p, terms)


def multisegments_of_degree(p, dvec):
    """All multisegments with the given dimension vector."""
    dvec = tuple(dvec)
    segs = []
    total = sum(dvec)
    for i in range(p):
        for l in range(1, total + 1):
            cover = [0] * p
            for t in range(l):
                cover[(i - t) % p] += 1
            if all(c <= d for c, d in zip(cover, dvec)):
                segs.append(((i, l), tuple(cover)))
    out = []

    def rec(idx, remaining, chosen):
        if not any(remaining):
            out.append(Multisegment(p, chosen))
            return
        if idx == len(segs):
            return
        (seg, cover) = segs[idx]
        max_mult = min((r // c if c else 10 ** 9) for r, c in zip(remaining, cover) if c)
        for mult in range(max_mult, -1, -1):
            new_rem = tuple(r - mult * c for r, c in zip(remaining, cover))
            rec(idx + 1, new_rem, chosen + [(seg, mult)] if mult else chosen)

    rec(0, dvec, [])
    return out


def segment_hom_dim(seg1, seg2, p):
    """dim Hom between single segment modules over the cyclic quiver C_p."""
    (i, l), (j, m) = seg1, seg2
    lo = max(0, m - l)
    return sum(1 for t in range(lo, m) if (j - t - i) % p == 0)


def hom_dim(m1, m2):
    """dim Hom between nilpotent representations given as multisegments."""
    if m1.p != m2.p:
        raise ValueError("modulus mismatch")
    total = 0
    for s1, mult1 in m1.terms.items():
        for s2, mult2 in m2.terms.items():
            total += mult1 * mult2 * segment_hom_dim(s1, s2, m1.p)
    return total


def euler_form_cyclic(d, e):
    """Euler form sum d_i e_i - sum d_i e_(i-1) on dimension vectors for C_p."""
    p = len(d)
    return sum(d[i] * e[i] for i in range(p)) - sum(d[i] * e[(i - 1) % p] for i in range(p))


def ext_dim(m1, m2):
    return hom_dim(m1, m2) - euler_form_cyclic(m1.degree(), m2.degree())


def aut_order(m, q):
    """Order of the automorphism group of the representation of class m over F_q.

    |Aut| = q^(dim End - sum mult_k^2) * prod_k |GL_(mult_k)(F_q)|, since the
    endomorphism ring is basic with residue field F_q at every segment.
    """
    dim_end = hom_dim(m, m)
    mults = list(m.terms.values())
    dim_rad = dim_end - sum(mu * mu for mu in mults)
    out = q ** dim_rad
    for mu in mults:
        for i in range(mu):
            out *= q ** mu - q ** i
    return out


# ---------------------------------------------------------------------------
# symmetric functions
# ---------------------------------------------------------------------------

BASES = ("e", "p", "xi", "s", "m")


class SymExpr:
    """Element of the ring of symmetric functions, truncated past degree N."""

    __slots__ = ("basis", "terms", "truncation")

    def __init__(self, basis, terms=None, truncation=DEFAULT_TRUNCATION):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        tidy = {}
        if terms:
            for lam, c in terms.items():
                lam = Partition(lam)
                c = Fraction(c)
                if lam.size > truncation:
                    raise TruncationError(
                        f"degree {lam.size} exceeds truncation {truncation}")
                if c:
                    tidy[lam] = tidy.get(lam, Fraction(0)) + c
        tidy = {k: v for k, v in tidy.items() if v}
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", tidy)
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, name, value):
        raise AttributeError("SymExpr is immutable")

    @staticmethod
    def generator(basis, r, truncation=DEFAULT_TRUNCATION):
        if r == 0:
            return SymExpr(basis, {Partition(): 1}, truncation)
        return SymExpr(basis, {Partition([r]): 1}, truncation)

    def degree_parts(self):
        out = {}
        for lam, c in self.terms.items():
            out.setdefault(lam.size, {})[lam] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, SymExpr):
            return NotImplemented
        a = self if self.basis == "p" else self.convert("p")
        b = other if other.basis == "p" else other.convert("p")
        return a.terms == b.terms

    def __add__(self, other):
        o = other.convert(self.basis) if other.basis != self.basis else other
        t = dict(self.terms)
        for lam, c in o.terms.items():
            t[lam] = t.get(lam, Fraction(0)) + c
        return SymExpr(self.basis, t, self.truncation)

    def __neg__(self):
        return SymExpr(self.basis, {k: -v for k, v in self.terms.items()},
                       self.truncation)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return SymExpr(self.basis, {k: v * c for k, v in self.terms.items()},
                       self.truncation)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a = self.convert("p")
        b = other.convert("p")
        t = {}
        for lam, c1 in a.terms.items():
            for mu, c2 in b.terms.items():
                if lam.size + mu.size > self.truncation:
                    raise TruncationError(
                        f"product degree {lam.size + mu.size} exceeds truncation")
                nu = Partition(tuple(lam) + tuple(mu))
                t[nu] = t.get(nu, Fraction(0)) + c1 * c2
        return SymExpr("p", t, self.truncation).convert(self.basis)

    __rmul__ = __mul__

    def convert(self, target):
        if target == self.basis:
            return self
        t = {}
        for lam, c in self.terms.items():
            for mu, c2 in _basis_change(self.basis, target, lam).items():
                t[mu] = t.get(mu, Fraction(0)) + c * c2
        return SymExpr(target, t, self.truncation)

    def expand(self, nvars):
        """Expansion as a polynomial dict {exponent tuple: coeff} in nvars variables."""
        out = {}
        for lam, c in self.terms.items():
            for mono, c2 in _expand_basis_elt(self.basis, lam, nvars).items():
                out[mono] = out.get(mono, Fraction(0)) + c * c2
        return {k: v for k, v in out.items() if v}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for lam in sorted(self.terms, key=lambda x: (x.size, x)):
            bits.append(f"{self.terms[lam]}*{self.basis}{lam}")
        return " + ".join(bits)


# -- transitions through the power-sum basis --------------------------------

@lru_cache(maxsize=None)
def _gen_to_p(basis, r):
    """e_r or xi_r in the p-basis, via the Newton recursions."""
    if r == 0:
        return ((Partition(), Fraction(1)),)
    sign = -1 if basis == "e" else 1
    acc = {}
    for i in range(1, r + 1):
        prev = dict(_gen_to_p(basis, r - i))
        s = Fraction(sign) ** (i - 1) if basis == "e" else Fraction(1)
        for lam, c in prev.items():
            nu = Partition((i,) + tuple(lam))
            acc[nu] = acc.get(nu, Fraction(0)) + s * c
    return tuple(
        (lam, c / r) for lam, c in acc.items() if c)


@lru_cache(maxsize=None)
def _schur_to_p(lam):
    """Schur function in the p-basis via Murnaghan-Nakayama characters."""
    lam = Partition(lam)
    n = lam.size
    out = {}
    for mu in partitions_of(n):
        chi = _mn_character(lam, mu)
        if chi:
            out[mu] = Fraction(chi, zee(mu))
    return tuple(out.items())


@lru_cache(maxsize=None)
def _mn_character(lam, mu):
    """Character value chi^lam(mu) by Murnaghan-Nakayama."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size == 0:
        return 1
    k = mu[0]
    rest = Partition(mu[1:])
    total = 0
    # remove a border strip of size k from lam
    cols = lam.conjugate()
    for (nu, height) in _border_strip_removals(lam, k):
        total += (-1) ** height * _mn_character(nu, rest)
    return total


def _border_strip_removals(lam, k):
    """All (partition after removal, strip height - 1) for border strips of size k."""
    out = []
    rows = list(lam)
    n = len(rows)
    for start in range(n):
        # strip occupying rows start..end
        for end in range(start, n):
            new_rows = rows[:]
            # border strip: new_rows[i] = rows[i+1] - 1 for i in [start, end), and
            # new_rows[end] adjusted so total removed is k and shape stays a partition
            size = 0
            ok = True
            for i in range(start, end):
                nv = rows[i + 1] - 1
                if nv < 0:
                    ok = False
                    break
                size += rows[i] - nv
                new_rows[i] = nv
            if not ok:
                continue
            rem = k - size
            nv = rows[end] - rem
            if rem <= 0 or nv < 0:
                continue
            new_rows[end] = nv
            # must remain weakly decreasing and connected as a strip
            if end + 1 < n and nv < rows[end + 1]:
                continue
            if start > 0 and new_rows[start] > rows[start - 1]:
                continue
            if list(new_rows) != sorted(new_rows, reverse=True):
                continue
            # connectivity: each row of the strip must overlap the next
            if any(new_rows[i] + 1 > rows[i] for i in range(start, end + 1)):
                continue
            out.append((Partition(new_rows), end - start))
    return out


def _p_products(lam, to_p_single):
    """Expand a product basis element b_lam = prod b_(lam_i) into the p-basis."""
    acc = {Partition(): Fraction(1)}
    for part in lam:
        single = dict(to_p_single(part))
        new = {}
        for mu1, c1 in acc.items():
            for mu2, c2 in single.items():
                nu = Partition(tuple(mu1) + tuple(mu2))
                new[nu] = new.get(nu, Fraction(0)) + c1 * c2
        acc = new
    return acc


@lru_cache(maxsize=None)
def _to_p(basis, lam):
    lam = Partition(lam)
    if basis == "p":
        return ((lam, Fraction(1)),)
    if basis in ("e", "xi"):
        return tuple(_p_products(lam, lambda r: _gen_to_p(basis, r)).items())
    if basis == "s":
        return _schur_to_p(lam)
    if basis == "m":
        return _m_to_p(lam)
    raise ValueError(basis)


@lru_cache(maxsize=None)
def _p_to_basis_matrix(target, n):
    """For degree n: matrix of p_lam expanded in the target basis, inverted."""
    lams = list(partitions_of(n))
    index = {lam: i for i, lam in enumerate(lams)}
    # expansion of target basis elements in p
    mat = []
    for lam in lams:
        row = [Fraction(0)] * len(lams)
        for mu, c in _to_p(target, lam):
            row[index[mu]] = c
        mat.append(row)
    inv = _invert_rational(mat)
    # inv[j][i]: coefficient of target_lam_i in p_lam_j expansion
    return lams, inv


def _invert_rational(mat):
    n = len(mat)
    aug = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [x / f for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                g = aug[r][col]
                aug[r] = [x - g * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def _basis_change(src, dst, lam):
    lam = Partition(lam)
    if src == dst:
        return {lam: Fraction(1)}
    if lam.size == 0:
        return {Partition(): Fraction(1)}
    if dst == "p":
        return dict(_to_p(src, lam))
    # route through p
    in_p = dict(_to_p(src, lam))
    out = {}
    by_degree = {}
    for mu, c in in_p.items():
        by_degree.setdefault(mu.size, {})[mu] = c
    for n, terms in by_degree.items():
        lams, inv = _p_to_basis_matrix(dst, n)
        index = {x: i for i, x in enumerate(lams)}
        for mu, c in terms.items():
            j = index[mu]
            for i, lam2 in enumerate(lams):
                if inv[j][i]:
                    out[lam2] = out.get(lam2, Fraction(0)) + c * inv[j][i]
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _m_to_p(lam):
    """Monomial basis through the (triangular) p -> m expansion, inverted per degree."""
    lam = Partition(lam)
    n = lam.size
    lams = list(partitions_of(n))
    index = {x: i for i, x in enumerate(lams)}
    k = max(n, 1)
    mat = []
    for mu in lams:
        expansion = _collect_monomials(_expand_basis_elt("p", mu, k), k)
        row = [Fraction(0)] * len(lams)
        for nu, c in expansion.items():
            row[index[nu]] = c
        mat.append(row)
    inv = _invert_rational(mat)
    j = index[lam]
    # column j of inv^T: m_lam = sum_i inv[i][j]-style; careful with orientation:
    # mat[i] = p_(lams[i]) in m-basis; we need m_lam in p-basis: row of mat^-1.
    out = {}
    for i, mu in enumerate(lams):
        # (mat^-1)[j][i] is the coefficient of p_(lams[i]) in m_lam
        if inv[j][i]:
            out[mu] = inv[j][i]
    return tuple(out.items())


def _collect_monomials(poly, nvars):
    """Collect an expanded symmetric polynomial into monomial-basis coefficients."""
    out = {}
    for mono, c in poly.items():
        lam = Partition(sorted((x for x in mono if x), reverse=True))
        key = tuple(sorted(mono, reverse=True))
        if tuple(lam) + (0,) * (nvars - len(lam)) == key:
            out[lam] = c
    return out


@lru_cache(maxsize=None)
def _expand_basis_elt(basis, lam, nvars):
    """Expand a basis element in nvars variables as {exponent tuple: coeff}."""
    lam = Partition(lam)
    if basis == "m":
        out = {}
        padded = tuple(lam) + (0,) * (nvars - len(lam))
        if len(padded) != nvars:
            raise TruncationError("more parts than variables")
        for perm in set(itertools.permutations(padded)):
            out[perm] = Fraction(1)
        return out
    if basis == "s":
        # through p
        out = {}
        for mu, c in _schur_to_p(lam):
            for mono, c2 in _expand_basis_elt("p", mu, nvars).items():
                out[mono] = out.get(mono, Fraction(0)) + c * c2
        return {k: v for k, v in out.items() if v}
    # product bases e, p, xi
    acc = {(0,) * nvars: Fraction(1)}
    for part in lam:
        single = _expand_generator(basis, part, nvars)
        new = {}
        for m1, c1 in acc.items():
            for m2, c2 in single.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                new[m] = new.get(m, Fraction(0)) + c1 * c2
        acc = new
    return acc


@lru_cache(maxsize=None)
def _expand_generator(basis, r, nvars):
    out = {}
    if basis == "p":
        for i in range(nvars):
            mono = [0] * nvars
            mono[i] = r
            out[tuple(mono)] = Fraction(1)
    elif basis == "e":
        for combo in itertools.combinations(range(nvars), r):
            mono = [0] * nvars
            for i in combo:
                mono[i] = 1
            out[tuple(mono)] = Fraction(1)
    elif basis == "xi":
        for combo in itertools.combinations_with_replacement(range(nvars), r):
            mono = [0] * nvars
            for i in combo:
                mono[i] += 1
            out[tuple(mono)] = Fraction(1)
    else:
        raise ValueError(basis)
    return out


def convert(x, target):
    """Equal element of the ring expressed in the target basis."""
    return x.convert(target)


def mul_truncated(a, b, N):
    """Product in the p-basis, deliberately dropping terms of degree > N."""
    ap = a.convert("p")
    bp = b.convert("p")
    t = {}
    for lam, c1 in ap.terms.items():
        for mu, c2 in bp.terms.items():
            if lam.size + mu.size > N:
                continue
            nu = Partition(tuple(lam) + tuple(mu))
            t[nu] = t.get(nu, Fraction(0)) + c1 * c2
    return SymExpr("p", t, a.truncation)


def exp_series_identity_check(N, truncation=DEFAULT_TRUNCATION):
    """Whether sum xi_r s^r = exp(sum p_r s^r / r) holds up to degree N.

    The formal variable s tracks the degree grading, so this is an identity
    of symmetric functions truncated past degree N.
    """
    if N > truncation:
        raise TruncationError("N exceeds configured truncation")
    # exp of x = sum p_r / r: accumulate powers x^k / k!
    x = SymExpr("p", {Partition([r]): Fraction(1, r) for r in range(1, N + 1)},
                truncation)
    total = SymExpr("p", {Partition(): 1}, truncation)
    power = SymExpr("p", {Partition(): 1}, truncation)
    fact = 1
    for k in range(1, N + 1):
        power = mul_truncated(power, x, N)
        fact *= k
        total = total + power.scale(Fraction(1, fact))
    lhs = SymExpr("p", {Partition(): 1}, truncation)
    for r in range(1, N + 1):
        lhs = lhs + SymExpr("xi", {Partition([r]): 1}, truncation).convert("p")
    return _truncate(lhs, N).terms == _truncate(total, N).terms


def _truncate(x, N):
    return SymExpr(x.basis, {k: v for k, v in x.terms.items() if k.size <= N},
                   x.truncation)


def hall_littlewood_p(lam, t, nvars=None):
    """Hall-Littlewood P_lambda at a concrete rational parameter t.

    Small-case oracle: Gram-Schmidt against dominance order in the monomial
    basis for the t-deformed inner product <p_lam, p_mu> = delta z_lam
    prod (1 - t^lam_i)^-1.
    """
    lam = Partition(lam)
    n = lam.size
    t = Fraction(t)
    lams = [mu for mu in partitions_of(n)]

    def dominates(a, b):
        # a >= b in dominance
        sa = sb = 0
        for i in range(max(len(a), len(b))):
            sa += a[i] if i < len(a) else 0
            sb += b[i] if i < len(b) else 0
            if sa < sb:
                return False
        return True

    def ip(x, y):
        out = Fraction(0)
        xp = x.convert("p")
        yp = y.convert("p")
        for mu, c in xp.terms.items():
            c2 = yp.terms.get(mu)
            if c2:
                w = Fraction(zee(mu))
                for part in mu:
                    w /= (1 - t ** part)
                out += c * c2 * w
        return out

    # build upward from the most-dominated partitions; P_lam only corrects
    # against strictly smaller ones
    order = [mu for mu in lams if dominates(lam, mu)]
    order.sort(key=lambda m: -n_stat(m))  # dominance-compatible total order
    built = {}
    for mu in order:
        x = SymExpr("m", {mu: 1}, max(n, DEFAULT_TRUNCATION))
        for nu in order:
            if nu == mu:
                break
            proj = ip(x, built[nu]) / ip(built[nu], built[nu])
            if proj:
                x = x - built[nu].scale(proj)
        built[mu] = x
    return built[lam]
