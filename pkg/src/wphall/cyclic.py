"""Hall algebra of nilpotent representations of a cyclic quiver over F_q.

Vertices are Z/pZ with arrows x_i : V_i -> V_(i-1).  Iso classes are cyclic
multisegments; the segment (i, l) is the indecomposable with top at vertex i.

Structure constants are computed two ways: a direct count of subrepresentations
(the definition, used as the oracle on small inputs) and an extension-counting
route that enumerates Ext^1(S, T) and normalizes by automorphism counts, which
is what products actually use.  Generic (Laurent) coefficients come from
evaluating counts at several field sizes and interpolating in q = v^2.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import BudgetError, VerificationError
from .gf import field, prime_powers
from .laurent import LaurentScalar, SpecializedScalar, n_factor, quantum_int, specialize
from .partitions import (Multisegment, Partition, aut_order, euler_form_cyclic,
                         hom_dim, multisegments_of_degree, partitions_of)

DEFAULT_BUDGET = 10 ** 6

GENERIC = "generic"


# ---------------------------------------------------------------------------
# concrete representations
# ---------------------------------------------------------------------------

class NilRep:
    """A concrete representation: dims per vertex and matrices x_i: V_i -> V_(i-1).

    maps[i] has shape (dims[(i-1) % p], dims[i]) acting on column vectors.
    """

    def __init__(self, p, dims, maps, F):
        self.p = p
        self.dims = tuple(dims)
        self.maps = maps
        self.F = F

    def is_nilpotent(self):
        total = sum(self.dims)
        for start in range(self.p):
            comp = _identity_like(self.F, self.dims[start])
            v = start
            for _ in range(total):
                comp = self.F.mat_mul(self.maps[v], comp) if comp else []
                v = (v - 1) % self.p
            if comp and any(any(row) for row in comp):
                return False
        return True


def _identity_like(F, n):
    return F.eye(n)


def build_model(m, F):
    """Concrete representation of the iso class m over the field F."""
    p = m.p
    segs = m.segments()
    dims = [0] * p
    slots = []  # per segment, list of (vertex, index-in-vertex)
    for (i, l) in segs:
        pos = []
        for t in range(l):
            v = (i - t) % p
            pos.append((v, dims[v]))
            dims[v] += 1
        slots.append(pos)
    maps = []
    for v in range(p):
        maps.append(F.zeros(dims[(v - 1) % p], dims[v]))
    for pos in slots:
        for t in range(len(pos) - 1):
            (v, a), (w, b) = pos[t], pos[t + 1]
            # x_v sends basis vector a at vertex v to vector b at vertex v-1
            maps[v][b][a] = 1
    return NilRep(p, dims, maps, F)


def classify(rep):
    """Iso class of a nilpotent representation, via ranks of composite maps."""
    if not rep.is_nilpotent():
        raise ValueError("representation is not nilpotent")
    p, F = rep.p, rep.F
    total = sum(rep.dims)
    # R[i][l] = rank of the composite of l arrows starting at vertex i
    R = {}
    for i in range(p):
        comp = F.eye(rep.dims[i])
        R[(i, 0)] = rep.dims[i]
        v = i
        for l in range(1, total + 2):
            comp = F.mat_mul(rep.maps[v], comp)
            v = (v - 1) % p
            R[(i, l)] = F.rank(comp)
    terms = {}
    for i in range(p):
        for l in range(1, total + 1):
            mult = (R[(i, l - 1)] - R[(i, l)]
                    - R.get(((i + 1) % p, l), 0) + R.get(((i + 1) % p, l + 1), 0))
            if mult < 0:
                raise VerificationError("negative multiplicity in classification")
            if mult:
                terms[(i, l)] = mult
    return Multisegment(p, terms)


# ---------------------------------------------------------------------------
# subspace enumeration (the oracle route)
# ---------------------------------------------------------------------------

def gaussian_binomial(n, k, q):
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspaces(F, n, k):
    """All k-dimensional subspaces of F^n as reduced-row-echelon bases."""
    if k == 0:
        yield []
        return
    for pivots in itertools.combinations(range(n), k):
        free_pos = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, n):
                if c not in pivots:
                    free_pos.append((r, c))
        for fill in itertools.product(F.elements(), repeat=len(free_pos)):
            B = F.zeros(k, n)
            for r, pc in enumerate(pivots):
                B[r][pc] = 1
            for (r, c), val in zip(free_pos, fill):
                B[r][c] = val
            yield B


def hall_number(S, T, U, q, budget=DEFAULT_BUDGET):
    """Number of subrepresentations of a model of U isomorphic to T with quotient S.

    This is the definition-level oracle; products use the extension route.
    """
    if S.p != T.p or T.p != U.p:
        raise ValueError("modulus mismatch")
    dU = U.degree()
    dS = S.degree()
    dT = T.degree()
    if tuple(a + b for a, b in zip(dS, dT)) != dU:
        return 0
    states = 1
    for n, k in zip(dU, dT):
        states *= gaussian_binomial(n, k, q)
    if states > budget:
        raise BudgetError(f"{states} subspace states exceed budget {budget}")
    F = field(q)
    model = build_model(U, F)
    p = U.p
    count = 0
    vertex_choices = [list(subspaces(F, dU[v], dT[v])) for v in range(p)]
    for combo in itertools.product(*vertex_choices):
        if not _is_subrep(model, combo):
            continue
        sub, quot = _sub_quotient(model, combo)
        if classify(sub) == T and classify(quot) == S:
            count += 1
    return count


def _is_subrep(model, bases):
    F = model.F
    p = model.p
    for v in range(p):
        B = bases[v]
        if not B:
            continue
        target = bases[(v - 1) % p]
        # rows of target span W_(v-1); x_v * (basis of W_v) must lie in that span
        for row in B:
            img = F.mat_vec(model.maps[v], row)
            if not _in_span(F, target, img):
                return False
    return True


def _in_span(F, basis_rows, v):
    if not any(v):
        return True
    if not basis_rows:
        return False
    M = [list(col) for col in zip(*basis_rows)]
    return F.solve(M, v) is not None


def _sub_quotient(model, bases):
    F = model.F
    p = model.p
    sub_dims = [len(bases[v]) for v in range(p)]
    quot_dims = [model.dims[v] - sub_dims[v] for v in range(p)]
    # complement coordinates: non-pivot columns of the RREF basis
    comps = []
    for v in range(p):
        pivots = [next(i for i, x in enumerate(row) if x) for row in bases[v]]
        comps.append([c for c in range(model.dims[v]) if c not in pivots])
    sub_maps = []
    quot_maps = []
    for v in range(p):
        w = (v - 1) % p
        sm = F.zeros(sub_dims[w], sub_dims[v])
        qm = F.zeros(quot_dims[w], quot_dims[v])
        # full change of basis at w: solve [B_w^T | C_w^T] y = img
        Bw = bases[w]
        Cw = comps[w]
        M = [[0] * (len(Bw) + len(Cw)) for _ in range(model.dims[w])]
        for j, row in enumerate(Bw):
            for i, x in enumerate(row):
                M[i][j] = x
        for j, c in enumerate(Cw):
            M[c][len(Bw) + j] = 1
        for a, row in enumerate(bases[v]):
            img = F.mat_vec(model.maps[v], row)
            y = F.solve(M, img)
            for b in range(sub_dims[w]):
                sm[b][a] = y[b]
        for a, c in enumerate(comps[v]):
            unit = [0] * model.dims[v]
            unit[c] = 1
            img = F.mat_vec(model.maps[v], unit)
            y = F.solve(M, img)
            for b in range(quot_dims[w]):
                qm[b][a] = y[len(Bw) + b]
        sub_maps.append(sm)
        quot_maps.append(qm)
    return (NilRep(p, sub_dims, sub_maps, F), NilRep(p, quot_dims, quot_maps, F))


def sequence_count(S, T, U, q, budget=DEFAULT_BUDGET):
    """|{exact sequences 0 -> T -> U -> S -> 0}| / (|Aut S| |Aut T|), literally.

    Enumerates pairs of morphism matrices; only sensible for tiny inputs.
    """
    F = field(q)
    mT = build_model(T, F)
    mU = build_model(U, F)
    mS = build_model(S, F)
    homTU = _hom_space(F, mT, mU)
    homUS = _hom_space(F, mU, mS)
    if (q ** len(homTU)) * (q ** len(homUS)) > budget:
        raise BudgetError("sequence enumeration exceeds budget")
    shapes_tu = [(mU.dims[v], mT.dims[v]) for v in range(mT.p)]
    shapes_us = [(mS.dims[v], mU.dims[v]) for v in range(mT.p)]
    count = 0
    for f in _span_elements(F, homTU, shapes_tu):
        if not _is_injective(F, mT, mU, f):
            continue
        for g in _span_elements(F, homUS, shapes_us):
            if _is_exact_pair(F, mT, mU, mS, f, g):
                count += 1
    auts = aut_order(S, q) * aut_order(T, q)
    assert count % auts == 0
    return count // auts


def _hom_space(F, mA, mB):
    """Basis of Hom(A, B) as tuples of matrices (one per vertex)."""
    p = mA.p
    shapes = [(mB.dims[v], mA.dims[v]) for v in range(p)]
    nvar = sum(r * c for r, c in shapes)
    if nvar == 0:
        return []
    rows = []
    # condition: y_v phi_v - phi_(v-1) x_v = 0 for all v
    for v in range(p):
        w = (v - 1) % p
        for i in range(mB.dims[w]):
            for j in range(mA.dims[v]):
                row = [0] * nvar
                # (y_v phi_v)[i][j] = sum_k y_v[i][k] phi_v[k][j]
                for k in range(mB.dims[v]):
                    row[_var_index(shapes, v, k, j)] = F.add(
                        row[_var_index(shapes, v, k, j)], mB.maps[v][i][k])
                # -(phi_w x_v)[i][j] = -sum_k phi_w[i][k] x_v[k][j]
                for k in range(mA.dims[w]):
                    idx = _var_index(shapes, w, i, k)
                    row[idx] = F.sub(row[idx], mA.maps[v][k][j])
                if any(row):
                    rows.append(row)
    basis = F.nullspace(rows) if rows else [F._unit(nvar, i) for i in range(nvar)]
    return [_unflatten(shapes, vec) for vec in basis]


def _var_index(shapes, v, i, j):
    off = sum(r * c for r, c in shapes[:v])
    return off + i * shapes[v][1] + j


def _unflatten(shapes, vec):
    out = []
    pos = 0
    for r, c in shapes:
        out.append([vec[pos + i * c: pos + (i + 1) * c] for i in range(r)])
        pos += r * c
    return out


def _span_elements(F, basis, shapes):
    zero = [[[0] * c for _ in range(r)] for r, c in shapes]
    if not basis:
        yield zero
        return
    p = len(shapes)
    for coeffs in itertools.product(F.elements(), repeat=len(basis)):
        out = [[row[:] for row in m] for m in zero]
        for c, mats in zip(coeffs, basis):
            if not c:
                continue
            for v in range(p):
                for i, row in enumerate(mats[v]):
                    for j, x in enumerate(row):
                        if x:
                            out[v][i][j] = F.add(out[v][i][j], F.mul(c, x))
        yield out


def _is_injective(F, mA, mB, f):
    for v in range(mA.p):
        if mA.dims[v] == 0:
            continue
        if F.rank(f[v]) < mA.dims[v]:
            return False
    return True


def _is_exact_pair(F, mT, mU, mS, f, g):
    # g surjective, g o f = 0, rank g = dim S, dim ker g = dim im f
    for v in range(mU.p):
        if mS.dims[v] and F.rank(g[v]) < mS.dims[v]:
            return False
        comp = F.mat_mul(g[v], f[v]) if f[v] and g[v] else []
        if comp and any(any(row) for row in comp):
            return False
        if mU.dims[v] - (F.rank(g[v]) if g[v] else 0) != (F.rank(f[v]) if f[v] else 0):
            return False
    return True


# ---------------------------------------------------------------------------
# extension counting (the product route)
# ---------------------------------------------------------------------------

def _vertical_strip_count(nu, lam, q):
    """Subspaces of the socle of M_nu whose quotient has type lam (modulus 1).

    The socle carries the flag N_j = ker x / im x^j with dim N_j = nu'_(j+1);
    a subspace with intersection profile e_j yields the quotient that drops
    e_(j-1) - e_j boxes from rows of length j.  Counting subspaces with a
    prescribed profile is a product of Gaussian binomials and q-powers.
    """
    nu, lam = Partition(nu), Partition(lam)
    if lam.size > nu.size:
        return 0
    b = nu.size - lam.size
    width = nu[0] if nu else 0
    nu_c = list(nu.conjugate())
    lam_c = list(lam.conjugate())
    while len(lam_c) < width + 2:
        lam_c.append(0)
    while len(nu_c) < width + 2:
        nu_c.append(0)
    r = [0] * (width + 2)
    for c in range(1, width + 1):
        r[c] = nu_c[c - 1] - lam_c[c - 1]
        if r[c] < 0 or r[c] > nu_c[c - 1] - nu_c[c]:
            return 0
    if sum(r) != b:
        return 0
    # e_j = sum of r_c over c > j; d_j = nu'_(j+1)
    count = 1
    e = [sum(r[c] for c in range(j + 1, width + 1)) for j in range(width + 1)]
    d = [nu_c[j] for j in range(width + 1)]  # d[j] = dim N_j = nu'_(j+1)
    for j in range(width):
        dj, dj1 = d[j], d[j + 1]
        ej, ej1 = e[j], e[j + 1]
        count *= q ** ((ej - ej1) * (dj1 - ej1)) * gaussian_binomial(
            dj - dj1, ej - ej1, q)
        if count == 0:
            return 0
    return count


def _is_semisimple_c1(m):
    return m.p == 1 and all(l == 1 for (_, l) in m.terms)


def _pairwise_terms_c1_fast(S, T, q):
    """Modulus-1 products where one factor is semisimple, via the strip count.

    Self-duality of finite modules over a discrete valuation ring swaps sub
    and quotient, so both orientations reduce to the socle-subspace count.
    """
    dU = S.total() + T.total()
    out = {}
    if _is_semisimple_c1(T):
        lam_q = S.to_partition()
        for nu in partitions_of(dU):
            n = _vertical_strip_count(nu, lam_q, q)
            if n:
                out[Multisegment.from_partition(nu)] = n
    else:
        lam_q = T.to_partition()
        for nu in partitions_of(dU):
            n = _vertical_strip_count(nu, lam_q, q)
            if n:
                out[Multisegment.from_partition(nu)] = n
    return out


def pairwise_terms(S, T, q, budget=DEFAULT_BUDGET):
    """{U: P^U_(S,T)(q)} by enumerating extension classes of S by T.

    P^U = |Ext^1(S,T)_U| |Aut U| / (|Hom(S,T)| |Aut S| |Aut T|).
    Modulus-1 pairs with a semisimple factor take a closed-form path instead.
    """
    if S.p != T.p:
        raise ValueError("modulus mismatch")
    p = S.p
    if p == 1 and (_is_semisimple_c1(S) or _is_semisimple_c1(T)):
        return _pairwise_terms_c1_fast(S, T, q)
    F = field(q)
    mS = build_model(S, F)
    mT = build_model(T, F)
    shapes_z = [(mT.dims[(v - 1) % p], mS.dims[v]) for v in range(p)]
    nz = sum(r * c for r, c in shapes_z)
    # coboundary map Phi: Hom-degree-0 -> cocycles, phi |-> y phi - phi x
    shapes_phi = [(mT.dims[v], mS.dims[v]) for v in range(p)]
    nphi = sum(r * c for r, c in shapes_phi)
    cols = []
    for col in range(nphi):
        phi = _unflatten(shapes_phi, [1 if i == col else 0 for i in range(nphi)])
        z = []
        for v in range(p):
            w = (v - 1) % p
            a = _mm(F, mT.maps[v], phi[v], mT.dims[w], mT.dims[v], mS.dims[v])
            b = _mm(F, phi[w], mS.maps[v], mT.dims[w], mS.dims[w], mS.dims[v])
            zv = [[F.sub(a[i][j], b[i][j]) for j in range(mS.dims[v])]
                  for i in range(mT.dims[w])]
            z.append(zv)
        cols.append(_flatten(z))
    M = [[cols[j][i] for j in range(nphi)] for i in range(nz)] if nphi else \
        [[] for _ in range(nz)]
    comp = F.image_complement(M) if nz else []
    dim_ext = len(comp)
    expected = hom_dim(S, T) - euler_form_cyclic(S.degree(), T.degree())
    if dim_ext != expected:
        raise VerificationError(
            f"Ext dimension {dim_ext} != Euler-form prediction {expected}")
    if q ** dim_ext > budget:
        raise BudgetError(f"{q ** dim_ext} extension classes exceed budget")
    counts = {}
    for coeffs in itertools.product(F.elements(), repeat=dim_ext):
        zvec = [0] * nz
        for c, base in zip(coeffs, comp):
            if c:
                zvec = [F.add(x, F.mul(c, y)) for x, y in zip(zvec, base)]
        z = _unflatten(shapes_z, zvec)
        U = _middle_term(F, mS, mT, z)
        cls = classify(U)
        counts[cls] = counts.get(cls, 0) + 1
    out = {}
    denom = (q ** hom_dim(S, T)) * aut_order(S, q) * aut_order(T, q)
    for cls, n in counts.items():
        val = Fraction(n * aut_order(cls, q), denom)
        if val.denominator != 1:
            raise VerificationError(f"non-integer Hall number for {cls}")
        out[cls] = int(val)
    return out


def _flatten(mats):
    out = []
    for m in mats:
        for row in m:
            out.extend(row)
    return out


def _mm(F, A, B, rows, inner, cols):
    """Shape-safe matrix product, tolerating zero dimensions."""
    if rows == 0 or cols == 0 or inner == 0:
        return F.zeros(rows, cols)
    return F.mat_mul(A, B)


def _middle_term(F, mS, mT, z):
    """Extension of S by T with cocycle z: U_v = T_v + S_v (block triangular)."""
    p = mS.p
    dims = [mT.dims[v] + mS.dims[v] for v in range(p)]
    maps = []
    for v in range(p):
        w = (v - 1) % p
        rows = dims[w]
        colsn = dims[v]
        m = F.zeros(rows, colsn)
        for i in range(mT.dims[w]):
            for j in range(mT.dims[v]):
                m[i][j] = mT.maps[v][i][j]
            for j in range(mS.dims[v]):
                m[i][mT.dims[v] + j] = z[v][i][j]
        for i in range(mS.dims[w]):
            for j in range(mS.dims[v]):
                m[mT.dims[w] + i][mT.dims[v] + j] = mS.maps[v][i][j]
        maps.append(m)
    return NilRep(p, dims, maps, F)


# ---------------------------------------------------------------------------
# generic structure constants via interpolation
# ---------------------------------------------------------------------------

_generic_cache = {}


def generic_terms(S, T, budget=DEFAULT_BUDGET):
    """{U: Hall polynomial in q as a list of Fraction coefficients, low degree first}.

    Counts are evaluated at the first D+2 prime powers, where
    D = max_U (dim Hom(T,U) - dim End(T)) bounds every Hall polynomial degree;
    the extra point is the consistency guard.
    """
    key = (S, T)
    if key in _generic_cache:
        return _generic_cache[key]
    dU = tuple(a + b for a, b in zip(S.degree(), T.degree()))
    candidates = multisegments_of_degree(S.p, dU)
    dim_end_t = hom_dim(T, T)
    degree_bound = {U: max(hom_dim(T, U) - dim_end_t, 0) for U in candidates}
    D = max(degree_bound.values(), default=0)
    samples = prime_powers(D + 2)
    values = {}
    for q in samples:
        for U, n in pairwise_terms(S, T, q, budget).items():
            values.setdefault(U, {})[q] = n
    out = {}
    for U, by_q in values.items():
        pts = [(q, by_q.get(q, 0)) for q in samples]
        poly = _lagrange(pts)
        if len(poly) - 1 > degree_bound[U]:
            raise VerificationError(
                f"Hall polynomial degree {len(poly) - 1} exceeds bound "
                f"{degree_bound[U]} for {U}")
        if any(c.denominator != 1 for c in poly):
            raise VerificationError(f"non-integer Hall polynomial for {U}")
        out[U] = [Fraction(c) for c in poly]
    _generic_cache[key] = out
    return out


def _lagrange(points):
    """Interpolating polynomial through (x, y) pairs; coefficients low-first."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        num = [Fraction(1)]
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = _poly_mul(num, [Fraction(-xj), Fraction(1)])
            den *= (xi - xj)
        for k, c in enumerate(num):
            coeffs[k] += Fraction(yi) * c / den
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_to_laurent(poly):
    """Polynomial in q, low-first, as a Laurent polynomial via q = v^2."""
    return LaurentScalar({2 * i: c for i, c in enumerate(poly)})


# ---------------------------------------------------------------------------
# Hall algebra elements
# ---------------------------------------------------------------------------

class HallElement:
    """Linear combination of multisegment classes.

    mode is either the string "generic" (LaurentScalar coefficients) or an
    integer field size (SpecializedScalar coefficients).
    """

    __slots__ = ("p", "mode", "terms")

    def __init__(self, p, mode, terms=None):
        tidy = {}
        if terms:
            for m, c in terms.items():
                if m.p != p:
                    raise ValueError("modulus mismatch")
                if c:
                    tidy[m] = c
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "terms", tidy)

    def __setattr__(self, name, value):
        raise AttributeError("HallElement is immutable")

    def _zero_scalar(self):
        if self.mode == GENERIC:
            return LaurentScalar.zero()
        return SpecializedScalar.zero(self.mode)

    def _one_scalar(self):
        if self.mode == GENERIC:
            return LaurentScalar.one()
        return SpecializedScalar.one(self.mode)

    def _v_power(self, k):
        if self.mode == GENERIC:
            return LaurentScalar.v_power(k)
        return SpecializedScalar.v_power(k, self.mode)

    @staticmethod
    def unit(p, mode):
        one = (LaurentScalar.one() if mode == GENERIC
               else SpecializedScalar.one(mode))
        return HallElement(p, mode, {Multisegment(p): one})

    @staticmethod
    def of_class(m, mode, coeff=None):
        e = HallElement(m.p, mode)
        coeff = coeff if coeff is not None else e._one_scalar()
        return HallElement(m.p, mode, {m: coeff})

    def __add__(self, other):
        self._compat(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return HallElement(self.p, self.mode, t)

    def __neg__(self):
        return HallElement(self.p, self.mode,
                           {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return HallElement(self.p, self.mode,
                           {m: co * c for m, co in self.terms.items()})

    def _compat(self, other):
        if not isinstance(other, HallElement) or other.p != self.p \
                or other.mode != self.mode:
            raise ValueError("incompatible Hall elements")

    def __eq__(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        return (self.p, self.mode, self.terms) == (other.p, other.mode, other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __mul__(self, other):
        self._compat(other)
        out = {}
        for mS, cS in self.terms.items():
            for mT, cT in other.terms.items():
                coeff = cS * cT
                twist = euler_form_cyclic(mS.degree(), mT.degree())
                if self.mode == GENERIC:
                    for U, poly in generic_terms(mS, mT).items():
                        add = coeff * poly_to_laurent(poly) * LaurentScalar.v_power(twist)
                        out[U] = out[U] + add if U in out else add
                else:
                    q = self.mode
                    for U, n in pairwise_terms(mS, mT, q).items():
                        add = coeff * SpecializedScalar.v_power(twist, q) * n
                        out[U] = out[U] + add if U in out else add
        return HallElement(self.p, self.mode, out)

    def commutator(self, other):
        return self * other - other * self

    def specialize_at(self, q):
        if self.mode != GENERIC:
            raise ValueError("already specialized")
        return HallElement(self.p, q,
                           {m: specialize(c, q) for m, c in self.terms.items()})

    def degrees(self):
        return {m.degree() for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda x: tuple(x.terms.items())):
            bits.append(f"({self.terms[m]})[{m}]")
        return " + ".join(bits)


# -- distinguished elements --------------------------------------------------

def element_e(r, p=1, mode=GENERIC):
    """v^(r(r-1)) times the class of the r-dimensional semisimple at vertex 0."""
    cls = Multisegment(p, [((0, 1), r)]) if r else Multisegment(p)
    coeff = LaurentScalar.v_power(r * (r - 1))
    if mode != GENERIC:
        coeff = specialize(coeff, mode)
    return HallElement.of_class(cls, mode, coeff)


def element_f_lambda(lam, p, mode=GENERIC):
    """The single class containing one segment [0; p*part) per part."""
    m = Multisegment.from_partition(lam, p)
    return HallElement.of_class(m, mode)


def element_t_tilde(r, p, mode=GENERIC):
    """Sum over |lam| = r of n_factor(l(lam)-1) f_lam (the power-sum image)."""
    terms = {}
    for lam in partitions_of(r):
        coeff = n_factor(lam.length - 1)
        if mode != GENERIC:
            coeff = specialize(coeff, mode)
        terms[Multisegment.from_partition(lam, p)] = coeff
    return HallElement(p, mode, terms)


def element_h(r, p, mode=GENERIC):
    """The quantum-power-sum element: ([r]/r) * element_t_tilde(r)."""
    factor = quantum_int(r) * Fraction(1, r)
    if mode != GENERIC:
        factor = specialize(factor, mode)
    return element_t_tilde(r, p, mode).scale(factor)


def element_s1r(r, p, mode=GENERIC, vertex=1):
    """Bracket of the simple at the given vertex with the power-sum element."""
    s1 = HallElement.of_class(Multisegment(p, [((vertex % p, 1), 1)]), mode)
    if r == 0:
        return s1
    return s1.commutator(element_t_tilde(r, p, mode))


def upsilon(x, p=1, mode=GENERIC):
    """Algebra map from symmetric functions: e_r to element_e(r), multiplicatively."""
    xe = x.convert("e")
    out = HallElement(p, mode)
    for lam, c in xe.terms.items():
        term = HallElement.unit(p, mode)
        for part in lam:
            term = term * element_e(part, p, mode)
        coeff = LaurentScalar.const(c)
        if mode != GENERIC:
            coeff = SpecializedScalar(c, 0, mode)
        out = out + term.scale(coeff)
    return out


def psi(x, p):
    """Basis map H_1 -> H_p sending the class of lam to f_lam."""
    if x.p != 1:
        raise ValueError("psi expects modulus 1")
    terms = {}
    for m, c in x.terms.items():
        lam = m.to_partition()
        terms[Multisegment.from_partition(lam, p)] = c
    return HallElement(p, x.mode, terms)


# ---------------------------------------------------------------------------
# box-adding coefficients and their identities
# ---------------------------------------------------------------------------

def p_box(nu, lam):
    """Line-count coefficient for removing a box from nu to reach lam.

    For the box in a row of full length i in nu, this is
    (v^(2 a) - v^(2 b))/(v^2 - 1) with a = #rows of nu of length >= i,
    b = #rows of length > i: a polynomial with nonnegative coefficients.
    """
    nu, lam = Partition(nu), Partition(lam)
    if nu.size != lam.size + 1:
        raise ValueError("nu must be lam plus one box")
    i = None
    for mu, row_len in lam.add_box_results():
        if mu == nu:
            i = row_len
            break
    if i is None:
        raise ValueError("nu does not contain lam")
    a = nu.length_ge(i)
    b = nu.length_gt(i)
    return LaurentScalar({2 * m: 1 for m in range(b, a)})


def p_box_sum_rule(nu):
    """Sum over removable boxes: (v^(2 l(nu)) - 1)/(v^2 - 1)."""
    return LaurentScalar({2 * m: 1 for m in range(Partition(nu).length)})


def lemma_a1_rhs(r, mode=GENERIC):
    """sum over |lam| = r of n(l(lam)-1) sum over nu = lam + box of p(nu,lam) [nu]."""
    terms = {}
    for lam in partitions_of(r):
        nf = n_factor(lam.length - 1)
        for nu, _ in lam.add_box_results():
            coeff = nf * p_box(nu, lam)
            cls = Multisegment(1, [((0, part), 1) for part in nu])
            if mode != GENERIC:
                coeff = specialize(coeff, mode)
            terms[cls] = terms[cls] + coeff if cls in terms else coeff
    return HallElement(1, mode, terms)


# ---------------------------------------------------------------------------
# absolutely indecomposable counts (all representations, not only nilpotent)
# ---------------------------------------------------------------------------

def _cycle_product(F, mats, dims, start):
    """Composite of all p arrows starting at `start` (a dims[start]-square matrix)."""
    p = len(dims)
    comp = F.eye(dims[start])
    v = start
    for _ in range(p):
        comp = F.mat_mul(mats[v], comp)
        v = (v - 1) % p
    return comp


def _mat_pow_zero(F, M, n):
    A = M
    for _ in range(n):
        if not any(any(row) for row in A):
            return True
        A = F.mat_mul(A, M)
    return not any(any(row) for row in A)


def _is_abs_indec(F, mats, dims, p):
    """Absolutely indecomposable test via the Fitting decomposition of the cycle."""
    n0 = dims[0] if p else 0
    total = sum(dims)
    if total == 0:
        return False
    phi = _cycle_product(F, mats, dims, 0) if dims[0] else []
    # nilpotent iff all cycle composites are nilpotent
    nilpotent = all(
        _mat_pow_zero(F, _cycle_product(F, mats, dims, s), total)
        for s in range(p) if dims[s])
    if nilpotent:
        rep = NilRep(p, dims, mats, F)
        cls = classify(rep)
        return sum(cls.terms.values()) == 1
    # invertible part present; absolutely indecomposable needs pure invertible
    if len(set(dims)) != 1:
        return False
    for v in range(p):
        if F.rank(mats[v]) < dims[v]:
            return False
    # phi must be a single Jordan block with eigenvalue in F_q^*
    m = dims[0]
    for c in F.units():
        shifted = [[F.sub(phi[i][j], c if i == j else 0) for j in range(m)]
                   for i in range(m)]
        if F.rank(shifted) == m - 1 and _mat_pow_zero(F, shifted, m):
            return True
    return False


def abs_indec_count(p, alpha, q, budget=DEFAULT_BUDGET):
    """Number of iso classes of absolutely indecomposable representations.

    Exhaustive over all matrix tuples, weighting each hit by |Aut|/|G| so that
    classes are counted once.  All representations of the path algebra count,
    not only nilpotent ones.
    """
    alpha = tuple(alpha)
    if len(alpha) != p:
        raise ValueError("dimension vector length must equal p")
    F = field(q)
    space = sum(alpha[v] * alpha[(v - 1) % p] for v in range(p))
    if q ** space > budget:
        return _abs_indec_count_canonical(p, alpha, q)
    shapes = [(alpha[(v - 1) % p], alpha[v]) for v in range(p)]
    total = Fraction(0)
    for flat in itertools.product(F.elements(), repeat=space):
        mats = _unflatten(shapes, list(flat))
        if _is_abs_indec(F, mats, alpha, p):
            total += Fraction(_aut_count_concrete(F, mats, alpha, p))
    g_order = 1
    for d in alpha:
        for i in range(d):
            g_order *= q ** d - q ** i
    val = total / g_order
    assert val.denominator == 1
    return int(val)


def _aut_count_concrete(F, mats, dims, p):
    """|Aut| of an absolutely indecomposable rep: (q-1) q^(dim End - 1)."""
    rep = NilRep(p, dims, mats, F)
    basis = _hom_space(F, rep, rep)
    return (F.q - 1) * F.q ** (len(basis) - 1)


def _abs_indec_count_canonical(p, alpha, q):
    """Fallback for C_1 at sizes where raw matrix enumeration is infeasible.

    A matrix class is a multiset of (monic irreducible, partition) pairs;
    indecomposable classes are single pairs with a one-part partition, and
    such a class stays indecomposable over every extension field exactly when
    the polynomial has degree one.  Enumerate the single-pair data.
    """
    if p != 1:
        raise BudgetError("raw enumeration exceeds budget")
    n = alpha[0]
    F = field(q)
    count = 0
    for d in range(1, n + 1):
        if n % d:
            continue
        for tail in itertools.product(F.elements(), repeat=d):
            if not _monic_irreducible(F, list(tail)):
                continue
            if d == 1:  # Jordan block J_(n)(c) splits over no extension
                count += 1
    return count


def _monic_irreducible(F, tail):
    d = len(tail)
    poly = tail + [1]
    if d == 1:
        return True
    # trial division by monic polynomials of degree <= d/2
    for e in range(1, d // 2 + 1):
        for div_tail in itertools.product(F.elements(), repeat=e):
            div = list(div_tail) + [1]
            if _poly_rem_zero(F, poly, div):
                return False
    return True


def _poly_rem_zero(F, a, b):
    a = a[:]
    da, db = len(a) - 1, len(b) - 1
    while da >= db:
        c = a[da]
        if c:
            for i in range(db + 1):
                a[da - db + i] = F.sub(a[da - db + i], F.mul(c, b[i]))
        da -= 1
        while da >= 0 and not a[da]:
            da -= 1
    return da < 0


def cartan_norm(p, alpha):
    """(alpha, alpha) for the cyclic quiver: symmetrized Euler form."""
    alpha = tuple(alpha)
    return 2 * euler_form_cyclic(alpha, alpha)


def kac_leading_term_check(p, alpha, qs=(2, 3, 4), budget=DEFAULT_BUDGET):
    """Fit counts at the given field sizes; check the predicted leading term.

    The counts must fit a polynomial of degree 1 - (alpha,alpha)/2 with
    leading coefficient 1.
    """
    counts = [(q, abs_indec_count(p, alpha, q, budget)) for q in qs]
    poly = _lagrange(counts)
    norm = cartan_norm(p, alpha)
    expected_deg = 1 - norm // 2
    actual_deg = len(poly) - 1
    if actual_deg != expected_deg:
        return False, poly
    return poly[-1] == 1, poly
