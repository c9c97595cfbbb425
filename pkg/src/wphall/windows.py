"""Finite graded windows of sheaves, for cokernel computation and classification.

A sheaf is represented by its section-module pieces in the twist window
{k c + sum t_s x_s : 0 <= k <= D} together with the multiplication maps by
the generators x_s.  Cokernels are computed degreewise; classes are read off
from ranks of multiplication maps in the stable part of the window, which is
valid once the window is long enough (checked by a stabilization assertion).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import VerificationError
from .partitions import Multisegment, Partition, segment_hom_dim
from .wpl import LVec, SElement, graded_basis, graded_dim


def window_degrees(w, D, k_min=0):
    out = []
    for k in range(k_min, D + 1):
        for t in itertools.product(*[range(ps) for ps in w.p]):
            out.append((k, t))
    return out


def _deg_add_gen(w, key, s):
    """Window key of degree key + x_s, or None if it leaves the window."""
    k, t = key
    t = list(t)
    t[s] += 1
    if t[s] == w.p[s]:
        t[s] = 0
        k += 1
    return (k, tuple(t))


class Window:
    """dims: {key: n}; maps[s]: {key: matrix to the key + x_s piece}."""

    def __init__(self, w, D, dims, maps, k_min=0):
        self.w = w
        self.D = D
        self.k_min = k_min
        self.dims = dims
        self.maps = maps

    def dim(self, key):
        return self.dims.get(key, 0)

    def map_out(self, s, key):
        return self.maps[s].get(key)


def free_window(w, D, twist, k_min=0):
    """Window of the line bundle with the given twist."""
    dims = {}
    maps = [dict() for _ in range(w.n)]
    F = w.F
    for key in window_degrees(w, D, k_min):
        k, t = key
        deg = LVec(w.p, k, t) + twist
        dims[key] = graded_dim(w, deg)
    for key in window_degrees(w, D, k_min):
        k, t = key
        deg = LVec(w.p, k, t) + twist
        for s in range(w.n):
            nk = _deg_add_gen(w, key, s)
            if nk[0] > D:
                continue
            maps[s][key] = _mul_gen_matrix(w, deg, s)
    return Window(w, D, dims, maps, k_min)


def _mul_gen_matrix(w, deg, s):
    """Matrix of multiplication by x_s from S[deg] to S[deg + x_s]."""
    F = w.F
    src = graded_dim(w, deg)
    tgt_deg = deg + LVec.unit(w.p, s)
    tgt = graded_dim(w, tgt_deg)
    M = F.zeros(tgt, src)
    if src == 0 or tgt == 0:
        return M
    carry = (deg.t[s] + 1) == w.p[s]
    if not carry:
        for j in range(src):
            M[j][j] = 1
        return M
    lam = w.lam[s]
    for j in range(src):
        if lam is None:       # times T
            M[j][j] = 1
        elif lam == 0:        # times U
            M[j + 1][j] = 1
        else:                 # times U - lam T
            M[j + 1][j] = F.add(M[j + 1][j], 1)
            M[j][j] = F.sub(M[j][j], lam)
    return M


def direct_sum(windows):
    w = windows[0].w
    D = windows[0].D
    k_min = max(win.k_min for win in windows)
    dims = {}
    maps = [dict() for _ in range(w.n)]
    keys = window_degrees(w, D, k_min)
    for key in keys:
        dims[key] = sum(win.dim(key) for win in windows)
    for s in range(w.n):
        for key in keys:
            nk = _deg_add_gen(w, key, s)
            if nk[0] > D:
                continue
            blocks = [win.map_out(s, key) for win in windows]
            if any(b is None for b in blocks):
                continue
            shapes = [(win.dim(nk), win.dim(key)) for win in windows]
            maps[s][key] = _block_diag(w.F, blocks, shapes)
    return Window(w, D, dims, maps, k_min)


def _block_diag(F, blocks, shapes):
    rows = sum(r for r, _ in shapes)
    cols = sum(c for _, c in shapes)
    M = F.zeros(rows, cols)
    ro = co = 0
    for b, (r, c) in zip(blocks, shapes):
        for i in range(r):
            for j in range(c):
                M[ro + i][co + j] = b[i][j]
        ro += r
        co += c
    return M


def map_from_sections(w, D, src_twists, tgt_twists, matrix_sections, cache=None,
                      k_min=0):
    """Windows and degreewise matrices for a map between sums of line bundles.

    matrix_sections[i][j] is an SElement of degree src_twists[j] - tgt_twists[i]
    (or None for zero); the map sends the j-th summand to the i-th by
    multiplication.  Returns (src_window, tgt_window, {key: matrix}).  The
    optional cache object (anything with a _window_cache dict) memoizes the
    free-sum windows, which products reuse heavily.
    """
    F = w.F

    def sum_window(twists):
        if not twists:
            return Window(w, D, {k: 0 for k in window_degrees(w, D, k_min)},
                          [dict() for _ in range(w.n)], k_min)
        store = getattr(cache, "_window_cache", None) if cache is not None else None
        if store is None:
            return direct_sum([free_window(w, D, u, k_min) for u in twists])
        key = (D, k_min, tuple((u.k, u.t) for u in twists))
        if key not in store:
            store[key] = direct_sum([free_window(w, D, u, k_min) for u in twists])
        return store[key]

    src = sum_window(src_twists)
    tgt = sum_window(tgt_twists)
    mats = {}
    for key in window_degrees(w, D, k_min):
        k, t = key
        ldeg = LVec(w.p, k, t)
        rows = tgt.dim(key)
        cols = src.dim(key)
        M = F.zeros(rows, cols)
        co = 0
        for j, uj in enumerate(src_twists):
            cdim = graded_dim(w, ldeg + uj)
            ro = 0
            for i, vi in enumerate(tgt_twists):
                rdim = graded_dim(w, ldeg + vi)
                sec = matrix_sections[i][j]
                if sec is not None and not sec.is_zero() and cdim and rdim:
                    B = _mul_elt_matrix(w, ldeg + uj, sec)
                    for a in range(rdim):
                        for b in range(cdim):
                            M[ro + a][co + b] = B[a][b]
                ro += rdim
            co += cdim
        mats[key] = M
    return src, tgt, mats


def _mul_elt_matrix(w, deg, sec):
    """Matrix of multiplication by the section sec from S[deg] to S[deg + sec.deg]."""
    F = w.F
    src = graded_dim(w, deg)
    tgt = graded_dim(w, deg + sec.deg)
    M = F.zeros(tgt, src)
    for b in range(src):
        unit = SElement(w, deg, [1 if i == b else 0 for i in range(src)])
        img = unit * sec
        for a, val in enumerate(img.coeffs):
            M[a][b] = val
    return M


def quotient_window(tgt, mats):
    """Degreewise cokernel of a window map, with induced generator maps.

    Returns (window, projections) where projections[key] maps target
    coordinates to quotient coordinates.
    """
    w = tgt.w
    F = w.F
    D = tgt.D
    k_min = tgt.k_min
    dims = {}
    projs = {}
    lifts = {}
    for key in window_degrees(w, D, k_min):
        M = mats.get(key)
        rows = tgt.dim(key)
        if M is None:
            M = F.zeros(rows, 0)
        comp = F.image_complement(M) if rows else []
        # comp: unit vectors at complement coordinates
        coords = [next(i for i, x in enumerate(v) if x) for v in comp]
        dims[key] = len(coords)
        lifts[key] = coords
        # projection: solve [im | units_C] decomposition
        projs[key] = _projection_matrix(F, M, coords, rows)
    qmaps = [dict() for _ in range(w.n)]
    for s in range(w.n):
        for key in window_degrees(w, D, k_min):
            nk = _deg_add_gen(w, key, s)
            if nk[0] > D:
                continue
            big = tgt.map_out(s, key)
            if big is None:
                continue
            rows = dims[nk]
            cols = dims[key]
            M = F.zeros(rows, cols)
            for b, coord in enumerate(lifts[key]):
                col = [big[i][coord] for i in range(tgt.dim(nk))]
                pr = F.mat_vec(projs[nk], col) if tgt.dim(nk) else []
                for a in range(rows):
                    M[a][b] = pr[a] if pr else 0
            qmaps[s][key] = M
    return Window(w, D, dims, qmaps, k_min), projs


def _projection_matrix(F, M, coords, rows):
    """Matrix sending v in F^rows to quotient coordinates along im(M)."""
    if rows == 0:
        return []
    cols = len(M[0]) if M else 0
    # build the solve matrix A = [M | unit_C]; columns of M span the image
    # (possibly redundantly) and the complement units make A full row rank
    A = [[M[i][j] for j in range(cols)] + [1 if i == c else 0 for c in coords]
         for i in range(rows)]
    # proj(v) = last-len(coords) coordinates of any solution of A y = v
    R, pivots = F.rref(_augment_identity(F, A, rows))
    # R gives solutions for all unit vectors at once: columns cols+len(coords)..
    k = cols + len(coords)
    P = F.zeros(len(coords), rows)
    for unit in range(rows):
        rhs = [R[r][k + unit] for r in range(len(R))]
        # back-substitute: x[pivot_col] = rhs entries (R is rref of [A | I])
        x = [0] * k
        for r, pc in enumerate(pivots):
            if pc < k:
                x[pc] = rhs[r]
        for a in range(len(coords)):
            P[a][unit] = x[cols + a]
    return P


def _augment_identity(F, A, rows):
    out = []
    for i in range(rows):
        out.append(A[i][:] + [1 if j == i else 0 for j in range(rows)])
    return out


# ---------------------------------------------------------------------------
# multiplication by ring elements inside a window
# ---------------------------------------------------------------------------

def window_mult_matrix(win, key, sec_deg_steps):
    """Composite of generator maps along a monomial path from key.

    sec_deg_steps is a list of generator indices; returns (matrix, end key)
    or (None, None) if the path leaves the window.
    """
    w = win.w
    F = w.F
    cols = win.dim(key)
    cur = F.eye(cols)
    ck = key
    for s in sec_deg_steps:
        m = win.map_out(s, ck)
        if m is None:
            return None, None
        ck = _deg_add_gen(w, ck, s)
        cur = _safe_mm(F, m, cur, win.dim(ck), cols)
    return cur, ck


def _safe_mm(F, A, B, rows, cols):
    if rows == 0 or cols == 0:
        return [[0] * cols for _ in range(rows)]
    if not A or not B or not A[0] or not B[0]:
        return F.zeros(rows, cols)
    return F.mat_mul(A, B)


def window_mult_element(win, key, sec):
    """Matrix of multiplication by a homogeneous ring element from key.

    The element is expanded as a polynomial in the generators; the matrix is
    the corresponding combination of generator-map composites.
    """
    w = win.w
    F = w.F
    d = sec.deg
    end = LVec(w.p, key[0], key[1]) + d
    endkey = (end.k, end.t)
    if end.k > win.D or end.k < 0:
        return None, None
    total = F.zeros(win.dim(endkey), win.dim(key))
    for j, c in enumerate(sec.coeffs):
        if not c:
            continue
        steps = []
        for s in range(w.n):
            steps.extend([s] * d.t[s])
        steps.extend([0] * (w.p[0] * (d.k - j)))
        steps.extend([1] * (w.p[1] * j))
        M, endk = window_mult_matrix(win, key, steps)
        if M is None:
            return None, None
        if endk != endkey:
            raise VerificationError("monomial paths disagree on the end degree")
        for a in range(len(M)):
            row = M[a]
            for b in range(len(row)):
                if row[b]:
                    total[a][b] = F.add(total[a][b], F.mul(c, row[b]))
    return total, endkey


# ---------------------------------------------------------------------------
# classification of window modules
# ---------------------------------------------------------------------------

def classify_torsion_window(win, points, base_k, L):
    """Per-point torsion content of a window module in its stable range.

    points: candidate closed points covering the support.  base_k: first
    stable level; L: bound on the torsion degree in delta units.
    Returns {point_key: Multisegment or Partition}.
    """
    w = win.w
    out = {}
    for pt in points:
        if pt.kind == "exceptional":
            m = _exceptional_content(win, pt, base_k, L * w.p[pt.branch])
            if m:
                out[pt.key()] = m
        else:
            max_power = L // pt.residue_degree()
            if max_power == 0:
                continue
            lam = _ordinary_content(win, pt, base_k, max_power)
            if lam:
                out[pt.key()] = lam
    return out


def _primary_kernel(win, pt, key, power):
    """Basis of the subspace of win[key] killed by pt's prime to the given power."""
    w = win.w
    F = w.F
    n = win.dim(key)
    if n == 0:
        return []
    sec = pt.prime_element()
    cur = F.eye(n)
    ck = key
    for _ in range(power):
        M, nk = window_mult_element(win, ck, sec)
        if M is None:
            raise VerificationError("window too short for primary kernel")
        cur = _safe_mm(F, M, cur, len(M), n)
        ck = nk
    if not cur or not cur[0] or not any(any(r) for r in cur):
        return F.eye(n)
    return F.nullspace(cur)


def _exceptional_content(win, pt, base_k, max_len):
    """Multisegment of the primary part at an exceptional point.

    Vertex i of the cyclic quiver sits at window degrees with t_s = -i mod p_s;
    multiplication by x_s realizes the arrows.  Multiplicities come from ranks
    of composites restricted to the primary subspace.
    """
    w = win.w
    F = w.F
    s = pt.branch
    ps = w.p[s]
    power = max_len + 1

    def start_key(residue):
        t = [0] * w.n
        t[s] = residue % ps
        return (base_k, tuple(t))

    # R[(i, l)] = rank of l-fold x_s on the primary part at vertex i
    R = {}
    prim = {}
    for i in range(ps):
        res = (-i) % ps
        key = start_key(res)
        basis = _primary_kernel(win, pt, key, power)
        prim[i] = (key, basis)
    for i in range(ps):
        key, basis = prim[i]
        if not basis:
            for l in range(0, max_len + 2):
                R[(i, l)] = 0
            continue
        mat = [list(col) for col in zip(*basis)]  # columns = primary basis
        cur = mat
        ck = key
        ncols = len(basis)
        R[(i, 0)] = F.rank(cur)
        for l in range(1, max_len + 2):
            step = win.map_out(s, ck)
            if step is None:
                raise VerificationError("window too short for classification")
            ck = _deg_add_gen(w, ck, s)
            cur = _safe_mm(F, step, cur, win.dim(ck), ncols)
            R[(i, l)] = F.rank(cur)
    terms = {}
    for i in range(ps):
        for l in range(1, max_len + 1):
            mult = (R[(i, l - 1)] - R[(i, l)]
                    - R[((i + 1) % ps, l)] + R[((i + 1) % ps, l + 1)])
            if mult < 0:
                raise VerificationError("negative segment multiplicity")
            if mult:
                terms[(i, l)] = mult
    if not terms:
        return None
    return Multisegment(ps, terms)


def _ordinary_content(win, pt, base_k, max_len):
    """Partition of the primary part at an ordinary point (residue degree d)."""
    w = win.w
    F = w.F
    d = pt.residue_degree()
    key = (base_k, tuple([0] * w.n))
    prev = 0
    col_heights = []
    for j in range(1, max_len + 1):
        basis = _primary_kernel(win, pt, key, j)
        a_j = len(basis)
        jump = a_j - prev
        if jump == 0:
            break
        if jump % d:
            raise VerificationError("ordinary primary part not defined over "
                                    "the residue field")
        col_heights.append(jump // d)
        prev = a_j
    if not col_heights:
        return None
    if col_heights != sorted(col_heights, reverse=True):
        raise VerificationError("kernel jumps not monotone")
    return Partition(col_heights).conjugate()


def identify_line_twist(win, torsion_dims, base_k):
    """Twist of the line-bundle part of a rank-one window.

    torsion_dims: {key: dim of the torsion part at key} in the stable range.
    """
    w = win.w
    zero_t = tuple([0] * w.n)
    base = win.dim((base_k, zero_t)) - torsion_dims.get((base_k, zero_t), 0)
    kz = base - base_k - 1
    t = []
    for s in range(w.n):
        ts = 0
        for m in range(1, w.p[s]):
            tt = [0] * w.n
            tt[s] = m
            key = (base_k, tuple(tt))
            val = win.dim(key) - torsion_dims.get(key, 0)
            if val > base:
                ts = w.p[s] - m
                break
        t.append(ts)
    return LVec(w.p, kz, t)
