"""Root-system combinatorics for the star diagram and its loop extension.

The lattice is Z^Gamma + Z delta in the same basis KTheory uses, so classes
of sheaves and roots live in one coordinate system.  Finite and affine star
diagrams are supported; wild ones are rejected.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import ValidationError
from .wpl import KClass, KTheory, LVec, WeightData, classify_weights, omega


class StarDiagram:
    """Star-shaped Dynkin diagram with branch lengths p_s - 1 and center node."""

    def __init__(self, p):
        self.p = tuple(p)
        self.nodes = ["star"]
        for s in range(len(p)):
            for i in range(1, p[s]):
                self.nodes.append((s, i))
        self.index = {nd: i for i, nd in enumerate(self.nodes)}
        self.rank = len(self.nodes)
        self.cartan = self._build_cartan()

    def _build_cartan(self):
        A = [[0] * self.rank for _ in range(self.rank)]
        for i in range(self.rank):
            A[i][i] = 2
        for s in range(len(self.p)):
            prev = "star"
            for i in range(1, self.p[s]):
                a, b = self.index[prev], self.index[(s, i)]
                A[a][b] = A[b][a] = -1
                prev = (s, i)
        return A

    def pairing(self, x, y):
        return sum(xi * sum(a * yj for a, yj in zip(row, y))
                   for xi, row in zip(x, self.cartan))

    def classification(self):
        """finite / affine / wild via the determinant-free genus criterion."""
        # genus of the matching weight data decides; use a big enough field
        q = 2
        while q + 1 < len(self.p) + 1:
            q += 1
        from .gf import factor_prime_power
        while True:
            try:
                factor_prime_power(q)
                break
            except ValueError:
                q += 1
        return classify_weights(WeightData(self.p, q))


class RootDatum:
    """Roots of the diagram plus the imaginary direction bookkeeping."""

    def __init__(self, diagram):
        self.diagram = diagram
        self.kind = diagram.classification()
        if self.kind == "wild":
            raise ValidationError("wild diagrams are not supported")
        self.finite_roots = None
        self.delta0 = None
        if self.kind == "finite":
            self.finite_roots = self._reflection_closure()
        else:
            self.delta0 = self._radical_vector()

    def _reflection_closure(self):
        d = self.diagram
        simples = [tuple(1 if j == i else 0 for j in range(d.rank))
                   for i in range(d.rank)]
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for beta in frontier:
                for i in range(d.rank):
                    # reflect in the i-th simple root
                    coeff = sum(d.cartan[i][j] * beta[j] for j in range(d.rank))
                    img = list(beta)
                    img[i] -= coeff
                    img = tuple(img)
                    if img not in roots:
                        roots.add(img)
                        new.append(img)
            frontier = new
        return roots

    def _radical_vector(self):
        d = self.diagram
        # primitive positive integer vector in the kernel of the Cartan matrix
        from math import gcd
        rows = [[Fraction(x) for x in row] for row in d.cartan]
        n = d.rank
        # fraction-free elimination
        pivots = []
        r = 0
        for c in range(n):
            pr = next((i for i in range(r, n) if rows[i][c]), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            rows[r] = [x / rows[r][c] for x in rows[r]]
            for i in range(n):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        free = [c for c in range(n) if c not in pivots]
        if len(free) != 1:
            raise ValidationError("diagram is not affine")
        v = [Fraction(0)] * n
        v[free[0]] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free[0]]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        out = [int(x * den) for x in v]
        if all(x <= 0 for x in out):
            out = [-x for x in out]
        if any(x <= 0 for x in out):
            raise ValidationError("radical vector is not positive")
        g = 0
        for x in out:
            g = gcd(g, x)
        return tuple(x // g for x in out)

    def gamma_norm(self, gamma):
        return self.diagram.pairing(gamma, gamma)

    def is_finite_root(self, gamma):
        """Whether the diagram-lattice vector is a root of the diagram algebra."""
        if all(x == 0 for x in gamma):
            return False
        if self.gamma_norm(gamma) == 2:
            return True
        if self.kind == "affine":
            # imaginary: a nonzero multiple of the radical vector
            return _is_multiple(gamma, self.delta0)
        return False

    def root_multiplicity(self, gamma):
        if not self.is_finite_root(gamma):
            return 0
        if self.gamma_norm(gamma) == 2:
            return 1
        return self.diagram.rank - 1  # affine imaginary: the rank of the core


def _is_multiple(v, w):
    ks = {Fraction(a, b) for a, b in zip(v, w) if b}
    if len(ks) != 1:
        return False
    k = ks.pop()
    if k.denominator != 1 or k == 0:
        return False
    return all(a == k * b for a, b in zip(v, w))


class LoopRoots:
    """Root data for the loop lattice Z^Gamma + Z delta in K-theory coordinates."""

    def __init__(self, w):
        self.w = w
        self.kt = KTheory(w)
        self.diagram = StarDiagram(w.p)
        self.datum = RootDatum(self.diagram)
        self.kind = self.datum.kind

    def gamma_part(self, cls):
        return tuple(cls.coords[:-1])

    def delta_part(self, cls):
        return cls.coords[-1]

    def is_loop_root(self, cls):
        """Membership in the full loop root system."""
        gamma = self.gamma_part(cls)
        k = self.delta_part(cls)
        if any(gamma):
            return self.datum.is_finite_root(gamma)
        return k != 0

    def loop_multiplicity(self, cls):
        """Weight multiplicity in the loop algebra."""
        gamma = self.gamma_part(cls)
        k = self.delta_part(cls)
        if any(gamma):
            if not self.datum.is_finite_root(gamma):
                return 0
            if self.datum.gamma_norm(gamma) == 2:
                return 1
            return self.diagram.rank  # affine imaginary + loop direction
        return self.diagram.rank if k != 0 else 0

    def is_indec_class(self, cls):
        """Whether some indecomposable sheaf has this class.

        Real classes need norm 2; imaginary ones exist only in the affine case
        along the radical direction.  Torsion classes (rank 0) must have
        positive degree; bundle classes positive rank.
        """
        r = self.kt.rank(cls)
        d = self.kt.degree(cls)
        if r < 0 or (r == 0 and d <= 0):
            return False
        gamma = self.gamma_part(cls)
        if any(gamma):
            norm = self.datum.gamma_norm(gamma)
            if norm == 2:
                return True
            if self.kind == "affine" and _is_multiple(gamma, self.datum.delta0):
                return True
            return False
        return self.delta_part(cls) > 0

    def certify_line_pair(self, x, y):
        """True when no middle term of extensions of O(x) by O(y) can be a
        rank-two indecomposable, so the product stays in the split basis."""
        beta = self.kt.line_bundle_class(x) + self.kt.line_bundle_class(y)
        return not self.is_indec_class(beta)


# ---------------------------------------------------------------------------
# Farey sequences
# ---------------------------------------------------------------------------

def farey(m):
    """The m-th mediant sequence from {0/1, 1/0}, as (num, den) pairs."""
    if m < 1:
        raise ValidationError("m must be >= 1")
    seq = [(0, 1), (1, 0)]
    for _ in range(m - 1):
        out = [seq[0]]
        for a, b in zip(seq, seq[1:]):
            out.append((a[0] + b[0], a[1] + b[1]))
            out.append(b)
        seq = out
    return seq


def farey_determinant_ok(seq):
    return all(a[1] * b[0] - b[1] * a[0] == 1 for a, b in zip(seq, seq[1:]))
