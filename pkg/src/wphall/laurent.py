"""Exact Laurent polynomials in v over the rationals, and their reduction mod v^2 = q.

Every coefficient in the library lives here: either as a full Laurent
polynomial in v (generic mode) or as an element a + b*v of the quotient
ring by v^2 - q (fixed-field mode).
"""

from __future__ import annotations

import json
from fractions import Fraction


class LaurentScalar:
    """Sparse Laurent polynomial in v with Fraction coefficients.

    Immutable; canonical form stores no zero coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                a = Fraction(a)
                if a:
                    c[int(e)] = a
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentScalar is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return LaurentScalar()

    @staticmethod
    def one():
        return LaurentScalar({0: 1})

    @staticmethod
    def const(a):
        return LaurentScalar({0: Fraction(a)})

    @staticmethod
    def v_power(k, coeff=1):
        return LaurentScalar({k: Fraction(coeff)})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        c = dict(self.coeffs)
        for e, a in other.coeffs.items():
            c[e] = c.get(e, Fraction(0)) + a
        return LaurentScalar(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -a for e, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        c = {}
        for e1, a1 in self.coeffs.items():
            for e2, a2 in other.coeffs.items():
                e = e1 + e2
                c[e] = c.get(e, Fraction(0)) + a1 * a2
        return LaurentScalar(c)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers: invert monomials explicitly")
        out = LaurentScalar.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.const(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- queries -----------------------------------------------------------

    def is_constant(self):
        return set(self.coeffs) <= {0}

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.coeffs.get(0, Fraction(0))

    def parity_pure(self):
        """True when all exponents share one parity (or the value is 0)."""
        pars = {e % 2 for e in self.coeffs}
        return len(pars) <= 1

    # -- substitutions -----------------------------------------------------

    def eval_at_one(self):
        return sum(self.coeffs.values(), Fraction(0))

    def eval_v_squared(self, q):
        """Value of f at a concrete v with v^2 = q; requires parity-pure even input."""
        out = Fraction(0)
        for e, a in self.coeffs.items():
            if e % 2:
                raise ValueError("odd exponent; use specialize() instead")
            out += a * Fraction(q) ** (e // 2)
        return out

    def rescale(self, d):
        """Substitute v -> v^d (the residue-field rescaling)."""
        return LaurentScalar({e * d: a for e, a in self.coeffs.items()})

    # -- serialization -----------------------------------------------------

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            a = self.coeffs[e]
            if e == 0:
                parts.append(str(a))
            elif a == 1:
                parts.append(f"v^{e}")
            else:
                parts.append(f"{a}*v^{e}")
        return "+".join(parts).replace("+-", "-")

    def to_text(self):
        """Canonical text form: "c*v^k" terms joined by "+", exponents increasing."""
        if not self.coeffs:
            return "0"
        return "+".join(f"{self.coeffs[e]}*v^{e}" for e in sorted(self.coeffs))

    @staticmethod
    def from_text(s):
        s = s.strip()
        if s == "0":
            return LaurentScalar.zero()
        c = {}
        for term in s.split("+"):
            coeff, _, vp = term.partition("*v^")
            e = int(vp)
            if e in c:
                raise ValueError(f"duplicate exponent in {s!r}")
            c[e] = Fraction(coeff)
        return LaurentScalar(c)

    def to_json(self):
        """Array of [exponent, numerator, denominator], exponents increasing."""
        return [[e, self.coeffs[e].numerator, self.coeffs[e].denominator]
                for e in sorted(self.coeffs)]

    @staticmethod
    def from_json(data):
        if isinstance(data, str):
            data = json.loads(data)
        return LaurentScalar({e: Fraction(n, d) for e, n, d in data})


def _coerce(x):
    if isinstance(x, LaurentScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentScalar.const(x)
    raise TypeError(f"cannot coerce {type(x)} to LaurentScalar")


V = LaurentScalar.v_power(1)
V_INV = LaurentScalar.v_power(-1)


def quantum_int(n):
    """Balanced quantum integer (v^n - v^-n)/(v - v^-1) = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
    n = int(n)
    if n == 0:
        return LaurentScalar.zero()
    sign = 1
    if n < 0:
        sign, n = -1, -n
    return LaurentScalar({n - 1 - 2 * i: sign for i in range(n)})


def quantum_factorial(n):
    out = LaurentScalar.one()
    for i in range(1, n + 1):
        out = out * quantum_int(i)
    return out


def n_factor(l):
    """Product (1 - v^2)(1 - v^4)...(1 - v^(2l)); n_factor(0) = 1."""
    if l < 0:
        raise ValueError("n_factor needs l >= 0")
    out = LaurentScalar.one()
    for i in range(1, l + 1):
        out = out * (LaurentScalar.one() - LaurentScalar.v_power(2 * i))
    return out


class SpecializedScalar:
    """Element a + b*v of Q[v]/(v^2 - q), with a, b exact rationals."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q):
        if q < 2:
            raise ValueError("field size must be at least 2")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "q", int(q))

    def __setattr__(self, name, value):
        raise AttributeError("SpecializedScalar is immutable")

    @staticmethod
    def zero(q):
        return SpecializedScalar(0, 0, q)

    @staticmethod
    def one(q):
        return SpecializedScalar(1, 0, q)

    @staticmethod
    def v_power(k, q):
        # v^k = q^(k//2) or q^((k-1)//2) * v depending on parity; k may be negative.
        if k % 2 == 0:
            return SpecializedScalar(Fraction(q) ** (k // 2), 0, q)
        return SpecializedScalar(0, Fraction(q) ** ((k - 1) // 2), q)

    def _check(self, other):
        if isinstance(other, SpecializedScalar):
            if other.q != self.q:
                raise ValueError("mixed field sizes")
            return other
        if isinstance(other, (int, Fraction)):
            return SpecializedScalar(other, 0, self.q)
        raise TypeError(f"cannot coerce {type(other)}")

    def __add__(self, other):
        o = self._check(other)
        return SpecializedScalar(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return SpecializedScalar(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        o = self._check(other)
        return SpecializedScalar(self.a * o.a + self.b * o.b * self.q,
                                 self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def inverse(self):
        # (a + bv)(a - bv) = a^2 - b^2 q, nonzero since q is not a rational square
        # of a ratio unless a = b = 0.
        n = self.a * self.a - self.b * self.b * self.q
        if n == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("inverse of zero")
            # a^2 = b^2 q with b != 0 would make q a rational square; q >= 2 integer
            # squares do occur (q = 4, 9, ...), handle via direct solve.
            # a = +-b sqrt(q): only when q is a perfect square.
            r = _isqrt(self.q)
            if r * r == self.q and (self.a == self.b * r or self.a == -self.b * r):
                raise ZeroDivisionError("zero divisor at square q")
            raise ZeroDivisionError("inverse of zero")
        return SpecializedScalar(self.a / n, -self.b / n, self.q)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0
        if not isinstance(other, SpecializedScalar):
            return NotImplemented
        return (self.a, self.b, self.q) == (other.a, other.b, other.q)

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __repr__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*v"
        return f"{self.a}+{self.b}*v".replace("+-", "-")


def _isqrt(n):
    r = int(n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def specialize(f, q):
    """Reduce a LaurentScalar modulo v^2 = q, keeping v-parity."""
    if q < 2:
        raise ValueError("field size must be at least 2")
    a = Fraction(0)
    b = Fraction(0)
    for e, coeff in f.coeffs.items():
        if e % 2 == 0:
            a += coeff * Fraction(q) ** (e // 2)
        else:
            b += coeff * Fraction(q) ** ((e - 1) // 2)
    return SpecializedScalar(a, b, q)


def lift(s):
    """Section of specialize: a + b*v as a Laurent polynomial."""
    return LaurentScalar({0: s.a, 1: s.b})
