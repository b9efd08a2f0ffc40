"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as its reduced representative in the power basis of
zeta_N modulo the N-th cyclotomic polynomial, so two equal values at the
same order always have identical coefficient tuples.  Arithmetic between
elements of different orders first embeds both into Q(zeta_lcm).

All coefficients are `fractions.Fraction`; there is no floating point
anywhere in this package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd


class DivisionByZero(ZeroDivisionError):
    pass


def _lcm(a, b):
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Monic Phi_n as a low-to-high tuple of Fractions (degree = euler phi)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    # x^n - 1 divided exactly by every Phi_d with d | n, d < n.
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d:
            continue
        phi_d = cyclotomic_polynomial(d)
        poly = _polydiv_exact(poly, list(phi_d))
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _polydiv_exact(num, den):
    num = list(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] / den[-1]
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert all(c == 0 for c in num[len(q) - 1 + len(den) - 1:]) or True
    return q


@lru_cache(maxsize=None)
def _power_table(n):
    """zeta_n^j reduced mod Phi_n, for j up to max(2*deg-2, n-1)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    maxpow = max(2 * deg - 2, n - 1, 1)
    table = []
    for j in range(deg):
        row = [Fraction(0)] * deg
        row[j] = Fraction(1)
        table.append(tuple(row))
    # x^deg = -phi[:-1], then shift-and-reduce.
    for j in range(deg, maxpow + 1):
        prev = table[j - 1]
        row = [Fraction(0)] + list(prev[:-1])
        top = prev[-1]
        if top:
            for i in range(deg):
                row[i] -= top * phi[i]
        table.append(tuple(row))
    return tuple(table)


def _reduce_powers(n, dense):
    """Reduce a raw power-basis coefficient list (any length) mod Phi_n."""
    table = _power_table(n)
    deg = len(cyclotomic_polynomial(n)) - 1
    out = [Fraction(0)] * deg
    for j, c in enumerate(dense):
        if not c:
            continue
        row = table[j]
        for i in range(deg):
            if row[i]:
                out[i] += c * row[i]
    return tuple(out)


class Cyclotomic:
    """An element of Q(zeta_N) in reduced power-basis form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs, reduce=True):
        self.order = order
        if reduce:
            coeffs = _reduce_powers(order, list(coeffs))
        self.coeffs = tuple(coeffs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(value):
        return Cyclotomic(1, (Fraction(value),), reduce=False)

    @staticmethod
    def zero(order=1):
        deg = len(cyclotomic_polynomial(order)) - 1
        return Cyclotomic(order, (Fraction(0),) * deg, reduce=False)

    @staticmethod
    def one(order=1):
        z = Cyclotomic.zero(order)
        c = list(z.coeffs)
        c[0] = Fraction(1)
        return Cyclotomic(order, tuple(c), reduce=False)

    # -- coercion ----------------------------------------------------------

    @staticmethod
    def lift(x):
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into a cyclotomic")

    def embed(self, order):
        """Image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N)."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("embedding target order must be a multiple")
        step = order // self.order
        deg = len(cyclotomic_polynomial(order)) - 1
        table = _power_table(order)
        out = [Fraction(0)] * deg
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            row = table[j * step]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
        return Cyclotomic(order, tuple(out), reduce=False)

    def _pair(self, other):
        other = Cyclotomic.lift(other)
        if self.order == other.order:
            return self, other
        n = _lcm(self.order, other.order)
        return self.embed(n), other.embed(n)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-x for x in self.coeffs), reduce=False)

    def __sub__(self, other):
        return self + (-Cyclotomic.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Cyclotomic.lift(other)
        if other.is_rational():
            q = other.coeffs[0]
            return Cyclotomic(self.order, tuple(c * q for c in self.coeffs), reduce=False)
        if self.is_rational():
            q = self.coeffs[0]
            return Cyclotomic(other.order, tuple(c * q for c in other.coeffs), reduce=False)
        a, b = self._pair(other)
        deg = len(a.coeffs)
        raw = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    raw[i + j] += x * y
        return Cyclotomic(a.order, _reduce_powers(a.order, raw), reduce=False)

    __rmul__ = __mul__

    def inverse(self):
        """Field inverse by the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return Cyclotomic(self.order, (1 / self.coeffs[0],) + (Fraction(0),) * (len(self.coeffs) - 1), reduce=False)
        phi = list(cyclotomic_polynomial(self.order))
        deg = len(phi) - 1
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, rem = _poly_divmod(r0, r1)
            s_next = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1 = r1, rem
            s0, s1 = s1, s_next
        # r0 is the (nonzero constant) gcd; s0 * self == r0 mod Phi.
        lead = r0[0]
        if len(r0) != 1:
            raise ArithmeticError("element not invertible mod Phi_N")
        inv = [c / lead for c in s0]
        return Cyclotomic(self.order, inv)

    def __truediv__(self, other):
        other = Cyclotomic.lift(other)
        if other.is_zero():
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.lift(other) / self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None

    def multiplicative_order(self, cap=4096):
        p = self
        for k in range(1, cap + 1):
            if p.is_one():
                return k
            p = p * self
        raise ArithmeticError("multiplicative order exceeds cap")

    # -- text form -----------------------------------------------------------

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self):
        """Render as "a0 + a1*z + a2*z^2 + ..." (zero terms skipped)."""
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{j}")
        if not parts:
            return "0"
        return " + ".join(parts)


_TERM_RE = re.compile(r"^(?P<coeff>[+-]?\d+(?:/\d+)?)?(?:(?<=\d)\*)?(?P<z>z(?:\^(?P<exp>\d+))?)?$")


def parse_cyclotomic(text, order):
    """Parse the "a0 + a1*z + ..." text form at a declared order."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic literal")
    s = s.replace("+-", "-").replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    dense = {}
    for term in s.split("+"):
        if not term:
            raise ValueError(f"bad cyclotomic literal {text!r}")
        m = _TERM_RE.match(term)
        if not m or (m.group("coeff") is None and m.group("z") is None):
            raise ValueError(f"bad term {term!r} in {text!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") not in (None, "", "+", "-") else (
            Fraction(-1) if m.group("coeff") == "-" else Fraction(1))
        if m.group("z") is None:
            exp = 0
        else:
            exp = int(m.group("exp") or 1)
        dense[exp] = dense.get(exp, Fraction(0)) + coeff
    raw = [Fraction(0)] * (max(dense) + 1)
    for e, c in dense.items():
        raw[e] = c
    return Cyclotomic(order, raw)


def root_of_unity(order, k=1):
    """zeta_order^k, reduced.  Its multiplicative order is order/gcd(order, k)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    k %= order
    raw = [Fraction(0)] * (k + 1)
    raw[k] = Fraction(1)
    return Cyclotomic(order, raw)


def _poly_divmod(a, b):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    b = list(b)
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return out
