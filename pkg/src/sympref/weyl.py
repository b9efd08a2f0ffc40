"""The polynomial algebra on a symplectic vector space, with both products.

Variables are ordered p1, q1, ..., pn, qn (0-based: variable 2i is p_{i+1},
variable 2i+1 is q_{i+1}).  Elements are sparse maps from exponent
multi-indices to cyclotomic coefficients.  Besides the commutative product
there is the Moyal star product, normalized so that [p_i, q_j]_* = delta_ij
with no deformation parameter inside the algebra itself.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .cyclo import Cyclotomic


class MismatchedArity(ValueError):
    pass


class AxisOutOfRange(IndexError):
    pass


class NonSymplecticMatrix(ValueError):
    pass


def _falling(a, r):
    out = 1
    for t in range(r):
        out *= a - t
    return out


class WeylElement:
    """Sparse polynomial in 2n variables over cyclotomic scalars."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for exps, c in terms.items():
                c = Cyclotomic.lift(c)
                if not c.is_zero():
                    self.terms[tuple(exps)] = c

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(n):
        return WeylElement(n)

    @staticmethod
    def scalar(n, value):
        return WeylElement(n, {(0,) * (2 * n): Cyclotomic.lift(value)})

    @staticmethod
    def one(n):
        return WeylElement.scalar(n, 1)

    @staticmethod
    def variable(n, i):
        if not 0 <= i < 2 * n:
            raise AxisOutOfRange(f"variable index {i} out of range for n={n}")
        exps = [0] * (2 * n)
        exps[i] = 1
        return WeylElement(n, {tuple(exps): Cyclotomic.one()})

    @staticmethod
    def monomial(n, exps, coeff=1):
        return WeylElement(n, {tuple(exps): Cyclotomic.lift(coeff)})

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total polynomial degree; -1 for the zero element."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * (2 * self.n), Cyclotomic.zero())

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Cyclotomic.zero())

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        if self.n != other.n:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    # -- linear operations -----------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise MismatchedArity(f"arity {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        w = WeylElement(self.n)
        w.terms = out
        return w

    def __neg__(self):
        w = WeylElement(self.n)
        w.terms = {k: -c for k, c in self.terms.items()}
        return w

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Cyclotomic.lift(c)
        if c.is_zero():
            return WeylElement.zero(self.n)
        w = WeylElement(self.n)
        w.terms = {k: v * c for k, v in self.terms.items()}
        return w

    # -- the two products --------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        self._check(other)
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                c = ca * cb
                s = out.get(k)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        w = WeylElement(self.n)
        w.terms = out
        return w

    __rmul__ = __mul__

    def __pow__(self, k):
        out = WeylElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def star(self, other):
        """Moyal product.

        a * b = sum over multi-indices r, s of
            (1/2)^|r| (-1/2)^|s| / (r! s!) (d_p^r d_q^s a)(d_q^r d_p^s b),
        the expansion of m o exp((1/2) Pi) with
        Pi = sum_i d/dp_i (x) d/dq_i - d/dq_i (x) d/dp_i.
        """
        self._check(other)
        n = self.n
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                ranges = []
                for i in range(n):
                    ranges.append(range(min(ka[2 * i], kb[2 * i + 1]) + 1))
                    ranges.append(range(min(ka[2 * i + 1], kb[2 * i]) + 1))
                for rs in iproduct(*ranges):
                    coeff = Fraction(1)
                    exps = [0] * (2 * n)
                    for i in range(n):
                        r, s = rs[2 * i], rs[2 * i + 1]
                        ap, aq = ka[2 * i], ka[2 * i + 1]
                        bp, bq = kb[2 * i], kb[2 * i + 1]
                        num = (_falling(ap, r) * _falling(aq, s)
                               * _falling(bq, r) * _falling(bp, s))
                        if num == 0:
                            coeff = Fraction(0)
                            break
                        coeff *= Fraction(num * (-1) ** s, 2 ** (r + s))
                        coeff /= Fraction(_factorial(r) * _factorial(s))
                        exps[2 * i] = ap - r + bp - s
                        exps[2 * i + 1] = aq - s + bq - r
                    if coeff == 0:
                        continue
                    k = tuple(exps)
                    c = (ca * cb) * coeff
                    acc = out.get(k)
                    acc = c if acc is None else acc + c
                    if acc.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = acc
        w = WeylElement(n)
        w.terms = out
        return w

    def bracket(self, other):
        """Star commutator [a, b]_* = a*b - b*a."""
        return self.star(other) - other.star(self)

    # -- operators -----------------------------------------------------------------

    def partial(self, i):
        if not 0 <= i < 2 * self.n:
            raise AxisOutOfRange(f"axis {i} out of range for n={self.n}")
        out = {}
        for k, c in self.terms.items():
            if k[i] == 0:
                continue
            nk = list(k)
            nk[i] -= 1
            out[tuple(nk)] = c * k[i]
        w = WeylElement(self.n)
        w.terms = out
        return w

    def substitute_linear(self, columns):
        """Algebra map sending variable i to sum_j columns[i][j] * variable j."""
        n = self.n
        images = []
        for i in range(2 * n):
            img = WeylElement(n, {})
            for j, c in enumerate(columns[i]):
                c = Cyclotomic.lift(c)
                if not c.is_zero():
                    exps = [0] * (2 * n)
                    exps[j] = 1
                    img = img + WeylElement.monomial(n, exps, c)
            images.append(img)
        out = WeylElement.zero(n)
        for k, c in self.terms.items():
            term = WeylElement.scalar(n, c)
            for i, e in enumerate(k):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    # -- text ------------------------------------------------------------------------

    def __repr__(self):
        return f"WeylElement({self.to_text()})"

    def to_text(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = canonical_names(self.n)
        parts = []
        for k in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[k]
            mono = monomial_text(k, names)
            cs = c.to_text()
            if "+" in cs or (cs.count("-") and not cs.startswith("-")):
                cs = f"({cs})"
            parts.append(cs if mono == "1" else (mono if cs == "1" else f"{cs} {mono}"))
        return " + ".join(parts)


def canonical_names(n):
    names = []
    for i in range(n):
        names.append(f"p{i + 1}")
        names.append(f"q{i + 1}")
    return names


def monomial_text(exps, names):
    factors = [f"{names[i]}^{e}" if e > 1 else names[i]
               for i, e in enumerate(exps) if e]
    return " ".join(factors) if factors else "1"


def _factorial(k):
    out = 1
    for t in range(2, k + 1):
        out *= t
    return out


class SymplecticForm:
    """The canonical two-form: omega(p_i, q_i) = 1, all other basis pairs 0."""

    def __init__(self, n):
        self.n = n
        self.matrix = tuple(
            tuple(self._canon(i, j) for j in range(2 * n)) for i in range(2 * n))

    @staticmethod
    def _canon(i, j):
        if i // 2 != j // 2:
            return Cyclotomic.zero()
        if i % 2 == 0 and j == i + 1:
            return Cyclotomic.one()
        if i % 2 == 1 and j == i - 1:
            return -Cyclotomic.one()
        return Cyclotomic.zero()

    def on_basis(self, i, j):
        return self.matrix[i][j]

    def pairing(self, u, v):
        """omega(u, v) for coordinate sequences over the canonical basis."""
        total = Cyclotomic.zero()
        for i, ui in enumerate(u):
            ui = Cyclotomic.lift(ui)
            if ui.is_zero():
                continue
            j = i + 1 if i % 2 == 0 else i - 1
            vj = Cyclotomic.lift(v[j])
            if vj.is_zero():
                continue
            total = total + ui * vj * self.matrix[i][j]
        return total


def symplectic_defect(entries, n):
    """M^T J M - J as nested lists; all-zero iff M is symplectic."""
    form = SymplecticForm(n)
    size = 2 * n
    jm = [[Cyclotomic.zero() for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(size):
            acc = Cyclotomic.zero()
            for k in range(size):
                if not form.matrix[i][k].is_zero():
                    acc = acc + form.matrix[i][k] * entries[k][j]
            jm[i][j] = acc
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = Cyclotomic.zero()
            for k in range(size):
                ek = entries[k][i]
                if not ek.is_zero():
                    acc = acc + ek * jm[k][j]
            row.append(acc - form.matrix[i][j])
        out.append(row)
    return out


def is_symplectic(entries, n):
    return all(c.is_zero() for row in symplectic_defect(entries, n) for c in row)


def apply_symplectic(sigma, a):
    """Extend a symplectic matrix to an automorphism of both products.

    `sigma` may be a SympMatrix-like object (with .entries and .n) or a
    nested sequence of cyclotomic entries.
    """
    entries = getattr(sigma, "entries", sigma)
    n = getattr(sigma, "n", a.n)
    if n != a.n:
        raise MismatchedArity(f"matrix for n={n}, element for n={a.n}")
    entries = tuple(tuple(Cyclotomic.lift(c) for c in row) for row in entries)
    if not is_symplectic(entries, n):
        raise NonSymplecticMatrix("matrix does not preserve the canonical two-form")
    # Variable i (a basis vector of V) maps to column i of the matrix.
    columns = [[entries[r][i] for r in range(2 * n)] for i in range(2 * n)]
    return a.substitute_linear(columns)
