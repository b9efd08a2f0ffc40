"""Finite subgroups of Sp(2n) and their per-element symplectic invariants.

Groups are closed from generators by breadth-first multiplication, with a
hard cap on the order.  Every element of a finite subgroup has finite
multiplicative order, hence is diagonalizable with root-of-unity
eigenvalues; eigenprojections are computed by averaging powers against
characters of the cyclic group the element generates, never by a generic
eigensolver.

For each element g the module produces:
  * the moved space V_g = range(g - Id) and k_g = dim(V_g)/2,
  * a diagonal Darboux basis P_i, Q_i with g(P_i) = alpha_i P_i,
    g(Q_i) = alpha_i^{-1} Q_i, pairs with alpha_i != 1 listed first,
  * the projection onto V_g along the fixed space,
  * the canonical alternating 2k_g-form omega_g supported on V_g.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from .cyclo import Cyclotomic, parse_cyclotomic, root_of_unity
from .linalg import (column_space_basis, determinant, identity_matrix,
                     mat_inverse, mat_mul, mat_scale, mat_vec, pfaffian, transpose)
from .weyl import NonSymplecticMatrix, SymplecticForm, is_symplectic


class NonSymplecticGenerator(ValueError):
    pass


class OrderExceedsCap(RuntimeError):
    pass


class NotFiniteOrder(RuntimeError):
    pass


def _lcm(a, b):
    return a // gcd(a, b) * b


class SympMatrix:
    """A 2n x 2n matrix over a cyclotomic field, checked symplectic."""

    __slots__ = ("n", "entries")

    def __init__(self, n, entries, check=True):
        self.n = n
        self.entries = tuple(tuple(Cyclotomic.lift(c) for c in row) for row in entries)
        if len(self.entries) != 2 * n or any(len(r) != 2 * n for r in self.entries):
            raise ValueError("entries must form a 2n x 2n matrix")
        if check and not is_symplectic(self.entries, n):
            raise NonSymplecticMatrix("matrix does not preserve the canonical form")

    @staticmethod
    def identity(n):
        return SympMatrix(n, identity_matrix(2 * n), check=False)

    def __mul__(self, other):
        return SympMatrix(self.n, mat_mul(self.entries, other.entries), check=False)

    def inverse(self):
        # M in Sp means M^T J M = J, so M^{-1} = J^{-1} M^T J.
        form = SymplecticForm(self.n)
        j = form.matrix
        jinv = tuple(tuple(-c for c in row) for row in j)
        return SympMatrix(self.n, mat_mul(mat_mul(jinv, transpose(self.entries)), j), check=False)

    def apply(self, coords):
        return mat_vec(self.entries, coords)

    def is_identity(self):
        size = 2 * self.n
        for i in range(size):
            for j, c in enumerate(self.entries[i]):
                if i == j:
                    if not c.is_one():
                        return False
                elif not c.is_zero():
                    return False
        return True

    def entry_field_order(self):
        order = 1
        for row in self.entries:
            for c in row:
                order = _lcm(order, c.order)
        return order

    def key(self, at_order=None):
        return _canonical_key(self, at_order or self.entry_field_order())

    def __eq__(self, other):
        if not isinstance(other, SympMatrix) or self.n != other.n:
            return False
        return all(a == b for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))

    __hash__ = None

    def multiplicative_order(self, cap=4096):
        p = self
        for k in range(1, cap + 1):
            if p.is_identity():
                return k
            p = p * self
        raise NotFiniteOrder(f"no power up to {cap} is the identity")

    def __repr__(self):
        rows = ["[" + ", ".join(c.to_text() for c in row) + "]" for row in self.entries]
        return "SympMatrix([" + "; ".join(rows) + "])"


def _canonical_key(mat, order):
    out = []
    for row in mat.entries:
        for c in row:
            out.append(c.embed(order).coeffs if c.order != order else c.coeffs)
    return tuple(out)


@dataclass(eq=False)
class ConjClass:
    """A conjugacy class with its centralizer, witnesses and degree k."""

    rep: int
    members: tuple
    centralizer: tuple
    witnesses: dict          # member index -> x index with member = x rep x^{-1}
    k: int = 0


class FiniteSympGroup:
    """Closed element list of a finite subgroup of Sp(2n).

    Elements are sorted by a canonical key of their matrix entries, so
    indices, class representatives and all derived output are reproducible.
    """

    def __init__(self, n, elements, generators, label=None, field_order=1):
        self.n = n
        self.field_order = field_order
        for m in list(elements) + list(generators):
            self.field_order = _lcm(self.field_order, m.entry_field_order())
        keyed = sorted(((_canonical_key(m, self.field_order), m) for m in elements),
                       key=lambda t: t[0])
        self.elements = tuple(m for _, m in keyed)
        self._index = {k: i for i, (k, _) in enumerate(keyed)}
        self.generators = tuple(generators)
        self.label = label
        self.identity_index = self.index_of(SympMatrix.identity(n))
        self._mul_cache = {}
        self._inv_cache = {}
        self._classes = None
        self._invariants_cache = {}

    @property
    def order(self):
        return len(self.elements)

    def index_of(self, mat):
        if self.field_order % mat.entry_field_order() == 0:
            key = _canonical_key(mat, self.field_order)
            got = self._index.get(key)
            if got is not None:
                return got
        else:
            # Entries stored at an order outside the group's field; fall back
            # to value comparison, which embeds into the common field.
            for i, m in enumerate(self.elements):
                if m == mat:
                    return i
        raise KeyError("matrix is not an element of this group")

    def mul(self, i, j):
        got = self._mul_cache.get((i, j))
        if got is None:
            got = self.index_of(self.elements[i] * self.elements[j])
            self._mul_cache[(i, j)] = got
        return got

    def inv(self, i):
        got = self._inv_cache.get(i)
        if got is None:
            got = self.index_of(self.elements[i].inverse())
            self._inv_cache[i] = got
        return got

    def conjugate(self, x, g):
        """Index of x g x^{-1}."""
        return self.mul(self.mul(x, g), self.inv(x))

    # -- conjugacy data -------------------------------------------------------

    @property
    def classes(self):
        if self._classes is None:
            self._classes = self._build_classes()
        return self._classes

    def _build_classes(self):
        seen = set()
        classes = []
        for rep in range(self.order):
            if rep in seen:
                continue
            witnesses = {rep: self.identity_index}
            members = {rep}
            frontier = [rep]
            while frontier:
                g = frontier.pop()
                for x in range(self.order):
                    h = self.conjugate(x, g)
                    if h not in members:
                        members.add(h)
                        witnesses[h] = self.mul(x, witnesses[g])
                        frontier.append(h)
            # The representative is the lexicographically smallest member,
            # which under the canonical sort is the smallest index.
            rep_idx = min(members)
            centralizer = tuple(x for x in range(self.order)
                                if self.mul(x, rep_idx) == self.mul(rep_idx, x))
            # Re-anchor witnesses on the chosen representative.
            base = witnesses[rep_idx]
            wit = {m: self.mul(witnesses[m], self.inv(base)) for m in sorted(members)}
            k = self.invariants(rep_idx).k_sigma
            classes.append(ConjClass(rep=rep_idx, members=tuple(sorted(members)),
                                     centralizer=centralizer, witnesses=wit, k=k))
            seen |= members
        classes.sort(key=lambda c: (c.k, c.rep))
        return tuple(classes)

    def gamma_partition(self):
        """Map k -> tuple of class indices with k_gamma = k."""
        out = {}
        for idx, cls in enumerate(self.classes):
            out.setdefault(cls.k, []).append(idx)
        return {k: tuple(v) for k, v in sorted(out.items())}

    def class_of_element(self, g):
        for idx, cls in enumerate(self.classes):
            if g in cls.members:
                return idx
        raise KeyError(g)

    def invariants(self, g):
        got = self._invariants_cache.get(g)
        if got is None:
            got = sigma_invariants(self.elements[g])
            self._invariants_cache[g] = got
        return got

    def __repr__(self):
        name = self.label or "group"
        return f"FiniteSympGroup({name}, n={self.n}, order={self.order})"


def close_group(generators, cap=1024, label=None):
    """Multiplicative closure of symplectic generators, capped."""
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    for g in generators:
        if g.n != n:
            raise NonSymplecticGenerator("generators have mixed sizes")
        if not is_symplectic(g.entries, n):
            raise NonSymplecticGenerator("generator is not symplectic")
    order = 1
    for g in generators:
        order = _lcm(order, g.entry_field_order())
    ident = SympMatrix.identity(n)
    seen = {_canonical_key(ident, order): ident}
    frontier = [ident]
    while frontier:
        m = frontier.pop()
        for g in generators:
            prod = m * g
            key = _canonical_key(prod, order)
            if key not in seen:
                if len(seen) >= cap:
                    raise OrderExceedsCap(f"closure exceeds cap {cap}")
                seen[key] = prod
                frontier.append(prod)
    return FiniteSympGroup(n, list(seen.values()), generators, label=label,
                           field_order=order)


def conjugacy_data(group):
    """Classes and the partition Gamma_{2k} keyed by k."""
    return group.classes, group.gamma_partition()


# -- alternating forms ----------------------------------------------------------


class AltForm:
    """Alternating m-form on V, stored by values on ordered basis tuples."""

    __slots__ = ("n", "degree", "values")

    def __init__(self, n, degree, values=None):
        self.n = n
        self.degree = degree
        self.values = {}
        if values:
            for key, c in values.items():
                c = Cyclotomic.lift(c)
                if not c.is_zero():
                    self.values[tuple(key)] = c

    def on_basis(self, indices):
        """Value on (e_{i_1}, ..., e_{i_m}) for arbitrary index order."""
        indices = tuple(indices)
        if len(set(indices)) != len(indices):
            return Cyclotomic.zero()
        order = tuple(sorted(indices))
        sign = _perm_sign(indices, order)
        base = self.values.get(order)
        if base is None:
            return Cyclotomic.zero()
        return base if sign == 1 else -base

    def on_vectors(self, vectors):
        """Multilinear alternating evaluation on coordinate vectors."""
        from .linalg import determinant as det
        total = Cyclotomic.zero()
        for key, c in self.values.items():
            minor = tuple(tuple(Cyclotomic.lift(v[i]) for v in vectors) for i in key)
            d = det(minor)
            if not d.is_zero():
                total = total + c * d
        return total

    def transported(self, x):
        """pi_x F, the form v -> F(x^{-1} v)."""
        xinv = x.inverse()
        cols = [tuple(xinv.entries[r][c] for r in range(2 * self.n))
                for c in range(2 * self.n)]
        out = {}
        from itertools import combinations
        for key in combinations(range(2 * self.n), self.degree):
            val = self.on_vectors([cols[i] for i in key])
            if not val.is_zero():
                out[key] = val
        return AltForm(self.n, self.degree, out)

    def scaled(self, c):
        return AltForm(self.n, self.degree, {k: v * c for k, v in self.values.items()})

    def __add__(self, other):
        out = dict(self.values)
        for k, c in other.values.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return AltForm(self.n, self.degree, out)

    def __eq__(self, other):
        if not isinstance(other, AltForm) or (self.n, self.degree) != (other.n, other.degree):
            return False
        if set(self.values) != set(other.values):
            return False
        return all(self.values[k] == other.values[k] for k in self.values)

    __hash__ = None

    def is_zero(self):
        return not self.values

    def __repr__(self):
        return f"AltForm(n={self.n}, degree={self.degree}, {{" + ", ".join(
            f"{k}: {v.to_text()}" for k, v in sorted(self.values.items())) + "})"


def _perm_sign(seq, sorted_seq):
    seq = list(seq)
    sign = 1
    for i, target in enumerate(sorted_seq):
        j = seq.index(target, i)
        if j != i:
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


# -- per-element invariants ---------------------------------------------------


@dataclass(eq=False)
class SigmaInvariants:
    """Diagonal Darboux data for one finite-order symplectic matrix."""

    sigma: SympMatrix
    order: int
    field_order: int
    k_sigma: int
    alphas: tuple            # length n; alphas[a] != 1 exactly for a < k_sigma
    basis: tuple             # 2n coordinate columns: P1, Q1, ..., Pn, Qn
    basis_inv: tuple         # inverse of the basis matrix
    projector: tuple         # matrix of the projection onto V_sigma
    omega: "AltForm" = field(default=None)

    @property
    def n(self):
        return self.sigma.n

    def basis_matrix(self):
        size = 2 * self.n
        return tuple(tuple(self.basis[c][r] for c in range(size)) for r in range(size))


def sigma_invariants(sigma, order_cap=4096):
    """Eigen-decomposition by group averaging plus greedy Darboux pairing."""
    n = sigma.n
    size = 2 * n
    try:
        n_sigma = sigma.multiplicative_order(order_cap)
    except NotFiniteOrder:
        raise
    field_order = _lcm(sigma.entry_field_order(), n_sigma)

    powers = [SympMatrix.identity(n).entries]
    for _ in range(1, n_sigma):
        powers.append(mat_mul(powers[-1], sigma.entries))

    pools = []   # list of (exponent j, [eigvec coords])
    for j in range(n_sigma):
        acc = None
        for m in range(n_sigma):
            w = root_of_unity(n_sigma, (-j * m) % n_sigma)
            term = mat_scale(powers[m], w)
            acc = term if acc is None else tuple(
                tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(acc, term))
        proj = mat_scale(acc, Cyclotomic.rational(1) / n_sigma)
        vecs = column_space_basis(proj)
        if vecs:
            pools.append([j, [list(v) for v in vecs]])

    fixed_dim = 0
    for j, vecs in pools:
        if j == 0:
            fixed_dim = len(vecs)
    if (size - fixed_dim) % 2:
        raise ArithmeticError("moved space has odd dimension; matrix cannot be symplectic")
    k_sigma = (size - fixed_dim) // 2

    form = SymplecticForm(n)
    pool_map = {j: vecs for j, vecs in pools}

    def deflate(v, w):
        for vecs in pool_map.values():
            for u in vecs:
                a = form.pairing(w, u)
                b = form.pairing(v, u)
                if not a.is_zero():
                    for r in range(size):
                        u[r] = u[r] + a * v[r]
                if not b.is_zero():
                    for r in range(size):
                        u[r] = u[r] - b * w[r]

    pairs = []
    exps = sorted(j for j in pool_map if j != 0) + ([0] if 0 in pool_map else [])
    for j in exps:
        vecs = pool_map.get(j)
        while vecs:
            v = vecs.pop(0)
            jpartner = (-j) % n_sigma
            partner_pool = pool_map.get(jpartner)
            w = None
            for cand in list(partner_pool):
                val = form.pairing(v, cand)
                if not val.is_zero():
                    w = cand
                    partner_pool.remove(cand)
                    w = [c * val.inverse() for c in w]
                    break
            if w is None:
                raise ArithmeticError("pairing failed; form degenerate on eigenspace")
            deflate(v, w)
            alpha = root_of_unity(n_sigma, j)
            pairs.append((alpha, tuple(v), tuple(w)))

    # Pairs with alpha != 1 come first by construction of `exps`.
    alphas = tuple(alpha for alpha, _, _ in pairs)
    basis = []
    for _, p, q in pairs:
        basis.append(p)
        basis.append(q)
    basis = tuple(basis)

    bmat = tuple(tuple(basis[c][r] for c in range(size)) for r in range(size))
    binv = mat_inverse(bmat)

    # Projection onto the moved space: identity minus the fixed-space average.
    acc = None
    for m in range(n_sigma):
        acc = powers[m] if acc is None else tuple(
            tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(acc, powers[m]))
    fix_proj = mat_scale(acc, Cyclotomic.rational(1) / n_sigma)
    projector = tuple(tuple((Cyclotomic.one() if i == jj else Cyclotomic.zero()) - fix_proj[i][jj]
                            for jj in range(size)) for i in range(size))

    inv = SigmaInvariants(sigma=sigma, order=n_sigma, field_order=field_order,
                          k_sigma=k_sigma, alphas=alphas, basis=basis,
                          basis_inv=binv, projector=projector)
    inv.omega = _omega_form(inv)
    return inv


def _omega_form(inv):
    """omega_sigma via the Pfaffian of omega(P v_i, P v_j) on basis tuples."""
    from itertools import combinations
    n = inv.n
    size = 2 * n
    deg = 2 * inv.k_sigma
    form = SymplecticForm(n)
    proj_cols = [tuple(inv.projector[r][c] for r in range(size)) for c in range(size)]
    values = {}
    for key in combinations(range(size), deg):
        gram = tuple(tuple(form.pairing(proj_cols[a], proj_cols[b]) for b in key) for a in key)
        val = pfaffian(gram)
        if not val.is_zero():
            values[key] = val
    return AltForm(n, deg, values)


def transport_form(x, sigma):
    """pi_x(omega_sigma); equals omega of x sigma x^{-1} computed directly."""
    return sigma_invariants(sigma).omega.transported(x)


# -- catalog -------------------------------------------------------------------


def _rotation_sp2(order):
    if order == 1:
        return SympMatrix.identity(1)
    if order == 2:
        one = Cyclotomic.one()
        zero = Cyclotomic.zero()
        return SympMatrix(1, ((-one, zero), (zero, -one)))
    c = root_of_unity(order, 1) + root_of_unity(order, order - 1)
    one = Cyclotomic.one()
    zero = Cyclotomic.zero()
    return SympMatrix(1, ((c, -one), (one, zero)))


def _minus_identity(n):
    one = Cyclotomic.one()
    zero = Cyclotomic.zero()
    return SympMatrix(n, tuple(tuple(-one if i == j else zero for j in range(2 * n))
                               for i in range(2 * n)))


def _block_diag(a, b):
    n = a.n + b.n
    zero = Cyclotomic.zero()
    size_a, size_b = 2 * a.n, 2 * b.n
    rows = []
    for i in range(size_a):
        rows.append(tuple(a.entries[i]) + (zero,) * size_b)
    for i in range(size_b):
        rows.append((zero,) * size_a + tuple(b.entries[i]))
    return SympMatrix(n, tuple(rows))


def catalog(name, cap=1024):
    """Built-in groups: trivial, Z<l>_sp2 (l <= 12), pm1_sp2/4/6, x-products."""
    if "x" in name:
        parts = name.split("x")
        groups = [catalog(p, cap) for p in parts]
        gens = []
        for i, g in enumerate(groups):
            for gen in g.generators:
                blocks = [gen if j == i else SympMatrix.identity(groups[j].n)
                          for j in range(len(groups))]
                m = blocks[0]
                for b in blocks[1:]:
                    m = _block_diag(m, b)
                gens.append(m)
        return close_group(gens, cap=cap, label=name)
    if name == "trivial":
        return close_group([SympMatrix.identity(1)], cap=cap, label=name)
    if name.startswith("Z") and name.endswith("_sp2"):
        order = int(name[1:-4])
        if not 1 <= order <= 12:
            raise KeyError(f"rotation order {order} outside the catalog range")
        return close_group([_rotation_sp2(order)], cap=cap, label=name)
    if name.startswith("pm1_sp"):
        size = int(name[6:])
        if size % 2 or not 2 <= size <= 6:
            raise KeyError(f"unknown catalog size in {name!r}")
        return close_group([_minus_identity(size // 2)], cap=cap, label=name)
    raise KeyError(f"unknown catalog group {name!r}")


# -- JSON group description ------------------------------------------------------


def group_from_json(data, cap=1024):
    """Build a group from {"n": ..., "cyclotomic_order": ..., "generators": ...}."""
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    order = int(data.get("cyclotomic_order", 1))
    gens = []
    for rows in data["generators"]:
        entries = tuple(tuple(parse_cyclotomic(cell, order) for cell in row) for row in rows)
        gens.append(SympMatrix(n, entries))
    return close_group(gens, cap=cap, label=data.get("label"))


def group_to_json(group):
    return {
        "n": group.n,
        "cyclotomic_order": group.field_order,
        "label": group.label,
        "generators": [[[c.embed(group.field_order).to_text() if c.order != group.field_order
                         else c.to_text() for c in row] for row in g.entries]
                       for g in group.generators],
    }
