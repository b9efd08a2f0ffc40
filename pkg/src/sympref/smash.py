"""The smash product of the Weyl algebra with a finite symplectic group.

Elements are finite sums a_g (x) g with polynomial coefficients; moving a
group element right past a polynomial applies the matrix to it:
(a (x) g)(b (x) h) = a * g(b) (x) gh with the star product on coefficients.

Relative cochains are never materialized beyond their restrictions: a
degree-k object is stored on ordered k-subsets of the canonical basis of V
(alternating evaluation), and the unique relative extension is provided as
an operation on the restriction.
"""

from __future__ import annotations

from itertools import combinations

from .cyclo import Cyclotomic
from .linalg import determinant
from .weyl import WeylElement, apply_symplectic


class GroupMismatch(ValueError):
    pass


class UnknownClassKey(KeyError):
    pass


class NotNormalized(ValueError):
    pass


class NotInvariant(ValueError):
    pass


class NotEquivariant(ValueError):
    pass


class SmashElement:
    """Finite map from group element indices to polynomial coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {}
        if terms:
            for g, w in terms.items():
                if not w.is_zero():
                    self.terms[g] = w

    @staticmethod
    def zero(group):
        return SmashElement(group)

    @staticmethod
    def from_weyl(group, w):
        return SmashElement(group, {group.identity_index: w})

    @staticmethod
    def group_element(group, g, coeff=1):
        return SmashElement(group, {g: WeylElement.scalar(group.n, coeff)})

    @staticmethod
    def one(group):
        return SmashElement.from_weyl(group, WeylElement.one(group.n))

    def _check(self, other):
        if self.group is not other.group:
            raise GroupMismatch("elements live over different groups")

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for g, w in other.terms.items():
            s = out.get(g)
            s = w if s is None else s + w
            if s.is_zero():
                out.pop(g, None)
            else:
                out[g] = s
        return SmashElement(self.group, out)

    def __neg__(self):
        return SmashElement(self.group, {g: -w for g, w in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SmashElement(self.group, {g: w.scale(c) for g, w in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        G = self.group
        out = {}
        for g, a in self.terms.items():
            mat = G.elements[g]
            for h, b in other.terms.items():
                w = a.star(apply_symplectic(mat, b))
                if w.is_zero():
                    continue
                gh = G.mul(g, h)
                s = out.get(gh)
                s = w if s is None else s + w
                if s.is_zero():
                    out.pop(gh, None)
                else:
                    out[gh] = s
        return SmashElement(self.group, out)

    def __eq__(self, other):
        if not isinstance(other, SmashElement):
            return NotImplemented
        if self.group is not other.group or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[g] == other.terms[g] for g in self.terms)

    __hash__ = None

    def to_text(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({w.to_text()}) (x) g[{g}]"
                          for g, w in sorted(self.terms.items()))

    def __repr__(self):
        return f"SmashElement({self.to_text()})"


def smash_mul(x, y):
    return x * y


def ad_action(g, x):
    """Conjugation by the group element with index g."""
    G = x.group
    ginv = G.inv(g)
    out = {}
    mat = G.elements[g]
    for h, w in x.terms.items():
        nw = apply_symplectic(mat, w)
        nh = G.mul(G.mul(g, h), ginv)
        acc = out.get(nh)
        acc = nw if acc is None else acc + nw
        if acc.is_zero():
            out.pop(nh, None)
        else:
            out[nh] = acc
    return SmashElement(G, out)


# -- alternating cochains on V ------------------------------------------------------


class Cochain:
    """Alternating k-cochain on V; values are polynomials or smash elements."""

    __slots__ = ("n", "k", "values")

    def __init__(self, n, k, values=None):
        self.n = n
        self.k = k
        self.values = {}
        if values:
            for key, v in values.items():
                if not v.is_zero():
                    self.values[tuple(key)] = v

    def on_basis(self, indices):
        indices = tuple(indices)
        if len(set(indices)) != len(indices):
            return None
        ordered = tuple(sorted(indices))
        sign = _perm_sign(indices, ordered)
        val = self.values.get(ordered)
        if val is None:
            return None
        return val if sign == 1 else -val

    def __add__(self, other):
        out = dict(self.values)
        for key, v in other.values.items():
            s = out.get(key)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return Cochain(self.n, self.k, out)

    def __neg__(self):
        return Cochain(self.n, self.k, {key: -v for key, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Cochain(self.n, self.k, {key: v.scale(c) for key, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if (self.n, self.k) != (other.n, other.k) or set(self.values) != set(other.values):
            return False
        return all(self.values[key] == other.values[key] for key in self.values)

    __hash__ = None

    def is_zero(self):
        return not self.values


def _perm_sign(seq, sorted_seq):
    seq = list(seq)
    sign = 1
    for i, target in enumerate(sorted_seq):
        j = seq.index(target, i)
        if j != i:
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


def _value_action(mat, value, group=None):
    if isinstance(value, WeylElement):
        return apply_symplectic(mat, value)
    if isinstance(value, SmashElement):
        G = value.group
        return ad_action(G.index_of(mat), value)
    raise TypeError(f"no group action on values of type {type(value).__name__}")


def pi_matrix(mat, cochain):
    """The cochain action: (pi_s c)(v_1, ..., v_k) = s(c(s^{-1} v_1, ...))."""
    n = cochain.n
    size = 2 * n
    minv = mat.inverse()
    cols_inv = [tuple(minv.entries[r][c] for r in range(size)) for c in range(size)]
    out = {}
    for tgt in combinations(range(size), cochain.k):
        acc = None
        for key, v in cochain.values.items():
            minor = tuple(tuple(cols_inv[t][r] for t in tgt) for r in key)
            d = determinant(minor)
            if d.is_zero():
                continue
            term = v.scale(d)
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            out[tgt] = _value_action(mat, acc)
    return Cochain(n, cochain.k, out)


def project_invariant(mats, cochain):
    """Average of pi_s over a finite list of symplectic matrices.

    Idempotent, fixes invariant cochains, and commutes with any
    differential the single actions commute with.
    """
    total = None
    for mat in mats:
        term = pi_matrix(mat, cochain)
        total = term if total is None else total + term
    inv_card = Cyclotomic.rational(1) / len(mats)
    return total.scale(inv_card)


def smash_to_json(x):
    from .koszul import weyl_to_json
    return {"group": x.group.label, "terms": [
        {"g": g, "poly": weyl_to_json(w)} for g, w in sorted(x.terms.items())]}


def smash_from_json(data, group):
    from .koszul import weyl_from_json
    terms = {}
    for entry in data["terms"]:
        terms[entry["g"]] = weyl_from_json(entry["poly"], group.n)
    return SmashElement(group, terms)


def cochain_to_json(c):
    """Dump keyed by the ordered index tuples, values as smash elements."""
    return {"n": c.n, "k": c.k, "values": [
        {"wedge": list(key), "value": smash_to_json(v)}
        for key, v in sorted(c.values.items())]}


def cochain_from_json(data, group):
    values = {}
    for entry in data["values"]:
        values[tuple(entry["wedge"])] = smash_from_json(entry["value"], group)
    return Cochain(data["n"], data["k"], values)


# -- the degree-2 class cocycles ------------------------------------------------------


def lambda_weights(group, mapping):
    """Normalize weights onto exactly the k = 1 classes of the group."""
    gamma2 = set(group.gamma_partition().get(1, ()))
    out = {idx: Cyclotomic.zero() for idx in sorted(gamma2)}
    for key, val in mapping.items():
        if key not in gamma2:
            raise UnknownClassKey(f"class {key} is not a symplectic-reflection class")
        out[key] = Cyclotomic.lift(val)
    return out


def build_C_lambda(group, weights):
    """The degree-2 cocycle sum_gamma lambda(gamma) sum_{g in gamma} omega_g (x) g."""
    weights = lambda_weights(group, weights)
    n = group.n
    values = {}
    for cls_idx, lam in weights.items():
        if lam.is_zero():
            continue
        cls = group.classes[cls_idx]
        for g in cls.members:
            omega_g = group.invariants(g).omega
            for key in combinations(range(2 * n), 2):
                val = omega_g.on_basis(key)
                if val.is_zero():
                    continue
                entry = values.setdefault(key, SmashElement.zero(group))
                values[key] = entry + SmashElement.group_element(group, g, lam * val)
    return Cochain(n, 2, values)


# -- relative extension ------------------------------------------------------------------


def _probe_tuples(n, k, limit=12):
    vecs = list(range(2 * n))
    out = []
    if k <= 2:
        from itertools import product as iproduct
        out = list(iproduct(vecs, repeat=k))
    else:
        for i in range(limit):
            out.append(tuple(vecs[(i + j) % len(vecs)] for j in range(k)))
    return out


def validate_relative_restriction(D, k, group):
    """Check the preconditions of the relative extension on probe tuples."""
    n = group.n
    one = WeylElement.one(n)
    basis = [WeylElement.variable(n, i) for i in range(2 * n)]
    for slot in range(k):
        args = [basis[0]] * k
        args[slot] = one
        if not D(args).is_zero():
            raise NotNormalized(f"restriction does not vanish on a scalar in slot {slot}")
    for gen in group.generators:
        gidx = group.index_of(gen)
        for tup in _probe_tuples(n, k):
            args = [basis[i] for i in tup]
            lhs = ad_action(gidx, D(args))
            rhs = D([apply_symplectic(gen, a) for a in args])
            if lhs != rhs:
                raise NotInvariant("restriction is not compatible with the group action")


def extend_relative_cochain(D, inputs, group, validate=True):
    """Evaluate the unique relative extension of a normalized invariant map.

    C(a_1 (x) g_1, ..., a_k (x) g_k)
        = D(a_1, g_1(a_2), ..., g_1...g_{k-1}(a_k)) * (g_1...g_k).
    """
    k = len(inputs)
    for x in inputs:
        if x.group is not group:
            raise GroupMismatch("inputs live over a different group")
    if validate:
        validate_relative_restriction(D, k, group)
    total = SmashElement.zero(group)
    supports = [sorted(x.terms) for x in inputs]

    def rec(slot, prefix_idx, args):
        nonlocal total
        if slot == k:
            val = D(args)
            if not val.is_zero():
                total = total + val * SmashElement.group_element(group, prefix_idx)
            return
        prefix_mat = group.elements[prefix_idx]
        for g in supports[slot]:
            a = inputs[slot].terms[g]
            carried = a if prefix_idx == group.identity_index else apply_symplectic(prefix_mat, a)
            rec(slot + 1, group.mul(prefix_idx, g), args + [carried])

    rec(0, group.identity_index, [])
    return total


# -- class decomposition of equivariant families ----------------------------------------


def check_equivariant(family, group):
    """family: element index -> W-valued Cochain; checks pi_s C_g = C_{s g s^-1}."""
    for gen in group.generators:
        for g, coch in family.items():
            conj = group.conjugate(group.index_of(gen), g)
            lhs = pi_matrix(gen, coch)
            rhs = family.get(conj)
            if rhs is None or lhs != rhs:
                raise NotEquivariant(f"family fails equivariance at element {g}")


def class_decompose(family, group):
    """Restrict an equivariant family to the chosen class representatives."""
    check_equivariant(family, group)
    out = {}
    for idx, cls in enumerate(group.classes):
        coch = family.get(cls.rep)
        if coch is not None and not coch.is_zero():
            out[idx] = coch
    return out


def reconstruct_family(decomposed, group, n=None, k=None):
    """Rebuild the g-indexed family from per-class data via the witnesses."""
    family = {}
    for idx, cls in enumerate(group.classes):
        tilde = decomposed.get(idx)
        for member in cls.members:
            if tilde is None or tilde.is_zero():
                if n is not None and k is not None:
                    family[member] = Cochain(n, k)
                continue
            x = cls.witnesses[member]
            family[member] = pi_matrix(group.elements[x], tilde)
    return family


def smash_cochain_from_family(family, group, k):
    """Assemble sum_g C_g (x) g as one smash-valued cochain."""
    n = group.n
    values = {}
    for g, coch in family.items():
        for key, w in coch.values.items():
            entry = values.setdefault(key, SmashElement.zero(group))
            values[key] = entry + SmashElement(group, {g: w})
    return Cochain(n, k, values)
