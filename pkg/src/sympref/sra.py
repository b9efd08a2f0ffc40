"""Symplectic reflection algebras as a terminating rewriting system.

Words over {basis vectors of V} union G, with coefficients polynomial in
hbar, are reduced to the ordered-monomial-times-group normal form using

    e_j e_i -> e_i e_j + kappa(i, j)           (j > i)
    g e_i   -> sum_m g(e_i)_m e_m g
    g h     -> gh

with the correction table

    kappa(i, j) = omega(e_j, e_i)
                + hbar sum_{gamma} lambda(gamma) sum_{g in gamma}
                      omega_g(e_j, e_i) g.

A proper table has V-degree 0, so each rewrite strictly lowers the
degree-lexicographic rank and reduction terminates.  Confluence is checked,
not assumed: every overlap e_k e_j e_i (k > j > i) and g e_j e_i is reduced
both ways and compared.  The deliberate negative control perturbs one table
entry by a degree-one term, which breaks the compatibility of the relations
with the group action and must make at least one pair fail.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .cyclo import Cyclotomic
from .smash import SmashElement, lambda_weights
from .weyl import SymplecticForm, WeylElement


class CapExceeded(ValueError):
    pass


def bernoulli(j):
    """Exact Bernoulli numbers with B_1 = -1/2, by the binomial recurrence."""
    if j < 0 or j > 32:
        raise ValueError("index out of the supported range 0..32")
    values = [Fraction(1)]
    for m in range(1, j + 1):
        acc = Fraction(0)
        for i in range(m):
            acc += comb(m + 1, i) * values[i]
        values.append(-acc / (m + 1))
    return values[j]


class HbarPoly:
    """A polynomial in hbar with cyclotomic coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for d, c in coeffs.items():
                c = Cyclotomic.lift(c)
                if not c.is_zero():
                    self.coeffs[d] = c

    @staticmethod
    def const(c):
        return HbarPoly({0: c})

    @staticmethod
    def hbar(coeff=1, power=1):
        return HbarPoly({power: coeff})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = out.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        h = HbarPoly()
        h.coeffs = out
        return h

    def __neg__(self):
        h = HbarPoly()
        h.coeffs = {d: -c for d, c in self.coeffs.items()}
        return h

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HbarPoly):
            other = HbarPoly.const(other)
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                c = c1 * c2
                s = out.get(d)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(d, None)
                else:
                    out[d] = s
        h = HbarPoly()
        h.coeffs = out
        return h

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HbarPoly):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[d] == other.coeffs[d] for d in self.coeffs)

    __hash__ = None

    def evaluate(self, value):
        total = Cyclotomic.zero()
        for d, c in self.coeffs.items():
            total = total + c * (Cyclotomic.lift(value) ** d)
        return total

    def to_text(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d].to_text()
            if "+" in c:
                c = f"({c})"
            if d == 0:
                parts.append(c)
            else:
                h = "hbar" if d == 1 else f"hbar^{d}"
                parts.append(h if c == "1" else f"{c}*{h}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HbarPoly({self.to_text()})"


class SRAElement:
    """Linear combination of normal monomials e^I (x) g over hbar-polynomials."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {}
        if terms:
            for key, h in terms.items():
                if not h.is_zero():
                    self.terms[key] = h

    @property
    def n(self):
        return self.group.n

    @staticmethod
    def zero(group):
        return SRAElement(group)

    @staticmethod
    def monomial(group, exps, gidx=None, coeff=None):
        gidx = group.identity_index if gidx is None else gidx
        coeff = HbarPoly.const(1) if coeff is None else coeff
        return SRAElement(group, {(tuple(exps), gidx): coeff})

    @staticmethod
    def generator(group, i):
        exps = [0] * (2 * group.n)
        exps[i] = 1
        return SRAElement.monomial(group, exps)

    @staticmethod
    def group_atom(group, gidx):
        return SRAElement.monomial(group, (0,) * (2 * group.n), gidx)

    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(key[0]) for key in self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for key, h in other.terms.items():
            s = out.get(key)
            s = h if s is None else s + h
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SRAElement(self.group, out)

    def __neg__(self):
        return SRAElement(self.group, {k: -h for k, h in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        h = c if isinstance(c, HbarPoly) else HbarPoly.const(c)
        return SRAElement(self.group, {k: v * h for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SRAElement):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def to_words(self):
        out = []
        for (exps, g), h in self.terms.items():
            letters = tuple(("v", m) for m, e in enumerate(exps) for _ in range(e))
            if g != self.group.identity_index:
                letters = letters + (("g", g),)
            out.append((h, letters))
        return out

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for (exps, g), h in sorted(self.terms.items()):
            mono = " ".join(f"e{m + 1}^{e}" if e > 1 else f"e{m + 1}"
                            for m, e in enumerate(exps) if e) or "1"
            gtxt = "" if g == self.group.identity_index else f" (x) g[{g}]"
            parts.append(f"({h.to_text()})*{mono}{gtxt}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SRAElement({self.to_text()})"


class RewriteSystem:
    """Cached rewriting data for one group and one weight assignment."""

    def __init__(self, group, weights=None, corrupted=False, _kappa=None):
        self.group = group
        self.weights = lambda_weights(group, weights or {})
        self.corrupted = corrupted
        n = group.n
        self.form = SymplecticForm(n)
        # g(e_i) as sparse columns: action[g][i] = ((m, coeff), ...)
        self.action = []
        for g in range(group.order):
            mat = group.elements[g]
            cols = []
            for i in range(2 * n):
                col = tuple((m, mat.entries[m][i]) for m in range(2 * n)
                            if not mat.entries[m][i].is_zero())
                cols.append(col)
            self.action.append(cols)
        if _kappa is not None:
            self.kappa = _kappa
        else:
            self.kappa = {}
            for i in range(2 * n):
                for j in range(i + 1, 2 * n):
                    terms = {}
                    w0 = self.form.on_basis(j, i)
                    if not w0.is_zero():
                        terms[((0,) * (2 * n), group.identity_index)] = HbarPoly.const(w0)
                    for cls_idx, lam in self.weights.items():
                        if lam.is_zero():
                            continue
                        for g in group.classes[cls_idx].members:
                            wg = group.invariants(g).omega.on_basis((j, i))
                            if wg.is_zero():
                                continue
                            key = ((0,) * (2 * n), g)
                            prev = terms.get(key, HbarPoly())
                            terms[key] = prev + HbarPoly.hbar(lam * wg)
                    self.kappa[(i, j)] = SRAElement(group, terms)
        for entry in self.kappa.values():
            if entry.degree() > 1:
                raise ValueError("correction entries of degree > 1 break termination")
        self._section_cache = {}

    def with_corrupted_entry(self, i=0, j=1, extra=None):
        """Copy with one table entry perturbed; breaks the group compatibility."""
        if extra is None:
            exps = [0] * (2 * self.group.n)
            exps[i] = 1
            extra = SRAElement.monomial(self.group, exps, coeff=HbarPoly.hbar(1))
        kappa = dict(self.kappa)
        kappa[(i, j)] = kappa[(i, j)] + extra
        return RewriteSystem(self.group, self.weights, corrupted=True, _kappa=kappa)

    def specialized(self, value):
        """Rewrite table with hbar evaluated at a constant."""
        kappa = {}
        for key, entry in self.kappa.items():
            kappa[key] = SRAElement(self.group, {
                k: HbarPoly.const(h.evaluate(value)) for k, h in entry.terms.items()})
        return RewriteSystem(self.group, self.weights, corrupted=self.corrupted,
                             _kappa=kappa)


def word(letters, coeff=1):
    coeff = coeff if isinstance(coeff, HbarPoly) else HbarPoly.const(coeff)
    return (coeff, tuple(letters))


def normal_form(words, system):
    """Reduce a word (or a list of words, or an element) to normal form."""
    if isinstance(words, SRAElement):
        stack = words.to_words()
    elif isinstance(words, tuple) and len(words) == 2 and isinstance(words[0], HbarPoly):
        stack = [words]
    else:
        stack = list(words)
    G = system.group
    n = G.n
    result = {}
    stack = list(stack)
    while stack:
        coeff, letters = stack.pop()
        if coeff.is_zero():
            continue
        pos = kind = None
        for t in range(len(letters) - 1):
            a, b = letters[t], letters[t + 1]
            if a[0] == "g":
                kind = "gg" if b[0] == "g" else "gv"
                pos = t
                break
            if b[0] == "v" and a[1] > b[1]:
                kind, pos = "vv", t
                break
        if pos is None:
            exps = [0] * (2 * n)
            gidx = G.identity_index
            for kindl, val in letters:
                if kindl == "v":
                    exps[val] += 1
                else:
                    gidx = val
            key = (tuple(exps), gidx)
            acc = result.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc.is_zero():
                result.pop(key, None)
            else:
                result[key] = acc
            continue
        if kind == "gg":
            merged = G.mul(letters[pos][1], letters[pos + 1][1])
            nl = letters[:pos] + (("g", merged),) + letters[pos + 2:]
            if merged == G.identity_index:
                nl = letters[:pos] + letters[pos + 2:]
            stack.append((coeff, nl))
        elif kind == "gv":
            g = letters[pos][1]
            i = letters[pos + 1][1]
            for m, c in system.action[g][i]:
                nl = letters[:pos] + (("v", m), ("g", g)) + letters[pos + 2:]
                stack.append((coeff * c, nl))
        else:
            j = letters[pos][1]
            i = letters[pos + 1][1]
            stack.append((coeff, letters[:pos] + (("v", i), ("v", j)) + letters[pos + 2:]))
            for (exps, g), h in system.kappa[(i, j)].terms.items():
                mid = tuple(("v", m) for m, e in enumerate(exps) for _ in range(e))
                if g != G.identity_index:
                    mid = mid + (("g", g),)
                stack.append((coeff * h, letters[:pos] + mid + letters[pos + 2:]))
    return SRAElement(G, result)


def mul(x, y, system):
    """Product of two elements through the rewriting engine."""
    out = SRAElement.zero(system.group)
    for hx, lx in x.to_words():
        for hy, ly in y.to_words():
            out = out + normal_form((hx * hy, lx + ly), system)
    return out


def ad(x, y, system):
    return mul(x, y, system) - mul(y, x, system)


def ad_group(g, x, system):
    """Conjugation by a group element inside the algebra."""
    G = system.group
    left = SRAElement.group_atom(G, g)
    right = SRAElement.group_atom(G, G.inv(g))
    return mul(mul(left, x, system), right, system)


def specialize_hbar(x, value):
    """Evaluate hbar at a constant; a ring map onto the specialized system."""
    out = {}
    for key, h in x.terms.items():
        c = h.evaluate(value)
        if not c.is_zero():
            out[key] = HbarPoly.const(c)
    return SRAElement(x.group, out)


# -- confluence -------------------------------------------------------------------


def confluence_check(system):
    """Resolve every listed overlap both ways and report the verdicts.

    Overlaps: e_k e_j e_i with k > j > i, and g e_j e_i with j > i over all
    group elements.  The report carries one entry per pair; the system has
    the diamond property on these overlaps iff all entries resolve.
    """
    G = system.group
    n = G.n
    pairs = []
    for k, j, i in combinations(range(2 * n)[::-1], 3):
        lhs_letters = (("v", k), ("v", j), ("v", i))
        # reduce the left overlap first, then fully; then the right first.
        first = normal_form(_reduce_at(lhs_letters, 0, system), system)
        second = normal_form(_reduce_at(lhs_letters, 1, system), system)
        pairs.append({
            "kind": "vvv", "letters": [k, j, i],
            "resolves": first == second,
        })
    for g in range(G.order):
        for j, i in combinations(range(2 * n)[::-1], 2):
            letters = (("g", g), ("v", j), ("v", i))
            first = normal_form(_reduce_at(letters, 0, system), system)
            second = normal_form(_reduce_at(letters, 1, system), system)
            pairs.append({
                "kind": "gvv", "g": g, "letters": [j, i],
                "resolves": first == second,
            })
    return {
        "pairs": pairs,
        "all_resolve": all(p["resolves"] for p in pairs),
        "corrupted_table": system.corrupted,
    }


def _reduce_at(letters, pos, system):
    """One rewrite applied at a fixed position, as a list of words."""
    G = system.group
    a, b = letters[pos], letters[pos + 1]
    out = []
    one = HbarPoly.const(1)
    if a[0] == "g" and b[0] == "g":
        merged = G.mul(a[1], b[1])
        out.append((one, letters[:pos] + (("g", merged),) + letters[pos + 2:]))
    elif a[0] == "g":
        for m, c in system.action[a[1]][b[1]]:
            out.append((HbarPoly.const(c),
                        letters[:pos] + (("v", m), ("g", a[1])) + letters[pos + 2:]))
    else:
        j, i = a[1], b[1]
        assert j > i
        out.append((one, letters[:pos] + (("v", i), ("v", j)) + letters[pos + 2:]))
        for (exps, g), h in system.kappa[(i, j)].terms.items():
            mid = tuple(("v", m) for m, e in enumerate(exps) for _ in range(e))
            if g != G.identity_index:
                mid = mid + (("g", g),)
            out.append((h, letters[:pos] + mid + letters[pos + 2:]))
    return out


def normal_monomial_count(group, degree):
    """Number of normal monomials of total degree <= degree, by enumeration."""
    n = group.n
    count = 0
    for total in range(degree + 1):
        count += _compositions(total, 2 * n)
    return count * group.order


def _compositions(total, width):
    return comb(total + width - 1, width - 1)


# -- symmetrization and the hbar = 0 degeneration -----------------------------------


def symmetrized_product(args, system):
    """(1/k!) sum over permutations of the product, through normal forms."""
    if not args:
        return SRAElement.monomial(system.group, (0,) * (2 * system.group.n))
    k = len(args)
    total = SRAElement.zero(system.group)
    for perm in permutations(range(k)):
        prod = args[perm[0]]
        for t in perm[1:]:
            prod = mul(prod, args[t], system)
        total = total + prod
    return total.scale(Fraction(1, _factorial(k)))


def _factorial(k):
    out = 1
    for t in range(2, k + 1):
        out *= t
    return out


def section_element(system, exps, gidx=None):
    """The symmetrized monomial <e ... e> times g, the section of the
    projection onto the underlying smash product."""
    G = system.group
    gidx = G.identity_index if gidx is None else gidx
    key = (tuple(exps), gidx)
    got = system._section_cache.get(key)
    if got is not None:
        return got
    letters = [("v", m) for m, e in enumerate(exps) for _ in range(e)]
    if not letters:
        out = SRAElement.group_atom(G, gidx)
    else:
        gens = [SRAElement.generator(G, m) for _, m in letters]
        sym = symmetrized_product(gens, system)
        out = mul(sym, SRAElement.group_atom(G, gidx), system)
    system._section_cache[key] = out
    return out


def express_in_section_basis(x, system):
    """Coordinates of an element over the symmetrized-monomial basis.

    The section elements are unitriangular against the normal monomials by
    degree, so a top-down elimination terminates and is exact.
    """
    work = x
    out = {}
    while not work.is_zero():
        deg = work.degree()
        key = next(k for k in work.terms if sum(k[0]) == deg)
        coeff = work.terms[key]
        out[key] = out.get(key, HbarPoly()) + coeff
        work = work - section_element(system, key[0], key[1]).scale(coeff)
    return {k: h for k, h in out.items() if not h.is_zero()}


def berezin_expand(a, args, system, cap=6):
    """Difference of both sides of the symmetrization expansion.

    a . <a_1, ..., a_k> = <a, a_1, ..., a_k>
        + sum_{1 <= j <= k} (B_j / j!) sum_{i_1 < ... < i_j} sum_{tau}
          <ad a_{i_tau(j)} ... ad a_{i_tau(1)}(a), a_1, ..., (hats), ..., a_k>

    with Bernoulli numbers B_j.  Returns LHS - RHS, which must be zero.
    """
    k = len(args)
    total_degree = max(a.degree(), 0) + sum(max(x.degree(), 0) for x in args)
    if total_degree > cap:
        raise CapExceeded(f"total degree {total_degree} exceeds cap {cap}")
    lhs = mul(a, symmetrized_product(args, system), system)
    rhs = symmetrized_product([a] + list(args), system)
    for j in range(1, k + 1):
        bj = bernoulli(j)
        if bj == 0:
            continue
        factor = Fraction(bj, _factorial(j))
        for subset in combinations(range(k), j):
            for tau in permutations(subset):
                inner = a
                for idx in tau:
                    inner = ad(args[idx], inner, system)
                remaining = [args[t] for t in range(k) if t not in subset]
                rhs = rhs + symmetrized_product([inner] + remaining, system).scale(factor)
    return lhs - rhs


def hbar_zero_compare(system, degree_cap=4):
    """Check that the hbar = 0 specialization multiplies like the smash product.

    Each monomial m (x) g of the smash product corresponds to the
    symmetrized element <factors of m> g; products of all monomial pairs of
    total degree <= degree_cap are computed on both sides of this
    correspondence and compared exactly.
    """
    G = system.group
    n = G.n

    def phi_monomial(exps, gidx):
        return specialize_hbar(section_element(system, exps, gidx), 0)

    def phi_smash(x):
        out = SRAElement.zero(G)
        for g, w in x.terms.items():
            for exps, c in w.terms.items():
                out = out + phi_monomial(exps, g).scale(c)
        return out

    sys0 = system.specialized(0)
    mismatches = []
    checked = 0
    monos = [tuple(m) for d in range(degree_cap + 1) for m in _exps_of_degree(d, 2 * n)]
    for ea in monos:
        for eb in monos:
            if sum(ea) + sum(eb) > degree_cap:
                continue
            for ga in range(G.order):
                for gb in range(G.order):
                    left = SmashElement(G, {ga: WeylElement.monomial(n, ea, 1)})
                    right = SmashElement(G, {gb: WeylElement.monomial(n, eb, 1)})
                    smash_side = phi_smash(left * right)
                    sra_side = mul(specialize_hbar(section_element(system, ea, ga), 0),
                                   specialize_hbar(section_element(system, eb, gb), 0),
                                   sys0)
                    checked += 1
                    if smash_side != sra_side:
                        mismatches.append({"a": [list(ea), ga], "b": [list(eb), gb]})
    return {"pairs_checked": checked, "mismatches": mismatches,
            "ok": not mismatches}


def _exps_of_degree(total, width):
    if width == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for rest in _exps_of_degree(total - head, width - 1):
            yield (head,) + rest
