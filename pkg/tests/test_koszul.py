import json
import random
from fractions import Fraction

import pytest

from conftest import minus_id_index, minus_identity
from sympref.cyclo import Cyclotomic, root_of_unity
from sympref.koszul import (DegreeCapExceeded, KoszulCochain, NotACocycle,
                            WindowTooSmall, WrongSummand, bar_subcomplex_check,
                            certificate_from_json, certificate_to_json,
                            cochain_from_json, cochain_to_json, contract,
                            delta_prime, delta_sigma, homotopy_step,
                            noncoboundary_witness, omega_cochain, pi_group,
                            random_cochain, split, t1_op, t2_op,
                            truncated_cohomology_dims, xi_transform, _h1)
from sympref.sympgroup import SympMatrix, sigma_invariants
from sympref.weyl import WeylElement


@pytest.fixture(scope="module")
def inv_parity():
    return sigma_invariants(minus_identity(1))


@pytest.fixture(scope="module")
def inv_id():
    return sigma_invariants(SympMatrix.identity(1))


def const_cochain(inv, value=1):
    return KoszulCochain(inv, 0, {(): WeylElement.scalar(inv.n, value)})


def test_delta_sigma_parity_on_constants(inv_parity):
    # alpha = -1 kills the derivative terms, leaving 2 m_P and 2 m_Q.
    image = delta_sigma(const_cochain(inv_parity))
    expect = KoszulCochain(inv_parity, 1, {
        (0,): WeylElement.variable(1, 0).scale(2),
        (1,): WeylElement.variable(1, 1).scale(2),
    })
    assert image == expect


def test_delta_sigma_identity_is_star_bracket(inv_id):
    # For the untwisted case the coefficient operators are the star brackets
    # with the basis vectors.
    rng = random.Random(2)
    for _ in range(10):
        c = random_cochain(inv_id, 0, rng, max_degree=4)
        a = c.values.get((), WeylElement.zero(1))
        image = delta_sigma(c)
        for i in range(2):
            z = WeylElement.variable(1, i)
            expect = z.star(a) - a.star(z)
            got = image.values.get((i,), WeylElement.zero(1))
            assert got == expect


def test_differentials_square_to_zero(z4, pm1_sp4):
    rng = random.Random(3)
    for g in (z4, pm1_sp4):
        for cls in g.classes:
            inv = g.invariants(cls.rep)
            for k in range(0, 2 * g.n):
                c = random_cochain(inv, k, rng)
                assert delta_sigma(delta_sigma(c)).is_zero()
                assert delta_prime(delta_prime(c)).is_zero()


def test_xi_fixes_constants(inv_parity, inv_id):
    for inv in (inv_parity, inv_id):
        c = const_cochain(inv, Fraction(3, 2))
        assert xi_transform(c) == c
        assert xi_transform(c, inverse=True) == c


def test_xi_parity_scales_by_half(inv_parity):
    # beta = 0 for alpha = -1, so theta is the identity and A halves both
    # moved variables.
    c = KoszulCochain(inv_parity, 0, {(): WeylElement.variable(1, 0)})
    got = xi_transform(c)
    assert got == KoszulCochain(inv_parity, 0,
                                {(): WeylElement.variable(1, 0).scale(Fraction(1, 2))})


def test_xi_round_trip(z4):
    rng = random.Random(4)
    inv = z4.invariants(z4.classes[1].rep)
    for k in range(0, 3):
        c = random_cochain(inv, k, rng)
        assert xi_transform(xi_transform(c), inverse=True) == c
        assert xi_transform(xi_transform(c, inverse=True)) == c


def test_conjugation_identity(z4, z6, pm1_sp4):
    rng = random.Random(5)
    for g in (z4, z6, pm1_sp4):
        for cls in g.classes:
            inv = g.invariants(cls.rep)
            for k in range(0, 2 * g.n + 1):
                for _ in range(4):
                    c = random_cochain(inv, k, rng)
                    lhs = xi_transform(delta_sigma(xi_transform(c, inverse=True)))
                    assert lhs == delta_prime(c)


def test_delta_prime_kills_omega(inv_parity, z4, pm1_sp4):
    assert delta_prime(omega_cochain(inv_parity)).is_zero()
    for g in (z4, pm1_sp4):
        for cls in g.classes:
            inv = g.invariants(cls.rep)
            assert delta_prime(omega_cochain(inv)).is_zero()


def test_delta_prime_on_constants(inv_parity):
    image = delta_prime(const_cochain(inv_parity))
    expect = KoszulCochain(inv_parity, 1, {
        (0,): WeylElement.variable(1, 0),
        (1,): WeylElement.variable(1, 1),
    })
    assert image == expect


def test_split_examples(inv_parity):
    om = omega_cochain(inv_parity)
    top, h1p, h2p = split(om)
    assert top == om and h1p.is_zero() and h2p.is_zero()
    moved = KoszulCochain(inv_parity, 2, {
        (0, 1): WeylElement.variable(1, 0)})
    top, h1p, h2p = split(moved)
    assert top.is_zero() and h1p == moved and h2p.is_zero()


def test_split_fixed_block(pm1_sp4):
    # A wedge factor on the fixed variables lands in the second homotopy part.
    ident = next(i for i in range(pm1_sp4.order)
                 if pm1_sp4.elements[i].is_identity())
    inv = pm1_sp4.invariants(ident)   # k_sigma = 0: everything is fixed
    c = KoszulCochain(inv, 1, {(2,): WeylElement.one(2)})
    top, h1p, h2p = split(c)
    assert top.is_zero() and h1p.is_zero() and h2p == c


def test_split_is_direct_sum(z6):
    rng = random.Random(6)
    for cls in z6.classes:
        inv = z6.invariants(cls.rep)
        for k in range(0, 3):
            c = random_cochain(inv, k, rng)
            top, h1p, h2p = split(c)
            assert top + h1p + h2p == c


def test_homotopy_identities(z4, pm1_sp4):
    rng = random.Random(7)
    for g in (z4, pm1_sp4):
        for cls in g.classes:
            inv = g.invariants(cls.rep)
            for k in range(0, 2 * g.n + 1):
                for _ in range(5):
                    c = random_cochain(inv, k, rng, max_degree=4)
                    _, h1p, h2p = split(c)
                    if not h2p.is_zero():
                        got = homotopy_step("h2", delta_prime(h2p)) \
                            + delta_prime(homotopy_step("h2", h2p))
                        assert got == t2_op(h2p)
                    if not h1p.is_zero():
                        d1 = lambda x: delta_prime(x, moved_only=True)
                        got = homotopy_step("h1", d1(h1p)) \
                            + d1(homotopy_step("h1", h1p))
                        assert got == t1_op(h1p)


def test_homotopy_top_form_is_killed(inv_parity):
    om = omega_cochain(inv_parity)
    assert _h1(om).is_zero()
    assert t1_op(om).is_zero()


def test_wrong_summand_rejected(inv_parity):
    om = omega_cochain(inv_parity)
    with pytest.raises(WrongSummand):
        homotopy_step("h1", om)
    moved = KoszulCochain(inv_parity, 1, {(0,): WeylElement.one(1)})
    with pytest.raises(WrongSummand):
        homotopy_step("h2", moved)


def test_contract_omega(inv_parity):
    cert = contract(omega_cochain(inv_parity))
    assert cert.s.is_one()
    assert cert.b.is_zero()
    assert cert.verified


def test_contract_coboundaries(z4, inv_parity):
    rng = random.Random(8)
    invs = [inv_parity] + [z4.invariants(c.rep) for c in z4.classes]
    for inv in invs:
        for k in range(1, 2 * inv.n + 1):
            for _ in range(4):
                b0 = random_cochain(inv, k - 1, rng, max_degree=3)
                c = delta_prime(b0)
                if c.is_zero():
                    continue
                cert = contract(c)
                assert cert.verified
                assert delta_prime(cert.b) == c
                if k == 2 * inv.k_sigma:
                    assert cert.s.is_zero()
                else:
                    assert cert.s is None


def test_contract_certifies_trivial_h1(inv_parity):
    # Degree 1 cocycles for the parity element are all coboundaries.
    rng = random.Random(9)
    for _ in range(10):
        b0 = random_cochain(inv_parity, 0, rng)
        c = delta_prime(b0)
        if c.is_zero():
            continue
        cert = contract(c)
        assert cert.s is None and cert.verified


def test_contract_rejects_non_cocycle(inv_parity):
    c = KoszulCochain(inv_parity, 0, {(): WeylElement.variable(1, 0)})
    assert not delta_prime(c).is_zero()
    with pytest.raises(NotACocycle):
        contract(c)
    with pytest.raises(NotACocycle):
        noncoboundary_witness(c)


def test_witness(inv_parity):
    rng = random.Random(10)
    om = omega_cochain(inv_parity)
    assert noncoboundary_witness(om)
    for _ in range(6):
        b0 = random_cochain(inv_parity, 1, rng)
        cob = delta_prime(b0)
        if cob.is_zero():
            continue
        assert not noncoboundary_witness(cob)
        assert noncoboundary_witness(om + cob)


def test_centralizer_action_commutes_with_differential(z4, pm1_sp4):
    rng = random.Random(11)
    for g in (z4, pm1_sp4):
        for cls in g.classes:
            inv = g.invariants(cls.rep)
            for s_idx in cls.centralizer:
                s = g.elements[s_idx]
                for k in range(0, 2):
                    c = random_cochain(inv, k, rng)
                    assert pi_group(inv, s, delta_sigma(c)) == \
                        delta_sigma(pi_group(inv, s, c))


def test_pi_group_is_action(z4):
    rng = random.Random(12)
    inv = z4.invariants(z4.classes[1].rep)
    c = random_cochain(inv, 1, rng)
    s = z4.elements[z4.classes[2].rep]
    t = z4.elements[z4.classes[3].rep]
    assert pi_group(inv, s * t, c) == pi_group(inv, s, pi_group(inv, t, c))


def test_bar_subcomplex_degree_one():
    # d(1 (x) Z_i (x) 1) = Z_i (x) 1 - 1 (x) Z_i on both sides by definition.
    assert bar_subcomplex_check(1, 1, coeff_degree=1)


@pytest.mark.parametrize("n,k", [(1, 2), (1, 3), (2, 2)])
def test_bar_subcomplex_small(n, k):
    assert bar_subcomplex_check(n, k, coeff_degree=1)


def test_bar_cap():
    with pytest.raises(DegreeCapExceeded):
        bar_subcomplex_check(1, 4)
    assert bar_subcomplex_check(1, 4, coeff_degree=1, allow_degree_4=True)


def test_truncated_dims_parity(inv_parity):
    table = truncated_cohomology_dims(inv_parity, range(0, 3), 6)
    assert table["dims"] == {0: 0, 1: 0, 2: 1}


def test_truncated_dims_identity(inv_id):
    table = truncated_cohomology_dims(inv_id, range(0, 3), 6)
    assert table["dims"] == {0: 1, 1: 0, 2: 0}


def test_truncated_dims_rotation(z4):
    inv = z4.invariants(z4.classes[1].rep)
    table = truncated_cohomology_dims(inv, range(0, 3), 6)
    assert table["dims"] == {0: 0, 1: 0, 2: 1}


def test_truncated_dims_window_guard(inv_parity):
    with pytest.raises(WindowTooSmall):
        truncated_cohomology_dims(inv_parity, range(0, 3), 1)


def test_certificate_json_round_trip(inv_parity):
    rng = random.Random(13)
    om = omega_cochain(inv_parity)
    mixed = om.scale(Fraction(5, 3)) + delta_prime(random_cochain(inv_parity, 1, rng))
    cert = contract(mixed)
    assert cert.s == Cyclotomic.rational(Fraction(5, 3))
    blob = json.dumps(certificate_to_json(cert, mixed, {"element": "parity"}),
                      sort_keys=True)
    cert2, cocycle2 = certificate_from_json(json.loads(blob), inv_parity)
    assert cert2.verified
    assert cocycle2 == mixed
    assert cert2.s == cert.s


def test_cochain_json_round_trip(z4):
    rng = random.Random(14)
    inv = z4.invariants(z4.classes[1].rep)
    c = random_cochain(inv, 2, rng)
    c = c.map_values(lambda w: w.scale(root_of_unity(4, 1)))
    blob = cochain_to_json(c)
    assert cochain_from_json(json.loads(json.dumps(blob)), inv) == c
