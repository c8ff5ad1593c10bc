import random

import pytest

from qflag.equivariant import (WeightError, embed_factor, induction_check, point_ring, product_ring,
                               specialize_params, torus_restriction, transport)
from qflag.ring import QuantumRing


@pytest.fixture(scope="module")
def eq_p1():
    return QuantumRing.from_flag([1, 2], equivariant=True)


def test_all_c_zero_gives_plain_relations(eq_p1):
    c0 = specialize_params(eq_p1, {"C[1]": 0, "C[2]": 0})
    assert [str(r) for r in c0.relations] == ["c[0][1] + c[1][1]", "c[0][1]*c[1][1] + q[1]"]
    assert c0.registry == QuantumRing.from_flag([1, 2]).registry


def test_q_zero_gives_classical_equivariant(eq_p1):
    q0 = specialize_params(eq_p1, {"q[1]": 0})
    assert [str(r) for r in q0.relations] == ["c[0][1] + c[1][1] - C[1]", "c[0][1]*c[1][1] - C[2]"]
    # classical equivariant P^1: <1, b> = 1, <b, b> = C[1]
    b = q0.element("c[1][1]")
    assert q0.pairing(1, b) == 1
    assert q0.pairing(b, b) == q0.parse("C[1]")


def test_weight_violations(eq_p1):
    with pytest.raises(WeightError):
        specialize_params(eq_p1, {"C[1]": 3})
    with pytest.raises(WeightError):
        specialize_params(eq_p1, {"C[2]": "q[1] + C[1]"})
    with pytest.raises(ValueError):
        specialize_params(eq_p1, {"c[0][1]": 0})
    with pytest.raises(KeyError):
        specialize_params(eq_p1, {"C[7]": 0})


def test_weight_respecting_polynomial_value(eq_p1):
    s = specialize_params(eq_p1, {"C[2]": "C[1]^2"})
    assert str(s.relations[1]) == "c[0][1]*c[1][1] + q[1] - C[1]^2"


def test_torus_restriction_p1(eq_p1):
    tor = torus_restriction(eq_p1)
    assert [str(r) for r in tor.relations] == ["c[0][1] + c[1][1] - t[1] - t[2]",
                                               "c[0][1]*c[1][1] + q[1] - t[1]*t[2]"]
    a = tor.element("c[0][1]")
    assert tor.pairing(a, a) == -tor.parse("t[1] + t[2]")


@pytest.mark.parametrize("dims", [(1, 3), (2, 4), (1, 2, 3)])
def test_torus_restriction_transports_structure_constants(dims):
    eq = QuantumRing.from_flag(dims, equivariant=True)
    tor = torus_restriction(eq)
    rng = random.Random(1)
    for _ in range(10):
        a, b = eq.random_homogeneous(rng), eq.random_homogeneous(rng)
        assert transport(a * b, tor) == transport(a, tor) * transport(b, tor)
        assert tor.pairing(transport(a, tor), transport(b, tor)) == \
            eq.pairing(a, b).substitute(tor.substitution, tor.registry)


def test_specialization_commutes_with_products():
    eq = QuantumRing.from_flag([2, 4], equivariant=True)
    plain = QuantumRing.from_flag([2, 4])
    c0 = specialize_params(eq, {f"C[{m}]": 0 for m in range(1, 5)})
    rng = random.Random(2)
    for _ in range(10):
        a, b = eq.random_homogeneous(rng), eq.random_homogeneous(rng)
        lhs = transport(a * b, c0)
        rhs = plain.element(transport(a, c0).poly.embed(plain.registry)) * \
            plain.element(transport(b, c0).poly.embed(plain.registry))
        assert lhs.poly.embed(plain.registry) == rhs.poly


def test_equivariant_pairing_at_zero_matches_plain():
    eq = QuantumRing.from_flag([1, 2, 3], equivariant=True)
    plain = QuantumRing.from_flag([1, 2, 3])
    zero = {f"C[{m}]": 0 for m in range(1, 4)}
    got = [[v.evaluate(zero).embed(plain.registry) for v in row] for row in eq.pairing_table().matrix]
    assert got == plain.pairing_table().matrix


def test_product_p1_squared():
    p1 = QuantumRing.from_flag([1, 2])
    prod = product_ring(p1, p1)
    assert prod.rank == 4
    b1 = embed_factor(prod, 0, "c[1][1]")
    b2 = embed_factor(prod, 1, "c[1][1]")
    assert str(b1 * b2) == "X1.c[1][1]*X2.c[1][1]"
    assert prod.pairing(b1 * b2, 1) == 1
    assert prod.element("X1.p[1]") == b1


def test_product_with_point_is_isomorphic():
    p2 = QuantumRing.from_flag([1, 3])
    prod = product_ring(p2, point_ring())
    assert prod.rank == p2.rank
    table = prod.pairing_table().matrix
    for i, mi in enumerate(p2.basis.polynomials()):
        for j, mj in enumerate(p2.basis.polynomials()):
            got = prod.pairing(embed_factor(prod, 0, mi), embed_factor(prod, 0, mj))
            assert got == embed_factor(prod, 0, p2.pairing(mi, mj)).poly
    assert len(table) == 3


def test_equivariant_product():
    e = QuantumRing.from_flag([1, 2], equivariant=True)
    prod = product_ring(e, e)
    a1 = embed_factor(prod, 0, "c[0][1]")
    a2 = embed_factor(prod, 1, "c[0][1]")
    assert prod.pairing(a1 * a2, a1 * a2) == prod.parse("X1.C[1]*X2.C[1]")


def test_induction_reports():
    rep = induction_check([1, 2, 3], 1)
    assert rep.ok
    assert rep.base == "x + c[0][1]"
    assert rep.fiber == "x^2 + (c[1][1] + c[2][1])*x + (c[1][1]*c[2][1] + q[2])"
    rep = induction_check([1, 2], 1)
    assert rep.ok and rep.base == "x + c[0][1]" and rep.fiber == "x + c[1][1]"
    rep = induction_check([2, 4], 1)
    assert rep.ok and rep.base == "x^2 + c[0][1]*x + c[0][2]"
    with pytest.raises(ValueError):
        induction_check([1, 2], 2)
