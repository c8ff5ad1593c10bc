import pytest

from qflag.poly import Polynomial, weighted_degree
from qflag.presentation import (all_flag_types, continuant, divisor_classes, induction_split_check,
                                make_flag, relations, split_factors)


@pytest.mark.parametrize("bad", [(), (0, 2), (2, 2), (3, 1), (1.5, 3)])
def test_make_flag_rejects(bad):
    with pytest.raises(ValueError):
        make_flag(bad)


def test_derived_data():
    f = make_flag([1, 3, 6])
    assert f.blocks == (1, 2, 3)
    assert f.n == 6 and f.l == 2
    assert f.dim == 1 * 2 + 1 * 3 + 2 * 3
    assert f.rank == 60
    assert f.quantum_weight(1) == 3 and f.quantum_weight(2) == 5
    assert f.label() == "F_{1,3,6}"


def test_all_flag_types_counts_compositions():
    for n in range(1, 7):
        assert len(all_flag_types(n)) == 2 ** (n - 1)


def test_point_has_no_quantum_parameters():
    pres = relations(make_flag([3]))
    assert not pres.registry.quantum_indices()
    assert [str(r) for r in pres.relations] == ["c[0][1]", "c[0][2]", "c[0][3]"]


def test_p1_relations():
    pres = relations(make_flag([1, 2]))
    assert [str(r) for r in pres.relations] == ["c[0][1] + c[1][1]", "c[0][1]*c[1][1] + q[1]"]
    assert weighted_degree(pres.relations[1]) == 2


def test_p2_relations():
    pres = relations(make_flag([1, 3]))
    assert [str(r) for r in pres.relations] == [
        "c[0][1] + c[1][1]", "c[0][1]*c[1][1] + c[1][2]", "c[0][1]*c[1][2] + q[1]"]


def test_f123_sigmas_by_hand():
    pres = relations(make_flag([1, 2, 3]))
    parse = lambda s: Polynomial.parse(s, pres.registry)
    assert pres.sigmas == (
        parse("c[0][1] + c[1][1] + c[2][1]"),
        parse("c[0][1]*c[1][1] + c[0][1]*c[2][1] + c[1][1]*c[2][1] + q[1] + q[2]"),
        parse("c[0][1]*c[1][1]*c[2][1] + c[0][1]*q[2] + c[2][1]*q[1]"),
    )


def test_gr24_top_relation():
    pres = relations(make_flag([2, 4]))
    assert str(pres.relations[3]) == "c[0][2]*c[1][2] - q[1]"


@pytest.mark.parametrize("f", [f for n in range(1, 6) for f in all_flag_types(n)], ids=str)
def test_presentation_invariants(f):
    pres = relations(f)
    P, Q = continuant(f, pres.registry)
    assert P.degree == f.n and P.is_monic()
    assert Q.degree == f.n - f.dims[0]
    for m, s in enumerate(pres.sigmas, start=1):
        assert weighted_degree(s) == m


def test_equivariant_shift():
    pres = relations(make_flag([1, 2]), equivariant=True)
    assert [str(r) for r in pres.relations] == ["c[0][1] + c[1][1] - C[1]", "c[0][1]*c[1][1] + q[1] - C[2]"]


def test_divisor_classes():
    f = make_flag([1, 2, 3])
    assert [str(p) for p in divisor_classes(f)] == ["c[1][1] + c[2][1]", "c[2][1]"]


def test_split_factors_f123():
    f = make_flag([1, 2, 3])
    base, fiber = split_factors(f, 1)
    assert base.to_text() == "x + c[0][1]"
    assert fiber.to_text() == "x^2 + (c[1][1] + c[2][1])*x + (c[1][1]*c[2][1] + q[2])"
    with pytest.raises(ValueError):
        split_factors(f, 3)


@pytest.mark.parametrize("f", [f for n in range(2, 6) for f in all_flag_types(n) if f.l >= 1], ids=str)
def test_split_check_every_j(f):
    assert all(induction_split_check(f, j) for j in range(1, f.l + 1))


def test_presentation_json_is_plain_data():
    import json
    data = relations(make_flag([2, 4])).to_json()
    assert json.loads(json.dumps(data)) == data
    assert data["dim"] == 4
