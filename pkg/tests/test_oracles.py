from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qflag.oracles import (Partition, box_partitions, compare_pieri, compare_projective, poincare_poly,
                           projective_oracle, quantum_pieri, schubert_dictionary, univariate_residue)
from qflag.presentation import all_flag_types
from qflag.ring import QuantumRing


def test_poincare_examples():
    assert poincare_poly([1, 2]) == [1, 1]
    assert poincare_poly([2, 4]) == [1, 1, 2, 1, 1]
    assert poincare_poly([1, 2, 3]) == [1, 2, 2, 1]


@pytest.mark.parametrize("f", [f for n in range(1, 7) for f in all_flag_types(n)], ids=str)
def test_poincare_totals(f):
    p = poincare_poly(f)
    assert sum(p) == f.rank
    assert len(p) - 1 == f.dim
    assert p == p[::-1]


def test_projective_closed_form():
    o = projective_oracle(3)
    assert o.reduce(5) == (1, 2)
    assert o.pairing(5, 0) == {1: 1}
    assert o.pairing(1, 1) == {0: 1}
    o2 = projective_oracle(2)
    assert o2.pairing(0, 1) == {0: 1} and o2.pairing(0, 0) == {}
    with pytest.raises(ValueError):
        projective_oracle(1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_engine_matches_projective_oracle(n):
    ok, msg = compare_projective(QuantumRing.from_flag([1, n]))
    assert ok, msg


def test_partition_validation():
    assert Partition([2, 1, 0]) == (2, 1)
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        quantum_pieri(2, 4, [3])


def test_box_partitions_count():
    from math import comb
    for k, n in [(1, 3), (2, 4), (2, 5), (3, 6)]:
        assert len(box_partitions(k, n)) == comb(n, k)


def test_pieri_examples():
    assert quantum_pieri(2, 4, [2, 1]) == {(Partition([2, 2]), 0): 1, (Partition([]), 1): 1}
    assert quantum_pieri(2, 4, [1]) == {(Partition([2]), 0): 1, (Partition([1, 1]), 0): 1}
    assert quantum_pieri(2, 4, [2, 2]) == {(Partition([1]), 1): 1}


def test_giambelli_images():
    ring = QuantumRing.from_flag([2, 4])
    d = schubert_dictionary(ring)
    assert str(d[Partition([1])]) == "c[1][1]"
    assert str(d[Partition([1, 1])]) == "c[1][1]^2 - c[1][2]"
    assert str(d[Partition([2, 2])]) == "c[1][2]^2"
    assert ring.element(d[Partition([1, 1])]) == ring.element("c[0][2]")


@pytest.mark.parametrize("k,n", [(2, 4), (1, 3), (1, 4), (1, 5), (2, 5), (3, 5), (3, 6)])
def test_engine_matches_quantum_pieri(k, n):
    ok, problems = compare_pieri(QuantumRing.from_flag([k, n]))
    assert ok, problems


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=1, max_size=4,
                unique=True), st.lists(st.integers(-5, 5), max_size=6))
def test_univariate_residue_matches_root_sum(roots, g):
    f = [Fraction(1)]
    for r in roots:
        f = [Fraction(0)] + f
        for i in range(len(f) - 1):
            f[i] -= r * f[i + 1]
    def ev(coeffs, x):
        return sum(c * x ** i for i, c in enumerate(coeffs))
    df = [i * c for i, c in enumerate(f)][1:]
    want = sum(ev(g, r) / ev(df, r) for r in roots) if g else 0
    assert univariate_residue(f, [Fraction(x) for x in g]) == want
