import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qflag.groebner import GBCache, ResourceLimitError, buchberger, normal_form, std_basis
from qflag.oracles import poincare_poly
from qflag.poly import Polynomial, VarRegistry, weighted_degree
from qflag.presentation import all_flag_types, make_flag, relations

SMALL = [f for n in range(1, 5) for f in all_flag_types(n)]


def _gb(dims, equivariant=False):
    pres = relations(make_flag(dims), equivariant)
    return pres, buchberger(pres.relations, pres.registry)


def test_p1_basis():
    pres, gb = _gb([1, 2])
    assert [str(g) for g in gb.generators] == ["c[0][1] + c[1][1]", "c[1][1]^2 - q[1]"]
    assert std_basis(gb).to_text() == ["1", "c[1][1]"]


def test_equivariant_p1_basis():
    pres, gb = _gb([1, 2], True)
    assert [str(g) for g in gb.generators] == ["c[0][1] + c[1][1] - C[1]",
                                               "c[1][1]^2 - c[1][1]*C[1] - q[1] + C[2]"]


def test_p2_cube_is_q():
    pres, gb = _gb([1, 3])
    p = Polynomial.variable(pres.registry, "c[1][1]")
    q = Polynomial.variable(pres.registry, "q[1]")
    assert normal_form(p ** 3 - q, gb) == 0


def test_gr24_products():
    pres, gb = _gb([2, 4])
    x = Polynomial.parse("c[0][2]*c[1][2]", pres.registry)
    assert str(normal_form(x, gb)) == "q[1]"
    basis = std_basis(gb)
    assert len(basis) == 6 and basis.degree_profile() == [1, 1, 2, 1, 1]


@pytest.mark.parametrize("f", SMALL, ids=str)
def test_structure(f):
    pres = relations(f)
    gb = buchberger(pres.relations, pres.registry)
    assert gb.is_groebner() and gb.is_reduced() and gb.params_free_leads
    for r in pres.relations:
        assert normal_form(r, gb) == 0
    assert std_basis(gb).degree_profile() == poincare_poly(f)
    for g in gb.generators:
        coeffs = list(g.terms.values())
        assert all(isinstance(c, int) for c in coeffs)
        assert g.lead_coeff() > 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(1, 3), (2, 4), (1, 2, 3), (1, 2, 4)]), st.integers(0, 10 ** 6))
def test_normal_form_properties(dims, seed):
    pres, gb = _gb(dims, equivariant=True)
    reg = pres.registry
    rng = random.Random(seed)
    chern = [reg.vars[i].name for i in reg.chern_indices()]
    params = [reg.vars[i].name for i in reg.param_indices()]

    def rand_poly(deg):
        terms = {}
        for _ in range(4):
            e = [0] * len(reg)
            for _ in range(deg):
                e[reg.index(rng.choice(chern))] += 1
            terms[tuple(e)] = rng.randint(-4, 4)
        return Polynomial(reg, terms)

    x = rand_poly(rng.randint(0, 4))
    nf = normal_form(x, gb)
    assert normal_form(nf, gb) == nf
    assert nf == gb.normal_form_direct(x)
    for r in pres.relations:
        assert normal_form(x * r, gb) == 0
    s = Polynomial.variable(reg, rng.choice(params))
    assert normal_form(s * x, gb) == s * nf
    if weighted_degree(x) not in ("zero", "inhomogeneous") and nf:
        assert weighted_degree(nf) == weighted_degree(x)
    for e in nf.terms:
        assert not any(all(a >= b for a, b in zip(e, lead)) for lead in gb.leads)


def test_rank_f12345():
    pres, gb = _gb([1, 2, 3, 4, 5])
    assert len(std_basis(gb)) == 120


def test_resource_cap():
    pres = relations(make_flag([1, 2, 3, 4]))
    with pytest.raises(ResourceLimitError):
        buchberger(pres.relations, pres.registry, max_generators=2)


def test_generic_ideal():
    reg = VarRegistry.generic(["x", "y"])
    gb = buchberger([Polynomial.parse("x^2 - y^2", reg), Polynomial.parse("x*y", reg)], reg)
    assert gb.is_groebner()
    assert normal_form(Polynomial.parse("x^3", reg), gb) == 0


def test_cache_round_trip(tmp_path):
    cache = GBCache(tmp_path)
    pres, gb = _gb([1, 2, 3], True)
    key = GBCache.make_key((1, 2, 3), True)
    assert cache.load(key, pres.registry, pres.relations, 6) is None
    cache.store(key, gb)
    loaded = cache.load(key, pres.registry, pres.relations, 6)
    assert loaded is not None and loaded.generators == gb.generators
    assert (cache.hits, cache.misses) == (1, 1)


def test_cache_rejects_tampered_entry(tmp_path):
    cache = GBCache(tmp_path)
    pres, gb = _gb([1, 3])
    key = GBCache.make_key((1, 3), False)
    cache.store(key, gb)
    path = next(tmp_path.glob("gb-*.json"))
    data = json.loads(path.read_text())
    data["generators"] = data["generators"][:-1]
    path.write_text(json.dumps(data))
    assert cache.load(key, pres.registry, pres.relations, 3) is None
    assert cache.misses == 1


def test_cache_key_distinguishes_equivariance(tmp_path):
    cache = GBCache(tmp_path)
    assert cache._path(GBCache.make_key((1, 2), True)) != cache._path(GBCache.make_key((1, 2), False))
