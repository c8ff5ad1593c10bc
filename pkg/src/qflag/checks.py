"""Verification suite shared by the ``verify`` subcommand and the test-suite.

Each check returns a :class:`CheckResult`; none of them raise on a mismatch.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .equivariant import (embed_factor, induction_check, product_ring, specialize_params,
                          torus_restriction, transport)
from .oracles import (Partition, classical_relations, compare_pieri, compare_projective,
                      poincare_poly, schubert_dictionary, univariate_residue)
from .poly import Polynomial, coeff_extract, weighted_degree
from .presentation import FlagType, all_flag_types, make_flag, quantum_name, relations
from .ring import QuantumRing

__all__ = ["CheckResult", "CHECKS", "run_checks"] + [
    "check_classical_limit", "check_projective", "check_enumerative", "check_grassmannian",
    "check_toda", "check_grading", "check_rank", "check_pairing", "check_equivariant",
    "check_equivariant_p1", "check_lemma_rules",
]


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        # timings stay out of the report so that output is reproducible
        return {"name": self.name, "ok": self.ok, "details": self.details}


def _timed(name: str, fn: Callable[[CheckResult], None]) -> CheckResult:
    res = CheckResult(name, True)
    t0 = time.perf_counter()
    fn(res)
    res.seconds = time.perf_counter() - t0
    return res


def _fail(res: CheckResult, msg: str) -> None:
    res.ok = False
    res.details.append(msg)


def _flags(max_n: int, min_n: int = 1) -> list[FlagType]:
    return [f for n in range(min_n, max_n + 1) for f in all_flag_types(n)]


def _quantum_zero(ring_or_pres, registry=None) -> dict:
    reg = registry or ring_or_pres.registry
    return {reg.vars[i].name: 0 for i in reg.quantum_indices()}


def check_classical_limit(max_n: int = 5) -> CheckResult:
    """Relations at q = 0 equal the coefficients of ``P_0...P_l - x^n``."""
    def body(res):
        for f in _flags(max_n):
            t0 = time.perf_counter()
            pres = relations(f)
            at_zero = [r.evaluate(_quantum_zero(pres)) for r in pres.relations]
            creg, crels = classical_relations(f)
            want = [r.embed(pres.registry) for r in crels]
            if at_zero != want:
                _fail(res, f"{f.label()}: {at_zero} != {want}")
            res.timings[f.label()] = time.perf_counter() - t0
    return _timed("classical-limit", body)


def check_projective(ns: Sequence[int] = (2, 3, 4, 5)) -> CheckResult:
    def body(res):
        for n in ns:
            t0 = time.perf_counter()
            ok, msg = compare_projective(QuantumRing.from_flag([1, n]))
            if not ok:
                _fail(res, f"P^{n - 1}: {msg}")
            res.timings[f"F_{{1,{n}}}"] = time.perf_counter() - t0
    return _timed("projective-spaces", body)


def check_enumerative() -> CheckResult:
    def body(res):
        ring = QuantumRing.from_flag([1, 3])
        p = ring.element("p[1]")
        cases = [
            ("one line through two points", ring.gw_3point(p * p, p * p, p, 1).value, 1),
            ("five lines, degree 1", ring.divisor_count(["p[1]"] * 5, 1).value, 1),
            ("eight lines, degree 2", ring.divisor_count(["p[1]"] * 8, 2).value, 1),
        ]
        for label, got, want in cases:
            if got != want:
                _fail(res, f"{label}: got {got}, expected {want}")
    return _timed("enumerative-P2", body)


def check_grassmannian() -> CheckResult:
    def body(res):
        ring = QuantumRing.from_flag([2, 4])
        ok, problems = compare_pieri(ring)
        if not ok:
            for p in problems:
                _fail(res, p)
        sigma = schubert_dictionary(ring)
        s2 = ring.element(sigma[Partition([2])])
        s11 = ring.element(sigma[Partition([1, 1])])
        q = ring.element("q[1]")
        if s2 * s11 != q:
            _fail(res, f"σ2*σ11 = {s2 * s11}, expected q[1]")
        s1 = ring.element(sigma[Partition([1])])
        qpart = coeff_extract((s1 ** 4).poly, (1,))
        top = ring.coords(qpart)[ring.basis.index(ring.registry.zero_exp())]
        if top != 2:
            _fail(res, f"coefficient of q*σ0 in σ1^4 is {top}, expected 2")
    return _timed("grassmannian-Gr(2,4)", body)


def check_toda() -> CheckResult:
    def body(res):
        pres = relations(make_flag([1, 2, 3]))
        parse = lambda s: Polynomial.parse(s, pres.registry)
        a, b, c = "c[0][1]", "c[1][1]", "c[2][1]"
        want = [
            parse(f"{a} + {b} + {c}"),
            parse(f"{a}*{b} + {a}*{c} + {b}*{c} + q[1] + q[2]"),
            parse(f"{a}*{b}*{c} + {a}*q[2] + {c}*q[1]"),
        ]
        if list(pres.sigmas) != want:
            _fail(res, f"Σ = {[str(s) for s in pres.sigmas]}")
        rank = QuantumRing.from_flag([1, 2, 3]).rank
        if rank != 6:
            _fail(res, f"rank {rank}, expected 6")
    return _timed("complete-flags-F123", body)


def check_grading(max_n: int = 6) -> CheckResult:
    def body(res):
        for f in _flags(max_n):
            pres = relations(f)
            for m, s in enumerate(pres.sigmas, start=1):
                if weighted_degree(s) != m:
                    _fail(res, f"{f.label()}: Σ_{m} has degree {weighted_degree(s)}")
            for i in range(1, f.l + 1):
                w = pres.registry.var(quantum_name(i)).weight
                if w != f.blocks[i - 1] + f.blocks[i]:
                    _fail(res, f"{f.label()}: weight of q[{i}] is {w}")
    return _timed("grading", body)


def check_rank(max_n: int = 5, extra: Sequence[Sequence[int]] = ((1, 2, 3, 4),)) -> CheckResult:
    def body(res):
        flags = _flags(max_n) + [make_flag(d) for d in extra]
        seen = set()
        for f in flags:
            if f.dims in seen:
                continue
            seen.add(f.dims)
            ring = QuantumRing.from_flag(f)
            if ring.rank != f.rank:
                _fail(res, f"{f.label()}: rank {ring.rank}, expected {f.rank}")
            if ring.basis.degree_profile() != poincare_poly(f):
                _fail(res, f"{f.label()}: profile {ring.basis.degree_profile()} vs {poincare_poly(f)}")
    return _timed("rank-and-freeness", body)


def classical_ring(f: FlagType) -> QuantumRing:
    reg, rels = classical_relations(f)
    return QuantumRing(reg, rels, label=f.label() + " (classical)", flag=f)


def _q_zero_table_matches(ring: QuantumRing) -> str | None:
    table = ring.pairing_table()
    zero = _quantum_zero(ring)
    cring = classical_ring(ring.flag)
    ctable = cring.pairing_table()
    names = ring.registry.names
    for a, ma in enumerate(cring.basis.monomials):
        for b, mb in enumerate(cring.basis.monomials):
            ia = ring.basis.index(_move_exp(ma, cring.registry.names, names))
            ib = ring.basis.index(_move_exp(mb, cring.registry.names, names))
            got = table.matrix[ia][ib].evaluate(zero)
            want = ctable.matrix[a][b].embed(ring.registry)
            if got != want:
                return f"q=0 entry ({a},{b}) = {got}, classical {want}"
    if ring.rank != cring.rank:
        return "classical rank differs"
    return None


def _move_exp(exp, src_names, dst_names):
    out = [0] * len(dst_names)
    pos = {n: i for i, n in enumerate(dst_names)}
    for n, k in zip(src_names, exp):
        out[pos[n]] = k
    return tuple(out)


def check_pairing(max_n: int = 4, trials: int = 100, seed: int = 0) -> CheckResult:
    def body(res):
        for f in _flags(max_n):
            t0 = time.perf_counter()
            ring = QuantumRing.from_flag(f)
            table = ring.pairing_table()
            label = f.label()
            if not table.is_symmetric():
                _fail(res, f"{label}: pairing not symmetric")
            if not table.is_homogeneous():
                _fail(res, f"{label}: pairing not homogeneous")
            if not table.is_nondegenerate(seed):
                _fail(res, f"{label}: pairing degenerate")
            msg = _q_zero_table_matches(ring)
            if msg:
                _fail(res, f"{label}: {msg}")
            if not ring.frobenius_check(trials, seed):
                _fail(res, f"{label}: Frobenius property fails")
            if ring.trace(ring.one()) != ring.rank:
                _fail(res, f"{label}: trace of identity is not the rank")
            res.timings[label] = time.perf_counter() - t0
    return _timed("residue-pairing", body)


EQUIVARIANT_CASES = ((1, 2), (1, 3), (2, 4), (1, 2, 3))


def _param_zero(ring: QuantumRing, kind: str) -> dict:
    return {v.name: 0 for v in ring.registry.vars if v.kind == kind}


def check_equivariant(cases: Sequence[Sequence[int]] = EQUIVARIANT_CASES) -> CheckResult:
    """C -> 0 recovers the plain context; q -> 0 gives the classical equivariant relations."""
    def body(res):
        for dims in cases:
            f = make_flag(dims)
            eq = QuantumRing.from_flag(f, equivariant=True)
            plain = QuantumRing.from_flag(f)
            label = f.label()
            c0 = specialize_params(eq, _param_zero(eq, "equivariant"))
            if c0.registry != plain.registry or c0.relations != plain.relations:
                _fail(res, f"{label}: C=0 relations differ from the plain presentation")
                continue
            if c0.gb.generators != plain.gb.generators:
                _fail(res, f"{label}: C=0 Gröbner basis differs")
            if c0.pairing_table().matrix != plain.pairing_table().matrix:
                _fail(res, f"{label}: C=0 pairing differs")
            etable = eq.pairing_table()
            czero = _param_zero(eq, "equivariant")
            if [[v.evaluate(czero).embed(plain.registry) for v in row] for row in etable.matrix] \
                    != plain.pairing_table().matrix:
                _fail(res, f"{label}: equivariant pairing at C=0 differs")
            if not etable.is_homogeneous() or not etable.is_symmetric() or not etable.is_nondegenerate():
                _fail(res, f"{label}: equivariant pairing fails symmetry/homogeneity/nondegeneracy")
            q0 = specialize_params(eq, _param_zero(eq, "quantum"))
            creg, crels = classical_relations(f)
            want = [r.embed(q0.registry) - Polynomial.variable(q0.registry, f"C[{m}]")
                    for m, r in enumerate(crels, start=1)]
            if list(q0.relations) != want:
                _fail(res, f"{label}: q=0 relations {[str(r) for r in q0.relations]}")
    return _timed("equivariant-specializations", body)


def check_equivariant_p1() -> CheckResult:
    """Equivariant P^1 pairing against the univariate Euler-Jacobi oracle.

    With ``a = C1 - b`` and ``f(b) = b^2 - C1 b + C2 - q`` the oracle gives
    ``<a,a> = -C1`` and ``<b,b> = C1`` in the orientation where ``Res(b) = 1``.
    """
    def body(res):
        ring = QuantumRing.from_flag([1, 2], equivariant=True)
        reg = ring.registry
        C1 = Polynomial.variable(reg, "C[1]")
        C2 = Polynomial.variable(reg, "C[2]")
        q = Polynomial.variable(reg, "q[1]")
        zero = C1 - C1
        f = [C2 - q, -C1, zero + 1]
        a, b = ring.element("c[0][1]"), ring.element("c[1][1]")
        # a = C1 - b in the quotient
        aa = univariate_residue(f, [C1 * C1, -2 * C1, zero + 1])
        bb = univariate_residue(f, [zero, zero, zero + 1])
        ab = univariate_residue(f, [zero, C1, zero - 1])
        for label, got, want in [("<a,a>", ring.pairing(a, a), aa), ("<b,b>", ring.pairing(b, b), bb),
                                 ("<a,b>", ring.pairing(a, b), ab)]:
            if got != want:
                _fail(res, f"{label} = {got}, oracle {want}")
    return _timed("equivariant-P1-oracle", body)


def check_lemma_rules(max_n: int = 5, trials: int = 20, seed: int = 0) -> CheckResult:
    def body(res):
        p1 = QuantumRing.from_flag([1, 2])
        prod = product_ring(p1, p1)
        t1 = p1.pairing_table()
        for i, mi in enumerate(p1.basis.polynomials()):
            for j, mj in enumerate(p1.basis.polynomials()):
                x = embed_factor(prod, 0, mi) * embed_factor(prod, 1, mj)
                for k, mk in enumerate(p1.basis.polynomials()):
                    for l, ml in enumerate(p1.basis.polynomials()):
                        y = embed_factor(prod, 0, mk) * embed_factor(prod, 1, ml)
                        want = (embed_factor(prod, 0, t1.matrix[i][k]).poly
                                * embed_factor(prod, 1, t1.matrix[j][l]).poly)
                        if prod.pairing(x, y) != want:
                            _fail(res, f"product pairing mismatch at ({i},{j};{k},{l})")
        if prod.rank != p1.rank ** 2:
            _fail(res, "product rank is not the square")

        rng = random.Random(seed)
        for dims in ((1, 2), (1, 3), (2, 4), (1, 2, 3)):
            eq = QuantumRing.from_flag(dims, equivariant=True)
            tor = torus_restriction(eq)
            for _ in range(trials):
                a, b = eq.random_homogeneous(rng), eq.random_homogeneous(rng)
                if transport(a * b, tor) != transport(a, tor) * transport(b, tor):
                    _fail(res, f"{eq.label}: torus restriction does not commute with products")
                    break
            for rel in tor.relations:
                if not _symmetric_in_t(rel):
                    _fail(res, f"{eq.label}: torus relation {rel} not symmetric in t")

        for f in _flags(max_n, 2):
            for j in range(1, f.l + 1):
                rep = induction_check(f, j)
                if not rep.ok:
                    _fail(res, f"{f.label()} j={j}: q_j=0 splitting fails")
    return _timed("lemma-rules", body)


def _symmetric_in_t(p: Polynomial) -> bool:
    reg = p.registry
    ts = [v.name for v in reg.vars if v.kind == "torus"]
    for i in range(len(ts) - 1):
        swap = {ts[i]: Polynomial.variable(reg, ts[i + 1]), ts[i + 1]: Polynomial.variable(reg, ts[i])}
        if p.substitute(swap, reg) != p:
            return False
    return True


CHECKS = {
    "classical-limit": lambda n, t, s: check_classical_limit(n),
    "projective-spaces": lambda n, t, s: check_projective(range(2, max(n, 2) + 1)),
    "enumerative-P2": lambda n, t, s: check_enumerative(),
    "grassmannian-Gr(2,4)": lambda n, t, s: check_grassmannian(),
    "complete-flags-F123": lambda n, t, s: check_toda(),
    "grading": lambda n, t, s: check_grading(n),
    "rank-and-freeness": lambda n, t, s: check_rank(n, () if n < 4 else ((1, 2, 3, 4),)),
    # rank grows to 120 at n = 5; the pairing suite is scoped to n <= 4
    "residue-pairing": lambda n, t, s: check_pairing(min(n, 4), t, s),
    "equivariant-specializations": lambda n, t, s: check_equivariant(),
    "equivariant-P1-oracle": lambda n, t, s: check_equivariant_p1(),
    "lemma-rules": lambda n, t, s: check_lemma_rules(n, max(1, t // 5), s),
}


def run_checks(max_n: int = 4, trials: int = 100, seed: int = 0,
               only: Sequence[str] | None = None) -> list[CheckResult]:
    names = list(CHECKS) if not only else list(only)
    return [CHECKS[name](max_n, trials, seed) for name in names]
