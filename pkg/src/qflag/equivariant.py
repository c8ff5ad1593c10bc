"""Equivariant contexts and the product, restriction and induction rules.

Equivariant parameters are ordinary low-block variables, so restriction to
a subgroup is a substitution of parameters, products are disjoint unions of
registries, and induction is the ``q_j = 0`` splitting of the continuant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .poly import INHOMOGENEOUS, ZERO, Polynomial, UPoly, Var, VarRegistry, weighted_degree
from .presentation import (FlagType, equivariant_name, make_flag, quantum_name,
                           relations, split_factors)
from .ring import QuantumRing, RingElement

__all__ = [
    "WeightError",
    "specialize_params",
    "torus_restriction",
    "torus_name",
    "transport",
    "product_ring",
    "embed_factor",
    "point_ring",
    "InductionReport",
    "induction_check",
]


class WeightError(ValueError):
    pass


def torus_name(i: int) -> str:
    return f"t[{i}]"


def _coerce_value(value, registry: VarRegistry) -> Polynomial:
    if isinstance(value, Polynomial):
        return value.embed(registry)
    if isinstance(value, str):
        return Polynomial.parse(value, registry)
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(registry, value)
    raise TypeError(f"cannot use {value!r} as a parameter value")


def specialize_params(ctx: QuantumRing, assignment: Mapping[str, object],
                      extra_params: Sequence[Var] = (), label: str | None = None) -> QuantumRing:
    """Substitute parameters and rebuild the context.

    Assigned variables leave the registry; ``extra_params`` are appended to
    the parameter block (they may appear in the substituted values).  Every
    value must be zero or weighted-homogeneous of the variable's weight.
    """
    reg = ctx.registry
    for name in assignment:
        if name not in reg:
            raise KeyError(f"unknown variable {name}")
        if reg.var(name).block == 0:
            raise ValueError(f"{name} is not a parameter")
    kept = [v for v in reg.vars if v.name not in assignment]
    target = VarRegistry(sorted(kept + list(extra_params), key=lambda v: v.block))
    mapping = {}
    for name, value in assignment.items():
        img = _coerce_value(value, target)
        d = weighted_degree(img)
        if d == ZERO:
            pass
        elif d == INHOMOGENEOUS or d != reg.var(name).weight:
            raise WeightError(f"value {img} for {name} does not have weight {reg.var(name).weight}")
        mapping[name] = img
    rels = [r.substitute(mapping, target) for r in ctx.relations]
    aliases = {k: v.substitute(mapping, target) for k, v in ctx.aliases.items()}
    if label is None:
        label = ctx.label + " | " + ", ".join(f"{k}={mapping[k]}" for k in sorted(mapping))
    out = QuantumRing(target, rels, label=label, flag=ctx.flag, aliases=aliases)
    out.parent = ctx
    out.substitution = mapping
    return out


def transport(elt, ctx: QuantumRing) -> RingElement:
    """Image of an element of ``ctx.parent`` in a specialized context."""
    parent = getattr(ctx, "parent", None)
    if parent is None:
        raise ValueError("context was not produced by specialization")
    poly = elt.poly if isinstance(elt, RingElement) else parent.element(elt).poly
    return RingElement(ctx, poly.substitute(ctx.substitution, ctx.registry))


def _elementary(polys: Sequence[Polynomial], m: int, registry: VarRegistry) -> Polynomial:
    out = Polynomial.constant(registry, 0)
    for combo in combinations(polys, m):
        term = Polynomial.constant(registry, 1)
        for p in combo:
            term = term * p
        out = out + term
    return out


def torus_restriction(ctx: QuantumRing) -> QuantumRing:
    """Restrict from U_n to its maximal torus: ``C[m] -> e_m(t_1..t_n)``."""
    cs = [v for v in ctx.registry.vars if v.kind == "equivariant"]
    if not cs:
        raise ValueError("context has no equivariant parameters")
    n = len(cs)
    tvars = [Var(torus_name(i), "torus", (i,), 1) for i in range(1, n + 1)]
    kept = [v for v in ctx.registry.vars if v.kind != "equivariant"]
    target = VarRegistry(kept + tvars)
    ts = [Polynomial.variable(target, v.name) for v in tvars]
    assignment = {v.name: _elementary(ts, v.index[0], target) for v in cs}
    return specialize_params(ctx, assignment, tvars, label=ctx.label + " | torus")


def _renamed(ctx: QuantumRing, prefix: str) -> list[Var]:
    return [Var(prefix + v.name, v.kind, v.index, v.weight) for v in ctx.registry.vars]


def product_ring(ctx1: QuantumRing, ctx2: QuantumRing, prefixes: tuple[str, str] = ("X1.", "X2.")) -> QuantumRing:
    """Tensor product of two contexts over disjoint, prefixed registries."""
    v1, v2 = _renamed(ctx1, prefixes[0]), _renamed(ctx2, prefixes[1])
    target = VarRegistry(sorted(v1 + v2, key=lambda v: v.block))

    def move(p: Polynomial, ctx: QuantumRing, prefix: str) -> Polynomial:
        mapping = {v.name: Polynomial.variable(target, prefix + v.name) for v in ctx.registry.vars}
        return p.substitute(mapping, target)

    rels = [move(r, ctx1, prefixes[0]) for r in ctx1.relations]
    rels += [move(r, ctx2, prefixes[1]) for r in ctx2.relations]
    aliases = {prefixes[0] + k: move(v, ctx1, prefixes[0]) for k, v in ctx1.aliases.items()}
    aliases.update({prefixes[1] + k: move(v, ctx2, prefixes[1]) for k, v in ctx2.aliases.items()})
    out = QuantumRing(target, rels, label=f"{ctx1.label} x {ctx2.label}", aliases=aliases)
    out.factors = (ctx1, ctx2)
    out.prefixes = prefixes
    return out


def embed_factor(prod: QuantumRing, which: int, elt) -> RingElement:
    """``a ⊗ 1`` (which=0) or ``1 ⊗ a`` (which=1) inside a product context."""
    ctx = prod.factors[which]
    prefix = prod.prefixes[which]
    poly = elt.poly if isinstance(elt, RingElement) else ctx.element(elt).poly
    mapping = {v.name: Polynomial.variable(prod.registry, prefix + v.name) for v in ctx.registry.vars}
    return prod.element(poly.substitute(mapping, prod.registry))


def point_ring(n: int = 1, equivariant: bool = False) -> QuantumRing:
    """The one-step flag ``F_{n}``, a point."""
    return QuantumRing.from_flag([n], equivariant)


@dataclass
class InductionReport:
    dims: tuple[int, ...]
    j: int
    base: str
    fiber: str
    relations_at_zero: list[str]
    expected: list[str]
    ok: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "j": self.j,
            "base": self.base,
            "fiber": self.fiber,
            "relations_at_zero": self.relations_at_zero,
            "expected": self.expected,
            "ok": self.ok,
        }


def induction_check(flag, j: int) -> InductionReport:
    """Set ``q_j = 0`` in the equivariant relations and compare with base x fiber.

    The prediction is that ``Σ_m - C_m`` becomes the ``x^{n-m}`` coefficient
    of ``base(x)*fiber(x) - (x^n + C_1 x^{n-1} + ... + C_n)``, where base and
    fiber are the continuants of blocks ``0..j-1`` and ``j..l`` with their
    own quantum parameters in their original order.
    """
    flag = flag if isinstance(flag, FlagType) else make_flag(flag)
    if not 1 <= j <= flag.l:
        raise ValueError(f"split index must lie in 1..{flag.l}")
    pres = relations(flag, equivariant=True)
    reg = pres.registry
    qj = quantum_name(j)
    killed = [r.evaluate({qj: 0}) for r in pres.relations]
    base, fiber = split_factors(flag, j, reg)
    n = flag.n
    shift = UPoly(reg, [Polynomial.variable(reg, equivariant_name(n - k)) for k in range(n)] + [1])
    predicted = base * fiber - shift
    expected = [predicted.coeff(n - m) for m in range(1, n + 1)]
    ok = predicted.coeff(n) == 0 and killed == expected
    return InductionReport(flag.dims, j, base.to_text(), fiber.to_text(),
                           [str(r) for r in killed], [str(e) for e in expected], ok)
