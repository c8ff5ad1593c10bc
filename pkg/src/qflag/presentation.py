"""Flag types, Chern polynomials and the continuant presentation of the relations."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .poly import Polynomial, UPoly, Var, VarRegistry

__all__ = [
    "FlagType",
    "Presentation",
    "make_flag",
    "all_flag_types",
    "split_factors",
    "flag_registry",
    "chern_polys",
    "continuant",
    "relations",
    "divisor_classes",
    "induction_split_check",
    "chern_name",
    "quantum_name",
    "equivariant_name",
]


def chern_name(i: int, j: int) -> str:
    return f"c[{i}][{j}]"


def quantum_name(i: int) -> str:
    return f"q[{i}]"


def equivariant_name(m: int) -> str:
    return f"C[{m}]"


@dataclass(frozen=True)
class FlagType:
    """Dimension sequence ``s_0 < s_1 < ... < s_l = n``."""

    dims: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.dims[-1]

    @property
    def l(self) -> int:
        return len(self.dims) - 1

    @property
    def blocks(self) -> tuple[int, ...]:
        prev = 0
        out = []
        for s in self.dims:
            out.append(s - prev)
            prev = s
        return tuple(out)

    @property
    def dim(self) -> int:
        """Complex dimension of the flag manifold."""
        k = self.blocks
        return sum(k[i] * k[j] for i in range(len(k)) for j in range(i + 1, len(k)))

    @property
    def rank(self) -> int:
        r = factorial(self.n)
        for k in self.blocks:
            r //= factorial(k)
        return r

    def quantum_weight(self, i: int) -> int:
        """Complex weight of q_i, which joins blocks i-1 and i."""
        k = self.blocks
        return k[i - 1] + k[i]

    def label(self) -> str:
        return "F_{" + ",".join(map(str, self.dims)) + "}"

    def __str__(self):
        return self.label()


def make_flag(dims: Sequence[int]) -> FlagType:
    dims = tuple(dims)
    if not dims:
        raise ValueError("flag type needs at least one dimension")
    for d in dims:
        if not isinstance(d, int) or isinstance(d, bool):
            raise ValueError(f"dimension {d!r} is not an integer")
        if d <= 0:
            raise ValueError(f"dimensions must be positive, got {d}")
    for a, b in zip(dims, dims[1:]):
        if b <= a:
            raise ValueError(f"dimensions must be strictly increasing: {dims}")
    return FlagType(dims)


def all_flag_types(n: int) -> list[FlagType]:
    """Every flag type with ambient dimension ``n`` (compositions of n)."""
    out = []
    for mask in range(2 ** (n - 1)):
        dims = [s for s in range(1, n) if mask >> (s - 1) & 1] + [n]
        out.append(FlagType(tuple(dims)))
    return sorted(out, key=lambda f: (len(f.dims), f.dims))


def flag_registry(flag: FlagType, equivariant: bool = False) -> VarRegistry:
    vs = [Var(chern_name(i, j), "chern", (i, j), j)
          for i, k in enumerate(flag.blocks) for j in range(1, k + 1)]
    vs += [Var(quantum_name(i), "quantum", (i,), flag.quantum_weight(i))
           for i in range(1, flag.l + 1)]
    if equivariant:
        vs += [Var(equivariant_name(m), "equivariant", (m,), m) for m in range(1, flag.n + 1)]
    return VarRegistry(vs)


def chern_polys(flag: FlagType, registry: VarRegistry | None = None) -> list[UPoly]:
    """``P_i(x) = x^{k_i} + c_1^{(i)} x^{k_i-1} + ... + c_{k_i}^{(i)}`` for each block."""
    reg = registry or flag_registry(flag)
    out = []
    for i, k in enumerate(flag.blocks):
        coeffs = [Polynomial.variable(reg, chern_name(i, k - e)) for e in range(k)]
        coeffs.append(Polynomial.constant(reg, 1))
        out.append(UPoly(reg, coeffs))
    return out


def _continuant(polys: Sequence[UPoly], qs: Sequence[Polynomial | None],
                signs: Sequence[int]) -> tuple[UPoly, UPoly]:
    """Clear ``polys[0] + s_0 qs[0] / (polys[1] + s_1 qs[1] / (...))`` bottom up.

    ``qs[i]`` sits between ``polys[i]`` and ``polys[i+1]``; ``None`` means the
    parameter is set to zero.
    """
    reg = polys[0].registry
    a = polys[-1]
    b = UPoly(reg, [1])
    for i in range(len(polys) - 2, -1, -1):
        q = qs[i]
        new_a = polys[i] * a
        if q is not None:
            new_a = new_a + b * (q * signs[i])
        a, b = new_a, a
    return a, b


def _signs(flag: FlagType) -> list[int]:
    return [(-1) ** (k + 1) for k in flag.blocks]


def continuant(flag: FlagType, registry: VarRegistry | None = None) -> tuple[UPoly, UPoly]:
    """Numerator ``P`` and denominator ``Q`` of the continued fraction.

    For a single block this is ``(P_0, 1)``.
    """
    reg = registry or flag_registry(flag)
    polys = chern_polys(flag, reg)
    qs = [Polynomial.variable(reg, quantum_name(i)) for i in range(1, flag.l + 1)]
    if flag.l == 0:
        return polys[0], UPoly(reg, [1])
    a, b = _continuant(polys, qs, _signs(flag))
    return a, b


@dataclass(frozen=True)
class Presentation:
    flag: FlagType
    registry: VarRegistry
    chern_polys: tuple[UPoly, ...]
    numerator: UPoly
    denominator: UPoly
    relations: tuple[Polynomial, ...]
    equivariant: bool

    @property
    def sigmas(self) -> tuple[Polynomial, ...]:
        """The unshifted Σ_1..Σ_n."""
        n = self.flag.n
        return tuple(self.numerator.coeff(n - m) for m in range(1, n + 1))

    def to_json(self) -> dict:
        return {
            "dims": list(self.flag.dims),
            "blocks": list(self.flag.blocks),
            "n": self.flag.n,
            "dim": self.flag.dim,
            "equivariant": self.equivariant,
            "variables": self.registry.to_json(),
            "chern_polys": [p.to_text() for p in self.chern_polys],
            "numerator": self.numerator.to_text(),
            "denominator": self.denominator.to_text(),
            "relations": [r.to_text() for r in self.relations],
        }


def relations(flag: FlagType, equivariant: bool = False) -> Presentation:
    """Build the presentation; relations are Σ_m, or Σ_m - C_m when equivariant."""
    reg = flag_registry(flag, equivariant)
    polys = tuple(chern_polys(flag, reg))
    P, Q = continuant(flag, reg)
    n = flag.n
    assert P.degree == n and P.is_monic()
    assert Q.degree == n - flag.dims[0]
    rels = []
    for m in range(1, n + 1):
        r = P.coeff(n - m)
        if equivariant:
            r = r - Polynomial.variable(reg, equivariant_name(m))
        rels.append(r)
    return Presentation(flag, reg, polys, P, Q, tuple(rels), equivariant)


def divisor_classes(flag: FlagType, registry: VarRegistry | None = None) -> list[Polynomial]:
    """``p_i = c_1^{(i)} + ... + c_1^{(l)}`` for i = 1..l (empty for a point)."""
    reg = registry or flag_registry(flag)
    out = []
    for i in range(1, flag.l + 1):
        p = Polynomial.constant(reg, 0)
        for j in range(i, flag.l + 1):
            p = p + Polynomial.variable(reg, chern_name(j, 1))
        out.append(p)
    return out


def split_factors(flag: FlagType, j: int, registry: VarRegistry | None = None) -> tuple[UPoly, UPoly]:
    """Continuants of blocks ``0..j-1`` and ``j..l``, each with its own q's."""
    if not 1 <= j <= flag.l:
        raise ValueError(f"split index must lie in 1..{flag.l}")
    reg = registry or flag_registry(flag)
    polys = chern_polys(flag, reg)
    qs = [Polynomial.variable(reg, quantum_name(i)) for i in range(1, flag.l + 1)]
    signs = _signs(flag)
    base, _ = _continuant(polys[:j], qs[:j - 1], signs[:j])
    fiber, _ = _continuant(polys[j:], qs[j:], signs[j:])
    return base, fiber


def induction_split_check(flag: FlagType, j: int) -> bool:
    """Does setting ``q_j = 0`` factor the continuant into base times fiber?"""
    reg = flag_registry(flag)
    P, _ = continuant(flag, reg)
    killed = P.map_coeffs(lambda c: c.evaluate({quantum_name(j): 0}))
    base, fiber = split_factors(flag, j, reg)
    return killed == base * fiber
