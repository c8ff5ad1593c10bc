"""Independent oracles: Gaussian multinomials, the projective-space ring,
quantum Pieri/Giambelli for Grassmannians and a univariate residue formula.

Nothing here goes through the Gröbner engine except where an oracle is
explicitly compared against it (:func:`compare_pieri`,
:func:`compare_projective`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Sequence

from .poly import Polynomial, VarRegistry
from .presentation import FlagType, chern_name, make_flag, quantum_name

__all__ = [
    "poincare_poly",
    "ProjectiveOracle",
    "projective_oracle",
    "Partition",
    "box_partitions",
    "quantum_pieri",
    "schubert_dictionary",
    "compare_pieri",
    "compare_projective",
    "classical_relations",
    "univariate_residue",
]


# ---------------------------------------------------------------- Betti numbers

def _int_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(a[i + len(b) - 1], b[-1])
        if r:
            raise ArithmeticError("inexact integer polynomial division")
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact integer polynomial division")
    return q


def _qfactorial(m: int) -> list[int]:
    out = [1]
    for i in range(1, m + 1):
        out = _int_mul(out, [1] * i)
    return out


def poincare_poly(flag) -> list[int]:
    """Coefficients of the Gaussian multinomial ``[n; k_0, ..., k_l]_t``."""
    flag = flag if isinstance(flag, FlagType) else make_flag(flag)
    num = _qfactorial(flag.n)
    for k in flag.blocks:
        num = _int_divexact(num, _qfactorial(k))
    return num


# ---------------------------------------------------------------- projective space

@dataclass(frozen=True)
class ProjectiveOracle:
    """``Q[p, q]/(p^n - q)`` with its closed-form pairing."""

    n: int

    def reduce(self, i: int) -> tuple[int, int]:
        """``p^i = q^a p^b``; returns ``(a, b)``."""
        return divmod(i, self.n)

    def residue(self, i: int) -> dict[int, int]:
        a, b = self.reduce(i)
        return {a: 1} if b == self.n - 1 else {}

    def pairing(self, i: int, j: int) -> dict[int, int]:
        """``<p^i, p^j>`` as ``{q-power: coefficient}``."""
        return self.residue(i + j)

    def table(self) -> list[list[dict[int, int]]]:
        return [[self.pairing(i, j) for j in range(self.n)] for i in range(self.n)]


def projective_oracle(n: int) -> ProjectiveOracle:
    if n < 2:
        raise ValueError("projective oracle needs n >= 2")
    return ProjectiveOracle(n)


def _as_qdict(p: Polynomial) -> dict[int, int]:
    """Read a polynomial in the single variable q[1] as ``{power: coeff}``."""
    qi = p.registry.index(quantum_name(1))
    out = {}
    for e, c in p.terms.items():
        if any(x for i, x in enumerate(e) if i != qi):
            raise ValueError(f"{p} is not a polynomial in q[1] alone")
        out[e[qi]] = c
    return out


def compare_projective(ring) -> tuple[bool, str]:
    """Check an engine ring for ``F_{1,n}`` against :class:`ProjectiveOracle`."""
    n = ring.flag.n
    oracle = projective_oracle(n)
    p = ring.element("p[1]")
    q = ring.element("q[1]")
    if p ** n - q:
        return False, "p^n - q does not reduce to zero"
    powers = [p ** i for i in range(n)]
    coords = [[Fraction(c.constant_value()) if c.is_constant() else None for c in x.coords()] for x in powers]
    if any(None in row for row in coords):
        return False, "powers of p are not scalar combinations of the standard basis"
    from .linalg import det_rational
    if det_rational(coords) == 0:
        return False, "powers of p do not span the quotient"
    for i in range(n):
        for j in range(n):
            got = _as_qdict(ring.pairing(powers[i], powers[j]))
            if got != oracle.pairing(i, j):
                return False, f"<p^{i}, p^{j}> = {got}, oracle {oracle.pairing(i, j)}"
    for i in range(n, 2 * n + 2):
        a, b = oracle.reduce(i)
        if p ** i != q ** a * p ** b:
            return False, f"p^{i} does not reduce to q^{a} p^{b}"
    return True, "ok"


# ---------------------------------------------------------------- Grassmannians

class Partition(tuple):
    """Weakly decreasing tuple of positive parts (zeros are dropped)."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(x) for x in parts)
        if any(x < 0 for x in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not weakly decreasing")
        return super().__new__(cls, tuple(x for x in parts if x))

    @property
    def size(self) -> int:
        return sum(self)

    def fits(self, k: int, n: int) -> bool:
        return len(self) <= k and (not self or self[0] <= n - k)

    def part(self, i: int) -> int:
        return self[i] if i < len(self) else 0

    def __repr__(self):
        return "σ" + ("".join(map(str, self)) if self else "0")


def box_partitions(k: int, n: int) -> list[Partition]:
    """All partitions in a ``k x (n-k)`` box, ordered by size then reverse lex."""
    out = []

    def rec(prefix, cap, rows):
        out.append(Partition(prefix))
        if rows == 0:
            return
        for x in range(1, cap + 1):
            rec(prefix + [x], x, rows - 1)

    rec([], n - k, k)
    return sorted(set(out), key=lambda p: (p.size, tuple(-x for x in p)))


def quantum_pieri(k: int, n: int, lam) -> dict[tuple[Partition, int], int]:
    """``σ_1 * σ_λ`` in ``QH(Gr(k, n))`` as ``{(μ, q-power): coefficient}``."""
    lam = Partition(lam)
    if not lam.fits(k, n):
        raise ValueError(f"{lam} does not fit in a {k}x{n - k} box")
    out: dict = {}
    for i in range(k):
        parts = [lam.part(r) for r in range(k)]
        parts[i] += 1
        if parts[i] > n - k or (i > 0 and parts[i] > parts[i - 1]):
            continue
        out[(Partition(parts), 0)] = 1
    if len(lam) == k and lam[0] == n - k:
        mu = Partition([x - 1 for x in lam[1:]])
        out[(mu, 1)] = out.get((mu, 1), 0) + 1
    return out


def _laplace_det(M: list[list[Polynomial]], one: Polynomial) -> Polynomial:
    n = len(M)
    if n == 0:
        return one
    total = one - one
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = one
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if not term:
                break
        if term:
            total = total + term * sign
    return total


def schubert_dictionary(ring) -> dict[Partition, Polynomial]:
    """Giambelli images ``σ_λ = det(h_{λ_i + j - i})`` with ``h_j`` the
    Chern classes of the quotient block (zero above its rank)."""
    flag = ring.flag
    if flag is None or flag.l != 1:
        raise ValueError("schubert_dictionary needs a Grassmannian context")
    k, n = flag.dims[0], flag.n
    reg = ring.registry
    one = Polynomial.constant(reg, 1)

    def h(j):
        if j == 0:
            return one
        if j < 0 or j > n - k:
            return one - one
        return Polynomial.variable(reg, chern_name(1, j))

    out = {}
    for lam in box_partitions(k, n):
        m = len(lam)
        M = [[h(lam.part(i) + j - i) for j in range(m)] for i in range(m)]
        out[lam] = _laplace_det(M, one)
    return out


def compare_pieri(ring) -> tuple[bool, list[str]]:
    """Compare engine products ``σ_1 * σ_λ`` with :func:`quantum_pieri`."""
    flag = ring.flag
    k, n = flag.dims[0], flag.n
    sigma = schubert_dictionary(ring)
    q = Polynomial.variable(ring.registry, quantum_name(1))
    s1 = ring.element(sigma[Partition([1])])
    problems = []
    for lam, poly in sigma.items():
        got = s1 * ring.element(poly)
        want = Polynomial.constant(ring.registry, 0)
        for (mu, d), c in quantum_pieri(k, n, lam).items():
            want = want + sigma[mu] * q ** d * c
        if got != ring.element(want):
            problems.append(f"σ1*{lam!r}: engine {got}, oracle {ring.element(want)}")
    return not problems, problems


# ---------------------------------------------------------------- classical ring

def classical_relations(flag) -> tuple[VarRegistry, list[Polynomial]]:
    """Coefficients of ``P_0(x)...P_l(x) - x^n`` over the chern variables only.

    Built by direct convolution of coefficient lists, without the continuant.
    """
    from .poly import Var

    flag = flag if isinstance(flag, FlagType) else make_flag(flag)
    reg = VarRegistry([Var(chern_name(i, j), "chern", (i, j), j)
                       for i, k in enumerate(flag.blocks) for j in range(1, k + 1)])
    one = Polynomial.constant(reg, 1)
    # coefficient lists by descending power: [1, c_1, ..., c_k]
    prod = [one]
    for i, k in enumerate(flag.blocks):
        block = [one] + [Polynomial.variable(reg, chern_name(i, j)) for j in range(1, k + 1)]
        new = [one - one] * (len(prod) + len(block) - 1)
        for a, x in enumerate(prod):
            for b, y in enumerate(block):
                new[a + b] = new[a + b] + x * y
        prod = new
    return reg, prod[1:]


# ---------------------------------------------------------------- univariate residue

def univariate_residue(f: Sequence, g: Sequence) -> Fraction | object:
    """``sum over roots r of f of g(r)/f'(r)`` for monic ``f``.

    Computed as the coefficient of ``x^{-1}`` in the expansion of ``g/f`` at
    infinity.  Coefficient lists are ascending; entries may be any exact ring
    elements supporting ``+ - *``.
    """
    d = len(f) - 1
    if f[-1] != 1:
        raise ValueError("f must be monic")
    zero = f[0] - f[0]
    # 1/f = x^{-d} * sum_k s_k x^{-k}
    need = max(len(g) - d, 0)
    s = [zero + 1]
    for k in range(1, need + 1):
        acc = zero
        for i in range(1, min(k, d) + 1):
            acc = acc - f[d - i] * s[k - i]
        s.append(acc)
    # coefficient of x^{-1}: g_m * s_k with m - d - k = -1
    total = zero
    for m, gm in enumerate(g):
        k = m - d + 1
        if 0 <= k < len(s) and gm:
            total = total + gm * s[k]
    return total


def iter_pieri_products(k: int, n: int) -> Iterator[tuple[Partition, dict]]:
    for lam in box_partitions(k, n):
        yield lam, quantum_pieri(k, n, lam)
