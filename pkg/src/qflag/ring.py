"""Quantum cohomology rings as computational objects.

A :class:`QuantumRing` wraps a relation ideal, its reduced Gröbner basis and
the standard monomial basis.  Elements are stored in normal form.  The
Poincaré pairing is the global residue functional, obtained from the trace
identity ``Tr(M_g) = Res(g * J)`` with ``J`` the oriented Jacobian
determinant of the relations with respect to the chern variables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .groebner import GBCache, GroebnerBasis, StructuralError, buchberger
from .poly import INHOMOGENEOUS, ZERO, Polynomial, VarRegistry, coeff_extract, exquo, weighted_degree
from .presentation import FlagType, Presentation, divisor_classes, make_flag, relations

__all__ = [
    "QuantumRing",
    "RingElement",
    "PairingTable",
    "GWValue",
    "ResidueDegenerate",
    "quantum_product",
    "residue_table",
    "gw_3point",
    "divisor_count",
    "frobenius_check",
]


class ResidueDegenerate(ArithmeticError):
    def __init__(self, detail: str = ""):
        super().__init__("residue system degenerate" + (f": {detail}" if detail else ""))


class RingElement:
    """An element of a quantum ring, kept in normal form."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: "QuantumRing", poly: Polynomial, *, reduced: bool = False):
        self.ring = ring
        self.poly = poly if reduced else ring.nf(poly)

    def _check(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise ValueError("elements belong to different ring contexts")
            return other
        return self.ring.element(other)

    def __mul__(self, other):
        return quantum_product(self, self._check(other))

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._check(other)
        return RingElement(self.ring, self.poly + other.poly, reduced=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return RingElement(self.ring, self.poly - other.poly, reduced=True)

    def __neg__(self):
        return RingElement(self.ring, -self.poly, reduced=True)

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = self._check(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __bool__(self):
        return bool(self.poly)

    def degree(self):
        return weighted_degree(self.poly)

    def coords(self) -> list[Polynomial]:
        return self.ring.coords(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"RingElement({self.poly})"


def quantum_product(a: RingElement, b: RingElement) -> RingElement:
    if a.ring is not b.ring:
        raise ValueError("elements belong to different ring contexts")
    return RingElement(a.ring, a.poly * b.poly)


@dataclass(frozen=True)
class GWValue:
    """Coefficient of ``q^degree``.

    ``value`` is a Fraction when the coefficient is a rational number and a
    Polynomial in the equivariant parameters otherwise.
    """

    degree: tuple[int, ...]
    value: object

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, Polynomial):
            return {"degree": list(self.degree), "value": str(v)}
        v = Fraction(v)
        return {"degree": list(self.degree),
                "value": str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"}


@dataclass
class PairingTable:
    ring: "QuantumRing"
    matrix: list[list[Polynomial]]
    residues: list[Polynomial]
    strategy: str = ""

    @property
    def basis(self):
        return self.ring.basis

    def entry(self, a: int, b: int) -> Polynomial:
        return self.matrix[a][b]

    def is_symmetric(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(i))

    def is_homogeneous(self) -> bool:
        dims = self.basis.degrees
        dim = self.ring.dim
        for i, row in enumerate(self.matrix):
            for j, v in enumerate(row):
                d = weighted_degree(v)
                if d == ZERO:
                    continue
                if d == INHOMOGENEOUS or d != dims[i] + dims[j] - dim:
                    return False
        return True

    def evaluated(self, values: Mapping[str, object]) -> list[list[Fraction]]:
        return [[Fraction(v.evaluate(values).constant_value()) for v in row] for row in self.matrix]

    def is_nondegenerate(self, seed: int = 0) -> bool:
        """Nonzero determinant, certified by a nonzero value at a rational point."""
        if not self.ring.param_names:
            vals = [[Fraction(v.constant_value()) for v in row] for row in self.matrix]
            return linalg.det_rational(vals) != 0
        rng = random.Random(seed)
        for _ in range(5):
            point = {name: Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for name in self.ring.param_names}
            if linalg.det_rational(self.evaluated(point)) != 0:
                return True
        return self.determinant() != 0

    def determinant(self) -> Polynomial:
        return linalg.bareiss_det(self.matrix, exquo)

    def specialize(self, values: Mapping[str, object]) -> list[list[Polynomial]]:
        return [[v.evaluate(values) for v in row] for row in self.matrix]

    def to_json(self) -> dict:
        return {
            "basis": self.basis.to_text(),
            "residues": [str(r) for r in self.residues],
            "matrix": [[str(v) for v in row] for row in self.matrix],
            "strategy": self.strategy,
        }


class QuantumRing:
    """Quotient ``Q[chern, params] / (relations)`` with its residue pairing."""

    def __init__(self, registry: VarRegistry, rels: Sequence[Polynomial], *,
                 label: str = "", flag: FlagType | None = None,
                 presentation: Presentation | None = None,
                 aliases: Mapping[str, Polynomial] | None = None,
                 gb: GroebnerBasis | None = None,
                 max_generators: int | None = None, max_terms: int | None = None):
        self.registry = registry
        self.relations = tuple(r.embed(registry) for r in rels)
        self.label = label
        self.flag = flag
        self.presentation = presentation
        self.aliases = dict(aliases or {})
        caps = {}
        if max_generators is not None:
            caps["max_generators"] = max_generators
        if max_terms is not None:
            caps["max_terms"] = max_terms
        self.gb = gb if gb is not None else buchberger(self.relations, registry, label=label, **caps)
        if not self.gb.params_free_leads:
            raise StructuralError(f"{label}: leading monomials involve parameters")
        self.basis = self.gb.std_basis()
        self.chern_names = tuple(registry.vars[i].name for i in registry.chern_indices())
        self.param_names = tuple(registry.vars[i].name for i in registry.param_indices())
        self.quantum_names = tuple(registry.vars[i].name for i in registry.quantum_indices())
        if len(self.relations) != len(self.chern_names):
            raise StructuralError("number of relations must equal number of chern variables")
        rel_deg = 0
        for r in self.relations:
            d = weighted_degree(r)
            if d in (ZERO, INHOMOGENEOUS):
                raise StructuralError("relations must be nonzero and weighted-homogeneous")
            rel_deg += d
        self.dim = rel_deg - sum(registry.vars[i].weight for i in registry.chern_indices())
        if flag is not None and presentation is not None and flag.dim != self.dim:
            raise StructuralError("dimension mismatch between flag type and relations")
        # the raw Jacobian determinant is (-1)^dim times the Euler class
        self.orientation = -1 if self.dim % 2 else 1
        self._table: dict = {}
        self._residues: list[Polynomial] | None = None
        self._residue_strategy = ""
        self._jacobian: Polynomial | None = None
        self._pairing: PairingTable | None = None

    # -- construction ---------------------------------------------------
    @classmethod
    def from_flag(cls, dims, equivariant: bool = False, *, cache: GBCache | None = None,
                  max_generators: int | None = None, max_terms: int | None = None) -> "QuantumRing":
        flag = dims if isinstance(dims, FlagType) else make_flag(dims)
        pres = relations(flag, equivariant)
        aliases = {f"p[{i + 1}]": p for i, p in enumerate(divisor_classes(flag, pres.registry))}
        label = flag.label() + (" (equivariant)" if equivariant else "")
        gb = None
        key = None
        if cache is not None:
            key = GBCache.make_key(flag.dims, equivariant)
            gb = cache.load(key, pres.registry, pres.relations, expected_rank=flag.rank)
        ring = cls(pres.registry, pres.relations, label=label, flag=flag, presentation=pres,
                   aliases=aliases, gb=gb, max_generators=max_generators, max_terms=max_terms)
        if cache is not None and gb is None:
            cache.store(key, ring.gb)
        return ring

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def equivariant(self) -> bool:
        return any(self.registry.var(n).block == 2 for n in self.param_names)

    # -- elements -------------------------------------------------------
    def nf(self, p: Polynomial) -> Polynomial:
        return self.gb.normal_form(p)

    def parse(self, text: str) -> Polynomial:
        return Polynomial.parse(text, self.registry, self.aliases)

    def element(self, x) -> RingElement:
        if isinstance(x, RingElement):
            if x.ring is not self:
                raise ValueError("element belongs to a different ring context")
            return x
        if isinstance(x, str):
            x = self.parse(x)
        elif isinstance(x, (int, Fraction)):
            x = Polynomial.constant(self.registry, x)
        elif isinstance(x, Polynomial) and x.registry != self.registry:
            x = x.embed(self.registry)
        return RingElement(self, x)

    def one(self) -> RingElement:
        return RingElement(self, Polynomial.constant(self.registry, 1), reduced=True)

    def basis_element(self, i: int) -> RingElement:
        return RingElement(self, Polynomial.monomial(self.registry, self.basis.monomials[i]), reduced=True)

    def coords(self, p: Polynomial) -> list[Polynomial]:
        """Expand a normal form over the standard basis (coefficients in the parameters)."""
        pidx = self.registry.param_indices()
        zero = self.registry.zero_exp()
        buckets: list[dict] = [dict() for _ in range(self.rank)]
        index = self.basis._index
        for e, c in p.terms.items():
            m = list(e)
            u = list(zero)
            for i in pidx:
                u[i] = e[i]
                m[i] = 0
            try:
                pos = index[tuple(m)]
            except KeyError:
                raise ValueError("polynomial is not in normal form") from None
            buckets[pos][tuple(u)] = c
        return [Polynomial._raw(self.registry, b) for b in buckets]

    def from_coords(self, coords: Sequence[Polynomial]) -> Polynomial:
        out = Polynomial.constant(self.registry, 0)
        for m, c in zip(self.basis.monomials, coords):
            if c:
                out = out + c * Polynomial.monomial(self.registry, m)
        return out

    # -- multiplication data --------------------------------------------
    def product_coords(self, a: int, b: int) -> list[Polynomial]:
        """Coordinates of ``NF(m_a * m_b)`` for standard monomials."""
        if a > b:
            a, b = b, a
        got = self._table.get((a, b))
        if got is None:
            ma, mb = self.basis.monomials[a], self.basis.monomials[b]
            prod = Polynomial.monomial(self.registry, tuple(x + y for x, y in zip(ma, mb)))
            got = self._table[(a, b)] = self.coords(self.nf(prod))
        return got

    def mult_matrix(self, a) -> list[list[Polynomial]]:
        """Matrix of multiplication by ``a``; column b holds the coordinates of ``a * m_b``."""
        a = self.element(a)
        acoords = a.coords()
        r = self.rank
        zero = Polynomial.constant(self.registry, 0)
        cols = []
        for b in range(r):
            col = [zero] * r
            for g, cg in enumerate(acoords):
                if not cg:
                    continue
                pc = self.product_coords(g, b)
                for i in range(r):
                    if pc[i]:
                        col[i] = col[i] + cg * pc[i]
            cols.append(col)
        return [[cols[b][i] for b in range(r)] for i in range(r)]

    def trace(self, a) -> Polynomial:
        m = self.mult_matrix(a)
        out = Polynomial.constant(self.registry, 0)
        for i in range(self.rank):
            out = out + m[i][i]
        return out

    def _basis_traces(self) -> list[Polynomial]:
        out = []
        for a in range(self.rank):
            t = Polynomial.constant(self.registry, 0)
            for b in range(self.rank):
                c = self.product_coords(a, b)[b]
                if c:
                    t = t + c
            out.append(t)
        return out

    def jacobian(self) -> Polynomial:
        """Oriented Jacobian determinant ``(-1)^dim det(d rel_m / d c)``."""
        if self._jacobian is None:
            rows = [[r.diff(v) for v in self.chern_names] for r in self.relations]
            det = linalg.bareiss_det(rows, exquo) if rows else Polynomial.constant(self.registry, 1)
            if not isinstance(det, Polynomial):
                det = Polynomial.constant(self.registry, det)
            self._jacobian = det * self.orientation
        return self._jacobian

    # -- residue --------------------------------------------------------
    def _residue_system(self):
        jc = self.coords(self.nf(self.jacobian()))
        r = self.rank
        zero = Polynomial.constant(self.registry, 0)
        A = []
        for a in range(r):
            row = [zero] * r
            for g, cg in enumerate(jc):
                if not cg:
                    continue
                pc = self.product_coords(a, g)
                for b in range(r):
                    if pc[b]:
                        row[b] = row[b] + cg * pc[b]
            A.append(row)
        return A, self._basis_traces(), jc

    def residue_values(self, strategy: str = "auto", seed: int = 0) -> list[Polynomial]:
        """``Res(m_b)`` for every standard monomial.

        Strategies: ``symbolic`` (Bareiss over the parameter ring),
        ``specialize`` (exact solves at random rational parameter values,
        reconstructed with known weighted degrees and checked on an extra
        point) and ``graded`` (normalization by ``Res(J) = rank`` alone, valid
        because every parameter has positive weight).  ``auto`` uses graded
        when there are no parameters and specialize otherwise; symbolic is
        kept as an independent cross-check.
        """
        if strategy == "auto":
            if self._residues is not None:
                return self._residues
            if not self.param_names:
                strategy = "graded"
            else:
                strategy = "specialize"
        if strategy == "symbolic":
            res = self._residues_symbolic()
        elif strategy == "specialize":
            res = self._residues_specialized(seed)
        elif strategy == "graded":
            res = self._residues_graded()
        else:
            raise ValueError(f"unknown residue strategy {strategy!r}")
        self._validate_residues(res)
        if self._residues is None:
            self._residues = res
            self._residue_strategy = strategy
        return res

    def _validate_residues(self, res: Sequence[Polynomial]) -> None:
        jc = self.coords(self.nf(self.jacobian()))
        total = Polynomial.constant(self.registry, 0)
        for c, v in zip(jc, res):
            total = total + c * v
        if total != self.rank:
            raise ResidueDegenerate(f"Res(J) = {total}, expected {self.rank}")
        for m, v in zip(self.basis.monomials, res):
            d = weighted_degree(v)
            if d == ZERO:
                continue
            if d == INHOMOGENEOUS or d != self.registry.degree(m) - self.dim:
                raise StructuralError("residue value has the wrong weighted degree")

    def _residues_symbolic(self) -> list[Polynomial]:
        A, tr, _ = self._residue_system()
        try:
            y, d = linalg.bareiss_solve(A, tr, exquo)
        except linalg.SingularMatrixError as exc:
            raise ResidueDegenerate(str(exc)) from None
        try:
            return [exquo(v, d) for v in y]
        except ArithmeticError:
            raise StructuralError("residue values are not polynomial in the parameters") from None

    def _residues_graded(self) -> list[Polynomial]:
        jc = self.coords(self.nf(self.jacobian()))
        top = [i for i, dgr in enumerate(self.basis.degrees) if dgr == self.dim]
        if len(top) != 1:
            raise StructuralError(f"expected one top-degree standard monomial, found {len(top)}")
        t = top[0]
        lead = jc[t]
        if not lead or not lead.is_constant():
            raise ResidueDegenerate("Jacobian class has no scalar top component")
        val = Fraction(self.rank) / Fraction(lead.constant_value())
        return [Polynomial.constant(self.registry, val if i == t else 0) for i in range(self.rank)]

    def _residues_specialized(self, seed: int) -> list[Polynomial]:
        A, tr, _ = self._residue_system()
        reg = self.registry
        pidx = reg.param_indices()
        targets = [reg.degree(m) - self.dim for m in self.basis.monomials]
        monos = [reg.monomials_of_degree(e, pidx) if e >= 0 else [] for e in targets]
        need = max([len(m) for m in monos] + [1]) + 1
        rng = random.Random(seed)
        samples = []
        attempts = 0
        while len(samples) < need:
            attempts += 1
            if attempts > 10 * need + 20:
                raise ResidueDegenerate("singular at every sampled parameter point")
            point = {reg.vars[i].name: Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for i in pidx}
            Av = [[Fraction(v.evaluate(point).constant_value()) for v in row] for row in A]
            tv = [Fraction(v.evaluate(point).constant_value()) for v in tr]
            try:
                sol = linalg.solve_rational(Av, tv)
            except linalg.SingularMatrixError:
                continue
            samples.append((point, sol))
        out = []
        for b, ms in enumerate(monos):
            values = [sol[b] for _, sol in samples]
            if not ms:
                if any(values):
                    raise StructuralError("residue of a low-degree monomial is nonzero")
                out.append(Polynomial.constant(reg, 0))
                continue
            fit = samples[:len(ms)]
            V = [[_eval_monomial(reg, m, pt) for m in ms] for pt, _ in fit]
            try:
                coef = linalg.solve_rational(V, values[:len(ms)])
            except linalg.SingularMatrixError:
                raise ResidueDegenerate("interpolation points are degenerate") from None
            poly = Polynomial(reg, dict(zip(ms, coef)))
            for pt, sol in samples[len(ms):]:
                if Fraction(poly.evaluate(pt).constant_value()) != sol[b]:
                    raise StructuralError("residue reconstruction inconsistent on validation point")
            out.append(poly)
        return out

    def residue(self, p) -> Polynomial:
        """The residue functional on an arbitrary ring element or polynomial."""
        if isinstance(p, RingElement):
            poly = p.poly
        else:
            poly = self.element(p).poly
        res = self.residue_values()
        out = Polynomial.constant(self.registry, 0)
        for c, v in zip(self.coords(poly), res):
            if c and v:
                out = out + c * v
        return out

    def pairing(self, a, b) -> Polynomial:
        return self.residue(self.element(a) * self.element(b))

    def pairing_table(self, strategy: str = "auto") -> PairingTable:
        if self._pairing is not None and strategy == "auto":
            return self._pairing
        res = self.residue_values(strategy)
        r = self.rank
        mat = [[None] * r for _ in range(r)]
        for a in range(r):
            for b in range(a, r):
                pc = self.product_coords(a, b)
                v = Polynomial.constant(self.registry, 0)
                for c, rv in zip(pc, res):
                    if c and rv:
                        v = v + c * rv
                mat[a][b] = mat[b][a] = v
        table = PairingTable(self, mat, list(res), strategy if strategy != "auto" else self._residue_strategy)
        if strategy == "auto":
            self._pairing = table
        return table

    # -- enumerative ----------------------------------------------------
    def _degree_tuple(self, d) -> tuple[int, ...]:
        if isinstance(d, int):
            d = (d,)
        d = tuple(d)
        if len(d) != len(self.quantum_names):
            raise ValueError(f"degree multi-index must have {len(self.quantum_names)} entries")
        if any(x < 0 for x in d):
            raise ValueError("degree entries must be non-negative")
        return d

    def q_degree_weight(self, d: Sequence[int]) -> int:
        return sum(x * self.registry.var(n).weight for x, n in zip(d, self.quantum_names))

    def gw_3point(self, a, b, c, d) -> GWValue:
        d = self._degree_tuple(d)
        a, b, c = (self.element(x) for x in (a, b, c))
        degs = [x.degree() for x in (a, b, c)]
        if any(x == INHOMOGENEOUS for x in degs):
            raise ValueError("gw_3point needs homogeneous insertions")
        if any(x == ZERO for x in degs):
            return GWValue(d, Fraction(0))
        if not self.equivariant and sum(degs) != self.dim + self.q_degree_weight(d):
            return GWValue(d, Fraction(0))
        return _gw_value(d, coeff_extract(self.pairing(a * b, c), d))

    def divisor_count(self, classes: Sequence, d) -> GWValue:
        d = self._degree_tuple(d)
        first = {self.registry.index(n) for n in self.chern_names if n.endswith("[1]")}
        prod = self.one()
        for cl in classes:
            p = self.parse(cl) if isinstance(cl, str) else cl
            if isinstance(p, RingElement):
                p = p.poly
            p = p.embed(self.registry)
            for e in p.terms:
                nz = [i for i, x in enumerate(e) if x]
                if len(nz) != 1 or e[nz[0]] != 1 or nz[0] not in first:
                    raise ValueError(f"{p} is not a linear combination of first Chern classes")
            prod = prod * RingElement(self, p)
        return _gw_value(d, coeff_extract(self.residue(prod), d))

    # -- checks ---------------------------------------------------------
    def random_homogeneous(self, rng: random.Random, degree: int | None = None) -> RingElement:
        reg = self.registry
        pidx = reg.param_indices()
        if degree is None:
            degree = rng.randint(0, max(self.dim, 0))
        while True:
            terms = {}
            for m, dm in zip(self.basis.monomials, self.basis.degrees):
                if dm > degree:
                    continue
                for u in reg.monomials_of_degree(degree - dm, pidx):
                    if rng.random() < 0.6:
                        c = rng.randint(-5, 5)
                        if c:
                            terms[tuple(x + y for x, y in zip(m, u))] = c
            if terms:
                return RingElement(self, Polynomial(reg, terms), reduced=True)
            degree = rng.randint(0, max(self.dim, 0))

    def frobenius_check(self, trials: int = 100, seed: int = 0) -> bool:
        rng = random.Random(seed)
        for _ in range(trials):
            a, b, c = (self.random_homogeneous(rng) for _ in range(3))
            if self.pairing(a * b, c) != self.pairing(a, b * c):
                return False
        return True

    def __repr__(self):
        return f"QuantumRing({self.label or self.registry.names}, rank={self.rank})"


def _eval_monomial(reg: VarRegistry, m: tuple, point: Mapping[str, Fraction]) -> Fraction:
    v = Fraction(1)
    for i, k in enumerate(m):
        if k:
            v *= point[reg.vars[i].name] ** k
    return v


def _gw_value(d, coeff: Polynomial) -> GWValue:
    if coeff.is_constant():
        return GWValue(d, Fraction(coeff.constant_value()))
    return GWValue(d, coeff)


def residue_table(ctx: QuantumRing, strategy: str = "auto") -> PairingTable:
    return ctx.pairing_table(strategy)


def gw_3point(a: RingElement, b: RingElement, c: RingElement, d) -> GWValue:
    return a.ring.gw_3point(a, b, c, d)


def divisor_count(ctx: QuantumRing, classes: Sequence, d) -> GWValue:
    return ctx.divisor_count(classes, d)


def frobenius_check(ctx: QuantumRing, trials: int = 100, seed: int = 0) -> bool:
    return ctx.frobenius_check(trials, seed)
