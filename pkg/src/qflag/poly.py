"""Exact sparse multivariate polynomials over Q with weighted block orders.

Polynomials are immutable maps ``exponent tuple -> coefficient`` living over a
:class:`VarRegistry`.  Coefficients are Python ``int`` when integral and
:class:`fractions.Fraction` otherwise; floats are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Var",
    "VarRegistry",
    "Polynomial",
    "UPoly",
    "ParseError",
    "RegistryMismatch",
    "ZERO",
    "INHOMOGENEOUS",
    "weighted_degree",
    "coeff_extract",
    "poly_arith",
    "exquo",
]

ZERO = "zero"
INHOMOGENEOUS = "inhomogeneous"

# block index per variable kind: chern block sorts above quantum above equivariant
BLOCK_OF_KIND = {
    "chern": 0,
    "generic": 0,
    "quantum": 1,
    "equivariant": 2,
    "torus": 2,
}


class RegistryMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


def _norm(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


@dataclass(frozen=True)
class Var:
    name: str
    kind: str
    index: tuple
    weight: int

    @property
    def block(self) -> int:
        return BLOCK_OF_KIND[self.kind]

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "index": list(self.index),
                "weight": self.weight}


class VarRegistry:
    """Ordered, weighted variable table.

    Variables must already be sorted by block.  Within a block the first
    variable listed is the largest for the reverse-lexicographic tie break.
    """

    __slots__ = ("vars", "_pos", "_weights", "_blocks", "_keys", "_hash")

    def __init__(self, variables: Iterable[Var]):
        self.vars = tuple(variables)
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for v in self.vars:
            if not isinstance(v.weight, int) or v.weight <= 0:
                raise ValueError(f"weight of {v.name} must be a positive integer")
        blocks = [v.block for v in self.vars]
        if blocks != sorted(blocks):
            raise ValueError("variables must be listed chern block, then quantum, then equivariant")
        self._pos = {v.name: i for i, v in enumerate(self.vars)}
        self._weights = tuple(v.weight for v in self.vars)
        self._blocks = tuple(
            tuple(i for i, v in enumerate(self.vars) if v.block == b)
            for b in sorted(set(blocks))
        )
        self._keys: dict = {}
        self._hash = hash(self.vars)

    @classmethod
    def generic(cls, names: Sequence[str], weights: Sequence[int] | None = None) -> "VarRegistry":
        weights = weights or [1] * len(names)
        return cls(Var(n, "generic", (i,), w) for i, (n, w) in enumerate(zip(names, weights)))

    def __len__(self):
        return len(self.vars)

    def __iter__(self):
        return iter(self.vars)

    def __eq__(self, other):
        return isinstance(other, VarRegistry) and self.vars == other.vars

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VarRegistry({', '.join(self.names)})"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @property
    def weights(self) -> tuple[int, ...]:
        return self._weights

    def index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._pos

    def var(self, name: str) -> Var:
        return self.vars[self.index(name)]

    def indices(self, *kinds: str) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.vars) if v.kind in kinds)

    def chern_indices(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.vars) if v.block == 0)

    def param_indices(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.vars) if v.block > 0)

    def quantum_indices(self) -> tuple[int, ...]:
        return self.indices("quantum")

    def degree(self, exp: tuple) -> int:
        return sum(e * w for e, w in zip(exp, self._weights))

    def key(self, exp: tuple) -> tuple:
        """Sort key realizing the block weighted-grevlex order (larger key = larger monomial)."""
        k = self._keys.get(exp)
        if k is None:
            out = []
            w = self._weights
            for idx in self._blocks:
                out.append(sum(exp[i] * w[i] for i in idx))
                out.extend(-exp[i] for i in reversed(idx))
            k = self._keys[exp] = tuple(out)
        return k

    def zero_exp(self) -> tuple:
        return (0,) * len(self.vars)

    def unit_exp(self, i: int) -> tuple:
        e = [0] * len(self.vars)
        e[i] = 1
        return tuple(e)

    def monomials_of_degree(self, degree: int, indices: Sequence[int]) -> list[tuple]:
        """All exponent vectors supported on ``indices`` with the given weighted degree."""
        out: list[tuple] = []
        n = len(self.vars)

        def rec(pos, remaining, exp):
            if pos == len(indices):
                if remaining == 0:
                    out.append(tuple(exp))
                return
            i = indices[pos]
            w = self._weights[i]
            for e in range(remaining // w + 1):
                exp[i] = e
                rec(pos + 1, remaining - e * w, exp)
            exp[i] = 0

        if degree >= 0:
            rec(0, degree, [0] * n)
        return out

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.vars]


def _monomial_text(names, exp) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("registry", "terms", "_hash")

    def __init__(self, registry: VarRegistry, terms: Mapping[tuple, object] | None = None):
        self.registry = registry
        clean = {}
        n = len(registry)
        for exp, c in (terms or {}).items():
            c = _norm(c)
            if c:
                exp = tuple(exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp}")
                clean[exp] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, registry, terms):
        p = object.__new__(cls)
        p.registry = registry
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, registry: VarRegistry, c=1) -> "Polynomial":
        c = _norm(c)
        return cls._raw(registry, {registry.zero_exp(): c} if c else {})

    @classmethod
    def variable(cls, registry: VarRegistry, name: str) -> "Polynomial":
        return cls._raw(registry, {registry.unit_exp(registry.index(name)): 1})

    @classmethod
    def monomial(cls, registry: VarRegistry, exp: tuple, c=1) -> "Polynomial":
        c = _norm(c)
        return cls._raw(registry, {tuple(exp): c} if c else {})

    # -- basic protocol -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.registry == other.registry and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.registry, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.registry, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return self.to_text()

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.registry != self.registry:
                raise RegistryMismatch("polynomials live over different registries")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.registry, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return Polynomial._raw(self.registry, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.registry, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm(other)
            if not other:
                return Polynomial._raw(self.registry, {})
            return Polynomial._raw(self.registry, {e: _norm(c * other) for e, c in self.terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        return Polynomial._raw(self.registry, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.registry, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * c

    def diff(self, name: str) -> "Polynomial":
        i = self.registry.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                t = list(e)
                t[i] = k - 1
                out[tuple(t)] = c * k
        return Polynomial._raw(self.registry, out)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient ``self / other``; raises ``ArithmeticError`` unless exact."""
        return exquo(self, other)

    # -- inspection -----------------------------------------------------
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.registry.zero_exp() in self.terms)

    def constant_value(self):
        """The constant term (0 if absent)."""
        return self.terms.get(self.registry.zero_exp(), 0)

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in descending monomial order."""
        key = self.registry.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_exp(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.registry.key)

    def lead_coeff(self):
        return self.terms[self.lead_exp()]

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def weighted_degree(self):
        return weighted_degree(self)

    def is_homogeneous(self) -> bool:
        return weighted_degree(self) != INHOMOGENEOUS

    def denominators_lcm(self) -> int:
        from math import lcm
        d = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        return d

    # -- transformations ------------------------------------------------
    def evaluate(self, assignment: Mapping[str, object]) -> "Polynomial":
        """Substitute rational values for some variables (others untouched)."""
        reg = self.registry
        vals = {reg.index(k): _norm(v) for k, v in assignment.items()}
        out: dict = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, v in vals.items():
                if e[i]:
                    c = c * v ** e[i]
                    e2[i] = 0
            if c:
                t = tuple(e2)
                out[t] = out.get(t, 0) + c
        return Polynomial(reg, out)

    def substitute(self, mapping: Mapping[str, "Polynomial"], target: VarRegistry | None = None) -> "Polynomial":
        """Replace variables by polynomials over ``target``.

        Variables not in ``mapping`` are carried over to ``target`` by name.
        """
        target = target or self.registry
        src = self.registry
        images = []
        for v in src.vars:
            if v.name in mapping:
                img = mapping[v.name]
                if not isinstance(img, Polynomial):
                    img = Polynomial.constant(target, img)
                elif img.registry != target:
                    img = img.embed(target)
                images.append(img)
            elif v.name in target:
                images.append(None)
            else:
                # only an error if the variable actually occurs
                images.append(False)
        powers: dict = {}
        result: dict = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            direct = [0] * len(target)
            for i, k in enumerate(e):
                if not k:
                    continue
                img = images[i]
                if img is None:
                    direct[target.index(src.vars[i].name)] += k
                elif img is False:
                    raise RegistryMismatch(f"variable {src.vars[i].name} has no image in target registry")
                else:
                    pk = powers.get((i, k))
                    if pk is None:
                        pk = powers[(i, k)] = img ** k
                    term = term * pk
            d = tuple(direct)
            for e2, c2 in term.terms.items():
                t = tuple(a + b for a, b in zip(e2, d))
                result[t] = result.get(t, 0) + c2
        return Polynomial(target, result)

    def embed(self, target: VarRegistry) -> "Polynomial":
        """Re-express over another registry, matching variables by name."""
        if target == self.registry:
            return self
        src_names = self.registry.names
        out = {}
        n = len(target)
        for e, c in self.terms.items():
            t = [0] * n
            for i, k in enumerate(e):
                if k:
                    name = src_names[i]
                    if name not in target:
                        raise RegistryMismatch(f"variable {name} missing from target registry")
                    t[target.index(name)] = k
            out[tuple(t)] = c
        return Polynomial._raw(target, out)

    # -- text / json ----------------------------------------------------
    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or self.registry.names
        pieces = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = _monomial_text(names, e)
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if i == 0:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f" - {body}" if neg else f" + {body}")
        return "".join(pieces)

    def to_json(self) -> dict:
        terms = []
        for e, c in self.sorted_terms():
            f = Fraction(c)
            terms.append({"coeff": f"{f.numerator}/{f.denominator}", "exps": list(e)})
        return {"vars": list(self.registry.names), "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping, registry: VarRegistry) -> "Polynomial":
        if list(data["vars"]) != list(registry.names):
            raise RegistryMismatch("JSON variable list does not match registry")
        terms = {}
        for t in data["terms"]:
            exp = tuple(int(x) for x in t["exps"])
            if exp in terms:
                raise ValueError("duplicate monomial in JSON polynomial")
            terms[exp] = Fraction(t["coeff"])
        return cls(registry, terms)

    @classmethod
    def parse(cls, text: str, registry: VarRegistry,
              aliases: Mapping[str, "Polynomial"] | None = None) -> "Polynomial":
        return _Parser(text, registry, aliases or {}).parse()


# ---------------------------------------------------------------------------
# free functions named after the operations they implement


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.registry != b.registry:
        raise RegistryMismatch("polynomials live over different registries")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def exquo(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact multivariate division (single-divisor division algorithm)."""
    if f.registry != g.registry:
        raise RegistryMismatch("polynomials live over different registries")
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    key = f.registry.key
    lg = g.lead_exp()
    lc = g.terms[lg]
    if len(g.terms) == 1:
        out = {}
        for e, c in f.terms.items():
            t = tuple(a - b for a, b in zip(e, lg))
            if min(t, default=0) < 0:
                raise ArithmeticError("division is not exact")
            out[t] = _norm(Fraction(c) / lc)
        return Polynomial._raw(f.registry, out)
    r = dict(f.terms)
    q = {}
    while r:
        e = max(r, key=key)
        c = r[e]
        s = tuple(a - b for a, b in zip(e, lg))
        if min(s, default=0) < 0:
            raise ArithmeticError("division is not exact")
        t = _norm(Fraction(c) / lc)
        q[s] = t
        for ge, gc in g.terms.items():
            m = tuple(a + b for a, b in zip(ge, s))
            v = r.get(m, 0) - t * gc
            if v:
                r[m] = v
            else:
                r.pop(m, None)
    return Polynomial(f.registry, q)


def weighted_degree(p: Polynomial):
    """Weighted degree of a homogeneous polynomial, else ``ZERO``/``INHOMOGENEOUS``."""
    if not p.terms:
        return ZERO
    degs = {p.registry.degree(e) for e in p.terms}
    if len(degs) > 1:
        return INHOMOGENEOUS
    return degs.pop()


def coeff_extract(p: Polynomial, qexp: Sequence[int]) -> Polynomial:
    """Coefficient of ``q^qexp`` where ``qexp`` is indexed by the quantum variables."""
    qidx = p.registry.quantum_indices()
    qexp = tuple(qexp)
    if len(qexp) != len(qidx):
        raise ValueError(f"degree multi-index must have {len(qidx)} entries")
    out = {}
    for e, c in p.terms.items():
        if all(e[i] == d for i, d in zip(qidx, qexp)):
            e2 = list(e)
            for i in qidx:
                e2[i] = 0
            out[tuple(e2)] = c
    return Polynomial._raw(p.registry, out)


# ---------------------------------------------------------------------------
# univariate polynomials in the formal variable x


class UPoly:
    """Polynomial in the bookkeeping variable ``x`` with Polynomial coefficients.

    ``coeffs[k]`` is the coefficient of ``x^k``; trailing zeros are stripped.
    """

    __slots__ = ("registry", "coeffs")

    def __init__(self, registry: VarRegistry, coeffs: Sequence[Polynomial | int | Fraction]):
        self.registry = registry
        cs = []
        for c in coeffs:
            if isinstance(c, Polynomial):
                if c.registry != registry:
                    raise RegistryMismatch("coefficient over a different registry")
                cs.append(c)
            else:
                cs.append(Polynomial.constant(registry, c))
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x_power(cls, registry: VarRegistry, k: int, c=1) -> "UPoly":
        zero = Polynomial.constant(registry, 0)
        c = c if isinstance(c, Polynomial) else Polynomial.constant(registry, c)
        return cls(registry, [zero] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Polynomial:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Polynomial.constant(self.registry, 0)

    def leading_coeff(self) -> Polynomial:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.registry == other.registry and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UPoly") -> "UPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.registry, [self.coeff(k) + other.coeff(k) for k in range(m)])

    def __neg__(self):
        return UPoly(self.registry, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UPoly):
            if not self.coeffs or not other.coeffs:
                return UPoly(self.registry, [])
            zero = Polynomial.constant(self.registry, 0)
            out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return UPoly(self.registry, out)
        return UPoly(self.registry, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def map_coeffs(self, fn) -> "UPoly":
        mapped = [fn(c) for c in self.coeffs]
        reg = mapped[0].registry if mapped else self.registry
        return UPoly(reg, mapped)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not xs:
                pieces.append(f"({c})" if len(c.terms) > 1 else str(c))
            elif c == 1:
                pieces.append(xs)
            elif len(c.terms) == 1:
                pieces.append(f"{c}*{xs}")
            else:
                pieces.append(f"({c})*{xs}")
        return " + ".join(pieces)

    def __str__(self):
        return self.to_text()

    __repr__ = __str__


# ---------------------------------------------------------------------------
# parser for the canonical text syntax

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)*(?:\[\d+\])*)"
    r"|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, text, registry, aliases):
        self.text = text
        self.registry = registry
        self.aliases = aliases
        self.tokens = self._tokenize(text)
        self.i = 0

    @staticmethod
    def _tokenize(text):
        out = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                 len(text) - len(text[pos:].lstrip()))
            kind = m.lastgroup
            start = m.start(kind)
            out.append((kind, m.group(kind), start))
            pos = m.end()
        out.append(("end", "", len(text)))
        return out

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {v!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            p = p + rhs if op == "+" else p - rhs
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                p = p * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    raise ParseError("division only by nonzero rational constants", pos)
                p = p * (1 / Fraction(rhs.constant_value()))
        return p

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            base = base ** int(v)
        return base

    def atom(self):
        kind, v, pos = self.take()
        if kind == "num":
            return Polynomial.constant(self.registry, int(v))
        if kind == "name":
            if v in self.aliases:
                return self.aliases[v]
            if v in self.registry:
                return Polynomial.variable(self.registry, v)
            raise ParseError(f"unknown variable {v!r}", pos)
        if v == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {v or 'end of input'!r}", pos)


def all_exponents(bounds: Sequence[int]):
    """Cartesian product of ``range(b)`` for each bound."""
    return _cartesian(*(range(b) for b in bounds))
