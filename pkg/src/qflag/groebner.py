"""Buchberger's algorithm, normal forms and standard monomials.

Generators are kept as primitive integer polynomials (coprime coefficients,
positive leading coefficient) and reduction is fraction-free.
"""

from __future__ import annotations

import hashlib
import heapq
import json
import logging
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

from .poly import Polynomial, VarRegistry

__all__ = [
    "GroebnerBasis",
    "StdBasis",
    "ResourceLimitError",
    "StructuralError",
    "buchberger",
    "normal_form",
    "std_basis",
    "GBCache",
    "ORDER_TAG",
    "ENGINE_VERSION",
]

log = logging.getLogger(__name__)

ORDER_TAG = "block-wgrevlex(chern>quantum>equivariant)"
ENGINE_VERSION = "1"

DEFAULT_MAX_GENERATORS = 5000
DEFAULT_MAX_TERMS = 10 ** 6


class ResourceLimitError(RuntimeError):
    pass


class StructuralError(RuntimeError):
    """The quotient is not presented as a free module over the parameters."""


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple([x - y for x, y in zip(a, b)])


def _add(a: tuple, b: tuple) -> tuple:
    return tuple([x + y for x, y in zip(a, b)])


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Elt:
    __slots__ = ("terms", "lead", "lc")

    def __init__(self, terms: dict, lead: tuple):
        self.terms = terms
        self.lead = lead
        self.lc = terms[lead]


def _primitive(terms: dict, lead: tuple) -> dict:
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    if terms[lead] < 0:
        g = -g
    if g == 1:
        return terms
    return {e: c // g for e, c in terms.items()}


def _integral(p: Polynomial) -> tuple[dict, int]:
    """Clear denominators: returns (integer terms, D) with terms = D * p."""
    d = p.denominators_lcm()
    if d == 1:
        return dict(p.terms), 1
    return {e: int(c * d) for e, c in p.terms.items()}, d


class _Reducer:
    """Fraction-free full reduction against a list of integer generators."""

    def __init__(self, registry: VarRegistry):
        self.registry = registry
        self._neg: dict = {}

    def negkey(self, e):
        k = self._neg.get(e)
        if k is None:
            k = self._neg[e] = tuple(-x for x in self.registry.key(e))
        return k

    def reduce(self, f: dict, basis: Sequence[_Elt], max_terms: int = DEFAULT_MAX_TERMS) -> tuple[dict, int]:
        """Return ``(r, s)`` with ``r = s*f mod basis`` fully reduced."""
        f = dict(f)
        rem: dict = {}
        scale = 1
        negkey = self.negkey
        heap = [(negkey(e), e) for e in f]
        heapq.heapify(heap)
        queued = set(f)
        leads = [(g.lead, g) for g in basis]
        while heap:
            _, e = heapq.heappop(heap)
            queued.discard(e)
            c = f.pop(e, 0)
            if not c:
                continue
            g = None
            for lead, cand in leads:
                if _divides(lead, e):
                    g = cand
                    break
            if g is None:
                rem[e] = c
                continue
            L = g.lc
            d = gcd(c, L)
            lf, cf = L // d, c // d
            if lf != 1:
                if lf == -1:
                    lf, cf = 1, -cf
                else:
                    scale *= lf
                    for k in f:
                        f[k] *= lf
                    for k in rem:
                        rem[k] *= lf
            shift = _sub(e, g.lead)
            for ge, gc in g.terms.items():
                if ge == g.lead:
                    continue
                t = _add(ge, shift)
                v = f.get(t, 0) - cf * gc
                if v:
                    f[t] = v
                    if t not in queued:
                        queued.add(t)
                        heapq.heappush(heap, (negkey(t), t))
                else:
                    f.pop(t, None)
            if len(f) + len(rem) > max_terms:
                raise ResourceLimitError(f"intermediate polynomial exceeds {max_terms} terms")
        return rem, scale


@dataclass(frozen=True)
class StdBasis:
    """Standard monomials (chern exponent vectors) grouped by weighted degree."""

    registry: VarRegistry
    monomials: tuple[tuple, ...]
    degrees: tuple[int, ...]

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def index(self, exp: tuple) -> int:
        return self._index[exp]

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {m: i for i, m in enumerate(self.monomials)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def degree_profile(self) -> list[int]:
        if not self.degrees:
            return []
        out = [0] * (max(self.degrees) + 1)
        for d in self.degrees:
            out[d] += 1
        return out

    def polynomials(self) -> list[Polynomial]:
        return [Polynomial.monomial(self.registry, m) for m in self.monomials]

    def to_text(self) -> list[str]:
        return [str(p) for p in self.polynomials()]


class GroebnerBasis:
    """Reduced Gröbner basis of a relation ideal.

    ``generators`` have coprime integer coefficients with a positive leading
    coefficient and are sorted by increasing leading monomial.  The
    basis also caches normal forms of chern monomials, which is valid because
    all leading monomials are free of parameters (checked on construction).
    """

    def __init__(self, registry: VarRegistry, int_generators: Sequence[dict],
                 source: Sequence[Polynomial] = (), label: str = ""):
        self.registry = registry
        self.order = ORDER_TAG
        self.label = label
        self.source = tuple(source)
        key = registry.key
        elts = []
        for t in int_generators:
            lead = max(t, key=key)
            elts.append(_Elt(_primitive(t, lead), lead))
        elts.sort(key=lambda g: key(g.lead))
        self._elts = elts
        self.leads = tuple(g.lead for g in elts)
        self.generators = tuple(Polynomial(registry, g.terms) for g in elts)
        pidx = registry.param_indices()
        self.params_free_leads = all(not any(lead[i] for i in pidx) for lead in self.leads)
        self._reducer = _Reducer(registry)
        self._mono_cache: dict = {}
        self._std: StdBasis | None = None

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.registry == other.registry
                and self.generators == other.generators)

    def __hash__(self):
        return hash(self.generators)

    def lead_monomials(self) -> list[Polynomial]:
        return [Polynomial.monomial(self.registry, e) for e in self.leads]

    # -- reduction ------------------------------------------------------
    def _reduce_poly(self, p: Polynomial) -> Polynomial:
        f, d = _integral(p)
        rem, scale = self._reducer.reduce(f, self._elts)
        den = d * scale
        return Polynomial(self.registry, {e: Fraction(c, den) for e, c in rem.items()})

    def _chern_split(self, e: tuple):
        pidx = self._pidx
        m = list(e)
        u = [0] * len(e)
        for i in pidx:
            if e[i]:
                u[i] = e[i]
                m[i] = 0
        return tuple(m), tuple(u)

    @property
    def _pidx(self):
        return self.registry.param_indices()

    def _nf_monomial(self, m: tuple) -> dict:
        nf = self._mono_cache.get(m)
        if nf is None:
            rem, scale = self._reducer.reduce({m: 1}, self._elts)
            if scale == 1:
                nf = rem
            else:
                nf = {e: Fraction(c, scale) for e, c in rem.items()}
            self._mono_cache[m] = nf
        return nf

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.registry != self.registry:
            p = p.embed(self.registry)
        if not self.params_free_leads:
            return self._reduce_poly(p)
        out: dict = {}
        has_params = bool(self._pidx)
        for e, c in p.terms.items():
            if has_params:
                m, u = self._chern_split(e)
            else:
                m, u = e, None
            for te, tc in self._nf_monomial(m).items():
                t = _add(te, u) if u is not None else te
                out[t] = out.get(t, 0) + c * tc
        return Polynomial(self.registry, out)

    def normal_form_direct(self, p: Polynomial) -> Polynomial:
        """Normal form by plain division, bypassing the monomial cache."""
        return self._reduce_poly(p.embed(self.registry))

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    # -- structure ------------------------------------------------------
    def std_basis(self) -> StdBasis:
        if self._std is None:
            self._std = _enumerate_std(self)
        return self._std

    def is_groebner(self, sample: int | None = None, rng: random.Random | None = None) -> bool:
        """Buchberger criterion on all pairs (or a random sample of them)."""
        pairs = [(i, j) for i in range(len(self._elts)) for j in range(i + 1, len(self._elts))]
        if sample is not None and sample < len(pairs):
            pairs = (rng or random.Random(0)).sample(pairs, sample)
        for i, j in pairs:
            gi, gj = self._elts[i], self._elts[j]
            if _coprime(gi.lead, gj.lead):
                continue
            s = _spoly(gi, gj)
            if s and self._reducer.reduce(s, self._elts)[0]:
                return False
        return True

    def is_reduced(self) -> bool:
        for g in self._elts:
            for e in g.terms:
                for h in self._elts:
                    if h is g:
                        continue
                    if _divides(h.lead, e):
                        return False
        return True

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "vars": list(self.registry.names),
            "generators": [g.to_json() for g in self.generators],
        }


def _spoly(g1: _Elt, g2: _Elt) -> dict:
    l = _lcm(g1.lead, g2.lead)
    d = gcd(g1.lc, g2.lc)
    a, b = g2.lc // d, g1.lc // d
    s1, s2 = _sub(l, g1.lead), _sub(l, g2.lead)
    out: dict = {}
    for e, c in g1.terms.items():
        t = _add(e, s1)
        out[t] = out.get(t, 0) + a * c
    for e, c in g2.terms.items():
        t = _add(e, s2)
        v = out.get(t, 0) - b * c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return {e: c for e, c in out.items() if c}


def _enumerate_std(gb: GroebnerBasis) -> StdBasis:
    reg = gb.registry
    if not gb.params_free_leads:
        raise StructuralError("leading monomials involve parameters; quotient not presented as a free module")
    cidx = reg.chern_indices()
    n = len(reg)
    bounds = {}
    for i in cidx:
        pure = [lead[i] for lead in gb.leads
                if lead[i] and all(lead[j] == 0 for j in range(n) if j != i)]
        if not pure:
            raise StructuralError(f"no pure power of {reg.vars[i].name} among leading monomials; "
                                  "standard monomials would be infinite (engine bug)")
        bounds[i] = min(pure)
    out = []

    def rec(pos, exp):
        if pos == len(cidx):
            t = tuple(exp)
            if not any(_divides(lead, t) for lead in gb.leads):
                out.append(t)
            return
        i = cidx[pos]
        for k in range(bounds[i]):
            exp[i] = k
            # prune: once divisible, all larger exponents are too
            if any(_divides(lead, tuple(exp)) for lead in gb.leads):
                break
            rec(pos + 1, exp)
        exp[i] = 0

    rec(0, [0] * n)
    out.sort(key=lambda e: (reg.degree(e), reg.key(e)))
    return StdBasis(reg, tuple(out), tuple(reg.degree(e) for e in out))


def buchberger(relations: Iterable[Polynomial], registry: VarRegistry | None = None, *,
               max_generators: int = DEFAULT_MAX_GENERATORS,
               max_terms: int = DEFAULT_MAX_TERMS,
               max_degree: int | None = None,
               label: str = "") -> GroebnerBasis:
    """Reduced Gröbner basis for the ideal generated by ``relations``.

    Pairs are processed by the normal strategy (smallest weighted lcm degree
    first, ties broken by the monomial order and then by index) with the
    Gebauer-Möller criteria; inputs are fed in by degree as well.
    """
    relations = [r for r in relations]
    if not relations:
        raise ValueError("relation list is empty")
    reg = registry or relations[0].registry
    relations = [r.embed(reg) for r in relations]
    key = reg.key
    reducer = _Reducer(reg)

    inputs = []
    for r in relations:
        if r:
            t, _ = _integral(r)
            inputs.append(t)

    elts: list[_Elt] = []
    active: list[int] = []
    pairs: set = set()

    def input_key(idx):
        t = inputs[idx]
        return (max(reg.degree(e) for e in t), 0, idx)

    def pair_key(p):
        i, j = p
        l = _lcm(elts[i].lead, elts[j].lead)
        return (reg.degree(l), 1, key(l), i, j)

    def update(h: int):
        nonlocal active, pairs
        hl = elts[h].lead
        cands = list(active)
        kept = []
        while cands:
            g1 = cands.pop()
            l1 = _lcm(hl, elts[g1].lead)
            if _coprime(hl, elts[g1].lead):
                kept.append(g1)
                continue
            if any(_divides(_lcm(hl, elts[g2].lead), l1) for g2 in cands + kept):
                continue
            kept.append(g1)
        new_pairs = {(min(g, h), max(g, h)) for g in kept if not _coprime(hl, elts[g].lead)}
        survivors = set()
        for (a, b) in pairs:
            l = _lcm(elts[a].lead, elts[b].lead)
            if (_divides(hl, l) and _lcm(elts[a].lead, hl) != l and _lcm(elts[b].lead, hl) != l):
                continue
            survivors.add((a, b))
        pairs = survivors | new_pairs
        active = [g for g in active if not _divides(hl, elts[g].lead)] + [h]

    pending_inputs = sorted(range(len(inputs)), key=input_key)
    while pending_inputs or pairs:
        cand_pair = min(pairs, key=pair_key) if pairs else None
        use_input = False
        if pending_inputs:
            if cand_pair is None or input_key(pending_inputs[0]) <= pair_key(cand_pair):
                use_input = True
        if use_input:
            f = inputs[pending_inputs.pop(0)]
        else:
            pairs.discard(cand_pair)
            i, j = cand_pair
            if max_degree is not None and pair_key(cand_pair)[0] > max_degree:
                raise ResourceLimitError(f"S-polynomial degree exceeds {max_degree}")
            f = _spoly(elts[i], elts[j])
            if not f:
                continue
        r, _ = reducer.reduce(f, [elts[g] for g in active], max_terms)
        if not r:
            continue
        lead = max(r, key=key)
        elts.append(_Elt(_primitive(r, lead), lead))
        if len(elts) > max_generators:
            raise ResourceLimitError(f"more than {max_generators} generators")
        update(len(elts) - 1)

    # the active set is minimal; interreduce tails
    final = []
    for g in active:
        others = [elts[h] for h in active if h != g]
        r, _ = reducer.reduce(elts[g].terms, others, max_terms)
        final.append(r)
    gb = GroebnerBasis(reg, final, source=relations, label=label)
    log.debug("GB %s: %d generators, leads %s", label, len(gb), gb.leads)
    return gb


def normal_form(x: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(x)


def std_basis(gb: GroebnerBasis) -> StdBasis:
    return gb.std_basis()


# ---------------------------------------------------------------------------
# on-disk cache


class GBCache:
    """Versioned JSON cache of reduced Gröbner bases.

    Loading re-validates a random sample of S-pairs, checks that every source
    relation reduces to zero and, if given, that the standard basis has the
    expected size.  A failed validation is treated as a miss.
    """

    def __init__(self, directory: str | os.PathLike | None = None):
        directory = directory or os.environ.get("QFLAG_CACHE_DIR")
        self.directory = Path(directory) if directory else None
        self.hits = 0
        self.misses = 0

    @staticmethod
    def make_key(dims: Sequence[int], equivariant: bool, extra: str = "") -> dict:
        return {"dims": list(dims), "equivariant": bool(equivariant), "order": ORDER_TAG,
                "engine": ENGINE_VERSION, "extra": extra}

    def _path(self, key: dict) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:24]
        return self.directory / f"gb-{digest}.json"

    def load(self, key: dict, registry: VarRegistry, relations: Sequence[Polynomial],
             expected_rank: int | None = None, sample: int = 8) -> GroebnerBasis | None:
        if self.directory is None:
            return None
        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            data = json.loads(path.read_text())
            if data.get("key") != key:
                raise ValueError("key mismatch")
            gens = [Polynomial.from_json(g, registry) for g in data["generators"]]
            ints = [_integral(g)[0] for g in gens]
            gb = GroebnerBasis(registry, ints, source=relations, label=data.get("label", ""))
            rng = random.Random(json.dumps(key, sort_keys=True))
            if not gb.is_groebner(sample=sample, rng=rng):
                raise ValueError("cached basis fails S-polynomial check")
            if any(gb.normal_form_direct(r) for r in relations):
                raise ValueError("cached basis does not contain the relations")
            if expected_rank is not None and len(gb.std_basis()) != expected_rank:
                raise ValueError("cached basis has wrong rank")
        except (ValueError, KeyError, TypeError, json.JSONDecodeError, StructuralError) as exc:
            log.warning("discarding GB cache entry %s: %s", path, exc)
            self.misses += 1
            return None
        self.hits += 1
        return gb

    def store(self, key: dict, gb: GroebnerBasis) -> None:
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {"version": ENGINE_VERSION, "key": key, "label": gb.label, **gb.to_json()}
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True, indent=1))
        tmp.replace(path)
