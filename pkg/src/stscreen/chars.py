"""Exact characters of Weyl/induced modules and Euler-characteristic arithmetic.

A :class:`Character` stores multiplicities on dominant weights only; the full
W-invariant weight function is expanded lazily. A :class:`SignedChiExpansion`
is a finite integer combination of Euler characteristics ``chi(mu)``.
"""

from __future__ import annotations

import functools
import json
import threading
from fractions import Fraction
from typing import Mapping

from .rootdata import RootSystem, Weight, is_dominant


class CharacterError(ValueError):
    pass


def _key(w) -> str:
    return "[" + ",".join(str(int(x)) for x in w) + "]"


def _unkey(s: str) -> Weight:
    s = s.strip().strip("[]()")
    return tuple(int(x) for x in s.split(",")) if s else ()


class Character:
    """W-invariant multiplicity function, stored on dominant weights."""

    def __init__(self, system: RootSystem, mults: Mapping[Weight, int]):
        clean = {}
        for w, m in mults.items():
            w = tuple(int(x) for x in w)
            if len(w) != system.rank:
                raise CharacterError(f"weight {w} has wrong rank for {system.name}")
            if not is_dominant(w):
                raise CharacterError(f"character keys must be dominant, got {w}")
            if m < 0:
                raise CharacterError(f"negative multiplicity {m} at {w}")
            if m:
                clean[w] = int(m)
        self.system = system
        self.mults = clean
        self._full = None
        self._lock = threading.Lock()

    def __eq__(self, other):
        return (isinstance(other, Character) and self.system is other.system
                and self.mults == other.mults)

    def __hash__(self):
        return hash((self.system.name, frozenset(self.mults.items())))

    def __repr__(self):
        return f"Character({self.system.name}, {len(self.mults)} dominant weights, dim={self.dim})"

    def mult(self, weight) -> int:
        dom, _ = self.system.to_dominant(weight)
        return self.mults.get(dom, 0)

    @property
    def dim(self) -> int:
        return sum(m * self.system.orbit_size(w) for w, m in self.mults.items())

    def full(self) -> dict[Weight, int]:
        """Multiplicity of every weight (orbit-expanded, cached)."""
        with self._lock:
            if self._full is None:
                out = {}
                for w, m in self.mults.items():
                    for v in self.system.orbit(w):
                        out[v] = m
                self._full = out
            return self._full

    def maximal_weights(self) -> list[Weight]:
        ws = list(self.mults)
        le = self.system.dominance_le
        return sorted(w for w in ws if not any(v != w and le(w, v) for v in ws))

    def to_json(self) -> dict:
        return {_key(w): m for w, m in sorted(self.mults.items())}

    @classmethod
    def from_json(cls, system: RootSystem, data: Mapping[str, int]) -> "Character":
        return cls(system, {_unkey(k): v for k, v in data.items()})


class SignedChiExpansion:
    """Integer combination of Euler characteristics over dominant weights."""

    def __init__(self, system: RootSystem, terms: Mapping[Weight, int] | None = None):
        self.system = system
        self.terms = {}
        for w, c in (terms or {}).items():
            w = tuple(int(x) for x in w)
            if not is_dominant(w):
                raise CharacterError(f"expansion keys must be dominant, got {w}")
            if c:
                self.terms[w] = self.terms.get(w, 0) + int(c)
        self.terms = {w: c for w, c in self.terms.items() if c}

    def add(self, weight, coeff: int) -> None:
        c = self.terms.get(weight, 0) + coeff
        if c:
            self.terms[weight] = c
        else:
            self.terms.pop(weight, None)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, SignedChiExpansion) and self.system is other.system
                and self.terms == other.terms)

    def __repr__(self):
        inner = ", ".join(f"{w}: {c}" for w, c in sorted(self.terms.items()))
        return f"SignedChiExpansion({self.system.name}, {{{inner}}})"

    def coefficient(self, weight) -> int:
        return self.terms.get(tuple(weight), 0)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def to_character(self) -> Character:
        """Sum of ``coeff * ch nabla(mu)``; raises if the result is not a character."""
        total: dict[Weight, int] = {}
        for w, c in self.terms.items():
            for v, m in weyl_character(self.system, w).mults.items():
                total[v] = total.get(v, 0) + c * m
        if any(m < 0 for m in total.values()):
            raise CharacterError("expansion has negative weight multiplicities")
        return Character(self.system, total)

    def to_json(self) -> dict:
        return {_key(w): c for w, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, system: RootSystem, data: Mapping[str, int]) -> "SignedChiExpansion":
        return cls(system, {_unkey(k): v for k, v in data.items()})


def chi(system: RootSystem, mu) -> tuple[int, Weight] | None:
    """Reduce ``chi(mu)`` by the dot action.

    Returns ``None`` when ``mu + rho`` lies on a wall, else ``(sign, nu)`` with
    ``nu`` dominant and ``chi(mu) = sign * chi(nu)``.
    """
    shifted = tuple(m + 1 for m in mu)
    dom, parity = system.to_dominant(shifted)
    if 0 in dom:
        return None
    return (-1 if parity else 1), tuple(m - 1 for m in dom)


def _require_dominant(lam):
    if not is_dominant(lam):
        raise CharacterError(f"{tuple(lam)} is not dominant")


# Freudenthal's recursion. lru_cache is the memo table; its internal state is
# thread-safe in CPython.
@functools.lru_cache(maxsize=4096)
def _freudenthal(system: RootSystem, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    n = system.rank
    dominant = system.dominant_weights_below(lam)
    roots_w = [system.root_to_weight(r) for r in system.positive_roots]

    # integer form: scale so that inner products of weights are integers
    scale = system.index
    gram = [[int(system.inner(tuple(int(i == k) for k in range(n)),
                              tuple(int(j == k) for k in range(n))) * scale)
             for j in range(n)] for i in range(n)]

    def ip(x, y):
        return sum(x[i] * gram[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])

    lr = tuple(a + 1 for a in lam)
    norm_lr = ip(lr, lr)
    support = set(dominant)
    mult: dict[Weight, int] = {lam: 1}
    for mu in dominant[1:]:
        total = 0
        for rw in roots_w:
            k = 1
            while True:
                v = tuple(a + k * b for a, b in zip(mu, rw))
                dom, _ = system.to_dominant(v)
                if dom not in support:
                    break
                m = mult.get(dom, 0)
                if m:
                    total += m * ip(v, rw)
                k += 1
        mr = tuple(a + 1 for a in mu)
        denom = norm_lr - ip(mr, mr)
        num = 2 * total
        if num % denom:
            raise ArithmeticError(f"non-integral Freudenthal step at {mu}")
        m = num // denom
        if m:
            mult[mu] = m
    return tuple(sorted(mult.items()))


def weyl_character(system: RootSystem, lam) -> Character:
    """Character of ``nabla(lam)`` (equal to that of the Weyl module)."""
    lam = tuple(int(x) for x in lam)
    _require_dominant(lam)
    return Character(system, dict(_freudenthal(system, lam)))


def weyl_dim(system: RootSystem, lam) -> int:
    """Weyl dimension formula, exact."""
    lam = tuple(int(x) for x in lam)
    _require_dominant(lam)
    num = 1
    den = 1
    for cr in system.positive_coroots:
        num *= sum(c * (m + 1) for c, m in zip(cr, lam))
        den *= sum(cr)
    q = Fraction(num, den)
    assert q.denominator == 1
    return int(q)


def tensor_character(c1: Character, c2: Character) -> Character:
    """Character of a tensor product, collected on dominant weights."""
    if c1.system is not c2.system:
        raise CharacterError("characters belong to different root systems")
    system = c1.system
    if not c1.mults or not c2.mults:
        return Character(system, {})
    if len(c1.full()) > len(c2.full()):
        c1, c2 = c2, c1
    f1 = c1.full()
    f2 = c2.full()
    targets = set()
    for h1 in c1.maximal_weights():
        for h2 in c2.maximal_weights():
            top = tuple(a + b for a, b in zip(h1, h2))
            targets.update(system.dominant_weights_below(top))
    out = {}
    items = list(f1.items())
    for nu in targets:
        s = 0
        for x, m in items:
            y = tuple(a - b for a, b in zip(nu, x))
            m2 = f2.get(y)
            if m2:
                s += m * m2
        if s:
            out[nu] = s
    return Character(system, out)


@functools.lru_cache(maxsize=64)
def _rho_shifts(system: RootSystem) -> tuple[tuple[int, Weight], ...]:
    """Pairs ``(det w, rho - w rho)`` over the whole Weyl group."""
    out = []
    for v in system.orbit(system.rho):
        _, parity = system.to_dominant(v)
        out.append((-1 if parity else 1, tuple(1 - x for x in v)))
    return tuple(out)


# Above this Weyl group order decompose_into_chi peels maximal weights instead
# of summing over W.
ALTERNANT_MAX_ORDER = 50_000


def decompose_into_chi(c: Character, method: str = "auto") -> SignedChiExpansion:
    """Expand a character in the basis ``{ch nabla(mu)}``.

    ``method='alternant'`` reads coefficients off ``c`` times the Weyl
    denominator; ``method='peel'`` repeatedly subtracts the Weyl character of
    a maximal remaining weight (largest height, then lexicographically
    largest). Both give the same, basis-unique answer.
    """
    system = c.system
    if method == "auto":
        method = "alternant" if system.weyl_order <= ALTERNANT_MAX_ORDER else "peel"
    if method == "alternant":
        shifts = _rho_shifts(system)
        out = SignedChiExpansion(system)
        for nu in c.mults:
            a = 0
            for sign, d in shifts:
                a += sign * c.mult(tuple(x + y for x, y in zip(nu, d)))
            if a:
                out.add(nu, a)
        return out
    if method != "peel":
        raise ValueError(f"unknown method {method!r}")
    rest = dict(c.mults)
    out = SignedChiExpansion(system)
    while rest:
        top = max(rest, key=lambda w: (system.height(w), w))
        coeff = rest[top]
        out.add(top, coeff)
        for w, m in weyl_character(system, top).mults.items():
            v = rest.get(w, 0) - coeff * m
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
    return out


def brauer_klimyk(c: Character, lam) -> SignedChiExpansion:
    """``c (x) ch nabla(lam)`` as a chi-expansion, summing ``chi(lam + x)`` over
    the weights ``x`` of ``c``."""
    system = c.system
    lam = tuple(lam)
    _require_dominant(lam)
    out = SignedChiExpansion(system)
    for x, m in c.full().items():
        r = chi(system, tuple(a + b for a, b in zip(lam, x)))
        if r is not None:
            out.add(r[1], r[0] * m)
    return out


def character_to_json(c: Character) -> str:
    return json.dumps(c.to_json(), sort_keys=True)
