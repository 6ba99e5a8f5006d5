"""Screening ``St_1 (x) L(lam)`` for possible obstructions to a good filtration.

For ``lam`` in ``X_1`` (other than the Steinberg weight) a composition factor
``St_1 (x) L(gamma)^(1)`` of ``L(mu) (x) L(lam)`` forces

* ``p <gamma, alpha_0^vee> <= <lam, alpha_0^vee>`` and the same with the
  highest root (``inner_ineq``),
* ``p gamma <= lam - mu_(1)`` in the dominance order (``weight_ineq``),
* ``lam`` G_1-linked to ``mu_(1)`` (``linkage``),

and it only matters when ``nabla(gamma)`` is not simple (``gamma_not_simple``).
A triple ``(lam, gamma, mu_(1))`` passing every enabled filter is reported as
unresolved.
"""

from __future__ import annotations

import functools
import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chars import Character, brauer_klimyk, weyl_character
from .modular import (
    PrimeContext,
    g1_linked,
    in_fundamental_alcove_closure,
    is_minuscule,
    is_prime,
    is_restricted,
    is_weyl_simple,
    affine_rep,
    _coset_reps,
    linked_via,
    mu_complement,
    restricted_weights,
    strongly_linked,
)
from .rootdata import RootSystem, Weight, build_root_system, is_dominant

FILTERS = ("inner_ineq", "weight_ineq", "linkage", "gamma_not_simple")
RESOLUTIONS = ("char_surrogate", "top_linkage")
DEFAULT_CAP = int(os.environ.get("STSCREEN_CAP", 10**5))
SCHEMA_VERSION = "v1"


class ScreeningError(ValueError):
    pass


class CapExceededError(ScreeningError):
    pass


@dataclass(frozen=True, order=True)
class CandidateTriple:
    lam: Weight
    gamma: Weight
    mu1: Weight
    filters_passed: frozenset = field(default=frozenset(FILTERS), compare=False)

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "gamma": list(self.gamma), "mu1": list(self.mu1),
                "filters": sorted(self.filters_passed)}

    @classmethod
    def from_json(cls, d) -> "CandidateTriple":
        return cls(tuple(d["lambda"]), tuple(d["gamma"]), tuple(d["mu1"]),
                   frozenset(d["filters"]))


@dataclass
class ScreeningReport:
    series: str
    rank: int
    p: int
    filters: tuple
    resolved: list
    unresolved: dict
    resolved_by: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def system(self) -> RootSystem:
        return build_root_system(self.series, self.rank)

    def triples(self) -> list[CandidateTriple]:
        return [t for lam in sorted(self.unresolved) for t in self.unresolved[lam]]

    def pairs(self, gamma=None) -> list[tuple[Weight, Weight]]:
        """``(lam, mu_(1))`` rows, optionally for one ``gamma``, deduplicated."""
        rows = {(t.lam, t.mu1) for t in self.triples()
                if gamma is None or t.gamma == tuple(gamma)}
        return sorted(rows)

    def gammas(self) -> set:
        return {t.gamma for t in self.triples()}

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "type": f"{self.series}{self.rank}",
            "series": self.series,
            "rank": self.rank,
            "p": self.p,
            "filters": list(self.filters),
            "resolved": [list(w) for w in self.resolved],
            "unresolved": [
                {"lambda": list(lam), "triples": [t.to_json() for t in ts]}
                for lam, ts in sorted(self.unresolved.items())
            ],
            "resolved_by": {k: [t.to_json() for t in v] for k, v in sorted(self.resolved_by.items())},
            "counts": dict(sorted(self.counts.items())),
        }
        if include_timing:
            out["elapsed"] = self.elapsed
        return out

    @classmethod
    def from_json(cls, d) -> "ScreeningReport":
        if d.get("schema") != SCHEMA_VERSION:
            raise ScreeningError(f"unsupported report schema {d.get('schema')!r}")
        return cls(
            series=d["series"], rank=d["rank"], p=d["p"], filters=tuple(d["filters"]),
            resolved=[tuple(w) for w in d["resolved"]],
            unresolved={tuple(e["lambda"]): [CandidateTriple.from_json(t) for t in e["triples"]]
                        for e in d["unresolved"]},
            resolved_by={k: [CandidateTriple.from_json(t) for t in v]
                         for k, v in d.get("resolved_by", {}).items()},
            counts=dict(d.get("counts", {})),
            elapsed=d.get("elapsed", 0.0),
        )

    def __eq__(self, other):
        if not isinstance(other, ScreeningReport):
            return NotImplemented
        return self.to_json() == other.to_json()


def _check_lambda(lam, ctx):
    lam = tuple(int(m) for m in lam)
    if len(lam) != ctx.system.rank or not is_restricted(lam, ctx):
        raise ScreeningError(f"{lam} is not in X_1 for {ctx.system.name}, p={ctx.p}")
    return lam


def _dominant_below_pairing(coroot, bound: int):
    """Dominant weights with ``<gamma, coroot> <= bound`` (coroot coefficients >= 1)."""
    ranges = [range(bound // c + 1) for c in coroot]
    for g in itertools.product(*ranges):
        if sum(a * b for a, b in zip(g, coroot)) <= bound:
            yield g


def candidate_gammas(lam, ctx: PrimeContext) -> list[Weight]:
    """Nonzero dominant ``gamma`` satisfying both inner-product inequalities.

    The Steinberg weight is accepted (it gives the loosest bounds) although
    :func:`screen` never needs it.
    """
    system = ctx.system
    lam = _check_lambda(lam, ctx)
    a0, at = system.alpha0_coroot, system.alpha_tilde_coroot
    b0 = sum(a * b for a, b in zip(a0, lam))
    bt = sum(a * b for a, b in zip(at, lam))
    p = ctx.p
    out = []
    for g in _dominant_below_pairing(a0, b0 // p):
        if not any(g):
            continue
        if p * sum(a * b for a, b in zip(at, g)) <= bt:
            out.append(g)
    return sorted(out)


class _Screener:
    """Precomputed arrays for one ``(type, p)``."""

    def __init__(self, ctx: PrimeContext):
        self.ctx = ctx
        system = ctx.system
        p = ctx.p
        self.x1 = np.array(list(restricted_weights(PrimeContext(system, p))), dtype=np.int64)
        self.x1_tuples = [tuple(int(v) for v in row) for row in self.x1]
        self.rc = system.root_coords_scaled(self.x1)
        self.idx = system.index
        self._pos = {w: k for k, w in enumerate(self.x1_tuples)}
        # W_p-orbit ids of mu + p x for each coset representative x of X / ZPhi
        self.cosets = _coset_reps(system)
        self._orbit_ids: dict = {}
        self.shifted_ids = {}
        for x in self.cosets:
            self.shifted_ids[x] = np.array(
                [self._orbit_id(tuple(a + p * b for a, b in zip(w, x))) for w in self.x1_tuples],
                dtype=np.int64)

    def _orbit_id(self, w):
        rep = affine_rep(self.ctx.system, w, self.ctx.p)
        return self._orbit_ids.setdefault(rep, len(self._orbit_ids))

    def coset_of(self, gamma):
        system = self.ctx.system
        for x in self.cosets:
            if system.in_root_lattice(tuple(a - b for a, b in zip(gamma, x))):
                return x
        raise AssertionError("coset representatives do not cover X / ZPhi")

    def weight_mask(self, lam, gamma):
        system = self.ctx.system
        target = system.root_coords_scaled(
            tuple(a - self.ctx.p * b for a, b in zip(lam, gamma)))
        diff = target[None, :] - self.rc
        return np.all(diff >= 0, axis=1) & np.all(diff % self.idx == 0, axis=1)

    def linked_mask(self, lam, gamma):
        """``mu_(1)`` with ``mu_(1) + p gamma`` in the ``W_p`` dot-orbit of ``lam``."""
        zero = self.cosets[0]
        lam_id = self.shifted_ids[zero][self._pos[lam]]
        return self.shifted_ids[self.coset_of(gamma)] == lam_id


@functools.lru_cache(maxsize=32)
def _screener(ctx: PrimeContext) -> _Screener:
    return _Screener(ctx)


def weight_inequality_witnesses(lam, gamma, ctx: PrimeContext) -> list[Weight]:
    """All ``mu_(1)`` in ``X_1`` with ``p gamma <= lam - mu_(1)``."""
    lam = _check_lambda(lam, ctx)
    s = _screener(PrimeContext(ctx.system, ctx.p))
    mask = s.weight_mask(lam, tuple(gamma))
    return [s.x1_tuples[k] for k in np.flatnonzero(mask)]


def witnesses(lam, gamma, ctx: PrimeContext) -> list[Weight]:
    """``mu_(1)`` in ``X_1`` with ``p gamma <= lam - mu_(1)`` and ``lam`` G_1-linked to it.

    Linkage is tested in its G_1T form: ``lam`` and ``mu_(1) + p gamma`` lie
    in one ``W_p`` dot-orbit. This implies ordinary G_1-linkage of ``lam``
    and ``mu_(1)``.
    """
    lam = _check_lambda(lam, ctx)
    s = _screener(PrimeContext(ctx.system, ctx.p))
    mask = s.weight_mask(lam, tuple(gamma)) & s.linked_mask(lam, tuple(gamma))
    return [s.x1_tuples[k] for k in np.flatnonzero(mask)]


def _screen_lambda(ctx: PrimeContext, lam: Weight, filters: frozenset):
    """Surviving triples for one ``lam`` plus per-stage counts."""
    s = _screener(ctx)
    counts = {"candidates": 0, "weight_ineq": 0, "linkage": 0, "gamma_not_simple": 0}
    out = []
    if "inner_ineq" in filters:
        gammas = candidate_gammas(lam, ctx)
    else:
        # fall back to the weakest bound that keeps the enumeration finite
        bound = sum(a * b for a, b in zip(ctx.system.alpha0_coroot, lam)) // ctx.p
        gammas = sorted(g for g in _dominant_below_pairing(ctx.system.alpha0_coroot, bound)
                        if any(g))
    for g in gammas:
        counts["candidates"] += 1
        mask = s.weight_mask(lam, g) if "weight_ineq" in filters else np.ones(len(s.x1), bool)
        counts["weight_ineq"] += int(mask.sum())
        if "linkage" in filters:
            mask = mask & s.linked_mask(lam, g)
        n = int(mask.sum())
        counts["linkage"] += n
        if not n:
            continue
        if "gamma_not_simple" in filters and is_weyl_simple(g, ctx):
            continue
        counts["gamma_not_simple"] += n
        for k in np.flatnonzero(mask):
            out.append(CandidateTriple(lam, g, s.x1_tuples[k], filters))
    return out, counts


def _screen_chunk(args):
    series, rank, p, lams, filters = args
    ctx = PrimeContext(build_root_system(series, rank), p)
    return [(lam, *_screen_lambda(ctx, lam, filters)) for lam in lams]


def char_surrogate(lam, gamma, ctx: PrimeContext) -> bool:
    """Character-level test for the triple ``(lam, gamma, mu_(1) = 0)``.

    Expands ``St_1 (x) nabla(lam)`` in induced-module characters and looks at
    the sections ``nabla((p-1) rho + p eta) = St_1 (x) nabla(eta)^(1)``. The
    composition factor ``St_1 (x) L(gamma)^(1)`` can only occur if ``gamma`` is
    strongly linked to some such ``eta``. Returns True when no ``eta`` allows
    it, i.e. the triple is excluded at the character level.
    """
    system = ctx.system
    p = ctx.p
    st = ctx.steinberg
    expansion = brauer_klimyk(weyl_character(system, lam), st)
    for nu, coeff in expansion.terms.items():
        if coeff <= 0:
            continue
        shift = [a - b for a, b in zip(nu, st)]
        if any(x % p for x in shift):
            continue
        eta = tuple(x // p for x in shift)
        if is_dominant(eta) and strongly_linked(tuple(gamma), eta, ctx):
            return False
    return True


def top_linkage(lam, ctx: PrimeContext) -> bool:
    """True when ``2(p-1) rho`` is not G_1-linked to ``lam``.

    For ``mu_(1) = 0`` this rules the triple out when only the top tilting
    summand of ``St_1 (x) St_1`` needs checking, as in type G2 with p = 7.
    """
    top = tuple(2 * (ctx.p - 1) for _ in range(ctx.system.rank))
    return not g1_linked(top, lam, ctx)


def screen(ctx: PrimeContext, lambdas=None, filters=FILTERS, resolve=(),
           cap: int = DEFAULT_CAP, jobs: int = 1) -> ScreeningReport:
    """Run the screen over ``X_1`` (or over the given ``lambdas``)."""
    system = ctx.system
    if ctx.r != 1:
        raise ScreeningError("screening is implemented for r = 1 only")
    filters = frozenset(filters)
    unknown = filters - set(FILTERS)
    if unknown:
        raise ScreeningError(f"unknown filters {sorted(unknown)}")
    bad = set(resolve) - set(RESOLUTIONS)
    if bad:
        raise ScreeningError(f"unknown resolution steps {sorted(bad)}")
    size = ctx.p**system.rank
    if size > cap:
        raise CapExceededError(
            f"|X_1| = {size} for {system.name}, p={ctx.p} exceeds the cap {cap}")
    t0 = time.perf_counter()
    st = ctx.steinberg
    if lambdas is None:
        lams = [w for w in restricted_weights(ctx) if w != st]
    else:
        lams = sorted({_check_lambda(w, ctx) for w in lambdas} - {st})
    ctx = PrimeContext(system, ctx.p)
    if jobs > 1 and len(lams) > 1:
        chunks = [lams[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_screen_chunk,
                           [(system.series, system.rank, ctx.p, c, filters) for c in chunks])
            results = [r for part in parts for r in part]
    else:
        results = [(lam, *_screen_lambda(ctx, lam, filters)) for lam in lams]
    results.sort(key=lambda r: r[0])

    counts = {"lambdas": len(lams), "candidates": 0, "weight_ineq": 0, "linkage": 0,
              "gamma_not_simple": 0}
    resolved, unresolved = [], {}
    resolved_by = {name: [] for name in resolve}
    for lam, triples, c in results:
        for k, v in c.items():
            counts[k] += v
        remaining = []
        for t in sorted(triples):
            if t.mu1 == (0,) * system.rank:
                if "top_linkage" in resolve and top_linkage(t.lam, ctx):
                    resolved_by["top_linkage"].append(t)
                    continue
                if "char_surrogate" in resolve and char_surrogate(t.lam, t.gamma, ctx):
                    resolved_by["char_surrogate"].append(t)
                    continue
            remaining.append(t)
        if remaining:
            unresolved[lam] = remaining
        else:
            resolved.append(lam)
    counts["unresolved_triples"] = sum(len(v) for v in unresolved.values())
    return ScreeningReport(system.series, system.rank, ctx.p, tuple(sorted(filters)),
                           resolved, unresolved, resolved_by, counts,
                           time.perf_counter() - t0)


def smallest_prime_at_least(n: int) -> int:
    p = max(n, 2)
    while not is_prime(p):
        p += 1
    return p


def check_bound_theorem(ctx: PrimeContext) -> bool:
    """For ``p >= 2h - 4``: every ``gamma`` that survives the inequality and
    linkage filters lies in the closed bottom alcove.

    Only ``gamma`` outside the closure need their witnesses computed, so the
    check never scans all of ``X_1`` when ``p >= 2h - 3``.
    """
    system = ctx.system
    h = system.coxeter_number
    if ctx.p < 2 * h - 4:
        raise ScreeningError(f"p={ctx.p} < 2h-4={2 * h - 4} for {system.name}")
    p = ctx.p
    a0, at = system.alpha0_coroot, system.alpha_tilde_coroot
    top0 = (p - 1) * sum(a0) - min(a0)  # max over lam != (p-1) rho
    bad = [g for g in _dominant_below_pairing(a0, top0 // p)
           if any(g) and not in_fundamental_alcove_closure(g, ctx)]
    if not bad:
        return True
    for lam in restricted_weights(ctx):
        if lam == ctx.steinberg:
            continue
        l0 = sum(a * b for a, b in zip(a0, lam))
        lt = sum(a * b for a, b in zip(at, lam))
        for g in bad:
            if (p * sum(a * b for a, b in zip(a0, g)) <= l0
                    and p * sum(a * b for a, b in zip(at, g)) <= lt
                    and witnesses(lam, g, ctx)):
                return False
    return True


def check_weight_bound(lam, ctx: PrimeContext) -> bool:
    """For ``<lam, alpha_0^vee> <= 2p - 1``: all surviving ``gamma`` are minuscule."""
    system = ctx.system
    lam = _check_lambda(lam, ctx)
    if system.pairing(lam, system.alpha0) > 2 * ctx.p - 1:
        raise ScreeningError(f"<{lam}, alpha_0^vee> exceeds 2p-1")
    if lam == ctx.steinberg:
        return True
    return all(is_minuscule(system, g) for g in candidate_gammas(lam, ctx)
               if witnesses(lam, g, ctx))


@dataclass(frozen=True)
class FundamentalWeightRow:
    j: int
    p: int
    r: int
    value: Fraction  # <varpi_j, coroot> / p^r
    flagged: bool
    deltas: tuple = ()  # nonzero delta with p^r delta <=_Q varpi_j (F4 only)


def fundamental_weight_check(system: RootSystem, primes=(2, 3, 5, 7), rs=(1, 2, 3),
                             use_highest_root: bool | None = None) -> list[FundamentalWeightRow]:
    """Tabulate ``h(j, r, p) = <varpi_j, alpha_0^vee> / p^r`` and flag values ``>= 2``.

    For F4 the highest-root coroot is used instead (``use_highest_root``
    defaults to True there) and every dominant ``delta`` with
    ``<delta, coroot> <= h(j, r, p)`` is tested for ``p^r delta <=_Q varpi_j``;
    rows with a solution are flagged. A flag needs ``p^r`` at most half the
    largest coroot coefficient, so small ``primes``/``rs`` cover all cases.
    """
    if use_highest_root is None:
        use_highest_root = system.series == "F"
    coroot = system.alpha_tilde_coroot if use_highest_root else system.alpha0_coroot
    n = system.rank
    rows = []
    for p in primes:
        for r in rs:
            q = p**r
            for j in range(n):
                value = Fraction(coroot[j], q)
                flagged = value >= 2
                deltas = ()
                if use_highest_root:
                    fund = tuple(int(i == j) for i in range(n))
                    sols = []
                    for d in _dominant_below_pairing(coroot, int(value)):
                        if any(d) and system.dominance_le(tuple(q * x for x in d), fund,
                                                          "rational"):
                            sols.append(d)
                    deltas = tuple(sols)
                    flagged = flagged or bool(sols)
                rows.append(FundamentalWeightRow(j + 1, p, r, value, flagged, deltas))
    return rows


def flagged_cases(rows) -> set[tuple[int, int, int]]:
    return {(row.j, row.p, row.r) for row in rows if row.flagged}


@dataclass
class MaximalityReport:
    sigma: Weight
    weights_above: list
    strong_links: list

    @property
    def maximal(self) -> bool:
        return not any(self.strong_links)


def maximality_report(c: Character, sigma, ctx: PrimeContext) -> MaximalityReport:
    """Weights of ``c`` strictly above ``sigma`` and whether ``sigma`` is
    strongly linked to each of them."""
    system = c.system
    sigma = tuple(int(x) for x in sigma)
    if c.mult(sigma) == 0:
        raise ScreeningError(f"{sigma} is not a weight of the character")
    above = set()
    for top in c.maximal_weights():
        if not system.dominance_le(sigma, top):
            continue
        gap = [int(x) for x in system.root_coords_scaled(
            tuple(a - b for a, b in zip(top, sigma))) // system.index]
        for coeffs in itertools.product(*(range(g + 1) for g in gap)):
            if not any(coeffs):
                continue
            w = tuple(sigma[i] + sum(system.cartan[i][j] * coeffs[j] for j in range(system.rank))
                      for i in range(system.rank))
            if c.mult(w):
                above.add(w)
    weights = sorted(above, key=lambda w: (-system.height(w), w))
    links = [strongly_linked(sigma, w, ctx) for w in weights]
    return MaximalityReport(sigma, weights, links)


def steinberg_character(ctx: PrimeContext) -> Character:
    return weyl_character(ctx.system, ctx.steinberg)


__all__ = [
    "CandidateTriple", "ScreeningReport", "FILTERS", "RESOLUTIONS", "candidate_gammas",
    "witnesses", "weight_inequality_witnesses", "screen", "check_bound_theorem",
    "check_weight_bound", "fundamental_weight_check", "flagged_cases", "maximality_report",
    "char_surrogate", "top_linkage", "mu_complement", "smallest_prime_at_least",
]
