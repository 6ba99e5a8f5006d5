"""Characteristic-p weight combinatorics.

The dot action is ``w . lam = w(lam + rho) - rho``. Two linkage notions are
used:

* the affine Weyl group ``W_p = W x| p ZPhi`` (orbits meet the closure of the
  bottom alcove exactly once), which governs strong linkage and G-blocks;
* G_1-linkage, where translations run over ``p X`` instead of ``p ZPhi``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .chars import SignedChiExpansion, chi
from .rootdata import RootSystem, Weight, is_dominant

MAX_STEPS = 10**6


class ModularError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class PrimeContext:
    system: RootSystem
    p: int
    r: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ModularError(f"p={self.p} is not prime")
        if self.r < 1:
            raise ModularError(f"r must be >= 1, got {self.r}")

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def steinberg(self) -> Weight:
        return (self.q - 1,) * self.system.rank


@dataclass(frozen=True)
class LinkageClassRep:
    canonical: Weight


def restricted_weights(ctx: PrimeContext) -> Iterator[Weight]:
    """All ``p^r``-restricted weights in lexicographic order."""
    return itertools.product(range(ctx.q), repeat=ctx.system.rank)


def is_restricted(lam, ctx: PrimeContext) -> bool:
    return all(0 <= m < ctx.q for m in lam)


def mu_complement(mu, ctx: PrimeContext) -> Weight:
    """``(p^r - 1) rho - mu`` on restricted weights."""
    if not is_restricted(mu, ctx):
        raise ModularError(f"{tuple(mu)} is not {ctx.q}-restricted")
    return tuple(ctx.q - 1 - m for m in mu)


def _affine_reduce(system: RootSystem, x: list[int], p: int) -> Weight:
    """Move ``x`` (already rho-shifted) into the closed bottom alcove."""
    cart = system.cartan
    n = system.rank
    a0 = system.alpha0_coroot
    a0w = system.root_to_weight(system.alpha0)
    for _ in range(MAX_STEPS):
        for i in range(n):
            if x[i] < 0:
                m = x[i]
                for k in range(n):
                    x[k] -= m * cart[k][i]
                break
        else:
            t = sum(c * v for c, v in zip(a0, x))
            if t <= p:
                return tuple(x)
            d = t - p
            for k in range(n):
                x[k] -= d * a0w[k]
    raise RuntimeError("alcove reduction did not terminate")


@functools.lru_cache(maxsize=200_000)
def affine_rep(system: RootSystem, lam: Weight, p: int) -> Weight:
    """Representative of ``W_p . lam`` with ``rep + rho`` in the closed bottom alcove."""
    x = [m + 1 for m in lam]
    return tuple(v - 1 for v in _affine_reduce(system, x, p))


@functools.lru_cache(maxsize=64)
def _coset_reps(system: RootSystem) -> tuple[Weight, ...]:
    """Weights hitting every class of ``X / ZPhi`` (zero plus fundamentals)."""
    n = system.rank
    cands = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
    reps = []
    for c in cands:
        if not any(system.in_root_lattice(tuple(a - b for a, b in zip(c, r))) for r in reps):
            reps.append(c)
    return tuple(reps)


def linkage_rep(lam, ctx: PrimeContext) -> LinkageClassRep:
    """Canonical representative of the G_1-linkage class of ``lam``.

    The class is the orbit under ``W x| p X``; it is the union of the ``W_p``
    orbits of ``lam + p x`` over coset representatives ``x`` of ``X / ZPhi``,
    and the canonical choice is the smallest bottom-alcove representative.
    """
    system = ctx.system
    lam = tuple(int(m) for m in lam)
    reps = [affine_rep(system, tuple(a + ctx.p * b for a, b in zip(lam, x)), ctx.p)
            for x in _coset_reps(system)]
    return LinkageClassRep(min(reps))


def g1_linked(lam, mu, ctx: PrimeContext) -> bool:
    return linkage_rep(lam, ctx) == linkage_rep(mu, ctx)


def g_linked(lam, mu, ctx: PrimeContext) -> bool:
    """Same ``W_p`` dot-orbit (the G-linkage principle)."""
    return (affine_rep(ctx.system, tuple(lam), ctx.p)
            == affine_rep(ctx.system, tuple(mu), ctx.p))


def linked_via(lam, mu, gamma, ctx: PrimeContext) -> bool:
    """``lam`` and ``mu + p gamma`` lie in one ``W_p`` dot-orbit.

    This is G_1T-linkage of ``L(lam)`` with ``L(mu) (x) p gamma``; it refines
    :func:`g1_linked` by fixing the translation in ``p X`` to ``p gamma``.
    """
    shifted = tuple(int(a) + ctx.p * int(b) for a, b in zip(mu, gamma))
    return g_linked(lam, shifted, ctx)


def affine_reflection(system: RootSystem, lam, root, mp: int) -> Weight:
    """``s_{beta, mp} . lam = lam - (<lam + rho, beta^vee> - mp) beta``."""
    n = system.pairing(tuple(m + 1 for m in lam), root) - mp
    rw = system.root_to_weight(root)
    return tuple(a - n * b for a, b in zip(lam, rw))


def strongly_linked(mu, lam, ctx: PrimeContext) -> bool:
    """``mu`` is reachable from ``lam`` by affine reflections each of which
    moves the weight down in the dominance order.

    Every reflection ``s_{beta, mp}`` with ``mp < <nu + rho, beta^vee>`` is
    allowed (including ``m <= 0``); the search is confined to weights ``>= mu``.
    """
    system = ctx.system
    mu = tuple(int(x) for x in mu)
    lam = tuple(int(x) for x in lam)
    if mu == lam:
        return True
    if not system.dominance_le(mu, lam):
        return False
    p = ctx.p
    idx = system.index
    target = system.root_coords_scaled(mu)
    roots_w = [system.root_to_weight(r) for r in system.positive_roots]
    roots_c = [np.array(r, dtype=np.int64) * idx for r in system.positive_roots]
    seen = {lam}
    stack = [lam]
    while stack:
        nu = stack.pop()
        gap = system.root_coords_scaled(nu) - target  # >= 0, scaled
        pair = system.pairings(tuple(m + 1 for m in nu))
        for k, (rw, rc) in enumerate(zip(roots_w, roots_c)):
            n = int(pair[k])
            # step sizes t = n - mp > 0, t = n mod p, with nu - t beta >= mu
            nz = rc > 0
            tmax = int(np.min(gap[nz] // rc[nz]))
            t = n % p or p
            while t <= tmax:
                v = tuple(a - t * b for a, b in zip(nu, rw))
                if v == mu:
                    return True
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
                t += p
    return False


def in_fundamental_alcove_closure(lam, ctx: PrimeContext) -> bool:
    """``<lam + rho, alpha_0^vee> <= p``."""
    return ctx.system.pairing(tuple(m + 1 for m in lam), ctx.system.alpha0) <= ctx.p


def is_minuscule(system: RootSystem, lam) -> bool:
    lam = tuple(lam)
    if not is_dominant(lam) or not any(lam):
        return False
    return bool(np.all(system.pairings(lam) <= 1))


def p_valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@functools.lru_cache(maxsize=100_000)
def _jantzen_terms(system: RootSystem, lam: Weight, p: int) -> tuple[tuple[Weight, int], ...]:
    out = SignedChiExpansion(system)
    lr = tuple(m + 1 for m in lam)
    pair = system.pairings(lr)
    for k, root in enumerate(system.positive_roots):
        n = int(pair[k])
        rw = system.root_to_weight(root)
        for mp in range(p, n, p):
            v = p_valuation(mp, p)
            refl = tuple(a - (n - mp) * b for a, b in zip(lam, rw))
            red = chi(system, refl)
            if red is not None:
                out.add(red[1], red[0] * v)
    return tuple(sorted(out.terms.items()))


def jantzen_sum(lam, ctx: PrimeContext) -> SignedChiExpansion:
    """Jantzen sum formula for ``Delta(lam)`` as a chi-expansion."""
    lam = tuple(int(m) for m in lam)
    if not is_dominant(lam):
        raise ModularError(f"{lam} is not dominant")
    return SignedChiExpansion(ctx.system, dict(_jantzen_terms(ctx.system, lam, ctx.p)))


def is_weyl_simple(lam, ctx: PrimeContext) -> bool:
    """``nabla(lam)`` is simple iff its Jantzen sum vanishes."""
    lam = tuple(int(m) for m in lam)
    if not is_dominant(lam):
        raise ModularError(f"{lam} is not dominant")
    return not _jantzen_terms(ctx.system, lam, ctx.p)
