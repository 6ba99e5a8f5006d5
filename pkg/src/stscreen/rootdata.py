"""Irreducible root systems in exact integer arithmetic.

Weights are tuples of integers in the fundamental-weight basis, so the
entries are the pairings ``<lambda, alpha_i^vee>``. Roots are kept as
integer tuples in the simple-root basis. Node numbering is Bourbaki's.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Weight = tuple  # tuple[int, ...] in the fundamental-weight basis
RootVector = tuple  # tuple[int | Fraction, ...] in the simple-root basis

SERIES = "ABCDEFG"


class RootSystemError(ValueError):
    pass


def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    """Cartan matrix with ``A[i][j] = <alpha_j, alpha_i^vee>``."""
    series = series.upper()
    n = rank
    if series == "A" and n >= 1:
        return _chain(n)
    if series == "B" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2  # alpha_n short
        return a
    if series == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2  # alpha_n long
        return a
    if series == "D" and n >= 4:
        a = _chain(n)
        a[n - 1][n - 2] = a[n - 2][n - 1] = 0
        a[n - 1][n - 3] = a[n - 3][n - 1] = -1
        return a
    if series == "E" and n in (6, 7, 8):
        a = [[0] * n for _ in range(n)]
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        for i in range(n):
            a[i][i] = 2
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a
    if series == "F" and n == 4:
        a = _chain(4)
        a[2][1] = -2  # alpha_1, alpha_2 long
        return a
    if series == "G" and n == 2:
        return [[2, -3], [-1, 2]]  # alpha_1 short
    raise RootSystemError(f"no irreducible root system of type {series}{rank}")


def _symmetrizers(a):
    """Half squared lengths d_i (short roots get 1) with d_i A_ij symmetric."""
    n = len(a)
    d = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] != 0 and d[j] is None:
                # d_i a_ij = d_j a_ji
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    m = min(d)
    return tuple(int(x / m) for x in d)


def _fraction_inverse(a):
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _exponent_degrees(roots: Iterable[Sequence[int]]) -> list[int]:
    """Degrees of the Weyl group from the height distribution of positive roots."""
    counts: dict[int, int] = {}
    for r in roots:
        ht = sum(r)
        counts[ht] = counts.get(ht, 0) + 1
    if not counts:
        return []
    seq = [counts.get(k, 0) for k in range(1, max(counts) + 1)]
    # exponents form the partition conjugate to the height counts
    exps = []
    for j in range(1, seq[0] + 1):
        exps.append(sum(1 for c in seq if c >= j))
    return [e + 1 for e in exps]


class RootSystem:
    """Cartan data, positive roots and distinguished roots of one irreducible type.

    Instances are immutable and interned per ``(series, rank)`` by
    :func:`build_root_system`.
    """

    def __init__(self, series: str, rank: int):
        series = series.upper()
        self.series = series
        self.rank = rank
        a = cartan_matrix(series, rank)
        self.cartan = tuple(tuple(row) for row in a)
        self.symmetrizers = _symmetrizers(a)
        inv = _fraction_inverse(a)
        self._inverse = tuple(tuple(row) for row in inv)
        det = 1
        for row in inv:
            for x in row:
                det = det * x.denominator // np.gcd(det, x.denominator)
        self.index = det  # common denominator of A^{-1}
        self._inv_scaled = np.array([[int(x * det) for x in row] for row in inv], dtype=np.int64)
        self.positive_roots = self._generate_roots()
        self._root_index = {r: k for k, r in enumerate(self.positive_roots)}
        self._root_d = tuple(self._half_norm(r) for r in self.positive_roots)
        # coroot of each positive root in the simple-coroot basis (integral)
        self.positive_coroots = tuple(
            tuple(c * di // dr for c, di in zip(r, self.symmetrizers))
            for r, dr in zip(self.positive_roots, self._root_d)
        )
        self._coroot_matrix = np.array(self.positive_coroots, dtype=np.int64)
        self.rho = (1,) * rank
        self.alpha_tilde = max(self.positive_roots, key=sum)
        dmin = min(self._root_d)
        shorts = [r for r, dr in zip(self.positive_roots, self._root_d) if dr == dmin]
        self.alpha0 = max(shorts, key=sum)
        self.alpha0_coroot = self.coroot(self.alpha0)
        self.alpha_tilde_coroot = self.coroot(self.alpha_tilde)
        self.coxeter_number = self.pairing(self.rho, self.alpha0) + 1
        self._w0_word = self._longest_word()
        self._w0 = np.array([self.apply_word(self._w0_word, e) for e in self._units()],
                            dtype=np.int64).T
        self.weyl_order = int(np.prod(_exponent_degrees(self.positive_roots), dtype=object))

    def __repr__(self):
        return f"RootSystem('{self.series}', {self.rank})"

    def __reduce__(self):
        return (build_root_system, (self.series, self.rank))

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def _units(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def _half_norm(self, root) -> int:
        a, d = self.cartan, self.symmetrizers
        n = self.rank
        s = sum(root[i] * root[j] * d[i] * a[i][j] for i in range(n) for j in range(n))
        return s // 2

    def _generate_roots(self):
        n = self.rank
        simple = self._units()
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(n):
                    if r == simple[i]:
                        continue
                    k = sum(self.cartan[i][j] * r[j] for j in range(n))
                    s = list(r)
                    s[i] -= k
                    s = tuple(s)
                    if s not in seen and all(c >= 0 for c in s):
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return tuple(sorted(seen, key=lambda r: (sum(r), r)))

    # -- conversions -------------------------------------------------------

    def root_to_weight(self, root: Sequence) -> Weight:
        """Fundamental-weight coordinates of a simple-root combination."""
        n = self.rank
        out = []
        for i in range(n):
            v = sum(self.cartan[i][j] * root[j] for j in range(n))
            out.append(int(v) if Fraction(v).denominator == 1 else v)
        return tuple(out)

    def weight_to_root(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        """Simple-root coordinates (exact rationals) of a weight."""
        n = self.rank
        return tuple(sum((self._inverse[i][j] * weight[j] for j in range(n)), Fraction(0))
                     for i in range(n))

    def root_coords_scaled(self, weight) -> np.ndarray:
        """``index * A^{-1} m`` as an integer array; accepts stacked weights."""
        w = np.asarray(weight, dtype=np.int64)
        return w @ self._inv_scaled.T

    def in_root_lattice(self, weight: Sequence[int]) -> bool:
        return bool(np.all(self.root_coords_scaled(weight) % self.index == 0))

    # -- pairings ----------------------------------------------------------

    def coroot(self, root: Sequence[int]) -> tuple[int, ...]:
        """Coroot of a root, in the simple-coroot basis."""
        root = tuple(root)
        key = root if root in self._root_index else tuple(-c for c in root)
        if key not in self._root_index:
            raise RootSystemError(f"{root} is not a root of {self.name}")
        k = self._root_index[key]
        cr = self.positive_coroots[k]
        return cr if key == root else tuple(-c for c in cr)

    def pairing(self, weight: Sequence[int], root: Sequence[int]) -> int:
        """``<weight, root^vee>``."""
        cr = self.coroot(root)
        return sum(c * m for c, m in zip(cr, weight))

    def pairings(self, weight: Sequence[int]) -> np.ndarray:
        """``<weight, beta^vee>`` for every positive root, in canonical order."""
        return self._coroot_matrix @ np.asarray(weight, dtype=np.int64)

    def inner(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """Invariant form with short roots of squared length 2."""
        c = self.weight_to_root(x)
        return sum((ci * di * yi for ci, di, yi in zip(c, self.symmetrizers, y)), Fraction(0))

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        return v in self._root_index or tuple(-c for c in v) in self._root_index

    # -- Weyl group --------------------------------------------------------

    def simple_root_weight(self, i: int) -> Weight:
        return tuple(self.cartan[k][i] for k in range(self.rank))

    def reflect(self, weight: Sequence[int], i: int) -> Weight:
        """Simple reflection ``s_i`` on a weight."""
        m = weight[i]
        if m == 0:
            return tuple(weight)
        col = [self.cartan[k][i] for k in range(self.rank)]
        return tuple(w - m * c for w, c in zip(weight, col))

    def apply_word(self, word: Sequence[int], weight: Sequence[int]) -> Weight:
        """Apply ``s_{word[0]} ... s_{word[-1]}`` (rightmost first)."""
        w = tuple(weight)
        for i in reversed(word):
            w = self.reflect(w, i)
        return w

    def to_dominant(self, weight: Sequence[int]) -> tuple[Weight, int]:
        """Dominant W-conjugate of ``weight`` and the length parity of the
        reflection sequence used to reach it."""
        w = list(weight)
        parity = 0
        cart = self.cartan
        n = self.rank
        while True:
            for i in range(n):
                if w[i] < 0:
                    m = w[i]
                    for k in range(n):
                        w[k] -= m * cart[k][i]
                    parity ^= 1
                    break
            else:
                return tuple(w), parity

    def _longest_word(self):
        w = [-1] * self.rank
        word = []
        while True:
            for i in range(self.rank):
                if w[i] < 0:
                    w = list(self.reflect(w, i))
                    word.append(i)
                    break
            else:
                break
        # s_{word[-1]} ... s_{word[0]} (-rho) = rho, so w0 = s_{word[0]}...s_{word[-1]}
        return tuple(word)

    def w0(self, weight: Sequence[int]) -> Weight:
        return tuple(int(x) for x in self._w0 @ np.asarray(weight, dtype=np.int64))

    def dual_weight(self, weight: Sequence[int]) -> Weight:
        """``-w0 * weight``."""
        return tuple(-x for x in self.w0(weight))

    def orbit(self, weight: Sequence[int]) -> list[Weight]:
        """W-orbit of a weight, never materialising W itself."""
        start, _ = self.to_dominant(weight)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(self.rank):
                    if w[i] > 0:
                        s = self.reflect(w, i)
                        if s not in seen:
                            seen.add(s)
                            nxt.append(s)
            frontier = nxt
        return sorted(seen)

    def stabilizer_order(self, weight: Sequence[int]) -> int:
        dom, _ = self.to_dominant(weight)
        zero = {i for i, m in enumerate(dom) if m == 0}
        sub = [r for r in self.positive_roots if all(c == 0 or i in zero for i, c in enumerate(r))]
        return int(np.prod(_exponent_degrees(sub), dtype=object)) if sub else 1

    def orbit_size(self, weight: Sequence[int]) -> int:
        return self.weyl_order // self.stabilizer_order(weight)

    # -- orders on weights ---------------------------------------------------

    def dominance_le(self, mu: Sequence[int], lam: Sequence[int], mode: str = "integral") -> bool:
        """``mu <= lam``: ``lam - mu`` is a nonnegative integral (or rational)
        combination of simple roots."""
        diff = np.asarray(lam, dtype=np.int64) - np.asarray(mu, dtype=np.int64)
        c = self.root_coords_scaled(diff)
        if np.any(c < 0):
            return False
        if mode == "rational":
            return True
        if mode != "integral":
            raise ValueError(f"unknown dominance mode {mode!r}")
        return bool(np.all(c % self.index == 0))

    def height(self, weight: Sequence[int]) -> Fraction:
        return sum(self.weight_to_root(weight), Fraction(0))

    def dominant_weights_below(self, lam: Sequence[int]) -> list[Weight]:
        """All dominant ``mu <= lam`` (same coset of the root lattice), ordered
        by increasing depth ``ht(lam - mu)``, ties lexicographic descending."""
        lam = tuple(lam)
        roots_w = [self.root_to_weight(r) for r in self.positive_roots]
        depth = {lam: 0}
        frontier = [lam]
        while frontier:
            nxt = []
            for w in frontier:
                for r, rw in zip(self.positive_roots, roots_w):
                    v = tuple(a - b for a, b in zip(w, rw))
                    if min(v) >= 0 and v not in depth:
                        depth[v] = None
                        nxt.append(v)
            frontier = nxt
        out = list(depth)
        hl = self.height(lam)
        return sorted(out, key=lambda w: (hl - self.height(w), tuple(-x for x in w)))

    def to_json(self) -> dict:
        return {
            "type": self.name,
            "series": self.series,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "symmetrizers": list(self.symmetrizers),
            "positive_roots": [list(r) for r in self.positive_roots],
            "num_positive_roots": len(self.positive_roots),
            "highest_root": list(self.alpha_tilde),
            "highest_short_root": list(self.alpha0),
            "highest_short_coroot": list(self.alpha0_coroot),
            "highest_root_coroot": list(self.alpha_tilde_coroot),
            "coxeter_number": self.coxeter_number,
            "weyl_group_order": self.weyl_order,
        }


@functools.lru_cache(maxsize=None)
def _build(series: str, rank: int) -> RootSystem:
    return RootSystem(series, rank)


def build_root_system(series: str, rank: int) -> RootSystem:
    """Interned :class:`RootSystem` for an irreducible type."""
    if not isinstance(rank, int) or rank < 1:
        raise RootSystemError(f"rank must be a positive integer, got {rank!r}")
    return _build(series.upper(), rank)


def parse_type(name: str) -> RootSystem:
    """``'B3'`` -> ``build_root_system('B', 3)``."""
    name = name.strip()
    if len(name) < 2 or name[0].upper() not in SERIES or not name[1:].isdigit():
        raise RootSystemError(f"cannot parse root system type {name!r}")
    return build_root_system(name[0].upper(), int(name[1:]))


def pairing(system: RootSystem, weight, root) -> int:
    return system.pairing(weight, root)


def dominance_le(system: RootSystem, mu, lam, mode: str = "integral") -> bool:
    return system.dominance_le(mu, lam, mode)


def dual_weight(system: RootSystem, lam) -> Weight:
    return system.dual_weight(lam)


def is_dominant(weight) -> bool:
    return all(m >= 0 for m in weight)
