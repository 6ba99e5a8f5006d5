"""Characteristic-2 computation in ``St_1 (x) Delta(lam)`` for SL_6.

Here ``lam = w1 + w2 + w4 + w5`` and ``alpha_0`` is the highest root. The left
factor is spanned by words ``f_{i_1} ... f_{i_m} . w_rho`` in distinct simple
indices. The right factor is modelled, on the weights ``>= 2 alpha_0``, by the
adjoint representation of ``sl_4`` over F_2 (Levi subgroup for
``J = {alpha_2, alpha_3, alpha_4}``), with ``z_lam`` the highest root vector.

All coefficients are in F_2, so a vector is the set of basis elements
occurring in it and addition is symmetric difference.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .rootdata import build_root_system

RANK = 5
J = (2, 3, 4)
LAMBDA = (1, 1, 0, 1, 1)


class HyperalgebraError(ValueError):
    pass


def _adjacent(a: int, b: int) -> bool:
    return abs(a - b) == 1


# ---------------------------------------------------------------- left factor

def check_word(word) -> tuple[int, ...]:
    word = tuple(int(i) for i in word)
    if len(set(word)) != len(word):
        raise HyperalgebraError(f"word {word} repeats a simple root")
    if any(not 1 <= i <= RANK for i in word):
        raise HyperalgebraError(f"word {word} has an index outside 1..{RANK}")
    return word


def normalize_word(word) -> tuple[int, ...]:
    """Lexicographically smallest word in the commutation class.

    ``f_a`` and ``f_b`` commute unless ``|a - b| = 1``; a letter can move to
    the front when it commutes with everything before it.
    """
    rest = list(check_word(word))
    out = []
    while rest:
        movable = [k for k, a in enumerate(rest)
                   if not any(_adjacent(a, b) for b in rest[:k])]
        k = min(movable, key=lambda k: rest[k])
        out.append(rest.pop(k))
    return tuple(out)


def all_words(max_len: int = RANK) -> list[tuple[int, ...]]:
    """Every ordered word in distinct indices of length ``<= max_len``."""
    return [w for m in range(max_len + 1)
            for w in itertools.permutations(range(1, RANK + 1), m)]


def e_action(alpha: int, word) -> frozenset:
    """``e_alpha f_{i_1} ... f_{i_m} . w_rho`` in closed form.

    Zero if ``alpha`` is absent; otherwise ``(s + 1)`` times the word with
    ``alpha`` deleted, ``s`` counting later letters adjacent to ``alpha``.
    The result is a set of normalized words.
    """
    word = check_word(word)
    if alpha not in word:
        return frozenset()
    j = word.index(alpha)
    s = sum(1 for b in word[j + 1:] if _adjacent(alpha, b))
    if s % 2:
        return frozenset()
    return frozenset({normalize_word(word[:j] + word[j + 1:])})


def e_action_oracle(alpha: int, word) -> frozenset:
    """Same value by rewriting with the characteristic-2 commutators.

    Uses ``e_a f_b = f_b e_a`` (``a != b``), ``e_a f_a = f_a e_a + h_a``,
    ``h_a f_b = f_b h_a + <-alpha_b, alpha_a^vee> f_b``, ``e_a . w_rho = 0``
    and ``h_a . w_rho = <rho, alpha_a^vee> w_rho = w_rho``.
    """
    word = check_word(word)
    cartan = build_root_system("A", RANK).cartan
    result: set = set()

    def push(ops: tuple):
        # ops is a sequence of ("f"|"e"|"h", index) applied to w_rho
        k = next((i for i, (kind, _) in enumerate(ops) if kind != "f"), None)
        if k is None:
            result.symmetric_difference_update({normalize_word(tuple(i for _, i in ops))})
            return
        kind, a = ops[k]
        if k == len(ops) - 1:
            if kind == "h":
                push(ops[:k])
            return
        _, b = ops[k + 1]
        head, tail = ops[:k], ops[k + 2:]
        if kind == "e":
            push(head + (("f", b), ("e", a)) + tail)
            if a == b:
                push(head + (("h", a),) + tail)
        else:
            push(head + (("f", b), ("h", a)) + tail)
            if (-cartan[a - 1][b - 1]) % 2:
                push(head + (("f", b),) + tail)

    push((("e", alpha),) + tuple(("f", i) for i in word))
    return frozenset(result)


# --------------------------------------------------------------- right factor

def _label_order():
    off = [f"E{i}{j}" for i in range(1, 5) for j in range(1, 5) if i != j]
    return tuple(off + ["H1", "H2", "H3"])


class AdjointModel:
    """``sl_4`` over F_2 acting on itself by the adjoint action.

    Simple root ``alpha_a`` of SL_6 (``a`` in J) is ``alpha_{a-1}`` of ``sl_4``:
    ``e_a = ad E_{a-1,a}``, ``f_a = ad E_{a,a-1}``, ``h_a = ad H_{a-1}``.
    """

    labels = _label_order()

    def __init__(self):
        self._mat = {lab: self._matrix(lab) for lab in self.labels}
        self.tables = {}
        for a in J:
            i = a - 1
            for kind, x in (("e", self._unit(i, i + 1)), ("f", self._unit(i + 1, i)),
                            ("h", self._mat[f"H{i}"])):
                self.tables[(kind, a)] = {lab: self._ad(x, self._mat[lab]) for lab in self.labels}
        self.z = frozenset({"E14"})

    @staticmethod
    def _unit(i, j):
        m = np.zeros((4, 4), dtype=np.int64)
        m[i - 1, j - 1] = 1
        return m

    def _matrix(self, lab):
        if lab[0] == "E":
            return self._unit(int(lab[1]), int(lab[2]))
        k = int(lab[1])
        return self._unit(k, k) + self._unit(k + 1, k + 1)

    def decompose(self, m) -> frozenset:
        """Coordinates of a traceless (mod 2) matrix in the basis."""
        m = np.asarray(m) % 2
        out = {f"E{i + 1}{j + 1}" for i in range(4) for j in range(4) if i != j and m[i, j]}
        d = [int(m[k, k]) for k in range(4)]
        if sum(d) % 2:
            raise HyperalgebraError("matrix is not in sl_4 over F_2")
        a, b, c = d[0], (d[0] + d[1]) % 2, d[3]
        out |= {lab for lab, bit in (("H1", a), ("H2", b), ("H3", c)) if bit}
        return frozenset(out)

    def _ad(self, x, y) -> frozenset:
        return self.decompose(x @ y - y @ x)

    def matrix_of(self, vec) -> np.ndarray:
        m = np.zeros((4, 4), dtype=np.int64)
        for lab in vec:
            m = m + self._mat[lab]
        return m % 2

    def act(self, kind: str, a: int, vec) -> frozenset:
        table = self.tables[(kind, a)]
        out: set = set()
        for lab in vec:
            out.symmetric_difference_update(table[lab])
        return frozenset(out)

    def apply_word(self, word, vec=None) -> frozenset:
        """``f_{i_1} ... f_{i_m} . vec`` (rightmost applied first)."""
        vec = self.z if vec is None else frozenset(vec)
        for a in reversed(tuple(word)):
            if a not in J:
                raise HyperalgebraError(f"f_{a} is not in the Levi factor J={J}")
            vec = self.act("f", a, vec)
        return vec

    @staticmethod
    def depth(lab: str) -> tuple[int, ...]:
        """``lam - weight`` in simple-root coordinates of SL_6."""
        top = [0, 1, 1, 1, 0]
        if lab[0] == "H":
            return tuple(top)
        i, j = int(lab[1]), int(lab[2])
        root = [0] * RANK
        for k in range(min(i, j), max(i, j)):
            root[k] = 1  # sl_4 index k is SL_6 index k + 1 (0-based slot k)
        sign = -1 if i < j else 1
        return tuple(t + sign * r for t, r in zip(top, root))

    @classmethod
    def in_window(cls, lab: str) -> bool:
        """Weight ``>= 2 alpha_0``: Cartan and positive root vectors."""
        return all(0 <= d <= t for d, t in zip(cls.depth(lab), (0, 1, 1, 1, 0)))

    def check_relations(self) -> list[str]:
        """Exhaustive checks of the commutator tables; returns failures."""
        bad = []
        cartan = build_root_system("A", RANK).cartan
        for a, b in itertools.product(J, J):
            for lab in self.labels:
                v = frozenset({lab})
                ef = self.act("e", a, self.act("f", b, v)) ^ self.act("f", b, self.act("e", a, v))
                want = self.act("h", a, v) if a == b else frozenset()
                if ef != want:
                    bad.append(f"[e{a},f{b}] on {lab}")
                c = cartan[a - 1][b - 1] % 2
                for kind in ("e", "f"):
                    he = (self.act("h", a, self.act(kind, b, v))
                          ^ self.act(kind, b, self.act("h", a, v)))
                    if he != (self.act(kind, b, v) if c else frozenset()):
                        bad.append(f"[h{a},{kind}{b}] on {lab}")
        # ad is a Lie homomorphism: ad[x,y] = [ad x, ad y] on every basis vector
        for x, y in itertools.combinations(self.labels, 2):
            mx, my = self._mat[x], self._mat[y]
            bracket = (mx @ my - my @ mx) % 2
            for lab in self.labels:
                mz = self._mat[lab]
                lhs = self.decompose(bracket @ mz - mz @ bracket)
                rhs = (self._ad(mx, self.matrix_of(self._ad(my, mz)))
                       ^ self._ad(my, self.matrix_of(self._ad(mx, mz))))
                if lhs != rhs:
                    bad.append(f"Jacobi {x},{y},{lab}")
        # every action preserves weight: depth changes by exactly one simple root
        for (kind, a), table in self.tables.items():
            step = [0] * RANK
            step[a - 1] = {"e": -1, "f": 1, "h": 0}[kind]
            for lab, img in table.items():
                want = tuple(d + s for d, s in zip(self.depth(lab), step))
                if any(self.depth(x) != want for x in img):
                    bad.append(f"{kind}{a} on {lab} is not homogeneous")
        return bad


_MODEL = None


def model() -> AdjointModel:
    global _MODEL
    if _MODEL is None:
        _MODEL = AdjointModel()
    return _MODEL


# ------------------------------------------------------------- tensor factor

@dataclass(frozen=True)
class TensorElement:
    """F_2-combination of ``(left word . w_rho) (x) (basis vector of the model)``."""

    terms: frozenset = field(default_factory=frozenset)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        return TensorElement(self.terms ^ other.terms)

    def __bool__(self):
        return bool(self.terms)

    def weight(self) -> tuple[int, ...] | None:
        """Common ``rho + lam - weight`` in simple-root coordinates, asserted."""
        ws = set()
        for left, lab in self.terms:
            left_depth = [0] * RANK
            for i in left:
                left_depth[i - 1] += 1
            ws.add(tuple(a + b for a, b in zip(left_depth, AdjointModel.depth(lab))))
        if len(ws) > 1:
            raise HyperalgebraError(f"element is not weight-homogeneous: {sorted(ws)}")
        return next(iter(ws)) if ws else None

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{''.join(f'f{i}' for i in left) or '1'}.w (x) {lab}"
            for left, lab in sorted(self.terms))


def tensor(*pairs) -> TensorElement:
    """Build ``sum left_i . w_rho (x) right_i . z_lam`` from word pairs.

    Each ``left_i`` may be one word or a tuple of words (a sum); the right
    words are evaluated in the adjoint model.
    """
    m = model()
    out: set = set()
    for left, right in pairs:
        lefts = left if left and isinstance(left[0], tuple) else (left,)
        rights = right if right and isinstance(right[0], tuple) else (right,)
        rvec: set = set()
        for r in rights:
            rvec.symmetric_difference_update(m.apply_word(r))
        for lw in lefts:
            nw = normalize_word(lw)
            for lab in rvec:
                out.symmetric_difference_update({(nw, lab)})
    t = TensorElement(frozenset(out))
    t.weight()
    return t


def apply_e(alpha: int, t: TensorElement) -> TensorElement:
    """Diagonal action ``e_alpha (x) 1 + 1 (x) e_alpha``."""
    m = model()
    out: set = set()
    for left, lab in t.terms:
        for w in e_action(alpha, left):
            out.symmetric_difference_update({(w, lab)})
        if alpha in J:
            for img in m.act("e", alpha, {lab}):
                out.symmetric_difference_update({(left, img)})
        # e_1, e_5 raise out of lam - ZJ, hence kill the right factor
    res = TensorElement(frozenset(out))
    res.weight()
    return res


def project_quotient(t: TensorElement) -> TensorElement:
    """``id (x) f`` for ``f : Delta(lam) -> L(lam)`` on the window ``>= 2 alpha_0``.

    The kernel there is spanned by ``f2 f3 f4 . z + f4 f3 f2 . z = H1 + H3``,
    so ``H3`` is rewritten as ``H1``.
    """
    out: set = set()
    for left, lab in t.terms:
        if not AdjointModel.in_window(lab):
            raise HyperalgebraError(f"{lab} lies outside the weights >= 2 alpha_0")
        out.symmetric_difference_update({(left, "H1" if lab == "H3" else lab)})
    return TensorElement(frozenset(out))


def f2_rank(vectors) -> int:
    """Rank over F_2 of vectors given as sets of hashable basis keys."""
    keys = {}
    rows = []
    for v in vectors:
        bits = 0
        for k in v:
            bits |= 1 << keys.setdefault(k, len(keys))
        rows.append(bits)
    rank = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
    return rank


def maximal_vectors() -> dict[str, TensorElement]:
    """The three vectors of weight ``rho + 2 alpha_0``."""
    e = ()
    v1 = tensor(
        (e, (3, 2, 4)),
        ((2,), (3, 4)),
        ((4,), (3, 2)),
        ((2, 3), (4,)),
        ((4, 3), (2,)),
        (((2, 3, 4), (4, 3, 2)), e),
    )
    v2 = tensor(
        (e, (2, 3, 4)),
        ((3,), (2, 4)),
        ((3, 2), (4,)),
        ((3, 4), (2,)),
        ((3, 2, 4), e),
    )
    v3 = tensor((e, ((2, 3, 4), (4, 3, 2))))
    return {"v1": v1, "v2": v2, "v3": v3}


# The displayed v2 is not killed by e3; adding this term (so that its last
# summand reads (f3 f2 f4 + f2 f4 f3).w (x) z) gives a maximal vector.
V2_CORRECTION = ((2, 4, 3), ())


def corrected_v2() -> TensorElement:
    return maximal_vectors()["v2"] + tensor(V2_CORRECTION)


def maximal_vector_space(weight=(0, 1, 1, 1, 0)) -> list[TensorElement]:
    """F_2-basis of vectors of the given weight killed by every ``e_a``."""
    m = model()
    words = sorted({normalize_word(w) for w in all_words()})
    basis = [(w, lab) for w in words for lab in m.labels
             if TensorElement(frozenset({(w, lab)})).weight() == tuple(weight)]
    # matrix of the map v -> (e_1 v, ..., e_5 v), reduced over F_2
    images = []
    for b in basis:
        t = TensorElement(frozenset({b}))
        images.append(frozenset((a,) + x for a in range(1, RANK + 1)
                                for x in apply_e(a, t).terms))
    keys = {}
    rows = []
    for k, img in enumerate(images):
        bits = 0
        for x in img:
            bits |= 1 << keys.setdefault(x, len(keys))
        rows.append([bits, 1 << k])
    pivots = []
    for row in rows:
        for pbits, pcomb in pivots:
            top = pbits.bit_length() - 1
            if (row[0] >> top) & 1:
                row[0] ^= pbits
                row[1] ^= pcomb
        if row[0]:
            pivots.append((row[0], row[1]))
            pivots.sort(key=lambda r: -r[0].bit_length())
    kernel = [comb for bits, comb in rows if not bits]
    return [TensorElement(frozenset(basis[k] for k in range(len(basis)) if comb >> k & 1))
            for comb in kernel]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def verify_maximal_vectors() -> list[Check]:
    vs = maximal_vectors()
    out = []
    for name, v in vs.items():
        if not v:
            out.append(Check(f"{name} nonzero", False, "vector is zero in the model"))
        for a in J:
            img = apply_e(a, v)
            out.append(Check(f"e{a}.{name} = 0", not img, img.pretty()))
    rank = f2_rank(v.terms for v in vs.values())
    out.append(Check("v1, v2, v3 independent", rank == 3, f"rank {rank}"))
    space = maximal_vector_space()
    out.append(Check("maximal vectors of weight rho + 2 alpha_0 span 3 dimensions",
                     f2_rank(t.terms for t in space) == 3,
                     f"dimension {f2_rank(t.terms for t in space)}"))
    weights = {v.weight() for v in vs.values()}
    out.append(Check("common weight rho + 2 alpha_0", weights == {(0, 1, 1, 1, 0)},
                     str(sorted(weights))))
    return out


def verify_quotient() -> list[Check]:
    vs = maximal_vectors()
    p = {k: project_quotient(v) for k, v in vs.items()}
    rank = f2_rank([p["v1"].terms, p["v2"].terms])
    return [
        Check("(id x f)(v3) = 0", not p["v3"], p["v3"].pretty()),
        Check("(id x f)(v1), (id x f)(v2) independent", rank == 2, f"rank {rank}"),
        Check("(id x f)(0) = 0", not project_quotient(TensorElement())),
    ]


def verify_adjoint_truncation() -> list[Check]:
    m = model()
    a5 = build_root_system("A", RANK)
    two_a0 = tuple(2 * x for x in a5.root_to_weight(a5.alpha0))
    diff = a5.weight_to_root(tuple(a - b for a, b in zip(LAMBDA, two_a0)))
    out = [Check("lam - 2 alpha_0 = alpha_2 + alpha_3 + alpha_4",
                 tuple(diff) == (0, 1, 1, 1, 0), str(tuple(int(x) for x in diff)))]
    zero_space = [lab for lab in m.labels if m.depth(lab) == (0, 1, 1, 1, 0)]
    basis = [m.apply_word(w) for w in ((2, 3, 4), (4, 3, 2), (3, 4, 2))]
    alt = m.apply_word((3, 2, 4))
    out.append(Check("dim of weight 2 alpha_0 = 3", len(zero_space) == 3, str(zero_space)))
    out.append(Check("f2f3f4.z, f4f3f2.z, f3f4f2.z span it",
                     f2_rank(basis) == 3 and all(set(b) <= set(zero_space) for b in basis)))
    out.append(Check("f3f2f4.z = f3f4f2.z (either completes the basis)", alt == basis[2],
                     f"{sorted(alt)} vs {sorted(basis[2])}"))
    fixed = basis[0] ^ basis[1]
    for a in J:
        img = m.act("e", a, fixed)
        out.append(Check(f"e{a}.(f2f3f4.z + f4f3f2.z) = 0", not img, str(sorted(img))))
    bad = m.check_relations()
    out.append(Check("adjoint model relations", not bad, "; ".join(bad[:5])))
    return out


def verify_e_action() -> Check:
    """Closed form against the rewriting oracle on every word and root."""
    words = all_words()
    bad = [(a, w) for w in words for a in range(1, RANK + 1)
           if e_action(a, w) != e_action_oracle(a, w)]
    n = len(words) * RANK
    return Check(f"e_action = oracle on {n} cases", not bad, str(bad[:5]))


def verify_a5() -> list[Check]:
    return ([verify_e_action()] + verify_adjoint_truncation()
            + verify_maximal_vectors() + verify_quotient())
