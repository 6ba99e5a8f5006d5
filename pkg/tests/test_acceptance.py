"""Acceptance criteria, one PASS/FAIL line each.

Run directly (``python3 tests/test_acceptance.py``) for the report, or under
pytest, where the same lines are printed in the terminal summary. Criteria
known not to hold are strict xfails; they still print FAIL.
"""

from __future__ import annotations

import functools
import os
import random
import sys
import time
from dataclasses import dataclass
from typing import Callable

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from stscreen import hyperalg as H  # noqa: E402
from stscreen.chars import decompose_into_chi, tensor_character, weyl_character  # noqa: E402
from stscreen.modular import (  # noqa: E402
    PrimeContext,
    affine_rep,
    g1_linked,
    g_linked,
    is_weyl_simple,
    linkage_rep,
    mu_complement,
    restricted_weights,
)
from stscreen.rootdata import parse_type  # noqa: E402
from stscreen.screening import (  # noqa: E402
    candidate_gammas,
    check_bound_theorem,
    check_weight_bound,
    flagged_cases,
    fundamental_weight_check,
    maximality_report,
    screen,
    smallest_prime_at_least,
    steinberg_character,
    weight_inequality_witnesses,
)

# ---------------------------------------------------------------- golden data

B3_P7 = {
    ((6, 5, 5), (3, 0, 0)), ((6, 4, 5), (1, 1, 0)), ((6, 5, 4), (2, 0, 1)),
    ((5, 5, 5), (0, 0, 0)), ((5, 5, 4), (0, 0, 1)), ((5, 5, 4), (1, 0, 1)),
    ((5, 5, 5), (2, 0, 0)), ((5, 4, 5), (0, 1, 0)), ((4, 5, 5), (1, 0, 0)),
    ((4, 5, 4), (0, 0, 1)), ((3, 5, 5), (0, 0, 0)),
}
C3_P3 = {((2, 1, 2), (0, 0, 0)), ((2, 1, 2), (0, 1, 0)), ((2, 2, 1), (1, 0, 0)),
         ((2, 0, 2), (0, 0, 0))}
C3_P7 = {((6, 5, 5), (0, 0, 0)), ((6, 4, 5), (0, 1, 0)), ((6, 5, 4), (0, 0, 1)),
         ((5, 5, 5), (1, 0, 0)), ((4, 5, 5), (0, 0, 0))}
C3_P7_2W2 = {((6, 5, 6), (0, 0, 0)), ((4, 6, 6), (0, 0, 0)), ((5, 6, 6), (1, 0, 0))}
A4_P5 = {
    ((4, 3, 3, 4), (2, 0, 0, 2)), ((4, 3, 2, 4), (1, 1, 0, 1)), ((4, 2, 3, 4), (1, 0, 1, 1)),
    ((3, 3, 2, 4), (0, 1, 0, 1)), ((3, 2, 3, 4), (0, 0, 1, 1)), ((4, 3, 2, 3), (1, 1, 0, 0)),
    ((4, 2, 3, 3), (1, 0, 1, 0)), ((4, 3, 3, 3), (2, 0, 0, 1)), ((3, 3, 3, 4), (1, 0, 0, 2)),
    ((2, 3, 3, 4), (0, 0, 0, 2)), ((4, 3, 3, 2), (2, 0, 0, 0)), ((4, 3, 1, 4), (0, 2, 0, 0)),
    ((4, 1, 3, 4), (0, 0, 2, 0)), ((4, 2, 2, 4), (0, 1, 1, 0)), ((3, 3, 3, 3), (1, 0, 0, 1)),
    ((3, 3, 3, 3), (0, 0, 0, 0)), ((2, 3, 3, 3), (0, 0, 0, 1)), ((3, 2, 3, 3), (0, 0, 1, 0)),
    ((3, 3, 2, 3), (0, 1, 0, 0)), ((3, 3, 3, 2), (1, 0, 0, 0)), ((2, 3, 3, 2), (0, 0, 0, 0)),
}
D4_P7_2W2 = {
    ((6, 5, 6, 6), (0, 0, 0, 0)), ((4, 6, 6, 6), (0, 0, 0, 0)), ((6, 6, 4, 6), (0, 0, 0, 0)),
    ((6, 6, 6, 4), (0, 0, 0, 0)), ((5, 6, 6, 6), (1, 0, 0, 0)), ((6, 6, 5, 6), (0, 0, 1, 0)),
    ((6, 6, 6, 5), (0, 0, 0, 1)),
}
D4_P7_W1W2 = {((6, 4, 5, 5), (0, 1, 0, 0)), ((4, 5, 5, 5), (0, 0, 0, 0)),
              ((5, 5, 5, 5), (1, 0, 0, 0)), ((6, 5, 5, 5), (2, 0, 0, 0))}
F4_P2 = {
    ((1, 1, 0, 1), (0, 0, 0, 0)), ((1, 1, 0, 1), (0, 0, 1, 0)), ((1, 1, 0, 1), (0, 0, 0, 1)),
    ((1, 1, 0, 1), (0, 0, 0, 2)),
    ((1, 1, 1, 0), (0, 0, 0, 0)), ((1, 1, 1, 0), (1, 0, 0, 0)), ((1, 1, 1, 0), (0, 0, 1, 0)),
    ((1, 1, 1, 0), (0, 0, 0, 1)), ((1, 1, 1, 0), (1, 0, 0, 1)),
    ((0, 1, 1, 0), (0, 0, 0, 1)),
    ((1, 1, 0, 0), (0, 0, 0, 1)),
}
EMPTY = [("A2", 2), ("A2", 3), ("A3", 2), ("A3", 3), ("A3", 5), ("A3", 7), ("A4", 2),
         ("A4", 3), ("B2", 2), ("B2", 3), ("B3", 3), ("B3", 5), ("C3", 2), ("C3", 5),
         ("D4", 2), ("D4", 3), ("D4", 5), ("G2", 2), ("G2", 3), ("G2", 5)]
D4_P3_NONSIMPLE = {(3, 0, 0, 0), (0, 0, 3, 0), (0, 0, 0, 3), (1, 1, 0, 0), (0, 1, 1, 0),
                   (0, 1, 0, 1), (1, 0, 1, 1)}
E8_FLAGS = {(3, 2, 1), (4, 2, 1), (4, 3, 1), (5, 2, 1), (6, 2, 1)}


def ctx(name, p, r=1):
    return PrimeContext(parse_type(name), p, r)


@functools.lru_cache(maxsize=None)
def run(name, p, resolve=()):
    t0 = time.perf_counter()
    rep = screen(ctx(name, p), resolve=resolve)
    return rep, time.perf_counter() - t0


def weight_pairs(name, p, gamma):
    c = ctx(name, p)
    return {(lam, mu) for lam in restricted_weights(c) if lam != c.steinberg
            if gamma in candidate_gammas(lam, c)
            for mu in weight_inequality_witnesses(lam, gamma, c)}


# ------------------------------------------------------------------ criteria

def c1_b3_p7():
    rep, dt = run("B3", 7)
    ok = set(rep.pairs((1, 0, 1))) == B3_P7 and rep.gammas() == {(1, 0, 1)}
    wp = weight_pairs("B3", 7, (2, 0, 0))
    diffs = {tuple(a - b for a, b in zip(l, m)) for l, m in wp}
    ok &= diffs == {(5, 6, 6), (6, 5, 6), (6, 6, 4)} and not rep.pairs((2, 0, 0))
    ok &= dt < 60
    return ok, f"{len(rep.pairs((1, 0, 1)))} pairs for w1+w3, {len(wp)} weight pairs for 2w1, {dt:.1f}s"


def c1_c3_p3():
    rep, dt = run("C3", 3)
    ok = set(rep.pairs()) == C3_P3 and rep.gammas() == {(0, 1, 0)}
    c = ctx("C3", 3)
    st = steinberg_character(c)
    m = maximality_report(tensor_character(st, st), (2, 7, 2), c)
    ok &= set(m.weights_above) == {(4, 4, 4), (2, 5, 4), (4, 6, 2)} and m.maximal
    return ok and dt < 60, f"{len(rep.pairs())} pairs, above (2,7,2): {m.weights_above}"


def c1_c3_p7_2w2():
    rep, dt = run("C3", 7)
    wp = weight_pairs("C3", 7, (0, 2, 0))
    ok = wp == C3_P7_2W2 and not rep.pairs((0, 2, 0))
    return ok and dt < 60, f"2w2: {len(wp)} weight pairs, {len(rep.pairs((0, 2, 0)))} linked"


def c1_c3_p7_w1w2():
    rep, _ = run("C3", 7)
    got = set(rep.pairs((1, 1, 0)))
    ok = got == C3_P7 and rep.gammas() == {(1, 1, 0)}
    return ok, f"{len(got)} pairs, missing {sorted(C3_P7 - got)}, extra {sorted(got - C3_P7)}"


def c1_a4_p5():
    rep, dt = run("A4", 5)
    ok = set(rep.pairs()) == A4_P5 and rep.gammas() == {(1, 0, 0, 1)}
    return ok and dt < 60, f"{len(rep.pairs())} pairs, gammas {sorted(rep.gammas())}"


def c1_d4_p7():
    rep, dt = run("D4", 7)
    wp = weight_pairs("D4", 7, (0, 2, 0, 0))
    got = set(rep.pairs((1, 1, 0, 0)))
    ok = wp == D4_P7_2W2 and not rep.pairs((0, 2, 0, 0)) and D4_P7_W1W2 <= got
    return ok and dt < 60, f"2w2: {len(wp)} weight pairs, 0 linked; w1+w2: {len(got)} ⊇ 4; {dt:.1f}s"


def c1_f4_p2():
    rep, dt = run("F4", 2)
    got = set(rep.pairs((0, 0, 0, 2))) | set(rep.pairs((1, 0, 0, 1)))
    return got == F4_P2 and dt < 60, f"{len(got)} pairs for 2w4, w1+w4 (table lists 11)"


def c1_a5_p2():
    rep, dt = run("A5", 2)
    ts = [(t.lam, t.gamma, t.mu1) for t in rep.triples()]
    ok = ts == [((1, 1, 0, 1, 1), (1, 0, 0, 0, 1), (0,) * 5)]
    return ok and dt < 60, str(ts)


def c1_empty():
    bad = []
    for name, p in EMPTY:
        rep, dt = run(name, p)
        if rep.unresolved or dt >= 60:
            bad.append((name, p))
    rep, _ = run("G2", 7, ("top_linkage",))
    if rep.unresolved:
        bad.append(("G2", 7))
    return not bad, f"{len(EMPTY) + 1} screens, nonempty: {bad}"


def c1_b3_p2():
    rep, _ = run("B3", 2, ("char_surrogate",))
    return not rep.unresolved, f"unresolved {[(t.lam, t.gamma, t.mu1) for t in rep.triples()]}"


def c2_simplicity():
    facts = []
    simple = lambda name, w, p: is_weyl_simple(w, ctx(name, p))
    for p in (3, 5, 7):
        facts += [simple("B3", (1, 0, 1), p) == (p != 7), simple("B3", (0, 0, 2), p),
                  simple("C3", (2, 0, 0), p), simple("C3", (1, 1, 0), p) == (p not in (3, 7))]
    for p in (2, 3, 5, 7):
        facts += [simple("C3", (0, 1, 0), p) == (p != 3), simple("C3", (0, 0, 1), p) == (p != 2),
                  simple("C3", (1, 0, 1), p) == (p > 3)]
    c = ctx("D4", 3)
    gam = set()
    for lam in restricted_weights(c):
        if lam != c.steinberg:
            gam |= set(candidate_gammas(lam, c))
    facts.append({g for g in gam if not is_weyl_simple(g, c)} == D4_P3_NONSIMPLE)
    facts.append(simple("F4", (0, 0, 0, 1), 2))
    for name in ("A1", "A2", "A3", "B2", "B3", "C3", "G2"):
        for p in (2, 3, 5, 7):
            facts.append(simple(name, (p - 1,) * parse_type(name).rank, p))
    return all(facts), f"{sum(facts)}/{len(facts)} facts"


def c3_fundamental():
    e6 = flagged_cases(fundamental_weight_check(parse_type("E6")))
    e7 = flagged_cases(fundamental_weight_check(parse_type("E7")))
    e8 = flagged_cases(fundamental_weight_check(parse_type("E8")))
    f4 = flagged_cases(fundamental_weight_check(parse_type("F4")))
    ok = not e6 and e7 == {(4, 2, 1)} and e8 == E8_FLAGS and f4 == {(2, 2, 1)}
    return ok, f"E7 {sorted(e7)}, E8 {sorted(e8)}, F4 {sorted(f4)}"


def c4_bounds():
    names = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"]
    bad = []
    for n in names:
        R = parse_type(n)
        p = smallest_prime_at_least(2 * R.coxeter_number - 4)
        if not check_bound_theorem(PrimeContext(R, p)):
            bad.append((n, p))
    count = 0
    for n in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]:
        R = parse_type(n)
        for p in (2, 3, 5, 7):
            c = PrimeContext(R, p)
            for lam in restricted_weights(c):
                if R.pairing(lam, R.alpha0) <= 2 * p - 1:
                    count += 1
                    if not check_weight_bound(lam, c):
                        bad.append((n, p, lam))
    return not bad, f"{len(names)} types, {count} weights, failures {bad[:3]}"


def c5_maximal():
    checks = H.verify_maximal_vectors()
    bad = [c.name for c in checks if not c.ok]
    return not bad, f"failing: {bad}" if bad else f"{len(checks)} checks"


def c5_rest():
    t0 = time.perf_counter()
    checks = [H.verify_e_action()] + H.verify_quotient() + H.verify_adjoint_truncation()
    H.verify_maximal_vectors()
    dt = time.perf_counter() - t0
    bad = [c.name for c in checks if not c.ok]
    return not bad and dt < 5, f"{len(checks)} checks, failing {bad}, {dt:.2f}s"


def c6_properties():
    from test_chars import GRID, kostant_mult
    from test_modular import orbit_key
    import itertools

    ok = True
    for name, top in GRID:
        R = parse_type(name)
        for lam in itertools.product(range(top + 1), repeat=R.rank):
            c = weyl_character(R, lam)
            ok &= all(c.mult(mu) == kostant_mult(R, lam, mu)
                      for mu in R.dominant_weights_below(lam))
    rng = random.Random(2024)
    names = ["A2", "B2", "G2", "A3", "B3", "C3"]
    for k in range(100):
        R = parse_type(names[k % len(names)])
        top = 1 if R.rank == 3 or R.series == "G" else 2
        a = tuple(rng.randint(0, top) for _ in range(R.rank))
        b = tuple(rng.randint(0, top) for _ in range(R.rank))
        ok &= decompose_into_chi(tensor_character(weyl_character(R, a),
                                                  weyl_character(R, b))).is_nonnegative()
    c = ctx("B3", 7)
    R = c.system
    x1 = list(restricted_weights(c))
    part = lambda f: sorted(sorted(v) for v in _group(x1, f).values())
    ok &= part(lambda w: linkage_rep(w, c)) == part(lambda w: orbit_key(R, w, 7, "weight"))
    ok &= part(lambda w: affine_rep(R, w, 7)) == part(lambda w: orbit_key(R, w, 7, "root"))
    for a in x1[::7]:
        b = x1[(x1.index(a) * 31) % len(x1)]
        ok &= mu_complement(mu_complement(a, c), c) == a
        ok &= R.dual_weight(R.dual_weight(a)) == a
        ok &= g1_linked(a, b, c) == g1_linked(R.dual_weight(a), R.dual_weight(b), c)
        flip = lambda w: tuple(12 - x for x in w)
        ok &= g_linked(a, b, c) == g_linked(flip(a), flip(b), c)
    return ok, "Kostant grid, 100 tensor pairs, B3 p=7 linkage partitions, dualities"


def _group(ws, key):
    out = {}
    for w in ws:
        out.setdefault(key(w), set()).add(w)
    return out


@dataclass
class Criterion:
    cid: str
    text: str
    fn: Callable
    known_failure: str | None = None


CRITERIA = [
    Criterion("1a", "B3 p=7 golden table", c1_b3_p7),
    Criterion("1b", "C3 p=3 table and maximality", c1_c3_p3),
    Criterion("1c", "C3 p=7 2w2 elimination", c1_c3_p7_2w2),
    Criterion("1c2", "C3 p=7 w1+w2 golden table", c1_c3_p7_w1w2,
              "listed row (6,5,5)|0 is not linked under any convention; screen gives (6,5,5)|(2,0,0)"),
    Criterion("1d", "A4 p=5 golden table", c1_a4_p5),
    Criterion("1e", "D4 p=7 eliminations and superset", c1_d4_p7),
    Criterion("1f", "F4 p=2 golden table", c1_f4_p2,
              "table includes an unrestricted mu_(1) and cannot be matched; see notes"),
    Criterion("1g", "A5 p=2 single triple", c1_a5_p2),
    Criterion("1h", "empty screens (all but B3 p=2)", c1_empty),
    Criterion("1i", "B3 p=2 empty screen", c1_b3_p2,
              "chi(rho + 2 varpi_1) occurs in St (x) nabla(w1 + w2); triple stays open"),
    Criterion("2", "Weyl module simplicity facts", c2_simplicity),
    Criterion("3", "fundamental-weight classification", c3_fundamental),
    Criterion("4", "bound theorems", c4_bounds),
    Criterion("5a", "hyperalgebra maximal vectors", c5_maximal,
              "displayed v2 is not killed by e3; the corrected vector is tested separately"),
    Criterion("5b", "hyperalgebra quotient, truncation, e-action oracle, runtime", c5_rest),
    Criterion("6", "property suites", c6_properties),
]

RESULTS: dict[str, str] = {}


def evaluate(c: Criterion) -> tuple[bool, str]:
    try:
        ok, detail = c.fn()
    except Exception as exc:  # a crash is a failure, not an error in the report
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    line = f"{'PASS' if ok else 'FAIL'}  [{c.cid}] {c.text}: {detail}"
    if c.known_failure and not ok:
        line += f"  (known: {c.known_failure})"
    RESULTS[c.cid] = line
    return ok, line


@pytest.mark.parametrize(
    "crit",
    [pytest.param(c, id=c.cid, marks=[pytest.mark.xfail(strict=True, reason=c.known_failure)]
                  if c.known_failure else []) for c in CRITERIA])
def test_criterion(crit):
    ok, line = evaluate(crit)
    print(line)
    assert ok, line


def main() -> int:
    failed = 0
    for c in CRITERIA:
        ok, line = evaluate(c)
        print(line, flush=True)
        failed += not ok
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
