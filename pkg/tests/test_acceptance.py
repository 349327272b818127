"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE PASS|FAIL`` line with its timing.  All
comparisons are exact.  Run directly (``python tests/test_acceptance.py``) to
get just the summary lines.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
import conftest  # noqa: E402,F401  (fixes the label order)
from oracles import bfs_pushout, brute_canonical, isomorphic, linrel_compose_oracle  # noqa: E402

from hypercospan import cospan as cs  # noqa: E402
from hypercospan.algebra import part_algebra, psi, verify_equivalence  # noqa: E402
from hypercospan.hypergraph import compact_suite, frobenius_suite, gathr  # noqa: E402
from hypercospan.instances import CospanCategory, FinRel, LinRel  # noqa: E402
from hypercospan.instances import linrel as lr  # noqa: E402
from hypercospan.labels import KleisliMap, LabeledFinSet  # noqa: E402
from hypercospan.terms import decompose, to_cospan  # noqa: E402

SEED = 20240601


def instances():
    return [
        (CospanCategory(["a", "b"]), ["a", "b"]),
        (LinRel("copy"), ["r"]),
        (LinRel("add"), ["r"]),
        (FinRel({"a": 2, "b": 3}), ["a", "b"]),
    ]


def emit(number: int, title: str, ok: bool, elapsed: float, limit: float | None, detail: str = ""):
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit is not None else "")
    line = f"ACCEPTANCE {'PASS' if ok else 'FAIL'} {number} {title} {timing}"
    if detail and not ok:
        line += f"  # {detail}"
    print(line, file=sys.__stdout__, flush=True)
    return line


def timed(fn, *args):
    start = time.perf_counter()
    ok, detail = fn(*args)
    return ok, detail, time.perf_counter() - start


# -- criterion checks ---------------------------------------------------------------


def check_frobenius(make_instances=instances, cases=200):
    failures = []
    for H, labels in make_instances():
        report = frobenius_suite(H, labels, seed=SEED, cases=cases)
        failures += [f"{H.name}: {n} {c}" for n, c, _ in report.failures()]
    return not failures, "; ".join(failures[:3])


def random_wide_cospan(rng, labels, max_boundary=6, max_apex=8):
    size = rng.randint(1, max_apex)
    apex = [rng.choice(labels) for _ in range(size)]
    present = sorted(set(apex))

    def side():
        out = []
        for _ in range(rng.randint(0, max_boundary)):
            label = rng.choice(present)
            out.append(rng.choice([k for k, a in enumerate(apex) if a == label]))
        return out

    left, right = side(), side()
    return cs.Cospan([apex[k] for k in left], [apex[k] for k in right], apex, left, right)


TEN_PORT = cs.Cospan(["l"] * 10, ["l"] * 6, ["l"] * 7, [1, 2, 3, 3, 1, 2, 5, 3, 5, 6], [0, 1, 3, 4, 4, 6])


def check_round_trip(samples=500):
    rng = random.Random(SEED)
    cases = [TEN_PORT] + [random_wide_cospan(rng, ["a", "b"]) for _ in range(samples)]
    for c in cases:
        if to_cospan(decompose(c)) != cs.canonicalize(c):
            return False, f"round trip broke on {cs.to_json(c)}"
    return True, ""


def check_compact(cases=200):
    failures = []
    for H, labels in instances():
        report = compact_suite(H, labels, seed=SEED, cases=cases)
        failures += [f"{H.name}: {n} {c}" for n, c, _ in report.failures()]
    return not failures, "; ".join(failures[:3])


def composable_pairs(rng, count, max_apex=6):
    """Random composable pairs whose inputs and pushout all have at most ``max_apex`` nodes."""
    out = []
    while len(out) < count:
        c1 = random_wide_cospan(rng, ["a", "b"], max_boundary=4, max_apex=max_apex)
        apex = list(c1.cod) + [rng.choice("ab") for _ in range(rng.randint(0, 2))]
        # c2 hits a random quotient of its domain
        labels = sorted(set(apex)) or ["a"]
        nodes = [rng.choice(labels) for _ in range(rng.randint(0, 2))]
        left = []
        for label in c1.cod:
            same = [k for k, a in enumerate(nodes) if a == label]
            if same and rng.random() < 0.5:
                left.append(rng.choice(same))
            else:
                left.append(len(nodes))
                nodes.append(label)
        if not nodes or len(nodes) > max_apex:
            continue
        right = [rng.randrange(len(nodes)) for _ in range(rng.randint(0, 3))]
        c2 = cs.Cospan(c1.cod, [nodes[k] for k in right], nodes, left, right)
        if len(bfs_pushout(c1, c2).apex) <= max_apex:
            out.append((c1, c2))
    return out


def check_pushout(count=300):
    rng = random.Random(SEED)
    for c1, c2 in composable_pairs(rng, count):
        got = cs.compose(c1, c2)
        reference = bfs_pushout(c1, c2)
        if not isomorphic(got, reference):
            return False, "composite is not isomorphic to the BFS pushout"
        if got != brute_canonical(reference):
            return False, "composite differs from the brute-force canonical form"
    return True, ""


def check_linrel_oracle(count=300):
    rng = random.Random(SEED)
    for _ in range(count):
        m, k, n = (rng.randint(0, 4) for _ in range(3))
        r = lr.random_relation(rng, m, k, bound=3)
        s = lr.random_relation(rng, k, n, bound=3)
        if lr.compose(r, s).basis != linrel_compose_oracle(m, k, n, r.basis, s.basis):
            return False, f"mismatch at dims {m},{k},{n}"
    return True, ""


def check_kleisli(count=200):
    rng = random.Random(SEED)
    for _ in range(count):
        f = KleisliMap({l: [rng.choice("mn") for _ in range(rng.randint(0, 3))] for l in "ab"})
        K = lambda c: cs.kleisli_map(c, f)
        flat = lambda x: K(cs.identity(x)).dom
        c1 = cs.random_cospan(rng, random_object(rng), random_object(rng), "ab")
        c2 = cs.random_cospan(rng, c1.cod, random_object(rng), "ab")
        d = cs.random_cospan(rng, random_object(rng), random_object(rng), "ab")
        x = random_object(rng)
        checks = [
            K(cs.identity(x)) == cs.identity(flat(x)),
            K(cs.compose(c1, c2)) == cs.compose(K(c1), K(c2)),
            K(cs.tensor(c1, d)) == cs.tensor(K(c1), K(d)),
        ] + [K(cs.frobenius_cospan(kind, x)) == cs.frobenius_cospan(kind, flat(x))
             for kind in ("mu", "eta", "delta", "epsilon")]
        if not all(checks):
            return False, f"failed for {f!r}"
    return True, ""


def random_object(rng, labels="ab", hi=3):
    return LabeledFinSet(rng.choice(labels) for _ in range(rng.randint(0, hi)))


def equivalence_pairs():
    return [
        (part_algebra(["a", "b"]), CospanCategory(["a", "b"])),
        (psi(LinRel("add")), LinRel("add")),
        (psi(LinRel("copy")), LinRel("copy")),
        (psi(FinRel({"a": 2, "b": 2})), FinRel({"a": 2, "b": 2})),
    ]


def check_equivalence(samples=200, comp=cs.comp_cospan, pairs=equivalence_pairs):
    failures = []
    for A, H in pairs():
        report = verify_equivalence(A, H, samples=samples, seed=SEED, comp=comp)
        failures += [f"{A.name}: {n} {c}" for n, c, _ in report.failures()]
    return not failures, "; ".join(failures[:3])


def check_name_sign(count=100):
    add = LinRel("add")
    rng = random.Random(SEED)
    for _ in range(count):
        r = lr.random_relation(rng, rng.randint(0, 4), rng.randint(0, 4))
        # {(a, b) | (-a, b) in R}: negate the domain block of a basis
        flipped = lr.LinRelMorphism(0, r.m + r.n, [[-v for v in row[: r.m]] + list(row[r.m:])
                                                   for row in r.basis])
        if gathr(add, r) != flipped:
            return False, f"sign mismatch for {r.to_json()}"
    return True, ""


class SwappedMuDelta(LinRel):
    def mu_label(self, label):
        return super().delta_label(label)

    def delta_label(self, label):
        return super().mu_label(label)


def dangling_comp(x, y, z):
    return cs.tensor_all([cs.identity(x), cs.epsilon(y + y), cs.identity(z)])


def check_mutations():
    caught = {}
    ok, _ = check_frobenius(lambda: [(SwappedMuDelta("add"), ["r"])], cases=20)
    caught["mu/delta swap"] = not ok
    ok, _ = check_equivalence(samples=30, comp=dangling_comp,
                              pairs=lambda: equivalence_pairs()[:1])
    caught["wrong comp cospan"] = not ok
    original = cs.compose
    cs.compose = cs.pushout
    try:
        ok, _ = check_pushout(count=50)
    finally:
        cs.compose = original
    caught["no canonicalization"] = not ok
    missed = [name for name, hit in caught.items() if not hit]
    return not missed, "undetected: " + ", ".join(missed)


CRITERIA = [
    (1, "frobenius-axiom-suite", check_frobenius, 10),
    (2, "decompose-eval-round-trip", check_round_trip, 10),
    (3, "compact-closure-suite", check_compact, 10),
    (4, "pushout-oracle-equivalence", check_pushout, 30),
    (5, "linrel-oracle-equivalence", check_linrel_oracle, 10),
    (6, "kleisli-functoriality", check_kleisli, 10),
    (7, "main-equivalence", check_equivalence, 60),
    (8, "name-sign-regression", check_name_sign, 5),
    (9, "mutation-sensitivity", check_mutations, None),
]


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, title, fn, limit):
    ok, detail, elapsed = timed(fn)
    in_time = limit is None or elapsed < limit
    if not in_time:
        detail = f"took {elapsed:.2f}s; {detail}"
    emit(number, title, ok and in_time, elapsed, limit, detail)
    assert ok, detail
    assert in_time, detail


if __name__ == "__main__":
    results = []
    for number, title, fn, limit in CRITERIA:
        ok, detail, elapsed = timed(fn)
        ok = ok and (limit is None or elapsed < limit)
        emit(number, title, ok, elapsed, limit, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
