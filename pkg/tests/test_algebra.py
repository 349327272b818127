import random

import pytest
from oracles import finrel_frob

from hypercospan import cospan as cs
from hypercospan.algebra import (
    AlgebraMorphism,
    PhiMorphism,
    algebra_laws,
    initial_map,
    nu,
    part_algebra,
    phi,
    psi,
    psi_on_functor,
    pullback_algebra,
    verify_equivalence,
)
from hypercospan.hypergraph import base_change, cup, frob_functor, gathr
from hypercospan.instances import CospanCategory, FinRel, LinRel
from hypercospan.instances.linrel import LinRelMorphism, random_relation
from hypercospan.labels import EMPTY, KleisliMap, LabeledFinSet

L = LabeledFinSet("l")
R = LabeledFinSet("r")


def test_part_enumeration():
    elems = part_algebra(["l"]).enumerate(L, max_apex=2)
    assert len(elems) == 2
    assert sorted(len(e.apex) for e in elems) == [1, 2]


def test_part_action_and_unit():
    P = part_algebra(["l"])
    assert P.act(cs.mu(L), cs.name_cospan(cs.identity(L))) == cs.eta(L)
    assert P.gamma0() == cs.identity(EMPTY)
    with pytest.raises(Exception):
        P.act(cs.mu(L), cs.eta(L))


def test_psi_of_cospans_is_part():
    labels = ["a", "b"]
    P, Q = part_algebra(labels), psi(CospanCategory(labels))
    rng = random.Random(0)
    for _ in range(50):
        x = LabeledFinSet(rng.choice(labels) for _ in range(rng.randint(0, 2)))
        y = LabeledFinSet(rng.choice(labels) for _ in range(rng.randint(0, 2)))
        a = P.sample(x, rng)
        c = cs.random_cospan(rng, x, y, labels)
        assert Q.contains(x, a) and P.contains(x, a)
        assert P.act(c, a) == Q.act(c, a)
    assert P.gamma0() == Q.gamma0()


def test_psi_linrel_contains_cup():
    A = psi(LinRel("add"))
    element = LinRelMorphism(0, 2, [[1, -1]])
    assert A.contains(R + R, element)
    assert A.eq(R + R, A.act(cs.identity(R + R), element), element)


class Relabel:
    """Transport along a bijection of each FinRel carrier."""

    def __init__(self, H, perm):
        self.H, self.perm = H, perm

    def __call__(self, rel):
        def move(point, obj):
            return tuple(self.perm[l][v] for v, l in zip(point, obj))
        return self.H.relation(rel.dom, rel.cod, ((move(a, rel.dom), move(b, rel.cod)) for a, b in rel.pairs))


def test_psi_on_functor():
    add = LinRel("add")
    ident = psi_on_functor(add, add, lambda f: f)
    assert ident.check(samples=20).ok
    H = FinRel({"a": 3, "b": 2})
    moved = psi_on_functor(H, H, Relabel(H, {"a": [2, 0, 1], "b": [1, 0]}))
    assert moved.check(samples=30).ok


def test_psi_on_name_functor():
    add = LinRel("add")
    target, name = nu(add)
    m = AlgebraMorphism(psi(add), psi(target), KleisliMap.identity(["r"]), lambda x, f: name(f))
    assert m.check(samples=20).ok


def test_phi_examples():
    labels = ["l"]
    PP = phi(part_algebra(labels))
    assert PP.identity(L).element == cs.name_cospan(cs.identity(L))
    assert PP.identity(L).element == cs.compose(cs.eta(L), cs.delta(L))
    PC = phi(psi(CospanCategory(labels)))
    got = PC.compose(PC.mu(L), PC.epsilon(L))
    assert got.element == cs.name_cospan(cs.compose(cs.mu(L), cs.epsilon(L)))
    rng = random.Random(2)
    for _ in range(20):
        g = PC.random_morphism(L, L + L, rng)
        assert PC.equal(PC.compose(PC.identity(L), g), g)
        assert PC.equal(PC.compose(g, PC.identity(L + L)), g)


def test_initial_map_examples():
    P = part_algebra(["l"])
    into_part = initial_map(P)
    rng = random.Random(0)
    for _ in range(20):
        p = P.sample(L + L, rng)
        assert into_part(L + L, p) == cs.canonicalize(p)
    add = LinRel("add")
    alpha = initial_map(psi(add))
    assert alpha(R + R, cs.name_cospan(cs.identity(R))).basis == ((1, -1),)
    assert alpha(R + R, cs.name_cospan(cs.identity(R))) == gathr(add, add.identity(R))
    carriers = {"l": 3}
    fin = FinRel(carriers)
    image = initial_map(psi(fin))(L, cs.eta(L))
    assert set(image.tuples) == finrel_frob(carriers, cs.eta(L))
    assert alpha.check(samples=20).ok


def test_initiality_against_candidates():
    add = LinRel("add")
    A = psi(add)
    alpha = initial_map(A)
    candidates = {
        "frob": lambda x, p: frob_functor(p, add),
        "unit_then_frob": lambda x, p: add.compose(add.identity(EMPTY), frob_functor(p, add)),
        "constant_eta": lambda x, p: add.eta(x),
    }
    rng = random.Random(5)
    natural = []
    for name, fn in candidates.items():
        beta = AlgebraMorphism(alpha.source, A, alpha.f, fn)
        if beta.check(samples=30, seed=1).ok:
            natural.append(name)
            for _ in range(30):
                x = LabeledFinSet("r" * rng.randint(0, 3))
                p = alpha.source.sample(x, rng)
                assert A.eq(x, beta(x, p), alpha(x, p))
    assert natural == ["frob", "unit_then_frob"]


def test_nu_examples():
    H = CospanCategory(["l", "a"])
    target, name = nu(H)
    assert name(H.identity(L)).element == cup(H, L)
    c = cs.compose(cs.tensor(cs.mu(L), cs.eta(["a"])), cs.swap(L, ["a"]))
    assert name(c).element == cs.name_cospan(c)
    add = LinRel("add")
    _, name = nu(add)
    r = random_relation(random.Random(9), 2, 1)
    negated = LinRelMorphism(2, 1, [[-v for v in row[:2]] + list(row[2:]) for row in r.basis])
    assert name(r).element.basis == LinRelMorphism(0, 3, negated.basis).basis


def test_pullback_identity_and_base_change():
    add = LinRel("add")
    A = psi(add)
    same = pullback_algebra(A, KleisliMap.identity(["r"]))
    f = KleisliMap({"l": ["r", "r"], "q": ["r"]})
    pulled = pullback_algebra(A, f)
    direct = psi(base_change(add, f))
    rng = random.Random(3)
    for _ in range(40):
        x = LabeledFinSet(rng.choice("lq") for _ in range(rng.randint(0, 2)))
        y = LabeledFinSet(rng.choice("lq") for _ in range(rng.randint(0, 2)))
        c = cs.random_cospan(rng, x, y, "lq")
        a = pulled.sample(x, rng)
        assert direct.contains(x, direct.H.wrap(EMPTY, x, a))
        assert pulled.eq(y, pulled.act(c, a), direct.act(c, direct.H.wrap(EMPTY, x, a)).inner)
        r = A.sample(R, rng)
        d = cs.random_cospan(rng, R, R, "r")
        assert A.eq(R, same.act(d, r), A.act(d, r))


def test_pullback_to_empty_lists():
    pulled = pullback_algebra(part_algebra([]), KleisliMap({"l": []}))
    for x in (EMPTY, L, L + L):
        assert pulled.base.enumerate(pulled.flat(x), max_apex=3) == [cs.identity(EMPTY)]
    assert pulled.act(cs.mu(L), cs.identity(EMPTY)) == cs.identity(EMPTY)


@pytest.mark.parametrize("make", [
    lambda: part_algebra(["a", "b"]),
    lambda: psi(LinRel("add")),
    lambda: psi(LinRel("copy")),
    lambda: psi(FinRel({"a": 2, "b": 2})),
])
def test_algebra_laws(make):
    report = algebra_laws(make(), samples=40, seed=4)
    assert report.ok, report.failures()[:3]


def test_verify_equivalence_small():
    report = verify_equivalence(part_algebra(["l"]), CospanCategory(["l"]), samples=30, seed=1)
    assert report.ok
    assert {"psi_phi_act", "nu_compose", "frob_from_names", "nu_surjective"} <= report.names()


def test_mutated_phi_detected():
    def wrong_comp(x, y, z):
        # glues nothing: both copies of Y are left dangling
        return cs.tensor_all([cs.identity(x), cs.epsilon(y + y), cs.identity(z)])

    report = verify_equivalence(part_algebra(["l"]), CospanCategory(["l"]), samples=30, seed=1,
                                comp=wrong_comp)
    failed = {name for name, _, _ in report.failures()}
    assert "psi_phi_act" in failed


def test_phi_morphism_equality_checks_types():
    PC = phi(part_algebra(["l"]))
    e = cs.name_cospan(cs.identity(L))
    assert not PC.equal(PhiMorphism(L, L, e), PhiMorphism(EMPTY, L + L, e))
