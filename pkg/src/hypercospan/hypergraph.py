"""Strict, objectwise-free hypergraph categories.

:class:`HypergraphCategory` is the contract every instance implements.  Objects
are always :class:`~hypercospan.labels.LabeledFinSet` values over the instance's
label set; the morphism type is up to the instance.  The module also provides
the structure every hypergraph category has for free (cups, caps, names, the
``comp`` morphism), the counit functor out of Cospan_Λ, base change along a
Kleisli map, and randomized axiom suites.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass

from . import cospan as cs
from .errors import BoundaryMismatch, UnknownLabel
from .labels import EMPTY, KleisliMap, LabeledFinSet, as_object, flatten_relabel
from .report import Report
from .terms import decompose, eval_term


class HypergraphCategory(ABC):
    """A strict hypergraph category whose objects are lists of labels.

    Subclasses implement the symmetric monoidal structure and the Frobenius
    generators on single labels (``mu_label`` ...).  Generators on longer
    lists are assembled here by interleaving; override ``mu`` etc. when an
    instance has a cheaper direct formula.
    """

    name = "H"
    decidable = True

    def __init__(self, labels):
        self.labels = tuple(labels)
        self._cache: dict = {}

    def _cached(self, key, build):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = build()
            return value

    def check_object(self, x) -> LabeledFinSet:
        x = as_object(x)
        for label in x:
            if label not in self.labels:
                raise UnknownLabel(f"label {label!r} is not in {self.name}'s label set")
        return x

    # -- symmetric monoidal structure ---------------------------------------

    @abstractmethod
    def dom(self, f) -> LabeledFinSet: ...

    @abstractmethod
    def cod(self, f) -> LabeledFinSet: ...

    @abstractmethod
    def identity(self, x): ...

    @abstractmethod
    def compose(self, f, g): ...

    @abstractmethod
    def tensor(self, f, g): ...

    @abstractmethod
    def swap(self, x, y): ...

    def equal(self, f, g) -> bool:
        raise NotImplementedError(f"{self.name} has no decidable equality")

    # -- Frobenius structure ---------------------------------------------------

    def mu_label(self, label): raise NotImplementedError

    def eta_label(self, label): raise NotImplementedError

    def delta_label(self, label): raise NotImplementedError

    def epsilon_label(self, label): raise NotImplementedError

    def tensor_all(self, morphisms, x=EMPTY):
        out = None
        for f in morphisms:
            out = f if out is None else self.tensor(out, f)
        return self.identity(x) if out is None else out

    def permutation(self, x, order):
        """The braiding ``x -> [x[order[0]], x[order[1]], ...]`` built from swaps."""
        x = as_object(x)
        c = cs.Cospan(x, LabeledFinSet(x[k] for k in order), x, range(len(x)), order)
        return frob_functor(c, self)

    def _shuffle(self, x):
        """``x + x -> l1 l1 l2 l2 ...``."""
        n = len(x)
        order = [k for i in range(n) for k in (i, n + i)]
        return self.permutation(x + x, order)

    def mu(self, x):
        x = self.check_object(x)

        def build():
            if len(x) == 1:
                return self.mu_label(x[0])
            gens = self.tensor_all((self.mu_label(l) for l in x), EMPTY)
            return self.compose(self._shuffle(x), gens)

        return self._cached(("mu", x), build)

    def eta(self, x):
        x = self.check_object(x)

        def build():
            if len(x) == 1:
                return self.eta_label(x[0])
            return self.tensor_all((self.eta_label(l) for l in x), EMPTY)

        return self._cached(("eta", x), build)

    def delta(self, x):
        x = self.check_object(x)

        def build():
            if len(x) == 1:
                return self.delta_label(x[0])
            n = len(x)
            unshuffle = [0] * (2 * n)
            for i in range(n):
                unshuffle[i], unshuffle[n + i] = 2 * i, 2 * i + 1
            gens = self.tensor_all((self.delta_label(l) for l in x), EMPTY)
            spread = LabeledFinSet(l for l in x for _ in range(2))
            return self.compose(gens, self.permutation(spread, unshuffle))

        return self._cached(("delta", x), build)

    def epsilon(self, x):
        x = self.check_object(x)

        def build():
            if len(x) == 1:
                return self.epsilon_label(x[0])
            return self.tensor_all((self.epsilon_label(l) for l in x), EMPTY)

        return self._cached(("epsilon", x), build)

    def generator(self, kind: str, x):
        return {"mu": self.mu, "eta": self.eta, "delta": self.delta,
                "epsilon": self.epsilon, "eps": self.epsilon}[kind](x)

    # -- sampling --------------------------------------------------------------

    def random_morphism(self, x, y, rng: random.Random):
        """A random morphism ``x -> y``; by default the image of a random cospan."""
        return frob_functor(cs.random_cospan(rng, x, y, self.labels), self)


# -- derived structure ---------------------------------------------------------


def cup(H: HypergraphCategory, x):
    return H.compose(H.eta(x), H.delta(x))


def cap(H: HypergraphCategory, x):
    return H.compose(H.mu(x), H.epsilon(x))


def gathr(H: HypergraphCategory, f):
    """The name ``∅ -> X + Y`` of ``f: X -> Y``: ``cup_X ; (id_X * f)``."""
    x = H.dom(f)
    return H.compose(cup(H, x), H.tensor(H.identity(x), f))


def parse(H: HypergraphCategory, g, x):
    """Inverse of :func:`gathr`: read ``g: ∅ -> x + Y`` as a morphism ``x -> Y``."""
    x = as_object(x)
    whole = H.cod(g)
    if H.dom(g) != EMPTY or whole[: len(x)] != x:
        raise BoundaryMismatch(f"cannot parse a morphism {H.dom(g)!r} -> {whole!r} at {x!r}")
    y = whole[len(x):]
    return H.compose(H.tensor(H.identity(x), g), H.tensor(cap(H, x), H.identity(y)))


def comp_morphism(H: HypergraphCategory, x, y, z):
    """``id_X * cap_Y * id_Z : X+Y+Y+Z -> X+Z``."""
    return H.tensor(H.tensor(H.identity(x), cap(H, y)), H.identity(z))


def frob_functor(c: cs.Cospan, H: HypergraphCategory):
    """Image of the cospan ``c`` under the counit functor Cospan_Λ -> H."""
    H.check_object(c.apex)
    c = cs.canonicalize(c)
    return H._cached(("frob", c), lambda: eval_term(decompose(c), H))


# -- base change -----------------------------------------------------------------


@dataclass(frozen=True)
class Pulled:
    """A morphism of a base-changed category: ``inner`` lives in the target instance."""

    dom: LabeledFinSet
    cod: LabeledFinSet
    inner: object


class BaseChange(HypergraphCategory):
    """Hom-sets ``H1(X, Y) = H2(flat(X;f), flat(Y;f))`` with all structure from ``H2``."""

    def __init__(self, H2: HypergraphCategory, f: KleisliMap):
        super().__init__(f.source)
        self.H2 = H2
        self.f = f
        self.decidable = H2.decidable
        self.name = f"{H2.name}|{f!r}"

    def flat(self, x) -> LabeledFinSet:
        return flatten_relabel(self.check_object(x), self.f)[0]

    def wrap(self, x, y, inner) -> Pulled:
        return Pulled(as_object(x), as_object(y), inner)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, x):
        return Pulled(as_object(x), as_object(x), self.H2.identity(self.flat(x)))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise BoundaryMismatch(f"cannot compose {f.cod!r} with {g.dom!r}")
        return Pulled(f.dom, g.cod, self.H2.compose(f.inner, g.inner))

    def tensor(self, f, g):
        return Pulled(f.dom + g.dom, f.cod + g.cod, self.H2.tensor(f.inner, g.inner))

    def swap(self, x, y):
        x, y = as_object(x), as_object(y)
        return Pulled(x + y, y + x, self.H2.swap(self.flat(x), self.flat(y)))

    def equal(self, f, g):
        return f.dom == g.dom and f.cod == g.cod and self.H2.equal(f.inner, g.inner)

    def mu(self, x):
        x = self.check_object(x)
        return Pulled(x + x, x, self.H2.mu(self.flat(x)))

    def eta(self, x):
        x = self.check_object(x)
        return Pulled(EMPTY, x, self.H2.eta(self.flat(x)))

    def delta(self, x):
        x = self.check_object(x)
        return Pulled(x, x + x, self.H2.delta(self.flat(x)))

    def epsilon(self, x):
        x = self.check_object(x)
        return Pulled(x, EMPTY, self.H2.epsilon(self.flat(x)))

    def random_morphism(self, x, y, rng):
        return Pulled(as_object(x), as_object(y),
                      self.H2.random_morphism(self.flat(x), self.flat(y), rng))


def base_change(H2: HypergraphCategory, f: KleisliMap) -> BaseChange:
    return BaseChange(H2, f)


# -- axiom suites -------------------------------------------------------------------


def _ctx(**objects) -> str:
    return " ".join(f"{k}={v!r}" for k, v in objects.items())


def _random_object(rng: random.Random, labels, lo: int, hi: int) -> LabeledFinSet:
    return LabeledFinSet(rng.choice(labels) for _ in range(rng.randint(lo, hi)))


def frobenius_suite(H: HypergraphCategory, labels=None, seed: int = 0, cases: int = 200,
                    report: Report | None = None) -> Report:
    """The nine Frobenius equations, the four product equations, and unit coherence."""
    labels = tuple(labels or H.labels)
    rng = random.Random(seed)
    report = report or Report(f"frobenius {H.name}", seed)
    eq = H.equal
    c, t, i = H.compose, H.tensor, H.identity

    u = EMPTY
    report.check("unit_coherence_eta", _ctx(X=u), lambda: eq(H.eta(u), i(u)))
    report.check("unit_coherence_epsilon", _ctx(X=u), lambda: eq(H.epsilon(u), i(u)))
    report.check("unit_coherence_mu", _ctx(X=u), lambda: eq(H.mu(u), i(u)))
    report.check("unit_coherence_delta", _ctx(X=u), lambda: eq(H.delta(u), i(u)))

    for case in range(cases):
        if case < len(labels):
            x = LabeledFinSet([labels[case]])
        else:
            x = _random_object(rng, labels, 1, 3)
        ctx = _ctx(X=x)
        mu, eta, delta, eps, idx = (lambda x=x: H.mu(x)), (lambda x=x: H.eta(x)), \
            (lambda x=x: H.delta(x)), (lambda x=x: H.epsilon(x)), (lambda x=x: i(x))
        sw = lambda x=x: H.swap(x, x)
        report.check("associativity", ctx, lambda: eq(
            c(t(mu(), idx()), mu()), c(t(idx(), mu()), mu())))
        report.check("unitality", ctx, lambda: eq(c(t(eta(), idx()), mu()), idx())
                     and eq(c(t(idx(), eta()), mu()), idx()))
        report.check("commutativity", ctx, lambda: eq(c(sw(), mu()), mu()))
        report.check("coassociativity", ctx, lambda: eq(
            c(delta(), t(delta(), idx())), c(delta(), t(idx(), delta()))))
        report.check("counitality", ctx, lambda: eq(c(delta(), t(eps(), idx())), idx())
                     and eq(c(delta(), t(idx(), eps())), idx()))
        report.check("cocommutativity", ctx, lambda: eq(c(delta(), sw()), delta()))
        report.check("frobenius_left", ctx, lambda: eq(
            c(t(delta(), idx()), t(idx(), mu())), c(mu(), delta())))
        report.check("frobenius_right", ctx, lambda: eq(
            c(t(idx(), delta()), t(mu(), idx())), c(mu(), delta())))
        report.check("special", ctx, lambda: eq(c(delta(), mu()), idx()))

        a = _random_object(rng, labels, 0, 2)
        b = _random_object(rng, labels, 0, 2)
        pctx = _ctx(X=a, Y=b)
        mid = lambda a=a, b=b: t(t(i(a), H.swap(b, a)), i(b))
        mid2 = lambda a=a, b=b: t(t(i(a), H.swap(a, b)), i(b))
        report.check("mu_product", pctx, lambda: eq(
            H.mu(a + b), c(mid(), t(H.mu(a), H.mu(b)))))
        report.check("eta_product", pctx, lambda: eq(H.eta(a + b), t(H.eta(a), H.eta(b))))
        report.check("delta_product", pctx, lambda: eq(
            H.delta(a + b), c(t(H.delta(a), H.delta(b)), mid2())))
        report.check("epsilon_product", pctx, lambda: eq(
            H.epsilon(a + b), t(H.epsilon(a), H.epsilon(b))))
    return report


def compact_suite(H: HypergraphCategory, labels=None, seed: int = 0, cases: int = 200,
                  report: Report | None = None) -> Report:
    """Zigzag identities and the name calculus (gathr, parse, comp)."""
    labels = tuple(labels or H.labels)
    rng = random.Random(seed)
    report = report or Report(f"compact {H.name}", seed)
    eq = H.equal
    c, t, i = H.compose, H.tensor, H.identity

    for case in range(cases):
        w = LabeledFinSet([labels[case]]) if case < len(labels) else \
            _random_object(rng, labels, 0, 3)
        report.check("zigzag_left", _ctx(X=w), lambda: eq(
            c(t(cup(H, w), i(w)), t(i(w), cap(H, w))), i(w)))
        report.check("zigzag_right", _ctx(X=w), lambda: eq(
            c(t(i(w), cup(H, w)), t(cap(H, w), i(w))), i(w)))

        x, y, z = (_random_object(rng, labels, 0, 2) for _ in range(3))
        f = H.random_morphism(x, y, rng)
        g = H.random_morphism(y, z, rng)
        h = H.random_morphism(EMPTY, x + y, rng)
        report.check("parse_gathr", _ctx(X=x, Y=y), lambda: eq(parse(H, gathr(H, f), x), f))
        report.check("gathr_parse", _ctx(X=x, Y=y), lambda: eq(gathr(H, parse(H, h, x)), h))
        report.check("comp_works", _ctx(X=x, Y=y, Z=z), lambda: eq(
            c(t(gathr(H, f), gathr(H, g)), comp_morphism(H, x, y, z)), gathr(H, c(f, g))))
        report.check("remember_the_name", _ctx(X=x, Y=y), lambda: eq(
            c(t(i(x), gathr(H, f)), comp_morphism(H, EMPTY, x, y)), f))
    return report


def functor_suite(H: HypergraphCategory, labels=None, seed: int = 0, cases: int = 200,
                  report: Report | None = None) -> Report:
    """The counit Cospan_Λ -> H preserves composition, tensor and all structure."""
    labels = tuple(labels or H.labels)
    rng = random.Random(seed)
    report = report or Report(f"functor {H.name}", seed)
    eq = H.equal
    F = lambda cospan: frob_functor(cospan, H)

    for _ in range(cases):
        x, y, z = (_random_object(rng, labels, 0, 2) for _ in range(3))
        c1 = cs.random_cospan(rng, x, y, labels)
        c2 = cs.random_cospan(rng, y, z, labels)
        c3 = cs.random_cospan(rng, z, x, labels)
        report.check("preserves_compose", _ctx(X=x, Y=y, Z=z), lambda: eq(
            F(cs.compose(c1, c2)), H.compose(F(c1), F(c2))))
        report.check("preserves_tensor", _ctx(X=x, Y=y, Z=z), lambda: eq(
            F(cs.tensor(c1, c3)), H.tensor(F(c1), F(c3))))
        report.check("preserves_identity", _ctx(X=x), lambda: eq(
            F(cs.identity(x)), H.identity(x)))
        report.check("preserves_swap", _ctx(X=x, Y=y), lambda: eq(
            F(cs.swap(x, y)), H.swap(x, y)))
        for kind in ("mu", "eta", "delta", "epsilon"):
            report.check(f"preserves_{kind}", _ctx(X=x), lambda kind=kind: eq(
                F(cs.frobenius_cospan(kind, x)), H.generator(kind, x)))
    return report


SUITES = {
    "frobenius": frobenius_suite,
    "compact": compact_suite,
    "functor": functor_suite,
}


def axiom_suite(H: HypergraphCategory, labels=None, seed: int = 0, cases: int = 200,
                suites=("frobenius", "compact", "functor")) -> Report:
    """Run the named suites against ``H``; instances without equality are skipped."""
    report = Report(f"axioms {H.name}", seed)
    if not H.decidable:
        return report
    for name in suites:
        SUITES[name](H, labels, seed, cases, report)
    return report
