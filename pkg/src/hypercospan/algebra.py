"""Cospan-algebras and their equivalence with hypergraph categories.

A cospan-algebra assigns to each object ``X`` a set ``A(X)``, acts on it by
cospans and has laxators ``gamma0 in A(∅)`` and ``gamma2: A(X) x A(Y) -> A(X+Y)``.
Carriers are intensional: an algebra answers membership and equality
questions and can sample elements, but never enumerates a carrier (except
:class:`PartAlgebra`, with an apex-size bound).

``psi`` turns a hypergraph category into an algebra by taking morphisms out
of the unit; ``phi`` turns an algebra back into a hypergraph category whose
hom-set ``X -> Y`` is ``A(X+Y)``.
"""

from __future__ import annotations

import itertools
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable

from . import cospan as cs
from .cospan import Cospan
from .errors import BoundaryMismatch
from .hypergraph import HypergraphCategory, frob_functor, gathr, parse
from .labels import EMPTY, KleisliMap, LabeledFinSet, as_object, flatten_relabel
from .report import Report


class CospanAlgebra(ABC):
    name = "A"

    def __init__(self, labels):
        self.labels = tuple(labels)

    @abstractmethod
    def contains(self, x, a) -> bool: ...

    @abstractmethod
    def eq(self, x, a, b) -> bool: ...

    @abstractmethod
    def act(self, c: Cospan, a): ...

    @abstractmethod
    def gamma0(self): ...

    @abstractmethod
    def gamma2(self, x, y, a, b): ...

    @abstractmethod
    def sample(self, x, rng: random.Random):
        """A random element of ``A(x)``."""


class PartAlgebra(CospanAlgebra):
    """Cospans out of the empty object; the initial algebra."""

    name = "Part"

    def contains(self, x, a):
        return isinstance(a, Cospan) and a.dom == EMPTY and a.cod == as_object(x)

    def eq(self, x, a, b):
        return cs.equal(a, b)

    def act(self, c, a):
        return cs.compose(a, c)

    def gamma0(self):
        return cs.identity(EMPTY)

    def gamma2(self, x, y, a, b):
        return cs.tensor(a, b)

    def sample(self, x, rng):
        return cs.random_cospan(rng, EMPTY, x, self.labels)

    def enumerate(self, x, max_apex: int) -> list[Cospan]:
        """Every element of ``Part(x)`` whose apex has at most ``max_apex`` nodes."""
        x = as_object(x)
        found = set()
        for size in range(max_apex + 1):
            for apex in itertools.product(self.labels, repeat=size):
                choices = [[k for k, a in enumerate(apex) if a == label] for label in x]
                for right in itertools.product(*choices):
                    found.add(cs.canonicalize(Cospan(EMPTY, x, apex, (), right)))
        return sorted(found, key=cs.to_json)


def part_algebra(labels) -> PartAlgebra:
    return PartAlgebra(labels)


class PsiAlgebra(CospanAlgebra):
    """``A(X) = H(∅, X)`` acted on through the counit functor."""

    def __init__(self, H: HypergraphCategory):
        super().__init__(H.labels)
        self.H = H
        self.name = f"Psi({H.name})"

    def contains(self, x, a):
        try:
            return self.H.dom(a) == EMPTY and self.H.cod(a) == as_object(x)
        except Exception:
            return False

    def eq(self, x, a, b):
        return self.H.equal(a, b)

    def act(self, c, a):
        return self.H.compose(a, frob_functor(c, self.H))

    def gamma0(self):
        return self.H.identity(EMPTY)

    def gamma2(self, x, y, a, b):
        return self.H.tensor(a, b)

    def sample(self, x, rng):
        return self.H.random_morphism(EMPTY, x, rng)


def psi(H: HypergraphCategory) -> PsiAlgebra:
    return PsiAlgebra(H)


@dataclass(frozen=True)
class PhiMorphism:
    dom: LabeledFinSet
    cod: LabeledFinSet
    element: object


class PhiCategory(HypergraphCategory):
    """The hypergraph category of an algebra: ``hom(X, Y) = A(X + Y)``.

    ``comp`` builds the cospan used for composition; it is a parameter only so
    that tests can check a wrong choice is detected.
    """

    def __init__(self, A: CospanAlgebra, comp: Callable = cs.comp_cospan):
        super().__init__(A.labels)
        self.A = A
        self.comp = comp
        self.name = f"Phi({A.name})"

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def named(self, c: Cospan) -> PhiMorphism:
        """The morphism ``A(name(c))(gamma0)``."""
        return PhiMorphism(c.dom, c.cod, self.A.act(cs.name_cospan(c), self.A.gamma0()))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise BoundaryMismatch(f"cannot compose {f.cod!r} with {g.dom!r}")
        x, y, z = f.dom, f.cod, g.cod
        joint = self.A.gamma2(x + y, y + z, f.element, g.element)
        return PhiMorphism(x, z, self.A.act(self.comp(x, y, z), joint))

    def tensor(self, f, g):
        w, x, y, z = f.dom, f.cod, g.dom, g.cod
        joint = self.A.gamma2(w + x, y + z, f.element, g.element)
        middle = cs.tensor_all([cs.identity(w), cs.swap(x, y), cs.identity(z)])
        return PhiMorphism(w + y, x + z, self.A.act(middle, joint))

    def identity(self, x):
        return self.named(cs.identity(self.check_object(x)))

    def swap(self, x, y):
        return self.named(cs.swap(self.check_object(x), self.check_object(y)))

    def mu(self, x):
        return self.named(cs.mu(self.check_object(x)))

    def eta(self, x):
        return self.named(cs.eta(self.check_object(x)))

    def delta(self, x):
        return self.named(cs.delta(self.check_object(x)))

    def epsilon(self, x):
        return self.named(cs.epsilon(self.check_object(x)))

    def equal(self, f, g):
        return f.dom == g.dom and f.cod == g.cod and self.A.eq(f.dom + f.cod, f.element, g.element)

    def random_morphism(self, x, y, rng):
        x, y = as_object(x), as_object(y)
        return PhiMorphism(x, y, self.A.sample(x + y, rng))


def phi(A: CospanAlgebra, comp: Callable = cs.comp_cospan) -> PhiCategory:
    return PhiCategory(A, comp)


# -- morphisms -----------------------------------------------------------------------


@dataclass
class AlgebraMorphism:
    """``(f, alpha)``: a Kleisli map and components ``alpha(X, a) in target(flat(X; f))``."""

    source: CospanAlgebra
    target: CospanAlgebra
    f: KleisliMap
    alpha: Callable

    def __call__(self, x, a):
        return self.alpha(as_object(x), a)

    def check(self, samples: int = 50, seed: int = 0, report: Report | None = None) -> Report:
        """Naturality against the cospan action and monoidality on sampled data."""
        rng = random.Random(seed)
        report = report or Report(f"morphism {self.source.name} -> {self.target.name}", seed)
        src, tgt = self.source, self.target
        flat = lambda x: flatten_relabel(x, self.f)[0]
        report.check("alpha_gamma0", "", lambda: tgt.eq(
            EMPTY, self(EMPTY, src.gamma0()), tgt.gamma0()))
        for _ in range(samples):
            x, y = _random_object(rng, src.labels), _random_object(rng, src.labels)
            a, b = src.sample(x, rng), src.sample(y, rng)
            c = cs.random_cospan(rng, x, y, src.labels)
            ctx = f"X={x!r} Y={y!r}"
            report.check("naturality", ctx, lambda: tgt.eq(
                flat(y), self(y, src.act(c, a)), tgt.act(cs.kleisli_map(c, self.f), self(x, a))))
            report.check("alpha_gamma2", ctx, lambda: tgt.eq(
                flat(x + y), self(x + y, src.gamma2(x, y, a, b)),
                tgt.gamma2(flat(x), flat(y), self(x, a), self(y, b))))
        return report


def psi_on_functor(H1: HypergraphCategory, H2: HypergraphCategory, F: Callable) -> AlgebraMorphism:
    """Image of an identity-on-objects hypergraph functor given by its morphism map."""
    return AlgebraMorphism(psi(H1), psi(H2), KleisliMap.identity(H1.labels), lambda x, a: F(a))


def initial_map(A: CospanAlgebra) -> AlgebraMorphism:
    """The unique morphism out of Part: ``p -> act(p, gamma0)``."""
    return AlgebraMorphism(
        part_algebra(A.labels), A, KleisliMap.identity(A.labels),
        lambda x, p: A.act(p, A.gamma0()))


def nu(H: HypergraphCategory):
    """The comparison ``H -> phi(psi(H))`` sending a morphism to its name.

    Returns the target category and the morphism map.
    """
    target = phi(psi(H))

    def on_morphisms(f):
        return PhiMorphism(H.dom(f), H.cod(f), gathr(H, f))

    return target, on_morphisms


class PullbackAlgebra(CospanAlgebra):
    """``A'`` restricted along a Kleisli map: ``A(X) = A'(flat(X; f))``."""

    def __init__(self, A: CospanAlgebra, f: KleisliMap):
        super().__init__(f.source)
        self.base = A
        self.f = f
        self.name = f"{A.name}|{f!r}"

    def flat(self, x) -> LabeledFinSet:
        return flatten_relabel(x, self.f)[0]

    def contains(self, x, a):
        return self.base.contains(self.flat(x), a)

    def eq(self, x, a, b):
        return self.base.eq(self.flat(x), a, b)

    def act(self, c, a):
        return self.base.act(cs.kleisli_map(c, self.f), a)

    def gamma0(self):
        return self.base.gamma0()

    def gamma2(self, x, y, a, b):
        return self.base.gamma2(self.flat(x), self.flat(y), a, b)

    def sample(self, x, rng):
        return self.base.sample(self.flat(x), rng)


def pullback_algebra(A: CospanAlgebra, f: KleisliMap) -> PullbackAlgebra:
    return PullbackAlgebra(A, f)


# -- verification --------------------------------------------------------------------


def _random_object(rng: random.Random, labels, lo: int = 0, hi: int = 2) -> LabeledFinSet:
    return LabeledFinSet(rng.choice(labels) for _ in range(rng.randint(lo, hi)))


def algebra_laws(A: CospanAlgebra, samples: int = 50, seed: int = 0,
                 report: Report | None = None) -> Report:
    """Functoriality of the action and coherence of the laxators."""
    rng = random.Random(seed)
    report = report or Report(f"algebra {A.name}", seed)
    for _ in range(samples):
        x, y, z = (_random_object(rng, A.labels) for _ in range(3))
        a, b, d = A.sample(x, rng), A.sample(y, rng), A.sample(z, rng)
        c1 = cs.random_cospan(rng, x, y, A.labels)
        c2 = cs.random_cospan(rng, y, z, A.labels)
        ctx = f"X={x!r} Y={y!r} Z={z!r}"
        report.check("act_identity", f"X={x!r}", lambda: A.eq(x, A.act(cs.identity(x), a), a))
        report.check("act_compose", ctx, lambda: A.eq(
            z, A.act(cs.compose(c1, c2), a), A.act(c2, A.act(c1, a))))
        report.check("gamma_unit", f"X={x!r}", lambda: A.eq(x, A.gamma2(EMPTY, x, A.gamma0(), a), a)
                     and A.eq(x, A.gamma2(x, EMPTY, a, A.gamma0()), a))
        report.check("gamma_assoc", ctx, lambda: A.eq(
            x + y + z, A.gamma2(x + y, z, A.gamma2(x, y, a, b), d),
            A.gamma2(x, y + z, a, A.gamma2(y, z, b, d))))
        report.check("gamma_symmetry", ctx, lambda: A.eq(
            y + x, A.act(cs.swap(x, y), A.gamma2(x, y, a, b)), A.gamma2(y, x, b, a)))
        c3 = cs.random_cospan(rng, z, x, A.labels)
        report.check("gamma_natural", ctx, lambda: A.eq(
            y + x, A.act(cs.tensor(c1, c3), A.gamma2(x, z, a, d)),
            A.gamma2(y, x, A.act(c1, a), A.act(c3, d))))
    return report


def verify_equivalence(A: CospanAlgebra, H: HypergraphCategory, samples: int = 200,
                       seed: int = 0, comp: Callable = cs.comp_cospan) -> Report:
    """Check the algebra/hypergraph-category equivalence on seeded samples.

    (i) ``psi(phi(A))`` equals ``A``: carriers coincide, actions and laxators agree.
    (ii) the name map ``H -> phi(psi(H))`` is a bijective hypergraph functor.
    (iii) the counit of ``phi(A)`` at a cospan ``c`` is ``act(name(c), gamma0)``.
    """
    rng = random.Random(seed)
    report = Report(f"equivalence {A.name} / {H.name}", seed)
    PA = phi(A, comp)
    B = psi(PA)
    wrap = lambda x, a: PhiMorphism(EMPTY, as_object(x), a)

    report.check("psi_phi_gamma0", "", lambda: A.eq(EMPTY, B.gamma0().element, A.gamma0()))
    for _ in range(samples):
        x, y = _random_object(rng, A.labels), _random_object(rng, A.labels)
        a, b = A.sample(x, rng), A.sample(y, rng)
        c = cs.random_cospan(rng, x, y, A.labels, extra=1)
        ctx = f"X={x!r} Y={y!r}"
        report.check("psi_phi_carrier", f"X={x!r}", lambda: B.contains(x, wrap(x, a)))
        report.check("psi_phi_act", ctx, lambda: A.eq(
            y, B.act(c, wrap(x, a)).element, A.act(c, a)))
        report.check("psi_phi_gamma2", ctx, lambda: A.eq(
            x + y, B.gamma2(x, y, wrap(x, a), wrap(y, b)).element, A.gamma2(x, y, a, b)))
        report.check("frob_from_names", ctx, lambda: PA.equal(
            frob_functor(c, PA), PA.named(c)))

    target, name = nu(H)
    labels = H.labels
    for _ in range(samples):
        x, y, z = (_random_object(rng, labels) for _ in range(3))
        f = H.random_morphism(x, y, rng)
        g = H.random_morphism(y, z, rng)
        k = H.random_morphism(z, x, rng)
        h = H.random_morphism(EMPTY, x + y, rng)
        ctx = f"X={x!r} Y={y!r} Z={z!r}"
        report.check("nu_compose", ctx, lambda: target.equal(
            name(H.compose(f, g)), target.compose(name(f), name(g))))
        report.check("nu_tensor", ctx, lambda: target.equal(
            name(H.tensor(f, k)), target.tensor(name(f), name(k))))
        report.check("nu_identity", f"X={x!r}", lambda: target.equal(
            name(H.identity(x)), target.identity(x)))
        report.check("nu_swap", f"X={x!r} Y={y!r}", lambda: target.equal(
            name(H.swap(x, y)), target.swap(x, y)))
        for kind in ("mu", "eta", "delta", "epsilon"):
            report.check(f"nu_{kind}", f"X={x!r}", lambda kind=kind: target.equal(
                name(H.generator(kind, x)), target.generator(kind, x)))
        report.check("nu_injective", f"X={x!r} Y={y!r}", lambda: H.equal(
            parse(H, name(f).element, x), f))
        report.check("nu_surjective", f"X={x!r} Y={y!r}", lambda: target.equal(
            name(parse(H, h, x)), PhiMorphism(x, y, h)))
    return report
