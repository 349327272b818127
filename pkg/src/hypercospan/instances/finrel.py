"""Finite relations between label-indexed carriers.

Each label ``l`` names the set ``{0, ..., size(l) - 1}``; a list of labels
names the product set.  The Frobenius structure is the diagonal one:
``mu`` relates ``(x, x)`` to ``x`` and ``eta`` relates the point to everything.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from ..errors import BoundaryMismatch, IllTyped, UnknownLabel
from ..hypergraph import HypergraphCategory
from ..labels import LabeledFinSet, as_object

Pair = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class FinRelMorphism:
    """A relation between the product sets of ``dom`` and ``cod``.

    ``pairs`` is a frozenset of ``(dom-tuple, cod-tuple)``; ``tuples`` lists it sorted.
    """

    carriers: tuple[tuple[str, int], ...]
    dom: LabeledFinSet
    cod: LabeledFinSet
    pairs: frozenset[Pair]

    def __post_init__(self):
        sizes = dict(self.carriers)
        object.__setattr__(self, "carriers", tuple(sorted(sizes.items())))
        object.__setattr__(self, "dom", as_object(self.dom))
        object.__setattr__(self, "cod", as_object(self.cod))
        pairs = frozenset((tuple(a), tuple(b)) for a, b in self.pairs)
        for a, b in pairs:
            _check_point(a, self.dom, sizes)
            _check_point(b, self.cod, sizes)
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def _trusted(cls, carriers, dom, cod, pairs) -> FinRelMorphism:
        # skips validation; for results of operations on valid relations
        out = object.__new__(cls)
        for name, value in (("carriers", carriers), ("dom", dom), ("cod", cod),
                            ("pairs", frozenset(pairs))):
            object.__setattr__(out, name, value)
        return out

    @property
    def tuples(self) -> tuple[Pair, ...]:
        return tuple(sorted(self.pairs))

    def __contains__(self, pair) -> bool:
        a, b = pair
        return (tuple(a), tuple(b)) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def to_dict(self) -> dict:
        return {
            "carriers": dict(self.carriers),
            "dom": list(self.dom),
            "cod": list(self.cod),
            "tuples": [[list(a), list(b)] for a, b in self.tuples],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> FinRelMorphism:
        try:
            return cls(tuple(d["carriers"].items()), d["dom"], d["cod"],
                       [(a, b) for a, b in d["tuples"]])
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise IllTyped(f"malformed finite relation JSON: {e}") from None

    @classmethod
    def from_json(cls, text: str) -> FinRelMorphism:
        return cls.from_dict(json.loads(text))


def _check_point(point, obj, sizes):
    if len(point) != len(obj):
        raise IllTyped(f"tuple {point} does not fit object {obj!r}")
    for v, label in zip(point, obj):
        if label not in sizes:
            raise UnknownLabel(f"no carrier for label {label!r}")
        if not 0 <= v < sizes[label]:
            raise IllTyped(f"component {v} outside carrier of {label!r}")


class FinRel(HypergraphCategory):
    name = "FinRel"

    def __init__(self, carriers: Mapping[str, int]):
        for label, size in carriers.items():
            if size < 1:
                raise ValueError(f"carrier of {label!r} must be non-empty")
        super().__init__(carriers)
        self.carriers = dict(carriers)
        self._key = tuple(sorted(self.carriers.items()))

    def points(self, x) -> Iterable[tuple[int, ...]]:
        x = self.check_object(x)
        return itertools.product(*(range(self.carriers[l]) for l in x))

    def relation(self, x, y, pairs) -> FinRelMorphism:
        """Build a relation from pairs that are already known to fit ``x`` and ``y``."""
        return FinRelMorphism._trusted(self._key, self.check_object(x), self.check_object(y), pairs)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, x):
        return self.relation(x, x, ((p, p) for p in self.points(x)))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise BoundaryMismatch(f"cannot compose {f.cod!r} with {g.dom!r}")
        by_mid: dict[tuple, list] = {}
        for b, c in g.pairs:
            by_mid.setdefault(b, []).append(c)
        return self.relation(
            f.dom, g.cod, ((a, c) for a, b in f.pairs for c in by_mid.get(b, ())))

    def tensor(self, f, g):
        return self.relation(
            f.dom + g.dom, f.cod + g.cod,
            ((a + c, b + d) for a, b in f.pairs for c, d in g.pairs))

    def swap(self, x, y):
        x, y = as_object(x), as_object(y)
        return self.relation(
            x + y, y + x,
            ((p + q, q + p) for p in self.points(x) for q in self.points(y)))

    def equal(self, f, g):
        return f == g

    def mu(self, x):
        x = self.check_object(x)
        return self.relation(x + x, x, ((p + p, p) for p in self.points(x)))

    def eta(self, x):
        x = self.check_object(x)
        return self.relation((), x, (((), p) for p in self.points(x)))

    def delta(self, x):
        x = self.check_object(x)
        return self.relation(x, x + x, ((p, p + p) for p in self.points(x)))

    def epsilon(self, x):
        x = self.check_object(x)
        return self.relation(x, (), ((p, ()) for p in self.points(x)))

    def random_morphism(self, x, y, rng: random.Random):
        pairs = [(a, b) for a in self.points(x) for b in self.points(y)]
        return self.relation(x, y, (p for p in pairs if rng.random() < 0.5))
