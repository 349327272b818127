"""Cospan_Λ as a hypergraph category."""

from __future__ import annotations

from .. import cospan as cs
from ..hypergraph import HypergraphCategory


class CospanCategory(HypergraphCategory):
    """Labeled cospans; morphisms are canonical :class:`~hypercospan.cospan.Cospan` values.

    With ``labels=None`` any label is accepted.
    """

    name = "Cospan"

    def __init__(self, labels=None):
        super().__init__(labels or ())
        self.open = labels is None

    def check_object(self, x):
        return cs.as_object(x) if self.open else super().check_object(x)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, x):
        return cs.identity(self.check_object(x))

    def compose(self, f, g):
        return cs.compose(f, g)

    def tensor(self, f, g):
        return cs.tensor(f, g)

    def swap(self, x, y):
        return cs.swap(self.check_object(x), self.check_object(y))

    def equal(self, f, g):
        return cs.equal(f, g)

    # list generators have direct formulas here
    def mu(self, x):
        return cs.mu(self.check_object(x))

    def eta(self, x):
        return cs.eta(self.check_object(x))

    def delta(self, x):
        return cs.delta(self.check_object(x))

    def epsilon(self, x):
        return cs.epsilon(self.check_object(x))
