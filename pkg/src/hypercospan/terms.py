"""Frobenius terms: syntax, parser, type checker, printer, evaluation and decomposition.

Concrete syntax::

    term  := par (";" par)*
    par   := atom ("*" atom)*
    atom  := "id[" labels "]" | "swap[" labels "|" labels "]"
           | "mu[" labels "]" | "eta[" labels "]" | "delta[" labels "]"
           | "eps[" labels "]" | BOXNAME | "(" term ")"

``;`` is composition, ``*`` is the monoidal product; both associate to the
left and ``*`` binds tighter.  ``#`` starts a comment running to end of line.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from typing import Mapping, Union

from . import cospan as cs
from .errors import TermSyntaxError, TypeMismatch, UnboundBox, UnknownBox, UnknownLabel
from .labels import EMPTY, LabeledFinSet, as_object


@dataclass(frozen=True)
class Signature:
    labels: tuple[str, ...]
    boxes: Mapping[str, tuple[LabeledFinSet, LabeledFinSet]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        boxes = {}
        known = set(self.labels)
        for name, (dom, cod) in self.boxes.items():
            dom, cod = as_object(dom), as_object(cod)
            for label in dom + cod:
                if label not in known:
                    raise UnknownLabel(f"box {name!r} uses undeclared label {label!r}")
            boxes[name] = (dom, cod)
        object.__setattr__(self, "boxes", boxes)

    def __hash__(self):
        return hash((self.labels, tuple(sorted(self.boxes))))

    @classmethod
    def from_dict(cls, d: dict) -> Signature:
        boxes = {
            name: (spec.get("dom", []), spec.get("cod", []))
            for name, spec in d.get("boxes", {}).items()
        }
        return cls(tuple(d.get("labels", [])), boxes)

    @classmethod
    def from_json(cls, text: str) -> Signature:
        return cls.from_dict(json.loads(text))


# -- abstract syntax ---------------------------------------------------------


@dataclass(frozen=True)
class Id:
    x: LabeledFinSet


@dataclass(frozen=True)
class Swap:
    x: LabeledFinSet
    y: LabeledFinSet


@dataclass(frozen=True)
class Mu:
    x: LabeledFinSet


@dataclass(frozen=True)
class Eta:
    x: LabeledFinSet


@dataclass(frozen=True)
class Delta:
    x: LabeledFinSet


@dataclass(frozen=True)
class Eps:
    x: LabeledFinSet


@dataclass(frozen=True)
class Box:
    name: str


@dataclass(frozen=True)
class Seq:
    first: Term
    second: Term


@dataclass(frozen=True)
class Par:
    left: Term
    right: Term


Term = Union[Id, Swap, Mu, Eta, Delta, Eps, Box, Seq, Par]

_GENERATORS = {"id": Id, "mu": Mu, "eta": Eta, "delta": Delta, "eps": Eps}
_KEYWORDS = {"id", "swap", "mu", "eta", "delta", "eps"}


def seq(*terms: Term) -> Term:
    """Left-nested composite of one or more terms."""
    out = terms[0]
    for t in terms[1:]:
        out = Seq(out, t)
    return out


def par(*terms: Term) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = Par(out, t)
    return out


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        if m.group(1) is not None:
            continue
        if m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "[]|,;*()":
                raise TermSyntaxError(f"unexpected character {ch!r}", m.start(3))
            tokens.append((ch, ch, m.start(3)))
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise TermSyntaxError(f"expected {kind!r}, found {found}", tok[2])
        self.i += 1
        return tok

    def term(self) -> Term:
        out = self.par()
        while self.peek()[0] == ";":
            self.i += 1
            out = Seq(out, self.par())
        return out

    def par(self) -> Term:
        out = self.atom()
        while self.peek()[0] == "*":
            self.i += 1
            out = Par(out, self.atom())
        return out

    def labels(self, stop: str) -> LabeledFinSet:
        out = []
        if self.peek()[0] != stop:
            while True:
                kind, value, pos = self.peek()
                if kind != "name":
                    raise TermSyntaxError("expected a label", pos)
                if self.sig is not None and value not in self.sig.labels:
                    raise UnknownLabel(f"unknown label {value!r} at position {pos}")
                self.i += 1
                out.append(value)
                if self.peek()[0] != ",":
                    break
                self.i += 1
        return LabeledFinSet(out)

    def atom(self) -> Term:
        kind, value, pos = self.peek()
        if kind == "(":
            self.i += 1
            t = self.term()
            self.take(")")
            return t
        if kind != "name":
            found = "end of input" if kind == "eof" else repr(value)
            raise TermSyntaxError(f"expected a term, found {found}", pos)
        self.i += 1
        if value in _KEYWORDS and self.peek()[0] == "[":
            self.i += 1
            if value == "swap":
                x = self.labels("|")
                self.take("|")
                y = self.labels("]")
                self.take("]")
                return Swap(x, y)
            x = self.labels("]")
            self.take("]")
            return _GENERATORS[value](x)
        if self.sig is None or value not in self.sig.boxes:
            raise UnknownBox(f"unknown box {value!r} at position {pos}")
        return Box(value)


def parse_term(text: str, sig: Signature | None = None) -> Term:
    """Parse ``text``; with ``sig=None`` any label is accepted and boxes are rejected."""
    p = _Parser(text, sig)
    t = p.term()
    kind, value, pos = p.peek()
    if kind != "eof":
        raise TermSyntaxError(f"unexpected {value!r}", pos)
    return t


# -- type checking -------------------------------------------------------------


def typecheck(t: Term, sig: Signature | None = None) -> tuple[LabeledFinSet, LabeledFinSet]:
    if isinstance(t, Id):
        return t.x, t.x
    if isinstance(t, Swap):
        return t.x + t.y, t.y + t.x
    if isinstance(t, Mu):
        return t.x + t.x, t.x
    if isinstance(t, Eta):
        return EMPTY, t.x
    if isinstance(t, Delta):
        return t.x, t.x + t.x
    if isinstance(t, Eps):
        return t.x, EMPTY
    if isinstance(t, Box):
        if sig is None or t.name not in sig.boxes:
            raise UnknownBox(f"unknown box {t.name!r}")
        return sig.boxes[t.name]
    if isinstance(t, Seq):
        d1, c1 = typecheck(t.first, sig)
        d2, c2 = typecheck(t.second, sig)
        if c1 != d2:
            raise TypeMismatch(pretty(t), c1, d2)
        return d1, c2
    if isinstance(t, Par):
        d1, c1 = typecheck(t.left, sig)
        d2, c2 = typecheck(t.right, sig)
        return d1 + d2, c1 + c2
    raise TypeError(f"not a term: {t!r}")


# -- pretty printing -----------------------------------------------------------


def _labels(x) -> str:
    return ",".join(x)


def pretty(t: Term) -> str:
    """Print ``t`` so that ``parse_term(pretty(t)) == t``."""
    if isinstance(t, Id):
        return f"id[{_labels(t.x)}]"
    if isinstance(t, Swap):
        return f"swap[{_labels(t.x)}|{_labels(t.y)}]"
    if isinstance(t, Mu):
        return f"mu[{_labels(t.x)}]"
    if isinstance(t, Eta):
        return f"eta[{_labels(t.x)}]"
    if isinstance(t, Delta):
        return f"delta[{_labels(t.x)}]"
    if isinstance(t, Eps):
        return f"eps[{_labels(t.x)}]"
    if isinstance(t, Box):
        return t.name
    if isinstance(t, Seq):
        second = pretty(t.second)
        if isinstance(t.second, Seq):
            second = f"({second})"
        return f"{pretty(t.first)} ; {second}"
    if isinstance(t, Par):
        left, right = pretty(t.left), pretty(t.right)
        if isinstance(t.left, Seq):
            left = f"({left})"
        if isinstance(t.right, (Seq, Par)):
            right = f"({right})"
        return f"{left} * {right}"
    raise TypeError(f"not a term: {t!r}")


# -- evaluation ------------------------------------------------------------------


def eval_term(t: Term, H, boxes: Mapping[str, object] | None = None):
    """Fold ``t`` into the hypergraph category ``H``."""
    boxes = boxes or {}

    def go(t):
        if isinstance(t, Id):
            return H.identity(t.x)
        if isinstance(t, Swap):
            return H.swap(t.x, t.y)
        if isinstance(t, Mu):
            return H.mu(t.x)
        if isinstance(t, Eta):
            return H.eta(t.x)
        if isinstance(t, Delta):
            return H.delta(t.x)
        if isinstance(t, Eps):
            return H.epsilon(t.x)
        if isinstance(t, Box):
            if t.name not in boxes:
                raise UnboundBox(f"box {t.name!r} has no interpretation")
            return boxes[t.name]
        if isinstance(t, Seq):
            return H.compose(go(t.first), go(t.second))
        if isinstance(t, Par):
            return H.tensor(go(t.left), go(t.right))
        raise TypeError(f"not a term: {t!r}")

    return go(t)


def to_cospan(t: Term, boxes: Mapping[str, cs.Cospan] | None = None) -> cs.Cospan:
    """Evaluate ``t`` in Cospan_Λ without building an instance object."""
    from .instances.cospans import CospanCategory

    return eval_term(t, CospanCategory(), boxes)


# -- decomposition into generators -------------------------------------------------


def _permutation_layers(wires: LabeledFinSet, current: list[int], rank: list[int]) -> list[Term]:
    """Bubble-sort ``current`` by ``rank``; each adjacent swap becomes one layer.

    ``current[k]`` names the wire at position ``k``; ``wires[w]`` is its label.
    """
    layers = []
    n = len(current)
    for end in range(n - 1, 0, -1):
        for k in range(end):
            a, b = current[k], current[k + 1]
            if rank[a] > rank[b]:
                before = LabeledFinSet(wires[w] for w in current[:k])
                after = LabeledFinSet(wires[w] for w in current[k + 2:])
                layer: Term = Swap(LabeledFinSet([wires[a]]), LabeledFinSet([wires[b]]))
                if before:
                    layer = Par(Id(before), layer)
                if after:
                    layer = Par(layer, Id(after))
                layers.append(layer)
                current[k], current[k + 1] = b, a
    return layers


def _comb(label: str, k: int) -> Term:
    """Right-nested comb merging ``k >= 2`` wires: (id^{k-2} * g) ; ... ; (id * g) ; g."""
    one = LabeledFinSet([label])
    layers = []
    for width in range(k - 1, 0, -1):
        g = Mu(one)
        layers.append(Par(Id(LabeledFinSet([label] * (width - 1))), g) if width > 1 else g)
    return seq(*layers)


def _blocks_term(pieces: list[tuple[str, object]]) -> Term:
    """Tensor of pieces; consecutive identity wires are merged into one ``id``."""
    out: list[Term] = []
    run: list[str] = []
    for kind, payload in pieces:
        if kind == "id":
            run.append(payload)
            continue
        if run:
            out.append(Id(LabeledFinSet(run)))
            run = []
        out.append(payload)
    if run:
        out.append(Id(LabeledFinSet(run)))
    return par(*out)


def _leg_segments(boundary: LabeledFinSet, apex: LabeledFinSet, leg) -> list[Term]:
    """Terms for boundary -> apex: permutation ; surjection ; injection.

    Empty segments (identities) are dropped.
    """
    m = len(boundary)
    order = sorted(range(m), key=lambda i: leg[i])  # stable on ties
    segments: list[Term] = []
    rank = [0] * m
    for pos, i in enumerate(order):
        rank[i] = pos
    segments.extend(_permutation_layers(boundary, list(range(m)), rank))

    images = sorted(set(leg))
    sizes = {k: 0 for k in images}
    for k in leg:
        sizes[k] += 1
    if any(s > 1 for s in sizes.values()):
        pieces = [
            ("id", apex[k]) if sizes[k] == 1 else ("gen", _comb(apex[k], sizes[k]))
            for k in images
        ]
        segments.append(_blocks_term(pieces))

    hit = set(images)
    if len(hit) < len(apex):
        pieces = [
            ("id", apex[k]) if k in hit else ("gen", Eta(LabeledFinSet([apex[k]])))
            for k in range(len(apex))
        ]
        segments.append(_blocks_term(pieces))
    return segments


def _mirror_term(t: Term) -> Term:
    """Reverse a box-free term: swap the roles of dom and cod."""
    if isinstance(t, Id):
        return t
    if isinstance(t, Swap):
        return Swap(t.y, t.x)
    if isinstance(t, Mu):
        return Delta(t.x)
    if isinstance(t, Delta):
        return Mu(t.x)
    if isinstance(t, Eta):
        return Eps(t.x)
    if isinstance(t, Eps):
        return Eta(t.x)
    if isinstance(t, Seq):
        return Seq(_mirror_term(t.second), _mirror_term(t.first))
    if isinstance(t, Par):
        return Par(_mirror_term(t.left), _mirror_term(t.right))
    raise TypeError(f"cannot mirror {t!r}")


def decompose(c: cs.Cospan) -> Term:
    """A box-free term evaluating to ``c`` in Cospan_Λ.

    Each leg is factored as permutation ; order-preserving surjection ;
    order-preserving injection.  The left leg uses swaps, μ-combs and η; the
    right leg is built the same way and mirrored (swaps, δ-combs, ε).
    """
    left = _leg_segments(c.dom, c.apex, c.left)
    right_forward = _leg_segments(c.cod, c.apex, c.right)
    right = [_mirror_term(t) for t in reversed(right_forward)]
    segments = left + right
    if not segments:
        return Id(c.dom)
    return seq(*segments)


# -- random terms --------------------------------------------------------------------


def random_term(rng: random.Random, labels, depth: int = 3, max_width: int = 3) -> Term:
    """A random well-typed box-free term made of ``depth`` layers.

    Each layer walks the current wires left to right and covers them with
    generators: identities, swaps, μ on equal-labeled pairs, δ, ε, plus η
    insertions.  Wire counts stay below ``2 * max_width``.
    """
    labels = tuple(labels)
    x = LabeledFinSet(rng.choice(labels) for _ in range(rng.randint(0, max_width)))
    start = x
    layers: list[Term] = []
    for _ in range(depth):
        pieces: list[Term] = []
        out: list[str] = []
        k = 0
        while k < len(x) or (rng.random() < 0.15 and len(out) < 2 * max_width):
            budget = len(out) < 2 * max_width
            if k >= len(x) or (budget and rng.random() < 0.1):
                label = rng.choice(labels)
                pieces.append(Eta(LabeledFinSet([label])))
                out.append(label)
                continue
            one = LabeledFinSet([x[k]])
            r = rng.random()
            if k + 1 < len(x) and r < 0.35:
                two = LabeledFinSet([x[k + 1]])
                if x[k] == x[k + 1] and r < 0.2:
                    pieces.append(Mu(one))
                    out.append(x[k])
                else:
                    pieces.append(Swap(one, two))
                    out.extend([x[k + 1], x[k]])
                k += 2
            elif r < 0.5 and budget:
                pieces.append(Delta(one))
                out.extend([x[k], x[k]])
                k += 1
            elif r < 0.6:
                pieces.append(Eps(one))
                k += 1
            else:
                pieces.append(Id(one))
                out.append(x[k])
                k += 1
        layers.append(par(*pieces) if pieces else Id(EMPTY))
        x = LabeledFinSet(out)
    if not layers:
        return Id(start)
    return seq(*layers)
