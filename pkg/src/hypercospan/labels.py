"""Labels, labeled finite sets and label-preserving functions.

A labeled finite set ``(m, x)`` is stored as the tuple ``(x(0), ..., x(m-1))``;
elements are addressed by 0-based position.  Labels are plain strings.  The
order in which labels were first interned fixes a total order on labels,
which canonical forms use to sort isolated apex nodes.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CodomainMismatch, IllTyped, UnknownLabel

Label = str

_registry_lock = threading.Lock()
_label_order: dict[str, int] = {}


def intern_label(label: Label) -> int:
    """Return the order index of ``label``, registering it if unseen."""
    idx = _label_order.get(label)
    if idx is not None:
        return idx
    with _registry_lock:
        return _label_order.setdefault(label, len(_label_order))


def declare_labels(labels: Iterable[Label]) -> None:
    """Intern ``labels`` in the given order.

    Only labels not yet seen are affected; indices are never reassigned, so
    canonical forms computed earlier stay valid.
    """
    for label in labels:
        intern_label(label)


label_index = intern_label


class LabeledFinSet(tuple):
    """An object of FinSet_Λ: an ordered tuple of labels.

    ``+`` is the monoidal product (concatenation); the empty tuple is the unit.
    """

    __slots__ = ()

    def __new__(cls, labels: Iterable[Label] = ()):
        labels = tuple(labels)
        for label in labels:
            if not isinstance(label, str):
                raise TypeError(f"labels must be strings, got {label!r}")
        return super().__new__(cls, labels)

    def __add__(self, other):
        return LabeledFinSet(tuple.__add__(self, tuple(other)))

    def __radd__(self, other):
        return LabeledFinSet(tuple(other) + tuple(self))

    def __getitem__(self, key):
        item = tuple.__getitem__(self, key)
        return LabeledFinSet(item) if isinstance(key, slice) else item

    def __repr__(self) -> str:
        return "[" + ",".join(self) + "]"

    @property
    def labels(self) -> tuple[Label, ...]:
        return tuple(self)


EMPTY = LabeledFinSet()


def as_object(x) -> LabeledFinSet:
    """Coerce a string or iterable of labels to a :class:`LabeledFinSet`."""
    if isinstance(x, LabeledFinSet):
        return x
    if isinstance(x, str):
        return LabeledFinSet([x])
    return LabeledFinSet(x)


def oplus(*objects) -> LabeledFinSet:
    out: tuple = ()
    for x in objects:
        out += tuple(as_object(x))
    return LabeledFinSet(out)


@dataclass(frozen=True)
class TypedFunction:
    """A label-preserving function ``dom -> cod`` given by its index list."""

    dom: LabeledFinSet
    cod: LabeledFinSet
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dom", as_object(self.dom))
        object.__setattr__(self, "cod", as_object(self.cod))
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != len(self.dom):
            raise IllTyped(f"map has {len(self.map)} entries for domain of size {len(self.dom)}")
        for i, j in enumerate(self.map):
            if not 0 <= j < len(self.cod):
                raise IllTyped(f"index {j} out of range for codomain {self.cod!r}")
            if self.dom[i] != self.cod[j]:
                raise IllTyped(
                    f"element {i} labeled {self.dom[i]!r} sent to {j} labeled {self.cod[j]!r}"
                )

    @classmethod
    def identity(cls, x) -> TypedFunction:
        x = as_object(x)
        return cls(x, x, tuple(range(len(x))))

    def __call__(self, i: int) -> int:
        return self.map[i]


def compose_fn(f: TypedFunction, g: TypedFunction) -> TypedFunction:
    """Diagrammatic composite ``f ; g``."""
    if f.cod != g.dom:
        raise CodomainMismatch(f"cannot compose {f.cod!r} with {g.dom!r}")
    return TypedFunction(f.dom, g.cod, tuple(g.map[j] for j in f.map))


def oplus_fn(f: TypedFunction, g: TypedFunction) -> TypedFunction:
    shift = len(f.cod)
    return TypedFunction(f.dom + g.dom, f.cod + g.cod, f.map + tuple(j + shift for j in g.map))


class KleisliMap:
    """A function ``Λ -> List(Λ')``; empty images are allowed."""

    __slots__ = ("_assign", "_hash")

    def __init__(self, assign: Mapping[Label, Iterable[Label]]):
        self._assign = {k: LabeledFinSet(v) for k, v in assign.items()}
        self._hash = hash(frozenset(self._assign.items()))

    @classmethod
    def identity(cls, labels: Iterable[Label]) -> KleisliMap:
        return cls({label: (label,) for label in labels})

    @property
    def source(self) -> tuple[Label, ...]:
        return tuple(self._assign)

    @property
    def target(self) -> tuple[Label, ...]:
        seen: dict[str, None] = {}
        for image in self._assign.values():
            seen.update(dict.fromkeys(image))
        return tuple(seen)

    def __call__(self, label: Label) -> LabeledFinSet:
        try:
            return self._assign[label]
        except KeyError:
            raise UnknownLabel(f"no assignment for label {label!r}") from None

    def then(self, other: KleisliMap) -> KleisliMap:
        """Kleisli composite: first ``self``, then ``other``."""
        return KleisliMap(
            {k: flatten_relabel(v, other)[0] for k, v in self._assign.items()}
        )

    def items(self):
        return self._assign.items()

    def __eq__(self, other):
        return isinstance(other, KleisliMap) and self._assign == other._assign

    def __hash__(self):
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k}->{v!r}" for k, v in self._assign.items())
        return f"KleisliMap({body})"


def flatten_relabel(x, f: KleisliMap) -> tuple[LabeledFinSet, tuple[int, ...]]:
    """Compute ``flat(x ; f)`` and the offset at which each element's block starts."""
    out: list[Label] = []
    offsets: list[int] = []
    for label in as_object(x):
        offsets.append(len(out))
        out.extend(f(label))
    return LabeledFinSet(out), tuple(offsets)


def block_map(
    src: Sequence[Label], dst_offsets: Sequence[int], mapping: Sequence[int], f: KleisliMap
) -> tuple[int, ...]:
    """Lift an index map along ``f``: block of ``i`` goes onto block of ``mapping[i]``."""
    out: list[int] = []
    for i, label in enumerate(src):
        base = dst_offsets[mapping[i]]
        out.extend(base + k for k in range(len(f(label))))
    return tuple(out)
