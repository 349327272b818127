"""Labeled cospans: pushout composition, disjoint union and canonical forms.

A cospan ``dom -> apex <- cod`` is stored with both legs as 0-based index
tuples into the apex.  Morphisms of Cospan_Λ are isomorphism classes of
cospans; :func:`compose`, :func:`tensor` and every constructor in this module
return the canonical representative, so bitwise equality of returned values
is equality of morphisms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BoundaryMismatch, IllTyped
from .labels import (
    EMPTY,
    KleisliMap,
    Label,
    LabeledFinSet,
    as_object,
    block_map,
    flatten_relabel,
    label_index,
)


@dataclass(frozen=True)
class Cospan:
    dom: LabeledFinSet
    cod: LabeledFinSet
    apex: LabeledFinSet
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        for name in ("dom", "cod", "apex"):
            object.__setattr__(self, name, as_object(getattr(self, name)))
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        _check_leg("left", self.dom, self.apex, self.left)
        _check_leg("right", self.cod, self.apex, self.right)

    def __rshift__(self, other: Cospan) -> Cospan:
        return compose(self, other)

    def __matmul__(self, other: Cospan) -> Cospan:
        return tensor(self, other)

    def is_canonical(self) -> bool:
        return canonicalize(self) == self

    def to_json(self) -> str:
        return to_json(self)


def _check_leg(name: str, boundary: LabeledFinSet, apex: LabeledFinSet, leg: Sequence[int]):
    if len(leg) != len(boundary):
        raise IllTyped(f"{name} leg has {len(leg)} entries for boundary of size {len(boundary)}")
    for i, k in enumerate(leg):
        if not isinstance(k, int) or not 0 <= k < len(apex):
            raise IllTyped(f"{name} leg index {k!r} out of range for apex of size {len(apex)}")
        if boundary[i] != apex[k]:
            raise IllTyped(
                f"{name} leg sends {boundary[i]!r} at {i} to apex node {k} labeled {apex[k]!r}"
            )


def fingerprint(c: Cospan, k: int) -> tuple:
    """Sort key of apex node ``k``: left preimages, right preimages, label order."""
    return (
        [i for i, v in enumerate(c.left) if v == k],
        [j for j, v in enumerate(c.right) if v == k],
        label_index(c.apex[k]),
    )


def canonicalize(c: Cospan) -> Cospan:
    """Reorder the apex by :func:`fingerprint` and re-index both legs.

    Nodes with equal fingerprints have no preimages and equal labels, so the
    result does not depend on how ties are broken.
    """
    left_pre: list[list[int]] = [[] for _ in c.apex]
    right_pre: list[list[int]] = [[] for _ in c.apex]
    for i, k in enumerate(c.left):
        left_pre[k].append(i)
    for j, k in enumerate(c.right):
        right_pre[k].append(j)
    order = sorted(
        range(len(c.apex)),
        key=lambda k: (left_pre[k], right_pre[k], label_index(c.apex[k])),
    )
    new_index = [0] * len(order)
    for pos, k in enumerate(order):
        new_index[k] = pos
    return Cospan(
        c.dom,
        c.cod,
        LabeledFinSet(c.apex[k] for k in order),
        tuple(new_index[k] for k in c.left),
        tuple(new_index[k] for k in c.right),
    )


def equal(c1: Cospan, c2: Cospan) -> bool:
    """Whether two cospans are isomorphic (equal as morphisms of Cospan_Λ)."""
    if c1.dom != c2.dom or c1.cod != c2.cod or len(c1.apex) != len(c2.apex):
        return False
    return canonicalize(c1) == canonicalize(c2)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as representative; its label is the class label
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def pushout(c1: Cospan, c2: Cospan) -> Cospan:
    """Glue the apexes of ``c1`` and ``c2`` along the shared boundary (not canonicalized)."""
    if c1.cod != c2.dom:
        raise BoundaryMismatch(f"cannot compose: codomain {c1.cod!r} vs domain {c2.dom!r}")
    n1 = len(c1.apex)
    uf = _UnionFind(n1 + len(c2.apex))
    for a, b in zip(c1.right, c2.left):
        uf.union(a, n1 + b)
    joint = tuple(c1.apex) + tuple(c2.apex)
    roots: dict[int, int] = {}
    apex: list[str] = []
    for x in range(len(joint)):
        r = uf.find(x)
        if r not in roots:
            roots[r] = len(apex)
            apex.append(joint[r])
    cls = [roots[uf.find(x)] for x in range(len(joint))]
    return Cospan(
        c1.dom,
        c2.cod,
        LabeledFinSet(apex),
        tuple(cls[k] for k in c1.left),
        tuple(cls[n1 + k] for k in c2.right),
    )


def compose(c1: Cospan, c2: Cospan) -> Cospan:
    """Diagrammatic composite ``c1 ; c2`` by pushout."""
    return canonicalize(pushout(c1, c2))


def tensor(c1: Cospan, c2: Cospan) -> Cospan:
    shift = len(c1.apex)
    return canonicalize(
        Cospan(
            c1.dom + c2.dom,
            c1.cod + c2.cod,
            c1.apex + c2.apex,
            c1.left + tuple(k + shift for k in c2.left),
            c1.right + tuple(k + shift for k in c2.right),
        )
    )


def tensor_all(cospans: Iterable[Cospan]) -> Cospan:
    out = identity(EMPTY)
    for c in cospans:
        out = tensor(out, c)
    return out


def identity(x) -> Cospan:
    x = as_object(x)
    idx = tuple(range(len(x)))
    return Cospan(x, x, x, idx, idx)


def swap(x, y) -> Cospan:
    x, y = as_object(x), as_object(y)
    n, m = len(x), len(y)
    right = tuple(range(n, n + m)) + tuple(range(n))
    return canonicalize(Cospan(x + y, y + x, x + y, tuple(range(n + m)), right))


def structural(kind: str, x, y=None) -> Cospan:
    if kind == "identity":
        if y is not None:
            raise ValueError("identity takes a single object")
        return identity(x)
    if kind == "swap":
        if y is None:
            raise ValueError("swap needs two objects")
        return swap(x, y)
    raise ValueError(f"unknown structural cospan {kind!r}")


def _mirror(c: Cospan) -> Cospan:
    return Cospan(c.cod, c.dom, c.apex, c.right, c.left)


def mu(x) -> Cospan:
    x = as_object(x)
    idx = tuple(range(len(x)))
    return canonicalize(Cospan(x + x, x, x, idx + idx, idx))


def eta(x) -> Cospan:
    x = as_object(x)
    return canonicalize(Cospan(EMPTY, x, x, (), tuple(range(len(x)))))


def delta(x) -> Cospan:
    return canonicalize(_mirror(mu(x)))


def epsilon(x) -> Cospan:
    return canonicalize(_mirror(eta(x)))


_FROBENIUS = {"mu": mu, "eta": eta, "delta": delta, "epsilon": epsilon, "eps": epsilon}


def frobenius_cospan(kind: str, x) -> Cospan:
    try:
        return _FROBENIUS[kind](x)
    except KeyError:
        raise ValueError(f"unknown Frobenius generator {kind!r}") from None


def cup(x) -> Cospan:
    return compose(eta(x), delta(x))


def cap(x) -> Cospan:
    return compose(mu(x), epsilon(x))


def comp_cospan(x, y, z) -> Cospan:
    """``X+Y+Y+Z -> X+Y+Z <- X+Z``: identity on X and Z, both Y copies glued."""
    x, y, z = as_object(x), as_object(y), as_object(z)
    nx, ny, nz = len(x), len(y), len(z)
    xs = tuple(range(nx))
    ys = tuple(range(nx, nx + ny))
    zs = tuple(range(nx + ny, nx + ny + nz))
    return canonicalize(Cospan(x + y + y + z, x + z, x + y + z, xs + ys + ys + zs, xs + zs))


def name_cospan(c: Cospan) -> Cospan:
    """The name ``∅ -> dom + cod`` of ``c``: same apex, both legs on the right."""
    return canonicalize(Cospan(EMPTY, c.dom + c.cod, c.apex, (), c.left + c.right))


def kleisli_map(c: Cospan, f: KleisliMap) -> Cospan:
    """Relabel along ``f: Λ -> List(Λ')``, splitting each wire into a block."""
    dom, _ = flatten_relabel(c.dom, f)
    cod, _ = flatten_relabel(c.cod, f)
    apex, apex_off = flatten_relabel(c.apex, f)
    return canonicalize(
        Cospan(
            dom,
            cod,
            apex,
            block_map(c.dom, apex_off, c.left, f),
            block_map(c.cod, apex_off, c.right, f),
        )
    )


def random_cospan(rng, dom, cod, labels: Sequence[Label], extra: int = 2) -> Cospan:
    """A random canonical cospan ``dom -> cod`` whose apex uses ``labels``.

    Each boundary element picks an existing apex node of its label or opens a
    new one; up to ``extra`` isolated nodes are added.
    """
    dom, cod = as_object(dom), as_object(cod)
    apex: list[str] = []

    def leg(boundary):
        out = []
        for label in boundary:
            same = [k for k, a in enumerate(apex) if a == label]
            if same and rng.random() < 0.5:
                out.append(rng.choice(same))
            else:
                out.append(len(apex))
                apex.append(label)
        return out

    left = leg(dom)
    right = leg(cod)
    for _ in range(rng.randint(0, extra) if labels else 0):
        apex.append(rng.choice(list(labels)))
    return canonicalize(Cospan(dom, cod, LabeledFinSet(apex), left, right))


def to_dict(c: Cospan) -> dict:
    c = canonicalize(c)
    return {
        "dom": list(c.dom),
        "cod": list(c.cod),
        "apex": list(c.apex),
        "left": list(c.left),
        "right": list(c.right),
    }


def from_dict(d: dict) -> Cospan:
    try:
        return Cospan(d["dom"], d["cod"], d["apex"], d["left"], d["right"])
    except KeyError as e:
        raise IllTyped(f"cospan JSON is missing key {e.args[0]!r}") from None
    except TypeError as e:
        raise IllTyped(f"malformed cospan JSON: {e}") from None


def to_json(c: Cospan) -> str:
    """Serialize the canonical form; output is byte-stable for equal morphisms."""
    return json.dumps(to_dict(c))


def from_json(text: str) -> Cospan:
    return from_dict(json.loads(text))
