"""Linear relations over the rationals.

A morphism ``m -> n`` is a subspace of Q^(m+n), domain coordinates first,
stored as its reduced row echelon basis.  RREF is unique per subspace, so
equality is comparison of bases.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, IllTyped
from ..hypergraph import HypergraphCategory
from ..labels import LabeledFinSet

Row = tuple[Fraction, ...]


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[Row, ...]:
    """Reduced row echelon form of ``rows`` with zero rows dropped."""
    mat = [[v if isinstance(v, Fraction) else Fraction(v) for v in row] for row in rows]
    for row in mat:
        if len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)} in a {ncols}-column matrix")
    pivot_row = 0
    for col in range(ncols):
        pick = next((r for r in range(pivot_row, len(mat)) if mat[r][col] != 0), None)
        if pick is None:
            continue
        mat[pivot_row], mat[pick] = mat[pick], mat[pivot_row]
        prow = mat[pivot_row]
        p = prow[col]
        if p != 1:
            prow[:] = [v / p if v else v for v in prow]
        nonzero = [c for c in range(col, ncols) if prow[c]]
        for r, row in enumerate(mat):
            if r != pivot_row and row[col] != 0:
                factor = row[col]
                for c in nonzero:
                    row[c] -= factor * prow[c]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(row) for row in mat[:pivot_row])


def null_space(rows: Sequence[Sequence], ncols: int) -> tuple[Row, ...]:
    """A basis (in RREF) of ``{x | r . x = 0 for every row r}``."""
    reduced = rref(rows, ncols)
    pivots = [next(c for c, v in enumerate(row) if v != 0) for row in reduced]
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return rref(basis, ncols)


@dataclass(frozen=True)
class LinRelMorphism:
    m: int
    n: int
    basis: tuple[Row, ...]

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DimensionMismatch("dimensions must be non-negative")
        object.__setattr__(self, "basis", rref(self.basis, self.m + self.n))

    @classmethod
    def _trusted(cls, m: int, n: int, basis) -> LinRelMorphism:
        # basis already in RREF
        out = object.__new__(cls)
        object.__setattr__(out, "m", m)
        object.__setattr__(out, "n", n)
        object.__setattr__(out, "basis", tuple(tuple(row) for row in basis))
        return out

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector: Sequence) -> bool:
        vec = tuple(Fraction(v) for v in vector)
        if len(vec) != self.m + self.n:
            raise DimensionMismatch(f"vector of length {len(vec)} in Q^{self.m + self.n}")
        return len(rref(self.basis + (vec,), self.m + self.n)) == len(self.basis)

    def constraints(self) -> tuple[Row, ...]:
        """Rows whose common kernel is this subspace."""
        try:
            return self.__dict__["_constraints"]
        except KeyError:
            rows = null_space(self.basis, self.m + self.n)
            object.__setattr__(self, "_constraints", rows)
            return rows

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "basis": [[f"{v.numerator}/{v.denominator}" for v in row] for row in self.basis],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> LinRelMorphism:
        try:
            return cls(int(d["m"]), int(d["n"]), [[Fraction(v) for v in row] for row in d["basis"]])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise IllTyped(f"malformed linear relation JSON: {e}") from None

    @classmethod
    def from_json(cls, text: str) -> LinRelMorphism:
        return cls.from_dict(json.loads(text))


def _unit(size: int, *cols: int) -> Row:
    row = [Fraction(0)] * size
    for c in cols:
        row[c] = Fraction(1)
    return tuple(row)


# rows below are listed by increasing pivot and are already reduced


def identity(n: int) -> LinRelMorphism:
    return LinRelMorphism._trusted(n, n, [_unit(2 * n, i, n + i) for i in range(n)])


def swap(p: int, q: int) -> LinRelMorphism:
    """``Q^(p+q) -> Q^(q+p)`` exchanging the two blocks."""
    size = 2 * (p + q)
    rows = [_unit(size, i, p + q + q + i) for i in range(p)]
    rows += [_unit(size, p + j, p + q + j) for j in range(q)]
    return LinRelMorphism._trusted(p + q, q + p, rows)


def compose(r: LinRelMorphism, s: LinRelMorphism) -> LinRelMorphism:
    """``{(v, x) | exists w. (v, w) in r and (w, x) in s}`` by eliminating ``w``."""
    if r.n != s.m:
        raise DimensionMismatch(f"cannot compose {r.m}->{r.n} with {s.m}->{s.n}")
    m, k, n = r.m, r.n, s.n
    joint = []
    # column order (w, v, x) so that elimination clears w first
    for row in r.constraints():
        joint.append(list(row[m:]) + list(row[:m]) + [0] * n)
    for row in s.constraints():
        joint.append(list(row[:k]) + [0] * m + list(row[k:]))
    reduced = rref(joint, k + m + n)
    projected = [row[k:] for row in reduced if not any(row[:k])]
    return LinRelMorphism._trusted(m, n, null_space(projected, m + n))


def tensor(r: LinRelMorphism, s: LinRelMorphism) -> LinRelMorphism:
    """Direct sum with coordinates ordered (dom r, dom s, cod r, cod s)."""
    zero = Fraction(0)
    rows = []
    for row in r.basis:
        rows.append(row[: r.m] + (zero,) * s.m + row[r.m:] + (zero,) * s.n)
    for row in s.basis:
        rows.append((zero,) * r.m + row[: s.m] + (zero,) * r.n + row[s.m:])
    # both blocks are reduced, so ordering rows by pivot column gives the RREF
    rows.sort(key=lambda row: next(c for c, v in enumerate(row) if v))
    return LinRelMorphism._trusted(r.m + s.m, r.n + s.n, rows)


def equal(r: LinRelMorphism, s: LinRelMorphism) -> bool:
    return r.m == s.m and r.n == s.n and r.basis == s.basis


FROBENIUS = {
    "copy": {
        "mu": (2, 1, [[1, 1, 1]]),
        "delta": (1, 2, [[1, 1, 1]]),
        "eta": (0, 1, [[1]]),
        "epsilon": (1, 0, [[1]]),
    },
    "add": {
        "mu": (2, 1, [[1, 0, 1], [0, 1, 1]]),     # a + b = c
        "delta": (1, 2, [[1, 1, 0], [1, 0, 1]]),  # a = b + c
        "eta": (0, 1, []),
        "epsilon": (1, 0, []),
    },
}


def frobenius(structure: str, kind: str) -> LinRelMorphism:
    """A Frobenius generator on one coordinate."""
    try:
        m, n, rows = FROBENIUS[structure][kind]
    except KeyError:
        raise ValueError(f"unknown generator {structure!r}/{kind!r}") from None
    return LinRelMorphism(m, n, rows)


def random_relation(rng: random.Random, m: int, n: int, bound: int = 3) -> LinRelMorphism:
    size = m + n
    rows = [[rng.randint(-bound, bound) for _ in range(size)]
            for _ in range(rng.randint(0, size))]
    return LinRelMorphism(m, n, rows)


class LinRel(HypergraphCategory):
    """LinRel with the ``copy`` or ``add`` Frobenius structure on a single label."""

    def __init__(self, structure: str = "add", label: str = "r"):
        if structure not in FROBENIUS:
            raise ValueError(f"unknown LinRel structure {structure!r}")
        super().__init__((label,))
        self.structure = structure
        self.label = label
        self.name = f"LinRel-{structure}"

    def _obj(self, k: int) -> LabeledFinSet:
        return LabeledFinSet([self.label] * k)

    def dom(self, f):
        return self._obj(f.m)

    def cod(self, f):
        return self._obj(f.n)

    def identity(self, x):
        return identity(len(self.check_object(x)))

    def compose(self, f, g):
        return compose(f, g)

    def tensor(self, f, g):
        return tensor(f, g)

    def swap(self, x, y):
        return swap(len(self.check_object(x)), len(self.check_object(y)))

    def equal(self, f, g):
        return equal(f, g)

    def mu_label(self, label):
        self.check_object(label)
        return frobenius(self.structure, "mu")

    def eta_label(self, label):
        self.check_object(label)
        return frobenius(self.structure, "eta")

    def delta_label(self, label):
        self.check_object(label)
        return frobenius(self.structure, "delta")

    def epsilon_label(self, label):
        self.check_object(label)
        return frobenius(self.structure, "epsilon")

    def random_morphism(self, x, y, rng):
        return random_relation(rng, len(self.check_object(x)), len(self.check_object(y)))
