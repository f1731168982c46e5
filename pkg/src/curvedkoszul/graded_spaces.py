"""Bigraded vector spaces with labelled bases, Koszul-signed tensor maps, shifts and duals.

Each basis label carries a homological degree and a non-negative weight.
Elements are sparse dicts ``{label: Fraction}``; :class:`GradedMap` wraps an
exact :class:`~curvedkoszul.exact_linalg.Matrix` between two spaces.

Sign conventions (used everywhere in the package):

* ``(f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y)``
* ``<f*(ξ), v> = (-1)^{|f||ξ|} <ξ, f(v)>``
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .exact_linalg import Matrix, Q

Label = Hashable
Element = dict


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def add_into(target: dict, source: Mapping, scale=1) -> dict:
    if scale == 1:
        for k, v in source.items():
            nv = target.get(k, 0) + v
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)
        return target
    for k, v in source.items():
        nv = target.get(k, 0) + scale * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)
    return target


def clean(v: Mapping) -> dict:
    return {k: x for k, x in v.items() if x}


def word_key(label) -> tuple:
    """Sort key: length first, then lexicographic on the string form."""
    if isinstance(label, tuple):
        return (len(label), tuple(map(str, label)))
    return (1, (str(label),))


class BigradedSpace:
    """Finite-dimensional space with an ordered labelled basis and (degree, weight) gradings."""

    __slots__ = ("basis", "degree", "weight", "index", "name")

    def __init__(self, basis: Iterable[Label], degree: Mapping[Label, int], weight: Mapping[Label, int] | None = None,
                 name: str = ""):
        self.basis = tuple(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise ValueError("basis labels must be distinct")
        self.degree = {b: int(degree[b]) for b in self.basis}
        weight = weight or {}
        self.weight = {b: int(weight.get(b, 0)) for b in self.basis}
        if any(w < 0 for w in self.weight.values()):
            raise ValueError("weights must be non-negative")
        self.name = name

    @classmethod
    def sorted_words(cls, basis: Iterable[Label], degree, weight=None, name: str = "") -> "BigradedSpace":
        basis = sorted(basis, key=word_key)
        return cls(basis, degree, weight, name)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __contains__(self, label) -> bool:
        return label in self.index

    def __eq__(self, other) -> bool:
        return (isinstance(other, BigradedSpace) and self.basis == other.basis and self.degree == other.degree
                and self.weight == other.weight)

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"BigradedSpace({self.name or 'dim'}={self.dim})"

    def select(self, pred: Callable[[Label], bool], name: str = "") -> "BigradedSpace":
        keep = [b for b in self.basis if pred(b)]
        return BigradedSpace(keep, self.degree, self.weight, name or self.name)

    def by_degree(self) -> dict[int, list[Label]]:
        out: dict[int, list[Label]] = {}
        for b in self.basis:
            out.setdefault(self.degree[b], []).append(b)
        return out

    def vector(self, element: Mapping[Label, Fraction]) -> dict[int, Fraction]:
        return {self.index[k]: v for k, v in element.items() if v}

    def element(self, vector: Mapping[int, Fraction]) -> dict:
        return {self.basis[i]: v for i, v in vector.items() if v}

    def element_degree(self, element: Mapping) -> int | None:
        degs = {self.degree[k] for k, v in element.items() if v}
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else None


def ground_field(degree: int = 0) -> BigradedSpace:
    return BigradedSpace([()], {(): degree}, {(): 0}, "k")


class GradedMap:
    """Exact matrix between bigraded spaces with a (degree, weight) shift annotation.

    ``weight_shift`` may be ``None`` for maps that are only filtered.
    """

    __slots__ = ("source", "target", "degree_shift", "weight_shift", "matrix")

    def __init__(self, source: BigradedSpace, target: BigradedSpace, matrix: Matrix, degree_shift: int = 0,
                 weight_shift: int | None = 0, check: bool = True):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match {target.dim}x{source.dim}")
        self.source, self.target, self.matrix = source, target, matrix
        self.degree_shift, self.weight_shift = degree_shift, weight_shift
        if check:
            self.check_homogeneous()

    def check_homogeneous(self) -> None:
        sb, tb = self.source.basis, self.target.basis
        for r, row in self.matrix.entries.items():
            t = tb[r]
            for c in row:
                s = sb[c]
                if self.target.degree[t] != self.source.degree[s] + self.degree_shift:
                    raise ValueError(f"map not homogeneous of degree {self.degree_shift}: {s} -> {t}")
                if self.weight_shift is not None and self.target.weight[t] != self.source.weight[s] + self.weight_shift:
                    raise ValueError(f"map not homogeneous of weight {self.weight_shift}: {s} -> {t}")

    @classmethod
    def from_function(cls, source: BigradedSpace, target: BigradedSpace, func: Callable[[Label], Mapping],
                      degree_shift: int = 0, weight_shift: int | None = 0, check: bool = True,
                      strict: bool = True) -> "GradedMap":
        """Build from the images of basis labels.  With ``strict=False`` terms outside the target are dropped."""
        cols = []
        idx = target.index
        for b in source.basis:
            img = func(b)
            col = {}
            for k, v in img.items():
                if not v:
                    continue
                j = idx.get(k)
                if j is None:
                    if strict:
                        raise KeyError(f"image term {k!r} of {b!r} not in target")
                    continue
                col[j] = col.get(j, 0) + v
            cols.append(col)
        return cls(source, target, Matrix.from_columns(target.dim, cols), degree_shift, weight_shift, check)

    @classmethod
    def identity(cls, space: BigradedSpace) -> "GradedMap":
        return cls(space, space, Matrix.identity(space.dim), 0, 0, check=False)

    @classmethod
    def zero(cls, source, target, degree_shift=0, weight_shift=0) -> "GradedMap":
        return cls(source, target, Matrix.zero(target.dim, source.dim), degree_shift, weight_shift, check=False)

    def __call__(self, element: Mapping) -> dict:
        return self.target.element(self.matrix.apply(self.source.vector(element)))

    def compose(self, first: "GradedMap") -> "GradedMap":
        """self ∘ first."""
        if first.target.basis != self.source.basis:
            raise ValueError("composition of incompatible maps")
        ws = None if self.weight_shift is None or first.weight_shift is None else self.weight_shift + first.weight_shift
        return GradedMap(first.source, self.target, self.matrix @ first.matrix, self.degree_shift + first.degree_shift,
                         ws, check=False)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        return self.compose(other)

    def _same(self, other: "GradedMap") -> None:
        if self.source.basis != other.source.basis or self.target.basis != other.target.basis:
            raise ValueError("maps between different spaces")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._same(other)
        return GradedMap(self.source, self.target, self.matrix + other.matrix, self.degree_shift, self.weight_shift,
                         check=False)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        self._same(other)
        return GradedMap(self.source, self.target, self.matrix - other.matrix, self.degree_shift, self.weight_shift,
                         check=False)

    def __neg__(self) -> "GradedMap":
        return self.scale(-1)

    def scale(self, s) -> "GradedMap":
        return GradedMap(self.source, self.target, self.matrix.scale(s), self.degree_shift, self.weight_shift,
                         check=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __repr__(self) -> str:
        return f"GradedMap({self.source!r} -> {self.target!r}, deg {self.degree_shift}, wt {self.weight_shift})"


# ---------------------------------------------------------------------------
# operations on spaces


def tensor(a: BigradedSpace, b: BigradedSpace) -> BigradedSpace:
    """Basis = pairs (x, y) in a-major order; degrees and weights add."""
    basis = [(x, y) for x in a.basis for y in b.basis]
    deg = {(x, y): a.degree[x] + b.degree[y] for x, y in basis}
    wt = {(x, y): a.weight[x] + b.weight[y] for x, y in basis}
    return BigradedSpace(basis, deg, wt, f"{a.name}⊗{b.name}")


def tensor_map(f: GradedMap, g: GradedMap) -> GradedMap:
    """(f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y)."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    fcols = f.matrix.columns()
    gcols = g.matrix.columns()
    nb = g.target.dim
    cols = []
    for i, x in enumerate(f.source.basis):
        sx = sign(g.degree_shift * f.source.degree[x])
        for j in range(g.source.dim):
            col = {}
            for r1, v1 in fcols[i].items():
                for r2, v2 in gcols[j].items():
                    col[r1 * nb + r2] = sx * v1 * v2
            cols.append(col)
    ws = None if f.weight_shift is None or g.weight_shift is None else f.weight_shift + g.weight_shift
    return GradedMap(src, tgt, Matrix.from_columns(tgt.dim, cols), f.degree_shift + g.degree_shift, ws, check=False)


def _shift_label(label, k: int):
    if isinstance(label, tuple) and len(label) == 3 and label[0] == "s":
        j = label[1] + k
        return label[2] if j == 0 else ("s", j, label[2])
    return label if k == 0 else ("s", k, label)


def shift(x: BigradedSpace, k: int) -> BigradedSpace:
    """Suspension s^k: degrees raised by k, weights unchanged."""
    basis = [_shift_label(b, k) for b in x.basis]
    deg = {nb: x.degree[b] + k for nb, b in zip(basis, x.basis)}
    wt = {nb: x.weight[b] for nb, b in zip(basis, x.basis)}
    return BigradedSpace(basis, deg, wt, f"s^{k}{x.name}")


def _dual_label(label):
    if isinstance(label, tuple) and len(label) == 2 and label[0] == "*":
        return label[1]
    return ("*", label)


def graded_dual(x: BigradedSpace) -> BigradedSpace:
    """Degrees negate, weights are kept; the basis is the dual basis in the same order."""
    basis = [_dual_label(b) for b in x.basis]
    deg = {nb: -x.degree[b] for nb, b in zip(basis, x.basis)}
    wt = {nb: x.weight[b] for nb, b in zip(basis, x.basis)}
    return BigradedSpace(basis, deg, wt, f"{x.name}*")


def dual_map(f: GradedMap) -> GradedMap:
    """f*: Y* -> X* with <f*(ξ), v> = (-1)^{|f||ξ|} <ξ, f(v)>."""
    src = graded_dual(f.target)
    tgt = graded_dual(f.source)
    ent: dict[int, dict[int, Fraction]] = {}
    for r, row in f.matrix.entries.items():
        sgn = sign(f.degree_shift * src.degree[src.basis[r]])
        for c, v in row.items():
            ent.setdefault(c, {})[r] = sgn * v
    ws = None if f.weight_shift is None else -f.weight_shift
    return GradedMap(src, tgt, Matrix(tgt.dim, src.dim, ent), f.degree_shift, ws, check=False)


def direct_sum(spaces: Sequence[BigradedSpace], tags: Sequence | None = None) -> BigradedSpace:
    tags = list(range(len(spaces))) if tags is None else list(tags)
    basis, deg, wt = [], {}, {}
    for t, s in zip(tags, spaces):
        for b in s.basis:
            nb = (t, b)
            basis.append(nb)
            deg[nb] = s.degree[b]
            wt[nb] = s.weight[b]
    return BigradedSpace(basis, deg, wt, "⊕")
