"""QLC presentations: parsing, validation, the graph split (qR, φ, θ), and normal forms.

Words in the tensor algebra T(V) are tuples of generator names; the empty
tuple is the unit.  Elimination orders columns by descending length and then
descending generator index, so every relation's pivot is its leading word and
the surviving (non-pivot) words form a filtered normal-form basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exact_linalg import Matrix, Q, Subspace, intersect, rref_rows, to_q
from .graded_spaces import BigradedSpace, add_into

Word = tuple


class PresentationError(Exception):
    pass


class NormalizationError(PresentationError):
    """Relations are linearly dependent or not degree homogeneous."""


class MinimalityViolation(PresentationError):
    def __init__(self, witness: Mapping, message: str = ""):
        self.witness = dict(witness)
        super().__init__(message or f"R meets k+V nontrivially; witness {format_element(witness)}")


class WeakConsistencyViolation(PresentationError):
    def __init__(self, witness: Mapping, message: str = ""):
        self.witness = dict(witness)
        super().__init__(message or f"(V⊗R + R⊗V) ∩ (k+V+V⊗V) not inside R; witness {format_element(witness)}")


def format_word(w: Word) -> str:
    return "1" if not w else "".join(w) if all(len(g) == 1 for g in w) else "·".join(w)


def format_element(e: Mapping) -> str:
    if not e:
        return "0"
    parts = []
    for w, c in sorted(e.items(), key=lambda kv: (len(kv[0]), kv[0])):
        parts.append(f"{c}*{format_word(w)}")
    return " + ".join(parts)


def words(gens: Sequence[str], n: int) -> list[Word]:
    return [tuple(w) for w in product(gens, repeat=n)]


@dataclass(frozen=True)
class Relation:
    constant: Fraction
    linear: Mapping[str, Fraction]
    quadratic: Mapping[tuple[str, str], Fraction]

    def as_element(self) -> dict:
        e = {}
        if self.constant:
            e[()] = to_q(self.constant)
        for g, c in self.linear.items():
            if c:
                e[(g,)] = to_q(c)
        for (a, b), c in self.quadratic.items():
            if c:
                e[(a, b)] = e.get((a, b), 0) + to_q(c)
        return {w: c for w, c in e.items() if c}

    @classmethod
    def from_element(cls, e: Mapping[Word, Fraction]) -> "Relation":
        const = Q(0)
        lin, quad = {}, {}
        for w, c in e.items():
            if len(w) == 0:
                const += c
            elif len(w) == 1:
                lin[w[0]] = lin.get(w[0], 0) + c
            elif len(w) == 2:
                quad[(w[0], w[1])] = quad.get((w[0], w[1]), 0) + c
            else:
                raise NormalizationError(f"relation term {w} has length > 2")
        return cls(const, lin, quad)


class QlcPresentation:
    """Generators with degrees and a relation space R ⊂ k ⊕ V ⊕ V⊗V.

    ``mode='commutative'`` means the relations live in Sym²V; the associated
    associative presentation (see :meth:`associative_envelope`) adds the
    commutators [v, w].
    """

    def __init__(self, generators: Sequence[tuple[str, int]], relations: Iterable[Mapping[Word, Fraction] | Relation],
                 name: str = "", mode: str = "associative"):
        self.name = name
        self.mode = mode
        self.gens = tuple(g for g, _ in generators)
        self.gen_degree = {g: int(d) for g, d in generators}
        if len(set(self.gens)) != len(self.gens):
            raise PresentationError("generator symbols must be distinct")
        if any(d < 0 for d in self.gen_degree.values()):
            raise PresentationError("generator degrees must be non-negative")
        self.gen_index = {g: i for i, g in enumerate(self.gens)}
        rels = []
        for r in relations:
            e = r.as_element() if isinstance(r, Relation) else {tuple(w): to_q(c) for w, c in r.items() if c}
            for w in e:
                if len(w) > 2:
                    raise NormalizationError(f"relation term {w} has tensor length > 2")
                for g in w:
                    if g not in self.gen_index:
                        raise PresentationError(f"relation uses undeclared generator {g!r}")
            if not e:
                raise NormalizationError("zero relation")
            degs = {self.word_degree(w) for w in e}
            if len(degs) != 1:
                raise NormalizationError(f"relation {format_element(e)} is not degree homogeneous")
            rels.append(e)
        self.relations = tuple(rels)
        if mode == "commutative":
            for e in self.relations:
                for w, c in e.items():
                    if len(w) == 2:
                        sg = (-1) ** (self.gen_degree[w[0]] * self.gen_degree[w[1]])
                        if e.get((w[1], w[0]), 0) != sg * c:
                            raise NormalizationError("commutative relations must have graded-symmetric quadratic part")
        elif mode != "associative":
            raise PresentationError(f"unknown mode {mode!r}")
        amb = self.ambient_words(2)
        idx = {w: i for i, w in enumerate(amb)}
        rows, piv = rref_rows([{idx[w]: c for w, c in e.items()} for e in self.relations], len(amb))
        if len(rows) != len(self.relations):
            raise NormalizationError("relations are linearly dependent")

    # words ------------------------------------------------------------
    def word_degree(self, w: Word) -> int:
        return sum(self.gen_degree[g] for g in w)

    def elim_key(self, w: Word):
        """Descending length, then descending generator index."""
        return (-len(w), tuple(-self.gen_index[g] for g in w))

    def ambient_words(self, n_max: int, n_min: int = 0) -> list[Word]:
        out = []
        for n in range(n_min, n_max + 1):
            out.extend(words(self.gens, n))
        return sorted(out, key=self.elim_key)

    @property
    def dim_v(self) -> int:
        return len(self.gens)

    def relation_matrix(self) -> tuple[list[Word], list[dict]]:
        amb = self.ambient_words(2)
        idx = {w: i for i, w in enumerate(amb)}
        return amb, [{idx[w]: c for w, c in e.items()} for e in self.relations]

    def associative_envelope(self) -> "QlcPresentation":
        """For commutative mode: add the commutators so T(V)/(R') is the commutative algebra."""
        if self.mode != "commutative":
            return self
        rels = [dict(e) for e in self.relations]
        for i, a in enumerate(self.gens):
            if self.gen_degree[a] % 2:
                # [a, a] = 2a² for odd a
                rels.append({(a, a): Q(1)})
            for b in self.gens[i + 1:]:
                sgn = (-1) ** (self.gen_degree[a] * self.gen_degree[b])
                rels.append({(a, b): Q(1), (b, a): Q(-sgn)})
        # symmetric relations may already contain commutator combinations; reduce to a basis
        amb = self.ambient_words(2)
        idx = {w: i for i, w in enumerate(amb)}
        rows, _ = rref_rows([{idx[w]: c for w, c in e.items()} for e in rels], len(amb))
        basis = [{amb[c]: v for c, v in r.items()} for r in rows]
        return QlcPresentation([(g, self.gen_degree[g]) for g in self.gens], basis, self.name + "+", "associative")

    def __repr__(self) -> str:
        return f"QlcPresentation({self.name or '?'}: V={list(self.gens)}, {len(self.relations)} relations)"


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    minimality: bool
    weak_consistency: bool
    minimality_witness: dict | None = None
    weak_witness: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.minimality and self.weak_consistency


def _span(amb: list[Word], elems: Iterable[Mapping[Word, Fraction]]) -> Subspace:
    idx = {w: i for i, w in enumerate(amb)}
    return Subspace.span(len(amb), [{idx[w]: c for w, c in e.items()} for e in elems])


def validate(p: QlcPresentation, raise_on_failure: bool = False) -> ValidationReport:
    """Check R ∩ (k⊕V) = 0 and (V⊗R + R⊗V) ∩ (k⊕V⊕V⊗²) ⊆ R by exact intersections."""
    amb2 = p.ambient_words(2)
    R2 = _span(amb2, p.relations)
    low = _span(amb2, [{w: Q(1)} for w in amb2 if len(w) <= 1])
    cap = intersect([R2, low])
    rep = ValidationReport(True, True)
    if cap.dim:
        rep.minimality = False
        rep.minimality_witness = {amb2[c]: v for c, v in cap.basis[0].items()}
    amb3 = p.ambient_words(3)
    prods = []
    for g in p.gens:
        for e in p.relations:
            prods.append({(g,) + w: c for w, c in e.items()})
            prods.append({w + (g,): c for w, c in e.items()})
    S = _span(amb3, prods)
    short = _span(amb3, [{w: Q(1)} for w in amb3 if len(w) <= 2])
    both = intersect([S, short])
    R3 = _span(amb3, p.relations)
    for v in both.basis:
        if not R3.contains(v):
            rep.weak_consistency = False
            rep.weak_witness = {amb3[c]: x for c, x in v.items()}
            break
    if raise_on_failure:
        if not rep.minimality:
            raise MinimalityViolation(rep.minimality_witness)
        if not rep.weak_consistency:
            raise WeakConsistencyViolation(rep.weak_witness)
    return rep


# ---------------------------------------------------------------------------
# split


@dataclass(frozen=True)
class QlcSplit:
    presentation: QlcPresentation
    qr_basis: tuple  # RREF basis of qR as dicts word -> Fraction (words of length 2)
    qr_pivots: tuple  # leading word of each basis vector
    phi: tuple  # phi(basis_i) as dict over length-1 words
    theta: tuple  # theta(basis_i) as Fraction

    @property
    def gens(self):
        return self.presentation.gens

    @property
    def dim_qr(self) -> int:
        return len(self.qr_basis)

    def coords(self, x: Mapping[Word, Fraction]) -> dict[int, Fraction]:
        """Coordinates of x ∈ qR on the RREF basis (read off at the pivot words)."""
        return {i: x[p] for i, p in enumerate(self.qr_pivots) if x.get(p)}

    def in_qr(self, x: Mapping[Word, Fraction]) -> bool:
        rem = dict(x)
        for b, p in zip(self.qr_basis, self.qr_pivots):
            f = rem.get(p)
            if f:
                add_into(rem, b, -f)
        return not rem

    def phi_of(self, x: Mapping[Word, Fraction]) -> dict:
        out: dict = {}
        for i, c in self.coords(x).items():
            add_into(out, self.phi[i], c)
        return out

    def theta_of(self, x: Mapping[Word, Fraction]) -> Fraction:
        return sum((c * self.theta[i] for i, c in self.coords(x).items()), Q(0))

    def relation_space(self) -> list[dict]:
        """Reconstruct R = {x − φ(x) + θ(x)}."""
        out = []
        for b, ph, th in zip(self.qr_basis, self.phi, self.theta):
            e = dict(b)
            add_into(e, ph, -1)
            if th:
                e[()] = th
            out.append(e)
        return out

    @property
    def is_quadratic(self) -> bool:
        return not any(self.phi) and not any(self.theta)

    def quadratic_part(self) -> "QlcSplit":
        return QlcSplit(self.presentation, self.qr_basis, self.qr_pivots, tuple({} for _ in self.phi),
                        tuple(Q(0) for _ in self.theta))

    def with_maps(self, phi: Sequence[Mapping], theta: Sequence) -> "QlcSplit":
        """Same qR with replaced φ, θ (used to build negative controls)."""
        return QlcSplit(self.presentation, self.qr_basis, self.qr_pivots, tuple(dict(x) for x in phi),
                        tuple(to_q(t) for t in theta))


def split(p: QlcPresentation) -> QlcSplit:
    """Solve R = {x − φ(x) + θ(x) : x ∈ qR} on the RREF basis of qR."""
    amb = p.ambient_words(2)  # quadratic columns first
    idx = {w: i for i, w in enumerate(amb)}
    rows, piv = rref_rows([{idx[w]: c for w, c in e.items()} for e in p.relations], len(amb))
    basis, pivots, phis, thetas = [], [], [], []
    for r, pc in zip(rows, piv):
        pw = amb[pc]
        if len(pw) != 2:
            witness = {amb[c]: v for c, v in r.items()}
            raise MinimalityViolation(witness)
        quad = {amb[c]: v for c, v in r.items() if len(amb[c]) == 2}
        lin = {amb[c]: -v for c, v in r.items() if len(amb[c]) == 1}
        const = sum((v for c, v in r.items() if len(amb[c]) == 0), Q(0))
        basis.append(quad)
        pivots.append(pw)
        phis.append(lin)
        thetas.append(const)
    return QlcSplit(p, tuple(basis), tuple(pivots), tuple(phis), tuple(thetas))


# ---------------------------------------------------------------------------
# normal forms


class Reducer:
    """Normal-form reduction modulo a subspace spanned by word combinations.

    Pivot words (leading words of the RREF) are rewritten in terms of the
    surviving words in a single pass.
    """

    def __init__(self, p: QlcPresentation, ambient: Sequence[Word], spanning: Iterable[Mapping[Word, Fraction]]):
        self.ambient = sorted(ambient, key=p.elim_key)
        idx = {w: i for i, w in enumerate(self.ambient)}
        rows, piv = rref_rows([{idx[w]: c for w, c in e.items()} for e in spanning], len(self.ambient))
        self.rewrite: dict[Word, dict] = {}
        for r, pc in zip(rows, piv):
            self.rewrite[self.ambient[pc]] = {self.ambient[c]: -v for c, v in r.items() if c != pc}
        self.normal_words = [w for w in self.ambient if w not in self.rewrite]
        self.ideal_dim = len(rows)

    def reduce(self, e: Mapping[Word, Fraction]) -> dict:
        out: dict = {}
        for w, c in e.items():
            if not c:
                continue
            rw = self.rewrite.get(w)
            if rw is None:
                nv = out.get(w, 0) + c
                if nv:
                    out[w] = nv
                else:
                    del out[w]
            else:
                add_into(out, rw, c)
        return out


def qa_reducer(s: QlcSplit, n: int) -> Reducer:
    p = s.presentation
    amb = words(p.gens, n)
    span = []
    for i in range(n - 1):
        for u in words(p.gens, i):
            for v in words(p.gens, n - 2 - i):
                for b in s.qr_basis:
                    span.append({u + w + v: c for w, c in b.items()})
    return Reducer(p, amb, span)


def qa_component(s: QlcSplit, n: int) -> BigradedSpace:
    """qA^(n) = V^{⊗n} / Σ V^{⊗i} ⊗ qR ⊗ V^{⊗j}, with normal-form words as canonical representatives."""
    p = s.presentation
    red = qa_reducer(s, n)
    nw = red.normal_words
    return BigradedSpace.sorted_words(nw, {w: p.word_degree(w) for w in nw}, {w: n for w in nw}, f"qA({n})")


class FilteredAlgebraTrunc:
    """F≤N A = T≤N(V) / ((R) ∩ T≤N(V)) with normal-form basis and partial multiplication."""

    def __init__(self, s: QlcSplit, N: int, relations: Sequence[Mapping[Word, Fraction]] | None = None):
        self.split = s
        self.presentation = p = s.presentation
        self.N = N
        rels = list(relations) if relations is not None else s.relation_space()
        amb = p.ambient_words(N)
        span = []
        for k in range(N - 1):
            for i in range(k + 1):
                for u in words(p.gens, i):
                    for v in words(p.gens, k - i):
                        for r in rels:
                            span.append({u + w + v: c for w, c in r.items()})
        self.reducer = Reducer(p, amb, span)
        nw = self.reducer.normal_words
        self.space = BigradedSpace.sorted_words(nw, {w: p.word_degree(w) for w in nw}, {w: len(w) for w in nw},
                                                f"F≤{N}A")
        self._mult: dict = {}

    @property
    def basis(self) -> tuple:
        return self.space.basis

    @property
    def dim(self) -> int:
        return self.space.dim

    def filtration(self, w: Word) -> int:
        return len(w)

    def dims_by_filtration(self) -> list[int]:
        out = [0] * (self.N + 1)
        for w in self.basis:
            out[len(w)] += 1
        return out

    def reduce(self, e: Mapping[Word, Fraction]) -> dict:
        for w in e:
            if len(w) > self.N:
                raise ValueError(f"word {w} beyond the truncation N={self.N}")
        return self.reducer.reduce(e)

    def mult_words(self, u: Word, v: Word) -> dict:
        key = (u, v)
        r = self._mult.get(key)
        if r is None:
            if len(u) + len(v) > self.N:
                raise ValueError(f"product {u}·{v} leaves F≤{self.N}")
            r = self.reducer.reduce({u + v: Q(1)})
            self._mult[key] = r
        return r

    def mult(self, a: Mapping[Word, Fraction], b: Mapping[Word, Fraction]) -> dict:
        out: dict = {}
        for u, x in a.items():
            for v, y in b.items():
                add_into(out, self.mult_words(u, v), x * y)
        return out

    def element(self, e: Mapping[Word, Fraction]) -> dict:
        return self.reduce(e)


def filtered_basis(s: QlcSplit, N: int) -> FilteredAlgebraTrunc:
    return FilteredAlgebraTrunc(s, N)


def qa_algebra(s: QlcSplit, N: int) -> FilteredAlgebraTrunc:
    """Truncation of the quadratic algebra qA (weight ≤ N) with the same interface."""
    return FilteredAlgebraTrunc(s, N, relations=list(s.qr_basis))
