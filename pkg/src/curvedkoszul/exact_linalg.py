"""Exact rational linear algebra over sparse matrices.

Every scalar is a :class:`fractions.Fraction`.  Matrices store their nonzero
entries row by row (``{row: {col: value}}``); elimination follows a
column-by-column Gauss-Jordan sweep.  For narrow matrices (fewer than
``DENSE_CUTOFF`` columns) a dense list-of-lists path is used instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Q = Fraction
DENSE_CUTOFF = 64

Vector = dict  # sparse vector: {index: Fraction}


class LinalgError(Exception):
    pass


class EmptyIntersectionFamily(LinalgError):
    pass


class NotAComplex(LinalgError):
    """Raised when consecutive differentials do not compose to zero."""

    def __init__(self, position: int, witness: Vector, message: str = ""):
        self.position = position
        self.witness = witness
        super().__init__(message or f"d∘d != 0 at position {position}; witness {format_vector(witness)}")


def to_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point scalars are not accepted")
    return Fraction(x)


def format_vector(v: Mapping) -> str:
    return "{" + ", ".join(f"{k}: {c}" for k, c in sorted(v.items(), key=lambda kv: str(kv[0]))) + "}"


def _bitsize(x: Fraction) -> int:
    return (abs(x.numerator) * x.denominator).bit_length()


# ---------------------------------------------------------------------------
# Matrix


@dataclass(frozen=True)
class Matrix:
    """Sparse exact matrix. ``entries[r][c]`` is never zero."""

    rows: int
    cols: int
    entries: Mapping[int, Mapping[int, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for r, row in self.entries.items():
            if not 0 <= r < self.rows:
                raise IndexError(f"row {r} out of range {self.rows}")
            kept = {}
            for c, v in row.items():
                if not 0 <= c < self.cols:
                    raise IndexError(f"column {c} out of range {self.cols}")
                if v:
                    kept[c] = to_q(v)
            if kept:
                clean[r] = kept
        object.__setattr__(self, "entries", clean)

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: Q(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        nrows = len(data)
        ncols = cols if cols is not None else (len(data[0]) if nrows else 0)
        ent = {}
        for i, row in enumerate(data):
            r = {j: to_q(x) for j, x in enumerate(row) if x}
            if r:
                ent[i] = r
        return cls(nrows, ncols, ent)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "Matrix":
        ent: dict[int, dict[int, Fraction]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    ent.setdefault(i, {})[j] = v
        return cls(rows, len(columns), ent)

    @classmethod
    def from_rows(cls, cols: int, rows: Sequence[Mapping[int, Fraction]]) -> "Matrix":
        return cls(len(rows), cols, {i: dict(r) for i, r in enumerate(rows) if r})

    # access -----------------------------------------------------------
    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self.entries.get(r, {}).get(c, Q(0))

    def row(self, r: int) -> dict:
        return dict(self.entries.get(r, {}))

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.cols)]
        for r, row in self.entries.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def column(self, c: int) -> dict:
        return {r: row[c] for r, row in self.entries.items() if c in row}

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Q(0)] * self.cols for _ in range(self.rows)]
        for r, row in self.entries.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def nnz(self) -> int:
        return sum(len(r) for r in self.entries.values())

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    # algebra ----------------------------------------------------------
    def transpose(self) -> "Matrix":
        ent: dict[int, dict[int, Fraction]] = {}
        for r, row in self.entries.items():
            for c, v in row.items():
                ent.setdefault(c, {})[r] = v
        return Matrix(self.cols, self.rows, ent)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ent = {}
        oe = other.entries
        for r, row in self.entries.items():
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                orow = oe.get(k)
                if orow is None:
                    continue
                for c, b in orow.items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                ent[r] = acc
        return Matrix(self.rows, other.cols, ent)

    def apply(self, v: Mapping[int, Fraction]) -> dict:
        out: dict[int, Fraction] = {}
        for r, row in self.entries.items():
            s = Q(0)
            for c, a in row.items():
                x = v.get(c)
                if x:
                    s += a * x
            if s:
                out[r] = s
        return out

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        ent = {r: dict(row) for r, row in self.entries.items()}
        for r, row in other.entries.items():
            tgt = ent.setdefault(r, {})
            for c, v in row.items():
                tgt[c] = tgt.get(c, 0) + sign * v
        return Matrix(self.rows, self.cols, ent)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, s) -> "Matrix":
        s = to_q(s)
        if not s:
            return Matrix.zero(self.rows, self.cols)
        return Matrix(self.rows, self.cols, {r: {c: s * v for c, v in row.items()} for r, row in self.entries.items()})

    def __rmul__(self, s) -> "Matrix":
        return self.scale(s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted((r, tuple(sorted(row.items()))) for r, row in self.entries.items()))))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: j for j, c in enumerate(cols)}
        ent = {}
        for r, row in self.entries.items():
            if r in rpos:
                nr = {cpos[c]: v for c, v in row.items() if c in cpos}
                if nr:
                    ent[rpos[r]] = nr
        return Matrix(len(rows), len(cols), ent)

    def first_nonzero(self):
        """(row, col, value) of some nonzero entry, or None."""
        for r in sorted(self.entries):
            row = self.entries[r]
            c = min(row)
            return r, c, row[c]
        return None

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def block_matrix(blocks: Sequence[Sequence[Matrix | None]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Matrix:
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    ent: dict[int, dict[int, Fraction]] = {}
    for i, brow in enumerate(blocks):
        for j, b in enumerate(brow):
            if b is None:
                continue
            if b.shape != (row_sizes[i], col_sizes[j]):
                raise ValueError(f"block ({i},{j}) has shape {b.shape}, expected {(row_sizes[i], col_sizes[j])}")
            for r, row in b.entries.items():
                tgt = ent.setdefault(roff[i] + r, {})
                for c, v in row.items():
                    tgt[coff[j] + c] = v
    return Matrix(roff[-1], coff[-1], ent)


# ---------------------------------------------------------------------------
# elimination


def _rref_sparse(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    work = {i: dict(r) for i, r in enumerate(rows) if r}
    colrows: dict[int, set[int]] = {}
    for i, r in work.items():
        for c in r:
            colrows.setdefault(c, set()).add(i)
    pivots: list[tuple[int, int]] = []  # (col, row id)
    used: set[int] = set()
    for col in range(ncols):
        if not colrows.get(col):
            continue
        cands = [i for i in colrows[col] if i not in used]
        if not cands:
            continue
        p = min(cands, key=lambda i: (_bitsize(work[i][col]), i))
        prow = work[p]
        inv = 1 / prow[col]
        if inv != 1:
            for c in prow:
                prow[c] *= inv
        used.add(p)
        pivots.append((col, p))
        for i in list(colrows[col]):
            if i == p:
                continue
            row = work[i]
            f = row[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    if c not in row:
                        colrows.setdefault(c, set()).add(i)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        colrows[c].discard(i)
    out_rows = [work[p] for _, p in pivots]
    return out_rows, [c for c, _ in pivots]


def _rref_dense(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    mat = []
    for r in rows:
        if r:
            line = [Q(0)] * ncols
            for c, v in r.items():
                line[c] = v
            mat.append(line)
    pivots = []
    prow_idx = 0
    nrows = len(mat)
    for col in range(ncols):
        if prow_idx >= nrows:
            break
        cands = [i for i in range(prow_idx, nrows) if mat[i][col]]
        if not cands:
            continue
        p = min(cands, key=lambda i: (_bitsize(mat[i][col]), i))
        mat[prow_idx], mat[p] = mat[p], mat[prow_idx]
        pr = mat[prow_idx]
        inv = 1 / pr[col]
        if inv != 1:
            for c in range(col, ncols):
                if pr[c]:
                    pr[c] *= inv
        for i in range(nrows):
            if i != prow_idx:
                f = mat[i][col]
                if f:
                    row = mat[i]
                    for c in range(col, ncols):
                        if pr[c]:
                            row[c] -= f * pr[c]
        pivots.append(col)
        prow_idx += 1
    out = [{c: v for c, v in enumerate(mat[i]) if v} for i in range(prow_idx)]
    return out, pivots


def rref_rows(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> tuple[list[dict], list[int]]:
    """RREF of the given sparse rows; returns the nonzero rows and their pivot columns."""
    rows = [{c: to_q(v) for c, v in r.items() if v} for r in rows]
    if ncols < DENSE_CUTOFF:
        return _rref_dense(rows, ncols)
    return _rref_sparse(rows, ncols)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form; zero rows are kept at the bottom so the shape is unchanged."""
    rows, piv = rref_rows([m.entries.get(i, {}) for i in range(m.rows)], m.cols)
    return Matrix(m.rows, m.cols, {i: r for i, r in enumerate(rows)}), piv


def rank(m: Matrix) -> int:
    if m.is_zero():
        return 0
    # eliminate along the shorter side
    if m.rows < m.cols:
        return len(rref_rows(list(m.entries.values()), m.cols)[1])
    return len(rref_rows(list(m.transpose().entries.values()), m.rows)[1])


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, stored as RREF basis rows."""

    ambient_dim: int
    basis: tuple  # tuple of dicts (RREF rows)
    pivots: tuple

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Mapping[int, Fraction]]) -> "Subspace":
        rows, piv = rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, tuple(rows), tuple(piv))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple({i: Q(1)} for i in range(n)), tuple(range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        return Matrix.from_rows(self.ambient_dim, list(self.basis))

    def reduce(self, v: Mapping[int, Fraction]) -> dict:
        """Remainder of v after subtracting its component along the pivots."""
        out = dict(v)
        for row, p in zip(self.basis, self.pivots):
            f = out.get(p)
            if f:
                for c, x in row.items():
                    nv = out.get(c, 0) - f * x
                    if nv:
                        out[c] = nv
                    else:
                        out.pop(c, None)
        return out

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping[int, Fraction]) -> dict:
        """Coordinates of v (assumed in the subspace) in the RREF basis."""
        return {i: v[p] for i, p in enumerate(self.pivots) if v.get(p)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.pivots == other.pivots and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"


def kernel_basis(m: Matrix) -> Subspace:
    """Null space {v : m v = 0}, RREF normalised."""
    rows, piv = rref_rows([m.entries.get(i, {}) for i in range(m.rows)], m.cols)
    pivset = set(piv)
    free = [c for c in range(m.cols) if c not in pivset]
    vecs = []
    for f in free:
        v = {f: Q(1)}
        for row, p in zip(rows, piv):
            x = row.get(f)
            if x:
                v[p] = -x
        vecs.append(v)
    return Subspace.span(m.cols, vecs)


def image_basis(m: Matrix) -> Subspace:
    """Column space of m."""
    return Subspace.span(m.rows, m.columns())


def sum_subspaces(subspaces: Sequence[Subspace]) -> Subspace:
    if not subspaces:
        raise EmptyIntersectionFamily("no subspaces given")
    n = subspaces[0].ambient_dim
    return Subspace.span(n, [r for s in subspaces for r in s.basis])


def complement_equations(s: Subspace) -> list[dict]:
    """Linear functionals (as sparse rows) whose common zero set is s."""
    pivset = set(s.pivots)
    eqs = []
    for f in range(s.ambient_dim):
        if f in pivset:
            continue
        # functional: x_f - sum_i row_i[f] * x_{p_i}
        e = {f: Q(1)}
        for row, p in zip(s.basis, s.pivots):
            x = row.get(f)
            if x:
                e[p] = -x
        eqs.append(e)
    return eqs


def intersect(subspaces: Sequence[Subspace]) -> Subspace:
    """Intersection as the kernel of all stacked complement equations."""
    if not subspaces:
        raise EmptyIntersectionFamily("intersection of an empty family is undefined")
    n = subspaces[0].ambient_dim
    for s in subspaces:
        if s.ambient_dim != n:
            raise ValueError("ambient dimensions differ")
    eqs = [e for s in subspaces for e in complement_equations(s)]
    return kernel_basis(Matrix.from_rows(n, eqs))


@dataclass(frozen=True)
class QuotientData:
    representatives: tuple  # ambient coordinates spanning the canonical complement
    projection: Matrix  # (ambient - dim sub) x ambient


def quotient(ambient_dim: int, sub: Subspace) -> QuotientData:
    """Quotient by ``sub`` with the non-pivot coordinates as canonical complement."""
    if sub.ambient_dim != ambient_dim:
        raise ValueError("ambient dimension mismatch")
    pivset = set(sub.pivots)
    reps = tuple(c for c in range(ambient_dim) if c not in pivset)
    pos = {c: i for i, c in enumerate(reps)}
    cols = []
    # column j of the projection = reduced e_j expressed on representatives
    for j in range(ambient_dim):
        red = sub.reduce({j: Q(1)})
        cols.append({pos[c]: v for c, v in red.items()})
    return QuotientData(reps, Matrix.from_columns(len(reps), cols))


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    dim: int
    representatives: tuple  # sparse cycle vectors spanning a complement of the boundaries


def check_complex(spaces: Sequence[int], diffs: Sequence[Matrix | None]) -> None:
    """``diffs[i]`` maps position i to position i-1.  Raises NotAComplex on failure."""
    for i in range(1, len(spaces)):
        d_hi = diffs[i] if i < len(diffs) else None
        d_lo = diffs[i - 1] if i - 1 < len(diffs) else None
        if d_hi is None or d_lo is None:
            continue
        if d_hi.shape != (spaces[i - 1], spaces[i]):
            raise ValueError(f"differential at {i} has shape {d_hi.shape}")
        comp = d_lo @ d_hi
        if not comp.is_zero():
            col = min(c for row in comp.entries.values() for c in row)
            raise NotAComplex(i, {col: Q(1)}, f"d_{i-1}∘d_{i} != 0; witness: basis vector {col} of position {i}")


def complex_homology(spaces: Sequence[int], diffs: Sequence[Matrix | None], representatives: bool = True,
                     check: bool = True) -> list[HomologyGroup]:
    """Homology of 0 <- C_0 <- C_1 <- ... ; ``diffs[i]: C_i -> C_{i-1}`` (``diffs[0]`` ignored)."""
    n = len(spaces)
    diffs = list(diffs) + [None] * (n + 1 - len(diffs))
    if check:
        check_complex(spaces, diffs)
    out = []
    for i in range(n):
        d_out = diffs[i] if i > 0 else None
        d_in = diffs[i + 1] if i + 1 < n else None
        if d_out is None or d_out.is_zero():
            ker = Subspace.full(spaces[i])
        else:
            ker = kernel_basis(d_out)
        if d_in is None or d_in.is_zero():
            im = Subspace.zero(spaces[i])
        else:
            im = image_basis(d_in)
        dim = ker.dim - im.dim
        reps: tuple = ()
        if representatives and dim:
            # extend the boundary basis by kernel vectors
            chosen = []
            rows = list(im.basis)
            cur = im
            for v in ker.basis:
                if not cur.contains(v):
                    chosen.append(dict(v))
                    rows.append(v)
                    cur = Subspace.span(spaces[i], rows)
                    if len(chosen) == dim:
                        break
            reps = tuple(chosen)
        out.append(HomologyGroup(dim, reps))
    return out


def homology_dims(spaces: Sequence[int], diffs: Sequence[Matrix | None], check: bool = True) -> list[int]:
    """Dimensions only; uses ranks and skips kernel construction."""
    n = len(spaces)
    diffs = list(diffs) + [None] * (n + 1 - len(diffs))
    if check:
        check_complex(spaces, diffs)
    ranks = [0] * (n + 1)
    for i in range(1, n):
        if diffs[i] is not None:
            ranks[i] = rank(diffs[i])
    return [spaces[i] - ranks[i] - ranks[i + 1] for i in range(n)]
