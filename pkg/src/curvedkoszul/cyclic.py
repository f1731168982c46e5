"""Cyclic (co)homology of augmented curved algebras, noncommutative 1-forms of free algebras and the
comparison between the two sides of Koszul duality.

Words over the augmentation ideal stand for (sa_1, …, sa_n); a word of degree q has
q = Σ (|a_i| + 1).  Both kinds of bicomplex column have the same underlying space
⊕_{n≥1} Ā[1]^{⊗n}: the reduced bar column carries d0+d1+d2, the other one carries
Σ_{i≥1} d_{0,i} + d1 + Σ_{i=1..n} d_{2,i}.

Column placement (homological kinds):
  per  : all p, odd columns are bar columns, even columns are the other kind;
  plus : p ≥ 0;
  minus: p ≤ 1.
Horizontal maps go from column p to p−1: 1−T out of a bar column, N out of the other.
Total differential h + (−1)^p v; HC_n = H_{n+1}(Tot).  Dual kinds use column −p with the
transposed maps (vertical ones with the dualization sign) and HC^n = H_{−n−1}(Tot).
Every complex is cut at total weight ≤ W; none of the maps lowers weight, so for homological
kinds this is a quotient complex and for dual kinds a subcomplex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .cobar_bar import CobarTrunc, UnitalAlgebra, graded_homology, words_by_weight
from .exact_linalg import Matrix, Q, Subspace, homology_dims, image_basis, kernel_basis, quotient, rank
from .graded_spaces import BigradedSpace, GradedMap, add_into, sign
from .koszul_dual import (AxiomReport, Check, CurvedAlgebraTrunc, CurvedCoalgebraTrunc, dual_curved_algebra,
                          dual_label, koszulness_certificate)
from .qlc_presentation import QlcSplit

KINDS = ("per", "plus", "minus", "dual_per", "dual_plus", "dual_minus")


# ---------------------------------------------------------------------------
# small augmented algebras


def dual_numbers(odd: bool = False, W: int = 8) -> CurvedAlgebraTrunc:
    """k[ε]/(ε²) with ε of weight 1 and degree 0 (or −1 when ``odd``)."""
    e = ("e",)
    sp = BigradedSpace([e], {e: -1 if odd else 0}, {e: 1}, "k[ε]")
    return CurvedAlgebraTrunc(sp, {}, {}, {}, W, "k[ε]")


def trivial_algebra() -> CurvedAlgebraTrunc:
    return CurvedAlgebraTrunc(BigradedSpace([], {}, {}, "k"), {}, {}, {}, 0, "k")


# ---------------------------------------------------------------------------
# operators on words


class WordOps:
    """T, N, d_{0,i}, d1, d_{2,i} on words over the augmentation ideal (weights above W dropped)."""

    def __init__(self, a: CurvedAlgebraTrunc, W: int | None = None):
        self.a = a
        self.W = a.W if W is None else W
        self._t_cache: dict = {}

    def deg(self, x) -> int:
        return self.a.degree(x) + 1  # degree of sx

    def wdeg(self, w) -> int:
        return sum(self.deg(x) for x in w)

    def weight(self, w) -> int:
        return sum(self.a.weight(x) for x in w)

    def _ok(self, w) -> bool:
        return self.weight(w) <= self.W

    def T(self, w) -> dict:
        if len(w) <= 1:
            return {w: Q(1)}
        r = self._t_cache.get(w)
        if r is None:
            last = self.deg(w[-1])
            rest = self.wdeg(w[:-1])
            r = self._t_cache[w] = ((w[-1],) + w[:-1], Q(sign(last * rest)))
        return {r[0]: r[1]}

    def T_elem(self, e: Mapping) -> dict:
        out: dict = {}
        for w, c in e.items():
            add_into(out, self.T(w), c)
        return out

    def N(self, w) -> dict:
        out: dict = {}
        cur = {w: Q(1)}
        for _ in range(len(w)):
            add_into(out, cur)
            cur = self.T_elem(cur)
        return out

    def N_explicit(self, w) -> dict:
        """Σ_i (−1)^{(|a_i|+…+|a_n|+n−i+1)(|a_1|+…+|a_{i−1}|+i−1)} (sa_i, …, sa_n, sa_1, …, sa_{i−1})."""
        out: dict = {}
        for i in range(len(w)):
            tail, head = w[i:], w[:i]
            add_into(out, {tail + head: Q(1)}, sign(self.wdeg(tail) * self.wdeg(head)))
        return out

    def one_minus_T(self, w) -> dict:
        return add_into({w: Q(1)}, self.T(w), -1)

    def d0i(self, w, i: int) -> dict:
        a = self.a
        if not a.theta:
            return {}
        s = sign(sum(a.degree(x) for x in w[:i]) + i + 1)
        out: dict = {}
        for t, c in a.theta.items():
            nw = w[:i] + (t,) + w[i:]
            if self._ok(nw):
                add_into(out, {nw: Q(1)}, s * c)
        return out

    def d1(self, w) -> dict:
        a = self.a
        out: dict = {}
        pre = 0
        for i, x in enumerate(w):
            for y, c in a.nabla(x).items():
                nw = w[:i] + (y,) + w[i + 1:]
                if self._ok(nw):
                    add_into(out, {nw: Q(1)}, sign(pre + i + 1) * c)
            pre += a.degree(x)
        return out

    def d2i(self, w, i: int) -> dict:
        """1 ≤ i ≤ n−1 merges a_i a_{i+1}; i = n (n ≥ 2) is the wrap-around a_n a_1."""
        a = self.a
        n = len(w)
        out: dict = {}
        if 1 <= i <= n - 1:
            s = sign(sum(a.degree(x) for x in w[:i]) + i - 1)
            for y, c in a.mult(w[i - 1], w[i]).items():
                nw = w[:i - 1] + (y,) + w[i + 1:]
                if self._ok(nw):
                    add_into(out, {nw: Q(1)}, s * c)
        elif i == n and n >= 2:
            s = sign(self.deg(w[-1]) * self.wdeg(w[:-1]) + a.degree(w[-1]))
            for y, c in a.mult(w[-1], w[0]).items():
                nw = (y,) + w[1:-1]
                if self._ok(nw):
                    add_into(out, {nw: Q(1)}, s * c)
        return out

    def v_bar(self, w) -> dict:
        out: dict = {}
        for i in range(len(w) + 1):
            add_into(out, self.d0i(w, i))
        add_into(out, self.d1(w))
        for i in range(1, len(w)):
            add_into(out, self.d2i(w, i))
        return out

    def v_hoch(self, w) -> dict:
        out: dict = {}
        for i in range(1, len(w) + 1):
            add_into(out, self.d0i(w, i))
        add_into(out, self.d1(w))
        for i in range(1, len(w) + 1):
            add_into(out, self.d2i(w, i))
        return out


# ---------------------------------------------------------------------------
# Hochschild complex of a unital algebra (normalized), from the three explicit terms


class HochschildTrunc:
    """(a0, sa1, …, san) with a0 ∈ A and a_i in the complement of the unit, total weight ≤ W.

    ``L`` optionally bounds n; this is a subcomplex only when Θ = 0.
    """

    def __init__(self, a: UnitalAlgebra, L: int | None, W: int, check: bool = True):
        if L is not None and a.theta:
            raise ValueError("a length bound is only compatible with zero curvature")
        self.a = a
        self.W = W
        letters = [x for x in a.basis if x != a.unit]
        wt = {x: max(a.filtration[x], 1) for x in letters}
        bar_words = words_by_weight(letters, wt, W, L)
        basis = []
        for a0 in a.basis:
            for w in bar_words:
                if a.filtration[a0] + sum(a.filtration[x] for x in w) <= W:
                    basis.append((a0,) + w)
        deg = {b: a.degree[b[0]] + sum(a.degree[x] + 1 for x in b[1:]) for b in basis}
        weight = {b: sum(a.filtration[x] for x in b) for b in basis}
        basis.sort(key=lambda b: (len(b), weight[b], b))
        self.space = BigradedSpace(basis, deg, weight, "Hoch")
        self.d = GradedMap.from_function(self.space, self.space, self._d, -1, None, strict=False)
        if check:
            sq = self.d @ self.d
            if not sq.is_zero():
                from .cobar_bar import SignConventionError
                nz = sq.matrix.first_nonzero()
                raise SignConventionError(self.space.basis[nz[1]])

    def _bar(self, e: Mapping) -> dict:
        return {k: v for k, v in e.items() if k != self.a.unit}

    def _d(self, b) -> dict:
        a = self.a
        a0, w = b[0], b[1:]
        n = len(w)
        degs = [a.degree[a0]] + [a.degree[x] for x in w]
        out: dict = {}
        # d0
        for i in range(n + 1):
            s = sign(sum(degs[:i + 1]) + i + 1)
            for t, c in a.theta.items():
                add_into(out, {(a0,) + w[:i] + (t,) + w[i:]: Q(1)}, s * c)
        # d1
        for y, c in a.nabla({a0: Q(1)}).items():
            add_into(out, {(y,) + w: Q(1)}, c)
        for i in range(1, n + 1):
            s = sign(sum(degs[:i]) + i)
            for y, c in self._bar(a.nabla({w[i - 1]: Q(1)})).items():
                add_into(out, {(a0,) + w[:i - 1] + (y,) + w[i:]: Q(1)}, s * c)
        # d2
        if n >= 1:
            for y, c in a.mult({a0: Q(1)}, {w[0]: Q(1)}).items():
                add_into(out, {(y,) + w[1:]: Q(1)}, sign(degs[0] + 1) * c)
            for i in range(1, n):
                s = sign(sum(degs[:i + 1]) + i - 1)
                for y, c in self._bar(a.mult({w[i - 1]: Q(1)}, {w[i]: Q(1)})).items():
                    add_into(out, {(a0,) + w[:i - 1] + (y,) + w[i + 1:]: Q(1)}, s * c)
            s = sign((degs[n] + 1) * (sum(degs[:n]) + n - 1))
            for y, c in a.mult({w[-1]: Q(1)}, {a0: Q(1)}).items():
                add_into(out, {(y,) + w[:-1]: Q(1)}, s * c)
        return out

    def homology(self) -> dict:
        return graded_homology(self.space, self.d)


def curved_hochschild(a: CurvedAlgebraTrunc, W: int | None = None) -> HochschildTrunc:
    return HochschildTrunc(UnitalAlgebra.from_curved(a), None, a.W if W is None else W)


# ---------------------------------------------------------------------------
# bicomplexes


def column_allowed(kind: str, p: int) -> bool:
    """Whether homological column p is present (dual kinds use their base kind's columns)."""
    base = kind.replace("dual_", "")
    if base == "per":
        return True
    if base == "plus":
        return p >= 0
    if base == "minus":
        return p <= 1
    raise ValueError(f"unknown kind {kind!r}")


def is_bar_column(p: int) -> bool:
    return p % 2 == 1


@dataclass
class TotalComplex:
    degrees: list  # ascending total degrees
    bases: dict  # degree -> list of (column, word)
    diffs: dict  # degree k -> Matrix from degree k to k-1

    def homology(self) -> dict:
        """Homology at every degree except the two window ends (which lack a neighbour)."""
        out = {}
        for k in self.degrees[1:-1]:
            below = self.diffs.get(k)
            above = self.diffs.get(k + 1)
            n = len(self.bases[k])
            r1 = rank(below) if below is not None and below.rows else 0
            r2 = rank(above) if above is not None and above.cols else 0
            out[k] = n - r1 - r2
        return out


class CyclicBicomplexTrunc:
    """One of the six bicomplexes of an augmented curved algebra, cut at weight ≤ W."""

    def __init__(self, kind: str, a: CurvedAlgebraTrunc, W: int | None = None):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
        self.kind = kind
        self.dual = kind.startswith("dual_")
        self.a = a
        self.W = a.W if W is None else W
        self.ops = ops = WordOps(a, self.W)
        letters = list(a.basis)
        wt = {x: a.weight(x) for x in letters}
        ws = [w for w in words_by_weight(letters, wt, self.W) if w]
        ws.sort(key=lambda w: (ops.weight(w), len(w), w))
        self.words = ws
        self.space = BigradedSpace(ws, {w: ops.wdeg(w) for w in ws}, {w: ops.weight(w) for w in ws}, "Ā[1]^⊗")
        sp = self.space
        self.vB = GradedMap.from_function(sp, sp, ops.v_bar, -1, None, strict=False)
        self.vH = GradedMap.from_function(sp, sp, ops.v_hoch, -1, None, strict=False)
        self.omt = GradedMap.from_function(sp, sp, ops.one_minus_T, 0, 0, strict=False)
        self.Nm = GradedMap.from_function(sp, sp, ops.N, 0, 0, strict=False)
        self._by_deg = sp.by_degree()
        self.word_degrees = sorted(self._by_deg)

    # column data in homological coordinates
    def vertical(self, p: int) -> GradedMap:
        return self.vB if is_bar_column(p) else self.vH

    def horizontal(self, p: int) -> GradedMap:
        """Map out of column p into column p−1."""
        return self.omt if is_bar_column(p) else self.Nm

    def total(self, k_lo: int, k_hi: int) -> TotalComplex:
        """Total complex in degrees k_lo..k_hi."""
        if not self.word_degrees:
            return TotalComplex(list(range(k_lo, k_hi + 1)), {k: [] for k in range(k_lo, k_hi + 1)}, {})
        qmin, qmax = self.word_degrees[0], self.word_degrees[-1]
        sp = self.space
        bases = {}
        for k in range(k_lo, k_hi + 1):
            items = []
            if self.dual:
                # dual column p' holds the dual of homological column -p'; internal degree -q
                for p in range(k + qmin, k + qmax + 1):
                    if not column_allowed(self.kind, -p):
                        continue
                    for w in self._by_deg.get(p - k, []):
                        items.append((p, w))
            else:
                for p in range(k - qmax, k - qmin + 1):
                    if not column_allowed(self.kind, p):
                        continue
                    for w in self._by_deg.get(k - p, []):
                        items.append((p, w))
            bases[k] = items
        diffs = {}
        for k in range(k_lo + 1, k_hi + 1):
            idx = {b: i for i, b in enumerate(bases[k - 1])}
            cols = []
            for (p, w) in bases[k]:
                col: dict = {}
                if self.dual:
                    self._dual_image(p, w, idx, col)
                else:
                    j = sp.index[w]
                    for r, v in self.horizontal(p).matrix.column(j).items():
                        t = idx.get((p - 1, sp.basis[r]))
                        if t is not None:
                            col[t] = col.get(t, 0) + v
                    sg = sign(p)
                    for r, v in self.vertical(p).matrix.column(j).items():
                        t = idx.get((p, sp.basis[r]))
                        if t is not None:
                            col[t] = col.get(t, 0) + sg * v
                cols.append({r: v for r, v in col.items() if v})
            diffs[k] = Matrix.from_columns(len(bases[k - 1]), cols)
        return TotalComplex(list(range(k_lo, k_hi + 1)), bases, diffs)

    def _dual_image(self, pd: int, w, idx, col) -> None:
        """Image of the dual basis vector w* sitting in dual column pd."""
        sp = self.space
        j = sp.index[w]
        p = -pd  # homological column of which this is the dual
        # horizontal: dual of h_{p+1}: col p+1 -> col p, lands in dual column -(p+1) = pd-1
        hp1 = self.horizontal(p + 1)
        if column_allowed(self.kind, p + 1):
            for c, v in hp1.matrix.row(j).items():
                t = idx.get((pd - 1, sp.basis[c]))
                if t is not None:
                    col[t] = col.get(t, 0) + v
        # vertical: dual of v_p with sign (-1)^{|v| |ξ|}, |v| = -1, |ξ| = -q
        vs = sign(sp.degree[w])
        sg = sign(pd)
        for c, v in self.vertical(p).matrix.row(j).items():
            t = idx.get((pd, sp.basis[c]))
            if t is not None:
                col[t] = col.get(t, 0) + sg * vs * v

    # component maps in dual coordinates (used by the X⁺ comparison)
    def dual_vertical(self, pd: int) -> dict:
        """{(w_in, w_out): coef} for the dual vertical map on dual column pd."""
        sp = self.space
        m = self.vertical(-pd).matrix
        out = {}
        for r, row in m.entries.items():
            for c, v in row.items():
                # v_p(w_c) has coefficient v on w_r, so the dual sends w_r* to (sign) v w_c*
                out[(sp.basis[r], sp.basis[c])] = sign(sp.degree[sp.basis[r]]) * v
        return out

    def dual_horizontal(self, pd: int) -> dict:
        """Dual of the map from column -pd+1 to -pd, as {(w_in, w_out): coef} (dual column pd -> pd-1)."""
        sp = self.space
        m = self.horizontal(-pd + 1).matrix
        out = {}
        for r, row in m.entries.items():
            for c, v in row.items():
                out[(sp.basis[r], sp.basis[c])] = v
        return out

    def hc(self, n_lo: int, n_hi: int) -> dict:
        """Cyclic (co)homology dims with the kind's shift applied."""
        if self.dual:
            k_lo, k_hi = -n_hi - 2, -n_lo
            h = self.total(k_lo, k_hi).homology()
            return {n: h.get(-n - 1, 0) for n in range(n_lo, n_hi + 1)}
        h = self.total(n_lo, n_hi + 2).homology()
        return {n: h.get(n + 1, 0) for n in range(n_lo, n_hi + 1)}


def bicomplex(kind: str, a: CurvedAlgebraTrunc, W: int | None = None) -> CyclicBicomplexTrunc:
    return CyclicBicomplexTrunc(kind, a, W)


def hc(kind: str, a: CurvedAlgebraTrunc, W: int | None = None, n_range: tuple[int, int] = (0, 5)) -> dict:
    return CyclicBicomplexTrunc(kind, a, W).hc(*n_range)


# simplified forms -----------------------------------------------------------


def _restricted_homology(space: BigradedSpace, d: GradedMap, sub: dict, quotient_mode: bool) -> dict:
    """Homology of the subcomplex (or the quotient complex) given per degree by a Subspace of each block."""
    by = space.by_degree()
    degs = sorted(by)
    cols = d.matrix.columns()
    out = {}
    mats = {}
    reps = {}
    for k in degs:
        blk = by[k]
        S = sub[k]
        if quotient_mode:
            qd = quotient(len(blk), S)
            reps[k] = qd
        mats[k] = blk
    dims = {}
    # induced maps
    induced = {}
    for k in degs:
        blk = by[k]
        lower = by.get(k - 1)
        if lower is None:
            continue
        lidx = {b: i for i, b in enumerate(lower)}

        def dvec(v):
            img: dict = {}
            for i, x in v.items():
                for r, y in cols[space.index[blk[i]]].items():
                    t = lidx[space.basis[r]]
                    img[t] = img.get(t, 0) + x * y
            return {t: y for t, y in img.items() if y}

        if quotient_mode:
            src = [{i: Q(1)} for i in reps[k].representatives]
            tgt_proj = reps[k - 1].projection
            induced[k] = Matrix.from_columns(tgt_proj.rows, [tgt_proj.apply(dvec(v)) for v in src])
        else:
            src = list(sub[k].basis)
            induced[k] = Matrix.from_columns(sub[k - 1].dim, [sub[k - 1].coordinates(dvec(v)) for v in src])
    for k in degs:
        n = len(reps[k].representatives) if quotient_mode else sub[k].dim
        r1 = rank(induced[k]) if k in induced else 0
        r2 = rank(induced[k + 1]) if (k + 1) in induced else 0
        dims[k] = n - r1 - r2
    return dims


def coker_form(b: CyclicBicomplexTrunc, n_lo: int, n_hi: int) -> dict:
    """HC̄_n = H_{n+1}(coker(1−T)) with the differential of the non-bar column."""
    sp = b.space
    by = sp.by_degree()
    sub = {}
    for k, blk in by.items():
        idx = {w: i for i, w in enumerate(blk)}
        vecs = []
        for w in blk:
            img = b.ops.one_minus_T(w)
            vecs.append({idx[x]: v for x, v in img.items() if x in idx})
        sub[k] = Subspace.span(len(blk), vecs)
    h = _restricted_homology(sp, b.vH, sub, quotient_mode=True)
    return {n: h.get(n + 1, 0) for n in range(n_lo, n_hi + 1)}


def ker_form(b: CyclicBicomplexTrunc, n_lo: int, n_hi: int) -> dict:
    """HC̄⁻_n = H_n(ker(1−T)) with the bar differential."""
    sub = _ker_one_minus_T(b)
    h = _restricted_homology(b.space, b.vB, sub, quotient_mode=False)
    return {n: h.get(n, 0) for n in range(n_lo, n_hi + 1)}


def _ker_one_minus_T(b: CyclicBicomplexTrunc) -> dict:
    sp = b.space
    out = {}
    for k, blk in sp.by_degree().items():
        idx = {w: i for i, w in enumerate(blk)}
        cols = [{idx[x]: v for x, v in b.ops.one_minus_T(w).items()} for w in blk]
        out[k] = kernel_basis(Matrix.from_columns(len(blk), cols))
    return out


def cocommutator_subspace(b: CyclicBicomplexTrunc) -> dict:
    """Kernel of Δ̄ − τΔ̄ on each degree block (τ the Koszul-signed flip of tensor factors)."""
    ops = b.ops
    sp = b.space
    out = {}
    for k, blk in sp.by_degree().items():
        cols = []
        keys: dict = {}
        for w in blk:
            col: dict = {}
            for i in range(1, len(w)):
                u, v = w[:i], w[i:]
                kk = keys.setdefault((u, v), len(keys))
                col[kk] = col.get(kk, 0) + 1
                kk2 = keys.setdefault((v, u), len(keys))
                col[kk2] = col.get(kk2, 0) - sign(ops.wdeg(u) * ops.wdeg(v))
            cols.append({r: x for r, x in col.items() if x})
        out[k] = kernel_basis(Matrix.from_columns(len(keys), cols)) if keys else Subspace.full(len(blk))
    return out


# ---------------------------------------------------------------------------
# chain-map identities


def chain_map_checks(a: CurvedAlgebraTrunc, n_max: int = 5) -> AxiomReport:
    """Per-arity identities among T, N, d_{0,i}, d1, d_{2,i} on Ā[1]^{⊗n}, n ≤ n_max."""
    ops = WordOps(a, W=10 ** 9)
    letters = list(a.basis)
    bad: dict = {}

    def note(name, w):
        bad.setdefault(name, repr(w))

    def T_pow(e, j):
        for _ in range(j):
            e = ops.T_elem(e)
        return e

    def apply(f, e):
        out: dict = {}
        for w, c in e.items():
            add_into(out, f(w), c)
        return out

    names = ["d2i_T", "d21_T", "d0i_T", "d00_T", "d0i_Tj", "d1_T", "vH_omT", "vB_N", "omT_N", "N_omT",
             "N_explicit", "T_order"]
    level = [()]
    for n in range(1, n_max + 1):
        level = [w + (x,) for w in level for x in letters]
        for w in level:
            e = {w: Q(1)}
            Tw = ops.T_elem(e)
            for i in range(2, n + 1):
                if apply(lambda u: ops.d2i(u, i), Tw) != ops.T_elem(ops.d2i(w, i - 1)):
                    note("d2i_T", w)
            if n >= 2 and apply(lambda u: ops.d2i(u, 1), Tw) != ops.d2i(w, n):
                note("d21_T", w)
            for i in range(1, n + 1):
                if apply(lambda u: ops.d0i(u, i), Tw) != ops.T_elem(ops.d0i(w, i - 1)):
                    note("d0i_T", w)
            if ops.d0i(w, 0) != ops.T_elem(ops.d0i(w, n)):
                note("d00_T", w)
            if a.theta:
                powers = [e]
                for _ in range(n):
                    powers.append(ops.T_elem(powers[-1]))
                d0_powers = []
                for k in range(n + 1):
                    cur = [ops.d0i(w, k)]
                    for _ in range(n + 1):
                        cur.append(ops.T_elem(cur[-1]))
                    d0_powers.append(cur)
                for i in range(n + 1):
                    for j in range(n):
                        lhs = apply(lambda u: ops.d0i(u, i), powers[j])
                        rhs = d0_powers[i - j][j] if j < i else d0_powers[n - j + i][j + 1]
                        if lhs != rhs:
                            note("d0i_Tj", w)
            if apply(ops.d1, Tw) != ops.T_elem(ops.d1(w)):
                note("d1_T", w)
            if apply(ops.v_hoch, ops.one_minus_T(w)) != apply(ops.one_minus_T, ops.v_bar(w)):
                note("vH_omT", w)
            if apply(ops.v_bar, ops.N(w)) != apply(ops.N, ops.v_hoch(w)):
                note("vB_N", w)
            if apply(ops.one_minus_T, ops.N(w)):
                note("omT_N", w)
            if apply(ops.N, ops.one_minus_T(w)):
                note("N_omT", w)
            if ops.N(w) != ops.N_explicit(w):
                note("N_explicit", w)
            if T_pow(e, n) != e:
                note("T_order", w)
    checks = [Check(nm, nm not in bad, {"n_max": n_max} if nm not in bad else {"witness": bad[nm]}) for nm in names]
    return AxiomReport(checks)


def row_exactness(b: CyclicBicomplexTrunc) -> Check:
    """ker(1−T) = im N and ker N = im(1−T) on every degree block (rows of the periodic bicomplex)."""
    sp = b.space
    for k, blk in sp.by_degree().items():
        idx = {w: i for i, w in enumerate(blk)}
        omt = Matrix.from_columns(len(blk), [{idx[x]: v for x, v in b.ops.one_minus_T(w).items()} for w in blk])
        nm = Matrix.from_columns(len(blk), [{idx[x]: v for x, v in b.ops.N(w).items()} for w in blk])
        if kernel_basis(omt) != image_basis(nm) or kernel_basis(nm) != image_basis(omt):
            return Check("row_exactness", False, {"witness_degree": k})
    return Check("row_exactness", True, {})


def hochschild_column_check(a: CurvedAlgebraTrunc, W: int | None = None) -> Check:
    """The non-bar column differential equals minus the Hochschild differential on reduced chains."""
    b = CyclicBicomplexTrunc("plus", a, W)
    h = HochschildTrunc(UnitalAlgebra.from_curved(a), None, b.W, check=False)
    one = ("a", 0, 0)
    for w in b.words:
        lhs = b.ops.v_hoch(w)
        rhs = {k: -v for k, v in h._d(w).items() if k[0] != one and b.ops.weight(k) <= b.W}
        if lhs != rhs:
            return Check("hochschild_column", False, {"witness": repr(w)})
    return Check("hochschild_column", True, {"words": len(b.words)})


# ---------------------------------------------------------------------------
# noncommutative forms of the cobar model


class XPlusComplex:
    """X⁺(R) for R = Ω(C) cut at weight ≤ D: columns j ≥ 0, R̄ for even j, V⊗R for odd j.

    V⊗R is stored as words (v,) + q with v a reduced coalgebra label.
    """

    def __init__(self, s: QlcSplit, D: int, L: int | None = None, coalgebra: CurvedCoalgebraTrunc | None = None):
        self.split = s
        self.D = D
        self.L = D if L is None else L
        self.c = c = coalgebra if coalgebra is not None else CurvedCoalgebraTrunc(s, D)
        self.cobar = om = CobarTrunc(c, D)
        self.letters = om.letters
        self.R = om.space
        nonempty = [w for w in om.space.basis if w]
        self.Rbar = BigradedSpace(nonempty, {w: om.space.degree[w] for w in nonempty},
                                  {w: om.space.weight[w] for w in nonempty}, "R̄")
        self.VR = BigradedSpace(nonempty, {w: om.space.degree[w] for w in nonempty},
                                {w: om.space.weight[w] for w in nonempty}, "V⊗R")
        self.dR = GradedMap.from_function(self.Rbar, self.Rbar, self._d_rbar, -1, None)
        self.dVR = GradedMap.from_function(self.VR, self.VR, self._d_vr, -1, None)
        self.beta = GradedMap.from_function(self.VR, self.Rbar, self._beta, 0, 0)
        self.dbar = GradedMap.from_function(self.Rbar, self.VR, self._dbar, 0, 0)

    def vdeg(self, x) -> int:
        return self.c.degree(x) - 1

    def wd(self, w) -> int:
        return sum(self.vdeg(x) for x in w)

    def _d_R(self, w) -> dict:
        return self.cobar.d({w: Q(1)})

    def _d_rbar(self, w) -> dict:
        return {k: v for k, v in self._d_R(w).items() if k}

    def _d_vr(self, w) -> dict:
        c = self.c
        v, q = w[0], w[1:]
        out: dict = {}
        for t, y in c.d(v).items():  # d_V(v) = -s⁻¹ d_C(c)
            add_into(out, {(t,) + q: Q(1)}, -y)
        for qq, y in self._d_R(q).items():
            add_into(out, {(v,) + qq: Q(1)}, sign(self.vdeg(v)) * y)
        for (x1, x2), coef in c.reduced_delta(v).items():
            d1, d2 = self.vdeg(x1), self.vdeg(x2)
            add_into(out, {(x2,) + q + (x1,): Q(1)}, sign(d1 * (1 + d2 + self.wd(q))) * coef)
            add_into(out, {(x1, x2) + q: Q(1)}, sign(d1) * coef)
        return out

    def _beta(self, w) -> dict:
        v, q = w[0], w[1:]
        out = {w: Q(1)}
        add_into(out, {q + (v,): Q(1)}, -sign(self.vdeg(v) * self.wd(q)))
        return out

    def _dbar(self, w) -> dict:
        out: dict = {}
        for i in range(len(w)):
            head, tail = w[:i], w[i:]
            add_into(out, {(w[i],) + w[i + 1:] + head: Q(1)}, sign(self.wd(head) * self.wd(tail)))
        return out

    def checks(self) -> AxiomReport:
        L = self.L
        short = lambda w: len(w) <= L  # noqa: E731

        def chk(name, m: GradedMap):
            mm = m.matrix
            for r, row in mm.entries.items():
                for col in row:
                    if short(m.source.basis[col]):
                        return Check(name, False, {"witness": repr(m.source.basis[col])})
            return Check(name, True, {"L": L, "N": self.D})

        return AxiomReport([
            chk("beta_dbar", self.beta @ self.dbar),
            chk("dbar_beta", self.dbar @ self.beta),
            chk("dR_squared", self.dR @ self.dR),
            chk("dVR_squared", self.dVR @ self.dVR),
            chk("beta_chain_map", self.dR @ self.beta - self.beta @ self.dVR),
            chk("dbar_chain_map", self.dVR @ self.dbar - self.dbar @ self.dR),
        ])

    def total_homology(self, n_max: int) -> dict:
        """H_n(Tot X⁺) for 0 ≤ n ≤ n_max (internal degrees are ≥ 0 for V in degree 0)."""
        degs = sorted(self.Rbar.by_degree())
        qmin = degs[0] if degs else 0
        bases = {}
        for k in range(-1, n_max + 2):
            items = []
            for j in range(0, k - qmin + 1):
                sp = self.Rbar if j % 2 == 0 else self.VR
                for w in sp.by_degree().get(k - j, []):
                    items.append((j, w))
            bases[k] = items
        diffs = {}
        for k in range(0, n_max + 2):
            idx = {b: i for i, b in enumerate(bases[k - 1])}
            cols = []
            for (j, w) in bases[k]:
                col: dict = {}
                vert = self.dR if j % 2 == 0 else self.dVR
                for t, y in vert({w: Q(1)}).items():
                    col[idx[(j, t)]] = col.get(idx[(j, t)], 0) + sign(j) * y
                if j >= 1:
                    hor = self.beta if j % 2 == 1 else self.dbar
                    for t, y in hor({w: Q(1)}).items():
                        r = idx[(j - 1, t)]
                        col[r] = col.get(r, 0) + y
                cols.append({r: v for r, v in col.items() if v})
            diffs[k] = Matrix.from_columns(len(bases[k - 1]), cols)
        out = {}
        for k in range(0, n_max + 1):
            r1 = rank(diffs[k]) if k in diffs else 0
            r2 = rank(diffs[k + 1])
            out[k] = len(bases[k]) - r1 - r2
        return out


def x_plus(s: QlcSplit, D: int, L: int | None = None) -> XPlusComplex:
    return XPlusComplex(s, D, L)


def r_natural_homology(x: XPlusComplex, n_max: int) -> dict:
    """H_n(R/(k + [R, R])) computed directly from graded commutators of words."""
    om = x.cobar
    sp = om.space
    by = sp.by_degree()
    subs = {}
    for k, blk in by.items():
        idx = {w: i for i, w in enumerate(blk)}
        vecs = []
        for w in blk:
            if not w:
                vecs.append({idx[w]: Q(1)})
                continue
            for i in range(1, len(w)):
                u, v = w[:i], w[i:]
                e = {idx[w]: Q(1)}
                j = idx[v + u]
                e[j] = e.get(j, 0) - sign(x.wd(u) * x.wd(v))
                vecs.append({a: b for a, b in e.items() if b})
        subs[k] = Subspace.span(len(blk), [v for v in vecs if v])
    h = _restricted_homology(sp, om.d, subs, quotient_mode=True)
    return {n: h.get(n, 0) for n in range(0, n_max + 1)}


# ---------------------------------------------------------------------------
# structural comparison X⁺(R) ≅ dual-minus bicomplex of (qA)!


@dataclass
class StructuralIso:
    signs: dict  # (column, word) -> ±1, X⁺ coordinates
    ok: bool
    witness: object = None
    formula_ok: bool = False


def _relabel(w):
    return tuple(dual_label(x) for x in w)


def structural_iso(x: XPlusComplex, b: CyclicBicomplexTrunc, j_max: int) -> StructuralIso:
    """Find and verify a ±1 diagonal isomorphism between columns 0..j_max of X⁺ and the dual-minus
    columns −1..j_max−1, matching every vertical and horizontal component entrywise."""
    # maps in X⁺ coordinates: {(j_src, w_src, j_tgt, w_tgt): coef}
    xm: dict = {}
    for j in range(0, j_max + 1):
        sp = x.Rbar if j % 2 == 0 else x.VR
        vert = x.dR if j % 2 == 0 else x.dVR
        for w in sp.basis:
            for t, y in vert({w: Q(1)}).items():
                xm[(j, w, j, t)] = y
            if j >= 1:
                hor = x.beta if j % 2 == 1 else x.dbar
                for t, y in hor({w: Q(1)}).items():
                    xm[(j, w, j - 1, t)] = y
    bm: dict = {}
    words = set(b.words)
    for j in range(0, j_max + 1):
        pd = j - 1
        for (wi, wo), y in b.dual_vertical(pd).items():
            bm[(j, wi, j, wo)] = y
        if j >= 1:
            for (wi, wo), y in b.dual_horizontal(pd).items():
                bm[(j, wi, j - 1, wo)] = y
    # translate X⁺ words to algebra-side words
    xm_t = {(j, _relabel(w), jt, _relabel(t)): y for (j, w, jt, t), y in xm.items()}
    keys = set(xm_t) | set(bm)
    # propagate signs: bm = S_t · xm · S_s  ⇒  S_t S_s = bm / xm
    adj: dict = {}
    for k in keys:
        u, v = xm_t.get(k, 0), bm.get(k, 0)
        if (u == 0) != (v == 0) or (u and abs(u) != abs(v)):
            return StructuralIso({}, False, k)
        if u:
            a, z = (k[0], k[1]), (k[2], k[3])
            r = 1 if u == v else -1
            adj.setdefault(a, []).append((z, r))
            adj.setdefault(z, []).append((a, r))
    signs: dict = {}
    nodes = [(j, w) for j in range(0, j_max + 1) for w in b.words]
    for n0 in nodes:
        if n0 in signs:
            continue
        signs[n0] = 1
        stack = [n0]
        while stack:
            cur = stack.pop()
            for nb, r in adj.get(cur, []):
                want = signs[cur] * r
                if nb in signs:
                    if signs[nb] != want:
                        return StructuralIso(signs, False, (cur, nb))
                else:
                    signs[nb] = want
                    stack.append(nb)
    return StructuralIso(signs, True, None)


# ---------------------------------------------------------------------------
# comparison report


def les_check(a: CurvedAlgebraTrunc, W: int, n_lo: int, n_hi: int) -> Check:
    """Dimension constraints of HC^n → HC^n_per → HC^{n+2}_− → HC^{n+1}: inside the window every
    term is bounded by the sum of its two neighbours."""
    plus = hc("dual_plus", a, W, (n_lo, n_hi + 1))
    per = hc("dual_per", a, W, (n_lo, n_hi + 1))
    minus = hc("dual_minus", a, W, (n_lo + 2, n_hi + 3))
    seq = []
    for n in range(n_lo, n_hi + 1):
        seq += [("plus", n, plus[n]), ("per", n, per[n]), ("minus", n + 2, minus[n + 2])]
    seq.append(("plus", n_hi + 1, plus[n_hi + 1]))
    for i in range(1, len(seq) - 1):
        if seq[i][2] > seq[i - 1][2] + seq[i + 1][2]:
            return Check("les", False, {"witness": seq[i - 1:i + 2]})
    return Check("les", True, {"sequence": [(k, n, d) for k, n, d in seq]})


@dataclass
class FTReport:
    D: int
    n_max: int
    x_plus: dict  # H_n(Tot X⁺)
    r_natural: dict  # H_n(R♮)
    dual_minus: dict  # n -> H_{n-1} of the dual-minus total complex
    dual_plus: dict  # n -> HC^{-1-n}
    structural: StructuralIso
    x_checks: AxiomReport
    les: Check

    @property
    def dims_agree(self) -> bool:
        return self.x_plus == self.r_natural == self.dual_minus

    @property
    def ok(self) -> bool:
        return self.dims_agree and self.structural.ok and self.x_checks.ok and self.les.passed

    def rows(self) -> list:
        return [(n, self.x_plus[n], self.r_natural[n], self.dual_minus[n]) for n in range(self.n_max + 1)]


def ft_compare(s: QlcSplit, D: int, n_max: int = 5) -> FTReport:
    """Reduced cyclic homology of A through R = Ω((qA)¡) against the dual-minus cyclic cohomology
    of (qA)!, all at weight ≤ D."""
    c = CurvedCoalgebraTrunc(s, D)
    a = dual_curved_algebra(c)
    x = XPlusComplex(s, D, coalgebra=c)
    b = CyclicBicomplexTrunc("dual_minus", a, D)
    dm = b.hc(-n_max, 0)  # HC̄^{-n}_-
    dp = hc("dual_plus", a, D, (-1 - n_max, -1))
    iso = structural_iso(x, b, n_max + 1)
    return FTReport(
        D, n_max,
        x.total_homology(n_max),
        r_natural_homology(x, n_max),
        {n: dm[-n] for n in range(n_max + 1)},
        {n: dp[-1 - n] for n in range(n_max + 1)},
        iso, x.checks(), les_check(a, D, -n_max - 2, 0),
    )
