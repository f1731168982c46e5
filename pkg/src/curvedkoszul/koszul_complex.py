"""Twisted tensor differentials, the total Koszul complex A ⊗_κ C ⊗_κ A, the resolution check and
Hochschild homology of QLC algebras.

All complexes are cut at total weight ≤ N, where the weight of a ⊗ c ⊗ b is
filt(a) + weight(c) + filt(b); no differential raises it, so the cut is a subcomplex.
Homological degree is the coalgebra weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .cobar_bar import Convolution, CurvedTwist, UnitalAlgebra, kappa
from .exact_linalg import Matrix, Q, Subspace, image_basis, kernel_basis, rank, sum_subspaces
from .graded_spaces import BigradedSpace, GradedMap, add_into, sign
from .koszul_dual import AxiomReport, Check, CurvedCoalgebraTrunc, koszulness_certificate
from .qlc_presentation import FilteredAlgebraTrunc, QlcSplit, filtered_basis


# ---------------------------------------------------------------------------
# twisted differentials on C⊗A and A⊗C


class TwistedPair:
    """d^r_f and d^l_f for maps f: C → A on the truncated spaces C⊗A and A⊗C."""

    def __init__(self, alpha: CurvedTwist, N: int):
        self.alpha = alpha
        self.c = c = alpha.coalgebra
        self.a = a = alpha.algebra
        self.N = N
        ca = [(x, u) for x in c.space.basis for u in a.basis if x[1] + a.filtration[u] <= N]
        ac = [(u, x) for u in a.basis for x in c.space.basis if x[1] + a.filtration[u] <= N]
        self.CA = BigradedSpace(ca, {k: c.degree(k[0]) + a.degree[k[1]] for k in ca},
                                {k: k[0][1] + a.filtration[k[1]] for k in ca}, "C⊗A")
        self.AC = BigradedSpace(ac, {k: c.degree(k[1]) + a.degree[k[0]] for k in ac},
                                {k: k[1][1] + a.filtration[k[0]] for k in ac}, "A⊗C")

    # element-level ------------------------------------------------------
    def dr(self, f, key) -> dict:
        """d^r_f(c⊗a) = Σ (-1)^{|f||c'|} c'⊗f(c'')a."""
        deg_f, mf = f
        x, u = key
        out: dict = {}
        for (p, q), coef in self.c.delta(x).items():
            fq = mf.get(q)
            if fq:
                for v, y in self.a.mult(fq, {u: Q(1)}).items():
                    add_into(out, {(p, v): Q(1)}, sign(deg_f * self.c.degree(p)) * coef * y)
        return out

    def dl(self, f, key) -> dict:
        """d^l_f(a⊗c) = Σ (-1)^{|f||a|} a f(c')⊗c''."""
        deg_f, mf = f
        u, x = key
        out: dict = {}
        for (p, q), coef in self.c.delta(x).items():
            fp = mf.get(p)
            if fp:
                for v, y in self.a.mult({u: Q(1)}, fp).items():
                    add_into(out, {(v, q): Q(1)}, sign(deg_f * self.a.degree[u]) * coef * y)
        return out

    def d_ca(self, key) -> dict:
        """d_C ⊗ id + id ⊗ ∇ on C⊗A."""
        x, u = key
        out = {(t, u): v for t, v in self.c.d(x).items()}
        for w, v in self.a.nabla({u: Q(1)}).items():
            add_into(out, {(x, w): Q(1)}, sign(self.c.degree(x)) * v)
        return out

    def d_ac(self, key) -> dict:
        u, x = key
        out = {(w, x): v for w, v in self.a.nabla({u: Q(1)}).items()}
        for t, v in self.c.d(x).items():
            add_into(out, {(u, t): Q(1)}, sign(self.a.degree[u]) * v)
        return out

    # matrices ------------------------------------------------------------
    def _m(self, space, func, deg) -> GradedMap:
        return GradedMap.from_function(space, space, func, deg, None)

    def lemma_checks(self) -> AxiomReport:
        conv = Convolution(self.c, self.a)
        al = self.alpha.as_map()
        dal = conv.partial(al)
        aa = conv.star(al, al)
        Dr = self._m(self.CA, lambda k: self.dr(al, k), -1)
        Dl = self._m(self.AC, lambda k: self.dl(al, k), -1)
        dCA = self._m(self.CA, self.d_ca, -1)
        dAC = self._m(self.AC, self.d_ac, -1)
        checks = []

        def chk(name, lhs, rhs):
            diff = lhs.matrix - rhs.matrix
            nz = diff.first_nonzero()
            checks.append(Check(name, nz is None, {"dim": lhs.source.dim} if nz is None
                                else {"witness": repr(lhs.source.basis[nz[1]])}))

        chk("right_partial", dCA @ Dr + Dr @ dCA, self._m(self.CA, lambda k: self.dr(dal, k), -2))
        chk("right_square", Dr @ Dr, self._m(self.CA, lambda k: self.dr(aa, k), -2))
        chk("left_partial", dAC @ Dl + Dl @ dAC, self._m(self.AC, lambda k: self.dl(dal, k), -2))
        chk("left_square", Dl @ Dl, self._m(self.AC, lambda k: self.dl(aa, k), -2).scale(-1))
        return AxiomReport(checks)


def twisted_differentials(alpha: CurvedTwist, N: int) -> tuple[GradedMap, GradedMap]:
    tp = TwistedPair(alpha, N)
    al = alpha.as_map()
    dr = GradedMap.from_function(tp.CA, tp.CA, lambda k: tp.dr(al, k), -1, None)
    dl = GradedMap.from_function(tp.AC, tp.AC, lambda k: tp.dl(al, k), -1, None)
    return dr, dl


# ---------------------------------------------------------------------------
# total Koszul complex


class TwistedBimoduleComplex:
    """A ⊗_κ C ⊗_κ A with total weight ≤ N.

    D(a⊗c⊗b) = (-1)^{|a|} a⊗d_C(c)⊗b + (-1)^{|a|} a⊗d^r(c⊗b) − d^l(a⊗c)⊗b.
    """

    def __init__(self, s: QlcSplit, N: int, coalgebra: CurvedCoalgebraTrunc | None = None,
                 algebra: FilteredAlgebraTrunc | None = None, check: bool = True):
        self.split = s
        self.N = N
        self.c = c = coalgebra if coalgebra is not None else CurvedCoalgebraTrunc(s, N)
        self.f = f = algebra if algebra is not None else filtered_basis(s, N)
        tw = kappa(s, coalgebra=c, N=N)
        self.kappa = tw
        self.a = a = tw.algebra
        self.alpha = tw.as_map()
        basis = []
        for x in c.space.basis:
            for u in a.basis:
                for v in a.basis:
                    if len(u) + x[1] + len(v) <= N:
                        basis.append((u, x, v))
        basis.sort(key=lambda k: (k[1][1], len(k[0]) + len(k[2]), k))
        self.space = BigradedSpace(basis, {k: k[1][1] for k in basis}, {k: len(k[0]) + k[1][1] + len(k[2]) for k in basis},
                                   "A⊗C⊗A")
        self.D = GradedMap.from_function(self.space, self.space, self._d, -1, None)
        if check:
            sq = self.D @ self.D
            nz = sq.matrix.first_nonzero()
            if nz is not None:
                from .exact_linalg import NotAComplex
                raise NotAComplex(self.space.degree[self.space.basis[nz[1]]], {nz[1]: Q(1)},
                                  f"total Koszul differential squares to a nonzero map at {self.space.basis[nz[1]]}")

    def _d(self, key) -> dict:
        u, x, v = key
        c, a = self.c, self.a
        du = a.degree[u]
        out: dict = {}
        for t, y in c.d(x).items():
            add_into(out, {(u, t, v): Q(1)}, sign(du) * y)
        for (p, q), coef in c.delta(x).items():
            kq = self.kappa.alpha.get(q)
            if kq:
                for w, y in a.mult(kq, {v: Q(1)}).items():
                    add_into(out, {(u, p, w): Q(1)}, sign(du + c.degree(p)) * coef * y)
            kp = self.kappa.alpha.get(p)
            if kp:
                for w, y in a.mult({u: Q(1)}, kp).items():
                    add_into(out, {(w, q, v): Q(1)}, -sign(du) * coef * y)
        return out

    def homology(self) -> dict:
        from .cobar_bar import graded_homology
        return graded_homology(self.space, self.D)

    def element(self, terms: Sequence[tuple]) -> dict:
        """Convenience: build an element from (coef, a_word, c_vector_over_sV_words, b_word)."""
        out: dict = {}
        for coef, u, cvec, v in terms:
            n = len(next(iter(cvec)))
            for lab, y in self.c.coords(n, cvec).items():
                add_into(out, {(u, lab, v): Q(1)}, Q(coef) * y)
        return out


def total_koszul_complex(s: QlcSplit, N: int) -> TwistedBimoduleComplex:
    return TwistedBimoduleComplex(s, N)


def bimodule_identities(t: TwistedBimoduleComplex) -> AxiomReport:
    """(id⊗d^r)(d^l⊗id) = −(d^l⊗id)(id⊗d^r) and id⊗d_C²⊗id = d^l_{uh}⊗id − id⊗d^r_{uh}."""
    c, a = t.c, t.a
    sp = t.space
    al = t.alpha
    uh = (-2, {b: {(): c.h(b)} for b in c.space.basis if c.h(b)})

    def r_part(f):
        def g(key):
            u, x, v = key
            out: dict = {}
            for (p, q), coef in c.delta(x).items():
                fq = f[1].get(q)
                if fq:
                    for w, y in a.mult(fq, {v: Q(1)}).items():
                        add_into(out, {(u, p, w): Q(1)}, sign(a.degree[u] * f[0]) * sign(f[0] * c.degree(p)) * coef * y)
            return out
        return g

    def l_part(f):
        def g(key):
            u, x, v = key
            out: dict = {}
            for (p, q), coef in c.delta(x).items():
                fp = f[1].get(p)
                if fp:
                    for w, y in a.mult({u: Q(1)}, fp).items():
                        add_into(out, {(w, q, v): Q(1)}, sign(f[0] * a.degree[u]) * coef * y)
            return out
        return g

    def dc(key):
        u, x, v = key
        return {(u, y, v): sign(a.degree[u]) * z for y, z in c.d(x).items()}

    R = GradedMap.from_function(sp, sp, r_part(al), -1, None)
    L = GradedMap.from_function(sp, sp, l_part(al), -1, None)
    DC = GradedMap.from_function(sp, sp, dc, -1, None)
    Ruh = GradedMap.from_function(sp, sp, r_part(uh), -2, None)
    Luh = GradedMap.from_function(sp, sp, l_part(uh), -2, None)
    checks = []
    m1 = R @ L + L @ R
    checks.append(Check("left_right_anticommute", m1.is_zero(), {"dim": sp.dim}))
    m2 = DC @ DC - (Luh - Ruh)
    checks.append(Check("dc_squared_is_curvature", m2.is_zero(), {"dim": sp.dim}))
    return AxiomReport(checks)


# ---------------------------------------------------------------------------
# resolution check


@dataclass
class ResolutionReport:
    N: int
    homology: dict
    algebra_dim: int
    xi_rank: int
    xi_kills_boundaries: bool
    certified: bool

    @property
    def ok(self) -> bool:
        return (self.certified and self.xi_kills_boundaries and self.homology.get(0) == self.algebra_dim == self.xi_rank
                and all(v == 0 for k, v in self.homology.items() if k != 0))


def resolution_check(s: QlcSplit, N: int) -> ResolutionReport:
    cert = koszulness_certificate(s, N)
    t = TwistedBimoduleComplex(s, N)
    hom = t.homology()
    f = t.f
    a = t.a
    deg0 = [k for k in t.space.basis if k[1][1] == 0]

    def xi(k):
        u, _, v = k
        return a.mult({u: Q(1)}, {v: Q(1)})

    m = Matrix.from_columns(f.dim, [f.space.vector(xi(k)) for k in deg0])
    kills = True
    for k in t.space.basis:
        if k[1][1] == 1:
            img: dict = {}
            for kk, y in t.D({k: Q(1)}).items():
                add_into(img, xi(kk), y)
            if img:
                kills = False
                break
    return ResolutionReport(N, hom, f.dim, rank(m), kills, cert.ok)


# ---------------------------------------------------------------------------
# Hochschild homology


@dataclass
class HochschildResult:
    method: str
    N: int
    raw: dict  # degree -> dim of H(F≤N)
    raw_lower: dict  # degree -> dim of H(F≤N-2)
    stable: dict  # degree -> rank of H(F≤N-2) -> H(F≤N)

    def rows(self) -> list:
        return [(k, self.stable[k], (self.raw_lower.get(k, 0), self.raw[k])) for k in sorted(self.raw)]


def _stable_ranks(space: BigradedSpace, d: GradedMap, sub_pred: Callable) -> tuple[dict, dict, dict]:
    """Per degree: dim H(full), dim H(sub), and rank of H(sub) → H(full) for a subcomplex given by a predicate."""
    by = space.by_degree()
    degs = sorted(by)
    cols = d.matrix.columns()
    raw, raw_sub, stable = {}, {}, {}
    for k in degs:
        here = by[k]
        idx = {b: i for i, b in enumerate(here)}
        below = by.get(k - 1, [])
        bidx = {b: i for i, b in enumerate(below)}
        above = by.get(k + 1, [])
        dk = Matrix.from_columns(len(below), [{bidx[space.basis[r]]: v for r, v in cols[space.index[b]].items()}
                                             for b in here])
        dk1 = Matrix.from_columns(len(here), [{idx[space.basis[r]]: v for r, v in cols[space.index[b]].items()}
                                             for b in above])
        sub_here = [i for i, b in enumerate(here) if sub_pred(b)]
        sub_above = [j for j, b in enumerate(above) if sub_pred(b)]
        Z = kernel_basis(dk) if below else Subspace.full(len(here))
        B = image_basis(dk1) if above else Subspace.zero(len(here))
        Zs = kernel_basis(dk.submatrix(list(range(len(below))), sub_here)) if below else Subspace.full(len(sub_here))
        Zs_full = Subspace.span(len(here), [{sub_here[c]: v for c, v in z.items()} for z in Zs.basis])
        Bs = image_basis(dk1.submatrix(list(range(len(here))), sub_above)) if above else Subspace.zero(len(here))
        raw[k] = Z.dim - B.dim
        raw_sub[k] = Zs_full.dim - Bs.dim
        stable[k] = sum_subspaces([Zs_full, B]).dim - B.dim
    return raw, raw_sub, stable


class KoszulHochschildComplex:
    """C ⊗ F A with the commutator-quotient differential, total weight ≤ N.

    The quotient map is a⊗c⊗b ↦ (-1)^{|a|(|c|+|b|)} c⊗ba.
    """

    def __init__(self, s: QlcSplit, N: int):
        self.bimodule = t = TwistedBimoduleComplex(s, N)
        self.c, self.a = t.c, t.a
        basis = [(x, v) for x in t.c.space.basis for v in t.a.basis if x[1] + len(v) <= N]
        basis.sort(key=lambda k: (k[0][1], len(k[1]), k))
        self.space = BigradedSpace(basis, {k: k[0][1] for k in basis}, {k: k[0][1] + len(k[1]) for k in basis}, "C⊗A")
        self.D = GradedMap.from_function(self.space, self.space, self._d, -1, None)

    def q(self, elem: Mapping) -> dict:
        a, c = self.a, self.c
        out: dict = {}
        for (u, x, v), y in elem.items():
            sg = sign(a.degree[u] * (c.degree(x) + a.degree[v]))
            for w, z in a.mult({v: Q(1)}, {u: Q(1)}).items():
                add_into(out, {(x, w): Q(1)}, sg * y * z)
        return out

    def _d(self, key) -> dict:
        x, v = key
        return self.q(self.bimodule.D({((), x, v): Q(1)}))

    def checks(self) -> AxiomReport:
        sq = self.D @ self.D
        bad = None
        for k in self.bimodule.space.basis:
            lhs = self.D(self.q({k: Q(1)}))
            rhs = self.q(self.bimodule.D({k: Q(1)}))
            if lhs != rhs:
                bad = k
                break
        return AxiomReport([Check("quotient_d_squared", sq.is_zero(), {"dim": self.space.dim}),
                            Check("quotient_compatible", bad is None, {} if bad is None else {"witness": repr(bad)})])


def hochschild(s: QlcSplit, N: int, method: str = "koszul", L: int = 3) -> HochschildResult:
    """Two-truncation protocol: raw homology at N and N−2 and the rank of the inclusion-induced map."""
    if method == "koszul":
        cx = KoszulHochschildComplex(s, N)
        raw, raw_sub, stable = _stable_ranks(cx.space, cx.D, lambda k: cx.space.weight[k] <= N - 2)
        return HochschildResult("koszul", N, raw, raw_sub, stable)
    if method == "bar":
        from .cyclic import HochschildTrunc
        f = filtered_basis(s, N)
        alg = UnitalAlgebra.from_filtered(f)
        hc = HochschildTrunc(alg, L, N)
        raw, raw_sub, stable = _stable_ranks(hc.space, hc.d, lambda k: hc.space.weight[k] <= N - 2)
        top = max(raw)
        raw.pop(top, None), raw_sub.pop(top, None), stable.pop(top, None)  # top length is not exact
        return HochschildResult("bar", N, raw, raw_sub, stable)
    raise ValueError(f"unknown method {method!r}")
