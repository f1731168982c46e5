from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from curvedkoszul.exact_linalg import Matrix
from curvedkoszul.graded_spaces import (BigradedSpace, GradedMap, direct_sum, dual_map, graded_dual, shift, tensor,
                                        tensor_map)


def space(tag, degs):
    basis = [f"{tag}{i}" for i in range(len(degs))]
    return BigradedSpace(basis, dict(zip(basis, degs)), {b: 0 for b in basis}, tag)


@st.composite
def graded_map(draw, tag, shift_deg):
    src = space(tag + "s", draw(st.lists(st.integers(-2, 2), min_size=1, max_size=3)))
    tgt = space(tag + "t", draw(st.lists(st.integers(-2, 3), min_size=1, max_size=3)))
    cols = []
    for b in src.basis:
        col = {}
        for i, t in enumerate(tgt.basis):
            if tgt.degree[t] == src.degree[b] + shift_deg:
                c = draw(st.integers(-2, 2))
                if c:
                    col[i] = F(c)
        cols.append(col)
    return GradedMap(src, tgt, Matrix.from_columns(tgt.dim, cols), shift_deg, 0)


degrees = st.integers(-1, 2)


def par(e):
    return -1 if e % 2 else 1


@settings(max_examples=40, deadline=None)
@given(st.data(), degrees, degrees)
def test_tensor_map_koszul_sign(data, df, dg):
    f = data.draw(graded_map("f", df))
    g = data.draw(graded_map("g", dg))
    fg = tensor_map(f, g)
    for x in f.source.basis:
        for y in g.source.basis:
            expected = {}
            for u, a in f({x: F(1)}).items():
                for v, b in g({y: F(1)}).items():
                    expected[(u, v)] = par(dg * f.source.degree[x]) * a * b
            assert fg({(x, y): F(1)}) == expected


@settings(max_examples=40, deadline=None)
@given(st.data(), degrees, degrees)
def test_tensor_interchange_law(data, d1, d2):
    f = data.draw(graded_map("f", d1))
    g = data.draw(graded_map("g", d2))
    f2 = GradedMap.identity(f.target)
    g2 = GradedMap.identity(g.target)
    # (f ⊗ 1)(1 ⊗ g) = f ⊗ g and (1 ⊗ g)(f ⊗ 1) = (-1)^{|f||g|} f ⊗ g
    rhs = tensor_map(f, g)
    lhs = tensor_map(f, g2) @ tensor_map(GradedMap.identity(f.source), g)
    assert lhs.matrix == rhs.matrix
    alt = tensor_map(f2, g) @ tensor_map(f, GradedMap.identity(g.source))
    assert alt.matrix == rhs.matrix.scale(par(d1 * d2))


@settings(max_examples=40, deadline=None)
@given(st.data(), degrees)
def test_dual_map_pairing(data, df):
    f = data.draw(graded_map("f", df))
    fs = dual_map(f)
    ys = graded_dual(f.target)
    xs = graded_dual(f.source)
    for i, xi in enumerate(ys.basis):
        img = fs({xi: F(1)})
        for j, v in enumerate(f.source.basis):
            lhs = img.get(xs.basis[j], 0)
            rhs = f({v: F(1)}).get(f.target.basis[i], 0)
            assert lhs == par(df * ys.degree[xi]) * rhs


def test_dual_is_involutive_on_spaces():
    v = space("v", [0, 1, 2])
    assert graded_dual(graded_dual(v)) == v
    assert [graded_dual(v).degree[b] for b in graded_dual(v).basis] == [0, -1, -2]


def test_shift_round_trip():
    v = space("v", [0, 1])
    s = shift(v, 1)
    assert [s.degree[b] for b in s.basis] == [1, 2]
    assert shift(s, -1) == v


def test_direct_sum_and_tensor_dimensions():
    a, b = space("a", [0, 1]), space("b", [2, 3, 4])
    t = tensor(a, b)
    assert t.dim == 6 and t.degree[("a1", "b2")] == 5
    assert direct_sum([a, b]).dim == 5


def test_non_homogeneous_map_rejected():
    a, b = space("a", [0]), space("b", [1])
    with pytest.raises(ValueError):
        GradedMap(a, b, Matrix.from_columns(1, [{0: F(1)}]), 0, 0)


def test_negative_weight_rejected():
    with pytest.raises(ValueError):
        BigradedSpace(["x"], {"x": 0}, {"x": -1})
