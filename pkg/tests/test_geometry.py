import itertools
from fractions import Fraction

import numpy as np
import pytest

from primfix.digraph import complement, is_connected, srg_feasible, srg_parameters
from primfix.geometry import (GF, FieldElement, check_row_parameters, constructible_rows,
                              hermitian_space, isotropic_line_graph, nonsingular_points,
                              normalize, orthogonality_graph, projective_points,
                              quadratic_space, row_graph, singular_points, srg_catalog,
                              standard_space, tangent_line_graph, totally_isotropic_lines)

from oracles import srg_brute


@pytest.mark.parametrize("q", [2, 3, 4])
def test_field_axioms_exhaustive(q):
    els = [FieldElement(q, v) for v in range(q)]
    zero, one = FieldElement(q, 0), FieldElement(q, 1)
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a and a * b == b * a
        assert (a - b) + b == a
    for a in els:
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        if a != zero:
            assert a * a.inverse() == one
            assert a / a == one


def test_gf4_frobenius():
    for v in range(4):
        x = FieldElement(4, v)
        assert x.frobenius().frobenius() == x
    assert FieldElement(4, 2).frobenius() == FieldElement(4, 3)
    assert all(FieldElement(4, v).frobenius() == FieldElement(4, v) for v in (0, 1))
    # w**2 = w + 1
    w = FieldElement(4, 2)
    assert w * w == w + FieldElement(4, 1)


def test_field_rejects():
    with pytest.raises(ValueError):
        GF(5)
    with pytest.raises(ValueError):
        FieldElement(3, 3)
    with pytest.raises(ZeroDivisionError):
        GF(3).inv(0)


def test_projective_points_normalized_lex():
    pts = projective_points(3, 3)
    assert len(pts) == 13
    assert pts.tolist() == sorted(pts.tolist())
    assert all(row[(row != 0).argmax()] == 1 for row in pts)
    assert normalize((0, 2, 1), 3) == (0, 1, 2)


@pytest.mark.parametrize("q, dim, kind, count", [
    (3, 5, "parabolic", 40), (2, 6, "+", 35), (2, 6, "-", 27), (3, 4, "+", 16), (3, 4, "-", 10),
])
def test_singular_point_counts(q, dim, kind, count):
    space = quadratic_space(q, dim, kind)
    assert space.is_nondegenerate()
    assert len(singular_points(space)) == count


def test_polar_form_alternating_over_gf2():
    for kind in ("+", "-"):
        space = quadratic_space(2, 6, kind)
        vecs = space.vectors()
        b = space.polar_matrix(vecs, vecs)
        assert (b.diagonal() == 0).all()


def test_polar_is_q_difference():
    space = quadratic_space(3, 5, "parabolic")
    rng = np.random.default_rng(0)
    for _ in range(50):
        u, v = rng.integers(0, 3, 5), rng.integers(0, 3, 5)
        lhs = (space.Q((u + v) % 3) - space.Q(u) - space.Q(v)) % 3
        assert space.B(u, v) == lhs


def test_hyperbolic_pair_not_orthogonal():
    space = quadratic_space(2, 6, "+")
    e0, e1 = (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0)
    assert space.B(e0, e1) == 1
    g = orthogonality_graph([e0, e1], space)
    assert g.arc_count == 0


def test_degenerate_form_detected():
    from primfix.geometry import FormedSpace
    bad = FormedSpace(3, 3, "quadratic", None, ((1, 0, 0), (0, 0, 0), (0, 0, 0)))
    assert not bad.is_nondegenerate()


def test_standard_space_dispatch():
    assert standard_space("ii", 2).dim == 5
    s = standard_space("iv-", 3)
    assert (s.dim, s.q, s.form_type) == (6, 2, "-")
    h = standard_space("i", 2)
    assert (h.kind, h.q, h.dim) == ("hermitian", 4, 4)
    with pytest.raises(ValueError):
        standard_space("iv+", 2)
    with pytest.raises(ValueError):
        standard_space("i", 3)
    with pytest.raises(ValueError):
        standard_space("ix", 2)


def test_hermitian_isotropic_lines():
    space = hermitian_space()
    assert space.is_nondegenerate()
    assert len(singular_points(space)) == 45
    lines = totally_isotropic_lines(space)
    assert len(lines) == 27
    assert all(len(line) == 5 for line in lines)


def test_u42_graph():
    g = isotropic_line_graph(hermitian_space())
    assert srg_parameters(g) == (27, 10, 1, 5)
    assert srg_brute(g.adjacency) == (27, 10, 1, 5)
    assert row_graph("i", 2).choice == "meet"


def test_parabolic_orthogonality_graph():
    space = quadratic_space(3, 5, "parabolic")
    g = orthogonality_graph(singular_points(space), space)
    assert srg_parameters(g) == (40, 12, 2, 4)


def test_tangent_graph_row_iii():
    built = row_graph("iii", 2)
    assert built.params == (36, 20, 10, 12)
    assert built.choice == "Q=2"
    assert set(built.candidates) == {"Q=1", "Q=2"}


def test_tangent_needs_nonsingular_classes():
    space = quadratic_space(3, 5, "parabolic")
    pts = nonsingular_points(space, 2)
    assert len(pts) == 36
    with pytest.raises(ValueError):
        nonsingular_points(space, 0)
    with pytest.raises(ValueError):
        tangent_line_graph(pts, hermitian_space())


def test_catalog_values():
    rec = srg_catalog("ii", 2)
    assert (rec.d, rec.lam, rec.mu, rec.relfix) == (12, 2, 4, Fraction(2, 5))
    assert rec.v == 13
    rec = srg_catalog("v+", 3)
    assert rec.v == 28 and rec.relfix == Fraction(4, 7)
    rec = srg_catalog("i", 2)
    assert rec.values() == {"v": 27, "d": 10, "lambda": 1, "mu": 5, "relfix": Fraction(7, 27)}
    assert srg_catalog("i", 3).relfix == Fraction(11, 56)


def test_catalog_check_flags_row_ii_v():
    checks = {c.name: c for c in check_row_parameters("ii", 2)}
    assert checks["v"].status == "DISCREPANCY"
    assert checks["v"].measured == 40
    assert all(checks[k].status == "PASS" for k in ("d", "lambda", "mu"))


def test_catalog_check_flags_row_iv():
    plus = {c.name: c for c in check_row_parameters("iv+", 3)}
    minus = {c.name: c for c in check_row_parameters("iv-", 3)}
    assert plus["v"].measured == 35 and plus["v"].status == "DISCREPANCY"
    assert minus["v"].measured == 27 and minus["v"].status == "DISCREPANCY"


def test_every_row_graph_is_srg():
    for row, m in constructible_rows():
        g = row_graph(row, m).graph
        params = srg_parameters(g)
        assert params is not None
        assert srg_feasible(params)
        assert g.is_graph() and not g.has_loops()
        assert srg_parameters(complement(g)) is not None
        if row != "vi":
            assert is_connected(g)


def test_row_vi_m2_is_disconnected():
    # PO+_4(3) case: three disjoint K4
    g = row_graph("vi", 2).graph
    assert srg_parameters(g) == (12, 3, 2, 0)
    assert not is_connected(g)
    assert is_connected(row_graph("vi", 3).graph)
