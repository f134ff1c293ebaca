from fractions import Fraction
from itertools import combinations

import pytest

from heatops import tables
from heatops.frame import (ShapeViolation, UnsupportedGenus, build_L, build_Q, build_T,
                           check_isomorphism, check_polynomial_lie_axioms, frame_suite,
                           heat_family, jacobi_report, printed_T, shape_check,
                           sufficiency_reduction, T_rows, t_matrix_report,
                           verify_frame_relations)
from heatops.operators import DiffOperator, commutator, decompose
from heatops.poly import Poly, lam, parse_poly


def test_T_genus_one_by_hand():
    T = build_T(1)
    assert T[(2, 2)] == parse_poly("4*l4")
    assert T[(2, 4)] == T[(4, 2)] == parse_poly("6*l6")
    assert T[(4, 4)] == parse_poly("-4/3*l4^2")


@pytest.mark.parametrize("g", [1, 2, 3])
def test_T_matches_transcription(g):
    assert T_rows(build_T(g), g) == printed_T(g)
    assert t_matrix_report(g).passed


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_T_is_symmetric_and_homogeneous(g):
    T = build_T(g)
    for (a, b), p in T.items():
        assert T[(b, a)] == p
        if p:
            assert p.weight() == a + b


def test_L_genus_one():
    L = build_L(1)
    assert L[0] == DiffOperator.parse("4*l4*d/dl4 + 6*l6*d/dl6")
    assert L[1] == DiffOperator.parse("6*l6*d/dl4 - 4/3*l4^2*d/dl6")


def test_unsupported_genus():
    with pytest.raises(UnsupportedGenus):
        build_Q(4)
    with pytest.raises(ValueError):
        build_T(0)


@pytest.mark.parametrize("g,expected", [
    (1, [-1, 0]),
    (2, [-3, 0, -1, Fraction(-1, 2)]),
    (3, [-6, 0, -3, -2, -1, Fraction(-1, 2)]),
])
def test_shape_and_delta_constants(g, expected):
    rep = shape_check(heat_family(g))
    assert rep.passed
    assert [Fraction(c.data["c_k"]) for c in rep.checks] == expected


def test_shape_violation_detected():
    h = dict(tables.H_PRINTED[1])
    h[1] = h[1] + " + z1*d/dl4"
    fam = build_Q(1, h)
    assert not shape_check(fam).passed
    with pytest.raises(ShapeViolation):
        shape_check(fam, strict=True)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_coordinate_action(g):
    fam = heat_family(g)
    T = build_T(g)
    for k, Q in enumerate(fam.Q):
        for s in range(2, 2 * g + 2):
            br = commutator(Q, DiffOperator.mult(Poly.var(lam(2 * s))))
            assert br == DiffOperator.mult(T[(2 * k + 2, 2 * s - 2)])


def test_genus_one_heat_bracket():
    fam = heat_family(1)
    # [Q0, Q2] = 2 Q2 is the Euler relation
    assert fam.bracket("Q", 0, 1) == fam.Q[1].scale(2)


@pytest.mark.parametrize("g", [2, 3])
def test_structure_matrices(g):
    rep = verify_frame_relations(g, jacobi=False)
    assert rep.passed, [c.relation for c in rep.failures()]
    n_pairs = len(tables.BRACKET_ROWS[g])
    assert n_pairs == {2: 3, 3: 10}[g]
    matrix_checks = [c for c in rep.checks if "structure matrix" in c.locus]
    assert len(matrix_checks) == 2 * n_pairs


def test_genus_two_bracket_decomposition_is_unique():
    fam = heat_family(2)
    dec = decompose(fam.bracket("L", 1, 2), fam.L, 2)
    assert dec.unique and not dec.residual


@pytest.mark.parametrize("g", [1, 2, 3])
def test_jacobi(g):
    rep = jacobi_report(g)
    assert rep.passed
    assert len(rep.checks) == 2 * len(list(combinations(range(2 * g), 3)))


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("which", ["L", "Q"])
def test_lie_rinehart_axioms(g, which):
    assert check_polynomial_lie_axioms(g, which).passed


@pytest.mark.parametrize("g", [1, 2, 3])
def test_isomorphism(g):
    assert check_isomorphism(g).passed


def test_sufficiency_genus_two():
    (red,) = sufficiency_reduction(2)
    assert red.target == 3 and red.via == (1, 2)
    assert str(red.expression) == "1/2*[Q2, Q4] - 4/5*l6*Q0 + 4/5*l4*Q2"


def test_sufficiency_genus_three():
    reds = sufficiency_reduction(3)
    assert [r.target for r in reds] == [3, 4, 5]
    assert all(r.verified for r in reds)


def test_perturbed_H_table_fails_with_witness():
    h = dict(tables.H_PRINTED[2])
    h[1] = h[1] + " + 1/5*z1^2*l4"
    fam = build_Q(2, h)
    rep = verify_frame_relations(2, fam, jacobi=False)
    bad = rep.failures()
    assert bad
    assert any(c.witness != "0" and "z1" in c.witness for c in bad)


def test_inhomogeneous_perturbation_is_reported():
    h = dict(tables.H_PRINTED[2])
    h[1] = h[1] + " + 1/5*z1^2*l6"
    rep = verify_frame_relations(2, build_Q(2, h), jacobi=False)
    assert not rep.passed
    assert not shape_check(build_Q(2, h)).passed


@pytest.mark.parametrize("g", [1, 2])
def test_frame_suite(g):
    assert frame_suite(g).passed
