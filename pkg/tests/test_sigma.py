from fractions import Fraction

import pytest

from heatops.poly import LAMBDA, Poly, lam, parse_poly, z
import heatops.sigma as sigma_mod
from heatops.sigma import (EmptyKernel, GradedSeries, TriangularityViolation, kernel_basis,
                           residual, sigma_suite, unknowns)

SIGMA_G1_W8 = "z1 + 1/60*l4*z1^5 + 1/210*l6*z1^7 - 1/10080*l4^2*z1^9"


def test_genus_one_series():
    sol = kernel_basis(1, [0, 1], 8)
    assert sol.dimension == 1
    assert sol.basis[0].poly() == parse_poly(SIGMA_G1_W8)


def test_genus_one_higher_truncation_extends():
    low = kernel_basis(1, [0, 1], 8).basis[0].poly()
    high = kernel_basis(1, [0, 1], 12).basis[0]
    assert Poly({m: c for m, c in high.poly().terms.items()
                 if sum(v.weight * e for v, e in m if v.kind == LAMBDA) <= 8}) == low


def test_genus_one_weierstrass_cross_check():
    # sigma = z - g2 z^5/240 - g3 z^7/840 - g2^2 z^9/161280 with g2 = -4 l4, g3 = -4 l6
    s = kernel_basis(1, [0, 1], 8).basis[0]
    g2, g3 = Fraction(-4), Fraction(-4)
    assert s.coefficient(((z(1), 5),), ((lam(4), 1),)) == -g2 / 240
    assert s.coefficient(((z(1), 7),), ((lam(6), 1),)) == -g3 / 840
    assert s.coefficient(((z(1), 9),), ((lam(4), 2),)) == -g2 ** 2 / 161280


def test_genus_two_lambda_free_stratum():
    sol = kernel_basis(2, [0, 1, 2], 0)
    assert sol.dimension == 1
    assert sol.basis[0].poly() == parse_poly("z3 - 1/3*z1^3")
    assert sol.stratum_dims == {0: 1}


def test_genus_three_lambda_free_stratum():
    sol = kernel_basis(3, [0, 1, 2], 0)
    assert sol.dimension == 1
    assert sol.basis[0].poly() == parse_poly("z1*z5 - 1/3*z1^3*z3 + 1/45*z1^6 - z3^2")


@pytest.mark.parametrize("g", [2, 3])
def test_three_operators_suffice(g):
    sol = kernel_basis(g, [0, 1, 2], 10)
    full = kernel_basis(g, range(2 * g), 10)
    assert [b.poly() for b in sol.basis] == [b.poly() for b in full.basis]
    for b in sol.basis:
        for k in range(3, 2 * g):
            assert not residual(g, b, k)


def test_two_operators_do_not_suffice_for_genus_two():
    sol = kernel_basis(2, [0, 1], 4)
    assert sol.dimension > 1


def test_series_invariants():
    s = kernel_basis(2, [0, 1, 2], 8).basis[0]
    assert isinstance(s, GradedSeries)
    assert s.poly().weight() == -3
    assert all(isinstance(c, Fraction) for c in s.coefficients.values())
    assert not residual(2, s, 0, truncate=False)
    rows = s.rows()
    assert rows[0][0] == 0 and [r[0] for r in rows] == sorted(r[0] for r in rows)


def test_unknowns_cover_strata():
    keys = unknowns(2, 4)
    assert (((z(3), 1),), ()) in keys and (((z(1), 3),), ()) in keys
    assert len(keys) == 2 + len([k for k in keys if k[1]])


def test_bad_operator_sets():
    with pytest.raises(ValueError):
        kernel_basis(2, [1, 2], 4)
    with pytest.raises(ValueError):
        kernel_basis(2, [0, 7], 4)
    with pytest.raises(ValueError):
        kernel_basis(2, [0, 1], -1)


def test_normalization_is_configurable(monkeypatch):
    monkeypatch.setitem(sigma_mod.NORMALIZATION, 2, ((z(1), 3),))
    assert kernel_basis(2, [0, 1, 2], 0).basis[0].poly() == parse_poly("z1^3 - 3*z3")


def test_empty_kernel(monkeypatch):
    def broken(g, k, key):
        zm, lm = key
        return {zm + lm: Fraction(1)}
    monkeypatch.setattr(sigma_mod, "_image", broken)
    with pytest.raises(EmptyKernel):
        kernel_basis(2, [0, 1, 2], 0)


def test_triangularity_violation(monkeypatch):
    def lowering(g, k, key):
        return {(): Fraction(1)}
    monkeypatch.setattr(sigma_mod, "_image", lowering)
    with pytest.raises(TriangularityViolation):
        kernel_basis(1, [0, 1], 4)


def test_sigma_suite_reports_kernel_dims():
    rep = sigma_suite(2, 6)
    assert rep.passed
    dims = rep.find("kernel dimensions (g=2, W=6)")
    assert dims.informational and dims.data["stratum_dims"]["0"] == 1
