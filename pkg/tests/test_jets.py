import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatops import tables
from heatops.jets import (MINUS, PLUS, AuxLeak, bracket, build_cole_hopf_derived,
                          closure_check, cole_hopf_suite, diff_against_printed_tables,
                          heat_residual_in_jets, homomorphism_check, in_jet_ring,
                          jet_bracket_report, jet_indices, jet_partial, leibniz_defect,
                          log_ratio, partial_derivation, transport_defect)
from heatops.operators import DiffOperator
from heatops.poly import AUX, PSI, Poly, Var, aux, parse_poly, z
from properties import counted
from strategies import JET_VARS, polys

N = 1000


def P(text, g=None):
    return parse_poly(text, g)


# -- oracle examples -------------------------------------------------------------

def test_jet_partial_shifts_indices():
    assert jet_partial(1, P("psi[1,3]*z1 + l4")) == P("psi[1,1,3]*z1 + psi[1,3]")
    assert jet_partial(3, P("psi[1]^2")) == P("2*psi[1]*psi[1,3]")


def test_log_ratio_by_hand():
    assert log_ratio([1], PLUS) == P("psi[1]")
    assert log_ratio([1, 1], PLUS) == P("psi[1,1] + psi[1]^2")
    assert log_ratio([1, 1], MINUS) == P("-psi[1,1] + psi[1]^2")


def test_heat_residual_genus_one():
    # H2 = 1/2 d1^2 - 1/6 l4 z1^2 (printed), so (H2 phi)/phi in jets
    r = heat_residual_in_jets(1, 1, PLUS)
    assert aux("L2") in r.variables()
    assert r == P("aux[L2] - 1/2*psi[1,1] - 1/2*psi[1]^2 + 1/6*z1^2*l4")


def test_aux_symbols_never_reach_derivations():
    d = partial_derivation(1)
    with pytest.raises(AuxLeak):
        d(Poly.var(aux("lnphi")))


def test_in_jet_ring():
    assert in_jet_ring(P("psi[1,1]*l4 + psi[1,3,5]"))
    assert not in_jet_ring(P("psi[1]"))
    assert not in_jet_ring(P("z1*psi[1,1]"))


def test_jet_indices():
    assert jet_indices(2, 2, 2) == [(1, 1), (1, 3), (3, 3)]
    assert len(jet_indices(3, 1, 6)) == sum(comb(n + 2, 2) for n in range(1, 7))


def test_genus_one_cole_hopf_operator():
    system = build_cole_hopf_derived(1, PLUS)
    assert system.zpart[0] == DiffOperator.parse("-z1*d/dz1")
    assert system.zpart[1] == DiffOperator.parse("-psi[1]*d/dz1")
    assert system.sources[(1, 1)] == P("-1/3*z1*l4 + 1/2*psi[1,1,1]")
    assert not system.problems


def test_genus_one_opposite_sign_flips_transport():
    system = build_cole_hopf_derived(1, MINUS)
    assert system.zpart[1] == DiffOperator.parse("psi[1]*d/dz1")


def _non_pass(rep):
    return [c for c in rep.checks if c.status != "pass"]


def test_diff_genus_one_clean():
    assert not _non_pass(diff_against_printed_tables(1, build_cole_hopf_derived(1, PLUS)))


def test_diff_genus_two_open_question_only():
    bad = _non_pass(diff_against_printed_tables(2, build_cole_hopf_derived(2, PLUS)))
    assert [(c.locus, c.data["reason"]) for c in bad] == [("g=2 w[4,3]", "open question")]
    assert bad[0].witness == "-12/5*z3*l4*l6"
    assert bad[0].informational


def test_diff_genus_three_misprints_only():
    bad = _non_pass(diff_against_printed_tables(3, build_cole_hopf_derived(3, PLUS)))
    assert sorted(c.locus for c in bad) == ["g=3 w[2,3]", "g=3 w[6,1]"]
    assert {c.data["reason"] for c in bad} == {"printed entry not weight-homogeneous"}


@pytest.mark.parametrize("g", [1, 2, 3])
def test_opposite_convention_is_a_pure_sign_flip(g):
    bad = _non_pass(diff_against_printed_tables(g, build_cole_hopf_derived(g, MINUS)))
    assert bad
    assert all(c.informational for c in bad)
    assert {c.data["reason"] for c in bad} <= {"sign convention",
                                               "printed entry not weight-homogeneous"}


@pytest.mark.parametrize("g", [1, 2, 3])
def test_cole_hopf_suite_passes(g):
    assert cole_hopf_suite(g).passed


@pytest.mark.parametrize("g", [1, 2])
def test_jet_brackets(g):
    rep = jet_bracket_report(g, PLUS, 6)
    assert rep.checks and rep.passed


@pytest.mark.parametrize("g", [1, 2])
def test_closure_and_homomorphism(g):
    assert closure_check(g, 5).passed
    assert homomorphism_check(g).passed


def test_corrupted_bracket_table_detected(monkeypatch):
    table = dict(tables.JET_BRACKETS[1])
    table[(("d", 1), ("L", 1))] = (None, ["psi[1,1]"])
    monkeypatch.setitem(tables.JET_BRACKETS, 1, table)
    rep = jet_bracket_report(1, PLUS, 4)
    bad = rep.failures()
    assert len(bad) == 1 and "psi" in bad[0].witness


# -- properties ------------------------------------------------------------------

def _psi_values(p: Poly, conv: int, labels, max_order):
    """psi_I -> conv * d_I p for every multi-index up to max_order."""
    out = {}
    for I in jet_indices(len(labels), 1, max_order):
        q = p
        for k in I:
            q = q.partial(z(k))
        out[Var(PSI, I)] = q * conv
    return out


@settings(max_examples=N)
@given(polys([z(1), z(3)], 3, 2, 2), st.lists(st.sampled_from([1, 3]), min_size=1, max_size=4),
       st.sampled_from([PLUS, MINUS]), st.randoms(use_true_random=False))
@counted("jet chain-rule coherence")
def test_chain_rule_coherence(p, labels, conv, rnd):
    """phi = exp(p): phi^-1 d_I phi = prod (d_j + p_j) applied to 1, in any order."""
    ratio = log_ratio(labels, conv)
    for v, val in _psi_values(p, conv, [1, 3], len(labels)).items():
        if v in ratio.variables():
            ratio = ratio.subs(v, val)
    order = list(labels)
    rnd.shuffle(order)
    direct = Poly.const(1)
    for j in order:
        direct = direct.partial(z(j)) + direct * p.partial(z(j))
    assert ratio == direct


@settings(max_examples=N)
@given(st.sampled_from([1, 2, 3]), st.data())
@counted("jet chain-rule coherence")
def test_transport_coherence(g, data):
    """Differentiating L psi_I by any label agrees with the derived L psi_{I+j}."""
    labels = [2 * i + 1 for i in range(g)]
    k = data.draw(st.integers(0, 2 * g - 1))
    index = tuple(sorted(data.draw(st.lists(st.sampled_from(labels), min_size=1, max_size=4))))
    j = data.draw(st.sampled_from(labels))
    conv = data.draw(st.sampled_from([PLUS, MINUS]))
    assert not transport_defect(g, k, index, j, conv)


def _derivation_pool():
    out = [partial_derivation(1), partial_derivation(3)]
    for g in (2,):
        system = build_cole_hopf_derived(g, PLUS)
        out += [system.derivation(k) for k in range(2 * g)]
    out.append(bracket(out[2], out[3]))
    out.append(bracket(out[0], out[4]))
    return out


POOL = _derivation_pool()


@settings(max_examples=N)
@given(st.integers(0, len(POOL) - 1), polys(JET_VARS + [z(1), z(3)], 3, 2, 2),
       polys(JET_VARS + [z(1), z(3)], 3, 2, 2))
@counted("derivation Leibniz")
def test_derivation_leibniz(i, e, f):
    D = POOL[i]
    assert not leibniz_defect(D, e, f)
    assert D(e + f) == D(e) + D(f)
    assert not D(Poly.const(Fraction(3, 7)))


def test_no_aux_in_derived_actions():
    rng = random.Random(0)
    system = build_cole_hopf_derived(3, PLUS)
    for _ in range(50):
        k = rng.randrange(6)
        I = tuple(sorted(rng.choice([1, 3, 5]) for _ in range(rng.randint(1, 4))))
        img = system.derivation(k).image(Var(PSI, I))
        assert all(v.kind != AUX for v in img.variables())
