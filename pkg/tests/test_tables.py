"""Monomial groups, parameter tables, arithmetic, and the predictor."""

import itertools
import random

import pytest

from fusionsys import catalog, numth
from fusionsys.errors import PreconditionError
from fusionsys.tables import (MonomialGroup, Prediction, find_dual_prime,
                              index_identity, monomial, ord_p, predict,
                              table_params, v_p)

MONOMIAL_CASES = [
    # (m, k, n, ell, p) with k | m | p-1
    (1, 1, 2, 1, 2), (1, 1, 3, 2, 2),
    (2, 1, 2, 1, 3), (2, 2, 2, 2, 3), (2, 1, 3, 1, 3), (2, 2, 3, 1, 3),
    (3, 1, 2, 1, 7), (3, 3, 3, 1, 7),
    (4, 1, 2, 1, 5), (4, 2, 2, 1, 5), (4, 4, 2, 1, 5), (4, 2, 3, 1, 5),
    (4, 4, 3, 1, 5),
]


@pytest.mark.parametrize("m,k,n,ell,p", MONOMIAL_CASES)
def test_monomial_order_formula(m, k, n, ell, p):
    M = monomial(m, k, n, ell, p)
    count = sum(1 for _ in M.elements())
    assert count == M.order() == m**n * __import__("math").factorial(n) // k


def test_monomial_closed_under_multiplication_and_inverse():
    M = monomial(4, 2, 3, 1, 5)
    elems = list(M.elements())
    eset = set(elems)
    rng = random.Random(0)
    for _ in range(300):
        a = rng.choice(elems)
        b = rng.choice(elems)
        assert M.multiply(a, b, M.mod) in eset
    # inverses exist inside the set
    for a in rng.sample(elems, 40):
        assert any(M.multiply(a, b, M.mod) == (tuple([1] * M.n), tuple(range(M.n)))
                   for b in elems)


def test_monomial_spec_orders():
    assert monomial(4, 2, 3, 1, 5).order() == 192
    assert monomial(2, 2, 3, 1, 3).order() == 24
    for n in (1, 2, 3):
        assert monomial(1, 1, n, 1, 3).order() == __import__("math").factorial(n)


def test_monomial_matches_wreath():
    for m, n, p in [(2, 3, 3), (4, 2, 5), (2, 2, 3)]:
        A = monomial(m, 1, n, 1, p).permutation_group()
        B = catalog.wreath_cyclic(m, n)
        assert A.order() == B.order()
        assert A.abelian_invariants_of_abelianization() == \
            B.abelian_invariants_of_abelianization()
        assert A.derived_series_lengths() == B.derived_series_lengths()


def test_monomial_semidirect_shape():
    # G(m,m,n) has order m^(n-1) n!
    M = monomial(3, 3, 3, 1, 7)
    assert M.order() == 3**2 * 6
    M = monomial(2, 2, 3, 1, 3)
    G = M.permutation_group()
    assert G.order() == 24


def test_monomial_parameter_validation():
    with pytest.raises(PreconditionError):
        monomial(3, 2, 2, 1, 7)   # k does not divide m
    with pytest.raises(PreconditionError):
        monomial(4, 1, 2, 1, 3)   # m does not divide p-1


def test_arithmetic_examples():
    assert ord_p(2, 3) == 2
    assert ord_p(2, 5) == 4
    assert v_p(80, 5) == 1
    assert v_p(81, 3) == 4


def test_find_dual_prime():
    assert find_dual_prime(5, 3) == 2
    r = find_dual_prime(3, 2)
    assert ord_p(r, 3) == ord_p((-2) % 3, 3)
    assert v_p(r**2 - 1, 3) == v_p(2**2 - 1, 3)
    r = find_dual_prime(5, 7)
    assert ord_p(r, 5) == ord_p((-7) % 5, 5)


def test_table_params_cases():
    tp = table_params("b", 3, 2, 3)
    assert (tp.m, tp.mu, tp.kappa, tp.ell) == (2, 2, 3, 1)
    assert tp.aut_A_descriptor()["aut_F_A_order"] == 48
    assert tp.aut_A_descriptor()["aut_opprime_A_order"] == 24
    tp = table_params("a", 3, 4, 6, 1)
    assert (tp.m, tp.kappa) == (1, 6)
    tp = table_params("a", 5, 2, 10, 1)
    assert (tp.m, tp.kappa) == (4, 2)
    tp = table_params("a", 3, 2, 4, -1)
    assert (tp.m, tp.kappa, tp.ell) == (1, 4, 1)


def test_index_identities_catalog_range():
    for q in (2, 3, 4, 5):
        for p in (3, 5, 7):
            if q % p == 0:
                continue
            for n in (1, 2, 3):
                for kind in ("gl_step", "sp", "so_odd"):
                    lhs, rhs = index_identity(kind, n, q, p)
                    assert lhs == rhs, (kind, n, q, p)
                for eps in (1, -1):
                    lhs, rhs = index_identity("go_even", n, q, p, eps)
                    assert lhs == rhs
                    if n >= 1:
                        lhs, rhs = index_identity("so_step", n, q, p, eps)
                        assert lhs == rhs


def test_predict_spec_examples():
    pr = predict("A11", 3)
    assert pr.gamma_order == 2 and pr.realizer == "A9" and pr.opprime_simple
    pr = predict("Sp6(2)", 3)
    assert pr.gamma_order == 2 and pr.gamma_structure == "cyclic"
    pr = predict("M12", 3)
    assert pr.simple and pr.gamma_order == 1
    pr = predict("PSU4(2)", 3)
    assert pr.gamma_order == 1 and pr.simple
    pr = predict("PSp4(3)", 3)
    assert pr.case == "defining" and pr.simple


def test_predict_abelian_guard():
    # the table rows need a nonabelian Sylow subgroup (kappa >= p); small
    # symplectic groups at p = 5 fall outside and are flagged, not forced
    pr = predict("PSp4(7)", 5)
    assert pr.case == "cross-char-abelian"
    assert pr.abelian_sylow and pr.gamma_order is None
    pr = predict("A8", 3)
    assert pr.abelian_sylow and pr.gamma_order is None


def test_predict_exotic_flag():
    # p >= 5, q not 0 or +-1 mod p, nonabelian Sylow: exotic minimal subsystem
    pr = predict("PSp20(2)", 5)   # m = ord_5(2) = 4, kappa = 40/4 = 10 >= 5
    assert pr.exotic
    assert pr.gamma_order == 4
    pr = predict("PSL5(2)", 31)   # q = 2, p = 31: ord = 5, kappa = 1: abelian
    assert not pr.exotic


def test_predict_alternating_series():
    vals = {7: None, 8: None, 9: 1, 10: 1, 11: 2, 12: 1}
    for n, expected in vals.items():
        pr = predict(f"A{n}", 3)
        assert pr.gamma_order == expected
