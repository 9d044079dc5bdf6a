"""First cohomology: exact small cases and the vanishing properties."""

import random

import pytest

from fusionsys import catalog
from fusionsys.cohomology import (GModule, gmodule_from_perm_group, h1,
                                  smith_normal_form, z1_b1_orders)
from fusionsys.errors import PreconditionError
from fusionsys.perm import PermGroup
from fusionsys.tables import monomial


def permutation_module(G, p, ell):
    n = G.degree
    return gmodule_from_perm_group(
        G, p, ell, n,
        lambda g: [[1 if g(i) == j else 0 for j in range(n)] for i in range(n)])


def monomial_module(m, k, n, ell, p):
    mg = monomial(m, k, n, ell, p)
    G = mg.permutation_group()
    mats = dict(zip((g.images for g in G.generators),
                    (mg.matrix(x) for x in mg.generators())))
    return gmodule_from_perm_group(G, p, ell, n, lambda g: mats[g.images])


def test_trivial_group():
    M = gmodule_from_perm_group(PermGroup([], 1), 3, 1, 1, lambda g: [[1]])
    assert h1(M) == ()


def test_c2_inversion_on_c3():
    M = gmodule_from_perm_group(catalog.cyclic(2), 3, 1, 1, lambda g: [[-1]])
    assert h1(M) == ()


def test_c3_trivial_on_c3():
    M = gmodule_from_perm_group(catalog.cyclic(3), 3, 1, 1, lambda g: [[1]])
    assert h1(M) == (3,)


def test_monomial_g442_on_c5_squared():
    M = monomial_module(4, 4, 2, 1, 5)
    assert h1(M) == ()


def test_g223_on_c3_cubed():
    # the kernel-automizer module for the heavy classical case
    M = monomial_module(2, 2, 3, 1, 3)
    assert h1(M) == ()


def test_coprime_vanishing_randomized():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.choice([2, 3, 4])
        G = catalog.symmetric(n) if rng.random() < 0.5 else catalog.cyclic(n)
        p = rng.choice([5, 7])
        ell = rng.choice([1, 2]) if n == 2 else 1  # keep |A| under the cap
        M = permutation_module(G, p, ell)
        assert h1(M) == ()


def test_unipotent_nonvanishing():
    M = gmodule_from_perm_group(catalog.cyclic(3), 3, 1, 2,
                                lambda g: [[1, 1], [0, 1]])
    assert h1(M) == (3,)
    z, b, hh = z1_b1_orders(M)
    assert b * hh == z == 9


def test_order_product_invariant():
    for build in [lambda: permutation_module(catalog.symmetric(3), 3, 1),
                  lambda: monomial_module(2, 2, 3, 1, 3),
                  lambda: permutation_module(catalog.cyclic(4), 2, 2)]:
        M = build()
        z, b, hh = z1_b1_orders(M)
        assert b * hh == z


def test_bad_action_rejected():
    with pytest.raises(PreconditionError):
        # order-2 generator mapped to an order-3 matrix is not a homomorphism
        gmodule_from_perm_group(catalog.cyclic(2), 7, 1, 2,
                                lambda g: [[0, 1], [6, 6]])


def test_smith_normal_form_basics():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[4]]) == [4]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
