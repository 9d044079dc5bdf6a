"""Permutation engine: orders, searches, Sylow structure, and oracles."""

import itertools
from math import factorial
from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from fusionsys import _engine, catalog
from fusionsys.errors import CapExceeded, PreconditionError
from fusionsys.perm import DEGREE_CAP, PermGroup, Permutation, abelian_invariants


def P(text, degree):
    return Permutation.parse(text, degree)


def brute_elements(G):
    """Exhaustive closure of the generators; independent of the chain."""
    elems = {G.identity().images}
    frontier = [G.identity()]
    while frontier:
        new = []
        for h in frontier:
            for g in G.generators:
                x = h * g
                if x.images not in elems:
                    elems.add(x.images)
                    new.append(x)
        frontier = new
    return [Permutation(e) for e in elems]


# --- permutations -----------------------------------------------------------


def test_cycle_parse_and_format():
    g = P("(0 1 2)(3 4)", 6)
    assert g.cycle_string() == "(0 1 2)(3 4)"
    assert g.order() == 6
    assert Permutation.parse("()", 4).is_identity()
    assert P("(0 1 2)", 3).inverse() == P("(0 2 1)", 3)


def test_permutation_validation():
    with pytest.raises(PreconditionError):
        Permutation((0, 0, 1))
    with pytest.raises(PreconditionError):
        Permutation.parse("(0 5)", 3)


@given(st.integers(1, 7), st.data())
@settings(max_examples=60, deadline=None)
def test_composition_properties(n, data):
    rng = Random(data.draw(st.integers(0, 10**6)))
    perms = []
    for _ in range(3):
        images = list(range(n))
        rng.shuffle(images)
        perms.append(Permutation(images))
    a, b, c = perms
    assert ((a * b) * c).images == (a * (b * c)).images
    assert (a * a.inverse()).is_identity()
    assert a.conj(b).order() == a.order()


# --- order and membership -----------------------------------------------------


def test_orders_from_spec_examples():
    A5 = PermGroup([P("(0 1 2 3 4)", 5), P("(0 1 2)", 5)])
    assert A5.order() == 60
    assert PermGroup([], 4).order() == 1
    S4 = PermGroup([P("(0 1)", 4), P("(0 1 2 3)", 4)])
    assert S4.order() == 24


def test_order_matches_enumeration_small():
    for label in ["S4", "A5", "D6", "C12", "SL2(3)"]:
        G = catalog.build(label)
        assert G.order() == len(brute_elements(G))


def test_membership_matches_enumeration():
    G = catalog.build("S4")
    elems = {g.images for g in brute_elements(G)}
    for images in itertools.permutations(range(4)):
        assert (Permutation(images) in G) == (images in elems)


def test_degree_cap():
    with pytest.raises(CapExceeded):
        Permutation(range(DEGREE_CAP + 1))


# --- orbits ------------------------------------------------------------------


def test_orbit_examples():
    G = PermGroup([P("(0 1)(2 3)", 4)])
    assert sorted(G.orbit(0)) == [0, 1]
    S4 = catalog.build("S4")
    assert sorted(S4.orbit(2)) == [0, 1, 2, 3]
    triv = PermGroup([], 6)
    assert sorted(triv.orbit(5)) == [5]
    with pytest.raises(PreconditionError):
        triv.orbit(7)


def test_orbit_stabilizer():
    for label in ["S4", "A5", "S5"]:
        G = catalog.build(label)
        for pt in range(0, G.degree, 3):
            orbit = G.orbit(pt)
            stab_order = sum(1 for g in brute_elements(G) if g(pt) == pt)
            assert G.order() == len(orbit) * stab_order


# --- searches ----------------------------------------------------------------


def test_normalizer_centralizer_spec_examples():
    S4 = catalog.build("S4")
    C4 = S4.subgroup([P("(0 1 2 3)", 4)])
    assert S4.normalizer(C4).order() == 8
    V4 = S4.subgroup([P("(0 1)(2 3)", 4), P("(0 2)(1 3)", 4)])
    assert S4.centralizer(V4).order() == 4
    t = S4.transporter(S4.subgroup([P("(0 1)", 4)]), S4.subgroup([P("(2 3)", 4)]))
    assert t is not None
    g = P("(0 1)", 4)
    assert (t * g * t.inverse()).images == P("(2 3)", 4).images


def _brute_normalizer(G, H):
    hset = {h.images for h in brute_elements(H)}
    out = []
    for g in brute_elements(G):
        gi = g.inverse()
        if all((g * Permutation(h) * gi).images in hset for h in hset):
            out.append(g)
    return out


def test_backends_agree():
    A9 = catalog.build("A9")
    subgroups = [
        A9.subgroup([P("(0 1 2)", 9)]),
        A9.subgroup([P("(0 1 2)", 9), P("(3 4 5)", 9)]),
        A9.sylow(3),
    ]
    for H in subgroups:
        assert _engine.natural_normalizer(A9, H).order() == \
            _engine.dense_normalizer(A9, H).order()
        assert _engine.natural_centralizer(A9, H).order() == \
            _engine.dense_centralizer(A9, H).order()
    Q = A9.subgroup([P("(3 4 5)", 9)])
    t = _engine.natural_transporter(A9, subgroups[0], Q)
    assert t is not None and t.parity() == 0


def test_backtrack_backend_agrees_with_brute():
    G = catalog.build("S5")
    rng = Random(3)
    for _ in range(4):
        gens = [G.random_element(rng) for _ in range(2)]
        H = G.subgroup([g ** (g.order() // 2) if g.order() % 2 == 0 else g
                        for g in gens][:1])
        brute = _brute_normalizer(G, H)
        assert _engine.backtrack_normalizer(G, H).order() == len(brute)
        cent = [g for g in brute_elements(G)
                if all((g * h).images == (h * g).images for h in H.generators)]
        assert _engine.backtrack_centralizer(G, H).order() == len(cent)


# --- Sylow and residuals --------------------------------------------------------


def test_sylow_examples():
    assert catalog.build("S4").sylow(2).order() == 8
    assert catalog.build("A9").sylow(3).order() == 81
    assert catalog.build("S3").sylow(5).order() == 1


def test_sylow_conjugates_are_sylow():
    G = catalog.build("A6")
    S = G.sylow(2)
    rng = Random(1)
    for _ in range(3):
        g = G.random_element(rng)
        conj = G.subgroup([h.conj(g) for h in S.generators])
        assert conj.order() == S.order()
        assert conj.is_p_group(2)


def test_p_core_examples():
    S4 = catalog.build("S4")
    K = S4.p_core(2)
    assert K.order() == 4
    assert all(g.order() <= 2 for g in K.generators)
    assert catalog.build("S3").p_core(3).order() == 3
    assert catalog.build("A5").p_core(2).order() == 1


def test_p_core_invariant_under_generators():
    G = catalog.build("S4")
    K = G.p_core(2)
    kelems = {k.images for k in brute_elements(K)}
    for g in G.generators:
        assert {k.conj(g).images for k in brute_elements(K)} == kelems


def test_residual_examples():
    assert catalog.build("S3").op_prime_residual(3).order() == 3
    assert catalog.build("S4").op_prime_residual(2).order() == 24
    assert catalog.build("C6").op_prime_residual(2).order() == 2
    assert catalog.build("S4").op_residual(2).order() == 12
    assert catalog.build("C6").op_residual(2).order() == 3
    assert catalog.build("A5").op_residual(2).order() == 60


def test_op_prime_residual_contains_sylow_conjugates():
    G = catalog.build("S4")
    H = G.op_prime_residual(2)
    S = G.sylow(2)
    rng = Random(0)
    for _ in range(5):
        g = G.random_element(rng)
        assert all(s.conj(g) in H for s in S.generators)


def test_determinism_same_seed():
    G = catalog.build("M11")
    a = G.sylow(2, seed=0)
    b = catalog.build("M11").sylow(2, seed=0)
    assert [g.images for g in a.generators] == [g.images for g in b.generators]


# --- misc --------------------------------------------------------------------


def test_natural_giant_detection():
    assert catalog.build("A9").natural_giant()[0] == "alt"
    assert catalog.build("S5").natural_giant()[0] == "sym"
    assert catalog.build("M11").natural_giant() is None


def test_abelian_invariants():
    C2C4 = PermGroup([P("(0 1)", 6), P("(2 3 4 5)", 6)])
    assert abelian_invariants(C2C4) == (2, 4)
    C6 = catalog.build("C6")
    assert abelian_invariants(C6) == (6,)


def test_action_on_cosets_quotient():
    S4 = catalog.build("S4")
    V4 = S4.subgroup([P("(0 1)(2 3)", 4), P("(0 2)(1 3)", 4)])
    quo, reps = S4.action_on_cosets(V4)
    assert quo.order() == 6
