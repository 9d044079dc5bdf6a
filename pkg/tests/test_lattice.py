"""Subgroup lattice enumeration: counts, canonicity, and conjugation data."""

import itertools

import pytest

from fusionsys import catalog
from fusionsys.errors import CapExceeded, PreconditionError
from fusionsys.lattice import SubgroupLattice
from fusionsys.perm import PermGroup, Permutation


def test_spec_counts():
    assert len(SubgroupLattice(catalog.build("C2xC2"), 2)) == 5
    assert len(SubgroupLattice(catalog.dihedral(4), 2)) == 10
    assert len(SubgroupLattice(catalog.build("C9"), 3)) == 3


def brute_subgroups(L):
    """All subgroups by closing every generator subset of size <= 4."""
    n = L.n
    found = set()
    for k in range(0, 5):
        for combo in itertools.combinations(range(1, n), k):
            mask = L._closure(list(combo))
            found.add(mask)
    return found


def test_exhaustive_enumeration_matches_brute():
    for builder, p in [(lambda: catalog.dihedral(4), 2),
                       (lambda: catalog.build("C8"), 2),
                       (lambda: catalog.build("C2xC2xC2"), 2),
                       (lambda: catalog.build("S4").sylow(2), 2),
                       (lambda: catalog.build("SL2(9)").sylow(2), 2)]:
        S = builder()
        L = SubgroupLattice(S, p)
        assert {sg.mask for sg in L.subgroups} == brute_subgroups(L)


def test_identifier_independent_of_generator_order():
    a = Permutation.parse("(0 1 2 3)", 4)
    b = Permutation.parse("(1 3)", 4)
    L1 = SubgroupLattice(PermGroup([a, b]), 2)
    L2 = SubgroupLattice(PermGroup([b * a, a * a, b]), 2)
    assert [sg.elems for sg in L1.subgroups] == [sg.elems for sg in L2.subgroups]


def test_caps_and_preconditions():
    with pytest.raises(CapExceeded):
        SubgroupLattice(catalog.build("C16"), 2, cap=8)
    with pytest.raises(PreconditionError):
        SubgroupLattice(catalog.build("S3"), 2)


def test_normalizer_centralizer_tables():
    S = catalog.build("S4").sylow(2)
    L = SubgroupLattice(S, 2)
    for sg in L.subgroups:
        ns = set(L.ns_elems[sg.id])
        cs = set(L.cs_elems[sg.id])
        assert cs <= ns
        assert set(sg.elems) <= ns
        # brute recheck
        hset = set(sg.elems)
        brute_ns = {g for g in range(L.n)
                    if all(L.conj[g][h] in hset for h in sg.elems)}
        assert ns == brute_ns
    assert L.subgroups[L.center_id].order == 2


def test_s_classes_and_witnesses():
    S = catalog.build("S4").sylow(2)
    L = SubgroupLattice(S, 2)
    for sid in range(len(L)):
        ci = L.s_class_of[sid]
        rep = L.s_class_reps[ci]
        w = L.s_witness[sid]
        assert L.conjugate_subgroup(rep, w) == sid


def test_maximal_subgroups():
    L = SubgroupLattice(catalog.dihedral(4), 2)
    full = L.maximal_subgroups[L.full_id]
    assert len(full) == 3  # D8 has three maximal subgroups
    assert all(L.subgroups[m].order == 4 for m in full)


def test_generated_subgroup_and_exponent():
    L = SubgroupLattice(catalog.build("C9"), 3)
    sid = L.generated_subgroup_id([1])
    assert L.subgroups[sid].order in (3, 9)
    assert L.exponent_of(L.full_id) == 9
