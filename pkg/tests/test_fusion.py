"""Fusion systems: group realization, closures, products, quotients, dumps."""

import itertools

import pytest

from fusionsys import catalog
from fusionsys.errors import CapExceeded, PreconditionError
from fusionsys.fusion import (abstract_closure, group_fusion, inner_fusion,
                              parse_dump, product, quotient_by_central)
from fusionsys.lattice import SubgroupLattice
from fusionsys.perm import PermGroup, Permutation


def klein_regular():
    a = Permutation.parse("(0 1)(2 3)", 4)
    b = Permutation.parse("(0 2)(1 3)", 4)
    return a, b, PermGroup([a, b], 4)


def find_normal_klein(lat):
    for sg in lat.subgroups:
        if sg.order == 4 and all(lat.elem_order[e] <= 2 for e in sg.elems) \
                and all(len(lat.elements[e].moved_points()) in (0, 4)
                        for e in sg.elems):
            return sg.id
    raise AssertionError("no Klein subgroup found")


def test_sigma4_automizer(shared):
    F = shared.fusion("S4", 2)
    v4 = find_normal_klein(F.lattice)
    assert F.aut_order(v4) == 6
    assert F.is_weakly_closed_id(v4)


def test_a6_sylow_is_dihedral(shared):
    F = shared.fusion("A6", 2)
    lat = F.lattice
    assert lat.n == 8
    assert lat.exponent_of(lat.full_id) == 4  # dihedral of order 8


def test_inner_fusion_automizers():
    S = catalog.build("S4").sylow(2)
    F = inner_fusion(S, 2)
    lat = F.lattice
    for sid in range(len(lat)):
        assert F.aut_order(sid) == len(lat.ns_elems[sid]) // len(lat.cs_elems[sid])


def test_hom_enumeration(shared):
    F = shared.fusion("S4", 2)
    lat = F.lattice
    trans = [i for i in range(1, lat.n)
             if lat.elements[i].cycle_type() == (2,)]
    t1 = lat.generated_subgroup_id([trans[0]])
    t2 = lat.generated_subgroup_id([trans[1]])
    homs = F.hom(t1, t2)
    assert len(homs) == F.hom_count(t1, t2) >= 1
    # inner maps are always present
    assert F.hom_count(t1, t1) >= 1
    # full map derivation is a homomorphism
    m = homs[0]
    full = F.full_map(m)
    for a in lat.subgroups[t1].elems:
        for b in lat.subgroups[t1].elems:
            assert full[lat.mult[a][b]] == lat.mult[full[a]][full[b]]


def test_hom_inner_count_matches_transporter(shared):
    S = catalog.build("S4").sylow(2)
    F = inner_fusion(S, 2)
    lat = F.lattice
    # for inner fusion, hom counts equal S-transporter counts mod centralizer
    for P in range(1, min(len(lat), 6)):
        for Q in range(1, min(len(lat), 6)):
            count = F.hom_count(P, Q)
            brute = 0
            pelems = lat.subgroups[P].elems
            qmask = lat.subgroups[Q].mask
            seen = set()
            for g in range(lat.n):
                conj = tuple(lat.conj[g][e] for e in pelems)
                if all((qmask >> x) & 1 for x in conj) and conj not in seen:
                    seen.add(conj)
                    brute += 1
            assert count == brute


def test_abstract_closure_empty_is_inner():
    S = catalog.build("S4").sylow(2)
    assert abstract_closure(S, 2, []).equal_systems(inner_fusion(S, 2))


def test_abstract_closure_c3_inversion():
    S = catalog.build("C3")
    z = S.generators[0]
    E = abstract_closure(S, 3, [([z], [z * z])])
    assert E.aut_order(E.lattice.full_id) == 2


def test_abstract_closure_matches_a4(shared):
    a, b, V = klein_regular()
    E = abstract_closure(V, 2, [([a, b], [b, a * b])])
    assert E.aut_order(E.lattice.full_id) == 3
    FA4 = group_fusion(catalog.build("A4"), 2, sylow=V)
    assert E.equal_systems(FA4)
    assert not FA4.equal_systems(inner_fusion(V, 2))


def test_closure_idempotence(shared):
    F = shared.fusion("S4", 2)
    lat = F.lattice
    seeds = []
    for view in F.classes():
        rep_sg = lat.subgroups[view.rep]
        srcs = [lat.elements[g] for g in rep_sg.gens]
        gen_pos = [rep_sg.pos_of[g] for g in rep_sg.gens]
        for aut in view.aut.generators:
            seeds.append((srcs, [lat.elements[rep_sg.elems[aut(i)]] for i in gen_pos]))
        for member in view.members:
            if member != view.rep:
                w = view.witness[member]
                seeds.append((srcs, [lat.elements[w[i]] for i in gen_pos]))
    E = abstract_closure(F.S, 2, seeds)
    assert E.equal_systems(F)


def test_closure_cap():
    F9 = catalog.build("A9")
    with pytest.raises(CapExceeded):
        group_fusion(F9, 3, closure_cap=10)


def test_divisibility_invariant(shared):
    # |Aut_S(P)| divides |Aut_F(P)| divides |Aut(P)|
    F = shared.fusion("S4", 2)
    lat = F.lattice
    for sid in range(1, len(lat)):
        aut_s = len(lat.ns_elems[sid]) // len(lat.cs_elems[sid])
        aut_f = F.aut_order(sid)
        assert aut_f % aut_s == 0
        full_aut = _brute_aut_order(lat, sid)
        assert full_aut % aut_f == 0


def _brute_aut_order(lat, sid):
    sg = lat.subgroups[sid]
    count = 0
    nonid = sg.elems[1:]
    for images in itertools.permutations(nonid):
        table = dict(zip(sg.elems, (0,) + images))
        if all(table[lat.mult[a][b]] == lat.mult[table[a]][table[b]]
               for a in sg.elems for b in sg.elems):
            count += 1
    return count


def test_f_conjugates_isomorphic(shared):
    F = shared.fusion("A6", 2)
    lat = F.lattice
    for view in F.classes():
        orders = None
        for m in view.members:
            mult = sorted(lat.elem_order[e] for e in lat.subgroups[m].elems)
            if orders is None:
                orders = mult
            assert mult == orders


def test_product_matches_group_fusion():
    S3 = catalog.build("S3")
    F3 = group_fusion(S3, 3, label="S3")
    P = product(F3, F3)
    Ssyl = catalog.direct_product(F3.S, F3.S)
    F33 = group_fusion(catalog.build("S3xS3"), 3, sylow=Ssyl)
    assert P.equal_systems(F33)


def test_product_with_trivial_factor():
    S3 = catalog.build("S3")
    F3 = group_fusion(S3, 3)
    T = inner_fusion(PermGroup([], 1), 3)
    P = product(F3, T)
    assert len(P.classes()) == len(F3.classes())
    assert [P.aut_order(s) for s in range(len(P.lattice))] == \
           [F3.aut_order(s) for s in range(len(F3.lattice))]


def test_quotient_by_central():
    F = group_fusion(catalog.build("SL2(3)"), 2, label="SL2(3)")
    lat = F.lattice
    z_id = lat.center_id
    assert lat.subgroups[z_id].order == 2
    Q = quotient_by_central(F, z_id)
    assert Q.lattice.n == 4
    FP = group_fusion(catalog.build("PSL2(3)"), 2, label="PSL2(3)")
    assert Q.fingerprint() == FP.fingerprint()
    # trivial Z: unchanged
    assert quotient_by_central(F, lat.trivial_id) is F


def test_quotient_requires_central(shared):
    F = shared.fusion("S4", 2)
    v4 = find_normal_klein(F.lattice)
    with pytest.raises(PreconditionError):
        quotient_by_central(F, v4)


def test_centralizer_system(shared):
    from fusionsys.fusion import centralizer_system
    F = shared.fusion("S4", 2)
    lat = F.lattice
    z = lat.center_id
    E = centralizer_system(F, z)
    # C_G(Z(S)) has Sylow S itself and inner fusion on it
    assert E.lattice.n == lat.n
    assert E.equal_systems(inner_fusion(F.S, 2)) or E.group.order() == 8
    # U = 1 gives back a system with the same classes as F
    E0 = centralizer_system(F, lat.trivial_id)
    assert E0.fingerprint() == F.fingerprint()


def test_centralizer_system_a6(shared):
    from fusionsys.fusion import centralizer_system
    F = shared.fusion("A6", 2)
    lat = F.lattice
    E = centralizer_system(F, lat.center_id)
    assert E.group.order() == 8


def test_dump_roundtrip(shared):
    F = shared.fusion("S4", 2)
    text = F.dump()
    E = parse_dump(text)
    assert E.equal_systems(F)


def test_morphism_validation():
    S = catalog.build("C3")
    z = S.generators[0]
    with pytest.raises(PreconditionError):
        # z -> identity is not injective on <z>
        abstract_closure(S, 3, [([z], [Permutation.identity(3)])])


def test_dump_regression_fixture(shared):
    import pathlib
    fixture = pathlib.Path(__file__).parent / "fixtures" / "s4_p2.dump"
    F = shared.fusion("S4", 2)
    assert F.dump() == fixture.read_text()
    assert parse_dump(fixture.read_text()).equal_systems(F)


def test_hom_count_matches_transporter_cosets(shared):
    # group-realized systems: one morphism per centralizer coset of the
    # transporter sets, counted against a brute scan of the ambient group
    F = shared.fusion("A6", 2)
    G = F.group
    lat = F.lattice
    gelems = list(G.elements())
    for P in range(1, min(len(lat), 9)):
        for Q in range(1, min(len(lat), 9)):
            pelems = [lat.elements[e] for e in lat.subgroups[P].elems]
            qset = {lat.elements[e].images for e in lat.subgroups[Q].elems}
            maps = set()
            for g in gelems:
                gi = g.inverse()
                conj = tuple((g * x * gi).images for x in pelems)
                if all(c in qset for c in conj):
                    maps.add(conj)
            assert F.hom_count(P, Q) == len(maps), (P, Q)
