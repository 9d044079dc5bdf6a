"""Independent brute-force oracles for the fusion machinery.

Everything here recomputes fusion data from first principles (full scans
of the ambient group, explicit morphism-set closures) and compares against
the engine's groupoid representation: conjugacy classes, automizer orders,
hom counts, closure contents, and the p'-quotient computed directly from
its definition with seeds over every subgroup.
"""

from __future__ import annotations

import pytest

from fusionsys import catalog, classify as cm
from fusionsys.fusion import abstract_closure, group_fusion
from fusionsys.indexp import PPrimeAnalysis
from fusionsys.lattice import SubgroupLattice
from fusionsys.perm import PermGroup, Permutation


def brute_group_maps(G, lat, P_id):
    """All conjugation maps of one subgroup into S, by scanning all of G."""
    pelems = [lat.elements[e] for e in lat.subgroups[P_id].elems]
    maps = set()
    for g in G.elements():
        gi = g.inverse()
        conj = tuple((g * x * gi).images for x in pelems)
        if all(c in lat.index_of for c in conj):
            maps.add(tuple(lat.index_of[c] for c in conj))
    return maps


GROUPS = [("S4", 2), ("SL2(3)", 2), ("A6", 2), ("S3xS3", 3), ("C12", 2),
          ("A7", 3), ("D12", 2)]


@pytest.mark.parametrize("label,p", GROUPS)
def test_group_fusion_against_full_scan(label, p):
    G = catalog.build(label)
    F = group_fusion(G, p, label=label)
    lat = F.lattice
    for P_id in range(len(lat)):
        maps = brute_group_maps(G, lat, P_id)
        # class membership: image subgroups of the scanned maps
        images = set()
        for m in maps:
            mask = 0
            for e in m:
                mask |= 1 << e
            images.add(lat.id_by_mask[mask])
        assert images == set(F.class_ids(P_id)), (label, P_id)
        # every scanned map is a morphism of the system and conversely
        rows = F.domain_rows(P_id)
        engine_maps = {tuple(int(v) for v in row) for row in rows}
        assert engine_maps == maps, (label, P_id)
        # automizer order = number of self-maps
        self_maps = sum(1 for m in maps
                        if set(m) == set(lat.subgroups[P_id].elems))
        assert F.aut_order(P_id) == self_maps


def brute_closure_morphisms(lat, seeds):
    """Least morphism set containing seeds and inner maps, closed under
    restriction (to maximal subgroups), composition, and inversion."""
    mors = set()
    for sid, sg in enumerate(lat.subgroups):
        for g in range(lat.n):
            conj_g = lat.conj[g]
            mors.add((sid, tuple(conj_g[e] for e in sg.elems)))
    mors |= {(sid, tuple(images)) for sid, images in seeds}
    while True:
        new = set()
        by_domain = {}
        for (did, images) in mors:
            by_domain.setdefault(did, []).append(images)
        for (did, images) in mors:
            dom = lat.subgroups[did]
            phi = dict(zip(dom.elems, images))
            for mid in lat.maximal_subgroups[did]:
                msg = lat.subgroups[mid]
                cand = (mid, tuple(phi[e] for e in msg.elems))
                if cand not in mors:
                    new.add(cand)
            mask = 0
            for e in images:
                mask |= 1 << e
            img_id = lat.id_by_mask[mask]
            inv_phi = {v: k for k, v in phi.items()}
            cand = (img_id, tuple(inv_phi[e] for e in lat.subgroups[img_id].elems))
            if cand not in mors:
                new.add(cand)
            for psi_images in by_domain.get(img_id, []):
                psi = dict(zip(lat.subgroups[img_id].elems, psi_images))
                cand = (did, tuple(psi[phi[e]] for e in dom.elems))
                if cand not in mors:
                    new.add(cand)
        if not new:
            return mors
        mors |= new


def test_abstract_closure_against_brute():
    a = Permutation.parse("(0 1)(2 3)", 4)
    b = Permutation.parse("(0 2)(1 3)", 4)
    V = PermGroup([a, b], 4)
    lat = SubgroupLattice(V, 2)
    # order-3 automorphism of the Klein group
    full = lat.subgroups[lat.full_id]
    ia, ib = lat.index_of[a.images], lat.index_of[b.images]
    iab = lat.mult[ia][ib]
    seed_map = {0: 0, ia: ib, ib: iab, iab: ia}
    seeds = [(lat.full_id, tuple(seed_map[e] for e in full.elems))]
    brute = brute_closure_morphisms(lat, seeds)
    E = abstract_closure(V, 2, [([a, b], [b, a * b])])
    for sid in range(len(lat)):
        engine = {tuple(int(v) for v in row) for row in E.domain_rows(sid)}
        brute_sid = {images for (did, images) in brute if did == sid}
        assert engine == brute_sid, sid


def test_sigma4_closure_against_brute():
    G = catalog.build("S4")
    F = group_fusion(G, 2)
    lat = F.lattice
    seeds = []
    for view in F.classes():
        rep_sg = lat.subgroups[view.rep]
        for gen in view.aut.generators:
            seeds.append((view.rep,
                          tuple(rep_sg.elems[gen(pos)] for pos in range(rep_sg.order))))
        for member in view.members:
            if member != view.rep:
                seeds.append((view.rep, view.witness[member]))
    brute = brute_closure_morphisms(lat, seeds)
    for sid in range(len(lat)):
        engine = {tuple(int(v) for v in row) for row in F.domain_rows(sid)}
        brute_sid = {images for (did, images) in brute if did == sid}
        assert engine == brute_sid, sid


def brute_gamma_order(F, classified):
    """The p'-quotient straight from its definition: seed the closure with
    the p'-residual automizers of *every* subgroup and count the
    S-automorphisms whose restriction to some centric subgroup lands in it."""
    lat = F.lattice
    seeds = []
    for sid in range(len(lat)):
        sg = lat.subgroups[sid]
        if sg.order == 1:
            continue
        aut = F.aut_position_group(sid)
        opp = aut.op_prime_residual(F.p)
        for gen in opp.elements():
            seeds.append((sid, tuple(sg.elems[gen(pos)] for pos in range(sg.order))))
    mors = brute_closure_morphisms(lat, seeds)
    centric = classified.centric_ids()
    aut_full = F.aut_position_group(lat.full_id)
    qualifying = []
    for alpha in aut_full.elements():
        imgs = alpha.images
        for sid in centric:
            sg = lat.subgroups[sid]
            if (sid, tuple(imgs[e] for e in sg.elems)) in mors:
                qualifying.append(alpha)
                break
    aut0 = PermGroup(qualifying, lat.n)
    return aut_full.order() // aut0.order()


@pytest.mark.parametrize("label,p", [("S4", 2), ("SL2(3)", 2), ("A7", 3),
                                     ("S3xS3", 3), ("A6", 2), ("C12", 2)])
def test_gamma_against_definition(label, p):
    F = group_fusion(catalog.build(label), p, label=label)
    cl = cm.classify(F)
    an = PPrimeAnalysis(F, classified=cl)
    assert an.gamma_data.order == brute_gamma_order(F, cl), (label, p)
