"""Subgroup predicates of a fusion system and the canonical subgroups.

Flags: fully normalized / fully centralized (normalizer and centralizer
orders are maximal across the conjugacy class), centric (every conjugate
contains its S-centralizer), radical (the outer automizer has trivial
p-core), weakly closed (singleton class), strongly closed (closed under
element fusion), normal and central (every morphism extends compatibly),
and the two canonical subgroups: the largest normal and largest central
subgroup.

Centric and radical are class-constant, so they are evaluated once per
class at the representative.  Normality and centrality quantify over all
morphisms; it suffices to test the groupoid generators, because an
extension of a composite is a composite of extensions and restrictions of
extensions extend restrictions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalInconsistency
from .fusion import FusionSystem
from .perm import PermGroup, Permutation


def is_fully_normalized(F: FusionSystem, sid: int) -> bool:
    lat = F.lattice
    mine = len(lat.ns_elems[sid])
    return all(len(lat.ns_elems[m]) <= mine for m in F.class_ids(sid))


def is_fully_centralized(F: FusionSystem, sid: int) -> bool:
    lat = F.lattice
    mine = len(lat.cs_elems[sid])
    return all(len(lat.cs_elems[m]) <= mine for m in F.class_ids(sid))


def is_centric(F: FusionSystem, sid: int) -> bool:
    lat = F.lattice
    for m in F.class_ids(sid):
        mask = lat.subgroups[m].mask
        if any(not (mask >> g) & 1 for g in lat.cs_elems[m]):
            return False
    return True


def _out_group(F: FusionSystem, sid: int) -> PermGroup:
    """Out_F(P) = Aut_F(P)/Inn(P) as a permutation group on Inn-cosets."""
    lat = F.lattice
    sg = lat.subgroups[sid]
    aut = F.aut_position_group(sid)
    inn_gens = []
    for x in sg.gens:
        conj_x = lat.conj[x]
        inn_gens.append(Permutation([sg.pos_of[conj_x[e]] for e in sg.elems]))
    inn = PermGroup(inn_gens, sg.order)
    quo, _ = aut.action_on_cosets(inn)
    return quo


def is_radical(F: FusionSystem, sid: int) -> bool:
    if sid == F.lattice.trivial_id:
        return True
    out = _out_group(F, F.class_view(sid).rep)
    return out.p_core(F.p).order() == 1


def centric_set(F: FusionSystem) -> list[int]:
    out = []
    for view in F.classes():
        if is_centric(F, view.rep):
            out.extend(view.members)
    return sorted(out)


def centric_radical_set(F: FusionSystem) -> list[int]:
    out = []
    for view in F.classes():
        if is_centric(F, view.rep) and is_radical(F, view.rep):
            out.extend(view.members)
    return sorted(out)


def is_weakly_closed(F: FusionSystem, sid: int) -> bool:
    return len(F.class_ids(sid)) == 1


def is_strongly_closed(F: FusionSystem, sid: int) -> bool:
    lat = F.lattice
    labels = F.element_classes()
    by_label: dict[int, list[int]] = {}
    for e in range(lat.n):
        by_label.setdefault(labels[e], []).append(e)
    mask = lat.subgroups[sid].mask
    for e in lat.subgroups[sid].elems:
        if any(not (mask >> x) & 1 for x in by_label[labels[e]]):
            return False
    return True


def _extension_exists(F: FusionSystem, domain_id: int, fixed_cols, fixed_vals,
                      setwise_cols=None, setwise_vals=None,
                      pointwise_cols=None, pointwise_vals=None) -> bool:
    """Is there a morphism with the given domain and constraints?

    ``fixed_cols/vals`` prescribe images at element positions;
    ``setwise_cols/vals`` require a set of positions to map onto a fixed
    element set; ``pointwise`` requires identity values.
    """
    rows = F.domain_rows(domain_id)
    ok = np.ones(rows.shape[0], dtype=bool)
    if fixed_cols:
        ok &= (rows[:, fixed_cols] == np.array(fixed_vals, dtype=rows.dtype)).all(axis=1)
    if pointwise_cols:
        ok &= (rows[:, pointwise_cols]
               == np.array(pointwise_vals, dtype=rows.dtype)).all(axis=1)
    if setwise_cols is not None and ok.any():
        sub = np.sort(rows[np.flatnonzero(ok)][:, setwise_cols], axis=1)
        target = np.array(sorted(setwise_vals), dtype=rows.dtype)
        ok2 = (sub == target).all(axis=1)
        return bool(ok2.any())
    return bool(ok.any())


def _extends_over(F: FusionSystem, q_id: int, pointwise: bool) -> bool:
    """Does every groupoid generator extend over Q with the required behavior?"""
    lat = F.lattice
    q = lat.subgroups[q_id]
    for view in F.classes():
        rep = view.rep
        rep_sg = lat.subgroups[rep]
        d_id = lat.generated_subgroup_id(list(q.elems) + list(rep_sg.elems))
        d = lat.subgroups[d_id]
        rep_cols = [d.pos_of[e] for e in rep_sg.elems]
        q_cols = [d.pos_of[e] for e in q.elems]
        morphisms = []
        for a in view.aut.generators:
            morphisms.append([rep_sg.elems[a(r)] for r in range(rep_sg.order)])
        for member in view.members:
            if member != rep:
                morphisms.append(list(view.witness[member]))
        for vals in morphisms:
            if pointwise:
                found = _extension_exists(F, d_id, rep_cols, vals,
                                          pointwise_cols=q_cols, pointwise_vals=q.elems)
            else:
                found = _extension_exists(F, d_id, rep_cols, vals,
                                          setwise_cols=q_cols, setwise_vals=q.elems)
            if not found:
                return False
    return True


def is_normal_in_F(F: FusionSystem, q_id: int) -> bool:
    lat = F.lattice
    if len(lat.ns_elems[q_id]) != lat.n:
        return False  # must be normal in S
    if not is_strongly_closed(F, q_id):
        return False
    return _extends_over(F, q_id, pointwise=False)


def is_central_in_F(F: FusionSystem, q_id: int) -> bool:
    lat = F.lattice
    center_mask = 0
    for e in lat.center_elems:
        center_mask |= 1 << e
    if lat.subgroups[q_id].mask & center_mask != lat.subgroups[q_id].mask:
        return False  # must sit inside Z(S)
    if not is_strongly_closed(F, q_id):
        return False
    return _extends_over(F, q_id, pointwise=True)


def _unique_maximal(F: FusionSystem, flagged: list[int], what: str) -> int:
    lat = F.lattice
    maximal = [sid for sid in flagged
               if not any(t != sid and lat.contains(sid, t) for t in flagged)]
    if len(maximal) != 1:
        raise InternalInconsistency(
            f"{what}: expected a unique maximal subgroup, found {maximal}",
            module="classify")
    return maximal[0]


def O_p_of_F(F: FusionSystem) -> int:
    flagged = [sid for sid in range(len(F.lattice)) if is_normal_in_F(F, sid)]
    return _unique_maximal(F, flagged, "O_p(F)")


def Z_of_F(F: FusionSystem) -> int:
    flagged = [sid for sid in range(len(F.lattice)) if is_central_in_F(F, sid)]
    return _unique_maximal(F, flagged, "Z(F)")


@dataclass
class ClassifiedLattice:
    """Per-subgroup flags plus the canonical subgroups of the system."""

    fully_normalized: list[bool]
    fully_centralized: list[bool]
    centric: list[bool]
    radical: list[bool]
    weakly_closed: list[bool]
    strongly_closed: list[bool]
    normal_in_F: list[bool]
    central_in_F: list[bool]
    O_p: int
    Z: int

    def centric_ids(self):
        return [i for i, v in enumerate(self.centric) if v]

    def centric_radical_ids(self):
        return [i for i, v in enumerate(self.centric) if v and self.radical[i]]

    def summary(self) -> dict:
        return {
            "centric": sum(self.centric),
            "centric_radical": sum(c and r for c, r in zip(self.centric, self.radical)),
            "weakly_closed": sum(self.weakly_closed),
            "strongly_closed": sum(self.strongly_closed),
            "normal": sum(self.normal_in_F),
            "central": sum(self.central_in_F),
            "O_p": self.O_p,
            "Z": self.Z,
        }


def classify(F: FusionSystem) -> ClassifiedLattice:
    """Compute every flag for every subgroup (class-constant flags once)."""
    lat = F.lattice
    n = len(lat)
    fn = [False] * n
    fc = [False] * n
    cen = [False] * n
    rad = [False] * n
    wc = [False] * n
    sc = [False] * n
    nor = [False] * n
    cet = [False] * n
    for view in F.classes():
        max_ns = max(len(lat.ns_elems[m]) for m in view.members)
        max_cs = max(len(lat.cs_elems[m]) for m in view.members)
        c = is_centric(F, view.rep)
        r = is_radical(F, view.rep)
        for m in view.members:
            fn[m] = len(lat.ns_elems[m]) == max_ns
            fc[m] = len(lat.cs_elems[m]) == max_cs
            cen[m] = c
            rad[m] = r
            wc[m] = len(view.members) == 1
    for sid in range(n):
        sc[sid] = is_strongly_closed(F, sid)
        if sc[sid]:
            nor[sid] = is_normal_in_F(F, sid)
            cet[sid] = is_central_in_F(F, sid)
    flagged_n = [i for i in range(n) if nor[i]]
    flagged_z = [i for i in range(n) if cet[i]]
    return ClassifiedLattice(
        fully_normalized=fn, fully_centralized=fc, centric=cen, radical=rad,
        weakly_closed=wc, strongly_closed=sc, normal_in_F=nor, central_in_F=cet,
        O_p=_unique_maximal(F, flagged_n, "O_p(F)"),
        Z=_unique_maximal(F, flagged_z, "Z(F)"))
