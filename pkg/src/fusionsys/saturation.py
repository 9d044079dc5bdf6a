"""Saturation checking: the Sylow axiom and the extension axiom.

The Sylow axiom is checked at every fully normalized member of every
class: it must be fully centralized and its S-automizer must be a Sylow
p-subgroup of its automizer.  The extension axiom is checked through the
standard equivalent criterion: every class must contain a member that is
simultaneously fully automized and receptive, where receptive means that
every isomorphism onto it extends over its extension-control subgroup

    N_phi = { g in N_S(P) : phi c_g phi^-1 in Aut_S(Q) }.

Receptivity only needs one extension witness per isomorphism; failures are
returned with the witness morphism and its N_phi so they can be re-checked
independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InternalInconsistency
from .fusion import FusionMorphism, FusionSystem
from .numth import p_part


@dataclass
class AxiomFailure:
    axiom: str                  # "I" or "II"
    class_rep: int
    subgroup: int               # offending member (axiom I) or target Q (axiom II)
    domain: int | None = None   # P for axiom II
    morphism: FusionMorphism | None = None
    n_phi: int | None = None
    detail: str = ""


@dataclass
class SaturationReport:
    saturated: bool
    failures: list[AxiomFailure] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "saturated" if self.saturated else "failed"

    def first_failure(self) -> AxiomFailure | None:
        return self.failures[0] if self.failures else None


def _aut_s_order(F: FusionSystem, sid: int) -> int:
    lat = F.lattice
    return len(lat.ns_elems[sid]) // len(lat.cs_elems[sid])


def _is_fully_automized(F: FusionSystem, sid: int) -> bool:
    return _aut_s_order(F, sid) == p_part(F.aut_order(sid), F.p)


def check_sylow_axiom(F: FusionSystem) -> list[AxiomFailure]:
    """Axiom I at every fully normalized member of every class."""
    lat = F.lattice
    failures = []
    for view in F.classes():
        max_ns = max(len(lat.ns_elems[m]) for m in view.members)
        max_cs = max(len(lat.cs_elems[m]) for m in view.members)
        for m in view.members:
            if len(lat.ns_elems[m]) != max_ns:
                continue
            if len(lat.cs_elems[m]) != max_cs:
                failures.append(AxiomFailure(
                    "I", view.rep, m,
                    detail="fully normalized member is not fully centralized"))
            elif not _is_fully_automized(F, m):
                failures.append(AxiomFailure(
                    "I", view.rep, m,
                    detail="S-automizer is not a Sylow p-subgroup of the automizer"))
    return failures


def _aut_s_position_set(F: FusionSystem, sid: int) -> frozenset:
    """Aut_S(Q) as a set of position-permutation tuples of Q."""
    lat = F.lattice
    sg = lat.subgroups[sid]
    out = set()
    for g in lat.ns_elems[sid]:
        conj_g = lat.conj[g]
        out.add(tuple(sg.pos_of[conj_g[e]] for e in sg.elems))
    return frozenset(out)


def _cs_coset_reps(F: FusionSystem, sid: int) -> list[int]:
    """Coset representatives of C_S(P) in N_S(P) (N_phi is a union of cosets)."""
    lat = F.lattice
    cs = lat.cs_elems[sid]
    reps = []
    seen = set()
    for g in lat.ns_elems[sid]:
        if g in seen:
            continue
        reps.append(g)
        for c in cs:
            seen.add(lat.mult[g][c])
    return reps


def compute_n_phi(F: FusionSystem, p_id: int, q_id: int, row) -> int:
    """Lattice id of N_phi for the isomorphism phi: P -> Q given by row."""
    lat = F.lattice
    p_sg = lat.subgroups[p_id]
    q_sg = lat.subgroups[q_id]
    aut_s_q = _aut_s_position_set(F, q_id)
    inv_row = {int(row[k]): e for k, e in enumerate(p_sg.elems)}
    elems = []
    cs = lat.cs_elems[p_id]
    for g in _cs_coset_reps(F, p_id):
        conj_g = lat.conj[g]
        psi = tuple(q_sg.pos_of[int(row[p_sg.pos_of[conj_g[inv_row[e]]]])]
                    for e in q_sg.elems)
        if psi in aut_s_q:
            elems.extend(lat.mult[g][c] for c in cs)
    return lat.subgroup_id_from_elems(elems)


def _receptive_failures(F: FusionSystem, view, q_id: int, stop_early: bool):
    """Isomorphisms onto q_id that fail to extend over their N_phi."""
    lat = F.lattice
    q_sg = lat.subgroups[q_id]
    q_sorted = np.array(q_sg.elems, dtype=np.int32)
    failures = []
    for p_id in view.members:
        p_sg = lat.subgroups[p_id]
        rows = F.domain_rows(p_id)
        onto = np.flatnonzero((np.sort(rows, axis=1) == q_sorted).all(axis=1))
        for ridx in onto:
            row = rows[ridx]
            n_phi = compute_n_phi(F, p_id, q_id, row)
            d_sg = lat.subgroups[n_phi]
            cols = [d_sg.pos_of[e] for e in p_sg.elems]
            ext_rows = F.domain_rows(n_phi)
            ok = (ext_rows[:, cols] == row[np.newaxis, :]).all(axis=1)
            if not ok.any():
                gen_images = tuple((g, int(row[p_sg.pos_of[g]])) for g in p_sg.gens)
                failures.append(AxiomFailure(
                    "II", view.rep, q_id, domain=p_id,
                    morphism=FusionMorphism(p_id, q_id, gen_images),
                    n_phi=n_phi,
                    detail="no extension over N_phi"))
                if stop_early:
                    return failures
    return failures


def check_extension_axiom(F: FusionSystem) -> list[AxiomFailure]:
    """Axiom II via the fully-automized+receptive criterion, per class.

    A class passes when some fully automized member is receptive; the
    reported failures come from the first fully automized candidate.
    """
    lat = F.lattice
    failures = []
    for view in F.classes():
        max_cs = max(len(lat.cs_elems[m]) for m in view.members)
        candidates = [m for m in view.members
                      if len(lat.cs_elems[m]) == max_cs and _is_fully_automized(F, m)]
        if not candidates:
            failures.append(AxiomFailure(
                "I", view.rep, view.rep,
                detail="no fully automized fully centralized member"))
            continue
        class_failures = None
        for q_id in candidates:
            fl = _receptive_failures(F, view, q_id, stop_early=False)
            if not fl:
                class_failures = None
                break
            if class_failures is None:
                class_failures = fl
        if class_failures:
            failures.extend(class_failures)
    return failures


def is_saturated(F: FusionSystem) -> tuple[bool, SaturationReport]:
    failures = check_sylow_axiom(F) + check_extension_axiom(F)
    return (not failures), SaturationReport(not failures, failures)


def witness_dump(F: FusionSystem, failure: AxiomFailure) -> str:
    """Serialize a failure witness with its system in the dump format."""
    lines = [F.dump().rstrip()]
    lines.append(f"# saturation-failure axiom {failure.axiom}")
    lines.append(f"# class-rep {failure.class_rep} subgroup {failure.subgroup}")
    if failure.morphism is not None:
        lat = F.lattice
        srcs = " ; ".join(lat.elements[g].cycle_string()
                          for g, _ in failure.morphism.gen_images)
        dsts = " ; ".join(lat.elements[i].cycle_string()
                          for _, i in failure.morphism.gen_images)
        lines.append(f"# witness morphism {srcs} -> {dsts}")
        lines.append(f"# n-phi subgroup {failure.n_phi}")
    lines.append(f"# detail {failure.detail}")
    return "\n".join(lines) + "\n"


def recheck_failure(F: FusionSystem, failure: AxiomFailure) -> bool:
    """Confirm that a reported failure is a genuine violation."""
    lat = F.lattice
    if failure.axiom == "I":
        view = F.class_view(failure.subgroup)
        max_ns = max(len(lat.ns_elems[m]) for m in view.members)
        max_cs = max(len(lat.cs_elems[m]) for m in view.members)
        m = failure.subgroup
        if len(lat.ns_elems[m]) == max_ns:
            return (len(lat.cs_elems[m]) != max_cs
                    or not _is_fully_automized(F, m))
        return not any(
            len(lat.cs_elems[m]) == max_cs and _is_fully_automized(F, m)
            for m in view.members)
    # axiom II: re-derive the witness morphism and search again
    m = failure.morphism
    p_sg = lat.subgroups[m.domain]
    phi = F.full_map(m)
    row = np.array([phi[e] for e in p_sg.elems], dtype=np.int32)
    n_phi = compute_n_phi(F, m.domain, failure.subgroup, row)
    if n_phi != failure.n_phi:
        raise InternalInconsistency("witness N_phi changed", module="saturate")
    d_sg = lat.subgroups[n_phi]
    cols = [d_sg.pos_of[e] for e in p_sg.elems]
    ext_rows = F.domain_rows(n_phi)
    return not bool((ext_rows[:, cols] == row[np.newaxis, :]).all(axis=1).any())
