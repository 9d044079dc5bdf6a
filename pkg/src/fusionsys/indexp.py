"""Subsystems of index prime to p: the quotient Gamma, the minimal
subsystem, and the supporting invariants.

The pipeline, for a saturated fusion system F over S:

* ``op_prime_star``: the subsystem generated over the centric subgroups by
  the p'-residuals of all centric-radical automizers (plus inner maps); the
  seeds over centric-radical subgroups already generate the full structure
  restricted to centric objects.
* ``aut0_S``: the subgroup of Aut_F(S) of automorphisms whose restriction
  to some centric subgroup lies in that closure.
* ``gamma``: the quotient Gamma = Aut_F(S)/Aut0 with its coset labeling
  (the multiplicative class map on S-automorphisms), multiplication table
  and structure summary.
* ``op_prime_system``: the subsystem generated by the labeled kernel; it is
  verified saturated, its centric set must equal that of F, and its
  S-automizer must reproduce Aut0 exactly.
* the subsystem lattice (one subsystem per subgroup of Gamma), the
  hyperfocal subgroup, the weakly-closed-subgroup shortcut with its upper
  and lower bounds, the simplicity certificate, and the centralizer
  containment check.

Everything routes through ``PPrimeAnalysis``, which caches the expensive
intermediates per system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from . import classify as classify_mod
from .classify import ClassifiedLattice
from .errors import InternalInconsistency, PreconditionError
from .fusion import CLOSURE_CAP, FusionSystem, centralizer_system, closure_of_data
from .numth import v_p
from .perm import PermGroup, Permutation, abelian_invariants
from .saturation import is_saturated


# ---------------------------------------------------------------------------
# small-group helpers


def _coset_labeling(G: PermGroup, H: PermGroup):
    """Left cosets of H in G: (labels dict element-images -> index, reps)."""
    h_elems = list(H.elements())

    def canon(g: Permutation) -> tuple:
        return min((h * g).images for h in h_elems)

    reps = [G.identity()]
    labels = {canon(reps[0]): 0}
    frontier = [0]
    while frontier:
        new = []
        for i in frontier:
            for g in G.generators:
                cand = g * reps[i]
                key = canon(cand)
                if key not in labels:
                    labels[key] = len(reps)
                    reps.append(cand)
                    new.append(len(reps) - 1)
        frontier = new
    if len(reps) != G.order() // H.order():
        raise InternalInconsistency("coset enumeration miscounted", module="indexp")
    return labels, reps, canon


def _all_subgroups_small(G: PermGroup) -> list[PermGroup]:
    """All subgroups of a small group, by closure of element extensions."""
    elems = list(G.elements())
    triv = PermGroup([], G.degree)
    found = {frozenset({G.identity().images}): triv}
    frontier = [triv]
    while frontier:
        new = []
        for H in frontier:
            for e in elems:
                if e in H:
                    continue
                K = PermGroup(list(H.generators) + [e], G.degree)
                key = frozenset(g.images for g in K.elements())
                if key not in found:
                    found[key] = K
                    new.append(K)
        frontier = new
    return sorted(found.values(), key=lambda H: (H.order(), sorted(
        g.images for g in H.elements())))


def _group_structure(G: PermGroup) -> dict:
    order = G.order()
    abelian = all((a * b).images == (b * a).images
                  for a in G.generators for b in G.generators)
    exponent = 1
    for g in G.elements():
        o = g.order()
        exponent = exponent * o // gcd(exponent, o)
    out = {"order": order, "abelian": abelian, "exponent": exponent}
    if abelian:
        out["invariants"] = list(abelian_invariants(G))
    return out


# ---------------------------------------------------------------------------
# report dataclasses


@dataclass
class GammaData:
    """The p'-quotient of Aut_F(S) with its labeling."""

    order: int
    group: PermGroup                  # regular image on coset labels
    labels: dict                      # Aut_F(S) element images -> coset label
    reps: list                        # label -> representative automorphism
    structure: dict
    table: list                       # multiplication table on labels

    def label_of(self, alpha: Permutation) -> int:
        return self.labels[alpha.images]


@dataclass
class GammaReport:
    gamma_order: int
    structure: dict
    aut_fs_order: int
    aut0_order: int
    generator_labels: list            # theta labels of Aut_F(S) generators
    aut0_generator_count: int
    opprime_aut_orders: dict          # centric class rep -> automizer order in O^{p'}(F)
    predictor: dict | None = None


@dataclass
class WeaklyClosedWitness:
    A: int
    X: tuple
    Z: int
    K_order: int
    K0_order: int
    lower: int
    upper: int


@dataclass
class ThetaViaA:
    gamma_order: int
    fast_path: bool
    kernel_order: int | None
    quotient_structure: dict | None
    agrees_with_gamma: bool


@dataclass
class SimplicityCertificate:
    verdict: str                      # "simple" | "not simple" | "inconclusive"
    evidence: str
    factorization: list | None = None


@dataclass
class Subsystem:
    labels: tuple                     # subgroup of Gamma as a set of labels
    aut_s_order: int
    system: FusionSystem


# ---------------------------------------------------------------------------
# the analysis driver


class PPrimeAnalysis:
    """Cached pipeline for one saturated fusion system."""

    def __init__(self, F: FusionSystem, classified: ClassifiedLattice | None = None,
                 closure_cap: int = CLOSURE_CAP, verify: bool = True):
        self.F = F
        self.closure_cap = closure_cap
        self.verify = verify
        self._classified = classified

    @property
    def classified(self) -> ClassifiedLattice:
        if self._classified is None:
            self._classified = classify_mod.classify(self.F)
        return self._classified

    # -- the generated subsystem over centric objects ----------------------------

    def _residual_seeds(self):
        """Seed morphisms: p'-residual automizer generators over F^cr."""
        F = self.F
        lat = F.lattice
        seeds = []
        for rid in self.classified.centric_radical_ids():
            sg = lat.subgroups[rid]
            aut = F.aut_position_group(rid)
            opp = aut.op_prime_residual(F.p)
            for gen in opp.generators:
                images = tuple(sg.elems[gen(pos)] for pos in range(sg.order))
                seeds.append((rid, images))
        return seeds

    @cached_property
    def e0(self) -> FusionSystem:
        """O^{p'}_*(F) restricted to the centric subgroups."""
        F = self.F
        objects = self.classified.centric_ids()
        E0 = closure_of_data(F.lattice, F.p, self._residual_seeds(),
                             object_ids=objects, closure_cap=self.closure_cap,
                             backend="abstract",
                             label=f"O^p'_*({F.label})" if F.label else None)
        E0.objects = set(objects)
        return E0

    @cached_property
    def aut_full(self) -> PermGroup:
        return self.F.aut_position_group(self.F.lattice.full_id)

    @cached_property
    def aut0(self) -> PermGroup:
        """Aut_F^0(S): generated by automorphisms restricting into the closure."""
        F = self.F
        lat = F.lattice
        E0 = self.e0
        centric = sorted(self.classified.centric_ids(),
                         key=lambda sid: -lat.subgroups[sid].order)
        qualifying = []
        for alpha in self.aut_full.elements():
            imgs = alpha.images
            for sid in centric:
                sg = lat.subgroups[sid]
                restriction = tuple(imgs[e] for e in sg.elems)
                if E0.morphism_in(sid, restriction):
                    qualifying.append(alpha)
                    break
        return PermGroup(qualifying, lat.n)

    @cached_property
    def gamma_data(self) -> GammaData:
        F = self.F
        aut_full = self.aut_full
        aut0 = self.aut0
        index = aut_full.order() // aut0.order()
        if v_p(index, F.p) != 0 and index % F.p == 0:
            raise InternalInconsistency("p divides the p'-quotient", module="indexp")
        labels, reps, canon = _coset_labeling(aut_full, aut0)
        label_map = {}
        for alpha in aut_full.elements():
            label_map[alpha.images] = labels[canon(alpha)]
        # regular image on labels
        gens = []
        for g in aut_full.generators:
            gens.append(Permutation([labels[canon(g * reps[i])] for i in range(index)]))
        quo = PermGroup(gens, max(index, 1))
        if quo.order() != index:
            raise InternalInconsistency(
                "Aut0 is not normal in Aut_F(S)", module="indexp")
        table = [[labels[canon(reps[i] * reps[j])] for j in range(index)]
                 for i in range(index)]
        if index % F.p == 0:
            raise InternalInconsistency("p divides |Gamma|", module="indexp")
        return GammaData(order=index, group=quo, labels=label_map, reps=reps,
                         structure=_group_structure(quo), table=table)

    @cached_property
    def e1(self) -> FusionSystem:
        """O^{p'}(F): generated by the labeled kernel, verified saturated."""
        F = self.F
        lat = F.lattice
        seeds = list(self._residual_seeds())
        for alpha in self.aut0.generators:
            seeds.append((lat.full_id, tuple(alpha.images)))
        E1 = closure_of_data(lat, F.p, seeds, closure_cap=self.closure_cap,
                             backend="abstract",
                             label=f"O^p'({F.label})" if F.label else None)
        aut_e1 = E1.aut_position_group(lat.full_id)
        if not aut_e1.same_group(self.aut0):
            raise InternalInconsistency(
                "Aut_{O^p'(F)}(S) differs from Aut_F^0(S)", module="indexp")
        if self.verify:
            ok, rep = is_saturated(E1)
            if not ok:
                raise InternalInconsistency(
                    f"O^{{p'}}(F) failed saturation: {rep.first_failure()}",
                    module="indexp")
            cl1 = classify_mod.classify(E1)
            if cl1.centric_ids() != self.classified.centric_ids():
                raise InternalInconsistency(
                    "centric sets of F and O^{p'}(F) differ", module="indexp")
            if cl1.centric_radical_ids() != self.classified.centric_radical_ids():
                raise InternalInconsistency(
                    "centric-radical sets of F and O^{p'}(F) differ", module="indexp")
        return E1

    # -- public products ---------------------------------------------------------

    def gamma_report(self) -> GammaReport:
        F = self.F
        gd = self.gamma_data
        E1 = self.e1
        opp_orders = {}
        for sid in self.classified.centric_ids():
            view = self.F.class_view(sid)
            if view.rep == sid:
                opp_orders[sid] = E1.aut_order(sid)
        gen_labels = [gd.label_of(g) for g in self.aut_full.generators]
        return GammaReport(
            gamma_order=gd.order,
            structure=gd.structure,
            aut_fs_order=self.aut_full.order(),
            aut0_order=self.aut0.order(),
            generator_labels=gen_labels,
            aut0_generator_count=len(self.aut0.generators),
            opprime_aut_orders=opp_orders)

    def subsystems(self) -> list[Subsystem]:
        """One subsystem of index prime to p per subgroup of Gamma."""
        F = self.F
        lat = F.lattice
        gd = self.gamma_data
        out = []
        for H in _all_subgroups_small(gd.group):
            label_set = tuple(sorted(h(0) for h in H.elements()))
            seeds = list(self._residual_seeds())
            for alpha in self.aut0.generators:
                seeds.append((lat.full_id, tuple(alpha.images)))
            for lbl in label_set:
                seeds.append((lat.full_id, tuple(gd.reps[lbl].images)))
            EH = closure_of_data(lat, F.p, seeds, closure_cap=self.closure_cap,
                                 backend="abstract")
            out.append(Subsystem(
                labels=label_set,
                aut_s_order=EH.aut_order(lat.full_id),
                system=EH))
        return out

    def hyperfocal(self) -> int:
        """Subgroup generated by g^-1 alpha(g) over p-residual automizers."""
        F = self.F
        lat = F.lattice
        gens_idx = set()
        for sid in range(len(lat)):
            sg = lat.subgroups[sid]
            if sg.order == 1:
                continue
            aut = F.aut_position_group(sid)
            opr = aut.op_residual(F.p)
            for gen in opr.generators:
                for pos, e in enumerate(sg.elems):
                    img = sg.elems[gen(pos)]
                    gens_idx.add(lat.mult[lat.inv[e]][img])
        hyp = lat.generated_subgroup_id(gens_idx or {0})
        if F.backend == "group":
            og = F.group.op_residual(F.p)
            oracle_elems = [e for e in range(lat.n) if lat.elements[e] in og]
            oracle = lat.subgroup_id_from_elems(oracle_elems)
            if oracle != hyp:
                raise InternalInconsistency(
                    f"hyperfocal {hyp} != S meet O^p(G) {oracle}", module="indexp")
        return hyp

    # -- the weakly closed shortcut ------------------------------------------------

    def _check_weakly_closed_A(self, a_id: int, need_abelian: bool):
        F = self.F
        lat = F.lattice
        cl = self.classified
        sg = lat.subgroups[a_id]
        if len(lat.ns_elems[a_id]) != lat.n:
            raise PreconditionError("A must be normal in S", module="indexp")
        if not cl.centric[a_id]:
            raise PreconditionError("A must be centric", module="indexp")
        if not cl.weakly_closed[a_id]:
            raise PreconditionError("A must be weakly closed", module="indexp")
        if need_abelian and not sg.is_abelian:
            raise PreconditionError("A must be abelian", module="indexp")

    def theta_via_weakly_closed(self, a_id: int) -> ThetaViaA:
        """Compute Gamma through the automizer of a weakly closed subgroup."""
        F = self.F
        lat = F.lattice
        self._check_weakly_closed_A(a_id, need_abelian=False)
        aut_a = F.aut_position_group(a_id)
        opp = aut_a.op_prime_residual(F.p)
        if opp.order() == aut_a.order():
            # p'-perfect automizer forces a trivial quotient
            return ThetaViaA(gamma_order=1, fast_path=True, kernel_order=None,
                             quotient_structure=None,
                             agrees_with_gamma=self.gamma_data.order == 1)
        E1 = self.e1
        kernel = E1.aut_position_group(a_id)
        if not kernel.is_subgroup_of(aut_a):
            raise InternalInconsistency("kernel not inside Aut_F(A)", module="indexp")
        index = aut_a.order() // kernel.order()
        labels, reps, canon = _coset_labeling(aut_a, kernel)
        gens = [Permutation([labels[canon(g * reps[i])] for i in range(index)])
                for g in aut_a.generators]
        quo = PermGroup(gens, max(index, 1))
        if quo.order() != index:
            raise InternalInconsistency(
                "automizer kernel is not normal", module="indexp")
        qs = _group_structure(quo)
        gd = self.gamma_data
        agrees = (index == gd.order and qs["abelian"] == gd.structure["abelian"]
                  and qs.get("invariants") == gd.structure.get("invariants")
                  and qs["exponent"] == gd.structure["exponent"])
        return ThetaViaA(gamma_order=index, fast_path=False,
                         kernel_order=kernel.order(), quotient_structure=qs,
                         agrees_with_gamma=agrees)

    def fusion_stable_core(self, a_id: int) -> tuple:
        """X = elements of A whose fusion class stays inside A."""
        F = self.F
        lat = F.lattice
        labels = F.element_classes()
        by_label: dict[int, list[int]] = {}
        for e in range(lat.n):
            by_label.setdefault(labels[e], []).append(e)
        mask = lat.subgroups[a_id].mask
        out = []
        for e in lat.subgroups[a_id].elems:
            if all((mask >> x) & 1 for x in by_label[labels[e]]):
                out.append(e)
        return tuple(out)

    def gamma_bounds(self, a_id: int, z_id: int) -> WeaklyClosedWitness:
        """Bracket |Gamma| through centralizer-subsystem automizers of A."""
        F = self.F
        lat = F.lattice
        self._check_weakly_closed_A(a_id, need_abelian=True)
        X = self.fusion_stable_core(a_id)
        center_mask = 0
        for e in lat.center_elems:
            center_mask |= 1 << e
        xz = [e for e in X if (center_mask >> e) & 1]
        if xz == [0]:
            raise PreconditionError("X meets the center trivially", module="indexp")
        span = lat.generated_subgroup_id(xz)
        if not lat.contains(z_id, span):
            raise PreconditionError(
                "Z must lie in the span of the central fusion-stable part",
                module="indexp")
        if z_id == lat.trivial_id:
            raise PreconditionError("Z must be nontrivial", module="indexp")
        E = centralizer_system(F, z_id)
        _assert_same_element_frame(F, E)
        sub = PPrimeAnalysis(E, closure_cap=self.closure_cap, verify=self.verify)
        E0 = sub.e1
        aut_a = F.aut_position_group(a_id)
        aut_e_a = E.aut_position_group(_transfer_id(F, E, a_id))
        aut_e0_a = E0.aut_position_group(_transfer_id(F, E, a_id))
        K = aut_a.normal_closure(aut_e_a.generators)
        K0 = aut_a.normal_closure(aut_e0_a.generators)
        opp = aut_a.op_prime_residual(F.p)
        denom = PermGroup(list(opp.generators) + list(K0.generators), aut_a.degree)
        lower = aut_a.order() // K.order()
        upper = aut_a.order() // denom.order()
        gamma_order = self.gamma_data.order
        if not (lower <= gamma_order <= upper):
            raise InternalInconsistency(
                f"bounds [{lower}, {upper}] miss |Gamma| = {gamma_order}",
                module="indexp")
        return WeaklyClosedWitness(A=a_id, X=X, Z=z_id, K_order=K.order(),
                                   K0_order=K0.order(), lower=lower, upper=upper)

    # -- simplicity and containment -------------------------------------------------

    def simplicity_certificate(self) -> SimplicityCertificate:
        F = self.F
        lat = F.lattice
        cl = self.classified
        if lat.n == 1:
            return SimplicityCertificate("not simple", "the trivial system")
        proper_sc = [sid for sid in range(len(lat))
                     if cl.strongly_closed[sid]
                     and sid not in (lat.trivial_id, lat.full_id)]
        gamma_order = self.gamma_data.order
        if gamma_order == 1 and not proper_sc:
            return SimplicityCertificate(
                "simple",
                "the system equals its minimal p'-index subsystem and no proper "
                "nontrivial subgroup is strongly closed")
        fact = self._direct_factorization(proper_sc)
        if fact is not None:
            return SimplicityCertificate(
                "not simple",
                "the Sylow group splits as a direct product of conjugate "
                "strongly closed subgroups", factorization=fact)
        if cl.O_p != lat.trivial_id:
            return SimplicityCertificate(
                "not simple",
                f"O_p(F) is the nontrivial normal subgroup id {cl.O_p}"
                + (" (= S)" if cl.O_p == lat.full_id else ""))
        if gamma_order != 1:
            return SimplicityCertificate(
                "not simple",
                f"the minimal p'-index subsystem is proper (|Gamma| = {gamma_order})")
        return SimplicityCertificate(
            "inconclusive",
            "strongly closed subgroups exist; full normal-subsystem search is out "
            "of scope")

    def _direct_factorization(self, proper_sc: list[int]):
        """S = T_1 x ... x T_k with T_i conjugate strongly closed subgroups."""
        F = self.F
        lat = F.lattice
        if not proper_sc:
            return None
        sc_set = set(proper_sc)
        for t in sorted(proper_sc, key=lambda s: lat.subgroups[s].order):
            # orbit of t under Aut_F(S)
            orbit = set()
            for alpha in self.aut_full.elements():
                imgs = alpha.images
                tid = lat.subgroup_id_from_elems(
                    imgs[e] for e in lat.subgroups[t].elems)
                orbit.add(tid)
            if not orbit <= sc_set:
                continue
            orbit = sorted(orbit)
            total = 1
            for o in orbit:
                total *= lat.subgroups[o].order
            if total != lat.n or len(orbit) < 2:
                continue
            if any(lat.subgroups[a].mask & lat.subgroups[b].mask != 1
                   for i, a in enumerate(orbit) for b in orbit[i + 1:]):
                continue
            commuting = True
            for i, a in enumerate(orbit):
                for b in orbit[i + 1:]:
                    for x in lat.subgroups[a].elems:
                        for y in lat.subgroups[b].elems:
                            if lat.mult[x][y] != lat.mult[y][x]:
                                commuting = False
            if commuting:
                return orbit
        return None

    def check_centralizer_containment(self, u_id: int) -> bool:
        """Do the morphisms of O^{p'}(C_F(U)) all lie in O^{p'}(F)?"""
        F = self.F
        E = centralizer_system(F, u_id)
        sub = PPrimeAnalysis(E, closure_cap=self.closure_cap, verify=False)
        EU = sub.e1
        E1 = self.e1
        latE = E.lattice
        latF = F.lattice
        for view in EU.classes():
            rep_sg = latE.subgroups[view.rep]
            rep_elems_f = [latF.index_of[latE.elements[e].images] for e in rep_sg.elems]
            try:
                dom_f = latF.subgroup_id_from_elems(rep_elems_f)
            except Exception:
                return False
            morphisms = []
            for a in view.aut.generators:
                morphisms.append([rep_sg.elems[a(r)] for r in range(rep_sg.order)])
            for member in view.members:
                if member != view.rep:
                    morphisms.append(list(view.witness[member]))
            for vals in morphisms:
                images_f = tuple(latF.index_of[latE.elements[v].images] for v in vals)
                if not E1.morphism_in(dom_f, images_f):
                    return False
        return True


def _assert_same_element_frame(F: FusionSystem, E: FusionSystem):
    """Centralizer systems over C_S(Z) = S must share the element indexing."""
    if E.lattice.n == F.lattice.n:
        if any(E.lattice.elements[i].images != F.lattice.elements[i].images
               for i in range(F.lattice.n)):
            raise InternalInconsistency("element frames diverged", module="indexp")


def _transfer_id(F: FusionSystem, E: FusionSystem, sid: int) -> int:
    """Map a subgroup id of F's lattice into E's lattice by element sets."""
    latF, latE = F.lattice, E.lattice
    return latE.subgroup_id_from_elems(
        latE.index_of[latF.elements[e].images] for e in latF.subgroups[sid].elems)


# ---------------------------------------------------------------------------
# module-level operation wrappers


def op_prime_star(F: FusionSystem, **kw) -> FusionSystem:
    return PPrimeAnalysis(F, **kw).e0


def aut0_S(F: FusionSystem, **kw) -> PermGroup:
    return PPrimeAnalysis(F, **kw).aut0


def gamma(F: FusionSystem, **kw) -> GammaReport:
    return PPrimeAnalysis(F, **kw).gamma_report()


def op_prime_system(F: FusionSystem, **kw) -> FusionSystem:
    return PPrimeAnalysis(F, **kw).e1


def subsystems_of_index_prime_to_p(F: FusionSystem, **kw) -> list[Subsystem]:
    return PPrimeAnalysis(F, **kw).subsystems()


def hyperfocal(F: FusionSystem, **kw) -> int:
    return PPrimeAnalysis(F, **kw).hyperfocal()


def theta_via_weakly_closed(F: FusionSystem, a_id: int, **kw) -> ThetaViaA:
    return PPrimeAnalysis(F, **kw).theta_via_weakly_closed(a_id)


def gamma_bounds(F: FusionSystem, a_id: int, z_id: int, **kw) -> WeaklyClosedWitness:
    return PPrimeAnalysis(F, **kw).gamma_bounds(a_id, z_id)


def simplicity_certificate(F: FusionSystem, **kw) -> SimplicityCertificate:
    return PPrimeAnalysis(F, **kw).simplicity_certificate()


def check_centralizer_containment(F: FusionSystem, u_id: int, **kw) -> bool:
    return PPrimeAnalysis(F, **kw).check_centralizer_containment(u_id)


def alperin_generation_check(F: FusionSystem,
                             classified: ClassifiedLattice | None = None,
                             closure_cap: int = CLOSURE_CAP) -> bool:
    """Does the closure of the fully normalized centric-radical automizers
    recover the whole system?"""
    cl = classified or classify_mod.classify(F)
    lat = F.lattice
    seeds = []
    for rid in cl.centric_radical_ids():
        if not cl.fully_normalized[rid]:
            continue
        sg = lat.subgroups[rid]
        aut = F.aut_position_group(rid)
        for gen in aut.generators:
            seeds.append((rid, tuple(sg.elems[gen(pos)] for pos in range(sg.order))))
    E = closure_of_data(lat, F.p, seeds, closure_cap=closure_cap,
                        backend="abstract")
    return E.equal_systems(F)


def _central_core_order(F: FusionSystem, sid: int) -> int:
    """Order of the span of the fusion-stable central part of a subgroup."""
    lat = F.lattice
    labels = F.element_classes()
    by_label: dict[int, list[int]] = {}
    for e in range(lat.n):
        by_label.setdefault(labels[e], []).append(e)
    mask = lat.subgroups[sid].mask
    center = set(lat.center_elems)
    xz = [e for e in lat.subgroups[sid].elems
          if e in center and all((mask >> x) & 1 for x in by_label[labels[e]])]
    return lat.subgroups[lat.generated_subgroup_id(xz or [0])].order


def find_weakly_closed_abelian(F: FusionSystem,
                               classified: ClassifiedLattice | None = None) -> int | None:
    """Largest abelian subgroup normal in S, centric, and weakly closed.

    Ties are broken toward the candidate whose fusion-stable central part
    is largest (so the quotient bounds are applicable), then smallest id.
    """
    cl = classified or classify_mod.classify(F)
    lat = F.lattice
    candidates = []
    for sid in range(len(lat)):
        sg = lat.subgroups[sid]
        if not sg.is_abelian or not cl.centric[sid] or not cl.weakly_closed[sid]:
            continue
        if len(lat.ns_elems[sid]) != lat.n:
            continue
        candidates.append(sid)
    if not candidates:
        return None
    return max(candidates,
               key=lambda sid: (lat.subgroups[sid].order,
                                _central_core_order(F, sid), -sid))


def find_weakly_closed_any(F: FusionSystem,
                           classified: ClassifiedLattice | None = None) -> int:
    """Largest subgroup normal in S, centric, weakly closed (S qualifies)."""
    cl = classified or classify_mod.classify(F)
    lat = F.lattice
    best = lat.full_id
    for sid in range(len(lat)):
        if not cl.centric[sid] or not cl.weakly_closed[sid]:
            continue
        if len(lat.ns_elems[sid]) != lat.n:
            continue
        if (lat.subgroups[sid].order, -sid) > (lat.subgroups[best].order, -best):
            best = sid
    return best
