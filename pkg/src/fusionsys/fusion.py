"""Fusion systems over the subgroup lattice of a Sylow p-subgroup.

A fusion system is stored as a groupoid on the lattice: a partition of the
subgroup ids into conjugacy classes, one witness isomorphism from the class
representative to each member, and the automorphism group of the
representative (a permutation group on its element positions).  Every
morphism of the system factors as (witness) o (automorphism) o (inverse
witness) followed by an inclusion, so Hom sets are never materialized
during construction; they are produced on demand as numpy arrays.

Two builders produce the same structure:

* ``group_fusion(G, p)`` realizes conjugation fusion: classes are merged by
  transporter queries in G and automizers are induced by normalizers.
* ``abstract_closure(S, p, seeds)`` computes the smallest fusion system
  containing the seed morphisms and all inner maps: the least fixpoint
  under composition, restriction, and inversion.  Composition and inversion
  are implicit in the groupoid representation, so the fixpoint only has to
  propagate restrictions of newly incorporated generator morphisms to
  maximal subgroups of their domains.

Systems are immutable after construction and morphism queries are pure,
so concurrent reads are safe; closure construction is single-threaded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (CapExceeded, InternalInconsistency,
                     PreconditionError)
from .lattice import LATTICE_CAP, SubgroupLattice
from .perm import PermGroup, Permutation

CLOSURE_CAP = 10**6


@dataclass(frozen=True)
class FusionMorphism:
    """An injective homomorphism between subgroups of S.

    ``gen_images`` pairs each element of the domain's canonical generating
    sequence with its image (both as lattice element indices); the full
    element map is derivable and cached by the owning system.
    """

    domain: int
    codomain: int
    gen_images: tuple


class _WorkClass:
    """Mutable class record used while closing a morphism set."""

    __slots__ = ("rep", "members", "aut_gens", "aut")

    def __init__(self, rep: int, elems: tuple):
        self.rep = rep
        self.members: dict[int, tuple] = {rep: tuple(elems)}
        self.aut_gens: list[tuple] = []
        self.aut: PermGroup = PermGroup([], len(elems))


class FusionData:
    """Groupoid over a subgroup lattice; supports incremental closure."""

    def __init__(self, lattice: SubgroupLattice, object_ids=None,
                 closure_cap: int = CLOSURE_CAP):
        self.lattice = lattice
        self.closure_cap = closure_cap
        ids = sorted(object_ids) if object_ids is not None else range(len(lattice))
        self.objects = set(ids)
        self.class_index: dict[int, int] = {}
        self.classes: list[_WorkClass | None] = []
        self._queue: list[tuple] = []
        # seed with S-conjugation: S-classes and S-automizers
        lat = lattice
        for sid in ids:
            if sid in self.class_index:
                continue
            rep = sid
            sg = lat.subgroups[rep]
            wc = _WorkClass(rep, sg.elems)
            ci = len(self.classes)
            self.classes.append(wc)
            self.class_index[rep] = ci
            # inner automorphisms from N_S(rep)
            for g in lat.ns_elems[rep]:
                conj_g = lat.conj[g]
                perm = tuple(sg.pos_of[conj_g[e]] for e in sg.elems)
                p_perm = Permutation(perm)
                if not p_perm.is_identity() and not wc.aut.chain.contains(p_perm):
                    wc.aut_gens.append(perm)
                    wc.aut = PermGroup([Permutation(t) for t in wc.aut_gens], sg.order)
            # S-conjugates of rep inside the object set
            for member, wit in self._s_class_members(rep):
                if member in self.class_index:
                    continue
                if member not in self.objects:
                    continue
                self.class_index[member] = ci
                wc.members[member] = wit

    def _s_class_members(self, rep: int):
        lat = self.lattice
        sg = lat.subgroups[rep]
        seen = {rep}
        out = []
        frontier = [(rep, tuple(sg.elems))]
        while frontier:
            new = []
            for sid, wit in frontier:
                for g in range(lat.n):
                    conj_g = lat.conj[g]
                    tid = lat.conjugate_subgroup(sid, g)
                    if tid in seen:
                        continue
                    seen.add(tid)
                    new_wit = tuple(conj_g[x] for x in wit)
                    out.append((tid, new_wit))
                    new.append((tid, new_wit))
            frontier = new
        return out

    # -- closure -----------------------------------------------------------------

    def find(self, sid: int) -> int:
        return self.class_index[sid]

    def work_class(self, sid: int) -> _WorkClass:
        return self.classes[self.class_index[sid]]

    def morphism_count(self) -> int:
        total = 0
        for wc in self.classes:
            if wc is not None:
                total += len(wc.members) ** 2 * wc.aut.order()
        return total

    def _check_cap(self):
        if self.morphism_count() > self.closure_cap:
            raise CapExceeded(
                f"morphism closure exceeded cap {self.closure_cap}", module="fusion")

    def add_seed(self, domain_id: int, images: tuple):
        """Queue a morphism (images aligned with the domain's element tuple)."""
        self._queue.append((domain_id, images))

    def close(self):
        while self._queue:
            domain_id, images = self._queue.pop()
            self._incorporate(domain_id, images)
        self._check_cap()

    def _image_subgroup(self, images) -> int:
        lat = self.lattice
        mask = 0
        for e in images:
            mask |= 1 << e
        sid = lat.id_by_mask.get(mask)
        if sid is None:
            raise PreconditionError("morphism image is not a subgroup", module="fusion")
        return sid

    def _to_rep_map(self, sid: int):
        """Witness rep -> sid as an image tuple over rep positions."""
        return self.work_class(sid).members[sid]

    def _incorporate(self, domain_id: int, images: tuple):
        lat = self.lattice
        dom = lat.subgroups[domain_id]
        img_id = self._image_subgroup(images)
        if domain_id not in self.objects or img_id not in self.objects:
            raise PreconditionError("morphism endpoints outside the object set",
                                    module="fusion")
        _validate_homomorphism(lat, dom, images)
        ci = self.find(domain_id)
        cj = self.find(img_id)
        phi = {e: images[k] for k, e in enumerate(dom.elems)}
        if ci == cj:
            wc = self.classes[ci]
            rep_sg = lat.subgroups[wc.rep]
            w_dom = wc.members[domain_id]
            w_img = wc.members[img_id]
            inv_img = {e: r for r, e in enumerate(w_img)}
            perm = tuple(inv_img[phi[w_dom[r]]] for r in range(rep_sg.order))
            p = Permutation(perm)
            if wc.aut.chain.contains(p):
                return
            wc.aut_gens.append(perm)
            wc.aut = PermGroup([Permutation(t) for t in wc.aut_gens], rep_sg.order)
        else:
            # merge class cj into ci through phi
            wc_i = self.classes[ci]
            wc_j = self.classes[cj]
            rep_i = lat.subgroups[wc_i.rep]
            w_dom = wc_i.members[domain_id]          # rep_i -> domain
            w_img = wc_j.members[img_id]             # rep_j -> image
            inv_img = {e: r for r, e in enumerate(w_img)}
            # bridge: rep_i -> rep_j positions
            bridge = tuple(inv_img[phi[w_dom[r]]] for r in range(rep_i.order))
            # every member of cj joins ci: witness = member-witness o bridge
            for member, wit in wc_j.members.items():
                wc_i.members[member] = tuple(wit[bridge[r]] for r in range(rep_i.order))
                self.class_index[member] = ci
            # conjugate aut generators of rep_j back to rep_i
            inv_bridge = [0] * len(bridge)
            for r, s in enumerate(bridge):
                inv_bridge[s] = r
            for a in wc_j.aut_gens:
                conj = tuple(inv_bridge[a[bridge[r]]] for r in range(rep_i.order))
                wc_i.aut_gens.append(conj)
            wc_i.aut = PermGroup([Permutation(t) for t in wc_i.aut_gens], rep_i.order)
            self.classes[cj] = None
        self._check_cap()
        # propagate restrictions of this new generator morphism to maximal
        # subgroups of its domain (deeper restrictions arise recursively;
        # composites and inverses are implicit in the class structure)
        for mid in lat.maximal_subgroups[domain_id]:
            if mid not in self.objects:
                continue
            msg = lat.subgroups[mid]
            self._queue.append((mid, tuple(phi[e] for e in msg.elems)))

    # -- queries ------------------------------------------------------------------

    def same_class(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def contains_morphism(self, domain_id: int, images: tuple) -> bool:
        lat = self.lattice
        dom = lat.subgroups[domain_id]
        mask = 0
        for e in images:
            mask |= 1 << e
        img_id = lat.id_by_mask.get(mask)
        if img_id is None or img_id not in self.objects:
            return False
        if self.find(domain_id) != self.find(img_id):
            return False
        wc = self.work_class(domain_id)
        rep_sg = lat.subgroups[wc.rep]
        phi = {e: images[k] for k, e in enumerate(dom.elems)}
        w_dom = wc.members[domain_id]
        w_img = wc.members[img_id]
        inv_img = {e: r for r, e in enumerate(w_img)}
        perm = tuple(inv_img[phi[w_dom[r]]] for r in range(rep_sg.order))
        return wc.aut.chain.contains(Permutation(perm))


def _validate_homomorphism(lat: SubgroupLattice, dom, images: tuple):
    """Injectivity plus the multiplication table check on the full map."""
    if len(set(images)) != len(images):
        raise PreconditionError("morphism not injective", module="fusion")
    phi = {e: images[k] for k, e in enumerate(dom.elems)}
    if phi.get(0) != 0:
        raise PreconditionError("morphism must fix the identity", module="fusion")
    for a in dom.gens:
        for b in dom.elems:
            if phi[lat.mult[a][b]] != lat.mult[phi[a]][phi[b]]:
                raise PreconditionError("morphism is not a homomorphism", module="fusion")


# ---------------------------------------------------------------------------
# the public fusion system


class FClassView:
    """Read-only class data: representative, members, witnesses, automizer."""

    __slots__ = ("rep", "members", "witness", "aut", "aut_order")

    def __init__(self, rep, members, witness, aut):
        self.rep = rep
        self.members = members          # sorted tuple of subgroup ids
        self.witness = witness          # id -> image tuple over rep positions
        self.aut = aut                  # PermGroup on rep positions
        self.aut_order = aut.order()


class FusionSystem:
    """A fusion system over S, either realized by a group or abstract."""

    def __init__(self, lattice: SubgroupLattice, p: int, data: FusionData,
                 backend: str, group: PermGroup | None = None,
                 label: str | None = None):
        self.lattice = lattice
        self.p = p
        self.backend = backend
        self.group = group
        self.label = label
        self._classes: list[FClassView] = []
        self.class_of: dict[int, int] = {}
        self._hom_rows_cache: dict[int, tuple] = {}
        self._domain_rows_cache: dict[int, np.ndarray] = {}
        self._element_class: list[int] | None = None
        self._normalize(data)

    # -- normalization -----------------------------------------------------------

    def _normalize(self, data: FusionData):
        lat = self.lattice
        raw = [wc for wc in data.classes if wc is not None]
        raw.sort(key=lambda wc: min(wc.members))
        for wc in raw:
            members = sorted(wc.members)
            # canonical representative: maximal |N_S|, then smallest id
            rep = max(members, key=lambda sid: (len(lat.ns_elems[sid]), -sid))
            old_rep_sg = lat.subgroups[wc.rep]
            w_rep = wc.members[rep]
            inv_w_rep = {e: r for r, e in enumerate(w_rep)}
            rep_sg = lat.subgroups[rep]
            # translate witnesses: new witness = old witness o (w_rep)^-1
            sigma = [0] * rep_sg.order   # rep position -> old rep position
            for r_old in range(old_rep_sg.order):
                sigma[rep_sg.pos_of[w_rep[r_old]]] = r_old
            witness = {}
            for member in members:
                w_m = wc.members[member]
                witness[member] = tuple(w_m[sigma[r]] for r in range(rep_sg.order))
            aut_gens = []
            for a in wc.aut_gens:
                # conjugate: new position r -> via sigma to old frame and back
                perm = tuple(rep_sg.pos_of[w_rep[a[sigma[r]]]] for r in range(rep_sg.order))
                aut_gens.append(Permutation(perm))
            aut = PermGroup(aut_gens, rep_sg.order)
            if aut.order() != wc.aut.order():
                raise InternalInconsistency("automizer changed under re-rooting",
                                            module="fusion")
            view = FClassView(rep, tuple(members), witness, aut)
            idx = len(self._classes)
            self._classes.append(view)
            for member in members:
                self.class_of[member] = idx

    # -- basic views ---------------------------------------------------------------

    @property
    def S(self) -> PermGroup:
        return self.lattice.S

    def classes(self) -> list[FClassView]:
        return self._classes

    def class_view(self, sid: int) -> FClassView:
        return self._classes[self.class_of[sid]]

    def class_ids(self, sid: int) -> tuple:
        return self.class_view(sid).members

    def is_weakly_closed_id(self, sid: int) -> bool:
        return len(self.class_view(sid).members) == 1

    def aut_order(self, sid: int) -> int:
        return self.class_view(sid).aut_order

    def full_id(self) -> int:
        return self.lattice.full_id

    # -- morphism material -----------------------------------------------------------

    def hom_rows(self, class_idx: int):
        """All morphisms rep -> S of one class, as an array of image tuples.

        Returns (rows, member_ids): rows[i] is a full image tuple over the
        representative's element positions; member_ids[i] is the image
        subgroup id.
        """
        cached = self._hom_rows_cache.get(class_idx)
        if cached is not None:
            return cached
        view = self._classes[class_idx]
        lat = self.lattice
        rep_sg = lat.subgroups[view.rep]
        aut_arr = np.array([list(a.images) for a in view.aut.elements()], dtype=np.int32)
        blocks = []
        members = []
        for member in view.members:
            w = np.array(view.witness[member], dtype=np.int32)
            blocks.append(w[aut_arr])
            members.append(np.full(aut_arr.shape[0], member, dtype=np.int32))
        rows = np.concatenate(blocks, axis=0)
        member_ids = np.concatenate(members)
        self._hom_rows_cache[class_idx] = (rows, member_ids)
        return rows, member_ids

    def domain_rows(self, sid: int) -> np.ndarray:
        """All morphisms with domain sid, rows aligned to sid's element tuple."""
        cached = self._domain_rows_cache.get(sid)
        if cached is not None:
            return cached
        view = self.class_view(sid)
        lat = self.lattice
        rep_sg = lat.subgroups[view.rep]
        rows, _ = self.hom_rows(self.class_of[sid])
        w = view.witness[sid]
        sg = lat.subgroups[sid]
        # column j of the new array corresponds to element sg.elems[j], whose
        # preimage position under the witness is sigma[j]
        inv_w = {e: r for r, e in enumerate(w)}
        sigma = np.array([inv_w[e] for e in sg.elems], dtype=np.int32)
        out = rows[:, sigma]
        self._domain_rows_cache[sid] = out
        return out

    def morphism_in(self, domain_id: int, images: tuple) -> bool:
        lat = self.lattice
        mask = 0
        for e in images:
            mask |= 1 << e
        img_id = lat.id_by_mask.get(mask)
        if img_id is None:
            return False
        if self.class_of.get(domain_id) != self.class_of.get(img_id):
            return False
        view = self.class_view(domain_id)
        rep_sg = lat.subgroups[view.rep]
        dom = lat.subgroups[domain_id]
        phi = {e: images[k] for k, e in enumerate(dom.elems)}
        w_dom = view.witness[domain_id]
        w_img = view.witness[img_id]
        inv_img = {e: r for r, e in enumerate(w_img)}
        perm = tuple(inv_img[phi[w_dom[r]]] for r in range(rep_sg.order))
        return view.aut.chain.contains(Permutation(perm))

    def hom(self, P: int, Q: int) -> list[FusionMorphism]:
        """Enumerate Hom_F(P, Q), complete and duplicate-free."""
        lat = self.lattice
        rows = self.domain_rows(P)
        qmask = lat.subgroups[Q].mask
        sg = lat.subgroups[P]
        gen_cols = [sg.pos_of[g] for g in sg.gens]
        out = []
        seen = set()
        for row in rows:
            mask = 0
            for e in row:
                mask |= 1 << int(e)
            if mask & qmask != mask:
                continue
            img_id = lat.id_by_mask[mask]
            key = tuple(int(row[c]) for c in gen_cols)
            if key in seen:
                continue
            seen.add(key)
            out.append(FusionMorphism(
                domain=P, codomain=Q,
                gen_images=tuple(zip(sg.gens, key))))
        return out

    def hom_count(self, P: int, Q: int) -> int:
        view = self.class_view(P)
        lat = self.lattice
        qmask = lat.subgroups[Q].mask
        inside = sum(1 for m in view.members
                     if lat.subgroups[m].mask & qmask == lat.subgroups[m].mask)
        return inside * view.aut_order

    def full_map(self, m: FusionMorphism) -> dict:
        """Derive the full element map of a morphism from generator images."""
        lat = self.lattice
        phi = {0: 0}
        frontier = [0]
        gen_map = dict(m.gen_images)
        while frontier:
            new = []
            for x in frontier:
                for g, img in gen_map.items():
                    y = lat.mult[x][g]
                    if y not in phi:
                        phi[y] = lat.mult[phi[x]][img]
                        new.append(y)
            frontier = new
        return phi

    def aut_F(self, sid: int) -> PermGroup:
        """Automizer as a permutation group on the nonidentity elements of P."""
        lat = self.lattice
        if sid == lat.trivial_id:
            raise PreconditionError(
                "automizer of the trivial subgroup is rejected (no points to act on)",
                module="fusion")
        view = self.class_view(sid)
        rep_sg = lat.subgroups[view.rep]
        sg = lat.subgroups[sid]
        w = view.witness[sid]
        inv_w = {e: r for r, e in enumerate(w)}
        gens = []
        for a in view.aut.generators:
            # translate to sid's frame, then drop the identity position
            perm = [0] * sg.order
            for j, e in enumerate(sg.elems):
                perm[j] = sg.pos_of[w[a(inv_w[e])]]
            gens.append(Permutation([x - 1 for x in perm[1:]]))
        return PermGroup(gens, sg.order - 1)

    def aut_position_group(self, sid: int) -> PermGroup:
        """Automizer acting on all element positions of sid (identity first)."""
        lat = self.lattice
        view = self.class_view(sid)
        sg = lat.subgroups[sid]
        w = view.witness[sid]
        inv_w = {e: r for r, e in enumerate(w)}
        gens = []
        for a in view.aut.generators:
            perm = [sg.pos_of[w[a(inv_w[e])]] for e in sg.elems]
            gens.append(Permutation(perm))
        return PermGroup(gens, sg.order)

    # -- element fusion ----------------------------------------------------------

    def element_classes(self) -> list[int]:
        """Class label per element index (orbit of the groupoid on elements)."""
        if self._element_class is not None:
            return self._element_class
        lat = self.lattice
        n = lat.n
        label = list(range(n))

        def find(x):
            while label[x] != x:
                label[x] = label[label[x]]
                x = label[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                label[max(ra, rb)] = min(ra, rb)

        cyclic_ids = {lat.generated_subgroup_id([e]) for e in range(1, n)}
        for sid in cyclic_ids:
            sg = lat.subgroups[sid]
            rows = self.domain_rows(sid)
            for j, e in enumerate(sg.elems):
                if lat.elem_order[e] != sg.order:
                    continue  # handled by the smaller cyclic subgroup
                for v in np.unique(rows[:, j]):
                    union(e, int(v))
        self._element_class = [find(x) for x in range(n)]
        return self._element_class

    # -- comparisons ---------------------------------------------------------------

    def equal_systems(self, other: "FusionSystem") -> bool:
        """Exact equality of two systems over the same lattice.

        Checks class partitions, automizer orders at shared representatives,
        and membership of every groupoid generator of one system in the
        other; together these pin the morphism sets.
        """
        if self.lattice is not other.lattice:
            if (self.lattice.S.degree != other.lattice.S.degree
                    or self.lattice.n != other.lattice.n
                    or [g.images for g in self.lattice.elements]
                    != [g.images for g in other.lattice.elements]):
                raise PreconditionError(
                    "equal_systems requires systems over the same S", module="fusion")
        for view in self._classes:
            if other.class_of.get(view.rep) is None:
                return False
            if set(other.class_view(view.rep).members) != set(view.members):
                return False
            if other.aut_order(view.rep) != view.aut_order:
                return False
        # generator containment (both directions are implied by the counts,
        # but check one direction explicitly for safety)
        return self._generators_in(other) and other._generators_in(self)

    def _generators_in(self, other: "FusionSystem") -> bool:
        lat = self.lattice
        for view in self._classes:
            rep_sg = lat.subgroups[view.rep]
            for a in view.aut.generators:
                images = tuple(rep_sg.elems[a(r)] for r in range(rep_sg.order))
                if not other.morphism_in(view.rep, images):
                    return False
            for member in view.members:
                if not other.morphism_in(view.rep, view.witness[member]):
                    return False
        return True

    def fingerprint(self) -> dict:
        """Isomorphism-insensitive summary used for cross-S comparisons."""
        lat = self.lattice
        per_class = sorted(
            (lat.subgroups[v.rep].order, len(v.members), v.aut_order,
             lat.subgroups[v.rep].is_abelian)
            for v in self._classes)
        return {
            "p": self.p,
            "sylow_order": lat.n,
            "subgroup_count": len(lat),
            "class_count": len(self._classes),
            "classes": per_class,
        }

    # -- dump format -------------------------------------------------------------

    def dump(self) -> str:
        """Serialize to the structured text dump format."""
        lat = self.lattice
        lines = ["fusion-dump 1", f"prime {self.p}", f"degree {lat.S.degree}"]
        gens = "; ".join(g.cycle_string() for g in lat.S.generators) or "()"
        lines.append(f"sylow {gens}")
        for view in self._classes:
            rep_sg = lat.subgroups[view.rep]
            srcs = [lat.elements[g].cycle_string() for g in rep_sg.gens]
            gen_positions = [rep_sg.pos_of[g] for g in rep_sg.gens]
            for a in view.aut.generators:
                dsts = [lat.elements[rep_sg.elems[a(pos)]].cycle_string()
                        for pos in gen_positions]
                lines.append("morphism " + " ; ".join(srcs) + " -> " + " ; ".join(dsts))
            for member in view.members:
                if member == view.rep:
                    continue
                w = view.witness[member]
                dsts = [lat.elements[w[pos]].cycle_string() for pos in gen_positions]
                lines.append("morphism " + " ; ".join(srcs) + " -> " + " ; ".join(dsts))
        lines.append("# lattice table: id order |class(id)| |aut|")
        for sid, sg in enumerate(lat.subgroups):
            lines.append(f"# subgroup {sid} {sg.order} {len(self.class_ids(sid))} "
                         f"{self.aut_order(sid)}")
        lines.append("# class partition: " + " | ".join(
            ",".join(map(str, v.members)) for v in self._classes))
        return "\n".join(lines) + "\n"


def parse_dump(text: str, lattice_cap: int = LATTICE_CAP,
               closure_cap: int = CLOSURE_CAP) -> "FusionSystem":
    """Rebuild an abstract fusion system from the dump format.

    Only the header lines and the morphism seeds are consumed; the lattice
    and class tables in the dump are regression commentary.
    """
    prime = None
    degree = None
    sylow_gens: list[Permutation] | None = None
    seeds = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("fusion-dump"):
            if line.split()[1] != "1":
                raise PreconditionError("unsupported dump version", module="fusion")
            continue
        if line.startswith("prime "):
            prime = int(line.split()[1])
            continue
        if line.startswith("degree "):
            degree = int(line.split()[1])
            continue
        if line.startswith("sylow "):
            if degree is None:
                raise PreconditionError("degree must precede sylow", module="fusion")
            body = line[len("sylow "):]
            sylow_gens = [Permutation.parse(tok.strip(), degree)
                          for tok in body.split(";")]
            continue
        if line.startswith("morphism "):
            if degree is None:
                raise PreconditionError("degree must precede morphisms", module="fusion")
            body = line[len("morphism "):]
            src_txt, dst_txt = body.split("->")
            src = [Permutation.parse(tok.strip(), degree)
                   for tok in src_txt.split(";")]
            dst = [Permutation.parse(tok.strip(), degree)
                   for tok in dst_txt.split(";")]
            if len(src) != len(dst):
                raise PreconditionError("morphism arity mismatch", module="fusion")
            seeds.append((src, dst))
            continue
        raise PreconditionError(f"unrecognized dump line: {line!r}", module="fusion")
    if prime is None or degree is None or sylow_gens is None:
        raise PreconditionError("dump missing prime/degree/sylow header",
                                module="fusion")
    S = PermGroup(sylow_gens, degree)
    return abstract_closure(S, prime, seeds, lattice_cap=lattice_cap,
                            closure_cap=closure_cap, label="dump")


# ---------------------------------------------------------------------------
# builders


def group_fusion(G: PermGroup, p: int, sylow: PermGroup | None = None,
                 lattice_cap: int = LATTICE_CAP, closure_cap: int = CLOSURE_CAP,
                 label: str | None = None, seed: int = 0) -> FusionSystem:
    """The conjugation fusion system of G over a Sylow p-subgroup."""
    if G.order() % p != 0:
        raise PreconditionError(f"{p} does not divide |G|", module="fusion")
    if sylow is None:
        S = G.sylow(p, seed=seed)
    else:
        S = sylow
        target = 1
        n = G.order()
        while n % p == 0:
            target, n = target * p, n // p
        if S.order() != target or not S.is_subgroup_of(G):
            raise PreconditionError("supplied subgroup is not a Sylow p-subgroup",
                                    module="fusion")
    lat = SubgroupLattice(S, p, cap=lattice_cap)
    data = FusionData(lat, closure_cap=closure_cap)
    data.close()  # S-fusion baseline

    # merge S-classes into G-classes: invariant buckets, then transporter tests
    def invariant(sid):
        sg = lat.subgroups[sid]
        return (sg.order, tuple(sorted(lat.elements[e].cycle_type() for e in sg.elems)))

    buckets: dict[tuple, list[int]] = {}
    for rep in lat.s_class_reps:
        buckets.setdefault(invariant(rep), []).append(rep)
    pgs = {rep: lat.subgroup_perm_group(rep) for rep in lat.s_class_reps}
    for bucket in buckets.values():
        anchors: list[int] = []
        for rep in bucket:
            placed = False
            for anchor in anchors:
                if data.same_class(anchor, rep):
                    placed = True
                    break
                t = G.transporter(pgs[anchor], pgs[rep])
                if t is not None:
                    sg = lat.subgroups[anchor]
                    data.add_seed(anchor, tuple(
                        lat.conj_elems_by_perm(t, sg.elems)))
                    data.close()
                    placed = True
                    break
            if not placed:
                anchors.append(rep)

    # automizers at class representatives, induced by normalizers
    done = set()
    for sid in range(len(lat)):
        ci = data.find(sid)
        if ci in done:
            continue
        done.add(ci)
        wc = data.classes[ci]
        rep = max(wc.members, key=lambda s: (len(lat.ns_elems[s]), -s))
        sg = lat.subgroups[rep]
        if sg.order == 1:
            continue
        P = lat.subgroup_perm_group(rep)
        N = G.normalizer(P)
        C = G.centralizer(P)
        expected = N.order() // C.order()
        for ngen in N.reduced().generators:
            data.add_seed(rep, tuple(lat.conj_elems_by_perm(ngen, sg.elems)))
        data.close()
        got = data.classes[data.find(rep)].aut.order()
        if got != expected:
            raise InternalInconsistency(
                f"automizer order {got} != |N|/|C| = {expected}", module="fusion")
    return FusionSystem(lat, p, data, backend="group", group=G, label=label)


def abstract_closure(S: PermGroup, p: int, seeds, lattice_cap: int = LATTICE_CAP,
                     closure_cap: int = CLOSURE_CAP,
                     lattice: SubgroupLattice | None = None,
                     label: str | None = None) -> FusionSystem:
    """Smallest fusion system over S containing the seed morphisms.

    Seeds are (domain_elements, image_elements) pairs of Permutation lists:
    parallel lists mapping generators of a subgroup of S to their images.
    """
    lat = lattice if lattice is not None else SubgroupLattice(S, p, cap=lattice_cap)
    data = FusionData(lat, closure_cap=closure_cap)
    for dom_perms, img_perms in seeds:
        dom_idx = [lat.index_of[g.images] for g in dom_perms]
        img_idx = [lat.index_of[g.images] for g in img_perms]
        did = lat.generated_subgroup_id(dom_idx)
        images = _extend_generator_map(lat, did, dom_idx, img_idx)
        data.add_seed(did, images)
    data.close()
    return FusionSystem(lat, p, data, backend="abstract", label=label)


def closure_of_data(lat: SubgroupLattice, p: int, seed_maps,
                    object_ids=None, closure_cap: int = CLOSURE_CAP,
                    backend: str = "abstract", label=None,
                    group=None) -> FusionSystem:
    """Closure from (domain_id, image_tuple) seeds over an optional object set."""
    data = FusionData(lat, object_ids=object_ids, closure_cap=closure_cap)
    for did, images in seed_maps:
        data.add_seed(did, images)
    data.close()
    return FusionSystem(lat, p, data, backend=backend, label=label, group=group)


def _extend_generator_map(lat: SubgroupLattice, did: int, dom_idx, img_idx) -> tuple:
    """Extend a generator assignment to the full element map, validating it."""
    sg = lat.subgroups[did]
    phi = {0: 0}
    frontier = [0]
    gen_map = dict(zip(dom_idx, img_idx))
    while frontier:
        new = []
        for x in frontier:
            for g, img in gen_map.items():
                y = lat.mult[x][g]
                fy = lat.mult[phi[x]][img]
                if y not in phi:
                    phi[y] = fy
                    new.append(y)
                elif phi[y] != fy:
                    raise PreconditionError("seed map is not a homomorphism",
                                            module="fusion")
        frontier = new
    if len(phi) != sg.order:
        raise InternalInconsistency("generator map did not cover its domain",
                                    module="fusion")
    return tuple(phi[e] for e in sg.elems)


# ---------------------------------------------------------------------------
# constructions on systems


def inner_fusion(S: PermGroup, p: int, lattice_cap: int = LATTICE_CAP) -> FusionSystem:
    """The fusion system of S itself (S-conjugation only)."""
    return abstract_closure(S, p, [], lattice_cap=lattice_cap, label="inner")


def product(F1: FusionSystem, F2: FusionSystem,
            lattice_cap: int = LATTICE_CAP,
            closure_cap: int = CLOSURE_CAP) -> FusionSystem:
    """Direct product system over S1 x S2 on the disjoint union of domains."""
    from .catalog import direct_product
    if F1.p != F2.p:
        raise PreconditionError("products need a common prime", module="fusion")
    S1, S2 = F1.lattice.S, F2.lattice.S
    S = direct_product(S1, S2)
    lat = SubgroupLattice(S, F1.p, cap=lattice_cap)
    d1 = S1.degree
    seeds = []

    def pair_up(perm1: Permutation | None, perm2: Permutation | None) -> Permutation:
        img1 = perm1.images if perm1 else tuple(range(S1.degree))
        img2 = perm2.images if perm2 else tuple(range(S2.degree))
        return Permutation(list(img1) + [d1 + x for x in img2])

    for F, side in ((F1, 0), (F2, 1)):
        latF = F.lattice
        for view in F.classes():
            rep_sg = latF.subgroups[view.rep]
            srcs = [latF.elements[g] for g in rep_sg.gens]
            gen_positions = [rep_sg.pos_of[g] for g in rep_sg.gens]
            mor_images = []
            for a in view.aut.generators:
                mor_images.append([latF.elements[rep_sg.elems[a(pos)]]
                                   for pos in gen_positions])
            for member in view.members:
                if member == view.rep:
                    continue
                w = view.witness[member]
                mor_images.append([latF.elements[w[pos]] for pos in gen_positions])
            for dsts in mor_images:
                if side == 0:
                    dom = [pair_up(g, None) for g in srcs] + \
                          [pair_up(None, g) for g in S2.generators]
                    img = [pair_up(g, None) for g in dsts] + \
                          [pair_up(None, g) for g in S2.generators]
                else:
                    dom = [pair_up(None, g) for g in srcs] + \
                          [pair_up(g, None) for g in S1.generators]
                    img = [pair_up(None, g) for g in dsts] + \
                          [pair_up(g, None) for g in S1.generators]
                seeds.append((dom, img))
    label = f"({F1.label})x({F2.label})" if F1.label and F2.label else None
    return abstract_closure(S, F1.p, seeds, lattice=lat,
                            closure_cap=closure_cap, label=label)


def quotient_by_central(F: FusionSystem, Z_id: int,
                        closure_cap: int = CLOSURE_CAP) -> FusionSystem:
    """F/Z over S/Z for a central subgroup Z, with induced morphisms."""
    from .classify import is_central_in_F
    lat = F.lattice
    if not is_central_in_F(F, Z_id):
        raise PreconditionError("Z is not central in F", module="fusion")
    z_elems = lat.subgroups[Z_id].elems
    if len(z_elems) == 1:
        return F
    n = lat.n
    coset_of = [min(lat.mult[z][e] for z in z_elems) for e in range(n)]
    points = sorted(set(coset_of))
    point_index = {r: i for i, r in enumerate(points)}

    def induced_point_map(elem_map: dict) -> dict:
        return {point_index[coset_of[e]]: point_index[coset_of[img]]
                for e, img in elem_map.items()}

    # quotient group: left multiplication on cosets
    qgens = []
    for g in F.S.generators:
        gi = lat.index_of[g.images]
        img = [point_index[coset_of[lat.mult[gi][r]]] for r in points]
        qgens.append(Permutation(img))
    Sq = PermGroup(qgens, len(points))
    if Sq.order() != n // len(z_elems):
        raise InternalInconsistency("quotient action is not faithful", module="fusion")
    latq = SubgroupLattice(Sq, F.p, cap=LATTICE_CAP)

    # elements of S/Z as permutations of the coset points, indexed by coset rep
    elem_perm_of_coset = {}
    for e in range(n):
        r = coset_of[e]
        if r not in elem_perm_of_coset:
            img = [point_index[coset_of[lat.mult[e][pt]]] for pt in points]
            elem_perm_of_coset[r] = Permutation(img)

    def project(elem_idxs):
        return [elem_perm_of_coset[coset_of[e]] for e in elem_idxs]

    seeds = []
    for view in F.classes():
        rep_sg = lat.subgroups[view.rep]
        gen_positions = [rep_sg.pos_of[g] for g in rep_sg.gens]
        srcs = project(rep_sg.gens)
        mor_images = []
        for a in view.aut.generators:
            mor_images.append(project([rep_sg.elems[a(pos)] for pos in gen_positions]))
        for member in view.members:
            if member == view.rep:
                continue
            w = view.witness[member]
            mor_images.append(project([w[pos] for pos in gen_positions]))
        for dsts in mor_images:
            seeds.append((srcs, dsts))
    label = f"{F.label}/Z" if F.label else None
    return abstract_closure(Sq, F.p, seeds, lattice=latq,
                            closure_cap=closure_cap, label=label)


def centralizer_system(F: FusionSystem, U_id: int,
                       lattice_cap: int = LATTICE_CAP,
                       closure_cap: int = CLOSURE_CAP) -> FusionSystem:
    """The centralizer subsystem of a fully centralized abelian subgroup.

    Only available for group-realized systems; the result is the fusion
    system of C_G(U) over C_S(U).
    """
    if F.backend != "group":
        raise PreconditionError(
            "centralizer systems are only constructed for group-realized systems",
            module="fusion")
    lat = F.lattice
    sg = lat.subgroups[U_id]
    if not sg.is_abelian:
        raise PreconditionError("U must be abelian", module="fusion")
    cs_len = len(lat.cs_elems[U_id])
    if any(len(lat.cs_elems[m]) > cs_len for m in F.class_ids(U_id)):
        raise PreconditionError("U is not fully centralized", module="fusion")
    U = lat.subgroup_perm_group(U_id)
    CG = F.group.centralizer(U)
    CS = PermGroup([lat.elements[e] for e in lat.cs_elems[U_id]], F.S.degree)
    label = f"C_{F.label}(U{U_id})" if F.label else None
    return group_fusion(CG, F.p, sylow=CS, lattice_cap=lattice_cap,
                        closure_cap=closure_cap, label=label)
