"""Complete subgroup lattice of a small p-group.

Elements of the ambient p-group S get canonical indices (sorted image
tuples, identity first); a subgroup is a sorted tuple of element indices
plus a bitmask over the element set, so inclusion tests are single big-int
operations.  Subgroups are enumerated bottom-up: every subgroup of order
p^(k+1) is a cyclic extension of one of its maximal subgroups, so extending
each order-p^k subgroup by normalizing elements with p-th power inside
finds everything.

The lattice also carries the S-conjugation action (orbits with witnesses)
and per-subgroup normalizer/centralizer element sets, which downstream
fusion machinery consumes heavily.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded, PreconditionError
from .perm import PermGroup, Permutation

LATTICE_CAP = 256


@dataclass
class Subgroup:
    id: int
    elems: tuple            # sorted element indices
    mask: int
    order: int
    gens: tuple             # canonical generating sequence (element indices)
    is_abelian: bool
    pos_of: dict            # element index -> position in elems


class SubgroupLattice:
    """All subgroups of a p-group S with inclusion and S-conjugation data."""

    def __init__(self, S: PermGroup, p: int, cap: int = LATTICE_CAP):
        order = S.order()
        if order > cap:
            raise CapExceeded(
                f"|S| = {order} exceeds the subgroup-lattice cap {cap}", module="fusion")
        if not S.is_p_group(p):
            raise PreconditionError(f"S is not a {p}-group", module="fusion")
        self.S = S
        self.p = p
        self.n = order

        elems = sorted((g.images for g in S.elements()))
        self.elements = [Permutation(im) for im in elems]
        self.index_of = {im: i for i, im in enumerate(elems)}
        n = self.n
        self.mult = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.elements):
            row = self.mult[i]
            for j, b in enumerate(self.elements):
                row[j] = self.index_of[(a * b).images]
        self.inv = [0] * n
        for i in range(n):
            for j in range(n):
                if self.mult[i][j] == 0:
                    self.inv[i] = j
                    break
        self.elem_order = [self.elements[i].order() for i in range(n)]
        # conjugation tables conj[g][x] = g x g^-1
        self.conj = [[self.mult[g][self.mult[x][self.inv[g]]] for x in range(n)]
                     for g in range(n)]

        self._enumerate_subgroups()
        self._compute_normalizers()
        self._compute_s_classes()

    # -- construction ---------------------------------------------------------

    def _closure(self, idxs) -> int:
        """Mask of the subgroup generated by the given element indices."""
        mask = 1  # identity
        frontier = [0]
        seen = {0}
        gens = [i for i in idxs if i != 0]
        for g in gens:
            if g not in seen:
                seen.add(g)
                frontier.append(g)
                mask |= 1 << g
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mult[x][g]
                    if y not in seen:
                        seen.add(y)
                        mask |= 1 << y
                        new.append(y)
            frontier = new
        return mask

    @staticmethod
    def _mask_to_elems(mask: int) -> tuple:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return tuple(out)

    def _canonical_gens(self, elems: tuple) -> tuple:
        """Greedy minimal generating sequence in global element order."""
        target = 0
        for e in elems:
            target |= 1 << e
        gens: list[int] = []
        mask = 1
        for e in elems:
            if not (mask >> e) & 1:
                gens.append(e)
                mask = self._closure(gens)
                if mask == target:
                    break
        return tuple(gens)

    def _enumerate_subgroups(self):
        p = self.p
        n = self.n
        trivial_mask = 1
        layers = {1: {trivial_mask}}
        order = p
        prev = [trivial_mask]
        all_masks = {trivial_mask}
        while order <= n:
            current = set()
            for hmask in prev:
                helems = self._mask_to_elems(hmask)
                hset = set(helems)
                # x outside H, normalizing H, with x^p in H; then <H, x> is
                # the union of the cosets H x^k, k < p
                for x in range(1, n):
                    if x in hset:
                        continue
                    xp = x
                    for _ in range(p - 1):
                        xp = self.mult[xp][x]
                    if xp not in hset:
                        continue
                    conj_x = self.conj[x]
                    if any(conj_x[h] not in hset for h in helems):
                        continue
                    new_mask = hmask
                    xk = x
                    for _ in range(p - 1):
                        for h in helems:
                            new_mask |= 1 << self.mult[h][xk]
                        xk = self.mult[xk][x]
                    current.add(new_mask)
            layers[order] = current
            all_masks |= current
            prev = sorted(current)
            order *= p

        masks = sorted(all_masks, key=lambda m: (bin(m).count("1"), self._mask_to_elems(m)))
        self.subgroups: list[Subgroup] = []
        self.id_by_mask: dict[int, int] = {}
        for i, mask in enumerate(masks):
            elems = self._mask_to_elems(mask)
            gens = self._canonical_gens(elems)
            ab = all(self.mult[a][b] == self.mult[b][a]
                     for ai, a in enumerate(gens) for b in gens[ai + 1:])
            self.subgroups.append(Subgroup(
                id=i, elems=elems, mask=mask, order=len(elems), gens=gens,
                is_abelian=ab, pos_of={e: k for k, e in enumerate(elems)}))
            self.id_by_mask[mask] = i
        self.full_id = self.id_by_mask[(1 << n) - 1]
        self.trivial_id = self.id_by_mask[1]

        # maximal-subgroup lists (index p)
        by_order: dict[int, list[int]] = {}
        for sg in self.subgroups:
            by_order.setdefault(sg.order, []).append(sg.id)
        self.maximal_subgroups: list[list[int]] = [[] for _ in self.subgroups]
        for sg in self.subgroups:
            if sg.order == 1:
                continue
            sub_order = sg.order // p
            for hid in by_order.get(sub_order, []):
                h = self.subgroups[hid]
                if h.mask & sg.mask == h.mask:
                    self.maximal_subgroups[sg.id].append(hid)

    def _compute_normalizers(self):
        n = self.n
        self.ns_elems: list[tuple] = []
        self.cs_elems: list[tuple] = []
        for sg in self.subgroups:
            hset = set(sg.elems)
            ns = []
            cs = []
            for g in range(n):
                conj_g = self.conj[g]
                if all(conj_g[h] in hset for h in sg.elems):
                    ns.append(g)
                    if all(conj_g[h] == h for h in sg.elems):
                        cs.append(g)
            self.ns_elems.append(tuple(ns))
            self.cs_elems.append(tuple(cs))
        self.center_elems = tuple(self.cs_elems[self.full_id])
        self.center_id = self.subgroup_id_from_elems(self.center_elems)

    def _compute_s_classes(self):
        seen = set()
        self.s_class_reps: list[int] = []
        self.s_class_of: dict[int, int] = {}
        self.s_witness: dict[int, int] = {}  # member id -> g with c_g(rep) = member
        for sg in self.subgroups:
            if sg.id in seen:
                continue
            rep = sg.id
            self.s_class_reps.append(rep)
            ci = len(self.s_class_reps) - 1
            frontier = [(rep, 0)]
            self.s_class_of[rep] = ci
            self.s_witness[rep] = 0
            seen.add(rep)
            while frontier:
                new = []
                for (sid, w) in frontier:
                    for g in range(self.n):
                        tid = self.conjugate_subgroup(sid, g)
                        if tid not in seen:
                            seen.add(tid)
                            wit = self.mult[g][w]
                            self.s_class_of[tid] = ci
                            self.s_witness[tid] = wit
                            new.append((tid, wit))
                frontier = new

    # -- queries ---------------------------------------------------------------

    def elem_array(self):
        """All S-elements as an (n, degree) int32 array, cached."""
        if not hasattr(self, "_elem_array"):
            import numpy as np
            self._elem_array = np.array([p.images for p in self.elements],
                                        dtype=np.int32)
        return self._elem_array

    def conj_elems_by_perm(self, g, elem_idxs) -> list[int]:
        """Conjugate selected S-elements by an ambient permutation g.

        g must conjugate each selected element back into S (it need not
        normalize S itself).
        """
        import numpy as np
        E = self.elem_array()
        gi = np.array(g.images, dtype=np.int32)
        ginv = np.array(g.inverse().images, dtype=np.int32)
        sel = E[list(elem_idxs)]
        conj = gi[sel[:, ginv]]
        try:
            return [self.index_of[tuple(int(v) for v in row)] for row in conj]
        except KeyError:
            raise PreconditionError("conjugate leaves S", module="fusion")

    def subgroup_id_from_elems(self, elems) -> int:
        mask = 0
        for e in elems:
            mask |= 1 << e
        sid = self.id_by_mask.get(mask)
        if sid is None:
            raise PreconditionError("element set is not a subgroup", module="fusion")
        return sid

    def subgroup_id_from_perms(self, perms) -> int:
        """Lattice id of the subgroup generated by the given permutations."""
        try:
            idxs = [self.index_of[g.images] for g in perms]
        except KeyError:
            raise PreconditionError("permutation lies outside S", module="fusion")
        return self.generated_subgroup_id(idxs)

    def generated_subgroup_id(self, elem_idxs) -> int:
        return self.id_by_mask[self._closure(list(elem_idxs))]

    def conjugate_subgroup(self, sid: int, g: int) -> int:
        conj_g = self.conj[g]
        mask = 0
        for e in self.subgroups[sid].elems:
            mask |= 1 << conj_g[e]
        return self.id_by_mask[mask]

    def contains(self, sid_small: int, sid_big: int) -> bool:
        """True when subgroup sid_small <= subgroup sid_big."""
        a = self.subgroups[sid_small].mask
        b = self.subgroups[sid_big].mask
        return a & b == a

    def subgroup_perm_group(self, sid: int) -> PermGroup:
        sg = self.subgroups[sid]
        return PermGroup([self.elements[e] for e in sg.gens], self.S.degree)

    def all_ids_below(self, sid: int):
        mask = self.subgroups[sid].mask
        return [t.id for t in self.subgroups if t.mask & mask == t.mask]

    def exponent_of(self, sid: int) -> int:
        return max(self.elem_order[e] for e in self.subgroups[sid].elems)

    def __len__(self):
        return len(self.subgroups)
