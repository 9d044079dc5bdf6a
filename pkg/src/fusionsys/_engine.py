"""Search backends for centralizer / normalizer / transporter queries.

Three strategies, selected by ``PermGroup``:

* dense: enumerate the whole group once (vectorized, cached) and answer by
  scanning.  Conjugation membership tests use 64-bit row hashes with exact
  verification, so results are exact: the hash filter can produce false
  positives (verified away) but never false negatives.
* natural: the ambient group is Sym/Alt on its moved points, so a query
  about subgroups localizes to their support; the complement contributes an
  explicit symmetric factor.  The support search is a small depth-first
  search with conjugation propagation.
* backtrack: generic DFS over base images of the stabilizer chain, used
  when neither shortcut applies.
"""

from __future__ import annotations

import itertools
from math import factorial

import numpy as np

from .errors import InternalInconsistency, PreconditionError
from .perm import PermGroup, Permutation


# ---------------------------------------------------------------------------
# shared helpers


def _group_from_rows(G: PermGroup, rows, expected: int) -> PermGroup:
    """Build the subgroup whose elements are the given rows (count known).

    Rows are probed in a strided order first: a handful of well-spread
    elements almost always generates the whole subgroup, which avoids
    sifting every row when the result is large.
    """
    n = len(rows)
    stride = max(1, n // 997)
    order_pass = itertools.chain(range(0, n, stride),
                                 (i for i in range(n) if i % stride))
    gens: list[Permutation] = []
    grp = PermGroup([], G.degree)
    if expected == 1:
        return grp
    for i in order_pass:
        row = rows[i]
        p = Permutation(tuple(int(v) for v in row))
        if p not in grp:
            gens.append(p)
            grp = PermGroup(gens, G.degree)
            if grp.order() == expected:
                return grp
    raise InternalInconsistency(
        f"row set of size {expected} is not a group (got {grp.order()})",
        module="permgroup")


def _subgroup_elements(H: PermGroup):
    elems = list(H.elements())
    if len(elems) > 100_000:
        raise PreconditionError("subgroup too large for search", module="permgroup")
    return elems


# ---------------------------------------------------------------------------
# dense backend


def _chunks(n, step=1 << 17):
    for i in range(0, n, step):
        yield i, min(n, i + step)


def dense_centralizer(G: PermGroup, H: PermGroup) -> PermGroup:
    arr = G.elements_dense()
    n = arr.shape[0]
    gens = [np.array(g.images) for g in H.generators]
    mask = np.ones(n, dtype=bool)
    for x in gens:
        for lo, hi in _chunks(n):
            chunk = arr[lo:hi]
            # g*x == x*g rowwise
            ok = (chunk[:, x] == x[chunk]).all(axis=1)
            mask[lo:hi] &= ok
    count = int(mask.sum())
    return _group_from_rows(G, arr[mask], count)


def _conj_hashes(arr: np.ndarray, x: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Row hashes of g x g^-1 for every row g, without forming the conjugates."""
    n = arr.shape[0]
    out = np.empty(n, dtype=np.uint64)
    for lo, hi in _chunks(n, 1 << 16):
        chunk = arr[lo:hi]
        out[lo:hi] = (w[chunk] * chunk[:, x].astype(np.uint64)).sum(axis=1)
    return out


def _conj_into_mask(G: PermGroup, gens, target_elems) -> np.ndarray:
    """Mask of rows g with g x g^-1 in target, for every x in gens (exact)."""
    arr = G.elements_dense()
    n = arr.shape[0]
    w = G._hash_weights()
    target_arr = np.array([t.images for t in target_elems], dtype=np.int64)
    target_hashes = np.unique((w[np.newaxis, :] * target_arr.astype(np.uint64)).sum(axis=1))
    mask = np.ones(n, dtype=bool)
    for x in gens:
        x_arr = np.array(x.images)
        mask &= np.isin(_conj_hashes(arr, x_arr, w), target_hashes)
    # exact verification of survivors (hash filter has no false negatives)
    idx = np.flatnonzero(mask)
    if idx.size:
        target_set = {t.images for t in target_elems}
        bad = []
        rows = arr[idx]
        for x in gens:
            x_arr = np.array(x.images)
            lhs = rows[:, x_arr]
            # g x g^-1 in target  <=>  g*x == y*g for some y in target
            ok = np.zeros(idx.size, dtype=bool)
            for t in target_arr:
                ok |= (lhs == t[rows]).all(axis=1)
            bad.append(~ok)
        bad_any = np.zeros(idx.size, dtype=bool)
        for b in bad:
            bad_any |= b
        if bad_any.any():
            mask[idx[bad_any]] = False
    return mask


def dense_normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    elems = _subgroup_elements(H)
    mask = _conj_into_mask(G, H.generators, elems)
    count = int(mask.sum())
    return _group_from_rows(G, G.elements_dense()[mask], count)


def dense_transporter(G: PermGroup, H: PermGroup, K: PermGroup):
    elems = _subgroup_elements(K)
    mask = _conj_into_mask(G, H.generators, elems)
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None
    # any surviving row conjugates every generator of H into K; order equality
    # makes it onto K
    row = G.elements_dense()[idx[0]]
    return Permutation(tuple(int(v) for v in row))


# ---------------------------------------------------------------------------
# natural (Sym/Alt on moved points) backend


def _support_elements(H: PermGroup):
    elems = _subgroup_elements(H)
    return elems


def _conjugator_dfs(src_gens, dst_elems, supp_src, supp_dst, prescribed=None):
    """Yield bijections sigma: supp_src -> supp_dst with sigma X sigma^-1 = Y.

    ``src_gens`` generate X; ``dst_elems`` lists Y's elements.  When
    ``prescribed`` maps each src generator to a fixed target element, the
    search is for conjugators inducing exactly that correspondence
    (centralizer-style queries).  Yields dicts.

    Per source generator x a boolean mask over Y's elements tracks which
    q could equal sigma x sigma^-1; each new assignment (a -> b) shrinks
    the masks incrementally (q[b] must match sigma(x(a)) when known, and
    q[sigma(x^-1(a))] must be b), and positions whose candidate values all
    agree are forced.
    """
    supp_src = list(supp_src)
    supp_dst = list(supp_dst)
    if len(supp_src) != len(supp_dst):
        return
    k = len(src_gens)
    X = [x.images for x in src_gens]
    Xinv = [x.inverse().images for x in src_gens]
    Q = np.array([q.images for q in dst_elems], dtype=np.int32)
    if prescribed is not None:
        base_masks = []
        for i in range(k):
            t = np.array(prescribed[i].images, dtype=np.int32)
            base_masks.append((Q == t[np.newaxis, :]).all(axis=1))
    else:
        # cycle types are conjugation invariants: prefilter candidates
        dst_types = [q.cycle_type() for q in dst_elems]
        base_masks = []
        for x in src_gens:
            t = x.cycle_type()
            base_masks.append(np.array([dt == t for dt in dst_types], dtype=bool))
    supp_dst_set = set(supp_dst)
    Qcols = np.ascontiguousarray(Q.T)

    def settle(mapping, used, masks, pending):
        """Apply constraints and force unique values; False on contradiction."""
        while pending:
            a, b = pending.pop()
            for i in range(k):
                xa = X[i][a]
                if xa in mapping:
                    masks[i] = masks[i] & (Qcols[b] == mapping[xa])
                ainv = Xinv[i][a]
                if ainv in mapping and ainv != a:
                    masks[i] = masks[i] & (Qcols[mapping[ainv]] == b)
                if not masks[i].any():
                    return False
            for i in range(k):
                for a0 in list(mapping):
                    xa = X[i][a0]
                    if xa in mapping:
                        continue
                    sel = Qcols[mapping[a0]][masks[i]]
                    v = int(sel[0])
                    if (sel == v).all():
                        if v in used or v not in supp_dst_set:
                            return False
                        mapping[xa] = v
                        used.add(v)
                        pending.append((xa, v))
        return True

    def rec(mapping, used, masks, pending):
        if not settle(mapping, used, masks, pending):
            return
        unmapped = [a for a in supp_src if a not in mapping]
        if not unmapped:
            yield dict(mapping)
            return
        # prefer a branch variable whose candidate values are restricted
        branch_a, branch_vals = None, None
        for i in range(k):
            for a0 in mapping:
                xa = X[i][a0]
                if xa not in mapping:
                    vals = np.unique(Qcols[mapping[a0]][masks[i]])
                    if branch_vals is None or vals.size < len(branch_vals):
                        branch_a = xa
                        branch_vals = [int(v) for v in vals]
            if branch_vals is not None and len(branch_vals) <= 2:
                break
        if branch_a is None:
            branch_a = unmapped[0]
            branch_vals = [b for b in supp_dst if b not in used]
        for b in branch_vals:
            if b in used or b not in supp_dst_set:
                continue
            m2 = dict(mapping)
            m2[branch_a] = b
            yield from rec(m2, used | {b}, [mk.copy() for mk in masks],
                           [(branch_a, b)])

    yield from rec({}, set(), base_masks, [])


def _partial_to_perm(mapping, degree, fix_src=(), fix_dst=()):
    """Extend a support bijection by an order-preserving map on the fixed part."""
    img = list(range(degree))
    for a, b in mapping.items():
        img[a] = b
    for a, b in zip(fix_src, fix_dst):
        img[a] = b
    return Permutation(img)


def _alt_even_group(G: PermGroup, signed_perms, fix: list) -> PermGroup:
    """Even part of <signed_perms> x Sym(fix), inside Alt."""
    gens = []
    if len(fix) >= 2:
        tau = Permutation.from_cycles([[fix[0], fix[1]]], G.degree)
        for p in signed_perms:
            gens.append(p if p.parity() == 0 else p * tau)
        for i in range(2, len(fix)):
            gens.append(Permutation.from_cycles([[fix[0], fix[1], fix[i]]], G.degree))
    else:
        evens = [p for p in signed_perms if p.parity() == 0]
        odds = [p for p in signed_perms if p.parity() == 1]
        gens.extend(evens)
        if odds:
            o0 = odds[0]
            gens.extend(o0.inverse() * p for p in odds)
    return PermGroup(gens, G.degree)


def _natural_subgroup_search(G: PermGroup, H: PermGroup, dst: PermGroup, prescribed: bool):
    kind, orbit = G.natural_giant()
    supp = H.moved_points()
    fix = sorted(set(orbit) - set(supp))
    src_gens = list(H.generators)
    dst_elems = _support_elements(dst)
    if not src_gens:
        # trivial subgroup: everything normalizes/centralizes
        sigmas = [{}] if not supp else []
    else:
        pres = {i: src_gens[i] for i in range(len(src_gens))} if prescribed else None
        sigmas = list(_conjugator_dfs(src_gens, dst_elems, supp, supp, pres))
    perms = [_partial_to_perm(m, G.degree) for m in sigmas]
    n_supp = max(len(perms), 1)
    if kind == "sym":
        gens = list(perms)
        for i in range(1, len(fix)):
            gens.append(Permutation.from_cycles([[fix[0], fix[i]]], G.degree))
        grp = PermGroup(gens, G.degree)
        expected = n_supp * factorial(len(fix))
    else:
        grp = _alt_even_group(G, perms, fix)
        total = n_supp * factorial(len(fix))
        any_odd = any(p.parity() for p in perms) or len(fix) >= 2
        expected = total // 2 if any_odd else total
    if grp.order() != expected:
        raise InternalInconsistency(
            f"support search wrong order {grp.order()} != {expected}", module="permgroup")
    return grp.reduced()


def natural_centralizer(G: PermGroup, H: PermGroup) -> PermGroup:
    return _natural_subgroup_search(G, H, H, prescribed=True)


def natural_normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    return _natural_subgroup_search(G, H, H, prescribed=False)


def natural_transporter(G: PermGroup, H: PermGroup, K: PermGroup):
    kind, orbit = G.natural_giant()
    supp_h = H.moved_points()
    supp_k = K.moved_points()
    if len(supp_h) != len(supp_k):
        return None
    fix_h = sorted(set(orbit) - set(supp_h))
    fix_k = sorted(set(orbit) - set(supp_k))
    if not H.generators:
        return Permutation.identity(G.degree) if not K.generators else None
    dst_elems = _support_elements(K)
    for mapping in _conjugator_dfs(H.generators, dst_elems, supp_h, supp_k):
        g = _partial_to_perm(mapping, G.degree, fix_h, fix_k)
        if kind == "sym" or g.parity() == 0:
            return g
        if len(fix_h) >= 2:
            fd = list(fix_k)
            fd[0], fd[1] = fd[1], fd[0]
            return _partial_to_perm(mapping, G.degree, fix_h, fd)
        # no room to fix parity on the fixed part; try other conjugators
    return None


# ---------------------------------------------------------------------------
# generic backtrack backend


def _orbit_length_map(H: PermGroup):
    lens = {}
    for orb in H.orbits():
        for pt in orb:
            lens[pt] = len(orb)
    return lens


def _backtrack(G: PermGroup, leaf_test, pair_filter, find_one, known=None):
    """DFS over base images; pair_filter(a, b) prunes assignments g(a)=b."""
    chain = G.chain
    levels = chain.levels
    results = []
    known_grp = known

    def orbit_of_prefix(i, prefix_perm):
        lvl = levels[i]
        return sorted(prefix_perm(pt) for pt in lvl.orbit)

    def rec(i, prefix_perm):
        if i == len(levels):
            if leaf_test(prefix_perm):
                results.append(prefix_perm)
                return find_one
            return False
        lvl = levels[i]
        base_pt = lvl.point
        cands = orbit_of_prefix(i, prefix_perm)
        if i == 0 and known_grp is not None:
            # coset pruning: only the minimum of each orbit under the known
            # subgroup needs to be explored (K-orbits of candidates stay
            # inside the candidate set)
            cands = sorted({min(known_grp.orbit(c)) for c in cands})
        for img in cands:
            if not pair_filter(base_pt, img):
                continue
            u = None
            # transversal element of the conditioned coset: prefix * t where
            # t in level transversal with t(base_pt) = prefix^-1(img)
            tgt = prefix_perm.inverse()(img)
            if tgt not in lvl.orbit:
                continue
            t = Permutation(lvl.orbit[tgt])
            if rec(i + 1, prefix_perm * t):
                return True
        return False

    rec(0, G.identity())
    return results


def backtrack_centralizer(G: PermGroup, H: PermGroup) -> PermGroup:
    gens = list(H.generators)
    lens = _orbit_length_map(H)

    def leaf(g):
        return all((g * x).images == (x * g).images for x in gens)

    def pair_ok(a, b):
        return lens.get(a, 1) == lens.get(b, 1)

    found = _backtrack(G, leaf, pair_ok, find_one=False)
    return PermGroup(found, G.degree)


def backtrack_normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    elems = {e.images for e in _subgroup_elements(H)}
    gens = list(H.generators)
    lens = _orbit_length_map(H)

    def leaf(g):
        gi = g.inverse()
        return all((g * x * gi).images in elems for x in gens)

    def pair_ok(a, b):
        return lens.get(a, 1) == lens.get(b, 1)

    found = _backtrack(G, leaf, pair_ok, find_one=False, known=H)
    return PermGroup(list(H.generators) + found, G.degree)


def backtrack_transporter(G: PermGroup, H: PermGroup, K: PermGroup):
    elems = {e.images for e in _subgroup_elements(K)}
    gens = list(H.generators)
    lens_h = _orbit_length_map(H)
    lens_k = _orbit_length_map(K)

    def leaf(g):
        gi = g.inverse()
        return all((g * x * gi).images in elems for x in gens)

    def pair_ok(a, b):
        return lens_h.get(a, 1) == lens_k.get(b, 1)

    found = _backtrack(G, leaf, pair_ok, find_one=True)
    return found[0] if found else None
