"""Deterministic permutation-group engine.

Permutations act on the points ``0..degree-1``; composition is function
composition, ``(a * b)(x) = a(b(x))``, and conjugation is
``conj(g, h) = g * h * g**-1`` (so ``transporter(G, H, K)`` returns ``g``
with ``g H g^-1 = K``).

Groups carry a stabilizer-chain certificate (base, transversals, strong
generators) built by a deterministic Schreier-Sims pass: order and
membership queries are exact.  The heavier searches (centralizer,
normalizer, transporter) are answered exactly by one of three strategies,
chosen per query:

* ``dense``   -- the group is small enough to enumerate; queries become
                 vectorized scans over the full element table.
* ``natural`` -- the group is a natural alternating/symmetric group on its
                 moved points; queries localize to the support of the
                 arguments and the complement contributes an explicit
                 symmetric factor.
* ``backtrack`` -- generic depth-first search over the stabilizer chain
                 with point-image propagation; the fallback when neither
                 shortcut applies.

All randomized steps (Sylow ascent, residual sampling) draw from an rng
with a fixed, configurable seed so repeated runs are identical.

Values are immutable once constructed (certificates and caches fill in
lazily but never change results), so concurrent reads are safe; chain
building and searches are single-threaded per group.
"""

from __future__ import annotations

import itertools
from functools import reduce
from math import factorial, gcd
from random import Random

import numpy as np

from .errors import CapExceeded, InternalInconsistency, PreconditionError

DEGREE_CAP = 4096
ORDER_CAP = 2**40

# |G| threshold for the dense (full enumeration) strategy, and a guard on
# the table footprint in bytes.
DENSE_ORDER_CAP = 4_000_000
DENSE_BYTES_CAP = 512 * 1024 * 1024

_HASH_SEED = 0x5EED_0F_F00D


# ---------------------------------------------------------------------------
# permutations


def _mult(a: tuple, b: tuple) -> tuple:
    """Compose image tuples: (a*b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class Permutation:
    """An immutable bijection of {0..degree-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if n > DEGREE_CAP:
            raise CapExceeded(f"degree {n} exceeds cap {DEGREE_CAP}", module="permgroup")
        seen = [False] * n
        for x in images:
            if not 0 <= x < n or seen[x]:
                raise PreconditionError(f"not a permutation of 0..{n - 1}: {images!r}",
                                        module="permgroup")
            seen[x] = True
        object.__setattr__(self, "images", images)

    # construction ---------------------------------------------------------

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse disjoint-cycle notation, 0-based, e.g. ``(0 1 2)(3 4)``."""
        text = text.strip()
        if text in ("()", "", "id"):
            return cls.identity(degree)
        if text.count("(") != text.count(")"):
            raise PreconditionError(f"unbalanced cycles in {text!r}", module="permgroup")
        cycles = []
        for chunk in text.replace(")", ")\n").split("\n"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if not (chunk.startswith("(") and chunk.endswith(")")):
                raise PreconditionError(f"bad cycle {chunk!r} in {text!r}", module="permgroup")
            body = chunk[1:-1].replace(",", " ").split()
            if not body:
                continue
            cyc = [int(tok) for tok in body]
            if len(set(cyc)) != len(cyc):
                raise PreconditionError(f"repeated point in cycle {chunk!r}", module="permgroup")
            cycles.append(cyc)
        used = [x for cyc in cycles for x in cyc]
        if used and max(used) >= degree:
            raise PreconditionError(
                f"point {max(used)} out of range for degree {degree}", module="permgroup")
        return cls.from_cycles(cycles, degree)

    # arithmetic -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        p = Permutation.__new__(Permutation)
        object.__setattr__(p, "images", _mult(self.images, other.images))
        return p

    def inverse(self) -> "Permutation":
        p = Permutation.__new__(Permutation)
        object.__setattr__(p, "images", _inv(self.images))
        return p

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self, g: "Permutation") -> "Permutation":
        """Return g * self * g^-1."""
        return g * self * g.inverse()

    # queries ---------------------------------------------------------------

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (len(c) for c in self.cycles()), 1)

    def parity(self) -> int:
        """0 for even, 1 for odd."""
        return sum(len(c) - 1 for c in self.cycles()) % 2

    def moved_points(self):
        return [i for i, x in enumerate(self.images) if i != x]

    def cycles(self):
        """Nontrivial cycles, each rotated to start at its minimum, sorted."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple:
        """Sorted lengths of nontrivial cycles; conjugation invariant."""
        return tuple(sorted(len(c) for c in self.cycles()))

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation[{self.cycle_string()}]"


# ---------------------------------------------------------------------------
# stabilizer chain


class _Level:
    __slots__ = ("point", "gens", "orbit")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list[tuple] = []
        # orbit: point -> transversal element u (image tuple) with u(base) = point
        self.orbit: dict[int, tuple] = {point: tuple(range(degree))}


class StabChain:
    """Base and strong generating set via deterministic Schreier-Sims."""

    def __init__(self, generators, degree: int, base_hint=()):
        self.degree = degree
        self.levels: list[_Level] = []
        self._base_hint = list(base_hint)
        identity = tuple(range(degree))
        queue = [g.images if isinstance(g, Permutation) else tuple(g) for g in generators]
        queue = [g for g in queue if g != identity]
        while queue:
            g = queue.pop()
            residue, idx = self._sift_tuple(g)
            if residue == identity:
                continue
            if idx == len(self.levels):
                self._new_level(residue)
            lvl = self.levels[idx]
            lvl.gens.append(residue)
            # Re-close orbits at this and all earlier levels: the new strong
            # generator fixes the base prefix, so it acts at levels <= idx.
            for i in range(idx + 1):
                queue.extend(self._extend_orbit(i))

    def _new_level(self, residue: tuple):
        for b in self._base_hint:
            if residue[b] != b and all(lvl.point != b for lvl in self.levels):
                self.levels.append(_Level(b, self.degree))
                return
        point = min(i for i, x in enumerate(residue) if x != i)
        self.levels.append(_Level(point, self.degree))

    def _level_gens(self, i: int):
        gens = []
        for j in range(i, len(self.levels)):
            gens.extend(self.levels[j].gens)
        return gens

    def _extend_orbit(self, i: int):
        """Grow the basic orbit at level i; return unsifted Schreier generators."""
        lvl = self.levels[i]
        gens = self._level_gens(i)
        frontier = sorted(lvl.orbit)
        schreier = []
        while frontier:
            new_frontier = []
            for pt in frontier:
                u = lvl.orbit[pt]
                for s in gens:
                    img = s[pt]
                    if img not in lvl.orbit:
                        lvl.orbit[img] = _mult(s, u)
                        new_frontier.append(img)
                    else:
                        # Schreier generator u_{img}^-1 * s * u
                        sg = _mult(_inv(lvl.orbit[img]), _mult(s, u))
                        if any(a != b for a, b in enumerate(sg)):
                            schreier.append(sg)
            frontier = new_frontier
        return schreier

    def _sift_tuple(self, g: tuple):
        for i, lvl in enumerate(self.levels):
            img = g[lvl.point]
            if img == lvl.point:
                continue
            if img not in lvl.orbit:
                return g, i
            g = _mult(_inv(lvl.orbit[img]), g)
        return g, len(self.levels)

    @property
    def base(self):
        return [lvl.point for lvl in self.levels]

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.orbit)
        return n

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._sift_tuple(g.images)
        return all(i == x for i, x in enumerate(residue))

    def random_element(self, rng: Random) -> Permutation:
        g = tuple(range(self.degree))
        for lvl in self.levels:
            pts = sorted(lvl.orbit)
            g = _mult(g, lvl.orbit[rng.choice(pts)])
        return Permutation(g)

    def elements_dense(self) -> np.ndarray:
        """All elements as an (order, degree) array, in canonical chain order."""
        n = self.order()
        dtype = np.uint8 if self.degree <= 256 else np.uint16
        if n * self.degree > DENSE_BYTES_CAP // (1 if dtype == np.uint8 else 2):
            raise CapExceeded(f"dense table for order {n} too large", module="permgroup")
        table = np.array([list(range(self.degree))], dtype=dtype)
        for lvl in reversed(self.levels):
            blocks = []
            for pt in sorted(lvl.orbit):
                u = np.array(lvl.orbit[pt], dtype=dtype)
                blocks.append(u[table])
            table = np.concatenate(blocks, axis=0)
        return table


# ---------------------------------------------------------------------------
# permutation groups


class PermGroup:
    """A finite permutation group given by generators with a BSGS certificate."""

    def __init__(self, generators, degree: int | None = None, base_hint=()):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            gens.append(g)
        if degree is None:
            if not gens:
                raise PreconditionError("degree required for a trivial group",
                                        module="permgroup")
            degree = gens[0].degree
        if degree > DEGREE_CAP:
            raise CapExceeded(f"degree {degree} exceeds cap {DEGREE_CAP}", module="permgroup")
        for g in gens:
            if g.degree != degree:
                raise PreconditionError("mixed degrees in generator list", module="permgroup")
        seen = set()
        uniq = []
        for g in gens:
            if g.images not in seen and not g.is_identity():
                seen.add(g.images)
                uniq.append(g)
        self.degree = degree
        self.generators: tuple = tuple(uniq)
        self._base_hint = tuple(base_hint)
        self._chain: StabChain | None = None
        self._dense: np.ndarray | None = None
        self._dense_hashes: np.ndarray | None = None
        self._natural: tuple | None | bool = False  # False = not analyzed yet

    # -- certificates -------------------------------------------------------

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.generators, self.degree, self._base_hint)
            if self._chain.order() > ORDER_CAP:
                raise CapExceeded(
                    f"group order {self._chain.order()} exceeds cap {ORDER_CAP}",
                    module="permgroup")
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def __len__(self):
        return self.order()

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()})"

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def random_element(self, rng: Random) -> Permutation:
        return self.chain.random_element(rng)

    def is_trivial(self) -> bool:
        return not self.generators

    def subgroup(self, gens) -> "PermGroup":
        return PermGroup(gens, self.degree)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def reduced(self) -> "PermGroup":
        """The same group with a pruned generating set."""
        target = self.order()
        gens: list[Permutation] = []
        grp = PermGroup([], self.degree)
        for g in self.generators:
            if g not in grp:
                gens.append(g)
                grp = PermGroup(gens, self.degree)
                if grp.order() == target:
                    break
        return grp

    def same_group(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    # -- element access ------------------------------------------------------

    def elements(self):
        """Iterate all elements (only sensible for small groups)."""
        arr = self.elements_dense()
        for row in arr:
            yield Permutation(tuple(int(x) for x in row))

    def elements_dense(self) -> np.ndarray:
        if self._dense is None:
            self._dense = self.chain.elements_dense()
        return self._dense

    def _hash_weights(self) -> np.ndarray:
        rng = np.random.default_rng(_HASH_SEED + self.degree)
        return rng.integers(1, 2**63 - 1, size=self.degree, dtype=np.int64).astype(np.uint64)

    def _row_hashes(self) -> np.ndarray:
        if self._dense_hashes is None:
            w = self._hash_weights()
            arr = self.elements_dense()
            self._dense_hashes = _perm_hashes(arr, w)
        return self._dense_hashes

    # -- orbits ---------------------------------------------------------------

    def orbit(self, point: int):
        """Orbit of a point with transversal witnesses {point: g with g(base)=pt}."""
        if not 0 <= point < self.degree:
            raise PreconditionError(f"point {point} out of range", module="permgroup")
        orb = {point: self.identity()}
        frontier = [point]
        while frontier:
            new = []
            for pt in frontier:
                for g in self.generators:
                    img = g(pt)
                    if img not in orb:
                        orb[img] = g * orb[pt]
                        new.append(img)
            frontier = new
        return orb

    def orbits(self):
        seen = set()
        out = []
        for pt in range(self.degree):
            if pt in seen:
                continue
            orb = sorted(self.orbit(pt))
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def moved_points(self):
        moved = set()
        for g in self.generators:
            moved.update(g.moved_points())
        return sorted(moved)

    def transitive_constituent_orbits(self):
        """Orbits restricted to moved points (singletons dropped)."""
        return [o for o in self.orbits() if len(o) > 1]

    # -- natural Sym/Alt detection --------------------------------------------

    def natural_giant(self):
        """('sym'|'alt', moved-point tuple) when G is Sym/Alt on its support."""
        if self._natural is False:
            self._natural = None
            moved = self.moved_points()
            n = len(moved)
            if n >= 2 and tuple(sorted(self.orbit(moved[0]))) == tuple(moved):
                order = self.order()
                if order == factorial(n):
                    self._natural = ("sym", tuple(moved))
                elif n >= 3 and order == factorial(n) // 2:
                    # index-2 subgroups of Sym(n) are Alt(n); order certifies.
                    self._natural = ("alt", tuple(moved))
        return self._natural

    # -- derived structure ------------------------------------------------------

    def normal_closure(self, elems, within_order: int | None = None) -> "PermGroup":
        """Normal closure of the given elements in this group."""
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in elems]
        closure = PermGroup(gens, self.degree)
        changed = True
        while changed:
            changed = False
            new_gens = list(closure.generators)
            for h in closure.generators:
                for g in self.generators:
                    c = h.conj(g)
                    if c not in closure:
                        new_gens.append(c)
                        closure = PermGroup(new_gens, self.degree)
                        changed = True
            if within_order is not None and closure.order() == within_order:
                break
        return closure

    def derived_subgroup(self) -> "PermGroup":
        comms = []
        for a in self.generators:
            for b in self.generators:
                c = a * b * a.inverse() * b.inverse()
                if not c.is_identity():
                    comms.append(c)
        return self.normal_closure(comms)

    def derived_series_lengths(self, cap: int = 10):
        out = [self.order()]
        g = self
        for _ in range(cap):
            d = g.derived_subgroup()
            if d.order() == g.order():
                break
            out.append(d.order())
            g = d
            if d.order() == 1:
                break
        return out

    def abelian_invariants_of_abelianization(self) -> tuple:
        """Abelian invariants of G/[G,G] (elementary divisor form)."""
        der = self.derived_subgroup()
        n = self.order() // der.order()
        if n == 1:
            return ()
        quo, _ = self.action_on_cosets(der)
        return abelian_invariants(quo)

    # -- coset actions -----------------------------------------------------------

    def action_on_cosets(self, H: "PermGroup"):
        """Left-multiplication action on left cosets of H.

        Returns (image PermGroup, list of coset representatives); the kernel is
        the core of H, so the image is the faithful quotient when H is normal.
        Only usable when the index is within the degree cap.
        """
        index = self.order() // H.order()
        if index > DEGREE_CAP:
            raise CapExceeded(f"coset action degree {index} exceeds cap", module="permgroup")

        def canon(g: Permutation) -> tuple:
            return min(_mult(g.images, h.images) for h in H.elements())

        reps = [self.identity()]
        keys = {canon(reps[0]): 0}
        frontier = [0]
        while frontier:
            new = []
            for i in frontier:
                for g in self.generators:
                    cand = g * reps[i]
                    key = canon(cand)
                    if key not in keys:
                        keys[key] = len(reps)
                        reps.append(cand)
                        new.append(len(reps) - 1)
            frontier = new
        if len(reps) != index:
            raise InternalInconsistency("coset enumeration miscounted", module="permgroup")
        images = []
        for g in self.generators:
            img = [keys[canon(g * r)] for r in reps]
            images.append(Permutation(img))
        return PermGroup(images, index), reps

    # -- p-structure ---------------------------------------------------------------

    def is_p_group(self, p: int) -> bool:
        n = self.order()
        while n % p == 0:
            n //= p
        return n == 1

    def sylow(self, p: int, seed: int = 0) -> "PermGroup":
        """A Sylow p-subgroup, by normalizer ascent from a p-element."""
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise PreconditionError(f"{p} is not prime", module="permgroup")
        order = self.order()
        target = 1
        n = order
        while n % p == 0:
            target *= p
            n //= p
        if target == 1:
            return PermGroup([], self.degree)
        rng = Random(seed)
        z = self._find_p_element(p, rng)
        P = PermGroup([z], self.degree)
        while P.order() < target:
            N = self.normalizer(P)
            y = self._p_element_mod(N, P, p, rng)
            P = PermGroup(list(P.generators) + [y], self.degree)
        if P.order() != target:
            raise InternalInconsistency("sylow ascent overshot", module="permgroup")
        return P

    def _find_p_element(self, p: int, rng: Random) -> Permutation:
        for g in self.generators:
            o = g.order()
            if o % p == 0:
                return g ** (o // p ** _vp(o, p))
        for _ in range(10000):
            g = self.random_element(rng)
            o = g.order()
            if o % p == 0:
                return g ** (o // p ** _vp(o, p))
        raise InternalInconsistency(f"no {p}-element found", module="permgroup")

    @staticmethod
    def _p_element_mod(N: "PermGroup", P: "PermGroup", p: int, rng: Random) -> Permutation:
        """An element of N that is a nontrivial p-element modulo P."""
        candidates = itertools.chain(
            N.generators, (N.random_element(rng) for _ in range(10000)))
        for y in candidates:
            o = y.order()
            k = 1
            for d in sorted(_divisors(o)):
                if y ** d in P:
                    k = d
                    break
            if k % p == 0:
                y2 = y ** (k // p ** _vp(k, p))
                if y2 not in P:
                    return y2
        raise InternalInconsistency("no p-element modulo P found", module="permgroup")

    def p_core(self, p: int) -> "PermGroup":
        """Largest normal p-subgroup: Sylow intersections under conjugation."""
        K = self.sylow(p)
        while True:
            changed = False
            for g in self.generators:
                Kg = PermGroup([h.conj(g) for h in K.generators], self.degree)
                if not (K.is_subgroup_of(Kg) and Kg.order() == K.order()):
                    K = _intersect_small(K, Kg)
                    changed = True
            if not changed:
                return K

    def op_prime_residual(self, p: int) -> "PermGroup":
        """O^{p'}: smallest normal subgroup of index prime to p."""
        S = self.sylow(p)
        H = self.normal_closure(S.generators, within_order=self.order())
        if _vp(self.order() // max(H.order(), 1), p) != 0:
            raise InternalInconsistency("O^{p'} index not prime to p", module="permgroup")
        return H

    def op_residual(self, p: int, seed: int = 0) -> "PermGroup":
        """O^p: smallest normal subgroup of p-power index."""
        rng = Random(seed)
        gens = [g for g in (_p_prime_part(g, p) for g in self.generators)
                if not g.is_identity()]
        H = self.normal_closure(gens, within_order=self.order()) if gens else PermGroup([], self.degree)
        for _ in range(100000):
            index = self.order() // max(H.order(), 1)
            if _is_p_power(index, p):
                return H
            y = _p_prime_part(self.random_element(rng), p)
            if not y.is_identity() and y not in H:
                H = self.normal_closure(list(H.generators) + [y],
                                        within_order=self.order())
        raise InternalInconsistency("O^p iteration did not converge", module="permgroup")

    # -- searches -------------------------------------------------------------------

    def _strategy(self, subgroups):
        nat = self.natural_giant()
        if nat is not None:
            support = set()
            for H in subgroups:
                support.update(H.moved_points())
            if support <= set(nat[1]):
                return "natural"
        if self.order() <= DENSE_ORDER_CAP:
            return "dense"
        return "backtrack"

    def centralizer(self, H: "PermGroup") -> "PermGroup":
        from . import _engine
        strat = self._strategy([H])
        if strat == "natural":
            return _engine.natural_centralizer(self, H)
        if strat == "dense":
            return _engine.dense_centralizer(self, H)
        return _engine.backtrack_centralizer(self, H)

    def normalizer(self, H: "PermGroup") -> "PermGroup":
        from . import _engine
        strat = self._strategy([H])
        if strat == "natural":
            return _engine.natural_normalizer(self, H)
        if strat == "dense":
            return _engine.dense_normalizer(self, H)
        return _engine.backtrack_normalizer(self, H)

    def transporter(self, H: "PermGroup", K: "PermGroup"):
        """Some g in G with g H g^-1 = K, or None."""
        from . import _engine
        if H.order() != K.order():
            return None
        strat = self._strategy([H, K])
        if strat == "natural":
            return _engine.natural_transporter(self, H, K)
        if strat == "dense":
            return _engine.dense_transporter(self, H, K)
        return _engine.backtrack_transporter(self, H, K)

    def centralizer_of_element(self, x: Permutation) -> "PermGroup":
        return self.centralizer(PermGroup([x], self.degree))


# ---------------------------------------------------------------------------
# helpers


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0 and n > 0:
        n //= p
        v += 1
    return v


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _p_prime_part(g: Permutation, p: int = 2) -> Permutation:
    """The p'-part of g: the power of g whose order is the p'-part of g's order."""
    o = g.order()
    pk = p ** _vp(o, p)
    m = o // pk
    if m == 0:
        return g
    # solve pk * t = 1 mod m, then g^(pk*t) has order m and equals the p'-part
    if m == 1:
        return Permutation.identity(g.degree)
    t = pow(pk, -1, m)
    return g ** (pk * t)


def _intersect_small(A: PermGroup, B: PermGroup) -> PermGroup:
    """Intersection by enumerating the smaller group; both must be small."""
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    elems = [g for g in small.elements() if g in big]
    return PermGroup(elems, A.degree)


def _perm_hashes(arr: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Row hashes sum_t w[t]*row[t] with uint64 wraparound, chunked."""
    n = arr.shape[0]
    out = np.empty(n, dtype=np.uint64)
    step = 1 << 17
    for i in range(0, n, step):
        chunk = arr[i:i + step].astype(np.uint64)
        out[i:i + step] = (chunk * weights[np.newaxis, :]).sum(axis=1)
    return out


def abelian_invariants(G: PermGroup) -> tuple:
    """Invariant factors (d1 | d2 | ...) of an abelian group, by order census."""
    n = G.order()
    if n == 1:
        return ()
    orders = sorted(g.order() for g in G.elements())
    # per prime, the p-part's type is determined by |{x : x^{p^k} = 1}|
    primes = _prime_factors(n)
    per_prime = {}
    for p in primes:
        divs = [sum(1 for o in orders if (p**k) % o == 0)
                for k in range(0, _vp(n, p) + 1)]
        per_prime[p] = _partition_from_counts(divs, p, _vp(n, p))
    # combine to invariant factors
    max_len = max(len(v) for v in per_prime.values())
    factors = []
    for i in range(max_len):
        d = 1
        for p, part in per_prime.items():
            if i < len(part):
                d *= p ** part[len(part) - 1 - i]
        factors.append(d)
    return tuple(sorted(factors))


def _partition_from_counts(divs, p, total):
    """Recover the type partition of an abelian p-group from |{x : x^{p^k}=1}|."""
    # divs[k] = p^{sum_i min(lambda_i, k)}
    mins = [0]
    for k in range(1, total + 1):
        mins.append(_vp(divs[k], p) if divs[k] else 0)
    part = []
    prev_rank = None
    for k in range(1, total + 1):
        rank_k = mins[k] - mins[k - 1]  # #parts with lambda_i >= k
        if prev_rank is not None and rank_k > prev_rank:
            raise InternalInconsistency("non-monotone abelian rank profile",
                                        module="permgroup")
        prev_rank = rank_k
        part.append(rank_k)
    # part[k-1] = #parts >= k; convert to partition
    out = []
    for i in range(1, len(part) + 1):
        cnt = part[i - 1] - (part[i] if i < len(part) else 0)
        out.extend([i] * cnt)
    return sorted(out, reverse=True)


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
