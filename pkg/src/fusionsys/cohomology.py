"""First cohomology of a finite group acting on a finite abelian p-group.

The module A is (Z/p^ell)^r with the action given by matrices.  Cocycles
are parametrized by their values on a generating set of the group: the
relation f(gh) = f(g) + g.f(h) propagates values along a Cayley
breadth-first search, and the same relation instantiated at every
(element, generator) pair yields the consistency system whose solution set
is Z^1.  Coboundaries are the image of a -> (g -> g.a - a).  The quotient
Z^1/B^1 is computed exactly by integer normal forms: a Hermite pass turns
the huge consistency system into a small full-rank lattice, and a Smith
pass on the lattice quotient yields the abelian invariants.

Caps: |group| <= 1000 and |A| <= 5^6, as documented.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import CapExceeded, PreconditionError
from .perm import PermGroup

GROUP_CAP = 1000
MODULE_CAP = 5**6


# ---------------------------------------------------------------------------
# exact integer normal forms (small matrices)


def hnf_incremental(rows, d: int, modulus: int):
    """Row-Hermite form of the lattice spanned by ``rows`` and modulus*I.

    Returns an upper-triangular d x d integer matrix with positive diagonal
    whose rows span the same lattice.  Entries stay reduced modulo the
    modulus-scaled diagonal, so intermediate growth is bounded.
    """
    H = [[modulus if i == j else 0 for j in range(d)] for i in range(d)]

    def add_row(row):
        row = list(row)
        for j in range(d):
            if row[j] == 0:
                continue
            if H[j][j] == 0:
                H[j] = row[:]
                return
            a, b = H[j][j], row[j]
            # extended gcd combination
            g, x, y = _xgcd(a, b)
            new_pivot = [x * H[j][t] + y * row[t] for t in range(d)]
            row = [(-(b // g)) * H[j][t] + (a // g) * row[t] for t in range(d)]
            H[j] = new_pivot
        # row is now zero modulo the lattice

    for row in rows:
        add_row([x % modulus for x in row])
    # normalize: reduce above-diagonal entries
    for j in range(d - 1, -1, -1):
        for i in range(j):
            if H[j][j]:
                q = H[i][j] // H[j][j]
                if q:
                    H[i] = [H[i][t] - q * H[j][t] for t in range(d)]
    return H


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(M):
    """Diagonal invariants of an integer matrix (d1 | d2 | ...)."""
    A = [list(row) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    top = 0
    while top < min(rows, cols):
        # find a nonzero pivot of minimal absolute value
        pivot = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        A[top], A[pi] = A[pi], A[top]
        for row in A:
            row[top], row[pj] = row[pj], row[top]
        # clear row and column; restart if a remainder shrinks the pivot
        while True:
            p = A[top][top]
            done = True
            for i in range(top + 1, rows):
                if A[i][top]:
                    q = A[i][top] // p
                    A[i] = [A[i][t] - q * A[top][t] for t in range(cols)]
                    if A[i][top]:
                        A[top], A[i] = A[i], A[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, cols):
                if A[top][j]:
                    q = A[top][j] // p
                    for row in A:
                        row[j] -= q * row[top]
                    if A[top][j]:
                        for row in A:
                            row[top], row[j] = row[j], row[top]
                        done = False
                        break
            if done:
                break
        diag.append(abs(A[top][top]))
        top += 1
    # enforce divisibility d1 | d2 | ...
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            if diag[i] and diag[j] % diag[i]:
                g, _, _ = _xgcd(diag[i], diag[j])
                lcm = diag[i] * diag[j] // g
                diag[i], diag[j] = g, lcm
    return sorted(d for d in diag)


def _solve_integer(U, W):
    """Solve U X = W over the integers (U square nonsingular)."""
    import fractions
    d = len(U)
    cols = len(W[0])
    Uf = [[fractions.Fraction(x) for x in row] for row in U]
    Wf = [[fractions.Fraction(x) for x in row] for row in W]
    # gaussian elimination with exact fractions
    perm = list(range(d))
    for col in range(d):
        piv = next(r for r in range(col, d) if Uf[r][col] != 0)
        Uf[col], Uf[piv] = Uf[piv], Uf[col]
        Wf[col], Wf[piv] = Wf[piv], Wf[col]
        inv = 1 / Uf[col][col]
        Uf[col] = [x * inv for x in Uf[col]]
        Wf[col] = [x * inv for x in Wf[col]]
        for r in range(d):
            if r != col and Uf[r][col] != 0:
                f = Uf[r][col]
                Uf[r] = [a - f * b for a, b in zip(Uf[r], Uf[col])]
                Wf[r] = [a - f * b for a, b in zip(Wf[r], Wf[col])]
    X = []
    for r in range(d):
        row = []
        for c in range(cols):
            v = Wf[r][c]
            if v.denominator != 1:
                raise PreconditionError(
                    "lattice quotient is not integral (B not inside Z)",
                    module="cohomology")
            row.append(int(v))
        X.append(row)
    return X


# ---------------------------------------------------------------------------
# modules


@dataclass
class GModule:
    """A finite group acting on A = (Z/p^ell)^r by matrices.

    ``elements`` lists hashable element keys, ``mult`` multiplies keys,
    ``action`` maps a key to an r x r integer matrix mod p^ell.  The action
    is spot-checked to be a homomorphism on all generator pairs.
    """

    elements: list
    mult: callable
    action: dict
    p: int
    ell: int
    rank: int
    generators: list

    def __post_init__(self):
        if len(self.elements) > GROUP_CAP:
            raise CapExceeded(f"group of order {len(self.elements)} exceeds "
                              f"cap {GROUP_CAP}", module="cohomology")
        if self.p ** (self.ell * self.rank) > MODULE_CAP:
            raise CapExceeded("module exceeds cap", module="cohomology")
        mod = self.p ** self.ell
        for g in self.generators:
            for h in self.generators:
                gh = self.mult(g, h)
                lhs = _mat_mul_mod(self.action[g], self.action[h], mod)
                if lhs != tuple(map(tuple, self.action[gh])):
                    raise PreconditionError(
                        "action is not a homomorphism on generator pair",
                        module="cohomology")

    @property
    def modulus(self) -> int:
        return self.p ** self.ell

    def module_order(self) -> int:
        return self.p ** (self.ell * self.rank)


def _mat_mul_mod(A, B, mod):
    r = len(A)
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(r)) % mod
                       for j in range(r)) for i in range(r))


def gmodule_from_perm_group(G: PermGroup, p: int, ell: int, rank: int,
                            matrix_of_generator) -> GModule:
    """Build a GModule from a permutation group and generator matrices.

    ``matrix_of_generator(g)`` supplies the matrix of each generator; the
    per-element table is filled in along a Cayley breadth-first search.
    """
    mod = p**ell
    ident = G.identity()
    elements = [ident.images]
    action = {ident.images: tuple(tuple(int(i == j) for j in range(rank))
                                  for i in range(rank))}
    gen_keys = []
    gen_mats = {}
    for g in G.generators:
        gen_keys.append(g.images)
        gen_mats[g.images] = tuple(tuple(int(x) % mod for x in row)
                                   for row in matrix_of_generator(g))
    perms = {ident.images: ident}
    for g in G.generators:
        perms[g.images] = g

    def mult(a, b):
        # compose permutations by image tuples
        return tuple(a[x] for x in b)

    frontier = [ident.images]
    while frontier:
        new = []
        for h in frontier:
            for gk in gen_keys:
                hg = mult(h, gk)
                if hg not in action:
                    action[hg] = _mat_mul_mod(action[h], gen_mats[gk], mod)
                    elements.append(hg)
                    new.append(hg)
        frontier = new
    if len(elements) != G.order():
        raise PreconditionError("element enumeration mismatch", module="cohomology")
    return GModule(elements=elements, mult=mult, action=action, p=p, ell=ell,
                   rank=rank, generators=gen_keys or [ident.images])


def h1(M: GModule) -> tuple:
    """Abelian invariants of H^1(G; A); () means the group vanishes."""
    mod = M.modulus
    r = M.rank
    gens = list(M.generators)
    k = len(gens)
    d = r * k
    if d == 0:
        return ()

    # cocycle values on all elements as linear expressions in the generator
    # values: expr[e] is an r x d integer matrix mod p^ell
    ident = M.elements[0]
    zero = tuple(tuple(0 for _ in range(d)) for _ in range(r))
    expr = {ident: zero}
    gen_block = {}
    for j, g in enumerate(gens):
        blk = [[0] * d for _ in range(r)]
        for t in range(r):
            blk[t][j * r + t] = 1
        gen_block[g] = tuple(tuple(row) for row in blk)
    frontier = [ident]
    while frontier:
        new = []
        for h in frontier:
            for j, g in enumerate(gens):
                hg = M.mult(h, g)
                if hg not in expr:
                    # f(hg) = f(h) + h.f(g)
                    act = M.action[h]
                    contrib = tuple(
                        tuple(sum(act[i][t] * gen_block[g][t][c] for t in range(r)) % mod
                              for c in range(d))
                        for i in range(r))
                    expr[hg] = tuple(
                        tuple((expr[h][i][c] + contrib[i][c]) % mod for c in range(d))
                        for i in range(r))
                    new.append(hg)
        frontier = new

    # consistency rows: f(hg) - f(h) - h.f(g) = 0 for every element h, gen g
    rows = []
    for h in M.elements:
        act = M.action[h]
        for j, g in enumerate(gens):
            hg = M.mult(h, g)
            contrib = tuple(
                tuple(sum(act[i][t] * gen_block[g][t][c] for t in range(r)) % mod
                      for c in range(d))
                for i in range(r))
            for i in range(r):
                row = [(expr[hg][i][c] - expr[h][i][c] - contrib[i][c]) % mod
                       for c in range(d)]
                if any(row):
                    rows.append(row)

    # Z^1 as a lattice: x with Rx = 0 mod p^ell  <=>  x in dual of row lattice
    H = hnf_incremental(rows, d, mod)
    # kernel basis from the Smith form of H
    U = _kernel_lattice(H, d, mod)
    # B^1 columns: a_t -> (g_j -> (act(g_j) - I) a_t), plus p^ell Z^d
    bcols = []
    for t in range(r):
        col = []
        for g in gens:
            act = M.action[g]
            for i in range(r):
                col.append((act[i][t] - (1 if i == t else 0)) % mod)
        bcols.append(col)
    W = [[0] * (r + d) for _ in range(d)]
    for t in range(r):
        for i in range(d):
            W[i][t] = bcols[t][i]
    for i in range(d):
        W[i][r + i] = mod
    X = _solve_integer(U, W)
    invariants = [x for x in smith_normal_form(X) if x not in (0, 1)]
    return tuple(invariants)


def _kernel_lattice(H, d: int, mod: int):
    """Basis (columns) of {x in Z^d : v.x = 0 mod p^ell for all v in rowspace(H)}.

    H is a triangular basis of the row lattice (which contains mod*Z^d).
    The kernel is computed through the Smith form of H: with H = S D T the
    condition becomes D y = 0 mod p^ell for y = T x.
    """
    # Smith decomposition with transforms (small d x d)
    A = [list(row) for row in H]
    S = [[int(i == j) for j in range(d)] for i in range(d)]
    T = [[int(i == j) for j in range(d)] for i in range(d)]

    def row_op(i, j, q):
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        S[i] = [a - q * b for a, b in zip(S[i], S[j])]

    def col_op(i, j, q):
        for row in A:
            row[i] -= q * row[j]
        for row in T:
            row[i] -= q * row[j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        S[i], S[j] = S[j], S[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in T:
            row[i], row[j] = row[j], row[i]

    top = 0
    while top < d:
        pivot = None
        best = None
        for i in range(top, d):
            for j in range(top, d):
                if A[i][j] and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        row_swap(top, pi)
        col_swap(top, pj)
        stable = False
        while not stable:
            stable = True
            for i in range(top + 1, d):
                if A[i][top]:
                    q = A[i][top] // A[top][top]
                    row_op(i, top, q)
                    if A[i][top]:
                        row_swap(top, i)
                        stable = False
            for j in range(top + 1, d):
                if A[top][j]:
                    q = A[top][j] // A[top][top]
                    col_op(j, top, q)
                    if A[top][j]:
                        col_swap(top, j)
                        stable = False
        top += 1
    # A = S H T (with our in-place transforms: A_final = S*H*T)
    diag = [A[i][i] if i < d else 0 for i in range(d)]
    # x = T y with diag_i * y_i = 0 mod p^ell -> y_i multiple of mod/gcd
    from math import gcd as _g
    scales = []
    for i in range(d):
        di = abs(diag[i])
        scales.append(mod // _g(di, mod) if di else 1)
    # columns of U: T @ diag(scales)
    U = [[T[i][j] * scales[j] for j in range(d)] for i in range(d)]
    return U


def z1_b1_orders(M: GModule) -> tuple[int, int, int]:
    """(|Z^1|, |B^1|, |H^1|) for the numeric product invariant."""
    mod = M.modulus
    d = M.rank * len(M.generators)
    invs = h1(M)
    h1_order = prod(invs) if invs else 1
    # |B^1| = |A| / |A^G| with A^G the fixed submodule
    fixed = _fixed_submodule_order(M)
    b1 = M.module_order() // fixed
    return b1 * h1_order, b1, h1_order


def _fixed_submodule_order(M: GModule) -> int:
    """|A^G| via the Smith form of the stacked (act(g) - I) matrix."""
    mod = M.modulus
    r = M.rank
    rows = []
    for g in M.generators:
        act = M.action[g]
        for i in range(r):
            rows.append([(act[i][j] - (1 if i == j else 0)) % mod for j in range(r)])
    if not rows:
        return M.module_order()
    H = hnf_incremental(rows, r, mod)
    U = _kernel_lattice(H, r, mod)
    # |A^G| = index-based: fixed points = kernel lattice / mod Z^r
    det = abs(_int_det(U))
    return (mod**r) // det


def _int_det(U) -> int:
    import fractions
    d = len(U)
    A = [[fractions.Fraction(x) for x in row] for row in U]
    det = fractions.Fraction(1)
    for col in range(d):
        piv = next((r for r in range(col, d) if A[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r2 in range(col + 1, d):
            if A[r2][col]:
                f = A[r2][col] * inv
                A[r2] = [a - f * b for a, b in zip(A[r2], A[col])]
    return int(det)
