"""Constructors for the named groups used across the package.

Families: alternating/symmetric, cyclic, dihedral, the linear groups
GL/SL/PSL/SU/PSU, symplectic Sp/PSp, the two small Mathieu groups (from a
data file), imprimitive monomial groups, wreath products C_m wr Sym(n),
direct products, and central quotients.

Every constructor certifies itself: the stabilizer-chain order of the
built permutation group must equal the closed-form order for its family,
otherwise construction fails loudly.  Matrix groups act on the nonzero
vectors or the projective points of their natural module, whichever is
smaller (projective for the central quotients PSL/PSU/PSp).
"""

from __future__ import annotations

import importlib.resources
import itertools
import re
from dataclasses import dataclass, field
from math import factorial

from . import numth, smallfield
from .errors import CatalogError, PreconditionError
from .perm import Permutation, PermGroup

ALT_SYM_MAX = 13
LINEAR_MAX_N = 4
LINEAR_MAX_Q = 5
LINEAR_RANK2_MAX_Q = 9  # n = 2 allows q up to 9 (needed for SL2(9)-scale checks)
SP_MAX_DIM = 6
SP_MAX_Q = 3


@dataclass(frozen=True)
class GroupSpec:
    """A named construction request: family tag plus parameters."""

    family: str
    n: int | None = None
    q: int | None = None
    m: int | None = None
    k: int | None = None
    ell: int | None = None
    p: int | None = None
    factors: tuple = field(default_factory=tuple)

    def label(self) -> str:
        f = self.family
        if f in ("Alt", "Sym"):
            return ("A" if f == "Alt" else "S") + str(self.n)
        if f == "Cyclic":
            return f"C{self.n}"
        if f == "Dihedral":
            return f"D{self.n}"
        if f == "Mathieu":
            return f"M{self.n}"
        if f in ("GL", "SL", "PSL", "SU", "PSU", "Sp", "PSp"):
            return f"{f}{self.n}({self.q})"
        if f == "Monomial":
            return f"G({self.m},{self.k},{self.n})@p{self.p}^{self.ell}"
        if f == "Wreath":
            return f"C{self.m}wrS{self.n}"
        if f == "DirectProduct":
            return "x".join(s.label() for s in self.factors)
        return f


_LABEL_RE = re.compile(r"^(GL|SL|PSL|PSU|SU|PSp|Sp)(\d+)\((\d+)\)$")


def parse_label(label: str) -> GroupSpec:
    """Parse labels like A11, S4, M12, C6, D8, Sp6(2), PSU4(2), SL2(9), A4xS3."""
    label = label.strip()
    if "x" in label:
        parts = label.split("x")
        return GroupSpec("DirectProduct",
                         factors=tuple(parse_label(part) for part in parts))
    m = re.match(r"^A(\d+)$", label)
    if m:
        return GroupSpec("Alt", n=int(m.group(1)))
    m = re.match(r"^S(\d+)$", label)
    if m:
        return GroupSpec("Sym", n=int(m.group(1)))
    m = re.match(r"^C(\d+)$", label)
    if m:
        return GroupSpec("Cyclic", n=int(m.group(1)))
    m = re.match(r"^D(\d+)$", label)
    if m:
        return GroupSpec("Dihedral", n=int(m.group(1)))
    m = re.match(r"^M(11|12)$", label)
    if m:
        return GroupSpec("Mathieu", n=int(m.group(1)))
    m = _LABEL_RE.match(label)
    if m:
        return GroupSpec(m.group(1), n=int(m.group(2)), q=int(m.group(3)))
    raise CatalogError(f"unknown group label {label!r}")


def build(spec: GroupSpec | str, catalog_path: str | None = None) -> PermGroup:
    """Build the permutation group for a spec, certifying its order."""
    if isinstance(spec, str):
        spec = parse_label(spec)
    f = spec.family
    if f == "Alt":
        return alternating(spec.n)
    if f == "Sym":
        return symmetric(spec.n)
    if f == "Cyclic":
        return cyclic(spec.n)
    if f == "Dihedral":
        return dihedral(spec.n)
    if f == "Mathieu":
        return mathieu(spec.n, catalog_path)
    if f in ("GL", "SL", "PSL"):
        return linear(f, spec.n, spec.q)
    if f in ("SU", "PSU"):
        return unitary(f, spec.n, spec.q)
    if f in ("Sp", "PSp"):
        return symplectic(f, spec.n, spec.q)
    if f == "Monomial":
        from . import tables
        return tables.monomial(spec.m, spec.k, spec.n, spec.ell, spec.p).permutation_group()
    if f == "Wreath":
        return wreath_cyclic(spec.m, spec.n)
    if f == "DirectProduct":
        groups = [build(s, catalog_path) for s in spec.factors]
        out = groups[0]
        for g in groups[1:]:
            out = direct_product(out, g)
        return out
    raise CatalogError(f"unknown family {f!r}")


def _certify(G: PermGroup, expected: int, what: str) -> PermGroup:
    if G.order() != expected:
        raise CatalogError(
            f"{what}: built order {G.order()} != expected {expected}")
    return G


# ---------------------------------------------------------------------------
# permutation families


def alternating(n: int) -> PermGroup:
    if not 3 <= n <= ALT_SYM_MAX:
        raise CatalogError(f"Alt({n}) out of bounds (3..{ALT_SYM_MAX})")
    if n % 2:
        gens = [Permutation.from_cycles([list(range(n))], n),
                Permutation.from_cycles([[0, 1, 2]], n)]
    else:
        gens = [Permutation.from_cycles([list(range(1, n))], n),
                Permutation.from_cycles([[0, 1, 2]], n)]
    return _certify(PermGroup(gens, n), factorial(n) // 2, f"A{n}")


def symmetric(n: int) -> PermGroup:
    if not 2 <= n <= ALT_SYM_MAX:
        raise CatalogError(f"Sym({n}) out of bounds (2..{ALT_SYM_MAX})")
    gens = [Permutation.from_cycles([[0, 1]], n),
            Permutation.from_cycles([list(range(n))], n)]
    return _certify(PermGroup(gens, n), factorial(n), f"S{n}")


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise CatalogError("Cyclic(n) needs n >= 1")
    if n == 1:
        return PermGroup([], 1)
    return _certify(PermGroup([Permutation.from_cycles([list(range(n))], n)]), n, f"C{n}")


def dihedral(n: int) -> PermGroup:
    if n < 3:
        raise CatalogError("Dihedral(n) needs n >= 3")
    rot = Permutation.from_cycles([list(range(n))], n)
    refl = Permutation([(-i) % n for i in range(n)])
    return _certify(PermGroup([rot, refl]), 2 * n, f"D{n}")


def wreath_cyclic(m: int, n: int) -> PermGroup:
    """C_m wr Sym(n) in its imprimitive action on m*n points."""
    if m < 1 or n < 1:
        raise CatalogError("wreath parameters must be positive")
    deg = m * n
    gens = []
    if m > 1:
        gens.append(Permutation.from_cycles([list(range(m))], deg))
    if n > 1:
        swap = list(range(deg))
        for j in range(m):
            swap[j], swap[m + j] = swap[m + j], swap[j]
        gens.append(Permutation(swap))
        cycle = [(i + m) % deg for i in range(deg)]
        gens.append(Permutation(cycle))
    return _certify(PermGroup(gens, deg), m**n * factorial(n), f"C{m}wrS{n}")


# ---------------------------------------------------------------------------
# matrix groups


def _nonzero_vectors(q: int, n: int):
    return [v for v in itertools.product(range(q), repeat=n) if any(v)]


def _projective_points(F: smallfield.GF, n: int):
    """Vectors canonicalized so the first nonzero coordinate is 1."""
    pts = []
    for v in _nonzero_vectors(F.q, n):
        lead = next(x for x in v if x)
        if lead == 1:
            pts.append(v)
    return pts


def _canon_projective(F: smallfield.GF, v):
    lead = next(x for x in v if x)
    inv = F.inv[lead]
    return tuple(F.mul[inv][x] for x in v)


def _matrix_group_to_perm(F: smallfield.GF, mats, projective: bool) -> PermGroup:
    n = len(mats[0])
    if projective:
        points = _projective_points(F, n)
    else:
        points = _nonzero_vectors(F.q, n)
    index = {v: i for i, v in enumerate(points)}
    gens = []
    for M in mats:
        img = []
        for v in points:
            w = smallfield.vec_mat(F, v, M)
            if projective:
                w = _canon_projective(F, w)
            img.append(index[w])
        gens.append(Permutation(img))
    return PermGroup(gens, len(points))


def _check_linear_bounds(family: str, n: int, q: int):
    if n < 2:
        raise CatalogError(f"{family}{n}({q}): n must be >= 2")
    max_q = LINEAR_RANK2_MAX_Q if n == 2 else LINEAR_MAX_Q
    if n > LINEAR_MAX_N or q > max_q:
        raise CatalogError(
            f"{family}{n}({q}) out of desk-scale bounds "
            f"(n <= {LINEAR_MAX_N}, q <= {LINEAR_MAX_Q}; q <= {LINEAR_RANK2_MAX_Q} for n = 2)")


def _sl_generators(F: smallfield.GF, n: int):
    """Transvections along adjacent coordinate pairs, over a field basis."""
    p = F.p
    lams = [1]
    if F.k > 1:
        w = F.multiplicative_generator()
        lams = [F.power(w, i) for i in range(F.k)]
    mats = []
    for i in range(n - 1):
        for lam in lams:
            for (a, b) in ((i, i + 1), (i + 1, i)):
                M = [list(row) for row in smallfield.mat_identity(n)]
                M[a][b] = lam
                mats.append(tuple(tuple(row) for row in M))
    return mats


def linear(family: str, n: int, q: int) -> PermGroup:
    _check_linear_bounds(family, n, q)
    F = smallfield.GF(q)
    mats = _sl_generators(F, n)
    if family == "GL" and q > 2:
        diag = [list(row) for row in smallfield.mat_identity(n)]
        diag[0][0] = F.multiplicative_generator()
        mats.append(tuple(tuple(r) for r in diag))
    projective = family == "PSL"
    G = _matrix_group_to_perm(F, mats, projective)
    expected = {"GL": numth.order_gl, "SL": numth.order_sl, "PSL": numth.order_psl}[family](n, q)
    return _certify(G, expected, f"{family}{n}({q})")


def _hermitian_form(n: int):
    """Antidiagonal Gram matrix for the standard Hermitian form."""
    return tuple(tuple(1 if i + j == n - 1 else 0 for j in range(n)) for i in range(n))


def _preserves_hermitian(F: smallfield.GF, M, J) -> bool:
    MJ = smallfield.mat_mul(F, M, J)
    MJMt = smallfield.mat_mul(F, MJ, smallfield.mat_transpose(smallfield.mat_conj(F, M)))
    return MJMt == J


def unitary(family: str, n: int, q: int) -> PermGroup:
    """SU_n(q) / PSU_n(q) acting on the natural module over GF(q^2).

    Generators are harvested: all matrices differing from the identity in at
    most two off-diagonal entries that preserve the Hermitian form and have
    determinant 1, plus form-preserving permutation and diagonal matrices.
    The order certificate guarantees the harvest generates the full group.
    """
    _check_linear_bounds(family, n, q)
    F = smallfield.GF(q * q)
    J = _hermitian_form(n)
    mats = []
    idn = smallfield.mat_identity(n)
    positions = [(i, j) for i in range(n) for j in range(n) if i != j]
    for (i, j) in positions:
        for lam in range(1, F.q):
            M = [list(row) for row in idn]
            M[i][j] = lam
            M = tuple(tuple(r) for r in M)
            if _preserves_hermitian(F, M, J) and smallfield.mat_det(F, M) == 1:
                mats.append(M)
    for (i, j), (k, l) in itertools.combinations(positions, 2):
        if (i, j) >= (k, l) or len({i, j, k, l}) < 3:
            continue
        for lam in range(1, F.q):
            for mu in range(1, F.q):
                M = [list(row) for row in idn]
                M[i][j] = lam
                M[k][l] = mu
                M = tuple(tuple(r) for r in M)
                if _preserves_hermitian(F, M, J) and smallfield.mat_det(F, M) == 1:
                    mats.append(M)
    for diag in itertools.product(range(1, F.q), repeat=n):
        M = tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n))
        if _preserves_hermitian(F, M, J) and smallfield.mat_det(F, M) == 1:
            mats.append(M)
    projective = family == "PSU"
    G = _matrix_group_to_perm(F, mats, projective)
    expected = (numth.order_psu if projective else numth.order_su)(n, q)
    return _certify(G, expected, f"{family}{n}({q})")


def _symplectic_form(two_n: int):
    """B(e_i, e_j) = +1 if j = 2n-1-i and i < n, -1 if j = 2n-1-i and i >= n."""
    n = two_n // 2
    J = [[0] * two_n for _ in range(two_n)]
    for i in range(n):
        J[i][two_n - 1 - i] = 1
        J[two_n - 1 - i][i] = -1
    return J


def symplectic(family: str, two_n: int, q: int) -> PermGroup:
    """Sp_{2n}(q) / PSp_{2n}(q) generated by symplectic transvections."""
    if two_n % 2 or not 2 <= two_n <= SP_MAX_DIM or q > SP_MAX_Q:
        raise CatalogError(
            f"{family}{two_n}({q}) out of desk-scale bounds (2n <= {SP_MAX_DIM}, q <= {SP_MAX_Q})")
    F = smallfield.GF(q)
    Jraw = _symplectic_form(two_n)
    J = tuple(tuple(x % q for x in row) for row in Jraw)

    def bform(u, v):
        Jv = [smallfield._dot(F, J[i], v) for i in range(two_n)]
        return smallfield._dot(F, u, Jv)

    basis = [tuple(1 if i == j else 0 for j in range(two_n)) for i in range(two_n)]
    candidates = list(basis)
    for u, v in itertools.combinations(basis, 2):
        candidates.append(tuple(F.add[a][b] for a, b in zip(u, v)))
    mats = []
    for v in candidates:
        # transvection x -> x + B(x, v) v is always symplectic
        M = []
        for i in range(two_n):
            coeff = bform(basis[i], v)
            row = list(basis[i])
            for j in range(two_n):
                row[j] = F.add[row[j]][F.mul[coeff][v[j]]]
            M.append(tuple(row))
        mats.append(tuple(M))
    projective = family == "PSp" and q % 2 == 1
    G = _matrix_group_to_perm(F, mats, projective)
    expected = (numth.order_psp if projective else numth.order_sp)(two_n, q)
    if family == "PSp" and q % 2 == 0:
        expected = numth.order_sp(two_n, q)  # center trivial in characteristic 2
    return _certify(G, expected, f"{family}{two_n}({q})")


# ---------------------------------------------------------------------------
# Mathieu groups from the data file


def _default_catalog_path():
    return importlib.resources.files("fusionsys").joinpath("data/groups.txt")


def load_catalog_file(path=None) -> dict:
    """Parse the catalog data file: label, degree, order, generator lines."""
    if path is None:
        text = _default_catalog_path().read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    entries = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = re.match(r"^\[(.+)\]$", line)
        if m:
            current = {"label": m.group(1), "generators": []}
            entries[m.group(1)] = current
            continue
        if current is None:
            raise CatalogError(f"generator data before any [label]: {line!r}")
        m = re.match(r"^(degree|order)\s*=\s*(\d+)$", line)
        if m:
            current[m.group(1)] = int(m.group(2))
        elif line.startswith("("):
            current["generators"].append(line)
        else:
            raise CatalogError(f"bad catalog line: {line!r}")
    return entries


def build_from_file(label: str, path=None) -> PermGroup:
    entries = load_catalog_file(path)
    if label not in entries:
        raise CatalogError(f"label {label!r} not in catalog file")
    e = entries[label]
    for key in ("degree", "order"):
        if key not in e:
            raise CatalogError(f"catalog entry {label!r} missing {key}")
    gens = [Permutation.parse(s, e["degree"]) for s in e["generators"]]
    G = PermGroup(gens, e["degree"])
    if G.order() != e["order"]:
        raise CatalogError(
            f"catalog entry {label!r}: generators give order {G.order()}, "
            f"file documents {e['order']}")
    return G


def mathieu(n: int, path=None) -> PermGroup:
    if n not in (11, 12):
        raise CatalogError("only M11 and M12 are in scope")
    return build_from_file(f"M{n}", path)


# ---------------------------------------------------------------------------
# products and quotients


def direct_product(G1: PermGroup, G2: PermGroup) -> PermGroup:
    """G1 x G2 acting on the disjoint union of the two domains."""
    d1, d2 = G1.degree, G2.degree
    gens = []
    for g in G1.generators:
        gens.append(Permutation(list(g.images) + list(range(d1, d1 + d2))))
    for g in G2.generators:
        gens.append(Permutation(list(range(d1)) + [d1 + x for x in g.images]))
    out = PermGroup(gens, d1 + d2)
    return _certify(out, G1.order() * G2.order(), "direct product")


def central_quotient(G: PermGroup, Z: PermGroup) -> PermGroup:
    """G/Z acting faithfully: on Z-orbits of points when that is faithful,
    otherwise on the cosets of Z."""
    for z in Z.generators:
        if z not in G or any(not (z * g == g * z) for g in G.generators):
            raise PreconditionError("Z is not central in G", module="catalog")
    expected = G.order() // Z.order()
    if Z.order() == 1:
        return G
    # orbit action
    orbits = Z.orbits()
    orbit_of = {}
    for i, orb in enumerate(orbits):
        for pt in orb:
            orbit_of[pt] = i
    gens = []
    for g in G.generators:
        img = [0] * len(orbits)
        for i, orb in enumerate(orbits):
            img[i] = orbit_of[g(orb[0])]
        gens.append(Permutation(img))
    quo = PermGroup(gens, len(orbits))
    if quo.order() == expected:
        return quo
    quo, _ = G.action_on_cosets(Z)
    return _certify(quo, expected, "central quotient")
