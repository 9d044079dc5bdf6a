"""Monomial reflection groups, parameter tables, and the classification
predictor.

``monomial(m, k, n, ell, p)`` builds the imprimitive group of monomial
n x n matrices over Z/p^ell whose nonzero entries are m-th roots of unity
and whose entry product is an (m/k)-th root of unity, extended by the
permutation matrices; it requires k | m | (p-1) so the roots of unity are
the unique cyclic subgroup of order m of the units.

``table_params`` evaluates the classical-group parameter table (case tags
a-d), and ``predict`` is the pure table/formula classifier: given a group
family and a prime it reports the expected p'-quotient, simplicity, the
realizing group when the theory names one, and the exotic flag.  The
predictor performs no group computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial, gcd

from .errors import PreconditionError
from .numth import (find_dual_prime, is_prime, ord_p, prime_power_decomposition,
                    v_p)
from .perm import PermGroup, Permutation

__all__ = [
    "MonomialGroup", "monomial", "TableParams", "table_params", "Prediction",
    "predict", "ord_p", "v_p", "find_dual_prime", "index_identity",
]


# ---------------------------------------------------------------------------
# monomial groups over Z/p^ell


def _unit_group_generator(p: int, ell: int) -> int:
    """A generator of the (cyclic) unit group of Z/p^ell, p odd."""
    mod = p**ell
    order = p ** (ell - 1) * (p - 1)
    for g in range(2, mod):
        if g % p == 0 or pow(g, order, mod) != 1:
            continue
        if all(pow(g, order // q, mod) != 1 for q in set(_prime_factors(order))):
            return g
    raise PreconditionError("no unit generator found", module="tables")


def _prime_factors(n: int) -> list[int]:
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


class MonomialGroup:
    """G(m, k, n) over Z/p^ell: monomial matrices with root-of-unity entries.

    Elements are pairs (diag, perm): the matrix is D(diag) * P(perm) where
    P(perm)[i][perm[i]] = 1, acting on row vectors.  The diagonal entries
    are m-th roots of unity and their product is an (m/k)-th root.
    """

    def __init__(self, m: int, k: int, n: int, ell: int, p: int):
        if not is_prime(p) or ell < 1:
            raise PreconditionError("need a prime p and ell >= 1", module="tables")
        if m < 1 or k < 1 or m % k or (p - 1) % m:
            raise PreconditionError("need k | m | (p-1)", module="tables")
        self.m, self.k, self.n, self.ell, self.p = m, k, n, ell, p
        self.mod = p**ell
        if m == 1:
            self.zeta = 1
        else:
            g = _unit_group_generator(p, ell)
            self.zeta = pow(g, (p ** (ell - 1) * (p - 1)) // m, self.mod)
        self.roots = sorted({pow(self.zeta, i, self.mod) for i in range(m)})
        allowed = m // k  # the entry product must be an (m/k)-th root of unity
        self.allowed_products = {r for r in self.roots
                                 if pow(r, allowed, self.mod) == 1}

    def order(self) -> int:
        return self.m**self.n * factorial(self.n) // self.k

    def contains(self, diag, perm) -> bool:
        prod = 1
        for u in diag:
            if u not in self.roots:
                return False
            prod = (prod * u) % self.mod
        return prod in self.allowed_products

    def elements(self):
        """Enumerate all (diag, perm) pairs; only sensible for small orders."""
        for diag in itertools.product(self.roots, repeat=self.n):
            prod = 1
            for u in diag:
                prod = (prod * u) % self.mod
            if prod not in self.allowed_products:
                continue
            for perm in itertools.permutations(range(self.n)):
                yield (diag, perm)

    @staticmethod
    def multiply(a, b, mod):
        """(D1 P1)(D2 P2) = D' P' with D'_i = d1_i * d2_{p1(i)}, P' = p1 then p2."""
        d1, p1 = a
        d2, p2 = b
        diag = tuple((d1[i] * d2[p1[i]]) % mod for i in range(len(d1)))
        perm = tuple(p2[p1[i]] for i in range(len(p1)))
        return diag, perm

    def generators(self):
        gens = []
        n, mod = self.n, self.mod
        ident = tuple(range(n))
        ones = tuple([1] * n)
        if self.m > 1:
            if n >= 2:
                zi = self.zeta
                zinv = pow(self.zeta, self.m - 1, mod)
                gens.append(((zi, zinv) + (1,) * (n - 2), ident))
            if self.m // self.k > 1 or n == 1:
                zk = pow(self.zeta, self.k, mod)
                if zk != 1:
                    gens.append(((zk,) + (1,) * (n - 1), ident))
        if n >= 2:
            swap = (1, 0) + tuple(range(2, n))
            gens.append((ones, swap))
        if n >= 3:
            cyc = tuple((i + 1) % n for i in range(n))
            gens.append((ones, cyc))
        return gens

    def matrix(self, element):
        diag, perm = element
        n = self.n
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            M[i][perm[i]] = diag[i]
        return tuple(tuple(row) for row in M)

    def permutation_group(self) -> PermGroup:
        """Faithful action on the nonzero vectors of (Z/p^ell)^n."""
        mod, n = self.mod, self.n
        points = [v for v in itertools.product(range(mod), repeat=n) if any(v)]
        index = {v: i for i, v in enumerate(points)}
        gens = []
        for g in self.generators():
            M = self.matrix(g)
            img = []
            for v in points:
                w = tuple(sum(v[i] * M[i][j] for i in range(n)) % mod
                          for j in range(n))
                img.append(index[w])
            gens.append(Permutation(img))
        G = PermGroup(gens, len(points))
        if G.order() != self.order():
            raise PreconditionError(
                f"monomial generators give order {G.order()}, formula says "
                f"{self.order()}", module="tables")
        return G


def monomial(m: int, k: int, n: int, ell: int, p: int) -> MonomialGroup:
    return MonomialGroup(m, k, n, ell, p)


# ---------------------------------------------------------------------------
# classical parameter table


@dataclass(frozen=True)
class TableParams:
    case: str
    p: int
    q: int
    n: int
    eps: int | None
    m: int
    mu: int
    theta_sign: int
    kappa: int
    ell: int

    def aut_A_descriptor(self) -> dict:
        """Automizer shapes on the distinguished abelian subgroup."""
        full = self.mu**self.kappa * factorial(self.kappa)
        if self.case == "d":
            aut = ("G({mu},2,{k})".format(mu=self.mu, k=self.kappa), full // 2)
        else:
            aut = (f"C{self.mu} wr Sym({self.kappa})", full)
        kernel = (f"G({self.mu},{self.mu},{self.kappa})", full // self.mu)
        return {"aut_F_A": aut[0], "aut_F_A_order": aut[1],
                "aut_opprime_A": kernel[0], "aut_opprime_A_order": kernel[1]}


def table_params(case: str, p: int, q: int, n: int, eps: int | None = None) -> TableParams:
    """Parameters (m, mu, theta, kappa, ell) for the classical cases a-d.

    ``n`` is the subscript parameter of the family: PSL^eps_n in case (a),
    PSp_2n / Omega_{2n+1} in case (b), POmega^eps_2n in cases (c) and (d).
    The exponent level ell equals v_p(q^m - 1) throughout; in cases (b)-(d)
    it is evaluated as v_p(q^(mu/2) - theta), which agrees with the torus
    arithmetic (the variant v_p(q^mu - theta) vanishes for even m and
    cannot be the exponent of a nontrivial subgroup).
    """
    if not is_prime(p) or p == 2 or q % p == 0:
        raise PreconditionError("need an odd prime p with p not dividing q",
                                module="tables")
    if case == "a":
        if eps not in (1, -1):
            raise PreconditionError("case (a) needs eps = +-1", module="tables")
        m = ord_p(eps * q % p, p)
        mu = m
        theta = eps
        kappa = n // mu
        ell = v_p(q**mu - theta, p)
    elif case in ("b", "c", "d"):
        m = ord_p(q, p)
        mu = m if m % 2 == 0 else 2 * m
        theta = (-1) ** (m + 1)
        kappa = (2 * n) // mu if case in ("b", "d") else (2 * (n - 1)) // mu
        ell = v_p(q ** (mu // 2) - theta, p)
    else:
        raise PreconditionError(f"unknown case {case!r}", module="tables")
    if ell < 1:
        raise PreconditionError("parameters give a trivial p-part", module="tables")
    return TableParams(case=case, p=p, q=q, n=n, eps=eps, m=m, mu=mu,
                       theta_sign=theta, kappa=kappa, ell=ell)


# ---------------------------------------------------------------------------
# the order-quotient identities used as numeric cross-checks


def index_identity(kind: str, n: int, q: int, p: int, eps: int = 1) -> tuple[int, int]:
    """Both sides of one of the subgroup-index valuation identities.

    Returns (lhs, rhs) where lhs is v_p of the actual index computed from
    the closed-form orders and rhs is the cyclotomic formula.
    """
    from . import numth
    if kind == "gl_step":
        lhs = v_p(numth.order_gl(n + 1, q) // numth.order_gl(n, q), p)
        rhs = v_p(q ** (n + 1) - 1, p)
    elif kind == "sp":
        lhs = v_p(numth.order_gl(2 * n, q) // numth.order_sp(2 * n, q), p)
        rhs = sum(v_p(q ** (2 * i - 1) - 1, p) for i in range(1, n + 1))
    elif kind == "so_odd":
        lhs = v_p(numth.order_gl(2 * n + 1, q) // numth.order_so_odd(2 * n + 1, q), p)
        rhs = sum(v_p(q ** (2 * i - 1) - 1, p) for i in range(1, n + 2))
    elif kind == "go_even":
        lhs = v_p(numth.order_gl(2 * n, q) // numth.order_go_eps(2 * n, q, eps), p)
        rhs = v_p(q**n + eps, p) + sum(v_p(q ** (2 * i - 1) - 1, p)
                                       for i in range(1, n + 1))
    elif kind == "so_step":
        lhs = v_p((numth.order_go_eps(2 * n, q, eps) // 2)
                  // (numth.order_so_odd(2 * n - 1, q) // 1), p)
        rhs = v_p(q**n - eps, p)
    else:
        raise PreconditionError(f"unknown identity {kind!r}", module="tables")
    return lhs, rhs


# ---------------------------------------------------------------------------
# predictor


@dataclass
class Prediction:
    label: str
    p: int
    case: str
    gamma_order: int | None = None
    gamma_structure: str | None = None       # "cyclic" when asserted
    simple: bool | None = None
    opprime_simple: bool | None = None
    realizer: str | None = None
    exotic: bool = False
    abelian_sylow: bool | None = None
    sylow_normal: bool | None = None
    aut_A: dict | None = None
    notes: str = ""

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


_MATHIEU_TABLE = {
    # (n, p): "simple" | "ab"
    (11, 2): "simple", (11, 3): "ab", (11, 5): "ab", (11, 11): "ab",
    (12, 2): "simple", (12, 3): "simple", (12, 5): "ab", (12, 11): "ab",
}


def _alt_prediction(n: int, p: int) -> Prediction:
    label = f"A{n}"
    divides = (n >= 4) if p == 2 else (n >= p)
    if not divides:
        raise PreconditionError(f"p = {p} does not divide |A{n}|", module="tables")
    if p == 2:
        nonabelian = n >= 6  # A4, A5 have a Klein four Sylow subgroup
    else:
        nonabelian = n >= p * p
    if not nonabelian:
        return Prediction(label, p, case="alternating-abelian",
                          abelian_sylow=True, sylow_normal=True, simple=False,
                          notes="abelian Sylow subgroup: S is normal in the "
                                "fusion system; no p'-quotient prediction")
    gamma = 1 if n % p in (0, 1) else 2
    nprime = p * (n // p)
    return Prediction(label, p, case="alternating",
                      gamma_order=gamma, gamma_structure="cyclic",
                      simple=gamma == 1, opprime_simple=True,
                      abelian_sylow=False, sylow_normal=False,
                      realizer=f"A{nprime}")


def _mathieu_prediction(n: int, p: int) -> Prediction:
    label = f"M{n}"
    entry = _MATHIEU_TABLE.get((n, p))
    if entry is None:
        raise PreconditionError(f"p = {p} does not divide |{label}|", module="tables")
    if entry == "ab":
        return Prediction(label, p, case="sporadic-abelian", abelian_sylow=True,
                          sylow_normal=True, simple=False,
                          notes="abelian Sylow subgroup")
    return Prediction(label, p, case="sporadic", gamma_order=1,
                      gamma_structure="cyclic", simple=True, opprime_simple=True,
                      abelian_sylow=False, sylow_normal=False, realizer=label)


def _classical_prediction(family: str, n: int, q: int, p: int) -> Prediction:
    label = f"{family}{n}({q})"
    q0, _ = prime_power_decomposition(q)
    if q % p == 0:
        # defining characteristic: simple whenever the Sylow subgroup is
        # nonabelian (Lie rank at least two)
        rank = {"SL": n - 1, "PSL": n - 1, "GL": n - 1,
                "SU": n // 2, "PSU": n // 2, "Sp": n // 2, "PSp": n // 2}[family]
        if rank < 2:
            return Prediction(label, p, case="defining-abelian", abelian_sylow=True,
                              sylow_normal=True, simple=False,
                              notes="Lie rank one: abelian Sylow subgroup")
        return Prediction(label, p, case="defining", gamma_order=1,
                          gamma_structure="cyclic", simple=True,
                          opprime_simple=True, abelian_sylow=False,
                          sylow_normal=False, realizer=label)
    if p == 2:
        return Prediction(label, p, case="cross-char-p2", gamma_order=1,
                          gamma_structure="cyclic", simple=True,
                          opprime_simple=True, abelian_sylow=False,
                          sylow_normal=False, realizer=label,
                          notes="odd-characteristic group at p = 2")
    # odd cross characteristic
    if family in ("SL", "PSL", "GL", "SU", "PSU"):
        eps = 1 if family in ("SL", "PSL", "GL") else -1
        params = table_params("a", p, q, n, eps)
        gamma = params.m
    elif family in ("Sp", "PSp"):
        eps = None
        params = table_params("b", p, q, n // 2)
        gamma = 2 * params.m // gcd(2, params.m)  # lcm(2, m)
    else:
        raise PreconditionError(f"no prediction rule for {family}", module="tables")
    if params.kappa < p:
        return Prediction(label, p, case="cross-char-abelian", abelian_sylow=True,
                          sylow_normal=True, simple=False,
                          notes="kappa < p forces an abelian Sylow subgroup; the "
                                "table rows require a nonabelian one")
    exotic = p >= 5 and (q % p) not in (1, p - 1)
    pred = Prediction(label, p, case=f"cross-char-{params.case}",
                      gamma_order=gamma, gamma_structure="cyclic",
                      simple=gamma == 1, opprime_simple=True,
                      abelian_sylow=False, sylow_normal=False,
                      exotic=exotic, aut_A=params.aut_A_descriptor())
    if exotic:
        pred.notes = "minimal p'-index subsystem is simple and exotic"
    elif gamma == 1:
        pred.realizer = label
    if params.case == "a" and (q - (params.eps or 1)) % p == 0:
        pred.aut_A = dict(pred.aut_A or {})
        pred.aut_A["shape_note"] = (
            f"exceptional shape: rank <= {params.kappa}, exponent p^{params.ell}")
    return pred


def predict(spec, p: int) -> Prediction:
    """Pure table/formula classification prediction for a group family."""
    from .catalog import GroupSpec, parse_label
    if isinstance(spec, str):
        spec = parse_label(spec)
    f = spec.family
    if f == "Alt":
        return _alt_prediction(spec.n, p)
    if f == "Mathieu":
        return _mathieu_prediction(spec.n, p)
    if f in ("GL", "SL", "PSL", "SU", "PSU", "Sp", "PSp"):
        return _classical_prediction(f, spec.n, spec.q, p)
    if f == "G2":
        q = spec.q
        if p == 3 and q is not None and (q % 9 in (1, 8)):
            return Prediction(f"G2({q})", p, case="exceptional-g2",
                              gamma_order=2, gamma_structure="cyclic",
                              simple=False, opprime_simple=None,
                              realizer=f"SL3^+-({q})",
                              notes="order-3 normal core; index-2 subsystem "
                                    "realized by a special linear group")
        return Prediction(f"G2({spec.q})", p, case="unsupported",
                          notes="outside the desk-scale prediction rules")
    return Prediction(spec.label(), p, case="unsupported",
                      notes="no prediction rule for this family")
