"""Integer arithmetic helpers and closed-form classical group orders."""

from __future__ import annotations

from math import gcd, prod

from .errors import PreconditionError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def v_p(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise PreconditionError("v_p(0) undefined", module="tables")
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def ord_p(q: int, p: int) -> int:
    """Multiplicative order of q modulo p."""
    if q % p == 0:
        raise PreconditionError(f"{q} not invertible mod {p}", module="tables")
    r = q % p
    k = 1
    acc = r
    while acc != 1:
        acc = (acc * r) % p
        k += 1
        if k > p:
            raise PreconditionError("order computation ran away", module="tables")
    return k


def p_part(n: int, p: int) -> int:
    return p ** v_p(n, p)


def prime_factors(n: int) -> list[int]:
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


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise."""
    ps = prime_factors(q)
    if len(ps) != 1:
        raise PreconditionError(f"{q} is not a prime power", module="catalog")
    p = ps[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


def find_dual_prime(p: int, q: int, bound: int = 10**6) -> int:
    """Smallest prime r with ord_p(r) = ord_p(-q) and matching (p-1)-level.

    The level condition is v_p(r^(p-1) - 1) = v_p(q^(p-1) - 1); existence is
    guaranteed by Dirichlet, so the increasing search terminates.
    """
    if p == 2 or not is_prime(p):
        raise PreconditionError("p must be an odd prime", module="tables")
    if q % p == 0:
        raise PreconditionError("q must be prime to p", module="tables")
    target_ord = ord_p(-q % p, p)
    target_level = v_p(q ** (p - 1) - 1, p)
    r = 2
    while r <= bound:
        if is_prime(r) and r % p != 0:
            if ord_p(r, p) == target_ord and v_p(r ** (p - 1) - 1, p) == target_level:
                return r
        r += 1
    raise PreconditionError(f"no dual prime below {bound}", module="tables")


# ---------------------------------------------------------------------------
# classical group orders (ambient isometry-group conventions; the odd-p
# valuations used in the index identities are insensitive to the factor-2
# conventions for orthogonal groups)


def order_gl(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))


def order_sl(n: int, q: int) -> int:
    return order_gl(n, q) // (q - 1)


def order_psl(n: int, q: int) -> int:
    return order_sl(n, q) // gcd(n, q - 1)


def order_gu(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(1, n + 1))


def order_su(n: int, q: int) -> int:
    return order_gu(n, q) // (q + 1)


def order_psu(n: int, q: int) -> int:
    return order_su(n, q) // gcd(n, q + 1)


def order_sp(two_n: int, q: int) -> int:
    if two_n % 2:
        raise PreconditionError("symplectic rank must be even", module="catalog")
    n = two_n // 2
    return q ** (n * n) * prod(q ** (2 * i) - 1 for i in range(1, n + 1))


def order_psp(two_n: int, q: int) -> int:
    return order_sp(two_n, q) // gcd(2, q - 1)


def order_so_odd(dim: int, q: int) -> int:
    """SO_{2n+1}(q), q odd (coincides with Sp_{2n}(q) order)."""
    if dim % 2 == 0:
        raise PreconditionError("dimension must be odd", module="catalog")
    return order_sp(dim - 1, q)


def order_go_eps(two_n: int, q: int, eps: int) -> int:
    """Full orthogonal group O^eps_{2n}(q) for odd q."""
    if two_n % 2 or eps not in (1, -1):
        raise PreconditionError("need even dimension and eps = +-1", module="catalog")
    n = two_n // 2
    return 2 * q ** (n * (n - 1)) * (q**n - eps) * prod(
        q ** (2 * i) - 1 for i in range(1, n))
