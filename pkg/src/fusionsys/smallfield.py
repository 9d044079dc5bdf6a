"""Exact arithmetic in small finite fields GF(q), q <= 9.

Fields are table-backed: elements are the integers 0..q-1, with 0, 1 the
additive and multiplicative identities.  For prime q the representation is
arithmetic mod q; for prime powers it is polynomial arithmetic modulo a
fixed irreducible (so the labeling is deterministic).
"""

from __future__ import annotations

from .errors import PreconditionError
from .numth import prime_power_decomposition

# minimal-style irreducibles, coefficient lists low->high degree
_IRREDUCIBLE = {
    4: (1, 1, 1),        # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),     # x^3 + x + 1 over GF(2)
    9: (1, 0, 1),        # x^2 + 1 over GF(3)
}


class GF:
    """A small finite field with dense add/mul/inv tables."""

    def __init__(self, q: int):
        p, k = prime_power_decomposition(q)
        if q > 9:
            raise PreconditionError(f"GF({q}) out of supported range", module="catalog")
        self.q = q
        self.p = p
        self.k = k
        if k == 1:
            self.add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            poly = _IRREDUCIBLE[q]
            # element i <-> polynomial with base-p digits of i (low first)
            def digits(i):
                out = []
                for _ in range(k):
                    out.append(i % p)
                    i //= p
                return out

            def undigits(ds):
                v = 0
                for d in reversed(ds):
                    v = v * p + d
                return v

            def poly_mul(a, b):
                prod = [0] * (2 * k - 1)
                for i, ai in enumerate(a):
                    for j, bj in enumerate(b):
                        prod[i + j] = (prod[i + j] + ai * bj) % p
                # reduce by the irreducible (monic of degree k)
                for i in range(len(prod) - 1, k - 1, -1):
                    c = prod[i]
                    if c:
                        prod[i] = 0
                        for j in range(k):
                            prod[i - k + j] = (prod[i - k + j] - c * poly[j]) % p
                return prod[:k]

            self.add = [[undigits([(x + y) % p for x, y in zip(digits(a), digits(b))])
                         for b in range(q)] for a in range(q)]
            self.mul = [[undigits(poly_mul(digits(a), digits(b)))
                         for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [None] + [next(b for b in range(1, q) if self.mul[a][b] == 1)
                             for a in range(1, q)]
        self.frobenius = [self.power(a, p) for a in range(q)]

    def power(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self.mul[r][a]
            a = self.mul[a][a]
            n >>= 1
        return r

    def multiplicative_generator(self) -> int:
        for a in range(2, self.q):
            seen = set()
            x = 1
            while x not in seen:
                seen.add(x)
                x = self.mul[x][a]
            if len(seen) == self.q - 1:
                return a
        return 1  # GF(2)


def mat_mul(F: GF, A, B):
    n = len(A)
    m = len(B[0])
    inner = len(B)
    return tuple(
        tuple(
            _dot(F, [A[i][t] for t in range(inner)], [B[t][j] for t in range(inner)])
            for j in range(m))
        for i in range(n))


def _dot(F: GF, u, v):
    s = 0
    for a, b in zip(u, v):
        s = F.add[s][F.mul[a][b]]
    return s


def mat_identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(A):
    n = len(A)
    m = len(A[0])
    return tuple(tuple(A[i][j] for i in range(n)) for j in range(m))


def mat_conj(F: GF, A):
    """Entrywise field Frobenius x -> x^p (the q0-th power map for GF(q0^2))."""
    return tuple(tuple(F.frobenius[x] for x in row) for row in A)


def mat_det(F: GF, A) -> int:
    n = len(A)
    M = [list(row) for row in A]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            M[col], M[pivot] = M[pivot], M[col]
            det = F.mul[det][F.neg[1]]
        det = F.mul[det][M[col][col]]
        inv = F.inv[M[col][col]]
        for r in range(col + 1, n):
            if M[r][col]:
                factor = F.mul[M[r][col]][inv]
                for c in range(col, n):
                    M[r][c] = F.add[M[r][c]][F.neg[F.mul[factor][M[col][c]]]]
    return det


def vec_mat(F: GF, v, M):
    """Row vector times matrix."""
    n = len(M[0])
    return tuple(_dot(F, v, [M[t][j] for t in range(len(v))]) for j in range(n))
