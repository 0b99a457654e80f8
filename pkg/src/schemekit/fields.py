"""Small finite fields as explicit addition/multiplication tables.

Elements of GF(p^e) are encoded as integers 0..q-1 whose base-p digits are
the polynomial coefficients (lowest degree first).
"""
from functools import lru_cache

import numpy as np

from .errors import UnsupportedFieldOrder

# Monic irreducible polynomials, coefficients lowest degree first, leading 1 omitted.
_MODULI = {
    4: (2, (1, 1)),        # x^2 + x + 1
    8: (2, (1, 1, 0)),     # x^3 + x + 1
    9: (3, (1, 0)),        # x^2 + 1
    16: (2, (1, 1, 0, 0)), # x^4 + x + 1
    25: (5, (3, 0)),       # x^2 + 3
    27: (3, (2, 2, 0)),    # x^3 + 2x + 2
}


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def supported_orders():
    return sorted([p for p in range(2, 1000) if is_prime(p)] + list(_MODULI))


class GF:
    """Finite field of order ``q`` backed by dense tables."""

    def __init__(self, q):
        if is_prime(q) and q < 1000:
            self.p, self.degree = q, 1
            elems = np.arange(q)
            self.add = (elems[:, None] + elems[None, :]) % q
            self.mul = (elems[:, None] * elems[None, :]) % q
        elif q in _MODULI:
            p, modulus = _MODULI[q]
            e = len(modulus)
            self.p, self.degree = p, e
            digits = np.array([[(a // p**i) % p for i in range(e)] for a in range(q)])
            weights = p ** np.arange(e)
            self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            self.mul = np.array(
                [[_poly_mulmod(digits[a], digits[b], modulus, p) @ weights
                  for b in range(q)] for a in range(q)]
            )
        else:
            raise UnsupportedFieldOrder(
                f"field order {q} not supported (primes < 1000 and 4, 8, 9, 16, 25, 27)"
            )
        self.q = q
        self.add = self.add.astype(np.int64)
        self.mul = self.mul.astype(np.int64)
        self.neg = np.argmin(self.add, axis=1)  # add[a, neg[a]] == 0
        self.inv = np.zeros(q, dtype=np.int64)
        self.inv[1:] = np.argmax(self.mul[1:] == 1, axis=1)

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def primitive_element(self):
        for g in range(2, self.q) if self.q > 2 else [1]:
            x, order = g, 1
            while x != 1:
                x = self.mul[x, g]
                order += 1
            if order == self.q - 1:
                return g
        return 1

    def discrete_log(self):
        """Return ``log`` with ``g**log[a] == a`` for nonzero ``a`` (log[0] = -1)."""
        g = self.primitive_element()
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for i in range(self.q - 1):
            log[x] = i
            x = self.mul[x, g]
        return log

    def __repr__(self):
        return f"GF({self.q})"


def _poly_mulmod(a, b, modulus, p):
    e = len(modulus)
    prod = np.zeros(2 * e - 1, dtype=np.int64)
    for i, ai in enumerate(a):
        prod[i:i + e] += ai * np.asarray(b)
    # reduce using x^e = -(modulus)
    for deg in range(2 * e - 2, e - 1, -1):
        c = prod[deg] % p
        if c:
            prod[deg] = 0
            for i, m in enumerate(modulus):
                prod[deg - e + i] -= c * m
    return prod[:e] % p


@lru_cache(maxsize=None)
def field(q):
    return GF(q)
