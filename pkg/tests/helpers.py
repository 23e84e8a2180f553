"""Independent oracles for the test suite.

Everything here is written from the definitions, deliberately avoiding
the library's fast paths: double-sum Walsh transform, subset-sum ANF,
schoolbook polynomial field arithmetic, and a literal quadruple scan
for the unique-subspace property.  Slow and obvious on purpose.
"""

from __future__ import annotations

import numpy as np


def naive_walsh(table) -> list[int]:
    """W(b) = sum_x (-1)^(f(x) + <b,x>) by the double sum."""
    n = (len(table) - 1).bit_length()
    out = []
    for b in range(1 << n):
        acc = 0
        for x in range(1 << n):
            s = int(table[x]) ^ ((b & x).bit_count() & 1)
            acc += 1 - 2 * s
        out.append(acc)
    return out


def naive_anf_degree(table) -> int:
    """Largest |u| with a nonzero coefficient, each one a subset sum."""
    n = (len(table) - 1).bit_length()
    deg = 0
    for u in range(1 << n):
        acc = 0
        sub = u
        while True:
            acc ^= int(table[sub])
            if sub == 0:
                break
            sub = (sub - 1) & u
        if acc:
            deg = max(deg, u.bit_count())
    return deg


class SlowField:
    """GF(2^m) by schoolbook polynomial arithmetic modulo `modulus`."""

    def __init__(self, m: int, modulus: int):
        self.m = m
        self.modulus = modulus
        self.size = 1 << m

    def mul(self, a: int, b: int) -> int:
        acc = 0
        while b:
            if b & 1:
                acc ^= a
            b >>= 1
            a <<= 1
            if a >> self.m:
                a ^= self.modulus
        return acc

    def pow(self, a: int, e: int) -> int:
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            e >>= 1
        return acc

    def inv(self, a: int) -> int:
        for b in range(1, 1 << self.m):
            if self.mul(a, b) == 1:
                return b
        raise ValueError("not invertible")

    def trace(self, a: int) -> int:
        acc, t = 0, a
        for _ in range(self.m):
            acc ^= t
            t = self.mul(t, t)
        return acc & 1


def two_block_table(ctx, perm) -> np.ndarray:
    """Tr(x * perm(y)) on the x + 2^m y index, from first principles."""
    size = ctx.size
    out = np.zeros(size * size, dtype=np.uint8)
    for y in range(size):
        p = perm[y]
        for x in range(size):
            out[x + (y << ctx.m)] = ctx.trace(ctx.mul(x, p))
    return out


def literal_unique_subspace(ctx, perm) -> bool:
    """Quadruple scan for the unique-subspace property of the two-block
    function: every second derivative along a pair of distinct nonzero
    directions not both inside F x {0} must be nonzero somewhere."""
    m = ctx.m
    t = two_block_table(ctx, perm).astype(np.int64)
    size = len(t)
    idx = np.arange(size)
    shifted = {}

    def sh(a):
        if a not in shifted:
            shifted[a] = t[idx ^ a]
        return shifted[a]

    for a in range(1, size):
        for b in range(a + 1, size):
            if a >> m == 0 and b >> m == 0:
                continue
            d2 = t ^ sh(a) ^ sh(b) ^ sh(a ^ b)
            if not d2.any():
                return False
    return True


def random_invertible(rng, n: int) -> list[int]:
    """Row masks of a random invertible matrix over GF(2)."""
    while True:
        rows = [rng.randrange(1 << n) for _ in range(n)]
        got = []
        for v in rows:
            for r in got:
                v = min(v, v ^ r)
            if v == 0:
                break
            got.append(v)
        if len(got) == n:
            return rows
