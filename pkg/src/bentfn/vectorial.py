"""Vectorial functions V_n -> V_k and componentwise bentness.

A VecFn stores 2^n entries of k bits each.  Component functions are
F_alpha(x) = <alpha, F(x)>_k for nonzero alpha; the output pairing is
the plain dot product for generic bit-valued outputs and a trace form
when the output space is a field GF(2^k) (or a subfield S_k embedded
in a larger field, reached through its ascending-order encoding).
Builders pick the pairing; it changes which Boolean functions the
components are, not whether all of them are bent.
"""

from __future__ import annotations

import numpy as np

from .boolfn import BoolFn, Space, dual, is_bent
from .errors import DomainError, ParseError
from .gf2 import FieldCtx


class OutPairing:
    """The bilinear form <alpha, y> on the k-bit output space."""

    def __init__(self, k: int, columns: list[int], name: str):
        self.k = k
        self._cols = columns
        self.name = name

    @classmethod
    def dot(cls, k: int) -> "OutPairing":
        return cls(k, [1 << i for i in range(k)], "dot")

    @classmethod
    def field_trace(cls, ctx: FieldCtx) -> "OutPairing":
        cols = [ctx.dualmask(1 << i) for i in range(ctx.m)]
        return cls(ctx.m, cols, f"trace(2^{ctx.m})")

    @classmethod
    def subfield_trace(cls, ctx: FieldCtx, k: int) -> "OutPairing":
        """Tr_1^k(a*b) on S_k inside GF(2^m), via the ascending encoding."""
        elems = ctx.subfield(k)
        cols = []
        for i in range(k):
            mask = 0
            for j in range(k):
                if ctx.subfield_trace(ctx.mul(elems[1 << i], elems[1 << j]), k):
                    mask |= 1 << j
            cols.append(mask)
        return cls(k, cols, f"subtrace(2^{k} in 2^{ctx.m})")

    def dualmask(self, alpha: int) -> int:
        out = 0
        i = 0
        while alpha:
            if alpha & 1:
                out ^= self._cols[i]
            alpha >>= 1
            i += 1
        return out


class VecFn:
    """A function V_n -> V_k as a table of 2^n k-bit values."""

    __slots__ = ("n", "k", "table", "space", "pairing")

    def __init__(self, table, k: int, space: Space | None = None,
                 pairing: OutPairing | None = None):
        tbl = np.asarray(table, dtype=np.int64)
        if tbl.ndim != 1 or tbl.size < 2 or tbl.size & (tbl.size - 1):
            raise DomainError(f"table length must be a power of two, got {tbl.size}")
        if k < 1:
            raise DomainError("output dimension must be positive")
        if int(tbl.min(initial=0)) < 0 or int(tbl.max(initial=0)) >= 1 << k:
            raise DomainError(f"table entries must be {k}-bit values")
        self.n = int(tbl.size).bit_length() - 1
        self.k = k
        self.table = tbl
        self.table.setflags(write=False)
        self.space = space if space is not None else Space.bits(self.n)
        if self.space.n != self.n:
            raise DomainError("space dimension does not match table size")
        self.pairing = pairing if pairing is not None else OutPairing.dot(k)

    def __getitem__(self, i: int) -> int:
        return int(self.table[i])


def component(F: VecFn, alpha: int) -> BoolFn:
    """The Boolean function x -> <alpha, F(x)>."""
    if not 0 < alpha < 1 << F.k:
        raise DomainError(f"component index must be a nonzero {F.k}-bit value")
    gmask = F.pairing.dualmask(alpha)
    bits = (np.bitwise_count((F.table & gmask).astype(np.uint64)) & 1).astype(np.uint8)
    return BoolFn(bits, F.space)


def is_vectorial_bent(F: VecFn) -> bool:
    return all(is_bent(component(F, a)) for a in range(1, 1 << F.k))


def check_component_dual_linearity(F: VecFn) -> bool:
    """Whether (F_a)* + (F_b)* = (F_(a+b))* for all distinct nonzero a, b."""
    if not is_vectorial_bent(F):
        raise DomainError("component duals exist only for vectorial bent functions")
    duals = {a: dual(component(F, a)) for a in range(1, 1 << F.k)}
    for a in duals:
        for b in duals:
            if b <= a:
                continue
            if (duals[a] ^ duals[b]) != duals[a ^ b]:
                return False
    return True


def save_vecfn(F: VecFn, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"n={F.n} k={F.k}\n")
        for v in F.table:
            fh.write(f"{int(v):x}\n")


def load_vecfn(path: str) -> VecFn:
    from .boolfn import _parse_header

    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    n, k = _parse_header(lines[0], 1, "n", "k")
    if not 1 <= n <= 26 or not 1 <= k <= 26:
        raise ParseError(f"dimensions n={n} k={k} out of range", 1)
    want = 1 << n
    if len(lines) < want + 1:
        raise ParseError(f"expected {want} table lines, found {len(lines) - 1}", len(lines))
    vals = []
    for i, line in enumerate(lines[1:want + 1], start=2):
        try:
            vals.append(int(line.strip(), 16))
        except ValueError:
            raise ParseError(f"'{line.strip()}' is not a hex value", i) from None
    try:
        return VecFn(np.array(vals, dtype=np.int64), k)
    except DomainError as exc:
        raise ParseError(str(exc)) from None
