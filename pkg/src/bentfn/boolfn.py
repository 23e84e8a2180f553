"""Truth-table Boolean functions and their Walsh-transform analysis.

A function on n variables is a table of 2^n bits; input i encodes the
point whose coordinate j is bit j of i.  For functions built over
product domains the index splits into consecutive bit blocks, e.g. on
F_{2^m} x F_{2^m} the index is bits(x) + 2^m * bits(y), and on the
four-argument domain F_{2^m}^2 x F_{2^k}^2 it is
bits(x1) + 2^m bits(x2) + 2^(2m) bits(y) + 2^(2m+k) bits(z).

The inner product <b, x> that the Walsh transform correlates against
is the dot product on plain bit blocks and the trace form Tr(bx) on
field blocks (summed across blocks).  A Space records that choice.
Whether a function is bent, plateaued or balanced does not depend on
it, but the *labeling* of the spectrum does, and with it the truth
table of the dual; duals computed here agree pointwise with the
closed-form duals of the finite-field constructions only under the
trace pairing, which is why builders attach the right Space instead
of defaulting to the dot product.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .errors import DomainError, ParseError
from .gf2 import FieldCtx

_HEX = "0123456789abcdef"


class Space:
    """An n-dimensional binary space split into pairing blocks.

    factors: each entry is either an int w (a plain V_w block with the
    dot product) or a FieldCtx (an m-bit block paired by Tr(bx)).
    """

    def __init__(self, factors):
        cols: list[int] = []
        sig = []
        offset = 0
        for fac in factors:
            if isinstance(fac, FieldCtx):
                for i in range(fac.m):
                    cols.append(fac.dualmask(1 << i) << offset)
                sig.append(("field", fac.m, fac.irred))
                offset += fac.m
            else:
                w = int(fac)
                if w < 1:
                    raise DomainError(f"factor width must be positive, got {w}")
                for i in range(w):
                    cols.append(1 << (offset + i))
                sig.append(("bits", w))
                offset += w
        if offset == 0:
            raise DomainError("a space needs at least one factor")
        self.factors = tuple(factors)
        self.signature = tuple(sig)
        self.n = offset
        self._cols = cols
        self._perm: np.ndarray | None = None

    @classmethod
    def bits(cls, n: int) -> "Space":
        return cls([n])

    @property
    def is_plain(self) -> bool:
        return all(tag[0] == "bits" for tag in self.signature)

    def dualmask(self, b: int) -> int:
        """The mask g(b) with <b, x> = parity(g(b) & x)."""
        out = 0
        i = 0
        while b:
            if b & 1:
                out ^= self._cols[i]
            b >>= 1
            i += 1
        return out

    def perm(self) -> np.ndarray:
        """dualmask as an index array over the whole space (cached)."""
        if self._perm is None:
            p = np.zeros(1 << self.n, dtype=np.int64)
            for i, col in enumerate(self._cols):
                size = 1 << i
                p[size:2 * size] = p[:size] ^ col
            self._perm = p
        return self._perm

    def __eq__(self, other) -> bool:
        return isinstance(other, Space) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return f"Space({self.n}, {self.signature})"


class BoolFn:
    """A Boolean function as an immutable 2^n-entry bit table."""

    __slots__ = ("n", "table", "space")

    def __init__(self, table, space: Space | None = None):
        tbl = np.asarray(table, dtype=np.uint8)
        if tbl.ndim != 1 or tbl.size < 2 or tbl.size & (tbl.size - 1):
            raise DomainError(f"table length must be a power of two >= 2, got {tbl.size}")
        if tbl.max(initial=0) > 1:
            raise DomainError("table entries must be bits")
        n = int(tbl.size).bit_length() - 1
        if space is None:
            space = Space.bits(n)
        elif space.n != n:
            raise DomainError(f"space dimension {space.n} does not match table size 2^{n}")
        self.n = n
        self.table = tbl
        self.table.setflags(write=False)
        self.space = space

    # -- basic structure ------------------------------------------------------

    def __len__(self):
        return self.table.size

    def __getitem__(self, i: int) -> int:
        return int(self.table[i])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BoolFn)
            and self.n == other.n
            and bool(np.array_equal(self.table, other.table))
        )

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __xor__(self, other) -> "BoolFn":
        if isinstance(other, BoolFn):
            if other.n != self.n:
                raise DomainError("cannot add functions on different dimensions")
            return BoolFn(self.table ^ other.table, self.space)
        return BoolFn(self.table ^ (int(other) & 1), self.space)

    def shift(self, a: int) -> "BoolFn":
        """x -> f(x + a)."""
        idx = np.arange(self.table.size, dtype=np.int64) ^ int(a)
        return BoolFn(self.table[idx], self.space)

    def with_space(self, space: Space) -> "BoolFn":
        return BoolFn(self.table, space)

    def weight(self) -> int:
        return int(self.table.sum())

    def is_constant(self) -> bool:
        return bool((self.table == self.table[0]).all())

    def bitmask(self) -> int:
        """The table as one big int, bit i = f(i)."""
        packed = np.packbits(self.table, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    @classmethod
    def from_bitmask(cls, mask: int, n: int, space: Space | None = None) -> "BoolFn":
        raw = mask.to_bytes((1 << n) // 8 + 1, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return cls(bits[: 1 << n], space)


class WalshSpectrum:
    """Exact integer Walsh coefficients W_f(b) over a Space."""

    __slots__ = ("n", "values", "space")

    def __init__(self, values: np.ndarray, space: Space):
        self.values = values
        self.n = space.n
        self.space = space

    def __getitem__(self, b: int) -> int:
        return int(self.values[b])

    def parseval_holds(self) -> bool:
        return int((self.values.astype(np.int64) ** 2).sum()) == 1 << (2 * self.n)


def _fwht_inplace(a: np.ndarray) -> np.ndarray:
    """Butterfly transform: a[b] <- sum_x (-1)^(b.x) a[x], in place."""
    h = 1
    n = a.size
    while h < n:
        b = a.reshape(-1, 2 * h)
        x = b[:, :h].copy()
        y = b[:, h:]
        b[:, :h] = x + y
        b[:, h:] = x - y
        h *= 2
    return a


def walsh_transform(f: BoolFn) -> WalshSpectrum:
    """Exact spectrum W_f(b) = sum_x (-1)^(f(x) + <b,x>)."""
    signs = 1 - 2 * f.table.astype(np.int64)
    w = _fwht_inplace(signs)
    if not f.space.is_plain:
        w = w[f.space.perm()]
    w.setflags(write=False)
    return WalshSpectrum(w, f.space)


def _abs_spectrum(f: BoolFn) -> np.ndarray:
    # pairing-independent |W| multiset; skips the index permutation
    signs = 1 - 2 * f.table.astype(np.int64)
    return np.abs(_fwht_inplace(signs))


def is_bent(f: BoolFn) -> bool:
    if f.n % 2:
        return False
    half = 1 << (f.n // 2)
    return bool((_abs_spectrum(f) == half).all())


def plateaued_order(f: BoolFn) -> int | None:
    """s such that |W_f| takes values in {0, 2^((n+s)/2)}, else None."""
    absw = _abs_spectrum(f)
    peak = int(absw.max())
    if peak & (peak - 1):
        return None
    if not bool(((absw == 0) | (absw == peak)).all()):
        return None
    return 2 * (peak.bit_length() - 1) - f.n


def is_semibent(f: BoolFn) -> bool:
    s = plateaued_order(f)
    return s == 1 if f.n % 2 else s == 2


def is_balanced(f: BoolFn) -> bool:
    return f.weight() == 1 << (f.n - 1)


def ext_walsh_spectrum(f: BoolFn) -> Counter:
    """Multiset {|W_f(b)|} as a Counter; invariant under EA maps."""
    vals, counts = np.unique(_abs_spectrum(f), return_counts=True)
    return Counter(dict(zip((int(v) for v in vals), (int(c) for c in counts))))


def dual(f: BoolFn) -> BoolFn:
    """The bent function f* with W_f(b) = 2^(n/2) (-1)^(f*(b))."""
    if f.n % 2:
        raise DomainError("odd dimension admits no bent function")
    half = 1 << (f.n // 2)
    w = walsh_transform(f).values
    if not bool((np.abs(w) == half).all()):
        raise DomainError("dual is defined only for bent functions")
    return BoolFn((w == -half).astype(np.uint8), f.space)


def anf(f: BoolFn) -> np.ndarray:
    """Moebius transform: bit u is the coefficient of prod_{i in u} x_i."""
    a = f.table.copy()
    h = 1
    while h < a.size:
        b = a.reshape(-1, 2 * h)
        b[:, h:] ^= b[:, :h]
        h *= 2
    return a


def anf_degree(f: BoolFn) -> int:
    coeffs = np.flatnonzero(anf(f))
    if coeffs.size == 0:
        return 0
    return int(np.bitwise_count(coeffs.astype(np.uint64)).max())


# -- file formats -------------------------------------------------------------

def table_to_hex(f: BoolFn) -> str:
    """2^n bits, 4 per char: bit i = bit (i mod 4) of digit i//4."""
    bits = f.table
    if bits.size % 4:
        bits = np.concatenate([bits, np.zeros(4 - bits.size % 4, dtype=np.uint8)])
    digits = bits.reshape(-1, 4) @ np.array([1, 2, 4, 8], dtype=np.uint8)
    return "".join(_HEX[d] for d in digits)


def save_table(f: BoolFn, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"n={f.n}\n")
        fh.write(table_to_hex(f) + "\n")


def _parse_header(line: str, lineno: int, *keys: str) -> list[int]:
    parts = line.split()
    if len(parts) != len(keys):
        raise ParseError(f"expected header '{' '.join(k + '=<int>' for k in keys)}'", lineno)
    out = []
    for part, key in zip(parts, keys):
        name, _, val = part.partition("=")
        if name != key or not val:
            raise ParseError(f"expected '{key}=<int>', got '{part}'", lineno)
        try:
            out.append(int(val))
        except ValueError:
            raise ParseError(f"'{val}' is not an integer", lineno) from None
    return out


def hex_to_table(text: str, n: int, lineno: int = 2) -> np.ndarray:
    text = text.strip().lower()
    want = max(1, (1 << n) // 4)
    if len(text) != want:
        raise ParseError(f"expected {want} hex digits for n={n}, got {len(text)}", lineno)
    try:
        vals = np.array([_HEX.index(c) for c in text], dtype=np.uint8)
    except ValueError:
        raise ParseError("non-hex digit in table", lineno) from None
    bits = (vals[:, None] >> np.arange(4)) & 1
    return bits.reshape(-1)[: 1 << n].astype(np.uint8)


def load_table(path: str) -> BoolFn:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    (n,) = _parse_header(lines[0], 1, "n")
    if not 1 <= n <= 26:
        raise ParseError(f"dimension n={n} out of range", 1)
    if len(lines) < 2:
        raise ParseError("missing table line", 2)
    return BoolFn(hex_to_table(lines[1], n))


def save_spectrum(spec: WalshSpectrum, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("b,W\n")
        for b, w in enumerate(spec.values):
            fh.write(f"{b},{int(w)}\n")
