"""Linear algebra over GF(2) with vectors stored as Python ints.

A vector in GF(2)^n is an int whose bit i is coordinate i.  A matrix is
a list of such row ints.  Everything here is exact integer arithmetic;
no numpy, so the routines work for any n.
"""

from __future__ import annotations


def rref(rows: list[int]) -> list[int]:
    """Reduced row echelon form; returns the nonzero rows, pivot-sorted.

    Rows are reduced against the highest set bit.  The output is a
    canonical basis of the row space: same span always yields the same
    list, with rows in decreasing order of leading bit.
    """
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    # back-substitute so each pivot column appears in exactly one row
    out = list(basis)
    for i in range(len(out)):
        lead = 1 << (out[i].bit_length() - 1)
        for j in range(i):
            if out[j] & lead:
                out[j] ^= out[i]
    return out


def rank(rows: list[int]) -> int:
    return len(rref(rows))


def in_span(basis: list[int], v: int) -> bool:
    """Is v in the span of basis?  basis need not be reduced."""
    for b in sorted(basis, reverse=True):
        v = min(v, v ^ b)
    return v == 0


def span(basis: list[int]) -> list[int]:
    """All 2^k elements spanned by basis, in ascending order.

    With a reduced basis ordered smallest-pivot-first, the doubling
    construction emits the span as an increasing sequence.
    """
    red = rref(basis)
    red.reverse()
    out = [0]
    for b in red:
        out += [x ^ b for x in out]
    return out


def nullspace(rows: list[int], width: int) -> list[int]:
    """Basis of {v : parity(row & v) = 0 for all rows}.

    Each row acts as a linear functional on GF(2)^width via the dot
    product parity(row & v).
    """
    red = rref(rows)
    pivots = [r.bit_length() - 1 for r in red]
    pivot_set = set(pivots)
    free = [i for i in range(width) if i not in pivot_set]
    out = []
    for f in free:
        v = 1 << f
        # rows are pivot-descending; fill pivots from the bottom up so
        # each row sees its final lower coordinates
        for r, p in zip(reversed(red), reversed(pivots)):
            if (r & v).bit_count() & 1:
                v ^= 1 << p
    # note: pivot of row r is its highest bit, so xoring it cannot
    # disturb rows already processed (their pivots are even higher)
        out.append(v)
    return out


def solve(rows: list[int], rhs: list[int], width: int) -> int | None:
    """One solution v of parity(row_i & v) = rhs_i, or None.

    Augment each row with the rhs bit in bit position `width`, reduce,
    then read the solution off the pivots.
    """
    aug = [r | ((b & 1) << width) for r, b in zip(rows, rhs)]
    red = rref(aug)
    mask = (1 << width) - 1
    v = 0
    for r in sorted(red, key=lambda r: (r & mask).bit_length()):
        coeffs = r & mask
        b = r >> width
        if coeffs == 0:
            if b:
                return None
            continue
        if ((coeffs & v).bit_count() & 1) != b:
            v ^= 1 << (coeffs.bit_length() - 1)
    for r, b in zip(rows, rhs):
        if ((r & v).bit_count() & 1) != (b & 1):
            return None
    return v


def is_subspace(elems) -> bool:
    """Does the element set form a linear subspace (0 in, XOR-closed)?"""
    s = set(elems)
    if 0 not in s:
        return False
    lst = sorted(s)
    for i, a in enumerate(lst):
        for b in lst[i + 1:]:
            if a ^ b not in s:
                return False
    return True


def complete_basis(basis: list[int], width: int) -> list[int]:
    """Vectors extending an independent set to a basis of GF(2)^width.

    Chosen greedily from unit vectors; returns only the added ones.
    """
    red = rref(basis)
    added: list[int] = []
    for i in range(width):
        v = 1 << i
        if not in_span(red + added, v):
            added.append(v)
        if len(red) + len(added) == width:
            break
    return added
