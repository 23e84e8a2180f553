"""Derivatives, M-subspaces, linearity index, and EA transforms.

The M-subspace search works on the compatibility relation
compat(a, b) <=> D_a D_b f == 0.  Three structural facts keep it fast:

* compat(a, .) is a linear subspace: D_a D_b f == 0 iff b is an
  XOR-period of D_a f, and the periods of g form the orthogonal
  complement of the span of supp(W_g).  So one FWHT per vector a
  yields the whole row of the relation.
* D_a D_b f depends only on the plane {0, a, b, a+b}, so a subspace is
  an M-subspace iff compat holds for all pairs inside it, and when
  extending a known M-subspace S by v it is enough to check that every
  element of v + S is compatible with every element of S.
* Each subspace has exactly one generating chain whose vectors are
  added in ascending order with each new vector minimal in its coset
  (equivalently: the greedy ascending basis).  Enumerating only such
  chains visits every M-subspace exactly once, no dedup needed.

Rows are computed lazily and cached bit-packed, so a capped search on
14 variables stays within tens of megabytes.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field

import numpy as np

from . import gf2vec
from .boolfn import BoolFn, _fwht_inplace, is_bent
from .errors import DomainError, ParameterError, ParseError


def derivative(f: BoolFn, a: int) -> BoolFn:
    """D_a f(x) = f(x + a) + f(x)."""
    return f.shift(a) ^ f


def second_derivative(f: BoolFn, a: int, b: int) -> BoolFn:
    """D_a D_b f(x) = f(x) + f(x+a) + f(x+b) + f(x+a+b)."""
    t = f.table
    idx = np.arange(t.size, dtype=np.int64)
    return BoolFn(t ^ t[idx ^ a] ^ t[idx ^ b] ^ t[idx ^ (a ^ b)], f.space)


@dataclass(frozen=True)
class Subspace:
    """A subspace of V_n given by an independent basis."""

    n: int
    basis: tuple[int, ...]

    def __post_init__(self):
        basis = tuple(int(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if any(not 0 < b < 1 << self.n for b in basis):
            raise DomainError(f"basis vectors must be nonzero {self.n}-bit values")
        if gf2vec.rank(list(basis)) != len(basis):
            raise DomainError("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def span(self) -> list[int]:
        return gf2vec.span(list(self.basis))

    def canonical(self) -> "Subspace":
        """Same subspace with the reduced-echelon basis, pivots descending."""
        return Subspace(self.n, gf2vec.rref(list(self.basis)))

    def __contains__(self, v: int) -> bool:
        return gf2vec.in_span(list(self.basis), v)

    def same_span(self, other: "Subspace") -> bool:
        return self.n == other.n and self.canonical().basis == other.canonical().basis


def is_M_subspace(f: BoolFn, U: Subspace) -> bool:
    """Do all second derivatives over U vanish?  Checks every span pair."""
    if U.n != f.n:
        raise DomainError(f"subspace lives on {U.n} variables, function on {f.n}")
    elems = [v for v in U.span() if v]
    t = f.table
    idx = np.arange(t.size, dtype=np.int64)
    shifted = {v: t[idx ^ v] for v in elems}
    for i, a in enumerate(elems):
        da = t ^ shifted[a]
        for b in elems[i + 1:]:
            if (da != (shifted[b] ^ shifted[a ^ b])).any():
                return False
    return True


class _CompatRows:
    """Lazy bit-packed rows of the compatibility relation of f."""

    def __init__(self, f: BoolFn):
        self.n = f.n
        self.size = f.table.size
        self.table = f.table
        self._idx = np.arange(self.size, dtype=np.int64)
        self._cache: dict[int, np.ndarray] = {}
        self._ones = np.ones(self.size, dtype=np.uint8)

    def row(self, a: int) -> np.ndarray:
        """Unpacked 0/1 mask over b of compat(a, b)."""
        if a == 0:
            return self._ones
        packed = self._cache.get(a)
        if packed is None:
            packed = self._compute(a)
            self._cache[a] = packed
        return np.unpackbits(packed, bitorder="little")[: self.size]

    def _compute(self, a: int) -> np.ndarray:
        da = self.table ^ self.table[self._idx ^ a]
        w = _fwht_inplace(1 - 2 * da.astype(np.int64))
        supp = np.flatnonzero(w)
        # span of the Walsh support; periods are its orthogonal complement
        basis: list[int] = []
        for v in supp:
            v = int(v)
            for b in basis:
                v = min(v, v ^ b)
            if v:
                basis.append(v)
                basis.sort(reverse=True)
                if len(basis) == self.n:
                    break
        periods = gf2vec.nullspace(basis, self.n)
        elems = np.zeros(1, dtype=np.int64)
        for b in periods:
            elems = np.concatenate([elems, elems ^ b])
        mask = np.zeros(self.size, dtype=np.uint8)
        mask[elems] = 1
        return np.packbits(mask, bitorder="little")


@dataclass
class _SearchResult:
    best: int = 0
    found: list[tuple[int, ...]] = field(default_factory=list)
    done: bool = False


def _dfs(rows: _CompatRows, span: list[int], basis: list[int], pmask: np.ndarray,
         target: int | None, cap: int, find_all: bool, res: _SearchResult) -> None:
    d = len(basis)
    res.best = max(res.best, d)
    if target is not None and d == target:
        res.found.append(tuple(basis))
        if not find_all:
            res.done = True
        return
    if d >= cap:
        return
    need = 1 << (target if target is not None else res.best + 1)
    if int(pmask.sum()) < need:
        return
    span_max = span[-1] if len(span) > 1 else 0
    for v in map(int, np.flatnonzero(pmask)):
        if res.done:
            return
        if v <= span_max:
            continue
        if any(v > (v ^ s) for s in span if s):
            continue  # not the coset minimum; another chain owns this subspace
        shifted = [v ^ s for s in span]
        if not pmask[shifted].all():
            continue  # v + span leaves the compatible set: not an M-subspace
        new_pm = pmask
        for w in shifted:
            new_pm = new_pm & rows.row(w)
        new_span = sorted(span + shifted)
        _dfs(rows, new_span, basis + [v], new_pm, target, cap, find_all, res)


def _run_search(f: BoolFn, roots, target: int | None, cap: int,
                find_all: bool) -> _SearchResult:
    rows = _CompatRows(f)
    res = _SearchResult()
    ones = np.ones(f.table.size, dtype=np.uint8)
    for v1 in roots:
        if res.done:
            break
        if target is not None and not find_all and res.found:
            break
        pm = ones & rows.row(v1)
        _dfs(rows, sorted([0, v1]), [v1], pm, target, cap, find_all, res)
    return res


_FORK_ARGS: dict = {}


def _fork_worker(chunk) -> tuple[int, list[tuple[int, ...]]]:
    a = _FORK_ARGS
    out = _run_search(a["f"], chunk, a["target"], a["cap"], a["find_all"])
    return out.best, out.found


def _search(f: BoolFn, target: int | None, cap: int, find_all: bool,
            threads: int = 1) -> _SearchResult:
    roots = list(range(1, f.table.size))
    if threads <= 1 or len(roots) < 64:
        return _run_search(f, roots, target, cap, find_all)
    chunks = [roots[i::threads] for i in range(threads)]
    _FORK_ARGS.update(f=f, target=target, cap=cap, find_all=find_all)
    try:
        with multiprocessing.get_context("fork").Pool(threads) as pool:
            parts = pool.map(_fork_worker, chunks)
    finally:
        _FORK_ARGS.clear()
    res = _SearchResult()
    for best, found in parts:
        res.best = max(res.best, best)
        res.found.extend(found)
    if target is not None and not find_all and res.found:
        res.found = [min(res.found)]
    return res


def linearity_index(f: BoolFn, dim_cap: int | None = None, threads: int = 1) -> int:
    """Largest dimension of an M-subspace of f, up to dim_cap."""
    cap = f.n if dim_cap is None else min(dim_cap, f.n)
    if cap < 1:
        return 0
    return _search(f, None, cap, False, threads).best


def enumerate_M_subspaces(f: BoolFn, dim: int, threads: int = 1) -> list[Subspace]:
    """All M-subspaces of the given dimension, canonical bases, sorted."""
    if dim < 1:
        raise DomainError("dimension must be at least 1")
    if dim > f.n:
        return []
    res = _search(f, dim, dim, True, threads)
    canon = sorted({tuple(gf2vec.rref(list(b))) for b in res.found})
    return [Subspace(f.n, b) for b in canon]


def has_M_subspace(f: BoolFn, dim: int, threads: int = 1) -> bool:
    if dim < 1:
        return True
    if dim > f.n:
        return False
    return bool(_search(f, dim, dim, False, threads).found)


def in_MM_completed(f: BoolFn, threads: int = 1) -> bool:
    """Completed two-block class test: an (n/2)-dimensional M-subspace exists."""
    if not is_bent(f):
        raise DomainError("the completed-class test applies to bent functions")
    return has_M_subspace(f, f.n // 2, threads)


def ea_transform(f: BoolFn, L: list[int], a: int = 0, c: int = 0, b: int = 0) -> BoolFn:
    """g(x) = f(L(x) + a) + <c, x> + b for an invertible linear L.

    L is given by columns: L[j] is the image of the j-th unit vector.
    """
    if len(L) != f.n or gf2vec.rank(list(L)) != f.n:
        raise ParameterError("L must be an invertible n x n matrix over GF(2)")
    size = f.table.size
    img = np.zeros(size, dtype=np.int64)
    for j, col in enumerate(L):
        half = 1 << j
        img[half:2 * half] = img[:half] ^ int(col)
    idx = np.arange(size, dtype=np.int64)
    lin = (np.bitwise_count((idx & c).astype(np.uint64)) & 1).astype(np.uint8)
    return BoolFn(f.table[img ^ a] ^ lin ^ (b & 1), f.space)


def save_subspace(U: Subspace, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"n={U.n} dim={U.dim}\n")
        for v in U.basis:
            fh.write(f"{v:x}\n")


def load_subspace(path: str) -> Subspace:
    from .boolfn import _parse_header

    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    n, dim = _parse_header(lines[0], 1, "n", "dim")
    vecs = []
    for i, line in enumerate(lines[1:dim + 1], start=2):
        try:
            vecs.append(int(line.strip(), 16))
        except (ValueError, IndexError):
            raise ParseError("expected a hex basis vector", i) from None
    if len(vecs) != dim:
        raise ParseError(f"expected {dim} basis vectors, found {len(vecs)}", len(lines))
    try:
        return Subspace(n, vecs)
    except DomainError as exc:
        raise ParseError(str(exc), 1 + dim) from None
