"""Builders for the bent-function families and their side conditions.

Conventions shared by every builder here:

* Two-argument functions on F_{2^m} x F_{2^m} use index x + 2^m * y.
* Four-argument functions on F_{2^m}^2 x F_{2^k}^2 use index
  x1 + 2^m x2 + 2^(2m) y + 2^(2m+k) z.
* "x^(-e)" is evaluated as x^((-e) mod (2^m - 1)) with 0 mapped to 0,
  so the inverse-free representation of spread functions needs no
  special casing; the indicator 1 - x^(2^m - 1) is 1 exactly at x = 0.
* Functions P on the subfield S_k are tables keyed by the elements of
  S_k in ascending bitmask order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2vec
from .boolfn import BoolFn, Space, dual, is_bent, plateaued_order, walsh_transform
from .errors import DomainError, ParameterError, ParseError
from .gf2 import FieldCtx, GpsParams, make_field
from .vectorial import OutPairing, VecFn


class PermTable:
    """A permutation of F_{2^m} as an explicit table."""

    def __init__(self, m: int, table):
        table = [int(v) for v in table]
        if len(table) != 1 << m:
            raise ParameterError(f"permutation table needs 2^{m} entries, got {len(table)}")
        if sorted(table) != list(range(1 << m)):
            raise ParameterError("table is not a bijection")
        self.m = m
        self.table = table

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __len__(self):
        return len(self.table)

    @classmethod
    def identity(cls, m: int) -> "PermTable":
        return cls(m, range(1 << m))

    @classmethod
    def from_exponent(cls, ctx: FieldCtx, e: int) -> "PermTable":
        """x -> x^e; a permutation iff gcd(e, 2^m - 1) = 1."""
        import math

        if math.gcd(e, ctx.order) != 1:
            raise ParameterError(
                f"x^{e} is not a permutation: gcd({e}, 2^{ctx.m}-1) = {math.gcd(e, ctx.order)}"
            )
        return cls(ctx.m, [ctx.pow(x, e) for x in range(ctx.size)])

    @classmethod
    def inverse_map(cls, ctx: FieldCtx) -> "PermTable":
        """x -> x^(2^m - 2), i.e. 1/x with 0 -> 0."""
        return cls.from_exponent(ctx, ctx.size - 2)

    @classmethod
    def gold(cls, ctx: FieldCtx, k: int) -> "PermTable":
        """x -> x^(2^k + 1); a permutation iff gcd(k, m) = 1 and m odd."""
        return cls.from_exponent(ctx, (1 << k) + 1)


class SubfieldFn:
    """A table over the subfield S_k of GF(2^m), ascending key order.

    Values are bits for balanced-function form, or S_k elements for
    permutation form.
    """

    def __init__(self, ctx: FieldCtx, k: int, values):
        elems = ctx.subfield(k)
        values = [int(v) for v in values]
        if len(values) != len(elems):
            raise ParameterError(f"subfield table needs 2^{k} entries, got {len(values)}")
        self.ctx = ctx
        self.m = ctx.m
        self.k = k
        self.values = values
        self._elems = elems
        self._index = {z: i for i, z in enumerate(elems)}

    def at(self, z: int) -> int:
        """Value at a subfield element (not at a table index)."""
        try:
            return self.values[self._index[z]]
        except KeyError:
            raise DomainError(f"{z:#x} is not in S_{self.k}") from None

    def require_balanced(self) -> "SubfieldFn":
        if any(v not in (0, 1) for v in self.values):
            raise ParameterError("balanced-form table must contain bits")
        ones = sum(self.values)
        if ones != 1 << (self.k - 1):
            raise ParameterError(
                f"P is not balanced: {ones} ones out of {len(self.values)}"
            )
        return self

    def require_permutation(self) -> "SubfieldFn":
        if sorted(self.values) != self._elems:
            raise ParameterError("permutation-form table must be a bijection on S_k")
        return self

    @classmethod
    def trace_form(cls, ctx: FieldCtx, k: int) -> "SubfieldFn":
        """The balanced function z -> Tr_1^k(z) on S_k."""
        return cls(ctx, k, [ctx.subfield_trace(z, k) for z in ctx.subfield(k)])

    @classmethod
    def identity_perm(cls, ctx: FieldCtx, k: int) -> "SubfieldFn":
        return cls(ctx, k, ctx.subfield(k))


def _as_bit_table(g, size: int):
    if g is None:
        return [0] * size
    if isinstance(g, BoolFn):
        g = g.table
    table = [int(v) & 1 for v in g]
    if len(table) != size:
        raise ParameterError(f"expected {size} values, got {len(table)}")
    return table


def mm(ctx: FieldCtx, pi: PermTable, g=None) -> BoolFn:
    """Tr(x * pi(y)) + g(y) on F_{2^m} x F_{2^m}."""
    if pi.m != ctx.m:
        raise ParameterError("permutation degree does not match the field")
    gt = _as_bit_table(g, ctx.size)
    xs = np.arange(ctx.size, dtype=np.uint64)
    blocks = []
    for y in range(ctx.size):
        gmask = np.uint64(ctx.dualmask(pi(y)))
        blocks.append(((np.bitwise_count(xs & gmask) & 1) ^ gt[y]).astype(np.uint8))
    return BoolFn(np.concatenate(blocks), Space([ctx, ctx]))


def gmm_general(family) -> BoolFn:
    """Concatenate 2^k same-order plateaued functions with disjoint
    Walsh supports into a bent function on m + k variables."""
    family = list(family)
    count = len(family)
    if count < 2 or count & (count - 1):
        raise ParameterError(f"family size must be a power of two >= 2, got {count}")
    k = count.bit_length() - 1
    n = family[0].n
    if any(f.n != n for f in family):
        raise ParameterError("family members must share one dimension")
    owner = np.full(family[0].table.size, -1, dtype=np.int64)
    for z, f in enumerate(family):
        s = plateaued_order(f)
        if s != k:
            raise ParameterError(f"family member z={z} is not {k}-plateaued (order {s})")
        supp = walsh_transform(f).values != 0
        clash = (owner >= 0) & supp
        if clash.any():
            other = int(owner[np.argmax(clash)])
            raise ParameterError(f"Walsh supports of z={other} and z={z} overlap")
        owner[supp] = z
    space = Space(list(family[0].space.factors) + [k])
    return BoolFn(np.concatenate([f.table for f in family]), space)


def _check_gmm_family(ctx: FieldCtx, k: int, family) -> list[BoolFn]:
    if ctx.m != k:
        raise ParameterError(f"field degree {ctx.m} does not match k={k}")
    family = list(family)
    if len(family) != 1 << k:
        raise ParameterError(f"family needs 2^{k} members, got {len(family)}")
    sig = family[0].space.signature
    for z, f in enumerate(family):
        if f.space.signature != sig:
            raise ParameterError(f"family member z={z} lives on a different space")
        if not is_bent(f):
            raise ParameterError(f"family member z={z} is not bent")
    return family


def gmm(ctx: FieldCtx, k: int, family) -> BoolFn:
    """f(x, y, z) = f_z(x) + Tr(yz) over x in V_n, y, z in F_{2^k}."""
    family = _check_gmm_family(ctx, k, family)
    size = 1 << k
    blocks = []
    for z in range(size):
        for y in range(size):
            blocks.append(family[z].table ^ ctx.trace(ctx.mul(y, z)))
    space = Space(list(family[0].space.factors) + [ctx, ctx])
    return BoolFn(np.concatenate(blocks), space)


def gmm_dual(ctx: FieldCtx, k: int, family) -> BoolFn:
    """Closed-form dual of gmm: f*(x, y, z) = (f_y)*(x) + Tr(yz)."""
    family = _check_gmm_family(ctx, k, family)
    duals = [dual(f) for f in family]
    size = 1 << k
    blocks = []
    for z in range(size):
        for y in range(size):
            blocks.append(duals[y].table ^ ctx.trace(ctx.mul(y, z)))
    space = Space(list(family[0].space.factors) + [ctx, ctx])
    return BoolFn(np.concatenate(blocks), space)


def psap(ctx: FieldCtx, P) -> BoolFn:
    """P(y * x^(2^m - 2)) on F_{2^m} x F_{2^m} for balanced P."""
    if not isinstance(P, SubfieldFn):
        P = SubfieldFn(ctx, ctx.m, P)
    if P.k != ctx.m:
        raise ParameterError("psap needs P on the whole field (k = m)")
    P.require_balanced()
    size = ctx.size
    table = np.zeros(size * size, dtype=np.uint8)
    for y in range(size):
        for x in range(size):
            arg = ctx.mul(y, ctx.pow(x, size - 2))
            table[x + (y << ctx.m)] = P.at(arg)
    return BoolFn(table, Space([ctx, ctx]))


def _check_gps(ctx: FieldCtx, params: GpsParams) -> None:
    if params.m != ctx.m:
        raise ParameterError(
            f"params are for GF(2^{params.m}), the context is GF(2^{ctx.m})"
        )


def gpsap(ctx: FieldCtx, params: GpsParams, P: SubfieldFn, c0: int = 0,
          orientation: str = "f") -> BoolFn:
    """Spread bent function over the generalized Desarguesian partition.

    f-orientation: P(Tr_k^m(y x^(-e))) + c0 (1 - x^(2^m-1)),
    g-orientation: P(Tr_k^m(x y^(-eta))) + c0 (1 - y^(2^m-1)).
    """
    _check_gps(ctx, params)
    if P.k != params.k:
        raise ParameterError(f"P is on S_{P.k}, params use k={params.k}")
    P.require_balanced()
    if c0 not in (0, 1):
        raise ParameterError("c0 must be a bit")
    if orientation not in ("f", "g"):
        raise ParameterError(f"orientation must be 'f' or 'g', got {orientation!r}")
    m, k = params.m, params.k
    size = ctx.size
    exp = params.e if orientation == "f" else params.eta
    neg = (-exp) % ctx.order if ctx.order > 1 else 1
    table = np.zeros(size * size, dtype=np.uint8)
    for outer in range(size):
        pw = ctx.pow(outer, neg)
        for inner in range(size):
            val = P.at(ctx.trace_rel(ctx.mul(inner, pw), k))
            if outer == 0:
                val ^= c0
            if orientation == "f":
                idx = outer + (inner << m)  # outer = x, inner = y
            else:
                idx = inner + (outer << m)  # outer = y, inner = x
            table[idx] = val
    return BoolFn(table, Space([ctx, ctx]))


def _factors_through_subfield_trace(ctx: FieldCtx, k: int, Q: PermTable) -> bool:
    """Is z -> Tr(Q(z)) constant on every fiber of Tr_k^m?"""
    fibers: dict[int, int] = {}
    for z in range(ctx.size):
        gamma = ctx.trace_rel(z, k)
        bit = ctx.trace(Q(z))
        if fibers.setdefault(gamma, bit) != bit:
            return False
    return True


def gpsap_trace_form(ctx: FieldCtx, params: GpsParams, Q: PermTable) -> BoolFn:
    """f(x, y) = Tr(Q(x y^(-eta))) for a permutation Q with Q(0) = 0.

    Bentness requires that Tr(Q(.)) be constant on the fibers of
    Tr_k^m, i.e. that it equal P(Tr_k^m(.)) for some (automatically
    balanced) P; that is checked exhaustively and violations are
    rejected rather than silently producing a non-bent table.
    """
    _check_gps(ctx, params)
    if Q.m != ctx.m:
        raise ParameterError("Q degree does not match the field")
    if Q(0) != 0:
        raise ParameterError("Q must fix 0")
    if not _factors_through_subfield_trace(ctx, params.k, Q):
        raise ParameterError(
            f"Tr(Q(.)) is not constant on the fibers of Tr_{params.k}^{params.m}; "
            "the spread function would not be bent"
        )
    size = ctx.size
    neg_eta = (-params.eta) % ctx.order if ctx.order > 1 else 1
    table = np.zeros(size * size, dtype=np.uint8)
    for y in range(size):
        pw = ctx.pow(y, neg_eta)
        base = y << ctx.m
        for x in range(size):
            table[x + base] = ctx.trace(Q(ctx.mul(x, pw)))
    return BoolFn(table, Space([ctx, ctx]))


def gpsap_dual_formula(ctx: FieldCtx, params: GpsParams, Q: PermTable) -> BoolFn:
    """Closed-form dual of gpsap_trace_form:
    f*(x, y) = Tr(Q(y~ x~^(-e))) with t~ = t^(2^(m - ell))."""
    _check_gps(ctx, params)
    if Q.m != ctx.m:
        raise ParameterError("Q degree does not match the field")
    frob = 1 << (params.m - params.ell)
    neg_e = (-params.e) % ctx.order if ctx.order > 1 else 1
    size = ctx.size
    table = np.zeros(size * size, dtype=np.uint8)
    for y in range(size):
        yt = ctx.pow(y, frob)
        base = y << ctx.m
        for x in range(size):
            xt = ctx.pow(x, frob)
            table[x + base] = ctx.trace(Q(ctx.mul(yt, ctx.pow(xt, neg_e))))
    return BoolFn(table, Space([ctx, ctx]))


def gpsap_vectorial(ctx: FieldCtx, params: GpsParams, P: SubfieldFn,
                    c0: int = 0) -> VecFn:
    """F(x, y) = P(Tr_k^m(y x^(-e))) + c0 (1 - x^(2^m-1)), valued in S_k.

    Output entries are subfield indices (ascending-order encoding);
    the component pairing is the subfield trace Tr_1^k.
    """
    _check_gps(ctx, params)
    if P.k != params.k:
        raise ParameterError(f"P is on S_{P.k}, params use k={params.k}")
    P.require_permutation()
    k = params.k
    elems = ctx.subfield(k)
    if c0 not in elems:
        raise DomainError(f"c0 = {c0:#x} is not in S_{k}")
    index = {z: i for i, z in enumerate(elems)}
    size = ctx.size
    neg_e = (-params.e) % ctx.order if ctx.order > 1 else 1
    table = np.zeros(size * size, dtype=np.int64)
    for x in range(size):
        pw = ctx.pow(x, neg_e)
        for y in range(size):
            val = P.at(ctx.trace_rel(ctx.mul(y, pw), k))
            if x == 0:
                val ^= c0
            table[x + (y << ctx.m)] = index[val]
    return VecFn(table, k, Space([ctx, ctx]), OutPairing.subfield_trace(ctx, k))


@dataclass(frozen=True)
class SpreadSets:
    """The two spread partitions, points encoded as x + 2^m y."""

    U: frozenset
    A: dict
    V: frozenset
    B: dict


def spread_sets(ctx: FieldCtx, params: GpsParams) -> SpreadSets:
    """The partitions {U, A(gamma)} and {V, B(gamma)} of F_{2^m}^2."""
    _check_gps(ctx, params)
    m, k = params.m, params.k
    size = ctx.size
    U = frozenset(y << m for y in range(size))
    V = frozenset(x for x in range(size))
    A: dict[int, set] = {g: set() for g in ctx.subfield(k)}
    B: dict[int, set] = {g: set() for g in ctx.subfield(k)}
    for s in range(size):
        gamma = ctx.trace_rel(s, k)
        for x in range(1, size):
            A[gamma].add(x + (ctx.mul(s, ctx.pow(x, params.e)) << m))
            B[gamma].add(ctx.mul(s, ctx.pow(x, params.eta)) + (x << m))
    return SpreadSets(U, {g: frozenset(v) for g, v in A.items()},
                      V, {g: frozenset(v) for g, v in B.items()})


@dataclass(frozen=True)
class PropertyPResult:
    holds: bool
    counterexample: tuple[int, int, int, int] | None = None


def check_property_P(ctx: FieldCtx, pi: PermTable) -> PropertyPResult:
    """Exhaustively decide the unique-M-subspace property of
    h(x1, x2) = Tr(x1 pi(x2)).

    The quadruple condition splits per shift t = derivative direction:
    (i) the second derivative D_a D_b pi must vanish for no distinct
    nonzero pair, i.e. the XOR-period group of D_t pi must be exactly
    {0, t}; (ii) the image of D_t pi must span the field, else some
    nonzero c has Tr(c D_t pi) = 0 and a quadruple with a2 = 0 works.
    Scans t ascending and reports the first violation found.
    """
    if pi.m != ctx.m:
        raise ParameterError("permutation degree does not match the field")
    m = ctx.m
    size = ctx.size
    tbl = np.array(pi.table, dtype=np.int64)
    idx = np.arange(size, dtype=np.int64)
    for t in range(1, size):
        d = tbl ^ tbl[idx ^ t]
        # (i) periods of the vectorial derivative: intersect the period
        # groups of all m component functions
        rows: list[int] = []
        for j in range(m):
            comp = BoolFn(((d >> j) & 1).astype(np.uint8))
            w = walsh_transform(comp).values
            for v in map(int, np.flatnonzero(w)):
                for r in rows:
                    v = min(v, v ^ r)
                if v:
                    rows.append(v)
            if len(rows) == m:
                break
        periods = gf2vec.span(gf2vec.nullspace(rows, m))
        if len(periods) > 2:
            b2 = min(p for p in periods if p not in (0, t))
            return PropertyPResult(False, (0, t, 0, b2))
        # (ii) the image of D_t pi must span the whole field
        img_basis: list[int] = []
        for v in map(int, d):
            for r in img_basis:
                v = min(v, v ^ r)
            if v:
                img_basis.append(v)
                if len(img_basis) == m:
                    break
        if len(img_basis) < m:
            duals = [ctx.dualmask(b) for b in img_basis]
            ortho = gf2vec.span(gf2vec.nullspace(duals, m))
            c = min(v for v in ortho if v)
            return PropertyPResult(False, (c, 0, 0, t))
    return PropertyPResult(True, None)


def _swap_args_table(table: np.ndarray, m: int) -> np.ndarray:
    return np.ascontiguousarray(table.reshape(1 << m, 1 << m).T).reshape(-1)


def build_cor_ex(ctx: FieldCtx, m: int, k: int, variant: str = "inverse",
                 gold_k: int | None = None) -> BoolFn:
    """The two explicit families outside the completed MM class.

    f(x1, x2, y, z) = f_z(x1, x2) + Tr_1^k(yz) on 2m + 2k variables,
    where f_z is Tr(x1 pi(x2)) or its argument swap according to
    Tr_1^k(z), and pi is the inverse map (variant "inverse") or a Gold
    power map x^(2^k'+1) (variant "gold").
    """
    import math

    if ctx.m != m:
        raise ParameterError(f"context is GF(2^{ctx.m}), requested m={m}")
    if m <= k + 2:
        raise ParameterError(f"need m > k+2, got m={m}, k={k}")
    if variant == "inverse":
        if m < 4:
            raise ParameterError(f"inverse variant needs m >= 4, got m={m}")
        pi = PermTable.inverse_map(ctx)
    elif variant == "gold":
        kp = k if gold_k is None else gold_k
        if m % 2 == 0:
            raise ParameterError(f"gold variant needs odd m, got m={m}")
        if math.gcd(kp, m) != 1:
            raise ParameterError(f"gold variant needs gcd(k', m) = 1, got k'={kp}, m={m}")
        pi = PermTable.gold(ctx, kp)
    else:
        raise ParameterError(f"unknown variant {variant!r}")
    h = mm(ctx, pi)
    h_swapped = BoolFn(_swap_args_table(h.table, m), h.space)
    ctx_k = make_field(k)
    family = [h if ctx_k.trace(z) == 0 else h_swapped for z in range(1 << k)]
    return gmm(ctx_k, k, family)


def trace_sum_nonconstant(ctx: FieldCtx, c: int, d: int) -> bool:
    """Does x -> Tr(d (1/x + 1/(x+c))) take both values off {0, c}?"""
    if c == 0 or d == 0:
        raise DomainError("c and d must be nonzero")
    seen = set()
    for x in range(ctx.size):
        if x in (0, c):
            continue
        seen.add(ctx.trace(ctx.mul(d, ctx.inv(x) ^ ctx.inv(x ^ c))))
        if len(seen) == 2:
            return True
    return False


def g_lambda(ctx: FieldCtx, params: GpsParams, Q: PermTable, lam: int) -> BoolFn:
    """g_lam(x) = Tr(Q((1+lam) x^(-e)) + Q(x^(-e)) + Q(lam x^(-e)))."""
    _check_gps(ctx, params)
    if lam in (0, 1):
        raise DomainError("lambda must lie outside F_2")
    neg_e = (-params.e) % ctx.order if ctx.order > 1 else 1
    table = np.zeros(ctx.size, dtype=np.uint8)
    for x in range(ctx.size):
        xe = ctx.pow(x, neg_e)
        acc = Q(ctx.mul(1 ^ lam, xe)) ^ Q(xe) ^ Q(ctx.mul(lam, xe))
        table[x] = ctx.trace(acc)
    return BoolFn(table, Space([ctx]))


def glambda_nonconstant(ctx: FieldCtx, params: GpsParams, Q: PermTable) -> bool:
    """Is g_lambda nonconstant for every lambda outside F_2?"""
    if Q(0) != 0:
        raise ParameterError("Q must fix 0")
    for lam in range(2, ctx.size):
        if g_lambda(ctx, params, Q, lam).is_constant():
            return False
    return True


# -- permutation / subfield-table files ----------------------------------------

def save_perm(pi: PermTable, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"m={pi.m}\n")
        for v in pi.table:
            fh.write(f"{v:x}\n")


def load_perm(path: str) -> PermTable:
    from .boolfn import _parse_header

    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    (m,) = _parse_header(lines[0], 1, "m")
    vals = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            vals.append(int(line.strip(), 16))
        except ValueError:
            raise ParseError(f"'{line.strip()}' is not a hex value", i) from None
    try:
        return PermTable(m, vals)
    except ParameterError as exc:
        raise ParseError(str(exc)) from None


def save_subfield_fn(P: SubfieldFn, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"m={P.m} k={P.k}\n")
        for v in P.values:
            fh.write(f"{v:x}\n")


def load_subfield_fn(ctx: FieldCtx, path: str) -> SubfieldFn:
    from .boolfn import _parse_header

    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    m, k = _parse_header(lines[0], 1, "m", "k")
    if m != ctx.m:
        raise ParseError(f"file is for GF(2^{m}), context is GF(2^{ctx.m})", 1)
    vals = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            vals.append(int(line.strip(), 16))
        except ValueError:
            raise ParseError(f"'{line.strip()}' is not a hex value", i) from None
    try:
        return SubfieldFn(ctx, k, vals)
    except ParameterError as exc:
        raise ParseError(str(exc)) from None
