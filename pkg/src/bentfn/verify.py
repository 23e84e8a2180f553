"""The verification battery behind `bentfn verify`.

Twelve numbered checks re-derive the structural claims about the
implemented families by exact exhaustive computation: bentness of every
builder output, the algebraic degree law, absence of large M-subspaces
for the two explicit out-of-class families, the unique-subspace
property of the inverse and power permutations, trace-sum
nonvanishing, closed-form duals against transform duals, the
decomposition trichotomy, the concatenation bentness rule, the
substitution duality, semibent planes of spread functions, spread
character sums, and a structural round-trip suite.

Every check is integer-exact with zero tolerance.  The fast level runs
everything except the 14-variable subspace search of check 3, which
`level="full"` enables.  Randomized trials draw from the documented
xorshift generator so a seed pins the whole suite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import gf2vec
from .boolfn import (
    BoolFn,
    anf_degree,
    dual,
    ext_walsh_spectrum,
    is_bent,
    walsh_transform,
)
from .construct import (
    PermTable,
    SubfieldFn,
    build_cor_ex,
    check_property_P,
    gmm,
    gmm_dual,
    gpsap,
    gpsap_dual_formula,
    gpsap_trace_form,
    mm,
    psap,
    spread_sets,
    trace_sum_nonconstant,
)
from .decomp import (
    classify_decomposition,
    concat4,
    concat_bent_check,
    check_ftof_equivalence,
    partition_bent,
    psffff,
    restrict_to_cosets,
    scan_decompositions,
)
from .derivative import ea_transform, has_M_subspace, linearity_index
from .gf2 import make_field, validate_gps_params
from .rng import XorShift64Star


@dataclass(frozen=True)
class CriterionResult:
    cid: int
    name: str
    passed: bool
    seconds: float
    detail: str


GPS_GRID = ((4, 2, 2), (6, 3, 11), (6, 2, 2), (4, 4, 1))

# Balanced table on the 8-element subfield of GF(2^6), ascending key
# order.  The subfield-trace table makes the (6,3,11) builds drop below
# the extremal degree at c0=0, so the corpus pins one of the 56 (of 70)
# balanced tables whose four build variants all reach degree 6.
P_633_BITS = (1, 1, 1, 0, 1, 0, 0, 0)


def grid_P(ctx, m: int, k: int, e: int) -> SubfieldFn:
    if (m, k, e) == (6, 3, 11):
        return SubfieldFn(ctx, k, P_633_BITS)
    return SubfieldFn.trace_form(ctx, k)


def _seeded_mm(n: int, rng: XorShift64Star) -> BoolFn:
    """A random bent function on n variables: random permutation and
    random affine part through the two-block construction."""
    m = n // 2
    ctx = make_field(m)
    perm = list(range(1 << m))
    rng.shuffle(perm)
    g = [rng.bits(1) for _ in range(1 << m)]
    return mm(ctx, PermTable(m, perm), g)


def _gmm_cases(seed: int):
    """Deterministic finite-field combiner inputs: for k in {1, 2} and
    member dimension n in {2, 4}, a family of 2^k seeded bent functions."""
    out = []
    for k in (1, 2):
        for n in (2, 4):
            rng = XorShift64Star(seed ^ (k << 8) ^ n)
            fam = [_seeded_mm(n, rng) for _ in range(1 << k)]
            out.append((k, n, fam))
    return out


def _grid_builds():
    """All gpsap grid outputs: (label, params, function)."""
    out = []
    for m, k, e in GPS_GRID:
        ctx = make_field(m)
        pr = validate_gps_params(m, k, e)
        P = grid_P(ctx, m, k, e)
        for ori in ("f", "g"):
            for c0 in (0, 1):
                out.append((f"gpsap({m},{k},{e}) {ori} c0={c0}", pr,
                            gpsap(ctx, pr, P, c0, ori)))
    return out


def _trace_form_cases():
    cases = []
    for m, k, e in ((4, 2, 2), (6, 3, 11)):
        ctx = make_field(m)
        pr = validate_gps_params(m, k, e)
        cases.append((f"trace-form({m},{k},{e}) Q=id", ctx, pr,
                      PermTable.identity(m)))
    for m, kp, e in ((3, 1, 1), (5, 2, 2)):
        # power maps x^(2^kp + 1) permute GF(2^m) here and compose with
        # the absolute trace, which trivially factors when k = m
        ctx = make_field(m)
        pr = validate_gps_params(m, m, e)
        cases.append((f"trace-form({m},{m},{e}) Q=x^{(1 << kp) + 1}", ctx, pr,
                      PermTable.gold(ctx, kp)))
    return cases


def _partition_assignment(ctx, k: int):
    odd = tuple(q for q in
                ((a, b, c, d) for a in (0, 1) for b in (0, 1)
                 for c in (0, 1) for d in (0, 1)) if sum(q) % 2 == 1)
    elems = ctx.subfield(k)
    return {g: odd[i % 8] for i, g in enumerate(elems)}


def corpus(seed: int = 0):
    """Every bent function asserted by check 1, with labels."""
    fns = []
    for m in (2, 3, 4, 5):
        ctx = make_field(m)
        fns.append((f"psap m={m}", psap(ctx, SubfieldFn.trace_form(ctx, m))))
    for label, _, f in _grid_builds():
        fns.append((label, f))
    for label, ctx, pr, Q in _trace_form_cases():
        fns.append((label, gpsap_trace_form(ctx, pr, Q)))
    for k, n, fam in _gmm_cases(seed):
        fns.append((f"gmm k={k} n={n}", gmm(make_field(k), k, fam)))
    fns.append(("cor-ex1 (4,1)", build_cor_ex(make_field(4), 4, 1, "inverse")))
    fns.append(("cor-ex2 (5,2)", build_cor_ex(make_field(5), 5, 2, "gold",
                                              gold_k=1)))
    for m in (3, 5):
        ctx = make_field(m)
        P = SubfieldFn.identity_perm(ctx, 1)
        fns.append((f"psffff ({m},1)", psffff(ctx, m, 1, P, 1, 1, 1)))
    for m, k, e in ((3, 3, 1), (6, 3, 11)):
        ctx = make_field(m)
        pr = validate_gps_params(m, k, e)
        fns.append((f"partition ({m},{k})",
                    partition_bent(ctx, pr, _partition_assignment(ctx, k))))
    return fns


# -- the twelve checks ----------------------------------------------------------


def _c01_bentness(level, threads, seed):
    fns = corpus(seed)
    bad = [label for label, f in fns if not is_bent(f)]
    if bad:
        return False, "not bent: " + "; ".join(bad)
    return True, f"{len(fns)} builder outputs, all bent"


def _c02_degree(level, threads, seed):
    bad = []
    count = 0
    for m in (2, 3, 4, 5):
        ctx = make_field(m)
        f = psap(ctx, SubfieldFn.trace_form(ctx, m))
        count += 1
        if anf_degree(f) != m:
            bad.append(f"psap m={m}: {anf_degree(f)}")
    for label, pr, f in _grid_builds():
        count += 1
        if anf_degree(f) != pr.m:
            bad.append(f"{label}: {anf_degree(f)}")
    if bad:
        return False, "degree != m for: " + "; ".join(bad)
    return True, f"{count} functions at the extremal degree"


def _c03_outside_mm(level, threads, seed):
    f = build_cor_ex(make_field(4), 4, 1, "inverse")
    found5 = has_M_subspace(f, 5, threads=threads)
    li = linearity_index(f, threads=threads)
    ok = (not found5) and li <= 4
    detail = f"(4,1) dim-10: dim-5 subspace {'found' if found5 else 'absent'}, index {li}"
    if level == "full":
        g = build_cor_ex(make_field(5), 5, 2, "gold", gold_k=1)
        found7 = has_M_subspace(g, 7, threads=threads)
        ok = ok and not found7
        detail += f"; (5,2) dim-14: dim-7 subspace {'found' if found7 else 'absent'}"
    return ok, detail


def _c04_property_P(level, threads, seed):
    checks = 0
    for m in range(4, 9):
        ctx = make_field(m)
        r = check_property_P(ctx, PermTable.inverse_map(ctx))
        checks += 1
        if not r.holds:
            return False, f"inverse map fails at m={m}: {r.counterexample}"
    for m, kp in ((3, 1), (5, 1), (5, 2), (7, 1), (7, 2), (7, 3)):
        ctx = make_field(m)
        r = check_property_P(ctx, PermTable.gold(ctx, kp))
        checks += 1
        if not r.holds:
            return False, f"power map m={m} k'={kp} fails: {r.counterexample}"
    ctx = make_field(3)
    r = check_property_P(ctx, PermTable.identity(3))
    checks += 1
    if r.holds or r.counterexample is None:
        return False, "identity map should fail with a counterexample"
    if not _quadruple_is_witness(ctx, PermTable.identity(3), r.counterexample):
        return False, f"returned counterexample {r.counterexample} is not valid"
    return True, (f"{checks} permutations decided; identity counterexample "
                  f"{r.counterexample} verified literally")


def _quadruple_is_witness(ctx, pi, quad) -> bool:
    """Literal recheck of a returned counterexample: the tuple must be
    outside the trivial set and satisfy both defining identities."""
    a1, a2, b1, b2 = quad
    if (a1, a2) == (0, 0) or (b1, b2) == (0, 0):
        return False
    if (a1, a2) == (b1, b2) or (a2 == 0 and b2 == 0):
        return False
    for x in range(ctx.size):
        s = pi(x) ^ pi(x ^ a2) ^ pi(x ^ b2) ^ pi(x ^ a2 ^ b2)
        if s:
            return False
        t = (ctx.mul(a1, pi(x ^ a2)) ^ ctx.mul(b1, pi(x ^ b2))
             ^ ctx.mul(a1 ^ b1, pi(x ^ a2 ^ b2)))
        if ctx.trace(t):
            return False
    return True


def _c05_trace_sum(level, threads, seed):
    pairs = 0
    for m in range(4, 9):
        ctx = make_field(m)
        for c in range(1, ctx.size):
            for d in range(1, ctx.size):
                pairs += 1
                if not trace_sum_nonconstant(ctx, c, d):
                    return False, f"vanishing trace sum at m={m}, c={c:#x}, d={d:#x}"
    return True, f"{pairs} (c, d) pairs, every sum takes both values"


def _c06_duals(level, threads, seed):
    for k, n, fam in _gmm_cases(seed):
        ck = make_field(k)
        if dual(gmm(ck, k, fam)) != gmm_dual(ck, k, fam):
            return False, f"combiner dual formula mismatch at k={k}, n={n}"
    for m, k, e in ((4, 2, 2), (6, 3, 11)):
        ctx = make_field(m)
        pr = validate_gps_params(m, k, e)
        Q = PermTable.identity(m)
        if dual(gpsap_trace_form(ctx, pr, Q)) != gpsap_dual_formula(ctx, pr, Q):
            return False, f"spread dual formula mismatch at ({m},{k},{e})"
    fns = corpus(seed)
    for label, f in fns:
        if dual(dual(f)) != f:
            return False, f"dual involution fails on {label}"
    return True, (f"combiner and spread closed-form duals match the transform; "
                  f"dual of dual restores all {len(fns)} corpus functions")


_TRICHOTOMY = {"AllBent": "ConstantOne", "AllSemibent": "ConstantZero",
               "Mixed": "NonConstant"}


def _c07_trichotomy(level, threads, seed):
    quad = [((i & 1) & (i >> 1)) ^ ((i >> 2) & (i >> 3) & 1) for i in range(16)]
    ctx3 = make_field(3)
    ctx4 = make_field(4)
    pr = validate_gps_params(4, 2, 2)
    cases = [
        ("x1x2+x3x4", BoolFn(quad)),
        ("two-block m=3", mm(ctx3, PermTable.inverse_map(ctx3))),
        ("psap m=3", psap(ctx3, SubfieldFn.trace_form(ctx3, 3))),
        ("gpsap (4,2,2)", gpsap(ctx4, pr, SubfieldFn.trace_form(ctx4, 2))),
    ]
    planes = 0
    for label, f in cases:
        size = 1 << f.n
        for u in range(1, size):
            for v in range(u + 1, size):
                if (u ^ v) < v:
                    continue
                planes += 1
                rep = classify_decomposition(f, u, v)
                if _TRICHOTOMY[rep.classification] != rep.dual_second_derivative:
                    return False, (f"{label}: plane ({u},{v}) classifies "
                                   f"{rep.classification} but the dual "
                                   f"derivative is {rep.dual_second_derivative}")
    return True, f"restriction and dual-derivative labels agree on {planes} planes"


def _c08_concat_rule(level, threads, seed):
    rng = XorShift64Star(seed ^ 0xC8)
    agree = 0
    for _ in range(50):
        fs = [_seeded_mm(6, rng) for _ in range(4)]
        lhs = concat_bent_check(*fs)
        rhs = is_bent(concat4(*fs))
        if lhs != rhs:
            return False, "dual-sum rule disagrees with the transform on a seeded quadruple"
        agree += 1
    g = _seeded_mm(6, rng)
    if not (concat_bent_check(g, g, g, g ^ 1) and is_bent(concat4(g, g, g, g ^ 1))):
        return False, "(g, g, g, g+1) should concatenate to a bent function"
    if concat_bent_check(g, g, g, g) or is_bent(concat4(g, g, g, g)):
        return False, "(g, g, g, g) should not concatenate to a bent function"
    return True, f"{agree} seeded quadruples plus both designed cases agree"


def _c09_substitution(level, threads, seed):
    ctx = make_field(4)
    pr = validate_gps_params(4, 2, 2)
    Q = PermTable.identity(4)
    rng = XorShift64Star(seed ^ 0xF0F)
    done = 0
    while done < 50:
        a, b, c, d = (rng.randrange(16) for _ in range(4))
        if ctx.mul(a, d) ^ ctx.mul(b, c) == 0:
            continue
        done += 1
        if not check_ftof_equivalence(ctx, pr, Q, a, b, c, d):
            return False, f"constancy classes differ at (a,b,c,d)=({a},{b},{c},{d})"
    return True, "50 admissible substitutions, both constancy tests agree"


def _c10_semibent_planes(level, threads, seed):
    details = []
    for m, k, e in ((4, 2, 2), (5, 1, 3)):
        ctx = make_field(m)
        pr = validate_gps_params(m, k, e)
        f = gpsap_trace_form(ctx, pr, PermTable.identity(m))
        inside = 0
        for a in range(1, 1 << m):
            for b in range(a + 1, 1 << m):
                if (a ^ b) < b:
                    continue
                rep = classify_decomposition(f, a << m, b << m)
                if rep.classification != "AllSemibent":
                    return False, (f"({m},{k},{e}): plane ({a << m},{b << m}) "
                                   f"classifies {rep.classification}")
                inside += 1
        details.append(f"({m},{k},{e}): {inside} second-block planes all semibent")
        if m == 4 or level == "full":
            # exclusivity is out of reach at desk scale; record the
            # observed count outside the second block without asserting
            outside = sum(
                1 for r in scan_decompositions(f)
                if r.classification == "AllSemibent"
                and not (r.basis1 >= 1 << m and r.basis2 >= 1 << m)
            )
            details[-1] += f", {outside} semibent planes elsewhere (recorded only)"
    return True, "; ".join(details)


def _c11_character_sums(level, threads, seed):
    m, k, e = 4, 2, 2
    ctx = make_field(m)
    pr = validate_gps_params(m, k, e)
    sets = spread_sets(ctx, pr)
    size = ctx.size
    mask = size - 1
    hi, lo = 1 << m, (1 << (m - k))
    neg_e = (-pr.e) % ctx.order
    checked = 0
    for u in range(size):
        for v in range(size):
            if u == 0 and v == 0:
                continue
            um, vm = ctx.dualmask(u), ctx.dualmask(v)
            chi_v = sum(1 - 2 * ((um & (p & mask)).bit_count() & 1)
                        for p in sets.V)
            want_v = 0 if u else size
            if chi_v != want_v:
                return False, f"chi(V) = {chi_v} != {want_v} at (u,v)=({u},{v})"
            for gamma, pts in sets.B.items():
                chi = sum(1 - 2 * (((um & (p & mask)).bit_count()
                                    + (vm & (p >> m)).bit_count()) & 1)
                          for p in pts)
                first = (u != 0 and ctx.pow(gamma, 1 << pr.ell)
                         == ctx.trace_rel(ctx.mul(v, ctx.pow(u, neg_e)), k))
                want = hi - lo if first else -lo
                if chi != want:
                    return False, (f"chi(B({gamma:#x})) = {chi} != {want} "
                                   f"at (u,v)=({u},{v})")
                checked += 1
    return True, f"{checked} character sums match the two-branch closed form"


def _naive_walsh(f: BoolFn) -> np.ndarray:
    n = f.n
    out = np.zeros(1 << n, dtype=np.int64)
    for b in range(1 << n):
        acc = 0
        for x in range(1 << n):
            acc += 1 - 2 * (int(f.table[x]) ^ ((b & x).bit_count() & 1))
        out[b] = acc
    return out


def _c12_structural(level, threads, seed):
    fns = corpus(seed)
    for label, f in fns:
        if not walsh_transform(f).parseval_holds():
            return False, f"Parseval fails on {label}"
    rng = XorShift64Star(seed ^ 0x570)
    for t in range(100):
        n = 1 + rng.randrange(6)
        tbl = np.array([rng.bits(1) for _ in range(1 << n)], dtype=np.uint8)
        f = BoolFn(tbl)
        if not (walsh_transform(f).values == _naive_walsh(f)).all():
            return False, f"butterfly disagrees with the double sum (trial {t}, n={n})"
    fs = [_seeded_mm(6, rng) for _ in range(4)]
    cat = concat4(*fs)
    back = restrict_to_cosets(cat, 1 << 6, 1 << 7)
    if any(a != b for a, b in zip(back, fs)):
        return False, "concatenation does not restrict back to its blocks"
    for t in range(20):
        n = (4, 6, 8)[rng.randrange(3)]
        tbl = np.array([rng.bits(1) for _ in range(1 << n)], dtype=np.uint8)
        f = BoolFn(tbl)
        while True:
            L = [rng.randrange(1 << n) for _ in range(n)]
            if gf2vec.rank(L) == n:
                break
        g = ea_transform(f, L, rng.randrange(1 << n), rng.randrange(1 << n),
                         rng.bits(1))
        if ext_walsh_spectrum(g) != ext_walsh_spectrum(f):
            return False, f"extended spectrum moved under an affine transform (trial {t})"
    for m, k, e in GPS_GRID:
        ctx = make_field(m)
        pr = validate_gps_params(m, k, e)
        sets = spread_sets(ctx, pr)
        want = (1 << (m - k)) * ((1 << m) - 1)
        for gamma in ctx.subfield(k):
            if len(sets.A[gamma]) != want or len(sets.B[gamma]) != want:
                return False, f"partition class size off at ({m},{k},{e}), gamma={gamma:#x}"
    return True, ("Parseval on the corpus, 100 transform cross-checks, "
                  "restriction round trip, 20 affine invariance trials, "
                  "partition class sizes")


CRITERIA = (
    (1, "bentness-grid", _c01_bentness),
    (2, "degree-law", _c02_degree),
    (3, "outside-two-block", _c03_outside_mm),
    (4, "unique-subspace-property", _c04_property_P),
    (5, "trace-sum", _c05_trace_sum),
    (6, "dual-formulas", _c06_duals),
    (7, "decomposition-trichotomy", _c07_trichotomy),
    (8, "concat-bent-rule", _c08_concat_rule),
    (9, "substitution-duality", _c09_substitution),
    (10, "semibent-planes", _c10_semibent_planes),
    (11, "character-sums", _c11_character_sums),
    (12, "structural-suite", _c12_structural),
)


def run_criterion(cid: int, level: str = "fast", threads: int = 1,
                  seed: int = 0) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == cid:
            t0 = time.time()
            passed, detail = fn(level, threads, seed)
            return CriterionResult(num, name, passed, time.time() - t0, detail)
    raise ValueError(f"no criterion {cid}")


def run_suite(level: str = "fast", threads: int = 1,
              seed: int = 0) -> list[CriterionResult]:
    return [run_criterion(cid, level, threads, seed) for cid, _, _ in CRITERIA]
