import numpy as np
import pytest

from bentfn import (
    BoolFn,
    DomainError,
    ParameterError,
    ParseError,
    Subspace,
    XorShift64Star,
    derivative,
    ea_transform,
    enumerate_M_subspaces,
    ext_walsh_spectrum,
    has_M_subspace,
    in_MM_completed,
    is_M_subspace,
    linearity_index,
    load_subspace,
    make_field,
    save_subspace,
    second_derivative,
)
from bentfn.construct import PermTable, mm

from helpers import random_invertible

QUAD = BoolFn([((i & 1) & (i >> 1)) ^ ((i >> 2) & (i >> 3) & 1)
               for i in range(16)])


def rand_fn(rng, n):
    return BoolFn(np.array([rng.bits(1) for _ in range(1 << n)], dtype=np.uint8))


def test_derivative_definition():
    rng = XorShift64Star(1)
    f = rand_fn(rng, 5)
    for a in (1, 7, 31):
        d = derivative(f, a)
        for x in range(32):
            assert d.table[x] == f.table[x] ^ f.table[x ^ a]


def test_second_derivative_symmetry():
    rng = XorShift64Star(2)
    f = rand_fn(rng, 4)
    for a in range(16):
        for b in range(16):
            assert second_derivative(f, a, b) == second_derivative(f, b, a)
    assert not second_derivative(f, 3, 3).table.any()


def test_subspace_dataclass():
    U = Subspace(4, (3, 5))
    assert U.dim == 2
    assert sorted(U.span()) == [0, 3, 5, 6]
    assert 6 in U and 1 not in U
    assert U.same_span(Subspace(4, (6, 5)))
    assert U.canonical().basis == (5, 3)
    with pytest.raises(DomainError):
        Subspace(4, (3, 5, 6))  # dependent
    with pytest.raises(DomainError):
        Subspace(4, (0,))
    with pytest.raises(DomainError):
        Subspace(4, (16,))


def test_is_M_subspace_canonical():
    ctx = make_field(3)
    f = mm(ctx, PermTable.inverse_map(ctx))
    assert is_M_subspace(f, Subspace(6, (1, 2, 4)))
    assert not is_M_subspace(f, Subspace(6, (8, 16, 32)))
    with pytest.raises(DomainError):
        is_M_subspace(f, Subspace(4, (1, 2)))


def test_is_M_subspace_matches_literal_scan():
    # quantifies over every pair from the span; cross-checked against a
    # from-scratch loop on random functions and subspaces
    import itertools

    rng = XorShift64Star(41)
    for _ in range(30):
        f = rand_fn(rng, 4)
        basis = (1 + rng.randrange(15),)
        while True:
            b2 = 1 + rng.randrange(15)
            if b2 not in Subspace(4, basis):
                basis = basis + (b2,)
                break
        U = Subspace(4, basis)
        pts = [v for v in U.span() if v]
        literal = all(
            not second_derivative(f, u, v).table.any()
            for u, v in itertools.combinations(pts, 2)
        )
        assert is_M_subspace(f, U) == literal


def test_quad_canonical_plane():
    # x1x2 + x3x4 pairs bits (0, 1) and (2, 3); its M-planes include
    # span(e1, e3) but not span(e1, e2)
    assert is_M_subspace(QUAD, Subspace(4, (1, 4)))
    assert not is_M_subspace(QUAD, Subspace(4, (1, 2)))


def test_linearity_index_two_block():
    ctx2 = make_field(2)
    assert linearity_index(mm(ctx2, PermTable.identity(2))) == 2
    ctx3 = make_field(3)
    assert linearity_index(mm(ctx3, PermTable.inverse_map(ctx3))) == 3
    assert linearity_index(QUAD) == 2
    assert not has_M_subspace(QUAD, 3)


def test_linearity_index_cap():
    ctx3 = make_field(3)
    f = mm(ctx3, PermTable.inverse_map(ctx3))
    assert linearity_index(f, dim_cap=2) == 2


def test_enumerate_known_count():
    # the 4-variable quadratic has the 15 planes of the symplectic
    # geometry as its M-subspaces
    ctx = make_field(2)
    f = mm(ctx, PermTable.identity(2))
    found = enumerate_M_subspaces(f, 2)
    assert len(found) == 15
    cans = {U.canonical().basis for U in found}
    assert len(cans) == 15
    for U in found:
        assert is_M_subspace(f, U)


def test_enumerate_dim_too_large():
    assert enumerate_M_subspaces(QUAD, 3) == []


def test_in_MM_completed():
    ctx = make_field(2)
    assert in_MM_completed(mm(ctx, PermTable.identity(2)))
    with pytest.raises(DomainError):
        in_MM_completed(BoolFn([0] * 16))


def test_threaded_search_agrees():
    ctx = make_field(3)
    f = mm(ctx, PermTable.inverse_map(ctx))
    assert linearity_index(f, threads=2) == linearity_index(f)
    a = {U.canonical().basis for U in enumerate_M_subspaces(f, 3)}
    b = {U.canonical().basis for U in enumerate_M_subspaces(f, 3, threads=2)}
    assert a == b


def test_ea_transform():
    rng = XorShift64Star(17)
    f = rand_fn(rng, 4)
    L = random_invertible(rng, 4)
    g = ea_transform(f, L, 3, 5, 1)
    assert ext_walsh_spectrum(g) == ext_walsh_spectrum(f)
    # literal: g(x) = f(Lx + a) + <c, x> + b
    for x in range(16):
        lx = 0
        for i in range(4):
            if (x >> i) & 1:
                lx ^= L[i]
        want = f.table[lx ^ 3] ^ ((5 & x).bit_count() & 1) ^ 1
        assert g.table[x] == want
    with pytest.raises(ParameterError):
        ea_transform(f, [1, 2, 4, 4])
    with pytest.raises(ParameterError):
        ea_transform(f, [1, 2, 4])


def test_ea_preserves_M_subspace_count():
    ctx = make_field(2)
    f = mm(ctx, PermTable.identity(2)).with_space(None)
    rng = XorShift64Star(23)
    L = random_invertible(rng, 4)
    g = ea_transform(f, L, rng.randrange(16), rng.randrange(16), 0)
    assert len(enumerate_M_subspaces(g, 2)) == 15


def test_subspace_file_round_trip(tmp_path):
    U = Subspace(6, (33, 18, 12))
    p = tmp_path / "u.sub"
    save_subspace(U, str(p))
    V = load_subspace(str(p))
    assert V.n == 6 and V.same_span(U)
    text = p.read_text().splitlines()
    assert text[0] == "n=6 dim=3"


@pytest.mark.parametrize("body,lineno", [
    ("n=6\n21\n", 1),
    ("n=6 dim=2\n21\n", 2),
    ("n=6 dim=1\nzz\n", 2),
    ("n=6 dim=2\n21\n21\n", 3),
])
def test_subspace_parse_errors(tmp_path, body, lineno):
    p = tmp_path / "bad.sub"
    p.write_text(body)
    with pytest.raises(ParseError) as exc:
        load_subspace(str(p))
    assert f"line {lineno}" in str(exc.value)
