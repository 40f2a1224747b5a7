import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metacyclic.algebra import (
    AlgebraElement,
    BlockElement,
    GroupParams,
    SkewElement,
    SkewRing,
    format_group_element,
    ga_mul,
    parse_algebra_element,
    parse_group_element,
    star,
    weight,
)
from metacyclic.errors import OrbitMismatch, ParamMismatch, ParseError, TwistMismatch
from metacyclic.gf import base_field, gf_extension
from metacyclic.wedderburn import build_decomposition

from conftest import SMALL, full_grid, random_vectors


# oracle: G as Z_n x| Z_m with pairs (t, j) = a^t b^j and
# (t, j)(t', j') = (t + r^j t', j + j')
def to_pair(p, g):
    j, i = divmod(int(g), p.n)
    return (pow(p.r, j, p.n) * i % p.n, j)


def pair_product(p, x, y):
    (t, j), (t2, j2) = x, y
    return ((t + pow(p.r, j, p.n) * t2) % p.n, (j + j2) % p.m)


def convolution(p, u, v):
    # sum_g u_g v_h (g h), element by element
    F = p.field
    inv = {to_pair(p, g): g for g in range(p.order)}
    out = np.zeros(p.order, dtype=np.int64)
    for g in np.flatnonzero(u):
        for h in np.flatnonzero(v):
            gh = inv[pair_product(p, to_pair(p, g), to_pair(p, h))]
            out[gh] = F.add[out[gh], F.mul[u[g], v[h]]]
    return out


def test_group_law_matches_semidirect_product():
    for n, m, r, q in full_grid()[::7]:
        p = GroupParams(n, m, r, q)
        pairs = [to_pair(p, g) for g in range(p.order)]
        assert len(set(pairs)) == p.order
        for g in range(p.order):
            for h in range(p.order):
                assert pairs[p.product(g, h)] == pair_product(p, pairs[g], pairs[h])


def test_ba_is_a_to_the_r_b():
    for args in SMALL:
        p = GroupParams(*args)
        ba = AlgebraElement.b(p) * AlgebraElement.a(p)
        assert ba == AlgebraElement.a(p, p.r) * AlgebraElement.b(p)
        assert format_group_element(p, int(np.flatnonzero(ba.vector)[0])) == f"a^{p.r}*b"


def test_small_product_example():
    p = GroupParams(3, 2, 2, 2)
    e, a, b = AlgebraElement.identity(p), AlgebraElement.a(p), AlgebraElement.b(p)
    assert (e + a) * (e + b) == parse_algebra_element(p, "e+a+b+b*a^2")
    assert parse_algebra_element(p, "b*a^2") == a * b


def test_identity_is_neutral(params, rng):
    e = AlgebraElement.identity(params)
    for v in random_vectors(params, rng, 5):
        u = AlgebraElement.from_vector(params, v)
        assert e * u == u and u * e == u


def test_ga_mul_matches_convolution(params, rng):
    U = random_vectors(params, rng, 4)
    V = random_vectors(params, rng, 4)
    for u, v in zip(U, V):
        got = ga_mul(AlgebraElement.from_vector(params, u), AlgebraElement.from_vector(params, v))
        assert np.array_equal(got.vector, convolution(params, u, v))


def test_mixed_params_rejected():
    p1, p2 = GroupParams(7, 3, 2, 2), GroupParams(7, 3, 4, 2)
    with pytest.raises(ParamMismatch):
        AlgebraElement.a(p1) * AlgebraElement.a(p2)


def test_star_examples(params, rng):
    a = AlgebraElement.a(params)
    assert star(a) == AlgebraElement.a(params, params.n - 1)
    U = random_vectors(params, rng, 3)
    V = random_vectors(params, rng, 3)
    for u, v in zip(U, V):
        x, y = AlgebraElement.from_vector(params, u), AlgebraElement.from_vector(params, v)
        assert star(star(x)) == x
        assert star(x * y) == star(y) * star(x)


def test_star_of_involution():
    p = GroupParams(3, 2, 2, 2)
    ba = AlgebraElement.b(p) * AlgebraElement.a(p)
    assert ba * ba == AlgebraElement.identity(p)
    assert star(ba) == ba


def test_weight():
    p = GroupParams(7, 3, 2, 2)
    assert weight(AlgebraElement.zero(p)) == 0
    assert weight(AlgebraElement.a(p) + AlgebraElement.b(p)) == 2
    assert weight(AlgebraElement.all_sum(p)) == 21


def test_weight_is_sum_over_b_rows(params, rng):
    for v in random_vectors(params, rng, 5):
        u = AlgebraElement.from_vector(params, v)
        rows = u.to_right_form()
        assert weight(u) == sum(int(np.count_nonzero(row)) for row in rows)


def test_right_form_round_trip(params, rng):
    for v in random_vectors(params, rng, 5):
        u = AlgebraElement.from_vector(params, v)
        assert AlgebraElement.from_right_form(params, u.to_right_form()) == u


def test_parse_errors():
    p = GroupParams(7, 3, 2, 2)
    with pytest.raises(ParseError):
        parse_group_element(p, "c^2")
    with pytest.raises(ParseError):
        parse_algebra_element(p, "3*a")


def test_group_element_text_round_trip(params):
    for g in range(params.order):
        assert parse_group_element(params, format_group_element(params, g)) == g


# -- skew rings -------------------------------------------------------------


def skew(ring, rows):
    x = ring.zero()
    for z, vec in rows.items():
        x[z] = vec
    return SkewElement(x, ring)


def test_skew_commutation():
    K = gf_extension(base_field(2), "x^3+x+1")
    ring = SkewRing(K, 3, 1)
    h = SkewElement(ring.h(), ring)
    for lam in K.elements():
        left = h * SkewElement(ring.scalar(lam.vec), ring)
        right = SkewElement(ring.scalar((lam**2).vec), ring) * h
        assert left == right


def test_skew_example_in_gf4():
    K = gf_extension(base_field(2), "x^2+x+1")
    ring = SkewRing(K, 2, 1)
    ah = skew(ring, {1: K.gen().vec})
    assert ah * ah == SkewElement(ring.one(), ring)


def test_twist_mismatch():
    K = gf_extension(base_field(2), "x^2+x+1")
    x = SkewElement(SkewRing(K, 2, 1).one(), SkewRing(K, 2, 1))
    y = SkewElement(SkewRing(K, 2, 0).one(), SkewRing(K, 2, 0))
    with pytest.raises(TwistMismatch):
        x * y


RINGS = [(2, "x^3+x+1", 3, 1), (3, "x^4+x^3+x^2+x+1", 2, 2), (4, [2, 1, 1], 2, 1), (2, "x^4+x+1", 4, 1)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(RINGS), st.integers(0, 2**32 - 1))
def test_skew_associative(ring_args, seed):
    q, f, u, k = ring_args
    K = gf_extension(base_field(q), f)
    ring = SkewRing(K, u, k)
    rng = np.random.default_rng(seed)
    x, y, z = (rng.integers(0, K.p, (u, K.D)) for _ in range(3))
    assert np.array_equal(ring.mul(ring.mul(x, y), z), ring.mul(x, ring.mul(y, z)))
    one = ring.one()
    assert np.array_equal(ring.mul(one, x), x)


def test_untwisted_ring_is_commutative_group_algebra():
    K = gf_extension(base_field(2), "x^3+x+1")
    ring = SkewRing(K, 3, 0)
    rng = np.random.default_rng(5)
    for _ in range(20):
        x, y = rng.integers(0, 2, (3, 3)), rng.integers(0, 2, (3, 3))
        assert np.array_equal(ring.mul(x, y), ring.mul(y, x))
        # compare with polynomial product mod h^3 - 1 over K
        want = np.zeros((3, 3), dtype=np.int64)
        for z in range(3):
            for w in range(3):
                want[(z + w) % 3] = K.vadd(want[(z + w) % 3], K.vmul(x[z], y[w]))
        assert np.array_equal(ring.mul(x, y), want)


def test_plain_two_by_two_matmul():
    K = gf_extension(base_field(3), "x^2+1")
    ring = SkewRing(K, 1, 0)
    rng = np.random.default_rng(9)
    for _ in range(20):
        X = rng.integers(0, 3, (2, 2, 1, 2))
        Y = rng.integers(0, 3, (2, 2, 1, 2))
        want = np.zeros((2, 2, 1, 2), dtype=np.int64)
        for i in range(2):
            for j in range(2):
                for t in range(2):
                    want[i, j, 0] = K.vadd(want[i, j, 0], K.vmul(X[i, t, 0], Y[t, j, 0]))
        assert np.array_equal(ring.matmul(X, Y), want)


def test_block_identity_and_relation():
    p = GroupParams(7, 6, 3, 2)
    dec = build_decomposition(p)
    sm = next(sm for sm in dec.summands if sm.s == 2)
    ta, tb = sm.block(sm.tau_a), sm.block(sm.tau_b)
    assert sm.identity() * ta == ta
    assert tb * ta == (ta ** p.r) * tb
    # the same relation seen through the group side
    a, b = AlgebraElement.a(p), AlgebraElement.b(p)
    i = dec.summands.index(sm)
    assert dec.tau_apply(b * a)[i] == tb * ta


def test_block_orbit_mismatch():
    dec = build_decomposition(GroupParams(7, 3, 2, 2))
    with pytest.raises(OrbitMismatch):
        dec.summands[1].identity() * dec.summands[2].identity()
