import numpy as np
import pytest

from metacyclic.algebra import AlgebraElement, GroupParams, ga_mul_vectors
from metacyclic.errors import ParamMismatch, ShapeMismatch, ThetaNotInjective
from metacyclic.polyfact import orbits
from metacyclic.wedderburn import build_decomposition, classify_summands, sigma_matrix, theta_order

from conftest import full_grid, random_vectors


def horner(K, coeffs, x):
    val = K.zero_vec()
    for c in reversed(coeffs):
        val = K.vadd(K.vmul(val, x), K.embed(int(c)))
    return val


def transcribed_block(dec, i, P):
    """Right h-coefficients of tau_i(P) written out entry by entry:
    entry (l, c) = sum_z h^(z + [c < l]) P_(zs + (c - l mod s))(alpha^(r^c))."""
    sm = dec.summands[i]
    K = sm.field
    s, u = sm.s, sm.u
    p = dec.params
    alpha = sm.orbit.alpha.vec
    out = np.zeros((s, s, u, K.D), dtype=np.int64)
    for l in range(s):
        for c in range(s):
            point = K.vpow(alpha, pow(p.r, c, p.n))
            w = 1 if c < l else 0
            for z in range(u):
                k = z * s + (c - l) % s
                e = (z + w) % u
                out[l, c, e] = K.vadd(out[l, c, e], horner(K, P.coeffs[k], point))
    return out


TRANSCRIBE = [(7, 6, 3, 2), (7, 3, 2, 2), (9, 6, 2, 2), (13, 4, 5, 3), (5, 4, 2, 4), (7, 2, 6, 3)]


@pytest.mark.parametrize("args", TRANSCRIBE, ids=str)
def test_blocks_match_transcribed_matrix(args, rng):
    p = GroupParams(*args)
    dec = build_decomposition(p)
    for v in random_vectors(p, rng, 5):
        P = AlgebraElement.from_vector(p, v)
        blocks = dec.tau_apply(P)
        for i, (sm, X) in enumerate(zip(dec.summands, blocks)):
            got = sm.ring.to_right_coeffs(X.entries)
            assert np.array_equal(got, transcribed_block(dec, i, P))


def test_orbit_block_shapes():
    dec = build_decomposition(GroupParams(7, 3, 2, 2))
    assert [(sm.s, sm.u, sm.orbit.degree, sm.orbit.k) for sm in dec.summands] == [
        (1, 3, 1, 0),
        (1, 3, 3, 1),
        (1, 3, 3, 1),
    ]
    dec = build_decomposition(GroupParams(5, 2, 4, 3))
    assert [(sm.field.size, sm.orbit.k) for sm in dec.summands] == [(3, 0), (81, 2)]


def test_identity_and_zero(params):
    dec = build_decomposition(params)
    assert all(X.is_identity() for X in dec.tau_apply(AlgebraElement.identity(params)))
    assert all(X.is_zero() for X in dec.tau_apply(AlgebraElement.zero(params)))
    assert dec.tau_inverse(dec.zero_blocks()).is_zero()


def test_homomorphism_and_round_trip(params, rng):
    dec = build_decomposition(params)
    U = random_vectors(params, rng, 20)
    V = random_vectors(params, rng, 20)
    F = params.field
    TU, TV = dec.tau_vectors(U), dec.tau_vectors(V)
    TS = dec.tau_vectors(F.add[U, V])
    TP = dec.tau_vectors(ga_mul_vectors(params, U, V))
    for sm, a, b, s_, p_ in zip(dec.summands, TU, TV, TS, TP):
        assert np.array_equal(s_, (a + b) % F.p)
        assert np.array_equal(p_, sm.ring.matmul(a, b))
    assert np.array_equal(dec.tau_inverse_vectors(TU), U)


def test_generator_relations(params):
    dec = build_decomposition(params)
    n, m, r = params.n, params.m, params.r
    for ta, tb in dec.gen_images:
        assert (ta**n).is_identity()
        assert (tb**m).is_identity()
        assert tb * ta == (ta**r) * tb


def test_central_idempotents(params):
    dec = build_decomposition(params)
    eps = [dec.central_idempotent(i) for i in range(len(dec.summands))]
    total = AlgebraElement.zero(params)
    for i, x in enumerate(eps):
        total = total + x
        for j, y in enumerate(eps):
            assert x * y == (x if i == j else AlgebraElement.zero(params))
    assert total == AlgebraElement.identity(params)


def test_dimension_identity(params):
    assert build_decomposition(params).dimension() == params.order


def test_shape_and_param_errors():
    dec = build_decomposition(GroupParams(7, 3, 2, 2))
    other = GroupParams(7, 3, 4, 2)
    with pytest.raises(ParamMismatch):
        dec.tau_apply(AlgebraElement.a(other))
    with pytest.raises(ShapeMismatch):
        dec.tau_inverse(dec.zero_blocks()[:2])
    bad = [np.zeros((1, 2, 2, 3, 1), dtype=np.int64)] + [np.zeros((1,) + sm.shape, dtype=np.int64) for sm in dec.summands[1:]]
    with pytest.raises(ShapeMismatch):
        dec.tau_inverse_vectors(bad)


# -- classification -------------------------------------------------------


def test_classification_examples():
    cls = classify_summands(build_decomposition(GroupParams(7, 3, 2, 2)))
    assert cls["shape"] == "F_2C_3 + M_3(F_2) + M_3(F_2)"
    assert cls["omega_classes"] == {"1": [0], "2": [1, 2], "3": []}
    cls = classify_summands(build_decomposition(GroupParams(5, 2, 4, 3)))
    assert cls["shape"] == "F_3C_2 + M_2(F_9)"
    assert cls["omega_classes"] == {"1": [0], "2": [1], "3": []}
    cls = classify_summands(build_decomposition(GroupParams(7, 6, 3, 2)))
    assert cls["labels"][1]["summand"] == "M_2(F_8*_theta C_3)"
    assert cls["labels"][1]["refined"] == "M_6(F_2)"
    assert cls["omega_classes"] is None


# -- the matrix picture of a skew summand -----------------------------------


def check_sigma_multiplicative(o, rng, trials=10):
    sig = sigma_matrix(o)
    K = o.field
    ring = sig.ring
    for _ in range(trials):
        x = rng.integers(0, K.p, (o.u, K.D))
        y = rng.integers(0, K.p, (o.u, K.D))
        assert np.array_equal(sig.apply(ring.mul(x, y)), sig.matmul(sig.apply(x), sig.apply(y)))
    return sig


def test_sigma_cubic_orbit(rng):
    o = orbits(7, 3, 2, 2)[1]
    sig = check_sigma_multiplicative(o, rng)
    assert sig.size == 3 and sig.fixed_degree == 1
    # u^2 entries over k = F_2 against 9 = dim over F_2 of F_8 *_theta C_3
    assert sig.size**2 * sig.fixed_degree == o.u * o.degree


def test_sigma_trivial_stabilizer(rng):
    o = orbits(7, 6, 3, 2)[0]  # k = 0, u = 6: not injective
    with pytest.raises(ThetaNotInjective):
        sigma_matrix(o)
    o = next(o for o in orbits(7, 2, 6, 2) if o.u == 1)
    sig = check_sigma_multiplicative(o, rng)
    assert sig.size == 1


@pytest.mark.parametrize("args", [(5, 2, 4, 3), (13, 2, 12, 5), (7, 2, 6, 3)], ids=str)
def test_dihedral_matrices(args):
    p = GroupParams(*args)
    dec = build_decomposition(p)
    idx = classify_summands(dec)["omega_classes"]["2"]
    assert idx
    for i in idx:
        o = dec.orbit_table[i]
        sig = sigma_matrix(o)
        K = o.field
        ring = sig.ring
        a = o.alpha.vec
        ar = K.vpow(a, p.r)
        one, zero = K.one_vec(), K.zero_vec()
        tr = K.vadd(a, ar)
        nm = (-K.vmul(a, ar)) % K.p
        want_a = np.array([[zero, nm], [one, tr]])
        want_b = np.array([[one, tr], [zero, (-one) % K.p]])
        assert np.array_equal(sig.apply(ring.scalar(a)), want_a)
        assert np.array_equal(sig.apply(ring.h()), want_b)


def test_theta_order_divides_u_on_grid():
    for args in full_grid()[::5]:
        for o in orbits(*args):
            t = theta_order(o)
            assert o.u % t == 0
