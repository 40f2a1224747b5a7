import math

import numpy as np
import pytest

from metacyclic import poly
from metacyclic.errors import BadGroupParams, NonCoprime, NonCoprimeR
from metacyclic.gf import base_field
from metacyclic.polyfact import cyclotomic_cosets, factor_xn_minus_1, orbits, r_reciprocal

from conftest import full_grid


def coset_sets(n, q):
    return {frozenset(c.members) for c in cyclotomic_cosets(n, q)}


def closure_cosets(n, q):
    # oracle: orbits of c -> qc mod n found by plain iteration
    left = set(range(n))
    out = set()
    while left:
        c = min(left)
        orb = {c}
        x = c * q % n
        while x not in orb:
            orb.add(x)
            x = x * q % n
        out.add(frozenset(orb))
        left -= orb
    return out


def test_cosets_examples():
    assert coset_sets(7, 2) == {frozenset({0}), frozenset({1, 2, 4}), frozenset({3, 5, 6})}
    assert coset_sets(5, 3) == {frozenset({0}), frozenset({1, 2, 3, 4})}
    assert coset_sets(5, 11) == {frozenset({c}) for c in range(5)}


@pytest.mark.parametrize("n,q", [(n, q) for n in range(2, 30) for q in (2, 3, 4, 5, 7, 8, 9) if math.gcd(n, q) == 1])
def test_cosets_partition(n, q):
    assert coset_sets(n, q) == closure_cosets(n, q)


def test_cosets_need_coprime():
    with pytest.raises(NonCoprime):
        cyclotomic_cosets(6, 2)


def factor_strings(n, q):
    return sorted(poly.to_str(fd.f) for fd in factor_xn_minus_1(n, q).factors)


def test_factor_examples():
    assert factor_strings(7, 2) == sorted(["x+1", "x^3+x+1", "x^3+x^2+1"])
    assert factor_strings(2, 3) == sorted(["x+1", "x+2"])
    assert factor_strings(3, 2) == sorted(["x+1", "x^2+x+1"])


@pytest.mark.parametrize("n,q", [(n, q) for n in (3, 5, 7, 9, 11, 13, 15) for q in (2, 3, 4, 5, 7, 8, 9) if math.gcd(n, q) == 1])
def test_factors_multiply_back(n, q):
    F = base_field(q)
    fac = factor_xn_minus_1(n, q)
    prod = np.array([1])
    for fd in fac.factors:
        assert fd.f[-1] == 1
        assert poly.is_irreducible(F, fd.f)
        assert fd.degree == len(fd.coset.members)
        prod = poly.mul(F, prod, fd.f)
    assert np.array_equal(poly.trim(prod), poly.x_n_minus_1(F, n))


def test_r_reciprocal_examples():
    fac = factor_xn_minus_1(7, 2)
    f = fac.by_coset({1, 2, 4})
    assert poly.to_str(r_reciprocal(f, 3).f) == "x^3+x^2+1"
    assert r_reciprocal(f, 2) is f
    for fd in fac.factors:
        assert r_reciprocal(fd, 1) is fd
    with pytest.raises(NonCoprimeR):
        r_reciprocal(f, 7)


def test_r_reciprocal_roots():
    # f^(r) vanishes at beta^r for each root beta of f
    fac = factor_xn_minus_1(13, 3)
    L = fac.splitting
    for fd in fac.factors:
        g = r_reciprocal(fd, 5).f
        for c in fd.coset.members:
            root = L.vpow(fac.zeta, 5 * c)
            val = np.zeros(L.D, dtype=np.int64)
            for coef in reversed(g):
                val = L.vadd(L.vmul(val, root), L.embed(int(coef)))
            assert not val.any()


def summary(n, m, r, q):
    return [(poly.to_str(o.rep.f), o.s, o.u, o.k, o.kind) for o in orbits(n, m, r, q)]


def test_orbit_examples():
    assert summary(7, 3, 2, 2) == [
        ("x+1", 1, 3, 0, "group algebra"),
        ("x^3+x+1", 1, 3, 1, "skew"),
        ("x^3+x^2+1", 1, 3, 1, "skew"),
    ]
    got = summary(7, 6, 3, 2)
    assert got[0] == ("x+1", 1, 6, 0, "group algebra")
    assert got[1][1:4] == (2, 3, 1)
    assert {poly.to_str(f.f) for f in orbits(7, 6, 3, 2)[1].orbit} == {"x^3+x+1", "x^3+x^2+1"}
    assert summary(5, 2, 4, 3) == [
        ("x+2", 1, 2, 0, "group algebra"),
        ("x^4+x^3+x^2+x+1", 1, 2, 2, "skew"),
    ]


@pytest.mark.parametrize("args", [(7, 3, 3, 2), (7, 3, 1, 2), (5, 2, 4, 5)])
def test_orbit_errors(args):
    with pytest.raises((BadGroupParams, NonCoprime)):
        orbits(*args)


def test_orbits_on_grid():
    for n, m, r, q in full_grid():
        fac = factor_xn_minus_1(n, q)
        total = 0
        for o in orbits(n, m, r, q):
            total += sum(f.degree for f in o.orbit)
            assert o.s * o.u == m
            f = o.rep
            # s is the least power of r returning f to itself
            cur = f
            for step in range(1, o.s + 1):
                cur = fac.r_reciprocal(cur, r)
                assert (cur is f) == (step == o.s)
            a = o.alpha
            assert a ** (q**o.k) == a ** (r**o.s)
        assert total == n
