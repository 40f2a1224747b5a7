"""Factorization of x^n - 1 over F_q and the action of <b> on its factors.

Factors are indexed by q-cyclotomic cosets mod n.  The action
``b^j . f = f^(r^j)`` permutes cosets by multiplication with r, and the
orbit data computed here is the combinatorial skeleton of the algebra
decomposition in :mod:`metacyclic.wedderburn`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint

from . import poly
from .errors import BadGroupParams, NonCoprime, NonCoprimeR
from .gf import Field, FieldElem, base_field, gf_extension

KINDS = ("group algebra", "skew", "matrix group algebra", "matrix skew")


def _as_field(q) -> Field:
    return q if isinstance(q, Field) else base_field(int(q))


def mult_order(a: int, d: int) -> int:
    """Least t >= 1 with a^t = 1 (mod d); 1 when d == 1."""
    if d == 1:
        return 1
    t, x = 1, a % d
    while x != 1:
        x = (x * a) % d
        t += 1
    return t


@dataclass(frozen=True)
class CyclotomicCoset:
    members: tuple
    n: int

    @property
    def representative(self) -> int:
        return self.members[0]

    @property
    def d(self) -> int:
        """Multiplicative order of zeta^representative."""
        return self.n // math.gcd(self.n, self.representative)

    @property
    def t_d(self) -> int:
        return len(self.members)

    def scaled(self, r: int) -> frozenset:
        return frozenset((r * c) % self.n for c in self.members)


def cyclotomic_cosets(n: int, q) -> list[CyclotomicCoset]:
    qq = _as_field(q).size if isinstance(q, Field) else int(q)
    if math.gcd(qq, n) != 1:
        raise NonCoprime(f"gcd(q={qq}, n={n}) != 1")
    seen: set[int] = set()
    out = []
    for c in range(n):
        if c in seen:
            continue
        orbit, x = [], c
        while x not in orbit:
            orbit.append(x)
            x = (x * qq) % n
        seen.update(orbit)
        out.append(CyclotomicCoset(tuple(sorted(orbit)), n))
    return out


@dataclass(eq=False)
class FactorData:
    f: np.ndarray
    coset: CyclotomicCoset
    field: Field
    alpha: FieldElem

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    def __str__(self) -> str:
        return poly.to_str(self.f)


@dataclass(eq=False)
class Factorization:
    """All monic irreducible factors of x^n - 1 over F_q."""

    n: int
    Fq: Field
    factors: list
    splitting: Field
    zeta: np.ndarray  # flat vector of a primitive n-th root of unity in ``splitting``
    _by_coset: dict = field(default_factory=dict)

    def __post_init__(self):
        for fd in self.factors:
            self._by_coset[frozenset(fd.coset.members)] = fd

    def by_coset(self, members) -> FactorData:
        return self._by_coset[frozenset(members)]

    def r_reciprocal(self, fd: FactorData, r: int) -> FactorData:
        if math.gcd(r, self.n) != 1:
            raise NonCoprimeR(f"gcd(r={r}, n={self.n}) != 1")
        return self.by_coset(fd.coset.scaled(r))

    def index(self, fd: FactorData) -> int:
        return self.factors.index(fd)


def _primitive_root_of_unity(L: Field, n: int) -> np.ndarray:
    N = L.size - 1
    primes = list(factorint(n)) if n > 1 else []
    for code in range(1, L.size):
        cand = L.vpow(L.elem(L._digits_of(code)).vec, N // n)
        if all(np.any(L.vpow(cand, n // ell) != L.one_vec()) for ell in primes):
            return cand
    raise RuntimeError("no primitive root of unity")  # pragma: no cover


def roots_product(L: Field, roots: list) -> np.ndarray:
    """Coefficients (over L, flat rows) of prod (x - beta)."""
    coeffs = [L.one_vec()]
    for beta in roots:
        new = [L.zero_vec() for _ in range(len(coeffs) + 1)]
        for k, c in enumerate(coeffs):
            new[k + 1] = L.vadd(new[k + 1], c)
            new[k] = L.vsub(new[k], L.vmul(beta, c))
        coeffs = new
    return np.array(coeffs)


def splitting_data(n: int, Fq: Field) -> tuple[Field, np.ndarray]:
    t = mult_order(Fq.size, n)
    if t == 1:
        L = gf_extension(Fq, [0, 1])
    else:
        L = gf_extension(Fq, poly.first_irreducible(Fq, t))
    return L, _primitive_root_of_unity(L, n)


def to_base_poly(L: Field, coeffs: np.ndarray) -> np.ndarray:
    """Map L-coefficients lying in the embedded F_q back to F_q codes."""
    lookup = {tuple(int(x) for x in L.base_embed[c]): c for c in range(L.base.size)}
    out = []
    for c in coeffs:
        key = tuple(int(x) for x in c)
        if key not in lookup:
            raise ArithmeticError("coefficient outside the base field")
        out.append(lookup[key])
    return np.array(out, dtype=np.int64)


@functools.lru_cache(maxsize=None)
def _factor_cached(n: int, Fq: Field) -> Factorization:
    L, zeta = splitting_data(n, Fq)
    zpow = [L.one_vec()]
    for _ in range(n - 1):
        zpow.append(L.vmul(zpow[-1], zeta))
    factors = []
    for cs in cyclotomic_cosets(n, Fq.size):
        f = to_base_poly(L, roots_product(L, [zpow[c] for c in cs.members]))
        K = gf_extension(Fq, f)
        factors.append(FactorData(f, cs, K, K.gen()))
    return Factorization(n, Fq, factors, L, zeta)


def factor_xn_minus_1(n: int, q) -> Factorization:
    Fq = _as_field(q)
    if math.gcd(Fq.size, n) != 1:
        raise NonCoprime(f"gcd(q={Fq.size}, n={n}) != 1")
    return _factor_cached(n, Fq)


def r_reciprocal(fd: FactorData, r: int, fac: Factorization | None = None) -> FactorData:
    if fac is None:
        fac = factor_xn_minus_1(fd.coset.n, fd.field.base)
    return fac.r_reciprocal(fd, r)


@dataclass(eq=False)
class OrbitData:
    index: int
    orbit: list  # [f_i, f_i^(r), ..., f_i^(r^(s-1))] as FactorData
    s: int
    u: int
    k: int
    kind: str
    d: int

    @property
    def rep(self) -> FactorData:
        return self.orbit[0]

    @property
    def field(self) -> Field:
        return self.rep.field

    @property
    def alpha(self) -> FieldElem:
        return self.rep.alpha

    @property
    def degree(self) -> int:
        return self.rep.degree

    def to_json(self) -> dict:
        return {"rep_poly": str(self.rep), "s": self.s, "u": self.u, "k": self.k, "kind": self.kind}


def check_group_params(n: int, m: int, r: int, qsize: int) -> None:
    if math.gcd(qsize, n) != 1:
        raise NonCoprime(f"gcd(q={qsize}, n={n}) != 1")
    if n < 2 or m < 1:
        raise BadGroupParams("need n >= 2 and m >= 1")
    if pow(r, m, n) != 1:
        raise BadGroupParams(f"r^m = {pow(r, m, n)} != 1 (mod n)")
    if r % n == 1:
        raise BadGroupParams("r = 1 (mod n) gives an abelian group")
    if math.gcd(r, n) != 1:
        raise BadGroupParams(f"gcd(r={r}, n={n}) != 1")


def classify(s: int, alpha: FieldElem, r: int) -> str:
    """Case split of the summand by orbit size and whether alpha^(r^s) = alpha."""
    fixed = alpha ** (r**s) == alpha
    if s == 1:
        return "group algebra" if fixed else "skew"
    return "matrix group algebra" if fixed else "matrix skew"


@functools.lru_cache(maxsize=None)
def _orbits_cached(n: int, m: int, r: int, Fq: Field) -> tuple:
    check_group_params(n, m, r, Fq.size)
    fac = factor_xn_minus_1(n, Fq)
    qq = Fq.size
    done: set[int] = set()
    out = []
    for fd in fac.factors:  # ordered by smallest coset representative
        if id(fd) in done:
            continue
        orbit = [fd]
        cur = fac.r_reciprocal(fd, r)
        while cur is not fd:
            orbit.append(cur)
            cur = fac.r_reciprocal(cur, r)
        done.update(id(x) for x in orbit)
        s = len(orbit)
        if m % s:
            raise BadGroupParams("orbit size does not divide m")  # pragma: no cover
        d = fd.coset.d
        target = pow(r, s, d) if d > 1 else 0
        k = 0
        if d > 1:
            k = next(k for k in range(mult_order(qq, d)) if pow(qq, k, d) == target)
        kind = classify(s, fd.alpha, r)
        out.append(OrbitData(len(out), orbit, s, m // s, k, kind, d))
    return tuple(out)


def orbits(n: int, m: int, r: int, q) -> list[OrbitData]:
    return list(_orbits_cached(int(n), int(m), int(r) % int(n), _as_field(q)))


def orbit_report(n: int, m: int, r: int, q) -> dict:
    Fq = _as_field(q)
    return {
        "n": n,
        "m": m,
        "r": r,
        "q": Fq.size,
        "orbits": [o.to_json() for o in orbits(n, m, r, Fq)],
    }
