"""Finite fields F_q and extensions F_q[alpha].

Every field is stored flat, as F_p[x]/(M) for a single modulus M over the
prime field.  An element is a little-endian vector of residues mod p of
length ``D``; its integer *code* is ``sum(c_i * p**i)``.  Fields of size up
to ``TABLE_LIMIT`` also carry addition/multiplication tables indexed by code,
which is what :mod:`metacyclic.linalg` and :mod:`metacyclic.poly` use.

An extension ``gf_extension(F_q, f)`` keeps an explicit embedding of F_q and
the change of basis to F_q-coordinates in the power basis of alpha.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from sympy import factorint, isprime

from . import linalg, poly
from .errors import NotMonic, ReducibleModulus, ZeroElement

TABLE_LIMIT = 256


def _reduction_rows(modulus: np.ndarray, p: int) -> np.ndarray:
    """Rows k = x^k mod M for k < 2D - 1, as flat vectors."""
    D = len(modulus) - 1
    rows = np.zeros((max(2 * D - 1, 1), D), dtype=np.int64)
    cur = np.zeros(D, dtype=np.int64)
    cur[0] = 1
    for k in range(rows.shape[0]):
        rows[k] = cur
        lead = cur[-1]
        cur = np.roll(cur, 1)
        cur[0] = 0
        if lead:
            cur = (cur - lead * modulus[:D]) % p
    return rows


class Field:
    """Descriptor of a finite field (the ``FieldDesc`` of the data model).

    Use :func:`base_field` and :func:`gf_extension` rather than calling this
    directly.
    """

    def __init__(
        self,
        p: int,
        modulus,
        *,
        base_modulus=None,
        ext_modulus=None,
        base: "Field | None" = None,
        base_embed=None,
        alpha=None,
        to_base=None,
    ):
        self.p = self.characteristic = int(p)
        self.modulus = np.asarray(modulus, dtype=np.int64)
        self.D = len(self.modulus) - 1
        self.size = self.p**self.D
        self.base_modulus = None if base_modulus is None else poly.trim(base_modulus)
        self.ext_modulus = None if ext_modulus is None else poly.trim(ext_modulus)
        self.base_degree = 1 if self.base_modulus is None else len(self.base_modulus) - 1
        self.q = self.p**self.base_degree
        self.ext_degree = 1 if self.ext_modulus is None else len(self.ext_modulus) - 1
        self.base = self if base is None else base
        red = _reduction_rows(self.modulus, self.p)
        D = self.D
        self.mt = np.zeros((D, D, D), dtype=np.int64)
        for i in range(D):
            for j in range(D):
                self.mt[i, j] = red[i + j]
        self._mt_flat = self.mt.reshape(D * D, D)
        self._mt_float = self._mt_flat.astype(np.float64)
        self.pows = self.p ** np.arange(D, dtype=np.int64)
        if base_embed is None:
            base_embed = self._digits_of(np.arange(self.q))
        self.base_embed = np.asarray(base_embed, dtype=np.int64)
        self.alpha = None if alpha is None else np.asarray(alpha, dtype=np.int64)
        self.to_base = np.eye(D, dtype=np.int64) if to_base is None else np.asarray(to_base)
        if self.size <= TABLE_LIMIT:
            self._build_tables()
        self._frob_cache: dict[int, np.ndarray] = {}

    # -- identity -------------------------------------------------------
    @property
    def key(self) -> tuple:
        return (
            self.p,
            None if self.base_modulus is None else tuple(int(c) for c in self.base_modulus),
            None if self.ext_modulus is None else tuple(int(c) for c in self.ext_modulus),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        if self.ext_modulus is None:
            return f"GF({self.q})"
        return f"GF({self.q})[x]/({poly.to_str(self.ext_modulus)})"

    @property
    def is_base(self) -> bool:
        return self.ext_modulus is None

    # -- codes and tables ---------------------------------------------------
    def _digits_of(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.pows) % self.p

    def from_digits(self, arr) -> np.ndarray:
        return np.asarray(arr, dtype=np.int64) @ self.pows

    def _build_tables(self) -> None:
        n = self.size
        self.digits = self._digits_of(np.arange(n))
        d = self.digits
        self.add = self.from_digits((d[:, None, :] + d[None, :, :]) % self.p)
        self.sub = self.from_digits((d[:, None, :] - d[None, :, :]) % self.p)
        self.neg = self.from_digits((-d) % self.p)
        self.mul = self.from_digits(self.vmul(d[:, None, :], d[None, :, :]))
        inv = np.zeros(n, dtype=np.int64)
        for a in range(1, n):
            inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])
        self.inv = inv

    # -- vector arithmetic on flat residues -------------------------------
    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        outer = a[..., :, None] * b[..., None, :]
        shape = outer.shape[:-2]
        # float matmul uses BLAS and stays exact at these sizes
        flat = outer.reshape(shape + (self.D * self.D,)).astype(np.float64)
        return np.rint(flat @ self._mt_float).astype(np.int64) % self.p

    def vadd(self, a, b) -> np.ndarray:
        return (np.asarray(a) + np.asarray(b)) % self.p

    def vsub(self, a, b) -> np.ndarray:
        return (np.asarray(a) - np.asarray(b)) % self.p

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        result = np.zeros_like(a)
        result[..., 0] = 1
        base = a
        while e:
            if e & 1:
                result = self.vmul(result, base)
            e >>= 1
            if e:
                base = self.vmul(base, base)
        return result

    def vinv(self, a) -> np.ndarray:
        if not np.any(a):
            raise ZeroElement("zero has no inverse")
        return self.vpow(a, self.size - 2)

    def frob_matrix(self, e: int = 1) -> np.ndarray:
        """Matrix of x -> x^(q^e) acting on row vectors."""
        e %= self.ext_degree
        if e not in self._frob_cache:
            if e == 0:
                M = np.eye(self.D, dtype=np.int64)
            elif e == 1:
                M = self.vpow(np.eye(self.D, dtype=np.int64), self.q)
            else:
                M = np.eye(self.D, dtype=np.int64)
                F1 = self.frob_matrix(1)
                for _ in range(e):
                    M = (M @ F1) % self.p
            self._frob_cache[e] = M
        return self._frob_cache[e]

    def vfrob(self, a, e: int = 1) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) @ self.frob_matrix(e)) % self.p

    def zero_vec(self) -> np.ndarray:
        return np.zeros(self.D, dtype=np.int64)

    def one_vec(self) -> np.ndarray:
        v = np.zeros(self.D, dtype=np.int64)
        v[0] = 1
        return v

    def code(self, a) -> int:
        return int(np.asarray(a, dtype=np.int64) @ self.pows)

    # -- F_q coordinates --------------------------------------------------
    def embed(self, codes) -> np.ndarray:
        """Flat images of F_q element codes."""
        return self.base_embed[np.asarray(codes, dtype=np.int64)]

    def to_fq(self, a) -> np.ndarray:
        """F_q codes of the coordinates in the power basis of alpha."""
        a = np.asarray(a, dtype=np.int64)
        dig = (a @ self.to_base) % self.p
        dig = dig.reshape(a.shape[:-1] + (self.ext_degree, self.base_degree))
        return self.base.from_digits(dig)

    @functools.cached_property
    def from_base(self) -> np.ndarray:
        return linalg.inverse(prime_field(self.p), self.to_base)

    def from_fq(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        dig = self.base.digits[codes].reshape(codes.shape[:-1] + (self.D,))
        return (dig @ self.from_base) % self.p

    # -- elements -----------------------------------------------------------
    def elem(self, coeffs) -> "FieldElem":
        v = np.zeros(self.D, dtype=np.int64)
        c = np.asarray(coeffs, dtype=np.int64) % self.p
        v[: len(c)] = c
        return FieldElem(tuple(int(x) for x in v), self)

    def from_code(self, code: int) -> "FieldElem":
        return self.elem(self._digits_of(code))

    def one(self) -> "FieldElem":
        return self.elem([1])

    def zero(self) -> "FieldElem":
        return self.elem([0])

    def gen(self) -> "FieldElem":
        """The adjoined root alpha (the residue of x)."""
        if self.alpha is None:
            return self.one()
        return self.elem(self.alpha)

    def elements(self):
        for c in range(self.size):
            yield self.from_code(c)


@dataclass(frozen=True)
class FieldElem:
    coeffs: tuple
    field: Field

    @property
    def vec(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=np.int64)

    def _wrap(self, v) -> "FieldElem":
        return FieldElem(tuple(int(x) for x in v), self.field)

    def _other(self, other) -> np.ndarray:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("elements from different fields")
            return other.vec
        if isinstance(other, int):
            return self.field.embed(int(other) % self.field.p)
        return NotImplemented

    def __add__(self, other):
        return self._wrap(self.field.vadd(self.vec, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.vsub(self.vec, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.vsub(self._other(other), self.vec))

    def __neg__(self):
        return self._wrap((-self.vec) % self.field.p)

    def __mul__(self, other):
        return self._wrap(self.field.vmul(self.vec, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.field.vpow(self.vec, e))

    def inverse(self) -> "FieldElem":
        return self._wrap(self.field.vinv(self.vec))

    def __truediv__(self, other):
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"{self.field!r}({list(self.coeffs)})"


# ---------------------------------------------------------------------------
# constructors


def _prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, s), = f.items()
    return int(p), int(s)


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> Field:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return Field(p, [0, 1])


def _check_modulus(F: Field, f) -> np.ndarray:
    f = poly.trim(poly.parse(f, F) if isinstance(f, str) else f)
    if len(f) < 2:
        raise ReducibleModulus("modulus must have positive degree")
    if f[-1] != 1:
        raise NotMonic(f"modulus {poly.to_str(f)} is not monic")
    if not poly.is_irreducible(F, f):
        raise ReducibleModulus(f"{poly.to_str(f)} is reducible over GF({F.size})")
    return f


@functools.lru_cache(maxsize=None)
def _base_field_cached(q: int, modulus: tuple | None) -> Field:
    p, s = _prime_power(q)
    Fp = prime_field(p)
    if s == 1:
        return Fp
    if modulus is None:
        g = poly.first_irreducible(Fp, s)
    else:
        g = _check_modulus(Fp, np.asarray(modulus))
        if len(g) - 1 != s:
            raise ValueError(f"modulus degree {len(g) - 1} does not match q = {p}^{s}")
    alpha = np.zeros(s, dtype=np.int64)
    alpha[1] = 1
    return Field(p, g, base_modulus=g, alpha=alpha)


def base_field(q: int, modulus=None) -> Field:
    """F_q; with ``q = p^s`` and no modulus given, the first irreducible is used."""
    key = None if modulus is None else tuple(int(c) for c in poly.trim(poly.parse(modulus)))
    return _base_field_cached(int(q), key)


def gf_extension(Fq: Field, f) -> Field:
    """F_q[x]/(f) for a monic irreducible f over F_q, flattened over F_p."""
    if isinstance(f, str):
        f = poly.parse(f, Fq)
    return _extension_cached(Fq, tuple(int(c) for c in poly.trim(f)))


@functools.lru_cache(maxsize=None)
def _extension_cached(Fq: Field, fkey: tuple) -> Field:
    if not Fq.is_base:
        raise ValueError("extensions are built over a base field only")
    f = _check_modulus(Fq, np.asarray(fkey, dtype=np.int64))
    p, s = Fq.p, Fq.base_degree
    e = len(f) - 1
    Fp = prime_field(p)
    bm = Fq.base_modulus
    if e == 1:
        alpha = Fq.digits[Fq.neg[f[0]]]
        return Field(p, Fq.modulus, base_modulus=bm, ext_modulus=f, base=Fq, alpha=alpha)
    if s == 1:
        alpha = np.zeros(e, dtype=np.int64)
        alpha[1] = 1
        return Field(p, f, ext_modulus=f, base=Fq, alpha=alpha)
    # tower F_p < F_q < F_q[x]/(f): find a primitive element over F_p
    D = s * e

    def two_level_mul(a, b):
        r = poly.mod(Fq, poly.mul(Fq, a, b), f)
        out = np.zeros(e, dtype=np.int64)
        out[: len(r)] = r
        return out

    def flat(a):
        return Fq.digits[a].reshape(D)

    def candidates():
        for c in range(Fq.q):
            t = np.zeros(e, dtype=np.int64)
            t[0], t[1] = c, 1
            yield t
        for code in range(Fq.q**e):
            yield (code // Fq.q ** np.arange(e)) % Fq.q

    for theta in candidates():
        P = np.zeros((D + 1, D), dtype=np.int64)
        cur = np.zeros(e, dtype=np.int64)
        cur[0] = 1
        for k in range(D + 1):
            P[k] = flat(cur)
            cur = two_level_mul(cur, theta)
        if linalg.rank(Fp, P[:D]) < D:
            continue
        Bm = P[:D]
        coef = linalg.solve_left(Fp, Bm, P[D][None, :])[0]
        modulus = np.concatenate([(-coef) % p, [1]])
        Binv = linalg.inverse(Fp, Bm)
        embed = np.zeros((Fq.q, D), dtype=np.int64)
        for c in range(Fq.q):
            t = np.zeros(e, dtype=np.int64)
            t[0] = c
            embed[c] = (flat(t) @ Binv) % p
        a = np.zeros(e, dtype=np.int64)
        a[1] = 1
        alpha = (flat(a) @ Binv) % p
        return Field(
            p,
            modulus,
            base_modulus=bm,
            ext_modulus=f,
            base=Fq,
            base_embed=embed,
            alpha=alpha,
            to_base=Bm,
        )
    raise RuntimeError("no primitive element found")  # pragma: no cover


# ---------------------------------------------------------------------------
# operations on elements


def frobenius(xi: FieldElem, e: int) -> FieldElem:
    """xi^(q^e) by square-and-multiply, q the size of the base field."""
    F = xi.field
    return xi ** (F.q ** (e % F.ext_degree))


def element_order(xi: FieldElem) -> int:
    if xi.is_zero():
        raise ZeroElement("zero has no multiplicative order")
    N = xi.field.size - 1
    t = N
    for ell in factorint(N):
        while t % ell == 0 and (xi ** (t // ell)).coeffs == xi.field.one().coeffs:
            t //= ell
    return t
