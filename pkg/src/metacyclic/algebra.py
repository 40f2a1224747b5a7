"""Group algebra F_q G_{n,m,r}, skew group algebras and their matrix rings.

Group elements are written ``b^j a^i`` and indexed ``j*n + i``.  From the
relation ``ba = a^r b`` one gets ``a^i b^j = b^j a^(i r^-j)``, so

    (b^j a^i)(b^j' a^i') = b^(j+j') a^(i r^-j' + i').

An :class:`AlgebraElement` stores the ``m x n`` array of F_q codes whose row
``j`` holds the coefficients of ``P_j`` in ``sum_j b^j P_j(a)``.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass

import numpy as np

from .errors import OrbitMismatch, ParamMismatch, ParseError, TwistMismatch
from .gf import Field, base_field
from .polyfact import check_group_params


@dataclass(frozen=True)
class GroupParams:
    n: int
    m: int
    r: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % self.n)
        check_group_params(self.n, self.m, self.r, self.q)

    @property
    def field(self) -> Field:
        return base_field(self.q)

    @property
    def order(self) -> int:
        return self.n * self.m

    @functools.cached_property
    def r_inv(self) -> int:
        return pow(self.r, -1, self.n)

    def index(self, j: int, i: int) -> int:
        return (j % self.m) * self.n + (i % self.n)

    def split(self, g: int) -> tuple[int, int]:
        return divmod(g, self.n)

    def product(self, g: int, h: int) -> int:
        return int(_tables(self)[0][g, h])

    def inverse(self, g: int) -> int:
        return int(_tables(self)[1][g])

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "r": self.r, "q": self.q}

    @classmethod
    def from_json(cls, d: dict) -> "GroupParams":
        return cls(int(d["n"]), int(d["m"]), int(d["r"]), int(d["q"]))

    def __str__(self) -> str:
        return f"G({self.n},{self.m},{self.r}) over GF({self.q})"


@functools.lru_cache(maxsize=None)
def _tables(params: GroupParams) -> tuple[np.ndarray, np.ndarray]:
    n, m = params.n, params.m
    rinv = params.r_inv
    rpow = [pow(rinv, j, n) for j in range(m)]
    J, I = np.divmod(np.arange(n * m), n)
    prod = np.empty((n * m, n * m), dtype=np.int64)
    for h in range(n * m):
        jh, ih = divmod(h, n)
        prod[:, h] = ((J + jh) % m) * n + (I * rpow[jh] + ih) % n
    inv = np.empty(n * m, dtype=np.int64)
    for g in range(n * m):
        inv[g] = int(np.flatnonzero(prod[g] == 0)[0])
    return prod, inv


# ---------------------------------------------------------------------------
# group element text


_WORD = re.compile(r"^([ab])(?:\^(-?\d+))?$")


def parse_group_element(params: GroupParams, text: str) -> int:
    """Parse words such as ``a^2*b``, ``b^2*a^3`` or ``e``."""
    s = str(text).replace(" ", "")
    g = 0
    if s in ("", "e", "1"):
        return 0
    for tok in s.split("*"):
        mt = _WORD.match(tok)
        if not mt:
            raise ParseError(f"bad group element token {tok!r}")
        e = int(mt.group(2) or 1)
        h = params.index(0, e) if mt.group(1) == "a" else params.index(e, 0)
        g = params.product(g, h)
    return g


def format_group_element(params: GroupParams, g: int) -> str:
    """Emit ``a^i*b^j`` (the b-power on the right)."""
    j, i = params.split(g)
    i = (i * pow(params.r, j, params.n)) % params.n
    parts = []
    if i:
        parts.append("a" if i == 1 else f"a^{i}")
    if j:
        parts.append("b" if j == 1 else f"b^{j}")
    return "*".join(parts) or "e"


# ---------------------------------------------------------------------------
# group algebra


class AlgebraElement:
    __slots__ = ("coeffs", "params")

    def __init__(self, params: GroupParams, coeffs=None):
        self.params = params
        if coeffs is None:
            c = np.zeros((params.m, params.n), dtype=np.int64)
        else:
            c = np.array(coeffs, dtype=np.int64).reshape(params.m, params.n)
        self.coeffs = c

    # constructors
    @classmethod
    def zero(cls, params):
        return cls(params)

    @classmethod
    def group_element(cls, params, g: int, coeff: int = 1):
        e = cls(params)
        e.coeffs.flat[g] = coeff
        return e

    @classmethod
    def identity(cls, params):
        return cls.group_element(params, 0)

    @classmethod
    def a(cls, params, power: int = 1):
        return cls.group_element(params, params.index(0, power))

    @classmethod
    def b(cls, params, power: int = 1):
        return cls.group_element(params, params.index(power, 0))

    @classmethod
    def all_sum(cls, params):
        return cls(params, np.ones((params.m, params.n), dtype=np.int64))

    @classmethod
    def from_vector(cls, params, v):
        return cls(params, np.asarray(v, dtype=np.int64).reshape(params.m, params.n))

    @classmethod
    def from_right_form(cls, params, rows):
        """Element given as ``sum_j P_j(a) b^j`` (b-powers on the right)."""
        rows = np.asarray(rows, dtype=np.int64).reshape(params.m, params.n)
        out = np.zeros_like(rows)
        n = params.n
        idx = np.arange(n)
        for j in range(params.m):
            out[j, (idx * pow(params.r_inv, j, n)) % n] = rows[j]
        return cls(params, out)

    def to_right_form(self) -> np.ndarray:
        n = self.params.n
        idx = np.arange(n)
        out = np.zeros_like(self.coeffs)
        for j in range(self.params.m):
            out[j] = self.coeffs[j, (idx * pow(self.params.r_inv, j, n)) % n]
        return out

    # arithmetic
    def _check(self, other: "AlgebraElement") -> None:
        if other.params != self.params:
            raise ParamMismatch(f"{self.params} vs {other.params}")

    @property
    def vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def __add__(self, other):
        self._check(other)
        F = self.params.field
        return AlgebraElement(self.params, F.add[self.coeffs, other.coeffs])

    def __sub__(self, other):
        self._check(other)
        F = self.params.field
        return AlgebraElement(self.params, F.sub[self.coeffs, other.coeffs])

    def __neg__(self):
        return AlgebraElement(self.params, self.params.field.neg[self.coeffs])

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self.params, self.params.field.mul[int(c), self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return ga_mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and other.params == self.params
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.params, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __repr__(self) -> str:
        return f"AlgebraElement({self.params}, {self.coeffs.tolist()})"

    def __str__(self) -> str:
        terms = []
        for g in np.flatnonzero(self.vector):
            c = int(self.vector[g])
            word = format_group_element(self.params, int(g))
            terms.append(word if c == 1 else f"{c}*{word}")
        return " + ".join(terms) or "0"

    def to_json(self) -> dict:
        return {"params": self.params.to_json(), "rows": self.coeffs.tolist()}

    @classmethod
    def from_json(cls, d: dict, params: GroupParams | None = None):
        p = GroupParams.from_json(d["params"]) if "params" in d else params
        if p is None:
            raise ParseError("element JSON without params")
        rows = np.asarray(d["rows"], dtype=np.int64)
        if rows.shape != (p.m, p.n):
            raise ParseError(f"rows must be {p.m}x{p.n}, got {rows.shape}")
        return cls(p, rows)


def ga_mul(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Product in F_q G, distributing the products of basis elements."""
    u._check(v)
    params = u.params
    return AlgebraElement(params, ga_mul_vectors(params, u.vector, v.vector))


def ga_mul_vectors(params: GroupParams, U, V) -> np.ndarray:
    """Batched product of coefficient vectors (..., nm) x (..., nm)."""
    F = params.field
    prod, _ = _tables(params)
    nm = params.order
    U = np.asarray(U, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    Ud, Vd = F.digits[U], F.digits[V]
    batch = np.broadcast_shapes(U.shape[:-1], V.shape[:-1])
    outer = Ud[..., :, None, :, None] * Vd[..., None, :, None, :]  # (.., g, h, a, b)
    vals = np.einsum("...ghab,abc->...ghc", outer, F.mt) % F.p
    vals = np.broadcast_to(vals, batch + (nm, nm, F.D)).reshape(-1, nm * nm, F.D)
    acc = np.swapaxes(vals, 1, 2).astype(np.float64) @ _scatter(params)
    out = np.swapaxes(np.rint(acc).astype(np.int64) % F.p, 1, 2)
    return F.from_digits(out).reshape(batch + (nm,))


@functools.lru_cache(maxsize=None)
def _scatter(params: GroupParams) -> np.ndarray:
    prod, _ = _tables(params)
    nm = params.order
    S = np.zeros((nm * nm, nm))
    S[np.arange(nm * nm), prod.reshape(-1)] = 1.0
    return S


def star(u: AlgebraElement) -> AlgebraElement:
    """The anti-automorphism sum u_g g -> sum u_(g^-1) g."""
    _, inv = _tables(u.params)
    return AlgebraElement.from_vector(u.params, u.vector[inv])


def weight(u: AlgebraElement) -> int:
    return int(np.count_nonzero(u.coeffs))


def left_mul_permutation(params: GroupParams, g: int) -> np.ndarray:
    """perm with (g*x)_perm[h] = x_h, i.e. g * h = perm[h]."""
    prod, _ = _tables(params)
    return prod[g]


def left_translate(params: GroupParams, g: int, vecs) -> np.ndarray:
    """Coefficient vectors of g*x for each row x."""
    vecs = np.asarray(vecs, dtype=np.int64)
    out = np.zeros_like(vecs)
    out[..., left_mul_permutation(params, g)] = vecs
    return out


def all_left_translates(params: GroupParams, vecs, elements=None) -> np.ndarray:
    """Rows g*x for g in ``elements`` (default: all of G) and x in ``vecs``."""
    prod, _ = _tables(params)
    vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, params.order)
    perms = prod if elements is None else prod[list(elements)]
    out = np.zeros((len(perms), vecs.shape[0], params.order), dtype=np.int64)
    out[np.arange(len(perms))[:, None, None], np.arange(vecs.shape[0])[None, :, None], perms[:, None, :]] = vecs[None]
    return out.reshape(-1, params.order)


def right_translate(params: GroupParams, g: int, vecs) -> np.ndarray:
    prod, _ = _tables(params)
    vecs = np.asarray(vecs, dtype=np.int64)
    out = np.zeros_like(vecs)
    out[..., prod[:, g]] = vecs
    return out


# ---------------------------------------------------------------------------
# skew group algebra K *_theta <h> and matrix rings over it


class SkewRing:
    """K *_theta C_u with theta(h) = (x -> x^(q^k)); elements are (u, D) arrays.

    Coefficients are on the left: row z is the coefficient of h^z in
    ``sum_z lambda_z h^z``, so ``h^z lambda = theta^z(lambda) h^z``.
    """

    def __init__(self, field: Field, u: int, k: int):
        self.field = field
        self.u = u
        self.k = k
        D = field.D
        self.theta = np.stack([field.frob_matrix(k * z) for z in range(u)]) if u else None
        self.theta_inv = np.stack([field.frob_matrix(-k * z) for z in range(u)])
        self.D = D

    @property
    def key(self):
        return (self.field, self.u, self.k)

    def same(self, other: "SkewRing") -> bool:
        return self.key == other.key

    def zero(self, shape=()) -> np.ndarray:
        return np.zeros(shape + (self.u, self.D), dtype=np.int64)

    def one(self, shape=()) -> np.ndarray:
        x = self.zero(shape)
        x[..., 0, 0] = 1
        return x

    def h(self) -> np.ndarray:
        x = self.zero()
        x[1 % self.u, 0] = 1
        return x

    def scalar(self, lam) -> np.ndarray:
        x = self.zero()
        x[0] = lam
        return x

    def add(self, x, y):
        return (x + y) % self.field.p

    def sub(self, x, y):
        return (x - y) % self.field.p

    def twist(self, y) -> np.ndarray:
        """theta^z applied to y for every z: (..., u_z, u_w, D)."""
        return np.einsum("...wi,zij->...zwj", y, self.theta) % self.field.p

    def _fold(self, P) -> np.ndarray:
        # P[..., z, w, :] is the coefficient of h^(z+w)
        out = np.zeros(P.shape[:-3] + (self.u, self.D), dtype=np.int64)
        for z in range(self.u):
            out += np.roll(P[..., z, :, :], z, axis=-2)
        return out % self.field.p

    def mul(self, x, y) -> np.ndarray:
        F = self.field
        xm = np.einsum("...zi,ijk->...zjk", x, F.mt)  # multiplication matrices
        P = np.einsum("...zjk,...zwj->...zwk", xm, self.twist(y)) % F.p
        return self._fold(P)

    def matmul(self, X, Y) -> np.ndarray:
        """Matrix product for (..., s, s, u, D) arrays."""
        F = self.field
        xm = np.einsum("...ltzi,ijk->...ltzjk", X, F.mt) % F.p
        Yt = self.twist(Y)  # (..., t, c, z, w, D)
        P = np.einsum("...ltzjk,...tczwj->...lczwk", xm, Yt, optimize=True) % F.p
        return self._fold(P)

    def identity_block(self, s: int) -> np.ndarray:
        X = self.zero((s, s))
        for l in range(s):
            X[l, l, 0, 0] = 1
        return X

    def block_pow(self, X, e: int) -> np.ndarray:
        s = X.shape[-4]
        result = self.identity_block(s)
        base = X
        while e:
            if e & 1:
                result = self.matmul(result, base)
            e >>= 1
            if e:
                base = self.matmul(base, base)
        return result

    def left_scalar(self, lam, X) -> np.ndarray:
        """lam * X for lam in K (flat vector), entrywise on the left."""
        return self.field.vmul(np.asarray(lam)[None, :], X)

    def to_right_coeffs(self, x) -> np.ndarray:
        """Coefficients mu_z of ``sum_z h^z mu_z`` for the same element."""
        return np.einsum("...zi,zij->...zj", x, self.theta_inv) % self.field.p


@dataclass(frozen=True, eq=False)
class SkewElement:
    coeffs: np.ndarray  # (u, D)
    ring: SkewRing

    @property
    def twist(self) -> int:
        return self.ring.k

    @property
    def field(self) -> Field:
        return self.ring.field

    def _check(self, other):
        if not self.ring.same(other.ring):
            raise TwistMismatch("skew elements over different twisted rings")

    def __add__(self, other):
        self._check(other)
        return SkewElement(self.ring.add(self.coeffs, other.coeffs), self.ring)

    def __sub__(self, other):
        self._check(other)
        return SkewElement(self.ring.sub(self.coeffs, other.coeffs), self.ring)

    def __mul__(self, other):
        return skew_mul(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, SkewElement)
            and self.ring.same(other.ring)
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def is_zero(self) -> bool:
        return not self.coeffs.any()


def skew_mul(x: SkewElement, y: SkewElement) -> SkewElement:
    x._check(y)
    return SkewElement(x.ring.mul(x.coeffs, y.coeffs), x.ring)


@dataclass(frozen=True, eq=False)
class BlockElement:
    entries: np.ndarray  # (s, s, u, D)
    ring: SkewRing
    orbit: object = None  # OrbitData of the summand

    @property
    def s(self) -> int:
        return self.entries.shape[0]

    def _check(self, other):
        if self.orbit is not other.orbit or not self.ring.same(other.ring):
            raise OrbitMismatch("block elements from different summands")
        if self.entries.shape != other.entries.shape:
            raise OrbitMismatch("block shapes differ")

    def entry(self, l: int, c: int) -> SkewElement:
        return SkewElement(self.entries[l, c], self.ring)

    def __add__(self, other):
        self._check(other)
        return BlockElement(self.ring.add(self.entries, other.entries), self.ring, self.orbit)

    def __sub__(self, other):
        self._check(other)
        return BlockElement(self.ring.sub(self.entries, other.entries), self.ring, self.orbit)

    def __mul__(self, other):
        return block_mul(self, other)

    def __pow__(self, e: int):
        return BlockElement(self.ring.block_pow(self.entries, e), self.ring, self.orbit)

    def __eq__(self, other):
        return (
            isinstance(other, BlockElement)
            and self.orbit is other.orbit
            and bool(np.array_equal(self.entries, other.entries))
        )

    def is_zero(self) -> bool:
        return not self.entries.any()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.entries, self.ring.identity_block(self.s)))


def block_mul(X: BlockElement, Y: BlockElement) -> BlockElement:
    X._check(Y)
    return BlockElement(X.ring.matmul(X.entries, Y.entries), X.ring, X.orbit)


def parse_algebra_element(params: GroupParams, text: str) -> AlgebraElement:
    """Parse sums such as ``e + a + 2*b*a^3`` (a leading integer is a coefficient)."""
    F = params.field
    out = AlgebraElement.zero(params)
    s = str(text).replace(" ", "")
    if s in ("", "0"):
        return out
    for term in s.split("+"):
        toks = term.split("*")
        coeff = 1
        if toks[0].isdigit():
            coeff = int(toks[0])
            toks = toks[1:]
            if coeff >= F.size:
                raise ParseError(f"coefficient {coeff} outside GF({F.size})")
        g = parse_group_element(params, "*".join(toks))
        out.coeffs.flat[g] = F.add[out.coeffs.flat[g], coeff]
    return out
