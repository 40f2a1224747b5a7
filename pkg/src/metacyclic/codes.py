"""Metacyclic codes: left ideals of F_q G_{n,m,r} and their block structure.

A code is stored by an F_q-basis in reduced row echelon form.  Under the
decomposition each code becomes a tuple of submodules ``L_i`` of ``R_i^s_i``;
a :class:`SubmoduleCode` keeps ``L_i`` as an F_q-basis of row vectors in
*left* coordinates: position ``(l, z)`` of a row holds ``lambda_z`` of the
entry ``sum_z lambda_z h^z`` in column ``l``, written in the power basis of
alpha_i.  Left coordinates make ``coord(L_i)`` linear over F_q[alpha_i].
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import lincode, linalg, poly
from .algebra import AlgebraElement, GroupParams, all_left_translates, left_translate, right_translate, star
from .errors import BudgetExceeded, EmptyCode, NotAnIdeal, ParamMismatch, ParseError, ShapeMismatch, ZeroCode
from .polyfact import OrbitData
from .wedderburn import Decomposition, build_decomposition


class MetacyclicCode:
    """A left (or, after :func:`star_code`, right) ideal of F_q G."""

    def __init__(self, params: GroupParams, basis, *, check: bool = True, side: str = "left"):
        self.params = params
        self.side = side
        F = params.field
        self.basis = linalg.row_space(F, linalg.as_matrix(basis, params.order), params.order)
        self._decomposition = None
        if check and not self.is_ideal():
            raise NotAnIdeal(f"span is not a {side} ideal")

    # -- basics -----------------------------------------------------------
    @property
    def field(self):
        return self.params.field

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def length(self) -> int:
        return self.params.order

    @classmethod
    def zero(cls, params):
        return cls(params, np.zeros((0, params.order), dtype=np.int64), check=False)

    @classmethod
    def full(cls, params):
        return cls(params, np.eye(params.order, dtype=np.int64), check=False)

    def elements(self) -> list[AlgebraElement]:
        return [AlgebraElement.from_vector(self.params, v) for v in self.basis]

    def translates(self) -> np.ndarray:
        """Images of the basis under left (right) multiplication by a and b."""
        p = self.params
        move = left_translate if self.side == "left" else right_translate
        a, b = p.index(0, 1), p.index(1, 0)
        return np.vstack([move(p, a, self.basis), move(p, b, self.basis)])

    def is_ideal(self) -> bool:
        if self.dim == 0:
            return True
        return linalg.contains(self.field, self.basis, self.translates())

    def contains(self, other) -> bool:
        if isinstance(other, MetacyclicCode):
            self._same(other)
            W = other.basis
        elif isinstance(other, AlgebraElement):
            W = other.vector[None, :]
        else:
            W = linalg.as_matrix(other, self.length)
        return linalg.contains(self.field, self.basis, W) if self.dim else not np.any(W)

    def _same(self, other) -> None:
        if other.params != self.params:
            raise ParamMismatch(f"{self.params} vs {other.params}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MetacyclicCode)
            and other.params == self.params
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.params, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"MetacyclicCode({self.params}, dim={self.dim})"

    def random_codewords(self, rng, count: int) -> np.ndarray:
        F = self.field
        msg = rng.integers(0, F.size, (count, self.dim))
        return linalg.matmul(F, msg, self.basis) if self.dim else np.zeros((count, self.length), dtype=np.int64)

    # -- derived codes --------------------------------------------------------
    def dual(self) -> "MetacyclicCode":
        """Euclidean dual; again a left ideal because G permutes coordinates."""
        F = self.field
        if self.dim == 0:
            return MetacyclicCode.full(self.params)
        return MetacyclicCode(self.params, linalg.nullspace(F, self.basis), check=False, side=self.side)

    def intersect(self, other: "MetacyclicCode") -> "MetacyclicCode":
        self._same(other)
        return MetacyclicCode(self.params, linalg.intersect(self.field, self.basis, other.basis), check=False)

    def __add__(self, other: "MetacyclicCode") -> "MetacyclicCode":
        self._same(other)
        return MetacyclicCode(self.params, np.vstack([self.basis, other.basis]), check=False)

    @property
    def decomposition(self) -> list:
        if self._decomposition is None:
            self._decomposition = decompose_code(self)
        return self._decomposition

    # -- serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "basis": [{"rows": v.reshape(self.params.m, self.params.n).tolist()} for v in self.basis],
        }

    @classmethod
    def from_json(cls, d: dict, *, check: bool = True) -> "MetacyclicCode":
        try:
            params = GroupParams.from_json(d["params"])
            rows = [AlgebraElement.from_json(e, params).vector for e in d.get("basis", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad code file: {exc}") from exc
        basis = np.array(rows, dtype=np.int64).reshape(-1, params.order)
        return cls(params, basis, check=check)


def star_code(C: MetacyclicCode) -> MetacyclicCode:
    """Image under the anti-automorphism: left ideals become right ideals."""
    rows = np.array([star(e).vector for e in C.elements()], dtype=np.int64).reshape(-1, C.length)
    side = "right" if C.side == "left" else "left"
    return MetacyclicCode(C.params, rows, check=False, side=side)


def ideal_from_generators(params: GroupParams, gens) -> MetacyclicCode:
    """Smallest left ideal containing ``gens``."""
    F = params.field
    vecs = []
    for g in gens:
        if isinstance(g, AlgebraElement):
            if g.params != params:
                raise ParamMismatch(f"{g.params} vs {params}")
            vecs.append(g.vector)
        else:
            vecs.append(np.asarray(g, dtype=np.int64).reshape(-1))
    B = linalg.row_space(F, linalg.as_matrix(np.array(vecs).reshape(-1, params.order), params.order))
    if B.shape[0]:
        B = linalg.row_space(F, all_left_translates(params, B))
    return MetacyclicCode(params, B, check=False)


# ---------------------------------------------------------------------------
# submodules


@dataclass(eq=False)
class SubmoduleCode:
    """A left R_i-submodule of R_i^s_i with an F_q-basis in left coordinates."""

    orbit: OrbitData
    ring: object  # SkewRing
    basis: np.ndarray  # (dim, s*u*deg) F_q codes, RREF
    closed: bool = False  # basis known to span a submodule

    @property
    def s(self) -> int:
        return self.orbit.s

    @property
    def u(self) -> int:
        return self.orbit.u

    @property
    def degree(self) -> int:
        return self.orbit.degree

    @property
    def width(self) -> int:
        return self.s * self.u * self.degree

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def kdim(self) -> int:
        """Dimension of coord(L_i) over F_q[alpha_i]."""
        return self.dim // self.degree

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.width

    @property
    def rows(self) -> np.ndarray:
        """Basis rows as flat K vectors, shape (dim, s, u, D)."""
        K = self.orbit.field
        return K.from_fq(self.basis.reshape(self.dim, self.s, self.u, self.degree))

    @property
    def support(self) -> list[int]:
        blocks = self.basis.reshape(self.dim, self.s, self.u * self.degree)
        return [l for l in range(self.s) if blocks[:, l].any()]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubmoduleCode)
            and other.orbit is self.orbit
            and np.array_equal(self.basis, other.basis)
        )

    def symbol_distance(self) -> int:
        """Minimum distance of coord(L_i) over F_q[alpha_i] (length s*u)."""
        return symbol_distance(self.orbit.field.base, self.basis, self.s * self.u, self.degree)

    def to_json(self) -> dict:
        return {
            "orbit": self.orbit.index,
            "dim": self.dim,
            "support": self.support,
            "basis": self.basis.tolist(),
        }


def _to_coords(K, rows) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    return K.to_fq(rows).reshape(rows.shape[0], -1)


def module_closure(orbit: OrbitData, ring, rows) -> SubmoduleCode:
    """R_i-submodule generated by ``rows`` (flat K vectors of shape (N, s, u, D)).

    The K-span of the rows, then the span of its h-shifts; the second step
    keeps K-closure because h^z K = K h^z.
    """
    K = orbit.field
    Fq = K.base
    width = orbit.s * orbit.u * orbit.degree
    X = np.asarray(rows, dtype=np.int64).reshape(-1, orbit.s, orbit.u, K.D)
    powers = [K.one_vec()]
    for _ in range(orbit.degree - 1):
        powers.append(K.vmul(powers[-1], orbit.alpha.vec))
    moved = K.vmul(np.array(powers)[:, None, None, None, :], X[None])
    B = linalg.row_space(Fq, _to_coords(K, moved.reshape(-1, orbit.s, orbit.u, K.D)), width)
    if orbit.u > 1 and B.shape[0]:
        Y = K.from_fq(B.reshape(-1, orbit.s, orbit.u, orbit.degree))
        shifts = [Y]
        for _ in range(orbit.u - 1):
            shifts.append(np.roll((shifts[-1] @ ring.theta[1]) % K.p, 1, axis=-2))
        B = linalg.row_space(Fq, _to_coords(K, np.concatenate(shifts)), width)
    return SubmoduleCode(orbit, ring, B, closed=True)


def zero_submodule(dec: Decomposition, i: int) -> SubmoduleCode:
    sm = dec.summands[i]
    width = sm.s * sm.u * sm.orbit.degree
    return SubmoduleCode(sm.orbit, sm.ring, np.zeros((0, width), dtype=np.int64), closed=True)


def full_submodule(dec: Decomposition, i: int) -> SubmoduleCode:
    sm = dec.summands[i]
    width = sm.s * sm.u * sm.orbit.degree
    return SubmoduleCode(sm.orbit, sm.ring, np.eye(width, dtype=np.int64), closed=True)


def decompose_code(C: MetacyclicCode) -> list[SubmoduleCode]:
    if C.side != "left" or not C.is_ideal():
        raise NotAnIdeal("decomposition needs a left ideal")
    dec = build_decomposition(C.params)
    if C.dim == 0:
        return [zero_submodule(dec, i) for i in range(len(dec.summands))]
    # rows of a left ideal of M_s(R_i) already form a submodule
    out = []
    for sm, X in zip(dec.summands, dec.tau_vectors(C.basis)):
        width = sm.s * sm.u * sm.orbit.degree
        B = linalg.row_space(sm.field.base, _to_coords(sm.field, X.reshape(-1, sm.s, sm.u, sm.field.D)), width)
        out.append(SubmoduleCode(sm.orbit, sm.ring, B, closed=True))
    return out


def code_from_submodules(params: GroupParams, mods) -> MetacyclicCode:
    """tau^-1 of the direct sum of the ideals I_{s_i}(L_i)."""
    dec = build_decomposition(params)
    mods = list(mods)
    if len(mods) != len(dec.summands):
        raise ShapeMismatch(f"expected {len(dec.summands)} submodules, got {len(mods)}")
    closed = []
    for sm, L in zip(dec.summands, mods):
        if L.basis.shape[1:] != (sm.s * sm.u * sm.orbit.degree,):
            raise ShapeMismatch(f"submodule {sm.orbit.index} has the wrong width")
        closed.append(module_closure(sm.orbit, sm.ring, L.rows) if L.dim and not L.closed else L)
    total = sum(sm.s * L.dim for sm, L in zip(dec.summands, closed))
    if total == 0:
        return MetacyclicCode.zero(params)
    blocks = []
    start = 0
    for sm, L in zip(dec.summands, closed):
        X = np.zeros((total,) + sm.shape, dtype=np.int64)
        rows = L.rows
        for l in range(sm.s):
            X[start : start + L.dim, l] = rows
            start += L.dim
        blocks.append(X)
    V = dec.tau_inverse_vectors(blocks)
    C = MetacyclicCode(params, V, check=False)
    C._decomposition = closed
    return C


def random_submodule(orbit: OrbitData, ring, rng, max_rows: int = 2) -> SubmoduleCode:
    """Closure of a few random rows; each row is (rho * v) for random rho, v."""
    K = orbit.field
    s, u = orbit.s, orbit.u
    rows = []
    for _ in range(int(rng.integers(0, max_rows + 1))):
        v = rng.integers(0, K.p, (s, u, K.D))
        v[rng.random(s) < 0.3] = 0
        rho = rng.integers(0, K.p, (u, K.D))
        rho[rng.random(u) < 0.5] = 0
        rows.append(np.stack([ring.mul(rho, v[l]) for l in range(s)]))
    if not rows:
        return SubmoduleCode(orbit, ring, np.zeros((0, s * u * orbit.degree), dtype=np.int64))
    return module_closure(orbit, ring, np.array(rows))


def random_submodule_tuple(params: GroupParams, rng, max_rows: int = 2) -> list[SubmoduleCode]:
    dec = build_decomposition(params)
    return [random_submodule(sm.orbit, sm.ring, rng, max_rows) for sm in dec.summands]


def random_ideal(params: GroupParams, rng, max_rows: int = 2) -> MetacyclicCode:
    return code_from_submodules(params, random_submodule_tuple(params, rng, max_rows))


# ---------------------------------------------------------------------------
# distances


def symbol_distance(F, basis, nsym: int, width: int) -> int:
    """Distance of an F_q-linear code read as ``nsym`` symbols of ``width`` digits.

    A nonzero word is supported inside S iff the generator restricted to the
    complement of S loses rank, so the distance is the smallest such |S|.
    """
    G = linalg.as_matrix(basis)
    k = G.shape[0]
    if k == 0:
        raise EmptyCode("zero code")
    cols = G.reshape(k, nsym, width)
    for size in range(1, nsym + 1):
        for S in itertools.combinations(range(nsym), size):
            rest = [t for t in range(nsym) if t not in S]
            if not rest or linalg.rank(F, cols[:, rest].reshape(k, -1)) < k:
                return size
    return nsym  # pragma: no cover


def min_distance_exact(C: MetacyclicCode, budget: int | None = None) -> int:
    if C.dim == 0:
        raise EmptyCode("the zero code has no minimum distance")
    return lincode.min_distance(C.field, C.basis, budget)


def cyclic_generator_matrix(F, g, n: int) -> np.ndarray:
    g = poly.trim(g)
    k = n - (len(g) - 1)
    G = np.zeros((max(k, 0), n), dtype=np.int64)
    for t in range(k):
        G[t, t : t + len(g)] = g
    return G


@functools.lru_cache(maxsize=None)
def _cyclic_distance(F, n: int, g: tuple, dual: bool, budget: int | None) -> int | None:
    G = cyclic_generator_matrix(F, np.array(g, dtype=np.int64), n)
    if dual:
        G = linalg.nullspace(F, G, n) if G.shape[0] else np.eye(n, dtype=np.int64)
    if G.shape[0] == 0:
        return None
    return lincode.min_distance(F, G, budget)


def cyclic_distance(F, g, n: int, *, dual: bool = False, budget: int | None = None) -> int | None:
    """Distance of the cyclic code (g) of length n (or of its dual); None for the zero code."""
    return _cyclic_distance(F, n, tuple(int(c) for c in poly.trim(g)), dual, budget)


def inner_generator(params: GroupParams, factors) -> np.ndarray:
    """(x^n - 1) / prod(factors)."""
    F = params.field
    prod = np.array([1], dtype=np.int64)
    for f in factors:
        prod = poly.mul(F, prod, f)
    quo, rem = poly.divmod_(F, poly.x_n_minus_1(F, params.n), prod)
    assert not poly.trim(rem).size
    return poly.trim(quo)


def _included(mods) -> list:
    return [(i, L) for i, L in enumerate(mods) if L.dim]


def _support_factors(L: SubmoduleCode) -> list:
    return [L.orbit.orbit[l].f for l in L.support]


@dataclass
class DistanceBound:
    value: int
    certificate: list
    orbits: list  # per included orbit: index, support, d_i, V_i generator
    expanded: int | None = None  # same bound with d_i over F_q digits

    def to_json(self) -> dict:
        out = {"value": self.value, "steps": self.certificate, "orbits": self.orbits}
        if self.expanded is not None:
            out["expanded"] = self.expanded
        return out


def _bound_from(params, entries, budget) -> tuple[int, list]:
    entries = sorted(entries, key=lambda e: e[0])
    steps = []
    factors: list = []
    best = None
    for j, (d_i, i, facs) in enumerate(entries):
        factors.extend(facs)
        g = inner_generator(params, factors)
        dv = cyclic_distance(params.field, g, params.n, budget=budget)
        prod = d_i * dv
        steps.append({"orbits": [e[1] for e in entries[: j + 1]], "d_i": d_i, "d_V": dv, "product": prod})
        best = prod if best is None else min(best, prod)
    return best, steps


def min_distance_bound(C: MetacyclicCode, budget: int | None = None, *, verbose: bool = False) -> DistanceBound:
    """Lower bound min_j d_{i_j} * d(V_{i_1} + ... + V_{i_j}) with d_i sorted."""
    if C.dim == 0:
        raise ZeroCode("bound needs a nonzero code")
    params = C.params
    inc = _included(C.decomposition)
    entries, info = [], []
    for i, L in inc:
        d_i = L.symbol_distance()
        facs = _support_factors(L)
        entries.append((d_i, i, facs))
        info.append(
            {
                "orbit": i,
                "support": L.support,
                "d_i": d_i,
                "V_generator": poly.to_str(inner_generator(params, facs)),
            }
        )
    value, steps = _bound_from(params, entries, budget)
    out = DistanceBound(value, steps, info)
    if verbose:
        expanded = []
        for (d_i, i, facs), (_, L) in zip(entries, inc):
            expanded.append((lincode.min_distance(params.field, L.basis, budget), i, facs))
        out.expanded = _bound_from(params, expanded, budget)[0]
    return out


# ---------------------------------------------------------------------------
# generalized concatenated structure


def gc_layout(s: int, u: int) -> np.ndarray:
    """Where row k of the rearranged matrix comes from, per column.

    ``layout[k, l] = (c, e)``: entry ``P_k(alpha^(r^((l+k) mod s)))`` sits in row l,
    column c of the block, as the coefficient of h^e (h-power on the left).
    """
    m = s * u
    out = np.zeros((m, s, 2), dtype=np.int64)
    for k in range(m):
        z, t = divmod(k, s)
        for l in range(s):
            c = (l + t) % s
            w = 1 if c < l else 0
            out[k, l] = (c, (z + w) % u)
    return out


@dataclass(eq=False)
class GCView:
    code: MetacyclicCode
    orbits: list  # included orbit indices
    outer: list  # SubmoduleCode per included orbit
    inner_generator: np.ndarray
    layouts: dict = field(default_factory=dict)

    @property
    def params(self) -> GroupParams:
        return self.code.params

    @property
    def inner_dim(self) -> int:
        return self.params.n - (len(self.inner_generator) - 1)

    @property
    def outer_dims(self) -> list[int]:
        """F_q-dimension of the space of rearranged matrices of each orbit."""
        return [L.s * L.dim for L in self.outer]

    def outer_encode(self, V) -> dict:
        """Per included orbit, the rearranged (N, m, s, D) value matrices."""
        dec = build_decomposition(self.params)
        blocks = dec.tau_vectors(np.asarray(V).reshape(-1, self.params.order))
        out = {}
        for i in self.orbits:
            sm = dec.summands[i]
            R = sm.ring.to_right_coeffs(blocks[i])  # (N, s, s, u, D)
            lay = self.layouts[i]
            E = np.zeros((R.shape[0], self.params.m, sm.s, sm.field.D), dtype=np.int64)
            for k in range(self.params.m):
                for l in range(sm.s):
                    c, e = lay[k, l]
                    E[:, k, l] = R[:, l, c, e]
            out[i] = E
        return out

    def inner_recover(self, mats: dict) -> np.ndarray:
        """Rebuild each P_k from its values (the CRT step)."""
        dec = build_decomposition(self.params)
        evs = []
        for i, sm in enumerate(dec.summands):
            if i not in mats:
                evs.append(None)
                continue
            E = mats[i]
            ev = np.zeros_like(E)
            for k in range(self.params.m):
                for l in range(sm.s):
                    ev[:, k, (l + k) % sm.s] = E[:, k, l]
            evs.append(ev)
        if all(ev is None for ev in evs):
            raise ZeroCode("nothing to recover")
        return dec.from_evaluations(evs)

    def column_in_outer(self, mats: dict) -> bool:
        """Every column of every rearranged matrix, put back in left
        coordinates and block order, lies in L_i."""
        dec = build_decomposition(self.params)
        for i, L in zip(self.orbits, self.outer):
            sm = dec.summands[i]
            E = mats[i]
            lay = self.layouts[i]
            for l in range(sm.s):
                row = np.zeros((E.shape[0], sm.s, sm.u, sm.field.D), dtype=np.int64)
                for k in range(self.params.m):
                    c, e = lay[k, l]
                    row[:, c, e] = E[:, k, l] @ sm.ring.theta[e] % sm.field.p
                coords = _to_coords(sm.field, row)
                if not linalg.contains(self.params.field, L.basis, coords):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "inner_generator": poly.to_str(self.inner_generator),
            "inner_dim": self.inner_dim,
            "orbits": self.orbits,
            "outer_dims": self.outer_dims,
        }


def gc_view(C: MetacyclicCode) -> GCView:
    if C.dim == 0:
        raise ZeroCode("GC view needs a nonzero code")
    inc = _included(C.decomposition)
    facs = [f for _, L in inc for f in _support_factors(L)]
    g = inner_generator(C.params, facs)
    view = GCView(C, [i for i, _ in inc], [L for _, L in inc], g)
    view.layouts = {i: gc_layout(L.s, L.u) for i, L in inc}
    return view


# ---------------------------------------------------------------------------
# dual low-weight census


def _trace_gram(orbit: OrbitData) -> np.ndarray:
    """T[a, b] = Tr(alpha^(a+b)) over F_q, as F_q codes."""
    K = orbit.field
    deg = orbit.degree
    pw = [K.one_vec()]
    for _ in range(2 * deg - 2):
        pw.append(K.vmul(pw[-1], orbit.alpha.vec))
    tr = []
    for x in pw:
        acc = K.zero_vec()
        for e in range(deg):
            acc = K.vadd(acc, K.vfrob(x, e))
        tr.append(int(K.to_fq(acc)[0]))
    return np.array([[tr[a + b] for b in range(deg)] for a in range(deg)], dtype=np.int64)


def symbol_dual(L: SubmoduleCode) -> np.ndarray:
    """F_q-basis of the F_q[alpha_i]-dual of coord(L_i) (the trace dual)."""
    Fq = L.orbit.field.base
    T = _trace_gram(L.orbit)
    nsym = L.s * L.u
    if L.dim == 0:
        return np.eye(L.width, dtype=np.int64)
    X = L.basis.reshape(L.dim, nsym, L.degree)
    M = linalg.matmul(Fq, X, T).reshape(L.dim, -1)
    return linalg.nullspace(Fq, M)


@dataclass
class AttackReport:
    threshold: int | None  # None: no finite threshold
    parts: dict
    count: int
    exact: bool
    verdict: str
    min_count: int

    def to_json(self) -> dict:
        return {
            "threshold": self.threshold,
            "parts": self.parts,
            "count": self.count,
            "exact": self.exact,
            "verdict": self.verdict,
            "min_count": self.min_count,
        }


def attack_feasibility(C: MetacyclicCode, budget: int | None = None, min_count: int | None = None) -> AttackReport:
    """Count dual words of weight below min_i{d(coord(L_i)^perp), 2 d(V^perp)}.

    The condition counts as met when at least ``min_count`` (default nm)
    such words exist.
    """
    if C.dim == 0:
        raise ZeroCode("census needs a nonzero code")
    params = C.params
    F = params.field
    min_count = params.order if min_count is None else min_count
    view = gc_view(C)
    dual_d = {}
    for i, L in zip(view.orbits, view.outer):
        Dual = symbol_dual(L)
        dual_d[i] = symbol_distance(F, Dual, L.s * L.u, L.degree) if Dual.shape[0] else None
    dv = cyclic_distance(F, view.inner_generator, params.n, dual=True, budget=budget)
    cands = [d for d in dual_d.values() if d is not None]
    if dv is not None:
        cands.append(2 * dv)
    t = min(cands) if cands else None
    dual = C.dual()
    below = C.length + 1 if t is None else t
    try:
        count, exact = lincode.low_weight_words(F, dual.basis, below, budget)
    except BudgetExceeded:
        count, exact = 0, False
    if count >= min_count:
        verdict = "met"
    elif exact:
        verdict = "not met"
    else:
        verdict = "inconclusive"
    parts = {"outer_dual": {str(i): d for i, d in dual_d.items()}, "inner_dual": dv}
    return AttackReport(t, parts, count, exact, verdict, min_count)


# ---------------------------------------------------------------------------
# analysis report


def analyze(C: MetacyclicCode, budget: int | None = None) -> dict:
    if C.dim == 0:
        raise ZeroCode("analysis needs a nonzero code")
    report = {"params": C.params.to_json(), "dim": C.dim}
    try:
        report["d_exact"] = min_distance_exact(C, budget)
    except BudgetExceeded as exc:
        report["d_exact"] = None
        report["d_upper"] = exc.best
    bound = min_distance_bound(C, budget)
    report["d_bound"] = bound.value
    report["bound_certificate"] = bound.to_json()
    report["submodules"] = [
        {k: v for k, v in L.to_json().items() if k != "basis"} for L in C.decomposition
    ]
    report["gc"] = gc_view(C).to_json()
    report["attack"] = attack_feasibility(C, budget).to_json()
    return report


def code_parameters(C: MetacyclicCode, budget: int | None = None) -> tuple[int, int, int | None]:
    d = None
    if C.dim:
        try:
            d = min_distance_exact(C, budget)
        except BudgetExceeded:
            pass
    return (C.length, C.dim, d)

