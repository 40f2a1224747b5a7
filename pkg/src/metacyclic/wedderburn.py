"""The decomposition F_q G_{n,m,r} = (+)_i M_{s_i}(F_q[alpha_i] *_theta_i B_i).

``tau_i`` is fixed by the images of the generators and extended to all of
the algebra by block arithmetic; its inverse reads the evaluations
``P_j(alpha_i^(r^c))`` off the blocks and reassembles each ``P_j`` by the
Chinese remainder theorem over the factors of x^n - 1.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from sympy import isprime

from . import linalg, poly
from .algebra import AlgebraElement, BlockElement, GroupParams, SkewRing
from .errors import BadGroupParams, ParamMismatch, ShapeMismatch, ThetaNotInjective
from .gf import Field
from .polyfact import OrbitData, factor_xn_minus_1, orbits


@dataclass(eq=False)
class Summand:
    """Per-orbit data: the ring R_i, generator images and precomputed maps."""

    orbit: OrbitData
    ring: SkewRing
    tau_a: np.ndarray  # (s, s, u, D)
    tau_b: np.ndarray
    images: np.ndarray = None  # (nm, s, s, u, D): tau_i(g) for every group element
    scaled: np.ndarray = None  # (s_q, nm, s*s*u*D): images times gamma^a
    crt: np.ndarray = None  # (s, D, n*s_q): flat evaluation at alpha^(r^c) -> digits of P_j

    @property
    def s(self) -> int:
        return self.orbit.s

    @property
    def u(self) -> int:
        return self.orbit.u

    @property
    def field(self) -> Field:
        return self.orbit.field

    @property
    def shape(self) -> tuple:
        return (self.s, self.s, self.u, self.field.D)

    def block(self, entries) -> BlockElement:
        return BlockElement(np.asarray(entries), self.ring, self.orbit)

    def identity(self) -> BlockElement:
        return self.block(self.ring.identity_block(self.s))

    def zero(self) -> BlockElement:
        return self.block(self.ring.zero((self.s, self.s)))


class Decomposition:
    def __init__(self, params: GroupParams):
        self.params = params
        self.orbit_table = orbits(params.n, params.m, params.r, params.field)
        self.factorization = factor_xn_minus_1(params.n, params.field)
        self.summands = [self._summand(o) for o in self.orbit_table]
        self._verify_relations()
        for sm in self.summands:
            self._precompute_images(sm)
            self._precompute_crt(sm)

    # -- construction -----------------------------------------------------
    def _summand(self, o: OrbitData) -> Summand:
        K = o.field
        ring = SkewRing(K, o.u, o.k)
        s, u = o.s, o.u
        r, p = self.params.r, K.p
        A = ring.zero((s, s))
        alpha = o.alpha.vec
        for l in range(s):
            A[l, l, 0] = K.vpow(alpha, pow(r, l))
        B = ring.zero((s, s))
        for l in range(s - 1):
            B[l, l + 1, 0, 0] = 1
        B[s - 1, 0] = ring.h()
        return Summand(o, ring, A % p, B)

    def _verify_relations(self) -> None:
        n, m, r = self.params.n, self.params.m, self.params.r
        for sm in self.summands:
            ring, A, B = sm.ring, sm.tau_a, sm.tau_b
            I = ring.identity_block(sm.s)
            ok = (
                np.array_equal(ring.block_pow(A, n), I)
                and np.array_equal(ring.block_pow(B, m), I)
                and np.array_equal(ring.matmul(B, A), ring.matmul(ring.block_pow(A, r), B))
            )
            if not ok:
                raise BadGroupParams(f"generator relations fail in summand {sm.orbit.index}")

    def _precompute_images(self, sm: Summand) -> None:
        n, m = self.params.n, self.params.m
        ring = sm.ring
        pa = [ring.identity_block(sm.s)]
        for _ in range(n - 1):
            pa.append(ring.matmul(pa[-1], sm.tau_a))
        pb = [ring.identity_block(sm.s)]
        for _ in range(m - 1):
            pb.append(ring.matmul(pb[-1], sm.tau_b))
        pa = np.stack(pa)
        imgs = np.stack([ring.matmul(pb[j][None], pa) for j in range(m)])  # (m, n, ...)
        sm.images = imgs.reshape((n * m,) + sm.shape)
        K = sm.field
        Fq = self.params.field
        scaled = []
        for a in range(Fq.D):
            gamma = K.embed(int(Fq.pows[a]))
            scaled.append(K.vmul(gamma, sm.images).reshape(n * m, -1))
        sm.scaled = np.stack(scaled)

    def _precompute_crt(self, sm: Summand) -> None:
        """Maps value P(beta) (beta = alpha^(r^c)) to the digits of P mod f^(r^c) lifted
        by the CRT idempotent of that factor."""
        Fq = self.params.field
        n = self.params.n
        K = sm.field
        deg = sm.orbit.degree
        xn1 = poly.x_n_minus_1(Fq, n)
        mats = []
        for c in range(sm.s):
            beta = K.vpow(sm.orbit.alpha.vec, pow(self.params.r, c))
            powers = [K.one_vec()]
            for _ in range(deg - 1):
                powers.append(K.vmul(powers[-1], beta))
            Mc = K.to_fq(np.stack(powers))  # row t: beta^t in F_q coordinates
            Mc_inv = linalg.inverse(Fq, Mc)
            f = sm.orbit.orbit[c].f
            cof = poly.divmod_(Fq, xn1, f)[0]
            g, inv_cof, _ = poly.ext_gcd(Fq, poly.mod(Fq, cof, f), f)
            idem = poly.mod(Fq, poly.mul(Fq, cof, inv_cof), xn1)
            E = np.zeros((deg, n), dtype=np.int64)
            cur = idem
            for t in range(deg):
                E[t, : len(cur)] = cur
                cur = poly.mod(Fq, poly.mul(Fq, cur, poly.x_pow(1)), xn1)
            # flat -> F_q digits (alpha basis) -> coefficients of P mod f -> P digits
            W = (K.to_base @ linalg.fp_expand(Fq, linalg.matmul(Fq, Mc_inv, E))) % Fq.p
            mats.append(W)
        sm.crt = np.stack(mats)

    # -- the isomorphism ----------------------------------------------------
    def _check_params(self, P) -> None:
        if P.params != self.params:
            raise ParamMismatch(f"{P.params} vs {self.params}")

    def tau_vectors(self, V) -> list[np.ndarray]:
        """Batched tau on coefficient vectors (N, nm) -> per summand (N, s, s, u, D)."""
        Fq = self.params.field
        V = np.asarray(V, dtype=np.int64).reshape(-1, self.params.order)
        dig = Fq.digits[V]  # (N, nm, s_q)
        out = []
        for sm in self.summands:
            acc = np.zeros((V.shape[0], sm.scaled.shape[-1]), dtype=np.int64)
            for a in range(Fq.D):
                acc += dig[..., a] @ sm.scaled[a]
            out.append((acc % Fq.p).reshape((V.shape[0],) + sm.shape))
        return out

    def tau_apply(self, P: AlgebraElement) -> list[BlockElement]:
        self._check_params(P)
        return [sm.block(x[0]) for sm, x in zip(self.summands, self.tau_vectors(P.vector))]

    def evaluations(self, blocks) -> list[np.ndarray]:
        """Per summand (N, m, s, D): value of P_j at alpha^(r^c), read off the blocks."""
        m = self.params.m
        out = []
        for sm, X in zip(self.summands, blocks):
            s, u = sm.s, sm.u
            K = sm.field
            N = X.shape[0]
            ev = np.zeros((N, m, s, K.D), dtype=np.int64)
            for l in range(s):
                for c in range(s):
                    t = (c - l) % s
                    w = 1 if c < l else 0
                    for z in range(u):
                        e = (z + w) % u
                        ev[:, z * s + t, c] = X[:, l, c, e] @ sm.ring.theta_inv[e] % K.p
            out.append(ev)
        return out

    def tau_inverse_vectors(self, blocks) -> np.ndarray:
        """Inverse of :meth:`tau_vectors` by CRT; returns (N, nm) codes."""
        blocks = [np.asarray(X, dtype=np.int64) for X in blocks]
        if len(blocks) != len(self.summands):
            raise ShapeMismatch("wrong number of blocks")
        for sm, X in zip(self.summands, blocks):
            if X.shape[1:] != sm.shape:
                raise ShapeMismatch(f"block {sm.orbit.index}: {X.shape[1:]} != {sm.shape}")
        return self.from_evaluations(self.evaluations(blocks))

    def from_evaluations(self, evs) -> np.ndarray:
        """CRT: per-summand values (N, m, s, D) of P_j at alpha^(r^c) -> (N, nm) codes.

        ``None`` stands for an all-zero summand.
        """
        Fq = self.params.field
        n, m = self.params.n, self.params.m
        N = next(ev.shape[0] for ev in evs if ev is not None)
        dig = np.zeros((N, m, n * Fq.D), dtype=np.int64)
        for sm, ev in zip(self.summands, evs):
            if ev is None:
                continue
            for c in range(sm.s):
                dig += ev[:, :, c, :] @ sm.crt[c]
        dig %= Fq.p
        return Fq.from_digits(dig.reshape(N, m, n, Fq.D)).reshape(N, m * n)

    def tau_inverse(self, blocks) -> AlgebraElement:
        arrs = []
        for sm, X in zip(self.summands, blocks):
            E = X.entries if isinstance(X, BlockElement) else np.asarray(X)
            if E.shape != sm.shape:
                raise ShapeMismatch(f"block {sm.orbit.index}: {E.shape} != {sm.shape}")
            arrs.append(E[None])
        if len(arrs) != len(self.summands):
            raise ShapeMismatch("wrong number of blocks")
        return AlgebraElement.from_vector(self.params, self.tau_inverse_vectors(arrs)[0])

    def identity_blocks(self) -> list[BlockElement]:
        return [sm.identity() for sm in self.summands]

    def zero_blocks(self) -> list[BlockElement]:
        return [sm.zero() for sm in self.summands]

    def central_idempotent(self, i: int) -> AlgebraElement:
        blocks = [sm.identity() if k == i else sm.zero() for k, sm in enumerate(self.summands)]
        return self.tau_inverse(blocks)

    def block_product(self, X: list, Y: list) -> list:
        return [x * y for x, y in zip(X, Y)]

    # -- reporting ----------------------------------------------------------
    def dimension(self) -> int:
        return sum(o.s**2 * o.u * o.degree for o in self.orbit_table)

    @property
    def gen_images(self) -> list[tuple[BlockElement, BlockElement]]:
        return [(sm.block(sm.tau_a), sm.block(sm.tau_b)) for sm in self.summands]

    def to_json(self) -> dict:
        cls = classify_summands(self)
        rows = []
        for sm, label in zip(self.summands, cls["labels"]):
            d = sm.orbit.to_json()
            d.update(
                degree=sm.orbit.degree,
                summand=label["summand"],
                refined=label["refined"],
                tau_a=_block_codes(sm, sm.tau_a),
                tau_b=_block_codes(sm, sm.tau_b),
            )
            rows.append(d)
        out = {**self.params.to_json(), "omega": len(rows), "orbits": rows}
        out["shape"] = cls["shape"]
        if cls.get("omega_classes") is not None:
            out["omega_classes"] = cls["omega_classes"]
        return out


def _block_codes(sm: Summand, X) -> list:
    """Block as nested lists [row][col][h-power] of F_q coordinate lists."""
    return sm.field.to_fq(X).tolist()


@functools.lru_cache(maxsize=None)
def build_decomposition(params: GroupParams) -> Decomposition:
    return Decomposition(params)


def tau_apply(dec: Decomposition, P: AlgebraElement) -> list[BlockElement]:
    return dec.tau_apply(P)


def tau_inverse(dec: Decomposition, blocks) -> AlgebraElement:
    return dec.tau_inverse(blocks)


# ---------------------------------------------------------------------------
# skew group algebra as a matrix algebra


def theta_order(o: OrbitData) -> int:
    """Order of theta_i(h_i) as an automorphism of F_q[alpha_i]."""
    deg = o.degree
    return deg // math.gcd(deg, o.k) if o.k else 1


@dataclass(eq=False)
class SigmaMap:
    """Embedding K *_theta C_u -> M_u(k), k the fixed field of theta.

    Matrices have entries in k, stored as flat vectors of K; column ``c`` of
    ``apply(x)`` holds the k-coordinates of ``x . basis[c]``.
    """

    orbit: OrbitData
    ring: SkewRing
    fixed_basis: np.ndarray  # F_q coordinates (rows) of an F_q-basis of k
    basis: np.ndarray  # flat K vectors: k-basis of K
    fixed_degree: int  # [k : F_q]

    @property
    def size(self) -> int:
        return len(self.basis)

    def _kspan_matrix(self, vecs) -> np.ndarray:
        """F_q matrix whose rows span k*vecs (for k-coordinate solving)."""
        K = self.orbit.field
        rows = []
        fixed = K.from_fq(self.fixed_basis)
        for v in vecs:
            for kap in fixed:
                rows.append(K.to_fq(K.vmul(kap, v)))
        return np.array(rows)

    def coordinates(self, x) -> np.ndarray:
        """k-coordinates (flat K vectors) of x in ``basis``."""
        K = self.orbit.field
        Fq = K.base
        M = self._kspan_matrix(self.basis)
        sol = linalg.solve_left(Fq, M, K.to_fq(np.asarray(x))[None, :])[0]
        e = self.fixed_degree
        fixed = K.from_fq(self.fixed_basis)
        out = []
        for c in range(self.size):
            lam = K.zero_vec()
            for t in range(e):
                lam = K.vadd(lam, K.vmul(K.embed(int(sol[c * e + t])), fixed[t]))
            out.append(lam)
        return np.array(out)

    def apply(self, x) -> np.ndarray:
        """Matrix (u, u, D) of sigma(x) for a skew element x of shape (u, D)."""
        K = self.orbit.field
        ring = self.ring
        cols = []
        for beta in self.basis:
            img = K.zero_vec()
            for z in range(ring.u):
                tz = (beta @ ring.theta[z]) % K.p
                img = K.vadd(img, K.vmul(x[z], tz))
            cols.append(self.coordinates(img))
        return np.stack(cols, axis=1)

    def matmul(self, X, Y) -> np.ndarray:
        K = self.orbit.field
        return K.vmul(X[:, :, None, :], Y[None, :, :, :]).sum(axis=1) % K.p


def sigma_matrix(orbit: OrbitData) -> SigmaMap:
    K = orbit.field
    Fq = K.base
    ring = SkewRing(K, orbit.u, orbit.k)
    if theta_order(orbit) != orbit.u:
        raise ThetaNotInjective(
            f"theta has order {theta_order(orbit)} on a stabilizer of order {orbit.u}"
        )
    deg = orbit.degree
    # fixed field of theta as the F_q-kernel of theta - id
    basis_fq = np.eye(deg, dtype=np.int64)
    th = K.to_fq((K.from_fq(basis_fq) @ ring.theta[1 % ring.u]) % K.p) if ring.u > 1 else basis_fq
    fixed = linalg.nullspace(Fq, Fq.sub[th, basis_fq].T)
    e = fixed.shape[0]
    kbasis: list = []
    fixed_flat = K.from_fq(fixed)
    span = np.zeros((0, deg), dtype=np.int64)
    cur = K.one_vec()
    for _ in range(deg):
        cand = [K.to_fq(K.vmul(kap, cur)) for kap in fixed_flat]
        trial = np.vstack([span] + [c[None, :] for c in cand])
        if linalg.rank(Fq, trial) == span.shape[0] + e:
            kbasis.append(cur)
            span = trial
        if len(kbasis) * e == deg:
            break
        cur = K.vmul(cur, orbit.alpha.vec)
    return SigmaMap(orbit, ring, fixed, np.array(kbasis), e)


# ---------------------------------------------------------------------------
# summand labels


def _fq_name(q: int, e: int) -> str:
    return f"F_{q**e}"


def summand_label(o: OrbitData, q: int) -> dict:
    K = _fq_name(q, o.degree)
    s, u = o.s, o.u
    if o.k == 0:
        inner = f"{K}C_{u}" if u > 1 else K
        refined = inner
    else:
        inner = f"{K}*_theta C_{u}"
        t = theta_order(o)
        if t == u:
            refined = f"M_{u}({_fq_name(q, o.degree // u)})"
        elif math.gcd(t, u // t) == 1:
            refined = f"M_{t}({_fq_name(q, o.degree // t)}C_{u // t})"
        else:
            refined = inner
    summand = inner if s == 1 else f"M_{s}({inner})"
    if s > 1:
        if refined.startswith("M_") and o.k and theta_order(o) == u:
            refined = f"M_{s * u}({_fq_name(q, o.degree // u)})"
        else:
            refined = f"M_{s}({refined})"
    return {"kind": o.kind, "summand": summand, "refined": refined}


def classify_summands(dec: Decomposition) -> dict:
    q = dec.params.q
    labels = [summand_label(o, q) for o in dec.orbit_table]
    out = {"labels": labels, "kinds": [o.kind for o in dec.orbit_table]}
    out["shape"] = " + ".join(lab["refined"] for lab in labels)
    if isprime(dec.params.m):
        fac = dec.factorization
        r = dec.params.r
        omega = {"1": [], "2": [], "3": []}
        for o in dec.orbit_table:
            a = o.alpha
            if a ** r == a:
                omega["1"].append(o.index)
            elif fac.r_reciprocal(o.rep, r) is o.rep:
                omega["2"].append(o.index)
            else:
                omega["3"].append(o.index)
        out["omega_classes"] = omega
    else:
        out["omega_classes"] = None
    return out
