"""Subgroups, codes induced from subgroup codes, and their intersections."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lincode, linalg, poly
from .algebra import GroupParams, all_left_translates, left_translate, parse_group_element, format_group_element
from .codes import MetacyclicCode, SubmoduleCode, ideal_from_generators
from .errors import BadSubgroupPair, BudgetExceeded, EmptyCode, NotADivisor, NotAnHCode, ParamMismatch, ParseError
from .wedderburn import build_decomposition


@dataclass(frozen=True, eq=False)
class SubgroupSpec:
    params: GroupParams
    elements: tuple  # sorted element indices
    transversal: tuple  # left transversal, one element per coset gH
    generators: tuple = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.params.order // self.order

    def __contains__(self, g) -> bool:
        return int(g) in set(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupSpec)
            and other.params == self.params
            and other.elements == self.elements
        )

    def __hash__(self):
        return hash((self.params, self.elements))

    def to_json(self) -> dict:
        gens = self.generators or self.elements
        return {"generators": [format_group_element(self.params, g) for g in gens]}

    @classmethod
    def from_json(cls, params: GroupParams, d) -> "SubgroupSpec":
        gens = d["generators"] if isinstance(d, dict) else d
        if not isinstance(gens, list):
            raise ParseError("subgroup JSON needs a list of generators")
        return subgroup_from_generators(params, gens)


def _scan_order(params: GroupParams) -> list[int]:
    """Group elements a^i b^j, lexicographic in (j, i)."""
    n = params.n
    out = []
    for j in range(params.m):
        for i in range(n):
            out.append(params.index(j, i * pow(params.r_inv, j, n)))
    return out


def subgroup_from_generators(params: GroupParams, gens) -> SubgroupSpec:
    idx = [parse_group_element(params, g) if isinstance(g, str) else int(g) for g in gens]
    elems = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in idx:
                y = params.product(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    covered: set[int] = set()
    trans = []
    for g in _scan_order(params):
        if g in covered:
            continue
        trans.append(g)
        covered.update(params.product(g, h) for h in elems)
    return SubgroupSpec(params, tuple(sorted(elems)), tuple(trans), tuple(idx))


def subgroup_A(params: GroupParams, step: int = 1) -> SubgroupSpec:
    """<a^step>."""
    return subgroup_from_generators(params, [params.index(0, step)])


def subgroup_B(params: GroupParams) -> SubgroupSpec:
    return subgroup_from_generators(params, [params.index(1, 0)])


# ---------------------------------------------------------------------------
# H-codes


class SubgroupCode:
    """Left ideal of F_q H, stored in the coordinates of F_q G."""

    def __init__(self, subgroup: SubgroupSpec, basis, *, check: bool = True):
        self.subgroup = subgroup
        params = subgroup.params
        self.basis = linalg.row_space(params.field, linalg.as_matrix(basis, params.order), params.order)
        if check:
            self.verify()

    @property
    def params(self) -> GroupParams:
        return self.subgroup.params

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def restricted(self) -> np.ndarray:
        """Basis in the coordinates of H only (length |H|)."""
        return self.basis[:, list(self.subgroup.elements)]

    def verify(self) -> None:
        H = self.subgroup
        outside = np.ones(self.params.order, dtype=bool)
        outside[list(H.elements)] = False
        if np.any(self.basis[:, outside]):
            raise NotAnHCode("support leaves the subgroup")
        if self.dim == 0:
            return
        moved = np.vstack([left_translate(self.params, g, self.basis) for g in H.elements])
        if not linalg.contains(self.params.field, self.basis, moved):
            raise NotAnHCode("not a left ideal of F_q H")

    def min_distance(self, budget: int | None = None) -> int:
        if self.dim == 0:
            raise EmptyCode("zero H-code")
        return lincode.min_distance(self.params.field, self.restricted(), budget)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupCode)
            and other.subgroup == self.subgroup
            and np.array_equal(self.basis, other.basis)
        )

    def __repr__(self) -> str:
        return f"SubgroupCode(|H|={self.subgroup.order}, dim={self.dim})"


def h_code_from_generators(H: SubgroupSpec, gens) -> SubgroupCode:
    """Smallest left ideal of F_q H containing ``gens`` (vectors over G)."""
    params = H.params
    F = params.field
    B = linalg.row_space(F, linalg.as_matrix(np.asarray(gens, dtype=np.int64).reshape(-1, params.order), params.order))
    if B.shape[0]:
        B = linalg.row_space(F, all_left_translates(params, B, H.elements))
    return SubgroupCode(H, B)


def cyclic_h_code(H: SubgroupSpec, g) -> SubgroupCode:
    """(F_q <c>) g(c) for a cyclic H with generator c = H.generators[0]."""
    params = H.params
    c = H.generators[0]
    g = poly.trim(g)
    v = np.zeros(params.order, dtype=np.int64)
    power = 0
    for coef in g:
        v[power] = params.field.add[v[power], coef]
        power = params.product(power, c)
    return h_code_from_generators(H, [v])


def random_h_code(H: SubgroupSpec, rng, ngens: int = 1) -> SubgroupCode:
    params = H.params
    gens = np.zeros((ngens, params.order), dtype=np.int64)
    elems = list(H.elements)
    for t in range(ngens):
        vals = rng.integers(0, params.field.size, len(elems))
        vals[rng.random(len(elems)) < 0.5] = 0
        gens[t, elems] = vals
    return h_code_from_generators(H, gens)


# ---------------------------------------------------------------------------
# induction and projection


def project(C: MetacyclicCode, H: SubgroupSpec) -> SubgroupCode:
    if C.params != H.params:
        raise ParamMismatch(f"{C.params} vs {H.params}")
    keep = np.zeros(C.length, dtype=bool)
    keep[list(H.elements)] = True
    B = np.where(keep[None, :], C.basis, 0)
    return SubgroupCode(H, B)


def induce(D: SubgroupCode) -> MetacyclicCode:
    D.verify()
    params = D.params
    if D.dim == 0:
        return MetacyclicCode.zero(params)
    rows = np.vstack([left_translate(params, g, D.basis) for g in D.subgroup.transversal])
    C = MetacyclicCode(params, rows, check=True)
    assert C.dim == D.dim * D.subgroup.index
    return C


def ext_code(C: MetacyclicCode, H: SubgroupSpec) -> MetacyclicCode:
    """Smallest code induced from H containing C."""
    return induce(project(C, H))


def restrict(C: MetacyclicCode, H: SubgroupSpec) -> SubgroupCode:
    """C intersected with the coordinate space of H."""
    if C.dim == 0:
        return SubgroupCode(H, np.zeros((0, C.length), dtype=np.int64))
    F = C.field
    outside = np.ones(C.length, dtype=bool)
    outside[list(H.elements)] = False
    X = linalg.nullspace(F, C.basis[:, outside].T, C.dim)
    if X.shape[0] == 0:
        return SubgroupCode(H, np.zeros((0, C.length), dtype=np.int64))
    return SubgroupCode(H, linalg.matmul(F, X, C.basis))


def int_code(C: MetacyclicCode, H: SubgroupSpec) -> MetacyclicCode:
    """Largest code induced from H inside C."""
    return induce(restrict(C, H))


def induced_cyclic_structure(params: GroupParams, g) -> list[SubmoduleCode]:
    """Submodules of the code induced from (F_q A) g(a): column j of block i is
    free exactly when g(alpha_i^(r^j)) != 0."""
    F = params.field
    g = poly.trim(poly.parse(g, F) if isinstance(g, str) else np.asarray(g, dtype=np.int64))
    if not g.size or poly.trim(poly.mod(F, poly.x_n_minus_1(F, params.n), g)).size:
        raise NotADivisor(f"{poly.to_str(g)} does not divide x^{params.n} - 1")
    dec = build_decomposition(params)
    out = []
    for sm in dec.summands:
        block = sm.u * sm.orbit.degree
        rows = []
        for j, fd in enumerate(sm.orbit.orbit):
            if poly.trim(poly.mod(F, g, fd.f)).size:
                for t in range(block):
                    v = np.zeros(sm.s * block, dtype=np.int64)
                    v[j * block + t] = 1
                    rows.append(v)
        basis = np.array(rows, dtype=np.int64).reshape(-1, sm.s * block)
        out.append(SubmoduleCode(sm.orbit, sm.ring, basis))
    return out


def cyclic_ideal(params: GroupParams, g) -> MetacyclicCode:
    """The G-code induced from (F_q A) g(a)."""
    F = params.field
    g = poly.trim(poly.parse(g, F) if isinstance(g, str) else np.asarray(g, dtype=np.int64))
    g = poly.mod(F, g, poly.x_n_minus_1(F, params.n))
    v = np.zeros(params.order, dtype=np.int64)
    v[: len(g)] = g
    return ideal_from_generators(params, [v])


@dataclass
class IntersectionReport:
    code: MetacyclicCode
    d1: int | None
    d2: int | None
    product_bound: int | None
    dim_bound: int
    d_exact: int | None = None

    def to_json(self) -> dict:
        return {
            "dim": self.code.dim,
            "d": self.d_exact,
            "d1": self.d1,
            "d2": self.d2,
            "product_bound": self.product_bound,
            "dim_bound": self.dim_bound,
        }


def intersect_induced(D1: SubgroupCode, D2: SubgroupCode, budget: int | None = None) -> IntersectionReport:
    H1, H2 = D1.subgroup, D2.subgroup
    params = H1.params
    if H2.params != params:
        raise ParamMismatch(f"{H1.params} vs {H2.params}")
    if H1.order * H2.order != params.order or set(H1.elements) & set(H2.elements) != {0}:
        raise BadSubgroupPair("need H1 H2 = G and H1 n H2 = {e}")
    C = induce(D1).intersect(induce(D2))
    d1 = D1.min_distance(budget) if D1.dim else None
    d2 = D2.min_distance(budget) if D2.dim else None
    prod = d1 * d2 if d1 is not None and d2 is not None else None
    dim_bound = H1.order * D2.dim + H2.order * D1.dim - params.order
    rep = IntersectionReport(C, d1, d2, prod, dim_bound)
    if C.dim:
        try:
            rep.d_exact = lincode.min_distance(params.field, C.basis, budget)
        except BudgetExceeded:
            rep.d_exact = None
    return rep
