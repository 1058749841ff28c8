"""Duality for the spinorial representation, made executable.

The pipeline per dual pair: complexify the ambient space, compute the
graded invariants of the exterior algebra under one member by brute-force
nullspaces, transport them into End(S) through the Chevalley map and the
spinor isomorphism, and compare with the directly computed commutant of the
algebra generated by the lifted member.  A Howe correspondence is certified
by the double-commutant criterion

    Comm <G~> = <G~'>   (both directions)

together with commutativity of the joint commutant, whose dimension counts
the isotypic blocks of the multiplicity-free decomposition.

The three degree-2 generator theorems for exterior invariants of GL, O and
Sp are verified separately on standalone tensor models at small rank, with
the brute-force invariant dimensions as the oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .clifford import CliffordElement, ExteriorElement, QuadraticSpace, complex_space
from .groups import ComplexifiedPair, DualPairSpec, complexify
from .pin import lift
from .spinor import SpinorSpace, build_spinors, d_pi, gamma_tilde, pi_rep

RANK_TOL = 1e-8
HOWE_DIM_CAP = 12
EXTERIOR_DIM_CAP = 12

ORTHOGONAL_PAIR_FAMILIES = {"O_real", "O_C", "O_C_real"}


class UnsupportedFamilyError(ValueError):
    """Family outside the scope of the spinorial duality engine."""


class DimensionCapError(ValueError):
    """Instance exceeds the configured brute-force dimension caps."""


# ---------------------------------------------------------------------------
# numerical span utilities
# ---------------------------------------------------------------------------

def nullspace(A: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal rows spanning ker(A).

    Constraint stacks are built from O(1)-scaled group and Lie matrices, so
    the rank cutoff keeps an absolute floor: a stack whose largest singular
    value is itself negligible is the zero map.
    """
    A = np.asarray(A, dtype=complex)
    if A.shape[0] == 0:
        return np.eye(A.shape[1], dtype=complex)
    u, s, vh = np.linalg.svd(A, full_matrices=True)
    cutoff = tol * max(float(s[0]) if s.size else 0.0, 1.0)
    r = int((s > cutoff).sum())
    return vh[r:].conj()


def orthonormal_rows(rows: Sequence[np.ndarray], tol: float = RANK_TOL) -> np.ndarray:
    A = np.asarray([np.asarray(r).ravel() for r in rows], dtype=complex)
    if A.shape[0] == 0:
        return A
    u, s, vh = np.linalg.svd(A, full_matrices=False)
    if not s.size:
        return np.zeros((0, A.shape[1]), dtype=complex)
    # inputs are O(1)-scaled operators and wedges; an all-roundoff row set
    # spans nothing
    cutoff = tol * max(float(s[0]), 1.0)
    r = int((s > cutoff).sum())
    return vh[:r]


def span_rank(rows: Sequence[np.ndarray], tol: float = RANK_TOL) -> int:
    return orthonormal_rows(rows, tol).shape[0]


def subspace_equal(A: Sequence[np.ndarray], B: Sequence[np.ndarray],
                   tol: float = RANK_TOL) -> bool:
    """Equal rank plus mutual containment of two operator/vector spans."""
    ra = span_rank(A, tol)
    rb = span_rank(B, tol)
    if ra != rb:
        return False
    joint = [np.asarray(x).ravel() for x in A] + [np.asarray(x).ravel() for x in B]
    return span_rank(joint, tol) == ra


def joint_nullspace(constraints: Sequence[np.ndarray], dim: int,
                    tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal rows spanning the joint kernel, by successive restriction.

    Restricting each constraint to the running nullspace keeps every SVD at
    the current kernel width instead of stacking all constraints at once.
    """
    basis = np.eye(dim, dtype=complex)
    for M in constraints:
        if basis.shape[0] == 0:
            break
        A = np.asarray(M, dtype=complex) @ basis.T
        coeffs = nullspace(A, tol)
        basis = coeffs @ basis
    return basis


# ---------------------------------------------------------------------------
# exterior algebra actions, per degree
# ---------------------------------------------------------------------------

def blades_of_degree(N: int, d: int) -> List[int]:
    return [sum(1 << i for i in comb) for comb in itertools.combinations(range(N), d)]


def _wedge_columns(vectors: List[Dict[int, complex]], N: int) -> Dict[int, complex]:
    acc = {0: 1.0 + 0j}
    for vec in vectors:
        nxt: Dict[int, complex] = {}
        for m, c in acc.items():
            for i, vi in vec.items():
                if m >> i & 1:
                    continue
                sign = -1.0 if bin(m >> (i + 1)).count("1") & 1 else 1.0
                key = m | (1 << i)
                nxt[key] = nxt.get(key, 0j) + sign * c * vi
        acc = nxt
    return acc


def exterior_group_matrix(g: np.ndarray, d: int) -> np.ndarray:
    """Matrix of the factorwise action of g on degree-d wedges."""
    g = np.asarray(g, dtype=complex)
    N = g.shape[0]
    blades = blades_of_degree(N, d)
    index = {m: i for i, m in enumerate(blades)}
    cols = [{i: g[i, j] for i in range(N) if g[i, j] != 0} for j in range(N)]
    M = np.zeros((len(blades), len(blades)), dtype=complex)
    for cidx, mask in enumerate(blades):
        vecs = [cols[j] for j in range(N) if mask >> j & 1]
        img = _wedge_columns(vecs, N)
        for m, c in img.items():
            M[index[m], cidx] = c
    return M


def exterior_derivation_matrix(X: np.ndarray, d: int) -> np.ndarray:
    """Matrix of the derivation extension of X on degree-d wedges."""
    X = np.asarray(X, dtype=complex)
    N = X.shape[0]
    blades = blades_of_degree(N, d)
    index = {m: i for i, m in enumerate(blades)}
    M = np.zeros((len(blades), len(blades)), dtype=complex)
    for cidx, mask in enumerate(blades):
        members = [j for j in range(N) if mask >> j & 1]
        for r, j in enumerate(members):
            for i in range(N):
                v = X[i, j]
                if v == 0:
                    continue
                if i == j:
                    M[cidx, cidx] += v
                    continue
                if mask >> i & 1:
                    continue
                new_mask = (mask & ~(1 << j)) | (1 << i)
                rp = bin((mask & ~(1 << j)) & ((1 << i) - 1)).count("1")
                sign = -1.0 if (r + rp) & 1 else 1.0
                M[index[new_mask], cidx] += sign * v
    return M


# ---------------------------------------------------------------------------
# invariants of one dual-pair member
# ---------------------------------------------------------------------------

@dataclass
class InvariantSpace:
    """Per-degree orthonormal bases of the invariant wedges, in blade coordinates."""

    space: QuadraticSpace
    degree_bases: Dict[int, np.ndarray]

    @property
    def dims(self) -> Dict[int, int]:
        return {d: b.shape[0] for d, b in self.degree_bases.items()}

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def elements(self) -> List[ExteriorElement]:
        out = []
        for d in sorted(self.degree_bases):
            blades = blades_of_degree(self.space.dim, d)
            for row in self.degree_bases[d]:
                out.append(ExteriorElement(
                    self.space, {m: row[i] for i, m in enumerate(blades)}, exact=False))
        return out


def invariant_space(space_c: QuadraticSpace, lie: Sequence[np.ndarray],
                    comps: Sequence[np.ndarray], max_dim: int = EXTERIOR_DIM_CAP,
                    ) -> InvariantSpace:
    """Joint nullspace of Lie derivations and fixed space of component actions."""
    N = space_c.dim
    if N > max_dim:
        raise DimensionCapError(f"exterior dimension {N} exceeds cap {max_dim}")
    bases: Dict[int, np.ndarray] = {}
    for d in range(N + 1):
        nd = len(blades_of_degree(N, d))
        constraints = [exterior_derivation_matrix(X, d) for X in lie]
        constraints += [exterior_group_matrix(g, d) - np.eye(nd) for g in comps]
        bases[d] = joint_nullspace(constraints, nd)
    return InvariantSpace(space_c, bases)


def invariants(spec: DualPairSpec, side: str,
               cpx: Optional[ComplexifiedPair] = None) -> InvariantSpace:
    """Graded invariants of the complexified exterior algebra under one member."""
    cpx = cpx or complexify(spec)
    if side in ("G", "g", "left", "0"):
        lie, comps = cpx.lie_G, [g for _, g in cpx.comps_G]
    else:
        lie, comps = cpx.lie_Gp, [g for _, g in cpx.comps_Gp]
    return invariant_space(cpx.space_c, lie, comps)


# ---------------------------------------------------------------------------
# Howe's generator theorems on standalone tensor models
# ---------------------------------------------------------------------------

@dataclass
class GLModel:
    """GL(V) acting on V ox U + V* ox W; invariants generated in degree 2.

    Basis order: (v_k ox u_a) row-major, then (v*_k ox w_b) row-major.
    """

    n: int  # dim V
    m: int  # dim U
    l: int  # dim W

    @property
    def dim(self) -> int:
        return self.n * (self.m + self.l)

    def space(self) -> QuadraticSpace:
        return complex_space(self.dim)

    def lie(self) -> List[np.ndarray]:
        out = []
        for a in range(self.n):
            for b in range(self.n):
                X = np.zeros((self.n, self.n), dtype=complex)
                X[a, b] = 1.0
                out.append(np.block([
                    [np.kron(X, np.eye(self.m)), np.zeros((self.n * self.m, self.n * self.l))],
                    [np.zeros((self.n * self.l, self.n * self.m)), np.kron(-X.T, np.eye(self.l))],
                ]))
        return out

    def comps(self) -> List[np.ndarray]:
        return []

    def generators(self) -> List[ExteriorElement]:
        sp = self.space()
        out = []
        for a in range(self.m):
            for b in range(self.l):
                acc = ExteriorElement(sp, {}, exact=False)
                for k in range(self.n):
                    i1 = k * self.m + a
                    i2 = self.n * self.m + k * self.l + b
                    e1 = ExteriorElement(sp, {1 << i1: 1.0}, exact=False)
                    e2 = ExteriorElement(sp, {1 << i2: 1.0}, exact=False)
                    acc = acc + (e1 ^ e2)
                out.append(acc)
        return out


@dataclass
class OModel:
    """O(n,C) acting on U ox V with U orthogonal; eta generators in degree 2."""

    n: int  # dim U
    m: int  # dim V

    @property
    def dim(self) -> int:
        return self.n * self.m

    def space(self) -> QuadraticSpace:
        return complex_space(self.dim)

    def lie(self) -> List[np.ndarray]:
        out = []
        for a in range(self.n):
            for b in range(a + 1, self.n):
                X = np.zeros((self.n, self.n), dtype=complex)
                X[a, b] = 1.0
                X[b, a] = -1.0
                out.append(np.kron(X, np.eye(self.m)))
        return out

    def comps(self) -> List[np.ndarray]:
        r = np.eye(self.n, dtype=complex)
        r[0, 0] = -1.0
        return [np.kron(r, np.eye(self.m))]

    def generators(self) -> List[ExteriorElement]:
        sp = self.space()
        out = []
        for a in range(self.m):
            for b in range(a + 1, self.m):
                acc = ExteriorElement(sp, {}, exact=False)
                for k in range(self.n):
                    e1 = ExteriorElement(sp, {1 << (k * self.m + a): 1.0}, exact=False)
                    e2 = ExteriorElement(sp, {1 << (k * self.m + b): 1.0}, exact=False)
                    acc = acc + (e1 ^ e2)
                out.append(acc)
        return out


@dataclass
class SpModel:
    """Sp(2n,C) acting on C^{2n} ox C^m; gamma generators in degree 2.

    Symplectic basis (e_1..e_n, f_1..f_n) with omega(e_i, f_j) = delta_ij.
    """

    n: int  # half rank
    m: int

    @property
    def dim(self) -> int:
        return 2 * self.n * self.m

    def space(self) -> QuadraticSpace:
        return complex_space(self.dim)

    def lie(self) -> List[np.ndarray]:
        from .families import sp_2n_basis
        return [np.kron(X, np.eye(self.m)) for X in sp_2n_basis(self.n, real_form=False)]

    def comps(self) -> List[np.ndarray]:
        return []

    def generators(self) -> List[ExteriorElement]:
        sp = self.space()
        out = []
        for a in range(self.m):
            for b in range(a, self.m):
                acc = ExteriorElement(sp, {}, exact=False)
                for k in range(self.n):
                    ek_a = ExteriorElement(sp, {1 << (k * self.m + a): 1.0}, exact=False)
                    fk_b = ExteriorElement(sp, {1 << ((self.n + k) * self.m + b): 1.0}, exact=False)
                    fk_a = ExteriorElement(sp, {1 << ((self.n + k) * self.m + a): 1.0}, exact=False)
                    ek_b = ExteriorElement(sp, {1 << (k * self.m + b): 1.0}, exact=False)
                    acc = acc + (ek_a ^ fk_b) - (fk_a ^ ek_b)
                out.append(acc)
        return out


def generator_elements(model) -> List[ExteriorElement]:
    return model.generators()


def _element_in_span(w: ExteriorElement, basis: np.ndarray, blades: List[int],
                     tol: float = 1e-7) -> bool:
    v = np.array([complex(w.coeff(m)) for m in blades])
    if basis.shape[0] == 0:
        return bool(np.linalg.norm(v) <= tol)
    proj = basis.conj() @ v
    res = v - basis.T @ proj
    return bool(np.linalg.norm(res) <= tol * max(1.0, np.linalg.norm(v)))


def wedge_matrix(g: ExteriorElement, d_from: int, d_to: int) -> np.ndarray:
    """Matrix of (g ^ .) from degree d_from wedges to degree d_to wedges."""
    from .clifford import reorder_sign

    N = g.space.dim
    src = blades_of_degree(N, d_from)
    dst_index = {m: i for i, m in enumerate(blades_of_degree(N, d_to))}
    W = np.zeros((len(dst_index), len(src)), dtype=complex)
    for j, S in enumerate(src):
        for mg, cg in g.terms.items():
            if mg & S:
                continue
            val = complex(cg) * reorder_sign(mg, S)
            W[dst_index[mg | S], j] += val
    return W


def verify_generation(model, tol: float = RANK_TOL) -> Dict[int, Tuple[int, int]]:
    """Per-degree (generated, invariant) dimensions; equality proves generation.

    The generated subalgebra is the wedge-span closure of the degree-2
    generator elements; since they have even degree the monomial spans close
    degree by degree.
    """
    N = model.dim
    if 1 << N > (1 << EXTERIOR_DIM_CAP):
        raise DimensionCapError(f"total exterior dimension 2^{N} over cap")
    inv = invariant_space(model.space(), model.lie(), model.comps(), max_dim=N)
    gens = model.generators()
    # every generator must itself be invariant
    for g in gens:
        for d, basis in inv.degree_bases.items():
            part = g.grade_part(d)
            if not part.is_zero():
                if not _element_in_span(part, basis, blades_of_degree(N, d)):
                    raise RuntimeError("generator element is not invariant")
    report: Dict[int, Tuple[int, int]] = {}
    current: Dict[int, np.ndarray] = {0: np.ones((1, 1), dtype=complex)}
    for d in range(N + 1):
        inv_dim = inv.dims[d]
        gen_dim = 0
        if d == 0:
            gen_dim = 1
        elif d % 2 == 0 and (d - 2) in current and current[d - 2].shape[0] > 0:
            rows = []
            for g in gens:
                W = wedge_matrix(g, d - 2, d)
                rows.extend((current[d - 2] @ W.T))
            basis = orthonormal_rows(rows, tol)
            current[d] = basis
            gen_dim = basis.shape[0]
        report[d] = (gen_dim, inv_dim)
    return report


# ---------------------------------------------------------------------------
# transfer of invariants and double commutant
# ---------------------------------------------------------------------------

def transfer_invariants(inv: InvariantSpace, sp: SpinorSpace) -> List[np.ndarray]:
    """Image of the invariant wedges in End(S) under the Chevalley map.

    On distinguished-basis blades the Chevalley map is coordinatewise, so
    each invariant vector transports to gamma~ of the same blade combination.
    """
    if inv.space != sp.space:
        raise ValueError("invariants and spinors live over different spaces")
    ops = []
    for w in inv.elements():
        x = CliffordElement(sp.space, dict(w.terms), exact=False, _clean=True)
        ops.append(gamma_tilde(sp, x))
    return ops


def commutant(ops: Sequence[np.ndarray], dim: int, tol: float = RANK_TOL) -> List[np.ndarray]:
    """Orthonormal basis of {X : [X, op] = 0 for all ops} inside End(S).

    Row-major vectorization: vec(X o) = (I kron o^T) vec(X) and
    vec(o X) = (o kron I) vec(X).
    """
    if not ops:
        return [m.reshape(dim, dim) for m in np.eye(dim * dim, dtype=complex)]
    rows = []
    eye = np.eye(dim)
    for o in ops:
        o = np.asarray(o)
        rows.append(np.kron(eye, o.T) - np.kron(o, eye))
    ns = nullspace(np.vstack(rows), tol)
    return [v.reshape(dim, dim) for v in ns]


def generated_algebra(ops: Sequence[np.ndarray], dim: int,
                      tol: float = RANK_TOL) -> List[np.ndarray]:
    """Orthonormal basis of the unital algebra generated by ops, by span closure."""
    basis = orthonormal_rows([np.eye(dim, dtype=complex)] + [np.asarray(o) for o in ops], tol)
    while True:
        prods = list(basis)
        for o in ops:
            om = np.asarray(o)
            for b in basis:
                prods.append((om @ b.reshape(dim, dim)).ravel())
        nxt = orthonormal_rows(prods, tol)
        if nxt.shape[0] == basis.shape[0]:
            return [b.reshape(dim, dim) for b in basis]
        basis = nxt


def is_commutative(ops: Sequence[np.ndarray], tol: float = 1e-7) -> bool:
    for i, a in enumerate(ops):
        for b in ops[i + 1:]:
            if not np.allclose(a @ b, b @ a, atol=tol * max(1.0, np.abs(a).max() * np.abs(b).max())):
                return False
    return True


@dataclass
class HoweReport:
    pair: str
    dim_s: int
    dim_commutant_G: int
    dim_commutant_Gp: int
    dim_algebra_G: int
    dim_algebra_Gp: int
    subspace_equality: bool
    joint_commutant_commutative: bool
    isotypic_count: int

    def to_json(self) -> dict:
        return {
            "pair": self.pair,
            "dim_s": self.dim_s,
            "dim_commutant": self.dim_commutant_G,
            "dim_commutant_other": self.dim_commutant_Gp,
            "dim_algebra": self.dim_algebra_Gp,
            "dim_algebra_other": self.dim_algebra_G,
            "equal": self.subspace_equality,
            "mult_free": self.joint_commutant_commutative,
            "isotypic_count": self.isotypic_count,
        }


def side_operators(spec: DualPairSpec, sp: SpinorSpace, cpx: ComplexifiedPair,
                   side: str) -> List[np.ndarray]:
    """Generating operators of <G~>: dPi of Lie generators plus Pi of lifted reps."""
    if side in ("G", "g", "left", "0"):
        lie, reps = cpx.lie_G, spec.G.component_reps
    else:
        lie, reps = cpx.lie_Gp, spec.Gp.component_reps
    ops = [d_pi(sp, X) for X in lie]
    ops += [pi_rep(sp, lift(rep.map)) for rep in reps]
    return ops


def howe_check(spec: DualPairSpec, dim_cap: int = HOWE_DIM_CAP) -> HoweReport:
    """Double-commutant certificate for the spinorial representation.

    Verifies Comm<G~> = <G~'> in both directions and that the joint commutant
    is commutative, reporting its dimension as the isotypic count.
    """
    if spec.family in ORTHOGONAL_PAIR_FAMILIES:
        raise UnsupportedFamilyError(
            f"{spec.family}: orthogonal-pair duality is outside the engine's scope")
    if spec.space.dim > dim_cap:
        raise DimensionCapError(f"dim E = {spec.space.dim} exceeds duality cap {dim_cap}")
    cpx = complexify(spec)
    sp = build_spinors(cpx.space_c)
    dim = sp.dim_s
    ops_G = side_operators(spec, sp, cpx, "G")
    ops_Gp = side_operators(spec, sp, cpx, "Gp")
    alg_G = generated_algebra(ops_G, dim)
    alg_Gp = generated_algebra(ops_Gp, dim)
    comm_G = commutant(ops_G, dim)
    comm_Gp = commutant(ops_Gp, dim)
    equal = subspace_equal(comm_G, alg_Gp) and subspace_equal(comm_Gp, alg_G)
    joint = commutant(list(ops_G) + list(ops_Gp), dim)
    return HoweReport(
        pair=f"{spec.G.name} x {spec.Gp.name}",
        dim_s=dim,
        dim_commutant_G=len(comm_G),
        dim_commutant_Gp=len(comm_Gp),
        dim_algebra_G=len(alg_G),
        dim_algebra_Gp=len(alg_Gp),
        subspace_equality=equal,
        joint_commutant_commutative=is_commutative(joint),
        isotypic_count=len(joint),
    )
