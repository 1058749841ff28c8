"""Concrete builders for the classified dual-pair families.

Thirteen families: three over a complex ambient orthogonal space and ten over
a real one.  Each builder realizes the ambient quadratic space in its
distinguished sorted orthogonal basis, embeds both members (group and Lie
level), and attaches component representatives and compact loop generators
where the member groups are disconnected or non-simply-connected.

Ambient signatures follow the classification table:

    (O(n,C), O(m,C))            O(nm, C)                 n, m >= 2
    (Sp(2n,C), Sp(2m,C))        O(4nm, C)
    (GL(n,C), GL(m,C))          O(2nm, C)
    (O(p1,q1), O(p2,q2))        O(p1p2+q1q2, p1q2+q1p2)
    (U(p1,q1), U(p2,q2))        O(2(p1p2+q1q2), 2(p1q2+q1p2))
    (Sp(2n1,R), Sp(2n2,R))      O(2n1n2, 2n1n2)
    (O(n1,C), O(n2,C))_R        O(n1n2, n1n2)            n1, n2 >= 2
    (Sp(2n1,C), Sp(2n2,C))_R    O(4n1n2, 4n1n2)
    (Sp(p1,q1,H), Sp(p2,q2,H))  O(4(p1p2+q1q2), 4(p1q2+q1p2))
    (O*(2n1), O*(2n2))          O(2n1n2, 2n1n2)          n1, n2 >= 2
    (GL(n1,R), GL(n2,R))        O(n1n2, n1n2)
    (GL(n1,C), GL(n2,C))_R      O(2n1n2, 2n1n2)
    (GL(n1,H), GL(n2,H))        O(4n1n2, 4n1n2)
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .clifford import QuadraticSpace, complex_space, real_space
from .groups import (ClassificationError, ComponentRep, DualPairSpec, LieElement,
                     LoopGenerator, OrthogonalMap, SideSpec, complex_orthonormalize,
                     fixed_real_basis, orthogonalize_real_gram, quaternion_J,
                     realify_complex_matrix, realify_quaternionic, sort_basis,
                     tensor_kl_permutation)

BUILD_TOL = 1e-9


# ---------------------------------------------------------------------------
# Lie-algebra bases (native, unembedded)
# ---------------------------------------------------------------------------

def _E(n: int, a: int, b: int, val=1.0) -> np.ndarray:
    M = np.zeros((n, n), dtype=complex)
    M[a, b] = val
    return M


def gl_real_basis(n: int) -> List[np.ndarray]:
    return [_E(n, a, b) for a in range(n) for b in range(n)]


def gl_complex_basis(n: int, real_form: bool) -> List[np.ndarray]:
    """gl(n,C): complex basis E_ab, doubled by i when used as a real Lie algebra."""
    out = [_E(n, a, b) for a in range(n) for b in range(n)]
    if real_form:
        out += [_E(n, a, b, 1j) for a in range(n) for b in range(n)]
    return out


def u_pq_basis(p: int, q: int) -> List[np.ndarray]:
    """u(p,q) for the hermitian form diag(I_p, -I_q): H times anti-hermitian."""
    d = p + q
    H = np.diag([1.0] * p + [-1.0] * q).astype(complex)
    out = [H @ _E(d, a, a, 1j) for a in range(d)]
    for a in range(d):
        for b in range(a + 1, d):
            out.append(H @ (_E(d, a, b) - _E(d, b, a)))
            out.append(H @ (_E(d, a, b, 1j) + _E(d, b, a, 1j)))
    return out


def so_pq_basis(norms: Sequence[int]) -> List[np.ndarray]:
    d = len(norms)
    out = []
    for a in range(d):
        for b in range(a + 1, d):
            out.append(_E(d, a, b) - norms[a] * norms[b] * _E(d, b, a))
    return out


def so_n_complex_basis(n: int, real_form: bool) -> List[np.ndarray]:
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            out.append(_E(n, a, b) - _E(n, b, a))
            if real_form:
                out.append(_E(n, a, b, 1j) - _E(n, b, a, 1j))
    return out


def sp_2n_basis(n: int, real_form: bool) -> List[np.ndarray]:
    """sp(2n) for omega(a_i, b_j) = delta_ij in basis (a_1..a_n, b_1..b_n)."""
    def blk(A, B, C):
        return np.block([[A, B], [C, -A.T]])

    z = np.zeros((n, n), dtype=complex)
    out = []
    for a in range(n):
        for b in range(n):
            out.append(blk(_E(n, a, b), z, z))
    for a in range(n):
        for b in range(a, n):
            S = _E(n, a, b) + _E(n, b, a)
            out.append(blk(z, S, z))
            out.append(blk(z, z, S))
    if real_form:
        out += [1j * M for M in out[:]]
    return out


def sp_pq_quat_basis(p: int, q: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """sp(p,q,H) as quaternion pairs (A, B): A in u(p,q), B with D B symmetric."""
    d = p + q
    D = np.diag([1.0] * p + [-1.0] * q).astype(complex)
    z = np.zeros((d, d), dtype=complex)
    out = [(A, z) for A in u_pq_basis(p, q)]
    for a in range(d):
        for b in range(a, d):
            S = _E(d, a, b) + _E(d, b, a)
            out.append((z, D @ S))
            out.append((z, D @ (1j * S)))
    return out


def ostar_basis(n: int) -> List[np.ndarray]:
    """so*(2n): [[P, Q], [-conj(Q), -P^T]], P anti-hermitian, Q antisymmetric."""
    z = np.zeros((n, n), dtype=complex)

    def blk(P, Q):
        return np.block([[P, Q], [-Q.conj(), -P.T]])

    out = [blk(_E(n, a, a, 1j), z) for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            out.append(blk(_E(n, a, b) - _E(n, b, a), z))
            out.append(blk(_E(n, a, b, 1j) + _E(n, b, a, 1j), z))
            out.append(blk(z, _E(n, a, b) - _E(n, b, a)))
            out.append(blk(z, _E(n, a, b, 1j) - _E(n, b, a, 1j)))
    return out


# ---------------------------------------------------------------------------
# loop matrices (native)
# ---------------------------------------------------------------------------

def _u1_at(d: int, slot: int, theta: float) -> np.ndarray:
    M = np.eye(d, dtype=complex)
    M[slot, slot] = np.exp(1j * theta)
    return M


def _rot(d: int, theta: float) -> np.ndarray:
    M = np.eye(d)
    c, s = np.cos(theta), np.sin(theta)
    M[0, 0] = c
    M[0, 1] = -s
    M[1, 0] = s
    M[1, 1] = c
    return M


def _sp_real_uloop(n: int, theta: float) -> np.ndarray:
    C = np.eye(n)
    S = np.zeros((n, n))
    C[0, 0] = np.cos(theta)
    S[0, 0] = np.sin(theta)
    return np.block([[C, -S], [S, C]])


def _ostar_uloop(n: int, theta: float) -> np.ndarray:
    u = _u1_at(n, 0, theta)
    z = np.zeros((n, n), dtype=complex)
    return np.block([[u, z], [z, u.conj()]])


# ---------------------------------------------------------------------------
# builder scaffolding
# ---------------------------------------------------------------------------

def _validated_side(space, name, embed_group, embed_lie, lie_native, comp_native, loops):
    lie = [embed_lie(X) for X in lie_native]
    for L in lie:
        if not L.is_b_antisymmetric(BUILD_TOL):
            raise RuntimeError(f"{name}: embedded Lie generator is not b-antisymmetric")
    comps = []
    for cname, g in comp_native:
        om = embed_group(g)
        if not om.is_isometry(BUILD_TOL):
            raise RuntimeError(f"{name}: component representative is not an isometry")
        comps.append(ComponentRep(cname, om))
    return SideSpec(name, space, lie, comps, loops, embed_group, embed_lie)


def _check_signature(space: QuadraticSpace, expected: Tuple[int, int], family: str):
    if space.signature != expected:
        raise RuntimeError(f"{family}: ambient signature {space.signature} != {expected}")


def _pair_params(params) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    (p1, q1), (p2, q2) = params
    if min(p1, q1, p2, q2) < 0 or p1 + q1 == 0 or p2 + q2 == 0:
        raise ClassificationError(f"invalid signature parameters {params}")
    return (int(p1), int(q1)), (int(p2), int(q2))


def _int_params(params) -> Tuple[int, int]:
    n1, n2 = params
    if n1 < 1 or n2 < 1:
        raise ClassificationError(f"sizes must be positive, got {params}")
    return int(n1), int(n2)


def _kron_sides(d1: int, d2: int):
    """Side embeddings g -> g ox I and g -> I ox g at matrix level."""
    return (lambda g: np.kron(np.asarray(g, dtype=complex), np.eye(d2)),
            lambda g: np.kron(np.eye(d1), np.asarray(g, dtype=complex)))


# ---------------------------------------------------------------------------
# real-orthogonal pair (negative control for Pin-level commutation)
# ---------------------------------------------------------------------------

def build_O_real(params) -> DualPairSpec:
    (p1, q1), (p2, q2) = _pair_params(params)
    d1, d2 = p1 + q1, p2 + q2
    eps1 = [1] * p1 + [-1] * q1
    eps2 = [1] * p2 + [-1] * q2
    nat_norms = [eps1[i] * eps2[j] for i in range(d1) for j in range(d2)]
    _, sorted_norms, P = sort_basis(np.eye(d1 * d2), nat_norms)
    space = QuadraticSpace("real", sorted_norms)
    _check_signature(space, (p1 * p2 + q1 * q2, p1 * q2 + q1 * p2), "O_real")
    kG, kGp = _kron_sides(d1, d2)

    def mk(side_k):
        def embed_group(g):
            return OrthogonalMap(space, (P.T @ side_k(g) @ P).real)

        def embed_lie(X):
            return LieElement(space, (P.T @ side_k(X) @ P).real)

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)

    def comps(p, q, d):
        out = []
        if p >= 1:
            out.append(("r+", np.diag([-1.0 if k == 0 else 1.0 for k in range(d)])))
        if q >= 1:
            out.append(("r-", np.diag([-1.0 if k == p else 1.0 for k in range(d)])))
        return out

    G = _validated_side(space, f"O({p1},{q1})", egG, elG, so_pq_basis(eps1), comps(p1, q1, d1), [])
    Gp = _validated_side(space, f"O({p2},{q2})", egGp, elGp, so_pq_basis(eps2), comps(p2, q2, d2), [])
    return DualPairSpec("O_real", params, space, G, Gp)


# ---------------------------------------------------------------------------
# unitary pairs
# ---------------------------------------------------------------------------

def build_U(params) -> DualPairSpec:
    (p1, q1), (p2, q2) = _pair_params(params)
    d1, d2 = p1 + q1, p2 + q2
    eps1 = [1] * p1 + [-1] * q1
    eps2 = [1] * p2 + [-1] * q2
    # realified norms of Re(h1 ox h2): eps_i * eps_j on both w and i*w slots
    nat = [eps1[i] * eps2[j] for i in range(d1) for j in range(d2)]
    nat_norms = nat + nat
    _, sorted_norms, P = sort_basis(np.eye(2 * d1 * d2), nat_norms)
    space = QuadraticSpace("real", sorted_norms)
    _check_signature(space, (2 * (p1 * p2 + q1 * q2), 2 * (p1 * q2 + q1 * p2)), "U")
    kG, kGp = _kron_sides(d1, d2)

    def mk(side_k):
        def embed_group(g):
            return OrthogonalMap(space, P.T @ realify_complex_matrix(side_k(g)) @ P)

        def embed_lie(X):
            return LieElement(space, P.T @ realify_complex_matrix(side_k(X)) @ P)

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)

    def loops(eg, p, q, d, tag):
        # one loop per compact unitary factor: U(p) at the first +slot,
        # U(q) at the first -slot
        out = [LoopGenerator(f"U({p})[{tag}+]",
                             lambda t, eg=eg, d=d: eg(_u1_at(d, 0, t)))]
        if q >= 1:
            out.append(LoopGenerator(f"U({q})[{tag}-]",
                                     lambda t, eg=eg, d=d, p=p: eg(_u1_at(d, p, t))))
        return out

    G = _validated_side(space, f"U({p1},{q1})", egG, elG, u_pq_basis(p1, q1), [],
                        loops(egG, p1, q1, d1, "G"))
    Gp = _validated_side(space, f"U({p2},{q2})", egGp, elGp, u_pq_basis(p2, q2), [],
                         loops(egGp, p2, q2, d2, "G'"))
    J = egG(1j * np.eye(d1)).matrix
    return DualPairSpec("U", params, space, G, Gp, complex_structure=J)


# ---------------------------------------------------------------------------
# real symplectic pairs
# ---------------------------------------------------------------------------

def _omega(n: int) -> np.ndarray:
    return np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])


def build_Sp_R(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    gram = np.kron(_omega(n1), _omega(n2))
    P, norms = orthogonalize_real_gram(gram)
    Pinv = np.linalg.inv(P)
    space = QuadraticSpace("real", norms)
    _check_signature(space, (2 * n1 * n2, 2 * n1 * n2), "Sp_R")
    kG, kGp = _kron_sides(2 * n1, 2 * n2)

    def mk(side_k):
        def embed_group(g):
            return OrthogonalMap(space, (Pinv @ side_k(g) @ P).real)

        def embed_lie(X):
            return LieElement(space, (Pinv @ side_k(X) @ P).real)

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)
    G = _validated_side(space, f"Sp({2*n1},R)", egG, elG,
                        [M.real for M in sp_2n_basis(n1, real_form=False)], [],
                        [LoopGenerator(f"U({n1})[G]", lambda t: egG(_sp_real_uloop(n1, t)))])
    Gp = _validated_side(space, f"Sp({2*n2},R)", egGp, elGp,
                         [M.real for M in sp_2n_basis(n2, real_form=False)], [],
                         [LoopGenerator(f"U({n2})[G']", lambda t: egGp(_sp_real_uloop(n2, t)))])
    return DualPairSpec("Sp_R", params, space, G, Gp)


# ---------------------------------------------------------------------------
# complex orthogonal / symplectic pairs realified
# ---------------------------------------------------------------------------

def build_O_C_real(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    if n1 < 2 or n2 < 2:
        raise ClassificationError("O(n,C) pairs require n1, n2 >= 2")
    Pkl = tensor_kl_permutation(n1, n2)
    space = real_space(n1 * n2, n1 * n2)
    kG, kGp = _kron_sides(n1, n2)

    def mk(side_k):
        def embed_group(g):
            return OrthogonalMap(space, realify_complex_matrix(Pkl @ side_k(g) @ Pkl.T))

        def embed_lie(X):
            return LieElement(space, realify_complex_matrix(Pkl @ side_k(X) @ Pkl.T))

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)

    def refl(n):
        return [("r", np.diag([-1.0 if k == 0 else 1.0 for k in range(n)]).astype(complex))]

    G = _validated_side(space, f"O({n1},C)", egG, elG, so_n_complex_basis(n1, True), refl(n1),
                        [LoopGenerator(f"SO({n1})[G]", lambda t: egG(_rot(n1, t)))])
    Gp = _validated_side(space, f"O({n2},C)", egGp, elGp, so_n_complex_basis(n2, True), refl(n2),
                         [LoopGenerator(f"SO({n2})[G']", lambda t: egGp(_rot(n2, t)))])
    J = egG(1j * np.eye(n1)).matrix
    return DualPairSpec("O_C_real", params, space, G, Gp, complex_structure=J)


def build_Sp_C_real(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    gram = np.kron(_omega(n1), _omega(n2)).astype(complex)
    Pc = complex_orthonormalize(gram)
    Pcinv = np.linalg.inv(Pc)
    space = real_space(4 * n1 * n2, 4 * n1 * n2)
    kG, kGp = _kron_sides(2 * n1, 2 * n2)

    def mk(side_k):
        def embed_group(g):
            return OrthogonalMap(space, realify_complex_matrix(Pcinv @ side_k(g) @ Pc))

        def embed_lie(X):
            return LieElement(space, realify_complex_matrix(Pcinv @ side_k(X) @ Pc))

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)
    G = _validated_side(space, f"Sp({2*n1},C)", egG, elG, sp_2n_basis(n1, True), [], [])
    Gp = _validated_side(space, f"Sp({2*n2},C)", egGp, elGp, sp_2n_basis(n2, True), [], [])
    J = egG(1j * np.eye(2 * n1)).matrix
    return DualPairSpec("Sp_C_real", params, space, G, Gp, complex_structure=J)


# ---------------------------------------------------------------------------
# quaternionic pairs
# ---------------------------------------------------------------------------

def _quat_tensor_spec(family: str, params, K1, K2, J1, J2, expected_sig,
                      name1, name2, lie1, lie2, loops1, loops2) -> DualPairSpec:
    """Shared machinery: restrict kron actions to Fix(J1 ox J2 . conj)."""
    R = fixed_real_basis(J1, J2)
    gram_c = R.T @ np.kron(K1, K2) @ R
    if np.abs(gram_c.imag).max() > 1e-10:
        raise RuntimeError(f"{family}: tensor form is not real on the fixed subspace")
    P, norms = orthogonalize_real_gram(gram_c.real)
    Pinv = np.linalg.inv(P)
    space = QuadraticSpace("real", norms)
    _check_signature(space, expected_sig, family)
    d1, d2 = J1.shape[0], J2.shape[0]
    kG, kGp = _kron_sides(d1, d2)

    def mk(side_k):
        def to_fixed(Xc):
            M = R.conj().T @ side_k(Xc) @ R
            if np.abs(M.imag).max() > 1e-8:
                raise RuntimeError(f"{family}: embedded map does not preserve the real form")
            return M.real

        def embed_group(g):
            if isinstance(g, tuple):
                g = realify_quaternionic(*g)
            return OrthogonalMap(space, Pinv @ to_fixed(g) @ P)

        def embed_lie(X):
            if isinstance(X, tuple):
                X = realify_quaternionic(*X)
            return LieElement(space, Pinv @ to_fixed(X) @ P)

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)
    G = _validated_side(space, name1, egG, elG, lie1, [],
                        [LoopGenerator(n, lambda t, f=f: egG(f(t))) for n, f in loops1])
    Gp = _validated_side(space, name2, egGp, elGp, lie2, [],
                         [LoopGenerator(n, lambda t, f=f: egGp(f(t))) for n, f in loops2])
    return DualPairSpec(family, params, space, G, Gp)


def build_Sp_H(params) -> DualPairSpec:
    (p1, q1), (p2, q2) = _pair_params(params)
    n1, n2 = p1 + q1, p2 + q2

    def KD(p, q):
        D = np.diag([1.0] * p + [-1.0] * q).astype(complex)
        z = np.zeros_like(D)
        return np.block([[z, D], [-D, z]])

    return _quat_tensor_spec(
        "Sp_H", params, KD(p1, q1), KD(p2, q2), quaternion_J(n1), quaternion_J(n2),
        (4 * (p1 * p2 + q1 * q2), 4 * (p1 * q2 + q1 * p2)),
        f"Sp({p1},{q1},H)", f"Sp({p2},{q2},H)",
        sp_pq_quat_basis(p1, q1), sp_pq_quat_basis(p2, q2), [], [])


def build_O_star(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    if n1 < 2 or n2 < 2:
        raise ClassificationError("O*(n,H) pairs require n1, n2 >= 2")

    def KS(n):
        S = np.block([[np.zeros((n, n)), np.eye(n)], [np.eye(n), np.zeros((n, n))]])
        return 1j * S.astype(complex)

    # J aligned with S = antidiag so that U(n) sits as diag(u, conj(u))
    return _quat_tensor_spec(
        "O_star", params, KS(n1), KS(n2), quaternion_J(n1), quaternion_J(n2),
        (2 * n1 * n2, 2 * n1 * n2),
        f"O*({2*n1})", f"O*({2*n2})",
        ostar_basis(n1), ostar_basis(n2),
        [(f"U({n1})[G]", lambda t: _ostar_uloop(n1, t))],
        [(f"U({n2})[G']", lambda t: _ostar_uloop(n2, t))])


# ---------------------------------------------------------------------------
# type-II general linear pairs
# ---------------------------------------------------------------------------

def _split_frame(d: int) -> np.ndarray:
    """Orthonormal involutive change to b_+- = (e +- e*)/sqrt(2) on E1 + E1*."""
    I = np.eye(d)
    return np.block([[I, I], [I, -I]]) / np.sqrt(2.0)


def _type2_spec(family: str, params, d: int, inner_G, inner_Gp, name1, name2,
                lie1, lie2, comps1, comps2, loops1, loops2,
                inner_J: Optional[np.ndarray] = None) -> DualPairSpec:
    """E = E1 + E1^* with split form, re-expressed in the b_+- basis.

    inner_* map native elements to real d x d matrices on E1; the group acts
    on the dual factor by inverse transpose, the Lie algebra by minus
    transpose.
    """
    Pb = _split_frame(d)
    space = real_space(d, d)

    def mk(inner):
        def embed_group(g):
            Rm = inner(g)
            M = np.block([[Rm, np.zeros((d, d))],
                          [np.zeros((d, d)), np.linalg.inv(Rm).T]])
            return OrthogonalMap(space, Pb @ M @ Pb)

        def embed_lie(X):
            Rm = inner(X)
            M = np.block([[Rm, np.zeros((d, d))], [np.zeros((d, d)), -Rm.T]])
            return LieElement(space, Pb @ M @ Pb)

        return embed_group, embed_lie

    egG, elG = mk(inner_G)
    egGp, elGp = mk(inner_Gp)
    G = _validated_side(space, name1, egG, elG, lie1, comps1,
                        [LoopGenerator(n, lambda t, f=f: egG(f(t))) for n, f in loops1])
    Gp = _validated_side(space, name2, egGp, elGp, lie2, comps2,
                         [LoopGenerator(n, lambda t, f=f: egGp(f(t))) for n, f in loops2])
    J = None
    if inner_J is not None:
        J = Pb @ np.block([[inner_J, np.zeros((d, d))],
                           [np.zeros((d, d)), np.linalg.inv(inner_J).T]]) @ Pb
    return DualPairSpec(family, params, space, G, Gp, complex_structure=J)


def build_GL_R(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    d = n1 * n2

    def innerG(A):
        return np.kron(np.asarray(A, dtype=float), np.eye(n2))

    def innerGp(A):
        return np.kron(np.eye(n1), np.asarray(A, dtype=float))

    def comps(n):
        return [("s", np.diag([-1.0 if k == 0 else 1.0 for k in range(n)]))]

    def loops(n, tag):
        if n < 2:
            return []
        return [(f"SO({n})[{tag}]", lambda t, n=n: _rot(n, t))]

    return _type2_spec("GL_R", params, d, innerG, innerGp,
                       f"GL({n1},R)", f"GL({n2},R)",
                       [M.real for M in gl_real_basis(n1)],
                       [M.real for M in gl_real_basis(n2)],
                       comps(n1), comps(n2), loops(n1, "G"), loops(n2, "G'"))


def build_GL_C(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    d = 2 * n1 * n2

    def innerG(A):
        return realify_complex_matrix(np.kron(np.asarray(A, dtype=complex), np.eye(n2)))

    def innerGp(A):
        return realify_complex_matrix(np.kron(np.eye(n1), np.asarray(A, dtype=complex)))

    def loops(n, tag):
        return [(f"U({n})[{tag}]", lambda t, n=n: _u1_at(n, 0, t))]

    return _type2_spec("GL_C", params, d, innerG, innerGp,
                       f"GL({n1},C)", f"GL({n2},C)",
                       gl_complex_basis(n1, True), gl_complex_basis(n2, True),
                       [], [], loops(n1, "G"), loops(n2, "G'"),
                       inner_J=innerG(1j * np.eye(n1)))


def build_GL_H(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    J1, J2 = quaternion_J(n1), quaternion_J(n2)
    R = fixed_real_basis(J1, J2)
    d = 4 * n1 * n2

    def mk_inner(side):
        def inner(X):
            if isinstance(X, tuple):
                X = realify_quaternionic(*X)
            K = np.kron(X, np.eye(2 * n2)) if side == 0 else np.kron(np.eye(2 * n1), X)
            M = R.conj().T @ K @ R
            if np.abs(M.imag).max() > 1e-8:
                raise RuntimeError("GL_H: map does not preserve the real tensor subspace")
            return M.real

        return inner

    def quat_gl_basis(n):
        z = np.zeros((n, n), dtype=complex)
        out = []
        for a in range(n):
            for b in range(n):
                out.append((_E(n, a, b), z))
                out.append((_E(n, a, b, 1j), z))
                out.append((z, _E(n, a, b)))
                out.append((z, _E(n, a, b, 1j)))
        return out

    return _type2_spec("GL_H", params, d, mk_inner(0), mk_inner(1),
                       f"GL({n1},H)", f"GL({n2},H)",
                       quat_gl_basis(n1), quat_gl_basis(n2), [], [], [], [])


# ---------------------------------------------------------------------------
# complex-ambient families
# ---------------------------------------------------------------------------

def build_O_C(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    if n1 < 2 or n2 < 2:
        raise ClassificationError("O(n,C) pairs require n1, n2 >= 2")
    Pkl = tensor_kl_permutation(n1, n2)
    space = complex_space(n1 * n2)
    kG, kGp = _kron_sides(n1, n2)

    def mk(side_k):
        def embed_group(g):
            return OrthogonalMap(space, Pkl @ side_k(g) @ Pkl.T)

        def embed_lie(X):
            return LieElement(space, Pkl @ side_k(X) @ Pkl.T)

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)

    def refl(n):
        return [("r", np.diag([-1.0 if k == 0 else 1.0 for k in range(n)]).astype(complex))]

    G = _validated_side(space, f"O({n1},C)", egG, elG, so_n_complex_basis(n1, False), refl(n1),
                        [LoopGenerator(f"SO({n1})[G]", lambda t: egG(_rot(n1, t)))])
    Gp = _validated_side(space, f"O({n2},C)", egGp, elGp, so_n_complex_basis(n2, False), refl(n2),
                         [LoopGenerator(f"SO({n2})[G']", lambda t: egGp(_rot(n2, t)))])
    return DualPairSpec("O_C", params, space, G, Gp)


def build_Sp_C(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    gram = np.kron(_omega(n1), _omega(n2)).astype(complex)
    Pc = complex_orthonormalize(gram)
    Pcinv = np.linalg.inv(Pc)
    space = complex_space(4 * n1 * n2)
    kG, kGp = _kron_sides(2 * n1, 2 * n2)

    def mk(side_k):
        def embed_group(g):
            return OrthogonalMap(space, Pcinv @ side_k(g) @ Pc)

        def embed_lie(X):
            return LieElement(space, Pcinv @ side_k(X) @ Pc)

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)
    G = _validated_side(space, f"Sp({2*n1},C)", egG, elG, sp_2n_basis(n1, False), [], [])
    Gp = _validated_side(space, f"Sp({2*n2},C)", egGp, elGp, sp_2n_basis(n2, False), [], [])
    return DualPairSpec("Sp_C", params, space, G, Gp)


def build_GL_C_complex(params) -> DualPairSpec:
    n1, n2 = _int_params(params)
    d = n1 * n2
    I = np.eye(d)
    # complex split basis: (e + e*)/sqrt2 and i(e - e*)/sqrt2, both of norm +1
    Pc = np.block([[I, 1j * I], [I, -1j * I]]) / np.sqrt(2.0)
    Pcinv = Pc.conj().T
    space = complex_space(2 * d)
    kG, kGp = _kron_sides(n1, n2)

    def mk(side_k):
        def embed_group(g):
            Rm = side_k(g)
            M = np.block([[Rm, np.zeros((d, d))],
                          [np.zeros((d, d)), np.linalg.inv(Rm).T]])
            return OrthogonalMap(space, Pcinv @ M @ Pc)

        def embed_lie(X):
            Rm = side_k(X)
            M = np.block([[Rm, np.zeros((d, d))], [np.zeros((d, d)), -Rm.T]])
            return LieElement(space, Pcinv @ M @ Pc)

        return embed_group, embed_lie

    egG, elG = mk(kG)
    egGp, elGp = mk(kGp)

    def loops(eg, n, tag):
        return [LoopGenerator(f"U({n})[{tag}]", lambda t, eg=eg, n=n: eg(_u1_at(n, 0, t)))]

    G = _validated_side(space, f"GL({n1},C)", egG, elG, gl_complex_basis(n1, False), [],
                        loops(egG, n1, "G"))
    Gp = _validated_side(space, f"GL({n2},C)", egGp, elGp, gl_complex_basis(n2, False), [],
                         loops(egGp, n2, "G'"))
    return DualPairSpec("GL_C_complex", params, space, G, Gp)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

FAMILY_BUILDERS: Dict[str, Callable] = {
    "O_real": build_O_real,
    "U": build_U,
    "Sp_R": build_Sp_R,
    "O_C_real": build_O_C_real,
    "Sp_C_real": build_Sp_C_real,
    "Sp_H": build_Sp_H,
    "O_star": build_O_star,
    "GL_R": build_GL_R,
    "GL_C": build_GL_C,
    "GL_H": build_GL_H,
    "O_C": build_O_C,
    "Sp_C": build_Sp_C,
    "GL_C_complex": build_GL_C_complex,
}

PAIR_PARAM_FAMILIES = {"O_real", "U", "Sp_H"}

# smallest parameters at which each family is an honest member of the
# classification (size-1 exclusions respected)
MINIMAL_PARAMS: Dict[str, tuple] = {
    "O_real": ((1, 0), (2, 0)),
    "U": ((1, 0), (1, 0)),
    "Sp_R": (1, 1),
    "O_C_real": (2, 2),
    "Sp_C_real": (1, 1),
    "Sp_H": ((1, 0), (1, 0)),
    "O_star": (2, 2),
    "GL_R": (1, 1),
    "GL_C": (1, 1),
    "GL_H": (1, 1),
    "O_C": (3, 3),
    "Sp_C": (1, 1),
    "GL_C_complex": (1, 1),
}


def normalize_params(family: str, params) -> tuple:
    if family in PAIR_PARAM_FAMILIES:
        (a, b), (c, d) = params
        return ((int(a), int(b)), (int(c), int(d)))
    a, b = params
    return (int(a), int(b))


def build_pair(family: str, params) -> DualPairSpec:
    """Instantiate one classified family; raises ClassificationError on excluded sizes."""
    if family not in FAMILY_BUILDERS:
        raise ClassificationError(f"unknown family {family!r}")
    return FAMILY_BUILDERS[family](normalize_params(family, params))
