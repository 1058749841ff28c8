"""The space of spinors and the Clifford algebra isomorphism onto End(S).

For a complexified space of even dimension 2n, S is realized on the exterior
algebra of the positive half of a Witt basis: pairing the i-th and (n+i)-th
distinguished generators gives isotropic a_i = (e_i - i e_{n+i})/2 and
a_i^* = (e_i + i e_{n+i})/2, with a_i acting by wedge and a_i^* by
contraction.  The generators then satisfy

    gamma(x) gamma(y) + gamma(y) gamma(x) = 2 b(x, y) Id,

matching the algebra-wide convention that generators square to their norm,
and the blade-extension gamma~ is an algebra isomorphism onto End(S).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from .clifford import (CliffordElement, QuadraticSpace, complexify_element,
                       from_vector, grade)
from .groups import LieElement
from .pin import PinElement

MAX_HALF_DIM = 8


@dataclass(frozen=True)
class SpinorSpace:
    """Gamma operators of Cliff(E_C) on the 2^n-dimensional spinor module."""

    space: QuadraticSpace          # the complexified quadratic space, dim 2n
    gammas: List[np.ndarray]       # gamma(e_k), one per distinguished generator
    witt_map: np.ndarray           # columns: a_1..a_n, a*_1..a*_n in e-coordinates

    @property
    def half_dim(self) -> int:
        return self.space.dim // 2

    @property
    def dim_s(self) -> int:
        return 1 << self.half_dim


def build_spinors(space_c: QuadraticSpace) -> SpinorSpace:
    """Fock-model spinor space for an even-dimensional complex space."""
    if space_c.field_kind != "complex":
        raise ValueError("spinors are built over the complexified space")
    if space_c.dim % 2 != 0:
        raise ValueError("spinor construction requires even dimension")
    n = space_c.dim // 2
    if n > MAX_HALF_DIM:
        raise ValueError(f"half-dimension {n} exceeds the dense-operator cap {MAX_HALF_DIM}")
    dim = 1 << n
    create = []
    annihilate = []
    for j in range(n):
        lower_mask = (1 << j) - 1
        Cj = np.zeros((dim, dim), dtype=complex)
        Aj = np.zeros((dim, dim), dtype=complex)
        for T in range(dim):
            if not (T >> j) & 1:
                s = -1.0 if bin(T & lower_mask).count("1") & 1 else 1.0
                Cj[T | (1 << j), T] = s
                Aj[T, T | (1 << j)] = s
        create.append(Cj)
        annihilate.append(Aj)
    gammas = [create[j] + annihilate[j] for j in range(n)]
    gammas += [1j * (create[j] - annihilate[j]) for j in range(n)]
    witt = np.zeros((2 * n, 2 * n), dtype=complex)
    for j in range(n):
        witt[j, j] = 0.5
        witt[n + j, j] = -0.5j        # a_j
        witt[j, n + j] = 0.5
        witt[n + j, n + j] = 0.5j     # a_j^*
    return SpinorSpace(space_c, gammas, witt)


def gamma_tilde(sp: SpinorSpace, x: CliffordElement) -> np.ndarray:
    """Extend the gammas over blades; an algebra isomorphism Cliff(E_C) -> End(S)."""
    if x.space != sp.space:
        raise ValueError("element lives over a different complexified space")
    dim = sp.dim_s
    out = np.zeros((dim, dim), dtype=complex)
    for m, c in x.terms.items():
        op = None
        mm = m
        j = 0
        while mm:
            if mm & 1:
                op = sp.gammas[j] if op is None else op @ sp.gammas[j]
            mm >>= 1
            j += 1
        coeff = complex(c) if not x.exact else c.to_complex()
        out += coeff * (np.eye(dim) if op is None else op)
    return out


def gamma_vector(sp: SpinorSpace, coords: Sequence) -> np.ndarray:
    return gamma_tilde(sp, from_vector(sp.space, coords))


def pi_rep(sp: SpinorSpace, x: PinElement) -> np.ndarray:
    """The spinorial representation on a Pin element.

    Real-space elements are included into the complexified Clifford algebra
    first; the restriction stays irreducible.
    """
    val = x.value if x.space.field_kind == "complex" else complexify_element(x.value)
    return gamma_tilde(sp, val)


def lie_to_clifford(X: Union[LieElement, np.ndarray],
                    space: Optional[QuadraticSpace] = None,
                    tol: float = 1e-9) -> CliffordElement:
    """Degree-2 Clifford realization Q(X) with [Q(X), v] = Xv for vectors v.

    Q(X) = (1/4) sum_k norms[k] (X e_k) e_k; requires X antisymmetric for the
    form.  Linear in X and a Lie-algebra map for commutators.
    """
    if isinstance(X, LieElement):
        space = X.space
        M = np.asarray(X.matrix, dtype=complex)
    else:
        if space is None:
            raise ValueError("pass a QuadraticSpace together with a bare matrix")
        M = np.asarray(X, dtype=complex)
    B = np.diag(np.array(space.norms, dtype=float))
    if not np.allclose(M.T @ B + B @ M, 0, atol=tol):
        raise ValueError("matrix is not antisymmetric for the quadratic form")
    n = space.dim
    acc = CliffordElement(space, {}, exact=False)
    for k in range(n):
        col = M[:, k]
        if not col.any():
            continue
        term = from_vector(space, col) * from_vector(space, np.eye(n)[k])
        acc = acc + term.scale(0.25 * space.norms[k])
    # the scalar part cancels by antisymmetry; drop roundoff residue
    return CliffordElement(space, {m: c for m, c in acc.terms.items() if grade(m) == 2},
                           exact=False)


def d_pi(sp: SpinorSpace, X: Union[LieElement, np.ndarray]) -> np.ndarray:
    """dPi(X) = gamma~(Q(X)), acting on S; satisfies [dPi(X), gamma(v)] = gamma(Xv)."""
    if isinstance(X, LieElement) and X.space.field_kind == "real":
        q = complexify_element(lie_to_clifford(X))
    elif isinstance(X, LieElement):
        q = lie_to_clifford(X)
    else:
        q = lie_to_clifford(X, sp.space)
    return gamma_tilde(sp, q)


def generated_operator_rank(sp: SpinorSpace, tol: float = 1e-8) -> int:
    """Rank of the blade-image family {gamma~(e_M)}: 4^n when gamma~ is onto."""
    dim = sp.dim_s
    n2 = sp.space.dim
    rows = []
    for m in range(1 << n2):
        rows.append(gamma_tilde(sp, CliffordElement(sp.space, {m: 1.0}, exact=False)).ravel())
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    return int((s > tol * s[0]).sum())
