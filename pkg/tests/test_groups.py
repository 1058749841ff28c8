"""Family embeddings: realifications, signatures, commutation, complexification."""

import numpy as np
import pytest

from spinpairs.clifford import complex_space
from spinpairs.families import MINIMAL_PARAMS, build_pair, sp_pq_quat_basis, u_pq_basis
from spinpairs.groups import (ClassificationError, OrthogonalMap, complex_span_dimension,
                              complexify, commutes_with_J, fixed_real_basis,
                              orthogonalize_real_gram, quaternion_J,
                              quaternion_matrix_product, realify_complex,
                              realify_complex_matrix, realify_quaternionic, sort_basis)

RNG = np.random.default_rng(2024)


# --- realification of complex spaces ----------------------------------------

def test_realify_complex_line_gives_1_1():
    Er, _ = realify_complex(complex_space(1))
    assert Er.signature == (1, 1)


def test_realify_norm_of_i_times_vector():
    # b(e,e)=1 implies Re b(ie, ie) = -1: the l-vectors carry norm -1
    Er, idx = realify_complex(complex_space(3))
    assert Er.norms[:3] == (1, 1, 1) and Er.norms[3:] == (-1, -1, -1)
    assert idx["k"] == [0, 1, 2]


def test_realify_tensor_kl_indexing_2x2():
    Er, idx = realify_complex(complex_space(4), tensor_shape=(2, 2))
    assert Er.signature == (4, 4)
    # slot a(s,t) = (m-t)n+s, 1-based: k1 = (1,2), k2 = (2,2), k3 = (1,1), k4 = (2,1)
    assert idx["k"] == [(1, 2), (2, 2), (1, 1), (2, 1)]


def test_realified_matrix_multiplicative():
    for _ in range(10):
        A = RNG.normal(size=(3, 3)) + 1j * RNG.normal(size=(3, 3))
        B = RNG.normal(size=(3, 3)) + 1j * RNG.normal(size=(3, 3))
        assert np.allclose(realify_complex_matrix(A @ B),
                           realify_complex_matrix(A) @ realify_complex_matrix(B))


# --- quaternionic embedding --------------------------------------------------

def test_quaternion_identity_embeds_to_identity():
    n = 3
    M = realify_quaternionic(np.eye(n), np.zeros((n, n)))
    assert np.allclose(M, np.eye(2 * n))


def test_quaternion_j_block():
    M = realify_quaternionic(np.zeros((1, 1)), np.eye(1))
    assert np.allclose(M, np.array([[0, -1], [1, 0]]))


def test_quaternion_embedding_is_ring_homomorphism():
    # oracle: direct quaternion matrix arithmetic on (A, B) pairs
    for _ in range(50):
        n = int(RNG.integers(1, 4))
        x = (RNG.normal(size=(n, n)) + 1j * RNG.normal(size=(n, n)),
             RNG.normal(size=(n, n)) + 1j * RNG.normal(size=(n, n)))
        y = (RNG.normal(size=(n, n)) + 1j * RNG.normal(size=(n, n)),
             RNG.normal(size=(n, n)) + 1j * RNG.normal(size=(n, n)))
        lhs = realify_quaternionic(*x) @ realify_quaternionic(*y)
        rhs = realify_quaternionic(*quaternion_matrix_product(x, y))
        assert np.allclose(lhs, rhs)


def test_quaternion_image_characterized_by_J_conjugation():
    n = 2
    J = quaternion_J(n)
    g = realify_quaternionic(RNG.normal(size=(n, n)) + 1j * RNG.normal(size=(n, n)),
                             RNG.normal(size=(n, n)) + 1j * RNG.normal(size=(n, n)))
    assert commutes_with_J(g, J)
    assert not commutes_with_J(np.diag([1.0 + 0j, 1, 1, 1j]), J)


def test_quaternion_embedding_injective():
    xs = []
    for _ in range(8):
        xs.append(realify_quaternionic(
            RNG.normal(size=(2, 2)) + 1j * RNG.normal(size=(2, 2)),
            RNG.normal(size=(2, 2)) + 1j * RNG.normal(size=(2, 2))))
    assert complex_span_dimension([x.ravel() for x in xs]) == 8


def test_fixed_real_basis_is_real_form():
    J1, J2 = quaternion_J(1), quaternion_J(2)
    R = fixed_real_basis(J1, J2)
    assert R.shape == (8, 8)
    P = np.kron(J1, J2)
    for k in range(8):
        assert np.allclose(P @ R[:, k].conj(), R[:, k])


# --- generic orthogonalization ----------------------------------------------

def test_orthogonalize_real_gram_roundtrip():
    M = RNG.normal(size=(6, 6))
    M = M + M.T + 0.5 * np.eye(6)
    P, norms = orthogonalize_real_gram(M)
    assert np.allclose(P.T @ M @ P, np.diag(norms), atol=1e-10)
    assert list(norms) == sorted(norms, reverse=True)


def test_sort_basis_stable():
    M = np.diag([2.0, 3.0, 5.0])
    sortedM, norms, P = sort_basis(M, [-1, 1, -1])
    assert norms == (1, -1, -1)
    assert np.allclose(sortedM, np.diag([3.0, 2.0, 5.0]))


# --- signatures across the classification -----------------------------------

SIGNATURE_CASES = [
    ("O_real", ((1, 0), (2, 0)), (2, 0)),
    ("O_real", ((1, 1), (2, 1)), (3, 3)),
    ("O_real", ((2, 0), (0, 2)), (0, 4)),
    ("U", ((1, 0), (1, 0)), (2, 0)),
    ("U", ((1, 1), (1, 0)), (2, 2)),
    ("U", ((2, 1), (1, 1)), (6, 6)),
    ("Sp_R", (1, 1), (2, 2)),
    ("Sp_R", (1, 2), (4, 4)),
    ("Sp_R", (2, 2), (8, 8)),
    ("O_C_real", (2, 2), (4, 4)),
    ("O_C_real", (2, 3), (6, 6)),
    ("O_C_real", (3, 3), (9, 9)),
    ("Sp_C_real", (1, 1), (4, 4)),
    ("Sp_C_real", (1, 2), (8, 8)),
    ("Sp_C_real", (2, 1), (8, 8)),
    ("Sp_H", ((1, 0), (1, 0)), (4, 0)),
    ("Sp_H", ((1, 0), (1, 1)), (4, 4)),
    ("Sp_H", ((1, 1), (1, 1)), (8, 8)),
    ("Sp_H", ((2, 0), (1, 0)), (8, 0)),
    ("O_star", (2, 2), (8, 8)),
    ("O_star", (2, 3), (12, 12)),
    ("O_star", (3, 2), (12, 12)),
    ("GL_R", (1, 1), (1, 1)),
    ("GL_R", (2, 3), (6, 6)),
    ("GL_R", (2, 2), (4, 4)),
    ("GL_C", (1, 1), (2, 2)),
    ("GL_C", (1, 2), (4, 4)),
    ("GL_C", (2, 1), (4, 4)),
    ("GL_H", (1, 1), (4, 4)),
    ("GL_H", (1, 2), (8, 8)),
    ("GL_H", (2, 1), (8, 8)),
    ("O_C", (2, 2), (4, 0)),
    ("O_C", (3, 3), (9, 0)),
    ("O_C", (2, 4), (8, 0)),
    ("Sp_C", (1, 1), (4, 0)),
    ("Sp_C", (1, 2), (8, 0)),
    ("Sp_C", (2, 1), (8, 0)),
    ("GL_C_complex", (1, 1), (2, 0)),
    ("GL_C_complex", (2, 1), (4, 0)),
    ("GL_C_complex", (1, 3), (6, 0)),
]


@pytest.mark.parametrize("family,params,signature", SIGNATURE_CASES)
def test_ambient_signature_matches_classification(family, params, signature):
    spec = build_pair(family, params)
    assert spec.space.signature == signature


def test_excluded_sizes_rejected():
    for fam in ("O_C", "O_C_real", "O_star"):
        with pytest.raises(ClassificationError):
            build_pair(fam, (1, 2))
    with pytest.raises(ClassificationError):
        build_pair("U", ((0, 0), (1, 0)))
    with pytest.raises(ClassificationError):
        build_pair("nonsense", (1, 1))


# --- embedded structure -----------------------------------------------------

@pytest.mark.parametrize("family,params", sorted(MINIMAL_PARAMS.items()))
def test_embeddings_are_isometries_and_commute(family, params):
    spec = build_pair(family, params)
    rng = np.random.default_rng(99)
    for _ in range(100):
        g = spec.G.random_element(rng)
        h = spec.Gp.random_element(rng)
        assert g.is_isometry()
        assert h.is_isometry()
        assert np.allclose(g.matrix @ h.matrix, h.matrix @ g.matrix, atol=1e-8)
    for L in spec.G.lie_generators + spec.Gp.lie_generators:
        assert L.is_b_antisymmetric()
    for rep in spec.G.component_reps + spec.Gp.component_reps:
        assert rep.map.is_isometry()


def test_component_reps_exact_isometries_where_integer():
    # reflection-type representatives have integer entries: check exactly
    for family, params in [("O_real", ((1, 1), (1, 1))), ("GL_R", (2, 2)),
                           ("O_C_real", (2, 2))]:
        spec = build_pair(family, params)
        B = np.diag(spec.space.norms)
        for rep in spec.G.component_reps + spec.Gp.component_reps:
            M = rep.map.matrix
            Mi = np.round(M.real).astype(int)
            assert np.abs(M - Mi).max() < 1e-12
            assert (Mi.T @ B @ Mi == B).all()


def test_u1_single_rotation_generator():
    spec = build_pair("U", ((1, 0), (1, 0)))
    assert len(spec.G.lie_generators) == 1
    X = spec.G.lie_generators[0].matrix
    assert np.allclose(X, np.array([[0.0, -1.0], [1.0, 0.0]])) \
        or np.allclose(X, np.array([[0.0, 1.0], [-1.0, 0.0]]))


def test_gl1_component_rep_negates_both_split_vectors():
    # s = (-1) acts by -1 on E1 and on E1^*, so both b_+- vectors flip
    spec = build_pair("GL_R", (1, 1))
    rep = spec.G.component_reps[0]
    assert np.allclose(rep.map.matrix, -np.eye(2))


def test_o2c_reflection_realifies_to_kl_pattern():
    # det -1 representative of the first factor negates exactly the k/l slots
    # with s = 1: 1-based k-indices (m-t)n+1 -> {1, 3} for n = m = 2
    spec = build_pair("O_C_real", (2, 2))
    g = spec.G.component_reps[0].map.matrix
    want = np.diag([-1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0])
    assert np.allclose(g, want)


def test_gl_type2_inverse_transpose_on_dual():
    spec = build_pair("GL_R", (2, 2))
    A = np.array([[2.0, 1.0], [0.0, 0.5]])
    g = spec.G.embed_group(A)
    assert g.is_isometry()
    gi = spec.G.embed_group(np.linalg.inv(A))
    assert np.allclose(g.matrix @ gi.matrix, np.eye(8), atol=1e-10)


# --- complexification --------------------------------------------------------

def test_complexify_dimension_preserved_all_families():
    for family, params in MINIMAL_PARAMS.items():
        spec = build_pair(family, params)
        cpx = complexify(spec)
        assert cpx.space_c.dim == spec.space.dim
        B = np.eye(cpx.space_c.dim)
        for X in cpx.lie_G + cpx.lie_Gp:
            assert np.allclose(X.T + X, 0, atol=1e-9)
        for _, g in cpx.comps_G + cpx.comps_Gp:
            assert np.allclose(g.T @ g, B, atol=1e-9)


def test_u1_pair_complex_structure_splits_evenly():
    spec = build_pair("U", ((1, 0), (1, 0)))
    cpx = complexify(spec)
    w = np.linalg.eigvals(cpx.complex_structure)
    assert sorted(np.round(w.imag).astype(int).tolist()) == [-1, 1]


def test_indefinite_u_pair_complex_structure_splits_evenly():
    # the complexified space of a unitary pair splits into conjugate halves
    spec = build_pair("U", ((1, 1), (1, 0)))
    cpx = complexify(spec)
    w = np.linalg.eigvals(cpx.complex_structure)
    counts = sorted(np.round(w.imag).astype(int).tolist())
    assert counts == [-1, -1, 1, 1]


def test_gl_h_complexification_is_full_matrix_algebra():
    # complex span of the embedded quaternionic gl(n) has dimension (2n)^2
    for n in (1, 2):
        spec = build_pair("GL_H", (n, 1))
        cpx = complexify(spec)
        assert complex_span_dimension(cpx.lie_G) == 4 * n * n


def test_sp_h_complexification_dimension():
    # sp(p,q,H) complexifies to the full complex symplectic algebra of rank p+q
    spec = build_pair("Sp_H", ((1, 1), (1, 0)))
    cpx = complexify(spec)
    k = 2
    assert complex_span_dimension(cpx.lie_G) == k * (2 * k + 1)


def test_u_lie_dimensions():
    assert len(u_pq_basis(2, 1)) == 9
    assert len(sp_pq_quat_basis(1, 1)) == 10


def test_spec_serialization_roundtrip():
    spec = build_pair("U", ((1, 1), (1, 0)))
    blob = spec.to_json()
    spec2 = build_pair(blob["family"], blob["params"])
    assert spec2.space == spec.space
