"""Sparse Clifford and exterior algebra over a quadratic space.

Basis blades are bitmasks over an orthogonal basis ``e_0 .. e_{n-1}`` with
``e_i e_j + e_j e_i = 2 b(e_i, e_j) = 2 delta_ij norms[i]``, i.e. every
generator squares to its norm (+1 or -1).  Elements are sparse maps from
blade mask to coefficient, with either exact Gaussian-rational or complex
double coefficients.

The quadratic convention matters: with generators squaring to the half-norm
the unit-vector membership equations of the Pin group have no solutions over
definite forms, so everything downstream (reflections, lifts, spinor norms)
is normalized to ``e_i^2 = norms[i]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .scalars import QI

MAX_DIM = 62
FLOAT_DROP_TOL = 1e-12
DEFAULT_EQ_TOL = 1e-9

Scalar = Union[complex, QI]


class SpaceMismatchError(ValueError):
    """Operands live over different quadratic spaces."""


class BackendMismatchError(TypeError):
    """Exact and float coefficients mixed in one operation."""


# ---------------------------------------------------------------------------
# quadratic spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticSpace:
    """A real or complex orthogonal space with a distinguished orthogonal basis.

    ``norms[i]`` is b(e_i, e_i), always +-1; complex spaces carry the standard
    form (all +1), since every non-degenerate complex symmetric form is
    equivalent to it.
    """

    field_kind: str  # "real" | "complex"
    norms: Tuple[int, ...]

    def __post_init__(self):
        if self.field_kind not in ("real", "complex"):
            raise ValueError(f"field_kind must be 'real' or 'complex', got {self.field_kind!r}")
        if not 1 <= len(self.norms) <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {len(self.norms)}")
        if any(n not in (1, -1) for n in self.norms):
            raise ValueError("every basis norm must be +1 or -1")
        if self.field_kind == "complex" and any(n != 1 for n in self.norms):
            raise ValueError("complex spaces carry the standard form: all norms +1")

    @property
    def dim(self) -> int:
        return len(self.norms)

    @property
    def signature(self) -> Tuple[int, int]:
        p = sum(1 for n in self.norms if n == 1)
        return p, self.dim - p


def real_space(p: int, q: int = 0) -> QuadraticSpace:
    """Real space of signature (p, q), norms sorted +1 block then -1 block."""
    return QuadraticSpace("real", (1,) * p + (-1,) * q)


def complex_space(n: int) -> QuadraticSpace:
    return QuadraticSpace("complex", (1,) * n)


def direct_sum(s1: QuadraticSpace, s2: QuadraticSpace) -> QuadraticSpace:
    if s1.field_kind != s2.field_kind:
        raise SpaceMismatchError("cannot sum spaces over different fields")
    return QuadraticSpace(s1.field_kind, s1.norms + s2.norms)


# ---------------------------------------------------------------------------
# blade arithmetic
# ---------------------------------------------------------------------------

def grade(mask: int) -> int:
    return bin(mask).count("1")


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenation of blades a and b.

    For each set bit of b, count set bits of a strictly above it; the sign is
    (-1) to that total.
    """
    total = 0
    while b:
        j = (b & -b).bit_length() - 1
        total += grade(a >> (j + 1))
        b &= b - 1
    return -1 if total & 1 else 1


def blade_product(a: int, b: int, space: QuadraticSpace) -> Tuple[int, int]:
    """Product of two basis blades: (mask a XOR b, integer coefficient)."""
    coeff = reorder_sign(a, b)
    inter = a & b
    while inter:
        j = (inter & -inter).bit_length() - 1
        coeff *= space.norms[j]
        inter &= inter - 1
    return a ^ b, coeff


def wedge_blades(a: int, b: int) -> Tuple[int, int]:
    """Exterior product of basis blades; zero coefficient on intersection."""
    if a & b:
        return 0, 0
    return a | b, reorder_sign(a, b)


def _tau_sign(k: int) -> int:
    return -1 if (k * (k - 1) // 2) & 1 else 1


# ---------------------------------------------------------------------------
# sparse multivectors
# ---------------------------------------------------------------------------

class _BladeMap:
    """Shared sparse-term machinery for Clifford and exterior elements."""

    __slots__ = ("space", "terms", "exact")

    def __init__(self, space: QuadraticSpace, terms: Dict[int, Scalar], exact: bool,
                 _clean: bool = False):
        self.space = space
        self.exact = exact
        if _clean:
            self.terms = terms
        else:
            self.terms = _normalize_terms(terms, exact)
        top = 1 << space.dim
        if any(m >= top or m < 0 for m in self.terms):
            raise ValueError("blade mask out of range for the space")

    # -- ring-independent pieces -------------------------------------------

    def _binary_check(self, other: "_BladeMap"):
        if self.space != other.space:
            raise SpaceMismatchError("elements live over different spaces")
        if self.exact != other.exact:
            raise BackendMismatchError("cannot mix exact and float coefficients")

    def coeff(self, mask: int) -> Scalar:
        zero = QI.of(0) if self.exact else 0j
        return self.terms.get(mask, zero)

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self) -> List[int]:
        return sorted({grade(m) for m in self.terms})

    def parity(self) -> Optional[int]:
        """0 even, 1 odd, None if not parity-homogeneous (or zero)."""
        ps = {grade(m) & 1 for m in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def grade_part(self, k: int):
        return self._new({m: c for m, c in self.terms.items() if grade(m) == k})

    def norm(self) -> float:
        return math.sqrt(sum(_abs2(c) for c in self.terms.values()))

    def distance(self, other) -> float:
        self._binary_check(other)
        keys = set(self.terms) | set(other.terms)
        return math.sqrt(sum(_abs2(_as_complex(self.coeff(m)) - _as_complex(other.coeff(m)))
                             for m in keys))

    def isclose(self, other, tol: float = DEFAULT_EQ_TOL) -> bool:
        if self.space != other.space:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(abs(_as_complex(self.coeff(m)) - _as_complex(other.coeff(m))) <= tol
                   for m in keys)

    def equals_exact(self, other) -> bool:
        self._binary_check(other)
        return self.terms == other.terms

    def _new(self, terms, clean=False):
        return type(self)(self.space, terms, self.exact, _clean=clean)

    def __add__(self, other):
        self._binary_check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _zero(self.exact)) + c
        return self._new(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()}, clean=True)

    def scale(self, s):
        s = QI.coerce(s) if self.exact else _as_complex(s)
        return self._new({m: c * s for m, c in self.terms.items()})

    def __rmul__(self, s):
        if isinstance(s, _BladeMap):
            return NotImplemented
        return self.scale(s)

    def to_float(self):
        return type(self)(self.space, {m: _as_complex(c) for m, c in self.terms.items()},
                          exact=False)

    def items(self) -> Iterator[Tuple[int, Scalar]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return f"{type(self).__name__}(0)"
        bits = []
        for m, c in sorted(self.terms.items()):
            label = "1" if m == 0 else "e" + "e".join(str(i) for i in _mask_indices(m))
            bits.append(f"{c}*{label}")
        return f"{type(self).__name__}({' + '.join(bits)})"


def _mask_indices(m: int) -> List[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def _zero(exact: bool) -> Scalar:
    return QI.of(0) if exact else 0j


def _abs2(c) -> float:
    if isinstance(c, QI):
        return float(c.abs2())
    c = complex(c)
    return c.real * c.real + c.imag * c.imag


def _as_complex(c) -> complex:
    return c.to_complex() if isinstance(c, QI) else complex(c)


def _normalize_terms(terms: Dict[int, Scalar], exact: bool) -> Dict[int, Scalar]:
    out: Dict[int, Scalar] = {}
    for m, c in terms.items():
        c = QI.coerce(c) if exact else _as_complex(c)
        if exact:
            if not c.is_zero():
                out[int(m)] = c
        elif abs(c) > FLOAT_DROP_TOL:
            out[int(m)] = c
    return out


class CliffordElement(_BladeMap):
    """Sparse element of Cliff(E, b); `*` is the Clifford product."""

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        self._binary_check(other)
        norms = self.space.norms
        out: Dict[int, Scalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                coeff = reorder_sign(ma, mb)
                inter = ma & mb
                while inter:
                    j = (inter & -inter).bit_length() - 1
                    coeff *= norms[j]
                    inter &= inter - 1
                m = ma ^ mb
                prev = out.get(m)
                contrib = ca * cb if coeff == 1 else -(ca * cb)
                out[m] = contrib if prev is None else prev + contrib
        return self._new(out)

    def alpha(self) -> "CliffordElement":
        """Grade involution: (-1)^k on grade-k parts."""
        return self._new({m: (c if grade(m) % 2 == 0 else -c) for m, c in self.terms.items()},
                         clean=True)

    def tau(self) -> "CliffordElement":
        """Reversal anti-automorphism: (-1)^{k(k-1)/2} on grade-k parts."""
        return self._new({m: (c if _tau_sign(grade(m)) == 1 else -c)
                          for m, c in self.terms.items()}, clean=True)


class ExteriorElement(_BladeMap):
    """Sparse element of Lambda(E); `^` is the wedge product."""

    def __xor__(self, other) -> "ExteriorElement":
        self._binary_check(other)
        out: Dict[int, Scalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                m = ma | mb
                contrib = ca * cb if reorder_sign(ma, mb) == 1 else -(ca * cb)
                prev = out.get(m)
                out[m] = contrib if prev is None else prev + contrib
        return self._new(out)


# -- constructors -----------------------------------------------------------

def scalar_element(space: QuadraticSpace, value=1, exact: bool = False) -> CliffordElement:
    return CliffordElement(space, {0: value}, exact)


def basis_vector(space: QuadraticSpace, i: int, exact: bool = False) -> CliffordElement:
    return CliffordElement(space, {1 << i: 1}, exact)


def blade(space: QuadraticSpace, indices: Iterable[int], exact: bool = False) -> CliffordElement:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return CliffordElement(space, {mask: 1}, exact)


def from_vector(space: QuadraticSpace, coords: Sequence, exact: bool = False) -> CliffordElement:
    return CliffordElement(space, {1 << i: c for i, c in enumerate(coords)}, exact)


def exterior_vector(space: QuadraticSpace, coords: Sequence, exact: bool = False) -> ExteriorElement:
    return ExteriorElement(space, {1 << i: c for i, c in enumerate(coords)}, exact)


def vector_coords(x: CliffordElement) -> List[complex]:
    """Coordinates of a grade-1 element (zero padding elsewhere)."""
    out = [0j] * x.space.dim
    for m, c in x.terms.items():
        if grade(m) != 1:
            raise ValueError("element is not grade-1")
        out[m.bit_length() - 1] = _as_complex(c)
    return out


# ---------------------------------------------------------------------------
# graded tensor product  Cliff(E1) ox Cliff(E2) = Cliff(E1 + E2)
# ---------------------------------------------------------------------------

def embed_factor(x: CliffordElement, total: QuadraticSpace, offset: int) -> CliffordElement:
    """Canonical algebra embedding of a factor into Cliff(E1 + E2) by index shift."""
    return CliffordElement(total, {m << offset: c for m, c in x.terms.items()}, x.exact)


def graded_tensor_mul(a: Tuple[CliffordElement, CliffordElement],
                      b: Tuple[CliffordElement, CliffordElement],
                      ) -> Tuple[CliffordElement, CliffordElement]:
    """Multiply two decomposable tensors (c1 ox c2)(d1 ox d2) by the graded sign rule.

    All four factors must be parity-homogeneous; the rule is
    (c1 ox c2)(d1 ox d2) = (-1)^{v1 u2} (c1 d1) ox (c2 d2) with v1 the parity
    of d1 and u2 the parity of c2.  The sign lands on the first component of
    the returned pair.
    """
    c1, c2 = a
    d1, d2 = b
    v1 = d1.parity()
    u2 = c2.parity()
    if v1 is None or u2 is None or c1.parity() is None or d2.parity() is None:
        raise ValueError("graded tensor product requires parity-homogeneous factors")
    p1 = c1 * d1
    p2 = c2 * d2
    if v1 & u2 & 1:
        p1 = -p1
    return p1, p2


def tensor_to_sum(c1: CliffordElement, c2: CliffordElement,
                  total: Optional[QuadraticSpace] = None) -> CliffordElement:
    """Image of c1 ox c2 in Cliff(E1 + E2): embed both factors and multiply."""
    if total is None:
        total = direct_sum(c1.space, c2.space)
    return embed_factor(c1, total, 0) * embed_factor(c2, total, c1.space.dim)


# ---------------------------------------------------------------------------
# complexification
# ---------------------------------------------------------------------------

def complexified_space(space: QuadraticSpace) -> QuadraticSpace:
    return complex_space(space.dim)


def inclusion_scales(space: QuadraticSpace) -> List[complex]:
    """Per-generator scale c_k with iota(e_k) = c_k * e~_k in the complexified space.

    c_k^2 = norms[k], so negative-norm generators pick up a factor i.
    """
    return [1.0 + 0j if n == 1 else 1j for n in space.norms]


def complexify_element(x: CliffordElement) -> CliffordElement:
    """Algebra inclusion Cliff(E, b) -> Cliff(E_C, b_C) on blade coefficients."""
    if x.space.field_kind == "complex":
        return x if not x.exact else x.to_float()
    scales = inclusion_scales(x.space)
    target = complexified_space(x.space)
    out: Dict[int, complex] = {}
    for m, c in x.terms.items():
        f = _as_complex(c)
        mm = m
        while mm:
            j = (mm & -mm).bit_length() - 1
            f *= scales[j]
            mm &= mm - 1
        out[m] = out.get(m, 0j) + f
    return CliffordElement(target, out, exact=False)


# ---------------------------------------------------------------------------
# Chevalley identification Lambda(E) <-> Cliff(E, b)
# ---------------------------------------------------------------------------

def chevalley_T(w: ExteriorElement) -> CliffordElement:
    """Antisymmetrized product map; the identity on orthogonal-basis blade coordinates.

    On a blade of pairwise-anticommuting generators every permutation term of
    the antisymmetrization equals the ordered product, so the 1/k! average
    collapses and T is coordinatewise.
    """
    return CliffordElement(w.space, dict(w.terms), w.exact, _clean=True)


def chevalley_T_inv(x: CliffordElement) -> ExteriorElement:
    return ExteriorElement(x.space, dict(x.terms), x.exact, _clean=True)


def chevalley_T_vectors(vectors: Sequence[CliffordElement]) -> CliffordElement:
    """T(v_1 ^ ... ^ v_k) computed from the definition, for cross-checks.

    Averages the signed products over all permutations; exponential in k, so
    only meant for small k test oracles.
    """
    import itertools

    if not vectors:
        raise ValueError("need at least one vector")
    space = vectors[0].space
    exact = vectors[0].exact
    k = len(vectors)
    acc = CliffordElement(space, {}, exact)
    for perm in itertools.permutations(range(k)):
        sgn = _perm_sign(perm)
        prod = scalar_element(space, 1, exact)
        for i in perm:
            prod = prod * vectors[i]
        acc = acc + (prod if sgn == 1 else -prod)
    if exact:
        return acc.scale(Fraction(1, math.factorial(k)))
    return acc.scale(1.0 / math.factorial(k))


def _perm_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv & 1 else 1


def exterior_apply_map(matrix, w: ExteriorElement) -> ExteriorElement:
    """Factorwise action of a linear map on an exterior element.

    g . (v_1 ^ ... ^ v_k) = g(v_1) ^ ... ^ g(v_k), extended linearly over the
    sparse blade terms; matrix is dense over the distinguished basis.
    """
    space = w.space
    n = space.dim
    cols = [exterior_vector(space, [matrix[r][c] if not hasattr(matrix, "shape") else matrix[r, c]
                                    for r in range(n)]) for c in range(n)]
    out = ExteriorElement(space, {}, exact=False)
    for m, c in w.terms.items():
        piece = ExteriorElement(space, {0: 1.0}, exact=False)
        mm = m
        while mm:
            j = (mm & -mm).bit_length() - 1
            piece = piece ^ cols[j]
            mm &= mm - 1
        out = out + piece.scale(_as_complex(c))
    return out
