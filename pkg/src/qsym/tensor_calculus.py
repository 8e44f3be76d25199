"""Dense linear maps between tensor powers of a multimatrix algebra.

All maps are written in the orthonormal basis of :func:`qsym.multimatrix.orthonormal_basis`.
The leftmost tensor factor is the most significant index, and maps act on column
vectors, so ``tensor(S, T)`` is ``np.kron(S, T)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .multimatrix import (AlgebraElement, AlgebraShape, TraceWeights, multiply,
                          orthonormal_basis)

__all__ = ['TensorMap', 'RelationReport', 'PowerMismatchError',
           'build_mu', 'build_eta', 'adjoint', 'compose', 'tensor', 'identity', 'embed',
           'apply_at', 'iterated_comultiplication', 'iterated_unit', 'duality_vector',
           'jones_projections', 'braid_commutator_deviation', 'verify_frobenius',
           'verify_jones_relations', 'relation']

DEFAULT_TOL = 1e-10


class PowerMismatchError(ValueError):
    """Raised when tensor powers of composed maps do not line up."""


@dataclass(frozen=True, eq=False)
class TensorMap:
    """A linear map ``B^{⊗a} -> B^{⊗b}``, stored as an ``n^b x n^a`` matrix."""
    shape: AlgebraShape
    domain_power: int
    codomain_power: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        n = self.shape.total_dim
        expected = (n ** self.codomain_power, n ** self.domain_power)
        if mat.shape != expected:
            raise ValueError(f'matrix of shape {mat.shape}, expected {expected}')
        object.__setattr__(self, 'matrix', mat)

    @property
    def n(self) -> int:
        return self.shape.total_dim

    @property
    def H(self) -> TensorMap:
        return adjoint(self)

    def __matmul__(self, other: TensorMap) -> TensorMap:
        return compose(self, other)

    def __add__(self, other: TensorMap) -> TensorMap:
        _check_same(self, other)
        return TensorMap(self.shape, self.domain_power, self.codomain_power, self.matrix + other.matrix)

    def __sub__(self, other: TensorMap) -> TensorMap:
        _check_same(self, other)
        return TensorMap(self.shape, self.domain_power, self.codomain_power, self.matrix - other.matrix)

    def __mul__(self, scalar) -> TensorMap:
        return TensorMap(self.shape, self.domain_power, self.codomain_power, scalar * self.matrix)

    __rmul__ = __mul__

    def vector(self) -> np.ndarray:
        """The image of ``1`` for a map out of ``B^{⊗0}``."""
        if self.domain_power != 0:
            raise PowerMismatchError('only maps with domain power 0 are vectors')
        return self.matrix[:, 0]

    def deviation(self, other: TensorMap) -> float:
        _check_same(self, other)
        return float(np.max(np.abs(self.matrix - other.matrix), initial=0.0))


def _check_same(s: TensorMap, t: TensorMap):
    if s.shape.total_dim != t.shape.total_dim:
        raise PowerMismatchError('maps live over algebras of different dimension')
    if (s.domain_power, s.codomain_power) != (t.domain_power, t.codomain_power):
        raise PowerMismatchError(f'{s.domain_power}->{s.codomain_power} vs '
                                 f'{t.domain_power}->{t.codomain_power}')


@dataclass(frozen=True)
class RelationReport:
    """Outcome of checking one operator identity."""
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def to_dict(self) -> dict:
        return {'name': self.name, 'expected': 0.0, 'computed': self.deviation,
                'deviation': self.deviation, 'tolerance': self.tolerance, 'pass': self.passed}


def relation(name: str, lhs: TensorMap, rhs: TensorMap, tol: float = DEFAULT_TOL) -> RelationReport:
    return RelationReport(name, lhs.deviation(rhs), tol)


def adjoint(t: TensorMap) -> TensorMap:
    return TensorMap(t.shape, t.codomain_power, t.domain_power, t.matrix.conj().T)


def compose(s: TensorMap, t: TensorMap) -> TensorMap:
    """``s ∘ t`` (apply ``t`` first)."""
    if t.codomain_power != s.domain_power or s.n != t.n:
        raise PowerMismatchError(f'cannot compose {s.domain_power}->{s.codomain_power} '
                                 f'after {t.domain_power}->{t.codomain_power}')
    return TensorMap(s.shape, t.domain_power, s.codomain_power, s.matrix @ t.matrix)


def tensor(*maps: TensorMap) -> TensorMap:
    """Kronecker product; the first map acts on the leftmost factors."""
    if not maps:
        raise ValueError('tensor() needs at least one map')
    if len({t.n for t in maps}) != 1:
        raise PowerMismatchError('maps live over algebras of different dimension')
    return TensorMap(maps[0].shape,
                     sum(t.domain_power for t in maps),
                     sum(t.codomain_power for t in maps),
                     reduce(np.kron, [t.matrix for t in maps]))


def identity(shape: AlgebraShape, m: int) -> TensorMap:
    """``id_m`` on ``B^{⊗m}``."""
    return TensorMap(shape, m, m, np.eye(shape.total_dim ** m, dtype=complex))


def embed(t: TensorMap, left: int, right: int) -> TensorMap:
    """``id_left ⊗ t ⊗ id_right`` as a dense map."""
    parts = []
    if left:
        parts.append(identity(t.shape, left))
    parts.append(t)
    if right:
        parts.append(identity(t.shape, right))
    return tensor(*parts)


def apply_at(t: TensorMap, data: np.ndarray, left: int, right: int) -> np.ndarray:
    """Apply ``id_left ⊗ t ⊗ id_right`` to the columns of ``data`` without forming the Kronecker product."""
    n = t.n
    data = np.asarray(data)
    cols = data.shape[1]
    block = data.reshape(n ** left, n ** t.domain_power, n ** right * cols)
    out = np.matmul(t.matrix, block)
    return out.reshape(n ** (left + t.codomain_power + right), cols)


def build_mu(shape: AlgebraShape, w: TraceWeights | None = None) -> TensorMap:
    """The multiplication ``B ⊗ B -> B``; column ``(a, b)`` holds the coordinates of ``f_a f_b``."""
    basis = orthonormal_basis(shape, w)
    n = shape.total_dim
    mat = np.empty((n, n * n), dtype=complex)
    for a, fa in enumerate(basis):
        for b, fb in enumerate(basis):
            mat[:, a * n + b] = basis.coordinates(multiply(fa, fb))
    return TensorMap(shape, 2, 1, mat)


def build_eta(shape: AlgebraShape, w: TraceWeights | None = None) -> TensorMap:
    """The unit map ``C -> B``, ``1 ↦ 1``."""
    basis = orthonormal_basis(shape, w)
    return TensorMap(shape, 0, 1, basis.coordinates(AlgebraElement.unit(shape))[:, None])


def iterated_comultiplication(shape: AlgebraShape, p: int,
                              w: TraceWeights | None = None) -> TensorMap:
    """``(id_{p-1} ⊗ μ*) ... (id ⊗ μ*) μ*`` from ``B`` to ``B^{⊗(p+1)}``; ``id_1`` for ``p = 0``."""
    if p < 0:
        raise ValueError('p must be non-negative')
    if p == 0:
        return identity(shape, 1)
    comult = adjoint(build_mu(shape, w))
    mat = comult.matrix
    for j in range(1, p):
        mat = apply_at(comult, mat, j, 0)
    return TensorMap(shape, 1, p + 1, mat)


def iterated_unit(shape: AlgebraShape, p: int, w: TraceWeights | None = None) -> TensorMap:
    """``η^{(p)} = (μ*)^{(p-1)} η``, a vector in ``B^{⊗p}``."""
    if p < 1:
        raise ValueError('p must be at least 1')
    eta = build_eta(shape, w)
    if p == 1:
        return eta
    comult = adjoint(build_mu(shape, w))
    vec = comult.matrix @ eta.matrix
    for j in range(1, p - 1):
        vec = apply_at(comult, vec, j, 0)
    return TensorMap(shape, 0, p, vec)


def duality_vector(shape: AlgebraShape) -> TensorMap:
    """The cup ``t = μ* η`` exhibiting the self-duality of ``B``."""
    return iterated_unit(shape, 2)


def jones_projections(shape: AlgebraShape) -> tuple[TensorMap, TensorMap]:
    """``P = n^{-1} μ* μ`` on ``B ⊗ B`` and ``Q = η η*`` on ``B``."""
    mu = build_mu(shape)
    eta = build_eta(shape)
    return (1.0 / shape.total_dim) * (adjoint(mu) @ mu), eta @ adjoint(eta)


def verify_frobenius(shape: AlgebraShape, tol: float = DEFAULT_TOL,
                     w: TraceWeights | None = None) -> list[RelationReport]:
    """Check the multiplication/unit relations for the trace with weights ``w``.

    With a non-canonical ``w`` the adjoints are taken for the altered scalar product,
    and the first relation is expected to fail.
    """
    n = shape.total_dim
    mu = build_mu(shape, w)
    eta = build_eta(shape, w)
    comult = adjoint(mu)
    id1 = identity(shape, 1)
    frob = comult @ mu
    return [
        relation('mu mu* = n id', mu @ comult, n * id1, tol),
        relation('eta* eta = id', adjoint(eta) @ eta, identity(shape, 0), tol),
        relation('(mu x id)(id x mu*) = mu* mu', tensor(mu, id1) @ tensor(id1, comult), frob, tol),
        relation('(id x mu)(mu* x id) = mu* mu', tensor(id1, mu) @ tensor(comult, id1), frob, tol),
        relation('mu(mu x id) = mu(id x mu)', mu @ tensor(mu, id1), mu @ tensor(id1, mu), tol),
        relation('mu(id x eta) = id', mu @ tensor(id1, eta), id1, tol),
        relation('mu(eta x id) = id', mu @ tensor(eta, id1), id1, tol),
    ]


def braid_commutator_deviation(P: TensorMap) -> float:
    """``max |(P ⊗ id)(id ⊗ P) - (id ⊗ P)(P ⊗ id)|`` for ``P`` on ``B ⊗ B``.

    The two products are contracted one leading index at a time, so the
    ``n^3 x n^3`` matrices are never formed.
    """
    if (P.domain_power, P.codomain_power) != (2, 2):
        raise PowerMismatchError('P must act on B (x) B')
    n = P.n
    Pt = P.matrix.reshape(n, n, n, n)
    worst = 0.0
    for a in range(n):
        # both reordered to rows (b, c), columns (x, y, z)
        lhs = np.tensordot(Pt[a], Pt, axes=(2, 0)).transpose(0, 2, 1, 3, 4)
        rhs = np.tensordot(Pt, Pt[a], axes=(2, 0)).transpose(0, 1, 3, 4, 2)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def verify_jones_relations(shape: AlgebraShape, tol: float = DEFAULT_TOL) -> list[RelationReport]:
    """Check the identities tying ``P`` and ``Q`` into a Temperley-Lieb representation of index ``n``."""
    n = shape.total_dim
    P, Q = jones_projections(shape)
    id1 = identity(shape, 1)
    Q_id, id_Q = tensor(Q, id1), tensor(id1, Q)
    return [
        relation('P^2 = P', P @ P, P, tol),
        relation('P* = P', adjoint(P), P, tol),
        relation('Q^2 = Q', Q @ Q, Q, tol),
        relation('Q* = Q', adjoint(Q), Q, tol),
        relation('n(Q x id)P(Q x id) = Q x id', n * (Q_id @ P @ Q_id), Q_id, tol),
        relation('n(id x Q)P(id x Q) = id x Q', n * (id_Q @ P @ id_Q), id_Q, tol),
        relation('nP(id x Q)P = P', n * (P @ id_Q @ P), P, tol),
        relation('nP(Q x id)P = P', n * (P @ Q_id @ P), P, tol),
        RelationReport('(P x id)(id x P) = (id x P)(P x id)', braid_commutator_deviation(P), tol),
    ]
