"""Normal-form generators of ``Hom(0, k)`` and Hom-space dimensions by Gram rank.

A normal-form arrow is ``(id_x ⊗ α ⊗ id_y ⊗ β ⊗ ...) η^{(p)}``: the ``p`` legs of
``η^{(p)}`` are split into runs of identity strands (``gaps``), and a child arrow
is spliced in after each run, except possibly the last one.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .diagram_algebra import RankInstabilityError, algebra_basis, catalan
from .multimatrix import AlgebraShape
from .tensor_calculus import TensorMap, apply_at, duality_vector, iterated_unit

__all__ = ['NormalFormArrow', 'GramReport', 'BendMismatchError', 'ETA',
           'enumerate_Xk', 'count_Xk', 'realize_arrow', 'gram_matrix', 'numeric_rank',
           'singular_values', 'hom_dimension', 'end_dimension', 'verify_independence',
           'bend', 'nested_cup', 'max_k']

DEFAULT_TOL_REL = 1e-8
STABILITY_TOLS = (1e-6, 1e-10)


class BendMismatchError(ArithmeticError):
    """Bent matrices and Gram matrix disagree on the rank (an index-convention bug)."""


def max_k() -> int:
    """Largest ``k`` accepted by :func:`hom_dimension`; ``QSYM_MAX_K`` overrides the default 6."""
    return int(os.environ.get('QSYM_MAX_K', 6))


@dataclass(frozen=True)
class NormalFormArrow:
    """One element of ``X_k``.

    ``gaps`` are the runs of identity strands on the legs of ``η^{(p)}``; child ``i``
    sits right after run ``i``. There are as many children as runs, or one fewer.
    The leaf ``η`` is ``NormalFormArrow(1, (1,), ())``.
    """
    p: int
    gaps: tuple[int, ...]
    children: tuple[NormalFormArrow, ...] = ()
    size: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.p < 1 or not self.gaps or any(g < 1 for g in self.gaps) or sum(self.gaps) != self.p:
            raise ValueError(f'gaps {self.gaps} must be positive and sum to p = {self.p}')
        if len(self.children) not in (len(self.gaps) - 1, len(self.gaps)):
            raise ValueError('need one child per gap, or one fewer')
        object.__setattr__(self, 'size', self.p + sum(c.size for c in self.children))

    def to_json(self) -> dict:
        return {'p': self.p, 'gaps': list(self.gaps), 'children': [c.to_json() for c in self.children]}

    @classmethod
    def from_json(cls, data: dict) -> NormalFormArrow:
        return cls(data['p'], tuple(data['gaps']), tuple(cls.from_json(c) for c in data['children']))

    def __str__(self):
        if self.p == 1 and not self.children:
            return 'eta'
        parts = []
        for i, g in enumerate(self.gaps):
            parts.append(f'id{g}')
            if i < len(self.children):
                parts.append(f'[{self.children[i]}]')
        return f"({' x '.join(parts)}) eta^({self.p})"


ETA = NormalFormArrow(1, (1,))


def _compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _all_compositions(total: int):
    for parts in range(1, total + 1):
        yield from _compositions(total, parts)


@lru_cache(maxsize=None)
def _enumerate(k: int) -> tuple[NormalFormArrow, ...]:
    if k == 1:
        return (ETA,)
    out = []
    for p in range(1, k + 1):
        for gaps in _all_compositions(p):
            for n_children in (len(gaps) - 1, len(gaps)):
                for sizes in _compositions(k - p, n_children):
                    for kids in product(*(_enumerate(a) for a in sizes)):
                        out.append(NormalFormArrow(p, gaps, kids))
    return tuple(out)


def enumerate_Xk(k: int) -> list[NormalFormArrow]:
    """The generating set ``X_k`` of ``Hom(0, k)``; it has ``C_k`` elements."""
    if k < 1:
        raise ValueError('X_k is defined for k >= 1')
    return list(_enumerate(k))


@lru_cache(maxsize=None)
def count_Xk(k: int) -> int:
    """``|X_k|`` from the recursive definition alone, without building the arrows."""
    if k == 1:
        return 1
    total = 0
    for p in range(1, k + 1):
        for gaps in _all_compositions(p):
            for n_children in (len(gaps) - 1, len(gaps)):
                for sizes in _compositions(k - p, n_children):
                    prod = 1
                    for a in sizes:
                        prod *= count_Xk(a)
                    total += prod
    return total


@lru_cache(maxsize=None)
def _unit_tensor(shape: AlgebraShape, p: int) -> np.ndarray:
    vec = iterated_unit(shape, p).vector()
    vec.flags.writeable = False
    return vec


@lru_cache(maxsize=4096)
def _realize(shape: AlgebraShape, arrow: NormalFormArrow) -> np.ndarray:
    n = shape.total_dim
    root = _unit_tensor(shape, arrow.p).reshape((n,) * arrow.p)
    kids = [_realize(shape, c).reshape((n,) * c.size) for c in arrow.children]
    full = root
    for kid in kids:
        full = np.multiply.outer(full, kid)
    # axes are [root legs][child 0 legs][child 1 legs]...; interleave them
    perm, leg, offset = [], 0, arrow.p
    for i, g in enumerate(arrow.gaps):
        perm.extend(range(leg, leg + g))
        leg += g
        if i < len(kids):
            perm.extend(range(offset, offset + kids[i].ndim))
            offset += kids[i].ndim
    vec = np.ascontiguousarray(np.transpose(full, perm)).reshape(-1)
    vec.flags.writeable = False
    return vec


def realize_arrow(shape: AlgebraShape, arrow: NormalFormArrow) -> TensorMap:
    """The vector of ``B^{⊗k}`` described by ``arrow``; realizations are cached per shape."""
    return TensorMap(shape, 0, arrow.size, _realize(shape, arrow)[:, None])


def gram_matrix(vectors: list[TensorMap]) -> np.ndarray:
    """``G[i, j] = <v_j, v_i>``."""
    if not vectors:
        return np.zeros((0, 0), complex)
    powers = {v.codomain_power for v in vectors}
    if len(powers) != 1 or any(v.domain_power != 0 for v in vectors):
        raise ValueError(f'vectors must all live in the same tensor power, got {sorted(powers)}')
    V = np.stack([v.vector() for v in vectors], axis=1)
    return V.conj().T @ V


def singular_values(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return np.zeros(0)
    return np.linalg.svd(matrix, compute_uv=False)


def _rank(svals: np.ndarray, tol_rel: float) -> int:
    if svals.size == 0 or svals[0] == 0:
        return 0
    return int(np.sum(svals > tol_rel * svals[0]))


def numeric_rank(matrix: np.ndarray, tol_rel: float = DEFAULT_TOL_REL) -> int:
    """Number of singular values above ``tol_rel`` times the largest.

    Raises :class:`RankInstabilityError` when the count changes at ``tol_rel / 100``.
    """
    svals = singular_values(np.asarray(matrix))
    r, r_tight = _rank(svals, tol_rel), _rank(svals, tol_rel / 100)
    if r != r_tight:
        raise RankInstabilityError(f'rank {r} at {tol_rel:g} but {r_tight} at {tol_rel / 100:g}',
                                   {tol_rel: r, tol_rel / 100: r_tight})
    return r


@dataclass(frozen=True, eq=False)
class GramReport:
    """Numeric rank of a family of vectors, with its tolerance cross-checks."""
    k: int
    num_vectors: int
    gram: np.ndarray = field(repr=False)
    rank: int
    singular_values: np.ndarray = field(repr=False)
    ranks: dict
    expected: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def tolerances(self) -> tuple[float, ...]:
        return tuple(self.ranks)

    @property
    def stable(self) -> bool:
        return len(set(self.ranks.values())) == 1

    @property
    def passed(self) -> bool:
        return self.stable and (self.expected is None or self.rank == self.expected)

    def spectrum_summary(self) -> dict:
        sv = self.singular_values
        kept = sv[:self.rank]
        return {'largest': float(sv[0]) if sv.size else 0.0,
                'smallest_kept': float(kept[-1]) if kept.size else 0.0,
                'largest_dropped': float(sv[self.rank]) if sv.size > self.rank else 0.0}

    def to_dict(self) -> dict:
        out = {'k': self.k, 'num_vectors': self.num_vectors, 'rank': self.rank,
               'expected': self.expected, 'stable': self.stable, 'pass': self.passed,
               'ranks': {f'{t:g}': r for t, r in self.ranks.items()},
               'spectrum': self.spectrum_summary()}
        out.update(self.extra)
        return out


def _ranks(svals: np.ndarray, tol_rel: float) -> dict:
    return {t: _rank(svals, t) for t in sorted({tol_rel, *STABILITY_TOLS}, reverse=True)}


def _hom_vectors(shape: AlgebraShape, k: int) -> list[TensorMap]:
    if k == 0:
        return [TensorMap(shape, 0, 0, np.ones((1, 1)))]
    return [realize_arrow(shape, a) for a in enumerate_Xk(k)]


def hom_dimension(shape: AlgebraShape, k: int, tol_rel: float = DEFAULT_TOL_REL) -> GramReport:
    """Gram rank of the realized ``X_k``; ``C_k`` when ``n >= 4``.

    ``k = 0`` is the scalars, spanned by the empty arrow. Ranks are recorded at
    ``tol_rel`` and at the stability tolerances; the report is unstable if they differ.
    """
    if not 0 <= k <= max_k():
        raise ValueError(f'k = {k} outside 0..{max_k()} (set QSYM_MAX_K to raise the bound)')
    vectors = _hom_vectors(shape, k)
    gram = gram_matrix(vectors)
    svals = singular_values(gram)
    ranks = _ranks(svals, tol_rel)
    return GramReport(k, len(vectors), gram, ranks[tol_rel], svals, ranks, catalan(k))


def verify_independence(shape: AlgebraShape, k: int, tol_rel: float = DEFAULT_TOL_REL) -> bool:
    """Whether the realized ``X_k`` is linearly independent."""
    report = hom_dimension(shape, k, tol_rel)
    if not report.stable:
        raise RankInstabilityError(f'Gram rank of X_{k} is tolerance dependent: {report.ranks}',
                                   report.ranks)
    return report.rank == report.num_vectors


@lru_cache(maxsize=None)
def _nested_cup(shape: AlgebraShape, l: int) -> np.ndarray:
    t = duality_vector(shape)
    vec = np.ones((1, 1), dtype=complex)
    for j in range(l):
        vec = apply_at(t, vec, j, j)
    vec.flags.writeable = False
    return vec


def nested_cup(shape: AlgebraShape, l: int) -> TensorMap:
    """``t_l``: ``l`` concentric cups in ``B^{⊗2l}``, built as ``(id_{l-1} ⊗ t ⊗ id_{l-1}) t_{l-1}``."""
    return TensorMap(shape, 0, 2 * l, _nested_cup(shape, l))


def bend(v: TensorMap, l: int) -> TensorMap:
    """Frobenius reciprocity ``Hom(0, 2l) -> End(l)``: ``v ↦ (id_l ⊗ t_l*)(v ⊗ id_l)``."""
    if v.domain_power != 0 or v.codomain_power != 2 * l:
        raise ValueError(f'bend needs a vector in B^(2*{l})')
    n = v.n
    V = v.vector().reshape(n ** l, n ** l)
    cup = nested_cup(v.shape, l).vector().reshape(n ** l, n ** l)
    return TensorMap(v.shape, l, l, V @ cup.conj())


def end_dimension(shape: AlgebraShape, l: int, tol_rel: float = DEFAULT_TOL_REL,
                  with_algebra: bool = True) -> GramReport:
    """``dim End(l)`` from the bent vectors of ``X_{2l}``.

    The report records the rank of the span of the bent matrices, the Gram rank of
    ``X_{2l}`` (they must agree), and, with ``with_algebra``, the rank of the bent
    matrices joined with a basis of the Temperley-Lieb image on ``B^{⊗l}``.
    """
    if not 1 <= l <= 3:
        raise ValueError('l must be between 1 and 3')
    vectors = _hom_vectors(shape, 2 * l)
    gram = gram_matrix(vectors)
    gram_svals = singular_values(gram)
    bent = np.stack([bend(v, l).matrix.ravel() for v in vectors])
    svals = singular_values(bent)
    ranks = _ranks(svals, tol_rel)
    # singular values of the stacked vectors are square roots of Gram eigenvalues
    gram_ranks = _ranks(gram_svals, tol_rel ** 2)
    gram_rank = gram_ranks[tol_rel ** 2]
    if ranks[tol_rel] != gram_rank:
        raise BendMismatchError(f'bent rank {ranks[tol_rel]} != Gram rank {gram_rank}')
    extra = {'gram_rank': gram_rank}
    if with_algebra:
        alg = algebra_basis(shape, l, tol_rel)
        joint = np.concatenate([alg, bent / np.linalg.norm(bent, axis=1, keepdims=True)])
        extra['algebra_dimension'] = int(alg.shape[0])
        extra['joint_rank'] = _rank(singular_values(joint), tol_rel)
    return GramReport(2 * l, len(vectors), gram, ranks[tol_rel], svals, ranks, catalan(2 * l), extra)
