"""Finite-dimensional C*-algebras as multimatrix algebras ``M_{m_1} + ... + M_{m_s}``.

Block weights of traces are exact :class:`~fractions.Fraction` values; the
entries of algebra elements are complex doubles.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = ['AlgebraShape', 'TraceWeights', 'AlgebraElement', 'OrthonormalBasis',
           'parse_shape', 'canonical_trace_weights', 'regular_rep_trace', 'trace',
           'orthonormal_basis', 'multiply', 'adjoint', 'inner_product',
           'shapes_up_to']


@dataclass(frozen=True)
class AlgebraShape:
    """Block sizes ``(m_1, ..., m_s)`` of the algebra ``B = M_{m_1} + ... + M_{m_s}``."""
    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise ValueError('a shape needs at least one block')
        for m in blocks:
            if isinstance(m, bool) or int(m) != m or m < 1:
                raise ValueError(f'block sizes must be positive integers, got {m!r}')
        object.__setattr__(self, 'blocks', tuple(int(m) for m in blocks))

    @property
    def total_dim(self) -> int:
        """``n = sum of m_γ²``, the linear dimension of the algebra."""
        return sum(m * m for m in self.blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def __str__(self):
        return ','.join(str(m) for m in self.blocks)


def parse_shape(spec: str | Sequence[int] | AlgebraShape) -> AlgebraShape:
    """Parse ``"2,1,1"`` or ``'{"blocks": [2, 1, 1]}'`` into a shape.

    Raises :class:`ValueError` on malformed input.
    """
    if isinstance(spec, AlgebraShape):
        return spec
    if not isinstance(spec, str):
        return AlgebraShape(tuple(spec))
    text = spec.strip()
    if text.startswith('{'):
        try:
            blocks = json.loads(text)['blocks']
        except (json.JSONDecodeError, KeyError, TypeError) as err:
            raise ValueError(f'bad shape JSON {spec!r}') from err
        if not isinstance(blocks, list):
            raise ValueError(f'bad shape JSON {spec!r}')
        return AlgebraShape(tuple(blocks))
    try:
        blocks = tuple(int(tok) for tok in text.split(','))
    except ValueError as err:
        raise ValueError(f'bad shape spec {spec!r}') from err
    return AlgebraShape(blocks)


def shapes_up_to(max_dim: int, min_dim: int = 1) -> list[AlgebraShape]:
    """All shapes (block sizes in non-increasing order) with ``min_dim <= n <= max_dim``."""
    out = []

    def rec(prefix, largest, remaining):
        if prefix and min_dim <= max_dim - remaining:
            out.append(AlgebraShape(tuple(prefix)))
        for m in range(min(largest, int(remaining ** 0.5)), 0, -1):
            rec(prefix + [m], m, remaining - m * m)

    rec([], max_dim, max_dim)
    return sorted(out, key=lambda s: (s.total_dim, [-m for m in s.blocks]))


@dataclass(frozen=True)
class TraceWeights:
    """Block weights ``λ_γ = tr(1_γ)`` of a faithful normalised trace."""
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError('trace weights must be strictly positive')
        if sum(ws) != 1:
            raise ValueError(f'trace weights must sum to 1, got {sum(ws)}')
        object.__setattr__(self, 'weights', ws)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def as_floats(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])


def canonical_trace_weights(shape: AlgebraShape) -> TraceWeights:
    """Weights ``m_γ² / n`` of the canonical trace."""
    n = shape.total_dim
    return TraceWeights(tuple(Fraction(m * m, n) for m in shape.blocks))


def _check_weights(shape: AlgebraShape, w: TraceWeights | None) -> TraceWeights:
    if w is None:
        return canonical_trace_weights(shape)
    if not isinstance(w, TraceWeights):
        w = TraceWeights(tuple(w))
    if len(w) != shape.num_blocks:
        raise ValueError(f'{len(w)} weights given for {shape.num_blocks} blocks')
    return w


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element of a multimatrix algebra, stored block by block."""
    shape: AlgebraShape
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        blocks = tuple(np.asarray(b, dtype=complex) for b in self.blocks)
        if len(blocks) != self.shape.num_blocks:
            raise ValueError('number of blocks does not match the shape')
        for b, m in zip(blocks, self.shape.blocks):
            if b.shape != (m, m):
                raise ValueError(f'block of size {b.shape} where ({m}, {m}) was expected')
        object.__setattr__(self, 'blocks', blocks)

    @classmethod
    def zero(cls, shape: AlgebraShape) -> AlgebraElement:
        return cls(shape, tuple(np.zeros((m, m), complex) for m in shape.blocks))

    @classmethod
    def unit(cls, shape: AlgebraShape) -> AlgebraElement:
        return cls(shape, tuple(np.eye(m, dtype=complex) for m in shape.blocks))

    @classmethod
    def matrix_unit(cls, shape: AlgebraShape, block: int, i: int, j: int) -> AlgebraElement:
        """``e_{ij}`` in block ``block`` (all indices 0-based)."""
        blocks = [np.zeros((m, m), complex) for m in shape.blocks]
        blocks[block][i, j] = 1
        return cls(shape, tuple(blocks))

    @classmethod
    def random(cls, shape: AlgebraShape, rng: np.random.Generator) -> AlgebraElement:
        return cls(shape, tuple(rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
                                for m in shape.blocks))

    def flat(self) -> np.ndarray:
        """Concatenation of the row-major flattened blocks (matrix-unit coordinates)."""
        return np.concatenate([b.ravel() for b in self.blocks])

    def _check(self, other: AlgebraElement):
        if self.shape != other.shape:
            raise ValueError(f'shape mismatch: {self.shape} vs {other.shape}')

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        return AlgebraElement(self.shape, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        return AlgebraElement(self.shape, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __mul__(self, scalar) -> AlgebraElement:
        return AlgebraElement(self.shape, tuple(scalar * b for b in self.blocks))

    __rmul__ = __mul__

    def __matmul__(self, other: AlgebraElement) -> AlgebraElement:
        return multiply(self, other)

    def allclose(self, other: AlgebraElement, atol: float = 1e-12) -> bool:
        self._check(other)
        return all(np.allclose(a, b, rtol=0, atol=atol) for a, b in zip(self.blocks, other.blocks))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    return AlgebraElement(x.shape, tuple(a @ b for a, b in zip(x.blocks, y.blocks)))


def adjoint(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.shape, tuple(b.conj().T for b in x.blocks))


def trace(x: AlgebraElement, w: TraceWeights | None = None) -> complex:
    """``sum_γ λ_γ / m_γ * Tr(x_γ)``; the canonical trace when ``w`` is omitted."""
    w = _check_weights(x.shape, w)
    return complex(sum(float(lam) / m * np.trace(b)
                       for lam, m, b in zip(w.weights, x.shape.blocks, x.blocks)))


def inner_product(x: AlgebraElement, y: AlgebraElement, w: TraceWeights | None = None) -> complex:
    """``<x, y> = tr(y* x)``, linear in ``x``."""
    x._check(y)
    return trace(multiply(adjoint(y), x), w)


def regular_rep_trace(shape: AlgebraShape) -> TraceWeights:
    """Trace weights induced by the left regular representation ``B ⊂ L(B)``.

    For each block, the left-multiplication operator of the minimal projection
    ``e_11`` is built as an integer ``n x n`` matrix in the matrix-unit basis;
    its normalised trace times ``m_γ`` is the weight of the block.
    """
    n = shape.total_dim
    units = [AlgebraElement.matrix_unit(shape, g, i, j)
             for g, m in enumerate(shape.blocks) for i in range(m) for j in range(m)]
    weights = []
    for g, m in enumerate(shape.blocks):
        p = AlgebraElement.matrix_unit(shape, g, 0, 0)
        left_mult = np.stack([multiply(p, u).flat() for u in units], axis=1)
        exact = np.rint(left_mult.real).astype(np.int64)
        if not np.array_equal(exact, left_mult):
            raise ArithmeticError('left multiplication by a matrix unit must be a 0/1 matrix')
        weights.append(Fraction(int(np.trace(exact)), n) * m)
    return TraceWeights(tuple(weights))


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """The basis ``f_{ij}^γ = sqrt(m_γ / λ_γ) e_{ij}^γ``.

    Blocks come in declaration order and ``(i, j)`` runs row-major inside each block,
    so coordinate ``a`` of an element is paired with ``index[a] = (γ, i, j)``.
    """
    shape: AlgebraShape
    weights: TraceWeights
    elements: tuple[AlgebraElement, ...]
    index: tuple[tuple[int, int, int], ...]
    scale: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, a) -> AlgebraElement:
        return self.elements[a]

    def __iter__(self):
        return iter(self.elements)

    def coordinates(self, x: AlgebraElement) -> np.ndarray:
        """Coordinates ``<x, f_a>`` of ``x``; exact expansion since the basis is orthonormal."""
        # <x, f> = c tr(e_ji x) = c x_ij λ/m for f = c e_ij
        return x.flat() * self._coord_factor

    def element(self, coords: np.ndarray) -> AlgebraElement:
        flat = np.asarray(coords, dtype=complex) * self.scale
        blocks, start = [], 0
        for m in self.shape.blocks:
            blocks.append(flat[start:start + m * m].reshape(m, m))
            start += m * m
        return AlgebraElement(self.shape, tuple(blocks))

    @property
    def _coord_factor(self) -> np.ndarray:
        lam = self.weights.as_floats()
        per_block = [np.full(m * m, lam[g] / m) for g, m in enumerate(self.shape.blocks)]
        return self.scale * np.concatenate(per_block)

    def gram(self) -> np.ndarray:
        return np.array([[inner_product(g, f, self.weights) for g in self.elements]
                         for f in self.elements])


def orthonormal_basis(shape: AlgebraShape, w: TraceWeights | None = None) -> OrthonormalBasis:
    """Orthonormal basis of ``B`` for the scalar product of the trace with weights ``w``.

    For the canonical trace the scale factor is ``sqrt(n / m_γ)``.
    """
    w = _check_weights(shape, w)
    elements, index, scale = [], [], []
    for g, m in enumerate(shape.blocks):
        c = np.sqrt(m / float(w[g]))
        for i in range(m):
            for j in range(m):
                elements.append(c * AlgebraElement.matrix_unit(shape, g, i, j))
                index.append((g, i, j))
                scale.append(c)
    return OrthonormalBasis(shape, w, tuple(elements), tuple(index), np.array(scale))
