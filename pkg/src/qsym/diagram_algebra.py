"""Temperley-Lieb diagrams, their algebra, and its representation on tensor powers.

Boundary points of an ``m``-strand diagram are numbered ``1..m`` along the top
(left to right) and ``m+1..2m`` along the bottom (right to left). Going once
around the boundary visits them in increasing order, so a pairing is planar iff
it nests like balanced parentheses.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number

import numpy as np

from .multimatrix import AlgebraShape
from .tensor_calculus import TensorMap, embed, identity, jones_projections

__all__ = ['TLDiagram', 'TLElement', 'RankInstabilityError', 'catalan', 'catalan_by_recursion',
           'enumerate_diagrams', 'compose_diagrams', 'identity_diagram', 'cupcap',
           'jones_generator', 'loop_value', 'represent_generators', 'image_algebra_dimension',
           'span_dimension', 'span_basis', 'algebra_basis']


class RankInstabilityError(ArithmeticError):
    """Numeric rank depends on the tolerance; the input is numerically degenerate."""

    def __init__(self, message: str, ranks: dict[float, int]):
        super().__init__(message)
        self.ranks = ranks


def catalan(k: int) -> int:
    """``C_k = (2k)! / (k! (k+1)!)`` as an exact integer."""
    if k < 0:
        raise ValueError('k must be non-negative')
    return math.comb(2 * k, k) // (k + 1)


def catalan_by_recursion(k: int) -> list[int]:
    """``E_0, ..., E_k`` from ``E_0 = 1``, ``E_s = sum_{x+y=s-1} E_x E_y``."""
    seq = [1]
    for s in range(1, k + 1):
        seq.append(sum(seq[x] * seq[s - 1 - x] for x in range(s)))
    return seq


@dataclass(frozen=True)
class TLDiagram:
    """A planar perfect matching of the ``2m`` boundary points of an ``m``-strand diagram."""
    m: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        points = [q for p in pairs for q in p]
        if sorted(points) != list(range(1, 2 * self.m + 1)):
            raise ValueError(f'{pairs} is not a perfect matching of 1..{2 * self.m}')
        # planar iff the pairs nest like parentheses in boundary order
        stack = []
        partner = {a: b for a, b in pairs} | {b: a for a, b in pairs}
        for q in range(1, 2 * self.m + 1):
            if partner[q] > q:
                stack.append(q)
            elif stack.pop() != partner[q]:
                raise ValueError(f'{pairs} is not planar')
        object.__setattr__(self, 'pairs', pairs)

    @property
    def partner(self) -> dict[int, int]:
        return {a: b for a, b in self.pairs} | {b: a for a, b in self.pairs}

    def top(self, j: int) -> int:
        """Boundary label of top position ``j`` (1-based, left to right)."""
        return j

    def bottom(self, j: int) -> int:
        """Boundary label of bottom position ``j`` (1-based, left to right)."""
        return 2 * self.m + 1 - j

    def flip(self) -> TLDiagram:
        """Mirror image in the horizontal axis (the diagrammatic star)."""
        swap = {q: 2 * self.m + 1 - q for q in range(1, 2 * self.m + 1)}
        return TLDiagram(self.m, tuple((swap[a], swap[b]) for a, b in self.pairs))

    def through_strands(self) -> int:
        return sum(1 for a, b in self.pairs if a <= self.m < b)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]

    @classmethod
    def from_json(cls, m: int, pairs) -> TLDiagram:
        return cls(m, tuple(tuple(p) for p in pairs))


def identity_diagram(m: int) -> TLDiagram:
    return TLDiagram(m, tuple((j, 2 * m + 1 - j) for j in range(1, m + 1)))


def cupcap(m: int, i: int) -> TLDiagram:
    """The diagram ``U_i``: a cap on top positions ``i, i+1``, a cup below them, straight strands elsewhere."""
    if not 1 <= i <= m - 1:
        raise ValueError(f'generator index {i} out of range for m = {m}')
    pairs = [(i, i + 1), (2 * m + 1 - i, 2 * m - i)]
    pairs += [(j, 2 * m + 1 - j) for j in range(1, m + 1) if j not in (i, i + 1)]
    return TLDiagram(m, tuple(pairs))


def enumerate_diagrams(m: int) -> list[TLDiagram]:
    """All ``C_m`` planar matchings of ``2m`` points, via balanced-parenthesis recursion."""
    if m < 0:
        raise ValueError('m must be non-negative')

    def matchings(lo: int, hi: int):
        # planar perfect matchings of the interval lo..hi
        if lo > hi:
            yield ()
            return
        for mid in range(lo + 1, hi + 1, 2):
            for inner in matchings(lo + 1, mid - 1):
                for outer in matchings(mid + 1, hi):
                    yield ((lo, mid),) + inner + outer

    return [TLDiagram(m, pairs) for pairs in matchings(1, 2 * m)]


def _stack(d1: TLDiagram, d2: TLDiagram) -> tuple[TLDiagram, int]:
    """Glue the bottom of ``d1`` to the top of ``d2``; return the result and the number of closed loops."""
    if d1.m != d2.m:
        raise ValueError(f'strand mismatch: {d1.m} vs {d2.m}')
    m = d1.m
    p1, p2 = d1.partner, d2.partner
    # node (0, q) is point q of d1, (1, q) is point q of d2
    glue = {}
    for j in range(1, m + 1):
        glue[(0, d1.bottom(j))] = (1, d2.top(j))
        glue[(1, d2.top(j))] = (0, d1.bottom(j))

    def outer_label(node):
        side, q = node
        if side == 0 and q <= m:
            return q
        if side == 1 and q > m:
            return q
        return None

    seen = set()
    pairs = []
    for start in [(0, q) for q in range(1, m + 1)] + [(1, q) for q in range(m + 1, 2 * m + 1)]:
        if start in seen:
            continue
        seen.add(start)
        node = start
        while True:
            side, q = node
            node = (side, (p1 if side == 0 else p2)[q])
            seen.add(node)
            if outer_label(node) is not None:
                break
            node = glue[node]
            seen.add(node)
        pairs.append((outer_label(start), outer_label(node)))

    loops = 0
    for j in range(1, m + 1):
        node = (0, d1.bottom(j))
        if node in seen:
            continue
        loops += 1
        # a closed loop alternates: glue down, d2 arc, glue up, d1 arc
        while node not in seen:
            seen.add(node)
            below = glue[node]
            arc_end = (1, p2[below[1]])
            above = glue[arc_end]
            seen.update((below, arc_end, above))
            node = (0, p1[above[1]])
    return TLDiagram(m, tuple(pairs)), loops


def compose_diagrams(d1: TLDiagram, d2: TLDiagram, loop) -> TLElement:
    """The product ``d1 · d2``: ``d1`` stacked on top of ``d2``, each closed loop worth ``loop``."""
    d, loops = _stack(d1, d2)
    return TLElement(d1.m, {d: loop ** loops})


@dataclass(frozen=True, eq=False)
class TLElement:
    """A finite linear combination of ``m``-strand diagrams.

    Coefficients may be ints, Fractions, floats or complex numbers; with Fraction
    coefficients and a rational loop value all arithmetic is exact.
    """
    m: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for d in self.terms:
            if d.m != self.m:
                raise ValueError('all diagrams of an element must have the same strand count')
        object.__setattr__(self, 'terms', {d: c for d, c in self.terms.items() if c != 0})

    @classmethod
    def from_diagram(cls, d: TLDiagram, coeff=1) -> TLElement:
        return cls(d.m, {d: coeff})

    @classmethod
    def one(cls, m: int) -> TLElement:
        return cls(m, {identity_diagram(m): 1})

    def _check(self, other: TLElement):
        if self.m != other.m:
            raise ValueError(f'strand mismatch: {self.m} vs {other.m}')

    def __add__(self, other: TLElement) -> TLElement:
        self._check(other)
        out = defaultdict(int, self.terms)
        for d, c in other.terms.items():
            out[d] += c
        return TLElement(self.m, dict(out))

    def __neg__(self) -> TLElement:
        return TLElement(self.m, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: TLElement) -> TLElement:
        return self + (-other)

    def __rmul__(self, scalar) -> TLElement:
        if not isinstance(scalar, Number):
            return NotImplemented
        return TLElement(self.m, {d: scalar * c for d, c in self.terms.items()})

    def times(self, other: TLElement, loop) -> TLElement:
        """Algebra product in which every closed loop is worth ``loop``."""
        self._check(other)
        out = defaultdict(int)
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d, loops = _stack(d1, d2)
                out[d] += c1 * c2 * loop ** loops
        return TLElement(self.m, dict(out))

    def star(self) -> TLElement:
        """Vertical flip of every diagram with conjugated coefficients."""
        return TLElement(self.m, {d.flip(): _conj(c) for d, c in self.terms.items()})

    def equals(self, other: TLElement, atol: float = 0.0) -> bool:
        self._check(other)
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.terms.get(d, 0) - other.terms.get(d, 0)) <= atol for d in keys)

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.m == other.m and self.equals(other)

    __hash__ = None


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def loop_value(beta):
    """``sqrt(beta)``, the value of a closed loop in the algebra of index ``beta``.

    Exact (a :class:`Fraction`) when ``beta`` is the square of a rational, a float otherwise.
    """
    if beta <= 0:
        raise ValueError('index must be positive')
    if isinstance(beta, (int, Fraction)):
        beta = Fraction(beta)
        num, den = math.isqrt(beta.numerator), math.isqrt(beta.denominator)
        if num * num == beta.numerator and den * den == beta.denominator:
            return Fraction(num, den)
    return math.sqrt(beta)


def jones_generator(m: int, i: int, beta) -> TLElement:
    """``e_i = U_i / sqrt(beta)`` in the algebra of index ``beta``.

    With loops worth ``sqrt(beta)`` these satisfy ``e_i = e_i* = e_i^2``, commute at
    distance two, and ``beta e_i e_j e_i = e_i`` for neighbours.
    """
    delta = loop_value(beta)
    return TLElement(m, {cupcap(m, i): 1 / delta})


def represent_generators(shape: AlgebraShape, k: int) -> list[TensorMap]:
    """Images of ``e_1, ..., e_{2k-1}`` acting on ``B^{⊗k}``.

    Odd generators ``e_{2s+1}`` go to ``id_s ⊗ Q ⊗ id_{k-s-1}``, even ones ``e_{2s}``
    to ``id_{s-1} ⊗ P ⊗ id_{k-s-1}``.
    """
    if k < 1:
        raise ValueError('k must be at least 1')
    P, Q = jones_projections(shape)
    images = []
    for j in range(1, 2 * k):
        s = j // 2
        if j % 2:
            images.append(embed(Q, s, k - s - 1))
        else:
            images.append(embed(P, s - 1, k - s - 1))
    return images


def span_basis(generators: list[np.ndarray], start: np.ndarray, tol_rel: float) -> np.ndarray:
    """Orthonormal basis (as rows) of the span of all words ``start · g_1 · g_2 ...``.

    Flattened matrices are orthonormalised (two Gram-Schmidt passes) as they are found.
    A candidate ``b · g`` counts as new when its residual exceeds ``tol_rel`` times
    ``|b|_F |g|_2``; products that vanish exactly come out at rounding level and
    must not be measured against their own norm.
    """
    if all(np.isrealobj(g) or not np.any(g.imag) for g in [start, *generators]):
        start, generators = start.real, [g.real for g in generators]
        dtype = float
    else:
        dtype = complex
    store = np.empty((16, start.size), dtype=dtype)
    count = 0
    gens = [(g, np.linalg.norm(g, 2)) for g in generators]

    def try_add(mat, scale):
        nonlocal store, count
        vec = mat.ravel().astype(dtype)
        if count:
            Qm = store[:count]
            for _ in range(2):
                vec -= np.conj(Qm @ np.conj(vec)) @ Qm
        rn = np.linalg.norm(vec)
        if rn <= tol_rel * scale:
            return None
        if count == len(store):
            store = np.concatenate([store, np.empty_like(store)])
        store[count] = vec / rn
        count += 1
        return store[count - 1].reshape(mat.shape).copy()

    first = try_add(start, np.linalg.norm(start))
    frontier = [first] if first is not None else []
    while frontier:
        new = []
        for mat in frontier:
            for g, gnorm in gens:
                added = try_add(mat @ g, gnorm)
                if added is not None:
                    new.append(added)
        frontier = new
    return store[:count].copy()


def span_dimension(generators: list[np.ndarray], start: np.ndarray, tol_rel: float) -> int:
    return len(span_basis(generators, start, tol_rel))


def algebra_basis(shape: AlgebraShape, k: int, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis of the flattened matrices of the represented algebra on ``B^{⊗k}``."""
    gens = [g.matrix for g in represent_generators(shape, k)]
    return span_basis(gens, identity(shape, k).matrix, tol)


def image_algebra_dimension(shape: AlgebraShape, k: int, tol: float = 1e-8) -> int:
    """Dimension of the unital algebra generated by :func:`represent_generators`.

    The span growth is repeated at relative tolerances ``1e-6`` and ``1e-10`` (and at
    ``tol``); :class:`RankInstabilityError` is raised if the dimensions disagree.
    """
    gens = [g.matrix for g in represent_generators(shape, k)]
    start = identity(shape, k).matrix
    ranks = {t: span_dimension(gens, start, t) for t in sorted({tol, 1e-6, 1e-10})}
    if len(set(ranks.values())) != 1:
        raise RankInstabilityError(f'algebra dimension depends on tolerance: {ranks}', ranks)
    return ranks[tol]
