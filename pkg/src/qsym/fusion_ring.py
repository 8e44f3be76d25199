"""Exact fusion semirings of SO(3) and SU(2) type.

Labels are non-negative integers. In the SO(3)-type ring ``p_k ⊗ p_s`` contains
every ``p_j`` with ``|k-s| <= j <= k+s`` once; in the SU(2)-type ring ``q_k ⊗ q_s``
contains ``q_j`` for ``j = |k-s|, |k-s|+2, ..., k+s`` (``q_k`` has dimension ``k+1``).
Multiplicities and dimensions are Python ints, so nothing overflows.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

__all__ = ['FusionVector', 'DimensionFunction', 'AmenabilityResult', 'TruncationError',
           'NegativeMultiplicityError', 'SO3', 'SU2', 'so3_product', 'su2_product',
           'fundamental_power', 'trivial_multiplicity', 'so3_moment_integral',
           'dimension_sequence', 'amenability_check', 'su2_even_embedding_check',
           'build_irreducibles']

SO3 = 'so3'
SU2 = 'su2'


class TruncationError(ValueError):
    """A product would produce a label above the allowed level."""

    def __init__(self, required: int, level: int):
        super().__init__(f'result needs level {required}, only {level} allowed')
        self.required = required
        self.level = level


class NegativeMultiplicityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FusionVector:
    """A finitely supported non-negative integer combination of irreducible labels."""
    ring: str
    mult: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.ring not in (SO3, SU2):
            raise ValueError(f'unknown ring {self.ring!r}')
        items = dict(self.mult) if not isinstance(self.mult, dict) else self.mult
        clean = {}
        for label, m in items.items():
            label, m = int(label), int(m)
            if label < 0:
                raise ValueError('labels are non-negative')
            if m < 0:
                raise NegativeMultiplicityError(f'multiplicity {m} at label {label}')
            if m:
                clean[label] = m
        object.__setattr__(self, 'mult', tuple(sorted(clean.items())))

    @classmethod
    def irreducible(cls, ring: str, label: int) -> FusionVector:
        return cls(ring, ((label, 1),))

    @classmethod
    def from_dict(cls, ring: str, mult: dict) -> FusionVector:
        return cls(ring, tuple(mult.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.mult)

    def __getitem__(self, label: int) -> int:
        return self.as_dict().get(label, 0)

    @property
    def top(self) -> int:
        return self.mult[-1][0] if self.mult else -1

    def _check(self, other: FusionVector):
        if self.ring != other.ring:
            raise ValueError(f'ring mismatch: {self.ring} vs {other.ring}')

    def __add__(self, other: FusionVector) -> FusionVector:
        self._check(other)
        return FusionVector(self.ring, tuple((Counter(self.as_dict()) + Counter(other.as_dict())).items()))

    def __sub__(self, other: FusionVector) -> FusionVector:
        """Difference; raises :class:`NegativeMultiplicityError` if it leaves the semiring."""
        self._check(other)
        out = self.as_dict()
        for label, m in other.mult:
            out[label] = out.get(label, 0) - m
        return FusionVector(self.ring, tuple(out.items()))

    def __rmul__(self, scalar: int) -> FusionVector:
        return FusionVector(self.ring, tuple((l, scalar * m) for l, m in self.mult))

    def relabel(self, ring: str, fn) -> FusionVector:
        return FusionVector(ring, tuple((fn(l), m) for l, m in self.mult))

    def dimension(self, dims) -> int:
        return sum(m * dims[l] for l, m in self.mult)

    def to_json(self) -> dict:
        return {'ring': self.ring, 'mult': {str(l): m for l, m in self.mult}}

    @classmethod
    def from_json(cls, data: dict) -> FusionVector:
        return cls(data['ring'], tuple((int(l), m) for l, m in data['mult'].items()))

    def __str__(self):
        sym = 'p' if self.ring == SO3 else 'q'
        if not self.mult:
            return '0'
        return ' + '.join(f'{m}*{sym}_{l}' if m != 1 else f'{sym}_{l}' for l, m in self.mult)


def _product(a: FusionVector, b: FusionVector, level: int, ring: str, step: int) -> FusionVector:
    if a.ring != ring or b.ring != ring:
        raise ValueError(f'both factors must be {ring}-type')
    if a.mult and b.mult and a.top + b.top > level:
        raise TruncationError(a.top + b.top, level)
    out = Counter()
    for k, mk in a.mult:
        for s, ms in b.mult:
            for j in range(abs(k - s), k + s + 1, step):
                out[j] += mk * ms
    return FusionVector(ring, tuple(out.items()))


def so3_product(a: FusionVector, b: FusionVector, level: int) -> FusionVector:
    """``p_k ⊗ p_s = p_{|k-s|} + p_{|k-s|+1} + ... + p_{k+s}``, extended bilinearly."""
    return _product(a, b, level, SO3, 1)


def su2_product(a: FusionVector, b: FusionVector, level: int) -> FusionVector:
    """Clebsch-Gordan rule ``q_k ⊗ q_s = q_{|k-s|} + q_{|k-s|+2} + ... + q_{k+s}``."""
    return _product(a, b, level, SU2, 2)


def fundamental_power(k: int, level: int) -> FusionVector:
    """``(p_0 + p_1)^{⊗k}``: tensor powers of the fundamental object ``u = 1 + p_1``."""
    if k < 0:
        raise ValueError('k must be non-negative')
    if level < k:
        raise TruncationError(k, level)
    u = FusionVector(SO3, ((0, 1), (1, 1)))
    out = FusionVector.irreducible(SO3, 0)
    for _ in range(k):
        out = so3_product(out, u, level)
    return out


def trivial_multiplicity(k: int) -> int:
    """Multiplicity of ``p_0`` in ``(p_0 + p_1)^{⊗k}``."""
    return fundamental_power(k, k)[0]


def so3_moment_integral(k: int, quadrature_points: int = 100_000) -> float:
    """``∫ (1 + χ_1)^k`` over SO(3), with ``χ_1(θ) = 1 + 2 cos θ`` and Weyl density ``(1 - cos θ)/π``.

    The integrand is a trigonometric polynomial, even in ``θ``, so the trapezoid rule
    on ``[0, π]`` is exact up to rounding once there are more than ``k + 2`` points.
    """
    if not 0 <= k <= 20:
        raise ValueError('k must be between 0 and 20')
    if quadrature_points < 1000:
        raise ValueError('use at least 1000 quadrature points')
    theta = np.linspace(0.0, math.pi, quadrature_points)
    f = (2.0 + 2.0 * np.cos(theta)) ** k * (1.0 - np.cos(theta)) / math.pi
    h = math.pi / (quadrature_points - 1)
    return h * (math.fsum(f) - 0.5 * (f[0] + f[-1]))


@dataclass(frozen=True)
class DimensionFunction:
    """Dimensions ``d_0, d_1, ...`` of ``p_0, p_1, ...`` when the fundamental object has dimension ``n``.

    ``d_0 = 1``, ``d_1 = n - 1`` and ``d_k = d_{k-1} d_1 - d_{k-2} - d_{k-1}``.
    """
    n: int
    dims: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __getitem__(self, k: int) -> int:
        if k < len(self.dims):
            return self.dims[k]
        dims = list(self.dims) or [1, self.n - 1]
        while len(dims) <= k:
            dims.append(dims[-1] * dims[1] - dims[-2] - dims[-1])
        object.__setattr__(self, 'dims', tuple(dims))
        return dims[k]

    def sequence(self, level: int) -> list[int]:
        return [self[k] for k in range(level + 1)]


def dimension_sequence(n: int, level: int) -> DimensionFunction:
    if n < 4:
        raise ValueError('the dimension function is defined for n >= 4')
    d = DimensionFunction(n)
    d[level]
    return d


@dataclass(frozen=True)
class AmenabilityResult:
    amenable: bool
    witness_k: int | None = None
    witness: tuple[int, int] | None = None

    def __bool__(self):
        return self.amenable


def amenability_check(n: int, level: int) -> AmenabilityResult:
    """Whether the dimensions ``d_k(n)`` are the classical SO(3) dimensions ``2k + 1`` up to ``level``.

    On failure the smallest offending ``k`` and the pair ``(d_k, 2k + 1)`` are returned.
    """
    d = dimension_sequence(n, level)
    for k in range(level + 1):
        if d[k] != 2 * k + 1:
            return AmenabilityResult(False, k, (d[k], 2 * k + 1))
    return AmenabilityResult(True)


def su2_even_embedding_check(level: int) -> bool:
    """Check that ``p_k ↦ q_{2k}`` is an isomorphism onto the even part of the SU(2)-type ring.

    Products ``p_k ⊗ p_s`` for ``k, s <= level`` must map to ``q_{2k} ⊗ q_{2s}``, and
    the trivial multiplicity of ``(q_1 ⊗ q_1)^{⊗k}`` must equal that of ``(p_0 + p_1)^{⊗k}``.
    """
    if level < 2:
        raise ValueError('level must be at least 2')
    double = 2 * level
    for k in range(level + 1):
        pk = FusionVector.irreducible(SO3, k)
        qk = FusionVector.irreducible(SU2, 2 * k)
        for s in range(level + 1):
            lhs = so3_product(pk, FusionVector.irreducible(SO3, s), double).relabel(SU2, lambda j: 2 * j)
            rhs = su2_product(qk, FusionVector.irreducible(SU2, 2 * s), 2 * double)
            if lhs != rhs:
                return False
    q1 = FusionVector.irreducible(SU2, 1)
    v = FusionVector.irreducible(SU2, 0)
    for k in range(level + 1):
        if v[0] != trivial_multiplicity(k):
            return False
        v = su2_product(su2_product(v, q1, 2 * k + 1), q1, 2 * k + 2)
    return True


def build_irreducibles(n: int, level: int) -> list[tuple[FusionVector, int]]:
    """Construct ``p_0, ..., p_level`` inductively from the fundamental object.

    ``p_0 = 1`` and ``p_1 = u - 1``; then ``p_k = p_{k-1} ⊗ p_1 - p_{k-2} - p_{k-1}``,
    where each subtraction must stay inside the semiring. Dimensions follow the same
    recursion. Returns ``(p_k, dim p_k)`` pairs.
    """
    if n < 4:
        raise ValueError('the construction needs n >= 4')
    one = FusionVector.irreducible(SO3, 0)
    u = fundamental_power(1, 1)
    out = [(one, 1)]
    if level >= 1:
        out.append((u - one, n - 1))
    for k in range(2, level + 1):
        (prev2, d2), (prev, d1) = out[k - 2], out[k - 1]
        square = so3_product(prev, out[1][0], k)
        pk = square - prev2 - prev
        dim = d1 * out[1][1] - d2 - d1
        if len(pk.mult) != 1 or pk.mult[0][1] != 1:
            raise ArithmeticError(f'p_{k} = {pk} is not irreducible')
        if dim <= 0:
            raise NegativeMultiplicityError(f'dim p_{k} = {dim}')
        out.append((pk, dim))
    return out
