from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qsym.multimatrix import (AlgebraElement, AlgebraShape, TraceWeights, adjoint,
                              canonical_trace_weights, inner_product, multiply,
                              orthonormal_basis, parse_shape, regular_rep_trace, shapes_up_to,
                              trace)

from conftest import shape

shapes = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda b: AlgebraShape(tuple(b)))


def test_shape_validation():
    assert shape(2, 1, 1).total_dim == 6
    with pytest.raises(ValueError):
        AlgebraShape(())
    with pytest.raises(ValueError):
        AlgebraShape((0, 1))
    with pytest.raises(ValueError):
        AlgebraShape((1.5,))


@pytest.mark.parametrize('spec, blocks', [('2,1,1', (2, 1, 1)), (' 3 ', (3,)),
                                          ('{"blocks": [2, 1, 1]}', (2, 1, 1))])
def test_parse_shape(spec, blocks):
    assert parse_shape(spec).blocks == blocks


@pytest.mark.parametrize('spec', ['', '2,,1', 'a', '0,1', '{"blocks": 3}', '{"b": [1]}', '{bad'])
def test_parse_shape_rejects(spec):
    with pytest.raises(ValueError):
        parse_shape(spec)


def test_shapes_up_to():
    assert [s.blocks for s in shapes_up_to(5)] == [(1,), (1, 1), (1, 1, 1), (2,), (1, 1, 1, 1),
                                                   (2, 1), (1, 1, 1, 1, 1)]
    # multisets of squares summing to at most 14
    assert len(shapes_up_to(14)) == 43


@pytest.mark.parametrize('blocks, expected', [
    ((2,), [1]),
    ((1, 1, 1, 1), [Fraction(1, 4)] * 4),
    ((2, 1), [Fraction(4, 5), Fraction(1, 5)]),
])
def test_canonical_weights(blocks, expected):
    assert list(canonical_trace_weights(AlgebraShape(blocks)).weights) == expected


def _regular_trace_oracle(s):
    """Normalised trace of left multiplication by e_11 of each block, summed over an orthonormal basis."""
    basis = orthonormal_basis(s)
    out = []
    for g, m in enumerate(s.blocks):
        p = AlgebraElement.matrix_unit(s, g, 0, 0)
        tr_L = sum(inner_product(multiply(p, f), f) for f in basis)
        out.append(tr_L.real / s.total_dim * m)
    return out


@pytest.mark.parametrize('blocks, expected', [
    ((2,), [Fraction(1)]),
    ((2, 1), [Fraction(4, 5), Fraction(1, 5)]),
    ((3, 2, 1), [Fraction(9, 14), Fraction(4, 14), Fraction(1, 14)]),
])
def test_regular_rep_trace(blocks, expected):
    s = AlgebraShape(blocks)
    assert np.allclose(_regular_trace_oracle(s), [float(x) for x in expected], atol=1e-12)
    assert list(regular_rep_trace(s).weights) == expected


def test_regular_equals_canonical_up_to_20():
    for s in shapes_up_to(20):
        w = canonical_trace_weights(s)
        assert sum(w.weights) == 1
        assert regular_rep_trace(s) == w


def test_trace_weights_validation():
    with pytest.raises(ValueError):
        TraceWeights((Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValueError):
        TraceWeights((Fraction(3, 2), Fraction(-1, 2)))


def test_trace_examples():
    assert trace(AlgebraElement.unit(shape(2, 1))) == pytest.approx(1)
    assert trace(AlgebraElement.matrix_unit(shape(2), 0, 0, 0)) == pytest.approx(0.5)
    for s in (shape(2), shape(3, 2)):
        for g in range(s.num_blocks):
            assert trace(AlgebraElement.matrix_unit(s, g, 0, 1)) == 0
    with pytest.raises(ValueError):
        trace(AlgebraElement.unit(shape(2)), TraceWeights((Fraction(1, 2), Fraction(1, 2))))


def test_matrix_unit_algebra():
    s = shape(3, 2)
    e12 = AlgebraElement.matrix_unit(s, 0, 0, 1)
    e21 = AlgebraElement.matrix_unit(s, 0, 1, 0)
    assert (e12 @ e21).allclose(AlgebraElement.matrix_unit(s, 0, 0, 0))
    assert adjoint(e12).allclose(e21)
    with pytest.raises(ValueError):
        multiply(e12, AlgebraElement.unit(shape(3)))


@pytest.mark.parametrize('blocks, scales', [
    ((1, 1), [np.sqrt(2)] * 2),
    ((2,), [np.sqrt(2)] * 4),
    ((2, 1), [np.sqrt(5 / 2)] * 4 + [np.sqrt(5)]),
])
def test_orthonormal_basis_scales(blocks, scales):
    basis = orthonormal_basis(AlgebraShape(blocks))
    assert np.allclose(basis.scale, scales)
    for f, (g, i, j), c in zip(basis, basis.index, scales):
        assert f.allclose(c * AlgebraElement.matrix_unit(basis.shape, g, i, j))


def test_basis_ordering_is_block_then_row_major():
    assert orthonormal_basis(shape(2, 1)).index == ((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0))


@pytest.mark.parametrize('s', shapes_up_to(16))
def test_orthonormal_basis_gram(s):
    basis = orthonormal_basis(s)
    assert len(basis) == s.total_dim
    assert np.allclose(basis.gram(), np.eye(s.total_dim), atol=1e-12)


def test_coordinates_roundtrip(np_random):
    s = shape(3, 1, 2)
    basis = orthonormal_basis(s)
    x = AlgebraElement.random(s, np_random)
    coords = basis.coordinates(x)
    assert np.allclose(coords, [inner_product(x, f) for f in basis])
    assert basis.element(coords).allclose(x)


@settings(max_examples=40, deadline=None)
@given(shapes, st.integers(0, 2 ** 32 - 1))
def test_trace_property(s, seed):
    rng = np.random.default_rng(seed)
    x, y = AlgebraElement.random(s, rng), AlgebraElement.random(s, rng)
    assert abs(trace(x @ y) - trace(y @ x)) < 1e-12 * max(1, abs(trace(x @ y)))


@settings(max_examples=40, deadline=None)
@given(shapes, st.integers(0, 2 ** 32 - 1))
def test_faithful(s, seed):
    x = AlgebraElement.random(s, np.random.default_rng(seed))
    ip = inner_product(x, x)
    assert abs(ip.imag) < 1e-12 and ip.real > 0
