"""Acceptance gate: one test per criterion, each logging a PASS/FAIL line.

The lines are collected by ``conftest.py`` and printed in the terminal summary.
"""
import time
from fractions import Fraction

import pytest

from qsym import category_homs
from qsym.category_homs import end_dimension, enumerate_Xk, hom_dimension
from qsym.diagram_algebra import (catalan, catalan_by_recursion, enumerate_diagrams,
                                  image_algebra_dimension)
from qsym.fusion_ring import (amenability_check, build_irreducibles, so3_moment_integral,
                              su2_even_embedding_check, trivial_multiplicity)
from qsym.multimatrix import TraceWeights, canonical_trace_weights, regular_rep_trace, shapes_up_to
from qsym.tensor_calculus import verify_frobenius, verify_jones_relations

from conftest import shape

SUITE_SHAPES = [shape(2), shape(1, 1, 1, 1), shape(2, 1), shape(2, 2), shape(3), shape(3, 2, 1)]
HOM_SHAPES = [s for s in shapes_up_to(6) if s.total_dim in (4, 5, 6)]


class Criterion:
    """Times a block of checks and logs ``criterion N: PASS|FAIL`` when it exits."""

    def __init__(self, log, number, title, budget):
        self.log, self.number, self.title, self.budget = log, number, title, budget
        self.ok = False
        self.detail = ''
        self.elapsed = 0.0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.ok = False
            self.detail = f'{exc_type.__name__}: {exc}'
        budget = f'budget {self.budget:g}s' if self.budget is not None else 'no budget'
        line = (f"criterion {self.number:>2}: {'PASS' if self.passed else 'FAIL'}  {self.title}"
                f"  [{self.elapsed:.2f}s, {budget}]  {self.detail}")
        self.log.append(line.rstrip())
        print(line)
        return False

    @property
    def passed(self):
        return self.ok and (self.budget is None or self.elapsed < self.budget)


@pytest.fixture(autouse=True)
def cold_caches():
    """Drop memoized realizations so runtimes are measured from scratch."""
    for fn in (category_homs._realize, category_homs._unit_tensor, category_homs._nested_cup,
               category_homs._enumerate, category_homs.count_Xk):
        fn.cache_clear()


def test_criterion_01_canonical_trace(acceptance_log):
    with Criterion(acceptance_log, 1, 'canonical trace == regular representation trace', 1.0) as c:
        shapes = shapes_up_to(14)
        bad = [s for s in shapes if tuple(canonical_trace_weights(s)) != tuple(regular_rep_trace(s))]
        exact = all(isinstance(w, Fraction) for s in shapes for w in regular_rep_trace(s))
        c.ok = not bad and exact
        c.detail = f'{len(shapes)} shapes with n <= 14, mismatches: {bad}'
    assert c.passed, c.detail


def test_criterion_02_frobenius(acceptance_log):
    with Criterion(acceptance_log, 2, 'Frobenius suite < 1e-10, counter-test > 0.1', 5.0) as c:
        worst = max(r.deviation for s in SUITE_SHAPES for r in verify_frobenius(s, 1e-10))
        w = TraceWeights((Fraction(1, 2), Fraction(1, 2)))
        counter = {r.name: r for r in verify_frobenius(shape(2, 1), 1e-10, w)}['mu mu* = n id']
        c.ok = worst < 1e-10 and counter.deviation > 0.1
        c.detail = f'max deviation {worst:.2e}, non-canonical deviation {counter.deviation:.3g}'
    assert c.passed, c.detail


def test_criterion_03_jones(acceptance_log):
    with Criterion(acceptance_log, 3, 'Jones relations < 1e-10', 10.0) as c:
        reports = [r for s in SUITE_SHAPES for r in verify_jones_relations(s, 1e-10)]
        worst = max(r.deviation for r in reports)
        c.ok = worst < 1e-10 and all(r.passed for r in reports)
        c.detail = f'{len(reports)} checks, max deviation {worst:.2e}'
    assert c.passed, c.detail


@pytest.mark.parametrize('s', HOM_SHAPES, ids=str)
def test_criterion_04_hom_dimensions(s, acceptance_log):
    with Criterion(acceptance_log, 4, f'dim Hom(0,k) = C_k for k <= 5, shape {s}', 120.0) as c:
        reports = [hom_dimension(s, k) for k in range(6)]
        ranks = [r.rank for r in reports]
        stable = all(r.stable and {1e-6, 1e-10} <= set(r.ranks) for r in reports)
        c.ok = ranks == [catalan(k) for k in range(6)] and stable
        c.detail = f'ranks {ranks}, stable {stable}'
    assert c.passed, c.detail


def test_criterion_05_end_dimensions(acceptance_log):
    with Criterion(acceptance_log, 5, 'TL image = C_2k and bending agrees, k = 1, 2', 120.0) as c:
        found = {}
        for s in (shape(2), shape(2, 1)):
            for k in (1, 2):
                alg = image_algebra_dimension(s, k)
                rep = end_dimension(s, k)
                found[str(s), k] = (alg, rep.rank, rep.extra['joint_rank'])
        c.ok = all(v == (catalan(2 * k),) * 3 for (_, k), v in found.items())
        c.detail = ', '.join(f'[{s}] k={k}: {v}' for (s, k), v in found.items())
    assert c.passed, c.detail


def test_criterion_06_fusion_moments(acceptance_log):
    with Criterion(acceptance_log, 6, 'multiplicity of 1 in u^k = C_k, quadrature within 1e-5', 5.0) as c:
        exact = all(trivial_multiplicity(k) == catalan(k) for k in range(16))
        errors = [abs(float(so3_moment_integral(k)) - catalan(k)) for k in range(11)]
        c.ok = exact and max(errors) < 1e-5
        c.detail = f'exact for k <= 15: {exact}, max quadrature error {max(errors):.2e}'
    assert c.passed, c.detail


def test_criterion_07_cross_module(acceptance_log):
    with Criterion(acceptance_log, 7, 'hom_dimension(shape, k) == trivial_multiplicity(k)', None) as c:
        bad = [(str(s), k) for s in HOM_SHAPES for k in range(6)
               if hom_dimension(s, k).rank != trivial_multiplicity(k)]
        c.ok = not bad
        c.detail = f'{len(HOM_SHAPES)} shapes x k = 0..5, mismatches: {bad}'
    assert c.passed, c.detail


def test_criterion_08_irreducibles(acceptance_log):
    with Criterion(acceptance_log, 8, 'irreducibles for n = 4..10, amenable iff n = 4', 1.0) as c:
        built = {n: build_irreducibles(n, 15) for n in range(4, 11)}
        nonneg = all(m >= 0 and dim > 0 for out in built.values() for vec, dim in out for _, m in vec.mult)
        classical = [dim for _, dim in built[4]] == [2 * k + 1 for k in range(16)]
        amenable = [n for n in range(4, 13) if amenability_check(n, 15).amenable]
        c.ok = nonneg and classical and amenable == [4]
        c.detail = f'non-negative {nonneg}, n=4 dims 2k+1 {classical}, amenable for n in {amenable}'
    assert c.passed, c.detail


def test_criterion_09_su2_even_part(acceptance_log):
    with Criterion(acceptance_log, 9, 'SU(2) even part embedding at level 10', 1.0) as c:
        c.ok = su2_even_embedding_check(10)
        c.detail = f'check returned {c.ok}'
    assert c.passed, c.detail


def test_criterion_10_combinatorics(acceptance_log):
    with Criterion(acceptance_log, 10, 'diagram and X_k counts are Catalan for m, k <= 8', 5.0) as c:
        recursion = catalan_by_recursion(8)
        closed = [catalan(k) for k in range(9)]
        diagrams = [len(enumerate_diagrams(m)) for m in range(9)]
        arrows = [len(enumerate_Xk(k)) for k in range(1, 9)]
        c.ok = recursion == closed and diagrams == closed and arrows == closed[1:]
        c.detail = f'C_0..C_8 = {closed}'
    assert c.passed, c.detail
