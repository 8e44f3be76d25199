"""Command-line front end: ``qsym {weights,verify,homdim,enddim,fusion,report-all}``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import category_homs, diagram_algebra, fusion_ring, multimatrix, tensor_calculus
from .diagram_algebra import RankInstabilityError, catalan

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_L = 3
MAX_LEVEL = 30


@dataclass
class RunConfig:
    command: str
    shape: str | None = None
    k: int = 5
    l: int = 2
    n: int = 4
    level: int = 12
    tol: float = 1e-10
    rank_tol: float = 1e-8
    quad: int = 100_000
    out: str | None = None
    format: str = 'text'

    def validate(self):
        if self.shape is not None:
            multimatrix.parse_shape(self.shape)
        if not 0 <= self.k <= category_homs.max_k():
            raise ValueError(f'--k must be in 0..{category_homs.max_k()} (QSYM_MAX_K raises the bound)')
        if not 1 <= self.l <= MAX_L:
            raise ValueError(f'--l must be in 1..{MAX_L}')
        if not 0 <= self.level <= MAX_LEVEL:
            raise ValueError(f'--level must be in 0..{MAX_LEVEL}')
        if self.quad < 1000:
            raise ValueError('--quad must be at least 1000')
        if self.tol <= 0 or self.rank_tol <= 0:
            raise ValueError('tolerances must be positive')


@dataclass
class Report:
    command: str
    config: dict
    results: list[dict] = field(default_factory=list)
    duration_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r['pass'] for r in self.results)

    def add(self, name, expected, computed, deviation, passed, **details):
        entry = {'name': name, 'expected': _plain(expected), 'computed': _plain(computed),
                 'deviation': _plain(deviation), 'pass': bool(passed)}
        if details:
            entry['details'] = {k: _plain(v) for k, v in details.items()}
        self.results.append(entry)

    def to_dict(self) -> dict:
        return {'command': self.command, 'config': self.config, 'results': self.results,
                'pass': self.passed, 'duration_ms': round(self.duration_ms, 3)}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_text(self) -> str:
        lines = [f'== {self.command} ==']
        width = max((len(r['name']) for r in self.results), default=4)
        lines.append(f"{'check':<{width}}  {'expected':>14}  {'computed':>22}  {'deviation':>10}  result")
        for r in self.results:
            lines.append(f"{r['name']:<{width}}  {_fmt(r['expected']):>14}  {_fmt(r['computed']):>22}  "
                         f"{_fmt(r['deviation']):>10}  {'PASS' if r['pass'] else 'FAIL'}")
            for key, value in r.get('details', {}).items():
                lines.append(f"{'':<{width}}    {key}: {_fmt(value)}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({self.duration_ms:.0f} ms)")
        return '\n'.join(lines)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _plain(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, 'item'):
        return value.item()
    return value


def _fmt(value) -> str:
    if isinstance(value, float):
        return f'{value:.3g}'
    if isinstance(value, dict):
        return ', '.join(f'{k}={_fmt(v)}' for k, v in value.items())
    if isinstance(value, list):
        return '[' + ', '.join(_fmt(v) for v in value) + ']'
    return str(value)


# -- suites ---------------------------------------------------------------------------------

def suite_weights(report: Report, shape: multimatrix.AlgebraShape):
    canonical = multimatrix.canonical_trace_weights(shape)
    regular = multimatrix.regular_rep_trace(shape)
    for g, m in enumerate(shape.blocks):
        diff = abs(canonical[g] - regular[g])
        report.add(f'weight[{g}] (m={m}, n={shape.total_dim})', canonical[g], regular[g],
                   float(diff), diff == 0)


def suite_verify(report: Report, shape: multimatrix.AlgebraShape, tol: float):
    for rel in tensor_calculus.verify_frobenius(shape, tol) + tensor_calculus.verify_jones_relations(shape, tol):
        report.add(rel.name, 0.0, rel.deviation, rel.deviation, rel.passed, tolerance=rel.tolerance)


def _gram_entry(report: Report, name: str, gr: category_homs.GramReport, **extra):
    report.add(name, gr.expected, gr.rank, abs(gr.rank - gr.expected), gr.passed,
               stable=gr.stable, ranks={f'{t:g}': r for t, r in gr.ranks.items()},
               num_vectors=gr.num_vectors, **extra)


def suite_homdim(report: Report, shape: multimatrix.AlgebraShape, k_max: int, rank_tol: float):
    for k in range(k_max + 1):
        _gram_entry(report, f'dim Hom(0,{k})', category_homs.hom_dimension(shape, k, rank_tol))


def suite_enddim(report: Report, shape: multimatrix.AlgebraShape, l_max: int, rank_tol: float):
    for l in range(1, l_max + 1):
        expected = catalan(2 * l)
        try:
            gr = category_homs.end_dimension(shape, l, rank_tol)
        except (RankInstabilityError, category_homs.BendMismatchError) as err:
            report.add(f'dim End({l}) by bending', expected, None, None, False, error=str(err))
            continue
        _gram_entry(report, f'dim End({l}) by bending', gr, gram_rank=gr.extra['gram_rank'])
        alg = gr.extra['algebra_dimension']
        report.add(f'dim TL image on B^{l}', expected, alg, abs(alg - expected), alg == expected)
        joint = gr.extra['joint_rank']
        report.add(f'rank of End({l}) + TL image', expected, joint, abs(joint - expected), joint == expected)


def suite_fusion(report: Report, n: int, level: int, quad: int):
    for k in range(level + 1):
        c = catalan(k)
        mult = fusion_ring.trivial_multiplicity(k)
        report.add(f'mult of p_0 in u^{k}', c, mult, abs(mult - c), mult == c)
    for k in range(min(level, 20) + 1):
        c = catalan(k)
        integral = float(fusion_ring.so3_moment_integral(k, quad))
        tol = max(1e-5, 1e-10 * c)
        report.add(f'SO(3) moment integral k={k}', c, integral, abs(integral - c),
                   abs(integral - c) <= tol, tolerance=tol)
    if n < 4:
        report.add('dimension function', 'n >= 4', n, None, False)
        return
    dims = fusion_ring.dimension_sequence(n, level)
    irreducibles = fusion_ring.build_irreducibles(n, level)
    for k, (vec, dim) in enumerate(irreducibles):
        report.add(f'dim p_{k} (n={n})', dims[k], dim, abs(dim - dims[k]),
                   dim == dims[k] and vec == fusion_ring.FusionVector.irreducible(fusion_ring.SO3, k))
    verdict = fusion_ring.amenability_check(n, level)
    details = {}
    if not verdict.amenable:
        details = {'witness_k': verdict.witness_k, 'witness': list(verdict.witness)}
    report.add(f'amenable (n={n})', n == 4, verdict.amenable, None, verdict.amenable == (n == 4), **details)
    if level >= 2:
        ok = fusion_ring.su2_even_embedding_check(level)
        report.add('SU(2) even part ~ SO(3) ring', True, ok, None, ok)


# -- commands -------------------------------------------------------------------------------

def run(config: RunConfig) -> Report:
    report = Report(config.command, asdict(config))
    start = time.perf_counter()
    shape = multimatrix.parse_shape(config.shape) if config.shape is not None else None
    if config.command == 'weights':
        suite_weights(report, shape)
    elif config.command == 'verify':
        suite_verify(report, shape, config.tol)
    elif config.command == 'homdim':
        suite_homdim(report, shape, config.k, config.rank_tol)
    elif config.command == 'enddim':
        suite_enddim(report, shape, config.l, config.rank_tol)
    elif config.command == 'fusion':
        suite_fusion(report, config.n, config.level, config.quad)
    elif config.command == 'report-all':
        suite_weights(report, shape)
        suite_verify(report, shape, config.tol)
        suite_homdim(report, shape, config.k, config.rank_tol)
        suite_enddim(report, shape, config.l, config.rank_tol)
        suite_fusion(report, shape.total_dim, config.level, config.quad)
    else:
        raise ValueError(f'unknown command {config.command!r}')
    report.duration_ms = (time.perf_counter() - start) * 1000
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='qsym', description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p, shape=True):
        if shape:
            p.add_argument('--shape', required=True,
                           help='block sizes, e.g. "2,1,1", or JSON {"blocks": [2,1,1]}')
        p.add_argument('--out', help='write the JSON report to this path ("-" for stdout)')
        p.add_argument('--format', choices=('text', 'json'), default='text')
        return p

    common(sub.add_parser('weights', help='canonical trace vs regular representation trace'))
    p = common(sub.add_parser('verify', help='Frobenius and Jones relation suites'))
    p.add_argument('--tol', type=float, default=1e-10)
    p = common(sub.add_parser('homdim', help='dim Hom(0,k) by Gram rank'))
    p.add_argument('--k', type=int, default=5)
    p.add_argument('--rank-tol', type=float, default=1e-8)
    p = common(sub.add_parser('enddim', help='dim End(l) by bending and by the TL image'))
    p.add_argument('--l', type=int, default=2)
    p.add_argument('--rank-tol', type=float, default=1e-8)
    p = common(sub.add_parser('fusion', help='fusion rules, moments, dimensions, amenability'), shape=False)
    p.add_argument('--n', type=int, default=4)
    p.add_argument('--level', type=int, default=12)
    p.add_argument('--quad', type=int, default=100_000)
    p = common(sub.add_parser('report-all', help='every suite for one shape'))
    p.add_argument('--k', type=int, default=5)
    p.add_argument('--l', type=int, default=2)
    p.add_argument('--level', type=int, default=12)
    p.add_argument('--tol', type=float, default=1e-10)
    p.add_argument('--rank-tol', type=float, default=1e-8)
    p.add_argument('--quad', type=int, default=100_000)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(**{k: v for k, v in vars(args).items() if v is not None or k == 'out'})
    try:
        config.validate()
    except ValueError as err:
        parser.error(str(err))
    report = run(config)
    if config.out == '-':
        sys.stdout.write(report.to_json() + '\n')
    else:
        if config.out:
            with open(config.out, 'w') as fh:
                fh.write(report.to_json() + '\n')
        sys.stdout.write((report.to_json() if config.format == 'json' else report.to_text()) + '\n')
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
