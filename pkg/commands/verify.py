"""
Cross-method verification.

`verify` computes chibar(q, t) by the definition and by point counting
(and by the symmetric closed forms with --all-methods), then prints a
structured diff against the definition. `verify --grid` runs the built-in
acceptance grid of named families and generating-function identities.
"""
import logging
from typing import Dict, List, Optional, Sequence

from arrangement import arrangement_rank, coboundary, tutte_coboundary_check
from arrangement_file import ArrangementFile
from debug_utils import debug_report
from egf import egf_check
from errors import InconsistencyError, NotSymmetricError
from families import family
from polynomials import format_poly

from commands.shared import (EXIT_MISMATCH, add_input_argument, add_method_arguments,
                             coboundary_by_method, emit, load_input)

logger = logging.getLogger(__name__)

GRID_FAMILIES = [
    ('A', (2,)), ('A', (3,)), ('A', (4,)),
    ('B', (2,)), ('B', (3,)),
    ('D', (2,)), ('D', (3,)),
    ('I', (2,)), ('I', (3,)),
    ('G', (2, 1, 2)), ('G', (3, 3, 2)), ('G', (4, 2, 2)),
]

GRID_IDENTITIES = [
    ('A', {'q': 5}, 4), ('A', {'q': 7}, 4),
    ('B', {'q': 5}, 4), ('D', {'q': 5}, 4),
    ('In', {'q': 5}, 3),
    ('Gmmn', {'q': 7, 'm': 3, 'backend': 'prime-field'}, 3),
]


def verify_methods(parsed: ArrangementFile, methods: Sequence[str], backend: str,
                   primes: Optional[Sequence[int]] = None, workers: Optional[int] = None) -> Dict[str, object]:
    """Compare each method's chibar with the definition's."""
    A = parsed.arrangement
    reference = coboundary(A)
    if not tutte_coboundary_check(A):
        raise InconsistencyError(f"Tutte and coboundary polynomials of {A} disagree")

    results = [{'method': 'definition', 'status': 'reference', 'coboundary': format_poly(reference)}]
    diff: List[Dict[str, str]] = []
    for method in methods:
        if method == 'definition':
            continue
        try:
            poly = coboundary_by_method(parsed, method, backend, primes, workers)
        except NotSymmetricError as e:
            logger.warning(f"⚠️ skipping {method}: {e}")
            results.append({'method': method, 'status': 'skipped', 'reason': str(e)})
            continue
        status = 'equal' if poly == reference else 'mismatch'
        results.append({'method': method, 'status': status, 'coboundary': format_poly(poly)})
        if status == 'mismatch':
            diff.append({
                'method': method,
                'expected': format_poly(reference),
                'got': format_poly(poly),
                'difference': format_poly(poly - reference),
            })

    report = {
        'arrangement': str(A),
        'rank': arrangement_rank(A),
        'backend': backend,
        'results': results,
        'diff': diff,
        'ok': not diff,
    }
    if diff:
        debug_report('verification_mismatch', report)
    return report


def _render_report(report: Dict[str, object]) -> str:
    lines = [f"arrangement: {report['arrangement']}", f"rank: {report['rank']}"]
    for entry in report['results']:
        detail = entry.get('coboundary', entry.get('reason', ''))
        lines.append(f"{entry['method']}: {entry['status']}: {detail}")
    for entry in report['diff']:
        lines.append(f"diff {entry['method']}:")
        lines.append(f"  - expected: {entry['expected']}")
        lines.append(f"  + got:      {entry['got']}")
        lines.append(f"  difference: {entry['difference']}")
    lines.append('ok' if report['ok'] else 'MISMATCH')
    return '\n'.join(lines)


def run_grid(args) -> int:
    """Named families through every method, then the identities."""
    methods = ['finite-field', 'symmetric']
    family_reports = []
    for name, params in GRID_FAMILIES:
        fam = family(name, *params)
        parsed = ArrangementFile(fam.arrangement.m, fam.arrangement.n,
                                 list(fam.arrangement.hyperplanes), list(fam.representatives))
        report = verify_methods(parsed, methods, 'prime-field', workers=args.workers)
        report['family'] = fam.label()
        logger.info(f"{'✅' if report['ok'] else '❌'} {fam.label()}")
        family_reports.append(report)

    identity_reports = []
    for identity, params, order in GRID_IDENTITIES:
        identity_reports.append(egf_check(identity, params, order).to_dict())

    ok = all(r['ok'] for r in family_reports) and all(r['ok'] for r in identity_reports)
    lines = [f"{r['family']}: {'ok' if r['ok'] else 'MISMATCH'}" for r in family_reports]
    lines += [f"egf {r['identity']} q={r['params']['q']} N={r['order']}: {'ok' if r['ok'] else 'MISMATCH'}"
              for r in identity_reports]
    lines.append('ok' if ok else 'MISMATCH')
    emit(args, '\n'.join(lines), {'families': family_reports, 'identities': identity_reports, 'ok': ok})
    return 0 if ok else EXIT_MISMATCH


def run_verify(args) -> int:
    if args.grid:
        return run_grid(args)
    parsed = load_input(args)
    methods = ['finite-field', 'symmetric'] if args.all_methods else ['finite-field']
    report = verify_methods(parsed, methods, args.backend, args.primes, args.workers)
    emit(args, _render_report(report), report)
    if report['ok']:
        logger.info(f"✅ all methods agree for {report['arrangement']}")
        return 0
    logger.error(f"❌ methods disagree for {report['arrangement']}")
    return EXIT_MISMATCH


def register(subparsers, common) -> None:
    sub = subparsers.add_parser('verify', parents=[common], help="cross-check the computation methods")
    add_input_argument(sub)
    add_method_arguments(sub, with_method=False)
    sub.add_argument('--all-methods', action='store_true', help="include the symmetric closed forms")
    sub.add_argument('--grid', action='store_true', help="run the built-in acceptance grid instead of a file")
    sub.set_defaults(handler=run_verify)
