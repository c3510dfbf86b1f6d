"""
Generators: named families as arrangement files, and generating-function
identity checks.
"""
import logging
from typing import List, Tuple

from arrangement_file import render
from config import BACKENDS, ENGINE_CONFIG
from egf import IDENTITIES, LHS_METHODS, egf_check
from errors import InvalidFamilyError
from families import FAMILY_NAMES, family, graphic

from commands.shared import EXIT_MISMATCH, EXIT_OK, EXIT_VIOLATION, emit

logger = logging.getLogger(__name__)


def _int_param(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidFamilyError(f"family parameters must be integers, got {text!r}")


def _edge(text: str) -> Tuple[int, int]:
    parts = text.split('-')
    if len(parts) != 2:
        raise InvalidFamilyError(f"edges are written i-j, got {text!r}")
    return _int_param(parts[0]), _int_param(parts[1])


def run_family(args) -> int:
    if args.name == 'graphic':
        if not args.params:
            raise InvalidFamilyError("graphic needs the vertex count n followed by edges i-j")
        n = _int_param(args.params[0])
        edges: List[Tuple[int, int]] = [_edge(p) for p in args.params[1:]]
        fam = graphic(edges, n)
    else:
        fam = family(args.name, *(_int_param(p) for p in args.params))

    A = fam.arrangement
    text = render(A, fam.representatives)
    payload = {
        'family': fam.label(),
        'm': A.m,
        'n': A.n,
        'representatives': [str(r) for r in fam.representatives],
        'hyperplanes': [str(h) for h in A.hyperplanes],
    }
    emit(args, text.rstrip('\n'), payload)
    logger.debug(f"generated {fam.label()} with {len(A)} hyperplanes")
    return EXIT_OK


def run_egf(args) -> int:
    params = {'q': args.q, 'backend': args.backend}
    if args.m is not None:
        params['m'] = args.m
    if args.p is not None:
        params['p'] = args.p
    report = egf_check(args.identity, params, args.order, method=args.method, start=args.start)

    lines = []
    for entry in report.entries:
        line = f"n={entry.n}: {entry.status}"
        if entry.lhs is not None:
            line += f"  lhs={entry.to_dict()['lhs']}"
        line += f"  rhs={entry.to_dict()['rhs']}"
        if entry.detail:
            line += f"  ({entry.detail})"
        lines.append(line)
    lines.append('ok' if report.ok else 'MISMATCH')
    emit(args, '\n'.join(lines), report.to_dict())

    if any(e.status == 'violation' for e in report.entries):
        return EXIT_VIOLATION
    return EXIT_OK if report.ok else EXIT_MISMATCH


def register(subparsers, common) -> None:
    sub = subparsers.add_parser('family', parents=[common], help="print a named family as an arrangement file")
    sub.add_argument('name', choices=FAMILY_NAMES)
    sub.add_argument('params', nargs='*',
                     help="n for A/B/D/I; m p n for G; n followed by edges i-j for graphic")
    sub.set_defaults(handler=run_family)

    sub = subparsers.add_parser('egf', parents=[common], help="check a generating-function identity")
    sub.add_argument('--identity', choices=IDENTITIES, required=True)
    sub.add_argument('--q', type=int, required=True)
    sub.add_argument('--order', type=int, required=True, help="truncation order N")
    sub.add_argument('--m', type=int, default=None, help="root order for the G identities")
    sub.add_argument('--p', type=int, default=None, help="p for Gmpn")
    sub.add_argument('--method', choices=LHS_METHODS, default='definition', help="source of the left-hand side")
    sub.add_argument('--backend', choices=BACKENDS, default=ENGINE_CONFIG['backend'])
    sub.add_argument('--start', type=int, default=0, help="first n compared")
    sub.set_defaults(handler=run_egf)
