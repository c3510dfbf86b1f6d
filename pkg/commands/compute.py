"""
Polynomial commands: tutte, coboundary, zeta-coboundary, characteristic,
poincare, regions and profile.

Every polynomial derives from the ordinary coboundary chibar(q, t), so
each command accepts --method to choose where chibar comes from.
"""
import argparse
import logging

from sympy import Rational

from arrangement import (arrangement_rank, central_profile, characteristic_from_coboundary,
                         poincare_from_tutte, regions_from_tutte, region_count, tutte,
                         tutte_from_coboundary)
from cyclotomic import l_of
from errors import NotRealError
from polynomials import evaluate_rational, scale_exponent

from commands.shared import (add_input_argument, add_method_arguments, coboundary_by_method,
                             emit, emit_poly, load_input)

logger = logging.getLogger(__name__)


def _chibar(args, parsed):
    return coboundary_by_method(parsed, args.method, args.backend, args.primes, args.workers)


def _tutte(args, parsed):
    A = parsed.arrangement
    if args.method == 'definition':
        return tutte(A)
    return tutte_from_coboundary(_chibar(args, parsed), arrangement_rank(A))


def _parse_point(text: str):
    parts = text.split(',')
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}")
    try:
        point = tuple(Rational(p.strip()) for p in parts)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected rational coordinates, got {text!r}")
    if not all(v.is_Rational for v in point):
        raise argparse.ArgumentTypeError(f"expected finite rational coordinates, got {text!r}")
    return point


def run_tutte(args) -> int:
    parsed = load_input(args)
    poly = _tutte(args, parsed)
    if args.at is None:
        emit_poly(args, poly)
        return 0
    x, y = args.at
    value = evaluate_rational(poly, x, y)
    emit(args, str(value), {'x': str(x), 'y': str(y), 'value': str(value)})
    return 0


def run_coboundary(args) -> int:
    emit_poly(args, _chibar(args, load_input(args)))
    return 0


def run_zeta_coboundary(args) -> int:
    parsed = load_input(args)
    emit_poly(args, scale_exponent(_chibar(args, parsed), 0, l_of(parsed.m)))
    return 0


def run_characteristic(args) -> int:
    parsed = load_input(args)
    A = parsed.arrangement
    emit_poly(args, characteristic_from_coboundary(_chibar(args, parsed), A.n, arrangement_rank(A)))
    return 0


def run_poincare(args) -> int:
    parsed = load_input(args)
    emit_poly(args, poincare_from_tutte(_tutte(args, parsed), arrangement_rank(parsed.arrangement)))
    return 0


def run_regions(args) -> int:
    parsed = load_input(args)
    if parsed.m > 2:
        raise NotRealError(f"regions are only counted for real arrangements, m = {parsed.m} > 2")
    A = parsed.arrangement
    count = region_count(A) if args.method == 'definition' else regions_from_tutte(_tutte(args, parsed))
    emit(args, str(count), {'regions': count})
    return 0


def run_profile(args) -> int:
    A = load_input(args).arrangement
    profile = central_profile(A)
    rows = sorted(profile.items())
    lines = ['size rank count'] + [f"{size} {r} {count}" for (size, r), count in rows]
    payload = {'rank': arrangement_rank(A),
               'profile': [[size, r, str(count)] for (size, r), count in rows]}
    emit(args, '\n'.join(lines), payload)
    return 0


def register(subparsers, common) -> None:
    """Attach the polynomial commands."""
    commands = [
        ('tutte', run_tutte, "Tutte polynomial T(x, y)"),
        ('coboundary', run_coboundary, "coboundary polynomial chibar(q, t)"),
        ('zeta-coboundary', run_zeta_coboundary, "zeta_m-coboundary polynomial"),
        ('characteristic', run_characteristic, "characteristic polynomial chi(q)"),
        ('poincare', run_poincare, "Poincare polynomial of the complement"),
        ('regions', run_regions, "number of regions of a real arrangement"),
    ]
    for name, handler, help_text in commands:
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        add_input_argument(sub)
        add_method_arguments(sub)
        if name == 'tutte':
            sub.add_argument('--at', type=_parse_point, default=None, metavar='X,Y',
                             help="evaluate exactly at a rational point, e.g. 2,0 or 1/2,3")
        sub.set_defaults(handler=handler)

    sub = subparsers.add_parser('profile', parents=[common], help="central subset profile (|B|, r(B)) -> count")
    add_input_argument(sub)
    sub.set_defaults(handler=run_profile)
