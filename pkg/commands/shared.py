"""
Helpers shared by the command modules: input loading, method dispatch
and output in text or JSON form.
"""
import argparse
import json
import logging
from typing import Dict, List, Optional, Sequence

from arrangement import Arrangement, arrangement_rank, coboundary
from arrangement_file import ArrangementFile, parse
from config import BACKENDS, ENGINE_CONFIG
from cyclotomic import RingSpec, make_ring_spec
from errors import InvalidParameterError, InvalidReductionError, NotSymmetricError
from finite_field import (check_correct_reduction, interpolate_chibar, interpolate_coboundary,
                          select_primes)
from polynomials import format_poly, poly_to_json
from symmetric import (RepresentativeEquation, check_representatives, coboundary_csh_closed_form,
                       coboundary_sh_closed_form, group_orbits)

logger = logging.getLogger(__name__)

METHODS = ('definition', 'finite-field', 'symmetric')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_VIOLATION = 4


def add_input_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('file', nargs='?', default='-', type=argparse.FileType('r', encoding='utf-8'),
                        help="arrangement file (default: standard input)")


def add_method_arguments(parser: argparse.ArgumentParser, with_method: bool = True) -> None:
    if with_method:
        parser.add_argument('--method', choices=METHODS, default='definition',
                            help="how the coboundary polynomial is obtained")
    parser.add_argument('--primes', type=parse_primes, default=None,
                        help="comma separated primes for finite-field and symmetric methods")
    parser.add_argument('--backend', choices=BACKENDS, default=ENGINE_CONFIG['backend'],
                        help="coefficient ring used for point counts")
    parser.add_argument('--workers', type=int, default=ENGINE_CONFIG['workers'],
                        help="processes for histogram enumeration")


def parse_primes(text: str) -> List[int]:
    try:
        primes = [int(p) for p in text.split(',') if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")
    if not primes:
        raise argparse.ArgumentTypeError("expected at least one prime")
    return primes


def load_input(args) -> ArrangementFile:
    with args.file as handle:
        text = handle.read()
    parsed = parse(text)
    logger.debug(f"🔍 loaded {len(parsed.arrangement)} hyperplanes in C^{parsed.n} over Z[zeta_{parsed.m}]")
    return parsed


def ring_specs(A: Arrangement, backend: str, primes: Optional[Sequence[int]]) -> List[RingSpec]:
    """Rings for interpolation: the given primes, or enough automatically selected ones."""
    if primes is None:
        return select_primes(A, backend, arrangement_rank(A) + 1)
    specs = [make_ring_spec(backend, A.m, q) for q in primes]
    for spec in specs:
        if not check_correct_reduction(A, spec):
            raise InvalidReductionError(f"{A} does not reduce correctly over {spec.label()}")
    return specs


def symmetric_representatives(parsed: ArrangementFile) -> List[RepresentativeEquation]:
    """Representatives from the file, or orbit representatives recovered from the hyperplanes."""
    A = parsed.arrangement
    if parsed.representatives:
        if parsed.kind is None:
            raise NotSymmetricError("representatives mix sh and csh kinds")
        check_representatives(A, parsed.representatives)
        return list(parsed.representatives)
    if A.m > 1:
        try:
            return group_orbits(A, colored=True)
        except NotSymmetricError:
            logger.debug("not closed under colored permutations, trying plain permutations")
    return group_orbits(A, colored=False)


def symmetric_coboundary(parsed: ArrangementFile, specs: Sequence[RingSpec]):
    A = parsed.arrangement
    reps = symmetric_representatives(parsed)
    colored = bool(reps) and reps[0].colored
    closed_form = coboundary_csh_closed_form if colored else coboundary_sh_closed_form
    r_A = arrangement_rank(A)
    values = {}
    for spec in specs:
        values[spec.size] = closed_form(reps, A.n, spec, rank_A=r_A)
    return interpolate_chibar(A, values)


def coboundary_by_method(parsed: ArrangementFile, method: str, backend: str,
                         primes: Optional[Sequence[int]] = None, workers: Optional[int] = None):
    """Ordinary coboundary polynomial chibar(q, t) by the requested method."""
    A = parsed.arrangement
    if method == 'definition':
        return coboundary(A)
    specs = ring_specs(A, backend, primes)
    logger.info(f"🔍 {method} over {', '.join(s.label() for s in specs)}")
    if method == 'finite-field':
        return interpolate_coboundary(A, specs, zeta=False, workers=workers)
    if method == 'symmetric':
        return symmetric_coboundary(parsed, specs)
    raise InvalidParameterError(f"unknown method {method!r}")


def emit(args, text: str, payload: Dict[str, object]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def emit_poly(args, poly) -> None:
    emit(args, format_poly(poly), poly_to_json(poly))
