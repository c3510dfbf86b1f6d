"""
Finite field method: reduce an arrangement into a finite coefficient ring,
count points by the number of hyperplanes through them, and recover the
coboundary polynomial.

    size^(n - r(A)) * chibar(size, t) = sum over points z of t^h(z)

where size is the number of ring elements (q^l_m for the literal quotient ring,
q for a prime field). Per-prime values are interpolated back to a polynomial.
"""
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol, primerange
from sympy.combinatorics.permutations import Permutation
from sympy.polys.polyfuncs import interpolate

from arrangement import Arrangement, arrangement_rank, coboundary
from config import ENGINE_CONFIG
from cyclotomic import (CycElem, PrimeField, RingSpec, coefficient_ring, euler_phi, l_of,
                        make_ring_spec, to_number_field)
from debug_utils import debug_report
from errors import (InconsistencyError, InvalidParameterError, InvalidReductionError,
                    NoRootError, TheoremViolation)
from polynomials import Q, T, evaluate_first, scale_exponent, t_coefficients, t_polynomial

logger = logging.getLogger(__name__)

HHistogram = Dict[int, int]
ReducedHyperplane = Tuple[Tuple[Tuple[int, int], ...], int]


@dataclass(frozen=True)
class ReducedArrangement:
    """Hyperplanes reduced into the ring of spec.

    Each hyperplane is stored sparsely as ((position, coefficient index), ...)
    together with the index of its right-hand side.
    """

    spec: RingSpec
    hyperplanes: Tuple[ReducedHyperplane, ...]
    source: Arrangement

    def __post_init__(self):
        for h in self.hyperplanes:
            if not h[0]:
                raise InvalidReductionError(f"a hyperplane of {self.source} vanishes in {self.spec.label()}")

    @property
    def n(self) -> int:
        return self.source.n


def reduce_arrangement(A: Arrangement, spec: RingSpec) -> ReducedArrangement:
    ring = coefficient_ring(spec)
    reduced = []
    for h in A.hyperplanes:
        terms = tuple((pos, ring.index(ring.embed(c))) for pos, c in enumerate(h.coeffs))
        reduced.append((tuple(t for t in terms if t[1]), ring.index(ring.embed(h.rhs))))
    return ReducedArrangement(spec, tuple(reduced), A)


# --- Correct reduction --------------------------------------------------------------

def _determinant(matrix: Sequence[Sequence[CycElem]], m: int) -> CycElem:
    """Leibniz expansion with exact Z[zeta_m] arithmetic."""
    size = len(matrix)
    total = CycElem.zero(m)
    for perm in permutations(range(size)):
        term = CycElem.one(m)
        for row, col in enumerate(perm):
            term = term * matrix[row][col]
            if term.is_zero:
                break
        if term.is_zero:
            continue
        total = total + term if Permutation(list(perm)).signature() > 0 else total - term
    return total


def iter_minors(A: Arrangement):
    """Every square minor of the |A| x (n+1) augmented coefficient matrix."""
    matrix = [list(h.coeffs) + [h.rhs] for h in A.hyperplanes]
    width = A.n + 1
    for size in range(1, min(len(matrix), width) + 1):
        for rows in combinations(range(len(matrix)), size):
            for cols in combinations(range(width), size):
                yield rows, cols, _determinant([[matrix[r][c] for c in cols] for r in rows], A.m)


def minor_bound(A: Arrangement) -> int:
    """Bound on |coordinates| of any minor: k! * c^k, c the largest l1 coordinate norm."""
    k = min(len(A), A.n + 1)
    c = max((sum(abs(x) for x in e.coords) for h in A.hyperplanes for e in h.coeffs + (h.rhs,)), default=0)
    return math.factorial(k) * c**k


def check_correct_reduction(A: Arrangement, spec: RingSpec,
                            max_n: Optional[int] = None,
                            max_hyperplanes: Optional[int] = None) -> bool:
    """Every minor that is nonzero over Q(zeta_m) stays nonzero in the ring."""
    if spec.m != A.m:
        return False
    max_n = ENGINE_CONFIG['minor_max_n'] if max_n is None else max_n
    max_hyperplanes = ENGINE_CONFIG['minor_max_hyperplanes'] if max_hyperplanes is None else max_hyperplanes

    if A.n > max_n or len(A) > max_hyperplanes:
        bound = minor_bound(A)
        if isinstance(spec, PrimeField):
            bound = bound ** euler_phi(A.m)
        logger.warning(f"⚠️ {A} exceeds the minor cap; using the bound q > {bound}")
        return spec.q > bound

    ring = coefficient_ring(spec)
    zero = ring.zero
    for rows, cols, det in iter_minors(A):
        if to_number_field(det).is_zero:
            continue
        if ring.embed(det) == zero:
            logger.debug(f"minor rows={rows} cols={cols} vanishes in {spec.label()}")
            return False
    return True


# --- Point counting -----------------------------------------------------------------

def points_in_range(size: int, n: int, start: int, stop: int) -> Iterator[Tuple[int, ...]]:
    """Points with index in [start, stop), in the order of product(range(size), repeat=n)."""
    z = []
    rest = start
    for _ in range(n):
        rest, digit = divmod(rest, size)
        z.append(digit)
    z.reverse()
    for _ in range(max(0, stop - start)):
        yield tuple(z)
        i = n - 1
        while i >= 0:
            z[i] += 1
            if z[i] < size:
                break
            z[i] = 0
            i -= 1


def _count_chunk(spec: RingSpec, hyperplanes: Sequence[ReducedHyperplane], n: int,
                 start: int, stop: int) -> HHistogram:
    ring = coefficient_ring(spec)
    add, mul = ring.add_table, ring.mul_table
    compiled = [(tuple((pos, mul[c]) for pos, c in terms), d) for terms, d in hyperplanes]
    counts: Counter = Counter()
    for z in points_in_range(ring.size, n, start, stop):
        h = 0
        for terms, d in compiled:
            acc = 0
            for pos, row in terms:
                acc = add[acc][row[z[pos]]]
            if acc == d:
                h += 1
        counts[h] += 1
    return dict(counts)


def histogram_range(R: ReducedArrangement, start: int, stop: int) -> HHistogram:
    """Histogram of the points with mixed-radix index in [start, stop)."""
    return _count_chunk(R.spec, R.hyperplanes, R.n, start, stop)


def merge_histograms(parts: Iterable[HHistogram]) -> HHistogram:
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return dict(sorted(total.items()))


def point_count_histogram(R: ReducedArrangement, workers: Optional[int] = None,
                          chunk_points: Optional[int] = None) -> HHistogram:
    workers = ENGINE_CONFIG['workers'] if workers is None else workers
    chunk_points = ENGINE_CONFIG['chunk_points'] if chunk_points is None else chunk_points
    total_points = R.spec.size ** R.n
    bounds = [(s, min(s + chunk_points, total_points)) for s in range(0, total_points, chunk_points)]
    if not bounds:
        bounds = [(0, total_points)]

    if workers > 1 and len(bounds) > 1:
        logger.debug(f"counting {total_points} points over {workers} workers")
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_count_chunk, R.spec, R.hyperplanes, R.n, s, e) for s, e in bounds]
            return merge_histograms(f.result() for f in futures)
    return merge_histograms(histogram_range(R, s, e) for s, e in bounds)


def hyperplanes_through(R: ReducedArrangement, point: Sequence[Tuple[int, ...]]) -> int:
    """Direct count on residue tuples, testing each hyperplane on its own."""
    ring = coefficient_ring(R.spec)
    count = 0
    for terms, d in R.hyperplanes:
        acc = ring.zero
        for pos, c in terms:
            acc = ring.add(acc, ring.mul(ring.element(c), point[pos]))
        if acc == ring.element(d):
            count += 1
    return count


# --- Coboundary from point counts -------------------------------------------------------

def _require_reduction(A: Arrangement, spec: RingSpec) -> None:
    if not check_correct_reduction(A, spec):
        raise InvalidReductionError(f"{A} does not reduce correctly over {spec.label()}")


def coboundary_at_prime(A: Arrangement, spec: RingSpec, workers: Optional[int] = None):
    """chibar(size, t) from the point histogram, as a polynomial in t."""
    _require_reduction(A, spec)
    histogram = point_count_histogram(reduce_arrangement(A, spec), workers=workers)
    divisor = spec.size ** (A.n - arrangement_rank(A))
    residues = {h: c % divisor for h, c in histogram.items() if c % divisor}
    if residues:
        report = {
            'arrangement': str(A),
            'ring': spec.label(),
            'histogram': histogram,
            'divisor': divisor,
            'residues': residues,
        }
        debug_report('theorem_violation', report)
        raise TheoremViolation(f"point counts over {spec.label()} are not divisible by {divisor}", report)
    logger.debug(f"{A} over {spec.label()}: histogram {histogram}")
    return t_polynomial({h: c // divisor for h, c in histogram.items()})


def select_primes(A: Arrangement, backend: str, count: int, exclude: Iterable[int] = (),
                  start: int = 2, limit: Optional[int] = None) -> List[RingSpec]:
    """The smallest primes >= start giving a valid, correctly reducing ring."""
    limit = ENGINE_CONFIG['prime_search_limit'] if limit is None else limit
    excluded = set(exclude)
    chosen: List[RingSpec] = []
    for q in primerange(start, limit + 1):
        if len(chosen) == count:
            break
        if q in excluded:
            continue
        try:
            spec = make_ring_spec(backend, A.m, int(q))
        except NoRootError:
            continue
        if check_correct_reduction(A, spec):
            chosen.append(spec)
    if len(chosen) < count:
        raise InvalidParameterError(f"found only {len(chosen)} of {count} usable primes below {limit} for {A}")
    return chosen


def interpolate_chibar(A: Arrangement, values: Dict[int, object]):
    """Ordinary chibar(q, t) from its values at ring sizes; chibar - q^r has q-degree < r."""
    r_A = arrangement_rank(A)
    if len(values) < r_A:
        raise InvalidParameterError(f"need at least {r_A} distinct ring sizes to interpolate, got {len(values)}")

    table = {node: t_coefficients(poly) for node, poly in values.items()}
    for node, coeffs in table.items():
        coeffs[0] = coeffs.get(0, 0) - node**r_A
    exponents = sorted({j for coeffs in table.values() for j, c in coeffs.items() if c})

    symbol = Symbol('q')
    result = Q**r_A
    for j in exponents:
        if r_A == 0:
            raise InconsistencyError(f"values of chibar for {A} are not constant in q")
        points = [(node, table[node].get(j, 0)) for node in sorted(table)]
        fitted = Poly(interpolate(points, symbol), symbol)
        if fitted.degree() >= r_A:
            raise InconsistencyError(f"t^{j} coefficient of chibar for {A} has q-degree >= {r_A}")
        for (i,), c in fitted.terms():
            if not c.is_Integer:
                raise InconsistencyError(f"non-integer interpolation coefficient {c} for q^{i} t^{j}")
            result += int(c) * Q**i * T**j
    return result


def interpolate_coboundary(A: Arrangement, specs: Sequence[RingSpec], zeta: bool = True,
                           workers: Optional[int] = None):
    """Coboundary polynomial from per-prime point counts.

    Returns the zeta_m-coboundary by default, the ordinary one with zeta=False.
    """
    values = {}
    for spec in specs:
        node = spec.size
        value = coboundary_at_prime(A, spec, workers=workers)
        if node in values and values[node] != value:
            raise InconsistencyError(f"two rings of size {node} disagree for {A}")
        values[node] = value
    plain = interpolate_chibar(A, values)
    logger.debug(f"interpolated coboundary of {A} from ring sizes {sorted(values)}")
    return scale_exponent(plain, 0, l_of(A.m)) if zeta else plain


# --- Stress report ----------------------------------------------------------------

def stress_report(A: Arrangement, primes: Sequence[int], backend: str = 'paper',
                  workers: Optional[int] = None) -> Dict[str, object]:
    """Run the counting pipeline per prime and classify each run.

    Status is 'exact-match' when the histogram equals size^(n-r) * chibar(size, t),
    'violation' otherwise, 'skipped' when the ring is unusable.
    """
    r_A = arrangement_rank(A)
    chibar = coboundary(A)
    instances = []
    for q in primes:
        entry: Dict[str, object] = {'q': q, 'backend': backend}
        try:
            spec = make_ring_spec(backend, A.m, q)
        except (NoRootError, InvalidParameterError) as e:
            entry.update(status='skipped', reason=str(e))
            instances.append(entry)
            continue
        entry['ring'] = spec.label()
        if not check_correct_reduction(A, spec):
            entry.update(status='skipped', reason='incorrect reduction')
            instances.append(entry)
            continue
        histogram = point_count_histogram(reduce_arrangement(A, spec), workers=workers)
        expected_poly = evaluate_first(chibar, spec.size) * spec.size ** (A.n - r_A)
        expected = {j: int(c) for (j,), c in expected_poly.terms()}
        entry['histogram'] = histogram
        entry['expected'] = expected
        if histogram == expected:
            entry['status'] = 'exact-match'
        else:
            divisor = spec.size ** (A.n - r_A)
            entry['status'] = 'violation'
            entry['divisible'] = all(c % divisor == 0 for c in histogram.values())
            entry['difference'] = {h: histogram.get(h, 0) - expected.get(h, 0)
                                   for h in sorted(set(histogram) | set(expected))
                                   if histogram.get(h, 0) != expected.get(h, 0)}
            debug_report('theorem_violation', dict(entry, arrangement=str(A)))
        logger.info(f"{'✅' if entry['status'] == 'exact-match' else '⚠️'} {A} over {spec.label()}: {entry['status']}")
        instances.append(entry)
    return {
        'arrangement': str(A),
        'rank': r_A,
        'backend': backend,
        'instances': instances,
        'violations': sum(1 for e in instances if e['status'] == 'violation'),
    }
