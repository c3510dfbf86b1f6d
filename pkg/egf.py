"""
Truncated exponential generating functions sum u_n x^n / n! whose
coefficients u_n are integer polynomials in t, and the generating-function
identities for coboundary polynomials of arrangement families.

q is always a concrete integer here.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy.ntheory.multinomial import multinomial_coefficients_iterator

from arrangement import arrangement_rank, coboundary
from cyclotomic import LITERAL_BACKENDS, l_of, make_ring_spec
from errors import InvalidParameterError, InvalidReductionError, NoRootError, TheoremViolation
from families import Family, braid, imprimitive, ish, type_b, type_d
from finite_field import check_correct_reduction, point_count_histogram, reduce_arrangement
from polynomials import T_RING, TU, evaluate_first, format_poly, t_polynomial
from symmetric import block_values, symmetric_point_sum

logger = logging.getLogger(__name__)

IDENTITIES = ('A', 'B', 'D', 'In', 'Gmpn', 'Gmmn')
LHS_METHODS = ('definition', 'finite-field', 'symmetric')


def _as_t(value):
    return value if hasattr(value, 'ring') else T_RING(value)


@dataclass(frozen=True)
class TruncatedSeries:
    """u_0, ..., u_N of sum u_n x^n / n!."""

    order: int
    terms: Tuple[object, ...]

    def __post_init__(self):
        terms = tuple(_as_t(u) for u in self.terms)
        if self.order < 0 or len(terms) != self.order + 1:
            raise InvalidParameterError(f"series of order {self.order} needs {self.order + 1} terms, got {len(terms)}")
        object.__setattr__(self, 'terms', terms)

    @classmethod
    def from_function(cls, order: int, coefficient: Callable[[int], object]) -> 'TruncatedSeries':
        return cls(order, tuple(coefficient(n) for n in range(order + 1)))

    @classmethod
    def identity(cls, order: int) -> 'TruncatedSeries':
        return cls.from_function(order, lambda n: 1 if n == 0 else 0)

    @classmethod
    def exponential(cls, order: int, base: int = 1) -> 'TruncatedSeries':
        """exp(base * x): u_n = base^n."""
        return cls.from_function(order, lambda n: base**n)

    def __mul__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        return series_mul(self, other)

    def __pow__(self, k: int) -> 'TruncatedSeries':
        return series_pow(self, k)

    def __getitem__(self, n: int):
        return self.terms[n]


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Binomial convolution u_n = sum_i binom(n, i) a_i b_(n-i)."""
    if a.order != b.order:
        raise InvalidParameterError(f"cannot multiply series of orders {a.order} and {b.order}")
    terms = []
    for n in range(a.order + 1):
        u = T_RING.zero
        for i in range(n + 1):
            if a.terms[i] and b.terms[n - i]:
                u += math.comb(n, i) * a.terms[i] * b.terms[n - i]
        terms.append(u)
    return TruncatedSeries(a.order, tuple(terms))


def series_pow(a: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 0:
        raise InvalidParameterError(f"series exponent must be non-negative, got {k}")
    result = TruncatedSeries.identity(a.order)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def convolution_sum(series: Sequence[TruncatedSeries], n: int):
    """sum over a_1 + ... + a_k = n of binom(n; a) * prod_j v^(j)_(a_j), computed directly."""
    total = T_RING.zero
    for parts, multinomial in multinomial_coefficients_iterator(len(series), n):
        term = T_RING(int(multinomial))
        for s, a_j in zip(series, parts):
            term *= s.terms[a_j]
            if not term:
                break
        total += term
    return total


def block_series(values: Sequence[object], order: int) -> TruncatedSeries:
    return TruncatedSeries(order, tuple(values[:order + 1]))


def _monomial_series(order: int, exponent: Callable[[int], int], scale: Callable[[int], int] = lambda n: 1):
    return TruncatedSeries.from_function(order, lambda n: scale(n) * TU**exponent(n))


# --- Named identities ---------------------------------------------------------------

def ring_size(identity: str, params: Dict[str, object]) -> int:
    q = params['q']
    if identity in ('Gmpn', 'Gmmn') and params.get('backend', 'prime-field') in LITERAL_BACKENDS:
        return q ** l_of(params['m'])
    return q


def _validate(identity: str, params: Dict[str, object]) -> Dict[str, object]:
    if identity not in IDENTITIES:
        raise InvalidParameterError(f"unknown identity {identity!r}; expected one of {', '.join(IDENTITIES)}")
    params = dict(params)
    q = params.get('q')
    if not isinstance(q, int) or q < 2:
        raise InvalidParameterError(f"q must be an integer >= 2, got {q!r}")
    if identity in ('B', 'D') and q % 2 == 0:
        raise InvalidParameterError(f"identity {identity} needs odd q for the exponent (q-1)/2, got q={q}")
    if identity == 'In' and (q < 3 or q % 2 == 0):
        raise InvalidParameterError(f"identity In needs odd q >= 3 for the exponent (q-3)/2, got q={q}")
    if identity in ('Gmpn', 'Gmmn'):
        m = params.get('m')
        if not isinstance(m, int) or m < 1:
            raise InvalidParameterError(f"identity {identity} needs m >= 1, got {m!r}")
        p = params.get('p', m) if identity == 'Gmpn' else m
        if identity == 'Gmpn' and (not isinstance(p, int) or p < 1 or m % p or p == m):
            raise InvalidParameterError(f"identity Gmpn needs p a proper divisor of m, got m={m}, p={p}")
        params['p'] = p
        size = ring_size(identity, params)
        if (size - 1) % m:
            raise InvalidParameterError(f"exponent ({size}-1)/{m} is not an integer")
    else:
        params['m'] = 1
    return params


def build_named_rhs(identity: str, params: Dict[str, object], order: int) -> TruncatedSeries:
    """Right-hand side of the identity, truncated at x^order."""
    params = _validate(identity, params)
    q = params['q']
    pairs = lambda n: math.comb(n, 2)

    if identity == 'A':
        return _monomial_series(order, pairs) ** q
    if identity in ('B', 'D'):
        first = _monomial_series(order, (lambda n: n * n) if identity == 'B' else (lambda n: n * (n - 1)))
        return first * _monomial_series(order, pairs, lambda n: 2**n) ** ((q - 1) // 2)
    if identity == 'In':
        mixed = TruncatedSeries.from_function(
            order, lambda n: sum((math.comb(n, a) * TU**(n + a * (n - a)) for a in range(n + 1)), T_RING.zero))
        apart = TruncatedSeries.from_function(
            order, lambda n: sum((math.comb(n, a) * TU**(a * (n - a)) for a in range(n + 1)), T_RING.zero))
        return _monomial_series(order, pairs) * mixed * apart ** ((q - 3) // 2)

    m = params['m']
    size = ring_size(identity, params)
    colored = _monomial_series(order, pairs, lambda n: m**n) ** ((size - 1) // m)
    if identity == 'Gmpn':
        return _monomial_series(order, lambda n: n + m * pairs(n)) * colored
    return _monomial_series(order, lambda n: m * pairs(n)) * colored


def identity_family(identity: str, params: Dict[str, object], n: int) -> Family:
    if identity == 'A':
        return braid(n)
    if identity == 'B':
        return type_b(n)
    if identity == 'D':
        return type_d(n)
    if identity == 'In':
        return ish(n)
    return imprimitive(params['m'], params['p'], n)


def _lhs_term(identity: str, params: Dict[str, object], n: int, method: str):
    """size^(n - r(A_n)) * chibar_(A_n)(size, t); 1 for n = 0."""
    if n == 0:
        return T_RING.one
    fam = identity_family(identity, params, n)
    A = fam.arrangement
    size = ring_size(identity, params)
    if method == 'definition':
        return evaluate_first(coboundary(A), size) * size**(A.n - arrangement_rank(A))

    backend = params.get('backend', 'prime-field')
    spec = make_ring_spec(backend, A.m, params['q'])
    if method == 'finite-field':
        if not check_correct_reduction(A, spec):
            raise InvalidReductionError(f"{A} does not reduce correctly over {spec.label()}")
        return t_polynomial(point_count_histogram(reduce_arrangement(A, spec)))
    colored = identity in ('Gmpn', 'Gmmn')
    return symmetric_point_sum(fam.representatives, n, spec, colored)


@dataclass(frozen=True)
class EgfEntry:
    n: int
    status: str
    lhs: Optional[object] = None
    rhs: Optional[object] = None
    detail: str = ''

    def to_dict(self) -> Dict[str, object]:
        return {
            'n': self.n,
            'status': self.status,
            'lhs': format_poly(self.lhs) if self.lhs is not None else None,
            'rhs': format_poly(self.rhs) if self.rhs is not None else None,
            'detail': self.detail,
        }


@dataclass(frozen=True)
class EgfReport:
    identity: str
    params: Dict[str, object]
    order: int
    method: str
    entries: Tuple[EgfEntry, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(e.status in ('equal', 'skipped') for e in self.entries)

    @property
    def mismatches(self) -> List[EgfEntry]:
        return [e for e in self.entries if e.status in ('mismatch', 'violation')]

    def to_dict(self) -> Dict[str, object]:
        return {
            'identity': self.identity,
            'params': dict(self.params),
            'order': self.order,
            'method': self.method,
            'ok': self.ok,
            'entries': [e.to_dict() for e in self.entries],
        }


def egf_check(identity: str, params: Dict[str, object], order: int,
              method: str = 'definition', start: int = 0) -> EgfReport:
    """Compare n! [x^n] of both sides for start <= n <= order."""
    if method not in LHS_METHODS:
        raise InvalidParameterError(f"unknown LHS method {method!r}; expected one of {', '.join(LHS_METHODS)}")
    params = _validate(identity, params)
    rhs = build_named_rhs(identity, params, order)
    entries = []
    for n in range(start, order + 1):
        try:
            lhs = _lhs_term(identity, params, n, method)
        except (InvalidReductionError, NoRootError) as e:
            entries.append(EgfEntry(n, 'skipped', rhs=rhs[n], detail=str(e)))
            continue
        except TheoremViolation as e:
            entries.append(EgfEntry(n, 'violation', rhs=rhs[n], detail=str(e)))
            continue
        status = 'equal' if lhs == rhs[n] else 'mismatch'
        if status == 'mismatch':
            logger.warning(f"⚠️ {identity} {params} n={n}: lhs {format_poly(lhs)} != rhs {format_poly(rhs[n])}")
        entries.append(EgfEntry(n, status, lhs, rhs[n]))
    report = EgfReport(identity, params, order, method, tuple(entries))
    logger.info(f"{'✅' if report.ok else '❌'} identity {identity} q={params['q']} up to n={order} ({method})")
    return report


def symmetric_egf(reps, spec, order: int, colored: bool = False) -> TruncatedSeries:
    """Product of the per-block series of the indice partition and the free-key series."""
    blocks, free = block_values(reps, spec, order, colored)
    series = TruncatedSeries(order, tuple(free))
    for values in blocks:
        series = series * block_series(values, order)
    return series
