"""
Hyperplane arrangements over Z[zeta_m] and their definitional polynomials.

Rank and centrality are decided over Q(zeta_m) by fraction-free Gaussian
elimination on NFElem rows (coefficients followed by the right-hand side).
All polynomials derive from one enumeration of central subsets, the
central profile {(|B|, r(B)): count}.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.polyerrors import ExactQuotientFailed

from cyclotomic import CycElem, NFElem, format_cyc, l_of, to_number_field
from errors import ArrangementError, InconsistencyError, NotRealError
from polynomials import (COBOUNDARY_RING, Q, T, Q_RING, QU, TUTTE_RING, X, Y,
                         evaluate_rational)

logger = logging.getLogger(__name__)

Row = Tuple[NFElem, ...]


def format_linear_form(coeffs: Sequence[CycElem], rhs: CycElem) -> str:
    """`c1 z1 + c2 z2 = d` with parenthesised cyclotomic coefficients."""
    parts = []
    for i, c in enumerate(coeffs, start=1):
        if c.is_zero:
            continue
        nonzero = [k for k, v in enumerate(c.coords) if v]
        if nonzero == [0]:
            value = c.coords[0]
            sign = '-' if value < 0 else '+'
            body = f'z{i}' if abs(value) == 1 else f'{abs(value)} z{i}'
        else:
            sign, body = '+', f'({format_cyc(c)}) z{i}'
        parts.append((sign, body))
    if not parts:
        lhs = '0'
    else:
        sign, body = parts[0]
        lhs = body if sign == '+' else f'-{body}'
        for sign, body in parts[1:]:
            lhs += f' {sign} {body}'
    nonzero_rhs = [k for k, v in enumerate(rhs.coords) if v]
    rhs_text = format_cyc(rhs) if nonzero_rhs in ([], [0]) else f'({format_cyc(rhs)})'
    return f'{lhs} = {rhs_text}'


@dataclass(frozen=True)
class Hyperplane:
    """{c_1 z_1 + ... + c_n z_n = d} with coefficients in Z[zeta_m]."""

    coeffs: Tuple[CycElem, ...]
    rhs: CycElem

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, 'coeffs', coeffs)
        if any(c.m != self.rhs.m for c in coeffs):
            raise ArrangementError("hyperplane mixes coefficients of different root orders")
        if all(v.is_zero for v in self.row[:-1]):
            raise ArrangementError(f"hyperplane has a zero coefficient vector: {self}")

    @property
    def m(self) -> int:
        return self.rhs.m

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @cached_property
    def row(self) -> Row:
        return tuple(to_number_field(c) for c in self.coeffs) + (to_number_field(self.rhs),)

    def same_set(self, other: 'Hyperplane') -> bool:
        """True when both equations define the same affine hyperplane."""
        return self.m == other.m and self.n == other.n and proportional(self.row, other.row)

    def __str__(self) -> str:
        return format_linear_form(self.coeffs, self.rhs)


def hyperplane(m: int, coeffs: Sequence[int], rhs: int = 0) -> Hyperplane:
    """Hyperplane with integer coefficients embedded in Z[zeta_m]."""
    return Hyperplane(tuple(CycElem.integer(m, c) for c in coeffs), CycElem.integer(m, rhs))


def proportional(u: Sequence[NFElem], v: Sequence[NFElem]) -> bool:
    """u and v are nonzero multiples of each other over Q(zeta_m)."""
    pivot = next((i for i, a in enumerate(u) if not a.is_zero), None)
    if pivot is None or v[pivot].is_zero:
        return False
    a, b = u[pivot], v[pivot]
    return all((a * y - b * x).is_zero for x, y in zip(u, v))


def dedupe_hyperplanes(hyperplanes: Iterable[Hyperplane]) -> List[Hyperplane]:
    """Keep the first equation of every affine set, preserving order."""
    kept: List[Hyperplane] = []
    for h in hyperplanes:
        if not any(h.same_set(k) for k in kept):
            kept.append(h)
    return kept


@dataclass(frozen=True)
class Arrangement:
    m: int
    n: int
    hyperplanes: Tuple[Hyperplane, ...] = ()

    def __post_init__(self):
        l_of(self.m)
        if self.n < 0:
            raise ArrangementError(f"ambient dimension must be non-negative, got {self.n}")
        hyperplanes = tuple(self.hyperplanes)
        object.__setattr__(self, 'hyperplanes', hyperplanes)
        for h in hyperplanes:
            if h.m != self.m or h.n != self.n:
                raise ArrangementError(
                    f"hyperplane {h} is over Z[zeta_{h.m}]^{h.n}, arrangement is over Z[zeta_{self.m}]^{self.n}")
        for i, h in enumerate(hyperplanes):
            for k in hyperplanes[:i]:
                if h.same_set(k):
                    raise ArrangementError(f"duplicate hyperplane: {h} and {k}")

    @classmethod
    def collapsed(cls, m: int, n: int, hyperplanes: Iterable[Hyperplane]) -> 'Arrangement':
        return cls(m, n, tuple(dedupe_hyperplanes(hyperplanes)))

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @cached_property
    def rows(self) -> Tuple[Row, ...]:
        return tuple(h.row for h in self.hyperplanes)

    @cached_property
    def zero(self) -> NFElem:
        return NFElem.integer(self.m, 0)

    def same_hyperplanes(self, other: 'Arrangement') -> bool:
        """Equality as sets of affine hyperplanes."""
        if (self.m, self.n, len(self)) != (other.m, other.n, len(other)):
            return False
        return all(any(h.same_set(k) for k in other.hyperplanes) for h in self.hyperplanes)

    def __str__(self) -> str:
        return f"Arrangement(m={self.m}, n={self.n}, {len(self)} hyperplanes)"


# --- Fraction-free elimination over Q(zeta_m) ----------------------------------

Echelon = Tuple[Tuple[int, Row], ...]


def _reduce(echelon: Echelon, row: Row) -> Row:
    for pivot, base in echelon:
        a = row[pivot]
        if a.is_zero:
            continue
        b = base[pivot]
        row = tuple(b * r - a * s for r, s in zip(row, base))
    return row


def _pivot(row: Row, n: int) -> Optional[int]:
    for i in range(n):
        if not row[i].is_zero:
            return i
    return None


def _extend(echelon: Echelon, row: Row, n: int) -> Tuple[str, Echelon]:
    """Add a row to an echelon basis of a central system.

    Returns ('independent', new echelon), ('dependent', echelon) or
    ('inconsistent', echelon) when the system stops having a solution.
    """
    reduced = _reduce(echelon, row)
    pivot = _pivot(reduced, n)
    if pivot is not None:
        return 'independent', echelon + ((pivot, reduced),)
    if reduced[n].is_zero:
        return 'dependent', echelon
    return 'inconsistent', echelon


def is_central(A: Arrangement, sub: Iterable[int]) -> bool:
    echelon: Echelon = ()
    for i in sub:
        status, echelon = _extend(echelon, A.rows[i], A.n)
        if status == 'inconsistent':
            return False
    return True


def _coefficient_rank(A: Arrangement, sub: Sequence[int]) -> int:
    echelon: Echelon = ()
    for i in sub:
        row = A.rows[i][:-1] + (A.zero,)
        _, echelon = _extend(echelon, row, A.n)
    return len(echelon)


def rank(A: Arrangement, sub: Optional[Iterable[int]] = None) -> int:
    """r(B) = n - dim of the intersection; for noncentral B the largest central rank."""
    indices = list(range(len(A))) if sub is None else sorted(set(sub))
    for i in indices:
        if not 0 <= i < len(A):
            raise ArrangementError(f"hyperplane index {i} out of range for {A}")

    echelon: Echelon = ()
    central = True
    for i in indices:
        status, echelon = _extend(echelon, A.rows[i], A.n)
        if status == 'inconsistent':
            central = False
            break
    if central:
        return len(echelon)

    bound = _coefficient_rank(A, indices)
    best = 0

    def search(start: int, basis: Echelon) -> None:
        nonlocal best
        best = max(best, len(basis))
        for pos in range(start, len(indices)):
            if best == bound:
                return
            status, grown = _extend(basis, A.rows[indices[pos]], A.n)
            if status == 'independent':
                search(pos + 1, grown)

    search(0, ())
    return best


@lru_cache(maxsize=256)
def arrangement_rank(A: Arrangement) -> int:
    return rank(A)


@lru_cache(maxsize=256)
def _profile(A: Arrangement) -> Tuple[Tuple[Tuple[int, int], int], ...]:
    counts: Counter = Counter()
    rows, n, k = A.rows, A.n, len(A)

    def walk(start: int, echelon: Echelon, size: int) -> None:
        counts[(size, len(echelon))] += 1
        for i in range(start, k):
            status, grown = _extend(echelon, rows[i], n)
            if status != 'inconsistent':
                walk(i + 1, grown, size + 1)

    walk(0, (), 0)
    logger.debug(f"central profile of {A}: {sum(counts.values())} central subsets")
    return tuple(sorted(counts.items()))


def central_profile(A: Arrangement) -> Dict[Tuple[int, int], int]:
    """Number of central subsets B by (|B|, r(B))."""
    return dict(_profile(A))


# --- Polynomials ---------------------------------------------------------------

def tutte(A: Arrangement):
    r_A = arrangement_rank(A)
    poly = TUTTE_RING.zero
    for (size, r), count in _profile(A):
        poly += count * (X - 1)**(r_A - r) * (Y - 1)**(size - r)
    return poly


def _coboundary(A: Arrangement, scale: int):
    r_A = arrangement_rank(A)
    poly = COBOUNDARY_RING.zero
    for (size, r), count in _profile(A):
        poly += count * Q**(scale * (r_A - r)) * (T - 1)**size
    return poly


def coboundary(A: Arrangement):
    return _coboundary(A, 1)


def zeta_coboundary(A: Arrangement):
    return _coboundary(A, l_of(A.m))


def tutte_from_coboundary(chibar, r_A: int):
    """T(x, y) = chibar((x-1)(y-1), y) / (y-1)^r(A); the division must be exact."""
    substituted = TUTTE_RING.zero
    for (i, j), c in chibar.terms():
        substituted += c * ((X - 1) * (Y - 1))**i * Y**j
    try:
        return substituted.exquo((Y - 1)**r_A)
    except ExactQuotientFailed as e:
        raise InconsistencyError(f"coboundary {chibar} is not divisible by (y-1)^{r_A}") from e


def tutte_coboundary_check(A: Arrangement) -> bool:
    return tutte_from_coboundary(coboundary(A), arrangement_rank(A)) == tutte(A)


def characteristic_from_coboundary(chibar, n: int, r_A: int):
    """chi(q) = q^(n - r) * chibar(q, 0)."""
    at_zero = Q_RING.from_dict({(i,): c for (i, j), c in chibar.terms() if j == 0})
    return QU**(n - r_A) * at_zero


def characteristic(A: Arrangement):
    return characteristic_from_coboundary(coboundary(A), A.n, arrangement_rank(A))


def poincare_from_tutte(tutte_poly, r_A: int):
    """q^r * T(1 + 1/q, 0)."""
    poly = Q_RING.zero
    for (i, j), c in tutte_poly.terms():
        if j == 0:
            poly += c * (QU + 1)**i * QU**(r_A - i)
    return poly


def poincare(A: Arrangement):
    """Poincare polynomial of the complement."""
    return poincare_from_tutte(tutte(A), arrangement_rank(A))


def tutte_evaluate(A: Arrangement, x, y):
    """Exact value of T_A at rational (x, y), as a sympy Rational."""
    return evaluate_rational(tutte(A), x, y)


def is_real(A: Arrangement) -> bool:
    return all(v.is_real for row in A.rows for v in row)


def region_count(A: Arrangement) -> int:
    """Number of regions of a real arrangement, |T(2, 0)|."""
    if not is_real(A):
        raise NotRealError(f"{A} has non-real coefficients; regions are only defined over R")
    return regions_from_tutte(tutte(A))


def regions_from_tutte(tutte_poly) -> int:
    return abs(int(tutte_poly(2, 0)))
