"""
Exact arithmetic in Z[zeta_m], its reduction mod q, and the finite
coefficient rings F_q[zeta_m] used for point counting.

CycElem keeps the l_m-coordinate representation (coords[i] multiplies
zeta^i). It is a spanning set, not a basis, for odd m > 1, so every zero
test that matters goes through NFElem, the canonical model Q[x]/Phi_m.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache, cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import ZZ, QQ, divisors, isprime, totient
from sympy.ntheory import n_order, primitive_root
from sympy.polys.rings import ring

from errors import (IncompatibleRingError, InvalidOrderError,
                    InvalidParameterError, NoRootError)

logger = logging.getLogger(__name__)

# Integer and rational polynomial rings in the generator of Q(zeta_m)
ZX, _zx = ring("x", ZZ)
QX, _qx = ring("x", QQ)


def l_of(m: int) -> int:
    """Length of the coordinate representation: m for odd m, m/2 for even m."""
    if not isinstance(m, int) or m < 1:
        raise InvalidOrderError(f"root order must be a positive integer, got {m!r}")
    return m if m % 2 else m // 2


@dataclass(frozen=True)
class CycElem:
    """Element sum(coords[i] * zeta_m^i) of Z[zeta_m]."""

    m: int
    coords: Tuple[int, ...]

    def __post_init__(self):
        width = l_of(self.m)
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != width:
            raise IncompatibleRingError(
                f"expected {width} coordinates for m={self.m}, got {len(coords)}")
        object.__setattr__(self, 'coords', coords)

    @classmethod
    def integer(cls, m: int, value: int) -> 'CycElem':
        return cls(m, (value,) + (0,) * (l_of(m) - 1))

    @classmethod
    def zero(cls, m: int) -> 'CycElem':
        return cls.integer(m, 0)

    @classmethod
    def one(cls, m: int) -> 'CycElem':
        return cls.integer(m, 1)

    @classmethod
    def root_power(cls, m: int, k: int) -> 'CycElem':
        """zeta_m^k, folded into the coordinate range."""
        width = l_of(m)
        coords = [0] * width
        e = k % m
        if e < width:
            coords[e] = 1
        else:
            # only reachable for even m: zeta^(m/2) = -1
            coords[e - width] = -1
        return cls(m, tuple(coords))

    @property
    def is_zero(self) -> bool:
        """Literal zero test on coordinates; see to_number_field for the field test."""
        return not any(self.coords)

    def __add__(self, other: 'CycElem') -> 'CycElem':
        return cyc_add(self, other)

    def __sub__(self, other: 'CycElem') -> 'CycElem':
        return cyc_add(self, -other)

    def __neg__(self) -> 'CycElem':
        return CycElem(self.m, tuple(-c for c in self.coords))

    def __mul__(self, other: 'CycElem') -> 'CycElem':
        return cyc_mul(self, other)

    def __str__(self) -> str:
        return format_cyc(self)


def _check_same_order(a: CycElem, b: CycElem) -> None:
    if a.m != b.m:
        raise IncompatibleRingError(f"cannot combine elements of Z[zeta_{a.m}] and Z[zeta_{b.m}]")


def cyc_add(a: CycElem, b: CycElem) -> CycElem:
    _check_same_order(a, b)
    return CycElem(a.m, tuple(x + y for x, y in zip(a.coords, b.coords)))


def _fold_product(m: int, left: Sequence[int], right: Sequence[int]) -> List[int]:
    """Convolution of coordinate lists with zeta^m = 1 (odd m) or zeta^(m/2) = -1 (even m)."""
    width = len(left)
    out = [0] * width
    odd = m % 2 == 1
    for i, ci in enumerate(left):
        if not ci:
            continue
        for j, cj in enumerate(right):
            if not cj:
                continue
            e = i + j
            if e < width:
                out[e] += ci * cj
            elif odd:
                out[e - width] += ci * cj
            else:
                out[e - width] -= ci * cj
    return out


def cyc_mul(a: CycElem, b: CycElem) -> CycElem:
    _check_same_order(a, b)
    return CycElem(a.m, tuple(_fold_product(a.m, a.coords, b.coords)))


def reduce_mod_q(a: CycElem, q: int) -> CycElem:
    """Coordinatewise canonical residues in [0, q)."""
    return CycElem(a.m, tuple(c % q for c in a.coords))


def format_cyc(a: CycElem) -> str:
    """Render as `c0 + c1*w + c2*w^2`, w standing for zeta_m."""
    parts = []
    for i, c in enumerate(a.coords):
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            power = 'w' if i == 1 else f'w^{i}'
            body = power if abs(c) == 1 else f'{abs(c)}*{power}'
        sign = '-' if c < 0 else '+'
        parts.append((sign, body))
    if not parts:
        return '0'
    first_sign, first_body = parts[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in parts[1:]:
        text += f' {sign} {body}'
    return text


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int):
    """Phi_m in Z[x] from (x^m - 1) / prod_{d | m, d < m} Phi_d."""
    l_of(m)
    x = _zx
    denominator = ZX.one
    for d in divisors(m):
        if d < m:
            denominator *= cyclotomic_polynomial(d)
    return (x**m - 1).exquo(denominator)


@lru_cache(maxsize=None)
def _phi_over_q(m: int):
    return cyclotomic_polynomial(m).set_ring(QX)


@dataclass(frozen=True)
class NFElem:
    """Element of Q(zeta_m) as a polynomial of degree < phi(m), reduced mod Phi_m."""

    m: int
    rep: object = field(compare=True)

    @classmethod
    def from_poly(cls, m: int, poly) -> 'NFElem':
        return cls(m, poly.rem(_phi_over_q(m)))

    @classmethod
    def integer(cls, m: int, value: int) -> 'NFElem':
        return cls(m, QX(value))

    @property
    def is_zero(self) -> bool:
        return not self.rep

    def _check(self, other: 'NFElem') -> None:
        if self.m != other.m:
            raise IncompatibleRingError(f"cannot combine Q(zeta_{self.m}) and Q(zeta_{other.m})")

    def __add__(self, other: 'NFElem') -> 'NFElem':
        self._check(other)
        return NFElem(self.m, self.rep + other.rep)

    def __sub__(self, other: 'NFElem') -> 'NFElem':
        self._check(other)
        return NFElem(self.m, self.rep - other.rep)

    def __neg__(self) -> 'NFElem':
        return NFElem(self.m, -self.rep)

    def __mul__(self, other: 'NFElem') -> 'NFElem':
        self._check(other)
        return NFElem.from_poly(self.m, self.rep * other.rep)

    def conjugate(self) -> 'NFElem':
        """Image under complex conjugation, zeta -> zeta^(m-1)."""
        x = _qx
        image = QX.zero
        for (i,), c in self.rep.terms():
            image += c * x**((-i) % self.m)
        return NFElem.from_poly(self.m, image)

    @property
    def is_real(self) -> bool:
        return self.conjugate() == self

    def __str__(self) -> str:
        return str(self.rep.as_expr()).replace('x', 'w')


def to_number_field(a: CycElem) -> NFElem:
    x = _qx
    poly = QX.zero
    for i, c in enumerate(a.coords):
        if c:
            poly += c * x**i
    return NFElem.from_poly(a.m, poly)


def nf_root_power(m: int, k: int) -> NFElem:
    return to_number_field(CycElem.root_power(m, k))


def euler_phi(m: int) -> int:
    return int(totient(m))


# --- Finite coefficient rings -------------------------------------------------

# 'literal' is accepted as another name for the 'paper' backend
LITERAL_BACKENDS = ('paper', 'literal')


@dataclass(frozen=True)
class RingSpec:
    """Finite ring standing in for F_q[zeta_m] in the finite field method."""

    m: int
    q: int

    backend = 'abstract'

    def __post_init__(self):
        l_of(self.m)
        if not isprime(self.q):
            raise InvalidParameterError(f"q must be prime, got {self.q}")

    @property
    def width(self) -> int:
        """Number of residue coordinates per ring element."""
        raise NotImplementedError

    @property
    def size(self) -> int:
        return self.q ** self.width

    def label(self) -> str:
        return f"{self.backend}(m={self.m}, q={self.q})"


@dataclass(frozen=True)
class LiteralRing(RingSpec):
    """F_q[x]/(x^m - 1) for odd m, F_q[x]/(x^(m/2) + 1) for even m."""

    backend = 'paper'

    @property
    def width(self) -> int:
        return l_of(self.m)


@dataclass(frozen=True)
class PrimeField(RingSpec):
    """F_q with zeta_m realised as an element of multiplicative order m."""

    zeta: Optional[int] = None

    backend = 'prime-field'

    def __post_init__(self):
        super().__post_init__()
        if (self.q - 1) % self.m:
            raise NoRootError(f"F_{self.q} has no element of order {self.m}: {self.m} does not divide {self.q - 1}")
        if self.zeta is None:
            zeta = 1 if self.q == 2 else pow(primitive_root(self.q), (self.q - 1) // self.m, self.q)
            object.__setattr__(self, 'zeta', zeta)
        else:
            zeta = self.zeta % self.q
            if zeta == 0 or n_order(zeta, self.q) != self.m:
                raise NoRootError(f"{self.zeta} does not have multiplicative order {self.m} mod {self.q}")
            object.__setattr__(self, 'zeta', zeta)

    @property
    def width(self) -> int:
        return 1

    def label(self) -> str:
        return f"prime-field(m={self.m}, q={self.q}, zeta={self.zeta})"


def make_ring_spec(backend: str, m: int, q: int, zeta: Optional[int] = None) -> RingSpec:
    if backend in LITERAL_BACKENDS:
        return LiteralRing(m, q)
    if backend == 'prime-field':
        return PrimeField(m, q, zeta)
    raise InvalidParameterError(f"unknown backend {backend!r}")


class CoefficientRing:
    """Concrete finite ring for a RingSpec.

    Elements are residue tuples of length spec.width, addressed by their
    mixed-radix index sum(c_i * q^i). Addition and multiplication tables are
    built on first use and shared by the counting kernels.
    """

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self.q = spec.q
        self.width = spec.width
        self.size = spec.size

    def element(self, index: int) -> Tuple[int, ...]:
        coords = []
        for _ in range(self.width):
            index, r = divmod(index, self.q)
            coords.append(r)
        return tuple(coords)

    def index(self, element: Sequence[int]) -> int:
        value = 0
        for c in reversed(element):
            value = value * self.q + c
        return value

    @cached_property
    def elements(self) -> List[Tuple[int, ...]]:
        return [self.element(i) for i in range(self.size)]

    @property
    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.width

    @property
    def one(self) -> Tuple[int, ...]:
        return (1,) + (0,) * (self.width - 1)

    def add(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        return tuple((x + y) % self.q for x, y in zip(a, b))

    def neg(self, a: Sequence[int]) -> Tuple[int, ...]:
        return tuple((-x) % self.q for x in a)

    def mul(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        if self.width == 1:
            return ((a[0] * b[0]) % self.q,)
        return tuple(c % self.q for c in _fold_product(self.spec.m, a, b))

    def embed(self, a: CycElem) -> Tuple[int, ...]:
        """Reduction of an element of Z[zeta_m] into this ring."""
        if a.m != self.spec.m:
            raise IncompatibleRingError(f"cannot reduce an element of Z[zeta_{a.m}] into {self.spec.label()}")
        if isinstance(self.spec, PrimeField):
            zeta, q = self.spec.zeta, self.q
            return (sum(c * pow(zeta, i, q) for i, c in enumerate(a.coords)) % q,)
        return reduce_mod_q(a, self.q).coords

    @cached_property
    def roots_of_unity(self) -> List[Tuple[int, ...]]:
        """Images of zeta^0, ..., zeta^(m-1), in exponent order."""
        return [self.embed(CycElem.root_power(self.spec.m, k)) for k in range(self.spec.m)]

    @cached_property
    def add_table(self) -> List[List[int]]:
        elems, index = self.elements, self.index
        return [[index(self.add(a, b)) for b in elems] for a in elems]

    @cached_property
    def mul_table(self) -> List[List[int]]:
        elems, index = self.elements, self.index
        return [[index(self.mul(a, b)) for b in elems] for a in elems]

    def __repr__(self) -> str:
        return f"CoefficientRing({self.spec.label()}, size={self.size})"


@lru_cache(maxsize=32)
def coefficient_ring(spec: RingSpec) -> CoefficientRing:
    return CoefficientRing(spec)


def enumerate_ring(spec: RingSpec) -> Iterator[Tuple[int, ...]]:
    """Every element of the ring exactly once, as residue coordinate tuples.

    For LiteralRing the tuple is the reduced CycElem coordinate sequence;
    for PrimeField it is the one-element tuple (k,) with 0 <= k < q.
    """
    ring_ = coefficient_ring(spec)
    for i in range(ring_.size):
        yield ring_.element(i)
