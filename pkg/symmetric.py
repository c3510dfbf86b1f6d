"""
Closed-form coboundary polynomials of symmetric (SH) and colored-symmetric
(CSH) arrangements.

An SH arrangement is the S_n-orbit of a few representative equations, a
CSH arrangement the orbit under colored permutations U_m wr S_n. The
number of hyperplanes through a point depends only on how often each ring
element (or each U_m-orbit class of ring elements) occurs among its
coordinates, so point counts collapse to sums over compositions.

Ring elements are addressed by their index in ``CoefficientRing``; orbit
classes by the smallest index in the class.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from networkx.utils import UnionFind

from arrangement import Arrangement, Hyperplane, arrangement_rank, format_linear_form, proportional
from cyclotomic import CycElem, NFElem, RingSpec, coefficient_ring, nf_root_power, to_number_field
from debug_utils import debug_report
from errors import (FreenessViolation, InvalidReductionError, NotSymmetricError,
                    TheoremViolation)
from polynomials import T_RING, t_polynomial

logger = logging.getLogger(__name__)

KINDS = ('sh', 'csh')


@dataclass(frozen=True)
class RepresentativeEquation:
    """c_1 z_1 + ... + c_j z_j = d, generating an orbit of hyperplanes."""

    coeffs: Tuple[CycElem, ...]
    rhs: CycElem
    kind: str = 'sh'

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, 'coeffs', coeffs)
        if self.kind not in KINDS:
            raise NotSymmetricError(f"symmetry kind must be one of {KINDS}, got {self.kind!r}")
        if not coeffs or any(c.m != self.rhs.m for c in coeffs):
            raise NotSymmetricError("representative equation needs coefficients over one Z[zeta_m]")
        if all(v.is_zero for v in self.row[:-1]):
            raise NotSymmetricError(f"representative equation has no nonzero coefficient: {self}")

    @property
    def m(self) -> int:
        return self.rhs.m

    @property
    def j(self) -> int:
        return len(self.coeffs)

    @property
    def colored(self) -> bool:
        return self.kind == 'csh'

    @cached_property
    def row(self) -> Tuple[NFElem, ...]:
        return tuple(to_number_field(c) for c in self.coeffs) + (to_number_field(self.rhs),)

    def compacted(self) -> 'RepresentativeEquation':
        """Drop coefficients that vanish in Q(zeta_m); the generated orbit is unchanged."""
        keep = [c for c, v in zip(self.coeffs, self.row) if not v.is_zero]
        if len(keep) == self.j:
            return self
        return RepresentativeEquation(tuple(keep), self.rhs, self.kind)

    def place(self, n: int, positions: Sequence[int], colors: Sequence[int] = ()) -> Hyperplane:
        """Hyperplane with coefficient i (times zeta^colors[i]) on variable positions[i]."""
        coeffs = [CycElem.zero(self.m)] * n
        for i, pos in enumerate(positions):
            c = self.coeffs[i]
            if colors:
                c = c * CycElem.root_power(self.m, colors[i])
            coeffs[pos] = c
        return Hyperplane(tuple(coeffs), self.rhs)

    def __str__(self) -> str:
        return f"rep {self.kind}: {format_linear_form(self.coeffs, self.rhs)}"


# --- Orbits of hyperplanes ------------------------------------------------------

def expand_representatives(reps: Sequence[RepresentativeEquation], n: int,
                           m: Optional[int] = None) -> Arrangement:
    """The orbit of the representatives under S_n (sh) or U_m wr S_n (csh)."""
    if m is None:
        if not reps:
            raise NotSymmetricError("cannot infer the root order from an empty list of representatives")
        m = reps[0].m
    generated: List[Hyperplane] = []
    for rep in reps:
        rep = rep.compacted()
        if rep.j > n:
            logger.debug(f"skipping {rep}: arity {rep.j} exceeds n={n}")
            continue
        color_choices = list(product(range(m), repeat=rep.j)) if rep.colored else [()]
        for positions in permutations(range(n), rep.j):
            for colors in color_choices:
                generated.append(rep.place(n, positions, colors))
    return Arrangement.collapsed(m, n, generated)


def _act(h: Hyperplane, perm: Sequence[int], colors: Sequence[int] = ()) -> Hyperplane:
    coeffs = [None] * h.n
    for i, c in enumerate(h.coeffs):
        if colors:
            c = c * CycElem.root_power(h.m, colors[i])
        coeffs[perm[i]] = c
    return Hyperplane(tuple(coeffs), h.rhs)


def group_orbits(A: Arrangement, colored: bool = False) -> List[RepresentativeEquation]:
    """Split A into S_n (or U_m wr S_n) orbits and return one compacted representative per orbit."""
    k, n = len(A), A.n
    generators = []
    for i in range(n - 1):
        swap = list(range(n))
        swap[i], swap[i + 1] = swap[i + 1], swap[i]
        generators.append((swap, ()))
    if colored and n:
        generators.append((list(range(n)), (1,) + (0,) * (n - 1)))

    uf = UnionFind(range(k))
    for idx, h in enumerate(A.hyperplanes):
        for perm, colors in generators:
            image = _act(h, perm, colors)
            match = next((t for t, g in enumerate(A.hyperplanes) if image.same_set(g)), None)
            if match is None:
                raise NotSymmetricError(f"{A} is not closed under the action: {h} maps to {image}")
            uf.union(idx, match)

    kind = 'csh' if colored else 'sh'
    reps = []
    for orbit in sorted(uf.to_sets(), key=min):
        h = A.hyperplanes[min(orbit)]
        support = [c for c, v in zip(h.coeffs, h.row) if not v.is_zero]
        reps.append(RepresentativeEquation(tuple(support), h.rhs, kind))
    logger.debug(f"{A} splits into {len(reps)} orbits")
    return reps


def check_representatives(A: Arrangement, reps: Sequence[RepresentativeEquation]) -> None:
    """Raise NotSymmetricError unless the representatives regenerate A exactly."""
    if not expand_representatives(reps, A.n, A.m).same_hyperplanes(A):
        raise NotSymmetricError(f"{A} is not the orbit of its representative equations")


# --- Counting functions ---------------------------------------------------------

Vector = Tuple[int, ...]
Composition = Mapping[int, int]


def occurrences(v: Sequence, t) -> int:
    return sum(1 for x in v if x == t)


def support(v: Sequence) -> Set:
    return set(v)


def composition(v: Sequence) -> Counter:
    return Counter(v)


def f(a: Composition, v: Sequence) -> int:
    """prod over t in S(v) of binom(a_t, o_t(v))."""
    result = 1
    for t, o in Counter(v).items():
        result *= math.comb(a.get(t, 0), o)
        if not result:
            return 0
    return result


def f_u_m(a: Composition, v: Sequence, u, m: int) -> int:
    o = occurrences(v, u)
    if o == len(v):
        return m**(len(v) - 1) * math.comb(a.get(u, 0), o)
    return m**o * f(a, v)


# --- Solution sets ---------------------------------------------------------------

@dataclass(frozen=True)
class SolutionSet:
    """Deduplicated solutions of one reduced representative equation.

    For sh equations the vectors hold ring element indices, for csh
    equations orbit class keys. weights[i] is the number of hyperplanes of
    the orbit through a point per unit of f(a, v): the placements landing
    in the stabilizer orbit of v, divided by the stabilizer order. On sh
    equations this is prod o_t(v)! / |Stab(v)|; on csh equations each
    coordinate in the zero class adds a factor m and each class tuple counts
    its ring solutions.
    """

    equation: RepresentativeEquation
    spec: RingSpec
    colored: bool
    vectors: Tuple[Vector, ...]
    weights: Tuple[int, ...]


@dataclass(frozen=True)
class SolutionEntry:
    equation: int
    vector: Vector
    weight: int = 1


def _permuted(v: Sequence, tau: Sequence[int]) -> Tuple:
    return tuple(v[t] for t in tau)


def stabilizer_elements(E: RepresentativeEquation, colored: bool = False) -> List[Tuple[Tuple[int, ...], Tuple]]:
    """Every (tau, colors) in S_j (or U_m wr S_j) mapping the equation to a proportional one."""
    j, m, row = E.j, E.m, E.row
    roots = [nf_root_power(m, k) for k in range(m)]
    elements = []
    for tau in permutations(range(j)):
        color_choices = product(range(m), repeat=j) if colored else [()]
        for colors in color_choices:
            image = [None] * j
            for i in range(j):
                image[tau[i]] = row[i] * roots[colors[i]] if colors else row[i]
            if proportional(tuple(image) + (row[-1],), row):
                elements.append((tau, colors))
    return elements


def hyperplane_stabilizer(E: RepresentativeEquation, colored: bool = False) -> List[Tuple[int, ...]]:
    """Permutations tau of [j] mapping the equation to itself (up to scalar).

    With colored=True, tau is kept when some choice of root-of-unity factors
    completes it to a colored permutation fixing the hyperplane.
    """
    taus = []
    for tau, _ in stabilizer_elements(E, colored):
        if tau not in taus:
            taus.append(tau)
    return taus


def star_classes(spec: RingSpec) -> Dict[int, int]:
    """Map every ring element index to the smallest index in its U_m-orbit."""
    ring = coefficient_ring(spec)
    roots = [ring.index(r) for r in ring.roots_of_unity]
    table = ring.mul_table
    classes = {}
    for e in range(ring.size):
        if e not in classes:
            orbit = {table[r][e] for r in roots}
            key = min(orbit)
            for x in orbit:
                classes.setdefault(x, key)
    return classes


def u_m_star(v: Sequence[int], spec: RingSpec) -> Set[Vector]:
    """Orbit of v under coordinatewise multiplication by m-th roots of unity."""
    ring = coefficient_ring(spec)
    roots = [ring.index(r) for r in ring.roots_of_unity]
    table = ring.mul_table
    choices = [sorted({table[r][x] for r in roots}) for x in v]
    return set(product(*choices))


def orbit_size(v: Sequence[int], spec: RingSpec) -> int:
    return len(u_m_star(v, spec))


def check_orbit_size(v: Sequence[int], spec: RingSpec) -> int:
    """Orbit size, raising FreenessViolation when it is below m^(j - o_0(v))."""
    size = orbit_size(v, spec)
    expected = spec.m ** (len(v) - occurrences(v, 0))
    if size != expected:
        ring = coefficient_ring(spec)
        fixing = None
        for k, root in enumerate(ring.roots_of_unity[1:], start=1):
            r = ring.index(root)
            hit = next((x for x in v if x and ring.mul_table[r][x] == x), None)
            if hit is not None:
                fixing = {'root_exponent': k, 'root': root, 'element': ring.element(hit)}
                break
        report = {
            'ring': spec.label(),
            'vector': [ring.element(x) for x in v],
            'orbit_size': size,
            'expected': expected,
            'fixing_root': fixing,
        }
        raise FreenessViolation(
            f"U_{spec.m} does not act freely on {spec.label()}: orbit of size {size}, expected {expected}",
            report)
    return size


def solve_representative(E: RepresentativeEquation, spec: RingSpec,
                         colored: Optional[bool] = None) -> SolutionSet:
    """Solutions of the reduced equation in ring^j, one per stabilizer orbit."""
    if colored is None:
        colored = E.colored
    E = E.compacted()
    ring = coefficient_ring(spec)
    coeffs = [ring.index(ring.embed(c)) for c in E.coeffs]
    d = ring.index(ring.embed(E.rhs))
    if not any(coeffs):
        raise InvalidReductionError(f"{E} vanishes identically in {spec.label()}")

    add, mul = ring.add_table, ring.mul_table
    solutions = []
    for z in product(range(ring.size), repeat=E.j):
        acc = 0
        for c, x in zip(coeffs, z):
            acc = add[acc][mul[c][x]]
        if acc == d:
            solutions.append(z)

    elements = stabilizer_elements(E, colored)
    stabilizer = hyperplane_stabilizer(E, colored)
    if colored:
        classes = star_classes(spec)
        counts = Counter(tuple(classes[x] for x in z) for z in solutions)
    else:
        counts = Counter(solutions)

    # a placement hits u when its root-twisted coordinates solve E; every
    # hyperplane is hit by len(elements) placements
    seen = set()
    vectors, weights = [], []
    for z in sorted(counts):
        orbit = {_permuted(z, tau) for tau in stabilizer}
        canonical = min(orbit)
        if canonical in seen:
            continue
        seen.add(canonical)
        free_roots = spec.m ** occurrences(canonical, 0) if colored else 1
        multiplicity = math.prod(math.factorial(o) for o in Counter(canonical).values())
        placements = len(orbit) * counts[canonical] * free_roots * multiplicity
        if placements % len(elements):
            report = {'equation': str(E), 'ring': spec.label(), 'vector': list(canonical),
                      'placements': placements, 'stabilizer_order': len(elements)}
            debug_report('theorem_violation', report)
            raise TheoremViolation(f"solution class of {E} does not split into whole hyperplanes", report)
        vectors.append(canonical)
        weights.append(placements // len(elements))

    order = sorted(range(len(vectors)), key=lambda i: vectors[i])
    return SolutionSet(E, spec, colored, tuple(vectors[i] for i in order), tuple(weights[i] for i in order))


# --- Indice partition -------------------------------------------------------------

@dataclass(frozen=True)
class IndicePartition:
    """Support-connected blocks of all solution vectors of an arrangement."""

    blocks: Tuple[Tuple[SolutionEntry, ...], ...]
    colored: bool = False

    def entries(self) -> List[SolutionEntry]:
        return [e for block in self.blocks for e in block]

    def supports(self) -> List[Set[int]]:
        return [set().union(*(e.vector for e in block)) for block in self.blocks]


def build_indice_partition(sols: Sequence[SolutionSet]) -> IndicePartition:
    """Connected components of solution vectors, joined when their supports meet."""
    specs = {s.spec for s in sols}
    if len(specs) > 1:
        raise InvalidReductionError("solution sets are over different rings")
    entries = [SolutionEntry(i, v, w) for i, s in enumerate(sols) for v, w in zip(s.vectors, s.weights)]
    uf = UnionFind(range(len(entries)))
    owner: Dict[int, int] = {}
    for idx, entry in enumerate(entries):
        for x in entry.vector:
            if x in owner:
                uf.union(owner[x], idx)
            else:
                owner[x] = idx
    blocks = [tuple(entries[i] for i in sorted(component)) for component in uf.to_sets()]
    blocks.sort(key=lambda block: min(min(e.vector) for e in block))
    colored = any(s.colored for s in sols)
    return IndicePartition(tuple(blocks), colored)


def _entries(sols: Union[IndicePartition, Sequence[SolutionSet], Iterable[SolutionEntry]]) -> List[SolutionEntry]:
    if isinstance(sols, IndicePartition):
        return sols.entries()
    sols = list(sols)
    if sols and isinstance(sols[0], SolutionSet):
        return build_indice_partition(sols).entries()
    return sols


def h_of_point_sh(u: Sequence[int], sols) -> int:
    """Hyperplanes through the point u (ring indices), from its value composition."""
    a = composition(u)
    return sum(e.weight * f(a, e.vector) for e in _entries(sols))


def h_of_point_csh(u: Sequence[int], sols, spec: RingSpec) -> int:
    classes = star_classes(spec)
    a = Counter(classes[x] for x in u)
    return sum(e.weight * f(a, e.vector) for e in _entries(sols))


# --- Closed forms ---------------------------------------------------------------

class _CompositionSummer:
    """Sums binom(n, a) * weight(a) * t^(exponent(a)) over compositions of n.

    Only keys occurring in a solution vector are enumerated individually;
    every other key is a free key, and free keys are pooled into one slot
    whose per-unit weight is the sum of their weights.
    """

    FREE = -1

    def __init__(self, entries: Sequence[SolutionEntry], keys: Sequence[int],
                 key_weight: Mapping[int, int], colored: bool):
        self.key_weight = key_weight
        self.support = sorted({x for e in entries for x in e.vector} | ({0} if colored else set()))
        support_set = set(self.support)
        self.free_mass = sum(key_weight.get(k, 1) for k in keys if k not in support_set)
        self.by_support: Dict[frozenset, List[SolutionEntry]] = {}
        for e in entries:
            self.by_support.setdefault(frozenset(e.vector), []).append(e)

    def _exponent(self, a: Mapping[int, int]) -> int:
        present = sorted(a)
        total = 0
        for size in range(1, len(present) + 1):
            for subset in combinations(present, size):
                for e in self.by_support.get(frozenset(subset), ()):
                    total += e.weight * f(a, e.vector)
        return total

    def coefficients(self, n: int) -> Dict[int, int]:
        slots = list(self.support) + ([self.FREE] if self.free_mass else [])
        out: Dict[int, int] = {}
        for combo in combinations_with_replacement(slots, n):
            a = Counter(combo)
            rest = a.pop(self.FREE, 0)
            coeff = math.factorial(n) // math.factorial(rest)
            for k, c in a.items():
                coeff = coeff // math.factorial(c) * self.key_weight.get(k, 1)**c
            coeff *= self.free_mass**rest
            h = self._exponent(a)
            out[h] = out.get(h, 0) + coeff
        return out


def _summer(reps: Sequence[RepresentativeEquation], spec: RingSpec, colored: bool,
            n: Optional[int] = None) -> Tuple[_CompositionSummer, IndicePartition]:
    active = [r.compacted() for r in reps]
    if n is not None:
        active = [r for r in active if r.j <= n]
    sols = [solve_representative(r, spec, colored) for r in active]
    partition = build_indice_partition(sols)
    ring = coefficient_ring(spec)
    if colored:
        classes = star_classes(spec)
        for x in range(1, ring.size):
            check_orbit_size((x,), spec)
        keys = sorted(set(classes.values()))
        weights = {k: (1 if k == 0 else spec.m) for k in keys}
    else:
        keys = list(range(ring.size))
        weights = {}
    return _CompositionSummer(partition.entries(), keys, weights, colored), partition


def symmetric_point_sum(reps: Sequence[RepresentativeEquation], n: int, spec: RingSpec,
                        colored: bool = False):
    """sum over points of t^h(point), from compositions only (no point enumeration)."""
    summer, _ = _summer(reps, spec, colored, n)
    return t_polynomial(summer.coefficients(n))


def _divide_prefix(total, divisor: int, context: Dict[str, object]):
    coeffs = {exps: int(c) for exps, c in total.terms()}
    residues = {exps[0]: c % divisor for exps, c in coeffs.items() if c % divisor}
    if residues:
        report = dict(context, divisor=divisor, residues=residues,
                      histogram={exps[0]: c for exps, c in coeffs.items()})
        debug_report('theorem_violation', report)
        raise TheoremViolation(f"point sum is not divisible by {divisor}", report)
    return T_RING.from_dict({exps: c // divisor for exps, c in coeffs.items()})


def _closed_form(reps, n, spec, colored, rank_A):
    if rank_A is None:
        rank_A = arrangement_rank(expand_representatives(reps, n, spec.m)) if n else 0
    total = symmetric_point_sum(reps, n, spec, colored)
    context = {'method': 'csh' if colored else 'sh', 'ring': spec.label(), 'n': n, 'rank': rank_A}
    return _divide_prefix(total, spec.size**(n - rank_A), context)


def coboundary_sh_closed_form(reps: Sequence[RepresentativeEquation], n: int, spec: RingSpec,
                              rank_A: Optional[int] = None):
    """chibar^(zeta_m) of the SH arrangement at this ring, as a polynomial in t."""
    return _closed_form(reps, n, spec, False, rank_A)


def coboundary_csh_closed_form(reps: Sequence[RepresentativeEquation], n: int, spec: RingSpec,
                               rank_A: Optional[int] = None):
    """chibar^(zeta_m) of the CSH arrangement at this ring, summing over orbit classes."""
    return _closed_form(reps, n, spec, True, rank_A)


def block_values(reps: Sequence[RepresentativeEquation], spec: RingSpec, order: int,
                 colored: bool = False) -> Tuple[List[List[object]], List[object]]:
    """Per-block EGF coefficients v_0..v_order, plus those of the pooled free keys."""
    summer, partition = _summer(reps, spec, colored)
    blocks = []
    for block, keys in zip(partition.blocks, partition.supports()):
        block_summer = _CompositionSummer(block, sorted(keys), summer.key_weight, colored)
        block_summer.support = sorted(keys)
        block_summer.free_mass = 0
        blocks.append([t_polynomial(block_summer.coefficients(k)) for k in range(order + 1)])
    if colored and 0 not in set().union(*partition.supports()):
        # zero class in no block: its own series exp(x)
        blocks.append([T_RING.one] * (order + 1))
    free = [T_RING(summer.free_mass**k) for k in range(order + 1)]
    return blocks, free
