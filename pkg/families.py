"""
Named arrangement families with their representative equations.

    A(n)        braid arrangement {z_i - z_j = 0} in C^n
    B(n)        {z_i +- z_j = 0} and {z_i = 0}
    D(n)        {z_i +- z_j = 0}
    I(n)        {z_i = 0}, {z_i = 1}, {z_i + z_j = 1}
    G(m, p, n)  {z_i - xi z_j = 0 : xi in U_m}, plus {z_i = 0} when p < m
    graphic     {z_i - z_j = 0} over the edges of a graph
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple, Union

import networkx as nx

from arrangement import Arrangement, Hyperplane, hyperplane
from cyclotomic import CycElem
from errors import InvalidFamilyError
from symmetric import RepresentativeEquation, expand_representatives

logger = logging.getLogger(__name__)

FAMILY_NAMES = ('A', 'B', 'D', 'I', 'G', 'graphic')


@dataclass(frozen=True)
class Family:
    """An arrangement together with the representatives generating it."""

    name: str
    params: Tuple[int, ...]
    arrangement: Arrangement
    representatives: Tuple[RepresentativeEquation, ...] = ()

    def label(self) -> str:
        return f"{self.name}({', '.join(str(p) for p in self.params)})"


def _rep(m: int, coeffs: Sequence[int], rhs: int = 0, kind: str = 'sh') -> RepresentativeEquation:
    return RepresentativeEquation(tuple(CycElem.integer(m, c) for c in coeffs), CycElem.integer(m, rhs), kind)


def _check_dimension(name: str, n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidFamilyError(f"family {name} needs n >= 1, got {n!r}")


def braid_representatives() -> List[RepresentativeEquation]:
    return [_rep(1, (1, -1))]


def braid(n: int) -> Family:
    _check_dimension('A', n)
    hs = [hyperplane(1, [1 if k == i else -1 if k == j else 0 for k in range(n)])
          for i, j in combinations(range(n), 2)]
    return Family('A', (n,), Arrangement(1, n, tuple(hs)), tuple(braid_representatives()))


def type_b_representatives() -> List[RepresentativeEquation]:
    return [_rep(1, (1,)), _rep(1, (1, -1)), _rep(1, (1, 1))]


def type_b(n: int) -> Family:
    _check_dimension('B', n)
    hs = []
    for i, j in combinations(range(n), 2):
        for sign in (-1, 1):
            hs.append(hyperplane(1, [1 if k == i else sign if k == j else 0 for k in range(n)]))
    hs.extend(hyperplane(1, [1 if k == i else 0 for k in range(n)]) for i in range(n))
    return Family('B', (n,), Arrangement(1, n, tuple(hs)), tuple(type_b_representatives()))


def type_d_representatives() -> List[RepresentativeEquation]:
    return [_rep(1, (1, -1)), _rep(1, (1, 1))]


def type_d(n: int) -> Family:
    _check_dimension('D', n)
    hs = []
    for i, j in combinations(range(n), 2):
        for sign in (-1, 1):
            hs.append(hyperplane(1, [1 if k == i else sign if k == j else 0 for k in range(n)]))
    return Family('D', (n,), Arrangement(1, n, tuple(hs)), tuple(type_d_representatives()))


def ish_representatives() -> List[RepresentativeEquation]:
    return [_rep(1, (1,), 0), _rep(1, (1,), 1), _rep(1, (1, 1), 1)]


def ish(n: int) -> Family:
    """I_n; I_1 is {z_1 = 0, z_1 = 1}."""
    _check_dimension('I', n)
    unit = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    hs = [hyperplane(1, row, 0) for row in unit]
    hs += [hyperplane(1, row, 1) for row in unit]
    hs += [hyperplane(1, [1 if k in (i, j) else 0 for k in range(n)], 1)
           for i, j in combinations(range(n), 2)]
    return Family('I', (n,), Arrangement(1, n, tuple(hs)), tuple(ish_representatives()))


def imprimitive_representatives(m: int, p: int) -> List[RepresentativeEquation]:
    reps = [_rep(m, (1,), 0, 'csh')] if p < m else []
    reps.append(_rep(m, (1, -1), 0, 'csh'))
    return reps


def imprimitive(m: int, p: int, n: int) -> Family:
    """Arrangement of the reflection group G(m, p, n)."""
    if not isinstance(m, int) or m < 1:
        raise InvalidFamilyError(f"G(m, p, n) needs m >= 1, got {m!r}")
    if not isinstance(p, int) or p < 1 or m % p:
        raise InvalidFamilyError(f"G(m, p, n) needs p dividing m, got m={m}, p={p}")
    _check_dimension('G', n)
    zero, one = CycElem.zero(m), CycElem.one(m)
    hs: List[Hyperplane] = []
    if p < m:
        for i in range(n):
            hs.append(Hyperplane(tuple(one if k == i else zero for k in range(n)), zero))
    for i, j in combinations(range(n), 2):
        for e in range(m):
            xi = CycElem.root_power(m, e)
            coeffs = [zero] * n
            coeffs[i], coeffs[j] = one, -xi
            hs.append(Hyperplane(tuple(coeffs), zero))
    return Family('G', (m, p, n), Arrangement.collapsed(m, n, hs), tuple(imprimitive_representatives(m, p)))


def graphic(edges: Union[nx.Graph, Iterable[Tuple[int, int]]], n: int = None) -> Family:
    """Graphic arrangement on vertices 1..n; its Tutte polynomial is the graph's."""
    graph = edges if isinstance(edges, nx.Graph) else nx.Graph(list(edges))
    nodes = sorted(graph.nodes)
    if n is None:
        n = max(nodes) if nodes else 0
    if any(not isinstance(v, int) or not 1 <= v <= n for v in nodes):
        raise InvalidFamilyError(f"graphic arrangement needs vertices in 1..{n}, got {nodes}")
    if any(u == v for u, v in graph.edges):
        raise InvalidFamilyError("graphic arrangement needs a graph without loops")
    hs = []
    for u, v in sorted(tuple(sorted(e)) for e in graph.edges):
        hs.append(hyperplane(1, [1 if k == u - 1 else -1 if k == v - 1 else 0 for k in range(n)]))
    return Family('graphic', (n, graph.number_of_edges()), Arrangement(1, n, tuple(hs)))


def family(name: str, *params: int) -> Family:
    """Dispatch by name: family('A', 3), family('G', 3, 3, 2), ..."""
    builders = {'A': (braid, 1), 'B': (type_b, 1), 'D': (type_d, 1), 'I': (ish, 1), 'G': (imprimitive, 3)}
    if name not in builders:
        raise InvalidFamilyError(f"unknown family {name!r}; expected one of {', '.join(builders)}")
    builder, arity = builders[name]
    if len(params) != arity:
        raise InvalidFamilyError(f"family {name} takes {arity} parameter(s), got {len(params)}")
    built = builder(*params)
    logger.debug(f"built {built.label()}: {len(built.arrangement)} hyperplanes")
    return built


def representatives_match(fam: Family) -> bool:
    """The representatives regenerate the family's arrangement."""
    if not fam.representatives:
        return False
    expanded = expand_representatives(fam.representatives, fam.arrangement.n, fam.arrangement.m)
    return expanded.same_hyperplanes(fam.arrangement)
