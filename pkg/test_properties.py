#!/usr/bin/env python3
"""
Randomized property checks over small arrangements, rings and series.
Seeded, so every run sees the same cases.
"""
import os
import random
import sys
from itertools import product

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from arrangement import Arrangement, coboundary, hyperplane, tutte_coboundary_check
from arrangement_file import parse, render
from cyclotomic import CycElem, LiteralRing, PrimeField, coefficient_ring, l_of, to_number_field
from egf import TruncatedSeries, convolution_sum
from finite_field import (coboundary_at_prime, hyperplanes_through, point_count_histogram, reduce_arrangement,
                          select_primes)
from polynomials import TU, evaluate_first
from symmetric import (RepresentativeEquation, build_indice_partition, check_representatives,
                       expand_representatives, group_orbits, h_of_point_csh, h_of_point_sh,
                       hyperplane_stabilizer, occurrences, orbit_size, solve_representative, star_classes,
                       u_m_star)

pytestmark = pytest.mark.properties

CASES = 100


def random_arrangement(rng: random.Random) -> Arrangement:
    n = rng.randint(1, 3)
    hs = []
    for _ in range(rng.randint(0, 5)):
        coeffs = [rng.randint(-2, 2) for _ in range(n)]
        if not any(coeffs):
            coeffs[rng.randrange(n)] = 1
        hs.append(hyperplane(1, coeffs, rng.randint(-2, 2)))
    return Arrangement.collapsed(1, n, hs)


def random_cyc(rng: random.Random, m: int) -> CycElem:
    return CycElem(m, tuple(rng.randint(-5, 5) for _ in range(l_of(m))))


def random_representative(rng: random.Random, m: int, n: int, kind: str) -> RepresentativeEquation:
    j = rng.randint(1, n)
    coeffs = [rng.choice((-2, -1, 1, 2)) for _ in range(j)]
    twisted = tuple(CycElem.integer(m, c) * CycElem.root_power(m, rng.randrange(m)) for c in coeffs)
    return RepresentativeEquation(twisted, CycElem.integer(m, rng.randint(-2, 2)), kind)


def random_symmetric_case(rng: random.Random):
    """(representative, n, spec): sh over F_5 or F_7, csh over F_7 with m in {2, 3}."""
    n = rng.randint(1, 3)
    if rng.random() < 0.5:
        return random_representative(rng, 1, n, 'sh'), n, PrimeField(1, rng.choice((5, 7)))
    m = rng.choice((2, 3))
    return random_representative(rng, m, n, 'csh'), n, PrimeField(m, 7)


def random_series(rng: random.Random, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_function(
        order, lambda n: sum(rng.randint(-3, 3) * TU**k for k in range(3)))


# --- Cyclotomic arithmetic -------------------------------------------------------------

def test_ring_axioms_on_random_elements():
    rng = random.Random(3)
    for _ in range(CASES):
        m = rng.randint(1, 12)
        a, b, c = (random_cyc(rng, m) for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert CycElem.one(m) * a == a
        assert (a + (-a)).is_zero


def test_number_field_map_is_a_homomorphism():
    rng = random.Random(5)
    for _ in range(CASES):
        m = rng.randint(1, 12)
        a, b, c = (random_cyc(rng, m) for _ in range(3))
        assert to_number_field(a + b) == to_number_field(a) + to_number_field(b)
        assert to_number_field(a * b) == to_number_field(a) * to_number_field(b)
        assert to_number_field(a * (b - c)) == to_number_field(a) * (to_number_field(b) - to_number_field(c))


# --- Arrangements and point counts ------------------------------------------------------

def test_tutte_coboundary_identity_on_random_arrangements():
    rng = random.Random(20240521)
    for _ in range(CASES):
        A = random_arrangement(rng)
        assert tutte_coboundary_check(A), render(A)


def test_point_count_matches_definition_at_three_primes():
    rng = random.Random(7)
    for _ in range(CASES):
        A = random_arrangement(rng)
        chibar = coboundary(A)
        for spec in select_primes(A, 'prime-field', 3):
            assert coboundary_at_prime(A, spec) == evaluate_first(chibar, spec.q), render(A)


def test_histogram_mass_is_every_point():
    rng = random.Random(19)
    for _ in range(CASES):
        A = random_arrangement(rng)
        spec = rng.choice((PrimeField(1, 3), PrimeField(1, 5), PrimeField(1, 7), LiteralRing(1, 5)))
        histogram = point_count_histogram(reduce_arrangement(A, spec), chunk_points=rng.randint(1, 60))
        assert sum(histogram.values()) == spec.size ** A.n, render(A)


# --- Symmetric arrangements -------------------------------------------------------------

def test_orbit_size_law():
    rng = random.Random(23)
    for _ in range(CASES):
        m, q = rng.choice(((2, 5), (2, 7), (3, 7), (3, 13), (4, 5), (4, 13), (6, 13)))
        spec = PrimeField(m, q)
        v = tuple(rng.randrange(q) for _ in range(rng.randint(1, 4)))
        assert orbit_size(v, spec) == m ** (len(v) - occurrences(v, 0))


def test_membership_count_is_constant_on_root_orbits():
    rng = random.Random(29)
    for _ in range(CASES):
        n = rng.randint(1, 3)
        m = rng.choice((2, 3))
        spec = PrimeField(m, 7)
        E = random_representative(rng, m, n, 'csh')
        R = reduce_arrangement(expand_representatives([E], n, m), spec)
        ring = coefficient_ring(spec)
        u = tuple(rng.randrange(7) for _ in range(n))
        counts = {hyperplanes_through(R, [ring.element(x) for x in v]) for v in u_m_star(u, spec)}
        assert len(counts) == 1, (str(E), u, counts)


def test_point_membership_agrees_with_direct_count_on_every_point():
    rng = random.Random(31)
    for _ in range(CASES):
        E, n, spec = random_symmetric_case(rng)
        A = expand_representatives([E], n, spec.m)
        R = reduce_arrangement(A, spec)
        ring = coefficient_ring(spec)
        partition = build_indice_partition([solve_representative(E, spec)])
        for u in product(range(ring.size), repeat=n):
            direct = hyperplanes_through(R, [ring.element(x) for x in u])
            if E.colored:
                assert h_of_point_csh(u, partition, spec) == direct, (str(E), n, u)
            else:
                assert h_of_point_sh(u, partition) == direct, (str(E), n, u)


def test_solutions_reconstruct_from_stabilizer_orbits():
    rng = random.Random(37)
    for _ in range(CASES):
        E, n, spec = random_symmetric_case(rng)
        E = E.compacted()
        ring = coefficient_ring(spec)
        coeffs = [ring.embed(c) for c in E.coeffs]
        rhs = ring.embed(E.rhs)
        solutions = set()
        for z in product(range(ring.size), repeat=E.j):
            acc = ring.zero
            for c, x in zip(coeffs, z):
                acc = ring.add(acc, ring.mul(c, ring.element(x)))
            if acc == rhs:
                solutions.add(z)
        if E.colored:
            classes = star_classes(spec)
            solutions = {tuple(classes[x] for x in z) for z in solutions}

        sols = solve_representative(E, spec)
        stabilizer = hyperplane_stabilizer(E, E.colored)
        orbits = [{tuple(v[t] for t in tau) for tau in stabilizer} for v in sols.vectors]
        assert set().union(*orbits) == solutions, str(E)
        assert sum(len(o) for o in orbits) == len(solutions), str(E)

        A = expand_representatives([E], n, spec.m)
        reps = group_orbits(A, colored=E.colored)
        check_representatives(A, reps)
        assert expand_representatives(reps, n, spec.m).same_hyperplanes(A)


# --- Series ---------------------------------------------------------------------------

def test_series_product_is_commutative_and_associative():
    rng = random.Random(11)
    for _ in range(CASES):
        order = rng.randint(0, 5)
        a, b, c = (random_series(rng, order) for _ in range(3))
        assert (a * b).terms == (b * a).terms
        assert ((a * b) * c).terms == (a * (b * c)).terms


def test_convolution_sum_matches_product():
    rng = random.Random(13)
    for _ in range(CASES):
        order = rng.randint(0, 4)
        series = [random_series(rng, order) for _ in range(rng.randint(1, 3))]
        product_series = series[0]
        for s in series[1:]:
            product_series = product_series * s
        n = rng.randint(0, order)
        assert convolution_sum(series, n) == product_series[n]


# --- File format ---------------------------------------------------------------------------

def test_render_parse_round_trip():
    rng = random.Random(17)
    for _ in range(CASES):
        A = random_arrangement(rng)
        parsed = parse(render(A))
        assert (parsed.m, parsed.n) == (A.m, A.n)
        assert parsed.arrangement.same_hyperplanes(A)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__]))
