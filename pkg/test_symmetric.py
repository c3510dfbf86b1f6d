#!/usr/bin/env python3
"""
Tests for symmetric and colored-symmetric closed forms
"""
import os
import sys
from collections import Counter
from itertools import combinations_with_replacement

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from arrangement import Arrangement, arrangement_rank, coboundary, hyperplane
from cyclotomic import CycElem, LiteralRing, PrimeField, coefficient_ring
from errors import FreenessViolation, InvalidReductionError, NotSymmetricError
from families import (braid, braid_representatives, imprimitive, imprimitive_representatives, ish, type_b,
                      type_d)
from finite_field import coboundary_at_prime, point_count_histogram, reduce_arrangement
from polynomials import TU, evaluate_first, t_polynomial
from symmetric import (RepresentativeEquation, build_indice_partition, check_orbit_size,
                       check_representatives, coboundary_csh_closed_form, coboundary_sh_closed_form,
                       expand_representatives, f, f_u_m, group_orbits, h_of_point_csh, h_of_point_sh,
                       hyperplane_stabilizer, orbit_size, solve_representative, stabilizer_elements,
                       star_classes, symmetric_point_sum)


def rep(m, coeffs, rhs=0, kind='sh'):
    return RepresentativeEquation(tuple(CycElem.integer(m, c) for c in coeffs), CycElem.integer(m, rhs), kind)


# --- Counting functions ---------------------------------------------------------

def test_f_is_a_product_of_binomials():
    a = Counter({0: 3, 1: 2})
    assert f(a, (0, 0)) == 3
    assert f(a, (0, 1)) == 6
    assert f(a, (2,)) == 0


def test_f_u_m_for_the_zero_class():
    a = Counter({0: 3, 1: 2})
    # both coordinates in the zero class
    assert f_u_m(a, (0, 0), 0, 3) == 3 * 3
    # one coordinate colored
    assert f_u_m(a, (0, 1), 0, 3) == 3 * 6
    # both colored: a single root matches them
    assert f_u_m(a, (1, 1), 0, 3) == 1


# --- Representatives and orbits ---------------------------------------------------

def test_expand_and_group_orbits():
    A = type_b(3).arrangement
    reps = group_orbits(A)
    assert len(reps) == 3
    assert expand_representatives(reps, 3, 1).same_hyperplanes(A)


def test_group_orbits_colored():
    A = imprimitive(4, 2, 3).arrangement
    reps = group_orbits(A, colored=True)
    assert {r.j for r in reps} == {1, 2}
    assert all(r.kind == 'csh' for r in reps)
    check_representatives(A, reps)


def test_group_orbits_rejects_asymmetric_arrangements():
    A = Arrangement(1, 2, (hyperplane(1, [1, 0]),))
    with pytest.raises(NotSymmetricError):
        group_orbits(A)


def test_representatives_must_regenerate():
    with pytest.raises(NotSymmetricError):
        check_representatives(type_b(2).arrangement, braid_representatives())


def test_compaction_drops_zero_coefficients():
    r = rep(1, (1, 0, -1))
    assert r.compacted().j == 2
    assert expand_representatives([r], 3, 1).same_hyperplanes(braid(3).arrangement)


def test_representative_validation():
    with pytest.raises(NotSymmetricError):
        rep(1, (0, 0))
    with pytest.raises(NotSymmetricError):
        rep(1, (1,), kind='xsh')


def test_hyperplane_stabilizer():
    assert len(hyperplane_stabilizer(rep(1, (1, -1)))) == 2
    assert len(hyperplane_stabilizer(rep(1, (1, 2)))) == 1
    assert len(hyperplane_stabilizer(rep(1, (1, 1), 1))) == 2


def test_colored_stabilizer_order():
    # z1 - z2 = 0 is fixed by the swap and by equal colors on both sides
    assert len(stabilizer_elements(rep(3, (1, -1), kind='csh'), colored=True)) == 6
    assert len(stabilizer_elements(rep(2, (1, 2), kind='csh'), colored=True)) == 2
    assert len(stabilizer_elements(rep(3, (1,), kind='csh'), colored=True)) == 3


# --- Solutions and partitions ------------------------------------------------------

def test_solutions_of_braid_equation():
    sols = solve_representative(rep(1, (1, -1)), PrimeField(1, 5))
    assert sols.vectors == tuple((k, k) for k in range(5))
    assert sols.weights == (1,) * 5


def test_solutions_with_trivial_stabilizer_carry_weights():
    sols = solve_representative(rep(1, (1, 2)), PrimeField(1, 5))
    assert len(sols.vectors) == 5
    weights = dict(zip(sols.vectors, sols.weights))
    assert weights[(0, 0)] == 2


def test_degenerate_reduction():
    with pytest.raises(InvalidReductionError):
        solve_representative(rep(1, (5,), 1), PrimeField(1, 5))


def test_indice_partition_blocks():
    spec = PrimeField(1, 5)
    partition = build_indice_partition([solve_representative(r, spec) for r in type_d(2).representatives])
    # (k, k) and (k, -k) join k with -k: blocks {0}, {1, 4}, {2, 3}
    assert sorted(sorted(s) for s in partition.supports()) == [[0], [1, 4], [2, 3]]


def test_point_membership_counts():
    spec = PrimeField(1, 5)
    sols = [solve_representative(r, spec) for r in braid(4).representatives]
    assert h_of_point_sh((0, 0, 1, 2), sols) == 1
    assert h_of_point_sh((3, 3, 3, 3), sols) == 6
    assert h_of_point_sh((2, 2, 4, 4), sols) == 2
    assert h_of_point_sh((1, 2, 3, 4), sols) == 0


def test_csh_point_membership():
    spec = PrimeField(3, 7)
    fam = imprimitive(3, 1, 2)
    sols = [solve_representative(r, spec) for r in fam.representatives]
    # classes of F_7 under {1, 2, 4}: 0, {1, 2, 4}, {3, 5, 6}
    assert h_of_point_csh((0, 0), sols, spec) == 2 + 3
    assert h_of_point_csh((1, 2), sols, spec) == 1
    assert h_of_point_csh((1, 3), sols, spec) == 0


def test_colored_weights_count_solutions_per_class():
    spec = PrimeField(2, 7)
    sols = solve_representative(rep(2, (1, 2), kind='csh'), spec)
    weights = dict(zip(sols.vectors, sols.weights))
    # all four hyperplanes z1 +- 2 z2 = 0, 2 z1 +- z2 = 0 pass through the origin
    assert weights[(0, 0)] == 4
    assert h_of_point_csh((0, 0), [sols], spec) == 4


@pytest.mark.parametrize('m, p', [(3, 3), (3, 1), (4, 2), (4, 4), (2, 1)])
def test_colored_weights_reduce_to_f_u_m_on_imprimitive_families(m, p):
    spec = PrimeField(m, 13)
    sols = [solve_representative(r, spec) for r in imprimitive_representatives(m, p)]
    keys = sorted(set(star_classes(spec).values()))
    for combo in combinations_with_replacement(keys, 3):
        a = Counter(combo)
        for s in sols:
            for v, weight in zip(s.vectors, s.weights):
                assert weight * f(a, v) == f_u_m(a, v, 0, m)


# --- Closed forms -----------------------------------------------------------------

def test_braid_point_sum_matches_histogram():
    spec = PrimeField(1, 5)
    assert symmetric_point_sum(braid_representatives(), 3, spec) == t_polynomial({0: 60, 1: 60, 3: 5})
    assert coboundary_sh_closed_form(braid_representatives(), 3, spec) == TU**3 + 12 * TU + 12


@pytest.mark.parametrize('fam, q', [
    (braid(3), 3), (braid(4), 5), (type_b(2), 5), (type_b(3), 3), (type_d(3), 5), (ish(2), 5), (ish(3), 7),
], ids=lambda v: v.label() if hasattr(v, 'label') else str(v))
def test_sh_closed_form_matches_definition(fam, q):
    A = fam.arrangement
    spec = PrimeField(1, q)
    closed = coboundary_sh_closed_form(fam.representatives, A.n, spec, rank_A=arrangement_rank(A))
    assert closed == evaluate_first(coboundary(A), q)


def test_sh_closed_form_for_equation_with_trivial_stabilizer():
    reps = [rep(1, (1, 2))]
    A = expand_representatives(reps, 2, 1)
    spec = PrimeField(1, 5)
    assert coboundary_sh_closed_form(reps, 2, spec) == evaluate_first(coboundary(A), 5)


@pytest.mark.parametrize('m, p, n, q', [(3, 3, 2, 7), (3, 1, 2, 7), (2, 1, 3, 5), (4, 2, 2, 5), (3, 3, 3, 7)])
def test_csh_closed_form_matches_definition(m, p, n, q):
    fam = imprimitive(m, p, n)
    A = fam.arrangement
    spec = PrimeField(m, q)
    closed = coboundary_csh_closed_form(fam.representatives, n, spec, rank_A=arrangement_rank(A))
    assert closed == evaluate_first(coboundary(A), q)


@pytest.mark.parametrize('m, coeffs, rhs, expected', [
    (2, (1, 2), 0, TU**4 + 24 * TU + 24),
    (3, (1, 1), 1, 6 * TU**3 + 9 * TU**2 + 27 * TU + 7),
])
def test_csh_closed_form_outside_imprimitive_families(m, coeffs, rhs, expected):
    reps = [rep(m, coeffs, rhs, kind='csh')]
    A = expand_representatives(reps, 2, m)
    spec = PrimeField(m, 7)
    closed = coboundary_csh_closed_form(reps, 2, spec, rank_A=arrangement_rank(A))
    assert closed == expected
    assert closed == coboundary_at_prime(A, spec)
    assert closed == evaluate_first(coboundary(A), 7)


@pytest.mark.parametrize('n', [1, 2, 3])
@pytest.mark.parametrize('q', [5, 7, 11])
def test_ish_closed_form(n, q):
    fam = ish(n)
    A = fam.arrangement
    closed = coboundary_sh_closed_form(fam.representatives, n, PrimeField(1, q), rank_A=arrangement_rank(A))
    assert closed == evaluate_first(coboundary(A), q)


def test_closed_form_matches_point_count_for_every_n():
    spec = PrimeField(3, 7)
    reps = imprimitive(3, 3, 2).representatives
    for n in range(1, 4):
        A = imprimitive(3, 3, n).arrangement
        total = symmetric_point_sum(reps, n, spec, colored=True)
        assert total == t_polynomial(point_count_histogram(reduce_arrangement(A, spec)))


# --- Freeness ---------------------------------------------------------------------

def test_star_classes_over_prime_field():
    classes = star_classes(PrimeField(3, 7))
    assert classes[0] == 0
    assert {classes[x] for x in (1, 2, 4)} == {1}
    assert {classes[x] for x in (3, 5, 6)} == {3}


def test_orbit_size_and_freeness():
    spec = PrimeField(3, 7)
    assert orbit_size((1, 3), spec) == 9
    assert check_orbit_size((0, 1), spec) == 3


def test_freeness_violation_on_literal_ring():
    spec = LiteralRing(3, 7)
    ring = coefficient_ring(spec)
    fixed = ring.index((1, 1, 1))
    with pytest.raises(FreenessViolation) as excinfo:
        check_orbit_size((fixed,), spec)
    report = excinfo.value.report
    assert report['orbit_size'] == 1
    assert report['expected'] == 3
    assert report['fixing_root']['root_exponent'] == 1


def test_csh_closed_form_reports_freeness_violation():
    with pytest.raises(FreenessViolation):
        coboundary_csh_closed_form(imprimitive(3, 3, 2).representatives, 2, LiteralRing(3, 7))


if __name__ == '__main__':
    sys.exit(pytest.main([__file__]))
