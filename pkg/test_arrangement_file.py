#!/usr/bin/env python3
"""
Tests for the arrangement file format: parsing, error positions and rendering
"""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from arrangement import hyperplane
from arrangement_file import parse, render, tokenize
from cyclotomic import CycElem
from errors import ParseError
from families import braid, imprimitive, ish, type_b


BRAID_TEXT = """\
# braid arrangement A_3
m = 1
n = 3
z1 - z2 = 0
z1 - z3 = 0
z2 - z3 = 0   # last one
"""


def test_parse_plain_hyperplanes():
    parsed = parse(BRAID_TEXT)
    assert (parsed.m, parsed.n) == (1, 3)
    assert parsed.arrangement.same_hyperplanes(braid(3).arrangement)
    assert parsed.representatives == []
    assert parsed.kind is None


def test_parse_cyclotomic_coefficients():
    parsed = parse("m = 4\nn = 2\nz1 - (w) z2 = 0\n(1 + 2w^2) z1 + w^3*z2 = 2*w\n")
    h1, h2 = parsed.hyperplanes
    assert h1.coeffs == (CycElem.one(4), CycElem(4, (0, -1)))
    # 1 + 2 w^2 = -1 when w = i
    assert h2.coeffs == (CycElem(4, (-1, 0)), CycElem(4, (0, -1)))
    assert h2.rhs == CycElem(4, (0, 2))


@pytest.mark.parametrize('line, coeffs, rhs', [
    ('2 z1 - z2 = -1', (2, -1), -1),
    ('-z1 + 3*z2 = 4', (-1, 3), 4),
    ('z2 = 0', (0, 1), 0),
    ('z1 + z2 + z1 = 0', (2, 1), 0),
    ('(3) z1 = (2)', (3, 0), 2),
])
def test_integer_coefficient_syntaxes(line, coeffs, rhs):
    parsed = parse(f"m = 1\nn = 2\n{line}\n")
    assert parsed.hyperplanes == [hyperplane(1, coeffs, rhs)]


def test_parse_representatives_only():
    parsed = parse("m = 3\nn = 3\nrep csh: z1 - z2 = 0\n")
    assert parsed.kind == 'csh'
    assert parsed.hyperplanes == []
    assert parsed.arrangement.same_hyperplanes(imprimitive(3, 3, 3).arrangement)


def test_empty_arrangement_file():
    parsed = parse("m = 1\nn = 2\n")
    assert len(parsed.arrangement) == 0


def test_mixed_representative_kinds():
    parsed = parse("m = 1\nn = 2\nrep sh: z1 = 0\nrep csh: z1 - z2 = 0\n")
    assert parsed.kind is None


# --- Errors ---------------------------------------------------------------------

def test_error_position_for_missing_term():
    with pytest.raises(ParseError) as excinfo:
        parse("m = 1\nn = 2\nz1 + = 0\n")
    assert excinfo.value.line == 3
    assert excinfo.value.token == 3
    assert 'line 3, token 3' in str(excinfo.value)


def test_error_position_inside_representative():
    with pytest.raises(ParseError) as excinfo:
        parse("m = 1\nn = 2\nrep sh: z1 + = 0\n")
    assert excinfo.value.token == 6


def test_error_at_end_of_line():
    with pytest.raises(ParseError) as excinfo:
        parse("m = 1\nn = 2\nz1 - z2 =\n")
    assert excinfo.value.token == 5
    assert 'end of line' in str(excinfo.value)


def test_variable_out_of_range():
    with pytest.raises(ParseError) as excinfo:
        parse("m = 1\nn = 2\nz1 - z3 = 0\n")
    assert excinfo.value.token == 3


def test_zero_normal_vector():
    with pytest.raises(ParseError) as excinfo:
        parse("m = 1\nn = 2\nz1 - z1 = 1\n")
    assert excinfo.value.line == 3


def test_zero_in_number_field_is_rejected():
    with pytest.raises(ParseError):
        parse("m = 3\nn = 1\n(1 + w + w^2) z1 = 0\n")


def test_duplicate_hyperplane():
    with pytest.raises(ParseError) as excinfo:
        parse("m = 1\nn = 2\nz1 - z2 = 0\n2 z1 - 2 z2 = 0\n")
    assert excinfo.value.line == 4


@pytest.mark.parametrize('text', [
    "z1 = 0\n",
    "m = 1\nz1 = 0\n",
    "n = 2\n",
    "m = 0\nn = 2\n",
    "m = 1\nn = 2\nz1 = 0\nm = 2\n",
    "m = 1\nm = 1\nn = 2\n",
])
def test_header_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_bad_character():
    with pytest.raises(ParseError) as excinfo:
        tokenize("z1 & z2 = 0", 7)
    assert excinfo.value.line == 7
    assert excinfo.value.token == 2


def test_unknown_word():
    with pytest.raises(ParseError):
        parse("m = 3\nn = 2\nzeta z1 = 0\n")


# --- Rendering ------------------------------------------------------------------

@pytest.mark.parametrize('fam', [braid(3), type_b(2), ish(2), imprimitive(3, 3, 2), imprimitive(4, 2, 2)],
                         ids=lambda f: f.label())
def test_render_round_trip(fam):
    text = render(fam.arrangement, fam.representatives)
    parsed = parse(text)
    assert parsed.arrangement.same_hyperplanes(fam.arrangement)
    assert parsed.representatives == list(fam.representatives)


def test_render_skips_representatives_wider_than_n():
    fam = ish(1)
    parsed = parse(render(fam.arrangement, fam.representatives))
    assert len(parsed.representatives) == 2
    assert parsed.arrangement.same_hyperplanes(fam.arrangement)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__]))
