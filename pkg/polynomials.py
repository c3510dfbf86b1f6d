"""
Sparse exact-integer polynomials used as results.

Every polynomial is a sympy ``PolyElement`` in one of the fixed rings below;
variable names are carried by the ring. Rendering is canonical so text and
JSON output are byte-stable.
"""
from typing import Dict, List, Tuple

from sympy import QQ, Rational, ZZ
from sympy.polys.rings import ring

TUTTE_RING, X, Y = ring("x,y", ZZ)
COBOUNDARY_RING, Q, T = ring("q,t", ZZ)
Q_RING, QU = ring("q", ZZ)
T_RING, TU = ring("t", ZZ)


def var_names(poly) -> List[str]:
    return [str(s) for s in poly.ring.symbols]


def format_poly(poly) -> str:
    """Canonical text: monomials in lex-descending exponent order, `^` for powers."""
    if not poly:
        return '0'
    names = var_names(poly)
    pieces = []
    for exps, coeff in poly.terms():
        coeff = int(coeff)
        monomial = '*'.join(
            name if e == 1 else f'{name}^{e}'
            for name, e in zip(names, exps) if e
        )
        magnitude = abs(coeff)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f'{magnitude}*{monomial}'
        pieces.append(('-' if coeff < 0 else '+', body))
    sign, body = pieces[0]
    text = body if sign == '+' else f'-{body}'
    for sign, body in pieces[1:]:
        text += f' {sign} {body}'
    return text


def poly_to_json(poly) -> Dict[str, object]:
    """{"vars": [...], "terms": [[e1, ..., "coeff"], ...]} sorted ascending by exponents."""
    terms = sorted((tuple(int(e) for e in exps), int(c)) for exps, c in poly.terms())
    return {
        'vars': var_names(poly),
        'terms': [list(exps) + [str(c)] for exps, c in terms],
    }


def scale_exponent(poly, index: int, factor: int):
    """Substitute v -> v^factor for the generator at position index."""
    scaled = {}
    for exps, coeff in poly.terms():
        exps = list(exps)
        exps[index] *= factor
        scaled[tuple(exps)] = coeff
    return poly.ring.from_dict(scaled)


def t_polynomial(histogram: Dict[int, int]):
    """sum count * t^h as an element of T_RING."""
    return T_RING.from_dict({(h,): c for h, c in histogram.items() if c})


def t_coefficients(poly) -> Dict[int, int]:
    return {exps[0]: int(c) for exps, c in poly.terms()}


def evaluate_first(poly, value: int):
    """Evaluate a (q, t) polynomial at q = value, giving an element of T_RING."""
    coeffs: Dict[Tuple[int], int] = {}
    for (i, j), c in poly.terms():
        coeffs[(j,)] = coeffs.get((j,), 0) + int(c) * value**i
    return T_RING.from_dict({k: v for k, v in coeffs.items() if v})


def evaluate_rational(poly, *values):
    """Exact value of an integer polynomial at rational points, as a sympy Rational.

    Values may be ints, sympy Rationals or strings such as "1/2".
    """
    qq_ring = poly.ring.clone(domain=QQ)
    point = [QQ.convert(Rational(v)) for v in values]
    return QQ.to_sympy(poly.set_ring(qq_ring)(*point))
