"""
Line-oriented arrangement files.

    # comment
    m = 4
    n = 2
    z1 - (w) z2 = 0
    rep csh: z1 - z2 = 0

Coefficients are integer combinations of powers of w = zeta_m, written
bare (`2 z1`, `w^2*z3`) or in parentheses (`(1 + 2w^2) z1`). A file with
only `rep` lines describes the orbit of its representatives.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from arrangement import Arrangement, Hyperplane
from cyclotomic import CycElem
from errors import ArrangementError, NotSymmetricError, ParseError
from symmetric import RepresentativeEquation, expand_representatives

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r'\s*(?:(?P<var>z\d+)|(?P<int>\d+)|(?P<word>[A-Za-z]+)|(?P<op>[-+*^()=:]))')


class Token(object):
    """A lexical token with its 1-based position in the line."""

    def __init__(self, kind: str, text: str, index: int):
        self.kind = kind
        self.text = text
        self.index = index

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, #{self.index})"


def tokenize(line: str, lineno: Optional[int] = None) -> List[Token]:
    tokens = []
    pos = 0
    stripped = line.rstrip()
    while pos < len(stripped):
        match = TOKEN_RE.match(stripped, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected character {stripped[pos:].strip()[:1]!r}",
                             line=lineno, token=len(tokens) + 1, text=line)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), len(tokens) + 1))
        pos = match.end()
    return tokens


class LineParser(object):
    """Recursive-descent parser for one equation line."""

    def __init__(self, tokens: List[Token], m: int, n: int, lineno: int, text: str):
        self.tokens = tokens
        self.pos = 0
        self.m = m
        self.n = n
        self.lineno = lineno
        self.text = text

    # token helpers

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str) -> ParseError:
        token = self.peek()
        index = token.index if token else (self.tokens[-1].index + 1 if self.tokens else 1)
        found = f"'{token.text}'" if token else 'end of line'
        return ParseError(f"{message}, found {found}", line=self.lineno, token=index, text=self.text)

    def accept(self, *texts: str) -> Optional[Token]:
        token = self.peek()
        if token is not None and token.kind == 'op' and token.text in texts:
            self.pos += 1
            return token
        return None

    def expect(self, text: str) -> Token:
        token = self.accept(text)
        if token is None:
            raise self.error(f"expected '{text}'")
        return token

    # grammar

    def monomial(self) -> CycElem:
        """INT ['*'] [w ['^' INT]]  |  w ['^' INT]"""
        token = self.peek()
        value = CycElem.one(self.m)
        seen = False
        if token is not None and token.kind == 'int':
            self.pos += 1
            value = CycElem.integer(self.m, int(token.text))
            seen = True
            token = self.peek()
            if token is not None and token.kind == 'op' and token.text == '*':
                after = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
                if after is not None and after.kind == 'word' and after.text == 'w':
                    self.pos += 1
                    token = self.peek()
        if token is not None and token.kind == 'word' and token.text == 'w':
            self.pos += 1
            power = 1
            if self.accept('^'):
                exponent = self.peek()
                if exponent is None or exponent.kind != 'int':
                    raise self.error("expected an exponent after '^'")
                self.pos += 1
                power = int(exponent.text)
            value = value * CycElem.root_power(self.m, power)
            seen = True
        if not seen:
            raise self.error("expected a coefficient")
        return value

    def coef_expr(self, stop: Tuple[str, ...]) -> CycElem:
        """[sign] monomial {sign monomial}"""
        total = CycElem.zero(self.m)
        sign = -1 if self.accept('-') else 1
        if sign == 1:
            self.accept('+')
        while True:
            mono = self.monomial()
            total = total + (mono if sign > 0 else -mono)
            token = self.peek()
            if token is None or (token.kind == 'op' and token.text in stop):
                return total
            if self.accept('+'):
                sign = 1
            elif self.accept('-'):
                sign = -1
            else:
                raise self.error("expected '+' or '-'")

    def coefficient(self) -> CycElem:
        if self.accept('('):
            value = self.coef_expr((')',))
            self.expect(')')
            return value
        return self.monomial()

    def term(self) -> Tuple[int, CycElem]:
        """[coefficient] ['*'] z<idx>"""
        token = self.peek()
        coeff = CycElem.one(self.m)
        if token is not None and not token.kind == 'var':
            if token.kind in ('int', 'word') or (token.kind == 'op' and token.text == '('):
                coeff = self.coefficient()
                self.accept('*')
            else:
                raise self.error("expected a term")
        token = self.peek()
        if token is None or token.kind != 'var':
            raise self.error("expected a variable z<index>")
        self.pos += 1
        index = int(token.text[1:])
        if not 1 <= index <= self.n:
            raise ParseError(f"variable {token.text} out of range z1..z{self.n}",
                             line=self.lineno, token=token.index, text=self.text)
        return index, coeff

    def equation(self) -> Tuple[Dict[int, CycElem], CycElem]:
        coeffs: Dict[int, CycElem] = {}
        sign = -1 if self.accept('-') else 1
        if sign == 1:
            self.accept('+')
        while True:
            index, coeff = self.term()
            coeff = coeff if sign > 0 else -coeff
            coeffs[index] = coeffs[index] + coeff if index in coeffs else coeff
            if self.accept('='):
                break
            if self.accept('+'):
                sign = 1
            elif self.accept('-'):
                sign = -1
            else:
                raise self.error("expected '+', '-' or '='")
        rhs = self.coef_expr(()) if not self.accept('(') else self._paren_rhs()
        if self.peek() is not None:
            raise self.error("unexpected trailing input")
        return coeffs, rhs

    def _paren_rhs(self) -> CycElem:
        value = self.coef_expr((')',))
        self.expect(')')
        return value


@dataclass
class ArrangementFile:
    m: int
    n: int
    hyperplanes: List[Hyperplane] = field(default_factory=list)
    representatives: List[RepresentativeEquation] = field(default_factory=list)

    @property
    def kind(self) -> Optional[str]:
        kinds = {r.kind for r in self.representatives}
        return kinds.pop() if len(kinds) == 1 else None

    @property
    def arrangement(self) -> Arrangement:
        if self.hyperplanes or not self.representatives:
            return Arrangement(self.m, self.n, tuple(self.hyperplanes))
        return expand_representatives(self.representatives, self.n, self.m)


HEADER_RE = re.compile(r'^\s*([mn])\s*=\s*(-?\d+)\s*$')
REP_RE = re.compile(r'^\s*rep\s+(sh|csh)\s*:(.*)$')


def parse(text: str) -> ArrangementFile:
    header: Dict[str, int] = {}
    parsed: Optional[ArrangementFile] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0]
        if not line.strip():
            continue
        header_match = HEADER_RE.match(line)
        if header_match:
            key, value = header_match.group(1), int(header_match.group(2))
            if parsed is not None or key in header:
                raise ParseError(f"header line '{key} = ...' out of place", line=lineno, token=1, text=raw)
            if (key == 'm' and value < 1) or (key == 'n' and value < 0):
                raise ParseError(f"invalid header value {key} = {value}", line=lineno, token=3, text=raw)
            header[key] = value
            continue
        if parsed is None:
            if set(header) != {'m', 'n'}:
                raise ParseError("expected header lines 'm = <int>' and 'n = <int>' before equations",
                                 line=lineno, token=1, text=raw)
            parsed = ArrangementFile(header['m'], header['n'])

        rep_match = REP_RE.match(line)
        kind = None
        offset = 0
        if rep_match:
            kind, body = rep_match.group(1), rep_match.group(2)
            offset = 3
        else:
            body = line
        tokens = tokenize(body, lineno)
        for token in tokens:
            token.index += offset
        if not tokens:
            raise ParseError("empty representative equation", line=lineno, token=offset + 1, text=raw)
        coeffs, rhs = LineParser(tokens, parsed.m, parsed.n, lineno, raw).equation()

        try:
            if kind is None:
                zero = CycElem.zero(parsed.m)
                h = Hyperplane(tuple(coeffs.get(i, zero) for i in range(1, parsed.n + 1)), rhs)
                if any(h.same_set(k) for k in parsed.hyperplanes):
                    raise ParseError(f"duplicate hyperplane {h}", line=lineno, token=1, text=raw)
                parsed.hyperplanes.append(h)
            else:
                zero = CycElem.zero(parsed.m)
                arity = max(coeffs)
                rep = RepresentativeEquation(tuple(coeffs.get(i, zero) for i in range(1, arity + 1)), rhs, kind)
                parsed.representatives.append(rep)
        except (ArrangementError, NotSymmetricError) as e:
            raise ParseError(str(e), line=lineno, token=1, text=raw) from e

    if parsed is None:
        if set(header) != {'m', 'n'}:
            raise ParseError("missing header lines 'm = <int>' and 'n = <int>'", line=None)
        parsed = ArrangementFile(header['m'], header['n'])
    logger.debug(f"parsed {len(parsed.hyperplanes)} hyperplanes and {len(parsed.representatives)} representatives")
    return parsed


def render(A: Arrangement, representatives=()) -> str:
    """Text that parses back to the same arrangement (and representatives)."""
    lines = [f"m = {A.m}", f"n = {A.n}"]
    # representatives wider than n generate nothing here
    lines.extend(str(rep) for rep in representatives if rep.compacted().j <= A.n)
    lines.extend(str(h) for h in A.hyperplanes)
    return '\n'.join(lines) + '\n'
