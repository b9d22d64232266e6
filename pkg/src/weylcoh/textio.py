"""Reading and writing operators, presentations and operator files.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | 'x' IDX ('^' INT)? | 'd' IDX ('[' INT ']')?

``d1`` abbreviates ``d1[1]``; ``d1[0]`` is rejected (write ``1``).  Integer
literals must already lie in 0..p-1.  Products are normalized with the
Weyl-algebra multiplication, so ``d1*x1`` is legal input.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, TextIO, Union

from .arith import FpConfig
from .coherence import Presentation
from .polyring import Poly
from .weyl import WeylElement


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = -1):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos >= 0 else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([xd+\-*^\[\]]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            ws = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + ws]!r}", text, pos + ws)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int, cfg: FpConfig):
        self.text = text
        self.n = n
        self.cfg = cfg
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def error(self, message: str):
        raise ParseError(message, self.text, self.pos())

    def integer(self, what: str) -> int:
        tok = self.peek()
        if not tok.isdigit():
            self.error(f"expected {what}")
        self.take()
        return int(tok)

    def expr(self) -> WeylElement:
        if self.peek() == "":
            self.error("empty expression")
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        if self.peek() != "":
            self.error(f"unexpected token {self.peek()!r}")
        return acc

    def term(self) -> WeylElement:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def index(self, letter: str) -> int:
        start = self.pos()
        i = self.integer(f"variable index after {letter!r}")
        if not 1 <= i <= self.n:
            raise ParseError(f"variable index {i} out of range 1..{self.n}", self.text, start)
        return i

    def factor(self) -> WeylElement:
        tok = self.peek()
        start = self.pos()
        if tok.isdigit():
            c = self.integer("coefficient")
            if c >= self.cfg.p:
                raise ParseError(f"coefficient {c} is not in 0..{self.cfg.p - 1}", self.text,
                                 start)
            return WeylElement.constant(c, self.n, self.cfg)
        if tok == "x":
            self.take()
            i = self.index("x")
            e = 1
            if self.peek() == "^":
                self.take()
                e = self.integer("exponent")
            return WeylElement.x(i, self.n, self.cfg, e)
        if tok == "d":
            self.take()
            i = self.index("d")
            r = 1
            if self.peek() == "[":
                self.take()
                rpos = self.pos()
                r = self.integer("divided-power index")
                if r == 0:
                    raise ParseError("d[0] is not a literal; write 1", self.text, rpos)
                if self.take() != "]":
                    self.i -= 1
                    self.error("expected ']'")
            return WeylElement.d(i, self.n, self.cfg, r)
        self.error(f"unexpected token {tok!r}" if tok else "unexpected end of input")


def parse_operator(text: str, cfg: FpConfig, n: int) -> WeylElement:
    """Parse and normalize an operator expression.

    >>> str(parse_operator("d1*x1", FpConfig(2), 1))
    'x1*d1 + 1'
    """
    return _Parser(text, n, cfg).expr()


def parse_polynomial(text: str, cfg: FpConfig, n: int) -> Poly:
    d = parse_operator(text, cfg, n)
    if not d.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return d.to_poly()


def format_operator(d: WeylElement) -> str:
    return d.to_text()


# operator files

@dataclass
class OperatorFile:
    p: int
    n: int
    operators: Dict[str, WeylElement] = field(default_factory=dict)

    @property
    def cfg(self) -> FpConfig:
        return FpConfig(self.p)


_HEADER = re.compile(r"^\s*p\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s*$")


def _content_lines(stream: TextIO):
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _open(source: Union[str, Path, TextIO]):
    if isinstance(source, (str, Path)):
        return open(source, encoding="utf-8")
    return source


def read_operator_file(source: Union[str, Path, TextIO]) -> OperatorFile:
    stream = _open(source)
    try:
        lines = _content_lines(stream)
        first = next(lines, None)
        if first is None:
            raise ParseError("missing header line 'p=<prime> n=<count>'")
        m = _HEADER.match(first[1])
        if not m:
            raise ParseError(f"line {first[0]}: bad header {first[1]!r}")
        of = OperatorFile(int(m.group(1)), int(m.group(2)))
        cfg = of.cfg
        if of.n < 1:
            raise ParseError("n must be at least 1")
        for lineno, line in lines:
            name, eq, expr = line.partition("=")
            name = name.strip()
            if not eq or not re.fullmatch(r"[A-Za-z_]\w*", name):
                raise ParseError(f"line {lineno}: expected 'name = expression'")
            if name in of.operators:
                raise ParseError(f"line {lineno}: duplicate name {name!r}")
            try:
                of.operators[name] = parse_operator(expr, cfg, of.n)
            except ParseError as e:
                raise ParseError(f"line {lineno}: {e}") from e
        return of
    finally:
        if stream is not source:
            stream.close()


def write_operator_file(of: OperatorFile, target: Union[str, Path, TextIO, None] = None) -> str:
    lines = [f"p={of.p} n={of.n}"]
    lines += [f"{name} = {format_operator(d)}" for name, d in of.operators.items()]
    text = "\n".join(lines) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    elif target is not None:
        target.write(text)
    return text


# presentations

_PRES_HEADER = re.compile(r"^side=(left|right)\s+level=(\d+)\s+k=(\d+)$")


def read_presentation(source: Union[str, Path, TextIO], cfg: FpConfig, n: int) -> Presentation:
    stream = _open(source)
    try:
        lines = list(_content_lines(stream))
    finally:
        if stream is not source:
            stream.close()
    if not lines:
        raise ParseError("empty presentation file")
    m = _PRES_HEADER.match(lines[0][1])
    if not m:
        raise ParseError(f"line {lines[0][0]}: bad header {lines[0][1]!r}")
    side, level, k = m.group(1), int(m.group(2)), int(m.group(3))
    if len(lines) < 1 + k:
        raise ParseError(f"expected {k} generator lines")
    gens = tuple(parse_operator(line, cfg, n) for _, line in lines[1:1 + k])
    syzygies = []
    for lineno, line in lines[1 + k:]:
        if not (line.startswith("(") and line.endswith(")")):
            raise ParseError(f"line {lineno}: syzygy must be a parenthesized tuple")
        parts = line[1:-1].split(",")
        if len(parts) != k:
            raise ParseError(f"line {lineno}: expected {k} entries, got {len(parts)}")
        syzygies.append(tuple(parse_operator(part, cfg, n) for part in parts))
    return Presentation(gens, tuple(syzygies), level, side)


def format_presentation(pres: Presentation) -> str:
    return pres.to_text()


def presentation_to_dict(pres: Presentation) -> dict:
    return {
        "side": pres.side,
        "level": pres.level,
        "k": pres.k,
        "generators": [g.to_text() for g in pres.generators],
        "syzygies": [[u.to_text() for u in s] for s in pres.syzygies],
    }


def read_presentation_text(text: str, cfg: FpConfig, n: int) -> Presentation:
    return read_presentation(io.StringIO(text), cfg, n)


def parse_many(texts: List[str], cfg: FpConfig, n: int) -> List[WeylElement]:
    return [parse_operator(t, cfg, n) for t in texts]
