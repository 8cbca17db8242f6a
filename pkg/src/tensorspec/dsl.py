"""Text format for block models.

::

    # a pole of order 2 at 1 plus a non-nilpotent quasi-nilpotent part
    sum(pole(1, ord=2, rank=fin), quasinil(0), cluster(0, r=1, q=1/2))

Scalars are ``int``, ``int/nat`` or ``re +- im i`` with rational parts;
``2i``, ``-i`` and ``1/2-i`` are accepted as shorthands.  ``pole`` defaults
to ``ord=1, rank=inf`` and ``cluster`` to ``rank=fin`` (the rank of each
eigenvalue of the sequence); keyword arguments may come in any order.
:func:`render_operator` writes the canonical form (pole keywords always
spelled out, cluster rank only when ``inf``), and parsing it back gives
an equal model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .blocks import BlockModel, ClusterDiag, JordanPole, PrimitiveBlock, QuasiNil, model_profile
from .errors import DslSyntaxError, DslValidationError, InvalidProfile
from .exact import GaussianRational
from .profile import Rank
from .sets import DEFAULT_DEPTH

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[(),=/+\-])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, punct, eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("num", "name", "punct"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.cur
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise DslSyntaxError(f"{message}, found {found}", tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.cur
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.cur.text != text or self.cur.kind == "eof":
            self.fail(f"expected {text!r}")
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.cur.kind != "eof" and self.cur.text == text:
            self.i += 1
            return True
        return False

    # operator := "sum(" primitive ("," primitive)* ")"
    def operator(self) -> BlockModel:
        self.expect("sum")
        self.expect("(")
        blocks = [self.primitive()]
        while self.accept(","):
            blocks.append(self.primitive())
        self.expect(")")
        if self.cur.kind != "eof":
            self.fail("expected end of input")
        return BlockModel(tuple(blocks))

    def primitive(self) -> PrimitiveBlock:
        head = self.cur
        if head.kind != "name" or head.text not in ("pole", "quasinil", "cluster"):
            self.fail("expected pole, quasinil or cluster")
        self.advance()
        self.expect("(")
        point = self.gq()
        if head.text == "quasinil":
            self.expect(")")
            return QuasiNil(point)
        allowed = {"pole": ("ord", "rank"), "cluster": ("r", "q", "rank")}[head.text]
        kw = self.keywords(allowed)
        if head.text == "pole":
            order = kw.get("ord", 1)
            if order < 1:
                self.fail("pole order must be at least 1", head)
            return JordanPole(point, order, kw.get("rank", Rank.INF))
        for needed in ("r", "q"):
            if needed not in kw:
                self.fail(f"cluster needs {needed}=", head)
        return ClusterDiag(point, kw["r"], kw["q"], kw.get("rank", Rank.FIN))

    def keywords(self, allowed: tuple[str, ...]) -> dict:
        kw: dict = {}
        while self.accept(","):
            key = self.cur
            if key.kind != "name" or key.text not in allowed:
                self.fail("expected one of " + ", ".join(f"{k}=" for k in allowed))
            if key.text in kw:
                self.fail(f"repeated keyword {key.text!r}", key)
            self.advance()
            self.expect("=")
            if key.text == "ord":
                kw["ord"] = self.nat()
            elif key.text == "rank":
                tok = self.cur
                if tok.text not in ("fin", "inf"):
                    self.fail("expected fin or inf")
                self.advance()
                kw["rank"] = Rank(tok.text)
            else:
                kw[key.text] = self.gq()
        self.expect(")")
        return kw

    def nat(self) -> int:
        if self.cur.kind != "num":
            self.fail("expected a natural number")
        return int(self.advance().text)

    def rational(self) -> Fraction:
        n = self.nat()
        if self.accept("/"):
            tok = self.cur
            d = self.nat()
            if d == 0:
                self.fail("zero denominator", tok)
            return Fraction(n, d)
        return Fraction(n)

    def _is_i(self, tok: Token) -> bool:
        return tok.kind == "name" and tok.text == "i"

    def gq(self) -> GaussianRational:
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        if self._is_i(self.cur):
            self.advance()
            return GaussianRational(0, sign)
        first = sign * self.rational()
        if self._is_i(self.cur):
            self.advance()
            return GaussianRational(0, first)
        if self.cur.text in ("+", "-") and self.cur.kind == "punct":
            nxt = self.peek()
            if nxt.kind == "num" or self._is_i(nxt):
                s2 = -1 if self.advance().text == "-" else 1
                im = Fraction(1) if self._is_i(self.cur) else self.rational()
                if not self._is_i(self.cur):
                    self.fail("expected 'i' after the imaginary part")
                self.advance()
                return GaussianRational(first, s2 * im)
        return GaussianRational(first)


def parse_blocks(text: str) -> BlockModel:
    """Parse without semantic validation."""
    return _Parser(text).operator()


def parse_operator(text: str, depth: int = DEFAULT_DEPTH) -> BlockModel:
    model = parse_blocks(text)
    try:
        model_profile(model, depth)
    except InvalidProfile as exc:
        raise DslValidationError("; ".join(exc.violations)) from exc
    return model


def _rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_gq(z: GaussianRational) -> str:
    """Canonical scalar spelling: ``3``, ``-1/2``, ``0+1i``, ``1/2-2/3i``."""
    re_, im = z.re, z.im
    if im == 0:
        return _rational(re_)
    sign = "-" if im < 0 else "+"
    return f"{_rational(re_)}{sign}{_rational(abs(im))}i"


def render_block(b: PrimitiveBlock) -> str:
    if isinstance(b, JordanPole):
        return f"pole({render_gq(b.lam)}, ord={b.order}, rank={b.rank.value})"
    if isinstance(b, QuasiNil):
        return f"quasinil({render_gq(b.lam)})"
    tail = ", rank=inf" if b.rank_each is Rank.INF else ""
    return f"cluster({render_gq(b.limit)}, r={render_gq(b.r)}, q={render_gq(b.q)}{tail})"


def render_operator(m: BlockModel) -> str:
    return "sum(" + ", ".join(render_block(b) for b in m.blocks) + ")"
