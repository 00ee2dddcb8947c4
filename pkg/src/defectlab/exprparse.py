"""Small recursive-descent parsers for the command line.

Series expressions are polynomials in ``X`` whose coefficients are finite
sums of monomials in ``t``: ``1/t - X^p``, ``t^(1/3) + 2*t^-1``.  The
letter ``p`` stands for the characteristic wherever a number may appear.
Division is only allowed by a single monomial.

Cut expressions combine cuts written as ``(gamma,side)`` or
``(gamma,Hj,side)`` (gamma a rational or a bracketed vector), ``TOP`` and
``BOTTOM`` with ``+``, ``n*`` and one optional comparison ``<``, ``<=``,
``>``, ``>=``, ``==``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from defectlab.cuts import Cut, Side, cut_add, cut_compare, cut_nfold
from defectlab.errors import DivisibilityError, ParseError
from defectlab.hahnfield.series import HahnSeries, SeriesRing
from defectlab.ogroup import GroupDesc, GroupElement, Ordering

_TOKEN = re.compile(r"\s*(?:(\d+)|(<=|>=|==|[A-Za-z_]\w*|[-+*/^()\[\],<>]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            rest = src[pos:]
            if not rest.strip():
                break
            skip = len(rest) - len(rest.lstrip())
            line, col = _locate(src, pos + skip)
            raise ParseError(f"unexpected character {rest.lstrip()[0]!r}", line, col)
        num, sym = m.group(1), m.group(2)
        text = num or sym
        line, col = _locate(src, m.start(1) if num else m.start(2))
        kind = "num" if num else ("name" if sym[0].isalpha() or sym[0] == "_" else "op")
        out.append(Token(kind, text, line, col))
        pos = m.end()
    line, col = _locate(src, len(src))
    out.append(Token("end", "", line, col))
    return out


def _locate(src: str, pos: int) -> tuple[int, int]:
    line = src.count("\n", 0, pos) + 1
    col = pos - (src.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Cursor:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.column)

    def accept(self, text: str) -> Token | None:
        if self.tok.text == text and self.tok.kind != "end":
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            shown = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {shown!r}")
        return t

    def done(self):
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")


# -- rationals (exponents) --------------------------------------------------------


def _rational(cur: _Cursor, p: int) -> Fraction:
    def expr():
        v = term()
        while cur.tok.text in ("+", "-"):
            op = cur.tok.text
            cur.i += 1
            w = term()
            v = v + w if op == "+" else v - w
        return v

    def term():
        v = unary()
        while cur.tok.text in ("*", "/"):
            op = cur.tok
            cur.i += 1
            w = unary()
            if op.text == "/":
                if w == 0:
                    cur.fail("division by zero", op)
                v = v / w
            else:
                v = v * w
        return v

    def unary():
        if cur.accept("-"):
            return -unary()
        if cur.accept("+"):
            return unary()
        return power()

    def power():
        v = atom()
        if cur.tok.text == "^":
            op = cur.tok
            cur.i += 1
            e = unary()
            if e.denominator != 1:
                cur.fail("fractional power of a number", op)
            if v == 0 and e < 0:
                cur.fail("division by zero", op)
            v = v ** int(e)
        return v

    def atom():
        t = cur.tok
        if t.kind == "num":
            cur.i += 1
            return Fraction(int(t.text))
        if t.text == "p":
            cur.i += 1
            return Fraction(p)
        if cur.accept("("):
            v = expr()
            cur.expect(")")
            return v
        cur.fail(f"expected a number, found {t.text or 'end of input'!r}")

    return expr()


def parse_rational(src: str, p: int = 2) -> Fraction:
    cur = _Cursor(src)
    v = _rational(cur, p)
    cur.done()
    return v


# -- polynomials in X over series in t ----------------------------------------------

Poly = dict  # X-degree -> HahnSeries


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for k, s in b.items():
        s = s if sign > 0 else -s
        out[k] = out[k] + s if k in out else s
    return {k: s for k, s in out.items() if not s.is_exact_zero()}


def _pmul(a: Poly, b: Poly, ring: SeriesRing) -> Poly:
    out: Poly = {}
    for i, x in a.items():
        for j, y in b.items():
            prod = x * y
            out[i + j] = out[i + j] + prod if i + j in out else prod
    return {k: s for k, s in out.items() if not s.is_exact_zero()}


def parse_poly(src: str, ring: SeriesRing) -> Poly:
    """Parse a polynomial in ``X`` with coefficients in ``ring``."""
    p = ring.p
    cur = _Cursor(src)

    def const(c: int) -> Poly:
        return {0: ring.constant(c)} if c % p else {}

    def expr() -> Poly:
        v = term()
        while cur.tok.text in ("+", "-"):
            op = cur.tok.text
            cur.i += 1
            v = _padd(v, term(), 1 if op == "+" else -1)
        return v

    def term() -> Poly:
        v = unary()
        while cur.tok.text in ("*", "/"):
            op = cur.tok
            cur.i += 1
            w = unary()
            if op.text == "*":
                v = _pmul(v, w, ring)
            else:
                v = _pmul(v, _inverse_monomial(w, op), ring)
        return v

    def _inverse_monomial(w: Poly, op: Token) -> Poly:
        if list(w) != [0] or len(w[0].terms) != 1:
            cur.fail("can only divide by a nonzero monomial in t", op)
        e, c = w[0].terms[0]
        return {0: ring.monomial(-e, ring.coeffs.inv(c))}

    def unary() -> Poly:
        if cur.accept("-"):
            return _padd({}, unary(), -1)
        if cur.accept("+"):
            return unary()
        return power()

    def power() -> Poly:
        t = cur.tok
        if t.text == "t":
            cur.i += 1
            e = Fraction(1)
            if cur.accept("^"):
                e = _exponent()
            try:
                return {0: ring.monomial(e)}
            except DivisibilityError as exc:  # pragma: no cover - hull admits every rational
                cur.fail(str(exc), t)
        if t.text == "X":
            cur.i += 1
            n = 1
            if cur.accept("^"):
                n = _int_exponent()
            return {n: ring.one()}
        v = atom()
        if cur.tok.text == "^":
            cur.i += 1
            n = _int_exponent()
            out = {0: ring.one()}
            for _ in range(n):
                out = _pmul(out, v, ring)
            return out
        return v

    def _exponent() -> Fraction:
        if cur.accept("-"):
            return -_exponent()
        t = cur.tok
        if t.kind == "num":
            cur.i += 1
            return Fraction(int(t.text))
        if t.text == "p":
            cur.i += 1
            return Fraction(p)
        if cur.accept("("):
            v = _rational(cur, p)
            cur.expect(")")
            return v
        cur.fail(f"expected an exponent, found {t.text or 'end of input'!r}")

    def _int_exponent() -> int:
        t = cur.tok
        e = _exponent()
        if e.denominator != 1 or e < 0:
            cur.fail("powers of X and of bracketed terms must be non-negative integers", t)
        return int(e)

    def atom() -> Poly:
        t = cur.tok
        if t.kind == "num":
            cur.i += 1
            return const(int(t.text))
        if t.text == "p":
            cur.i += 1
            return {}
        if cur.accept("("):
            v = expr()
            cur.expect(")")
            return v
        cur.fail(f"unexpected {t.text or 'end of input'!r}")

    v = expr()
    cur.done()
    return v


def parse_series(src: str, ring: SeriesRing) -> HahnSeries:
    """Parse an expression in ``t`` alone."""
    poly = parse_poly(src, ring)
    if any(k != 0 for k in poly):
        raise ParseError("expected an expression in t without X", 1, 1)
    return poly.get(0, ring.zero())


# -- cuts -----------------------------------------------------------------------


@dataclass(frozen=True)
class CutResult:
    """Either a cut (``value``) or the outcome of a comparison (``truth``)."""

    value: Cut | None = None
    truth: bool | None = None
    left: Cut | None = None
    right: Cut | None = None
    op: str = ""


_COMPARISONS: dict[str, Callable[[Ordering], bool]] = {
    "<": lambda o: o is Ordering.LT,
    "<=": lambda o: o is not Ordering.GT,
    ">": lambda o: o is Ordering.GT,
    ">=": lambda o: o is not Ordering.LT,
    "==": lambda o: o is Ordering.EQ,
}


def parse_cut_expr(src: str, desc: GroupDesc | None = None, p: int = 2) -> CutResult:
    """Evaluate a cut expression; ``desc`` defaults to Q^r with r read off the first vector."""
    cur = _Cursor(src)
    state = {"desc": desc}

    def group(rank: int, tok: Token) -> GroupDesc:
        if state["desc"] is None:
            state["desc"] = GroupDesc(p, ("Q",) * rank)
        if state["desc"].rank != rank:
            cur.fail(f"vector of length {rank} in a group of rank {state['desc'].rank}", tok)
        return state["desc"]

    def vector() -> tuple[list[Fraction], Token]:
        t = cur.tok
        if cur.accept("["):
            vals = [_rational(cur, p)]
            while cur.accept(","):
                vals.append(_rational(cur, p))
            cur.expect("]")
            return vals, t
        return [_rational(cur, p)], t

    def cut_atom() -> Cut:
        t = cur.tok
        if t.text in ("TOP", "BOTTOM"):
            cur.i += 1
            d = state["desc"] or group(1, t)
            return Cut.top(d) if t.text == "TOP" else Cut.bottom(d)
        if t.kind == "num" and cur.toks[cur.i + 1].text == "*":
            cur.i += 2
            n = int(t.text)
            if n < 1:
                cur.fail("multiplier must be >= 1", t)
            return cut_nfold(n, cut_atom())
        if not cur.accept("("):
            cur.fail(f"expected a cut, found {t.text or 'end of input'!r}")
        if cur.tok.text in ("TOP", "BOTTOM") or cur.tok.text == "(":
            c = cut_sum()
            cur.expect(")")
            return c
        vals, vt = vector()
        d = group(len(vals), vt)
        try:
            shift = GroupElement(d, tuple(vals))
        except DivisibilityError as exc:
            cur.fail(str(exc), vt)
        j = d.rank
        cur.expect(",")
        ht = cur.tok
        if ht.kind == "name" and re.fullmatch(r"H\d+", ht.text):
            cur.i += 1
            j = int(ht.text[1:])
            if j > d.rank:
                cur.fail(f"H{j} exceeds rank {d.rank}", ht)
            cur.expect(",")
        st = cur.tok
        if cur.accept("+"):
            side = Side.PLUS
        elif cur.accept("-"):
            side = Side.MINUS
        else:
            cur.fail("expected '+' or '-' for the side", st)
        cur.expect(")")
        return Cut.make(shift, j, side)

    def cut_sum() -> Cut:
        c = cut_atom()
        while cur.accept("+"):
            c = cut_add(c, cut_atom())
        return c

    left = cut_sum()
    op = cur.tok.text if cur.tok.text in _COMPARISONS else ""
    if op:
        cur.i += 1
        right = cut_sum()
        cur.done()
        truth = _COMPARISONS[op](cut_compare(left, right))
        return CutResult(truth=truth, left=left, right=right, op=op)
    cur.done()
    return CutResult(value=left)
