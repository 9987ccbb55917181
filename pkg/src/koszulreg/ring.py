"""Polynomial rings K[x_1..x_n] with packed-integer monomials.

A monomial is stored as a single Python ``int`` whose natural integer order
*is* the chosen term order and which is additive under multiplication:
``key(a*b) == key(a) + key(b)``.  Exponents live in 8-bit fields with a
guard bit, so divisibility and lcm are a handful of big-int operations.
Limits: exponents <= 127, total degree <= 254, at most 64 variables.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering

from .field import Field, GF32003

WIDTH = 8
MAX_EXP = 127
MAX_DEGREE = 254
MAX_VARS = 64


class TermOrder(str, Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"

    @classmethod
    def parse(cls, text):
        t = str(text).strip().lower()
        for o in cls:
            if o.value == t:
                return o
        raise ValueError(f"unknown term order {text!r} (expected degrevlex or lex)")


class MonomialCodec:
    """Packed monomial keys for a fixed number of variables and term order.

    degrevlex key: ``deg << (8n) - P`` with ``P = sum e_i << 8i``.
    lex key: ``sum e_i << 8(n-1-i)`` (x_1 most significant).
    """

    def __init__(self, nvars, order=TermOrder.DEGREVLEX):
        if nvars > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables supported")
        self.n = nvars
        self.order = TermOrder(order)
        self.revlex = self.order is TermOrder.DEGREVLEX
        self.shift = WIDTH * nvars
        self.guard = sum(0x80 << (WIDTH * i) for i in range(nvars))
        self.low = sum(0x7F << (WIDTH * i) for i in range(nvars))
        if self.revlex:
            self.offsets = tuple(WIDTH * i for i in range(nvars))
        else:
            self.offsets = tuple(WIDTH * (nvars - 1 - i) for i in range(nvars))

    def packed(self, k):
        if self.revlex:
            d = -((-k) >> self.shift)
            return (d << self.shift) - k
        return k

    def from_packed(self, P):
        if self.revlex:
            return ((P % 255) << self.shift) - P
        return P

    def degree(self, k):
        if self.revlex:
            return -((-k) >> self.shift)
        return k % 255

    def encode(self, exps):
        if len(exps) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(exps)}")
        P = 0
        for e, off in zip(exps, self.offsets):
            if e < 0 or e > MAX_EXP:
                raise ValueError(f"exponent {e} out of range [0, {MAX_EXP}]")
            P |= e << off
        if sum(exps) > MAX_DEGREE:
            raise ValueError(f"total degree exceeds {MAX_DEGREE}")
        return self.from_packed(P)

    def exps(self, k):
        P = self.packed(k)
        return tuple((P >> off) & 0xFF for off in self.offsets)

    def divides(self, a, b):
        d = self.packed(b) - self.packed(a)
        return d >= 0 and not d & self.guard

    def pdivides(self, Pa, Pb):
        d = Pb - Pa
        return d >= 0 and not d & self.guard

    def pmax(self, Pa, Pb):
        ge = ((Pa | self.guard) - Pb) & self.guard
        M = ge - (ge >> 7)
        return (Pa & M) | (Pb & ~M & self.low)

    def pmin(self, Pa, Pb):
        ge = ((Pa | self.guard) - Pb) & self.guard
        M = ge - (ge >> 7)
        return (Pb & M) | (Pa & ~M & self.low)

    def lcm(self, a, b):
        return self.from_packed(self.pmax(self.packed(a), self.packed(b)))

    def gcd(self, a, b):
        return self.from_packed(self.pmin(self.packed(a), self.packed(b)))

    def var(self, i):
        return self.from_packed(1 << self.offsets[i])


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """An exponent vector; comparisons use degrevlex (x_1 > ... > x_n)."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")

    @property
    def degree(self):
        return sum(self.exponents)

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __truediv__(self, other):
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other):
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def gcd(self, other):
        return Monomial(tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)))

    def support(self):
        return tuple(i + 1 for i, e in enumerate(self.exponents) if e)

    def __lt__(self, other):
        return monomial_compare(self, other) < 0

    def __str__(self):
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts) or "1"


def monomial_compare(a, b, order=TermOrder.DEGREVLEX):
    """Return -1, 0 or 1 as ``a < b``, ``a == b`` or ``a > b`` under ``order``."""
    ea = a.exponents if isinstance(a, Monomial) else tuple(a)
    eb = b.exponents if isinstance(b, Monomial) else tuple(b)
    if len(ea) != len(eb):
        raise ValueError("monomials from different rings")
    if TermOrder(order) is TermOrder.DEGREVLEX:
        da, db = sum(ea), sum(eb)
        if da != db:
            return 1 if da > db else -1
        for x, y in zip(reversed(ea), reversed(eb)):
            if x != y:
                return 1 if x < y else -1
        return 0
    for x, y in zip(ea, eb):
        if x != y:
            return 1 if x > y else -1
    return 0


def max_var(v):
    """Largest index k (1-based) with x_k dividing ``v``."""
    e = v.exponents if isinstance(v, Monomial) else tuple(v)
    idx = [i + 1 for i, x in enumerate(e) if x]
    if not idx:
        raise ValueError("max_var of the unit monomial is undefined")
    return idx[-1]


def min_var(v):
    """Smallest index k (1-based) with x_k dividing ``v``."""
    e = v.exponents if isinstance(v, Monomial) else tuple(v)
    idx = [i + 1 for i, x in enumerate(e) if x]
    if not idx:
        raise ValueError("min_var of the unit monomial is undefined")
    return idx[0]


class PolyRing:
    """Graded polynomial ring over an exact field."""

    def __init__(self, variables, field=GF32003, order=TermOrder.DEGREVLEX):
        if isinstance(variables, int):
            variables = [f"x{i + 1}" for i in range(variables)]
        elif isinstance(variables, str):
            variables = variables.replace(",", " ").split()
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.field = field if isinstance(field, Field) else Field.parse(str(field))
        self.order = TermOrder(order)
        self.codec = MonomialCodec(len(self.variables), self.order)
        self._index = {v: i for i, v in enumerate(self.variables)}

    @property
    def ngens(self):
        return len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({' '.join(self.variables)}; {self.field.name}; {self.order.value})"

    def with_field(self, field):
        return PolyRing(self.variables, field, self.order)

    def with_order(self, order):
        return PolyRing(self.variables, self.field, order)

    # construction helpers
    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {0: self.field.one()})

    def gen(self, i):
        return Polynomial(self, {self.codec.var(i): self.field.one()})

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def var(self, name):
        return self.gen(self._index[name])

    def monomial(self, exps, coeff=1):
        c = self.field(coeff)
        return Polynomial(self, {self.codec.encode(tuple(exps)): c} if c else {})

    def from_terms(self, terms):
        """Build from an iterable of (coefficient, exponent tuple or Monomial)."""
        d = {}
        p = self.field.characteristic
        for c, m in terms:
            e = m.exponents if isinstance(m, Monomial) else tuple(m)
            k = self.codec.encode(e)
            v = d.get(k, 0) + self.field(c)
            if p:
                v %= p
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return Polynomial(self, d)

    def monomials_of_degree(self, d):
        """All exponent tuples of total degree d, in descending term order."""
        n = self.ngens
        out = []

        def rec(i, left, acc):
            if i == n - 1:
                out.append(tuple(acc + [left]))
                return
            for e in range(left, -1, -1):
                rec(i + 1, left - e, acc + [e])

        if d < 0:
            return []
        if n == 0:
            return [()] if d == 0 else []
        rec(0, d, [])
        keys = sorted((self.codec.encode(e) for e in out), reverse=True)
        return [self.codec.exps(k) for k in keys]

    def parse(self, text):
        return parse_polynomial(self, text)

    def parse_list(self, text):
        text = text.strip()
        if not text:
            return []
        return [self.parse(t) for t in _split_top_level(text)]

    def format_monomial_key(self, k):
        e = self.codec.exps(k)
        parts = []
        for name, x in zip(self.variables, e):
            if x == 1:
                parts.append(name)
            elif x:
                parts.append(f"{name}^{x}")
        return "*".join(parts)

    def format_coeff(self, c):
        p = self.field.characteristic
        if p and c > p // 2:
            return str(c - p)
        return str(c)


class Polynomial:
    """Immutable polynomial: a dict from packed monomial key to nonzero coefficient."""

    __slots__ = ("ring", "data")

    def __init__(self, ring, data):
        self.ring = ring
        self.data = data

    # basic queries
    def is_zero(self):
        return not self.data

    def __bool__(self):
        return bool(self.data)

    def __len__(self):
        return len(self.data)

    def lead_key(self):
        return max(self.data)

    def lm(self):
        return Monomial(self.ring.codec.exps(max(self.data)))

    def lc(self):
        return self.data[max(self.data)]

    def terms(self):
        """List of (coefficient, Monomial), strictly descending in the term order."""
        cod = self.ring.codec
        return [(self.data[k], Monomial(cod.exps(k))) for k in sorted(self.data, reverse=True)]

    def monomials(self):
        return [m for _, m in self.terms()]

    def coefficient(self, m):
        e = m.exponents if isinstance(m, Monomial) else tuple(m)
        return self.data.get(self.ring.codec.encode(e), self.ring.field.zero())

    def degree(self):
        if not self.data:
            return None
        cod = self.ring.codec
        return max(cod.degree(k) for k in self.data)

    def is_homogeneous(self):
        cod = self.ring.codec
        return len({cod.degree(k) for k in self.data}) <= 1

    def is_monomial(self):
        return len(self.data) == 1

    def is_constant(self):
        return all(k == 0 for k in self.data)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        c = self.ring.field(other)
        return Polynomial(self.ring, {0: c} if c else {})

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.characteristic
        d = dict(self.data)
        for k, c in other.data.items():
            v = d.get(k, 0) + c
            if p:
                v %= p
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {k: F.neg(c) for k, c in self.data.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            F = self.ring.field
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {k: F.mul(v, c) for k, v in self.data.items()})
        other = self._coerce(other)
        p = self.ring.field.characteristic
        d = {}
        for k1, c1 in self.data.items():
            for k2, c2 in other.data.items():
                k = k1 + k2
                v = d.get(k, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    d[k] = v
                else:
                    d.pop(k, None)
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def mul_monomial(self, m, c=1):
        e = m.exponents if isinstance(m, Monomial) else tuple(m)
        k0 = self.ring.codec.encode(e)
        F = self.ring.field
        c = F(c)
        return Polynomial(self.ring, {k + k0: F.mul(v, c) for k, v in self.data.items()} if c else {})

    def monic(self):
        if not self.data:
            return self
        return self * self.ring.field.inv(self.lc())

    def substitute(self, images):
        """Ring map x_i -> images[i]."""
        if len(images) != self.ring.ngens:
            raise ValueError("need one image per variable")
        target = images[0].ring if images else self.ring
        result = target.zero()
        cache = {}
        F = target.field
        for k, c in self.data.items():
            e = self.ring.codec.exps(k)
            term = target.one() * self.ring.field(c) if F == self.ring.field else target.one() * c
            for i, x in enumerate(e):
                if x:
                    key = (i, x)
                    if key not in cache:
                        cache[key] = images[i] ** x
                    term = term * cache[key]
            result = result + term
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.data == other.data
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.data.items())))

    def __str__(self):
        if not self.data:
            return "0"
        R = self.ring
        out = []
        for k in sorted(self.data, reverse=True):
            c = R.format_coeff(self.data[k])
            m = R.format_monomial_key(k)
            neg = c.startswith("-")
            mag = c[1:] if neg else c
            if m:
                body = m if mag == "1" else f"{mag}*{m}"
            else:
                body = mag
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


# --- parsing -------------------------------------------------------------

class ParseError(ValueError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.column = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.factor()
        while True:
            t = self.peek()
            if t[:2] == ("op", "*"):
                self.take()
                p = p * self.factor()
            elif t[:2] == ("op", "/"):
                self.take()
                d = self.factor()
                if not d.is_constant() or d.is_zero():
                    self.error("can only divide by a nonzero constant", t)
                p = p * self.ring.field.inv(d.data[0])
            elif t[0] in ("num", "name") or t[:2] == ("op", "("):
                # implicit multiplication such as 3x or 2(a+b)
                p = p * self.factor()
            else:
                return p

    def factor(self):
        b = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            t = self.take()
            if t[0] != "num":
                self.error("exponent must be a non-negative integer", t)
            b = b ** t[1]
        return b

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return self.ring.one() * t[1]
        if t[0] == "name":
            if t[1] not in self.ring._index:
                self.error(f"unknown variable {t[1]!r}", t)
            return self.ring.var(t[1])
        if t[:2] == ("op", "("):
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return p
        if t[:2] == ("op", "-"):
            return -self.factor()
        self.error(f"unexpected {t[1]!r}" if t[1] is not None else "unexpected end of input", t)


def parse_polynomial(ring, text):
    return _Parser(ring, text).parse()


def _split_top_level(text, sep=","):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_ring_description(text):
    """Parse ``vars: a b c`` / ``field: QQ | GF(p)`` / ``order: degrevlex`` lines.

    Returns the ring and a dict of the remaining ``name = generators`` lines.
    """
    variables, field, order = None, GF32003, TermOrder.DEGREVLEX
    defs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"(vars|variables|field|order)\s*:\s*(.*)$", line, re.I)
        if m:
            key, val = m.group(1).lower(), m.group(2)
            if key.startswith("var"):
                variables = val.replace(",", " ").split()
            elif key == "field":
                field = Field.parse(val)
            else:
                order = TermOrder.parse(val)
            continue
        m = re.match(r"([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*)$", line)
        if not m:
            raise ValueError(f"line {lineno}, column 1: expected 'key: value' or 'name = generators'")
        defs[m.group(1)] = m.group(2).strip()
    if variables is None:
        raise ValueError("ring description lacks a 'vars:' line")
    return PolyRing(variables, field, order), defs
