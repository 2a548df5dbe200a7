"""Multivariate polynomials over a :class:`~hhci.coeff.CoeffRing`.

Polynomials are stored as a dict from dense exponent tuples to nonzero
coefficients.  Printing and Groebner computations use graded reverse
lexicographic order unless told otherwise.
"""

from fractions import Fraction
from math import comb, prod

from .errors import DomainError, ParseError, UnknownVariable

__all__ = [
    "Poly", "NEG_INF", "grevlex_key", "lex_key", "parse_poly", "format_poly",
    "divided_partial", "content_ideal", "delta_quotient", "gcd_univariate",
    "divmod_univariate",
]

#: Degree of the zero polynomial.
NEG_INF = float("-inf")


def grevlex_key(e):
    """Sort key: larger key means larger monomial in grevlex (x_1 > x_2 > ...)."""
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e):
    """Lex order with the *last* variable largest (x_n > ... > x_1)."""
    return tuple(reversed(e))


class Poly:
    """Immutable polynomial in ``nvars`` variables."""

    __slots__ = ("ring", "nvars", "terms", "_hash")

    def __init__(self, ring, nvars, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = ring(c)
                if c:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    clean[e] = c
        self.ring = ring
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, nvars, terms):
        p = object.__new__(cls)
        p.ring, p.nvars, p.terms, p._hash = ring, nvars, terms, None
        return p

    @classmethod
    def zero(cls, ring, nvars):
        return cls._raw(ring, nvars, {})

    @classmethod
    def const(cls, ring, nvars, c):
        c = ring(c)
        return cls._raw(ring, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, ring, nvars):
        return cls.const(ring, nvars, 1)

    @classmethod
    def var(cls, ring, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(ring, nvars, {tuple(e): ring.one})

    @classmethod
    def monomial(cls, ring, e, c=1):
        return cls(ring, len(e), {tuple(e): c})

    # -- basic queries -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0,) * self.nvars}

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.ring.zero)

    def coeff(self, e):
        return self.terms.get(tuple(e), self.ring.zero)

    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=NEG_INF)

    def leading(self, key=grevlex_key):
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def sorted_terms(self, key=grevlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(self.ring, self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars or other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.ring, self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            x = ring(out.get(e, 0) + c)
            if x:
                out[e] = x
            else:
                out.pop(e, None)
        return Poly._raw(ring, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        return Poly._raw(ring, self.nvars, {e: ring(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        ring = self.ring
        c = ring(c)
        if not c:
            return Poly.zero(ring, self.nvars)
        out = {}
        for e, a in self.terms.items():
            x = ring(a * c)
            if x:
                out[e] = x
        return Poly._raw(ring, self.nvars, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        out = {}
        for e, c in acc.items():
            c = ring(c)
            if c:
                out[e] = c
        return Poly._raw(ring, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.ring, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, e, c=1):
        ring = self.ring
        out = {}
        for e1, a in self.terms.items():
            x = ring(a * c)
            if x:
                out[tuple(p + q for p, q in zip(e1, e))] = x
        return Poly._raw(ring, self.nvars, out)

    def map_ring(self, ring):
        """Reduce coefficients into another ring (e.g. Z -> GF(2))."""
        return Poly(ring, self.nvars, self.terms)

    # -- calculus ------------------------------------------------------------

    def derivative(self, i):
        """Ordinary first partial derivative in variable ``i``."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = out.get(tuple(d), 0) + c * e[i]
        return Poly(self.ring, self.nvars, out)

    def divided_partial(self, a):
        return divided_partial(self, a)

    # -- substitution ------------------------------------------------------

    def compose(self, images):
        """Substitute ``images[i]`` (Polys in a common ring) for variable i."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            raise ValueError("cannot compose a polynomial in zero variables")
        target = images[0]
        result = Poly.zero(target.ring, target.nvars)
        cache = {}
        for e, c in self.terms.items():
            term = Poly.const(target.ring, target.nvars, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    term = term * cache[(i, k)]
            result = result + term
        return result

    def __call__(self, *values):
        ring = self.ring
        total = ring.zero
        for e, c in self.terms.items():
            total += c * prod(v ** k for v, k in zip(values, e))
        return ring(total)

    # -- printing ------------------------------------------------------------

    def to_string(self, names=None):
        return format_poly(self, names)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.ring}, {format_poly(self)!r})"


def _default_names(n):
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def format_poly(f, names=None):
    """Canonical text for ``f``: grevlex-descending terms, ``*`` and ``^``."""
    names = list(names) if names is not None else _default_names(f.nvars)
    if not f.terms:
        return "0"
    pieces = []
    for e, c in f.sorted_terms():
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        neg = f.ring.tag in ("Q", "Z") and c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        pieces.append(("- " if neg else "+ ") + body)
    text = " ".join(pieces)
    if text.startswith("+ "):
        text = text[2:]
    elif text.startswith("- "):
        text = "-" + text[2:]
    return text


# ---------------------------------------------------------------------------
# parser


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
        elif ch == "−":  # unicode minus sign
            tokens.append(("-", "-", i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names, ring):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.index = {n: i for i, n in enumerate(names)}
        self.ring = ring
        self.nvars = len(names)

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            if op[0] == "*":
                value = value * self.unary()
            else:
                tok = self.take("int")
                if not self.ring.is_field:
                    raise ParseError(f"division needs field coefficients, not {self.ring}", op[2])
                if self.ring(tok[1]) == 0:
                    raise ParseError("division by zero", tok[2])
                value = value.scale(self.ring.inv(self.ring(tok[1])))
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            return -self.unary()
        if tok[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, value, position = tok
        if kind == "int":
            return Poly.const(self.ring, self.nvars, value)
        if kind == "name":
            if value not in self.index:
                raise UnknownVariable(value, position)
            nxt = self.peek()
            if nxt[0] in ("int", "name", "("):
                raise ParseError("implicit multiplication is not allowed", nxt[2])
            return Poly.var(self.ring, self.nvars, self.index[value])
        if kind == "(":
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(f"unexpected {value!r}" if value else "unexpected end of input", position)


def parse_poly(text, names, ring):
    """Parse polynomial text over ``ring`` in the declared variable ``names``.

    Grammar: integer literals, variable names, ``+ - * ^`` and parentheses.
    Exponents are non-negative integer literals.  Over a field a term may also
    be divided by an integer literal (``1/2*x``).

    >>> from hhci.coeff import ZZ
    >>> str(parse_poly("(x+1)^2 - x", ["x"], ZZ))
    'x^2 + x + 1'
    """
    names = list(names)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names")
    p = _Parser(text, names, ring)
    for a, b in zip(p.tokens, p.tokens[1:]):
        if a[0] in ("int", ")") and b[0] in ("name", "(", "int"):
            raise ParseError("implicit multiplication is not allowed", b[2])
    return p.parse()


# ---------------------------------------------------------------------------
# derivatives and one-variable tools


def divided_partial(f, a):
    """Divided partial derivative of ``f`` with respect to the multi-index ``a``.

    The monomial x^e maps to prod(binom(e_i, a_i)) * x^(e - a); binomials are
    taken over Z before mapping into the coefficient ring, which keeps the
    result meaningful in positive characteristic.
    """
    a = tuple(a)
    if len(a) != f.nvars:
        raise ValueError("multi-index length differs from number of variables")
    out = {}
    for e, c in f.terms.items():
        if any(x < y for x, y in zip(e, a)):
            continue
        b = prod(comb(x, y) for x, y in zip(e, a))
        d = tuple(x - y for x, y in zip(e, a))
        out[d] = out.get(d, 0) + c * b
    return Poly(f.ring, f.nvars, out)


def content_ideal(f):
    """Nonzero coefficients of a one-variable polynomial, highest degree first."""
    if f.nvars != 1:
        raise ValueError("content_ideal expects a polynomial in one variable")
    return [c for _, c in sorted(f.terms.items(), reverse=True)]


def delta_quotient(f):
    """The two-variable polynomial D with f(x2) - f(x1) = (x2 - x1) * D(x1, x2).

    Variable 0 of the result is x1 (x'), variable 1 is x2 (x'').
    """
    if f.nvars != 1:
        raise ValueError("delta_quotient expects a polynomial in one variable")
    out = {}
    for (k,), c in f.terms.items():
        for i in range(k):
            e = (k - 1 - i, i)
            out[e] = out.get(e, 0) + c
    return Poly(f.ring, 2, out)


def divmod_univariate(f, g):
    """Division with remainder by ``g`` whose leading coefficient is a unit."""
    if f.nvars != 1 or g.nvars != 1:
        raise ValueError("univariate division only")
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    (dg,), lc = g.leading()
    inv = ring.inv(lc)
    q = {}
    r = dict(f.terms)
    while r:
        (dr,) = max(r)
        if dr < dg:
            break
        c = ring(r[(dr,)] * inv)
        q[(dr - dg,)] = c
        for (k,), b in g.terms.items():
            e = (k + dr - dg,)
            x = ring(r.get(e, 0) - c * b)
            if x:
                r[e] = x
            else:
                r.pop(e, None)
    return Poly(ring, 1, q), Poly(ring, 1, r)


def monic(f):
    if not f:
        return f
    _, lc = f.leading()
    return f.scale(f.ring.inv(lc))


def gcd_univariate(f, g):
    """Monic gcd of two one-variable polynomials over Q or GF(p)."""
    if not f.ring.is_field:
        raise DomainError(f"gcd_univariate needs field coefficients, not {f.ring}")
    a, b = f, g
    while b:
        a, b = b, divmod_univariate(a, b)[1]
    return monic(a)
