"""Presentations A = K[x_1..x_n]/(f_1..f_c) and what can be decided about them.

A :class:`Presentation` carries a normal-form strategy:

``GroebnerOverField``
    reduced Groebner basis under grevlex; Q and GF(p) only.
``Triangular``
    every relation has a distinct leading variable (its highest-index
    variable) whose top power is the only term of that degree and has a unit
    coefficient.  Reduction uses lex order with the last variable largest and
    is confluent over any coefficient ring because the leading monomials are
    pairwise coprime with unit coefficients.  Group algebras fall here.
``Univariate``
    one variable, one relation with unit leading coefficient.

Strategy preconditions are checked at construction but failures are only
raised when a normal form is requested, so that presentations like
``17x`` over Z can still be inspected by :func:`hci_check_univariate`.
"""

from enum import Enum
from functools import cached_property
from itertools import combinations, product
from math import gcd
import re

from .coeff import CoeffRing, Matrix, cohomology_at, kernel
from .errors import DomainError, InfiniteBasis, InputError, NotRegular, StrategyError
from .poly import Poly, content_ideal, grevlex_key, lex_key, parse_poly

__all__ = [
    "Presentation", "STRATEGIES", "normal_form", "groebner_basis", "k_basis",
    "is_regular_sequence", "regularity_status", "HCIStatus",
    "hci_check_univariate", "hci_report",
]

STRATEGIES = ("GroebnerOverField", "Triangular", "Univariate")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


# ---------------------------------------------------------------------------
# reduction and Buchberger on raw term dicts


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _reduce(terms, basis, key, ring):
    """Fully reduce ``terms`` by ``basis``, a list of (lead, terms) with lead coefficient 1."""
    terms = dict(terms)
    out = {}
    while terms:
        e = max(terms, key=key)
        c = terms.pop(e)
        for lead, g in basis:
            if _divides(lead, e):
                shift = tuple(x - y for x, y in zip(e, lead))
                for ge, gc in g.items():
                    if ge == lead:
                        continue
                    m = tuple(x + y for x, y in zip(ge, shift))
                    v = ring(terms.get(m, 0) - c * gc)
                    if v:
                        terms[m] = v
                    else:
                        terms.pop(m, None)
                break
        else:
            out[e] = c
    return out


def _make_monic(terms, key, ring):
    lead = max(terms, key=key)
    inv = ring.inv(terms[lead])
    return lead, {e: ring(c * inv) for e, c in terms.items()}


def _spoly(f, g, ring):
    (lf, tf), (lg, tg) = f, g
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    out = {}
    for e, c in tf.items():
        m = tuple(a + b for a, b in zip(e, sf))
        out[m] = out.get(m, 0) + c
    for e, c in tg.items():
        m = tuple(a + b for a, b in zip(e, sg))
        out[m] = out.get(m, 0) - c
    return {e: ring(c) for e, c in out.items() if ring(c)}


def _buchberger(polys, key, ring):
    """Reduced Groebner basis of term dicts over a field, sorted by leading monomial."""
    basis = []
    for t in polys:
        t = _reduce(t, basis, key, ring)
        if t:
            basis.append(_make_monic(t, key, ring))
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop()
        li, lj = basis[i][0], basis[j][0]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        r = _reduce(_spoly(basis[i], basis[j], ring), basis, key, ring)
        if r:
            basis.append(_make_monic(r, key, ring))
            k = len(basis) - 1
            pairs.extend((a, k) for a in range(k))
    # minimalize, then interreduce
    minimal = []
    for i, (lead, t) in enumerate(basis):
        if any(_divides(l2, lead) and (l2 != lead or j < i)
               for j, (l2, _) in enumerate(basis) if j != i):
            continue
        minimal.append((lead, t))
    reduced = []
    for lead, t in minimal:
        others = [g for g in minimal if g[0] != lead]
        tail = _reduce({e: c for e, c in t.items() if e != lead}, others, key, ring)
        tail[lead] = ring.one
        reduced.append((lead, tail))
    reduced.sort(key=lambda g: key(g[0]))
    return reduced


# ---------------------------------------------------------------------------
# presentations


class Presentation:
    """Immutable presentation of a commutative K-algebra A = P/I."""

    def __init__(self, ring, vars, relations, strategy=None, assume_regular=False):
        if isinstance(ring, str):
            ring = CoeffRing.parse(ring)
        names = tuple(vars)
        for name in names:
            if not isinstance(name, str) or not _NAME.match(name):
                raise InputError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise InputError("duplicate variable names")
        rels = []
        for k, r in enumerate(relations):
            if isinstance(r, str):
                r = parse_poly(r, names, ring)
            elif not isinstance(r, Poly) or r.nvars != len(names) or r.ring != ring:
                raise InputError(f"relation {k} is not a polynomial in {list(names)} over {ring}")
            if not r:
                raise InputError(f"relation {k} is zero")
            rels.append(r)
        self.ring = ring
        self.vars = names
        self.relations = tuple(rels)
        self.assume_regular = bool(assume_regular)
        if strategy is None:
            strategy = self._default_strategy()
        if strategy not in STRATEGIES:
            raise InputError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
        self.strategy = strategy
        self._key = grevlex_key if strategy == "GroebnerOverField" else lex_key
        self._basis, self._error = self._build()

    @classmethod
    def from_json(cls, data):
        """Build from ``{"ring", "vars", "relations", "assume_regular"}``."""
        if not isinstance(data, dict):
            raise InputError("presentation must be a JSON object")
        missing = {"ring", "vars", "relations"} - set(data)
        if missing:
            raise InputError(f"presentation is missing {sorted(missing)}")
        unknown = set(data) - {"ring", "vars", "relations", "assume_regular", "strategy"}
        if unknown:
            raise InputError(f"unknown presentation keys {sorted(unknown)}")
        if not isinstance(data["vars"], list) or not isinstance(data["relations"], list):
            raise InputError("'vars' and 'relations' must be lists")
        if not all(isinstance(r, str) for r in data["relations"]):
            raise InputError("relations must be strings")
        try:
            ring = CoeffRing.parse(data["ring"])
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        return cls(ring, data["vars"], data["relations"], data.get("strategy"),
                   data.get("assume_regular", False))

    def to_json(self):
        return {
            "ring": str(self.ring),
            "vars": list(self.vars),
            "relations": [self.format(r) for r in self.relations],
            "assume_regular": self.assume_regular,
        }

    @property
    def nvars(self):
        return len(self.vars)

    @property
    def ncodim(self):
        return len(self.relations)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.ring, self.vars, self.relations, self.strategy, self.assume_regular) == \
            (other.ring, other.vars, other.relations, other.strategy, other.assume_regular)

    def __hash__(self):
        return hash((self.ring, self.vars, self.relations, self.strategy))

    def __repr__(self):
        rels = ", ".join(self.format(r) for r in self.relations)
        return f"Presentation({self.ring}[{', '.join(self.vars)}]/({rels}), {self.strategy})"

    # -- construction helpers -------------------------------------------------

    def _default_strategy(self):
        n, c = self.nvars, self.ncodim
        if n == 1 and c == 1 and self.ring.is_unit(self.relations[0].leading()[1]):
            return "Univariate"
        return "GroebnerOverField" if self.ring.is_field else "Triangular"

    def _build(self):
        ring, key = self.ring, self._key
        if self.strategy == "GroebnerOverField":
            if not ring.is_field:
                return None, StrategyError(f"GroebnerOverField needs field coefficients, not {ring}")
            return _buchberger([r.terms for r in self.relations], key, ring), None
        if self.strategy == "Univariate":
            if self.nvars != 1 or self.ncodim != 1:
                return None, StrategyError("Univariate needs one variable and one relation")
            f = self.relations[0]
            if not ring.is_unit(f.leading()[1]):
                return None, StrategyError(f"leading coefficient of {self.format(f)} is not a unit in {ring}")
            return [_make_monic(f.terms, key, ring)], None
        basis, used = [], set()
        for f in self.relations:
            live = [i for i in range(self.nvars) if f.degree_in(i) > 0]
            if not live:
                return None, StrategyError(f"constant relation {self.format(f)} is not triangular")
            v = live[-1]
            d = f.degree_in(v)
            top = [(e, c) for e, c in f.terms.items() if e[v] == d]
            pure = tuple(d if i == v else 0 for i in range(self.nvars))
            if len(top) != 1 or top[0][0] != pure or not ring.is_unit(top[0][1]):
                return None, StrategyError(
                    f"relation {self.format(f)} does not have a unit pure power of {self.vars[v]} "
                    "as its only top-degree term")
            if v in used:
                return None, StrategyError(f"two relations share the leading variable {self.vars[v]}")
            used.add(v)
            basis.append(_make_monic(f.terms, key, ring))
        return basis, None

    # -- element helpers ------------------------------------------------------

    def poly(self, text):
        return parse_poly(text, self.vars, self.ring)

    def const(self, c):
        return Poly.const(self.ring, self.nvars, c)

    def var(self, i):
        return Poly.var(self.ring, self.nvars, i)

    def format(self, f):
        return f.to_string(self.vars)

    def normal_form(self, g):
        if self._error is not None:
            raise self._error
        if g.nvars != self.nvars or g.ring != self.ring:
            raise ValueError("polynomial does not belong to this presentation")
        return Poly._raw(self.ring, self.nvars, _reduce(g.terms, self._basis, self._key, self.ring))

    def mul(self, a, b):
        return self.normal_form(a * b)

    @property
    def reduction_basis(self):
        if self._error is not None:
            raise self._error
        return [Poly._raw(self.ring, self.nvars, t) for _, t in self._basis]

    # -- finite free structure ------------------------------------------------

    @cached_property
    def _k_basis(self):
        if self._error is not None:
            raise self._error
        leads = [lead for lead, _ in self._basis]
        bounds = []
        for i in range(self.nvars):
            powers = [l[i] for l in leads if all(x == 0 for j, x in enumerate(l) if j != i)]
            if not powers:
                raise InfiniteBasis(f"no relation bounds the powers of {self.vars[i]}")
            bounds.append(min(powers))
        mons = [e for e in product(*(range(b) for b in bounds))
                if not any(_divides(l, e) for l in leads)]
        mons.sort(key=grevlex_key)
        return tuple(mons)

    def k_basis(self):
        """Standard monomials (exponent tuples) in increasing grevlex order."""
        return list(self._k_basis)

    @cached_property
    def _k_index(self):
        return {e: i for i, e in enumerate(self._k_basis)}

    @property
    def rank(self):
        return len(self._k_basis)

    def coords(self, g, reduced=False):
        """Coordinates of ``g`` in the K-basis of A."""
        if not reduced:
            g = self.normal_form(g)
        v = [self.ring.zero] * self.rank
        index = self._k_index
        for e, c in g.terms.items():
            v[index[e]] = c
        return v

    def from_coords(self, v):
        return Poly._raw(self.ring, self.nvars,
                         {e: self.ring(c) for e, c in zip(self._k_basis, v) if self.ring(c)})

    def basis_element(self, i):
        return Poly.monomial(self.ring, self._k_basis[i])

    def mult_matrix(self, a):
        """Matrix of multiplication by ``a`` on the K-basis (acting on columns)."""
        cols = [self.coords(a.mul_monomial(e)) for e in self._k_basis]
        return Matrix.from_columns(self.ring, cols, self.rank)


def normal_form(g, pres):
    """Canonical representative of ``g`` modulo the relations of ``pres``."""
    return pres.normal_form(g)


def groebner_basis(pres):
    """Reduced grevlex Groebner basis of the relation ideal (fields only)."""
    if not pres.ring.is_field:
        raise DomainError(f"Groebner bases are only computed over fields, not {pres.ring}")
    if pres.strategy == "GroebnerOverField":
        return pres.reduction_basis
    g = _buchberger([r.terms for r in pres.relations], grevlex_key, pres.ring)
    return [Poly._raw(pres.ring, pres.nvars, t) for _, t in g]


def k_basis(pres):
    return pres.k_basis()


# ---------------------------------------------------------------------------
# regular sequences


def _colon_is_trivial(previous, f, ring):
    """Decide ``(previous : f) == (previous)`` over a field.

    The intersection (previous) ∩ (f) comes from eliminating ``w`` out of
    ``w*previous + (1-w)*f``; dividing its generators by f gives the colon.
    """
    n = f.nvars
    if not previous:
        return bool(f)
    key = lambda e: (e[n], grevlex_key(e[:n]))  # noqa: E731  (w-block first)
    lifted = [{e + (1,): c for e, c in g.terms.items()} for g in previous]
    lifted.append({**{e + (0,): c for e, c in f.terms.items()},
                   **{e + (1,): ring(-c) for e, c in f.terms.items()}})
    elim = _buchberger(lifted, key, ring)
    inter = [t for lead, t in elim if lead[n] == 0]
    base = _buchberger([g.terms for g in previous], grevlex_key, ring)
    fmonic = [_make_monic(f.terms, grevlex_key, ring)]
    scale = ring.inv(f.leading(grevlex_key)[1])
    for t in inter:
        t = {e[:n]: c for e, c in t.items()}
        q = _exact_quotient(t, fmonic[0], ring)
        q = {e: ring(c * scale) for e, c in q.items()}
        if _reduce(q, base, grevlex_key, ring):
            return False
    return True


def _exact_quotient(terms, divisor, ring):
    lead, g = divisor
    terms = dict(terms)
    q = {}
    while terms:
        e = max(terms, key=grevlex_key)
        c = terms.pop(e)
        if not _divides(lead, e):
            raise AssertionError("division is not exact")
        shift = tuple(x - y for x, y in zip(e, lead))
        q[shift] = c
        for ge, gc in g.items():
            if ge == lead:
                continue
            m = tuple(x + y for x, y in zip(ge, shift))
            v = ring(terms.get(m, 0) - c * gc)
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
    return q


def _content_is_faithful(f):
    """McCoy: f is a nonzerodivisor in R[x] iff its content has zero annihilator."""
    ring = f.ring
    if ring.is_field or ring.tag == "Z":
        return bool(f)
    g = ring.modulus
    for c in f.terms.values():
        g = gcd(g, c)
    return g == 1


def regularity_status(pres, assume=False):
    """How the regular-sequence hypothesis holds: 'verified', 'certified' or 'assumed'.

    Raises :class:`NotRegular` when the check runs and fails, and
    :class:`StrategyError` when no check applies and nothing was assumed.
    """
    ring, rels = pres.ring, pres.relations
    if ring.is_field:
        for j, f in enumerate(rels):
            if not _colon_is_trivial(list(rels[:j]), f, ring):
                raise NotRegular(f"relation {j + 1} is a zero divisor modulo the earlier ones")
        return "verified"
    if len(rels) <= 1:
        if rels and not _content_is_faithful(rels[0]):
            raise NotRegular(f"{pres.format(rels[0])} is a zero divisor (content has nonzero annihilator)")
        return "verified"
    if pres.strategy == "Triangular" and pres._error is None:
        return "certified"
    if assume or pres.assume_regular:
        return "assumed"
    raise StrategyError(f"cannot decide regularity over {ring} for this presentation; "
                        "set assume_regular to proceed")


def is_regular_sequence(pres, assume=False):
    """True iff each relation is a nonzerodivisor modulo the previous ones."""
    try:
        regularity_status(pres, assume)
    except NotRegular:
        return False
    return True


# ---------------------------------------------------------------------------
# homological complete intersection test for one relation in one variable


class HCIStatus(str, Enum):
    HCI = "HCI"
    NotHCI = "NotHCI"
    ZeroDivisor = "ZeroDivisor"


def _content_ext(ring, gens):
    """Hom and Ext^1 of K/(gens) into K, from the free resolution start K^m -> K^k -> K."""
    d1 = Matrix(ring, [gens])
    syz = kernel(d1)
    # dualize: K -> K^k -> K^m, acting on columns
    d1t = d1.transpose()
    d2t = syz.transpose()
    hom = cohomology_at(Matrix.zeros(ring, 1, 0), d1t)
    ext1 = cohomology_at(d1t, d2t)
    return hom, ext1


def hci_report(pres):
    """``(status, reason)`` for a one-variable, one-relation presentation."""
    if pres.nvars != 1 or pres.ncodim != 1:
        raise InputError("the HCI check needs one variable and one relation")
    f = pres.relations[0]
    ring = pres.ring
    if ring.is_field:
        return HCIStatus.HCI, "nonzero polynomial over a field"
    gens = content_ideal(f)
    hom, ext1 = _content_ext(ring, gens)
    if not hom.is_zero:
        return HCIStatus.ZeroDivisor, f"content annihilator is nonzero ({hom})"
    if not ext1.is_zero:
        return HCIStatus.NotHCI, "content grade 1"
    return HCIStatus.HCI, "content grade at least 2"


def hci_check_univariate(pres):
    return hci_report(pres)[0]
