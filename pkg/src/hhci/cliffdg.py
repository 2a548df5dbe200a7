"""The DG Clifford algebra A<t_1..t_n; s_1..s_c> and its cohomology.

Monomials are pairs ``(mask, sexp)``: ``mask`` is a bitset of t-indices,
read as the product of those t_i in increasing order, and ``sexp`` is the
exponent vector of the central s_j.  Degrees: t_i is 1, s_j is 2.

Products are normalized by sorting t-words with adjacent transpositions.
A descending pair t_a t_b (a > b) becomes -t_b t_a + B_ab, and an equal
pair t_a t_a contracts to Q_a; both corrections are linear in the s_j with
coefficients in A, so every rewrite strictly lowers the inversion count or
the word length.

The same engine serves the presentation model (tables from the Jacobian and
Hessian) and the adapted group-algebra model of :mod:`hhci.abelian`, which
just supplies different constant tables.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .algebra import regularity_status
from .calculus import derivation, hessian_q, is_derivation, jacobian, second_derivative_tables
from .coeff import Matrix, cohomology_at, direct_sum, in_column_span
from .errors import NotADerivation
from .poly import Poly

__all__ = [
    "CliffordModel", "CliffordElement", "GradedModule", "HodgeTable", "model_for",
    "clifford_mul", "differential", "hh", "hodge", "cup_1cochains",
    "cup_square_class", "DEFAULT_MAX_DEGREE",
]

DEFAULT_MAX_DEGREE = 8


def _bits(mask):
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _compositions(total, parts):
    """Exponent vectors of length ``parts`` summing to ``total``, in lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class CliffordModel:
    """Structure tables of a DG Clifford algebra over the algebra of ``pres``.

    ``jac[i][j]``, ``sq[i][j]`` and ``anti[(a, b)][j]`` (a < b) are A-elements:
    d(t_i) = sum_j jac[i][j] s_j, t_i^2 = sum_j sq[i][j] s_j and
    t_a t_b + t_b t_a = sum_j anti[(a, b)][j] s_j.
    """

    def __init__(self, pres, nt, ns, jac, sq, anti):
        self.pres = pres
        self.nt, self.ns = nt, ns
        self.jac = tuple(tuple(row) for row in jac)
        self.sq = tuple(tuple(row) for row in sq)
        self.anti = {k: tuple(v) for k, v in anti.items()}
        self._word_cache = {}
        self._mult_cache = {}

    @classmethod
    def from_presentation(cls, pres):
        n, c = pres.nvars, pres.ncodim
        J = jacobian(pres)
        sq, mixed = second_derivative_tables(pres)
        jac = [[J[j][i] for j in range(c)] for i in range(n)]
        return cls(pres, n, c, jac, [sq[i] for i in range(n)], mixed)

    # -- elements -----------------------------------------------------------

    @property
    def ring(self):
        return self.pres.ring

    def _zero_sexp(self):
        return (0,) * self.ns

    def scalar(self, a):
        if not isinstance(a, Poly):
            a = self.pres.const(a)
        return CliffordElement(self, {(0, self._zero_sexp()): self.pres.normal_form(a)})

    def t(self, i, coeff=1):
        return CliffordElement(self, {(1 << i, self._zero_sexp()): self._coeff(coeff)})

    def s(self, j, power=1, coeff=1):
        e = [0] * self.ns
        e[j] = power
        return CliffordElement(self, {(0, tuple(e)): self._coeff(coeff)})

    def monomial(self, mask, sexp, coeff=1):
        return CliffordElement(self, {(mask, tuple(sexp)): self._coeff(coeff)})

    def zero(self):
        return CliffordElement(self, {})

    def _coeff(self, a):
        if not isinstance(a, Poly):
            a = self.pres.const(a)
        return self.pres.normal_form(a)

    # -- multiplication -----------------------------------------------------

    def _word(self, word):
        """Normal form of the t-word ``word`` as {(mask, sexp): A-coefficient}."""
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if a >= b:
                break
        else:
            mask = 0
            for a in word:
                mask |= 1 << a
            result = {(mask, self._zero_sexp()): self.pres.const(1)}
            self._word_cache[word] = result
            return result
        rest = word[:k] + word[k + 2:]
        if a == b:
            result = self._times_s(self._word(rest), self.sq[a])
        else:
            swapped = self._word(word[:k] + (b, a) + word[k + 2:])
            result = {key: -v for key, v in swapped.items()}
            correction = self._times_s(self._word(rest), self.anti.get((b, a), ()))
            _accumulate(result, correction)
        self._word_cache[word] = result
        return result

    def _times_s(self, terms, coeffs):
        out = {}
        for j, a in enumerate(coeffs):
            if not a:
                continue
            for (mask, e), v in terms.items():
                e2 = list(e)
                e2[j] += 1
                key = (mask, tuple(e2))
                prod = self.pres.normal_form(a * v)
                if key in out:
                    prod = out[key] + prod
                if prod:
                    out[key] = prod
                else:
                    out.pop(key, None)
        return out

    def mask_product(self, m1, m2):
        key = (m1, m2)
        cached = self._mult_cache.get(key)
        if cached is None:
            cached = self._word(tuple(_bits(m1)) + tuple(_bits(m2)))
            self._mult_cache[key] = cached
        return cached

    def mul(self, u, v):
        pres = self.pres
        out = {}
        for (m1, e1), a1 in u.terms.items():
            for (m2, e2), a2 in v.terms.items():
                base = tuple(x + y for x, y in zip(e1, e2))
                a12 = a1 * a2
                for (m, e), c in self.mask_product(m1, m2).items():
                    key = (m, tuple(x + y for x, y in zip(base, e)))
                    val = pres.normal_form(a12 * c)
                    if key in out:
                        val = out[key] + val
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        return CliffordElement(self, out)

    # -- differential -------------------------------------------------------

    def d_monomial(self, mask, sexp):
        """d(t_mask s^sexp) as {(mask', sexp'): A-coefficient}."""
        out = {}
        for pos, i in enumerate(_bits(mask)):
            sign = -1 if pos % 2 else 1
            rest = mask & ~(1 << i)
            for j, a in enumerate(self.jac[i]):
                if a:
                    e = list(sexp)
                    e[j] += 1
                    key = (rest, tuple(e))
                    val = a.scale(sign)
                    if key in out:
                        val = out[key] + val
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        return out

    def d(self, u):
        pres = self.pres
        out = {}
        for (mask, e), a in u.terms.items():
            for key, c in self.d_monomial(mask, e).items():
                val = pres.normal_form(a * c)
                if key in out:
                    val = out[key] + val
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return CliffordElement(self, out)

    # -- matrices -----------------------------------------------------------

    def monomials(self, i, j):
        """Monomials of t-weight i and s-weight j."""
        if i < 0 or j < 0 or i > self.nt or (self.ns == 0 and j > 0):
            return []
        masks = sorted(sum(1 << b for b in c) for c in combinations(range(self.nt), i))
        sexps = list(_compositions(j, self.ns))
        return [(m, e) for e in sexps for m in masks]

    def degree_monomials(self, p):
        out = []
        for j in range(p // 2 + 1):
            out.extend(self.monomials(p - 2 * j, j))
        return out

    def _differential_matrix(self, src, dst):
        """Matrix of d from span(src monomials x K-basis) to span(dst ...)."""
        pres = self.pres
        r = pres.rank
        index = {mono: k for k, mono in enumerate(dst)}
        rows = [[pres.ring.zero] * (len(src) * r) for _ in range(len(dst) * r)]
        mult = {}
        for col, mono in enumerate(src):
            for key, a in self.d_monomial(*mono).items():
                row = index[key]
                if a not in mult:
                    mult[a] = pres.mult_matrix(a)
                block = mult[a].rows
                for x in range(r):
                    target = rows[row * r + x]
                    brow = block[x]
                    for y in range(r):
                        if brow[y]:
                            target[col * r + y] = brow[y]
        return Matrix._raw(pres.ring, rows, len(src) * r)

    def vector(self, u, monos):
        """K-coordinates of ``u`` on ``monos`` x K-basis."""
        pres = self.pres
        r = pres.rank
        index = {mono: k for k, mono in enumerate(monos)}
        v = [pres.ring.zero] * (len(monos) * r)
        for key, a in u.terms.items():
            base = index[key] * r
            for k, x in enumerate(pres.coords(a, reduced=True)):
                v[base + k] = x
        return v

    def cohomology(self, p):
        """H^p of the full degree-p piece."""
        d_in = self._differential_matrix(self.degree_monomials(p - 1), self.degree_monomials(p))
        d_out = self._differential_matrix(self.degree_monomials(p), self.degree_monomials(p + 1))
        return cohomology_at(d_in, d_out, check=False)

    def bidegree_cohomology(self, i, j):
        here = self.monomials(i, j)
        d_in = self._differential_matrix(self.monomials(i + 1, j - 1), here)
        d_out = self._differential_matrix(here, self.monomials(i - 1, j + 1))
        return cohomology_at(d_in, d_out, check=False)

    def is_coboundary(self, u):
        """Decide whether the homogeneous element ``u`` lies in the image of d."""
        p = u.degree()
        if p is None:
            return True
        d_in = self._differential_matrix(self.degree_monomials(p - 1), self.degree_monomials(p))
        return in_column_span(d_in, self.vector(u, self.degree_monomials(p)))


def _accumulate(out, terms):
    for key, v in terms.items():
        if key in out:
            v = out[key] + v
        if v:
            out[key] = v
        else:
            out.pop(key, None)


class CliffordElement:
    """Element of a Clifford model in normal form; supports + - * and ``d()``."""

    __slots__ = ("model", "terms")

    def __init__(self, model, terms):
        self.model = model
        self.terms = {k: v for k, v in terms.items() if v}

    def _lift(self, other):
        if isinstance(other, CliffordElement):
            if other.model is not self.model:
                raise ValueError("elements of different Clifford models")
            return other
        return self.model.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return CliffordElement(self.model, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.model, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return self.model.mul(self, self._lift(other))

    def __rmul__(self, other):
        return self.model.mul(self._lift(other), self)

    def __eq__(self, other):
        if isinstance(other, (int, Poly)):
            other = self.model.scalar(other)
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.model is other.model and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def d(self):
        return self.model.d(self)

    def degrees(self):
        return {bin(m).count("1") + 2 * sum(e) for m, e in self.terms}

    def degree(self):
        """Degree of a homogeneous element, ``None`` for zero."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else None

    def bidegrees(self):
        return {(bin(m).count("1"), sum(e)) for m, e in self.terms}

    def to_string(self):
        if not self.terms:
            return "0"
        pres = self.model.pres
        pieces = []
        for (mask, e), a in sorted(self.terms.items(), key=lambda kv: (-(bin(kv[0][0]).count("1") + 2 * sum(kv[0][1])), kv[0])):
            gens = [f"t{i + 1}" if self.model.nt > 1 else "t" for i in _bits(mask)]
            for j, k in enumerate(e):
                if k:
                    name = f"s{j + 1}" if self.model.ns > 1 else "s"
                    gens.append(name if k == 1 else f"{name}^{k}")
            coeff = pres.format(a) if pres.nvars else str(a.constant_term())
            if not gens:
                pieces.append(coeff)
            elif coeff == "1":
                pieces.append("*".join(gens))
            else:
                pieces.append(f"({coeff})*" + "*".join(gens))
        return " + ".join(pieces)

    __str__ = to_string

    def __repr__(self):
        return f"CliffordElement({self.to_string()})"


@lru_cache(maxsize=64)
def model_for(pres):
    """The (cached) Clifford model of a presentation."""
    return CliffordModel.from_presentation(pres)


def clifford_mul(u, v, pres=None):
    return u.model.mul(u, v)


def differential(u, pres=None):
    return u.model.d(u)


# ---------------------------------------------------------------------------
# graded results


@dataclass(frozen=True)
class GradedModule:
    """Per-degree invariants of a graded K-module plus provenance notes."""

    ring: object
    by_degree: dict
    assumptions: tuple = field(default=())

    def __getitem__(self, p):
        return self.by_degree[p]

    def degrees(self):
        return sorted(self.by_degree)

    def dims(self):
        """Free ranks in degree order (the dimensions over a field)."""
        return [self.by_degree[p].free_rank for p in self.degrees()]

    def torsion(self):
        return [list(self.by_degree[p].torsion) for p in self.degrees()]

    def to_json(self):
        out = {
            "ring": str(self.ring),
            "degrees": [{"degree": p, **self.by_degree[p].to_json()} for p in self.degrees()],
            "assumptions": list(self.assumptions),
        }
        if self.ring.is_field:
            out["dims"] = self.dims()
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedModule):
            return NotImplemented
        return self.ring == other.ring and self.by_degree == other.by_degree


@dataclass(frozen=True)
class HodgeTable:
    """Invariants of H^i(K)_j indexed by (t-weight i, s-weight j)."""

    ring: object
    entries: dict

    def total(self, p):
        """Direct sum of the entries with i + 2j = p."""
        parts = [m for (i, j), m in self.entries.items() if i + 2 * j == p]
        return direct_sum(self.ring, *parts)

    def to_json(self):
        return {
            "ring": str(self.ring),
            "entries": [{"i": i, "j": j, "degree": i + 2 * j, **m.to_json()}
                        for (i, j), m in sorted(self.entries.items(), key=lambda kv: (kv[0][0] + 2 * kv[0][1], kv[0][1]))],
        }


def _assumptions(pres):
    status = regularity_status(pres, assume=pres.assume_regular)
    notes = [f"A is free of rank {pres.rank} over {pres.ring}, so the Tor condition holds"]
    if status == "assumed":
        notes.append("regular sequence: assumed (not checkable over this coefficient ring)")
    else:
        notes.append(f"regular sequence: {status}")
    return tuple(notes)


def model_cohomology(model, max_degree, assumptions=()):
    by_degree = {p: model.cohomology(p) for p in range(max_degree + 1)}
    return GradedModule(model.ring, by_degree, tuple(assumptions))


def hh(pres, max_degree=DEFAULT_MAX_DEGREE):
    """HH^p(A/K) for 0 <= p <= max_degree as cohomology of the Clifford model."""
    pres.k_basis()  # raises InfiniteBasis early
    notes = _assumptions(pres)
    return model_cohomology(model_for(pres), max_degree, notes)


def hodge(pres, max_degree=DEFAULT_MAX_DEGREE):
    """The bigraded pieces H^i(K)_j for i + 2j <= max_degree.

    d maps bidegree (i, j) to (i - 1, j + 1), so each piece is computed from
    its own incoming and outgoing maps.
    """
    pres.k_basis()
    _assumptions(pres)
    model = model_for(pres)
    entries = {}
    for p in range(max_degree + 1):
        for j in range(p // 2 + 1):
            i = p - 2 * j
            if i <= model.nt and (j == 0 or model.ns):
                entries[(i, j)] = model.bidegree_cohomology(i, j)
    return HodgeTable(pres.ring, entries)


# ---------------------------------------------------------------------------
# cup products of 1-cochains


def cup_1cochains(fvals, gvals, pres):
    """Cup product of two 1-cochains given by their values on dx_1..dx_n.

    Returns ``(wedge, hess)``: ``wedge[a][b] = g_a f_b - f_a g_b`` and
    ``hess_j`` = sum over i <= k of (divided d^2 f_j/dx_i dx_k) f_i g_k.
    """
    from .calculus import cup_hessian

    f = derivation(pres, fvals)
    g = derivation(pres, gvals)
    n = pres.nvars
    wedge = tuple(tuple(pres.normal_form(g[a] * f[b] - f[a] * g[b]) for b in range(n))
                  for a in range(n))
    return wedge, cup_hessian(f, g, pres)


def one_cochain(D, pres):
    """The Clifford element sum a_i t_i."""
    model = model_for(pres)
    u = model.zero()
    for i, a in enumerate(derivation(pres, D)):
        if a:
            u = u + model.t(i, a)
    return u


def cup_square_class(D, pres):
    """The degree-2 cocycle sum_j q(D)_j s_j, checked against the Clifford square of D."""
    D = derivation(pres, D)
    if not is_derivation(D, pres):
        raise NotADerivation("D(f) != 0 for some relation f")
    model = model_for(pres)
    q = hessian_q(D, pres, check=False)
    expected = model.zero()
    for j, a in enumerate(q):
        if a:
            expected = expected + model.s(j, 1, a)
    u = one_cochain(D, pres)
    square = u * u
    if square != expected:
        raise AssertionError(f"Clifford square {square} differs from q(D) s = {expected}")
    if expected.d():
        raise AssertionError("square class is not a cocycle")
    return expected
