"""Exact coefficient rings and the linear algebra kernels built on them.

Supported rings are Q, Z, Z/n and GF(p).  Ring elements are plain Python
values: ``int`` for Z, Z/n and GF(p) (residues in ``[0, n)``) and
``fractions.Fraction`` for Q.  A :class:`CoeffRing` instance reduces raw
arithmetic results back into canonical form via ``ring(value)``.

Everything that computes cohomology eventually calls :func:`cohomology_at`,
which dispatches to rank arithmetic over fields, Smith normal form over Z and
Howell forms over Z/n.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
import re

import numpy as np

from .errors import ComplexError, DomainError

__all__ = [
    "CoeffRing", "Rationals", "Integers", "IntegersModN", "PrimeField",
    "QQ", "ZZ", "Matrix", "ModuleInvariants", "smith_normal_form",
    "howell_form", "cohomology_at", "kernel", "rank", "in_column_span",
    "invariant_factor_chain", "direct_sum", "gcdex",
]


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def gcdex(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class CoeffRing:
    """One of Q, Z, Z/n or GF(p).

    ``tag`` is ``"Q"``, ``"Z"``, ``"Zmod"`` or ``"GF"``; ``modulus`` is n or p
    for the last two and 0 otherwise.
    """

    tag: str
    modulus: int = 0

    def __post_init__(self):
        if self.tag == "Zmod":
            if self.modulus < 2:
                raise DomainError(f"Z/n needs n >= 2, got {self.modulus}")
        elif self.tag == "GF":
            if not _is_prime(self.modulus):
                raise DomainError(f"GF(p) needs p prime, got {self.modulus}")
        elif self.tag in ("Q", "Z"):
            if self.modulus:
                raise DomainError(f"{self.tag} takes no modulus")
        else:
            raise DomainError(f"unknown ring tag {self.tag!r}")

    @classmethod
    def parse(cls, text):
        """Parse ``"Q"``, ``"Z"``, ``"Z/<n>"`` or ``"GF(<p>)"``."""
        s = text.strip().replace(" ", "")
        if s in ("Q", "QQ"):
            return Rationals()
        if s in ("Z", "ZZ"):
            return Integers()
        m = re.fullmatch(r"Z/(\d+)(Z)?", s)
        if m:
            return IntegersModN(int(m.group(1)))
        m = re.fullmatch(r"GF\((\d+)\)", s)
        if m:
            return PrimeField(int(m.group(1)))
        raise DomainError(f"cannot parse coefficient ring {text!r}")

    def __str__(self):
        if self.tag == "Zmod":
            return f"Z/{self.modulus}"
        if self.tag == "GF":
            return f"GF({self.modulus})"
        return self.tag

    @property
    def is_field(self):
        return self.tag in ("Q", "GF")

    @property
    def is_modular(self):
        return self.tag in ("Zmod", "GF")

    @property
    def characteristic(self):
        return self.modulus

    @property
    def zero(self):
        return Fraction(0) if self.tag == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.tag == "Q" else 1

    def __call__(self, x):
        """Coerce an ``int`` or ``Fraction`` into canonical form."""
        if self.tag == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                x = x.numerator
            elif self.is_modular:
                return x.numerator * self.inv(x.denominator % self.modulus) % self.modulus
            else:
                raise DomainError(f"{x} is not an integer")
        if self.is_modular:
            return x % self.modulus
        return int(x)

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        if self.tag == "Q":
            return x != 0
        if self.tag == "Z":
            return x in (1, -1)
        return gcd(x, self.modulus) == 1

    def inv(self, x):
        if self.tag == "Q":
            if x == 0:
                raise ZeroDivisionError("inverse of 0 in Q")
            return 1 / Fraction(x)
        if self.tag == "Z":
            if x in (1, -1):
                return x
            raise DomainError(f"{x} is not a unit in Z")
        g, s, _ = gcdex(x % self.modulus, self.modulus)
        if g != 1:
            raise DomainError(f"{x} is not a unit in {self}")
        return s % self.modulus

    def format(self, x):
        return str(x)


def Rationals():
    return CoeffRing("Q")


def Integers():
    return CoeffRing("Z")


def IntegersModN(n):
    return CoeffRing("Zmod", n)


def PrimeField(p):
    return CoeffRing("GF", p)


QQ = Rationals()
ZZ = Integers()


class Matrix:
    """Dense row-major matrix with entries in a :class:`CoeffRing`.

    Shapes with zero rows or columns are allowed and keep their dimensions.
    """

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows, ncols=None):
        rows = [[ring(x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def _raw(cls, ring, rows, ncols):
        m = object.__new__(cls)
        m.ring, m.rows, m.nrows, m.ncols = ring, rows, len(rows), ncols
        return m

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls._raw(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n):
        m = cls.zeros(ring, n, n)
        for i in range(n):
            m.rows[i][i] = ring.one
        return m

    @classmethod
    def diag(cls, ring, entries, nrows=None, ncols=None):
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        m = cls.zeros(ring, nrows, ncols)
        for i, e in enumerate(entries):
            m.rows[i][i] = ring(e)
        return m

    @classmethod
    def from_columns(cls, ring, columns, nrows):
        rows = [[ring.zero] * len(columns) for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in enumerate(col):
                rows[i][j] = ring(x)
        return cls._raw(ring, rows, len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self):
        return [list(r) for r in self.rows]

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Matrix._raw(self.ring, rows, self.nrows)

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and self.rows == other.rows)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ring = self.ring
        out = []
        for row in self.rows:
            acc = [0] * other.ncols
            for k, a in enumerate(row):
                if a:
                    orow = other.rows[k]
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append([ring(x) for x in acc])
        return Matrix._raw(ring, out, other.ncols)

    def hstack(self, other):
        return Matrix._raw(self.ring, [a + b for a, b in zip(self.rows, other.rows)],
                           self.ncols + other.ncols)

    def __repr__(self):
        return f"Matrix({self.ring}, {self.rows!r})"


# ---------------------------------------------------------------------------
# Integers: Smith normal form, Hermite rows, elementary divisors


def smith_normal_form(m):
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` over Z.

    ``U`` and ``V`` are unimodular; ``D`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...``.
    """
    if m.ring.tag != "Z":
        raise DomainError("smith_normal_form expects an integer matrix")
    r, c = m.shape
    A = [list(row) for row in m.rows]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            # a nonzero remainder is smaller than the pivot: move it in
            small = None
            for i in range(t + 1, r):
                if A[i][t]:
                    small = ("r", i)
                    break
            if small is None:
                for j in range(t + 1, c):
                    if A[t][j]:
                        small = ("c", j)
                        break
            if small is not None:
                if small[0] == "r":
                    swap_rows(t, small[1])
                else:
                    swap_cols(t, small[1])
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return (Matrix._raw(m.ring, U, r), Matrix._raw(m.ring, A, c),
            Matrix._raw(m.ring, V, c))


def _sparse_rows(rows):
    return [{j: x for j, x in enumerate(r) if x} for r in rows]


def _integer_diagonal(rows):
    """Nonzero diagonal entries of some diagonal form of an integer matrix.

    ``rows`` is a list of ``{column: value}`` dicts.  The entries returned are
    positive but not yet a divisibility chain; their count is the rank.
    """
    R = {i: dict(r) for i, r in enumerate(rows) if r}
    cols = defaultdict(set)
    for i, r in R.items():
        for j in r:
            cols[j].add(i)

    def axpy(i, q, src):  # R[i] -= q * src
        r = R[i]
        for j, v in src.items():
            x = r.get(j, 0) - q * v
            if x:
                if j not in r:
                    cols[j].add(i)
                r[j] = x
            elif j in r:
                del r[j]
                cols[j].discard(i)

    diag = []
    while R:
        best = None
        for i, r in R.items():
            for j, v in r.items():
                if best is None or abs(v) < best[0]:
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best[0] == 1:
                break
        _, pi, pc = best
        while True:
            prow = R[pi]
            p = prow[pc]
            dirty = False
            for i in list(cols[pc]):
                if i == pi:
                    continue
                axpy(i, R[i][pc] // p, prow)
                if pc in R[i]:
                    dirty = True
            if dirty:
                pi = min(cols[pc], key=lambda i: abs(R[i][pc]))
                continue
            for j in list(prow):
                if j != pc:
                    x = prow[j] - (prow[j] // p) * p
                    if x:
                        prow[j] = x
                    else:
                        del prow[j]
                        cols[j].discard(pi)
            if len(prow) > 1:
                pc = min(prow, key=lambda j: abs(prow[j]))
                continue
            break
        diag.append(abs(p))
        del R[pi]
        cols[pc].discard(pi)
        for i in [i for i, r in R.items() if not r]:
            del R[i]
    return diag


def invariant_factor_chain(values):
    """Normalize positive integers into a divisibility chain, dropping 1s."""
    ds = [abs(d) for d in values if abs(d) != 1]
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = gcd(ds[i], ds[j])
            if g:
                ds[i], ds[j] = g, ds[i] * ds[j] // g
    return [d for d in ds if d != 1]


def _hnf_rows(rows):
    """Row-echelon (Hermite) form over Z of a list of integer row vectors."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for j in range(ncols):
        if r >= len(rows):
            break
        for i in range(r + 1, len(rows)):
            b = rows[i][j]
            if not b:
                continue
            a = rows[r][j]
            g, s, t = gcdex(a, b)
            u, v = -b // g, a // g
            rr, ri = rows[r], rows[i]
            rows[r] = [s * x + t * y for x, y in zip(rr, ri)]
            rows[i] = [u * x + v * y for x, y in zip(rr, ri)]
        p = rows[r][j]
        if not p:
            continue
        if p < 0:
            rows[r] = [-x for x in rows[r]]
            p = -p
        for i in range(r):
            q = rows[i][j] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return [row for row in rows[:r] if any(row)]


# ---------------------------------------------------------------------------
# Z/n: Howell form


def _normalizing_unit(a, n):
    """A unit u mod n with ``u*a == gcd(a, n) (mod n)``."""
    g = gcd(a, n)
    a1, n1 = a // g, n // g
    u0 = gcdex(a1 % n1, n1)[1] % n1 if n1 > 1 else 0
    for k in range(g + 1):
        u = u0 + k * n1
        if gcd(u, n) == 1:
            return u % n
    raise AssertionError("no normalizing unit found")


def _howell_rows(rows, ncols, n):
    rows = [[x % n for x in r] for r in rows]
    r = 0
    for j in range(ncols):
        if r >= len(rows):
            break
        for i in range(r + 1, len(rows)):
            b = rows[i][j]
            if not b:
                continue
            a = rows[r][j]
            g, s, t = gcdex(a, b)
            u, v = -b // g, a // g
            rr, ri = rows[r], rows[i]
            rows[r] = [(s * x + t * y) % n for x, y in zip(rr, ri)]
            rows[i] = [(u * x + v * y) % n for x, y in zip(rr, ri)]
        a = rows[r][j]
        if not a:
            continue
        unit = _normalizing_unit(a, n)
        if unit != 1:
            rows[r] = [unit * x % n for x in rows[r]]
        p = rows[r][j]
        for i in range(r):
            q = rows[i][j] // p
            if q:
                rows[i] = [(x - q * y) % n for x, y in zip(rows[i], rows[r])]
        ann = [(n // p) * x % n for x in rows[r]]
        if any(ann):
            rows.append(ann)
        r += 1
    return [row for row in rows[:r] if any(row)]


def howell_form(m):
    """Howell normal form of ``m`` over Z/n (or GF(p)).

    Nonzero rows only, echelon shaped; each pivot is a divisor of n, entries
    above a pivot are reduced below it, and the rows with k leading zeros span
    every vector of the row space with k leading zeros.  Two matrices with the
    same row span have the same Howell form.
    """
    if not m.ring.is_modular:
        raise DomainError("howell_form expects a matrix over Z/n or GF(p)")
    rows = _howell_rows(m.rows, m.ncols, m.ring.modulus)
    return Matrix._raw(m.ring, rows, m.ncols)


def _howell_reduce(vec, hrows, n):
    v = [x % n for x in vec]
    for row in hrows:
        j = next(k for k, x in enumerate(row) if x)
        q, rem = divmod(v[j], row[j])
        if rem:
            return v
        if q:
            v = [(x - q * y) % n for x, y in zip(v, row)]
    return v


# ---------------------------------------------------------------------------
# Fields


def _field_rref(rows, ring):
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][j])
        rows[r] = [ring(x * inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j]:
                f = rows[i][j]
                rows[i] = [ring(x - f * y) for x, y in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _rank_mod_p(rows, ncols, p):
    if not rows or not ncols:
        return 0
    dtype = np.int64 if p < 2 ** 31 else object
    A = np.array(rows, dtype=dtype) % p
    nrows = A.shape[0]
    r = 0
    for j in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, j])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, j]), -1, p)
        A[r] = A[r] * inv % p
        below = r + 1 + np.nonzero(A[r + 1:, j])[0]
        if below.size:
            A[below] = (A[below] - np.outer(A[below, j], A[r])) % p
        r += 1
    return r


def _rank_rational(rows):
    R = [dict((j, Fraction(x)) for j, x in enumerate(r) if x) for r in rows]
    R = [r for r in R if r]
    rank = 0
    while R:
        prow = min(R, key=len)
        R.remove(prow)
        pc = min(prow)
        pv = prow[pc]
        rank += 1
        nxt = []
        for r in R:
            if pc in r:
                f = r[pc] / pv
                for j, v in prow.items():
                    x = r.get(j, 0) - f * v
                    if x:
                        r[j] = x
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        R = nxt
    return rank


def rank(m):
    """Rank of a matrix over a field or over Z."""
    ring = m.ring
    if ring.tag == "GF":
        return _rank_mod_p(m.rows, m.ncols, ring.modulus)
    if ring.tag == "Q":
        return _rank_rational(m.rows)
    if ring.tag == "Z":
        return len(_integer_diagonal(_sparse_rows(m.rows)))
    raise DomainError("rank is not defined over Z/n; use howell_form")


def kernel(m):
    """Matrix whose columns generate ``{v : m @ v == 0}``.

    Over fields and Z the columns form a basis; over Z/n they generate.
    """
    ring = m.ring
    c = m.ncols
    if ring.is_field:
        rows, pivots = _field_rref(m.rows, ring) if m.nrows else ([], [])
        free = [j for j in range(c) if j not in pivots]
        cols = []
        for fj in free:
            v = [ring.zero] * c
            v[fj] = ring.one
            for row, pj in zip(rows, pivots):
                v[pj] = ring(-row[fj])
            cols.append(v)
        return Matrix.from_columns(ring, cols, c)
    if ring.tag == "Z":
        _, D, V = smith_normal_form(m)
        nonzero = sum(1 for i in range(min(D.shape)) if D.rows[i][i])
        cols = [V.column(j) for j in range(nonzero, c)]
        return Matrix.from_columns(ring, cols, c)
    n = ring.modulus
    aug = [list(col) + [int(i == k) for k in range(c)]
           for i, col in enumerate(m.transpose().rows)] if c else []
    h = _howell_rows(aug, m.nrows + c, n) if aug else []
    cols = [row[m.nrows:] for row in h if not any(row[:m.nrows])]
    return Matrix.from_columns(ring, cols, c)


def in_column_span(m, v):
    """Decide whether the vector ``v`` lies in the column span of ``m``."""
    ring = m.ring
    v = [ring(x) for x in v]
    if not any(v):
        return True
    if m.ncols == 0:
        return False
    if ring.is_field:
        aug = Matrix._raw(ring, [row + [x] for row, x in zip(m.rows, v)], m.ncols + 1)
        return rank(aug) == rank(m)
    cols = m.transpose().rows
    if ring.tag == "Z":
        h = _hnf_rows(cols)
        w = list(v)
        for row in h:
            j = next(k for k, x in enumerate(row) if x)
            q, rem = divmod(w[j], row[j])
            if rem:
                return False
            w = [x - q * y for x, y in zip(w, row)]
        return not any(w)
    n = ring.modulus
    return not any(_howell_reduce(v, _howell_rows(cols, m.nrows, n), n))


# ---------------------------------------------------------------------------
# Module invariants and cohomology


@dataclass(frozen=True)
class ModuleInvariants:
    """A finitely generated K-module as ``K^free_rank`` plus cyclic torsion.

    Over Z a torsion entry d stands for Z/d; over Z/n it stands for
    (Z/n)/(d) with d a proper divisor of n.  Fields have no torsion.
    """

    free_rank: int
    torsion: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": [str(d) for d in self.torsion]}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"K^{self.free_rank}")
        parts.extend(f"K/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _invariants_from_factors(ring, factors):
    """Invariants of ``⊕ K/(e)`` for integers e (0 meaning a free summand over Z)."""
    if ring.is_field:
        return ModuleInvariants(sum(1 for e in factors if e == 0))
    if ring.tag == "Z":
        free = sum(1 for e in factors if e == 0)
        return ModuleInvariants(free, tuple(invariant_factor_chain([e for e in factors if e])))
    n = ring.modulus
    chain = invariant_factor_chain([gcd(e, n) for e in factors])
    free = sum(1 for e in chain if e == n)
    return ModuleInvariants(free, tuple(e for e in chain if e != n))


def direct_sum(ring, *modules):
    """Canonical invariants of a direct sum of modules over ``ring``."""
    zero_factor = ring.modulus if ring.tag == "Zmod" else 0
    factors = []
    for mod in modules:
        factors.extend([zero_factor] * mod.free_rank)
        factors.extend(mod.torsion)
    return _invariants_from_factors(ring, factors)


def cohomology_at(d_in, d_out, check=True):
    """Invariants of ``ker(d_out) / im(d_in)``.

    ``d_in`` maps into the ambient free module (shape ``m x a``) and ``d_out``
    leaves it (shape ``b x m``), acting on column vectors.
    """
    ring = d_out.ring
    m = d_out.ncols
    if d_in.nrows != m:
        raise ComplexError(f"d_in has {d_in.nrows} rows but d_out has {m} columns")
    if check and d_in.ncols and d_out.nrows and not (d_out @ d_in).is_zero():
        raise ComplexError("d_out * d_in != 0")
    if ring.is_field:
        return ModuleInvariants(m - rank(d_out) - rank(d_in))
    if ring.tag == "Z":
        r_out = len(_integer_diagonal(_sparse_rows(d_out.rows)))
        diag = _integer_diagonal(_sparse_rows(d_in.rows))
        return ModuleInvariants(m - r_out - len(diag), tuple(invariant_factor_chain(diag)))
    return _cohomology_mod_n(d_in, d_out)


def _cohomology_mod_n(d_in, d_out):
    ring = d_out.ring
    n = ring.modulus
    m = d_out.ncols
    if m == 0:
        return ModuleInvariants(0)
    # kernel generators over Z/n from the Howell form of [d_out^T | I]
    ker = kernel(d_out).transpose().rows
    # lift to lattices in Z^m that contain n Z^m; H = L_ker / L_im
    scaled = [[n * int(i == j) for j in range(m)] for i in range(m)]
    basis = _hnf_rows(ker + scaled)
    assert len(basis) == m
    im_gens = [list(col) for col in d_in.transpose().rows] + scaled
    coords = []
    for g in im_gens:
        w = list(g)
        x = []
        for row in basis:
            j = next(k for k, v in enumerate(row) if v)
            q, rem = divmod(w[j], row[j])
            if rem:
                raise ComplexError("image is not contained in the kernel")
            x.append(q)
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        assert not any(w)
        coords.append(x)
    diag = _integer_diagonal(_sparse_rows(coords))
    return _invariants_from_factors(ring, diag)
