"""Brute-force Hochschild cohomology from the normalized bar complex.

Only meant as an independent oracle for small algebras over a field: a
p-cochain is a table on p-tuples of non-unit basis elements, so the cochain
spaces have dimension (dim A - 1)^p * dim A.
"""

from itertools import product

from .coeff import Matrix, ModuleInvariants, cohomology_at, in_column_span
from .cliffdg import GradedModule
from .errors import DomainError, InputError, SizeError

__all__ = [
    "FiniteAlgebra", "Cochain", "bar_cohomology", "bar_cup", "bar_differential", "apply_differential",
    "derivation_cochain", "is_bar_coboundary", "MAX_BAR_DEGREE", "DEFAULT_BOUND",
]

MAX_BAR_DEGREE = 3
DEFAULT_BOUND = 4


class FiniteAlgebra:
    """Structure constants ``mult[i][j]`` (coordinate vectors) on a K-basis whose element ``unit`` is 1."""

    def __init__(self, ring, mult, unit=0, labels=None, presentation=None):
        self.ring = ring
        self.dim = len(mult)
        self.mult = [[[ring(x) for x in v] for v in row] for row in mult]
        self.unit = unit
        self.labels = labels or [f"e{i}" for i in range(self.dim)]
        self.presentation = presentation
        self._check()

    @classmethod
    def from_presentation(cls, pres):
        basis = pres.k_basis()
        if basis and any(basis[0]):
            raise InputError("the first basis monomial must be 1")
        mult = [[pres.coords(pres.basis_element(i) * pres.basis_element(j)) for j in range(len(basis))]
                for i in range(len(basis))]
        labels = [pres.format(pres.basis_element(i)) for i in range(len(basis))]
        return cls(pres.ring, mult, 0, labels, pres)

    def _check(self):
        d, ring = self.dim, self.ring
        if d == 0:
            return
        for i in range(d):
            ei = [ring.one if k == i else ring.zero for k in range(d)]
            if self.mult[self.unit][i] != ei or self.mult[i][self.unit] != ei:
                raise InputError("basis element 'unit' is not a two-sided unit")
        for i, j, k in product(range(d), repeat=3):
            if self.times(self.mult[i][j], k, right=True) != self.times(self.mult[j][k], i, right=False):
                raise InputError(f"multiplication table is not associative at {(i, j, k)}")

    def times(self, v, k, right=True):
        """``v * e_k`` (right) or ``e_k * v`` for a coordinate vector v."""
        ring = self.ring
        out = [0] * self.dim
        for i, a in enumerate(v):
            if a:
                w = self.mult[i][k] if right else self.mult[k][i]
                for l, b in enumerate(w):
                    if b:
                        out[l] += a * b
        return [ring(x) for x in out]

    def mul(self, u, v):
        out = [0] * self.dim
        for k, b in enumerate(v):
            if b:
                for l, x in enumerate(self.times(u, k)):
                    out[l] += b * x
        return [self.ring(x) for x in out]

    @property
    def reduced(self):
        """Indices of the non-unit basis elements."""
        return [i for i in range(self.dim) if i != self.unit]


class Cochain:
    """Normalized p-cochain: ``table[(i_1..i_p)]`` is the coordinate vector of the value."""

    def __init__(self, alg, degree, table=None):
        self.alg = alg
        self.degree = degree
        zero = [alg.ring.zero] * alg.dim
        self.table = {args: list(table.get(args, zero)) if table else list(zero)
                      for args in product(alg.reduced, repeat=degree)}

    def __call__(self, *args):
        if any(a == self.alg.unit for a in args):
            return [self.alg.ring.zero] * self.alg.dim
        return self.table[tuple(args)]

    def vector(self):
        return [x for args in product(self.alg.reduced, repeat=self.degree) for x in self.table[args]]

    @classmethod
    def from_vector(cls, alg, degree, v):
        d = alg.dim
        table = {args: v[k * d:(k + 1) * d]
                 for k, args in enumerate(product(alg.reduced, repeat=degree))}
        return cls(alg, degree, table)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.degree == other.degree and self.table == other.table

    def is_zero(self):
        return not any(x for v in self.table.values() for x in v)


def _check_size(alg, degree, bound):
    if not alg.ring.is_field:
        raise DomainError(f"the bar oracle needs field coefficients, not {alg.ring}")
    if degree > MAX_BAR_DEGREE + 1:
        raise SizeError(f"bar cochains above degree {MAX_BAR_DEGREE + 1} are not supported")
    if alg.dim > bound:
        raise SizeError(f"dim A = {alg.dim} exceeds the oracle bound {bound}")


def bar_differential(alg, p, bound=DEFAULT_BOUND):
    """Matrix of delta: C^p -> C^{p+1} on the normalized cochain coordinates."""
    _check_size(alg, p + 1, bound)
    ring, d, red = alg.ring, alg.dim, alg.reduced
    src = {args: k for k, args in enumerate(product(red, repeat=p))}
    dst = list(product(red, repeat=p + 1))
    rows = [[ring.zero] * (len(src) * d) for _ in range(len(dst) * d)]

    def add(row_args_index, col_args, k, vec, sign):
        col = src[col_args] * d + k
        for l, c in enumerate(vec):
            if c:
                r = rows[row_args_index * d + l]
                r[col] = ring(r[col] + sign * c)

    for ai, alpha in enumerate(dst):
        # a_1 * f(a_2 .. a_{p+1})
        for k in range(d):
            add(ai, alpha[1:], k, alg.mult[alpha[0]][k], 1)
        # sum (-1)^i f(.., a_i a_{i+1}, ..)
        for i in range(1, p + 1):
            prod_vec = alg.mult[alpha[i - 1]][alpha[i]]
            sign = -1 if i % 2 else 1
            for l, c in enumerate(prod_vec):
                if c and l != alg.unit:
                    tau = alpha[:i - 1] + (l,) + alpha[i + 1:]
                    col0 = src[tau] * d
                    for k in range(d):
                        r = rows[ai * d + k]
                        r[col0 + k] = ring(r[col0 + k] + sign * c)
        # (-1)^{p+1} f(a_1 .. a_p) * a_{p+1}
        sign = -1 if (p + 1) % 2 else 1
        for k in range(d):
            add(ai, alpha[:p], k, alg.mult[k][alpha[p]], sign)
    return Matrix._raw(ring, rows, len(src) * d)


def bar_cohomology(alg, max_degree=MAX_BAR_DEGREE, bound=DEFAULT_BOUND):
    """Dimensions of HH^p(A/K), 0 <= p <= max_degree <= 3, from the normalized bar complex."""
    if max_degree > MAX_BAR_DEGREE:
        raise SizeError(f"the bar oracle stops at degree {MAX_BAR_DEGREE}")
    _check_size(alg, max_degree + 1, bound)
    by_degree = {}
    d_in = Matrix.zeros(alg.ring, alg.dim, 0)
    for p in range(max_degree + 1):
        d_out = bar_differential(alg, p, bound)
        by_degree[p] = cohomology_at(d_in, d_out, check=False) if alg.dim else ModuleInvariants(0)
        d_in = d_out
    return GradedModule(alg.ring, by_degree, ("normalized bar complex",))


def apply_differential(f, bound=DEFAULT_BOUND):
    m = bar_differential(f.alg, f.degree, bound)
    v = f.vector()
    out = [f.alg.ring(sum(a * b for a, b in zip(row, v))) for row in m.rows]
    return Cochain.from_vector(f.alg, f.degree + 1, out)


def bar_cup(f, g):
    """(f cup g)(a_1..a_{p+q}) = f(a_1..a_p) * g(a_{p+1}..a_{p+q})."""
    alg = f.alg
    if g.alg is not alg:
        raise InputError("cochains on different algebras")
    p, q = f.degree, g.degree
    if p + q > MAX_BAR_DEGREE:
        raise SizeError(f"cup products are limited to total degree {MAX_BAR_DEGREE}")
    table = {args: alg.mul(f(*args[:p]), g(*args[p:]))
             for args in product(alg.reduced, repeat=p + q)}
    return Cochain(alg, p + q, table)


def is_bar_coboundary(f, bound=DEFAULT_BOUND):
    if f.degree == 0:
        return f.is_zero()
    m = bar_differential(f.alg, f.degree - 1, bound)
    return in_column_span(m, f.vector())


def derivation_cochain(alg, D):
    """The 1-cochain e_i -> D(e_i) of a derivation D = sum a_v d/dx_v of the underlying presentation."""
    pres = alg.presentation
    if pres is None:
        raise InputError("algebra was not built from a presentation")
    from .calculus import derivation

    D = derivation(pres, D)
    table = {}
    for i in alg.reduced:
        mono = pres.basis_element(i)
        value = pres.const(0)
        for v, a in enumerate(D):
            value = value + a * mono.derivative(v)
        table[(i,)] = pres.coords(value)
    return Cochain(alg, 1, table)
