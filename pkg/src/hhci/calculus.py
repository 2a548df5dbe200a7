"""Jacobians, Hessians and the quadratic map q on derivations.

A derivation D = sum a_i d/dx_i of A is represented by the tuple
``(a_1, ..., a_n)`` of A-elements; a normal-module element is the tuple of
its values on the relations ``(u_1, ..., u_c)``.
"""

from .coeff import Matrix, kernel
from .errors import InputError, NotADerivation
from .poly import Poly, divided_partial

__all__ = [
    "derivation", "jacobian", "is_derivation", "apply_derivation", "hessian_q",
    "polarization", "derivation_generators", "second_derivative_tables",
]


def _unit(n, *idx):
    e = [0] * n
    for i in idx:
        e[i] += 1
    return tuple(e)


def derivation(pres, coeffs):
    """Normalize a coefficient vector (Polys, ints or polynomial text) into a DerivationVec."""
    if len(coeffs) != pres.nvars:
        raise InputError(f"a derivation needs {pres.nvars} coefficients, got {len(coeffs)}")
    out = []
    for a in coeffs:
        if isinstance(a, str):
            a = pres.poly(a)
        elif not isinstance(a, Poly):
            a = pres.const(a)
        out.append(pres.normal_form(a))
    return tuple(out)


def jacobian(pres):
    """``J[j][i]`` = normal form of d f_j / d x_i."""
    return tuple(tuple(pres.normal_form(f.derivative(i)) for i in range(pres.nvars))
                 for f in pres.relations)


def apply_derivation(D, pres):
    """Values ``D(f_j)`` in A; all vanish exactly when D is a derivation of A."""
    D = derivation(pres, D)
    zero = pres.const(0)
    out = []
    for row in jacobian(pres):
        total = zero
        for j_entry, a in zip(row, D):
            total = total + j_entry * a
        out.append(pres.normal_form(total))
    return tuple(out)


def is_derivation(D, pres):
    return not any(apply_derivation(D, pres))


def second_derivative_tables(pres):
    """``(sq, mixed)``: divided d^2 f_j/dx_i^2 and ordinary d^2 f_j/dx_i dx_k (i < k), reduced."""
    n = pres.nvars
    sq = {i: tuple(pres.normal_form(divided_partial(f, _unit(n, i, i))) for f in pres.relations)
          for i in range(n)}
    mixed = {(i, k): tuple(pres.normal_form(divided_partial(f, _unit(n, i, k))) for f in pres.relations)
             for i in range(n) for k in range(i + 1, n)}
    return sq, mixed


def _bilinear(fvals, gvals, pres, diagonal_factor):
    sq, mixed = second_derivative_tables(pres)
    n = pres.nvars
    out = []
    for j in range(pres.ncodim):
        total = pres.const(0)
        for i in range(n):
            if sq[i][j]:
                total = total + (sq[i][j] * fvals[i] * gvals[i]).scale(diagonal_factor)
            for k in range(i + 1, n):
                h = mixed[(i, k)][j]
                if h:
                    total = total + h * fvals[i] * gvals[k]
                    if diagonal_factor == 2:  # symmetric form: both orders
                        total = total + h * fvals[k] * gvals[i]
        out.append(pres.normal_form(total))
    return tuple(out)


def hessian_q(D, pres, check=True):
    """q(D)_j = sum over i <= k of (divided d^2 f_j / dx_i dx_k) a_i a_k, reduced mod I."""
    D = derivation(pres, D)
    if check and not is_derivation(D, pres):
        raise NotADerivation("D(f) != 0 for some relation f")
    return _bilinear(D, D, pres, 1)


def polarization(D1, D2, pres, check=True):
    """The symmetric bilinear form B with q(D1 + D2) = q(D1) + q(D2) + B(D1, D2).

    In coordinates B_j = sum over i, k of (d^2 f_j / dx_i dx_k) a_i b_k.
    """
    D1, D2 = derivation(pres, D1), derivation(pres, D2)
    if check and not (is_derivation(D1, pres) and is_derivation(D2, pres)):
        raise NotADerivation("polarization is defined on derivations")
    return _bilinear(D1, D2, pres, 2)


def cup_hessian(fvals, gvals, pres):
    """sum over i <= k of (divided d^2 f_j / dx_i dx_k) f(dx_i) g(dx_k) for arbitrary 1-cochains."""
    return _bilinear(derivation(pres, fvals), derivation(pres, gvals), pres, 1)


def derivation_generators(pres):
    """K-module generators of Der_K(A, A) for a finite free A (a basis over fields and Z)."""
    r, n = pres.rank, pres.nvars
    jac = jacobian(pres)
    # block matrix of A^n -> A^c, D -> jac . D, on K-coordinates
    rows = [[pres.ring.zero] * (n * r) for _ in range(pres.ncodim * r)]
    for j, row in enumerate(jac):
        for i, entry in enumerate(row):
            block = pres.mult_matrix(entry)
            for a in range(r):
                for b in range(r):
                    rows[j * r + a][i * r + b] = block[a, b]
    ker = kernel(Matrix(pres.ring, rows, n * r))
    gens = []
    for col in range(ker.ncols):
        v = ker.column(col)
        gens.append(tuple(pres.from_coords(v[i * r:(i + 1) * r]) for i in range(n)))
    return gens
