"""Group algebras of finite abelian groups.

For G = Z/n_1 x ... x Z/n_r the adapted Clifford model has generators
tau_j (degree 1) and sigma_j (degree 2) with

    tau_j^2 = m_j sigma_j,   d(tau_j) = n_j sigma_j,   m_j = 0 (n_j odd), n_j / 2 (n_j even),

distinct tau's anticommuting.  Over K it computes H^*(G, K); over KG it
computes HH^*(KG/K).  Both run on the generic engine of :mod:`hhci.cliffdg`.
"""

from dataclasses import dataclass, field
from math import comb, prod

from .algebra import Presentation
from .cliffdg import DEFAULT_MAX_DEGREE, CliffordModel, model_cohomology, model_for
from .coeff import ZZ, Matrix, smith_normal_form
from .errors import InputError

__all__ = [
    "AbelianGroup", "CliffordFactor", "group_algebra", "group_model",
    "group_cohomology", "group_hh", "clifford_change_of_basis", "groups_up_to",
]


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group in invariant-factor form n_1 | n_2 | ... | n_r."""

    invariant_factors: tuple
    given: tuple = field(default=(), compare=False)

    @classmethod
    def from_orders(cls, orders):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise InputError("cyclic factor orders must be positive integers")
        if not orders:
            return cls((), ())
        _, D, _ = smith_normal_form(Matrix.diag(ZZ, orders))
        factors = tuple(d for d in (D[i, i] for i in range(len(orders))) if d > 1)
        return cls(factors, orders)

    @classmethod
    def parse(cls, text):
        try:
            orders = [int(x) for x in text.replace(" ", "").split(",") if x]
        except ValueError as exc:
            raise InputError(f"bad group specification {text!r}") from exc
        return cls.from_orders(orders)

    def __post_init__(self):
        f = self.invariant_factors
        if any(n < 2 for n in f) or any(b % a for a, b in zip(f, f[1:])):
            raise InputError(f"{f} is not an invariant-factor chain")

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def rank(self):
        return len(self.invariant_factors)

    def factors(self):
        return [CliffordFactor(n) for n in self.invariant_factors]

    def __str__(self):
        return " x ".join(f"Z/{n}" for n in self.invariant_factors) or "1"


@dataclass(frozen=True)
class CliffordFactor:
    n: int

    @property
    def m(self):
        return self.n // 2 if self.n % 2 == 0 else 0


def _names(r):
    return [f"x{j + 1}" for j in range(r)] if r > 1 else ["x"][:r]


def group_algebra(G, ring):
    """KG = K[x_1..x_r]/(x_j^{n_j} - 1)."""
    names = _names(G.rank)
    rels = [f"{v}^{n} - 1" for v, n in zip(names, G.invariant_factors)]
    return Presentation(ring, names, rels)


def group_model(G, pres):
    """The adapted model over the coefficient algebra of ``pres`` (K or KG)."""
    r = G.rank
    const = pres.const
    jac = [[const(f.n if i == j else 0) for j in range(r)] for i, f in enumerate(G.factors())]
    sq = [[const(f.m if i == j else 0) for j in range(r)] for i, f in enumerate(G.factors())]
    return CliffordModel(pres, r, r, jac, sq, {})


def _notes(G):
    notes = [f"group {G} (order {G.order})"]
    if G.given and tuple(G.given) != G.invariant_factors:
        notes.append(f"input orders {list(G.given)} normalized to invariant factors {list(G.invariant_factors)}")
    return notes


def group_cohomology(G, ring, max_degree=DEFAULT_MAX_DEGREE):
    """H^p(G, K) for p <= max_degree."""
    pres = Presentation(ring, [], [])
    return model_cohomology(group_model(G, pres), max_degree, _notes(G))


def group_hh(G, ring, max_degree=DEFAULT_MAX_DEGREE):
    """HH^p(KG/K) for p <= max_degree from the model KG (x) K<tau, sigma>."""
    pres = group_algebra(G, ring)
    return model_cohomology(group_model(G, pres), max_degree, _notes(G))


def clifford_change_of_basis(n, ring=ZZ, check_degrees=4):
    """Witness that tau = x t, sigma = x^n s turns the general model of K[x]/(x^n - 1)
    into the adapted one up to a coboundary.

    In the general model t^2 = binom(n,2) x^(n-2) s and d(t) = n x^(n-1) s, so
    tau^2 = binom(n,2) sigma and d(tau) = n sigma.  Since binom(n,2) - m = eta*n,
    tau^2 - m sigma = d(eta tau).
    """
    if n < 1:
        raise InputError("n must be positive")
    pres = Presentation(ring, ["x"], [f"x^{n} - 1"])
    general = model_for(pres)
    x = pres.var(0)
    tau = general.t(0, x)
    sigma = general.s(0, 1, pres.normal_form(x ** n))
    m = CliffordFactor(n).m
    eta, rem = divmod(comb(n, 2) - m, n)
    assert rem == 0
    checks = {
        "d(tau) = n*sigma": tau.d() == sigma * n,
        "tau^2 = binom(n,2)*sigma": tau * tau == sigma * comb(n, 2),
        "tau^2 - m*sigma = d(eta*tau)": tau * tau - sigma * m == (tau * eta).d(),
    }
    if check_degrees is not None and n >= 2:
        adapted = group_model(AbelianGroup((n,)), pres)
        checks["same cohomology"] = (
            model_cohomology(general, check_degrees) == model_cohomology(adapted, check_degrees))
    return {
        "n": n,
        "m": m,
        "eta": eta,
        "tau": "x*t",
        "sigma": f"x^{n}*s",
        "tau_squared": str(tau * tau),
        "checks": checks,
    }


def groups_up_to(order):
    """All abelian groups of order <= ``order`` as invariant-factor chains."""
    out = []

    def chains(budget, prefix):
        # top factor first; each new factor divides the previous one
        if prefix:
            out.append(AbelianGroup(tuple(reversed(prefix))))
        for d in range(2, budget + 1):
            if not prefix or prefix[-1] % d == 0:
                chains(budget // d, prefix + [d])

    chains(order, [])
    return sorted(set(out), key=lambda G: (G.order, G.invariant_factors))
