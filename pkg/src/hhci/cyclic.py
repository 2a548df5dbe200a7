"""Closed forms for A = K[x]/(f) in one variable.

Over a field, with g = gcd(f, f') and h = f/g, Hochschild cohomology is

    K[x, y, z] / (f, g*y, g*z, y^2 + f2*h^2*z),     deg x = 0, deg y = 1, deg z = 2,

where f2 is the second divided derivative of f.  Hence HH^0 = A has
dimension deg f and every HH^p with p >= 1 has dimension deg g.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product

from .algebra import HCIStatus, Presentation, _buchberger, hci_report
from .calculus import derivation_generators
from .cliffdg import DEFAULT_MAX_DEGREE, GradedModule
from .coeff import ModuleInvariants
from .errors import DomainError, InputError, ZeroDivisor
from .poly import Poly, delta_quotient, divided_partial, divmod_univariate, gcd_univariate, grevlex_key

__all__ = [
    "Classification", "CyclicReport", "cyclic_hh", "periodic_model", "theta",
    "theta_generators", "two_torsion_witness",
]


class Classification(str, Enum):
    Separable = "Separable"
    GenericallyUnramified = "GenericallyUnramified"
    TotallyRamified = "TotallyRamified"
    Mixed = "Mixed"


@dataclass(frozen=True)
class CyclicReport:
    f: Poly
    g: Poly
    h: Poly
    fdiv2: Poly
    classification: Classification
    presentation_text: str
    presentation: tuple
    dims: GradedModule

    def to_json(self, name="x"):
        fmt = lambda p: p.to_string([name])  # noqa: E731
        return {
            "f": fmt(self.f),
            "g": fmt(self.g),
            "h": fmt(self.h),
            "fdiv2": fmt(self.fdiv2),
            "classification": self.classification.value,
            "presentation": self.presentation_text,
            "hh": self.dims.to_json(),
        }


def _check_field_univariate(f):
    if not isinstance(f, Poly) or f.nvars != 1:
        raise InputError("expected a polynomial in one variable")
    if not f.ring.is_field:
        raise DomainError(f"closed forms need field coefficients, not {f.ring}; use hh instead")
    if not f:
        raise InputError("f must be nonzero")


def _lift3(p):
    """Embed a polynomial in x into K[x, y, z]."""
    return Poly(p.ring, 3, {(e[0], 0, 0): c for e, c in p.terms.items()})


def _weighted_hilbert(gens, ring, dx, max_degree):
    """Count standard monomials x^a y^b z^c with b + 2c = p, via a Groebner basis."""
    gb = _buchberger([g.terms for g in gens], grevlex_key, ring)
    leads = [lead for lead, _ in gb]
    counts = []
    for p in range(max_degree + 1):
        n = 0
        for a, c in product(range(dx), range(p // 2 + 1)):
            e = (a, p - 2 * c, c)
            if not any(all(l <= x for l, x in zip(lead, e)) for lead in leads):
                n += 1
        counts.append(n)
    return counts


def cyclic_hh(f, max_degree=DEFAULT_MAX_DEGREE, name="x"):
    """Closed-form Hochschild cohomology of K[x]/(f) over a field."""
    _check_field_univariate(f)
    ring = f.ring
    d = f.degree()
    fp = f.derivative(0)
    g = gcd_univariate(f, fp)
    h, rem = divmod_univariate(f, g)
    assert not rem
    pres = Presentation(ring, [name], [f])
    fdiv2 = pres.normal_form(divided_partial(f, (2,)))
    if g.degree() == 0:
        cls = Classification.Separable
    elif not fp:
        cls = Classification.TotallyRamified
    else:
        cls = Classification.Mixed

    y, z = Poly.var(ring, 3, 1), Poly.var(ring, 3, 2)
    gx = _lift3(g)
    corr = pres.normal_form(fdiv2 * h * h)
    gens = [_lift3(f)]
    if pres.normal_form(g):
        gens += [gx * y, gx * z]
    gens.append(y * y + _lift3(corr) * z)
    names = [name, "y", "z"]
    text = f"K[{name},y,z]/(" + ", ".join(p.to_string(names) for p in gens) + ")"

    dims = {0: ModuleInvariants(d)}
    dims.update({p: ModuleInvariants(g.degree()) for p in range(1, max_degree + 1)})
    hilbert = _weighted_hilbert(gens, ring, d, max_degree)
    if hilbert != [dims[p].free_rank for p in range(max_degree + 1)]:
        raise AssertionError(f"presentation Hilbert function {hilbert} disagrees with the closed form")
    module = GradedModule(ring, dims, ("closed form over a field",))
    return CyclicReport(f, g, h, fdiv2, cls, text, tuple(gens), module)


def theta(f):
    """theta = (f : f')/(f) = (h)/(f); returns ``{"generator": h mod f, "dim": deg g}``."""
    _check_field_univariate(f)
    g = gcd_univariate(f, f.derivative(0))
    h = divmod_univariate(f, g)[0]
    pres = Presentation(f.ring, ["x"], [f])
    return {"generator": pres.normal_form(h), "dim": int(g.degree())}


def theta_generators(pres):
    """K-module generators of theta = ann_A(f') for A = K[x]/(f) finite free over any ring."""
    if pres.nvars != 1 or pres.ncodim != 1:
        raise InputError("theta needs one variable and one relation")
    return [D[0] for D in derivation_generators(pres)]


def two_torsion_witness(pres, a, b):
    """normal_form(a * b * f'') for a, b in theta; vanishes identically."""
    f = pres.relations[0]
    return pres.normal_form(a * b * f.derivative(0).derivative(0))


def periodic_model(f):
    """Delta with f(x'') - f(x') = (x'' - x') Delta and the 2-periodic resolution it defines."""
    if not isinstance(f, Poly) or f.nvars != 1:
        raise InputError("expected a polynomial in one variable")
    status, reason = hci_report(Presentation(f.ring, ["x"], [f])) if f else (HCIStatus.ZeroDivisor, "f = 0")
    if status is HCIStatus.ZeroDivisor:
        raise ZeroDivisor(f"{f} is a zero divisor: {reason}")
    delta = delta_quotient(f)
    ring = f.ring
    x1, x2 = Poly.var(ring, 2, 0), Poly.var(ring, 2, 1)
    fx2 = f.compose([x2])
    fx1 = f.compose([x1])
    if (x2 - x1) * delta != fx2 - fx1:
        raise AssertionError("Delta quotient is not exact")
    names = ["x'", "x''"]
    description = {
        "Delta": delta.to_string(names),
        "maps": ["x'' - x'", delta.to_string(names)],
        "exact": status is HCIStatus.HCI,
        "hci": status.value,
    }
    return delta, description
