import random

import pytest

from _util import GF2, GF3, GF5, Z4
from hhci.algebra import Presentation
from hhci.cliffdg import hh
from hhci.coeff import QQ, ZZ
from hhci.cyclic import (
    Classification, cyclic_hh, periodic_model, theta, theta_generators, two_torsion_witness,
)
from hhci.errors import DomainError, InputError, ZeroDivisor
from hhci.poly import Poly, parse_poly


def F(text, ring):
    return parse_poly(text, ["x"], ring)


def test_cyclic_examples():
    r = cyclic_hh(F("x^2", GF2), 6)
    assert r.g == F("x^2", GF2) and r.h == F("1", GF2) and r.fdiv2 == F("1", GF2)
    assert r.classification is Classification.TotallyRamified
    assert r.presentation_text == "K[x,y,z]/(x^2, y^2 + z)"
    assert r.dims.dims() == [2] * 7

    r = cyclic_hh(F("x^3 - x", GF3), 4)
    assert r.classification is Classification.Separable
    assert r.dims.dims() == [3, 0, 0, 0, 0]

    r = cyclic_hh(F("x^3 - x^2", QQ), 4)
    assert r.g == F("x", QQ) and r.h == F("x^2 - x", QQ)
    assert r.classification is Classification.Mixed
    assert r.dims.dims() == [3, 1, 1, 1, 1]


def test_cyclic_rejects_bad_input():
    with pytest.raises(DomainError):
        cyclic_hh(F("x^2", ZZ), 2)
    with pytest.raises(InputError):
        cyclic_hh(Poly.zero(QQ, 1), 2)
    with pytest.raises(InputError):
        cyclic_hh(parse_poly("x*y", ["x", "y"], QQ), 2)


def _random_poly(rng, ring):
    d = rng.randint(1, 5)
    terms = {(k,): rng.randint(-3, 3) for k in range(d)}
    terms[(d,)] = rng.choice([1, 2, 3]) if ring.tag == "Q" else 1
    # bias towards repeated factors so every classification shows up
    f = Poly(ring, 1, terms)
    if rng.random() < 0.4 and d <= 2:
        f = f * f
    return f


def test_cyclic_matches_general_engine():
    rng = random.Random(2024)
    seen = set()
    for _ in range(30):
        ring = rng.choice([GF2, GF3, GF5, QQ])
        f = _random_poly(rng, ring)
        rep = cyclic_hh(f, 6)
        seen.add(rep.classification)
        assert rep.dims.dims() == hh(Presentation(ring, ["x"], [f]), 6).dims()
    assert {Classification.Separable, Classification.TotallyRamified, Classification.Mixed} <= seen


def test_theta():
    t = theta(F("x^2", GF2))
    assert t == {"generator": F("1", GF2), "dim": 2}
    assert theta(F("x^2 + x + 1", GF2))["dim"] == 0
    t = theta(F("x^3 - x^2", QQ))
    assert t["generator"] == F("x^2 - x", QQ) and t["dim"] == 1


@pytest.mark.parametrize("ring", [GF2, GF3, Z4])
def test_theta_generators_annihilate_derivative(ring):
    rng = random.Random(ring.modulus)
    for _ in range(20):
        f = _random_poly(rng, ring)
        p = Presentation(ring, ["x"], [f])
        fp = f.derivative(0)
        for a in theta_generators(p):
            assert not p.normal_form(a * fp)
            for b in theta_generators(p):
                assert not two_torsion_witness(p, a, b)


def test_periodic_model():
    for n in range(1, 6):
        delta, desc = periodic_model(F(f"x^{n} - 1", ZZ))
        assert delta.terms == {(n - 1 - i, i): 1 for i in range(n)}
        assert desc["exact"] and desc["hci"] == "HCI"
    delta, _ = periodic_model(F("x", QQ))
    assert delta == Poly.const(QQ, 2, 1)
    delta, desc = periodic_model(F("17*x", ZZ))
    assert delta == Poly.const(ZZ, 2, 17)
    assert not desc["exact"] and desc["hci"] == "NotHCI"
    with pytest.raises(ZeroDivisor):
        periodic_model(F("2*x", Z4))
