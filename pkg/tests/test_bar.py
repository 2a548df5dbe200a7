import pytest

from _util import GF2, GF3, GF5, presentations
from hhci.algebra import Presentation
from hhci.bar import (
    Cochain, FiniteAlgebra, apply_differential, bar_cohomology, bar_cup, bar_differential, derivation_cochain,
    is_bar_coboundary,
)
from hhci.calculus import derivation_generators, hessian_q
from hhci.cliffdg import cup_square_class, hh, model_for
from hhci.coeff import QQ, ZZ
from hhci.errors import DomainError, InputError, SizeError

SMALL = presentations(field_only=True, max_rank=4)


def test_bar_examples():
    assert bar_cohomology(FiniteAlgebra.from_presentation(Presentation(GF2, ["x"], ["x^2"]))).dims() == [2] * 4
    K = FiniteAlgebra(GF3, [[[1]]])
    assert bar_cohomology(K).dims() == [1, 0, 0, 0]
    assert bar_cohomology(FiniteAlgebra.from_presentation(Presentation(GF3, ["x"], ["x^3"]))).dims() == [3] * 4


def test_finite_algebra_validation():
    with pytest.raises(InputError):
        FiniteAlgebra(QQ, [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], unit=1)  # e1 is not a unit
    with pytest.raises(DomainError):
        bar_cohomology(FiniteAlgebra.from_presentation(Presentation(ZZ, ["x"], ["x^2"])))
    big = FiniteAlgebra.from_presentation(Presentation(GF2, ["x"], ["x^5"]))
    with pytest.raises(SizeError):
        bar_cohomology(big)
    with pytest.raises(SizeError):
        bar_cohomology(FiniteAlgebra.from_presentation(Presentation(GF2, ["x"], ["x^2"])), 4)


@pytest.mark.parametrize("pres", SMALL, ids=repr)
def test_bar_is_a_complex(pres):
    alg = FiniteAlgebra.from_presentation(pres)
    for p in range(3):
        assert (bar_differential(alg, p + 1) @ bar_differential(alg, p)).is_zero()


@pytest.mark.parametrize("pres", SMALL, ids=repr)
def test_bar_matches_clifford(pres):
    alg = FiniteAlgebra.from_presentation(pres)
    assert bar_cohomology(alg, 3).dims() == hh(pres, 3).dims()


@pytest.mark.parametrize("pres", SMALL, ids=repr)
def test_square_classes_match(pres):
    alg = FiniteAlgebra.from_presentation(pres)
    model = model_for(pres)
    for D in derivation_generators(pres):
        f = derivation_cochain(alg, D)
        assert apply_differential(f).is_zero()
        bar_nonzero = not is_bar_coboundary(bar_cup(f, f))
        clifford_nonzero = not model.is_coboundary(cup_square_class(D, pres))
        assert bar_nonzero == clifford_nonzero


def test_cup_examples():
    pres = Presentation(GF2, ["x"], ["x^2"])
    alg = FiniteAlgebra.from_presentation(pres)
    f = derivation_cochain(alg, (1,))
    sq = bar_cup(f, f)
    assert sq(1, 1) == pres.coords(hessian_q((1,), pres)[0])
    assert not is_bar_coboundary(sq)
    zero = Cochain(alg, 1)
    assert bar_cup(f, zero).is_zero()
    with pytest.raises(SizeError):
        bar_cup(bar_cup(f, f), bar_cup(f, f))


def test_cup_is_cocycle_map():
    """d(f g) = d(f) g - f d(g) for 1-cochains over GF(5)."""
    pres = Presentation(GF5, ["x"], ["x^2"])
    alg = FiniteAlgebra.from_presentation(pres)
    f = Cochain(alg, 1, {(1,): [2, 3]})
    g = Cochain(alg, 1, {(1,): [1, 4]})
    lhs = apply_differential(bar_cup(f, g))
    df, dg = apply_differential(f), apply_differential(g)
    rhs = [GF5(a - b) for a, b in zip(bar_cup(df, g).vector(), bar_cup(f, dg).vector())]
    assert lhs.vector() == rhs
