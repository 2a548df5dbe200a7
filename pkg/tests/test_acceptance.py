"""Acceptance criteria: one PASS/FAIL line per criterion, each under 10 seconds.

Run with pytest (the lines appear in the terminal summary) or directly as a
script: ``python tests/test_acceptance.py``.
"""

import functools
import json
import random
import sys
import tempfile
import time
from itertools import product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _util import GF2, GF3, GF5, Z4, presentations, rand_clifford, rand_cocycle, rand_derivation, rand_elem  # noqa: E402
from hhci.abelian import AbelianGroup, group_algebra, group_cohomology, group_hh, groups_up_to  # noqa: E402
from hhci.algebra import Presentation  # noqa: E402
from hhci.bar import FiniteAlgebra, bar_cohomology, bar_cup, derivation_cochain, is_bar_coboundary  # noqa: E402
from hhci.calculus import derivation_generators, hessian_q, polarization  # noqa: E402
from hhci.cli import run  # noqa: E402
from hhci.cliffdg import cup_square_class, hh, hodge, model_for  # noqa: E402
from hhci.coeff import QQ, ZZ, ModuleInvariants  # noqa: E402
from hhci.cyclic import cyclic_hh, theta_generators, two_torsion_witness  # noqa: E402
from hhci.poly import Poly  # noqa: E402

TIME_LIMIT = 10.0
RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def test():
            start = time.perf_counter()
            detail, ok = "", False
            try:
                detail = fn() or ""
                ok = True
            except AssertionError as exc:
                detail = f"assertion failed: {exc}"
            except Exception as exc:  # reported, then re-raised below
                detail = f"{type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - start
            if ok and elapsed >= TIME_LIMIT:
                ok, detail = False, f"took {elapsed:.2f}s"
            line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s){' - ' + detail if detail else ''}"
            RESULTS[number] = line
            print(line)
            assert ok, line
        return test
    return wrap


def _cli(args, presentation=None):
    with tempfile.TemporaryDirectory() as tmp:
        if presentation is not None:
            path = Path(tmp) / "pres.json"
            path.write_text(json.dumps(presentation))
            args = [args[0], str(path), *args[1:]]
        code, out = run(args)
    assert code == 0, out
    return out


# ---------------------------------------------------------------------------


@criterion(1, "intro example GF(2)[x]/(x^2)")
def test_criterion_1():
    pres = {"ring": "GF(2)", "vars": ["x"], "relations": ["x^2"]}
    out = _cli(["hh", "--max-degree", "6"], pres)
    assert out["hh"]["dims"] == [2] * 7, out["hh"]["dims"]
    sq = _cli(["square", "--derivation", "1"], pres)
    assert sq["is_derivation"] and sq["square"] == "s" and sq["class_nonzero"] is True, sq
    return "dims 2 in degrees 0..6, D∪D = s nonzero"


@criterion(2, "Hessian counterexample over Z")
def test_criterion_2():
    pres = {"ring": "Z", "vars": ["x", "y"], "relations": ["x^2 - 4*x*y + y^2 - 1"]}
    out = _cli(["square", "--derivation", "2*x - y, x - 2*y"], pres)
    assert out["D(f)"] == ["0"] and out["is_derivation"]
    assert out["q_mod_2"] == ["1"] and out["q_nonzero_mod_2"]
    return f"D(f) = 0, q(D) = {out['q'][0]} = 1 mod (f, 2)"


@criterion(3, "content-grade gate")
def test_criterion_3():
    assert _cli(["check"], {"ring": "Z", "vars": ["x"], "relations": ["17*x"]})["hci"] == "NotHCI"
    for n in range(1, 9):
        assert _cli(["check"], {"ring": "Z", "vars": ["x"], "relations": [f"x^{n} - 1"]})["hci"] == "HCI"
    assert _cli(["check"], {"ring": "Z/4", "vars": ["x"], "relations": ["2*x"]})["hci"] == "ZeroDivisor"
    return "17x NotHCI, x^n - 1 HCI (n <= 8), 2x over Z/4 ZeroDivisor"


def _fibre_product_shape(rep, pres):
    """Generators are (f, g y, g z, y^2 + c z) or, when g = 0 in A, (f, y^2 + c z)."""
    ring = rep.f.ring
    y, z = Poly.var(ring, 3, 1), Poly.var(ring, 3, 2)

    def lift(p):
        return Poly(ring, 3, {(e[0], 0, 0): c for e, c in p.terms.items()})

    gens = list(rep.presentation)
    assert gens[0] == lift(rep.f)
    if pres.normal_form(rep.g):
        assert gens[1:3] == [lift(rep.g) * y, lift(rep.g) * z]
    else:
        assert len(gens) == 2
    c = pres.normal_form(rep.fdiv2 * rep.h * rep.h)
    assert gens[-1] == y * y + lift(c) * z


@criterion(4, "cyclic closed form agrees with the general engine")
def test_criterion_4():
    rng = random.Random(4)
    shapes = set()
    for _ in range(20):
        ring = rng.choice([GF2, GF3, GF5, QQ])
        d = rng.randint(1, 5)
        terms = {(k,): rng.randint(-4, 4) for k in range(d)}
        terms[(d,)] = 1
        f = Poly(ring, 1, terms)
        if rng.random() < 0.5 and d <= 2:
            f = f * f  # force repeated roots
        pres = Presentation(ring, ["x"], [f])
        rep = cyclic_hh(f, 6)
        assert rep.dims.dims() == hh(pres, 6).dims(), (f, rep.dims.dims())
        _fibre_product_shape(rep, pres)
        shapes.add(rep.classification.value)
    return "20 polynomials, classes seen: " + ", ".join(sorted(shapes))


@criterion(5, "theta products kill f''")
def test_criterion_5():
    rng = random.Random(5)
    cases = nontrivial = 0
    while cases < 50:
        ring = rng.choice([GF2, Z4])
        d = rng.randint(1, 5)
        terms = {(k,): rng.randint(0, 3) for k in range(d)}
        terms[(d,)] = 1
        f = Poly(ring, 1, terms)
        pres = Presentation(ring, ["x"], [f])
        gens = theta_generators(pres)
        if not gens:
            continue
        a = sum((g * rand_elem(rng, pres) for g in gens), pres.const(0))
        b = sum((g * rand_elem(rng, pres) for g in gens), pres.const(0))
        a, b = pres.normal_form(a), pres.normal_form(b)
        assert not two_torsion_witness(pres, a, b), (f, a, b)
        cases += 1
        nontrivial += bool(pres.mul(a, b))
    return f"50 cases ({nontrivial} with a*b != 0)"


@criterion(6, "group algebra two-path agreement")
def test_criterion_6():
    groups = [AbelianGroup.parse("1")] + groups_up_to(8)
    for G in groups:
        for ring in (GF2, GF3, ZZ, Z4):
            assert group_hh(G, ring, 5) == hh(group_algebra(G, ring), 5), (str(G), str(ring))
    C2 = AbelianGroup((2,))
    coh = group_cohomology(C2, ZZ, 4)
    assert [coh[p] for p in range(5)] == [ModuleInvariants(1), ModuleInvariants(0), ModuleInvariants(0, (2,)),
                                          ModuleInvariants(0), ModuleInvariants(0, (2,))]
    res = group_hh(C2, ZZ, 4)
    assert [res[p] for p in range(5)] == [ModuleInvariants(2), ModuleInvariants(0), ModuleInvariants(0, (2, 2)),
                                          ModuleInvariants(0), ModuleInvariants(0, (2, 2))]
    return f"{len(groups)} groups x 4 rings, degrees 0..5"


def _oracle_presentations():
    out = []
    for p, dmax in ((2, 4), (3, 4), (5, 3)):
        F = {2: GF2, 3: GF3, 5: GF5}[p]
        for d in range(1, dmax + 1):
            for cs in product(range(p), repeat=d):
                terms = {(k,): c for k, c in enumerate(cs)}
                terms[(d,)] = 1
                out.append(Presentation(F, ["x"], [Poly(F, 1, terms)]))
    tails = ["0", "1", "x", "y", "x + y", "x + 1"]
    for F in (GF2, GF3):
        for a, b in product(tails, repeat=2):
            out.append(Presentation(F, ["x", "y"], [f"x^2 + {a}", f"y^2 + {b}"]))
    out.append(Presentation(GF5, ["x", "y"], ["x^2 - 2", "y^2 + x"]))
    return [p for p in out if p.rank <= 4]


@criterion(7, "bar complex oracle")
def test_criterion_7():
    pres_list = _oracle_presentations()
    squares = nonzero = 0
    for pres in pres_list:
        alg = FiniteAlgebra.from_presentation(pres)
        assert bar_cohomology(alg, 3).dims() == hh(pres, 3).dims(), pres
        model = model_for(pres)
        for D in derivation_generators(pres):
            bar_nonzero = not is_bar_coboundary(bar_cup(*[derivation_cochain(alg, D)] * 2))
            q_class = cup_square_class(D, pres)  # = sum_j q(D)_j s_j
            assert bar_nonzero == (not model.is_coboundary(q_class)), (pres, D)
            squares += 1
            nonzero += bar_nonzero
    return f"{len(pres_list)} presentations, {squares} squares ({nonzero} nonzero)"


@criterion(8, "structural invariants (randomized)")
def test_criterion_8():
    rng = random.Random(8)
    pool = presentations(max_rank=4)
    counts = dict.fromkeys(["d^2", "leibniz", "assoc", "central", "polar", "commute", "scaling"], 0)
    while min(counts.values()) < 100:
        pres = rng.choice(pool)
        m = model_for(pres)
        degs = [rng.randint(0, 3) for _ in range(3)]
        u, v, w = (rand_clifford(rng, m, d) for d in degs)
        assert u.d().d() == m.zero()
        counts["d^2"] += 1
        sign = -1 if degs[0] % 2 else 1
        assert (u * v).d() == u.d() * v + u * v.d() * sign
        counts["leibniz"] += 1
        assert (u * v) * w == u * (v * w)
        counts["assoc"] += 1
        for j in range(m.ns):
            assert m.s(j) * u == u * m.s(j)
        counts["central"] += 1
        p, q = rng.randint(0, 3), rng.randint(0, 3)
        if p + q <= 4:
            a, b = rand_cocycle(rng, m, p), rand_cocycle(rng, m, q)
            assert m.is_coboundary(a * b - b * a * (-1 if p * q % 2 else 1))
            counts["commute"] += 1
        gens = derivation_generators(pres)
        if gens:
            D1, D2 = rand_derivation(rng, pres, gens), rand_derivation(rng, pres, gens)
            s = tuple(x + y for x, y in zip(D1, D2))
            lhs = hessian_q(s, pres)
            rhs = [x + y + z for x, y, z in zip(hessian_q(D1, pres), hessian_q(D2, pres), polarization(D1, D2, pres))]
            assert lhs == tuple(pres.normal_form(x) for x in rhs)
            counts["polar"] += 1
            c = rand_elem(rng, pres)
            scaled = tuple(pres.normal_form(c * x) for x in D1)
            assert hessian_q(scaled, pres) == tuple(pres.normal_form(c * c * x) for x in hessian_q(D1, pres))
            counts["scaling"] += 1
    return ", ".join(f"{k} {n}" for k, n in counts.items())


@criterion(9, "Hodge additivity and the quantized square")
def test_criterion_9():
    pool = presentations(field_only=True) + [
        Presentation(GF2, ["x"], ["x^4"]), Presentation(GF3, ["x", "y"], ["x^3", "y^2 - x"]),
        Presentation(QQ, ["x"], ["x^3 - x^2"]),
    ]
    for pres in pool:
        res, tab = hh(pres, 6), hodge(pres, 6)
        for p in range(7):
            total = sum(m.free_rank for (i, j), m in tab.entries.items() if i + 2 * j == p)
            assert total == res[p].free_rank, (pres, p)
    pres = Presentation(GF2, ["x"], ["x^2"])
    m = model_for(pres)
    square = m.t(0) * m.t(0)
    assert square.bidegrees() == {(0, 1)} and square == m.s(0)
    assert not m.is_coboundary(square)
    return f"{len(pool)} presentations, degrees 0..6; t*t = s in bidegree (0,1)"


if __name__ == "__main__":
    failed = 0
    for name in sorted(n for n in dir() if n.startswith("test_criterion_")):
        try:
            globals()[name]()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
