"""Command line interface: ``hhci <command> ...`` prints one JSON object.

Exit codes: 0 success, 2 input error, 3 precondition failure.
"""

import argparse
import json
import os
import sys

from .abelian import AbelianGroup, group_cohomology, group_hh
from .algebra import Presentation, hci_report, regularity_status
from .bar import FiniteAlgebra, bar_cohomology, bar_cup, derivation_cochain, is_bar_coboundary
from .calculus import apply_derivation, derivation, derivation_generators, hessian_q
from .cliffdg import DEFAULT_MAX_DEGREE, cup_square_class, hh, hodge, model_for
from .coeff import CoeffRing, PrimeField
from .cyclic import cyclic_hh
from .errors import HHCIError, InfiniteBasis, InputError
from .poly import content_ideal

__all__ = ["main", "run"]

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _default_max_degree():
    raw = os.environ.get("HHCI_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"HHCI_MAX_DEGREE must be an integer, got {raw!r}") from None
    if value < 0:
        raise InputError("HHCI_MAX_DEGREE must be non-negative")
    return value


def _max_degree(args):
    if args.max_degree is None:
        return _default_max_degree()
    if args.max_degree < 0:
        raise InputError("--max-degree must be non-negative")
    return args.max_degree


def _load(path):
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
    return Presentation.from_json(data)


def _polys(pres, values):
    return [pres.format(v) for v in values]


# ---------------------------------------------------------------------------
# commands


def cmd_hh(args):
    pres = _load(args.file)
    top = _max_degree(args)
    result = hh(pres, top)
    table = hodge(pres, top)
    return {
        "command": "hh",
        "presentation": pres.to_json(),
        "hh": result.to_json(),
        "hodge": table.to_json(),
        "assumptions": list(result.assumptions),
    }


def cmd_cyclic(args):
    pres = _load(args.file)
    if pres.nvars != 1 or pres.ncodim != 1:
        raise InputError("cyclic needs one variable and one relation")
    report = cyclic_hh(pres.relations[0], _max_degree(args), pres.vars[0])
    out = {"command": "cyclic", "presentation": pres.to_json()}
    out.update(report.to_json(pres.vars[0]))
    out["assumptions"] = list(report.dims.assumptions)
    return out


def cmd_group(args):
    ring = CoeffRing.parse(args.ring)
    G = AbelianGroup.parse(args.orders)
    top = _max_degree(args)
    hh_part = group_hh(G, ring, top)
    return {
        "command": "group",
        "group": {"input": list(G.given), "invariant_factors": list(G.invariant_factors), "order": G.order},
        "ring": str(ring),
        "hh": hh_part.to_json(),
        "group_cohomology": group_cohomology(G, ring, top).to_json(),
        "assumptions": list(hh_part.assumptions),
    }


def _split_derivation(text):
    parts = [p.strip() for p in text.split(",")]
    if any(not p for p in parts):
        raise InputError("empty coefficient in --derivation")
    return parts


def cmd_square(args):
    pres = _load(args.file)
    D = derivation(pres, _split_derivation(args.derivation))
    values = apply_derivation(D, pres)
    out = {
        "command": "square",
        "presentation": pres.to_json(),
        "derivation": _polys(pres, D),
        "D(f)": _polys(pres, values),
        "is_derivation": not any(values),
    }
    q = hessian_q(D, pres)
    square = cup_square_class(D, pres)
    out["q"] = _polys(pres, q)
    out["square"] = str(square)
    try:
        pres.k_basis()
    except InfiniteBasis:
        out["class_nonzero"] = None
    else:
        out["class_nonzero"] = not model_for(pres).is_coboundary(square)
    if pres.ring.tag == "Z" or (pres.ring.tag == "Zmod" and pres.ring.modulus % 2 == 0):
        gf2 = PrimeField(2)
        mod2 = Presentation(gf2, pres.vars, [r.map_ring(gf2) for r in pres.relations if r.map_ring(gf2)])
        reduced = [mod2.normal_form(v.map_ring(gf2)) for v in q]
        out["q_mod_2"] = _polys(mod2, reduced)
        out["q_nonzero_mod_2"] = any(reduced)
    out["assumptions"] = []
    return out


def cmd_oracle(args):
    pres = _load(args.file)
    top = min(_max_degree(args), 3)
    alg = FiniteAlgebra.from_presentation(pres)
    bar = bar_cohomology(alg, top)
    cliff = hh(pres, top)
    squares = []
    model = model_for(pres)
    for D in derivation_generators(pres):
        f = derivation_cochain(alg, D)
        squares.append({
            "derivation": _polys(pres, D),
            "bar_nonzero": not is_bar_coboundary(bar_cup(f, f)),
            "clifford_nonzero": not model.is_coboundary(cup_square_class(D, pres)),
        })
    agree = bar.dims() == cliff.dims() and all(s["bar_nonzero"] == s["clifford_nonzero"] for s in squares)
    return {
        "command": "oracle",
        "presentation": pres.to_json(),
        "bar": bar.to_json(),
        "clifford": cliff.to_json(),
        "squares": squares,
        "agree": agree,
        "assumptions": list(cliff.assumptions),
    }


def cmd_check(args):
    pres = _load(args.file)
    out = {"command": "check", "presentation": pres.to_json(), "strategy": pres.strategy}
    if pres.nvars == 1 and pres.ncodim == 1:
        status, reason = hci_report(pres)
        out["hci"] = status.value
        out["reason"] = reason
        out["content"] = [str(c) for c in content_ideal(pres.relations[0])]
    try:
        out["regularity"] = regularity_status(pres, assume=pres.assume_regular)
    except HHCIError as exc:
        out["regularity"] = "failed"
        out["regularity_error"] = exc.to_json()
    try:
        out["rank"] = pres.rank
    except HHCIError as exc:
        out["rank"] = None
        out["rank_error"] = exc.to_json()
    out["assumptions"] = []
    return out


# ---------------------------------------------------------------------------


def _parser():
    p = _Parser(prog="hhci", description="Hochschild cohomology of complete intersections.")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    def with_degree(sp):
        sp.add_argument("--max-degree", type=int, default=None,
                        help=f"highest degree (default $HHCI_MAX_DEGREE or {DEFAULT_MAX_DEGREE})")
        sp.add_argument("--pretty", action="store_true", help=argparse.SUPPRESS)
        return sp

    s = with_degree(sub.add_parser("hh", help="cohomology of the Clifford model and its Hodge table"))
    s.add_argument("file")
    s.set_defaults(func=cmd_hh)
    s = with_degree(sub.add_parser("cyclic", help="closed form for K[x]/(f) over a field"))
    s.add_argument("file")
    s.set_defaults(func=cmd_cyclic)
    s = with_degree(sub.add_parser("group", help="finite abelian group algebra"))
    s.add_argument("orders", help="comma separated cyclic orders, e.g. 2,4")
    s.add_argument("--ring", required=True, help="Q, Z, Z/<n> or GF(<p>)")
    s.set_defaults(func=cmd_group)
    s = with_degree(sub.add_parser("square", help="q(D) and the square class of a derivation"))
    s.add_argument("file")
    s.add_argument("--derivation", required=True, help="comma separated coefficients a_1,..,a_n")
    s.set_defaults(func=cmd_square)
    s = with_degree(sub.add_parser("oracle", help="compare with the bar complex (degrees <= 3)"))
    s.add_argument("file")
    s.set_defaults(func=cmd_oracle)
    s = with_degree(sub.add_parser("check", help="HCI and regularity report"))
    s.add_argument("file")
    s.set_defaults(func=cmd_check)
    return p


def run(argv):
    """Execute a command; returns ``(exit_code, json_object)``."""
    try:
        args = _parser().parse_args(argv)
    except _UsageError as exc:
        return EXIT_INPUT, {"error": {"type": "UsageError", "message": str(exc)}}
    try:
        return EXIT_OK, args.func(args)
    except InputError as exc:
        return EXIT_INPUT, {"error": exc.to_json()}
    except (ValueError, TypeError) as exc:
        return EXIT_INPUT, {"error": {"type": type(exc).__name__, "message": str(exc)}}
    except HHCIError as exc:
        return EXIT_PRECONDITION, {"error": exc.to_json()}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    code, obj = run(argv)
    pretty = "--pretty" in argv
    json.dump(obj, sys.stdout, sort_keys=True, indent=2 if pretty else None)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
