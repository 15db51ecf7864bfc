"""``skewforge`` command line.

Exit codes: 0 success, 1 failed checks, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ..autgroup import aut_to_json
from ..bimodhecke import HeckeElement, class_dimension, hecke_mul, simple_class, tensor_decompose
from ..errors import SkewForgeError, UnknownSuite
from ..presets import PRESET_NAMES, get_preset
from ..skewring import decompose_bimodule_classes, element_to_json, skew_mul
from .parser import parse_aut, parse_element
from .printer import format_aut, format_element
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _setting(name: str):
    return get_preset(name).setting


def _emit(args, text: str, data):
    if getattr(args, "json", False):
        print(json.dumps(data, indent=2))
    else:
        print(text)


def cmd_preset(args) -> int:
    name = args.name if not args.args else f"{args.name}({','.join(args.args)})"
    p = get_preset(name)
    s = p.setting
    if args.dump:
        data = s.to_json()
        data["extras"] = {k: format_element(v) for k, v in p.extras.items() if hasattr(v, "terms")}
        print(json.dumps(data, indent=2))
        return EXIT_OK
    print(repr(s))
    print("variables: " + ", ".join(s.names))
    print("gamma: " + "; ".join(s.show(g) for g in s.gamma_gens))
    print("monoid generators: " + ", ".join(format_aut(s, g) for g in s.monoid.generators()))
    for k, v in p.extras.items():
        if hasattr(v, "terms"):
            print(f"{k} = {format_element(v)}")
    return EXIT_OK


def cmd_eval(args) -> int:
    s = _setting(args.setting)
    x = parse_element(s, args.expr)
    _emit(args, format_element(x), element_to_json(x))
    return EXIT_OK


def cmd_mul(args) -> int:
    s = _setting(args.setting)
    x = skew_mul(parse_element(s, args.left), parse_element(s, args.right))
    _emit(args, format_element(x), element_to_json(x))
    return EXIT_OK


def cmd_decompose(args) -> int:
    s = _setting(args.setting)
    x = parse_element(s, args.expr)
    classes = decompose_bimodule_classes(x)
    rows = [{"rep": format_aut(s, dc.rep), "stab_order": dc.stab_order, "dimension": dc.orbit_size} for dc in classes]
    text = "\n".join(f"V({r['rep']})  |H|={r['stab_order']}  dim={r['dimension']}" for r in rows)
    _emit(args, text, rows)
    return EXIT_OK


def cmd_hecke_mul(args) -> int:
    s = _setting(args.setting)
    G = s.group
    a, b = parse_aut(s, args.left), parse_aut(s, args.right)
    h = hecke_mul(HeckeElement.basis(G, a), HeckeElement.basis(G, b)).scale(Fraction(1, G.order))
    text = " + ".join(f"{q}*b[{format_aut(s, dc.rep)}]" for dc, q in h.sorted_terms()) or "0"
    data = [{"rep": format_aut(s, dc.rep), "aut": aut_to_json(dc.rep), "coeff": str(q)} for dc, q in h.sorted_terms()]
    _emit(args, "(1/|G|) b b = " + text, data)
    return EXIT_OK


def cmd_tensor_classes(args) -> int:
    s = _setting(args.setting)
    G = s.group
    ca, cb = simple_class(G, parse_aut(s, args.left)), simple_class(G, parse_aut(s, args.right))
    dec = tensor_decompose(G, ca, cb)
    rows = [{"rep": format_aut(s, c.rep), "multiplicity": k, "dimension": class_dimension(c)}
            for c, k in dec.sorted_terms()]
    text = " + ".join(f"V({r['rep']})^{r['multiplicity']}" for r in rows)
    text += f"\ndimension {dec.dimension()} = {class_dimension(ca)} * {class_dimension(cb)}"
    _emit(args, text, rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, n=args.n, seed=args.seed)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_text())
    return EXIT_OK if report.ok() else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skewforge", description="Invariant skew group rings, exactly.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preset", help="describe a preset setting; names: " + ", ".join(PRESET_NAMES))
    p.add_argument("name")
    p.add_argument("args", nargs="*", help="preset arguments, e.g. 'gt 3' for gt(3)")
    p.add_argument("--dump", action="store_true", help="print the setting as JSON")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("eval", help="parse and print an element canonically")
    p.add_argument("setting")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("mul", help="product of two elements")
    p.add_argument("setting")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("decompose", help="simple bimodule classes met by an element")
    p.add_argument("setting")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    for name, func, what in (("hecke-mul", cmd_hecke_mul, "(1/|G|) b_phi b_psi"),
                             ("tensor-classes", cmd_tensor_classes, "V(phi) (x) V(psi)")):
        p = sub.add_parser(name, help=what)
        p.add_argument("setting")
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite: " + ", ".join(SUITES + ("all",)))
    p.add_argument("suite")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="defaults to $SKEWFORGE_SEED, then 0")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UnknownSuite as e:
        print(f"error: unknown suite {e}; choose from {', '.join(SUITES + ('all',))}", file=sys.stderr)
        return EXIT_USAGE
    except SkewForgeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
