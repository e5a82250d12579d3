"""Command-line surface: classify, domain, stabilizers, certify, homology,
verify, export-dot.

All commands emit sorted-key JSON (schema 1) on stdout, byte-identical across
repeated runs with the same configuration and seed; diagnostics go to stderr.
Exit codes: 0 success, 2 invalid input, 3 budget exceeded, 4 verification
failure.
"""

import argparse
import json
import random
import sys

from . import errors
from .coordring import DEFAULT_BUDGET
from .curve import (
    INFINITY,
    WeierstrassCurve,
    classify_fiber,
    e1_points,
    is_smooth,
    partials,
    points,
)
from .domain import build_domain, domain_vertex, line_label, point_label, to_dot, to_json_dict
from .field import make_field
from .homology import h1_decomposition, h1_pgl2, main_theorem_report
from .stabilizers import iso_witness, stabilizer
from .conjugation import certificate_at
from . import verify as verify_suite

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


class InvalidInput(Exception):
    pass


def parse_field(spec):
    """Parse a field spec string: "5", "7", "2^2", or a prime square "4"."""
    text = spec.strip()
    try:
        if "^" in text:
            p_str, e_str = text.split("^", 1)
            p, e = int(p_str), int(e_str)
        else:
            n = int(text)
            root = int(round(n**0.5))
            if n >= 4 and root * root == n and _is_prime_int(root):
                p, e = root, 2
            else:
                p, e = n, 1
    except ValueError:
        raise InvalidInput(f"malformed field spec {spec!r}") from None
    if e not in (1, 2):
        raise InvalidInput(f"extension degree {e} not supported (use 1 or 2)")
    try:
        return make_field(p, e)
    except errors.NotPrime:
        raise InvalidInput(f"{p} is not prime") from None


def _is_prime_int(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def parse_curve(field, spec):
    parts = spec.split(",")
    if len(parts) != 5:
        raise InvalidInput("--curve expects five coefficients a1,a2,a3,a4,a6")
    try:
        coeffs = [int(p) for p in parts]
    except ValueError:
        raise InvalidInput(f"malformed curve spec {spec!r}") from None
    return WeierstrassCurve.from_ints(field, *coeffs)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cubictree",
        description="Bruhat-Tits tree, fundamental domain, stabilizers and "
        "homology for GL2 over the coordinate ring of a Weierstrass cubic.",
    )
    parser.add_argument("--field", default="5", help="field spec: p or p^2 (default 5)")
    parser.add_argument("--curve", default="0,0,0,-1,0", help="a1,a2,a3,a4,a6 (default 0,0,0,-1,0)")
    parser.add_argument("--depth", type=int, default=10, help="cusp depth of the domain (default 10)")
    parser.add_argument("--precision", type=int, default=64, help="Laurent precision N (default 64)")
    parser.add_argument("--pole-bound", type=int, default=None, help="pole bound for stabilizer enumeration")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget (default 10^9)")
    parser.add_argument("--workers", type=int, default=1, help="parallel workers for verify (default 1)")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    parser.add_argument("--out", default=None, help="write primary output to this path instead of stdout")
    parser.add_argument(
        "command",
        choices=["classify", "domain", "stabilizers", "certify", "homology", "verify", "export-dot"],
    )
    return parser


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    _emit(args, json.dumps(obj, sort_keys=True) + "\n")


def _curve_coeffs(curve):
    return [c.index() for c in (curve.a1, curve.a2, curve.a3, curve.a4, curve.a6)]


def _header(curve):
    k = curve.k
    return {
        "schema": 1,
        "field": {"p": k.p, "order": k.order},
        "curve": _curve_coeffs(curve),
    }


def cmd_classify(args, curve):
    k = curve.k
    report = _header(curve)
    report["smooth"] = is_smooth(curve)
    report["points"] = len(points(curve))
    fibers = {}
    for l in list(k.elements()) + [INFINITY]:
        fibers[line_label(l)] = classify_fiber(curve, l).kind
    report["fibers"] = fibers
    _emit_json(args, report)
    return EXIT_OK


def cmd_domain(args, curve):
    dom = build_domain(curve, depth=args.depth, precision=args.precision)
    report = _header(curve)
    report.update(to_json_dict(dom))
    _emit_json(args, report)
    return EXIT_OK


def cmd_export_dot(args, curve):
    dom = build_domain(curve, depth=args.depth, precision=args.precision)
    _emit(args, to_dot(dom))
    return EXIT_OK


def _stabilizer_specs(curve):
    """The bounded inventory: o, every v(l), and c(p,1), c(p,2), e(p) at
    each smooth point of E1."""
    k = curve.k
    specs = [("o",)]
    specs += [("v", l) for l in list(k.elements()) + [INFINITY]]
    for p in e1_points(curve):
        if p is INFINITY or not any(partials(curve, *p)):
            continue
        specs += [("c", p, 1), ("c", p, 2), ("e", p)]
    return specs


def _spec_key(spec):
    if spec[0] == "o":
        return "o"
    if spec[0] == "v":
        return f"v({line_label(spec[1])})"
    if spec[0] == "c":
        return f"c({point_label(spec[1])},{spec[2]})"
    return f"e({point_label(spec[1])})"


def cmd_stabilizers(args, curve):
    report = _header(curve)
    report["stabilizers"] = []
    for spec in _stabilizer_specs(curve):
        dv = domain_vertex(curve, spec, max(args.precision, 12))
        grp = stabilizer(curve, dv, pole_bound=args.pole_bound, budget=args.budget)
        report["stabilizers"].append(
            {
                "vertex": _spec_key(spec),
                "order": grp.order,
                "iso": iso_witness(grp, curve.k),
                "pole_bound": grp.pole_bound,
            }
        )
    _emit_json(args, report)
    return EXIT_OK


def cmd_certify(args, curve):
    k = curve.k
    report = _header(curve)
    report["certificates"] = []
    all_ok = True
    specs = [("v", l) for l in list(k.elements()) + [INFINITY]]
    for p in e1_points(curve):
        if p is not INFINITY and not any(partials(curve, *p)):
            continue
        specs.append(("e", p))
    for spec in specs:
        cert = certificate_at(curve, spec)
        ok = cert.verified == "verified"
        all_ok &= ok
        report["certificates"].append(
            {
                "source": cert.source_desc,
                "target": cert.target_desc,
                "image_order": cert.image_order,
                "status": "PASS" if ok else "FAIL",
            }
        )
    report["status"] = "PASS" if all_ok else "FAIL"
    _emit_json(args, report)
    return EXIT_OK if all_ok else EXIT_VERIFY


def cmd_homology(args, curve):
    report = _header(curve)
    report["h1_pgl2"] = h1_pgl2(curve.k)
    report["summands"] = [
        {"l": s.l, "case": s.case, "group": s.group, "order": s.order}
        for s in h1_decomposition(curve)
    ]
    _emit_json(args, report)
    return EXIT_OK


def cmd_verify(args, curve):
    results = verify_suite.run_all(workers=args.workers)
    ok = all(r["pass"] for r in results)
    report = {"schema": 1, "criteria": results, "status": "PASS" if ok else "FAIL"}
    _emit_json(args, report)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "classify": cmd_classify,
    "domain": cmd_domain,
    "stabilizers": cmd_stabilizers,
    "certify": cmd_certify,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "export-dot": cmd_export_dot,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        field = parse_field(args.field)
        curve = parse_curve(field, args.curve)
        if args.depth < 1 or args.precision < 8 or args.budget < 1 or args.workers < 1:
            raise InvalidInput("depth/precision/budget/workers out of range")
        return COMMANDS[args.command](args, curve)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except errors.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (errors.ContainmentFailure, errors.IdentityFailure, errors.WitnessFailure) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except errors.CubicTreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
