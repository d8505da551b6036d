"""Command-line interface: ``multbound {mult,bound,polytope,verify,example}``.

JSON goes to stdout, human-readable text to stderr under ``--pretty``.
Exit codes: 0 success, 1 computation error, 2 bound-violation candidate,
3 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import polytope as poly
from .algebra import field_polytope, mixed_degrees, newton_polytope, parse_field
from .bounds import BoundReport, _jsonable, caseAB_bound, mixed_multi_bound, mixed_single_bound, pure_bound, toric_bound
from .errors import MultboundError, ParseError
from .mult import max_order_cap, multiplicity
from .problems import Problem, _point_label, canonical, example, load
from .series import Expansion, RegularExpansion, TrajectoryGerm
from .verify import SUITES, InstanceSpec, run_property_suite

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(_jsonable(obj), sort_keys=True) + "\n")


def _pretty(args, text: str) -> None:
    if getattr(args, "pretty", False):
        print(text, file=sys.stderr)


def _read_json(arg: str):
    """A JSON document from a path, or inline when the argument looks like JSON."""
    text = arg.strip()
    if text[:1] in "{[":
        source = text
    else:
        try:
            with open(arg, encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{arg}: invalid JSON ({exc.msg})") from None


def _problem(args) -> Problem | None:
    if getattr(args, "example", None):
        return load(example(args.example, a=args.a))
    if getattr(args, "problem", None):
        return load(_read_json(args.problem))
    return None


# mult

def _field_from_flags(args):
    if not args.field:
        return None
    names = args.vars or None
    n = len(args.field)
    if names is None:
        names = ["x", "y"] if n == 2 else ["x", "y", "z"] if n == 3 else [f"x{i + 1}" for i in range(n)]
    doc = {"version": "multbound/1", "variables": names, "field": args.field}
    if args.time_index is not None:
        doc["time_index"] = args.time_index
    if args.point:
        doc["base_points"] = [args.point]
    return load(doc)


def _side_bound(args, prob: Problem, p) -> BoundReport | None:
    if not args.theorem:
        return None
    xi = prob.field
    if xi is None:
        raise UsageError("a side-by-side bound needs a field")
    chi = args.chi if args.chi is not None else prob.chi
    if chi is None:
        raise UsageError("missing parameter: chi")
    delta = args.delta if args.delta is not None else (prob.delta if prob.delta is not None else xi.delta)
    if args.theorem == "pure":
        return pure_bound(xi.dim, delta, p.total_degree(), chi)
    K, _ = field_polytope(xi)
    if args.theorem == "toric":
        return toric_bound(xi.dim, delta, newton_polytope(p), K, chi)
    if xi.time_index != 0:
        raise UsageError("the mixed bound needs the time variable in the first coordinate")
    d_z, d_x = mixed_degrees(p, 0)
    return mixed_single_bound(xi.dim - 1, delta, K, d_z, d_x, chi)


def cmd_mult(args) -> int:
    prob = _problem(args) or _field_from_flags(args)
    if prob is None:
        raise UsageError("give --example, --problem or --field with --point")
    sources = list(prob.sources)
    if args.germ:
        data = _read_json(args.germ)
        germ = TrajectoryGerm.from_json(data)
        sources = [("germ file", germ)]
    if args.point and args.field is None and prob.field is not None:
        p = [Fraction(v) for v in args.point]
        sources = [(_point_label(p), RegularExpansion(prob.field, p))]
    if not sources:
        raise UsageError("no trajectory: give --point, --germ or a problem with sources")
    texts = args.poly or prob.polynomials
    if not texts:
        raise UsageError("missing --poly")
    cap = args.cap if args.cap is not None else max_order_cap()
    results, violation = [], False
    for text in texts:
        p = prob.parse(text)
        report = _side_bound(args, prob, p)
        bound = report.value if report is not None else None
        for label, src in sources:
            if args.order is not None:
                src = src.germ(args.order) if isinstance(src, Expansion) else src.truncate(args.order)
            m = multiplicity(p, src, cap=cap, bound=bound)
            entry = {"poly": text, "source": label, **m.to_json()}
            if report is not None:
                entry["bound"] = report.value
                entry["bound_report"] = report.to_json()
                if m.violation or (m.is_exact and m.value > report.value):
                    entry["bound_violation_candidate"] = True
                    violation = True
            results.append(entry)
            _pretty(args, f"{text} along {label}: {m}" + (f"  (bound {report.value})" if report else ""))
    _emit(results[0] if len(results) == 1 else {"results": results})
    return EXIT_VIOLATION if violation else EXIT_OK


# bound

def _load_polytope(arg: str, max_dim: int | None = None) -> poly.IntegralPolytope:
    data = _read_json(arg)
    if isinstance(data, list):
        return poly.hull(data, max_dim or poly.MAX_DIM)
    if not isinstance(data, dict) or "vertices" not in data:
        raise ParseError(f"{arg}: expected a polytope {{'dim', 'vertices'}} or a list of points")
    return poly.IntegralPolytope.from_json(data)


def _field_arg(args):
    """(field, field polytope) from --field-file or --example, or (None, None)."""
    xi = None
    if args.field_file:
        data = _read_json(args.field_file)
        if "version" in data:
            xi = load(data).field
        elif "variables" in data and "field" in data:
            xi = parse_field(data["field"], data["variables"], data.get("time_index"))
        else:
            from .algebra import PolyVectorField
            xi = PolyVectorField.from_json(data)
    elif args.example:
        xi = load(example(args.example, a=args.a)).field
    if xi is None:
        return None, None
    return xi, field_polytope(xi)[0]


_REQUIRED = {
    "pure": ["n", "d", "delta", "chi"],
    "toric": ["chi"],
    "mixed": ["dz", "dx", "chi"],
    "mixed-multi": ["dz", "dx", "q", "chi"],
    "caseA": ["m", "D", "dz", "dx", "q", "chi"],
    "caseB": ["m", "D", "dz", "dx", "q", "chi"],
}


def cmd_bound(args) -> int:
    th = args.theorem
    xi, K = _field_arg(args)
    missing = [name for name in _REQUIRED[th] if getattr(args, name) is None]
    if th == "toric" and not args.delta_file:
        missing.insert(0, "Delta (--delta-file)")
    if th == "toric" and K is None:
        missing.append("Delta_xi (--field-file or --example)")
    if missing:
        raise UsageError("missing parameters: " + ", ".join(missing))
    delta = args.delta if args.delta is not None else (xi.delta if xi is not None else 0)
    if th == "pure":
        report = pure_bound(args.n, delta, args.d, args.chi)
    elif th == "toric":
        Delta = _load_polytope(args.delta_file)
        n = args.n if args.n is not None else Delta.dim
        report = toric_bound(n, delta, Delta, K, args.chi)
    else:
        n = args.n if args.n is not None else (K.dim - 1 if K is not None else 1)
        if th == "mixed":
            report = mixed_single_bound(n, delta, K, args.dz, args.dx, args.chi)
        elif th == "mixed-multi":
            report = mixed_multi_bound(n, delta, K, args.dz, args.dx, args.q, args.chi)
        else:
            report = caseAB_bound(n, delta, K, args.m, th[-1], args.D, args.dz, args.dx, args.q, args.chi, args.d)
    _emit(report.to_json())
    _pretty(args, f"{report.theorem} bound: {report.value}")
    for name, value in report.constants.items():
        _pretty(args, f"  {name} = {_jsonable(value)}")
    for note in report.notes:
        _pretty(args, f"  note: {note}")
    return EXIT_OK


# polytope

def _render(P: poly.IntegralPolytope) -> str:
    if P.dim == 2 and P.vertices:
        return " ".join(f"({v[0]}, {v[1]})" for v in _cyclic(P))
    return "\n".join(str(list(v)) for v in P.vertices)


def _cyclic(P):
    """2D vertices in counterclockwise order."""
    import math
    vs = [tuple(Fraction(c) for c in v) for v in P.vertices]
    cx = sum(v[0] for v in vs) / len(vs)
    cy = sum(v[1] for v in vs) / len(vs)
    order = sorted(range(len(vs)), key=lambda i: math.atan2(vs[i][1] - cy, vs[i][0] - cx))
    return [P.vertices[i] for i in order]


def cmd_polytope(args) -> int:
    max_dim = args.max_dim or poly.MAX_DIM
    max_box = args.max_box or poly.MAX_BOX
    action = args.action
    if action == "mixed-volume":
        if not args.bodies:
            raise UsageError("missing --bodies")
        bodies = [_load_polytope(b, max_dim) for b in args.bodies]
        _check_dim(bodies[0], max_dim)
        value = poly.mixed_volume(bodies)
        _emit({"mixed_volume": value})
        _pretty(args, f"V = {value}")
        return EXIT_OK
    if not args.body:
        raise UsageError("missing --body")
    P = _load_polytope(args.body, max_dim)
    _check_dim(P, max_dim)
    if action == "hull":
        _emit(P.to_json())
        _pretty(args, _render(P))
    elif action == "volume":
        _emit({"volume": poly.volume(P)})
        _pretty(args, f"vol = {poly.volume(P)}")
    elif action == "ivol":
        count = poly.lattice_count(P, max_box)
        _emit({"ivol": count})
        _pretty(args, f"ivol = {count}")
    elif action == "quermass":
        if args.j is None:
            raise UsageError("missing -j")
        value = poly.quermassintegral(P, args.j)
        _emit({"quermassintegral": value, "j": args.j})
        _pretty(args, f"W_{args.j} = {value}")
    return EXIT_OK


def _check_dim(P, max_dim):
    if P.dim > max_dim:
        raise UsageError(f"dimension {P.dim} exceeds the guard {max_dim} (raise with --max-dim)")


# verify

def cmd_verify(args) -> int:
    spec = InstanceSpec(seed=args.seed, trials=args.trials, n=args.n, delta=args.delta, d=args.d)
    summary = run_property_suite(args.suite, spec)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            fh.write(summary.jsonl())
    _emit(summary.to_json())
    _pretty(args, f"{args.suite}: {summary.passed} passed, {summary.failed} failed, "
                  f"{summary.degenerate} degenerate ({summary.degenerate_draws}/{summary.draws} draws)")
    if summary.failed:
        return EXIT_VIOLATION if args.suite == "bound-soundness" else EXIT_ERROR
    return EXIT_OK


# example

def cmd_example(args) -> int:
    doc = example(args.name, a=args.a)
    load(doc)
    sys.stdout.write(canonical(doc) + "\n")
    _pretty(args, json.dumps(doc, indent=2))
    return EXIT_OK


def _add_symbols(p, names):
    helps = {
        "n": ("-n", int, "n: number of state variables"),
        "delta": ("--delta", int, "delta: degree of the vector field"),
        "d": ("-d", int, "d: degree of the polynomial (or truncation degree for caseA/caseB)"),
        "dz": ("--dz", int, "d_z: degree of P in the time variable z"),
        "dx": ("--dx", int, "d_x: degree of P in the state variables x"),
        "q": ("-q", int, "q: number of points"),
        "chi": ("--chi", int, "chi: D-property constant"),
        "m": ("-m", int, "m: dimension of the Zariski closure of the trajectory"),
        "D": ("-D", int, "D: degree bound for the Zariski closure"),
    }
    for name in names:
        flag, typ, text = helps[name]
        p.add_argument(flag, dest=name, type=typ, default=None, help=text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multbound", description="Multiplicities along trajectories and their bounds.")
    parser.add_argument("--pretty", action="store_true", help="human-readable output on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("mult", help="multiplicity of a polynomial along a trajectory")
    m.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    m.add_argument("--example", help="builtin problem name")
    m.add_argument("--a", type=int, default=5, help="a: exponent for the power-a example")
    m.add_argument("--problem", help="problem file (multbound/1)")
    m.add_argument("--field", nargs="+", help="field components as expressions")
    m.add_argument("--vars", nargs="+", help="variable names for --field")
    m.add_argument("--time-index", type=int, help="index of the time variable in graph form")
    m.add_argument("--point", nargs="+", help="base point p of a regular trajectory")
    m.add_argument("--germ", help="germ JSON file")
    m.add_argument("--poly", action="append", help="polynomial P (repeatable)")
    m.add_argument("--order", type=int, help="N: truncation order of the germ")
    m.add_argument("--cap", "--max-order", dest="cap", type=int, help="series cap (default MULTBOUND_MAX_ORDER or 4096)")
    m.add_argument("--theorem", choices=["pure", "toric", "mixed"], help="bound shown side by side")
    _add_symbols(m, ["delta", "chi"])
    m.set_defaults(func=cmd_mult)

    b = sub.add_parser("bound", help="evaluate an explicit multiplicity bound")
    b.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    b.add_argument("--theorem", required=True, choices=list(_REQUIRED))
    _add_symbols(b, ["n", "delta", "d", "dz", "dx", "q", "chi", "m", "D"])
    b.add_argument("--delta-file", help="Delta: Newton polytope of P (polytope JSON or list of points)")
    b.add_argument("--field-file", help="Delta_xi: vector field (problem file or field JSON)")
    b.add_argument("--example", help="Delta_xi from a builtin problem")
    b.add_argument("--a", type=int, default=5, help="a: exponent for the power-a example")
    b.set_defaults(func=cmd_bound)

    p = sub.add_parser("polytope", help="lattice polytope computations")
    p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    p.add_argument("action", choices=["hull", "volume", "ivol", "mixed-volume", "quermass"])
    p.add_argument("--body", help="polytope JSON or list of points")
    p.add_argument("--bodies", nargs="+", help="n bodies for the mixed volume V(K_1, ..., K_n)")
    p.add_argument("-j", type=int, help="j: quermassintegral index")
    p.add_argument("--max-dim", type=int, help=f"dimension guard (default {poly.MAX_DIM})")
    p.add_argument("--max-box", type=int, help=f"lattice enumeration guard (default {poly.MAX_BOX})")
    p.set_defaults(func=cmd_polytope)

    v = sub.add_parser("verify", help="seeded property suites against brute-force oracles")
    v.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--log", help="write one JSON line per trial to this file")
    _add_symbols(v, ["n", "delta", "d"])
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("example", help="print a builtin problem file")
    e.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    e.add_argument("name", help="ramanujan, parabola, power-a or linear-diagonal")
    e.add_argument("--a", type=int, default=5, help="a: exponent for power-a")
    e.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"multbound: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MultboundError, ArithmeticError, ValueError) as exc:
        print(f"multbound: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
