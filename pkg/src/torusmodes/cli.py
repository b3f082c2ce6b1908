"""Batch command-line front end.

Commands: expand, verify-suite, reduce, anomaly, lattice-trace,
transform-check.  JSON goes to stdout, diagnostics to stderr; exit codes:
0 success / all checks pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import elliptic as el
from . import hha
from . import lattice as lt
from . import numerics as nm
from . import qseries as qs
from . import verify
from .scaled import format_fraction


class UsageError(ValueError):
    pass


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}")


def _parse_gamma(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("gamma must be four comma-separated integers a,b,c,d")
    return tuple(int(p) for p in parts)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _load_spec(name: str) -> hha.HHASpec:
    if name in hha.BUILTIN_SPECS:
        return hha.BUILTIN_SPECS[name]()
    try:
        return hha.HHASpec.load(name)
    except FileNotFoundError:
        raise UsageError(f"no such HHA spec file or builtin: {name!r}")


def _load_lattice(name: str) -> lt.EvenLattice:
    if name in lt.PRESETS:
        return lt.PRESETS[name]()
    try:
        return lt.EvenLattice.load(name)
    except FileNotFoundError:
        raise UsageError(f"no such lattice file or preset: {name!r}")


def _zero_mode_name(sym: hha.CorrSymbol) -> str:
    counts = {}
    for g_ in sym.modes:
        counts[g_] = counts.get(g_, 0) + 1
    inner = " ".join(f"{g_}0^{c}" for g_, c in sorted(counts.items()))
    return f"F({inner})"


def cmd_expand(args) -> int:
    fn = args.function
    order = args.order
    if fn.startswith("G_"):
        _emit(qs.eisenstein(int(fn[2:]), order).to_json())
    elif fn.startswith("eta_"):
        _emit(qs.eta_power(int(fn[4:]), order).to_json())
    elif fn in ("Ptilde_1", "P~1"):
        _emit(el.p_tilde_1(order).to_json())
    elif fn.startswith("P_"):
        _emit(el.p_expansion(int(fn[2:]), order).to_json())
    elif fn.startswith("g_"):
        i, j = (int(t) for t in fn[2:].split("_"))
        _emit(el.g_expansion(i, j, order).to_json())
    elif fn.startswith("wp_"):
        _emit(el.wp_laurent(int(fn[3:]), args.z_order, order).to_json())
    else:
        raise UsageError(f"unknown function id {fn!r}")
    return 0


def cmd_verify_suite(args) -> int:
    report = verify.run_suite(args.suite, order=args.order, tol=args.tol, seed=args.seed)
    _emit(report)
    return 0 if report["status"] == "pass" else 1


def cmd_reduce(args) -> int:
    spec = _load_spec(args.spec)
    gens = hha.parse_zero_mode_correlator(args.correlator)
    unknown = [g_ for g_ in gens if g_ not in spec.weights]
    if unknown:
        raise UsageError(f"correlator references unknown generators {unknown}")
    expr = hha.invert_to_full(spec, gens)
    _emit({"correlator": args.correlator, "spec": args.spec,
           "full_correlator_expansion": expr.to_json()})
    return 0


def cmd_anomaly(args) -> int:
    spec = _load_spec(args.spec)
    gens = hha.parse_zero_mode_correlator(args.correlator)
    graded = hha.anomaly_of_zero_modes(spec, gens)
    out = {}
    for k, bucket in graded:
        rows = []
        for sym, coeff in sorted(bucket.items(), key=lambda kv: repr(kv[0])):
            beta = coeff.shift(2 * k)  # report against beta = c/(2 pi i (c tau + d))
            comps = beta.comps
            if set(comps) <= {0}:
                coeff_str = format_fraction(comps.get(0, 0))
            else:
                coeff_str = repr(beta)
            rows.append([coeff_str, _zero_mode_name(sym)])
        out[f"k{k}"] = rows
    _emit(out)
    return 0


def cmd_lattice_trace(args) -> int:
    lat = _load_lattice(args.lattice)
    closed = lt.quasimod_rhs(lat, args.axis, args.n, args.order)
    result = {"lattice": args.lattice, "n": args.n, "order": args.order,
              "axis": args.axis, "closed_form": closed.to_json()}
    status = 0
    if args.oracle:
        oracle = lt.fock_trace_oracle(lat, args.axis, args.n, args.order)
        equal = (closed - oracle).is_zero()
        result["oracle"] = oracle.to_json()
        result["equal"] = equal
        if not equal:
            status = 1
    _emit(result)
    return status


def cmd_transform_check(args) -> int:
    report = nm.verify_modular(args.function, _parse_gamma(args.gamma),
                               _parse_complex(args.z), _parse_complex(args.tau),
                               truncation=args.order, tol=args.tol)
    _emit(report)
    return 0 if report["status"] == "pass" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusmodes",
        description="Exact q-expansions, quasi-Jacobi special functions, and "
                    "zero-mode correlator reductions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="emit a named series as JSON")
    p.add_argument("--function", required=True,
                   help="G_2k | P_k | Ptilde_1 | g_i_j (g^i_j) | wp_k | eta_l")
    p.add_argument("--order", type=int, default=qs.DEFAULT_ORDER)
    p.add_argument("--z-order", type=int, default=8, help="z order for wp_k")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify-suite", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify_suite)

    p = sub.add_parser("reduce", help="expand a zero-mode correlator into full correlators")
    p.add_argument("--spec", required=True, help="HHA spec JSON file, or weight1|weight2")
    p.add_argument("--correlator", required=True, help='e.g. "x0^3"')
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("anomaly", help="modular anomaly of a zero-mode correlator")
    p.add_argument("--spec", required=True)
    p.add_argument("--correlator", required=True)
    p.set_defaults(func=cmd_anomaly)

    p = sub.add_parser("lattice-trace", help="closed-form lattice trace (and oracle)")
    p.add_argument("--lattice", required=True, help="lattice JSON file, or e8|e8x3|a1")
    p.add_argument("--n", type=int, required=True, help="zero-mode power")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--axis", type=int, default=0)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_lattice_trace)

    p = sub.add_parser("transform-check", help="check one modular transformation law")
    p.add_argument("--function", required=True)
    p.add_argument("--gamma", required=True, help="a,b,c,d")
    p.add_argument("--z", default="0.1+0.3i")
    p.add_argument("--tau", default="1.2i")
    p.add_argument("--order", type=int, default=60)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_transform_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
