"""Command-line front end: ``koszulspec <command> [problem.json] [options]``.

Exit codes: 0 ok, 1 property failure, 2 invalid input, 3 unsupported
(non-split spectrum or characteristic), 4 resolution cap or stabilization.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Any, List, Optional, Sequence

from .errors import (CapExceeded, EmptyVariety, InfiniteDimensional, KoszulSpecError, NotStabilized,
                     SpectrumNotSplit, UnsupportedCharacteristic)
from .field import FieldSpec
from .groebner import GREVLEX, Ideal, MonomialOrder, krull_dim, quotient_dim, INFINITE
from .koszul import MatrixTuple, koszul_dims
from .parser import parse_poly
from .spectra import joint_kernel_dim, point_spectrum, taylor_membership, taylor_spectrum
from .suites import SUITES, run_suite
from .variety import (CyclicModule, h1_lower_bound, inflated_index, jacobian_rank,
                      multiplication_matrices, point_spectrum_membership, samuel_values,
                      serre_check, tor_dims_at_point, tor_polynomial)

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_CAP = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# Problem files
# ---------------------------------------------------------------------------

class Problem:
    def __init__(self, raw: dict, field_override: str | None = None):
        if not isinstance(raw, dict):
            raise InputError("problem file must hold a JSON object")
        self.raw = raw
        self.field = FieldSpec.parse(field_override or str(raw.get("field", "QQ")))
        vars = raw.get("vars")
        if not isinstance(vars, list) or not all(isinstance(v, str) for v in vars):
            raise InputError("'vars' must be a list of names")
        if len(set(vars)) != len(vars):
            raise InputError("duplicate variable names")
        self.vars = tuple(vars)
        has_ideal, has_tuple = "ideal" in raw, "tuple" in raw
        if has_ideal == has_tuple:
            raise InputError("exactly one of 'ideal' and 'tuple' must be present")
        self.ideal: Optional[Ideal] = None
        self.tuple: Optional[MatrixTuple] = None
        if has_ideal:
            gens = raw["ideal"]
            if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
                raise InputError("'ideal' must be a list of polynomial strings")
            self.ideal = Ideal([parse_poly(g, self.vars, self.field) for g in gens], self.vars, self.field)
        else:
            t = raw["tuple"]
            if not isinstance(t, dict) or "matrices" not in t:
                raise InputError("'tuple' must be an object with 'matrices'")
            mats = t["matrices"]
            dim = t.get("dim")
            if len(mats) != len(self.vars):
                raise InputError(f"{len(mats)} matrices for {len(self.vars)} variables")
            if dim is None and not mats:
                raise InputError("'dim' is required for an empty tuple")
            conv = [[[self.field.parse_scalar(str(c)) for c in row] for row in m] for m in mats]
            self.tuple = MatrixTuple(conv, self.field, dim)
        self.points = [self.parse_point(p) for p in raw.get("points", [])]
        self.r_max = raw.get("r_max")
        self.seed = raw.get("seed")

    @property
    def n(self) -> int:
        return len(self.vars)

    def parse_point(self, p) -> tuple:
        if isinstance(p, str):
            p = [c for c in p.split(",")] if p.strip() else []
        if len(p) != self.n:
            raise InputError(f"point {p} has {len(p)} coordinates, expected {self.n}")
        return tuple(self.field.parse_scalar(str(c)) for c in p)

    def fmt_point(self, a) -> List[str]:
        return [self.field.format(c) for c in a]


def load_problem(path: str, field_override: str | None = None) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from None
    return Problem(raw, field_override)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _points(prob: Problem, args) -> List[tuple]:
    if args.point is not None:
        return [prob.parse_point(args.point)]
    if prob.points:
        return prob.points
    return [tuple(prob.field.zero for _ in range(prob.n))]


def _r_max(prob: Problem, args) -> int:
    if args.rmax is not None:
        return args.rmax
    if prob.r_max is not None:
        return int(prob.r_max)
    return prob.n + 6


def _need_ideal(prob: Problem, cmd: str) -> CyclicModule:
    if prob.ideal is None:
        raise InputError(f"'{cmd}' needs an ideal problem file")
    return CyclicModule(prob.ideal)


def cmd_gb(prob: Problem, args) -> dict:
    R = _need_ideal(prob, "gb")
    order = MonomialOrder.parse(args.order) if args.order else GREVLEX
    G = R.ideal.gb(order)
    qd = quotient_dim(R.ideal, order)
    try:
        kd = krull_dim(R.ideal)
    except EmptyVariety:
        kd = None
    return {"order": args.order or "grevlex", "gb": [str(g) for g in G],
            "quotient_dim": "INFINITE" if qd is INFINITE else qd, "krull_dim": kd}


def cmd_homology(prob: Problem, args) -> dict:
    rows = []
    for a in _points(prob, args):
        if prob.tuple is not None:
            rep = koszul_dims(prob.tuple, a)
            rep_d = {"d": list(rep.d), "index": rep.index, "resolvent": not any(rep.d)}
        else:
            rep = tor_dims_at_point(CyclicModule(prob.ideal), a, cap=args.cap)
            rep_d = rep.as_dict()
        rows.append({"point": prob.fmt_point(a), **rep_d})
    return {"homology": rows}


def cmd_spectrum(prob: Problem, args, mode: str | None = None) -> dict:
    mode = mode or args.mode
    if prob.tuple is not None:
        x = prob.tuple
        if args.point is not None:
            a = prob.parse_point(args.point)
            member = taylor_membership(x, a) if mode == "taylor" else joint_kernel_dim(x, a) > 0
            return {"mode": mode, "point": prob.fmt_point(a), "member": member}
        spec = taylor_spectrum(x) if mode == "taylor" else point_spectrum(x)
        return {"mode": mode, "points": [prob.fmt_point(p) for p in spec.points],
                "complete": spec.complete}
    R = CyclicModule(prob.ideal)
    if args.point is not None:
        a = prob.parse_point(args.point)
        member = R.contains_point(a) if mode == "taylor" else point_spectrum_membership(R, a)
        return {"mode": mode, "point": prob.fmt_point(a), "member": member}
    try:
        x, _ = multiplication_matrices(R.ideal)
    except InfiniteDimensional:
        raise InputError("the variety is not finite; pass --point to test membership") from None
    spec = taylor_spectrum(x) if mode == "taylor" else point_spectrum(x)
    return {"mode": mode, "points": [prob.fmt_point(p) for p in spec.points], "complete": spec.complete}


def cmd_point_spectrum(prob: Problem, args) -> dict:
    return cmd_spectrum(prob, args, mode="point")


def _poly_dict(p):
    return p.as_dict() if p is not None else None


def cmd_samuel(prob: Problem, args) -> dict:
    R = _need_ideal(prob, "samuel")
    r_max = _r_max(prob, args)
    rows = []
    for a in _points(prob, args):
        table = samuel_values(R, a, r_max)
        row = {"point": prob.fmt_point(a), "values": table.values, "fitted": _poly_dict(table.fitted)}
        if table.fitted is None:
            raise NotStabilized(table.diagnostic)
        row["multiplicity"] = table.fitted.leading_difference()
        row["samuel_degree"] = table.fitted.degree
        rows.append(row)
    return {"r_max": r_max, "samuel": rows}


def cmd_torpoly(prob: Problem, args) -> dict:
    R = _need_ideal(prob, "torpoly")
    r_max = _r_max(prob, args)
    rows = []
    for a in _points(prob, args):
        tor = tor_polynomial(R, a, r_max)
        sam = samuel_values(R, a, r_max)
        full_dim = krull_dim(R.translated(a)) == R.n
        expected = [0] * r_max if full_dim else sam.values
        infl = [inflated_index(R, a, r) for r in range(1, r_max + 1)]
        rows.append({
            "point": prob.fmt_point(a),
            "tor_dims": tor.tor_dims,
            "tor_polynomial": tor.values,
            "samuel": sam.values,
            "fitted": _poly_dict(tor.fitted),
            "tor_equals_samuel_law": tor.values == expected,
            "inflated_index": [i.value for i in infl],
            "inflated_index_consistent": all(i.consistent for i in infl),
        })
    return {"r_max": r_max, "torpoly": rows}


def cmd_serre(prob: Problem, args) -> dict:
    R = _need_ideal(prob, "serre")
    rows = []
    for a in _points(prob, args):
        rep = serre_check(R, a, _r_max(prob, args))
        rows.append({"point": prob.fmt_point(a), "dim": rep.dim_d, "e": rep.e,
                     "index": rep.index_at_point, "serre_consistent": rep.serre_consistent,
                     "samuel_degree": rep.samuel_degree, "leading_difference": rep.leading_difference,
                     "samuel": rep.samuel.values})
    return {"serre": rows}


def cmd_h1bound(prob: Problem, args) -> dict:
    R = _need_ideal(prob, "h1bound")
    F = prob.field
    rows = []
    for a in _points(prob, args):
        prof = h1_lower_bound(list(R.ideal.gens), a)
        d1 = tor_dims_at_point(R, a, cap=args.cap).d[1] if R.n >= 1 else 0
        rows.append({
            "point": prob.fmt_point(a),
            "exponents": prof.exponents,
            "minima": prof.minima,
            "sets": [[j + 1 for j in s] for s in prof.sets],
            "vectors": [[F.format(c) for c in v] for v in prof.vectors],
            "t": prof.independent_count,
            "jacobian_rank": jacobian_rank(list(R.ideal.gens), a),
            "measured_d1": d1,
            "bound_holds": prof.independent_count <= d1,
        })
    return {"h1bound": rows}


COMMANDS = {
    "gb": cmd_gb,
    "homology": cmd_homology,
    "spectrum": cmd_spectrum,
    "point-spectrum": cmd_point_spectrum,
    "samuel": cmd_samuel,
    "torpoly": cmd_torpoly,
    "serre": cmd_serre,
    "h1bound": cmd_h1bound,
}


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _digest(payload: Any) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def _render_pretty(report: dict) -> str:
    lines = [f"command: {report['command']}", f"inputs:  {report['inputs_digest'][:16]}"]

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_scalar(v)}")
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, (dict, list)) and not _flat(item):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {_scalar(item)}")

    walk(report.get("outputs", {}), 0)
    for d in report.get("diagnostics", []):
        lines.append(f"note: {d}")
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and all(
        not isinstance(y, (dict, list)) for y in x)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _emit(report: dict, pretty: bool):
    if pretty:
        print(_render_pretty(report))
    else:
        print(json.dumps(report, sort_keys=True))


def _error_report(command: str, code: int, exc: BaseException) -> dict:
    return {"command": command, "error": {"exit_code": code, "type": type(exc).__name__, "message": str(exc)}}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="QQ or GF(p); overrides the problem file")
    common.add_argument("--order", help="grevlex, lex or block(k) for the gb command")
    common.add_argument("--rmax", type=int, help="largest r for Samuel and Tor tables")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--cap", type=int, help="resolution length cap (default n+3)")
    common.add_argument("--point", help="comma-separated coordinates, e.g. 0,1/2,3")

    parser = argparse.ArgumentParser(prog="koszulspec", description="Koszul homology, spectra and local invariants")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("problem", help="JSON problem file")
        if name == "spectrum":
            p.add_argument("--mode", choices=("taylor", "point"), default="taylor")
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--count", type=int)
    return parser


def _exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (SpectrumNotSplit, UnsupportedCharacteristic)):
        return EXIT_UNSUPPORTED
    if isinstance(exc, (CapExceeded, NotStabilized)):
        return EXIT_CAP
    return EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    diagnostics: List[str] = []
    try:
        if args.command == "verify":
            seed = 7 if args.seed is None else args.seed
            rep = run_suite(args.suite, seed=seed, count=args.count)
            outputs = {
                "suite": rep.name, "seed": rep.seed, "count": rep.count, "passed": rep.passed,
                "instances": [{"index": r.index, "passed": r.passed, "detail": r.detail} for r in rep.results],
            }
            digest = _digest({"command": "verify", "suite": args.suite, "seed": seed, "count": args.count})
            code = EXIT_OK if rep.passed else EXIT_PROPERTY
            if not rep.passed:
                diagnostics.append(f"{len(rep.failures)} of {rep.count} instances failed")
        else:
            prob = load_problem(args.problem, args.field)
            outputs = COMMANDS[args.command](prob, args)
            opts = {k: getattr(args, k, None) for k in ("field", "order", "rmax", "cap", "point", "mode")}
            digest = _digest({"command": args.command, "problem": prob.raw, "options": opts})
            code = EXIT_OK
    except KoszulSpecError as exc:
        code = _exit_code_for(exc)
        print(f"error: {exc}", file=sys.stderr)
        _emit(_error_report(args.command, code, exc), False)
        return code
    except (InputError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(_error_report(args.command, EXIT_INPUT, exc), False)
        return EXIT_INPUT
    report = {
        "command": args.command,
        "inputs_digest": digest,
        "outputs": outputs,
        "diagnostics": diagnostics,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }
    _emit(report, args.pretty)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
