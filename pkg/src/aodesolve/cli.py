"""Command-line interface.

    aodesolve decompose FILE [--algebraic|--differential] [--json]
    aodesolve dimension FILE
    aodesolve solve FILE [--format simple|minpoly|both] [--json]
    aodesolve exists FILE
    aodesolve puiseux FILE --order N [--at 0|inf]
    aodesolve invert FILE --components i,j,...

Exit codes: 0 success, 1 usage or input error, 2 a computation cap was
hit, 3 the input violates the dimension precondition.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Dict, List, Optional

from .algsolve import InitialDatumError
from .diffring import FuelExhausted
from .factor import DEFAULT_DEGREE_CAP, FactorizationCapError
from .numberfield import DEFAULT_EXTENSION_CAP, ExtensionCapError
from .parse import ParseError, parse_file
from .puiseux import residual_order
from .solver import (
    DimensionError,
    OrderError,
    decide_existence,
    invert_components,
    series_solutions,
    simple_system_solve,
)
from .systems import DiffSystem, Shape, dimension, own_dimension
from .thomas import DEFAULT_FUEL, algebraic_decompose, differential_decompose

SCHEMA = 1
CAP_ERRORS = (FuelExhausted, FactorizationCapError, ExtensionCapError, InitialDatumError, OrderError)
CONFIG_KEYS = {"max-degree": int, "max-extension": int, "fuel": int, "log": str, "seed": int}
DEFAULTS = {"max-degree": DEFAULT_DEGREE_CAP, "max-extension": DEFAULT_EXTENSION_CAP,
            "fuel": DEFAULT_FUEL, "log": None, "seed": 0}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def read_config(path: str) -> Dict[str, object]:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("_", "-")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
            try:
                out[key] = CONFIG_KEYS[key](value)
            except ValueError:
                raise UsageError(f"{path}:{n}: bad value for {key}: {value!r}") from None
    return out


def settings(args) -> Dict[str, object]:
    conf = dict(DEFAULTS)
    if args.config:
        conf.update(read_config(args.config))
    for key in CONFIG_KEYS:
        val = getattr(args, key.replace("-", "_"))
        if val is not None:
            conf[key] = val
    return conf


# -----------------------------------------------------------------------------
# emitters
# -----------------------------------------------------------------------------


def system_doc(system: DiffSystem, shape: Optional[Shape] = None, **extra) -> dict:
    doc = {
        "equations": [str(f) for f in system.equations],
        "inequations": [str(u) for u in system.inequations],
    }
    if shape is not None:
        doc["type"] = shape.type
        doc["t"] = str(shape.t) if shape.t is not None else None
        doc["free_variables"] = [str(v) for v in shape.free]
        doc["parametric_variable"] = str(shape.parametric) if shape.parametric is not None else None
    doc.update(extra)
    return doc


def _system_text(system: DiffSystem, indent="  ") -> List[str]:
    lines = [indent + line for line in system.lines()]
    return lines or [indent + "(no conditions)"]


def _shape_text(shape: Shape) -> str:
    parts = [f"type {shape.type}"]
    if shape.type == "I":
        parts.append(f"first-order in {shape.t}")
    if shape.parametric is not None:
        parts.append(f"parametric {shape.parametric}")
    if shape.free:
        parts.append("free " + ", ".join(map(str, shape.free)))
    return ", ".join(parts)


def emit(doc: dict, text: List[str], as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(text) + "\n")


# -----------------------------------------------------------------------------
# commands
# -----------------------------------------------------------------------------


def cmd_decompose(S: DiffSystem, args, conf, log: List[str], out) -> dict:
    kw = {"fuel": conf["fuel"], "log": log}
    dec = algebraic_decompose(S, **kw) if args.algebraic else differential_decompose(S, **kw)
    systems = []
    text = [f"{dec.mode} decomposition: {len(dec.systems)} system(s)"]
    for i, (s, sh) in enumerate(zip(dec.systems, dec.shapes), 1):
        dim = own_dimension(s)
        systems.append(system_doc(s, sh, dimension=dim))
        text.append(f"system {i}: {_shape_text(sh)}, dimension {dim}")
        text.extend(_system_text(s))
    doc = {"mode": dec.mode, "systems": systems}
    emit(_document(S, "decompose", conf, doc, log), text, args.json, out)
    return doc


def cmd_dimension(S: DiffSystem, args, conf, log, out) -> dict:
    dim = dimension(S, fuel=conf["fuel"], log=log)
    doc = {"dimension": dim}
    emit(_document(S, "dimension", conf, doc, log), [str(dim)], args.json, out)
    return doc


def cmd_solve(S: DiffSystem, args, conf, log, out) -> dict:
    res = simple_system_solve(S, fuel=conf["fuel"], max_degree=conf["max-degree"],
                              cap=conf["max-extension"], minpoly=args.format != "simple", log=log)
    systems, minpolys, text = [], [], []
    for i, s in enumerate(res.systems, 1):
        systems.append(system_doc(s.system, s.shape, shift_family=s.shift_family, origin=s.origin))
        head = f"system {i}: {_shape_text(s.shape)}"
        if s.shift_family:
            head += ", shift family (x -> x + c)"
        if args.format != "minpoly":
            text.append(head)
            text.extend(_system_text(s.system))
        for mp in s.minpoly:
            minpolys.append({"system": i, "polynomials": [str(q) for _, q in mp.polys],
                             "degree_bound": mp.bound, "branches": mp.count})
            if args.format != "simple":
                bound = f", degree bound {mp.bound}" if mp.bound is not None else ""
                text.append(f"  minimal polynomial system of system {i}: {mp}{bound}")
    if not res.systems:
        text.append("no algebraic solutions")
    doc = {"mode": "solve", "systems": systems, "diagnostics": res.diagnostics}
    if args.format != "simple":
        doc["minimal_polynomial_systems"] = minpolys
    emit(_document(S, "solve", conf, doc, log), text, args.json, out)
    return doc


def cmd_exists(S: DiffSystem, args, conf, log, out) -> dict:
    v = decide_existence(S, fuel=conf["fuel"], cap=conf["max-extension"], max_degree=conf["max-degree"])
    doc = {"verdict": v.verdict, "reason": v.reason,
           "witness": system_doc(v.witness) if v.witness is not None else None}
    text = [v.verdict, f"  {v.reason}"]
    if v.witness is not None:
        text.append("  witness:")
        text.extend(_system_text(v.witness, "    "))
    emit(_document(S, "exists", conf, doc, log), text, args.json, out)
    return doc


def _expansion_targets(S: DiffSystem, point: str, conf, log, diag: List[str]):
    """Simple systems to expand: algebraic solve outputs plus, at 0, the
    first-order subsystems of the decomposition."""
    kw = {"fuel": conf["fuel"], "log": log}
    dim = dimension(S, fuel=conf["fuel"])
    targets = []
    dec = differential_decompose(S, **kw)
    if dim == 1:
        res = simple_system_solve(S, fuel=conf["fuel"], max_degree=conf["max-degree"],
                                  cap=conf["max-extension"], minpoly=False, log=log)
        targets.extend((s.system, s.shape) for s in res.systems)
    for s, sh in zip(dec.systems, dec.shapes):
        if sh.type == "I":
            if point == "0":
                targets.append((s, sh))
            else:
                diag.append(f"skipped first-order subsystem at infinity: {s}")
        elif sh.type in ("II", "III", "IV") and dim != 1:
            targets.append((s, sh))
        elif sh.type == "other":
            diag.append(f"skipped subsystem of unsupported shape: {s}")
    return targets


def cmd_puiseux(S: DiffSystem, args, conf, log, out) -> dict:
    N = args.order
    if N < 1:
        raise UsageError("--order must be positive")
    point = args.at
    diag: List[str] = []
    systems, text = [], []
    for i, (s, sh) in enumerate(_expansion_targets(S, point, conf, log, diag), 1):
        text.append(f"system {i}: {_shape_text(sh)}")
        text.extend(_system_text(s))
        branches = []
        for slack in (8, 16, 32):
            tuples = series_solutions(s, N + slack, point, sh, conf["max-extension"], conf["max-degree"],
                                      parametric=args.parametric)
            reports = [residual_order(S, t.completed(S.universe), N, point) for t in tuples]
            if all(r.verdict != "inconclusive" for r in reports):
                break
        for tup, rep in zip(tuples, reports):
            vals = tup.completed(S.universe)
            comps = {str(v): str(vals[v].truncate(N)) for v in sorted(vals)}
            field = tup.field.minpoly_str() if tup.field is not None else None
            branches.append({"components": comps, "conjugates": tup.count, "field": field,
                             "residual": rep.verdict,
                             "valuations": [str(e.valuation) if e.valuation is not None else None
                                            for e in rep.entries]})
            label = f"  branch ({tup.count} conjugate{'s' if tup.count > 1 else ''}"
            label += f", {field} = 0)" if field else ")"
            text.append(f"{label}: residual {rep.verdict} at order {N}")
            for v in sorted(vals):
                text.append(f"    {v} = {vals[v].truncate(N)}")
        systems.append(system_doc(s, sh, branches=branches))
    text.extend(f"note: {d}" for d in diag)
    doc = {"mode": "puiseux", "order": N, "point": point, "systems": systems, "diagnostics": diag}
    emit(_document(S, "puiseux", conf, doc, log), text, args.json, out)
    return doc


def cmd_invert(S: DiffSystem, args, conf, log, out) -> dict:
    comps = []
    for part in args.components.split(","):
        part = part.strip()
        if part:
            comps.append(int(part) if part.isdigit() else part)
    try:
        T = invert_components(S, comps)
    except ValueError as e:
        raise UsageError(str(e)) from None
    doc = {"mode": "invert", "components": [str(c) for c in comps], "system": system_doc(T)}
    emit(_document(S, "invert", conf, doc, log), T.lines(), args.json, out)
    return doc


COMMANDS = {
    "decompose": cmd_decompose,
    "dimension": cmd_dimension,
    "solve": cmd_solve,
    "exists": cmd_exists,
    "puiseux": cmd_puiseux,
    "invert": cmd_invert,
}


def _document(S: DiffSystem, command: str, conf, body: dict, log) -> dict:
    doc = {"schema": SCHEMA, "command": command, "input": S.lines(), "seed": conf["seed"]}
    doc.update(body)
    return doc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="system file (.sys)")
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--max-degree", type=int, help="factorization degree cap")
    common.add_argument("--max-extension", type=int, help="number field degree cap")
    common.add_argument("--fuel", type=int, help="decomposition iteration cap")
    common.add_argument("--log", help="write the decomposition log to this path")
    common.add_argument("--seed", type=int, help="seed for sampling-based checks")
    common.add_argument("--config", help="file of 'key = value' defaults")
    common.add_argument("--timing", action="store_true", help="report wall time on stderr")

    p = _Parser(prog="aodesolve", description="Algebraic and Puiseux series solutions of autonomous AODE systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    d = sub.add_parser("decompose", parents=[common], help="Thomas decomposition")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--algebraic", action="store_true")
    g.add_argument("--differential", action="store_true")
    sub.add_parser("dimension", parents=[common], help="algebraic dimension")
    s = sub.add_parser("solve", parents=[common], help="simple algebraic systems of all algebraic solutions")
    s.add_argument("--format", choices=("simple", "minpoly", "both"), default="both")
    sub.add_parser("exists", parents=[common], help="decide existence of Puiseux series solutions")
    q = sub.add_parser("puiseux", parents=[common], help="truncated Puiseux expansions with residual check")
    q.add_argument("--order", type=int, required=True)
    q.add_argument("--at", choices=("0", "inf"), default="0")
    q.add_argument("--parametric", help="constant substituted for a parametric variable (default: x)")
    i = sub.add_parser("invert", parents=[common], help="replace components by their reciprocals")
    i.add_argument("--components", required=True, help="comma-separated 1-based indices or names")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        conf = settings(args)
        random.seed(conf["seed"])
        S = parse_file(args.file)
        log: List[str] = []
        COMMANDS[args.command](S, args, conf, log, out)
        if conf["log"]:
            with open(conf["log"], "w", encoding="utf-8") as fh:
                fh.write("\n".join(log) + ("\n" if log else ""))
    except (UsageError, ParseError, OSError) as e:
        print(f"aodesolve: error: {e}", file=sys.stderr)
        return 1
    except CAP_ERRORS as e:
        print(f"aodesolve: cap exceeded: {e}", file=sys.stderr)
        return 2
    except DimensionError as e:
        print(f"aodesolve: precondition: {e}", file=sys.stderr)
        return 3
    if args.timing:
        print(f"time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return 0


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
