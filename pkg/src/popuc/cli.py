"""Command-line entry point: ``popuc generate | transform | verify``.

Exit codes: 0 success, 1 failed verification or numerical failure, 2 malformed
input, 3 chain-sequence violation, 4 Verblunsky coefficient of modulus >= 1,
5 refusal of the inverse weight transform (SPPCS or undecidable chain).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import chainseq
from .errors import (
    Inconclusive,
    InvalidArgument,
    JNonexistence,
    NotAChainSequence,
    PopucError,
    VerblunskyBound,
)
from .measures import moment_table, quadrature_hat
from .recurrence import generate_rq
from .reference import Example1, Example2, Example3, ExampleParams
from .transforms import (
    dg1_from_opuc,
    dg_symmetric_coeffs,
    opuc_from_dg1,
    opuc_tilde_from_dg2,
    popuc_linkage_residual,
    t_family,
    weight_transform_forward,
    weight_transform_inverse,
)
from .verification import verify_example
from .zeros import zero_levels

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CHAIN = 3
EXIT_VERBLUNSKY = 4
EXIT_REFUSED = 5

DEFAULT_TOL = 1e-10
DIRECTIONS = ("opuc-to-dg1", "dg1-to-opuc", "dg2-tilde", "applic1", "applic2", "t-family", "dg-symmetric")


class InputError(Exception):
    """Malformed command-line or file input."""


# ---------------------------------------------------------------- serialization


def _num(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "null"
    if x == 0:
        return "0.0"
    text = format(x, ".17g")
    return text if any(ch in text for ch in ".en") else text + ".0"


def _emit(obj, out: io.StringIO, indent: int):
    pad = "  " * indent
    if obj is None or isinstance(obj, bool):
        out.write(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(_num(obj))
    elif isinstance(obj, (complex, np.complexfloating)):
        out.write(f"[{_num(obj.real)}, {_num(obj.imag)}]")
    elif isinstance(obj, str):
        out.write(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.write(f"{pad}  {json.dumps(str(k))}: ")
            _emit(v, out, indent + 1)
            out.write(",\n" if i < len(items) - 1 else "\n")
        out.write(pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if all(isinstance(v, (int, float, complex, np.number)) for v in seq):
            out.write("[")
            for i, v in enumerate(seq):
                _emit(v, out, indent)
                if i < len(seq) - 1:
                    out.write(", ")
            out.write("]")
            return
        out.write("[\n")
        for i, v in enumerate(seq):
            out.write(pad + "  ")
            _emit(v, out, indent + 1)
            out.write(",\n" if i < len(seq) - 1 else "\n")
        out.write(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, 17 significant digits, complex as [re, im]."""
    buf = io.StringIO()
    _emit(obj, buf, 0)
    buf.write("\n")
    return buf.getvalue()


def indexed(start: int, values) -> dict:
    return {"start_index": int(start), "values": list(values)}


def polys(seq) -> list:
    return [list(p.coeffs) for p in seq]


def quadrature_csv(angles, weights) -> str:
    lines = ["j,theta,weight"]
    for j, (th, w) in enumerate(zip(angles, weights), start=1):
        lines.append(f"{j},{format(float(th), '.17g')},{format(float(w), '.17g')}")
    return "\n".join(lines) + "\n"


def _write(text: str, target: str | None, name: str):
    """Write to stdout for ``-``/None, into a directory when ``target`` ends with / or exists as one."""
    if target in (None, "-"):
        sys.stdout.write(text)
        return
    path = Path(target)
    if target.endswith(("/", os.sep)) or path.is_dir():
        path.mkdir(parents=True, exist_ok=True)
        path = path / name
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}", file=sys.stderr)


# ---------------------------------------------------------------- input parsing


def _parse_complex(tok) -> complex:
    if isinstance(tok, (list, tuple)):
        if len(tok) != 2:
            raise InputError(f"complex number must be [re, im], got {tok!r}")
        return complex(float(tok[0]), float(tok[1]))
    if isinstance(tok, (int, float)):
        return complex(tok)
    try:
        return complex(str(tok).strip().replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise InputError(f"cannot parse number {tok!r}") from exc


def _parse_real(tok) -> float:
    z = _parse_complex(tok)
    if z.imag != 0:
        raise InputError(f"expected a real number, got {tok!r}")
    return z.real


def _sequence_from_json(obj, name: str):
    """Accept a bare list or {start_index, values}; returns (start, values)."""
    if isinstance(obj, dict):
        if "values" not in obj:
            raise InputError(f"{name}: object needs a 'values' field")
        return int(obj.get("start_index", 0)), obj["values"]
    if isinstance(obj, list):
        return None, obj
    raise InputError(f"{name}: expected a list or an object with 'values'")


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _list_arg(text: str, real: bool):
    """Inline comma list (optionally in brackets), or a JSON file path."""
    parse = _parse_real if real else _parse_complex
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    if text.endswith(".json") or Path(text).is_file():
        data = _load_json(text)
        return None, [parse(v) for v in _sequence_from_json(data, text)[1]], data
    toks = [t for t in text.split(",") if t.strip()]
    if not toks:
        raise InputError("empty sequence")
    return None, [parse(t) for t in toks], None


def _alpha_input(text: str, count: int, lazy: bool = False):
    """alpha_0.. from 'zeros', 'example2', a JSON file or an inline list."""
    if text == "zeros":
        return (lambda n: 0.0) if lazy else np.zeros(count)
    if text == "example2":
        return (lambda n: -1.0 / (n + 2)) if lazy else Example2.alpha(count)
    if text.endswith(".json") or Path(text).is_file():
        data = _load_json(text)
        if isinstance(data, dict) and "alpha" in data:
            data = data["alpha"]
        start, vals = _sequence_from_json(data, text)
        if start not in (None, 0):
            raise InputError(f"alpha must start at index 0, file declares {start}")
        return np.array([_parse_complex(v) for v in vals])
    return np.array(_list_arg(text, real=False)[1])


def _cd_input(args):
    """(c_1.., d_1..) from --c/--d, --input JSON, or --example."""
    if getattr(args, "example", None):
        return _example_cd(args)
    if getattr(args, "input", None):
        data = _load_json(args.input)
        if not isinstance(data, dict) or "c" not in data or "d" not in data:
            raise InputError("input file needs 'c' and 'd'")
        c_start, c = _sequence_from_json(data["c"], "c")
        d_start, d = _sequence_from_json(data["d"], "d")
        if c_start not in (None, 1) or d_start not in (None, 1):
            raise InputError("c and d must start at index 1")
        return np.array([_parse_real(v) for v in c]), np.array([_parse_real(v) for v in d])
    if args.c is None or args.d is None:
        raise InputError("give --c and --d, --input, or --example")
    c = np.array(_list_arg(args.c, real=True)[1], dtype=float)
    d = np.array(_list_arg(args.d, real=True)[1], dtype=float)
    return c, d


def _pad(seq: np.ndarray, size: int, name: str, fill_last: bool = True) -> np.ndarray:
    """Extend a short sequence by repeating its last entry."""
    if seq.size >= size:
        return seq[:size]
    if not fill_last or seq.size == 0:
        raise InputError(f"{name} needs {size} values, got {seq.size}")
    return np.concatenate([seq, np.full(size - seq.size, seq[-1])])


def _example_params(args) -> ExampleParams:
    return ExampleParams(
        int(args.example),
        c=float(args.c if args.c is not None else 0.0) if args.example == 1 else 0.0,
        t=float(getattr(args, "t", None) or 0.0),
        lam=float(args.lam if args.lam is not None else 0.5),
        eta=float(args.eta if args.eta is not None else 1.0),
        d1=float(args.d1),
    )


def _example_cd(args):
    p = _example_params(args)
    size = args.n + 2
    if p.id == 1:
        ex = Example1(p.c, p.d1)
        return ex.c_seq(size), ex.d_seq(size)
    if p.id == 3:
        ex = Example3(p.lam, p.eta, p.d1)
        return ex.c_seq(size), ex.d_seq(size)
    dg = t_family(Example2.alpha(size + 1), Example2.I, p.t, size)
    return dg.c.values[:size], np.concatenate([[p.d1], dg.d.values])[:size]


def _tol(args) -> float:
    if getattr(args, "tol", None) is not None:
        tol = float(args.tol)
    else:
        env = os.environ.get("POPUC_TOL")
        try:
            tol = float(env) if env else DEFAULT_TOL
        except ValueError as exc:
            raise InputError(f"POPUC_TOL is not a number: {env!r}") from exc
    if not tol > 0:
        raise InputError("tolerance must be positive")
    return tol


# ---------------------------------------------------------------- commands


def cmd_generate(args) -> int:
    c, d = _cd_input(args)
    n = args.n
    if n < 1:
        raise InputError("--n must be at least 1")
    c = _pad(c, n, "c")
    d = _pad(d, n, "d")
    pair = generate_rq(c, d, n)
    doc = {
        "command": "generate",
        "n": n,
        "c": indexed(1, c[:n]),
        "d": indexed(1, d[:n]),
        "R": indexed(0, polys(pair.R)),
        "Q": indexed(0, polys(pair.Q)),
    }
    rule = None
    if not args.no_zeros:
        levels = zero_levels(pair, n)
        rule = quadrature_hat(pair, levels[-1])
        doc["zeros"] = {"level": n, "theta": list(rule.angles), "weight": list(rule.weights),
                        "max_residual": float(np.max(levels[-1].residuals))}
    if n >= 2:
        table = moment_table(pair, n - 2)
        doc["moments"] = {
            "nu": indexed(table.nu.start, table.nu.values),
            "mu_hat": indexed(table.mu_hat.start, table.mu_hat.values),
            "mu_tilde": indexed(table.mu_tilde.start, table.mu_tilde.values),
        }
    if args.format == "csv":
        if rule is None:
            raise InputError("csv output needs the zeros")
        _write(quadrature_csv(rule.angles, rule.weights), args.out, "quadrature.csv")
        return EXIT_OK
    _write(to_json(doc), args.out, "generate.json")
    if rule is not None and args.out not in (None, "-") and (args.out.endswith("/") or Path(args.out).is_dir()):
        _write(quadrature_csv(rule.angles, rule.weights), args.out, "quadrature.csv")
    return EXIT_OK


def _transform_doc(args) -> dict:
    direction = args.direction
    n = args.n
    tol = _tol(args)
    doc = {"command": "transform", "direction": direction, "n": n}
    if direction == "applic1":
        alpha = weight_transform_forward(_alpha_input(args.alpha, n + 1), n)
        doc["alpha_hat"] = indexed(0, alpha.alpha)
    elif direction == "applic2":
        lazy = args.alpha in ("zeros", "example2")
        alpha = _alpha_input(args.alpha, n, lazy=lazy)
        I = _parse_complex(args.I) if args.I is not None else None
        try:
            out = weight_transform_inverse(alpha, args.M0, n, I=I)
        except JNonexistence as exc:
            raise _Refusal(str(exc), exc.verdict or chainseq.SPPCS) from exc
        except Inconclusive as exc:
            raise _Refusal(str(exc), chainseq.INCONCLUSIVE) from exc
        doc["M0"] = args.M0
        doc["alpha_tilde"] = indexed(0, out.alpha)
    elif direction in ("opuc-to-dg1", "t-family"):
        if direction == "t-family":
            if args.example is not None:
                alpha = np.zeros(n + 1) if args.example == 1 else Example2.alpha(n + 1)
                I = 0.5
            else:
                if args.alpha is None or args.I is None:
                    raise InputError("t-family needs --example or both --alpha and --I")
                alpha = _alpha_input(args.alpha, n + 1)
                I = _parse_complex(args.I)
            dg = t_family(alpha, I, args.t, n)
            doc["t"] = args.t
        else:
            if args.alpha is None or args.rho0 is None:
                raise InputError("opuc-to-dg1 needs --alpha and --rho0")
            alpha = _alpha_input(args.alpha, n + 1)
            dg = dg1_from_opuc(alpha, _parse_complex(args.rho0), n)
        doc["rho"] = indexed(0, dg.rho.rho.values)
        doc["c"] = indexed(1, dg.c.values)
        doc["d"] = indexed(2, dg.d.values)
        doc["m"] = indexed(0, dg.m.values)
        if direction == "opuc-to-dg1" and n >= 1:
            back = opuc_from_dg1(dg.pair(args.d1), n)
            doc["report"] = {"round_trip_residual": float(np.max(np.abs(back.alpha.alpha - np.asarray(alpha)[:n])))}
    elif direction == "dg1-to-opuc":
        c, d = _cd_input(args)
        c = _pad(c, n + 1, "c")
        d = _pad(d, n + 1, "d")
        pair = generate_rq(c, d, n + 1)
        out = opuc_from_dg1(pair, n)
        doc["alpha_hat"] = indexed(0, out.alpha.alpha)
        doc["S_hat"] = indexed(0, polys(out.polys))
        doc["kappa_hat_inv2"] = indexed(0, out.kappa_inv2)
        doc["report"] = {
            "division_residual": out.division_residual,
            "star_residual": out.star_residual,
            "linkage_residual": max(popuc_linkage_residual(pair, out, k) for k in range(n)),
        }
    elif direction == "dg2-tilde":
        c, d = _cd_input(args)
        c = _pad(c, n, "c")
        d = _pad(d, n, "d")
        pair = generate_rq(c, d, n)
        out = opuc_tilde_from_dg2(pair, n)
        doc["alpha_tilde"] = indexed(0, out.alpha.alpha)
        doc["S_tilde"] = indexed(0, polys(out.polys))
        doc["M0"] = out.M0
        doc["report"] = {"M0_converged": out.M0_converged}
    elif direction == "dg-symmetric":
        alpha = _alpha_input(args.alpha, n + 1)
        if np.iscomplexobj(alpha) and np.any(np.asarray(alpha).imag != 0):
            raise InputError("dg-symmetric needs real alpha")
        d1, d2 = dg_symmetric_coeffs(np.real(alpha), n)
        doc["d1"] = indexed(2, d1.values)
        doc["d2"] = indexed(2, d2.values)
    doc["tol"] = tol
    return doc


class _Refusal(Exception):
    def __init__(self, message, verdict):
        super().__init__(message)
        self.verdict = verdict


def cmd_transform(args) -> int:
    if args.alpha is None and args.direction in ("applic1", "applic2", "dg-symmetric"):
        raise InputError(f"{args.direction} needs --alpha")
    try:
        doc = _transform_doc(args)
    except _Refusal as exc:
        report = {"command": "transform", "direction": args.direction, "refused": True,
                  "verdict": exc.verdict, "message": str(exc)}
        _write(to_json(report), args.out, "transform.json")
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    _write(to_json(doc), args.out, "transform.json")
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _example_params(args)
    tol = _tol(args)
    checks = verify_example(params, args.n, tol)
    ok = all(ch.passed for ch in checks)
    doc = {
        "command": "verify",
        "example": params.id,
        "params": {"c": params.c, "t": params.t, "lambda": params.lam, "eta": params.eta, "d1": params.d1},
        "n": args.n,
        "tol": tol,
        "passed": ok,
        "checks": [
            {"name": ch.name, "passed": ch.passed, "residual": ch.residual, "limit": ch.limit, "detail": ch.detail}
            for ch in checks
        ],
    }
    _write(to_json(doc), args.out, "verify.json")
    for ch in checks:
        status = "pass" if ch.passed else "FAIL"
        print(f"{status} {ch.name}: residual {ch.residual:.3e} (limit {ch.limit:.1e}) {ch.detail}".rstrip(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="popuc", description="Para-orthogonal polynomials, chain sequences and OPUC transforms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=10, help="degree or number of coefficients")
        p.add_argument("--d1", type=float, default=0.25, help="free first coefficient d_1")
        p.add_argument("--tol", type=float, default=None, help="tolerance (default POPUC_TOL or 1e-10)")
        p.add_argument("--out", default="-", help="output file or directory; - for stdout")
        p.add_argument("--example", type=int, choices=(1, 2, 3), default=None)
        p.add_argument("--c", default=None, help="c_1,c_2,... or a JSON file; the scalar c for example 1")
        p.add_argument("--lambda", dest="lam", type=float, default=None)
        p.add_argument("--eta", type=float, default=None)

    g = sub.add_parser("generate", help="build R_n, Q_n, zeros, quadrature and moments")
    common(g)
    g.add_argument("--d", default=None, help="d_1,d_2,... or a JSON file")
    g.add_argument("--input", default=None, help="JSON file with c and d sequences")
    g.add_argument("--t", type=float, default=0.0, help="t for example 2")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--no-zeros", action="store_true", help="skip zeros and quadrature")
    g.set_defaults(func=cmd_generate)

    t = sub.add_parser("transform", help="map between Verblunsky coefficients and recurrence data")
    t.add_argument("direction", choices=DIRECTIONS)
    common(t)
    t.add_argument("--d", default=None)
    t.add_argument("--input", default=None)
    t.add_argument("--alpha", default=None, help="zeros, example2, a JSON file or an inline list")
    t.add_argument("--rho0", default=None, help="unimodular seed, e.g. -1 or 0.6+0.8j")
    t.add_argument("--t", type=float, default=0.0)
    t.add_argument("--I", default=None, help="principal value integral I")
    t.add_argument("--M0", type=float, default=0.0, help="mass at z = 1 for applic2")
    t.set_defaults(func=cmd_transform)

    v = sub.add_parser("verify", help="compare pipeline output with the closed-form examples")
    common(v)
    v.add_argument("--t", type=float, default=0.0)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "verify" and args.example is None:
            raise InputError("verify needs --example")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerblunskyBound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERBLUNSKY
    except NotAChainSequence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHAIN
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PopucError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
