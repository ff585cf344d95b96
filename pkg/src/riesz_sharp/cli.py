"""riesz-sharp: constants, ratios and inequality scans from the command line.

    riesz-sharp constant --p 1.5 --s 3
    riesz-sharp verify --ineq eq3 --p 1.5 --s 1.5 --grid 2000x2000
    riesz-sharp sweep --p-min 1.1 --p-max 2 --p-step 0.1 --s-equals-p --format csv
    riesz-sharp ratio --p 1.5 --s 1.5 --trials 1000
    riesz-sharp psh-test --which phi2 --p 9

Exit status: 0 pass, 1 inequality violated, 2 usage error.  Reports go to
stdout (or --output), diagnostics to stderr.  Options may also come from a
key=value file given with --config; command-line flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import __version__
from .constants import lower_bound, regime_flag, sharp_constant
from .fourier import DEFAULT_GRID, TrigPoly, reverse_ratio
from .minorants import (
    boundary_r1_case_p_ge9,
    boundary_r1_case_p_lt2,
    psh_line_margins,
    psh_scale,
    scan,
    section5_aux,
    section5_phi,
    section6_aux,
    section6_phi,
)
from .params import ParamSpace
from .testfam import TestFamilyParams, closed_form_T, empirical_ratio

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20240917
RATIO_SLACK = 1e-6
PSH_TOL = 1e-7
SWEEP_FIELDS = ["p", "s", "value", "case", "t_tilde", "regime"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: Optional[float] = None
    s: Optional[float] = None
    grid: Any = None
    tolerance: Optional[float] = None
    seed: int = DEFAULT_SEED
    output_format: str = "json"
    output_path: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tolerance is not None and not self.tolerance > 0:
            raise UsageError("tolerance must be positive")
        if self.p is not None and not self.p > 1:
            raise UsageError("p must be > 1")
        if isinstance(self.grid, tuple) and min(self.grid) < 2:
            raise UsageError("grid dimensions must be >= 2")
        if self.seed < 0:
            raise UsageError("seed must be unsigned")


# -- formatting ----------------------------------------------------------------

def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dump_json(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dump_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dump_json(v) for v in obj) + "]"
        items = [inner + dump_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _text(report: dict) -> str:
    lines = []

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else k, x)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, x in enumerate(v):
                walk(f"{prefix}[{i}]", x)
        else:
            lines.append(f"{prefix}: {dump_json(v, indent=0).replace(chr(10), '')}")

    walk("", report)
    return "\n".join(lines) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_FIELDS)
    for row in rows:
        w.writerow([
            fmt_float(v) if isinstance(v, float) else ("" if v is None else v)
            for v in (row[k] for k in SWEEP_FIELDS)
        ])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dump_json(report) + "\n"
    if fmt == "text":
        return _text(report)
    if fmt == "csv":
        if report["command"] != "sweep":
            raise UsageError("csv output is only available for sweep")
        return _csv(report["result"])
    raise UsageError(f"unknown format {fmt!r}")


# -- commands ------------------------------------------------------------------

def _params(cfg: RunConfig) -> ParamSpace:
    if cfg.p is None or cfg.s is None:
        raise UsageError(f"{cfg.command} needs --p and --s")
    try:
        return ParamSpace(cfg.p, cfg.s)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _constant_row(ps: ParamSpace, res) -> dict:
    return {
        "p": ps.p,
        "s": ps.s,
        "value": res.value,
        "case": res.case_label,
        "t_tilde": res.t_tilde,
        "regime": regime_flag(ps, res),
    }


def cmd_constant(cfg: RunConfig) -> tuple[dict, int]:
    ps = _params(cfg)
    res = lower_bound(ps, check=not cfg.extra.get("no_check", False))
    row = _constant_row(ps, res)
    row["minimizer_t"] = res.minimizer_t
    if row["regime"] == "sharp":
        row["sharp_constant"] = sharp_constant(ps)
    return {"result": row}, EXIT_OK


def _lattice(lo: float, hi: float, step: float) -> list[float]:
    if not step > 0:
        raise UsageError("lattice step must be positive")
    if hi < lo:
        return []
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + k * step, 12) for k in range(n)]


def cmd_sweep(cfg: RunConfig) -> tuple[dict, int]:
    x = cfg.extra
    ps_vals = _lattice(x["p_min"], x["p_max"], x["p_step"])
    if x.get("s_equals_p"):
        pairs = [(p, p) for p in ps_vals]
    else:
        s_vals = _lattice(x["s_min"], x["s_max"], x["s_step"])
        pairs = [(p, s) for p in ps_vals for s in s_vals]
    rows = []
    for p, s in sorted(pairs):
        try:
            ps = ParamSpace(p, s)
        except ValueError as e:
            raise UsageError(str(e)) from None
        rows.append(_constant_row(ps, lower_bound(ps, check=x.get("check", False))))
    return {"result": rows}, EXIT_OK


def cmd_ratio(cfg: RunConfig) -> tuple[dict, int]:
    ps = _params(cfg)
    x = cfg.extra
    size = cfg.grid if isinstance(cfg.grid, int) else DEFAULT_GRID
    if x.get("family"):
        tp = TestFamilyParams(x["alpha"], x["beta"], x["gamma"], x["rho"])
        emp = empirical_ratio(tp, ps, size)
        target = closed_form_T(tp.alpha, tp.beta, ps)
        result = {"empirical_ratio": emp, "closed_form": target, "relative_deviation": abs(emp - target) / target}
        return {"result": result}, EXIT_OK
    rng = np.random.default_rng(cfg.seed)
    worst, worst_i = -math.inf, -1
    for i in range(x["trials"]):
        r = reverse_ratio(TrigPoly.random(x["degree"], rng), ps, size)
        if r > worst:
            worst, worst_i = r, i
    result = {"trials": x["trials"], "degree": x["degree"], "max_ratio": worst, "argmax_trial": worst_i}
    status = EXIT_OK
    if ps.regime is not None:
        bound = sharp_constant(ps)
        result.update(sharp_constant=bound, passed=worst <= bound + RATIO_SLACK)
        status = EXIT_OK if result["passed"] else EXIT_VIOLATION
    else:
        result.update(advisory=True)
    return {"result": result}, status


def _one_dim_report(name, xs, gaps, tol, extra_margins: dict) -> dict:
    k = int(np.argmax(gaps))
    max_gap = float(gaps[k])
    margins_ok = all(m >= -tol for m in extra_margins.values())
    return {
        "field": name,
        "interval": [float(xs[0]), float(xs[-1])],
        "resolution": [int(xs.size)],
        "max_gap": max_gap,
        "argmax": [float(xs[k])],
        "margins": extra_margins,
        "tolerance": tol,
        "passed": bool(max_gap <= tol and margins_ok),
    }


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    ineq = cfg.extra["ineq"]
    if ineq in ("eq3", "eq4"):
        ps = _params(cfg) if ineq == "eq3" else _params_eq4(cfg)
        res = cfg.grid if isinstance(cfg.grid, tuple) else (2000, 2000)
        try:
            rep = scan(ineq, ps, res, cfg.tolerance or 1e-9).to_dict()
        except ValueError as e:
            raise UsageError(str(e)) from None
        in_regime = rep["in_regime"] if ineq == "eq4" else ps.in_regime1
    else:
        rep, in_regime = _boundary_suite(ineq, cfg)
    out = {"result": rep, "max_gap": rep["max_gap"], "argmax": rep["argmax"]}
    if not in_regime:
        print("out-of-regime: result advisory", file=sys.stderr)
        rep["advisory"] = True
        return out, EXIT_OK
    if not rep["passed"]:
        print(f"violation: max gap {fmt_float(rep['max_gap'])} at {rep['argmax']}", file=sys.stderr)
        return out, EXIT_VIOLATION
    return out, EXIT_OK


def _params_eq4(cfg: RunConfig) -> ParamSpace:
    if cfg.p is None:
        raise UsageError("verify needs --p")
    return ParamSpace(cfg.p, cfg.p / (cfg.p - 1))


def _boundary_suite(ineq: str, cfg: RunConfig) -> tuple[dict, bool]:
    p = cfg.p
    if p is None:
        raise UsageError("verify needs --p")
    n = cfg.grid if isinstance(cfg.grid, int) else 2000
    tol = cfg.tolerance or 1e-10
    if ineq == "sec5":
        if not 1 < p < 2:
            raise UsageError("sec5 needs 1 < p < 2")
        r = np.linspace(0, 1, n)
        aux = section5_aux(p)
        margins = {}
        if p >= 4 / 3:
            margins["jensen"] = aux.jensen
        if p <= 4 / 3:
            margins["quadratic"] = aux.quadratic
        return _one_dim_report("sec5", r, section5_phi(r, p), tol, margins), True
    if ineq == "sec6":
        if not 9 <= p <= 40:
            raise UsageError("sec6 needs 9 <= p <= 40")
        r = np.linspace(0, 1, n)
        margins = section6_aux(p).margins()
        return _one_dim_report("sec6", r, section6_phi(r, p), tol, margins), True
    if ineq == "r1":
        if 1 < p <= 2:
            t = np.linspace(math.pi / (2 * p) * 1e-2, math.pi / 2, n)
            return _one_dim_report("r1", t, -boundary_r1_case_p_lt2(t, p), tol, {}), True
        if p >= 9:
            t = np.linspace(0, math.pi / (2 * p), n)
            return _one_dim_report("r1", t, boundary_r1_case_p_ge9(t, p), tol, {}), True
        raise UsageError("r1 needs 1 < p <= 2 or p >= 9")
    raise UsageError(f"unknown inequality {ineq!r}")


def cmd_psh_test(cfg: RunConfig) -> tuple[dict, int]:
    x = cfg.extra
    which, p = x["which"], cfg.p
    if p is None:
        raise UsageError("psh-test needs --p")
    if which == "phi1" and not p <= 2:
        raise UsageError("phi1 is a minorant for 1 < p <= 2")
    if which == "phi2" and not p >= 2:
        raise UsageError("phi2 is a minorant for p >= 2")
    tol = cfg.tolerance or PSH_TOL
    rng = np.random.default_rng(cfg.seed)
    margins, scale, centres = random_psh_margins(which, p, x["trials"], rng, x["nodes"])
    rel = margins / scale
    k = int(np.argmin(rel))
    result = {
        "which": which,
        "trials": x["trials"],
        "nodes": x["nodes"],
        "min_relative_margin": float(rel[k]),
        "worst_centre": [centres[0][k].real, centres[0][k].imag, centres[1][k].real, centres[1][k].imag],
        "tolerance": tol,
        "passed": bool(rel[k] >= -tol),
    }
    return {"result": result}, EXIT_OK if result["passed"] else EXIT_VIOLATION


def random_psh_margins(which: str, p: float, trials: int, rng: np.random.Generator, nodes: int = 256):
    """Sub-mean-value margins on random complex lines through random centres.

    Centres are standard complex normal pairs, directions unit vectors in C^2,
    radii uniform in (0, 1e-2 * max(1, |z0|, |w0|)].
    """
    cn = lambda: rng.standard_normal(trials) + 1j * rng.standard_normal(trials)
    z0, w0, a, b = cn(), cn(), cn(), cn()
    norm = np.sqrt(np.abs(a) ** 2 + np.abs(b) ** 2)
    a, b = a / norm, b / norm
    radius = 1e-2 * np.maximum(1.0, np.maximum(np.abs(z0), np.abs(w0))) * (1 - rng.random(trials))
    margins = psh_line_margins(which, z0, w0, a, b, radius, p, nodes)
    return margins, psh_scale(z0, w0, p), (z0, w0)


COMMANDS = {
    "constant": cmd_constant,
    "ratio": cmd_ratio,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "psh-test": cmd_psh_test,
}


# -- argument handling ------------------------------------------------------------

def parse_grid(text: str):
    text = text.strip().lower()
    try:
        if "x" in text:
            a, b = text.split("x")
            return int(a), int(b)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be N or NxM, got {text!r}") from None


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=float)
    common.add_argument("--s", type=float)
    common.add_argument("--grid", type=parse_grid, help="N (1-D or FFT size) or NxM (scan)")
    common.add_argument("--tolerance", type=float)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", dest="output_format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--output", dest="output_path")
    common.add_argument("--config", help="key=value file mirroring the long flags")
    common.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identical reports)")

    parser = _Parser(prog="riesz-sharp", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constant", parents=[common], help="lower bound / sharp value of B_{p,s}")
    c.add_argument("--no-check", action="store_true", help="skip the 10^6-point grid cross-check")

    r = sub.add_parser("ratio", parents=[common], help="reverse ratio on random polynomials or the test family")
    r.add_argument("--trials", type=int, default=1000)
    r.add_argument("--degree", type=int, default=32)
    r.add_argument("--family", action="store_true")
    r.add_argument("--alpha", type=float, default=1.0)
    r.add_argument("--beta", type=float, default=0.0)
    r.add_argument("--gamma", type=float)
    r.add_argument("--rho", type=float, default=0.999)

    v = sub.add_parser("verify", parents=[common], help="scan a pointwise inequality")
    v.add_argument("--ineq", choices=["eq3", "eq4", "sec5", "sec6", "r1"])

    w = sub.add_parser("sweep", parents=[common], help="tabulate constants over a (p, s) lattice")
    w.add_argument("--p-min", type=float)
    w.add_argument("--p-max", type=float)
    w.add_argument("--p-step", type=float, default=0.1)
    w.add_argument("--s-min", type=float)
    w.add_argument("--s-max", type=float)
    w.add_argument("--s-step", type=float, default=0.1)
    w.add_argument("--s-equals-p", action="store_true")
    w.add_argument("--check", action="store_true")

    h = sub.add_parser("psh-test", parents=[common], help="random sub-mean-value tests of a minorant")
    h.add_argument("--which", choices=["phi1", "phi2"])
    h.add_argument("--trials", type=int, default=1000)
    h.add_argument("--nodes", type=int, default=256)
    return parser


def read_config(path: str) -> dict[str, str]:
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        k, v = (x.strip() for x in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    cfg = read_config(args.config)
    cfg.pop("command", None)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for k, v in cfg.items():
        if k not in actions:
            raise UsageError(f"unknown config key {k!r} for {args.command}")
        a = actions[k]
        if a.const is True and a.nargs == 0:
            defaults[k] = _bool(v)
        else:
            defaults[k] = v  # argparse runs `type` on string defaults
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


CORE = {"command", "p", "s", "grid", "tolerance", "seed", "output_format", "output_path", "config", "timing"}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    ns = vars(args)
    extra = {k: v for k, v in ns.items() if k not in CORE}
    if args.command == "ratio" and extra.get("family") and extra.get("gamma") is None:
        raise UsageError("--family needs --gamma")
    needed = {"verify": ["ineq"], "sweep": ["p_min", "p_max"], "psh-test": ["which"]}
    for k in needed.get(args.command, []):
        if extra.get(k) is None:
            raise UsageError(f"{args.command} needs --{k.replace('_', '-')}")
    if args.command == "sweep" and not extra.get("s_equals_p"):
        if extra.get("s_min") is None or extra.get("s_max") is None:
            raise UsageError("sweep needs --s-min/--s-max or --s-equals-p")
    return RunConfig(
        command=args.command,
        p=args.p,
        s=args.s,
        grid=args.grid,
        tolerance=args.tolerance,
        seed=args.seed,
        output_format=args.output_format,
        output_path=args.output_path,
        extra=extra,
    )


def run(cfg: RunConfig, timing: bool = False) -> tuple[str, int]:
    t0 = time.perf_counter()
    body, status = COMMANDS[cfg.command](cfg)
    elapsed = (time.perf_counter() - t0) * 1e3
    print(f"elapsed {elapsed:.1f} ms", file=sys.stderr)
    params = {"p": cfg.p, "s": cfg.s, "grid": list(cfg.grid) if isinstance(cfg.grid, tuple) else cfg.grid,
              "tolerance": cfg.tolerance}
    params.update({k: v for k, v in cfg.extra.items() if v is not None})
    report = {"command": cfg.command, "params": params, "result": body["result"]}
    for key in ("max_gap", "argmax"):
        if key in body:
            report[key] = body[key]
    report["elapsed_ms"] = elapsed if timing else None
    report["seed"] = cfg.seed
    report["version"] = __version__
    return render(report, cfg.output_format), status


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = _apply_config(build_parser(), argv)
        cfg = config_from_args(args)
        text, status = run(cfg, timing=args.timing)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    except (UsageError, ValueError, OSError) as e:
        print(f"riesz-sharp: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
