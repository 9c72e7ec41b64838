"""Command-line front end: ``wienerhopf {solve,converge,directivity,selftest}``.

Exit codes: 0 success, 1 self-test failure, 2 invalid configuration,
3 solver failure (ill-conditioned system or illegal rotation).
"""

import argparse
import ast
import json
import math
import operator
import sys
from contextlib import contextmanager

import numpy as np

from . import selftest
from .diffraction import PROBLEMS, PhysicalParams, solve_catalogue
from .errors import RotationError, SolverError
from .farfield import directivity, sommerfeld_directivity_exact
from .metrics import Reference, convergence_sweep

EXIT_OK, EXIT_SELFTEST, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_NAMES = {"pi": math.pi, "e": math.e}
_FUNCS = {"sin": math.sin, "cos": math.cos, "tan": math.tan, "sqrt": math.sqrt,
          "csc": lambda t: 1 / math.sin(t)}


class ConfigError(ValueError):
    """Invalid command-line or config-file input."""


def parse_number(text) -> float:
    """Evaluate a numeric literal or a small arithmetic expression.

    >>> parse_number("pi/4") == math.pi / 4
    True
    >>> parse_number("csc(pi/5)") == 1 / math.sin(math.pi / 5)
    True
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ConfigError(f"unsupported expression {text!r}")

    try:
        return float(ev(ast.parse(str(text), mode="eval")))
    except (SyntaxError, ZeroDivisionError, OverflowError) as exc:
        raise ConfigError(f"cannot evaluate {text!r}: {exc}") from None


_NUMERIC = ("chi", "k", "theta0", "S", "theta1", "theta2", "theta_min", "theta_max")
_DEFAULTS = {"problem": None, "mapping": "4to1", "n": 129, "chi": "pi/4", "k": 1.0,
             "theta0": None, "S": None, "theta1": None, "theta2": None, "out": None,
             "n_list": "17,33,65,129", "reference": "exact", "theta_min": 0.0,
             "theta_max": "2*pi", "samples": 361, "compare": None}


def _add_common(p):
    p.add_argument("--config", help="JSON file of defaults; flags override it")
    p.add_argument("--problem", choices=PROBLEMS)
    p.add_argument("--mapping", choices=("2to1", "4to1"))
    p.add_argument("--chi", help="contour rotation angle (default pi/4)")
    p.add_argument("--k", help="wavenumber (default 1)")
    p.add_argument("--theta0", help="incidence angle")
    p.add_argument("--S", dest="S", help="Senior impedance parameter")
    p.add_argument("--theta1", help="Hurd impedance angle, upper face")
    p.add_argument("--theta2", help="Hurd impedance angle, lower face")
    p.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wienerhopf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one problem and write JSON")
    _add_common(p)
    p.add_argument("--n", type=int)

    p = sub.add_parser("converge", help="convergence sweep as CSV")
    _add_common(p)
    p.add_argument("--n-list", dest="n_list", help="comma-separated resolutions")
    p.add_argument("--reference", help="'exact' or 'self:<n>'")

    p = sub.add_parser("directivity", help="far-field directivity as CSV")
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--theta-min", dest="theta_min")
    p.add_argument("--theta-max", dest="theta_max")
    p.add_argument("--samples", type=int)
    p.add_argument("--compare", choices=("exact",))

    p = sub.add_parser("selftest", help="run the numerical self-checks")
    p.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults, the JSON config file and explicit flags, in that order."""
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(loaded) - set(_DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key, value in vars(args).items():
        if key in cfg and value is not None:
            cfg[key] = value
    for key in _NUMERIC:
        if cfg[key] is not None:
            cfg[key] = parse_number(cfg[key])
    if cfg["problem"] is None:
        raise ConfigError("missing required parameter 'problem'")
    if cfg["problem"] not in PROBLEMS:
        raise ConfigError(f"unknown problem {cfg['problem']!r}")
    if cfg["theta0"] is None:
        raise ConfigError("missing required parameter 'theta0'")
    if cfg["problem"].startswith("senior") and cfg["S"] is None:
        raise ConfigError(f"{cfg['problem']} needs the impedance parameter 'S'")
    if cfg["problem"] == "hurd":
        for name in ("theta1", "theta2"):
            if cfg[name] is None:
                raise ConfigError(f"hurd needs the impedance angle '{name}'")
    if isinstance(cfg["n_list"], str):
        try:
            cfg["n_list"] = [int(v) for v in cfg["n_list"].split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"bad n-list {cfg['n_list']!r}") from None
    return cfg


def physical_params(cfg: dict) -> PhysicalParams:
    return PhysicalParams(theta0=cfg["theta0"], k=cfg["k"], S=cfg["S"],
                          theta1=cfg["theta1"], theta2=cfg["theta2"])


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _split(a) -> dict:
    a = np.asarray(a, dtype=complex)
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _densities(sol) -> dict:
    if sol.name == "senior-scalar":
        parts = {"sum": sol.sum_solution, "difference": sol.difference_solution}
        return {f"{tag}_{i}": c for tag, s in parts.items() for i, c in enumerate(s.coeffs)}
    return {f"density_{i}": c for i, c in enumerate(sol.coeffs)}


def cmd_solve(cfg: dict) -> int:
    params = physical_params(cfg)
    sol = solve_catalogue(cfg["problem"], params, cfg["n"], cfg["mapping"], cfg["chi"])
    doc = {
        "metadata": {
            "problem": cfg["problem"],
            "params": params.as_dict(),
            "n": sol.n,
            "chi": cfg["chi"],
            "mapping": cfg["mapping"],
            "residual": sol.residual,
            "condition": sol.condition,
        },
        "x": sol.grid.x.tolist(),
        "coefficients": {label: _split(c) for label, c in _densities(sol).items()},
        "values": {label: _split(v) for label, v in sol.tracked().items()},
    }
    with _output(cfg["out"]) as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    return EXIT_OK


def cmd_converge(cfg: dict) -> int:
    ref = Reference.parse(cfg["reference"])
    records = convergence_sweep(cfg["problem"], physical_params(cfg), cfg["n_list"], ref,
                                cfg["mapping"], cfg["chi"])
    with _output(cfg["out"]) as fh:
        fh.write("n,e2,einf,ealpha2,reference\n")
        for r in records:
            fh.write(f"{r.n},{_fmt(r.e2)},{_fmt(r.einf)},{_fmt(r.ealpha2)},{r.reference}\n")
    return EXIT_OK


def cmd_directivity(cfg: dict) -> int:
    if cfg["samples"] < 2:
        raise ConfigError("samples must be at least 2")
    if cfg["compare"] == "exact" and cfg["problem"] != "sommerfeld":
        raise ConfigError("--compare exact is only available for sommerfeld")
    params = physical_params(cfg)
    sol = solve_catalogue(cfg["problem"], params, cfg["n"], cfg["mapping"], cfg["chi"])
    thetas = np.linspace(cfg["theta_min"], cfg["theta_max"], cfg["samples"])
    curve = directivity(sol, thetas)
    header = "theta,re_D,im_D,abs_D,flag"
    exact = None
    if cfg["compare"] == "exact":
        header += ",abs_D_exact,abs_err"
        exact = np.full(thetas.shape, np.nan)
        ok = ~curve.flags
        exact[ok] = np.abs(sommerfeld_directivity_exact(params, thetas[ok]))
    with _output(cfg["out"]) as fh:
        fh.write(header + "\n")
        for i, t in enumerate(thetas):
            d = curve.values[i]
            row = [_fmt(t), _fmt(d.real), _fmt(d.imag), _fmt(abs(d)), str(int(curve.flags[i]))]
            if exact is not None:
                row += [_fmt(exact[i]), _fmt(abs(abs(d) - exact[i]))]
            fh.write(",".join(row) + "\n")
    return EXIT_OK


def cmd_selftest(perturb: float = 0.0) -> int:
    results = selftest.run_all(perturb)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_SELFTEST


_COMMANDS = {"solve": cmd_solve, "converge": cmd_converge, "directivity": cmd_directivity}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        return cmd_selftest(args.perturb)
    try:
        cfg = resolve_config(args)
        return _COMMANDS[args.command](cfg)
    except (SolverError, RotationError) as exc:
        print(f"wienerhopf: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        print(f"wienerhopf: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
