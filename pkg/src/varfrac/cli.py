"""Command-line interface: every computation is written out as CSV.

Example::

    varfrac kernel --transition exp --a1 0.6 --a2 0.8 --c 2 --which psi \
        --tmin 0.01 --tmax 5 --points 200 --output psi.csv

Options may also come from a ``key = value`` file given with ``--config``;
flags on the command line take precedence. Relative output paths are
resolved against ``$VARFRAC_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import contour, kernels, relaxation, sonine, transitions
from .exceptions import DomainError, VarFracError

OUTPUT_DIR_ENV = "VARFRAC_OUTPUT_DIR"

COMMANDS = ("transition", "kernel", "sonine", "spectral", "kochubei", "relax", "invert", "cqweights")

TEST_TRANSFORMS = {
    "recip_s": (lambda p: (lambda s: 1 / s), lambda p, t: np.ones_like(t)),
    "recip_s2": (lambda p: (lambda s: 1 / s**2), lambda p, t: t),
    "recip_s_plus_1": (lambda p: (lambda s: 1 / (s + 1)), lambda p, t: np.exp(-t)),
    "pow_s": (
        lambda p: (lambda s: np.exp(-p * np.log(s))),
        lambda p, t: t ** (p - 1) / math.gamma(p),
    ),
}


class UsageError(VarFracError):
    """Invalid or incomplete configuration (exit status 2)."""


@dataclass
class RunConfig:
    command: str
    transition: Optional[str] = None
    a1: Optional[float] = None
    a2: Optional[float] = None
    c: Optional[float] = None
    beta: Optional[float] = None
    shift: int = 0
    tmin: Optional[float] = None
    tmax: Optional[float] = None
    points: Optional[int] = None
    spacing: str = "linear"
    eps: float = contour.MACHINE_EPS
    output: Optional[str] = None
    which: str = "psi"
    lam: float = 1.0
    y0: float = 1.0
    method: str = "lt"
    step_h: Optional[float] = None
    count: Optional[int] = None
    generator: str = "BDF1"
    n: int = 1
    j: Optional[int] = None
    expr: Optional[str] = None
    power: float = 0.5
    t: Optional[float] = None
    mesh: int = 4096
    grading: float = 2.0

    def grid(self) -> np.ndarray:
        for key in ("tmin", "tmax", "points"):
            if getattr(self, key) is None:
                raise UsageError(f"missing required key {key!r} for command {self.command!r}")
        if self.points < 2:
            raise UsageError("points must be at least 2")
        if not self.tmax > self.tmin:
            raise UsageError("tmax must exceed tmin")
        if self.tmin <= 0:
            raise UsageError(f"tmin must be positive for command {self.command!r}, got {self.tmin!r}")
        if self.spacing == "log":
            return np.logspace(np.log10(self.tmin), np.log10(self.tmax), self.points)
        return np.linspace(self.tmin, self.tmax, self.points)

    def transition_function(self) -> transitions.TransitionFunction:
        if self.transition is None:
            raise UsageError(f"missing required key 'transition' for command {self.command!r}")
        needed = {"const": ("a1",), "exp": ("a1", "a2", "c"), "mlf": ("a1", "a2", "c", "beta"),
                  "erf": ("a1", "a2", "c")}[self.transition]
        for key in needed:
            if getattr(self, key) is None:
                raise UsageError(f"missing required key {key!r} for transition {self.transition!r}")
        params = {k: getattr(self, k) for k in needed}
        params["transition"] = self.transition
        params["shift"] = self.shift
        try:
            return transitions.from_dict(params)
        except DomainError as exc:
            raise UsageError(str(exc)) from None


CONFIG_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig) if f.name != "command"}
CHOICES = {
    "transition": ("const", "exp", "mlf", "erf"),
    "spacing": ("linear", "log"),
    "which": ("phi", "psi"),
    "method": ("lt", "cq"),
    "generator": ("BDF1", "BDF2"),
    "expr": tuple(TEST_TRANSFORMS),
}
# config-file spellings that differ from the attribute names
ALIASES = {"lambda": "lam", "step-h": "step_h"}


def _convert(key: str, raw):
    kind = CONFIG_TYPES[key]
    try:
        if "float" in kind:
            value = float(raw)
        elif "int" in kind:
            value = int(raw)
        else:
            value = str(raw).strip()
    except (TypeError, ValueError):
        raise UsageError(f"invalid value {raw!r} for key {key!r} (expected {kind})") from None
    if key in CHOICES and value not in CHOICES[key]:
        raise UsageError(f"invalid value {value!r} for key {key!r}; choose from {', '.join(CHOICES[key])}")
    return value


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        key = ALIASES.get(key, key)
        if key not in CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}; valid keys: {', '.join(sorted(CONFIG_TYPES))}")
        values[key] = _convert(key, raw)
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="varfrac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    # every option defaults to None so that file values can fill the gaps
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--output", "-o", help="CSV output path (default: stdout)")
    common.add_argument("--eps", type=float)
    common.add_argument("--transition", choices=CHOICES["transition"])
    for name in ("a1", "a2", "c", "beta"):
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--shift", type=int, help="integer added to the order")
    common.add_argument("--tmin", type=float)
    common.add_argument("--tmax", type=float)
    common.add_argument("--points", type=int)
    common.add_argument("--spacing", choices=CHOICES["spacing"])

    helps = {
        "transition": "order function alpha(t)",
        "kernel": "kernels phi or psi (or phi_j with --j)",
        "sonine": "time-domain Sonine convolution check",
        "spectral": "spectral density of Phi on an r grid",
        "kochubei": "sampled Kochubei conditions A1-A4",
        "relax": "solution of the relaxation equation",
        "invert": "invert a built-in test transform",
        "cqweights": "convolution quadrature weights of Psi",
    }
    subs = {name: sub.add_parser(name, parents=[common], help=helps[name]) for name in COMMANDS}
    subs["kernel"].add_argument("--which", choices=CHOICES["which"])
    for name in ("kernel", "sonine", "spectral", "kochubei"):
        subs[name].add_argument("--n", type=int, help="order index, alpha in (n-1, n)")
    subs["kernel"].add_argument("--j", type=int)
    for name in ("sonine",):
        subs[name].add_argument("--mesh", type=int)
        subs[name].add_argument("--grading", type=float)
    subs["relax"].add_argument("--lambda", dest="lam", type=float)
    subs["relax"].add_argument("--y0", type=float)
    subs["relax"].add_argument("--method", choices=CHOICES["method"])
    for name in ("relax", "cqweights"):
        subs[name].add_argument("--step-h", dest="step_h", type=float)
        subs[name].add_argument("--generator", choices=CHOICES["generator"])
    subs["cqweights"].add_argument("--count", type=int)
    subs["invert"].add_argument("--expr", choices=CHOICES["expr"])
    subs["invert"].add_argument("--power", type=float, help="exponent p of pow_s = s^-p")
    subs["invert"].add_argument("--t", type=float, help="single time point")
    return parser


def parse_config(argv=None) -> RunConfig:
    """Merge ``--config`` file values with command-line flags (flags win)."""
    args = build_parser().parse_args(argv)
    values = read_config_file(args.config) if args.config else {}
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        values[key] = value
    cfg = RunConfig(command=args.command, **values)
    if cfg.spacing == "log" and cfg.tmin is not None and cfg.tmin <= 0:
        raise UsageError("log spacing requires tmin > 0")
    return cfg


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _columns(header, *cols) -> str:
    return to_csv(header, zip(*cols))


def compute(cfg: RunConfig) -> str:
    """Run the configured command and return the CSV text."""
    cmd = cfg.command
    if cmd == "invert":
        if cfg.expr is None:
            raise UsageError("missing required key 'expr' for command 'invert'")
        t = np.array([cfg.t]) if cfg.t is not None else cfg.grid()
        if np.any(t <= 0):
            raise UsageError("inversion times must be positive")
        make, exact = TEST_TRANSFORMS[cfg.expr]
        f = contour.invert(make(cfg.power), t, cfg.eps)
        return _columns(["t", "f", "exact"], t, f, exact(cfg.power, t))

    tr = cfg.transition_function()
    if cmd == "transition":
        t = cfg.grid()
        return _columns(["t", "alpha"], t, tr.eval_time(t))

    if cmd == "relax":
        problem = relaxation.RelaxationProblem(tr, cfg.lam, cfg.y0)
        if cfg.method == "cq":
            if cfg.step_h is None or cfg.tmax is None:
                raise UsageError("method 'cq' requires keys 'step_h' and 'tmax'")
            steps = int(round(cfg.tmax / cfg.step_h))
            sol = relaxation.solve_cq(problem, cfg.step_h, steps, cfg.generator)
        else:
            sol = relaxation.solve_lt(problem, cfg.grid(), cfg.eps)
        y1 = relaxation.reference_constant_solution(tr.initial_order, cfg.lam, cfg.y0, sol.times)
        y2 = relaxation.reference_constant_solution(tr.final_order, cfg.lam, cfg.y0, sol.times)
        return _columns(["t", "y", "y1_ref", "y2_ref"], sol.times, sol.values, y1.values, y2.values)

    try:
        pair = kernels.higher_order_pair(tr, cfg.n)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if cmd == "kernel":
        t = cfg.grid()
        if cfg.j is not None:
            return _columns(["t", f"phi_{cfg.j}"], t, kernels.phi_j_kernel(pair, cfg.j, t, cfg.eps))
        fn = kernels.phi_kernel if cfg.which == "phi" else kernels.psi_kernel
        return _columns(["t", cfg.which], t, fn(pair, t, cfg.eps))
    if cmd == "sonine":
        t = cfg.grid() if cfg.tmin is not None else np.array([0.1, 0.5, 1.0, 2.0, 5.0])
        rep = sonine.verify_pair(pair, t, cfg.mesh, cfg.grading, cfg.eps)
        targets = [sonine.sonine_target(x, pair.order_index) for x in rep.t_checkpoints]
        return _columns(["t", "convolution", "target", "deviation"],
                        rep.t_checkpoints, rep.values, targets, rep.deviations)
    if cmd == "spectral":
        r = cfg.grid()
        return _columns(["r", "density"], r, kernels.spectral_density(pair, r))
    if cmd == "kochubei":
        r = cfg.grid() if cfg.tmin is not None else None
        rep = kernels.kochubei_check(pair, r_grid=r)
        rows = [
            ("A1", rep.a1, rep.witnesses["phi_large"][-1]),
            ("A2", rep.a2, rep.density_min),
            ("A3", rep.a3, rep.witnesses["sigma_phi_large"][-1]),
            ("A4", rep.a4, rep.witnesses["sigma_phi_small"][0]),
        ]
        return to_csv(["condition", "pass", "witness"], rows)
    if cmd == "cqweights":
        if cfg.step_h is None or cfg.count is None:
            raise UsageError("command 'cqweights' requires keys 'step_h' and 'count'")
        scheme = relaxation.cq_weights(pair.psi_laplace, cfg.step_h, cfg.count, cfg.generator)
        return _columns(["n", "weight"], np.arange(scheme.count + 1), scheme.weights)
    raise UsageError(f"unknown command {cmd!r}")


def output_path(cfg: RunConfig) -> Optional[Path]:
    if cfg.output is None:
        return None
    path = Path(cfg.output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def run(cfg: RunConfig) -> int:
    """Execute ``cfg``; returns the process exit status."""
    try:
        text = compute(cfg)
    except UsageError as exc:
        print(f"varfrac {cfg.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (VarFracError, ArithmeticError, ValueError) as exc:
        print(f"varfrac {cfg.command}: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    path = output_path(cfg)
    if path is None:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader closed early (e.g. piped into head); not an error
            sys.stdout = None
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"varfrac: usage error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
