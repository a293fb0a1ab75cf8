"""``lambda-elim``: run one scenario and write CSV.

Scenario files are plain ``key = value`` lines; ``#`` starts a comment.
Values are arithmetic expressions over ``pi``, ``e``, ``j`` (imaginary unit)
and ``sqrt, exp, sin, cos``. A complex value may also be written as a
``re, im`` pair. Example (the reference scenario)::

    delta = 0.1
    big_delta = 1
    omega_a_mag = 0.1
    omega_a_phase = -pi/3
    omega_b_mag = 0.1
    omega_b_phase = -pi/2
    alpha0 = sqrt(1/3)
    beta0 = sqrt(2/3)

Exit codes: 2 configuration error, 3 regime error (``Delta = 0``,
``eta = -1``, ...), 4 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import ast
import cmath
import csv
import io
import math
import operator
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import analysis, exact
from .core import ConfigError, LambdaElimError, LambdaParams, State3, reduce
from .elim import propagate_effective, rough_effective, shifted_rough_effective
from .resolvent import green_effective

METHODS = ("exact", "rough", "shifted", "green", "compare", "scaling", "expansion")
EFFECTIVE = ("rough", "shifted", "green")

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_NAMES = {"pi": math.pi, "e": math.e, "j": 1j}
_FUNCS = {"sqrt": cmath.sqrt, "exp": cmath.exp, "sin": cmath.sin, "cos": cmath.cos}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_eval_node(node.operand))
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCS
        and len(node.args) == 1
        and not node.keywords
    ):
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    raise ValueError(f"unsupported expression element {ast.dump(node)}")


def _number(text: str) -> complex:
    try:
        value = _eval_node(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ConfigError(f"cannot evaluate {text!r}: {exc}") from None
    value = complex(value)
    if abs(value.imag) <= 1e-15 * max(1.0, abs(value.real)):
        value = complex(value.real, 0.0)
    return value


def _real(key, text):
    v = _number(text)
    if v.imag != 0:
        raise ConfigError(f"{key} must be real, got {v}")
    return v.real


def _complex(key, text):
    parts = text.split(",")
    if len(parts) == 1:
        return _number(parts[0])
    if len(parts) == 2:
        return complex(_real(key, parts[0]), _real(key, parts[1]))
    raise ConfigError(f"{key}: expected a number or a 're, im' pair")


@dataclass(frozen=True)
class ScenarioConfig:
    delta: float
    big_delta: float
    omega_a_mag: float
    omega_b_mag: float
    omega_a_phase: float = 0.0
    omega_b_phase: float = 0.0
    alpha0: complex = 1.0
    beta0: complex = 0.0
    gamma0: complex = 0.0
    eta: float = 0.0
    e0: float = 0.0
    t_max_delta: float = 200.0
    n_samples: int = 2001
    method: str | None = None
    effective: str = "shifted"
    scale_factors: tuple = (1.0, 0.5, 0.25)

    def __post_init__(self):
        norm = abs(self.alpha0) ** 2 + abs(self.beta0) ** 2 + abs(self.gamma0) ** 2
        if abs(norm - 1.0) > 1e-9:
            raise ConfigError(f"initial state not normalized: |alpha0|^2+|beta0|^2+|gamma0|^2 = {norm!r}")
        if self.n_samples < 2:
            raise ConfigError("n_samples must be >= 2")
        if not self.t_max_delta > 0:
            raise ConfigError("t_max_delta must be positive")
        if self.method is not None and self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        if self.effective not in EFFECTIVE:
            raise ConfigError(f"effective must be one of {', '.join(EFFECTIVE)}")

    @property
    def params(self) -> LambdaParams:
        return LambdaParams(
            delta=self.delta,
            big_delta=self.big_delta,
            omega_a=self.omega_a_mag * np.exp(1j * self.omega_a_phase),
            omega_b=self.omega_b_mag * np.exp(1j * self.omega_b_phase),
        )

    @property
    def initial(self) -> State3:
        return State3(self.alpha0, self.beta0, self.gamma0)

    @property
    def times(self) -> np.ndarray:
        """Sample times in physical units (``t_delta / |Delta|``)."""
        return np.linspace(0.0, self.t_max_delta, self.n_samples) / abs(self.big_delta)


_REQUIRED = ("delta", "big_delta", "omega_a_mag", "omega_b_mag")
_REAL_KEYS = ("delta", "big_delta", "omega_a_mag", "omega_b_mag", "omega_a_phase", "omega_b_phase", "eta", "e0", "t_max_delta")
_COMPLEX_KEYS = ("alpha0", "beta0", "gamma0")


def parse_config(text: str) -> ScenarioConfig:
    """Parse ``key = value`` scenario text into a validated config."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if key in _REAL_KEYS:
            values[key] = _real(key, val)
        elif key in _COMPLEX_KEYS:
            values[key] = _complex(key, val)
        elif key == "n_samples":
            n = _real(key, val)
            if n != int(n):
                raise ConfigError("n_samples must be an integer")
            values[key] = int(n)
        elif key in ("method", "effective"):
            values[key] = val
        elif key == "scale_factors":
            values[key] = tuple(_real(key, v) for v in val.split(","))
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")
    return ScenarioConfig(**values)


# --- output ------------------------------------------------------------------


def _fmt(x) -> str:
    return format(float(x), ".17g")


class _Table:
    def __init__(self, stream, header):
        self._w = csv.writer(stream, lineterminator="\n")
        self._stream = stream
        self._w.writerow(header)

    def rows(self, columns):
        for row in zip(*columns):
            self._w.writerow([v if isinstance(v, str) else _fmt(v) for v in row])

    def comment(self, text):
        self._stream.write(f"# {text}\n")


def _amp_columns(amps):
    cols = []
    for j in range(amps.shape[1]):
        cols += [amps[:, j].real, amps[:, j].imag]
    return cols


EXACT_HEADER = ["t_delta", "re_alpha", "im_alpha", "re_beta", "im_beta", "re_gamma", "im_gamma", "pop_a", "pop_b", "pop_e", "norm"]
EFFECTIVE_HEADER = ["t_delta", "re_alpha", "im_alpha", "re_beta", "im_beta", "pop_a", "pop_b", "norm"]
COMPARE_EXTRA = ["eff_re_alpha", "eff_im_alpha", "eff_re_beta", "eff_im_beta", "eff_pop_a", "eff_pop_b", "error"]


def _effective_h(config: ScenarioConfig, which: str):
    p = config.params
    if which == "rough":
        return rough_effective(p)
    if which == "shifted":
        return shifted_rough_effective(p, config.eta)
    return green_effective(p, config.e0)


def _two_level_initial(config):
    if config.gamma0 != 0:
        raise ConfigError("effective two-level methods need gamma0 = 0")
    return config.initial.lower


def run(config: ScenarioConfig, stream=None, *, self_check: bool = False) -> str:
    """Execute ``config.method`` and write CSV to `stream` (returned as text
    when no stream is given)."""
    if config.method is None:
        raise ConfigError("no method given")
    own = stream is None
    if own:
        stream = io.StringIO()
    p = config.params
    t = config.times
    t_delta = t * abs(p.big_delta)
    method = config.method

    if method == "exact":
        traj = exact.propagate_exact(exact.decompose(p, config.initial), t)
        tab = _Table(stream, EXACT_HEADER)
        tab.rows([t_delta, *_amp_columns(traj.amplitudes), *traj.populations.T, traj.norm])

    elif method in EFFECTIVE:
        traj = propagate_effective(_effective_h(config, method), _two_level_initial(config), t)
        tab = _Table(stream, EFFECTIVE_HEADER)
        tab.rows([t_delta, *_amp_columns(traj.amplitudes), *traj.populations.T, traj.norm])

    elif method == "compare":
        ref = exact.propagate_exact(exact.decompose(p, config.initial), t)
        if self_check:
            test = replace(ref, label="exact")
        else:
            test = propagate_effective(_effective_h(config, config.effective), _two_level_initial(config), t)
        err = analysis.amplitude_error(ref, test)
        report = analysis.compare_trajectories(ref, test, p)
        tab = _Table(stream, EXACT_HEADER + COMPARE_EXTRA)
        tab.rows(
            [
                t_delta,
                *_amp_columns(ref.amplitudes),
                *ref.populations.T,
                ref.norm,
                *_amp_columns(test.amplitudes[:, :2]),
                *test.populations[:, :2].T,
                err,
            ]
        )
        tab.comment(
            f"reference={report.reference} test={report.test} "
            f"max_amplitude_error={_fmt(report.max_amplitude_error)} "
            f"max_population_error={_fmt(report.max_population_error)} "
            f"t_delta_of_max={_fmt(report.time_of_max * abs(p.big_delta))}"
        )

    elif method == "scaling":
        fit = analysis.scaling_study(
            p,
            config.scale_factors,
            config.effective,
            eta=config.eta,
            e0=config.e0,
            initial=config.initial,
            t_max_delta=config.t_max_delta,
            n_samples=config.n_samples,
        )
        tab = _Table(stream, ["epsilon", "max_error"])
        tab.rows([fit.epsilons, fit.errors])
        tab.comment(
            f"method={config.effective} eta={_fmt(config.eta)} e0={_fmt(config.e0)} "
            f"slope={_fmt(fit.slope)} intercept={_fmt(fit.intercept)}"
        )

    elif method == "expansion":
        rows = analysis.expansion_check(p, config.initial)
        tab = _Table(stream, ["quantity", "branch", "order", "re_predicted", "im_predicted", "re_computed", "im_computed", "residual"])
        for r in rows:
            order = "exact" if r.order is None else str(r.order)
            tab.rows(
                [
                    [r.quantity],
                    [r.branch],
                    [order],
                    [r.predicted.real],
                    [r.predicted.imag],
                    [r.computed.real],
                    [r.computed.imag],
                    [r.residual],
                ]
            )
        tab.comment(f"epsilon={_fmt(reduce(p).epsilon)}")

    return stream.getvalue() if own else ""


def _build_parser():
    ap = argparse.ArgumentParser(prog="lambda-elim", description=__doc__.splitlines()[0])
    ap.add_argument("method", choices=METHODS)
    ap.add_argument("--config", required=True, help="scenario file (key = value lines)")
    ap.add_argument("--out", help="output CSV path (default: stdout)")
    ap.add_argument("--eta", type=float, help="picture shift, overrides the config")
    ap.add_argument("--e0", type=float, help="energy at which R is frozen, overrides the config")
    ap.add_argument("--self-check", action="store_true", help="compare: exact against itself")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        config = replace(parse_config(text), method=args.method)
        if args.eta is not None:
            config = replace(config, eta=args.eta)
        if args.e0 is not None:
            config = replace(config, e0=args.e0)
        out = run(config, self_check=args.self_check)
    except LambdaElimError as exc:
        print(f"lambda-elim: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"lambda-elim: invalid scenario: {exc}", file=sys.stderr)
        return ConfigError.exit_code
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
