"""Command-line interface: figure data, the verification suite and sweeps.

All numeric output goes through one CSV writer with ``#`` header lines
holding the version, the command and every parameter, and values printed
with 17 significant digits so repeated runs are byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from threadpoolctl import threadpool_limits

from . import __version__
from . import figures as fg
from . import moments as mo
from . import oracle as orc
from . import photon_stats as ps
from . import states as st
from . import verification as vf
from .errors import ConfigError, InputError, ParampError, PrecisionDegradedWarning
from .model import CONFIG_KEYS, InputField, PumpConfig, config_from_mapping

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


def fmt(value) -> str:
    """17 significant digits, independent of locale."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (tuple, list)):
        sep = ";" if value and isinstance(value[0], (tuple, list)) else ","
        return sep.join(fmt(v) for v in value)
    return str(value)


@dataclass
class Table:
    """Ordered columns of equal length plus the parameters that produced them."""

    command: str
    columns: dict[str, np.ndarray]
    params: dict[str, object]
    notes: dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise InputError(f"columns of unequal length: {sorted(lengths)}")

    @property
    def rows(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def to_csv(self) -> str:
        lines = [f"# paramp {__version__}", f"# command = {self.command}"]
        lines += [f"# {k} = {fmt(v)}" for k, v in sorted(self.params.items())]
        lines += [f"# {k} = {fmt(v)}" for k, v in sorted(self.notes.items())]
        lines.append(",".join(self.columns))
        cols = [np.asarray(c) for c in self.columns.values()]
        for i in range(self.rows):
            lines.append(",".join(fmt(c[i]) for c in cols))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "version": __version__,
            "command": self.command,
            "params": {k: _plain(v) for k, v in sorted(self.params.items())},
            "notes": {k: _plain(v) for k, v in sorted(self.notes.items())},
            "columns": {k: [_plain(x) for x in v] for k, v in self.columns.items()},
        }
        return json.dumps(doc, indent=1) + "\n"


def _plain(v):
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    return v


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _write(table: Table, args) -> None:
    _emit(table.to_json() if args.json else table.to_csv(), args.out)


def _pick(args, name: str, default):
    value = getattr(args, name, None)
    return default if value is None else value


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _pair(text: str) -> tuple[float, float]:
    vals = _floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected G,AMP, got {text!r}")
    return vals


# ----------------------------------------------------------------- figures

def _alpha_grid(alpha_max: float, points: int) -> np.ndarray:
    if points < 1:
        raise InputError("--points must be >= 1")
    return np.linspace(0.0, alpha_max, points)


def cmd_fig1(args) -> Table:
    p = {k: _pick(args, k, fg.FIG1[k]) for k in ("t", "g0", "mu", "g1", "psi", "sigma0s",
                                                   "alpha_max")}
    alphas = _alpha_grid(p["alpha_max"], args.points)
    curves = fg.fig1_curves(alphas, p["t"], p["g0"], p["g1"], p["mu"], p["psi"], p["sigma0s"])
    return Table("fig1", {"alpha": alphas, **curves}, {**p, "points": args.points},
                 {"zero_line": "K = 0 marks the anticorrelation bound"})


def cmd_fig2(args) -> Table:
    p = {k: _pick(args, k, fg.FIG2[k]) for k in ("t", "g0", "mu", "g1", "psi", "sigma0s",
                                                   "alpha_max", "k")}
    if p["k"] < 1:
        raise InputError("k must be >= 1")
    alphas = _alpha_grid(p["alpha_max"], args.points)
    curves = fg.fig2_curves(alphas, p["k"], p["t"], p["g0"], p["g1"], p["mu"], p["psi"],
                            p["sigma0s"], args.nodes, args.closed_form)
    cols = {"alpha": alphas, **curves}
    notes = {"zero_line": "0 marks the antibunching bound"}
    if args.closed_form:
        notes["expanded_sum_columns"] = "non-authoritative"
    return Table("fig2", cols, {**p, "points": args.points, "nodes": args.nodes}, notes)


def cmd_fig3(args) -> Table:
    p = {k: _pick(args, k, fg.FIG3[k]) for k in ("g0", "mu", "amp", "psi", "t_max")}
    if args.points < 1:
        raise InputError("--points must be >= 1")
    ts = np.linspace(0.0, p["t_max"], args.points)
    curves = fg.fig3_curves(ts, p["g0"], p["amp"], p["mu"], p["psi"])
    return Table("fig3", {"t": ts, **curves}, {**p, "points": args.points,
                                               "pairs": fg.FIG3_PAIRS})


def cmd_fig4(args) -> Table:
    p = {k: _pick(args, k, fg.FIG4[k]) for k in ("t", "g0", "n_max")}
    gt = p["g0"] * p["t"]
    msv = st.msv_pnd(gt, p["n_max"])
    sv = st.sv_pnd(gt, p["n_max"])
    cols = {"n": np.arange(p["n_max"] + 1), "msv": msv.probs, "sv": sv.probs}
    notes = {"msv_tail_bound": msv.tail_mass_bound, "sv_tail_bound": sv.tail_mass_bound}
    return Table("fig4", cols, {**p, "g1": 0.0, "chi": 0.0}, notes)


def cmd_fig5(args) -> Table:
    p = {k: _pick(args, k, fg.FIG5[k]) for k in ("t", "g0", "extent")}
    points = _pick(args, "points", fg.FIG5["points"])
    if points < 1:
        raise InputError("--points must be >= 1")
    xs = np.linspace(-p["extent"], p["extent"], points)
    xx, yy = np.meshgrid(xs, xs, indexing="ij")
    w = st.msv_wigner(p["g0"] * p["t"], xx, yy)
    cols = {"x": xx.ravel(), "y": yy.ravel(), "W": np.asarray(w).ravel()}
    return Table("fig5", cols, {**p, "points": points, "g1": 0.0, "chi": 0.0})


def _pad(arrays: Sequence[np.ndarray]) -> list[np.ndarray]:
    size = max(len(a) for a in arrays)
    return [np.concatenate([a, np.zeros(size - len(a))]) for a in arrays]


def cmd_fig6a(args) -> Table:
    t = _pick(args, "t", fg.FIG6A["t"])
    psi = _pick(args, "psi", fg.FIG6A["psi"])
    pairs = tuple(args.pair) if args.pair else fg.FIG6A["pairs"]
    dists = [ps.sum_pnd_fixed(g, t, InputField.symmetric(a, psi), 0.0) for g, a in pairs]
    mean = mo.mean_w_sum(pairs[0][0], t, InputField.symmetric(pairs[0][1], psi), 0.0)
    size = max(d.n_max for d in dists)
    ref = ps.poisson_distribution(mean, size)
    probs = _pad([d.probs for d in dists] + [ref.probs])
    cols = {"n": np.arange(len(probs[0]))}
    for (g, a), pr in zip(pairs, probs):
        cols[f"g0_{g:g}_amp_{a:g}"] = pr
    cols["poisson"] = probs[-1]
    notes = {"n_max": len(probs[0]) - 1, "poisson_mean": mean}
    for (g, a), d in zip(pairs, dists):
        notes[f"mandel_q_g0_{g:g}_amp_{a:g}"] = ps.distribution_stats(d)[2]
        # the amplitudes the two closed expressions would give; they differ
        # from the pairs above and are listed for comparison only
        notes[f"amp_extremum_expression_g0_{g:g}"] = mo.claimed_extremum(g, t)[0]
        notes[f"amp_threshold_minus_quarter_g0_{g:g}"] = mo.anticorrelation_threshold(g, t) - 0.25
    return Table("fig6a", cols, {"t": t, "psi": psi, "g1": 0.0, "mu": 1.0, "pairs": pairs},
                 notes)


def cmd_fig6b(args) -> Table:
    base = fg.DESK6B if args.desk_scale else fg.FIG6B
    p = {k: _pick(args, k, base[k]) for k in ("g0", "t", "g1", "sigma0", "mu", "amp", "psi")}
    pump = PumpConfig(g0=p["g0"], g1=p["g1"], sigma0=p["sigma0"], mu=p["mu"])
    fld = InputField.symmetric(p["amp"], p["psi"])
    d = ps.sum_pnd_avg_quadrature(pump, p["t"], fld, nodes=args.nodes)
    maxima, runs = ps.oscillation_profile(d)
    cols = {"n": np.arange(d.n_max + 1), "averaged": d.probs}
    if args.desk_scale:
        fock = orc.averaged_sum_pnd(pump, p["t"], fld, nodes=args.nodes)
        cols["averaged"], cols["fock_oracle"] = _pad([d.probs, fock])
        cols["n"] = np.arange(len(cols["averaged"]))
    notes = {"n_max": d.n_max, "tail_mass_bound": d.tail_mass_bound,
             "local_maxima": maxima, "near_zero_runs": len(runs),
             "scale": "desk" if args.desk_scale else "full (expensive)"}
    return Table("fig6b", cols, {**p, "nodes": args.nodes, "variance_mode": "time_dependent"},
                 notes)


# ------------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    records = vf.run_suite(vf.SUITE, seed=args.seed)
    failed = [r for r in records if not r.passed]
    if args.json:
        doc = [{"name": r.name, "measured": _plain(r.measured),
                "tolerance": _plain(r.tolerance), "pass": bool(r.passed)} for r in records]
        _emit(json.dumps(doc, indent=1) + "\n", args.out)
    else:
        width = max(len(r.name) for r in records)
        lines = [f"{'status':6}  {'check':{width}}  {'measured':>24}  {'tolerance':>24}"]
        for r in records:
            status = "PASS" if r.passed else "FAIL"
            tol = "report" if r.tolerance is None else fmt(r.tolerance)
            meas = "-" if r.measured is None else fmt(r.measured)
            lines.append(f"{status:6}  {r.name:{width}}  {meas:>24}  {tol:>24}")
        lines.append(f"{len(records) - len(failed)}/{len(records)} checks passed")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_COMPUTE if failed else EXIT_OK


# ------------------------------------------------------------------- sweep

SWEEP_EXTRA = {"t": 0.5, "amp": None, "k": 5, "averaging": "averaged", "nodes": 64,
               "n_max": 40}
AXIS_KEYS = ("param", "min", "max", "count", "scale")
QUANTITIES = ("k_norm", "reduced_moment", "pnd", "mandel_q")
AXIS_PARAMS = tuple(k for k in CONFIG_KEYS if k != "variance_mode") + ("t", "amp")


def parse_config(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return values


@dataclass
class Sweep:
    pump: dict[str, str]
    extra: dict[str, object]
    param: str
    grid: np.ndarray
    scale: str
    quantity: str


def _num(values: dict[str, str], key: str, cast: Callable = float):
    try:
        return cast(values[key])
    except ValueError:
        raise ConfigError(f"{key}: cannot read {values[key]!r} as {cast.__name__}") from None


def build_sweep(values: dict[str, str]) -> Sweep:
    allowed = set(CONFIG_KEYS) | set(SWEEP_EXTRA) | {f"sweep.axis.{k}" for k in AXIS_KEYS} \
        | {"sweep.quantity"}
    unknown = sorted(set(values) - allowed)
    if unknown:
        raise ConfigError(f"unknown keys: {unknown}")
    for k in ("param", "min", "max"):
        if f"sweep.axis.{k}" not in values:
            raise ConfigError(f"missing sweep.axis.{k}")
    param = values["sweep.axis.param"]
    if param not in AXIS_PARAMS:
        raise ConfigError(f"sweep.axis.param must be one of {list(AXIS_PARAMS)}, got {param!r}")
    lo = _num(values, "sweep.axis.min")
    hi = _num(values, "sweep.axis.max")
    count = _num(values, "sweep.axis.count", int) if "sweep.axis.count" in values else 50
    scale = values.get("sweep.axis.scale", "linear")
    if count < 1:
        raise ConfigError("sweep.axis.count must be >= 1")
    if scale not in ("linear", "log"):
        raise ConfigError(f"sweep.axis.scale must be linear or log, got {scale!r}")
    if count > 1 and not hi > lo:
        raise ConfigError("sweep.axis.max must exceed sweep.axis.min")
    if scale == "log":
        if lo <= 0 or hi <= 0:
            raise ConfigError("a log axis needs positive bounds")
        grid = np.geomspace(lo, hi, count) if count > 1 else np.array([lo])
    else:
        grid = np.linspace(lo, hi, count) if count > 1 else np.array([lo])
    quantity = values.get("sweep.quantity", "k_norm")
    if quantity not in QUANTITIES:
        raise ConfigError(f"sweep.quantity must be one of {list(QUANTITIES)}, got {quantity!r}")
    extra = dict(SWEEP_EXTRA)
    for key in ("t", "amp"):
        if key in values:
            extra[key] = _num(values, key)
    for key in ("k", "nodes", "n_max"):
        if key in values:
            extra[key] = _num(values, key, int)
    if "averaging" in values:
        try:
            extra["averaging"] = mo.Averaging(values["averaging"]).value
        except ValueError:
            raise ConfigError(f"averaging must be fixed or averaged, got "
                              f"{values['averaging']!r}") from None
    pump = {k: v for k, v in values.items() if k in CONFIG_KEYS}
    config_from_mapping(pump)  # validate early
    return Sweep(pump, extra, param, grid, scale, quantity)


def _point(sw: Sweep, x: float) -> tuple[PumpConfig, InputField, float]:
    values: dict[str, object] = dict(sw.pump)
    amp = sw.extra["amp"]
    t = sw.extra["t"]
    if sw.param == "t":
        t = x
    elif sw.param == "amp":
        amp = x
    else:
        values[sw.param] = x
    if amp is not None:
        values["amp1"] = values["amp2"] = amp
    pump, fld = config_from_mapping(values)
    return pump, fld, t


def run_sweep(sw: Sweep) -> Table:
    ex = sw.extra
    avg = mo.Averaging(ex["averaging"])
    ys: list = []
    for x in sw.grid:
        pump, fld, t = _point(sw, float(x))
        if sw.quantity == "k_norm":
            ys.append(mo.normalized_k(pump, t, fld, avg).normalized)
        elif sw.quantity == "reduced_moment":
            ys.append(mo.reduced_factorial_moment(ex["k"], pump, t, fld, avg, ex["nodes"]))
        else:
            n_max = ex["n_max"] if sw.quantity == "pnd" else ps.AUTO
            if avg is mo.Averaging.FIXED:
                d = ps.sum_pnd_fixed(pump.g0, t, fld, pump.phi, n_max)
            else:
                d = ps.sum_pnd_avg_quadrature(pump, t, fld, n_max, ex["nodes"])
            ys.append(d.probs if sw.quantity == "pnd" else ps.distribution_stats(d)[2])
    cols = {sw.param: sw.grid}
    if sw.quantity == "pnd":
        mat = np.vstack(ys)
        for n in range(mat.shape[1]):
            cols[f"p{n}"] = mat[:, n]
    else:
        cols[sw.quantity] = np.array(ys, dtype=float)
    fixed = {**sw.pump, **{k: v for k, v in ex.items() if v is not None}}
    fixed.pop(sw.param, None)
    params = {**fixed,
              "sweep.axis.param": sw.param, "sweep.axis.min": float(sw.grid[0]),
              "sweep.axis.max": float(sw.grid[-1]), "sweep.axis.count": len(sw.grid),
              "sweep.axis.scale": sw.scale, "sweep.quantity": sw.quantity}
    return Table("sweep", cols, params)


def cmd_sweep(args) -> Table:
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    values = parse_config(text)
    if args.nodes is not None:
        values["nodes"] = str(args.nodes)
    if args.points is not None:
        values["sweep.axis.count"] = str(args.points)
    return run_sweep(build_sweep(values))


# ------------------------------------------------------------------ parser

def _common(p: argparse.ArgumentParser, points: int | None = 200) -> None:
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    if points is not None:
        p.add_argument("--points", type=int, default=points, help="grid points")


def _params(p: argparse.ArgumentParser, *names: str) -> None:
    for name in names:
        flag = "--" + name.replace("_", "-")
        if name == "sigma0s":
            p.add_argument(flag, type=_floats, help="comma-separated sigma0 values")
        elif name in ("k", "n_max"):
            p.add_argument(flag, type=int)
        else:
            p.add_argument(flag, type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramp", description="Photon statistics of a parametric amplifier with a "
                                   "fluctuating pump coupling.")
    parser.add_argument("--version", action="version", version=f"paramp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig1", help="normalized correlation K against |alpha|")
    _common(p)
    _params(p, "t", "g0", "mu", "g1", "psi", "sigma0s", "alpha_max")
    p.set_defaults(run=cmd_fig1)

    p = sub.add_parser("fig2", help="reduced factorial moment against |alpha|")
    _common(p)
    _params(p, "t", "g0", "mu", "g1", "psi", "sigma0s", "alpha_max", "k")
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--closed-form", action="store_true",
                   help="add the expanded-sum columns (non-authoritative)")
    p.set_defaults(run=cmd_fig2)

    p = sub.add_parser("fig3", help="K against interaction time")
    _common(p)
    _params(p, "g0", "mu", "amp", "psi", "t_max")
    p.set_defaults(run=cmd_fig3)

    p = sub.add_parser("fig4", help="even-state photon-number distributions")
    _common(p, points=None)
    _params(p, "t", "g0", "n_max")
    p.set_defaults(run=cmd_fig4)

    p = sub.add_parser("fig5", help="Wigner function on a square grid")
    _common(p, points=fg.FIG5["points"])
    _params(p, "t", "g0", "extent")
    p.set_defaults(run=cmd_fig5)

    p = sub.add_parser("fig6a", help="fixed-coupling sum distributions and Poisson reference")
    _common(p, points=None)
    _params(p, "t", "psi")
    p.add_argument("--pair", type=_pair, action="append", metavar="G0,AMP",
                   help="(g0, |alpha|) pair; repeat for more curves")
    p.set_defaults(run=cmd_fig6a)

    p = sub.add_parser("fig6b", help="averaged sum distribution (full scale is expensive)")
    _common(p, points=None)
    _params(p, "g0", "t", "g1", "sigma0", "mu", "amp", "psi")
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--desk-scale", action="store_true",
                   help="g0 t = 1.5 with a Fock-oracle column")
    p.set_defaults(run=cmd_fig6b)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("sweep", help="evaluate a quantity over a config-declared axis")
    p.add_argument("config")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--points", type=int, help="override sweep.axis.count")
    p.add_argument("--nodes", type=int, help="override nodes")
    p.set_defaults(run=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with threadpool_limits(1), warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", PrecisionDegradedWarning)
            result = args.run(args)
            if isinstance(result, Table):
                degraded = sum(issubclass(w.category, PrecisionDegradedWarning) for w in caught)
                result.notes["degraded_warnings"] = degraded
                _write(result, args)
                return EXIT_OK
            return result
    except (ConfigError, InputError) as exc:
        print(f"paramp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParampError as exc:
        print(f"paramp: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"paramp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
