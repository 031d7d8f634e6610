"""Command-line front end.

Three subcommands:

* ``bound SCENE.json``  -- compute the optimized bound(s) for a scene file,
  printed as JSON (default) or an aligned table.
* ``sweep SCENE.json --param alpha --out FILE.csv`` -- emit per-order
  curves as CSV (columns alpha, upper, lower, feasible).
* ``verify SUITE``      -- run a verification suite; JSON report on stdout,
  human summary on stderr.

Exit codes: 0 success, 1 input error, 2 infeasible scene,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

import jsonschema
import numpy as np

from . import erasure, fading, gaussian, source_coding, verify
from .errors import FeasibilityError
from .exponents import BoundResult
from .numerics import default_alpha_grid

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_PROB_OPEN = {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}

_GRID_SCHEMA = {
    "type": "object",
    "properties": {
        "min": {"type": "number", "exclusiveMinimum": 1},
        "max": {"type": "number", "exclusiveMinimum": 1},
        "points": {"type": "integer", "minimum": 2},
        "scale": {"enum": ["linear", "geometric"]},
    },
    "required": ["min", "max", "points"],
    "additionalProperties": False,
}

MODELS = ("interference", "isi", "fading-ar", "fading-flat", "fading-ou",
          "erasure-hmm", "erasure-fraction", "rd-gaussian", "rd-binary",
          "rd-pair", "guessing")


def _schema(properties: dict, required: list[str]) -> dict:
    props = {"model": {"enum": list(MODELS)}, "alpha_grid": _GRID_SCHEMA}
    props.update(properties)
    return {
        "type": "object",
        "properties": props,
        "required": ["model"] + required,
        "additionalProperties": False,
    }


SCENE_SCHEMAS = {
    "interference": _schema({
        "rate": _NONNEG, "power": _POS, "noise_var": _POS,
        "interference_bound": _NONNEG,
        "ref_exponent": {"enum": ["very-noisy", "zero"]},
        "s_grid": _GRID_SCHEMA,
    }, ["rate", "power", "noise_var", "interference_bound"]),
    "isi": _schema({
        "power": _POS, "noise_var": _POS, "r1": _NUM, "r2": _NUM,
    }, ["power", "noise_var", "r1", "r2"]),
    "fading-ar": _schema({
        "a": {"type": "number", "exclusiveMinimum": -1, "exclusiveMaximum": 1},
        "b": _NONNEG, "amplitude": _POS, "noise_var": _POS, "e_q": _NONNEG,
    }, ["a", "b", "amplitude", "noise_var", "e_q"]),
    "fading-flat": _schema({
        "sigma0": _POS, "bandwidth": _POS, "amplitude": _POS,
        "noise_var": _POS, "e_q": _NONNEG,
    }, ["sigma0", "bandwidth", "amplitude", "noise_var", "e_q"]),
    "fading-ou": _schema({
        "a": _POS, "b": _POS, "amplitude": _POS, "noise_var": _POS,
        "e_q": _NONNEG,
    }, ["a", "b", "amplitude", "noise_var", "e_q"]),
    "erasure-hmm": _schema({
        "transition": {"type": "array",
                       "items": {"type": "array", "items": _NONNEG}},
        "labels": {"type": "array", "items": {"enum": [0, 1]}},
        "crossover": _PROB_OPEN, "e_q": _NONNEG,
    }, ["transition", "labels", "crossover", "e_q"]),
    "erasure-fraction": _schema({
        "fraction": {"type": "number", "minimum": 0, "maximum": 1},
        "crossover": _PROB_OPEN, "e_q": _NONNEG,
    }, ["fraction", "crossover", "e_q"]),
    "rd-gaussian": _schema({
        "rate": _NONNEG, "distortion": _POS, "source_var": _POS,
        "interference": _NONNEG,
    }, ["rate", "distortion", "source_var", "interference"]),
    "rd-binary": _schema({
        "marton_exponent": _NONNEG, "source_param": _PROB_OPEN,
        "interference": _NONNEG,
    }, ["marton_exponent", "source_param", "interference"]),
    "rd-pair": _schema({
        "joint": {"type": "array",
                  "items": {"type": "array", "items": _NONNEG}},
        "fx": _NONNEG, "fy": _NONNEG,
        "rate_x": _NONNEG, "rate_y": _NONNEG,
        "distortion_x": _NONNEG, "distortion_y": _NONNEG,
        "grid_points": {"type": "integer", "minimum": 2},
    }, ["joint", "fx", "fy", "rate_x", "rate_y", "distortion_x",
        "distortion_y"]),
    "guessing": _schema({
        "moment_order": _POS, "source_param": _PROB_OPEN,
        "interference": _NONNEG, "distortion": _NONNEG,
        "qhat_points": {"type": "integer", "minimum": 2},
    }, ["moment_order", "source_param", "interference", "distortion"]),
}


class _CliError(Exception):
    """Input-level failure; maps to exit code 1."""


def _load_scene(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            scene = json.load(fh)
    except OSError as exc:
        raise _CliError(f"cannot read scene file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _CliError(f"scene file is not valid JSON: {exc}") from exc
    if not isinstance(scene, dict) or "model" not in scene:
        raise _CliError("scene file must be a JSON object with a 'model' tag")
    model = scene["model"]
    if model not in SCENE_SCHEMAS:
        raise _CliError(f"unknown model {model!r}; choose from {MODELS}")
    try:
        jsonschema.validate(scene, SCENE_SCHEMAS[model])
    except jsonschema.ValidationError as exc:
        raise _CliError(
            f"schema violation at {exc.json_path}: {exc.message}") from exc
    return scene


def _grid_from_spec(spec: dict | None) -> np.ndarray:
    if spec is None:
        return default_alpha_grid()
    lo, hi, points = spec["min"], spec["max"], spec["points"]
    if hi <= lo:
        raise _CliError("alpha grid needs max > min")
    if spec.get("scale", "geometric") == "linear":
        return np.linspace(lo, hi, points)
    return np.geomspace(lo, hi, points)


def _alpha_grid(scene: dict, args: argparse.Namespace) -> np.ndarray:
    spec = scene.get("alpha_grid")
    overrides = {k: getattr(args, f"alpha_{k}") for k in
                 ("min", "max", "points", "scale")
                 if getattr(args, f"alpha_{k}", None) is not None}
    if overrides:
        base = dict(spec) if spec else {"min": 1.0 + 1e-4, "max": 1e3,
                                        "points": 400, "scale": "geometric"}
        base.update(overrides)
        spec = base
    return _grid_from_spec(spec)


def _interference_scene(scene: dict) -> gaussian.ChannelScene:
    kind = scene.get("ref_exponent", "very-noisy")
    if kind == "very-noisy":
        ref = gaussian.very_noisy_ref_exponent_fn(scene["power"],
                                                  scene["noise_var"])
    else:
        ref = gaussian.zero_ref_exponent
    return gaussian.ChannelScene(
        rate=scene["rate"], power=scene["power"],
        noise_var=scene["noise_var"],
        interference_bound=scene["interference_bound"], ref_exponent=ref)


def _fading_scene(scene: dict) -> fading.FadingScene:
    model = scene["model"]
    if model == "fading-ar":
        spectral = fading.ArSpectrum(scene["a"], scene["b"])
    elif model == "fading-flat":
        spectral = fading.FlatSpectrum(scene["sigma0"], scene["bandwidth"])
    else:
        spectral = fading.OuSpectrum(scene["a"], scene["b"])
    return fading.FadingScene(amplitude=scene["amplitude"],
                              noise_var=scene["noise_var"],
                              e_q=scene["e_q"], spectral=spectral)


def _markov_scene(scene: dict) -> erasure.MarkovErasure:
    return erasure.MarkovErasure(
        transition=np.asarray(scene["transition"], dtype=float),
        labels=np.asarray(scene["labels"], dtype=int),
        crossover=scene["crossover"])


def _simplex_grid(points: int) -> list[tuple[np.ndarray, np.ndarray]]:
    qs = np.linspace(1e-6, 1.0 - 1e-6, points)
    return [(np.array([qx, 1.0 - qx]), np.array([qy, 1.0 - qy]))
            for qx in qs for qy in qs]


def _compute_bound(scene: dict, grid: np.ndarray) -> dict:
    model = scene["model"]
    if model == "interference":
        chan = _interference_scene(scene)
        s_grid = (_grid_from_spec(scene["s_grid"]) if "s_grid" in scene
                  else None)
        upper = gaussian.interference_upper(chan, grid, s_grid)
        e_q1 = chan.ref_exponent(chan.rate, 1.0)
        lower = gaussian.interference_lower(e_q1, chan.interference_bound,
                                            chan.noise_var)
        return {
            "upper": upper.to_dict(),
            "upper_s1_closed": gaussian.interference_upper_s1(
                e_q1, chan.interference_bound, chan.noise_var).to_dict(),
            "lower": lower,
            "capacity_upper": gaussian.capacity_upper(
                chan.power, chan.noise_var, chan.interference_bound),
            "feasible": upper.feasible,
        }
    if model == "isi":
        band = gaussian.isi_zero_rate_band(gaussian.IsiScene(
            power=scene["power"], noise_var=scene["noise_var"],
            r1=scene["r1"], r2=scene["r2"]))
        out = band.to_dict()
        out["feasible"] = True
        return out
    if model in ("fading-ar", "fading-flat", "fading-ou"):
        fscene = _fading_scene(scene)
        if model == "fading-ou":
            res = fading.ou_optimal_bounds(fscene.spectral.a,
                                           fscene.spectral.b, fscene.p,
                                           fscene.e_q)
            return {
                "upper": res.e_upper, "alpha_star": res.alpha_star,
                "lower": res.e_lower, "alpha_hat": res.alpha_hat,
                "alpha_max": res.alpha_max, "feasible": True,
            }
        if model == "fading-ar":
            lower, upper = fading.dt_fading_bounds(fscene, grid)
        else:
            lower, upper = fading.ct_fading_bounds(fscene, grid)
        return {"lower": lower.to_dict(), "upper": upper.to_dict(),
                "feasible": lower.feasible and upper.feasible}
    if model == "erasure-hmm":
        lower, upper = erasure.erasure_bounds(_markov_scene(scene),
                                              scene["e_q"], grid)
        return {"lower": lower.to_dict(), "upper": upper.to_dict(),
                "feasible": lower.feasible and upper.feasible}
    if model == "erasure-fraction":
        lower, upper = erasure.bounded_fraction_bounds(
            scene["fraction"], scene["crossover"], scene["e_q"], grid)
        return {"lower": lower.to_dict(), "upper": upper.to_dict(),
                "feasible": lower.feasible and upper.feasible}
    if model == "rd-gaussian":
        lower, upper = source_coding.gaussian_rd_band(source_coding.RdScene(
            rate=scene["rate"], distortion=scene["distortion"],
            source_var=scene["source_var"],
            interference=scene["interference"]))
        return {"lower": lower, "upper": upper, "feasible": True}
    if model == "rd-binary":
        res = source_coding.binary_rd_upper(
            scene["marton_exponent"], scene["source_param"],
            scene["interference"], grid)
        return {"upper": res.to_dict(), "feasible": res.feasible}
    if model == "rd-pair":
        res = source_coding.pair_sources_upper(
            np.asarray(scene["joint"], dtype=float),
            lambda q, r, d: scene["fx"], lambda q, r, d: scene["fy"],
            scene["rate_x"], scene["rate_y"],
            scene["distortion_x"], scene["distortion_y"],
            _simplex_grid(scene.get("grid_points", 21)), grid)
        return {"upper": res.to_dict(), "feasible": res.feasible}
    if model == "guessing":
        points = scene.get("qhat_points", 201)
        res = source_coding.guessing_lower(
            scene["moment_order"], scene["source_param"],
            scene["interference"], scene["distortion"],
            np.linspace(1e-4, 1.0 - 1e-4, points), grid)
        return {"lower": res.to_dict(), "feasible": res.feasible}
    raise _CliError(f"unknown model {model!r}")


def _sweep_rows(scene: dict, grid: np.ndarray) -> list[tuple]:
    """(alpha, upper, lower, feasible) rows; None marks an absent side."""
    model = scene["model"]
    rows: list[tuple] = []
    if model == "fading-ar":
        fscene = _fading_scene(scene)
        for a in grid:
            res = fading.ar_closed_form(fscene, float(a))
            if res.feasible:
                rows.append((float(a), res.upper, res.lower, 1))
            else:
                rows.append((float(a), None, None, 0))
        return rows
    if model in ("fading-flat", "fading-ou"):
        fscene = _fading_scene(scene)
        for a in grid:
            lo, up, ok = fading.ct_bound_values(fscene, float(a))
            rows.append((float(a), up if ok else None, lo if ok else None,
                         int(ok)))
        return rows
    if model == "erasure-hmm":
        me = _markov_scene(scene)
        for a in grid:
            lo, up = erasure.erasure_bound_values(me, scene["e_q"], float(a))
            rows.append((float(a), up, lo, 1))
        return rows
    if model == "erasure-fraction":
        for a in grid:
            lo, up = erasure.bounded_fraction_values(
                scene["fraction"], scene["crossover"], scene["e_q"], float(a))
            rows.append((float(a), up, lo, 1))
        return rows
    if model == "interference":
        chan = _interference_scene(scene)
        s_grid = (_grid_from_spec(scene["s_grid"]) if "s_grid" in scene
                  else np.unique(np.concatenate([np.geomspace(0.2, 5.0, 81),
                                                 [1.0]])))
        e_q1 = chan.ref_exponent(chan.rate, 1.0)
        lower = gaussian.interference_lower(e_q1, chan.interference_bound,
                                            chan.noise_var)
        for a in grid:
            vals = [gaussian.interference_objective(chan, float(a), float(s))
                    for s in s_grid if 1.0 + a * (s - 1.0) > 1e-12]
            finite = [v for v in vals if math.isfinite(v)]
            if finite:
                rows.append((float(a), min(finite), lower, 1))
            else:
                rows.append((float(a), None, None, 0))
        return rows
    if model == "rd-binary":
        for a in grid:
            val = (a * scene["marton_exponent"]
                   + scene["interference"]
                   * source_coding._tilt_bracket_log(scene["source_param"], a)
                   ) / (a - 1.0)
            rows.append((float(a), val, None, 1))
        return rows
    if model == "guessing":
        qhat = np.linspace(1e-4, 1.0 - 1e-4, scene.get("qhat_points", 201))
        for a in grid:
            res = source_coding.guessing_lower(
                scene["moment_order"], scene["source_param"],
                scene["interference"], scene["distortion"], qhat,
                np.array([float(a)]))
            rows.append((float(a), None, res.value, 1))
        return rows
    raise _CliError(f"model {model!r} has no alpha sweep")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def _flatten(prefix: str, obj, out: list[tuple[str, str]]):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], out)
    elif isinstance(obj, (list, tuple)):
        out.append((prefix, "[" + ", ".join(_fmt(v) for v in obj) + "]"))
    elif isinstance(obj, bool):
        out.append((prefix, str(obj).lower()))
    elif isinstance(obj, (int, float)):
        out.append((prefix, _fmt(obj)))
    else:
        out.append((prefix, str(obj)))


def _render_table(result: dict) -> str:
    pairs: list[tuple[str, str]] = []
    _flatten("", result, pairs)
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs) + "\n"


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors exit with code 1
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="lpcb",
                     description="Probability-comparison exponent bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_grid_flags(p):
        p.add_argument("--alpha-min", dest="alpha_min", type=float)
        p.add_argument("--alpha-max", dest="alpha_max", type=float)
        p.add_argument("--alpha-points", dest="alpha_points", type=int)
        p.add_argument("--alpha-scale", dest="alpha_scale",
                       choices=["linear", "geometric"])

    p_bound = sub.add_parser("bound", help="compute bounds for a scene file")
    p_bound.add_argument("scene")
    p_bound.add_argument("--format", choices=["json", "table"],
                         default="json")
    p_bound.add_argument("--out")
    add_grid_flags(p_bound)

    p_sweep = sub.add_parser("sweep", help="sweep a parameter, emit CSV")
    p_sweep.add_argument("scene")
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--out")
    add_grid_flags(p_sweep)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--out")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "bound":
            scene = _load_scene(args.scene)
            grid = _alpha_grid(scene, args)
            try:
                result = _compute_bound(scene, grid)
            except FeasibilityError as exc:
                sys.stderr.write(f"infeasible scene: {exc}\n")
                return 2
            result["model"] = scene["model"]
            if args.format == "table":
                _emit(_render_table(result), args.out)
            else:
                _emit(json.dumps(result, sort_keys=True, indent=2) + "\n",
                      args.out)
            return 0 if result.get("feasible", True) else 2

        if args.command == "sweep":
            if args.param != "alpha":
                raise _CliError(f"parameter {args.param!r} is not sweepable")
            scene = _load_scene(args.scene)
            grid = _alpha_grid(scene, args)
            try:
                rows = _sweep_rows(scene, grid)
            except FeasibilityError as exc:
                sys.stderr.write(f"infeasible scene: {exc}\n")
                return 2
            import io

            buf = io.StringIO()
            writer = csv.writer(buf)
            writer.writerow(["alpha", "upper", "lower", "feasible"])
            for alpha, upper, lower, feasible in rows:
                writer.writerow([_fmt(alpha), _fmt(upper), _fmt(lower),
                                 str(feasible)])
            _emit(buf.getvalue(), args.out)
            return 0

        if args.command == "verify":
            if args.suite not in verify.SUITES:
                raise _CliError(
                    f"unknown suite {args.suite!r}; choose from {verify.SUITES}")
            report = verify.run_suite(args.suite, args.seed)
            for line in verify.summarize(report):
                sys.stderr.write(line + "\n")
            _emit(json.dumps(report, sort_keys=True, indent=2) + "\n",
                  args.out)
            return 0 if report["passed"] else 3

        raise _CliError(f"unknown command {args.command!r}")
    except _CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
