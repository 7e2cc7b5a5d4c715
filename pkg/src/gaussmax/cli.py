"""Command-line interface.

Every command emits a JSON summary embedding the fully resolved
configuration, the library version, and the seed, so any artifact can be
fed back through --config and reproduced exactly.  Tabular commands also
emit CSV.  Exit codes: 0 success, 2 configuration problems, 3 domain
errors, 4 infeasible estimation budgets.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .asymptotics import (model_constants, tail_prob_finite,
                          tail_prob_infinite)
from .catalog import illustration_rows
from .constants import (EstimatorParams, pickands_constant,
                        piterbarg_constant)
from .errors import BudgetError, GaussmaxError, ValidationError
from .horizons import (classify_scenario, classify_subcase, family_from_dict,
                       family_to_dict)
from .limits import law_from_dict, limit_cdf, predict_limit
from .mc import SimConfig, convergence_sweep, gof, simulate_maxima
from .model import ModelSpec

PARSE_EXIT, DOMAIN_EXIT, BUDGET_EXIT = 2, 3, 4


def _jsonable(obj):
    """Make a structure JSON-safe: numpy scalars to float, inf to strings."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        obj = obj.item()
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
    return obj


def _csv_text(rows, headers):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(["" if v is None else _jsonable(v) for v in row])
    return buf.getvalue()


def _emit(args, summary, rows=None, headers=None):
    text = json.dumps(_jsonable(summary), indent=2, sort_keys=True)
    if args.out:
        with open(args.out + ".json", "w") as fh:
            fh.write(text + "\n")
        if rows is not None:
            with open(args.out + ".csv", "w") as fh:
                fh.write(_csv_text(rows, headers))
    elif rows is not None and args.format == "csv":
        sys.stdout.write(_csv_text(rows, headers))
    else:
        print(text)


def _load_config(args) -> dict:
    if not args.config:
        return {}
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _ConfigError(f"cannot read config {args.config}: {exc}")
    if "config" in cfg:  # a previously emitted summary
        cfg = cfg["config"]
    return cfg


class _ConfigError(Exception):
    pass


def _model_from(args, cfg) -> ModelSpec:
    if "model" not in cfg:
        raise _ConfigError("the config must contain a 'model' object")
    return ModelSpec.from_dict(cfg["model"])


def _family_from(args, cfg):
    fam = cfg.get("family")
    if getattr(args, "gamma", None) is not None:
        fam = {"kind": "power-log", "gamma": args.gamma,
               "lambda": args.lam if args.lam is not None else 1.0}
    if getattr(args, "T", None) is not None:
        fam = {"kind": "constant", "T": args.T}
    if fam is None:
        raise _ConfigError("a horizon family is required "
                           "(config 'family' or --gamma/--T flags)")
    return family_from_dict(fam)


def _sim_config(args, cfg, model, family) -> SimConfig:
    sim = dict(cfg.get("sim", {}))
    for key in ("n", "replicas", "grid_m"):
        v = getattr(args, key, None)
        if v is not None:
            sim[key] = v
    if args.seed is not None:
        sim["seed"] = args.seed
    if args.threads is not None:
        sim["threads"] = args.threads
    seed = sim.get("seed", 0)
    if isinstance(seed, list):
        seed = tuple(seed)
    try:
        return SimConfig(model, family, n=int(sim["n"]),
                         replicas=int(sim["replicas"]),
                         grid_m=int(sim.get("grid_m", 4096)),
                         seed=seed, threads=int(sim.get("threads", 1)))
    except KeyError as exc:
        raise _ConfigError(f"sim config is missing {exc}")


def _estimator_params(args) -> EstimatorParams:
    base = EstimatorParams()
    return EstimatorParams(
        window=args.window if args.window is not None else base.window,
        mesh=args.mesh if args.mesh is not None else base.mesh,
        replicas=args.replicas if args.replicas is not None else base.replicas,
        batches=args.batches if args.batches is not None else base.batches,
        seed=args.seed if args.seed is not None else base.seed)


def _summary(args, command, cfg_echo, **extra):
    out = {"command": command, "version": __version__}
    if cfg_echo:
        out["config"] = cfg_echo
    out.update(extra)
    return out


def _config_echo(model=None, family=None, sim: SimConfig | None = None):
    echo = {}
    if model is not None:
        echo["model"] = model.to_dict()
    if family is not None:
        echo["family"] = family_to_dict(family)
    if sim is not None:
        echo["sim"] = sim.to_dict()
    return echo


# --- command handlers --------------------------------------------------------

def _cmd_constants(args):
    cfg = _load_config(args)
    if args.H is not None:
        h, c, beta = args.H, args.c, args.beta
    else:
        model = _model_from(args, cfg)
        h, beta = model.H, model.beta
        c = model.drift.smallest
    mc = model_constants(h, c, beta)
    _emit(args, _summary(args, "constants", None, H=h, c=c, beta=beta,
                         t0=mc.t0, A=mc.A, B=mc.B, tau=mc.tau,
                         ttilde0=mc.ttilde0))


def _cmd_pickands(args):
    params = _estimator_params(args)
    est = pickands_constant(args.alpha, params)
    _emit(args, _summary(args, "pickands", None, alpha=args.alpha,
                         value=est.value, stderr=est.stderr,
                         params=vars(est.params)))


def _cmd_piterbarg(args):
    params = _estimator_params(args)
    est = piterbarg_constant(args.alpha, args.d, params)
    _emit(args, _summary(args, "piterbarg", None, alpha=args.alpha, d=args.d,
                         value=est.value, stderr=est.stderr,
                         params=vars(est.params)))


def _cmd_psi(args):
    cfg = _load_config(args)
    model = _model_from(args, cfg)
    if args.infinite:
        value = tail_prob_infinite(args.u, model)
        kind = "infinite"
    else:
        if args.tu is None:
            raise _ConfigError("psi needs --tu (or --infinite)")
        x = float(args.x) if args.x is not None else None
        value = tail_prob_finite(args.u, args.tu, model, s0=args.s0, x=x)
        kind = "finite"
    _emit(args, _summary(args, "psi", _config_echo(model), u=args.u,
                         horizon=kind, tu=args.tu, s0=args.s0, x=args.x,
                         psi=value))


def _cmd_classify(args):
    cfg = _load_config(args)
    model = _model_from(args, cfg)
    family = _family_from(args, cfg)
    sc = classify_scenario(family, model)
    sub = classify_subcase(family, model, sc)
    _emit(args, _summary(args, "classify", _config_echo(model, family),
                         scenario=sc.to_dict(), subcase=sub.to_dict()))


def _cmd_normalizers(args):
    cfg = _load_config(args)
    model = _model_from(args, cfg)
    family = _family_from(args, cfg)
    recipe, law = predict_limit(model, family)
    rows = []
    for n in args.n:
        ns = recipe.at(int(n), model, family)
        rows.append((int(n), ns.center, ns.scale, ns.kind))
    _emit(args, _summary(args, "normalizers", _config_echo(model, family),
                         recipe=recipe.describe(), law=law.describe(),
                         rows=[dict(zip(("n", "center", "scale", "kind"), r))
                               for r in rows]),
          rows=rows, headers=("n", "center", "scale", "kind"))


def _cmd_predict(args):
    cfg = _load_config(args)
    model = _model_from(args, cfg)
    family = _family_from(args, cfg)
    sc = classify_scenario(family, model)
    sub = classify_subcase(family, model, sc)
    recipe, law = predict_limit(model, family)
    _emit(args, _summary(args, "predict", _config_echo(model, family),
                         scenario=sc.to_dict(), subcase=sub.to_dict(),
                         recipe=recipe.describe(), law=law.describe()))


def _run_simulation(args):
    cfg = _load_config(args)
    model = _model_from(args, cfg)
    family = _family_from(args, cfg)
    sim = _sim_config(args, cfg, model, family)
    return model, family, sim, simulate_maxima(sim)


def _cmd_simulate(args):
    model, family, sim, res = _run_simulation(args)
    rows = [(r, raw, norm) for r, (raw, norm)
            in enumerate(zip(res.raw, res.normalized))]
    _emit(args, _summary(args, "simulate", _config_echo(model, family, sim),
                         recipe=res.recipe.describe(),
                         law=res.law.describe(),
                         normalizer={"center": res.normalizer.center,
                                     "scale": res.normalizer.scale,
                                     "kind": res.normalizer.kind}),
          rows=rows, headers=("replica", "raw", "normalized"))


def _cmd_gof(args):
    model, family, sim, res = _run_simulation(args)
    report = gof(res.normalized, res.law)
    _emit(args, _summary(args, "gof", _config_echo(model, family, sim),
                         recipe=res.recipe.describe(),
                         law=res.law.describe(), gof=report.to_dict()))


def _cmd_sweep(args):
    cfg = _load_config(args)
    model = _model_from(args, cfg)
    family = _family_from(args, cfg)
    sim = dict(cfg.get("sim", {}))
    replicas = args.replicas or int(sim.get("replicas", 1000))
    grid_m = args.grid_m or int(sim.get("grid_m", 4096))
    seed = args.seed if args.seed is not None else int(sim.get("seed", 0))
    threads = args.threads or int(sim.get("threads", 1))
    rows = convergence_sweep(model, family, args.n, replicas, grid_m,
                             seed=seed, threads=threads)
    tab = [(r["n"], r["ks"], r["ad"], r["center"], r["scale"]) for r in rows]
    _emit(args, _summary(args, "sweep", _config_echo(model, family),
                         replicas=replicas, grid_m=grid_m, seed=seed,
                         rows=rows),
          rows=tab, headers=("n", "ks", "ad", "center", "scale"))


def _cmd_reproduce_example(args):
    rows = illustration_rows(args.which)
    headers = ("case", "gamma", "lambda", "scenario", "subcase",
               "normalizer", "x0", "law", "point", "shift", "coef")
    tab = [tuple(r[h] for h in headers) for r in rows]
    _emit(args, _summary(args, "reproduce-example", None, which=args.which,
                         rows=rows),
          rows=tab, headers=headers)


def _cmd_limit_cdf(args):
    law = law_from_dict(json.loads(args.law))
    lo, hi, count = args.grid
    xs = np.linspace(lo, hi, int(count))
    fs = limit_cdf(law, xs)
    rows = list(zip(xs.tolist(), np.atleast_1d(fs).tolist()))
    _emit(args, _summary(args, "limit-cdf", None, law=json.loads(args.law),
                         points=len(rows)),
          rows=rows, headers=("x", "cdf"))


# --- parser -------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", help="artifact path prefix")
    p.add_argument("--format", choices=("csv", "json"), default="json")


def _add_family_flags(p):
    p.add_argument("--gamma", type=float, default=None,
                   help="power-log family exponent")
    p.add_argument("--lam", type=float, default=None,
                   help="power-log family scale")
    p.add_argument("--T", type=float, default=None, help="constant horizon")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gaussmax",
        description="limit theory and Monte Carlo for maxima of suprema of "
                    "dependent Gaussian processes with trend")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="closed-form peak constants")
    p.add_argument("--H", type=float)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(handler=_cmd_constants)

    for name, handler in (("pickands", _cmd_pickands),
                          ("piterbarg", _cmd_piterbarg)):
        p = sub.add_parser(name, help=f"Monte Carlo {name} constant")
        p.add_argument("--alpha", type=float, required=True)
        if name == "piterbarg":
            p.add_argument("--d", type=float, required=True)
        p.add_argument("--window", type=float)
        p.add_argument("--mesh", type=float)
        p.add_argument("--replicas", type=int)
        p.add_argument("--batches", type=int)
        _add_common(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("psi", help="supremum tail asymptotics")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--tu", type=float)
    p.add_argument("--s0", type=float)
    p.add_argument("--x", help="critical deviation (number or 'inf')")
    p.add_argument("--infinite", action="store_true")
    _add_common(p)
    p.set_defaults(handler=_cmd_psi)

    p = sub.add_parser("classify", help="scenario and sub-case labels")
    _add_family_flags(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("normalizers", help="centering and scaling at given n")
    p.add_argument("--n", type=int, nargs="+", required=True)
    _add_family_flags(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_normalizers)

    p = sub.add_parser("predict", help="normalizer recipe and limit law")
    _add_family_flags(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_predict)

    for name, handler in (("simulate", _cmd_simulate), ("gof", _cmd_gof)):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int)
        p.add_argument("--replicas", type=int)
        p.add_argument("--grid-m", dest="grid_m", type=int)
        _add_family_flags(p)
        _add_common(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("sweep", help="goodness of fit over increasing n")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--replicas", type=int)
    p.add_argument("--grid-m", dest="grid_m", type=int)
    _add_family_flags(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("reproduce-example",
                       help="golden case tables of the two reference models")
    p.add_argument("--which", required=True, choices=("3.1", "4.2"))
    _add_common(p)
    p.set_defaults(handler=_cmd_reproduce_example)

    p = sub.add_parser("limit-cdf", help="tabulate a limit-law CDF")
    p.add_argument("--law", required=True,
                   help='JSON, e.g. {"variant":"gumbel","shift":0}')
    p.add_argument("--grid", type=float, nargs=3, required=True,
                   metavar=("LO", "HI", "COUNT"))
    _add_common(p)
    p.set_defaults(handler=_cmd_limit_cdf)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.handler(args)
    except (_ConfigError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": "config", "detail": str(exc)}),
              file=sys.stderr)
        return PARSE_EXIT
    except BudgetError as exc:
        print(json.dumps({"error": "budget", "detail": str(exc)}),
              file=sys.stderr)
        return BUDGET_EXIT
    except (GaussmaxError, ValidationError) as exc:
        print(json.dumps({"error": "domain", "detail": str(exc)}),
              file=sys.stderr)
        return DOMAIN_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
