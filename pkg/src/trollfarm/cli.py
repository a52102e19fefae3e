"""``trollfarm-eq``: configuration-driven experiment runner.

    trollfarm-eq <command> [--config FILE] [--set key=value]... [--out DIR]

Each command writes a CSV table (where there is one) and ``summary.json``
(config echo and version, wall time and results) into ``--out``.  ``verify``
additionally writes ``verify_report.json``, which holds no timing or version
fields and is byte-identical across runs with the same seed.

Exit status: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure.
"""

import argparse
import csv
import json
import logging
import math
from pathlib import Path
import subprocess
import sys
import time

import numpy as np

from . import __version__
from .comparative import (find_conservatism, find_polarization, informativeness_sweep, regime_sweep,
                          regimes_in_order)
from .config import build_electorate, build_model, build_variant, load_config, section, type_grid
from .electorate import (admits_greater_polarization, distortion_from_config, electorate_from_config,
                         identity_distortion, is_more_conservative, polarize, scale_distortion)
from .errors import ConfigError, DomainError, TrollFarmError
from .oracle import SimConfig, default_workers, discretized_exhaustive, dominance_test, simulate_election
from .outcomes import Capped, Distorted, NoTrolls, two_sided_outcome, vote_shares
from .signals import cutoff
from .strategy import constrained_strategy, optimal_mass, optimal_strategy

log = logging.getLogger("trollfarm")

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
Z_LIMIT = 3.0


def version_string():
    """``git describe`` of the source tree when available, else ``v<package version>``."""
    here = Path(__file__).resolve().parent
    try:
        out = subprocess.run(["git", "describe", "--tags", "--always", "--dirty"], cwd=here,
                             capture_output=True, text=True, timeout=5, check=True)
        desc = out.stdout.strip()
        if desc:
            return desc if desc.startswith("v") else f"v{__version__}-g{desc}"
    except (OSError, subprocess.SubprocessError):
        pass
    return f"v{__version__}"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def write_json(path, payload):
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True, allow_nan=False)
    Path(path).write_text(text + "\n")


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if v is None:
        return ""
    return getattr(v, "value", v)


def write_csv(path, rows, columns=None):
    if columns is None:
        columns = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(row.get(c)) for c in columns])


# --- commands ------------------------------------------------------------------

def cmd_strategy(cfg, out):
    spec = section(cfg, "strategy", {"types", "start", "stop", "step"},
                   {"start": 0.05, "stop": 0.95, "step": 0.05})
    xs = type_grid(spec, "strategy")
    model = build_model(cfg)
    variant = build_variant(cfg, model)
    capped = isinstance(variant, Capped)
    rows = []
    for x in xs:
        row = {"x": x, "alpha_star": optimal_mass(model, x), "s_star": cutoff(model, x)}
        if abs(x - 0.5) < 1e-9:
            row.update(alpha=1.0, support_lo=math.nan, support_hi=math.nan)
        else:
            strat = constrained_strategy(model, x, variant.cap(x)) if capped else optimal_strategy(model, x)
            row.update(alpha=strat.alpha, support_lo=strat.support[0], support_hi=strat.support[1])
            if capped:
                row["s_hat"] = strat.support[0] if strat.kind == "constrained" and x < 0.5 else None
        if capped:
            row["cap"] = variant.cap(x)
        rows.append(row)
    cols = ["x", "alpha_star", "s_star", "alpha", "support_lo", "support_hi"] + (["cap", "s_hat"] if capped else [])
    write_csv(out / "strategy.csv", rows, cols)
    k = int(np.argmax([r["alpha_star"] for r in rows]))
    return {"rows": len(rows), "alpha_star_peak_x": rows[k]["x"], "alpha_star_peak": rows[k]["alpha_star"]}, 0


def cmd_shares(cfg, out):
    model = build_model(cfg)
    electorate = build_electorate(cfg)
    variant = build_variant(cfg, model)
    rows = []
    for v in ([NoTrolls()] if not isinstance(variant, NoTrolls) else []) + [variant]:
        sh = vote_shares(model, electorate, v)
        rows.append({"variant": v.name, "v0": sh.v0, "v1": sh.v1, "regime": sh.regime,
                     "abserr0": sh.abserr[0], "abserr1": sh.abserr[1]})
    write_csv(out / "shares.csv", rows, ["variant", "v0", "v1", "regime", "abserr0", "abserr1"])
    return {"shares": rows}, 0


def cmd_sweep(cfg, out):
    spec = section(cfg, "sweep", {"param", "values"}, {"param": "mu", "values": [0.25, 0.5, 1.0, 2.0, 4.0]})
    param = spec["param"]
    if param not in cfg["signal"] and param not in ("mu", "sigma", "shape", "scale"):
        raise ConfigError("sweep.param", f"{param!r} is not a signal parameter")
    values = [float(v) for v in spec["values"]]
    if sorted(values) != values:
        raise ConfigError("sweep.values", "must be sorted ascending")
    electorate = build_electorate(cfg)
    res = informativeness_sweep(lambda v: build_model(cfg, **{param: v}), electorate, values,
                                axis_name=param, workers=default_workers())
    write_csv(out / "sweep.csv", res.rows())
    return {"pair_checks": res.pair_checks, "monotonicity_violations": len(res.monotonicity_violations)}, 0


def _index_family(cfg):
    return lambda r: build_model(cfg, mu=math.exp(r))


def cmd_regimes(cfg, out):
    spec = section(cfg, "regimes", {"bracket", "points"}, {"bracket": [-6.0, 6.0], "points": 49})
    bracket = tuple(float(v) for v in spec["bracket"])
    if len(bracket) != 2 or not bracket[0] < bracket[1]:
        raise ConfigError("regimes.bracket", "must be [lo, hi] with lo < hi")
    res = regime_sweep(_index_family(cfg), build_electorate(cfg), bracket, int(spec["points"]),
                       workers=default_workers())
    write_csv(out / "regimes.csv", res.rows())
    r1, r0 = res.thresholds
    return {"r_prime": r1, "r_double_prime": r0, "in_order": regimes_in_order(res.regimes),
            "terminal_regime": res.regimes[-1]}, 0


def cmd_polarize(cfg, out):
    spec = section(cfg, "polarize", {"scan", "points", "top"}, {"points": 100, "top": 0.99})
    scan = spec.get("scan") or list(np.linspace(0.0, float(spec["top"]), int(spec["points"])))
    model, base = build_model(cfg), build_electorate(cfg)
    r = find_polarization(base, model, scan)
    rows = []
    for t in scan:
        sh = vote_shares(model, polarize(base, float(t)))
        rows.append({"r": float(t), "v0": sh.v0, "v1": sh.v1, "regime": sh.regime})
    write_csv(out / "polarize.csv", rows, ["r", "v0", "v1", "regime"])
    result = {"r": r}
    if r is not None:
        target = polarize(base, r)
        sh = vote_shares(model, target)
        grid = np.linspace(-1.0, 2.0, 301)
        result.update(shares=sh.as_dict(), more_polarized=admits_greater_polarization(target, base, grid).holds)
    return result, 0


def cmd_distort(cfg, out):
    spec = section(cfg, "distort", {"base", "scan", "points", "top"}, {"points": 161, "top": 1e4})
    scan = spec.get("scan") or list(np.geomspace(1.0, float(spec["top"]), int(spec["points"])))
    base = distortion_from_config(spec["base"]) if "base" in spec else identity_distortion()
    model, electorate = build_model(cfg), build_electorate(cfg)
    r = find_conservatism(base, model, electorate, scan)
    rows = []
    for t in scan:
        sh = vote_shares(model, electorate, Distorted(scale_distortion(base, float(t))))
        rows.append({"r": float(t), "v0": sh.v0, "v1": sh.v1, "regime": sh.regime})
    write_csv(out / "distort.csv", rows, ["r", "v0", "v1", "regime"])
    result = {"r": r}
    if r is not None:
        sh = vote_shares(model, electorate, Distorted(scale_distortion(base, r)))
        grid = [s for s in np.linspace(-5.0, 5.0, 101) if s != 0.0]
        result.update(shares=sh.as_dict(), more_conservative=is_more_conservative(scale_distortion(base, r),
                                                                                   base, grid))
    return result, 0


def run_verify(cfg, workers=None):
    """The oracle suite as a deterministic, JSON-ready report."""
    spec = section(cfg, "verify",
                   {"seed", "n_voters", "variants", "dominance_types", "n_alternatives", "exhaustive_types",
                    "bins", "z_limit"},
                   {"seed": 20240601, "n_voters": 200_000, "variants": ["no_trolls", "optimal"],
                    "dominance_types": [0.3, 0.7], "n_alternatives": 10_000, "exhaustive_types": [0.3, 0.7],
                    "bins": 16, "z_limit": Z_LIMIT})
    model, electorate = build_model(cfg), build_electorate(cfg)
    z_limit = float(spec["z_limit"])
    sims = []
    for name in spec["variants"]:
        variant = build_variant({"variant": {"kind": name}} if name in ("no_trolls", "optimal") else cfg, model)
        for state in (0, 1):
            rep = simulate_election(model, electorate, SimConfig(int(spec["n_voters"]), int(spec["seed"]), state,
                                                                 variant), workers=workers)
            d = rep.as_dict()
            d["passed"] = d["z_score"] is None or abs(d["z_score"]) <= z_limit
            sims.append(d)
    dominance = []
    for x in spec["dominance_types"]:
        rep = dominance_test(model, float(x), optimal_strategy(model, float(x)), int(spec["n_alternatives"]),
                             seed=int(spec["seed"]))
        dominance.append(rep.as_dict())
    exhaustive = []
    for x in spec["exhaustive_types"]:
        rep = discretized_exhaustive(model, float(x), int(spec["bins"]))
        d = rep.as_dict()
        d["frontier_size"] = len(d.pop("frontier"))
        exhaustive.append(d)
    passed = (all(s["passed"] for s in sims) and all(d["passed"] for d in dominance)
              and all(e["within_bound"] for e in exhaustive))
    return {"config": {k: cfg[k] for k in ("signal", "electorate", "variant")}, "seed": int(spec["seed"]),
            "simulations": sims, "dominance": dominance, "exhaustive": exhaustive, "passed": passed}


def cmd_verify(cfg, out):
    report = run_verify(cfg, workers=default_workers())
    write_json(out / "verify_report.json", report)
    write_csv(out / "verify.csv", report["simulations"],
              ["variant", "state", "n_voters", "votes", "empirical_share", "std_error", "analytic_share",
               "z_score", "passed"])
    status = EXIT_OK if report["passed"] else EXIT_VERIFY
    if not report["passed"]:
        log.error("verification failed; see verify_report.json")
    return {"passed": report["passed"]}, status


def cmd_twosided(cfg, out):
    spec = section(cfg, "twosided", {"electorates"}, {})
    specs = spec.get("electorates") or [cfg["electorate"]]
    rows = []
    for i, e_spec in enumerate(specs):
        try:
            e = electorate_from_config(dict(e_spec))
        except ConfigError as exc:
            raise ConfigError(f"twosided.electorates[{i}].{exc.key.split('.', 1)[-1]}", exc.message) from None
        rows.append({"electorate": e.label, "H_half": float(e.cdf(0.5)), "regime": two_sided_outcome(e)})
    write_csv(out / "twosided.csv", rows, ["electorate", "H_half", "regime"])
    return {"outcomes": rows}, 0


COMMANDS = {
    "strategy": cmd_strategy,
    "shares": cmd_shares,
    "sweep": cmd_sweep,
    "regimes": cmd_regimes,
    "polarize": cmd_polarize,
    "distort": cmd_distort,
    "verify": cmd_verify,
    "twosided": cmd_twosided,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="trollfarm-eq", description="Troll-farm equilibrium engine.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", help="TOML experiment file")
    ap.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                    help="override a config value, e.g. --set signal.mu=2 (repeatable)")
    ap.add_argument("--out", default="out", help="output directory (default: ./out)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def run(command, config_path=None, overrides=(), out="out"):
    """Run one command; returns the exit status."""
    t0 = time.perf_counter()
    try:
        cfg = load_config(config_path, overrides)
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        result, status = COMMANDS[command](cfg, out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TrollFarmError, DomainError, ArithmeticError) as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    summary = {"command": command, "config": cfg, "version": version_string(),
               "wall_time_s": round(time.perf_counter() - t0, 6), "threads": default_workers(),
               "status": status, "result": result}
    write_json(out_dir / "summary.json", summary)
    return status


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return run(args.command, args.config, args.overrides, args.out)


if __name__ == "__main__":
    sys.exit(main())
