"""Experiment configuration: TOML file plus ``--set key=value`` overrides.

Layout::

    [signal]      family = "gaussian", mu, sigma           (or "gennorm": mu, shape, scale)
    [electorate]  family = "normal", mean, sd, polarize?   (or "logistic": mean, scale)
    [variant]     kind = "no_trolls" | "optimal" | "constrained" | "distorted" | "naive"
                  constrained: cap | cap_relative | cap_table = {x = [...], cap = [...]}
                  distorted:   distortion = "identity" | "power" | "scale", power, r, base
                  naive:       phi
    [strategy] [sweep] [regimes] [polarize] [distort] [verify] [twosided]
                  per-command parameters, see the README
"""

import copy
import math

import numpy as np
import tomli

from .electorate import distortion_from_config, electorate_from_config
from .errors import ConfigError, DomainError
from .outcomes import Capped, Distorted, Naive, NoTrolls, OptimalTrolls
from .signals import signal_model_from_config
from .strategy import constant_cap, relative_cap, table_cap

SECTIONS = ("signal", "electorate", "variant", "strategy", "sweep", "regimes", "polarize", "distort",
            "verify", "twosided")
VARIANT_KINDS = ("no_trolls", "optimal", "constrained", "distorted", "naive")

DEFAULTS = {
    "signal": {"family": "gaussian", "mu": 1.0, "sigma": 1.0},
    "electorate": {"family": "normal", "mean": 0.55, "sd": 0.2},
    "variant": {"kind": "optimal"},
}


def parse_value(text):
    """TOML scalar/array/table literal, or the raw string if it is not one."""
    try:
        return tomli.loads(f"v = {text}")["v"]
    except tomli.TOMLDecodeError:
        return text


def apply_override(cfg, assignment):
    """Set ``a.b.c=value`` in place."""
    if "=" not in assignment:
        raise ConfigError(assignment, "override must look like key=value")
    key, _, raw = assignment.partition("=")
    path = [p.strip() for p in key.strip().split(".")]
    if not all(path):
        raise ConfigError(key, "empty key component")
    if path[0] not in SECTIONS:
        raise ConfigError(key, f"unknown section {path[0]!r}; expected one of {list(SECTIONS)}")
    node = cfg
    for i, part in enumerate(path[:-1]):
        nxt = node.setdefault(part, {})
        if not isinstance(nxt, dict):
            raise ConfigError(".".join(path[:i + 1]), "is a value, not a table")
        node = nxt
    node[path[-1]] = parse_value(raw.strip())


def load_config(path=None, overrides=()):
    """Read the TOML file (if any) over the defaults, then apply overrides in order."""
    cfg = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                cfg = tomli.load(fh)
        except FileNotFoundError:
            raise ConfigError("--config", f"file not found: {path}") from None
        except tomli.TOMLDecodeError as exc:
            raise ConfigError("--config", f"invalid TOML: {exc}") from None
    for key in cfg:
        if key not in SECTIONS:
            raise ConfigError(key, f"unknown section; expected one of {list(SECTIONS)}")
    merged = copy.deepcopy(DEFAULTS)
    for key, value in cfg.items():
        if key in merged and isinstance(value, dict) and "family" not in value and key != "variant":
            merged[key].update(value)
        else:
            merged[key] = value
    for item in overrides:
        apply_override(merged, item)
    return merged


def section(cfg, name, allowed, defaults=None):
    """Command section with defaults; unknown keys are rejected by name."""
    raw = cfg.get(name, {})
    if not isinstance(raw, dict):
        raise ConfigError(name, "must be a table")
    extra = sorted(set(raw) - set(allowed))
    if extra:
        raise ConfigError(f"{name}.{extra[0]}", f"unknown key; expected one of {sorted(allowed)}")
    out = dict(defaults or {})
    out.update(raw)
    return out


def build_model(cfg, **replace):
    spec = dict(cfg["signal"])
    spec.update(replace)
    return signal_model_from_config(spec)


def build_electorate(cfg):
    return electorate_from_config(dict(cfg["electorate"]))


def _number(spec, key, where):
    try:
        return float(spec[key])
    except KeyError:
        raise ConfigError(f"{where}.{key}", "missing") from None
    except (TypeError, ValueError):
        raise ConfigError(f"{where}.{key}", f"not a number: {spec[key]!r}") from None


def build_variant(cfg, model=None):
    """Variant record from ``[variant]``; relative caps need the signal model."""
    spec = dict(cfg.get("variant", {}))
    kind = spec.pop("kind", "optimal")
    if kind not in VARIANT_KINDS:
        raise ConfigError("variant.kind", f"unknown variant {kind!r}; expected one of {list(VARIANT_KINDS)}")
    try:
        if kind == "no_trolls":
            _no_extra(spec, set())
            return NoTrolls()
        if kind == "optimal":
            _no_extra(spec, set())
            return OptimalTrolls()
        if kind == "naive":
            _no_extra(spec, {"phi"})
            phi = _number(spec, "phi", "variant")
            if not 0.0 <= phi <= 1.0:
                raise ConfigError("variant.phi", f"{phi} outside [0, 1]")
            return Naive(phi)
        if kind == "distorted":
            _no_extra(spec, {"distortion", "power", "r", "base"})
            return Distorted(distortion_from_config(spec))
        _no_extra(spec, {"cap", "cap_relative", "cap_table"})
        given = [k for k in ("cap", "cap_relative", "cap_table") if k in spec]
        if len(given) != 1:
            raise ConfigError("variant.cap", "give exactly one of cap, cap_relative, cap_table")
        if given[0] == "cap":
            return Capped(constant_cap(_number(spec, "cap", "variant")))
        if given[0] == "cap_relative":
            if model is None:
                model = build_model(cfg)
            return Capped(relative_cap(model, _number(spec, "cap_relative", "variant")))
        table = spec["cap_table"]
        if not isinstance(table, dict) or set(table) != {"x", "cap"}:
            raise ConfigError("variant.cap_table", "must be a table with arrays x and cap")
        return Capped(table_cap(table["x"], table["cap"]))
    except DomainError as exc:
        raise ConfigError(f"variant.{kind}", str(exc)) from exc


def _no_extra(spec, allowed):
    extra = sorted(set(spec) - allowed)
    if extra:
        raise ConfigError(f"variant.{extra[0]}", "not a parameter of this variant")


def type_grid(spec, where):
    """``types = [...]`` or ``start``/``stop``/``step`` (inclusive)."""
    if "types" in spec:
        xs = [float(v) for v in spec["types"]]
    else:
        start, stop, step = (_number(spec, k, where) for k in ("start", "stop", "step"))
        if not step > 0:
            raise ConfigError(f"{where}.step", "must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        xs = [float(v) for v in np.round(start + step * np.arange(n), 12)]
    if not xs:
        raise ConfigError(f"{where}.types", "empty type grid")
    return xs
