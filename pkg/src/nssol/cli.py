"""Command-line interface: configuration parsing, runs, and data export.

Subcommands: describe, profile, scale, field, verify, blowup.  All read
a JSON configuration document (strict schema: unknown keys are rejected)
and write CSV or JSON payloads.  Exit codes: 0 success, 2 configuration
or validation failure, 3 runtime numeric failure; failures also emit a
machine-readable JSON record on stderr.

CSV payloads have a single header row, LF line endings, and numbers
printed with 17 significant digits so binary64 values round-trip.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import NssolError
from .fields import eval_grid
from .model import (
    FAMILY_TAGS,
    ModelParams,
    WithPressurePowerLaw,
    derived_s,
    theta_required,
    validate,
)
from .profiles import DEFAULT_Z_MAX, TabulatedProfile
from .residuals import Window, verify_window
from .scaling import NumericScaling, PowerLawScaling, vanishing_time
from .solutions import build_solution


class ConfigError(Exception):
    """Configuration document violates the schema."""


_FAMILY_KEYS = {
    "with_pressure_isothermal": ("A", "B", "C", "a0", "a1"),
    "with_pressure_polytropic": ("alpha", "a0", "a1"),
    "with_pressure_power_law": ("m", "n", "sigma", "alpha"),
    "pressureless_theta1": ("lam", "alpha", "a0", "a1"),
    "pressureless_theta_not1": ("lam", "alpha", "a0", "a1"),
}


def _require_keys(section, data, required, optional=()):
    if not isinstance(data, dict):
        raise ConfigError(f"section {section!r} must be an object")
    unknown = sorted(set(data) - set(required) - set(optional))
    if unknown:
        raise ConfigError(f"unknown key(s) in {section!r}: {', '.join(unknown)}")
    missing = sorted(set(required) - set(data))
    if missing:
        raise ConfigError(f"missing key(s) in {section!r}: {', '.join(missing)}")


def _number(section, data, key):
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{section}.{key} must be a number, got {v!r}")
    return float(v)


def _integer(section, data, key):
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{section}.{key} must be an integer, got {v!r}")
    return v


class RunConfig:
    """Validated run configuration; reserializes losslessly."""

    def __init__(self, raw):
        if not isinstance(raw, dict):
            raise ConfigError("configuration root must be a JSON object")
        unknown = sorted(set(raw) - {"model", "family", "grid", "verify",
                                     "output", "numerics"})
        if unknown:
            raise ConfigError(f"unknown top-level key(s): {', '.join(unknown)}")
        for key in ("model", "family"):
            if key not in raw:
                raise ConfigError(f"missing required section {key!r}")
        self._raw = raw

        fam = raw["family"]
        _require_keys("family", fam, ("kind",),
                      tuple(k for keys in _FAMILY_KEYS.values() for k in keys))
        kind = fam["kind"]
        if kind not in _FAMILY_KEYS:
            raise ConfigError(
                f"family.kind must be one of {sorted(_FAMILY_KEYS)}, got {kind!r}")
        _require_keys("family", fam, ("kind",) + _FAMILY_KEYS[kind])
        constants = {k: _number("family", fam, k) for k in _FAMILY_KEYS[kind]}
        self.family = FAMILY_TAGS[kind](**constants)

        model = raw["model"]
        _require_keys("model", model, ("N", "gamma", "theta"),
                      ("K", "kappa", "delta"))
        delta = (_integer("model", model, "delta") if "delta" in model
                 else self.family.delta)
        self.params = ModelParams(
            N=_integer("model", model, "N"),
            gamma=_number("model", model, "gamma"),
            theta=_number("model", model, "theta"),
            K=_number("model", model, "K") if "K" in model else 1.0,
            kappa=_number("model", model, "kappa") if "kappa" in model else 1.0,
            delta=delta,
        )

        self.grid = None
        if "grid" in raw:
            grid = raw["grid"]
            _require_keys("grid", grid,
                          ("t_min", "t_max", "n_t", "r_min", "r_max", "n_r"))
            self.grid = {
                "t_min": _number("grid", grid, "t_min"),
                "t_max": _number("grid", grid, "t_max"),
                "n_t": _integer("grid", grid, "n_t"),
                "r_min": _number("grid", grid, "r_min"),
                "r_max": _number("grid", grid, "r_max"),
                "n_r": _integer("grid", grid, "n_r"),
            }
            if self.grid["r_min"] <= 0.0:
                raise ConfigError("grid.r_min must be > 0")
            if not self.grid["t_min"] < self.grid["t_max"]:
                raise ConfigError("grid needs t_min < t_max")
            if not self.grid["r_min"] < self.grid["r_max"]:
                raise ConfigError("grid needs r_min < r_max")
            if self.grid["n_t"] < 1 or self.grid["n_r"] < 1:
                raise ConfigError("grid needs n_t >= 1 and n_r >= 1")

        self.verify = None
        if "verify" in raw:
            ver = raw["verify"]
            _require_keys("verify", ver, ("window", "resolutions"), ("lattice",))
            win = ver["window"]
            _require_keys("verify.window", win,
                          ("t_min", "t_max", "r_min", "r_max"))
            try:
                window = Window(
                    t_min=_number("verify.window", win, "t_min"),
                    t_max=_number("verify.window", win, "t_max"),
                    r_min=_number("verify.window", win, "r_min"),
                    r_max=_number("verify.window", win, "r_max"),
                )
            except ValueError as exc:
                raise ConfigError(f"verify.window: {exc}") from exc
            res = ver["resolutions"]
            if (not isinstance(res, list) or not res
                    or not all(isinstance(p, list) and len(p) == 2 for p in res)):
                raise ConfigError(
                    "verify.resolutions must be a non-empty list of [h_t, h_r] pairs")
            resolutions = []
            for pair in res:
                ht, hr = pair
                for v in (ht, hr):
                    if isinstance(v, bool) or not isinstance(v, (int, float)) or v <= 0:
                        raise ConfigError(f"bad resolution entry {pair!r}")
                resolutions.append((float(ht), float(hr)))
            lattice = ver.get("lattice", 33)
            if isinstance(lattice, bool) or not isinstance(lattice, int) or lattice < 2:
                raise ConfigError(f"verify.lattice must be an integer >= 2, got {lattice!r}")
            self.verify = {"window": window, "resolutions": resolutions,
                           "lattice": lattice}

        self.output_format = "csv"
        self.output_path = None
        if "output" in raw:
            out = raw["output"]
            _require_keys("output", out, (), ("format", "path"))
            if "format" in out:
                if out["format"] not in ("csv", "json"):
                    raise ConfigError(
                        f"output.format must be 'csv' or 'json', got {out['format']!r}")
                self.output_format = out["format"]
            if "path" in out:
                if not isinstance(out["path"], str):
                    raise ConfigError("output.path must be a string")
                self.output_path = out["path"]

        self.z_max = DEFAULT_Z_MAX
        if "numerics" in raw:
            num = raw["numerics"]
            _require_keys("numerics", num, (), ("z_max",))
            if "z_max" in num:
                self.z_max = _number("numerics", num, "z_max")
                if self.z_max <= 0.0:
                    raise ConfigError("numerics.z_max must be > 0")

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
        return cls(raw)

    def to_dict(self):
        """Reconstruct the configuration document (round-trip lossless)."""
        out = {}
        raw = self._raw
        out["model"] = {k: getattr(self.params, k) for k in
                        ("N", "gamma", "theta", "K", "kappa", "delta")
                        if k in raw["model"]}
        fam = {"kind": self.family.tag}
        for k in _FAMILY_KEYS[self.family.tag]:
            fam[k] = getattr(self.family, k)
        out["family"] = fam
        if self.grid is not None:
            out["grid"] = dict(self.grid)
        if self.verify is not None:
            w = self.verify["window"]
            out["verify"] = {
                "window": {"t_min": w.t_min, "t_max": w.t_max,
                           "r_min": w.r_min, "r_max": w.r_max},
                "resolutions": [[ht, hr] for ht, hr in self.verify["resolutions"]],
            }
            if "lattice" in raw["verify"]:
                out["verify"]["lattice"] = self.verify["lattice"]
        if "output" in raw:
            out["output"] = {}
            if "format" in raw["output"]:
                out["output"]["format"] = self.output_format
            if "path" in raw["output"]:
                out["output"]["path"] = self.output_path
        if "numerics" in raw:
            out["numerics"] = {"z_max": self.z_max} if "z_max" in raw["numerics"] else {}
        return out


def _threads_from_env():
    """Validated NSSOL_THREADS (0 = auto).  The evaluators are pure and
    order-independent, so any cap is honored; the current implementation
    evaluates sequentially."""
    raw = os.environ.get("NSSOL_THREADS")
    if raw is None:
        return 0
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"NSSOL_THREADS must be an integer >= 0, got {raw!r}")
    if n < 0:
        raise ConfigError(f"NSSOL_THREADS must be >= 0, got {n}")
    return n


def _fmt(x):
    return f"{float(x):.17g}"


def _write_payload(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
        return False
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return True


def _csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_doc(obj):
    return json.dumps(obj, indent=2) + "\n"


def _emit_summary(summary, quiet, wrote_file):
    if not quiet and wrote_file:
        print(json.dumps(summary))


def _build(config, t_end):
    return build_solution(config.params, config.family, t_end=t_end,
                          z_max=config.z_max)


def _require_grid(config):
    if config.grid is None:
        raise ConfigError("this command needs a 'grid' section in the config")
    return config.grid


def cmd_describe(config, out_path, fmt, quiet):
    outcome = validate(config.params, config.family)
    summary = {
        "family": config.family.tag,
        "ok": outcome.ok,
        "violations": list(outcome.violations),
        "model": {k: getattr(config.params, k) for k in
                  ("N", "gamma", "theta", "K", "kappa", "delta")},
    }
    if outcome.derived is not None:
        summary["s"] = outcome.derived.s
        summary["theta_required"] = outcome.derived.theta_required
    elif outcome.ok:
        summary["s"] = derived_s(config.params)
        summary["theta_required"] = theta_required(config.params)
    if outcome.ok and isinstance(config.family, WithPressurePowerLaw):
        if config.family.m < 0.0:
            t_star = -config.family.n / config.family.m
            summary["vanishing_time"] = t_star
            summary["vanishing_time_note"] = (
                "a(t) = sigma*(m*t+n)**s vanishes at the root of m*t+n, "
                "i.e. t* = -n/m (not -m/n)")
        else:
            summary["vanishing_time"] = None
    text = _json_doc(summary)
    wrote = _write_payload(text, out_path)
    if not quiet:
        if wrote:
            print(json.dumps({"ok": outcome.ok, "path": out_path}))
        for line in outcome.violations:
            print(f"violation: {line}", file=sys.stderr)
    if not outcome.ok:
        raise ConfigError("validation failed: " + "; ".join(outcome.violations))


def cmd_profile(config, out_path, fmt, quiet):
    grid = _require_grid(config)
    solution = _build(config, t_end=max(grid["t_max"], 1e-3))
    profile = solution.profile
    z_hi = grid["r_max"]
    if isinstance(profile, TabulatedProfile):
        z_hi = min(z_hi, profile.z_max)
    zs = np.linspace(0.0, z_hi, grid["n_r"])
    rows = []
    for z in zs:
        y, dy = profile.evaluate(z)
        rows.append((z, y, dy))
    if fmt == "json":
        text = _json_doc({"z": [r[0] for r in rows],
                          "y": [r[1] for r in rows],
                          "dy": [r[2] for r in rows]})
    else:
        text = _csv(("z", "y", "dy"), rows)
    wrote = _write_payload(text, out_path)
    _emit_summary({"ok": True, "points": len(rows), "path": out_path},
                  quiet, wrote)


def cmd_scale(config, out_path, fmt, quiet):
    grid = _require_grid(config)
    solution = _build(config, t_end=grid["t_max"])
    scaling = solution.scaling
    status = {"status": "completed", "vanishing_time": None}
    t_hi = grid["t_max"]
    if isinstance(scaling, NumericScaling):
        status["status"] = scaling.status
        status["vanishing_time"] = scaling.vanishing_time
        t_hi = min(t_hi, scaling.t_end)
    elif isinstance(scaling, PowerLawScaling):
        status["vanishing_time"] = scaling.vanishing_time
        if scaling.vanishing_time is not None:
            t_hi = min(t_hi, scaling.vanishing_time * (1.0 - 1e-9))
    ts = np.linspace(grid["t_min"], t_hi, grid["n_t"])
    rows = [(t, *scaling.pair(t)) for t in ts]
    if fmt == "json":
        text = _json_doc({"t": [r[0] for r in rows],
                          "a": [r[1] for r in rows],
                          "adot": [r[2] for r in rows],
                          "status": status})
    else:
        text = _csv(("t", "a", "adot"), rows)
    wrote = _write_payload(text, out_path)
    _emit_summary({"ok": True, **status, "path": out_path}, quiet, wrote)


def cmd_field(config, out_path, fmt, quiet):
    grid = _require_grid(config)
    solution = _build(config, t_end=grid["t_max"])
    ts = np.linspace(grid["t_min"], grid["t_max"], grid["n_t"])
    rs = np.linspace(grid["r_min"], grid["r_max"], grid["n_r"])
    fg = eval_grid(solution.profile, solution.scaling, config.params.N, ts, rs)
    rows = []
    for i, t in enumerate(fg.t_values):
        for j, r in enumerate(fg.r_values):
            rows.append((t, r, fg.rho[i, j], fg.u[i, j]))
    if fmt == "json":
        text = _json_doc({"t": [r[0] for r in rows], "r": [r[1] for r in rows],
                          "rho": [r[2] for r in rows], "u": [r[3] for r in rows]})
    else:
        text = _csv(("t", "r", "rho", "u"), rows)
    wrote = _write_payload(text, out_path)
    _emit_summary({"ok": True, "points": len(rows), "path": out_path},
                  quiet, wrote)


def cmd_verify(config, out_path, fmt, quiet):
    if config.verify is None:
        raise ConfigError("this command needs a 'verify' section in the config")
    window = config.verify["window"]
    resolutions = config.verify["resolutions"]
    max_h_t = max(ht for ht, _ in resolutions)
    solution = _build(config, t_end=window.t_max + 2.0 * max_h_t)
    report = verify_window(solution.field(), config.params, window,
                           resolutions, lattice=config.verify["lattice"])
    text = _json_doc(report.to_dict())
    wrote = _write_payload(text, out_path)
    _emit_summary({"ok": True, "mass_linf": report.mass_linf,
                   "mom_linf": report.mom_linf, "path": out_path},
                  quiet, wrote)


def cmd_blowup(config, out_path, fmt, quiet):
    t_end = config.grid["t_max"] if config.grid is not None else 10.0
    solution = _build(config, t_end=t_end)
    t_star = vanishing_time(solution.scaling)
    doc = {"vanishing_time": t_star}
    if isinstance(solution.scaling, NumericScaling):
        doc["status"] = solution.scaling.status
        doc["searched_until"] = solution.scaling.t_end
    text = _json_doc(doc)
    wrote = _write_payload(text, out_path)
    _emit_summary({"ok": True, **doc, "path": out_path}, quiet, wrote)


_COMMANDS = {
    "describe": cmd_describe,
    "profile": cmd_profile,
    "scale": cmd_scale,
    "field": cmd_field,
    "verify": cmd_verify,
    "blowup": cmd_blowup,
}


def _error_record(exc):
    return json.dumps({"error": type(exc).__name__, "message": str(exc)})


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="nssol",
        description=("Construct exact self-similar solutions of the radial "
                     "compressible Navier-Stokes system with density-dependent "
                     "viscosity and verify them by finite-difference residuals. "
                     "The NSSOL_THREADS environment variable caps internal "
                     "parallelism (0 = auto)."))
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("describe", "validate the configuration and summarize the family"),
            ("profile", "emit the density shape as CSV (z,y,dy)"),
            ("scale", "emit the scaling trajectory as CSV (t,a,adot)"),
            ("field", "emit the assembled fields as CSV (t,r,rho,u)"),
            ("verify", "run the finite-difference residual verifier"),
            ("blowup", "report the vanishing time of the scaling, if any")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON configuration path")
        p.add_argument("--out", default=None, help="output payload path")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="payload format (default: from config, else csv)")
        p.add_argument("--quiet", action="store_true",
                       help="suppress the stdout summary record")
    args = parser.parse_args(argv)

    try:
        _threads_from_env()
        config = RunConfig.from_file(args.config)
        out_path = args.out if args.out is not None else config.output_path
        fmt = args.format if args.format is not None else config.output_format
        _COMMANDS[args.command](config, out_path, fmt, args.quiet)
    except (ConfigError, ValueError) as exc:
        print(_error_record(exc), file=sys.stderr)
        return 2
    except NssolError as exc:
        print(_error_record(exc), file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
