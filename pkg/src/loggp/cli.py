"""Command-line front end: ``loggp profile | evolve | sweep | verify``.

Exit codes: 0 success, 1 verification failure, 2 domain or usage error,
3 configuration error. Output files go to ``--out``, else to
``$LOGGP_OUTPUT_DIR``, else to the config's ``[output] dir``, else to the
working directory.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .energy import energy_report
from .errors import ConfigError, DomainError, LogGPError
from .evolution import EvolutionConfig, Nonlinearity, evolve, l2_distance, make_pair_box
from .galerkin import galerkin_evolve
from .grid import BC, Grid, GridFunction, read_csv, write_csv
from .profiles import black_soliton, gp_dark_soliton, stationary_residual, traveling_wave
from .scalars import Params, find_critical_points

EXIT_OK, EXIT_VERIFY, EXIT_DOMAIN, EXIT_CONFIG = 0, 1, 2, 3
ENV_OUTPUT = "LOGGP_OUTPUT_DIR"


def _out_dir(flag=None, configured=None) -> Path:
    raw = flag or os.environ.get(ENV_OUTPUT) or configured or "."
    path = Path(raw)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _dump_json(path, payload):
    with Path(path).open("w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


# --- profile ------------------------------------------------------------------

def cmd_profile(args):
    p = Params(args.lam, args.c)
    grid = Grid.centered(args.length, args.n)
    w = traveling_wave(p, grid, theta0=args.theta0)
    out = _out_dir(args.out)
    csv_path = write_csv(out / f"{args.stem}.csv", w)
    payload = {
        "lambda": p.lam,
        "c": p.c,
        "theta0": args.theta0,
        "grid": grid.as_dict(),
        "kind": "traveling_wave" if p.c else "black_soliton",
        "y0": w.y0,
        "residual": stationary_residual(w),
        "energy": energy_report(w.as_gridfunction(), p).as_dict(),
        "phase_winding": w.phase_winding,
        "csv": csv_path.name,
    }
    _dump_json(out / f"{args.stem}.json", payload)
    print(f"wrote {csv_path} and {out / (args.stem + '.json')}")
    return EXIT_OK


# --- evolve -------------------------------------------------------------------

SCHEMA = {
    "params": {"lambda": float, "c": float},
    "grid": {"bc": str, "length": float, "n": int, "x0": float},
    "initial": {"kind": str, "separation": float, "amplitude": float, "width": float,
                "path": str, "profile_length": float, "profile_n": int, "c": float},
    "evolution": {"scheme": str, "dt": float, "t_end": float, "eps": float,
                  "nonlinearity": str, "record_every": int, "m": int},
    "output": {"dir": str, "stem": str, "snapshots": bool},
}
REQUIRED = {"params": ["lambda"], "grid": ["length", "n"], "initial": ["kind"],
            "evolution": ["dt", "t_end"]}
KINDS = ("black_soliton", "traveling_wave", "gp_dark_soliton", "bump", "csv")


def load_run_config(path) -> dict:
    """Parse and type-check a run configuration; raises :class:`ConfigError`
    naming the offending key."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        with Path(path).open() as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    cfg = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        cfg[section] = {}
        for key, raw in parser.items(section):
            kind = SCHEMA[section].get(key)
            if kind is None:
                raise ConfigError(f"unknown key '{key}' in [{section}]")
            try:
                if kind is bool:
                    val = parser.getboolean(section, key)
                elif kind is int:
                    val = int(raw)
                else:
                    val = kind(raw)
            except ValueError:
                raise ConfigError(f"key '{key}' in [{section}]: cannot parse {raw!r}") from None
            if kind is float and not math.isfinite(val):
                raise ConfigError(f"key '{key}' in [{section}] must be finite")
            cfg[section][key] = val
    for section, keys in REQUIRED.items():
        for key in keys:
            if key not in cfg.get(section, {}):
                raise ConfigError(f"missing required key '{key}' in [{section}]")
    for section in SCHEMA:
        cfg.setdefault(section, {})
    _validate(cfg)
    return cfg


def _validate(cfg):
    def positive(section, key):
        if key in cfg[section] and not cfg[section][key] > 0:
            raise ConfigError(f"key '{key}' in [{section}] must be positive")

    positive("params", "lambda")
    for key in ("length", "n"):
        positive("grid", key)
    for key in ("dt", "t_end", "record_every", "m"):
        positive("evolution", key)
    for key in ("separation", "width", "profile_length", "profile_n"):
        positive("initial", key)
    if cfg["evolution"].get("eps", 0.0) < 0:
        raise ConfigError("key 'eps' in [evolution] must be nonnegative")
    checks = [
        ("grid", "bc", [b.value for b in BC]),
        ("initial", "kind", KINDS),
        ("evolution", "scheme", ["splitstep", "galerkin"]),
        ("evolution", "nonlinearity", [n.value for n in Nonlinearity]),
    ]
    for section, key, allowed in checks:
        if key in cfg[section] and cfg[section][key] not in allowed:
            raise ConfigError(f"key '{key}' in [{section}] must be one of {list(allowed)}")


def _build_grid(cfg, scheme):
    g = cfg["grid"]
    default_bc = "free" if scheme == "galerkin" else "periodic"
    bc = BC(g.get("bc", default_bc))
    length, n = g["length"], g["n"]
    if bc is BC.DIRICHLET_ODD:
        return Grid.half_line(length, n)
    if bc is BC.PERIODIC:
        return Grid.periodic(length, n, x0=g.get("x0"))
    if "x0" in g:
        return Grid(g["x0"], length / n, n, BC.FREE)
    return Grid.centered(length, n)


def _initial(cfg, grid, p):
    """Initial datum and, when one is known, the exact state at time ``t``."""
    ini = cfg["initial"]
    kind = ini["kind"]
    if kind == "bump":
        a, wdt = ini.get("amplitude", 0.5), ini.get("width", 1.0)
        return GridFunction.from_callable(grid, lambda x: 1.0 + a * np.exp(-(x / wdt) ** 2)), None
    if kind == "csv":
        if "path" not in ini:
            raise ConfigError("missing required key 'path' in [initial]")
        u = read_csv(ini["path"], bc=grid.bc)
        if u.grid.n != grid.n:
            raise ConfigError(f"key 'path' in [initial]: file has {u.grid.n} samples, grid has {grid.n}")
        return GridFunction(grid, u.values), None
    if kind == "black_soliton" and grid.bc is not BC.PERIODIC:
        w = black_soliton(p, grid)
        return w.as_gridfunction(), lambda t: w.phi
    # moving or periodized profiles are built on a fine free grid and glued
    plen = ini.get("profile_length", 3.0 * grid.length)
    pn = ini.get("profile_n", int(round(plen / grid.dx)) * 2)
    pgrid = Grid.centered(plen, pn)
    if kind == "gp_dark_soliton":
        w = gp_dark_soliton(ini.get("c", p.c), pgrid)
    elif kind == "traveling_wave":
        w = traveling_wave(p, pgrid)
    else:
        w = black_soliton(p, pgrid)
    c = w.p.c
    if grid.bc is not BC.PERIODIC:
        raise ConfigError(f"key 'kind' in [initial]: {kind} runs need bc = periodic")
    sep = ini.get("separation", 0.5 * grid.length)
    if abs(2 * sep - grid.length) > 1e-9 * grid.length:
        raise ConfigError("key 'separation' in [initial] must be half the box length")
    if "x0" in cfg["grid"] and abs(cfg["grid"]["x0"] + 0.5 * sep) > 1e-12 * sep:
        raise ConfigError("key 'x0' in [grid] must be -separation/2 for pair-box runs")
    u0 = make_pair_box(w, sep, dx=grid.dx)
    if u0.grid.n != grid.n:
        raise ConfigError("key 'n' in [grid] is inconsistent with the pair box")
    return u0, lambda t: make_pair_box(w, sep, shift=c * t, dx=grid.dx).values


def cmd_evolve(args):
    cfg = load_run_config(args.config)
    ev = cfg["evolution"]
    scheme = ev.get("scheme", "splitstep")
    lam = cfg["params"]["lambda"]
    c = cfg["params"].get("c", cfg["initial"].get("c", 0.0))
    p = Params(lam, c)
    nl = ev.get("nonlinearity")
    if nl is None:
        nl = "cubic_gp" if cfg["initial"]["kind"] == "gp_dark_soliton" else (
            "log_regularized" if ev.get("eps", 0.0) > 0 else "log")
    try:
        ecfg = EvolutionConfig(p, ev["dt"], ev["t_end"], eps=ev.get("eps", 0.0),
                               nonlinearity=nl, record_every=ev.get("record_every", 100))
    except ValueError as exc:
        raise ConfigError(f"[evolution]: {exc}") from None
    grid = _build_grid(cfg, scheme)
    u0, exact = _initial(cfg, grid, p)
    grid = u0.grid
    if scheme == "galerkin":
        if grid.bc is not BC.FREE:
            raise ConfigError("key 'bc' in [grid] must be free for scheme = galerkin")
        traj = galerkin_evolve(u0, ev.get("m", 32), ecfg)
    else:
        if grid.bc is BC.FREE:
            raise ConfigError("key 'bc' in [grid] must be periodic or dirichlet_odd for scheme = splitstep")
        traj = evolve(u0, ecfg)
    out_cfg = cfg["output"]
    out = _out_dir(args.out, out_cfg.get("dir"))
    stem = out_cfg.get("stem", "trajectory")
    payload = traj.as_dict()
    payload["scheme"] = scheme
    payload["initial"] = cfg["initial"]["kind"]
    payload["datum_deviation"] = l2_distance(traj.final, u0)
    if exact is not None:
        payload["reference_error"] = l2_distance(traj.final.values, exact(traj.times[-1]), grid)
    _dump_json(out / f"{stem}.json", payload)
    if out_cfg.get("snapshots") and traj.snapshots is not None:
        snap_dir = out / f"{stem}_snapshots"
        snap_dir.mkdir(exist_ok=True)
        for k, (t, snap) in enumerate(zip(traj.times, traj.snapshots)):
            write_csv(snap_dir / f"t{k:05d}.csv", GridFunction(grid, snap))
    print(f"wrote {out / (stem + '.json')} (energy drift {traj.energy_drift:.3e})")
    return EXIT_OK


# --- sweep --------------------------------------------------------------------

SWEEP_COLUMNS = ["c", "status", "y0", "y1", "y2", "min_modulus", "phase_winding", "total_loggp"]


def _sweep_row(job):
    lam, c, length, n = job
    p = Params(lam, c)
    row = {"c": c}
    if not p.subsonic:
        row["status"] = "threshold"
        return row
    w = traveling_wave(p, Grid.centered(length, n))
    e = energy_report(w.as_gridfunction(), p)
    if c == 0:
        row.update(status="black_soliton", y0=0.0)
    else:
        cp = find_critical_points(p, xtol=0)
        row.update(status="ok", y0=cp.y0, y1=cp.y1, y2=cp.y2)
    row.update(min_modulus=float(w.rho.min()), phase_winding=w.phase_winding,
               total_loggp=e.total_loggp)
    return row


def cmd_sweep(args):
    if args.steps < 1 or args.c_min > args.c_max or (args.steps == 1 and args.c_min != args.c_max):
        raise _Usage("empty or inconsistent c range (need steps >= 1 and c-min <= c-max; "
                     "steps = 1 needs c-min = c-max)")
    Params(args.lam)
    cs = np.linspace(args.c_min, args.c_max, args.steps)
    jobs = [(args.lam, float(c), args.length, args.n) for c in cs]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]
    out = _out_dir(args.out)
    path = out / f"{args.stem}.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([_cell(row.get(k)) for k in SWEEP_COLUMNS])
    print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


# --- verify -------------------------------------------------------------------

def cmd_verify(args):
    from .verify import run_suite  # noqa: PLC0415  (heavy import only when needed)

    report = run_suite(quick=args.quick, seed=args.seed, mutation=args.mutate, workers=args.workers)
    out = _out_dir(args.out)
    path = out / f"{args.stem}.json"
    _dump_json(path, report.as_dict())
    for c in report.checks:
        flag = "PASS" if c.passed else "FAIL"
        print(f"{flag} {c.name}: {c.metric:.3e} {c.comparison} {c.tolerance:.1e}")
    print(f"wrote {path}")
    if not report.passed:
        print("failed checks: " + ", ".join(report.failures), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# --- entry point --------------------------------------------------------------

class _Usage(Exception):
    pass


def build_parser():
    ap = argparse.ArgumentParser(prog="loggp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("profile", help="compute a traveling wave or the black soliton")
    pr.add_argument("--lambda", dest="lam", type=float, required=True)
    pr.add_argument("--c", type=float, required=True)
    pr.add_argument("--length", type=float, default=40.0)
    pr.add_argument("--n", type=int, default=4096)
    pr.add_argument("--theta0", type=float, default=0.0)
    pr.add_argument("--out")
    pr.add_argument("--stem", default="profile")
    pr.set_defaults(func=cmd_profile)

    ev = sub.add_parser("evolve", help="run an evolution described by a config file")
    ev.add_argument("config")
    ev.add_argument("--out")
    ev.set_defaults(func=cmd_evolve)

    sw = sub.add_parser("sweep", help="tabulate traveling waves over a range of speeds")
    sw.add_argument("--lambda", dest="lam", type=float, required=True)
    sw.add_argument("--c-min", type=float, required=True)
    sw.add_argument("--c-max", type=float, required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--length", type=float, default=40.0)
    sw.add_argument("--n", type=int, default=2048)
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--out")
    sw.add_argument("--stem", default="sweep")
    sw.set_defaults(func=cmd_sweep)

    vf = sub.add_parser("verify", help="run the verification suite")
    vf.add_argument("--quick", action="store_true")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--mutate", choices=["fc-sign"])
    vf.add_argument("--workers", type=int, default=1)
    vf.add_argument("--out")
    vf.add_argument("--stem", default="verification")
    vf.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, LogGPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
