"""Command-line front end: scenario files in, tables and reports out.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter-domain
error, 3 positivity (vacuum) violation, 4 time at or beyond wave breaking.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path

import numpy as np

from .burgers import PROFILE_KINDS, make_wave, riemann_shock
from .directions import DirectionSet, build_directions, gram_residual, max_wave_count, transverse_direction
from .errors import (
    ConvergenceError,
    DomainError,
    InfeasibleError,
    PositivityError,
    TimeDomainError,
)
from .export import write_snapshot_csv, write_snapshot_vtk
from .field import (
    VALID_MIN_S,
    ExactField,
    GridSpec,
    TransverseMode,
    assemble,
    sample_grid,
)
from .fv import init_from_exact, l1_error, pressure_contour_export, run_until
from .gas import make_gas
from .verify import (
    ResidualReport,
    decoupling_check,
    interior_points,
    jump_mismatch_demo,
    primitive_residual,
    stencil_valid_mask,
    symmetric_residual,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_POSITIVITY = 3
EXIT_TIME = 4

# scenario times may use at most this fraction of t_max; evaluation close to
# breaking is formally valid but numerically poorly conditioned
TIME_GUARD = 0.999

ORDER_LO, ORDER_HI = 1.7, 2.3


def _require_keys(obj, ctx: str, required: tuple, optional: tuple = ()) -> None:
    if not isinstance(obj, dict):
        raise DomainError(f"{ctx} must be a JSON object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise DomainError(f"unknown keys in {ctx}: {unknown}")
    missing = sorted(set(required) - set(obj))
    if missing:
        raise DomainError(f"missing keys in {ctx}: {missing}")


def profile_from_dict(obj, ctx: str):
    if not isinstance(obj, dict):
        raise DomainError(f"{ctx} must be a JSON object")
    kind = obj.get("kind")
    cls = PROFILE_KINDS.get(kind)
    if cls is None:
        raise DomainError(
            f"{ctx}: unknown profile kind {kind!r} (known: {sorted(PROFILE_KINDS)})"
        )
    flds = dataclasses.fields(cls)
    required = tuple(f.name for f in flds if f.default is dataclasses.MISSING)
    optional = tuple(f.name for f in flds if f.default is not dataclasses.MISSING)
    _require_keys(obj, ctx, ("kind",) + required, optional)
    return cls(**{f.name: float(obj[f.name]) for f in flds if f.name in obj})


@dataclasses.dataclass(frozen=True, eq=False)
class Scenario:
    gas: object
    dimension: int
    n_waves: int
    wave_profiles: tuple
    transverse: object
    grid: object
    times: tuple
    formats: tuple
    directory: str
    directions_override: object


def parse_scenario(source) -> Scenario:
    """Parse a scenario JSON document (path, or an already-loaded dict)."""
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            obj = json.load(fh)
    else:
        obj = source
    _require_keys(
        obj,
        "scenario",
        ("gas", "dimension", "n_waves", "waves"),
        ("transverse", "grid", "times", "output", "directions_override"),
    )
    gas_obj = obj["gas"]
    _require_keys(gas_obj, "gas", ("gamma",), ("k",))
    gas = make_gas(float(gas_obj["gamma"]), float(gas_obj.get("k", 1.0)))
    dimension = obj["dimension"]
    if dimension not in (2, 3):
        raise DomainError(f"dimension must be 2 or 3, got {dimension!r}")
    n_req = obj["n_waves"]
    if n_req == "max":
        n = max_wave_count(gas, dimension)
    elif isinstance(n_req, int) and not isinstance(n_req, bool) and n_req >= 1:
        n = n_req
    else:
        raise DomainError(f"n_waves must be a positive integer or 'max', got {n_req!r}")
    transverse = None
    if obj.get("transverse") is not None:
        tv_obj = obj["transverse"]
        _require_keys(tv_obj, "transverse", ("carrier", "profile"))
        carrier = tv_obj["carrier"]
        if not isinstance(carrier, int) or isinstance(carrier, bool):
            raise DomainError(f"transverse.carrier must be an integer, got {carrier!r}")
        transverse = TransverseMode(
            carrier=carrier,
            profile=profile_from_dict(tv_obj["profile"], "transverse.profile"),
        )
    waves_obj = obj["waves"]
    if not isinstance(waves_obj, list) or len(waves_obj) != n:
        raise DomainError(
            f"waves must list exactly n_waves={n} entries "
            "(null at the transverse carrier)"
        )
    profiles = []
    for i, w in enumerate(waves_obj):
        profiles.append(None if w is None else profile_from_dict(w, f"waves[{i}]"))
    grid = None
    if obj.get("grid") is not None:
        g_obj = obj["grid"]
        _require_keys(g_obj, "grid", ("lo", "hi", "resolution"))
        lo = tuple(float(v) for v in g_obj["lo"])
        hi = tuple(float(v) for v in g_obj["hi"])
        shape = tuple(int(v) for v in g_obj["resolution"])
        if len(lo) != dimension:
            raise DomainError(f"grid must be {dimension}-dimensional to match the scenario")
        grid = GridSpec(lo=lo, hi=hi, shape=shape)
    times = ()
    if obj.get("times") is not None:
        times = tuple(float(t) for t in obj["times"])
        for t in times:
            if not np.isfinite(t) or t < 0.0:
                raise DomainError(f"times must be finite and nonnegative, got {t}")
    formats, directory = ("csv",), "out"
    if obj.get("output") is not None:
        o_obj = obj["output"]
        _require_keys(o_obj, "output", (), ("formats", "directory"))
        if "formats" in o_obj:
            formats = tuple(o_obj["formats"])
            bad = sorted(set(formats) - {"csv", "vtk"})
            if bad or not formats:
                raise DomainError(f"output.formats must be a nonempty subset of ['csv', 'vtk']")
        directory = str(o_obj.get("directory", directory))
    override = None
    if obj.get("directions_override") is not None:
        override = np.asarray(obj["directions_override"], dtype=float)
        if override.shape != (n, dimension):
            raise DomainError(
                f"directions_override must have shape ({n}, {dimension}), "
                f"got {override.shape}"
            )
    return Scenario(
        gas=gas,
        dimension=dimension,
        n_waves=n,
        wave_profiles=tuple(profiles),
        transverse=transverse,
        grid=grid,
        times=times,
        formats=formats,
        directory=directory,
        directions_override=override,
    )


def build_scenario_field(sc: Scenario) -> ExactField:
    if sc.directions_override is not None:
        ds = DirectionSet(
            d=sc.dimension, n=sc.n_waves, vectors=sc.directions_override, a=sc.gas.a
        )
    else:
        ds = build_directions(sc.gas, sc.dimension, sc.n_waves)
    waves = tuple(None if p is None else make_wave(sc.gas, p) for p in sc.wave_profiles)
    return assemble(sc.gas, ds, waves, sc.transverse)


def _check_scenario_time(ef: ExactField, t: float) -> None:
    limit = TIME_GUARD * ef.t_max
    if t > limit:
        raise TimeDomainError(
            f"t={t} exceeds {TIME_GUARD} * t_max = {limit:.6g} "
            f"(wave {ef.limiting_wave_index()} breaks at t={ef.t_max:.6g})"
        )


def _out_dir(args, sc: Scenario = None) -> Path:
    if args.output_dir is not None:
        return Path(args.output_dir)
    return Path(sc.directory) if sc is not None else Path(".")


def _parse_float_list(text: str, flag: str):
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip() != ""]
    except ValueError as exc:
        raise DomainError(f"{flag} must be a comma-separated list of numbers") from exc
    if not vals:
        raise DomainError(f"{flag} must not be empty")
    return vals


def _parse_int_list(text: str, flag: str):
    vals = _parse_float_list(text, flag)
    out = []
    for v in vals:
        if v != int(v) or v < 4:
            raise DomainError(f"{flag} entries must be integers >= 4")
        out.append(int(v))
    return out


def _fit_order(hs, values) -> float:
    vals = np.maximum(np.asarray(values, dtype=float), 1e-300)
    return float(np.polyfit(np.log(np.asarray(hs)), np.log(vals), 1)[0])


def cmd_directions(args) -> int:
    gas = make_gas(args.gamma, args.k)
    if args.dim not in (2, 3):
        raise DomainError(f"--dim must be 2 or 3, got {args.dim}")
    n_max = max_wave_count(gas, args.dim)
    n = args.n if args.n is not None else n_max
    ds = build_directions(gas, args.dim, n)
    perp = transverse_direction(ds)
    print(f"gamma = {gas.gamma:.12g}  (a = {gas.a:.12g}, k = {gas.k:.12g})")
    print(f"d = {ds.d}, n = {ds.n} (max {n_max})")
    for j in range(ds.n):
        comps = "  ".join(f"{v: .15g}" for v in ds.vectors[j])
        print(f"v[{j}] = [ {comps} ]")
    print(f"gram residual = {gram_residual(ds):.3e}")
    print(f"|sum of vectors| = {float(np.linalg.norm(ds.vectors.sum(axis=0))):.3e}")
    if perp is None:
        print("transverse direction: none (the set spans R^d)")
    else:
        print("transverse direction: [ " + "  ".join(f"{v: .15g}" for v in perp) + " ]")
    if args.json:
        path = Path(args.json)
        if not path.is_absolute() and args.output_dir is not None:
            path = Path(args.output_dir) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = {
            "gamma": gas.gamma,
            "k": gas.k,
            "a": gas.a,
            "d": ds.d,
            "n": ds.n,
            "max_wave_count": n_max,
            "vectors": ds.vectors.tolist(),
            "gram_residual": gram_residual(ds),
            "transverse_direction": None if perp is None else perp.tolist(),
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(path)
    return EXIT_OK


def cmd_field(args) -> int:
    sc = parse_scenario(args.scenario)
    if sc.grid is None:
        raise DomainError("the scenario has no grid section to sample")
    if not sc.times:
        raise DomainError("the scenario has no times to sample")
    ef = build_scenario_field(sc)
    for t in sc.times:
        _check_scenario_time(ef, t)
    outdir = _out_dir(args, sc)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for i, t in enumerate(sc.times):
        snap = sample_grid(ef, sc.grid, t)
        if snap.invalid_count:
            print(
                f"error: {snap.invalid_count} of {snap.grid.n_points} grid points "
                f"violate positivity (S < {VALID_MIN_S}) at t={t}",
                file=sys.stderr,
            )
            return EXIT_POSITIVITY
        base = outdir / f"snapshot_{i:03d}"
        if "csv" in sc.formats:
            write_snapshot_csv(snap, base.with_suffix(".csv"))
            written.append(base.with_suffix(".csv"))
        if "vtk" in sc.formats:
            write_snapshot_vtk(snap, base.with_suffix(".vtk"), title=f"t={t:.12g}")
            written.append(base.with_suffix(".vtk"))
    for path in written:
        print(path)
    return EXIT_OK


def cmd_verify(args) -> int:
    sc = parse_scenario(args.scenario)
    if sc.grid is None:
        raise DomainError("the scenario needs a grid section to bound the sample box")
    ef = build_scenario_field(sc)
    if args.time is not None:
        t = float(args.time)
    elif sc.times:
        t = sc.times[0]
    else:
        raise DomainError("no verification time: give --time or scenario times")
    _check_scenario_time(ef, t)
    if args.points < 1:
        raise DomainError(f"--points must be a positive integer, got {args.points}")
    if args.h <= 0.0:
        raise DomainError(f"--h must be positive, got {args.h}")
    levels = [args.h, args.h / 2.0, args.h / 4.0]
    h_max = levels[0]
    if t - h_max < 0.0 or t + h_max >= ef.t_max:
        raise TimeDomainError(
            f"stencil [t-h, t+h] around t={t} with h={h_max} leaves [0, t_max)"
        )
    points = interior_points(
        sc.grid.lo, sc.grid.hi, args.points, seed=args.seed, margin=2.0 * h_max
    )
    keep = stencil_valid_mask(ef, points, t, 2.0 * h_max)
    points = points[keep]
    if points.shape[0] == 0:
        raise PositivityError("no sample point has a fully valid stencil neighborhood")
    reports = []
    for h in levels:
        prim = primitive_residual(ef, points, t, h)
        sym = symmetric_residual(ef, points, t, h)
        reports.append(
            ResidualReport(
                max_momentum_residual=prim.max_momentum_residual,
                max_continuity_residual=prim.max_continuity_residual,
                max_symmetric_residual=sym,
                h=h,
                points=prim.points,
            )
        )
    series = {
        "momentum": [r.max_momentum_residual for r in reports],
        "continuity": [r.max_continuity_residual for r in reports],
        "symmetric": [r.max_symmetric_residual for r in reports],
    }
    orders = {name: _fit_order(levels, vals) for name, vals in series.items()}
    decoupling = decoupling_check(ef.directions, ef.gas)
    failures = []
    for name, vals in series.items():
        if max(vals) < 1e-10:
            continue  # residual already at the noise floor; nothing to decay
        label = "symmetric" if name == "symmetric" else "primitive"
        if not (ORDER_LO <= orders[name] <= ORDER_HI and vals[-1] < vals[0]):
            failures.append(
                f"{label} residual not decaying: {name} order {orders[name]:.3g} "
                f"outside [{ORDER_LO}, {ORDER_HI}]"
            )
    if decoupling > 1e-10:
        failures.append(f"direction decoupling mismatch {decoupling:.3e} exceeds 1e-10")
    outdir = _out_dir(args, sc)
    outdir.mkdir(parents=True, exist_ok=True)
    report_path = outdir / args.report
    doc = {
        "gamma": ef.gas.gamma,
        "k": ef.gas.k,
        "dimension": sc.dimension,
        "n_waves": sc.n_waves,
        "time": t,
        "seed": args.seed,
        "points_requested": args.points,
        "points_used": int(points.shape[0]),
        "h_levels": levels,
        "reports": [r.to_dict() for r in reports],
        "orders": orders,
        "decoupling_mismatch": decoupling,
        "passed": not failures,
        "failures": failures,
    }
    with open(report_path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    for name in ("momentum", "continuity", "symmetric"):
        print(
            f"{name}: residuals "
            + " ".join(f"{v:.3e}" for v in series[name])
            + f"  order {orders[name]:.3f}"
        )
    print(f"decoupling mismatch = {decoupling:.3e}")
    print(report_path)
    if failures:
        for f in failures:
            print(f"verification FAILED: {f}", file=sys.stderr)
        return EXIT_VERIFY
    print("verification passed")
    return EXIT_OK


def cmd_fv(args) -> int:
    sc = parse_scenario(args.scenario)
    if sc.dimension != 2:
        raise DomainError("the finite-volume check is two-dimensional")
    if sc.grid is None:
        raise DomainError("the scenario needs a grid section for the domain bounds")
    ef = build_scenario_field(sc)
    grids = _parse_int_list(args.grids, "--grids")
    outdir = _out_dir(args, sc)
    outdir.mkdir(parents=True, exist_ok=True)
    if args.t_end is not None:
        t_end = float(args.t_end)
    elif np.isfinite(ef.t_max):
        t_end = 0.5 * ef.t_max
    else:
        raise DomainError("no breaking time to halve; give --t-end explicitly")
    if args.contours:
        levels = _parse_float_list(args.contours, "--contours")
        grid = GridSpec(lo=sc.grid.lo, hi=sc.grid.hi, shape=(grids[-1], grids[-1]))
        st = run_until(init_from_exact(ef, grid, cfl=args.cfl), t_end)
        path = outdir / "pressure_contours.csv"
        blocks = pressure_contour_export(st, levels, path)
        print(f"{len(blocks)} polylines at {len(levels)} levels -> {path}")
        return EXIT_OK
    _check_scenario_time(ef, t_end)
    rows = []
    prev = None
    for n in grids:
        grid = GridSpec(lo=sc.grid.lo, hi=sc.grid.hi, shape=(n, n))
        st0 = init_from_exact(ef, grid, cfl=args.cfl)
        mass0 = st0.mass()
        st = run_until(st0, t_end)
        err = l1_error(st, ef)
        drift = abs(st.mass() - mass0) / abs(mass0)
        row = {"cells": n, **err, "mass_drift": drift}
        if prev is not None and err["rho"] > 1e-12 and prev["cells"] < n:
            row["order_rho"] = math.log(prev["rho"] / err["rho"]) / math.log(n / prev["cells"])
        rows.append(row)
        prev = row
    print(f"t_end = {t_end:.12g}, cfl = {args.cfl}")
    print("cells  L1(rho)      L1(mom_x)    L1(mom_y)    mass_drift   order(rho)")
    for row in rows:
        order = f"{row['order_rho']:.3f}" if "order_rho" in row else "n/a"
        print(
            f"{row['cells']:5d}  {row['rho']:.5e}  {row['mom_x']:.5e}  "
            f"{row['mom_y']:.5e}  {row['mass_drift']:.3e}  {order}"
        )
    table_path = outdir / "fv_convergence.json"
    with open(table_path, "w") as fh:
        json.dump({"t_end": t_end, "cfl": args.cfl, "rows": rows}, fh, indent=2)
        fh.write("\n")
    print(table_path)
    return EXIT_OK


def cmd_jump_demo(args) -> int:
    gas = make_gas(args.gamma, args.k)
    f2_values = _parse_float_list(args.f2, "--f2")
    if len(f2_values) < 3:
        raise DomainError("need at least 3 f2 values to assess nonconstancy")
    f1_left, f1_right = float(args.f1_left), float(args.f1_right)
    if f1_left < f1_right:
        raise DomainError(
            f"f1-left must be >= f1-right for the shock orientation, "
            f"got {f1_left} < {f1_right}"
        )
    ds = build_directions(gas, 3, 3)
    if f1_left > f1_right:
        sigma = riemann_shock(gas.a, f1_left, f1_right)
    else:
        sigma = gas.speed_factor * f1_left  # zero-jump: characteristic speed
    mism = jump_mismatch_demo(gas, ds, (f1_left, f1_right, sigma), args.f3, f2_values)
    print(f"shock f1: {f1_left:.12g} -> {f1_right:.12g}, sigma = {sigma:.12g}")
    print("f2, mismatch")
    for f2, mval in zip(f2_values, mism):
        print(f"{f2:.12g}, {mval:.17g}")
    spread = float(mism.max() - mism.min())
    print(f"mismatch spread (max - min) = {spread:.17g}")
    if f1_left == f1_right:
        print("mismatch identically zero (degenerate zero-jump shock)", file=sys.stderr)
        return EXIT_VERIFY
    if spread <= 1e-6:
        print("mismatch did not vary with f2; demo is inconclusive", file=sys.stderr)
        return EXIT_VERIFY
    print("no single shock speed satisfies the jump relation for every f2")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulerwaves",
        description="Exact multidirectional plane-wave gas states and their checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("directions", help="build and print a canonical direction set")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="number of directions (default: max)")
    p.add_argument("--json", default=None, help="also write the set as JSON")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=cmd_directions)

    p = sub.add_parser("field", help="sample a scenario field onto its grid")
    p.add_argument("scenario")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("verify", help="finite-difference residual verification")
    p.add_argument("scenario")
    p.add_argument("--h", type=float, default=1e-2, help="largest stencil width")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time", type=float, default=None)
    p.add_argument("--report", default="verify_report.json")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fv", help="finite-volume cross-check / contour export")
    p.add_argument("scenario")
    p.add_argument("--grids", default="64,128,256")
    p.add_argument("--t-end", type=float, default=None)
    p.add_argument("--cfl", type=float, default=0.45)
    p.add_argument("--contours", default=None, help="levels; switches to contour export")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=cmd_fv)

    p = sub.add_parser("jump-demo", help="scalar jump relation mismatch table")
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--f1-left", type=float, default=2.0)
    p.add_argument("--f1-right", type=float, default=1.0)
    p.add_argument("--f3", type=float, default=1.0)
    p.add_argument("--f2", default="0.5,0.75,1.0,1.25,1.5")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=cmd_jump_demo)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (DomainError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PositivityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POSITIVITY
    except TimeDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TIME
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
