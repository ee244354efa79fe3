"""Command-line entry point.

Exit codes: 0 success, 1 check failure, 2 domain error, 64 usage error.
``AC_LAB_THREADS`` caps the worker count of parameter-grid commands; results
are assembled in input order so identical configurations produce
byte-identical files.
"""

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import serialize
from .catalog import build_catalog, classify_orbit
from .errors import AclabError, DomainError, ResolutionError, SymmetryError
from .evolution import EvolveParams, evolve, initial_spectrum, terminal_comparison
from .ground_state import build_ground_state, energy_identities, kink_profile
from .spectral import TorusGrid
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_DOMAIN_ERROR = 2
EXIT_USAGE = 64

FILTER_NAMES = {"none": "none", "odd": "odd_projection", "bandgap": "odd_band_gap"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: dict
    output_dir: Path
    seed: int


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _max_workers():
    raw = os.environ.get("AC_LAB_THREADS", "").strip()
    if raw:
        return max(1, int(raw))
    return min(8, os.cpu_count() or 1)


def _parse_kappa_grid(text):
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"domain error: grid spec {text!r} is not start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0.0 or stop < start:
            raise DomainError(f"domain error: bad grid spec {text!r}")
        count = int(round((stop - start) / step)) + 1
        return [start + i * step for i in range(count)]
    return [float(p) for p in text.split(",") if p.strip()]


def _parse_coeffs(text):
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        m, _, val = item.partition(":")
        out[int(m)] = float(val)
    if not out:
        raise DomainError(f"domain error: empty coefficient list {text!r}")
    return out


def cmd_ground_state(cfg):
    kappa = cfg.parameters["kappa"]
    grid = TorusGrid(cfg.parameters["n_points"])
    gs = build_ground_state(kappa, grid)
    report = energy_identities(gs)
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    tag = repr(float(kappa))
    serialize.write_json(out / f"ground_state_kappa_{tag}.json", serialize.ground_state_record(gs))
    kink = kink_profile(kappa, gs.quarter_x)
    serialize.write_csv(
        out / f"ground_state_profile_kappa_{tag}.csv",
        ("x", "u", "kink"),
        zip(gs.quarter_x, gs.quarter_u, kink),
    )
    print(f"kappa            = {serialize.fmt(kappa)}")
    print(f"peak value N     = {serialize.fmt(gs.peak.N)}")
    print(f"energy           = {serialize.fmt(gs.energy)}  (pi/2 = {serialize.fmt(math.pi / 2)})")
    print(f"pde residual     = {serialize.fmt(gs.residual)}")
    print(f"identity spread  = {serialize.fmt(report.max_discrepancy)}")
    return EXIT_OK


def cmd_energy_table(cfg):
    kappas = cfg.parameters["kappa_grid"]
    n_points = cfg.parameters["n_points"]
    grid = TorusGrid(n_points)
    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        states = list(pool.map(lambda k: build_ground_state(k, grid), kappas))
    rows = [(gs.kappa, gs.peak.N, gs.energy, gs.energy / gs.kappa) for gs in states]
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.output_dir / "energy_table.csv"
    serialize.write_csv(path, ("kappa", "N", "energy", "energy_over_kappa"), rows)
    print(f"wrote {path} ({len(rows)} rows)")
    limit = 4.0 * math.sqrt(2.0) / 3.0
    print(f"energy/kappa at smallest kappa: {serialize.fmt(rows[0][3])} "
          f"(small-diffusion limit {serialize.fmt(limit)})")
    energies = [r[2] for r in rows]
    if any(b <= a for a, b in zip(energies, energies[1:])):
        print("FAIL: ground energies are not strictly increasing", file=sys.stderr)
        return EXIT_CHECK_FAILURE
    print("ground energies strictly increasing across the grid")
    return EXIT_OK


def cmd_catalog(cfg):
    kappa = cfg.parameters["kappa"]
    grid = TorusGrid(cfg.parameters["n_points"])
    cat = build_catalog(kappa, grid)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.output_dir / f"catalog_kappa_{float(kappa)!r}.json"
    serialize.write_json(path, serialize.catalog_record(cat))
    print(f"kappa = {serialize.fmt(kappa)}: {cat.m} steady state(s)")
    print(f"{'j':>3} {'energy':>22} {'period':>22}")
    for r in cat.replicas:
        print(f"{r.j:>3} {serialize.fmt(r.energy):>22} {serialize.fmt(r.period):>22}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_classify(cfg):
    oc = classify_orbit(cfg.parameters["u0"], cfg.parameters["v0"], cfg.parameters["kappa"])
    print(serialize.dumps(serialize.orbit_record(oc)), end="")
    return EXIT_OK


def cmd_evolve(cfg):
    p = cfg.parameters
    params = EvolveParams(
        kappa=p["kappa"],
        gamma=p["gamma"],
        dt=p["dt"],
        t_end=p["t_end"],
        n_points=p["n_points"],
        filter=FILTER_NAMES[p["filter"]],
        record_every=p["record_every"],
    )
    if p["coeffs"] is not None:
        u0 = initial_spectrum(_parse_coeffs(p["coeffs"]), params.max_mode)
        label = "coeffs"
    else:
        u0 = initial_spectrum(p["preset"], params.max_mode)
        label = p["preset"]
    traj = evolve(u0, params)
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"trajectory_{label}_kappa_{float(params.kappa)!r}.csv"
    serialize.write_csv(csv_path, serialize.TRAJECTORY_HEADER, serialize.trajectory_rows(traj))
    summary = {
        "kappa": params.kappa,
        "gamma": params.gamma,
        "dt": params.dt,
        "t_end": params.t_end,
        "n_points": params.n_points,
        "filter": params.filter,
        "preset": label,
        "terminal": traj.terminal,
        "t_last": float(traj.times[-1]),
        "final_mass": float(traj.diagnostics.mass[-1]),
        "final_energy": float(traj.diagnostics.energy[-1]),
    }
    if p["compare_steady"] and 0.0 < params.kappa < 1.0:
        gs = build_ground_state(params.kappa, TorusGrid(2048))
        sign, err = terminal_comparison(traj, gs.field)
        summary["steady_match"] = f"{'+' if sign > 0 else '-'}u_kappa"
        summary["steady_max_error"] = err
        print(f"converged: {summary['steady_match']} (max error {err:.3e})")
    if p["dump_snapshots"]:
        snap_path = out / f"snapshots_{label}_kappa_{float(params.kappa)!r}.json"
        serialize.write_json(
            snap_path,
            {
                "times": traj.times,
                "coeffs": [s.coeffs for s in traj.snapshots],
            },
        )
        print(f"wrote {snap_path}")
    json_path = out / f"diagnostics_{label}_kappa_{float(params.kappa)!r}.json"
    serialize.write_json(json_path, summary)
    print(f"terminal: {traj.terminal} at t = {serialize.fmt(traj.times[-1])}")
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    return EXIT_OK


def cmd_verify(cfg):
    suite = cfg.parameters["suite"]
    results = run_suite(suite, seed=cfg.seed)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.output_dir / f"verify_{suite}.json"
    serialize.write_json(path, [serialize.check_record(r) for r in results])
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.observed}")
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed; wrote {path}")
    return EXIT_OK if n_fail == 0 else EXIT_CHECK_FAILURE


def build_parser():
    parser = _Parser(prog="aclab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
        p.add_argument("--seed", type=int, default=20240817, help="seed for randomized checks")

    p = sub.add_parser("ground-state", help="construct one steady profile")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--n-points", type=int, default=2048)
    common(p)

    p = sub.add_parser("energy-table", help="ground energies over a kappa grid")
    p.add_argument("--kappa-grid", type=str, default="0.05:0.95:0.05",
                   help="start:stop:step or comma-separated values")
    p.add_argument("--n-points", type=int, default=2048)
    common(p)

    p = sub.add_parser("catalog", help="all steady states at one kappa")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--n-points", type=int, default=2048)
    common(p)

    p = sub.add_parser("classify", help="classify a steady-ODE orbit by its invariant")
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--v0", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    common(p)

    p = sub.add_parser("evolve", help="run the pseudo-spectral evolution")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--t-end", type=float, default=10.0)
    p.add_argument("--n-points", type=int, default=256)
    p.add_argument("--filter", choices=sorted(FILTER_NAMES), default="none")
    p.add_argument("--preset", choices=("sin_x", "half_sin_x", "sin_2x", "mixed"),
                   default="sin_x")
    p.add_argument("--coeffs", type=str, default=None, help='initial data as "m:c,m:c,..."')
    p.add_argument("--record-every", type=int, default=10)
    p.add_argument("--compare-steady", action="store_true",
                   help="compare the terminal state against the steady profile")
    p.add_argument("--dump-snapshots", action="store_true",
                   help="also write the recorded spectra as JSON arrays")
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    common(p)

    return parser


_HANDLERS = {
    "ground-state": (cmd_ground_state, ("kappa", "n_points")),
    "energy-table": (cmd_energy_table, ("kappa_grid", "n_points")),
    "catalog": (cmd_catalog, ("kappa", "n_points")),
    "classify": (cmd_classify, ("u0", "v0", "kappa")),
    "evolve": (
        cmd_evolve,
        ("kappa", "gamma", "dt", "t_end", "n_points", "filter", "preset",
         "coeffs", "record_every", "compare_steady", "dump_snapshots"),
    ),
    "verify": (cmd_verify, ("suite",)),
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler, keys = _HANDLERS[args.command]
    try:
        params = {k: getattr(args, k) for k in keys}
        if args.command == "energy-table":
            params["kappa_grid"] = _parse_kappa_grid(args.kappa_grid)
        cfg = RunConfig(
            command=args.command, parameters=params, output_dir=args.out, seed=args.seed
        )
        return handler(cfg)
    except (DomainError, ResolutionError, SymmetryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except AclabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
