"""Command-line interface regenerating the figure and table data as CSV or JSON.

Exit codes: 0 success, 2 invalid flags, 3 numerical check failed, 4 IO error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import bloch, constraints, hamiltonians, propagator, spectral, su2sim
from .errors import NumericalAssertionError, OrthogonalSourceTarget, OrthoSearchError
from .linalg import hermitian_eigen, ket

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


class Scheme(str, Enum):
    FG = "FG"
    FENNER = "Fenner"
    ROLAND_CERF = "RolandCerf"


class Reason(str, Enum):
    INFINITE_SEARCH_TIME = "InfiniteSearchTime"
    EXCLUDED_BY_CONSTRUCTION = "ExcludedByConstruction"
    VANISHING_GAP = "VanishingGap"
    NONE = "None"


@dataclass(frozen=True)
class FailureDiagnosis:
    scheme: Scheme
    fails_on_orthogonal: bool
    reason: Reason

    def __post_init__(self):
        if (self.reason is Reason.NONE) == self.fails_on_orthogonal:
            raise ValueError("reason must be None exactly when the scheme does not fail")


@dataclass
class Table:
    """Tabular output: column names, rows and the parameters that produced them."""

    columns: list[str]
    rows: list[list]
    params: dict


def _fmt(v) -> str:
    if isinstance(v, Enum):
        return str(v.value)
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".16e")
    return str(v)


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    buf.write(f"# schema={SCHEMA}\n")
    for key, val in table.params.items():
        buf.write(f"# {key}={val}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, Enum):
        return v.value
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def render_json(table: Table) -> str:
    rows = [dict(zip(table.columns, r)) for r in table.rows]
    doc = {"schema": SCHEMA, "params": table.params, "rows": rows}
    return json.dumps(_jsonable(doc), indent=2, sort_keys=False) + "\n"


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise NumericalAssertionError(message)


def cmd_fig2(omega0: float = 1.0, nu0: float = 1.0, steps: int = 200) -> Table:
    """Eigenstate overlap probabilities of |0> and |1> over t in [0, pi/2]."""
    t = np.linspace(0.0, math.pi / 2.0, steps + 1)
    pa = spectral.overlap_probabilities(omega0, nu0, t, "A")
    pb = spectral.overlap_probabilities(omega0, nu0, t, "B")
    da = spectral.direct_overlap_probabilities(omega0, nu0, t, "A")
    db = spectral.direct_overlap_probabilities(omega0, nu0, t, "B")
    for p in (pa, pb):
        _require(np.max(np.abs(p[0] + p[1] - 1.0)) < 1e-12, "probabilities do not sum to one")
    dev = max(np.max(np.abs(np.subtract(pa, da))), np.max(np.abs(np.subtract(pb, db))))
    _require(dev < 1e-9, f"closed-form overlaps deviate from the eigensolve by {dev:.3e}")
    rows = [list(r) for r in zip(t, pa[0], pa[1], pb[0], pb[1])]
    return Table(
        ["t", "pA_plus", "pA_minus", "pB_plus", "pB_minus"],
        rows,
        {"omega0": omega0, "nu0": nu0, "steps": steps},
    )


def fig3_problem(case: str) -> hamiltonians.SearchProblem:
    if case == "orthogonal":
        return hamiltonians.SearchProblem(ket(0), ket(1))
    if case == "overlapping":
        return hamiltonians.SearchProblem(ket(0), np.array([1.0, 1.0]) / math.sqrt(2.0))
    raise ValueError(f"unknown case {case!r}")


def cmd_fig3(case: str = "orthogonal", grid: int = 101) -> Table:
    """Instantaneous levels and gap of the interpolating Hamiltonian over xi in [0, 1]."""
    sched = hamiltonians.rc_schedule(fig3_problem(case))
    xi = np.linspace(0.0, 1.0, grid)
    tr = spectral.track(sched, xi)
    gap = tr.gaps()
    rows = [list(r) for r in zip(xi, tr.levels[:, 0], tr.levels[:, 1], gap)]
    return Table(["xi", "E0", "E1", "gap"], rows, {"case": case, "grid": grid})


def loglog_slope(n, t) -> float:
    return float(np.polyfit(np.log(n), np.log(t), 1)[0])


def cmd_scaling(k_max: int = 20) -> Table:
    """FG and Fenner search times for N = 2^k with the fitted log-log slope of t_FG."""
    ns = 2.0 ** np.arange(1, k_max + 1)
    times = [propagator.characteristic_times(1.0 / math.sqrt(n)) for n in ns]
    t_fg = np.array([c.t_fg for c in times])
    t_fen = np.array([c.t_fenner for c in times])
    slope = loglog_slope(ns, t_fg)
    _require(abs(slope - 0.5) < 1e-9, f"log-log slope {slope!r} differs from 1/2")
    rows = [[int(n), a, b] for n, a, b in zip(ns, t_fg, t_fen)]
    return Table(["N", "t_fg", "t_fenner"], rows, {"k_max": k_max, "slope": slope})


def cmd_table1(scenario: str = "optimal_stationary") -> Table:
    """Path length and symmetry flags for the stationary and the nonstationary transport."""
    a, b = ket(0), ket(1)
    if scenario == "optimal_stationary":
        h = hamiltonians.build_opt(a, b, 1.0)
        traj = propagator.stationary_trajectory(h, a, math.pi / 2.0)
    elif scenario == "suboptimal_nonstationary":
        h = hamiltonians.build_uzdin(1.0, 1.0)
        traj = propagator.evolve_timedep(h, a, propagator.PropagationConfig(dt=1e-4))
    else:
        raise ValueError(f"unknown scenario {scenario!r}")
    _require(abs(np.vdot(b, traj.final)) ** 2 > 1.0 - 1e-6, "transport did not reach |1>")
    s = bloch.fs_path_length(traj)
    disp_const = bool(np.ptp(traj.dispersions) < 1e-9)
    report = spectral.bloch_symmetry_report(traj, h)
    if isinstance(h, hamiltonians.StationaryHamiltonian):
        eig = hermitian_eigen(h.matrix)
        probs = np.array([[abs(eig.vector(j)[0]) ** 2 for j in (1, 0)]] * len(traj.times))
    else:
        probs = np.column_stack(spectral.overlap_probabilities(1.0, 1.0, traj.times, "A"))
    amplitude_half = bool(np.max(np.abs(probs - 0.5)) < 1e-10)
    dots = np.concatenate([report.a_dot_e_plus, report.a_dot_e_minus])
    dots_zero = bool(np.max(np.abs(dots)) < 1e-10)
    row = [scenario, s, disp_const, amplitude_half, dots_zero]
    return Table(
        ["scenario", "path_length", "dispersion_constant", "amplitude_half", "bloch_dots_zero"],
        [row],
        {"scenario": scenario},
    )


def diagnose_failures() -> list[FailureDiagnosis]:
    """Run each search scheme on an orthogonal source/target pair."""
    s, w = ket(0), ket(1)
    out = []

    p = hamiltonians.SearchProblem(s, w)
    ceiling = float(np.max(propagator.prob_fg(p.x, p.E, np.linspace(0.0, 100.0, 1001))))
    try:
        propagator.characteristic_times(p.x)
        infinite = False
    except OrthoSearchError:
        infinite = True
    fg_fails = ceiling < 1e-12 and infinite
    out.append(FailureDiagnosis(Scheme.FG, fg_fails, Reason.INFINITE_SEARCH_TIME if fg_fails else Reason.NONE))

    try:
        hamiltonians.build_fenner(p)
        excluded = False
    except OrthogonalSourceTarget:
        excluded = True
    out.append(
        FailureDiagnosis(Scheme.FENNER, excluded, Reason.EXCLUDED_BY_CONSTRUCTION if excluded else Reason.NONE)
    )

    gap = spectral.min_gap(spectral.track(hamiltonians.rc_schedule(p), np.linspace(0.0, 1.0, 1001)))
    out.append(
        FailureDiagnosis(Scheme.ROLAND_CERF, gap.crossing, Reason.VANISHING_GAP if gap.crossing else Reason.NONE)
    )
    return out


def cmd_table2() -> Table:
    rows = [[d.scheme, d.fails_on_orthogonal, d.reason] for d in diagnose_failures()]
    return Table(["scheme", "fails_on_orthogonal", "reason"], rows, {})


def cmd_coupling_fix(gammas=(0.05, 0.1, 0.25), grid: int = 1001) -> Table:
    """Minimum gap of the coupled schedule for each coupling strength."""
    rows = []
    for g in gammas:
        if g < 0:
            raise ValueError("gamma must be non-negative")
        rep = spectral.min_gap(spectral.track(hamiltonians.coupled_schedule(g), np.linspace(0.0, 1.0, grid)))
        rows.append([float(g), rep.g_min, rep.arg_min])
    return Table(["gamma", "g_min", "arg_min"], rows, {"grid": grid})


def cmd_constraint_scan(grid: int = 1801) -> Table:
    rep = constraints.verify_unique_feasibility(grid)
    _require(rep.passed, "orthogonality is reachable away from epsilon = 0")
    rows = [[e, m, bool(m < constraints.ORTHOGONALITY_THRESHOLD)] for e, m in zip(rep.epsilons, rep.min_overlaps)]
    return Table(
        ["epsilon", "min_overlap", "feasible"],
        rows,
        {"grid": grid, "feasible_epsilons": rep.feasible_epsilons.tolist()},
    )


def cmd_grover_check(sizes=(2, 4, 64, 1024)) -> Table:
    rows = []
    for n in sizes:
        d = su2sim.grover_equivalence(n)
        _require(d < 1e-12, f"simulation step differs from the Grover iterate for N={n}")
        rows.append([int(n), d])
    return Table(["N", "distance"], rows, {})


def _positive_int(minimum: int):
    def parse(text: str) -> int:
        v = int(text)
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}")
        return v

    return parse


def _non_negative(text: str) -> float:
    v = float(text)
    if not v >= 0.0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthosearch", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--seed", type=int, default=None, help="recorded in the output parameters")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig2", parents=[common], help="eigenstate overlap probabilities")
    p.add_argument("--omega0", type=_positive, default=1.0)
    p.add_argument("--nu0", type=float, default=1.0)
    p.add_argument("--steps", type=_positive_int(2), default=200)

    p = sub.add_parser("fig3", parents=[common], help="levels and gap of the interpolating Hamiltonian")
    p.add_argument("--case", choices=["orthogonal", "overlapping"], default="orthogonal")
    p.add_argument("--grid", type=_positive_int(2), default=101)

    p = sub.add_parser("scaling", parents=[common], help="search time against problem size")
    p.add_argument("--k-max", type=_positive_int(2), default=20)

    p = sub.add_parser("table1", parents=[common], help="stationary against nonstationary transport")
    p.add_argument(
        "--scenario", choices=["optimal_stationary", "suboptimal_nonstationary"], default="optimal_stationary"
    )

    sub.add_parser("table2", parents=[common], help="why each search scheme fails on orthogonal states")

    p = sub.add_parser("coupling-fix", parents=[common], help="minimum gap with a transverse coupling")
    p.add_argument("--gamma", type=_non_negative, nargs="+", default=[0.05, 0.1, 0.25])
    p.add_argument("--grid", type=_positive_int(2), default=1001)

    p = sub.add_parser("constraint-scan", parents=[common], help="epsilon scan of the energy constraints")
    p.add_argument("--grid", type=_positive_int(101), default=1801)

    p = sub.add_parser("grover-check", parents=[common], help="simulation step against the Grover iterate")
    p.add_argument("--n", type=_positive_int(2), nargs="+", default=[2, 4, 64, 1024])
    return parser


DEFAULT_FORMAT = {"scaling": "json", "table1": "json", "table2": "json"}


def run(args: argparse.Namespace) -> Table:
    c = args.command
    if c == "fig2":
        return cmd_fig2(args.omega0, args.nu0, args.steps)
    if c == "fig3":
        return cmd_fig3(args.case, args.grid)
    if c == "scaling":
        if args.k_max > 30:
            raise argparse.ArgumentTypeError("--k-max must be at most 30")
        return cmd_scaling(args.k_max)
    if c == "table1":
        return cmd_table1(args.scenario)
    if c == "table2":
        return cmd_table2()
    if c == "coupling-fix":
        return cmd_coupling_fix(args.gamma, args.grid)
    if c == "constraint-scan":
        return cmd_constraint_scan(args.grid)
    if c == "grover-check":
        return cmd_grover_check(args.n)
    raise ValueError(c)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        table = run(args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"orthosearch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalAssertionError as exc:
        print(f"orthosearch: numerical check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.seed is not None:
        table.params["seed"] = args.seed
    fmt = args.format or DEFAULT_FORMAT.get(args.command, "csv")
    text = render_csv(table) if fmt == "csv" else render_json(table)
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"orthosearch: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


__all__ = ["FailureDiagnosis", "Reason", "Scheme", "Table", "build_parser", "main"]
