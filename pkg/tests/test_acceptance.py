"""Acceptance criteria, one test per criterion.

Each check returns (passed, detail). Tests print one PASS/FAIL line and
record it for the terminal summary; ``python3 tests/test_acceptance.py``
prints all thirteen lines without pytest.
"""

import math
import time

import numpy as np
import pytest

from orthosearch import bloch, constraints, hamiltonians, propagator, spectral, su2sim
from orthosearch.errors import OrthoSearchError
from orthosearch.linalg import fidelity, expectation, hermitian_eigen, ket, unitary_exp

RESULTS = {}
UZDIN_LENGTH = 3.3295836107826755


def _max_dev(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def criterion_01():
    start = time.perf_counter()
    x = 0.5
    t_fg = propagator.characteristic_times(x).t_fg
    p_peak = float(propagator.prob_fg(x, 1.0, t_fg))
    p = hamiltonians.SearchProblem.from_overlap(x)
    h = hamiltonians.build_fg(p)
    ts = np.linspace(0.0, 2.0 * t_fg, 200)
    direct = [fidelity(p.w, unitary_exp(h.matrix, t) @ p.s) for t in ts]
    dev = _max_dev(direct, propagator.prob_fg(x, 1.0, ts))
    elapsed = time.perf_counter() - start
    ok = abs(t_fg - math.pi) < 1e-10 and abs(p_peak - 1.0) < 1e-10 and dev < 1e-10 and elapsed < 1.0
    return ok, f"t_fg-pi={t_fg - math.pi:.1e} p-1={p_peak - 1:.1e} dev={dev:.1e} time={elapsed:.3f}s"


def criterion_02():
    ns = 2.0 ** np.arange(1, 21)
    t = [propagator.characteristic_times(1.0 / math.sqrt(n)).t_fg for n in ns]
    slope = float(np.polyfit(np.log(ns), np.log(t), 1)[0])
    return abs(slope - 0.5) < 1e-9, f"slope={slope:.15f}"


def criterion_03():
    worst_p, worst_e = 0.0, 0.0
    for x in (0.1, 0.5, 1.0 / math.sqrt(2.0), 0.9):
        p = hamiltonians.SearchProblem.from_overlap(x)
        h = hamiltonians.build_fenner(p)
        ts = np.linspace(0.0, 3.0 * propagator.characteristic_times(x).t_fenner, 200)
        direct = [fidelity(p.w, propagator.evolve_stationary(h, p.s, t)) for t in ts]
        worst_p = max(worst_p, _max_dev(direct, propagator.prob_fenner(x, 1.0, ts)))
        lam = 2.0 * p.E * x * math.sqrt(1.0 - x * x)
        worst_e = max(worst_e, _max_dev(hermitian_eigen(h.matrix).values, [-lam, lam]))
    return worst_p < 1e-10 and worst_e < 1e-12, f"prob dev={worst_p:.1e} eig dev={worst_e:.1e}"


def criterion_04():
    r1 = propagator.equal_dispersion_ratio(0.01)
    r2 = propagator.equal_dispersion_ratio(0.001)
    return abs(r1 - 1.0) < 0.01 and abs(r2 - 1.0) < 0.001, f"ratio(0.01)={r1:.6f} ratio(0.001)={r2:.7f}"


def criterion_05():
    rng = np.random.default_rng(5)
    worst_f, worst_m, count = 0.0, 0.0, 0
    while count < 100:
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
        c = abs(np.vdot(a, b))
        if c < 1e-6 or c > 1.0 - 1e-6:
            continue
        count += 1
        h = hamiltonians.build_opt(a, b, 1.0)
        t = hamiltonians.optimal_time(a, b, 1.0)
        worst_f = max(worst_f, 1.0 - fidelity(unitary_exp(h.matrix, t) @ a, b))
        worst_m = max(worst_m, abs(expectation(h.matrix, a)))
    return worst_f <= 1e-9 and worst_m < 1e-11, f"1-fidelity<={worst_f:.1e} |<A|H|A>|<={worst_m:.1e}"


def criterion_06():
    start = time.perf_counter()
    rep = constraints.verify_unique_feasibility(1801, 0.9)
    elapsed = time.perf_counter() - start
    ok = rep.passed and elapsed < 60.0
    return ok, (
        f"feasible eps={rep.feasible_epsilons.tolist()} population dev={rep.population_deviation:.1e} "
        f"time={elapsed:.2f}s"
    )


def criterion_07():
    cfg = propagator.PropagationConfig(dt=1e-4)
    tr = propagator.evolve_timedep(hamiltonians.build_uzdin(1.0, 1.0), ket(0), cfg)
    f = fidelity(tr.final, ket(1))
    s = bloch.fs_path_length(tr)
    geo = propagator.evolve_timedep(hamiltonians.build_uzdin(1.0, 0.0), ket(0), cfg)
    s0 = bloch.fs_path_length(geo)
    ok = (
        abs(tr.times[-1] - math.pi / 2.0) < 1e-12
        and f >= 1.0 - 1e-6
        and abs(s - UZDIN_LENGTH) < 1e-3
        and s > math.pi
        and abs(s0 - math.pi) < 1e-6
    )
    return ok, f"1-fidelity={1 - f:.1e} length={s:.7f} geodesic length-pi={s0 - math.pi:.1e}"


def criterion_08():
    grid = np.linspace(0.0, math.pi / 2.0, 1000)
    res = {k: bloch.larmor_residual(*k, grid) for k in ((1.0, 0.0), (1.0, 1.0), (2.0, 3.0))}
    worst = max(res.values())
    return worst < 1e-10, f"max residual={worst:.1e}"


def criterion_09():
    t = np.linspace(0.0, math.pi / 2.0, 201)
    sum_dev, oracle_dev, start_dev = 0.0, 0.0, 0.0
    for which in ("A", "B"):
        plus, minus = spectral.overlap_probabilities(1.0, 1.0, t, which)
        dplus, dminus = spectral.direct_overlap_probabilities(1.0, 1.0, t, which)
        sum_dev = max(sum_dev, _max_dev(plus + minus, 1.0))
        oracle_dev = max(oracle_dev, _max_dev(plus, dplus), _max_dev(minus, dminus))
        start_dev = max(start_dev, abs(plus[0] - 0.5), abs(minus[0] - 0.5))
    ok = sum_dev < 1e-12 and oracle_dev < 1e-9 and start_dev < 1e-12
    return ok, f"sum dev={sum_dev:.1e} oracle dev={oracle_dev:.1e} t=0 dev={start_dev:.1e}"


def criterion_10():
    grid = np.linspace(0.0, 1.0, 1001)
    orth = spectral.min_gap(spectral.track(hamiltonians.rc_schedule(hamiltonians.SearchProblem(ket(0), ket(1))), grid))
    over_p = hamiltonians.SearchProblem(ket(0), np.array([1.0, 1.0]) / math.sqrt(2.0))
    over = spectral.min_gap(spectral.track(hamiltonians.rc_schedule(over_p), grid))
    coupled = [
        spectral.min_gap(spectral.track(hamiltonians.coupled_schedule(g), grid)).g_min - 2.0 * g
        for g in (0.05, 0.1, 0.25)
    ]
    ok = (
        orth.g_min < 1e-12
        and abs(orth.arg_min - 0.5) < 1e-6
        and abs(over.g_min - 0.7071068) < 1e-7
        and abs(over.arg_min - 0.5) < 1e-6
        and max(abs(d) for d in coupled) < 1e-10
    )
    return ok, (
        f"orthogonal g_min={orth.g_min:.1e} overlapping g_min={over.g_min:.8f} at {over.arg_min:.7f} "
        f"coupled dev={max(abs(d) for d in coupled):.1e}"
    )


def criterion_11():
    def commute(s, w):
        p = hamiltonians.SearchProblem(s, w)
        return spectral.commutator_norm(hamiltonians.build_rc(p, 0.0), hamiltonians.build_rc(p, 1.0)) < 1e-12

    rng = np.random.default_rng(11)
    branch_orth = commute(ket(0, 3), ket(2, 3)) and commute(ket(0), ket(1))
    branch_over = True
    for _ in range(20):
        s = rng.normal(size=3) + 1j * rng.normal(size=3)
        w = rng.normal(size=3) + 1j * rng.normal(size=3)
        branch_over &= not commute(s / np.linalg.norm(s), w / np.linalg.norm(w))

    h_opt = hamiltonians.build_opt(ket(0), ket(1), 1.0)
    inv = spectral.involution_check(h_opt, ket(0), ket(1))
    flags = inv.is_involution and inv.swaps and inv.commutes

    stat = spectral.bloch_symmetry_report(propagator.stationary_trajectory(h_opt, ket(0), math.pi / 2.0), h_opt)
    stat_dot = float(max(np.max(np.abs(stat.a_dot_e_plus)), np.max(np.abs(stat.a_dot_e_minus))))
    uz = hamiltonians.build_uzdin(1.0, 1.0)
    uz_tr = propagator.evolve_timedep(uz, ket(0), propagator.PropagationConfig(dt=1e-3))
    uz_dot = float(np.max(np.abs(spectral.bloch_symmetry_report(uz_tr, uz).a_dot_e_plus)))

    ok = branch_orth and branch_over and flags and stat_dot < 1e-10 and uz_dot > 0.1
    return ok, (
        f"commute iff orthogonal={branch_orth and branch_over} involution flags={flags} "
        f"stationary |a.e|={stat_dot:.1e} nonstationary max |a.e+|={uz_dot:.3f}"
    )


def criterion_12():
    sizes = (2, 4, 64, 1024)
    grover = max(su2sim.grover_equivalence(n) for n in sizes)
    ident, cross = 0.0, 0.0
    for n in sizes:
        for dt in (0.1, 1.0, math.pi, 5.0):
            step = su2sim.simulation_step(n, dt)
            ident = max(
                ident,
                abs(math.cos(step.angle / 2.0) - su2sim.step_cos_half_angle(n, dt)),
                abs(math.sin(step.angle / 2.0) - su2sim.step_sin_half_angle(n, dt)),
                float(np.linalg.norm(step.axis_angle_unitary() - step.unitary)),
            )
        s, w = su2sim.search_vectors(n)
        c = np.cross(s, w)
        cross = max(cross, float(np.linalg.norm(np.cross(su2sim.simulation_step(n, math.pi).axis, c / np.linalg.norm(c)))))
    ok = grover < 1e-12 and ident < 1e-12 and cross < 1e-12
    return ok, f"grover dist={grover:.1e} identities={ident:.1e} axis x (s x w)={cross:.1e}"


def criterion_13():
    worst = 0.0
    orth_len = None
    for c in (0.0, 0.3, 0.6, 1.0 / math.sqrt(2.0)):
        b = np.array([c, math.sqrt(1.0 - c * c)], dtype=complex)
        path = bloch.geodesic_path(ket(0), b, phase=0.0 if c == 0.0 else None)
        length = bloch.discrete_fs_length(path)
        worst = max(worst, abs(length - 2.0 * math.acos(c)))
        if c == 0.0:
            orth_len = length
    ok = worst < 1e-6 and abs(orth_len - math.pi) < 1e-6
    return ok, f"max dev={worst:.1e} orthogonal length={orth_len:.9f}"


CRITERIA = [
    ("01", "FG search time and closed form", criterion_01),
    ("02", "square-root scaling", criterion_02),
    ("03", "Fenner closed form and spectrum", criterion_03),
    ("04", "equal-dispersion ratio", criterion_04),
    ("05", "time-optimal transport", criterion_05),
    ("06", "constraint uniqueness at eps=0", criterion_06),
    ("07", "nonstationary endpoint and path length", criterion_07),
    ("08", "Larmor identity", criterion_08),
    ("09", "eigenstate overlap data", criterion_09),
    ("10", "minimum gaps", criterion_10),
    ("11", "symmetry checks", criterion_11),
    ("12", "Grover equivalence and step identities", criterion_12),
    ("13", "discrete geodesic length", criterion_13),
]


def evaluate(number, name, check):
    try:
        ok, detail = check()
    except OrthoSearchError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    line = f"criterion {number} {'PASS' if ok else 'FAIL'} {name}: {detail}"
    RESULTS[number] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("number, name, check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, name, check):
    ok, line = evaluate(number, name, check)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c)[0] for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    raise SystemExit(0 if all(results) else 1)
