"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat R]
"""

import argparse
import math
import timeit

import numpy as np

from orthosearch import _fallback
from orthosearch.hamiltonians import build_uzdin
from orthosearch.su2sim import search_states, simulation_step

try:
    from orthosearch import _kernels
except ImportError:
    _kernels = None


def cases():
    rng = np.random.default_rng(0)
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    herm = 0.5 * (m + m.conj().T)
    h = build_uzdin(1.0, 1.0)
    dt = 1e-4
    mid = (np.arange(int(round(math.pi / 2 / dt))) + 0.5) * dt
    fields = h.fields(mid)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    eps = np.linspace(-0.9, 0.9, 181)
    step = simulation_step(4096, 0.01)
    s, _ = search_states(4096)
    return {
        "jacobi_eigh 8x8": lambda k: k.jacobi_eigh(herm, 1e-14, 100),
        "midpoint_qubit 15708 steps": lambda k: k.midpoint_qubit(fields, psi0, dt),
        "phase_scan 181 x 360^2": lambda k: k.phase_scan(eps, 360),
        "iterate_peak N=4096 dt=0.01": lambda k: k.iterate_peak(step.unitary, s, 10**6),
    }


def best_of(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if _kernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':32s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, call in cases().items():
        t_py = best_of(lambda: call(_fallback), args.repeat)
        t_cy = best_of(lambda: call(_kernels), args.repeat)
        print(f"{name:32s} {1e3 * t_py:12.3f} {1e3 * t_cy:12.3f} {t_py / t_cy:8.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
