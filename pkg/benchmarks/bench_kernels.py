"""Compare the numba and numpy oracle kernels.

    python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 3]

Prints best-of-``repeat`` wall times for the troll-message sampler, the
binned strategy evaluator, and a full simulated election, plus the largest
disagreement between the two backends.
"""

import argparse
import time

import numpy as np

from trollfarm import _kernels
from trollfarm.electorate import normal_electorate
from trollfarm.oracle import SimConfig, _grid, _random_binned, _stream, signal_window, simulate_election
from trollfarm.signals import cutoffs, gaussian_family


def best_of(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, min(times)


def sampler_inputs(model, n, seed):
    rng = _stream(seed, 1)
    x = rng.uniform(0.52, 0.98, n)
    s = cutoffs(model, x)
    e = (1.0 - x) * model.sf(1, s) - x * model.sf(0, s)
    side = np.full(n, _kernels.UPPER, dtype=np.int64)
    return rng.random(n), x, side, s, np.full(n, np.inf), -e, np.zeros(n)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000, help="voters / messages per call")
    ap.add_argument("--alternatives", type=int, default=10_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args(argv)

    model = gaussian_family(1.0)
    electorate = normal_electorate(0.55, 0.2)

    # warm the jit cache so compile time is not timed
    small = sampler_inputs(model, 16, args.seed)
    _kernels.troll_inverse_cdf(model, *small, use_numba=True)

    inputs = sampler_inputs(model, args.n, args.seed)
    s_jit, t_jit = best_of(lambda: _kernels.troll_inverse_cdf(model, *inputs, use_numba=True), args.repeat)
    s_np, t_np = best_of(lambda: _kernels.troll_inverse_cdf(model, *inputs, use_numba=False), args.repeat)
    print(f"troll sampler   n={args.n:>8d}  numba {t_jit:8.3f}s  numpy {t_np:8.3f}s  "
          f"speedup {t_np / t_jit:6.1f}x  max|diff| {np.max(np.abs(s_jit - s_np)):.2e}")

    x = 0.7
    grid = _grid(model, x, signal_window(model, x), 64, 64)
    alpha, weights = _random_binned(_stream(args.seed, 2), args.alternatives, 64)
    call = lambda use: _kernels.cell_vote_probs(alpha, weights, grid.kprime, grid.p0, grid.p1, 64, False,
                                                grid.tail0, grid.tail1, use_numba=use)
    call(True)
    p_jit, t_jit = best_of(lambda: call(True), args.repeat)
    p_np, t_np = best_of(lambda: call(False), args.repeat)
    print(f"cell evaluator  n={args.alternatives:>8d}  numba {t_jit:8.3f}s  numpy {t_np:8.3f}s  "
          f"speedup {t_np / t_jit:6.1f}x  max|diff| {np.max(np.abs(p_jit - p_np)):.2e}")

    cfg = SimConfig(args.n, args.seed, 0)
    r_jit, t_jit = best_of(lambda: simulate_election(model, electorate, cfg, workers=1, use_numba=True), args.repeat)
    r_np, t_np = best_of(lambda: simulate_election(model, electorate, cfg, workers=1, use_numba=False), args.repeat)
    print(f"election        n={args.n:>8d}  numba {t_jit:8.3f}s  numpy {t_np:8.3f}s  "
          f"speedup {t_np / t_jit:6.1f}x  shares {r_jit.empirical_share:.6f} / {r_np.empirical_share:.6f}")


if __name__ == "__main__":
    main()
