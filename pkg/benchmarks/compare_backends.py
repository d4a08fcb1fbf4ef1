"""Compare the compiled and numpy kernel backends.

    python benchmarks/compare_backends.py --sizes 4,20,64 --steps 1000 --seed 0

Prints one row per (kernel, size) with the mean time of each backend and the
speedup, plus the largest absolute difference between their outputs.
"""

import argparse
import sys
import timeit

import numpy as np

from weightint import kernels
from weightint.bench import highest_state, make_rng, number_operator, random_hermitian
from weightint.intop import WeightExponent, build
from weightint.matcore import eigendecompose


def cases(n, steps, rng):
    eig = eigendecompose(random_hermitian(n, rng))
    s = number_operator(n)
    op = build(s, eig, WeightExponent.from_tau(10.0))
    rho = highest_state(n).in_eigenbasis(eig)
    c = rho[:, -1] / np.linalg.norm(rho[:, -1]) if np.any(rho[:, -1]) else np.eye(n)[0]
    times = np.linspace(0.0, 50.0, steps + 1)
    values = kernels.evolve_density(rho, op.s_eig, eig.eigenvalues, times, 1.0)
    return {
        "integral_matrix": (op.s_eig, op.z, 50.0),
        "integral_expectation": (rho.T * op.s_eig, op.z, 50.0),
        "evolve_pure": (c, op.s_eig, eig.eigenvalues, times, 1.0),
        "evolve_density": (rho, op.s_eig, eig.eigenvalues, times, 1.0),
        "trapezoid_weighted": (values, times, 0.1, 0.0),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="4,8,20,64")
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-time", type=float, default=0.2, help="seconds per timing measurement")
    args = p.parse_args(argv)

    impls = kernels.available_backends()
    if "cython" not in impls:
        print("compiled kernels are not built; only the numpy backend is available", file=sys.stderr)
    rng = make_rng(args.seed)
    names = sorted(impls)
    print(f"{'kernel':<22}{'size':>5}" + "".join(f"{n + ' [us]':>16}" for n in names) + f"{'speedup':>10}{'max|diff|':>12}")
    for n in (int(x) for x in args.sizes.split(",")):
        for kernel, call_args in cases(n, args.steps, rng).items():
            fn = getattr(kernels, kernel)
            times, outs = {}, {}
            for name in names:
                impl = impls[name]
                timer = timeit.Timer(lambda: fn(*call_args, impl=impl))
                number, _ = timer.autorange()
                reps = max(1, int(args.min_time / max(timer.timeit(number) / number, 1e-9)))
                times[name] = min(timer.repeat(3, reps)) / reps
                outs[name] = np.asarray(fn(*call_args, impl=impl))
            speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
            diff = max(float(np.max(np.abs(outs[a] - outs["python"]))) for a in names)
            print(
                f"{kernel:<22}{n:>5}" + "".join(f"{times[name] * 1e6:>16.2f}" for name in names)
                + f"{speedup:>10.1f}{diff:>12.1e}"
            )


if __name__ == "__main__":
    main()
