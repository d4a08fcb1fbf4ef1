"""Command-line interface.

Exit codes: 0 on success, 1 for invalid usage or input files, 2 for
numerical failures (non-Hermitian Hamiltonian, non-decaying weight, ...).
"""

from __future__ import annotations

import argparse
import json
import contextlib
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import apps, bench, jsonio
from .errors import MalformedInputFile, NumericalError, ValidationError
from .evolve import evolve_expectation
from .intop import WeightExponent, weighted_integral
from .matcore import eigendecompose


class UsageError(ValidationError):
    """Bad command line: unknown subcommand, missing or malformed flag."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _float_list(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _time(text: str) -> float:
    try:
        t = jsonio.parse_float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a time >= 0 or 'inf', got {text!r}") from None
    if t < 0:
        raise argparse.ArgumentTypeError(f"time must be >= 0, got {text!r}")
    return t


@contextlib.contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _add_system(p, observable=True, state=True):
    p.add_argument("--hamiltonian", required=True, help="Hamiltonian matrix JSON file")
    if observable:
        p.add_argument("--observable", required=True, help="observable matrix JSON file")
    if state:
        p.add_argument("--state", required=True, help="state vector or density matrix JSON file")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--out", default="-", help="output path, '-' for standard output")


def _add_weight(p, require=True):
    g = p.add_mutually_exclusive_group(required=require)
    g.add_argument("--rate", type=float, help="decay rate, real part of the weight exponent")
    g.add_argument("--tau", type=float, help="damping time; same as --rate 1/tau")
    p.add_argument("--frequency", type=float, default=0.0, help="angular frequency, imaginary part of the exponent")


def _weight(args) -> WeightExponent:
    if args.tau is not None:
        if not args.tau > 0:
            raise UsageError(f"--tau must be positive, got {args.tau}")
        return WeightExponent.from_tau(args.tau, args.frequency)
    if not args.rate >= 0:
        raise UsageError(f"--rate must be >= 0, got {args.rate}")
    return WeightExponent(args.rate, args.frequency)


def _load_system(args, observable=True, state=True):
    h = jsonio.read_matrix(args.hamiltonian)
    s = jsonio.read_matrix(args.observable) if observable else None
    st = None
    if state:
        try:
            st = jsonio.read_state(args.state)
        except ValidationError as exc:
            if isinstance(exc, MalformedInputFile):
                raise
            raise ValidationError(f"{args.state}: {exc}") from exc
    return h, s, st


def _check_horizon(t: float, weight: WeightExponent):
    if math.isinf(t) and not weight.decays:
        raise UsageError("--t inf needs --rate > 0 (or a finite --tau); the integral does not converge otherwise")


def cmd_eig(args):
    h = jsonio.read_matrix(args.hamiltonian)
    eig = eigendecompose(h, args.hbar)
    with _output(args.out) as fh:
        fh.write(json.dumps(jsonio.eig_to_obj(eig)) + "\n")


def cmd_evolve(args):
    h, s, st = _load_system(args)
    series = evolve_expectation(h, s, st, args.t_max, args.steps, args.hbar)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "re", "im"])
        for t, v in zip(series.times, series.values):
            w.writerow([_fmt(t), _fmt(v.real), _fmt(v.imag)])


def cmd_integrate(args):
    weight = _weight(args)
    _check_horizon(args.t, weight)
    h, s, st = _load_system(args)
    v = weighted_integral(h, s, st, weight, args.t, args.hbar)
    with _output(args.out) as fh:
        fh.write(f"{_fmt(v.real)},{_fmt(v.imag)}\n")


def cmd_average(args):
    if not args.tau > 0:
        raise UsageError(f"--tau must be positive, got {args.tau}")
    h, s, st = _load_system(args)
    v = apps.weighted_average(h, s, st, args.tau, args.t, args.hbar)
    with _output(args.out) as fh:
        fh.write(_fmt(v) + "\n")


def cmd_fourier(args):
    if not args.tau > 0:
        raise UsageError(f"--tau must be positive, got {args.tau}")
    if args.omegas is not None:
        omegas = args.omegas
    elif None not in (args.omega_min, args.omega_max):
        if args.num < 1:
            raise UsageError("--num must be >= 1")
        omegas = np.linspace(args.omega_min, args.omega_max, args.num)
    else:
        raise UsageError("give either --omegas or both --omega-min and --omega-max")
    h, s, st = _load_system(args)
    probe = apps.fourier_probe(h, s, st, args.tau, omegas, args.hbar, workers=None)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["omega", "re", "im"])
        for om, v in zip(probe.omegas, probe.values):
            w.writerow([_fmt(om), _fmt(v.real), _fmt(v.imag)])


def _manifest_entries(path: Path) -> list:
    """``(label, path)`` pairs from a directory of ``<label>.json`` or a manifest file."""
    if path.is_dir():
        entries = []
        for f in path.glob("*.json"):
            try:
                entries.append((float(f.stem), f))
            except ValueError:
                raise MalformedInputFile(f"{f}: file name must be a numeric label, e.g. 0.5.json") from None
        if not entries:
            raise MalformedInputFile(f"{path}: no <label>.json files found")
        return sorted(entries, key=lambda e: e[0])
    obj = jsonio.load_json(path)
    if isinstance(obj, dict):
        obj = obj.get("hamiltonians")
    if not isinstance(obj, list) or not obj:
        raise MalformedInputFile(f"{path}: manifest must be a non-empty list of {{label, path}} entries")
    entries = []
    for k, item in enumerate(obj):
        if isinstance(item, dict) and "label" in item and "path" in item:
            label, p = item["label"], item["path"]
        elif isinstance(item, list) and len(item) == 2:
            label, p = item
        else:
            raise MalformedInputFile(f"{path}: entry {k}: expected {{\"label\": x, \"path\": p}} or [x, p]")
        if not isinstance(label, (int, float)) or isinstance(label, bool) or not isinstance(p, str):
            raise MalformedInputFile(f"{path}: entry {k}: label must be a number and path a string")
        entries.append((float(label), path.parent / p))
    return entries


def cmd_sweep(args):
    weight = _weight(args)
    _check_horizon(math.inf, weight)
    entries = _manifest_entries(Path(args.hamiltonians))
    hams = [(label, jsonio.read_matrix(p)) for label, p in entries]
    s = jsonio.read_matrix(args.observable)
    st = jsonio.read_state(args.state)
    res = apps.sweep(hams, s, st, weight, args.hbar, workers=None)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", "re", "im"])
        for label, v in zip(res.labels, res.values):
            w.writerow([_fmt(label), _fmt(v.real), _fmt(v.imag)])
    for msg in res.errors.values():
        print(f"weightint sweep: {msg}", file=sys.stderr)
    return 0 if res.ok else 2


def cmd_bench(args):
    if args.seed is None:
        raise UsageError("bench needs an explicit --seed (runs are seeded, never random by default)")
    try:
        cfg = bench.BenchConfig(args.sizes, args.steps, args.seed, args.repeats, args.tau, args.t_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    records = bench.run_benchmark(cfg)
    with _output(args.out) as fh:
        bench.write_records_csv(records, fh)
    if args.profile:
        rng = bench.make_rng(cfg.seed)
        n = args.profile_size
        h = bench.random_hermitian(n, rng)
        times = np.linspace(cfg.t_max / args.profile_points, cfg.t_max, args.profile_points)
        rows = bench.time_profile(h, bench.number_operator(n), bench.highest_state(n), cfg.tau, times, cfg.step_counts)
        with _output(args.profile) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "method", "steps", "value"])
            for t, method, steps, v in rows:
                w.writerow([_fmt(t), method, steps, _fmt(v)])


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weightint", description="Exponentially weighted time integrals of quantum expectation values.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="{eig,evolve,integrate,average,fourier,sweep,bench}")
    sub.required = True

    q = sub.add_parser("eig", help="diagonalize a Hamiltonian, write eigenvalues and eigenvectors as JSON")
    _add_system(q, observable=False, state=False)
    q.set_defaults(func=cmd_eig)

    q = sub.add_parser("evolve", help="sample <S>(t) on a uniform grid, CSV t,re,im")
    _add_system(q)
    q.add_argument("--t-max", type=float, required=True)
    q.add_argument("--steps", type=int, required=True)
    q.set_defaults(func=cmd_evolve)

    q = sub.add_parser("integrate", help="weighted integral via the integral operator, prints re,im")
    _add_system(q)
    _add_weight(q)
    q.add_argument("--t", type=_time, default=math.inf, help="upper limit, a number or 'inf' (default)")
    q.set_defaults(func=cmd_integrate)

    q = sub.add_parser("average", help="exponentially weighted time average of <S>")
    _add_system(q)
    q.add_argument("--tau", type=float, required=True)
    q.add_argument("--t", type=_time, default=math.inf)
    q.set_defaults(func=cmd_average)

    q = sub.add_parser("fourier", help="damped Fourier amplitudes at chosen frequencies, CSV omega,re,im")
    _add_system(q)
    q.add_argument("--tau", type=float, required=True)
    q.add_argument("--omegas", type=_float_list)
    q.add_argument("--omega-min", type=float)
    q.add_argument("--omega-max", type=float)
    q.add_argument("--num", type=int, default=20)
    q.set_defaults(func=cmd_fourier)

    q = sub.add_parser("sweep", help="infinite-horizon integrals over a family of Hamiltonians, CSV label,re,im")
    q.add_argument("--hamiltonians", required=True, help="directory of <label>.json files or a manifest JSON")
    q.add_argument("--observable", required=True)
    q.add_argument("--state", required=True)
    q.add_argument("--hbar", type=float, default=1.0)
    q.add_argument("--out", default="-")
    _add_weight(q)
    q.set_defaults(func=cmd_sweep)

    q = sub.add_parser("bench", help="time integral operator against evolve+trapezoid, CSV output")
    q.add_argument("--sizes", type=_int_list, default=[2, 4, 8, 16, 20])
    q.add_argument("--steps", type=_int_list, default=[10, 100, 1000])
    q.add_argument("--repeats", type=int, default=200)
    q.add_argument("--seed", type=int)
    q.add_argument("--tau", type=float, default=10.0)
    q.add_argument("--t-max", type=float, default=50.0)
    q.add_argument("--out", default="-")
    q.add_argument("--profile", help="also write a weighted-average time profile CSV here")
    q.add_argument("--profile-size", type=int, default=20)
    q.add_argument("--profile-points", type=int, default=50)
    q.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args) or 0
    except NumericalError as exc:
        print(f"weightint: numerical error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, ValueError, OSError) as exc:
        print(f"weightint: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
