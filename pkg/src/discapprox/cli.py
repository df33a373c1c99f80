"""Command-line front end.

Subcommands::

    construct  N-point approximation of a measure file, points as CSV
    distance   total variation / star discrepancy between two inputs
    transport  transport a 1-D sequence through a distribution-function file
    verify     sweep N and check the truncation bound, one CSV row per N
    oracle     compare the exact metrics against their brute-force oracles

Exit codes: 0 success, 1 bound violated or oracle mismatch, 2 invalid input,
3 decay hypothesis violated.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import io
from .finite import approximate_finite
from .measure import MeasureError
from .metrics import dstar_boxsample, star_discrepancy, total_variation, tv_bruteforce
from .tail import DecayError, approximate_infinite, family_measure
from .transport import CdfError, Sequence1D, compare_transport, transport

DEFAULT_SEED = 12345
DEFAULT_TRIALS = 100_000

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_DECAY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_sweep(text: str) -> list[int]:
    """``start:stop:count[:log]`` to a strictly increasing list of N >= 2."""
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "lin")):
        raise UsageError(f"bad sweep {text!r}; expected start:stop:count[:log]")
    start, stop, count = int(parts[0]), int(parts[1]), int(parts[2])
    if start < 2 or stop < start or count < 1:
        raise UsageError("sweep needs 2 <= start <= stop and count >= 1")
    if len(parts) == 4 and parts[3] == "log":
        raw = np.logspace(math.log10(start), math.log10(stop), count)
    else:
        raw = np.linspace(start, stop, count)
    return sorted({int(round(x)) for x in raw})


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finite_input(path):
    x, _ = io.read_any(path)
    if not getattr(x, "is_finite", True):
        raise MeasureError(f"{path}: a finitely supported input is required")
    return x


def cmd_construct(args):
    m, fam = io.read_measure(args.input)
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    method = args.method or ("finite" if m.is_finite else "gauge")
    if method == "finite":
        if not m.is_finite:
            raise UsageError("--method finite needs a finitely supported measure")
        ps, tv_bound, ds_bound = approximate_finite(m, args.n)
        lines = [f"N={args.n}", f"tv_bound={tv_bound!r}", f"dstar_bound={ds_bound!r}"]
    else:
        if args.family:
            fam = io.make_family(args.family, args.r)
        if fam is None:
            raise UsageError("--method gauge needs a family (in the file or --family)")
        ps, rep = approximate_infinite(m, fam, args.n)
        lines = [f"N={args.n}", f"K_N={rep.K_N}", f"tv_bound={rep.bound!r}",
                 f"dstar_bound={rep.bound!r}"]
    _emit(io.format_points(ps), args.out)
    stream = sys.stdout if args.out else sys.stderr
    print("\n".join(lines), file=stream)
    return EXIT_OK


def cmd_distance(args):
    a, b = _finite_input(args.input), _finite_input(args.input2)
    status = EXIT_OK
    if args.metric in ("tv", "both"):
        res = total_variation(a, b)
        print(f"tv={res.value!r}")
        print(f"tv_witness={[list(map(float, p)) for p in res.witness]}")
        if args.oracle:
            brute = tv_bruteforce(a, b)
            ok = abs(brute - res.value) <= 1e-12
            print(f"tv_bruteforce={brute!r} match={'yes' if ok else 'no'}")
            status = status if ok else EXIT_VIOLATION
    if args.metric in ("dstar", "both"):
        res = star_discrepancy(a, b)
        print(f"dstar={res.value!r}")
        print(f"dstar_witness={res.witness}")
        if args.oracle:
            sample = dstar_boxsample(a, b, DEFAULT_TRIALS, args.seed)
            ok = sample <= res.value + 1e-12
            print(f"dstar_boxsample={sample!r} below_exact={'yes' if ok else 'no'}")
            status = status if ok else EXIT_VIOLATION
    return status


def cmd_oracle(args):
    args.oracle = True
    args.metric = "both"
    return cmd_distance(args)


def _generator(args):
    if args.generator == "centered":
        return Sequence1D.centered(args.n)
    if args.generator == "vdc":
        return Sequence1D.van_der_corput(args.base)
    if args.generator == "kronecker":
        return Sequence1D.kronecker()
    raise UsageError(f"unknown generator {args.generator!r}")


def cmd_transport(args):
    f = io.read_cdf(args.input)
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    vs = _generator(args)
    ps = transport(f, vs, args.n)
    mu_d, leb_d = compare_transport(f, vs, args.n)
    _emit(io.format_points(ps), args.out)
    stream = sys.stdout if args.out else sys.stderr
    if abs(mu_d - leb_d) <= 1e-12:
        flag = "EQUAL"
    elif mu_d <= leb_d + 1e-12:
        flag = "LEQ"
    else:
        flag = "VIOLATION"
    print(f"mu_dstar={mu_d!r}\nlebesgue_dstar={leb_d!r}\n{flag}", file=stream)
    return EXIT_VIOLATION if flag == "VIOLATION" else EXIT_OK


def cmd_verify(args):
    if args.input:
        m, fam = io.read_measure(args.input)
        if args.family:
            fam = io.make_family(args.family, args.r)
        if fam is None:
            raise UsageError("verify needs a family (in the file or --family)")
    else:
        if not args.family:
            raise UsageError("verify needs --family or --input")
        fam = io.make_family(args.family, args.r)
        m = family_measure(fam, args.dim)
    Ns = parse_sweep(args.sweep)
    rows = ["N,K_N,actual_tv,actual_dstar,bound,ratio"]
    max_ratio = 0.0
    for N in Ns:
        _, rep = approximate_infinite(m, fam, N)
        rows.append(",".join(repr(x) for x in rep.row()))
        max_ratio = max(max_ratio, rep.ratio)
    _emit("\n".join(rows) + "\n", args.out)
    print(f"max_ratio={max_ratio!r}")
    return EXIT_OK if max_ratio <= 1.0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="discapprox", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input")
        sp.add_argument("--out")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sp = sub.add_parser("construct", help="approximate a measure by N points")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--method", choices=("finite", "gauge"))
    sp.add_argument("--family", choices=io.FAMILIES)
    sp.add_argument("--r", type=float)
    sp.set_defaults(func=cmd_construct)

    for name, func in (("distance", cmd_distance), ("oracle", cmd_oracle)):
        sp = sub.add_parser(name, help=f"{name} between two inputs")
        common(sp)
        sp.add_argument("--input2", required=True)
        sp.add_argument("--metric", choices=("tv", "dstar", "both"), default="both")
        sp.add_argument("--oracle", action="store_true")
        sp.set_defaults(func=func)

    sp = sub.add_parser("transport", help="transport a 1-D sequence through a CDF")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--generator", choices=("centered", "vdc", "kronecker"),
                    default="centered")
    sp.add_argument("--base", type=int, default=2)
    sp.set_defaults(func=cmd_transport)

    sp = sub.add_parser("verify", help="check the truncation bound over an N sweep")
    common(sp)
    sp.add_argument("--family", choices=io.FAMILIES)
    sp.add_argument("--r", type=float)
    sp.add_argument("--dim", type=int, default=1)
    sp.add_argument("--sweep", default="2:10000:30:log")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "input", None) is None and args.command != "verify":
        print("error: --input is required", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except DecayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DECAY
    except (MeasureError, CdfError, UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
