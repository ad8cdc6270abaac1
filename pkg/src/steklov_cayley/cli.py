"""Command-line front end.

Subcommands: ``gen``, ``spectrum``, ``certify``, ``sweep``, ``growth``.
Output is deterministic: floats are written with 12 significant digits and
timings are only emitted on request.

Exit codes: 0 success, 2 invalid input, 3 resource cap, 4 invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from contextlib import contextmanager

import numpy as np

from . import __version__
from .bounds import (
    GapViolation,
    MissingHostLabels,
    certify_sigma1,
    constant_chain,
    corollary_bounds,
    default_chain,
    isoperimetric_ratio_of_graph,
    theorem1_bound,
)
from .cayley import (
    DEFAULT_BALL_CAP,
    ResourceLimitError,
    descriptor_from_dict,
    free_abelian,
    growth_function,
    heisenberg,
)
from .families import heis_ball, induced, random_connected_subset, zd_ball, zd_box
from .graph_boundary import (
    DisconnectedResult,
    GraphSchemaError,
    InvalidGraphError,
    example_family_G,
    from_json,
    to_json,
)
from .steklov import SigmaOneUndefined, spectrum

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_INVARIANT = 4

SWEEP_SCHEMA_VERSION = 1
SWEEP_COLUMNS = [
    "schema_version", "family", "param", "omega", "delta_omega", "omega_bar", "n_vertices",
    "sigma1", "sigma1_scaled", "theorem1", "corollary1", "corollary2", "certificate",
    "certificate_branch", "certificate_sound", "iso_ratio", "bound_flag",
    "spectrum_ms", "certify_ms", "error",
]


class InvariantViolation(RuntimeError):
    pass


def fmt(x) -> str:
    """Float text with at most 12 significant digits; empty for None."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def _round_floats(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_round_floats(obj), sort_keys=True, indent=2) + "\n"


@contextmanager
def _sink(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _read_graph(path):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return from_json(text)


def parse_range(text: str) -> range:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a..b") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _group(kind: str, rank: int | None):
    if kind in ("z", "free_abelian"):
        if rank is None:
            raise ValueError("free abelian group needs a rank")
        return free_abelian(rank)
    if kind in ("heis", "heisenberg"):
        return heisenberg()
    raise ValueError(f"unknown group {kind!r}")


def build_family(family: str, params: list[int], args):
    """Graph for one family member; ``params`` are the positional integers."""
    cap = args.cap
    if family == "example1":
        (n,) = params
        return example_family_G(n)
    if family == "zd_ball":
        D, r = params
        return zd_ball(D, r, cap=cap)
    if family == "zd_box":
        D, *sides = params
        if len(sides) == 1:
            sides = sides * D
        if len(sides) != D:
            raise ValueError(f"zd_box needs 1 or {D} sides")
        return zd_box(sides)
    if family == "heis_ball":
        (r,) = params
        return heis_ball(r, cap=cap)
    if family == "zd_random":
        D, size = params
        host = free_abelian(D)
        rng = np.random.default_rng(args.seed)
        return induced(host, random_connected_subset(host, size, rng))
    raise ValueError(f"unknown family {family!r}")


FAMILY_ARITY = {"example1": 1, "zd_ball": 2, "heis_ball": 1, "zd_random": 2}


def cmd_gen(args, out):
    if args.family == "json":
        if len(args.params) != 1:
            raise ValueError("gen json takes a path")
        g = _read_graph(args.params[0])
    else:
        params = [int(p) for p in args.params]
        arity = FAMILY_ARITY.get(args.family)
        if arity is not None and len(params) != arity:
            raise ValueError(f"{args.family} takes {arity} integer parameter(s)")
        g = build_family(args.family, params, args)
    out.write(to_json(g) + "\n")
    return EXIT_OK


def cmd_spectrum(args, out):
    g = _read_graph(args.input)
    spec = spectrum(g, method=args.method, tol=args.tol)
    code = EXIT_OK
    if spec.b < 2:
        print("sigma_1 undefined: the boundary has a single vertex", file=sys.stderr)
        code = EXIT_INVALID
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "sigma"])
        for k, s in enumerate(spec.eigenvalues):
            w.writerow([k, fmt(s)])
    else:
        out.write(dump_json(spec.to_dict()))
    return code


def _certify(g, args):
    chain = default_chain(g.host, args.n_max) if g.host is not None else None
    return certify_sigma1(g, chain=chain, c1=args.c1, cap=args.cap)


def cmd_certify(args, out):
    g = _read_graph(args.input)
    if g.labels is None or g.host is None:
        raise MissingHostLabels("certification needs host labels and a host descriptor")
    cert = _certify(g, args)
    d = cert.to_dict()
    d["n_max"] = args.n_max
    out.write(dump_json(d))
    if cert.sound is False:
        raise InvariantViolation("certificate is below the computed sigma_1")
    return EXIT_OK


def sweep_record(family: str, param: int, params: list[int], args) -> dict:
    row = {c: None for c in SWEEP_COLUMNS}
    row.update(schema_version=SWEEP_SCHEMA_VERSION, family=family, param=param)
    try:
        g = build_family(family, params, args)
        row["n_vertices"] = g.n
        row["delta_omega"] = g.b
        t0 = time.perf_counter()
        s1 = spectrum(g).sigma1
        t1 = time.perf_counter()
        row["sigma1"] = s1
        if g.host is not None:
            D = g.host.growth_order
            row["omega"] = g.n - g.b
            row["omega_bar"] = g.n
            row["sigma1_scaled"] = s1 * g.n ** (1 / D)
            row["iso_ratio"] = isoperimetric_ratio_of_graph(g, D).ratio
            chain = default_chain(g.host, args.n_max)
            row["theorem1"] = theorem1_bound(g, chain)
            cb = corollary_bounds(g, chain, iso_constant=args.iso_constant)
            row["corollary1"] = cb.boundary_form
            row["corollary2"] = cb.closure_form
            t2 = time.perf_counter()
            cert = certify_sigma1(g, chain=chain, c1=args.c1, compute_sigma1=False, cap=args.cap)
            t3 = time.perf_counter()
            cert.sigma1 = s1
            row["certificate"] = cert.certified_bound
            row["certificate_branch"] = cert.branch
            row["certificate_sound"] = cert.sound
            if args.timings:
                row["certify_ms"] = 1e3 * (t3 - t2)
            empirical = [row["theorem1"], row["corollary1"], row["corollary2"]]
            row["bound_flag"] = any(b is not None and s1 > b + 1e-9 for b in empirical)
        if args.timings:
            row["spectrum_ms"] = 1e3 * (t1 - t0)
    except (GapViolation, InvariantViolation):
        raise
    except Exception as exc:  # per-instance failures are data in a sweep
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def cmd_sweep(args, out):
    family = args.family
    fixed = [int(p) for p in args.params]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    out.flush()
    unsound = False
    for p in args.range:
        params = fixed + [p]
        row = sweep_record(family, p, params, args)
        if row["certificate_sound"] is False:
            unsound = True
        w.writerow([fmt(row[c]) if not isinstance(row[c], str) else row[c] for c in SWEEP_COLUMNS])
        out.flush()
    if unsound:
        raise InvariantViolation("an unsound certificate was produced")
    return EXIT_OK


def cmd_growth(args, out):
    if args.config:
        with open(args.config) as fh:
            desc = descriptor_from_dict(json.load(fh))
        n_max = int(args.args[0]) if args.args else 12
    else:
        if not args.args:
            raise ValueError("growth needs a group: 'z RANK N_MAX' or 'heis N_MAX'")
        kind, *rest = args.args
        if kind in ("z", "free_abelian"):
            if len(rest) != 2:
                raise ValueError("usage: growth z RANK N_MAX")
            desc = _group(kind, int(rest[0]))
            n_max = int(rest[1])
        else:
            if len(rest) != 1:
                raise ValueError("usage: growth heis N_MAX")
            desc = _group(kind, None)
            n_max = int(rest[0])
    growth = growth_function(desc, n_max, cap=args.cap)
    chain = constant_chain(desc, growth)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "V_n", "ratio_upper", "ratio_lower"])
    for n, v, up, lo in growth.ratios():
        w.writerow([n, v, fmt(float(up)), fmt(float(lo))])
    ns = np.array([n for n, _ in growth.samples], dtype=float)
    vs = np.array([v for _, v in growth.samples], dtype=float)
    tail = ns >= max(2.0, n_max / 2)
    if tail.sum() >= 2:
        slope = float(np.polyfit(np.log(ns[tail]), np.log(vs[tail]), 1)[0])
        out.write(f"# fitted_exponent={fmt(slope)}\n")
    out.write(f"# growth_order={desc.growth_order}\n")
    out.write(f"# growth_constant={fmt(float(growth.growth_constant))}\n")
    for k, v in chain.to_dict().items():
        out.write(f"# {k}={fmt(v)}\n")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="steklov-cayley", description="Steklov spectra of graphs in Cayley graphs.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--seed", type=int, default=0, help="seed for random-subset families")
    p.add_argument("--cap", type=int, default=DEFAULT_BALL_CAP, help="ball enumeration cap")
    p.add_argument("--tol", type=float, default=1e-12, help="Jacobi off-diagonal tolerance")
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="emit graph JSON for a family")
    g.add_argument("family", choices=["example1", "zd_ball", "zd_box", "heis_ball", "zd_random", "json"])
    g.add_argument("params", nargs="+")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("spectrum", help="Steklov spectrum of a graph JSON file")
    s.add_argument("input")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--json", dest="format", action="store_const", const="json")
    s.add_argument("--csv", dest="format", action="store_const", const="csv")
    s.add_argument("--method", choices=["lapack", "jacobi"], default="lapack")
    s.set_defaults(func=cmd_spectrum)

    c = sub.add_parser("certify", help="test-function certificate for sigma_1")
    c.add_argument("input")
    c.add_argument("--c1", type=int, default=None, help="override the covering count")
    c.add_argument("--n-max", type=int, default=12, help="growth sampling radius for the constants")
    c.set_defaults(func=cmd_certify)

    w = sub.add_parser("sweep", help="CSV sweep over a family parameter")
    w.add_argument("family", choices=["example1", "zd_ball", "zd_box", "heis_ball", "zd_random"])
    w.add_argument("params", nargs="*", help="fixed leading parameters (e.g. the dimension)")
    w.add_argument("--range", type=parse_range, required=True, help="swept last parameter, a..b")
    w.add_argument("--c1", type=int, default=None)
    w.add_argument("--n-max", type=int, default=12)
    w.add_argument("--iso-constant", type=float, default=None,
                   help="isoperimetric constant for the corollary columns (default: each instance's own ratio)")
    w.add_argument("--timings", action="store_true", help="fill the runtime columns (breaks byte-identity)")
    w.set_defaults(func=cmd_sweep)

    gr = sub.add_parser("growth", help="growth function samples and constant chain")
    gr.add_argument("args", nargs="*", help="'z RANK N_MAX' or 'heis N_MAX'")
    gr.add_argument("--config", default=None, help="group descriptor JSON file")
    gr.set_defaults(func=cmd_growth)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        with _sink(args.output) as out:
            code = args.func(args, out)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_CAP
    except (InvariantViolation, GapViolation) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        code = EXIT_INVARIANT
    except SigmaOneUndefined as exc:
        print(str(exc), file=sys.stderr)
        code = EXIT_INVALID
    except (GraphSchemaError, InvalidGraphError, DisconnectedResult, MissingHostLabels,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INVALID
    return code


if __name__ == "__main__":
    sys.exit(main())
