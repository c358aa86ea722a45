"""Command-line entry point: ``planar-skorokhod <subcommand> ...``.

Thread count for sampling comes from the PLANAR_SKOROKHOD_THREADS environment
variable (default 1); results do not depend on it.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys

import numpy as np

from . import __version__
from .errors import DomainError, UnsupportedError
from .fourier import DEFAULT_TERMS
from .gross import (PowerSeriesDomain, area, energy_diagnostic, expected_exit_time, gross_domain,
                    skorokhod_energy, univalence_check)
from .measure import parse_measure, schlicht_normalization
from .rearrange import BoundaryTrace, grid
from .sampler import GeometricDomain, exit_samples, parse_domain
from .serialize import dumps, envelope, svg_document, write_text
from .sobolev import eta_constant, seminorm_report
from .symmetrize import (SWEEP_COLUMNS, brownian_symmetrize, rasterize, variance_collapse_sweep)
from . import verify as verify_mod


def _count(text: str) -> int:
    """Accept ``1000000`` as well as ``1e6``."""
    value = float(text)
    if value != int(value) or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def _s_value(text: str) -> float:
    s = float(text)
    if not 0.0 < s < 1.0:
        raise argparse.ArgumentTypeError(f"--s must lie in (0, 1), got {text}")
    return s


def _config(args) -> dict:
    # output locations and verbosity do not change results, so they stay out of the echo
    skip = {"func", "out", "svg", "verbose"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _functionals(d: PowerSeriesDomain) -> dict:
    diag = energy_diagnostic(d)
    return {"area": area(d), "skorokhod_energy": skorokhod_energy(d),
            "skorokhod_energy_converged": diag.converged,
            "skorokhod_last_decade_fraction": diag.last_decade_fraction,
            "expected_exit_time": expected_exit_time(d)}


def _univalence(d: PowerSeriesDomain, G: int) -> dict:
    r = univalence_check(d, max(G, 4 * d.truncation))
    return {"passed": r.passed, "reason": r.reason, "simple": r.simple, "winding": r.winding,
            "min_derivative": r.min_derivative, "grid_size": r.grid_size}


def _domain_svg(d: PowerSeriesDomain, G: int, raster=None, title="") -> str:
    curves = [] if d.is_degenerate else [(d.on_circle(max(G, 2 * d.truncation + 2)), "#d62728")]
    return svg_document(curves, raster=raster, title=title)


# -- subcommands ----------------------------------------------------------------

def cmd_gross(args) -> int:
    m = parse_measure(args.measure)
    d = gross_domain(m, args.terms)
    warnings = []
    if d.is_degenerate:
        warnings.append("degenerate domain: point-mass law gives the zero series")
    payload = {"domain": d.to_json(), "functionals": {**_functionals(d), "variance": m.variance(),
                                                      "schlicht_a1": schlicht_normalization(m)},
               "univalence": _univalence(d, args.grid), "warnings": warnings}
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.format == "svg":
        write_text(_domain_svg(d, args.grid, title=d.provenance), args.out)
    else:
        write_text(dumps(envelope("gross", _config(args), payload)), args.out)
    if args.svg:
        write_text(_domain_svg(d, args.grid, title=d.provenance), args.svg)
    return 0


def _load_domain(path) -> PowerSeriesDomain:
    with open(path) as fh:
        data = json.load(fh)
    return PowerSeriesDomain.from_json(data.get("domain", data))


def cmd_analyze(args) -> int:
    d = _load_domain(args.domain)
    payload = {"domain": d.to_json(), "functionals": _functionals(d),
               "univalence": _univalence(d, args.grid)}
    write_text(dumps(envelope("analyze", _config(args), payload)), args.out)
    return 0


def cmd_plot(args) -> int:
    d = _load_domain(args.domain)
    write_text(_domain_svg(d, args.grid, title=d.provenance), args.out)
    return 0


def cmd_sample(args) -> int:
    src = parse_domain(args.domain)
    s = exit_samples(src, args.n, args.seed, args.eps, args.method)
    if args.format == "json":
        payload = {"sampler": s.sampler, "domain": s.domain, "count": s.count,
                   "excluded": s.excluded, "seed": s.seed, "values": s.values}
        write_text(dumps(envelope("sample", _config(args), payload)), args.out)
    else:
        head = (f"# {json.dumps(envelope('sample', _config(args), {}))}\n"
                f"# seed={s.seed} sampler={s.sampler} domain={s.domain} count={s.count} "
                f"excluded={s.excluded}\n")
        body = "".join(f"{v!r}\n" for v in s.values.tolist())
        write_text(head + body, args.out)
    return 0


def cmd_symmetrize(args) -> int:
    src = parse_domain(args.domain)
    rep = brownian_symmetrize(src, args.n, args.terms, args.eps, args.seed, args.method)
    payload = {"report": rep.to_json(), "functionals": _functionals(rep.gross)}
    write_text(dumps(envelope("symmetrize", _config(args), payload)), args.out)
    if args.svg:
        raster = None
        if isinstance(src, GeometricDomain):
            r = rasterize(src, 256)
            xs, ys = r.centers()
            raster = (xs, ys, r.occupancy)
            curves = []
        else:
            curves = [(src.on_circle(4096), "#1f77b4")]
        curves.append((rep.gross.on_circle(max(4096, 2 * rep.gross.truncation + 2)), "#d62728"))
        write_text(svg_document(curves, raster=raster, title="U and B(U)"), args.svg)
    return 0


def _mode_trace(spec: str, G: int) -> BoundaryTrace:
    name, _, arg = spec.partition(":")
    th = grid(G)
    if name == "const":
        return BoundaryTrace(np.full(G, float(arg) if arg else 1.0))
    k = int(arg) if arg else 1
    if name == "cos":
        return BoundaryTrace(np.cos(k * th))
    if name == "sin":
        return BoundaryTrace(np.sin(k * th))
    raise DomainError(f"unknown mode {spec!r}; use cos:k, sin:k or const")


def cmd_seminorm(args) -> int:
    G = args.grid
    extra = {}
    if args.measure:
        m = parse_measure(args.measure)
        trace = BoundaryTrace(m.quantile(np.abs(grid(G)) / np.pi))
        extra["gross_area"] = area(gross_domain(m, args.terms or DEFAULT_TERMS))
    elif args.trace:
        trace = (BoundaryTrace.from_json(json.load(open(args.trace))) if args.trace.endswith(".json")
                 else BoundaryTrace.read_csv(args.trace))
    else:
        trace = _mode_trace(args.mode or "cos:1", G)
    rep = seminorm_report(trace, args.s, args.terms or trace.grid_size // 2 - 1)
    extra["pi_times_fourier_value"] = math.pi * rep.fourier_value
    eta = eta_constant(args.s, trace.grid_size, 6)
    payload = {"report": rep.to_json(), "eta": {"mean": eta.mean, "spread": eta.spread,
                                                "ratios": list(eta.ratios)}, **extra}
    write_text(dumps(envelope("seminorm", _config(args), payload)), args.out)
    return 0


def cmd_sweep(args) -> int:
    params = [float(p) for p in args.params.split(",") if p.strip()]
    rows = variance_collapse_sweep(args.kind, params, args.n, args.eps, args.seed, args.terms,
                                   args.a, args.method)
    if args.format == "json":
        payload = {"rows": [r.__dict__ for r in rows]}
        write_text(dumps(envelope("sweep", _config(args), payload)), args.out)
    else:
        lines = [f"# {json.dumps(envelope('sweep', _config(args), {}))}", ",".join(SWEEP_COLUMNS)]
        for r in rows:
            lines.append(",".join(v if isinstance(v, str) else format(float(v), ".17g")
                                  for v in (getattr(r, c) for c in SWEEP_COLUMNS)))
        write_text("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    def show(entry):
        mark = "PASS" if entry["passed"] else "FAIL"
        print(f"[{mark}] criterion {entry['criterion']:2d}: {entry['title']}", file=sys.stderr)

    report = verify_mod.run_suite(args.suite, args.seed, on_result=show)
    write_text(dumps(envelope("verify", _config(args), report)), args.out)
    return 0 if report["all_passed"] else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planar-skorokhod",
                                description="Gross domains, shape functionals and Brownian "
                                            "symmetrization.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def out_opts(q, formats=("json",)):
        q.add_argument("--out", default="-", help="output path (default: stdout)")
        q.add_argument("--format", choices=formats, default=formats[0],
                       help=f"output format (default: {formats[0]})")

    q = sub.add_parser("gross", help="build the Gross domain of a law")
    q.add_argument("--measure", required=True,
                   help="uniform:a,b | arcsine | diskexit:k | atoms:x:w,... | empirical:F | density:F")
    q.add_argument("--terms", type=_count, default=DEFAULT_TERMS, help="truncation N (default: 256)")
    q.add_argument("--grid", type=_count, default=4096, help="boundary grid size (default: 4096)")
    q.add_argument("--svg", help="also write the boundary curve as SVG")
    out_opts(q, ("json", "svg"))
    q.set_defaults(func=cmd_gross)

    q = sub.add_parser("analyze", help="functionals and univalence screen of a domain JSON file")
    q.add_argument("--domain", required=True, help="domain JSON (as written by `gross`)")
    q.add_argument("--grid", type=_count, default=4096, help="grid size (default: 4096)")
    out_opts(q)
    q.set_defaults(func=cmd_analyze)

    q = sub.add_parser("plot", help="SVG of a domain JSON file")
    q.add_argument("--domain", required=True)
    q.add_argument("--grid", type=_count, default=4096, help="boundary grid size (default: 4096)")
    q.add_argument("--out", default="-", help="SVG path (default: stdout)")
    q.set_defaults(func=cmd_plot)

    def mc_opts(q):
        q.add_argument("--n", type=_count, default=1_000_000, help="sample count (default: 1e6)")
        q.add_argument("--eps", type=float, default=1e-6, help="walk-on-spheres shell (default: 1e-6)")
        q.add_argument("--seed", type=int, default=42, help="RNG seed (default: 42)")
        q.add_argument("--method", choices=("auto", "wos"), default="auto",
                       help="auto: exact conformal/Mobius sampler where available (default)")

    q = sub.add_parser("sample", help="exit-law samples of Re Z_tau")
    q.add_argument("--domain", required=True, help="disk[:r] | diskexit:k | rect:hw,hh | series:F")
    mc_opts(q)
    out_opts(q, ("csv", "json"))
    q.set_defaults(func=cmd_sample)

    q = sub.add_parser("symmetrize", help="Brownian symmetrization report")
    q.add_argument("--domain", required=True, help="disk[:r] | diskexit:k | rect:hw,hh | series:F")
    q.add_argument("--terms", type=_count, default=DEFAULT_TERMS, help="truncation N (default: 256)")
    q.add_argument("--svg", help="also write an SVG overlay of U and B(U)")
    mc_opts(q)
    out_opts(q)
    q.set_defaults(func=cmd_symmetrize)

    q = sub.add_parser("seminorm", help="Gagliardo and Fourier seminorms of a trace")
    src = q.add_mutually_exclusive_group()
    src.add_argument("--measure", help="use the quantile trace theta -> Q(|theta|/pi)")
    src.add_argument("--mode", help="cos:k | sin:k | const[:c] (default: cos:1)")
    src.add_argument("--trace", help="trace file (.json or .csv)")
    q.add_argument("--s", type=_s_value, default=0.5, help="smoothness in (0, 1) (default: 0.5)")
    q.add_argument("--grid", type=_count, default=2048, help="grid size (default: 2048)")
    q.add_argument("--terms", type=_count, default=None, help="spectrum truncation (default: G/2-1)")
    out_opts(q)
    q.set_defaults(func=cmd_seminorm)

    q = sub.add_parser("sweep", help="variance-collapse sweep over a domain family")
    q.add_argument("--kind", choices=("shifted_disk", "thin_rectangle"), required=True)
    q.add_argument("--params", required=True, help="comma-separated kappa or b values")
    q.add_argument("--a", type=float, default=1.0, help="thin-rectangle area (default: 1)")
    q.add_argument("--terms", type=_count, default=DEFAULT_TERMS, help="truncation N (default: 256)")
    mc_opts(q)
    out_opts(q, ("csv", "json"))
    q.set_defaults(func=cmd_sweep)

    q = sub.add_parser("verify", help="run the acceptance criteria")
    q.add_argument("--suite", choices=("fast", "full"), default="fast",
                   help="fast: deterministic criteria; full: adds Monte Carlo ones")
    q.add_argument("--seed", type=int, default=42, help="RNG seed (default: 42)")
    q.add_argument("--out", default="-", help="report path (default: stdout)")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (DomainError, UnsupportedError, OSError) as exc:
        print(f"planar-skorokhod {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
