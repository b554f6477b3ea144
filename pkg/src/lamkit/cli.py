"""Command line front end: ``lamkit <command> ...``.

Exit codes: 0 all expected verdicts hold, 1 a check failed, 2 usage error or
refused input, 3 a bounded run did not finish (INCOMPLETE / TRUNCATED).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .angles import format_fraction, parse_fraction
from .chords import parse_chord, tau, tau_fixed_points
from .polygons import (
    Polygon,
    analyze_orbit_sigma3,
    example_period2,
    example_period3,
    example_sigma4_quadrilateral,
    is_identity_return,
    orbit_of,
    search_irp,
)
from .portraits import (
    BoundaryLeafError,
    InvalidImageError,
    build_portrait,
    central_strip,
    default_image,
    enumerate_sibling_collections,
    orient_image,
    portrait_to_dict,
)
from .render import render_orbit, render_portrait, render_tau, render_tree
from .strips import DEFAULT_MAX_ITERS, PASS, TRUNCATED, csl_sweep, verify_csl
from .trees import census_crosscheck, dual_tree

OK, FAILED, USAGE, INCOMPLETE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    d: int | None = None
    bounds: dict = field(default_factory=dict)
    max_iters: int = DEFAULT_MAX_ITERS
    format: str = "text"
    seed: int = 0


class Refusal(Exception):
    """Input understood but not acceptable (e.g. a diameter image)."""


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _chord(text: str):
    try:
        return parse_chord(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a chord 'a-b': {text!r}") from exc


def _degree(text: str) -> int:
    try:
        d = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if d < 2:
        raise argparse.ArgumentTypeError("degree must be >= 2")
    return d


def _emit(args, cfg: RunConfig, result, text: str, status: str = "ok") -> None:
    if args.format == "json":
        doc = {"command": cfg.command, "config": asdict(cfg), "status": status.lower(), "result": result}
        if not args.deterministic:
            doc["generated_at"] = datetime.now(timezone.utc).isoformat()
        payload = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        payload = text if text.endswith("\n") else text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_svg(args, svg: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)


def _config(args, **kw) -> RunConfig:
    return RunConfig(command=args.command, format=args.format, seed=args.seed, **kw)


def _image(d: int, image):
    image = image or default_image(d)
    try:
        orient_image(image)
    except InvalidImageError as exc:
        raise Refusal(str(exc)) from exc
    return image


# ---------------------------------------------------------------- commands


def cmd_tau(args) -> int:
    d = args.d
    cfg = _config(args, d=d)
    if args.plot:
        _emit_svg(args, render_tau(d, samples=args.samples))
        return OK
    fixed = tau_fixed_points(d)
    if args.fixed or args.x is None:
        _emit(args, cfg, {"fixed_points": [format_fraction(f) for f in fixed]},
              ", ".join(format_fraction(f) for f in fixed))
        return OK
    try:
        y = tau(d, args.x)
    except ValueError as exc:
        raise Refusal(str(exc)) from exc
    is_fixed = y == args.x
    text = format_fraction(y) + (" (fixed)" if is_fixed else "")
    _emit(args, cfg, {"x": format_fraction(args.x), "tau": format_fraction(y), "fixed": is_fixed}, text)
    return OK


def cmd_portraits(args) -> int:
    d = args.d
    image = _image(d, args.image)
    cfg = _config(args, d=d, bounds={"image": str(image)})
    if args.census:
        rep = census_crosscheck(d, image)
        _emit(args, cfg, rep.to_dict(), str(rep), "ok" if rep.ok else "failed")
        return OK if rep.ok else FAILED
    colls = enumerate_sibling_collections(d, image)
    docs, lines = [], []
    for i, c in enumerate(colls):
        try:
            p = build_portrait(c)
        except BoundaryLeafError as exc:
            raise Refusal(str(exc)) from exc
        strip = central_strip(p)
        docs.append(portrait_to_dict(p) | {"index": i, "strip_degree": None if strip is None else strip.degree})
        kinds = " ".join(f"{r.kind}{r.degree}" for r in p.regions)
        lines.append(f"[{i}] leaves {', '.join(map(str, c.leaves))} | regions {kinds} | strip "
                     f"{'none' if strip is None else 'degree ' + str(strip.degree)}")
        if args.svg_dir:
            os.makedirs(args.svg_dir, exist_ok=True)
            with open(os.path.join(args.svg_dir, f"portrait_d{d}_{i:03d}.svg"), "w",
                      encoding="utf-8", newline="\n") as fh:
                fh.write(render_portrait(p))
    lines.append(f"{len(colls)} collections")
    _emit(args, cfg, {"image": str(image), "count": len(colls), "portraits": docs}, "\n".join(lines))
    return OK


def cmd_census(args) -> int:
    reports = [census_crosscheck(d) for d in range(args.d_min, args.d + 1)]
    cfg = _config(args, d=args.d, bounds={"d_min": args.d_min})
    ok = all(r.ok for r in reports)
    text = "\n".join(f"d={r.d}: {r} (N={r.formula}, {'ok' if r.ok else 'MISMATCH'})" for r in reports)
    _emit(args, cfg, [r.to_dict() for r in reports], text, "ok" if ok else "failed")
    return OK if ok else FAILED


def cmd_strip_verify(args) -> int:
    d = args.d
    cfg = _config(args, d=d, max_iters=args.max_iters,
                  bounds={"denominator_max": args.denominator_max, "per_denominator": args.per_denominator,
                          "image": None if args.image is None else str(args.image)})
    if args.image is not None:
        image = _image(d, args.image)
        reps = [verify_csl(d, c, args.max_iters) for c in enumerate_sibling_collections(d, image)]
        reps = [r for r in reps if r.strip is not None]
        failed = [r for r in reps if r.verdict not in (PASS, "INAPPLICABLE")]
        trunc = any(r.completeness == TRUNCATED for r in reps)
        lines = [f"[{i}] {r.verdict} {r.reason}".rstrip() for i, r in enumerate(reps)]
        status = "failed" if failed else ("TRUNCATED" if trunc else "COMPLETE")
        lines.append(f"{len(reps)} strips, {len(failed)} failures ({status})")
        _emit(args, cfg, {"image": str(image), "reports": [r.to_dict() for r in reps]}, "\n".join(lines), status)
        return FAILED if failed else (INCOMPLETE if trunc else OK)
    s = csl_sweep(d, args.denominator_max, args.per_denominator, args.seed, args.max_iters)
    status = "failed" if not s.ok else ("TRUNCATED" if s.truncated else "COMPLETE")
    verdict = f"{len(s.counterexamples)} counterexamples"
    text = (f"d={d}: {s.images} images, {s.strips} strips, {s.passed} PASS, {verdict}; "
            f"{s.same_component} one-component first reentries, {s.witnesses_valid} valid witnesses ({status})")
    _emit(args, cfg, s.to_dict(), text, status)
    return FAILED if not s.ok else (INCOMPLETE if s.truncated else OK)


def cmd_irp_search(args) -> int:
    d, k = args.d, args.k
    periods = [args.p] if args.exact else list(range(1, args.p + 1))
    cfg = _config(args, d=d, bounds={"k": k, "p": args.p, "exact": args.exact, "max_nodes": args.max_nodes})
    results = [search_irp(d, k, p, max_nodes=args.max_nodes, threads=args.threads) for p in periods]
    complete = all(r.complete for r in results)
    lines = []
    docs = []
    for r in results:
        rd = r.to_dict()
        for o in r.orbits:
            line = f"p={r.p} {o.polygons[0]}"
            if args.analyze and d == 3 and k >= 3:
                a = analyze_orbit_sigma3(o)
                cases = ",".join(str(c) for c in sorted(a.cases())) or "-"
                line += f" case {cases} {'ok' if a.ok else 'VIOLATIONS: ' + '; '.join(a.violations)}"
            lines.append(line)
        if args.analyze and d == 3 and k >= 3:
            rd["analyses"] = [analyze_orbit_sigma3(o).to_dict() for o in r.orbits]
        docs.append(rd)
    n = sum(len(r.orbits) for r in results)
    status = "complete" if complete else "INCOMPLETE"
    lines.append(f"{n} orbits found ({status})")
    bad = args.analyze and any("VIOLATIONS" in ln for ln in lines)
    _emit(args, cfg, {"count": n, "searches": docs}, "\n".join(lines), status)
    if not complete:
        return INCOMPLETE
    return FAILED if bad else OK


def cmd_irp_verify(args) -> int:
    try:
        P = Polygon(tuple(args.vertices))
    except ValueError as exc:
        raise Refusal(str(exc)) from exc
    cfg = _config(args, d=args.d, bounds={"p": args.p, "require_order": not args.no_order})
    v = is_identity_return(args.d, P, args.p, require_order=not args.no_order)
    orbit = orbit_of(args.d, P, args.p)
    text = f"{P} p={args.p}: " + ("identity return" if v else f"not identity return ({v.reason}: {v.detail})")
    _emit(args, cfg, {"polygon": str(P), "verdict": v.to_dict(), "orbit": orbit.to_dict()}, text,
          "ok" if v else "failed")
    return OK if v else FAILED


def cmd_irp_examples(args) -> int:
    d = args.d
    cfg = _config(args, d=d)
    if d < 3:
        raise Refusal("examples need d >= 3")
    items = [("period-3 d-gon", example_period3(d)), ("period-2 (d-1)-gon", example_period2(d))]
    result = {name: o.to_dict() for name, o in items}
    lines = [f"{name}: {o.polygons[0]} " + ("identity return" if o.verdict else f"FAILED ({o.verdict.reason})")
             for name, o in items]
    ok = all(o.verdict for _, o in items)
    if d == 4:
        qa = example_sigma4_quadrilateral()
        result["period-3 quadrilateral"] = qa.to_dict()
        lines.append(f"period-3 quadrilateral: {qa.orbit.polygons[0]} "
                     + ("identity return" if qa.orbit.verdict else "FAILED")
                     + f"; side {qa.side} min critical distance {format_fraction(qa.min_distance)}"
                     + (" >= 1/20" if qa.stays_away else " < 1/20"))
        ok = ok and bool(qa.orbit.verdict) and qa.stays_away
    _emit(args, cfg, result, "\n".join(lines), "ok" if ok else "failed")
    return OK if ok else FAILED


def cmd_render(args) -> int:
    kind = args.kind
    if kind == "tau":
        svg = render_tau(args.d, samples=args.samples)
    elif kind in ("portrait", "tree"):
        image = _image(args.d, args.image)
        colls = enumerate_sibling_collections(args.d, image)
        if not 0 <= args.index < len(colls):
            raise Refusal(f"index must be in 0..{len(colls) - 1}")
        p = build_portrait(colls[args.index])
        svg = render_portrait(p) if kind == "portrait" else render_tree(dual_tree(p))
    else:
        if args.p is None:
            raise Refusal("orbit rendering needs --period")
        if args.vertices:
            P = Polygon(tuple(args.vertices))
        else:
            P = example_period3(args.d).polygons[0]
        svg = render_orbit(orbit_of(args.d, P, args.p))
    _emit_svg(args, svg)
    return OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--deterministic", action="store_true", help="omit the timestamp from JSON reports")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="lamkit", description="Sibling portraits, leaf orbits and return polygons.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", parents=[common], help="leaf length map")
    p.add_argument("d", type=_degree)
    p.add_argument("x", type=_fraction, nargs="?")
    p.add_argument("--fixed", action="store_true")
    p.add_argument("--plot", action="store_true")
    p.add_argument("--samples", type=int, default=0)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("portraits", parents=[common], help="sibling collections over an image leaf")
    p.add_argument("d", type=_degree)
    p.add_argument("image", type=_chord, nargs="?")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--enumerate", action="store_true")
    g.add_argument("--census", action="store_true")
    p.add_argument("--svg-dir")
    p.set_defaults(func=cmd_portraits)

    p = sub.add_parser("census", parents=[common], help="count cross-check for degrees d_min..d")
    p.add_argument("d", type=_degree)
    p.add_argument("--d-min", type=_degree, default=2)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("strip-verify", parents=[common], help="central strip checks over sampled images")
    p.add_argument("d", type=_degree)
    p.add_argument("--denominator-max", type=int, default=200)
    p.add_argument("--per-denominator", type=int, default=4)
    p.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    p.add_argument("--image", type=_chord)
    p.set_defaults(func=cmd_strip_verify)

    irp = sub.add_parser("irp", help="identity-return polygons")
    isub = irp.add_subparsers(dest="irp_command", required=True)

    p = isub.add_parser("search", parents=[common], help="exhaustive search, periods 1..p")
    p.add_argument("d", type=_degree)
    p.add_argument("k", type=int)
    p.add_argument("p", type=int)
    p.add_argument("--exact", action="store_true", help="only period p")
    p.add_argument("--max-nodes", type=int, default=20_000_000)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--analyze", action="store_true", help="run the sigma_3 orbit analysis")
    p.set_defaults(func=cmd_irp_search)

    p = isub.add_parser("verify", parents=[common], help="test one polygon")
    p.add_argument("d", type=_degree)
    p.add_argument("p", type=int)
    p.add_argument("vertices", type=_fraction, nargs="+")
    p.add_argument("--no-order", action="store_true", help="drop the circular-order condition")
    p.set_defaults(func=cmd_irp_verify)

    p = isub.add_parser("examples", parents=[common], help="the standard example orbits")
    p.add_argument("d", type=_degree)
    p.set_defaults(func=cmd_irp_examples)

    p = sub.add_parser("render", parents=[common], help="SVG figures")
    p.add_argument("kind", choices=("tau", "portrait", "tree", "orbit"))
    p.add_argument("d", type=_degree)
    p.add_argument("--image", type=_chord)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--period", dest="p", type=int)
    p.add_argument("--vertices", type=_fraction, nargs="+")
    p.add_argument("--samples", type=int, default=0)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "irp_command", None):
        args.command = f"irp {args.irp_command}"
    try:
        return args.func(args)
    except Refusal as exc:
        print(f"lamkit: refused: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
