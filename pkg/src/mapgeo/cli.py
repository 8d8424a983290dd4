"""Command-line front end.

Subcommands: classify, trace, curvature, area, bundle, enumerate, pseudo,
render. Exit codes: 0 success, 1 domain error, 2 usage error. Numeric
output is deterministic for fixed inputs; rationals are printed as p/q.
PNG figures are optional companions to the CSV/SVG outputs.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from fractions import Fraction

from . import bundles, enumeration, map_core, mline, polygon, pseudo_plane, svg
from .errors import MapGeometryError


def parse_map_file(path: str) -> map_core.PlanarMap:
    with open(path, "r", encoding="utf-8") as fh:
        return map_core.parse_map_text(fh.read())


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    return (float(parts[0]), float(parts[1]))


def _parse_edge_list(text: str) -> list[tuple[int, int]]:
    out = []
    for token in text.split(","):
        sep = "-" if "-" in token else ":"
        parts = token.split(sep)
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(
                f"expected edges like 'u-v,u-v', got {token!r}"
            )
        out.append((int(parts[0]), int(parts[1])))
    return out


def _rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# --- subcommand handlers ------------------------------------------------------


def _cmd_classify(args: argparse.Namespace) -> int:
    pmap = parse_map_file(args.map)
    rows = []
    for vid in sorted(pmap.vertices):
        cls = map_core.classify_vertex(pmap, vid)
        rows.append(("vertex", vid, cls.value, repr(pmap.vertex_angle(vid))))
        print(f"vertex {vid}: {cls.value} (total angle {pmap.vertex_angle(vid)!r})")
    for e in sorted(pmap.edges, key=lambda e: tuple(sorted(e.endpoints))):
        cls = map_core.classify_edge(pmap, e.endpoints)
        u, v = sorted(e.endpoints)
        rows.append(("edge", f"{u}-{v}", cls.name, cls.value))
        print(f"edge {u}-{v}: {cls.name} ({cls.value})")
    report = map_core.census(pmap)
    print(
        f"census: el={report.elliptic_vertices} eu={report.euclidean_vertices} "
        f"hy={report.hyperbolic_vertices} faces={report.faces}"
    )
    print(f"degree identity: {report.degree_identity}")
    print(f"count identity: {report.count_identity}")
    print(f"infinite non-euclidean points: {map_core.has_infinite_noneuclidean(pmap)}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["kind", "id", "class", "detail"])
            writer.writerows(rows)
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    pmap = parse_map_file(args.map)
    cfg = mline.TraceConfig(max_crossings=args.max_crossings)
    trace = mline.trace_mline(pmap, args.start, args.dir, cfg)
    print(f"classification: {trace.classification.value}")
    print(f"crossings: {len(trace.crossings)}")
    print(f"total length: {trace.total_length!r}")
    if trace.crossings:
        f_sum = sum(ev.f_value for ev in trace.crossings)
        print(f"angle sum: {f_sum!r}")
        print(f"curvature: {mline.curvature(trace)!r}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x0", "y0", "x1", "y1"])
            for a, b in trace.segments:
                writer.writerow([repr(a[0]), repr(a[1]), repr(b[0]), repr(b[1])])
    if args.svg:
        spec = svg.RenderSpec(canvas=(args.canvas, args.canvas))
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg.render_svg(pmap, [trace], spec))
    if args.png:
        from . import figures

        figures.save_map_figure(
            pmap, args.png, [trace], title=trace.classification.value
        )
    return 0


def _cmd_curvature(args: argparse.Namespace) -> int:
    pmap = parse_map_file(args.map)
    report = mline.map_total_curvature(pmap, steps=args.steps)
    print(f"computed: {report.computed!r}")
    print(f"claimed (2*pi*s): {report.claimed!r}")
    print(f"difference: {report.difference!r}")
    return 0


def _parse_chain_line(line: str) -> polygon.SideChain:
    """`chain <kind> a b c1 ... c_{p+1} | f1 ... fp`"""
    parts = line.split()
    if len(parts) < 3 or parts[0] != "chain":
        raise MapGeometryError(f"malformed chain line: {line!r}")
    kind = polygon.ChainKind(parts[1])
    if "|" not in parts:
        raise MapGeometryError("chain line needs '|' between lengths and angles")
    bar = parts.index("|")
    numbers = [float(t) for t in parts[2:bar]]
    f_values = [float(t) for t in parts[bar + 1 :]]
    if len(numbers) < 4:
        raise MapGeometryError("chain needs a, b and at least two sub-segments")
    a, b = numbers[0], numbers[1]
    c = tuple(numbers[2:])
    return polygon.SideChain(a, b, c, tuple(f_values), kind)


def _cmd_area(args: argparse.Namespace) -> int:
    chain = _parse_chain_line(args.chain)
    area = polygon.chain_area(chain)
    print(f"area: {area!r}")
    return 0


def _cmd_bundle(args: argparse.Namespace) -> int:
    pmap = parse_map_file(args.map)
    edges = _parse_edge_list(args.cut)
    cut = bundles.cut_from_map(pmap, edges, require_cut=not args.no_cut_check)
    if args.mode == "general":
        verdict = bundles.is_parallel_bundle(cut)
        print(f"parallel bundle: {verdict.ok}")
        if not verdict.ok:
            print(f"first violated prefix: k={verdict.violated_prefix} x={verdict.violated_x}")
    elif args.mode == "linear":
        print(f"linear bundle check: {bundles.linear_bundle_check(cut)}")
    elif args.mode == "sufficient":
        print(f"per-edge sufficient condition: {bundles.sufficient_per_edge(cut)}")
    elif args.mode == "exit":
        print(f"exits parallel: {bundles.exits_parallel(cut)}")
    else:
        print(f"parallel to initial at x=0: {bundles.parallel_to_initial(cut, 0.0)}")
    if args.simulate:
        ok = bundles.simulate_bundle(cut, ray_count=args.simulate, pmap=pmap, edges=edges)
        print(f"simulated {args.simulate} rays: {'disjoint' if ok else 'intersecting'}")
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    pairs = []
    with open(args.graph, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            u, v = line.split()
            pairs.append((int(u), int(v)))
    graph = enumeration.SimpleGraph.from_edges(
        pairs, allow_low_degree=args.allow_low_degree
    )
    report = enumeration.enumeration_report(graph, threads=args.threads)
    name = args.name or args.graph
    print(f"graph: {name}")
    print(f"nu={report.nu} eps={report.eps} betti={report.betti} aut={report.aut_order}")
    print(f"genus polynomial: {report.genus_polynomial}")
    print(f"n_O={_rational(report.n_orientable)} n_N={_rational(report.n_nonorientable)}")
    print(
        f"n_O_boundary={_rational(report.n_orientable_boundary)} "
        f"n_N_boundary={_rational(report.n_nonorientable_boundary)}"
    )
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["graph", "nu", "eps", "betti", "aut", "genus_poly",
                 "n_O", "n_N", "n_O_b", "n_N_b"]
            )
            writer.writerow(
                [
                    name,
                    report.nu,
                    report.eps,
                    report.betti,
                    report.aut_order,
                    str(report.genus_polynomial),
                    _rational(report.n_orientable),
                    _rational(report.n_nonorientable),
                    _rational(report.n_orientable_boundary),
                    _rational(report.n_nonorientable_boundary),
                ]
            )
    return 0


_LIFTED_HEIGHTS = {
    "zero": lambda x, y: 0.0,
    "x": lambda x, y: x,
    "y": lambda x, y: y,
    "x+y": lambda x, y: x + y,
    "r2": lambda x, y: x * x + y * y,
    "cone": lambda x, y: math.hypot(x, y),
}


def _parse_field(text: str) -> pseudo_plane.OmegaField:
    kind, _, rest = text.partition(":")
    if kind == "constant":
        return pseudo_plane.ConstantField(float(rest))
    if kind == "ring":
        rho0, theta0, branch = rest.split(",")
        return pseudo_plane.limiting_ring_field(float(rho0), float(theta0), branch)
    if kind == "lifted":
        if rest not in _LIFTED_HEIGHTS:
            raise MapGeometryError(
                f"unknown lifted height {rest!r}; choose from {sorted(_LIFTED_HEIGHTS)}"
            )
        return pseudo_plane.lift_omega(_LIFTED_HEIGHTS[rest])
    if kind == "grid":
        return _load_grid_field(rest)
    raise MapGeometryError(f"unknown field spec {text!r}")


def _load_grid_field(path: str) -> pseudo_plane.GridField:
    """Grid file: first line `xs: x1 x2 ...`, second `ys: y1 y2 ...`, then
    one row of omega values per y."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    xs = [float(t) for t in lines[0].split(":", 1)[1].split()]
    ys = [float(t) for t in lines[1].split(":", 1)[1].split()]
    values = [[float(t) for t in ln.split()] for ln in lines[2:]]
    return pseudo_plane.GridField(xs, ys, values)


def _cmd_pseudo(args: argparse.Namespace) -> int:
    field = _parse_field(args.field)
    rect = args.rect
    print(f"field class over {rect}: {pseudo_plane.classify_field(field, rect).value}")
    orbits = []
    if args.orbit is not None:
        if isinstance(field, pseudo_plane.RadialRingField):
            p, q = field.companion_system()
        else:
            p, q = (lambda x, y: -y), (lambda x, y: x)  # default rotation field
        orbit = pseudo_plane.integrate_ode(p, q, args.orbit, args.step, args.horizon)
        orbits.append(orbit)
        print(f"orbit status: {orbit.status.value} ({len(orbit.points)} points)")
        print(f"final point: {orbit.points[-1]!r}")
        print(f"final radius: {orbit.radii()[-1]!r}")
        if args.csv:
            with open(args.csv, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["t", "x", "y"])
                for t, (x, y) in zip(orbit.times, orbit.points):
                    writer.writerow([repr(t), repr(x), repr(y)])
    if args.svg and orbits:
        doc = svg.SvgCanvas(args.canvas, args.canvas, _orbit_viewport(orbits))
        for orbit in orbits:
            doc.polyline(list(orbit.points), "#1f77b4", 1.5)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(doc.to_text())
    if args.png and orbits:
        from . import figures

        figures.save_orbit_figure(orbits, args.png, title=args.field)
    return 0


def _orbit_viewport(orbits) -> tuple[float, float, float, float]:
    xs = [p[0] for orbit in orbits for p in orbit.points]
    ys = [p[1] for orbit in orbits for p in orbit.points]
    pad = 0.1 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _cmd_render(args: argparse.Namespace) -> int:
    pmap = parse_map_file(args.map)
    spec = svg.RenderSpec(canvas=(args.canvas, args.canvas))
    text = svg.render_svg(pmap, [], spec)
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.svg}")
    if args.png:
        from . import figures

        figures.save_map_figure(pmap, args.png)
        print(f"wrote {args.png}")
    return 0


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mapgeo",
        description="Angle-factored planar map geometries and pseudo-planes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify vertices, edges and census identities")
    p.add_argument("--map", required=True)
    p.add_argument("--csv")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("trace", help="trace an m-line through a map")
    p.add_argument("--map", required=True)
    p.add_argument("--start", type=_parse_pair, required=True)
    p.add_argument("--dir", type=_parse_pair, required=True)
    p.add_argument("--max-crossings", type=int, default=10_000)
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.add_argument("--png")
    p.add_argument("--canvas", type=int, default=800)
    p.set_defaults(handler=_cmd_trace)

    p = sub.add_parser("curvature", help="total map curvature report")
    p.add_argument("--map", required=True)
    p.add_argument("--steps", type=int, default=64)
    p.set_defaults(handler=_cmd_curvature)

    p = sub.add_parser("area", help="area of a bent-side triangle chain")
    p.add_argument(
        "chain",
        help="'chain <elliptic|hyperbolic> a b c1 ... c_{p+1} | f1 ... fp'",
    )
    p.set_defaults(handler=_cmd_area)

    p = sub.add_parser("bundle", help="parallel-bundle conditions for a cut")
    p.add_argument("--map", required=True)
    p.add_argument("--cut", required=True, help="edges as 'u-v,u-v,...'")
    p.add_argument(
        "--mode",
        choices=["general", "linear", "sufficient", "exit", "initial"],
        default="general",
    )
    p.add_argument("--simulate", type=int, default=0, metavar="N")
    p.add_argument("--no-cut-check", action="store_true")
    p.set_defaults(handler=_cmd_bundle)

    p = sub.add_parser("enumerate", help="map-geometry counts for a simple graph")
    p.add_argument("--graph", required=True, help="edge list file, one 'u v' per line")
    p.add_argument("--csv")
    p.add_argument("--name")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--allow-low-degree", action="store_true")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("pseudo", help="pseudo-plane fields and orbits")
    p.add_argument(
        "--field",
        required=True,
        help="constant:ETA | ring:RHO0,THETA0,{+,-} | lifted:EXPR-ID | grid:FILE",
    )
    p.add_argument("--rect", type=float, nargs=4, default=(0.25, 0.25, 4.0, 4.0),
                   metavar=("XMIN", "YMIN", "XMAX", "YMAX"))
    p.add_argument("--orbit", type=_parse_pair)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--horizon", type=float, default=50.0)
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.add_argument("--png")
    p.add_argument("--canvas", type=int, default=800)
    p.set_defaults(handler=_cmd_pseudo)

    p = sub.add_parser("render", help="render a map to SVG/PNG")
    p.add_argument("--map", required=True)
    p.add_argument("--svg", required=True)
    p.add_argument("--png")
    p.add_argument("--canvas", type=int, default=800)
    p.set_defaults(handler=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except MapGeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
