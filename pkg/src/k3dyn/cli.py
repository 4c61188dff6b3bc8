"""Command-line entry point: lattice certificates, surface dynamics,
mod-p censuses and measure plumbing behind one `k3dyn` command.

Machine-readable output (JSON or CSV) by default, `--human` for tables;
exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, fixtures, heights, lattice, measures, modp
from .dynamics import DegenerateFiber, orbit_segment, search_points
from .heights import canonical_height, naive_height
from .measures import PointCloud, box_discrepancy, export_cloud
from .modp import DegenerateReduction
from .surface import format_point, load_surface, parse_point, validate_arrays


def _emit(doc, human: bool, human_lines=None):
    if human and human_lines is not None:
        for line in human_lines:
            print(line)
    else:
        print(json.dumps(doc, sort_keys=True, indent=2))


def _load_surface_arg(value: str):
    if value == "S0":
        return fixtures.surface_s0()
    return load_surface(value)


def _surface_point(surface, literal: str):
    x, y, field = parse_point(literal)
    return surface.point(x, y, field)


def _scan_to_doc(scan: lattice.PolarizationScan) -> dict:
    return {
        "polarizable": scan.polarizable,
        "threshold": scan.threshold,
        "certificates": [{
            "q": str(c.q),
            "witness": list(c.witness.coeffs),
            "eigenbasis": [list(b.coeffs) for b in c.eigenbasis],
            "verified": c.verified,
        } for c in scan.certificates],
        "diagnostics": [{
            "q": str(d.q),
            "eigenbasis": [list(b.coeffs) for b in d.eigenbasis],
            "cone_witness": list(d.cone_witness.coeffs) if d.cone_witness else None,
            "exceeds_threshold": d.exceeds_threshold,
        } for d in scan.diagnostics],
    }


def _scan_human(name: str, scan: lattice.PolarizationScan) -> list[str]:
    lines = [f"system: {name} ({scan.threshold} maps)"]
    if scan.polarizable:
        for c in scan.certificates:
            lines.append(f"  polarizable: q = {c.q}, witness {c.witness}, "
                         f"eigenspace dim {len(c.eigenbasis)}")
    else:
        lines.append("  not polarizable")
    for d in scan.diagnostics:
        w = f", cone witness {d.cone_witness}" if d.cone_witness else ""
        lines.append(f"  eigenvalue {d.q}"
                     f" (eigenspace dim {len(d.eigenbasis)}{w})")
    return lines


def cmd_picard_check(args) -> int:
    if args.fixture:
        system, cone = fixtures.fixture_system(args.fixture)
        name = args.fixture
    else:
        system, cone = lattice.load_system(args.input)
        name = args.input
    scan = lattice.find_polarizations(system, cone)
    doc = {"system": name, **_scan_to_doc(scan)}
    _emit(doc, args.human, _scan_human(name, scan))
    return 0


def cmd_picard_power(args) -> int:
    system, cone = fixtures.fixture_system(args.fixture)
    base = system.maps[0]
    pair = lattice.power_pair(base, args.m)
    scan = lattice.find_polarizations(pair, cone)
    doc = {
        "fixture": args.fixture,
        "base_map": base.label,
        "m": args.m,
        "tensor_sum": [list(r) for r in lattice.tensor_sum(pair)],
        **_scan_to_doc(scan),
    }
    _emit(doc, args.human, [f"power pair of {base.label}^{args.m}:"]
          + _scan_human(f"{args.fixture}^{args.m}", scan))
    return 0


def cmd_picard_dump(args) -> int:
    system, cone = fixtures.fixture_system(args.fixture)
    doc = lattice.system_to_dict(system, cone)
    text = json.dumps(doc, sort_keys=True, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_chebyshev(args) -> int:
    q = Fraction(args.q)
    print(lattice.chebyshev_degree(q, args.m))
    return 0


def cmd_wehler_orbit(args) -> int:
    surface = _load_surface_arg(args.surface)
    point = _surface_point(surface, args.point)
    seg = orbit_segment(surface, point, args.n)
    entries = []
    for k in sorted(seg):
        entry = {"k": k, "point": format_point(seg[k])}
        try:
            entry["naive_height"] = naive_height(seg[k])
        except ValueError:
            pass
        entries.append(entry)
    _emit({"surface": args.surface, "orbit": entries}, args.human,
          [f"sigma^{e['k']:+d}  h={e.get('naive_height', float('nan')):10.4f}  {e['point']}"
           for e in entries])
    return 0


def cmd_wehler_canheight(args) -> int:
    surface = _load_surface_arg(args.surface)
    point = _surface_point(surface, args.point)
    est = canonical_height(surface, point, args.depth,
                           q=Fraction(args.q), truncate=args.truncate)
    doc = {"point": args.point, "value": est.value, "depth": est.depth,
           "delta": est.delta, "dropped_mass": est.dropped_mass,
           "q": args.q}
    _emit(doc, args.human, [str(est)])
    return 0


def cmd_wehler_search(args) -> int:
    surface = _load_surface_arg(args.surface)
    found = search_points(surface, args.bound, with_quadratic=args.with_quadratic)
    entries = []
    for p in found:
        entry = {"point": format_point(p)}
        try:
            entry["naive_height"] = naive_height(p)
        except ValueError:
            pass
        entries.append(entry)
    doc = {"surface": args.surface, "bound": args.bound,
           "count": len(found), "skipped_degenerate_fibers": found.skipped,
           "points": entries}
    _emit(doc, args.human,
          [f"{len(found)} points (skipped {found.skipped} degenerate fibers)"]
          + [f"  h={e.get('naive_height', float('nan')):9.4f}  {e['point']}"
             for e in entries])
    return 0


def cmd_wehler_validate(args) -> int:
    if args.surface == "S0":
        s = fixtures.surface_s0()
        f, g = s.f, s.g
    else:
        with open(args.surface) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as e:
                raise ValueError(f"{args.surface}: invalid JSON at line "
                                 f"{e.lineno}, column {e.colno}: {e.msg}") from e
        try:
            f, g = doc["F"], doc["G"]
        except KeyError as e:
            raise ValueError(f"surface file: missing field {e}") from e
    diag = validate_arrays(f, g, probes=args.probes, seed=args.seed)
    _emit({"surface": args.surface, "degenerate": diag.degenerate,
           "messages": diag.messages}, args.human, diag.messages)
    return 0


def cmd_modp_cycles(args) -> int:
    surface = _load_surface_arg(args.surface)
    primes = [int(tok) for tok in args.primes.split(",") if tok.strip()]
    parts, csv_text, warnings = modp.periodic_report(surface, primes)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.human:
        for part in parts:
            print(f"p={part.p}: {part.total_points} points, "
                  f"{part.closed_points} on cycles "
                  f"({part.cycles} cycles, max {part.max_cycle}, "
                  f"mean {part.mean_cycle:.2f})")
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_measure_cloud(args) -> int:
    surface = _load_surface_arg(args.surface)
    points = []
    tags = None
    if args.points:
        with open(args.points) as fh:
            literals = [ln.strip() for ln in fh
                        if ln.strip() and not ln.lstrip().startswith("#")]
        points = [_surface_point(surface, lit) for lit in literals]
    elif args.orbit:
        point = _surface_point(surface, args.orbit)
        seg = orbit_segment(surface, point, args.n)
        points = [seg[k] for k in sorted(seg)]
        tags = [f"sigma^{k:+d}" for k in sorted(seg)]
    else:
        raise ValueError("measure cloud needs --points FILE or --orbit LITERAL")
    cloud = export_cloud(points, chart=args.chart, tags=tags)
    text = cloud.to_csv()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_measure_discrepancy(args) -> int:
    with open(args.cloud_a) as fh:
        cloud_a = PointCloud.from_csv(fh.read())
    with open(args.cloud_b) as fh:
        cloud_b = PointCloud.from_csv(fh.read())
    print(box_discrepancy(cloud_a, cloud_b, args.grid))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3dyn",
        description="Exact K3 dynamics: lattice polarization certificates, "
                    "Wehler involutions, heights, mod-p censuses, point clouds.")
    parser.add_argument("--version", action="version",
                        version=f"k3dyn {__version__} "
                                f"(fixtures {fixtures.registry_hash()[:12]})")
    parser.add_argument("--human", action="store_true",
                        help="tables instead of JSON/CSV")
    sub = parser.add_subparsers(dest="command", required=True)

    picard = sub.add_parser("picard", help="Picard-lattice certificates")
    psub = picard.add_subparsers(dest="subcommand", required=True)
    check = psub.add_parser("check", help="scan a system for polarizations")
    src = check.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="lattice-system JSON file")
    src.add_argument("--fixture", choices=fixtures.fixture_names())
    check.set_defaults(func=cmd_picard_check)
    power = psub.add_parser("power", help="certify the power pair {A^m, A^-m}")
    power.add_argument("--fixture", required=True, choices=fixtures.fixture_names())
    power.add_argument("-m", type=int, required=True)
    power.set_defaults(func=cmd_picard_power)
    dump = psub.add_parser("dump", help="write a fixture system as JSON")
    dump.add_argument("--fixture", required=True, choices=fixtures.fixture_names())
    dump.add_argument("-o", "--output")
    dump.set_defaults(func=cmd_picard_dump)

    cheb = sub.add_parser("chebyshev", help="power-pair multiplier recurrence")
    cheb.add_argument("-q", required=True, help="base multiplier (rational)")
    cheb.add_argument("-m", type=int, required=True)
    cheb.set_defaults(func=cmd_chebyshev)

    wehler = sub.add_parser("wehler", help="surface dynamics over Q")
    wsub = wehler.add_subparsers(dest="subcommand", required=True)
    orbit = wsub.add_parser("orbit", help="orbit segment sigma^k(P), k=-n..n")
    orbit.add_argument("--surface", required=True, help="surface JSON file or S0")
    orbit.add_argument("--point", required=True, help="point literal [x0:x1:x2]x[y0:y1:y2]")
    orbit.add_argument("-n", type=int, required=True)
    orbit.set_defaults(func=cmd_wehler_orbit)
    canh = wsub.add_parser("canheight", help="monoid-average canonical height")
    canh.add_argument("--surface", required=True)
    canh.add_argument("--point", required=True)
    canh.add_argument("-N", "--depth", type=int, required=True, dest="depth")
    canh.add_argument("--truncate", type=int, default=None,
                      help="drop orbit terms beyond this radius")
    canh.add_argument("--q", default=str(heights.SIGMA_PAIR_MULTIPLIER),
                      help="functional-equation multiplier (default 14)")
    canh.set_defaults(func=cmd_wehler_canheight)
    search = wsub.add_parser("search", help="small points with x in a box")
    search.add_argument("--surface", required=True)
    search.add_argument("-B", "--bound", type=int, required=True, dest="bound")
    search.add_argument("--with-quadratic", action="store_true")
    search.set_defaults(func=cmd_wehler_search)
    vali = wsub.add_parser("validate", help="degeneracy probe report")
    vali.add_argument("--surface", required=True)
    vali.add_argument("--probes", type=int, default=200)
    vali.add_argument("--seed", type=int, default=0)
    vali.set_defaults(func=cmd_wehler_validate)

    modp_p = sub.add_parser("modp", help="finite-field censuses")
    msub = modp_p.add_subparsers(dest="subcommand", required=True)
    cycles = msub.add_parser("cycles", help="sigma cycle census per prime")
    cycles.add_argument("--surface", required=True)
    cycles.add_argument("-p", "--primes", required=True,
                        help="comma-separated primes")
    cycles.set_defaults(func=cmd_modp_cycles)

    measure = sub.add_parser("measure", help="point clouds and discrepancy")
    mesub = measure.add_subparsers(dest="subcommand", required=True)
    cloud = mesub.add_parser("cloud", help="export an affine-chart point cloud")
    cloud.add_argument("--surface", required=True)
    cloud.add_argument("--points", help="file of point literals, one per line")
    cloud.add_argument("--orbit", help="point literal; export its orbit segment")
    cloud.add_argument("-n", type=int, default=4, help="orbit radius with --orbit")
    cloud.add_argument("--chart", default=measures.DEFAULT_CHART)
    cloud.add_argument("-o", "--output")
    cloud.set_defaults(func=cmd_measure_cloud)
    disc = mesub.add_parser("discrepancy", help="max cell-fraction gap of two clouds")
    disc.add_argument("cloud_a")
    disc.add_argument("cloud_b")
    disc.add_argument("-g", "--grid", type=int, required=True)
    disc.set_defaults(func=cmd_measure_discrepancy)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, DegenerateFiber,
            DegenerateReduction, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
