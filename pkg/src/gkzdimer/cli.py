"""Command-line entry point: ``python3 -m gkzdimer <command> --B '[[...],[...]]' ...``.

Every command prints one JSON document (sorted keys) to stdout.  Exit codes:
0 success, 2 invalid input, 3 determinant comparison failed, 4 surface cap hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .adet import ConjectureResult, conjecture_check, load_ea_fixture, principal_a_det
from .dessin import (
    DessinError,
    constellation_from_list,
    format_cycles,
    genus,
    quadruple_list,
    quiver_and_critical_weight,
    superpotential,
)
from .gkz import a_sequence, is_unimodular
from .kasteleyn import (
    kasteleyn_det,
    kasteleyn_matrix,
    matching_for_cone,
    newton_polygon,
    perfect_matchings,
    vertex_coefficients,
)
from .lattice import LatticeEmbedding, ValidationError, factor_antisymmetric, plucker_form, quiver_from_plucker
from .polyring import format_poly
from .secondary import area_and_interior, delta_polygon, lattice_from_polygon, secondary_fan, secondary_polygon, volume
from .surface import DEFAULT_CAP, CapExceeded, enumerate_surfaces, initial_surface

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISMATCH = 3
EXIT_CAP = 4

POLYGON_NAMES = {
    "square": [[0, 0], [1, 0], [1, 1], [0, 1]],
    "F0": [[1, 0], [0, 1], [-1, 0], [0, -1]],
}


class StageError(Exception):
    def __init__(self, stage: str, error: Exception):
        super().__init__(f"{stage}: {error}")
        self.stage = stage
        self.error = error


def _load_json(text: str, what: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{what} is not valid JSON: {exc}") from None


def _int_matrix(data, key: str):
    if isinstance(data, dict):
        if key not in data:
            raise ValidationError(f"expected an object with key {key!r}")
        data = data[key]
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ValidationError(f"{key} must be a list of rows")
    if not all(isinstance(x, int) and not isinstance(x, bool) for row in data for x in row):
        raise ValidationError(f"{key} entries must be integers")
    return [list(row) for row in data]


def lattice_from_args(args) -> tuple[LatticeEmbedding, dict]:
    given = [name for name in ("B", "C", "polygon") if getattr(args, name, None) is not None]
    if len(given) != 1:
        raise ValidationError("give exactly one of --B, --C, --polygon")
    source = given[0]
    value = getattr(args, source)
    info: dict = {"source": source}
    if source == "B":
        if value in fixtures.LATTICES or value in fixtures.EXTRA_LATTICES:
            info["name"] = value
            return fixtures.lattice(value), info
        return LatticeEmbedding(_int_matrix(_load_json(value, "--B"), "B")), info
    if source == "C":
        c = _int_matrix(_load_json(value, "--C"), "C")
        g = _int_matrix(_load_json(args.G, "--G"), "G") if getattr(args, "G", None) else None
        return factor_antisymmetric(c, g), info
    pts = POLYGON_NAMES.get(value)
    if pts is None:
        pts = _int_matrix(_load_json(value, "--polygon"), "polygon")
    lat = lattice_from_polygon(pts)
    info["polygon"] = pts
    return lat, info


# ---------------------------------------------------------------- report pieces


def _exp(v) -> list[int]:
    return [int(x) for x in v]


def lattice_report(lat: LatticeEmbedding) -> dict:
    return {
        "B": [list(r) for r in lat.B],
        "plucker": plucker_form(lat),
        "torsion": lat.torsion,
        "quiver": [list(a) for a in quiver_from_plucker(plucker_form(lat)).arrow_list()],
    }


def fan_report(lat: LatticeEmbedding) -> dict:
    cones = secondary_fan(lat)
    poly = secondary_polygon(lat)
    delta = delta_polygon(lat)
    a2, interior = area_and_interior(lat)
    return {
        "cones": [
            {
                "right": [i + 1 for i in c.right],
                "left": [i + 1 for i in c.left],
                "pairs": [[k + 1, l + 1, w] for k, l, w in c.pairs],
                "psi": _exp(c.psi),
            }
            for c in cones
        ],
        "secondary_vertices": [_exp(v) for v in poly.vertices],
        "delta": {
            "order": [i + 1 for i in delta.order],
            "vertices": [list(v) for v in delta.vertices],
            "twice_area": a2,
            "interior_points": interior,
        },
        "vol_A": volume(lat),
    }


def gkz_report(lat: LatticeEmbedding) -> dict:
    seq = a_sequence(lat)
    return {
        "a_vectors": [list(a) for a in seq.free],
        "torsion_orders": list(seq.torsion_orders),
        "torsion_labels": [list(t) for t in seq.torsion],
        "vol_A": volume(lat),
        "unimodular": is_unimodular(lat),
    }


def _surfaces(lat: LatticeEmbedding, args):
    start = initial_surface(lat, seed=args.seed)
    return enumerate_surfaces(start, cap=args.cap, first_step_only=getattr(args, "first_step_only", False))


def _weights(args):
    return args.weights if args.weights in ("unit", "critical", "symbolic") else _numeric_weights(args.weights)


def _numeric_weights(text: str) -> dict[int, int]:
    data = _load_json(text, "--weights")
    if isinstance(data, list):
        data = {str(k + 1): v for k, v in enumerate(data)}
    if not isinstance(data, dict):
        raise ValidationError("numeric weights must be a list or an object")
    out = {int(k): int(v) for k, v in data.items()}
    if any(v == 0 for v in out.values()):
        raise ValidationError("weights must be nonzero")
    return out


def _e_a_source(lat: LatticeEmbedding, args):
    if getattr(args, "ea_fixture", None):
        return load_ea_fixture(args.ea_fixture), "fixture"
    try:
        return principal_a_det(lat), "computed"
    except ValidationError:
        return None, None


def conjecture_report(result: ConjectureResult | None, source: str | None) -> dict:
    if result is None:
        return {"status": "no E_A source", "source": None}
    return {
        "status": "holds" if result.holds else "fails",
        "sign": result.sign,
        "source": source,
        "lhs": format_poly(result.lhs),
        "rhs": format_poly(result.rhs),
        "matched": [_exp(k) for k in result.matched()],
        "diffs": [[_exp(k), a, b] for k, a, b in result.discrepancies()],
    }


def dessin_report(lat: LatticeEmbedding, dessin, weights, e_a=None, source=None, mirror=False) -> dict:
    con = constellation_from_list(dessin, mirror=mirror)
    det = kasteleyn_det(dessin, weights)
    report = {
        "list": [
            {"e": e, "b": b, "w": w, "r": r, "rp": rp} for e, b, w, r, rp in dessin.rows()
        ],
        "sigma0": format_cycles(con.cycles0()),
        "sigma1": format_cycles(con.cycles1()),
        "superpotential": superpotential(con),
        "critical_weight": list(quiver_and_critical_weight(dessin).critical),
        "genus": genus(dessin),
        "matrix": [[format_poly(x) for x in row] for row in kasteleyn_matrix(dessin, weights).entries],
        "det": format_poly(det),
        "matchings": len(perfect_matchings(dessin)),
    }
    target = {tuple(v) for v in secondary_polygon(lat).vertices}
    report["newton_equals_secondary"] = set(newton_polygon(det, lat).vertices) == target
    coeffs = vertex_coefficients(dessin, lat)
    report["vertex_coefficients_ok"] = all(abs(c) == want for c, want in coeffs.values())
    report["cone_matchings"] = [list(matching_for_cone(dessin, c)) for c in secondary_fan(lat)]
    if e_a is not None:
        report["conjecture"] = conjecture_report(conjecture_check(dessin, lat, e_a), source)
    else:
        report["conjecture"] = conjecture_report(None, None)
    return report


def _select(items, index):
    if index is None:
        return list(enumerate(items, 1))
    if not 1 <= index <= len(items):
        raise ValidationError(f"--dessin must be between 1 and {len(items)}")
    return [(index, items[index - 1])]


# ---------------------------------------------------------------- commands


def cmd_analyze(args) -> tuple[dict, int]:
    stage = "lattice"
    try:
        lat, info = lattice_from_args(args)
        report: dict = {"input": info, "lattice": lattice_report(lat)}
        stage = "secondary"
        report["fan"] = fan_report(lat)
        stage = "gkz"
        report["gkz"] = gkz_report(lat)
        stage = "surface"
        enum = _surfaces(lat, args)
        perfect = enum.perfect()
        report["surfaces"] = {"count": len(enum), "complete": enum.complete, "perfect": len(perfect)}
        stage = "adet"
        e_a, source = _e_a_source(lat, args)
        stage = "dessin"
        dessins = []
        status = EXIT_OK
        for k, surf in _select(perfect, args.dessin):
            d = dessin_report(lat, quadruple_list(surf), _weights(args), e_a, source, args.mirror)
            d["index"] = k
            dessins.append(d)
            if d["conjecture"]["status"] == "fails":
                status = EXIT_MISMATCH
        report["dessins"] = dessins
        return report, status
    except (ValidationError, DessinError, CapExceeded) as exc:
        raise StageError(stage, exc) from exc


def cmd_fan(args):
    lat, info = lattice_from_args(args)
    report = {"input": info, "lattice": lattice_report(lat), "fan": fan_report(lat)}
    if args.svg:
        from .svg import fan_svg

        Path(args.svg).write_text(fan_svg(lat))
    return report, EXIT_OK


def cmd_gkz(args):
    lat, info = lattice_from_args(args)
    return {"input": info, "gkz": gkz_report(lat)}, EXIT_OK


def cmd_surface(args):
    lat, info = lattice_from_args(args)
    enum = _surfaces(lat, args)
    perfect = enum.perfect()
    surfaces = []
    for k, s in enumerate(enum.surfaces, 1):
        surfaces.append(
            {
                "index": k,
                "perfect": s.is_perfect(),
                "levels": s.level_values(),
                "squares": sorted([[list(c), i + 1, j + 1] for c, i, j in s.squares]),
            }
        )
    report = {
        "input": info,
        "count": len(enum),
        "complete": enum.complete,
        "perfect": len(perfect),
        "surfaces": surfaces if args.full else None,
    }
    if args.svg and perfect:
        from .svg import surface_svg

        Path(args.svg).write_text(surface_svg(perfect[0], zigzag=args.zigzag))
    return report, EXIT_OK


def cmd_dessin(args):
    lat, info = lattice_from_args(args)
    perfect = _surfaces(lat, args).perfect()
    out = []
    for k, surf in _select(perfect, args.dessin):
        d = quadruple_list(surf)
        con = constellation_from_list(d, mirror=args.mirror)
        out.append(
            {
                "index": k,
                "list": [{"e": e, "b": b, "w": w, "r": r, "rp": rp} for e, b, w, r, rp in d.rows()],
                "sigma0": format_cycles(con.cycles0()),
                "sigma1": format_cycles(con.cycles1()),
                "superpotential": superpotential(con),
                "genus": genus(d),
            }
        )
    return {"input": info, "dessins": out}, EXIT_OK


def cmd_kasteleyn(args):
    lat, info = lattice_from_args(args)
    perfect = _surfaces(lat, args).perfect()
    weights = _weights(args)
    out = []
    for k, surf in _select(perfect, args.dessin if args.dessin is not None else 1):
        d = quadruple_list(surf)
        det = kasteleyn_det(d, weights)
        out.append(
            {
                "index": k,
                "matrix": [[format_poly(x) for x in row] for row in kasteleyn_matrix(d, weights).entries],
                "det": format_poly(det),
            }
        )
    return {"input": info, "weights": args.weights, "dessins": out}, EXIT_OK


def cmd_adet(args):
    lat, info = lattice_from_args(args)
    e_a, source = _e_a_source(lat, args)
    if e_a is None:
        raise ValidationError("E_A can only be computed for torsion-free one-variable supports; pass --ea-fixture")
    perfect = _surfaces(lat, args).perfect()
    reports = []
    status = EXIT_OK
    for k, surf in _select(perfect, args.dessin):
        rep = conjecture_report(conjecture_check(quadruple_list(surf), lat, e_a), source)
        rep["index"] = k
        reports.append(rep)
        if rep["status"] != "holds":
            status = EXIT_MISMATCH
    overall = "holds" if status == EXIT_OK and reports else ("no perfect surface" if not reports else "fails")
    return {"input": info, "E_A": format_poly(e_a), "status": overall, "dessins": reports}, status


def cmd_svg(args):
    from .svg import fan_svg, polygon_svg, surface_svg

    lat, info = lattice_from_args(args)
    base = Path(args.svg or "out.svg")
    written = []
    if args.fan:
        path = base.with_name(base.stem + "_fan.svg")
        path.write_text(fan_svg(lat))
        written.append(str(path))
        path = base.with_name(base.stem + "_delta.svg")
        path.write_text(polygon_svg(delta_polygon(lat).vertices))
        written.append(str(path))
    perfect = _surfaces(lat, args).perfect()
    if perfect:
        k, surf = _select(perfect, args.dessin if args.dessin is not None else 1)[0]
        base.write_text(surface_svg(surf, zigzag=args.zigzag))
        written.append(str(base))
    return {"input": info, "written": written}, EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "fan": cmd_fan,
    "gkz": cmd_gkz,
    "surface": cmd_surface,
    "dessin": cmd_dessin,
    "kasteleyn": cmd_kasteleyn,
    "adet": cmd_adet,
    "svg": cmd_svg,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gkzdimer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--B", help="2xN matrix as JSON, @file, or a fixture name such as B2")
        p.add_argument("--C", help="antisymmetric N x N Plücker matrix as JSON or @file")
        p.add_argument("--G", help="2x2 factor of determinant gcd(C) used with --C")
        p.add_argument("--polygon", help="lattice polygon points as JSON, @file, or 'square'")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)
        p.add_argument("--weights", default="critical", help="unit, critical, symbolic, or JSON list/object")
        p.add_argument("--svg", help="output path for an SVG drawing")
        p.add_argument("--ea-fixture", help="JSON file holding E_A")
        p.add_argument("--dessin", type=int, help="1-based index of the perfect surface to use")
        p.add_argument("--zigzag", action="store_true", help="overlay zigzag paths in tiling drawings")
        p.add_argument("--fan", action="store_true", help="also draw the secondary fan and Delta")
        p.add_argument("--first-step-only", action="store_true", help="only the start surface and its flips")
        p.add_argument("--mirror", action="store_true", help="use the opposite orientation for constellations")
        p.add_argument("--full", action="store_true", help="list every surface")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, status = COMMANDS[args.command](args)
    except StageError as exc:
        code = EXIT_CAP if isinstance(exc.error, CapExceeded) else EXIT_INVALID
        print(json.dumps({"error": str(exc.error), "stage": exc.stage}, sort_keys=True), file=sys.stderr)
        return code
    except CapExceeded as exc:
        print(json.dumps({"error": str(exc), "stage": "surface"}, sort_keys=True), file=sys.stderr)
        return EXIT_CAP
    except (ValidationError, DessinError, OSError) as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps(report, sort_keys=True, indent=1))
    return status


if __name__ == "__main__":
    sys.exit(main())
