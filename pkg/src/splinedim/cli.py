"""Command-line front end.

JSON report on stdout (stable key order), a short human summary on
stderr.  Exit codes: 0 success, 2 validation or pipeline failure, 3
method disagreement under `dim --method both`.  Timing lives in a
sidecar field so reports stay byte-stable for golden comparisons.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import os
import sys
import time

from . import contraction, edge_injective, spline_matrix, triangulation_frontend
from .errors import NoneExists, NotFound, SplinedimError
from .exact_algebra import format_rational, rank, rational
from .graph_model import (
    EdgeLabel,
    PlanarGraph,
    graph_from_dict,
    graph_to_dict,
    validate,
)
from .triangulation_frontend import Triangulation


def _edge_names(n: int) -> list[str]:
    return ["a%d" % (i + 1) for i in range(n)]


def _load_input(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "triangles" in data:
        return triangulation_frontend.triangulation_from_dict(data)
    return graph_from_dict(data)


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _parse_labels(spec: str) -> dict[int, EdgeLabel]:
    """`--labels` argument: a JSON file path or an inline list.

    Inline forms: "1,2,3" assigns slopes to edges 0,1,2...; "0=1,4=7/2"
    assigns by edge id.  JSON files map edge ids to "a" strings or to
    {"a": ..., "b": ...} objects.
    """
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, list):
            return {i: EdgeLabel.of(rational(v)) for i, v in enumerate(data)}
        out = {}
        for key, val in data.items():
            if isinstance(val, dict):
                b = val.get("b")
                out[int(key)] = EdgeLabel.of(
                    rational(val["a"]), rational(b) if b is not None else None
                )
            else:
                out[int(key)] = EdgeLabel.of(rational(val))
        return out
    items = [part.strip() for part in spec.split(",") if part.strip()]
    if items and "=" in items[0]:
        out = {}
        for part in items:
            key, _, val = part.partition("=")
            out[int(key)] = EdgeLabel.of(rational(val))
        return out
    return {i: EdgeLabel.of(rational(v)) for i, v in enumerate(items)}


def _labels_json(labels: dict[int, EdgeLabel]) -> dict:
    out = {}
    for eid in sorted(labels):
        lab = labels[eid]
        entry = {"a": format_rational(lab.a)}
        if lab.b is not None:
            entry["b"] = format_rational(lab.b)
        out[str(eid)] = entry
    return out


def _poly_strings(polys, nvars: int) -> list[str]:
    names = _edge_names(nvars)
    return [p.display(names) for p in polys]


def _matrix_rows(matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in matrix]


def _graph_and_labels(obj, opts, results, warnings):
    """Resolve the working graph and monic slope labels for dim/rank.

    Triangulations run dualize -> translatability -> homogenize; labeled
    graphs homogenize only under --homogenize.
    """
    if isinstance(obj, Triangulation):
        g, labels = triangulation_frontend.dualize(obj)
        report = triangulation_frontend.face_translatable_check(g, labels)
        results["translatable"] = _translatability_json(report)
        if not report.all_translatable:
            bad = [fw.fid for fw in report.faces if not fw.translatable]
            raise SplinedimError(
                "faces %r are not translatable; homogenization is unlicensed" % bad
            )
        stripped, originals = triangulation_frontend.homogenize_labels(labels)
        results["labels"] = _labels_json(originals)
        results["homogenized_labels"] = _labels_json(stripped)
        results["from_triangulation"] = True
        return g.with_labels(stripped), stripped, True
    g = obj
    labels = dict(g.labels)
    if opts.get("labels"):
        labels.update(_parse_labels(opts["labels"]))
    if opts.get("homogenize") and labels:
        report = triangulation_frontend.face_translatable_check(g, labels)
        results["translatable"] = _translatability_json(report)
        if not report.all_translatable:
            bad = [fw.fid for fw in report.faces if not fw.translatable]
            raise SplinedimError(
                "faces %r are not translatable; homogenization is unlicensed" % bad
            )
        labels, originals = triangulation_frontend.homogenize_labels(labels)
        results["labels"] = _labels_json(originals)
        results["homogenized_labels"] = _labels_json(labels)
    return g, labels, False


def _translatability_json(report) -> list[dict]:
    out = []
    for fw in report.faces:
        entry = {"face": fw.fid, "translatable": fw.translatable}
        if fw.witness is not None:
            entry["witness"] = [format_rational(fw.witness[0]), format_rational(fw.witness[1])]
        out.append(entry)
    return out


def _slopes(labels: dict[int, EdgeLabel]):
    return {eid: lab.a for eid, lab in labels.items()}


def _trace_json(trace) -> dict:
    nvars = trace.original.e
    stages = []
    for st in trace.stages:
        stages.append(
            {
                "index": st.index,
                "faces": list(st.subset),
                "deficiency": st.deficiency,
                "kind": st.kind,
                "edges": sorted(st.edge_origin),
                "rank_contribution": st.rank_contribution,
                "polynomials": _poly_strings(st.polynomials, nvars),
            }
        )
    out = {
        "stages": stages,
        "residual": graph_to_dict(trace.residual),
        "residual_kind": trace.residual_kind,
        "residual_edges": sorted(trace.residual_edge_origin),
        "residual_rank": trace.residual_rank,
        "residual_clamped": trace.residual_clamped,
        "total_rank": trace.total_rank,
        "dimension": trace.dimension,
    }
    if trace.residual_polynomials is not None:
        out["residual_polynomials"] = _poly_strings(trace.residual_polynomials, nvars)
    return out


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (results dict, warnings, exit code)


def _cmd_validate(obj, opts):
    if isinstance(obj, Triangulation):
        # load already validated; reaching here means it is well formed
        return {"valid": True, "kind": "triangulation"}, [], 0
    report = validate(obj)
    results = {
        "valid": report.ok,
        "kind": "graph",
        "problems": list(report.problems),
        "vertices": len(obj.vertices),
        "edges": obj.e,
        "faces": obj.f,
    }
    return results, [], 0 if report.ok else 2


def _cmd_dualize(obj, opts):
    if not isinstance(obj, Triangulation):
        raise SplinedimError("dualize expects a triangulation input")
    results: dict = {}
    g, labels = triangulation_frontend.dualize(obj)
    results["graph"] = graph_to_dict(g)
    results["labels"] = _labels_json(labels)
    results["edges"] = g.e
    results["faces"] = g.f
    if opts.get("check_translatable"):
        report = triangulation_frontend.face_translatable_check(g, labels)
        results["translatable"] = _translatability_json(report)
    if opts.get("homogenize"):
        stripped, _originals = triangulation_frontend.homogenize_labels(labels)
        results["homogenized_labels"] = _labels_json(stripped)
        results["homogenized_graph"] = graph_to_dict(g.with_labels(stripped))
    return results, [], 0


def _cmd_rank(obj, opts):
    results: dict = {}
    g, labels, _ = _graph_and_labels(obj, opts, results, [])
    ext = spline_matrix.build_Mext(g, labels)
    r = rank(ext.matrix)
    results.update(
        {
            "edges": g.e,
            "faces": g.f,
            "rank": r,
            "expected_generic_rank": spline_matrix.expected_generic_rank(g),
            "dimension": g.e - r,
        }
    )
    if opts.get("dump_matrix"):
        results["matrix"] = _matrix_rows(ext.matrix)
    return results, [], 0


def _cmd_dim(obj, opts):
    results: dict = {}
    warnings: list[str] = []
    method = opts.get("method") or "matrix"
    g, labels, from_tri = _graph_and_labels(obj, opts, results, warnings)
    results.update({"edges": g.e, "faces": g.f, "method": method})

    dim_matrix = None
    dim_contraction = None
    if method in ("matrix", "both"):
        dim_matrix = spline_matrix.spline_dimension(g, labels)
        results["dimension_matrix"] = dim_matrix
        if opts.get("dump_matrix"):
            results["matrix"] = _matrix_rows(spline_matrix.build_Mext(g, labels).matrix)
    if method in ("contraction", "both"):
        slopes = _slopes(labels) if labels else None
        dim_contraction, trace = contraction.dimension_by_contraction(
            g, slopes, from_triangulation=from_tri
        )
        results["dimension_contraction"] = dim_contraction
        results["trace"] = _trace_json(trace)

    dim = dim_matrix if dim_matrix is not None else dim_contraction
    code = 0
    if method == "both":
        results["agreement"] = dim_matrix == dim_contraction
        if dim_matrix != dim_contraction:
            code = 3
            warnings.append(
                "methods disagree: matrix=%d contraction=%d" % (dim_matrix, dim_contraction)
            )
    results["dimension"] = dim
    if opts.get("classical"):
        results["classical_dimension"] = dim + 6
    return results, warnings, code


def _cmd_generic_check(obj, opts):
    results: dict = {}
    g, _labels, _ = _graph_and_labels(obj, opts, results, [])
    report = spline_matrix.generic_check(
        g, symbolic=not opts.get("numeric"), seed=opts.get("seed") or 0
    )
    results.update(
        {
            "generic": report.generic,
            "certified": report.certified,
            "d": report.d,
            "method": report.method,
            "notes": list(report.notes),
        }
    )
    if report.witness_columns is not None:
        results["witness_columns"] = list(report.witness_columns)
    if report.witness_rows is not None:
        results["witness_rows"] = list(report.witness_rows)
    if report.witness_poly is not None:
        results["witness_polynomial"] = report.witness_poly.display(_edge_names(g.e))
    return results, [], 0


def _cmd_edge_injective(obj, opts):
    results: dict = {}
    warnings: list[str] = []
    if isinstance(obj, Triangulation):
        g, _ = triangulation_frontend.dualize(obj)
    else:
        g = obj
    mode = opts.get("mode") or "greedy"
    phi, leftover, stalls = edge_injective.greedy_with_stalls(g)
    if mode == "greedy":
        results["assignment"] = {str(f): list(e) for f, e in phi.entries}
        results["image_size"] = len(phi.image())
        results["leftover"] = sorted(leftover)
        results["stalls"] = [
            {"face": fid, "reachable": sorted(reach)} for fid, reach in stalls
        ]
        return results, warnings, 0
    if mode == "enumerate":
        try:
            functions = edge_injective.enumerate_all(g)
        except NoneExists as exc:
            results.update({"exists": False, "count": 0, "functions": []})
            warnings.append(str(exc))
            return results, warnings, 0
        listed = sorted(
            ({str(f): list(e) for f, e in phi.entries} for phi in functions),
            key=json.dumps,
        )
        results.update({"exists": True, "count": len(functions), "functions": listed})
        return results, warnings, 0
    orientation = edge_injective.orientation_from(g, phi)
    if not orientation.is_total():
        raise SplinedimError(
            "the greedy assignment is not total; %s needs one" % mode
        )
    if mode == "count-cycles":
        results["cycles"] = edge_injective.count_directed_cycles(orientation)
        return results, warnings, 0
    if mode == "coloring":
        try:
            colored = edge_injective.find_coloring(orientation)
        except NotFound as exc:
            results["found"] = False
            warnings.append(str(exc))
            return results, warnings, 0
        results["found"] = True
        results["colors"] = {
            str(eid): color for eid, color in sorted(colored.color_of_edge().items())
        }
        return results, warnings, 0
    raise SplinedimError("unknown mode %r" % mode)


def _cmd_contract(obj, opts):
    results: dict = {}
    if isinstance(obj, Triangulation):
        g, _ = triangulation_frontend.dualize(obj)
        from_tri = True
    else:
        g = obj
        from_tri = False
    if opts.get("all"):
        labels = dict(g.labels)
        if opts.get("labels"):
            labels.update(_parse_labels(opts["labels"]))
        slopes = _slopes(labels) if labels else None
        dim, trace = contraction.dimension_by_contraction(
            g, slopes, from_triangulation=from_tri
        )
        results["trace"] = _trace_json(trace)
        results["dimension"] = dim
        return results, [], 0
    subset = contraction.find_minimal_contractible(g)
    if subset is None:
        results["found"] = False
        return results, [], 0
    new_g, edge_origin, vertex_map = contraction.contract_with_maps(g, subset)
    check = contraction.is_contractible(g, subset)
    results.update(
        {
            "found": True,
            "faces": sorted(subset),
            "deficiency": check.deficiency,
            "contracted": graph_to_dict(new_g),
            "edge_origin": list(edge_origin),
            "vertex_map": {str(k): str(v) for k, v in sorted(vertex_map.items())},
        }
    )
    return results, [], 0


def _cmd_special_locus(obj, opts):
    results: dict = {}
    if isinstance(obj, Triangulation):
        g, labels = triangulation_frontend.dualize(obj)
        stripped, _orig = triangulation_frontend.homogenize_labels(labels)
        g = g.with_labels(stripped)
        from_tri = True
    else:
        g = obj
        from_tri = False
    locus = contraction.special_locus(g, from_triangulation=from_tri)
    stages = []
    for st in locus.stages:
        stages.append(
            {
                "index": st.index,
                "kind": st.kind,
                "deficiency": st.deficiency,
                "semantics": st.semantics,
                "polynomials": _poly_strings(st.polynomials, locus.nvars),
            }
        )
    results["stages"] = stages
    return results, [], 0


_HANDLERS = {
    "validate": _cmd_validate,
    "dualize": _cmd_dualize,
    "dim": _cmd_dim,
    "rank": _cmd_rank,
    "generic-check": _cmd_generic_check,
    "edge-injective": _cmd_edge_injective,
    "contract": _cmd_contract,
    "special-locus": _cmd_special_locus,
}


def _process_input(command: str, path: str, opts: dict) -> tuple[dict, int]:
    report = {
        "command": command,
        "input": path,
        "ok": True,
        "warnings": [],
    }
    start = time.monotonic()
    try:
        report["input_sha256"] = _digest(path)
        obj = _load_input(path)
        results, warnings, code = _HANDLERS[command](obj, opts)
        report["results"] = results
        report["warnings"] = warnings
        if code != 0:
            report["ok"] = False
    except SplinedimError as exc:
        report["ok"] = False
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        report["ok"] = False
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 2
    report["timing_s"] = round(time.monotonic() - start, 6)
    return report, code


def _summary_line(report: dict) -> str:
    if not report.get("ok"):
        err = report.get("error", {})
        detail = err.get("message") or "; ".join(
            report.get("results", {}).get("problems", [])
        ) or "failed"
        return "%s %s: FAILED (%s)" % (report["command"], report["input"], detail)
    results = report.get("results", {})
    bits = []
    for key in ("dimension", "rank", "count", "cycles", "generic", "valid", "found"):
        if key in results:
            bits.append("%s=%s" % (key, results[key]))
    return "%s %s: %s" % (report["command"], report["input"], " ".join(bits) or "ok")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splinedim",
        description="Exact spline dimensions on edge-labeled planar graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, labels=True):
        p.add_argument("--input", required=True, nargs="+", help="input JSON file(s)")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers across inputs")
        if labels:
            p.add_argument("--labels", help="labels file or inline list")

    common(sub.add_parser("validate", help="check graph or triangulation validity"), labels=False)

    p = sub.add_parser("dualize", help="dual graph of a triangulation")
    common(p, labels=False)
    p.add_argument("--homogenize", action="store_true")
    p.add_argument("--check-translatable", action="store_true")

    p = sub.add_parser("dim", help="spline space dimension")
    common(p)
    p.add_argument("--method", choices=["matrix", "contraction", "both"], default="matrix")
    p.add_argument("--dump-matrix", action="store_true")
    p.add_argument("--homogenize", action="store_true")
    p.add_argument("--classical", action="store_true", help="annotate the +6 classical count")

    p = sub.add_parser("rank", help="rank of the extended matrix")
    common(p)
    p.add_argument("--dump-matrix", action="store_true")
    p.add_argument("--homogenize", action="store_true")

    p = sub.add_parser("generic-check", help="are the labels generic symbolically")
    common(p)
    p.add_argument("--numeric", action="store_true", help="sampled numeric check")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("edge-injective", help="assignments of boundary edges to faces")
    common(p, labels=False)
    p.add_argument(
        "--mode",
        choices=["greedy", "enumerate", "count-cycles", "coloring"],
        default="greedy",
    )

    p = sub.add_parser("contract", help="contract minimal contractible subsets")
    common(p)
    p.add_argument("--all", action="store_true", help="full contraction trace")

    p = sub.add_parser("special-locus", help="special-position polynomials by stage")
    common(p, labels=False)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = {
        key.replace("-", "_"): value
        for key, value in vars(args).items()
        if key not in ("command", "input", "jobs")
    }
    paths = args.input
    if args.jobs > 1 and len(paths) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(
                pool.map(_process_input, [args.command] * len(paths), paths, [opts] * len(paths))
            )
    else:
        outcomes = [_process_input(args.command, path, opts) for path in paths]

    reports = [report for report, _code in outcomes]
    code = max((c for _r, c in outcomes), default=0)
    payload = reports[0] if len(reports) == 1 else {"reports": reports}
    print(json.dumps(payload, indent=2, sort_keys=True))
    for report in reports:
        print(_summary_line(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
