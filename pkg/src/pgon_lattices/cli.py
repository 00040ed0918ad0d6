"""Command line entry point.  Reports go to stdout as JSON.

Exit codes: decide commands use 0 Exists, 1 NotExists, 2 Unknown; check
commands use 0 pass, 1 fail; anything above 2 is an error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .builders import BuiltTiling, ConstructionError, build_any, build_f_div4, build_jigsaw, genus_of
from .complexes import ComplexError, build_even_v, build_from_certificate
from .config import SearchConfig
from .decision import decide, decide_over_tiling, verify_cog, witness_for, Witness
from .diophantine import ConsistencyError, solve_explained, solve_unimod
from .homology import (CertificateError, Homology, SearchTruncated, certificate_from_weights,
                       find_nonzero_coeffs, find_sign_coeffs, h1_classes, vertex_types)
from .indexing import (Indexing, IndexingError, has_parallel_transport, induced_indexing, is_unimodular,
                       is_v_thick, unimodularity_equations)
from .surface import SurfaceError, TiledSurface, extract_geodesics, validate

ERROR = 3


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _write_witness(directory, w: Witness) -> dict:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"tessellation": out / "tessellation.json", "cog": out / "cog.json"}
    io.save(paths["tessellation"], w.surface)
    io.save(paths["cog"], w.cog)
    if w.certificate is not None:
        paths["certificate"] = out / "certificate.json"
        io.save(paths["certificate"], w.certificate)
    return {k: str(v) for k, v in paths.items()}


def cmd_tessellate(args) -> int:
    if args.construction == "div4":
        bt = build_f_div4(args.p, args.faces)
    elif args.construction == "jigsaw" or args.x is not None:
        if args.x is None or args.y is None:
            raise ConstructionError("jigsaw needs --x and --y")
        bt = build_jigsaw(args.p, args.faces, args.x, args.y)
    else:
        bt = build_any(args.p, args.faces)
    rep = validate(bt.surface)
    io.save(args.output, bt.surface)
    if args.weights and bt.weights is not None:
        io.save(args.weights, certificate_from_weights(bt.surface, bt.weights))
    _emit({"construction": bt.construction, "params": bt.params, "genus": bt.surface.genus,
           "chi": rep.chi, "valid": rep.ok, "problems": rep.problems,
           "has_certificate": bt.has_certificate, "output": args.output})
    return 0 if rep.ok else 1


def cmd_validate(args) -> int:
    ts = io.load_typed(args.input, io.TESSELLATION)
    rep = validate(ts)
    _emit({"valid": rep.ok, "chi": rep.chi, "genus": rep.genus, "problems": rep.problems,
           "codes": sorted(rep.codes())})
    return 0 if rep.ok else 1


def cmd_homology(args) -> int:
    ts = io.load_typed(args.input, io.TESSELLATION)
    validate(ts).raise_first()
    hom = Homology(ts)
    geos = extract_geodesics(ts)
    report = {"rank": hom.rank, "torsion": hom.torsion, "n_geodesics": len(geos),
              "classes": [list(c) for c in h1_classes(ts, geos, hom)]}
    cert = None
    if args.signs:
        cert = find_sign_coeffs(ts, bound=args.bound)
        if isinstance(cert, SearchTruncated):
            report["signs"] = {"truncated": True, "n_geodesics": cert.n_geodesics, "free": cert.free,
                              "bound": cert.bound}
            cert = None
        else:
            report["signs"] = None if cert is None else cert.to_dict()
    if args.nonzero:
        cert = find_nonzero_coeffs(ts)
        report["nonzero"] = None if cert is None else cert.to_dict()
    if args.types:
        data = json.loads(Path(args.types).read_text())
        vt = vertex_types(ts, data["weights"])
        report["types"] = {"a": {str(k): x for k, x in sorted(vt.a.items())},
                           "f": {str(k): x for k, x in sorted(vt.f.items())},
                           "corner_identity": vt.corner_identity, "divisible_by_p": vt.divisible}
    if cert is not None and args.output:
        io.save(args.output, cert)
        report["output"] = args.output
    _emit(report)
    if args.signs or args.nonzero:
        return 0 if cert is not None else 1
    return 0


def _load_indexing(path, ts: TiledSurface) -> Indexing:
    data = json.loads(Path(path).read_text())
    return Indexing.from_dict(data, ts)


def cmd_indexing_check(args) -> int:
    ts = io.load_typed(args.tessellation, io.TESSELLATION)
    ind = _load_indexing(args.indexing, ts)
    thick, bad_edges = is_v_thick(ind, ts, args.v)
    parallel, bad_class = has_parallel_transport(ind, ts)
    uni, loop = is_unimodular(ind, ts)
    report = {"v_thick": thick, "thickness_violations": bad_edges, "parallel_transport": parallel,
              "violating_class": bad_class, "unimodular": uni,
              "violating_loop": None if loop is None else [list(s) for s in loop]}
    if thick:
        report["equations"] = [{"k": e.k, "a": e.a, "odd": e.odd, "holds": e.holds()}
                               for e in unimodularity_equations(ind, ts, args.v)]
    _emit(report)
    return 0 if thick and parallel and uni else 1


def cmd_unimod(args) -> int:
    if args.explain:
        ex = solve_explained(args.v, args.k, args.mode, args.budget)
        res = ex.result
        extra = {"label": ex.label, "proven_none": ex.predicted_none, "easy": ex.easy}
    else:
        res = solve_unimod(args.v, args.k, args.mode, args.budget)
        extra = {}
    report = {"v": args.v, "k": args.k, "mode": args.mode, "count": res.count,
              "truncated": res.truncated, "nodes": res.nodes, **extra}
    if args.mode != "count":
        report["solutions"] = [list(s) for s in res.solutions]
    _emit(report)
    return 0


def cmd_build_cog(args) -> int:
    ts = io.load_typed(args.tessellation, io.TESSELLATION)
    validate(ts).raise_first()
    if args.even_v is not None:
        cog, v = build_even_v(ts, args.even_v), args.even_v
    else:
        if args.cert is None or args.b is None or args.v is None:
            raise ComplexError("--cert needs --b and --v")
        cert = io.load_typed(args.cert, io.CERTIFICATE)
        cog, v = build_from_certificate(ts, cert, args.b, args.v), args.v
    io.save(args.output, cog)
    _emit({"output": args.output, "v": v, "faces": [g.to_json() for g in cog.face_groups]})
    return 0


def cmd_verify_cog(args) -> int:
    cog = io.load_typed(args.input, io.COG)
    rep = verify_cog(cog, args.v)
    out = rep.to_dict()
    if args.indexing_out:
        io.save(args.indexing_out, induced_indexing(cog), cog.ts)
        out["indexing_output"] = args.indexing_out
    _emit(out)
    return 0 if rep.ok else 1


def _verdict_report(verdict, extra=None) -> dict:
    return {**verdict.to_dict(), **(extra or {})}


def cmd_decide(args) -> int:
    verdict = decide(args.p, args.v, args.g, SearchConfig(even_b_bound=args.b_bound))
    extra = {}
    if args.witness and verdict.outcome == "Exists":
        w = witness_for(verdict, args.p, args.v)
        extra["witness"] = _write_witness(args.witness, w)
        extra["witness_verified"] = verify_cog(w.cog, args.v).ok
    _emit(_verdict_report(verdict, extra))
    return verdict.exit_code


def cmd_decide_tiling(args) -> int:
    ts = io.load_typed(args.input, io.TESSELLATION)
    cfg = SearchConfig(sign_bound=args.bound, even_b_bound=args.b_bound)
    verdict, w = decide_over_tiling(ts, args.v, cfg, want_witness=bool(args.witness))
    extra = {}
    if w is not None:
        extra["witness"] = _write_witness(args.witness, w)
        extra["witness_verified"] = verify_cog(w.cog, args.v).ok
    _emit(_verdict_report(verdict, extra))
    return verdict.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgon", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tessellate", help="build a tiling by right-angled p-gons")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--faces", type=int, required=True)
    s.add_argument("--construction", choices=["auto", "div4", "jigsaw"], default="auto")
    s.add_argument("--x", type=int)
    s.add_argument("--y", type=int)
    s.add_argument("--weights", help="also save the construction's weight certificate here")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_tessellate)

    s = sub.add_parser("validate", help="check a tiling file")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("homology", help="H_1 classes of geodesics and coefficient searches")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--signs", action="store_true")
    s.add_argument("--nonzero", action="store_true")
    s.add_argument("--types", help="JSON file with face weights")
    s.add_argument("--bound", type=int, default=SearchConfig.sign_bound)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("indexing-check", help="v-thickness, parallel transport, unimodularity")
    s.add_argument("--tessellation", required=True)
    s.add_argument("--indexing", required=True)
    s.add_argument("--v", type=int, required=True)
    s.set_defaults(func=cmd_indexing_check)

    s = sub.add_parser("unimod", help="solve prod a_j = prod (v - a_j)")
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--all", dest="mode", action="store_const", const="all")
    mode.add_argument("--count", dest="mode", action="store_const", const="count")
    mode.add_argument("--first", dest="mode", action="store_const", const="first")
    s.add_argument("--explain", action="store_true")
    s.add_argument("--budget", type=int, default=SearchConfig.unimod_budget)
    s.set_defaults(func=cmd_unimod, mode="all")

    s = sub.add_parser("build-cog", help="build a complex of groups over a tiling")
    s.add_argument("--tessellation", required=True)
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--even-v", type=int)
    grp.add_argument("--cert")
    s.add_argument("--b", type=int)
    s.add_argument("--v", type=int)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_build_cog)

    s = sub.add_parser("verify-cog", help="check vertex links and the induced indexing")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--indexing-out", help="save the induced indexing here")
    s.set_defaults(func=cmd_verify_cog)

    s = sub.add_parser("decide", help="does a lattice exist for (p, v, g)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--b-bound", type=int, default=SearchConfig.even_b_bound)
    s.add_argument("--witness", help="directory for witness files")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("decide-tiling", help="does a lattice exist with this tiling as quotient")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--bound", type=int, default=SearchConfig.sign_bound)
    s.add_argument("--b-bound", type=int, default=SearchConfig.even_b_bound)
    s.add_argument("--witness", help="directory for witness files")
    s.set_defaults(func=cmd_decide_tiling)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SurfaceError, ConstructionError, ComplexError, CertificateError, IndexingError,
            ConsistencyError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return ERROR + (1 if isinstance(exc, ConsistencyError) else 0)


if __name__ == "__main__":
    sys.exit(main())
