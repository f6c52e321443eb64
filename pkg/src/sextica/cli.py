"""Command line entry point."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from .poly import DEFAULT_CHAR, MULTI_PRIMES

EXIT_OK = 0
EXIT_DEGENERATE = 2
EXIT_MISMATCH = 3


def _load(path: str):
    return json.loads(Path(path).read_text())


def _emit(obj, args, markdown: str | None = None) -> None:
    text = markdown if args.report == "md" and markdown is not None else json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if args.out and args.command not in ("generate", "certify"):
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    sys.stdout.write(text)


def _md_kv(title: str, obj: dict) -> str:
    lines = [f"## {title}", "", "| key | value |", "|---|---|"]
    lines += [f"| {k} | {v} |" for k, v in obj.items()]
    return "\n".join(lines) + "\n"


def cmd_generate(args) -> int:
    from .pipeline import save_run, run_family

    cert = run_family(args.family, args.seed, args.char)
    out = Path(args.out or ".")
    cpath, spath = save_run(cert, out)
    info = {"certificate": str(cpath), "sample": str(spath) if spath else None, "verdict": cert.verdict,
            "node_count": cert.node_count}
    _emit(info, args, _md_kv(f"{cert.preset} seed {cert.seed}", info))
    return EXIT_DEGENERATE if cert.verdict == "degenerate" else EXIT_OK


def cmd_certify(args) -> int:
    from .pipeline import PRESETS, multi_prime, report_json, report_markdown, run_family, save_run

    families = list(PRESETS) if args.family == ["all"] else args.family
    seeds = args.seeds or [args.seed]
    if args.primes:
        reports = [multi_prime(f, s, args.primes).to_json() for f in families for s in seeds]
        _emit(reports, args)
        return EXIT_OK if all(r["agree"] for r in reports) else EXIT_MISMATCH
    certs = [run_family(f, s, args.char) for f in families for s in seeds]
    if args.out:
        for c in certs:
            save_run(c, args.out)
    text = report_markdown(certs) if args.report == "md" else report_json(certs)
    sys.stdout.write(text)
    return EXIT_DEGENERATE if any(c.verdict == "degenerate" for c in certs) else EXIT_OK


def cmd_verify(args) -> int:
    from .pipeline import load_certificate, load_sample, verify_certificate

    cert = load_certificate(args.certificate)
    sample = load_sample(args.sample) if args.sample else None
    res = verify_certificate(cert, sample, args.char if args.char_given else None)
    _emit(res.to_json(), args, _md_kv(f"verification: {res.status}", res.to_json()))
    return EXIT_OK if res.ok else EXIT_MISMATCH


def cmd_defect(args) -> int:
    from .defect import defect_eval, defect_hilbert
    from .ideals import GradedIdeal

    if args.ideal:
        rep = defect_hilbert(GradedIdeal.from_json(_load(args.ideal)), args.N)
    else:
        obj = _load(args.points)
        pts = obj["points"] if isinstance(obj, dict) else obj
        p = obj.get("char", args.char) if isinstance(obj, dict) else args.char
        rep = defect_eval(pts, args.N, p)
    _emit(rep.to_json(), args, _md_kv("defect", rep.to_json()))
    return EXIT_OK


def cmd_cohomology(args) -> int:
    from .cohomology import hypercoh_Iw5, sheaf_F_cohomology
    from .pipeline import load_sample

    sample = load_sample(args.sample)
    if args.iw5:
        h0, h1 = hypercoh_Iw5(sample.section)
        obj = {"sheaf": "I_w(5)", "h0": h0, "h1": h1}
    else:
        h = sheaf_F_cohomology(sample.section, args.twist)
        obj = {"sheaf": f"F({args.twist})", "h0": h[0], "h1": h[1], "h2": h[2]}
    _emit(obj, args, _md_kv("cohomology", obj))
    return EXIT_OK


def cmd_bundles(args) -> int:
    from .bundles import BundleSpec, cohomology_table, enumerate_candidates, spec_validate

    if args.action == "enumerate":
        cands = enumerate_candidates()
        rows = [asdict(c) for c in cands]
        md = "| k | m2 | m3 | m4 | nodes | status |\n|---|---|---|---|---|---|\n" + "".join(
            f"| {c.k} | {c.m2} | {c.m3} | {c.m4} | {c.nodes} | {c.status} |\n" for c in cands)
        _emit(rows, args, md)
        return EXIT_OK
    spec = BundleSpec.from_json(_load(args.spec)) if args.spec else BundleSpec.from_shape(*args.shape, delta=args.delta)
    if args.action == "validate":
        v = spec_validate(spec)
        _emit({"accepted": v.accepted, "reason": v.reason}, args)
        return EXIT_OK if v.accepted else EXIT_MISMATCH
    tab = cohomology_table(spec, args.expr, args.twist)
    _emit(tab.to_json(), args, _md_kv(f"{args.expr}({args.twist})", tab.to_json()))
    return EXIT_OK


def cmd_codes(args) -> int:
    from .codes import F2Vector, NodeCode, is_minimal, torsion_lower_bound

    if args.action == "bound":
        obj = {"t2_lower": torsion_lower_bound(args.dim, args.defect)}
        _emit(obj, args)
        return EXIT_OK
    code = NodeCode.from_json(_load(args.code))
    if args.action == "dim":
        obj = {"ambient": code.ambient_size, "dim": code.dim}
    else:
        w = F2Vector.from_indices(args.set, code.ambient_size)
        obj = {"minimal": is_minimal(w, code)}
    _emit(obj, args)
    return EXIT_OK


def cmd_ideal(args) -> int:
    from .ideals import GradedIdeal, hilbert_function, ideal_degree, ideal_equal, projective_dimension

    I = GradedIdeal.from_json(_load(args.ideal))
    if args.action == "hilbert":
        obj = {"values": [hilbert_function(I, n) for n in range(args.upto + 1)]}
    elif args.action == "degree":
        obj = {"dimension": projective_dimension(I), "degree": ideal_degree(I)}
    else:
        obj = {"equal": ideal_equal(I, GradedIdeal.from_json(_load(args.other)))}
    _emit(obj, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", type=int, default=None, help=f"field characteristic (default {DEFAULT_CHAR})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output directory or file")
    common.add_argument("--report", choices=("json", "md"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="sextica", description="Nodal sextic surfaces from symmetric bundle maps.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="sample one family member and certify it")
    g.add_argument("--family", required=True)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("certify", parents=[common], help="certify families over several seeds")
    c.add_argument("--family", nargs="+", default=["all"])
    c.add_argument("--seeds", type=int, nargs="*")
    c.add_argument("--primes", type=int, nargs="*", help=f"compare across primes, e.g. {' '.join(map(str, MULTI_PRIMES))}")
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", parents=[common], help="recompute a stored certificate")
    v.add_argument("--certificate", required=True)
    v.add_argument("--sample")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("defect", parents=[common], help="defect of a point set")
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("--ideal")
    src.add_argument("--points")
    d.add_argument("--N", type=int, default=5)
    d.set_defaults(func=cmd_defect)

    h = sub.add_parser("cohomology", parents=[common], help="cohomology of F(n) or I_w(5) for a stored sample")
    h.add_argument("--sample", required=True)
    h.add_argument("--sheaf", choices=("F",), default="F")
    h.add_argument("--twist", type=int, default=0)
    h.add_argument("--iw5", action="store_true")
    h.set_defaults(func=cmd_cohomology)

    b = sub.add_parser("bundles", parents=[common], help="bundle cohomology tables and the candidate list")
    b.add_argument("action", choices=("enumerate", "table", "validate"))
    b.add_argument("--spec", help="bundle spec JSON file")
    b.add_argument("--shape", type=int, nargs=4, metavar=("K", "M2", "M3", "M4"), default=(0, 0, 6, 0))
    b.add_argument("--delta", type=int, default=1)
    b.add_argument("--expr", choices=("E", "Edual", "S2E", "L2Edual", "sl"), default="S2E")
    b.add_argument("--twist", type=int, default=0)
    b.set_defaults(func=cmd_bundles)

    k = sub.add_parser("codes", parents=[common], help="binary codes of even sets")
    k.add_argument("action", choices=("dim", "minimal", "bound"))
    k.add_argument("--code")
    k.add_argument("--set", type=int, nargs="*", default=[])
    k.add_argument("--dim", type=int, default=0)
    k.add_argument("--defect", type=int, default=0)
    k.set_defaults(func=cmd_codes)

    i = sub.add_parser("ideal", parents=[common], help="Hilbert data of a stored ideal")
    i.add_argument("action", choices=("hilbert", "degree", "equal"))
    i.add_argument("--ideal", required=True)
    i.add_argument("--other")
    i.add_argument("--upto", type=int, default=10)
    i.set_defaults(func=cmd_ideal)
    return ap


def main(argv=None) -> int:
    from .errors import SexticaError

    args = build_parser().parse_args(argv)
    args.char_given = args.char is not None
    if args.char is None:
        args.char = DEFAULT_CHAR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except SexticaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: missing artifact {e.filename}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
