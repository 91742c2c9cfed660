"""Command-line interface: ``z4expand analyze | expand | reproduce | catalog``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import catalog
from .analyze import render_swe, weight_report
from .codes import ZeroMatrixError, is_self_dual, is_self_orthogonal, profile
from .expand import NotSelfOrthogonal, algorithm1, algorithm2, algorithm3, expand_search
from .lattice import lattice_report
from .matrixfile import MatrixParseError, parse_matrix, render_matrix
from .z4algebra import Z4Matrix

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

_INLINE = re.compile(r"^[0-3]+([,;\s]+[0-3]+)*$")


class UsageError(Exception):
    pass


def load_matrix(spec: str) -> Z4Matrix:
    """A file path, ``catalog:<name>``, ``-`` for stdin, or inline rows like ``1111,0220``."""
    if spec.startswith("catalog:"):
        try:
            return catalog.get(spec.split(":", 1)[1]).matrix
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    if spec == "-":
        return parse_matrix(sys.stdin.read())
    path = Path(spec)
    if path.exists():
        return parse_matrix(path.read_text())
    if _INLINE.match(spec.strip()):
        rows = re.split(r"[,;\s]+", spec.strip())
        if len({len(r) for r in rows}) != 1:
            raise UsageError("inline rows must have equal length")
        return Z4Matrix(rows)
    raise UsageError(f"no such file: {spec}")


def _type_str(t: tuple[int, int]) -> str:
    return f"4^{t[0]} 2^{t[1]}"


def _dist_str(d: dict[int, int]) -> str:
    return " ".join(f"{w}:{c}" for w, c in sorted(d.items()))


def cmd_analyze(args) -> int:
    g = load_matrix(args.path)
    prof = profile(g)
    so = is_self_orthogonal(g)
    sd = so and is_self_dual(g)
    if args.lattice and not sd:
        raise UsageError("--lattice needs a self-dual code")
    rep = weight_report(prof, cap=args.cap, threads=args.threads)
    if args.lattice and args.cap is not None and args.cap < min(16, rep.d_E):
        raise UsageError(f"--cap {args.cap} is below min(16, d_E) = {min(16, rep.d_E)} needed by --lattice")
    lat = lattice_report(g, rep) if args.lattice else None
    if args.json:
        out = rep.to_json()
        out["self_orthogonal"] = so
        out["self_dual"] = sd
        if lat is not None:
            out["lattice"] = lat.to_json()
        print(json.dumps(out))
        return EXIT_OK
    print(f"n: {g.n}")
    print(f"type: {_type_str(prof.type)}")
    print(f"self-orthogonal: {str(so).lower()}")
    print(f"self-dual: {str(sd).lower()}")
    print(f"d_L: {rep.d_L}")
    print(f"d_E: {rep.d_E}")
    suffix = f" (weights <= {args.cap})" if args.cap is not None else ""
    print(f"lee{suffix}: {_dist_str(rep.lee_distribution)}")
    print(f"euclidean{suffix}: {_dist_str(rep.euclidean_distribution)}")
    if args.swe:
        print(f"swe{suffix}: {render_swe(rep.swe)}")
    if lat is not None:
        print(f"lattice: mu = {lat.min_norm}, N = {lat.kissing}, {lat.parity}")
        if not lat.integral_min_norm:
            print("warning: minimum norm is not an integer", file=sys.stderr)
    return EXIT_OK


def _digits(v) -> str:
    return "".join(str(int(x)) for x in v)


def _provenance_line(res) -> str:
    p = res.provenance
    parts = [f"algorithm={p.get('algorithm')}"]
    if "lift_index" in p:
        parts.append(f"supercode={p['supercode_index']}")
        parts.append(f"lift={p['lift_index']}")
    if p.get("residue_added"):
        parts.append("residue_added=[" + ",".join(_digits(v) for v in p["residue_added"]) + "]")
    parts.append("added=2*[" + ",".join(_digits(v) for v in p.get("torsion_added", [])) + "]")
    return "provenance: " + " ".join(parts)


def cmd_expand(args) -> int:
    g = load_matrix(args.path)
    if not is_self_orthogonal(g):
        raise UsageError("input code is not self-orthogonal")
    prof = profile(g)
    algo = args.algorithm
    if algo == "auto":
        if args.target_k1 is not None and args.target_k1 == prof.k1:
            algo = "1"
        else:
            algo = "3" if prof.k2 else "2"
    if args.objective:
        sr = expand_search(g, args.objective, budget=args.budget, seed=args.seed, target_dim=args.target_k1)
        results = [sr.best]
        note = f"search: objective={args.objective} evaluated={sr.evaluated} dL={sr.d_L} dE={sr.d_E}"
    else:
        note = None
        if algo == "1":
            if args.target_k1 not in (None, prof.k1):
                raise UsageError("algorithm 1 keeps k1; drop --target-k1 or use algorithm 2/3")
            stream = iter([algorithm1(g)])
        else:
            fn = algorithm2 if algo == "2" else algorithm3
            stream = fn(g, target_dim=args.target_k1)
        results = []
        for r in stream:
            results.append(r)
            if len(results) >= args.limit:
                break
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for i, r in enumerate(results):
        comments = [_provenance_line(r), f"type: {_type_str(profile(r.code).type)}"]
        if note:
            comments.append(note)
        text = render_matrix(r.code, comments)
        if out_dir:
            (out_dir / f"expansion_{i:04d}.z4").write_text(text)
        else:
            sys.stdout.write(text)
    if out_dir:
        print(f"wrote {len(results)} matrices to {out_dir}")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    overrides = None
    if args.data_dir:
        overrides = {}
        for name in catalog.table_names():
            f = Path(args.data_dir) / f"{name}.z4"
            if f.exists():
                overrides[name] = parse_matrix(f.read_text())
    rep = catalog.reproduce_tables(fast=args.fast, threads=args.threads, matrices=overrides)
    print(rep.render())
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_catalog(args) -> int:
    if args.name is None:
        for n in catalog.names():
            e = catalog.get(n)
            print(f"{n:20s} n={e.matrix.n:<3d} {e.source}")
        return EXIT_OK
    try:
        e = catalog.get(args.name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    sys.stdout.write(render_matrix(e.matrix, [e.name, e.source]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="z4expand", description="Self-dual codes over Z4: analysis and expansion.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="weight distributions, SWE and lattice data")
    a.add_argument("path", help="matrix file, catalog:<name>, '-' or inline rows")
    a.add_argument("--cap", type=int, help="report weights up to this value only")
    a.add_argument("--swe", action="store_true", help="print the symmetric weight enumerator")
    a.add_argument("--lattice", action="store_true", help="minimum norm and kissing number")
    a.add_argument("--threads", type=int, help="enumeration worker count")
    a.add_argument("--json", action="store_true", help="machine-readable output")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("expand", help="expand a self-orthogonal code to self-dual codes")
    e.add_argument("path")
    e.add_argument("--algorithm", choices=["1", "2", "3", "auto"], default="auto")
    e.add_argument("--target-k1", type=int, dest="target_k1")
    e.add_argument("--limit", type=int, default=1, help="maximum number of codes to emit")
    e.add_argument("--objective", choices=["dE", "dL"], help="search for the best code instead of streaming")
    e.add_argument("--budget", type=int, default=256, help="candidates evaluated by --objective")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", help="write one file per code into this directory")
    e.set_defaults(func=cmd_expand)

    r = sub.add_parser("reproduce", help="recompute the published tables")
    r.add_argument("--fast", action="store_true", help="skip the n >= 33 enumerations")
    r.add_argument("--threads", type=int)
    r.add_argument("--data-dir", help="load table matrices from this directory instead")
    r.set_defaults(func=cmd_reproduce)

    c = sub.add_parser("catalog", help="list catalog entries or print one")
    c.add_argument("name", nargs="?")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except MatrixParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (UsageError, NotSelfOrthogonal, ZeroMatrixError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
