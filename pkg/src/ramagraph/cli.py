"""Command-line surface tying constructions, checks, and file formats together.

Exit codes: 0 success; 1 runtime refusal (infeasible margins, candidate
exhaustion, folding obstruction, a failed certificate); 2 invalid
parameters or malformed input files. A verify run that finds a
non-Ramanujan spectrum still exits 0: the verdict is the report's
payload, not a failure of the tool.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .array_code import ArrayCodeSpec, build_array_code, build_array_code_graph
from .cayley_abelian import build_bibak, build_li
from .graphs import BinaryBigraph, GraphError, SimpleGraph
from .gunnells import FoldingObstruction, build_gunnells, gunnells_nonbipartite
from .lps import build_lps, lps_nonbipartite
from .mmio import (
    MatrixFileError,
    RunManifest,
    read_pattern,
    read_prohibited,
    write_pattern,
)
from .perturb import CandidateExhaustionError, feasibility, perturb, verify_perturbation
from .spectral import ramanujan_report

FAMILIES = ("array-code", "array-code-graph", "lps", "gunnells", "li", "bibak")


def _require(args, family: str, names: tuple) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"{family} needs {' and '.join(missing)}")


def _matrix_for_family(args) -> tuple:
    """Build the requested family; returns (matrix, parameters)."""
    family = args.family
    if family == "array-code":
        _require(args, family, ("q", "l"))
        B = build_array_code(ArrayCodeSpec(args.q, args.l))
        return B.matrix, {"q": args.q, "l": args.l}
    if family == "array-code-graph":
        _require(args, family, ("q",))
        acg = build_array_code_graph(args.q)
        return acg.matrix, {"q": args.q}
    if family == "lps":
        _require(args, family, ("p", "q"))
        res = build_lps(args.p, args.q)
        bipartite = res.legendre == -1
        params = {"p": args.p, "q": args.q, "legendre": res.legendre, "bipartite": bipartite}
        matrix = res.bigraph.matrix if bipartite else res.graph.adjacency
        return matrix, params
    if family == "gunnells":
        _require(args, family, ("q", "l"))
        return build_gunnells(args.q, args.l).matrix, {"q": args.q, "l": args.l}
    if family == "li":
        _require(args, family, ("q",))
        return build_li(args.q).adjacency, {"q": args.q}
    if family == "bibak":
        _require(args, family, ("q",))
        return build_bibak(args.q).adjacency, {"q": args.q}
    raise ValueError(f"unknown family {family!r}")


def _write_with_manifest(construction: str, parameters: dict, matrix, out: str, t0: float) -> None:
    manifest_path = out + ".manifest.json"
    label = " ".join(f"{k}={v}" for k, v in parameters.items())
    write_pattern(out, matrix, comments=[f"{construction} {label}"])
    manifest = RunManifest(
        construction=construction,
        parameters=parameters,
        outputs={"matrix": out, "manifest": manifest_path},
        version=__version__,
        duration_seconds=round(time.perf_counter() - t0, 6),
    )
    manifest.write(manifest_path)
    nnz = int((matrix != 0).sum())
    print(f"wrote {out} ({matrix.shape[0]} x {matrix.shape[1]}, {nnz} entries)")


def cmd_construct(args) -> int:
    t0 = time.perf_counter()
    matrix, parameters = _matrix_for_family(args)
    _write_with_manifest(args.family, parameters, matrix, args.out, t0)
    return 0


def cmd_verify(args) -> int:
    m = read_pattern(args.infile)
    if args.mode == "graph":
        obj = SimpleGraph(m, allow_loops=True)
    else:
        obj = BinaryBigraph(m)
    rep = ramanujan_report(obj)
    text = json.dumps(rep.to_dict(), indent=2) + "\n"
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    return 0


def cmd_convert(args) -> int:
    t0 = time.perf_counter()
    if args.family == "lps":
        _require(args, "lps conversion", ("p", "q"))
        g = lps_nonbipartite(args.p, args.q)
        parameters = {"p": args.p, "q": args.q}
    else:
        _require(args, "gunnells conversion", ("q", "l"))
        g = gunnells_nonbipartite(args.q, args.l)
        parameters = {"q": args.q, "l": args.l}
    _write_with_manifest(f"nonbipartite-{args.family}", parameters, g.adjacency, args.out, t0)
    return 0


def cmd_perturb(args) -> int:
    t0 = time.perf_counter()
    E = BinaryBigraph(read_pattern(args.infile))
    M = read_prohibited(args.prohibited)
    rep = feasibility(E, M)
    if not rep.procedure_ok:
        sys.stdout.write(json.dumps({"infeasible": True, **rep.to_dict()}, indent=2) + "\n")
        return 1
    result = perturb(E, M)
    cert = verify_perturbation(E, result, M)
    out = args.out
    paths = {
        "matrix": out,
        "delta_plus": out + ".delta_plus.mtx",
        "delta_minus": out + ".delta_minus.mtx",
        "switches": out + ".switches.json",
        "certificate": out + ".certificate.json",
        "manifest": out + ".manifest.json",
    }
    write_pattern(out, result.e_p.matrix, comments=["perturbed matrix"])
    write_pattern(paths["delta_plus"], result.delta_plus, comments=["added edges"])
    write_pattern(paths["delta_minus"], result.delta_minus, comments=["removed edges"])
    with open(paths["switches"], "w") as fh:
        json.dump(
            [
                {
                    "row": s.row,
                    "conflict_col": s.conflict_col,
                    "donor_row": s.donor_row,
                    "replacement_col": s.replacement_col,
                }
                for s in result.switches
            ],
            fh,
            indent=2,
        )
        fh.write("\n")
    with open(paths["certificate"], "w") as fh:
        json.dump({"feasibility": rep.to_dict(), "certificate": cert.to_dict()}, fh, indent=2)
        fh.write("\n")
    manifest = RunManifest(
        construction="perturb",
        parameters={"in": args.infile, "prohibited": args.prohibited},
        outputs=paths,
        version=__version__,
        duration_seconds=round(time.perf_counter() - t0, 6),
    )
    manifest.write(paths["manifest"])
    print(
        f"{len(result.switches)} switches, p = {result.p}, "
        f"certificate {'passed' if cert.passed else 'FAILED'}"
    )
    return 0 if cert.passed else 1


def replay_argv(manifest: RunManifest) -> list:
    """Rebuild the command line a manifest came from."""
    c = manifest.construction
    params = manifest.parameters
    if c in FAMILIES:
        argv = ["construct", c]
        for name in ("q", "l", "p"):
            if name in params:
                argv += [f"--{name}", str(params[name])]
        return argv + ["--out", manifest.outputs["matrix"]]
    if c.startswith("nonbipartite-"):
        family = c.removeprefix("nonbipartite-")
        argv = ["convert", "nonbipartite", "--family", family]
        for name in ("q", "l", "p"):
            if name in params:
                argv += [f"--{name}", str(params[name])]
        return argv + ["--out", manifest.outputs["matrix"]]
    if c == "perturb":
        return [
            "perturb",
            "--in", params["in"],
            "--prohibited", params["prohibited"],
            "--out", manifest.outputs["matrix"],
        ]
    raise ValueError(f"cannot replay construction {c!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramagraph",
        description="Construct, verify, convert, and perturb Ramanujan graphs and bigraphs.",
        epilog=(
            "exit codes: 0 success; 1 runtime refusal (infeasible margins, candidate "
            "exhaustion, folding obstruction, failed certificate); 2 invalid parameters "
            "or malformed files"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_con = sub.add_parser("construct", help="build a family member and write it out")
    p_con.add_argument("family", choices=FAMILIES)
    p_con.add_argument("--q", type=int)
    p_con.add_argument("--l", type=int)
    p_con.add_argument("--p", type=int)
    p_con.add_argument("--out", required=True)
    p_con.set_defaults(func=cmd_construct)

    p_ver = sub.add_parser("verify", help="spectral report for a matrix file")
    p_ver.add_argument("--in", dest="infile", required=True)
    p_ver.add_argument("--mode", choices=("graph", "bigraph"), required=True)
    p_ver.add_argument("--report")
    p_ver.set_defaults(func=cmd_verify)

    p_cvt = sub.add_parser("convert", help="bipartite-to-nonbipartite conversion")
    p_cvt.add_argument("target", choices=("nonbipartite",))
    p_cvt.add_argument("--family", choices=("lps", "gunnells"), required=True)
    p_cvt.add_argument("--q", type=int)
    p_cvt.add_argument("--l", type=int)
    p_cvt.add_argument("--p", type=int)
    p_cvt.add_argument("--out", required=True)
    p_cvt.set_defaults(func=cmd_convert)

    p_per = sub.add_parser("perturb", help="eliminate prohibited edges by 2-switches")
    p_per.add_argument("--in", dest="infile", required=True)
    p_per.add_argument("--prohibited", required=True)
    p_per.add_argument("--out", required=True)
    p_per.set_defaults(func=cmd_perturb)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FoldingObstruction as exc:
        print(f"conversion refused: {exc}", file=sys.stderr)
        return 1
    except CandidateExhaustionError as exc:
        print(f"perturbation stuck: {exc}; context {exc.context}", file=sys.stderr)
        return 1
    except MatrixFileError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (GraphError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
