"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for usage errors (bad parameters, unreadable input).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .facelattice import (
    HypersimplexParams,
    LabelError,
    ParameterError,
    count_ones,
    count_zeros,
    enumerate_faces,
    face_count_formula,
    format_label,
)
from .homology import (
    SubcomplexError,
    boundary_complex,
    boundary_matrices,
    euler_characteristic,
    full_complex,
    homology_of,
    homology_records,
    order_complex,
    read_subcomplex,
)
from .matching import MatchParams, all_match_params, build_matching, verify_matching
from .morse import (
    build_hasse,
    detect_cycle,
    find_closed_vpath,
    perturb_matching,
    to_dot,
    unmatched_census,
    verdict_dict,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _params(args) -> HypersimplexParams:
    return HypersimplexParams(args.n, args.k)


def _match_params(args, params, required=True):
    if args.m0 is None and args.m1 is None and not required:
        return None
    if args.m0 is None or args.m1 is None:
        raise UsageError("--m0 and --m1 must be given together")
    if params.k < 2:
        raise UsageError(
            f"unsupported parameters: the matching family needs k >= 2, got k={params.k}")
    mp = MatchParams(args.m0, args.m1)
    mp.check(params)
    return mp


def cmd_faces(args):
    params = _params(args)
    faces = enumerate_faces(params)
    rows = []
    ok = True
    for d, count in faces.counts().items():
        if d >= 1:
            formula = face_count_formula(params, d)
        elif d == 0:
            from math import comb
            formula = comb(params.n, params.k)
        else:
            formula = 1
        ok &= formula == count
        rows.append({"dim": d, "count": count, "formula": formula})
    if args.format == "json":
        records = [{"label": format_label(f, machine=True),
                    "dim": d,
                    "s0": count_zeros(f) if f else 0,
                    "s1": count_ones(f) if f else 0}
                   for d, fs in sorted(faces.by_dim.items()) for f in fs]
        text = json.dumps({"n": params.n, "k": params.k, "census": rows,
                           "consistent": ok, "faces": records}, indent=2)
    else:
        lines = [f"{params}: face census", f"{'dim':>4} {'count':>8} {'formula':>8}"]
        for r in rows:
            mark = "" if r["count"] == r["formula"] else "  MISMATCH"
            lines.append(f"{r['dim']:>4} {r['count']:>8} {r['formula']:>8}{mark}")
        lines.append(f"total cells (with empty face): {len(faces)}")
        text = "\n".join(lines)
    return text, ok


def _pair_lines(matching):
    return [f"  {format_label(p.lower):>{matching.params.n}}  ->  "
            f"{p.upper:<{matching.params.n}}  {p.rule}"
            for p in matching.pairs]


def cmd_match(args):
    params = _params(args)
    mp = _match_params(args, params)
    matching = build_matching(params, mp)
    if args.format == "json":
        return json.dumps(matching.to_dict(), indent=2), True
    head = f"{params}, m0={mp.m0}, m1={mp.m1}: {len(matching)} pairs"
    return "\n".join([head] + _pair_lines(matching)), True


def _check_one(n, k, m0, m1):
    params = HypersimplexParams(n, k)
    mp = MatchParams(m0, m1)
    faces = enumerate_faces(params)
    matching = build_matching(params, mp, faces)
    report = verify_matching(params, mp, matching, faces)
    witness = detect_cycle(build_hasse(params, matching, faces))
    return matching, report, witness


def cmd_verify(args):
    params = _params(args)
    mp = _match_params(args, params)
    matching, report, witness = _check_one(params.n, params.k, mp.m0, mp.m1)
    vpath = find_closed_vpath(params, matching)
    census = unmatched_census(params, matching)
    agree = (witness is None) == (vpath is None)

    forman = None
    if args.perturb:
        rng = random.Random(args.seed)
        faces = enumerate_faces(params)
        agreements = cyclic = 0
        for _ in range(args.perturb):
            m = perturb_matching(matching, rng, steps=rng.randint(1, 6), faces=faces)
            w = detect_cycle(build_hasse(params, m, faces))
            v = find_closed_vpath(params, m)
            agreements += (w is None) == (v is None)
            cyclic += w is not None
        forman = {"samples": args.perturb, "seed": args.seed,
                  "agreements": agreements, "cyclic": cyclic}
        agree = agree and agreements == args.perturb

    ok = report.ok and witness is None and agree
    if args.format == "json":
        out = {"n": params.n, "k": params.k, "m0": mp.m0, "m1": mp.m1,
               "report": report.as_dict(),
               "verdict": verdict_dict(witness, census),
               "vpath_agrees": agree,
               "pairs": matching.to_dict()["pairs"]}
        if forman is not None:
            out["forman"] = forman
        return json.dumps(out, indent=2), ok
    lines = [f"{params}, m0={mp.m0}, m1={mp.m1}"]
    for name, value in report.as_dict().items():
        if name != "problems":
            lines.append(f"  {name:<17} {'pass' if value else 'FAIL'}")
    lines += [f"  ! {p}" for p in report.problems]
    lines.append(f"  {'acyclic':<17} {'pass' if witness is None else 'FAIL'}")
    if witness is not None:
        lines.append("  cycle: " + " -> ".join(format_label(f) for f in witness))
    lines.append(f"  {'vpath agreement':<17} {'pass' if agree else 'FAIL'}")
    if forman is not None:
        lines.append(f"  perturbed: {forman['agreements']}/{forman['samples']} agree "
                     f"({forman['cyclic']} cyclic), seed {args.seed}")
    lines.append(f"pairs ({len(matching)}):")
    lines += _pair_lines(matching)
    return "\n".join(lines), ok


def _sweep_cell(job):
    n, k, m0, m1 = job
    _, report, witness = _check_one(n, k, m0, m1)
    if report.ok and witness is None:
        return "complete+acyclic"
    failed = [name for name, v in report.as_dict().items()
              if v is False]
    if witness is not None:
        failed.append("acyclic")
    return "FAIL:" + ",".join(failed)


def cmd_sweep(args):
    params = _params(args)
    if params.k < 2:
        raise UsageError(
            f"unsupported parameters: the matching family needs k >= 2, got k={params.k}")
    jobs = [(params.n, params.k, mp.m0, mp.m1) for mp in all_match_params(params)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            verdicts = list(pool.map(_sweep_cell, jobs))
    else:
        verdicts = [_sweep_cell(j) for j in jobs]
    ok = all(v == "complete+acyclic" for v in verdicts)
    cells = [{"m0": j[2], "m1": j[3], "verdict": v} for j, v in zip(jobs, verdicts)]
    if args.format == "json":
        return json.dumps({"n": params.n, "k": params.k, "grid": cells,
                           "all_pass": ok}, indent=2), ok
    m1s = list(range(1, params.k))
    width = max(len(v) for v in verdicts)
    lines = [f"{params}: rows m0 = 0..{params.n - params.k - 1}, "
             f"columns m1 = 1..{params.k - 1}",
             "m0\\m1 " + " ".join(f"{m1:<{width}}" for m1 in m1s)]
    for m0 in range(params.n - params.k):
        row = [c["verdict"] for c in cells if c["m0"] == m0]
        lines.append(f"{m0:<5} " + " ".join(f"{v:<{width}}" for v in row))
    return "\n".join(lines), ok


def cmd_hasse(args):
    params = _params(args)
    mp = _match_params(args, params, required=False)
    matching = None if mp is None else build_matching(params, mp)
    return to_dot(build_hasse(params, matching)), True


def cmd_homology(args):
    params = _params(args)
    note = None
    if args.subcomplex:
        try:
            lines = Path(args.subcomplex).read_text().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read {args.subcomplex}: {exc}")
        sub, added = read_subcomplex(params, lines)
        note = f"closure added {added} face(s)"
    elif args.boundary:
        sub = boundary_complex(params)
    else:
        sub = full_complex(params)
    complex_ = boundary_matrices(order_complex(params, sub))
    groups = homology_of(complex_)
    for d in range(-1, sub.top_dimension + 1):
        groups.setdefault(d, type(groups[-1])(0))
    chi = euler_characteristic(params, sub)
    chi_betti = sum((-1) ** d * g.betti for d, g in groups.items() if d >= 0)
    ok = all(complex_.boundary[d].matmul(complex_.boundary[d + 1]).is_zero()
             for d in complex_.boundary if d + 1 in complex_.boundary)
    # with H_{-1} = 0 the reduced Betti numbers miss the extra 1 of chi
    ok &= chi == chi_betti + (1 if groups[-1].is_zero else 0)

    if args.export_matrices:
        outdir = Path(args.export_matrices)
        outdir.mkdir(parents=True, exist_ok=True)
        for d, mat in sorted(complex_.boundary.items()):
            body = "".join(f"{i} {j} {v}\n" for i, j, v in mat.triplets())
            (outdir / f"boundary_{d}.txt").write_text(
                f"# rows {mat.nrows} cols {mat.ncols}\n" + body)

    if args.format == "json":
        out = {"n": params.n, "k": params.k, "faces": len(sub.faces),
               "euler_characteristic": chi, "homology": homology_records(groups)}
        if note:
            out["note"] = note
        return json.dumps(out, indent=2), ok
    what = ("subcomplex" if args.subcomplex
            else "boundary" if args.boundary else "full complex")
    lines = [f"{params} {what}: {len(sub.faces)} faces, euler characteristic {chi}"]
    if note:
        lines.append(note)
    lines.append("reduced homology:")
    lines += [f"  H~_{d:<2} = {g}" for d, g in sorted(groups.items())]
    return "\n".join(lines), ok


COMMANDS = {
    "faces": cmd_faces,
    "match": cmd_match,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "hasse": cmd_hasse,
    "homology": cmd_homology,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypermorse",
        description="Complete acyclic Morse matchings on hypersimplices J(n,k).")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--k", type=int, required=True)
    common.add_argument("--format", choices=("text", "json", "dot"), default=None)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--m0", type=int)
    pair.add_argument("--m1", type=int)

    sub.add_parser("faces", parents=[common], help="face census")
    sub.add_parser("match", parents=[common, pair], help="list matched pairs")
    p = sub.add_parser("verify", parents=[common, pair],
                       help="check one matching")
    p.add_argument("--perturb", type=int, default=0, metavar="N",
                   help="also compare both acyclicity tests on N perturbed matchings")
    p = sub.add_parser("sweep", parents=[common], help="check every (m0, m1)")
    p.add_argument("--jobs", type=int, default=1)
    sub.add_parser("hasse", parents=[common, pair], help="DOT export of H(V)")
    p = sub.add_parser("homology", parents=[common], help="reduced homology")
    p.add_argument("--boundary", action="store_true",
                   help="drop the top cell")
    p.add_argument("--subcomplex", metavar="PATH",
                   help="file of labels, one per line; closed downward")
    p.add_argument("--export-matrices", metavar="DIR",
                   help="write boundary maps as 'row col value' triplets")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    if args.command == "hasse":
        if fmt not in (None, "dot"):
            parser.error("hasse only writes DOT")
        args.format = "dot"
    elif fmt == "dot":
        parser.error("DOT output is only available for hasse")
    elif fmt is None:
        args.format = "text"
    try:
        text, ok = COMMANDS[args.command](args)
    except (UsageError, ParameterError, LabelError, SubcomplexError) as exc:
        print(f"hypermorse: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
