"""Command-line front end.

Exit codes: 0 ok, 1 verification mismatch, 2 invalid input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from . import bipartite_words as bw
from .automorphism import (
    automorphisms,
    find_nontrivial_automorphism,
    format_permutation,
    is_distinguishing,
    is_rigid,
)
from .config import Caps, InvalidInputError, ResourceCapError, default_caps
from .constructions import (
    all_out_biclique,
    find_asymmetric_latin_square,
    latin_to_arc_colouring,
    rigid_orientation,
)
from .distinguishing import (
    MAX,
    MIN,
    ExtremalResult,
    Kind,
    extremal,
    merge_extremal,
    parameter_value,
)
from .graph_core import Labelling, build_family, is_proper, orient
from .latin import is_asymmetric_latin
from .report import arcs_str, labelling_str, permutation_str, table_text, write_csv, write_figure
from .verify import parse_rows, verify_table

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # keep argparse's exit code 2 but route through one place
        self.print_usage(sys.stderr)
        raise InvalidInputError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--quiet", action="store_true", help="print nothing; rely on the exit code")
    p.add_argument("--timing", action="store_true", help="fill elapsed_ms (off by default so output is reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orientdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="parameter of one orientation")
    p.add_argument("--family", required=True)
    p.add_argument("--orientation", required=True, help="0/1 string, one bit per edge in canonical order")
    p.add_argument("--param", required=True, choices=[k.value for k in Kind])
    p.add_argument("--labelling", help="comma-separated labels to check instead of searching")
    _common(p)

    p = sub.add_parser("extremal", help="min or max of a parameter over all orientations")
    p.add_argument("--family", required=True)
    p.add_argument("--param", required=True, choices=[k.value for k in Kind])
    p.add_argument("--dir", required=True, choices=[MIN, MAX])
    p.add_argument("--jobs", type=int, default=1)
    _common(p)

    p = sub.add_parser("verify", help="recompute a result table")
    p.add_argument("--table", required=True, type=int, choices=[1, 2])
    p.add_argument("--rows", default=None, help="'all' (default), '3', '1-5' or '1-3,8'")
    p.add_argument("--max-size", type=int, default=12, help="largest edge count instantiated (default 12)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", help="also write the table as CSV to this path")
    p.add_argument("--figure", help="also render the table to this image path (matplotlib)")
    _common(p)

    p = sub.add_parser("construct", help="explicit constructions with certificates")
    csub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    q = csub.add_parser("rigid")
    q.add_argument("--family", required=True)
    q.add_argument("--budget", type=int, default=200_000)
    _common(q)
    q = csub.add_parser("words")
    q.add_argument("--m", type=int, required=True)
    group = q.add_mutually_exclusive_group(required=True)
    group.add_argument("--deleted", help="comma-separated deleted words ('' for none)")
    group.add_argument("--words", help="comma-separated Y-words in Y order")
    q.add_argument("--analyze", action="store_true", help="report twins, antitwins and rigidity")
    _common(q)
    for name, text in (("cycling", "K_{m,n} orientation with cycling Y out-degrees and its labellings"), ("theorem54", "alias of cycling")):
        q = csub.add_parser(name, help=text)
        q.add_argument("--m", type=int, required=True)
        q.add_argument("--n", type=int, required=True)
        _common(q)
    q = csub.add_parser("latin")
    q.add_argument("--order", type=int, required=True)
    q.add_argument("--budget", type=int, default=100_000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--exhaustive-6", action="store_true", help="complete search at order 6 (slow)")
    _common(q)
    return parser


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _base(args: argparse.Namespace, argv: Sequence[str]) -> dict[str, Any]:
    return {"command": " ".join(argv), "status": "ok"}


def _parse_labelling(text: str, target: str) -> Labelling:
    try:
        labels = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InvalidInputError(f"bad labelling {text!r}") from None
    return Labelling(target, labels)


def cmd_compute(args: argparse.Namespace, caps: Caps) -> tuple[dict[str, Any], int]:
    g = build_family(args.family, caps)
    og = orient(g, args.orientation)
    kind = Kind.parse(args.param)
    rep: dict[str, Any] = {"family": args.family, "m_edges": g.n_edges, "parameter": kind.value}
    if args.labelling is not None:
        lab = _parse_labelling(args.labelling, kind.target)
        lab.check_length(og)
        proper = is_proper(og, lab)
        dist = is_distinguishing(og, lab, caps)
        rep.update(labelling=labelling_str(lab), labels_used=lab.n_used, proper=proper, distinguishing=dist)
        ok = dist and (proper or not kind.proper)
        rep["valid_witness"] = ok
        return rep, EXIT_OK if ok else EXIT_MISMATCH
    value, lab = parameter_value(og, kind, caps)
    rep.update(
        value=value,
        witness_mask=str(og.mask()),
        witness_labelling=labelling_str(lab),
        orientations_scanned=1,
    )
    return rep, EXIT_OK


def _extremal_jobs(g, kind: Kind, direction: str, jobs: int, caps: Caps) -> ExtremalResult:
    half = 1 << max(g.n_edges - 1, 0)
    if jobs <= 1 or half < 2 * jobs:
        return extremal(g, kind, direction, caps)
    bounds = [half * i // jobs for i in range(jobs + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(extremal, g, kind, direction, caps, bounds[i], bounds[i + 1]) for i in range(jobs)
        ]
        return merge_extremal([f.result() for f in futures], direction)


def cmd_extremal(args: argparse.Namespace, caps: Caps) -> tuple[dict[str, Any], int]:
    g = build_family(args.family, caps)
    kind = Kind.parse(args.param)
    res = _extremal_jobs(g, kind, args.dir, args.jobs, caps)
    rep = {
        "family": args.family,
        "m_edges": g.n_edges,
        "parameter": f"{kind.value}{args.dir}",
        "value": res.value,
        "witness_mask": str(res.witness_mask),
        "witness_labelling": labelling_str(res.witness_labelling),
        "orientations_scanned": res.orientations_scanned,
    }
    return rep, EXIT_OK


def cmd_verify(args: argparse.Namespace, caps: Caps) -> tuple[dict[str, Any], int]:
    explicit = args.rows is not None and args.rows.strip().lower() != "all"
    rows = parse_rows(args.rows, args.table) if explicit else None
    results = verify_table(args.table, rows, args.max_size, args.jobs, caps)
    if args.csv:
        write_csv(results, args.table, args.csv)
    if args.figure:
        write_figure(results, args.table, args.figure)
    ok = all(r.match for r in results)
    rep = {
        "table": args.table,
        "max_size": args.max_size,
        "rows": [r.as_dict() for r in results],
        "all_match": ok,
        "_text": table_text(results, args.table),
    }
    if not ok:
        rep["status"] = "mismatch"
    return rep, EXIT_OK if ok else EXIT_MISMATCH


def _certificate(og, caps: Caps) -> dict[str, Any]:
    try:
        size = len(automorphisms(og, caps))
    except ResourceCapError:
        size = None
    return {"rigid": is_rigid(og, caps), "group_size": size}


def cmd_rigid(args: argparse.Namespace, caps: Caps) -> tuple[dict[str, Any], int]:
    g = build_family(args.family, caps)
    rep: dict[str, Any] = {"family": args.family, "m_edges": g.n_edges}
    if g.parts is not None and g.parts[0] != g.parts[1]:
        m, n = g.parts
        result = bw.rigid_orientation_exists(m, n, args.budget, caps)
        rep.update(existence=result.status, reason=result.reason)
        if result.deleted is not None:
            rep["deleted_words"] = str(result.deleted)
        if result.witness is None:
            if result.automorphism is not None:
                rep["example_mask"] = str(result.example.mask())
                rep["example_automorphism"] = format_permutation(result.automorphism)
            rep["status"] = result.status
            return rep, EXIT_OK
        og = result.witness
    else:
        og = rigid_orientation(args.family, caps, args.budget)
    rep.update(witness_mask=str(og.mask()), arcs=arcs_str(og), certificate=_certificate(og, caps))
    return rep, EXIT_OK


def cmd_words(args: argparse.Namespace, caps: Caps) -> tuple[dict[str, Any], int]:
    m = args.m
    rep: dict[str, Any] = {"m": m}
    if args.deleted is not None:
        dw = bw.DeletedWordSet.parse(m, args.deleted)
        og = bw.from_deleted_words(dw, caps)
        rep["deleted_words"] = str(dw)
        rep["in_degrees_from_deleted"] = [bw.in_degree_from_deleted(dw, i) for i in range(m)]
    else:
        ws = bw.WordSet(m, tuple(w.strip() for w in args.words.split(",") if w.strip()))
        og = bw.orientation_from_words(ws, caps)
    ws = bw.words_of(og)
    rep.update(
        n=ws.n,
        words=bw.serialize_words(ws.words),
        witness_mask=str(og.mask()),
        in_degrees=[og.in_degree(x) for x in range(m)],
    )
    if args.analyze:
        rep["full_twins"] = bw.name_pairs(og, bw.full_twins(og))
        rep["full_antitwins"] = bw.name_pairs(og, bw.full_antitwins(og))
        rep["pair_antitwins"] = {
            f"{{x{a + 1},x{b + 1}}}": bw.name_pairs(og, bw.pair_antitwins(og, a, b))
            for a in range(m)
            for b in range(a + 1, m)
        }
        p = find_nontrivial_automorphism(og, None, caps)
        rep["rigid"] = p is None
        rep["automorphism"] = permutation_str(p)
    return rep, EXIT_OK


def cmd_cycling(args: argparse.Namespace, caps: Caps) -> tuple[dict[str, Any], int]:
    c = bw.degree_cycling_orientation(args.m, args.n, caps)
    og = c.orientation
    m, n = args.m, args.n
    out_deg = [og.out_degree(m + i) for i in range(n)]
    p1 = all(out_deg[j - 1] == 1 + j % (m - 1) for j in range(1, n + 1))
    p2 = all(og.out_neighbours(m + i * (m - 1) - 1) == {i - 1} for i in range(1, m + 1))
    rep = {
        "m": m,
        "n": n,
        "words": bw.serialize_words(bw.words_of(og).words),
        "witness_mask": str(og.mask()),
        "y_out_degrees": out_deg,
        "degree_cycle_holds": p1,
        "special_vertices_hold": p2,
        "labelling": labelling_str(c.labelling),
        "labels_used": c.labelling.n_used,
        "distinguishing": is_distinguishing(og, c.labelling, caps),
        "proper_labelling": labelling_str(c.proper_labelling),
        "proper_labels_used": c.proper_labelling.n_used,
        "proper": is_proper(og, c.proper_labelling),
        "proper_distinguishing": is_distinguishing(og, c.proper_labelling, caps),
    }
    return rep, EXIT_OK


def cmd_latin(args: argparse.Namespace, caps: Caps) -> tuple[dict[str, Any], int]:
    L = find_asymmetric_latin_square(args.order, args.budget, args.seed, args.exhaustive_6)
    rep: dict[str, Any] = {"order": args.order, "budget": args.budget, "seed": args.seed}
    if L is None:
        rep.update(found=False, status="not found")
        return rep, EXIT_OK
    rep.update(found=True, square=str(L), asymmetric=is_asymmetric_latin(L))
    og = all_out_biclique(L.n, L.n, caps)
    lab = latin_to_arc_colouring(L, og)
    rep["all_out_colouring"] = {
        "proper": is_proper(og, lab),
        "distinguishing": is_distinguishing(og, lab, caps),
        "labels_used": lab.n_used,
    }
    return rep, EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "extremal": cmd_extremal,
    "verify": cmd_verify,
    ("construct", "rigid"): cmd_rigid,
    ("construct", "words"): cmd_words,
    ("construct", "cycling"): cmd_cycling,
    ("construct", "theorem54"): cmd_cycling,
    ("construct", "latin"): cmd_latin,
}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _text(rep: dict[str, Any]) -> str:
    lines = []
    for key, value in rep.items():
        if key in ("_text", "rows"):
            continue
        if isinstance(value, str) and "\n" in value:
            lines.append(f"{key}:")
            lines += [f"  {line}" for line in value.splitlines()]
        elif isinstance(value, (dict, list)):
            lines.append(f"{key}\t{json.dumps(value, sort_keys=False)}")
        else:
            lines.append(f"{key}\t{value}")
    if "_text" in rep:
        lines.append(rep["_text"])
    return "\n".join(lines)


def _emit(rep: dict[str, Any], args: argparse.Namespace) -> None:
    if getattr(args, "quiet", False):
        return
    if getattr(args, "json", False):
        print(json.dumps({k: v for k, v in rep.items() if k != "_text"}, indent=2))
    else:
        print(_text(rep))


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = None
    try:
        args = build_parser().parse_args(argv)
        caps = default_caps()
        key = args.command if args.command != "construct" else ("construct", args.what)
        start = time.perf_counter()
        body, code = COMMANDS[key](args, caps)
        rep = _base(args, argv)
        rep.update(body)
        rep["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 1) if args.timing else None
    except InvalidInputError as exc:
        return _fail(args, argv, "invalid input", str(exc), EXIT_INVALID)
    except ResourceCapError as exc:
        return _fail(args, argv, "resource cap", str(exc), EXIT_CAP)
    _emit(rep, args)
    return code


def _fail(args, argv: Sequence[str], status: str, message: str, code: int) -> int:
    print(f"orientdist: {status}: {message}", file=sys.stderr)
    if args is not None and getattr(args, "json", False) and not getattr(args, "quiet", False):
        print(json.dumps({"command": " ".join(argv), "status": status, "error": message}, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
