"""Command-line entry point: ``sosgap <subcommand> ...``.

Exit status: 0 when every result is consistent, 2 when a counterexample
candidate was found, 1 on input errors (one-line diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import datetime as _dt
import sys
from typing import Callable, Optional

from . import __version__, gaps
from .degeneracy import DegeneracySequence, HypothesisViolated, NoValidK, minimal_k_sequence, replay_main_theorem, verify_k_claim
from .gaussian import GaussianRational
from .hermitian import (
    IdentityFailure,
    NotDivisible,
    check_sos_identity,
    is_sos,
    signature_decompose,
)
from .io import InstanceFormatError, dumps_record, form_to_doc, load_form, load_polymap, polymap_to_doc
from .polynomial import DimensionMismatch
from .rank import linear_rank, tensor_product, tensor_with_z
from .search import SearchConfig, SearchSpaceTooLarge, exhaustive_scan, falsify
from .sphere_maps import BallMap, NotProper, affine_image_dimension, check_gap_conclusion, is_proper_ball_map

EXIT_OK, EXIT_INPUT, EXIT_CANDIDATE = 0, 1, 2


class UsageError(ValueError):
    """Bad argument value; the message names the flag."""


class Output:
    """Collects human lines and machine records, then prints per --format."""

    def __init__(self, subcommand: str, params: dict, fmt: str):
        self.fmt = fmt
        self.text: list[str] = []
        self.records: list[dict] = []
        self.manifest = {
            "record": "manifest",
            "tool": "sosgap",
            "version": __version__,
            "subcommand": subcommand,
            "parameters": params,
            "inputs": {},
            "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        }

    def add_input(self, path: str, digest: str):
        self.manifest["inputs"][path] = digest

    def line(self, s: str = ""):
        self.text.append(s)

    def record(self, rec: dict):
        self.records.append(rec)

    def flush(self, stream):
        if self.fmt in ("text", "both"):
            m = self.manifest
            stream.write(f"# sosgap {m['version']} {m['subcommand']} {m['timestamp']}\n")
            for path, digest in m["inputs"].items():
                stream.write(f"# input {path} sha256={digest}\n")
            for s in self.text:
                stream.write(s + "\n")
        if self.fmt in ("records", "both"):
            stream.write(dumps_record(self.manifest) + "\n")
            for rec in self.records:
                stream.write(dumps_record(rec) + "\n")


def _table(rows: list[list], header: list[str]) -> list[str]:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]


def _load_map(out: Output, path: str):
    P, digest = load_polymap(path)
    out.add_input(path, digest)
    return P


# ---------------------------------------------------------------- subcommands


def cmd_gaps(args, out: Output) -> int:
    hi = args.max_n if args.max_n is not None else args.n
    if args.n < 2:
        raise UsageError("--n: gap tables need n >= 2")
    if hi < args.n:
        raise UsageError("--max-n: must be at least --n")
    for n in range(args.n, hi + 1):
        t = gaps.gap_table(n)
        out.line(f"n={n}  kappa0={t.kappa0}  D_n={t.d_max}")
        out.text.extend("  " + s for s in _table([[r["kappa"], r["a"], r["b"]] for r in t.rows()], ["kappa", "a", "b"]))
        for r in t.rows():
            out.record({"record": "gap", **r})
    return EXIT_OK


def cmd_classify(args, out: Output) -> int:
    if args.n < 2:
        raise UsageError("--n: classification needs n >= 2")
    if args.r < 0:
        raise UsageError("--r: rank must be non-negative")
    cls = gaps.classify_rank(args.n, args.r)
    out.line(str(cls))
    out.record({"record": "classification", "n": args.n, "r": args.r, "class": cls.label(), "kappa": cls.kappa})
    return EXIT_OK


def cmd_check_sos(args, out: Output) -> int:
    P = _load_map(out, args.file)
    A = check_sos_identity(P)
    rep = linear_rank(P)
    cls = gaps.classify_rank(P.n, rep.rank) if P.n >= 2 else None
    out.line(f"A = {A}")
    out.line(f"rank r = {rep.rank}")
    out.line(f"class = {cls if cls is not None else 'undefined (n < 2)'}")
    label = cls.label() if cls is not None else None
    candidate = cls is not None and cls.tag == "gap"
    if candidate:
        out.line("COUNTEREXAMPLE CANDIDATE: identity holds with a rank inside a gap")
    out.record({
        "record": "check-sos",
        "A": form_to_doc(A),
        "r": rep.rank,
        "class": label,
        "verdict": "counterexample-candidate" if candidate else "consistent",
    })
    return EXIT_CANDIDATE if candidate else EXIT_OK


def cmd_decompose(args, out: Output) -> int:
    H, digest = load_form(args.file)
    out.add_input(args.file, digest)
    dec = signature_decompose(H, strategy=args.strategy)
    cert = is_sos(H, strategy=args.strategy)
    qp, qm = dec.signature
    out.line(f"signature = ({qp}, {qm})")
    out.line(f"sos = {'yes' if cert else 'no'}")
    for label, comps, ws in (("F", dec.F, dec.wplus), ("G", dec.G, dec.wminus)):
        for p, w in zip(comps.components, ws):
            out.line(f"  {label}: {w} * |{p}|^2")
    if not cert:
        out.line(f"witness value = {cert.value}")
    out.record({
        "record": "decomposition",
        "q_plus": qp,
        "q_minus": qm,
        "F": polymap_to_doc(dec.F),
        "wplus": [str(w) for w in dec.wplus],
        "G": polymap_to_doc(dec.G),
        "wminus": [str(w) for w in dec.wminus],
        "sos": bool(cert),
    })
    return EXIT_OK


def cmd_tensor(args, out: Output) -> int:
    F = _load_map(out, args.file)
    if args.with_file:
        H = _load_map(out, args.with_file)
        P = tensor_product(F, H)
    else:
        P = tensor_with_z(F)
    r = linear_rank(P).rank
    out.line(f"components = {P.q}")
    out.line(f"rank r = {r}")
    for p in P.components:
        out.line(f"  {p}")
    out.record({"record": "tensor", "P": polymap_to_doc(P), "r": r})
    return EXIT_OK


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def cmd_degeneracy(args, out: Output) -> int:
    dims = _int_list(args.dims, "--dims")
    try:
        seq = DegeneracySequence(args.n, tuple(dims))
    except ValueError as exc:
        raise UsageError(f"--dims: {exc}") from None
    rep = minimal_k_sequence(seq, args.kappa)
    out.line(f"increments = {rep.increments}")
    out.line(f"k_l = {rep.k_l}  k = {rep.k}  m_l = {rep.m_l}")
    out.record({"record": "k-report", **rep.as_dict()})
    status = EXIT_OK
    if args.kappa is not None:
        claim = verify_k_claim(seq, args.kappa)
        out.line(f"claim k <= kappa-1: {'holds' if claim.claim_holds else 'FAILS'}")
        out.record({"record": "k-claim", **claim.as_dict()})
        if not claim.claim_holds:
            status = EXIT_CANDIDATE
    if args.codim is not None:
        replay = replay_main_theorem(args.n, args.n + args.codim, seq)
        out.line(f"N0 - n = {replay.flat_codim}  bound = {replay.hjy_bound}  "
                 f"{'holds' if replay.bound_holds else 'FAILS'}")
        out.record({"record": "replay", **replay.as_dict()})
        if not replay.bound_holds:
            status = EXIT_CANDIDATE
    return status


def cmd_map(args, out: Output) -> int:
    f = BallMap(_load_map(out, args.file))
    if args.action == "verify":
        q = is_proper_ball_map(f, seed=args.seed)
        hull = affine_image_dimension(f, seed=args.seed)
        out.line("proper: yes")
        out.line(f"quotient = {q}")
        out.line(f"affine hull dimension = {hull.dim}")
        out.record({"record": "map-verify", "proper": True, "quotient": form_to_doc(q), "hull_dim": hull.dim})
        return EXIT_OK
    rep = check_gap_conclusion(f, seed=args.seed)
    out.text.extend(f"{k} = {v}" for k, v in rep.as_dict().items())
    out.record({"record": "map-report", **rep.as_dict()})
    return EXIT_CANDIDATE if rep.status == "VIOLATION" else EXIT_OK


def _parse_coeffs(text: str) -> list[GaussianRational]:
    body = text.strip().strip("{}")
    try:
        return [GaussianRational.parse(x.strip()) for x in body.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"--coeffs: {exc}") from None


def cmd_search(args, out: Output) -> int:
    coeffs = _parse_coeffs(args.coeffs) if args.coeffs else []
    if args.exhaustive and args.coeffs is None:
        raise UsageError("--coeffs: required with --exhaustive")
    try:
        config = SearchConfig(
            n=args.n,
            max_degree=args.degree,
            target=args.target,
            mode="exhaustive" if args.exhaustive else "random",
            trials=args.trials,
            seed=args.seed,
            coefficient_set=tuple(coeffs),
            max_components=args.max_components,
            ceiling=args.ceiling,
            kappa=args.kappa,
        )
    except ValueError as exc:
        raise UsageError(f"--target/--n: {exc}") from None
    out.manifest["parameters"]["config"] = config.as_dict()
    result = exhaustive_scan(config) if args.exhaustive else falsify(config)
    out.line(f"target = {config.target}  mode = {config.mode}")
    out.text.extend(f"{k}: {v}" for k, v in result.statistics.items())
    out.line("rank histogram:")
    out.text.extend(f"  {k}: {v}" for k, v in result.histogram.items())
    for rep in result.candidates:
        out.line(f"CANDIDATE {rep.id} r={rep.r} class={rep.classification}")
    for rep in result.reports if args.all_reports else result.candidates:
        out.record(rep.as_record())
    out.record({"record": "statistics", "statistics": result.statistics, "histogram": result.histogram})
    return EXIT_CANDIDATE if result.candidates else EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sosgap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sosgap {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records", "both"), default="text")
    sub = parser.add_subparsers(dest="subcommand", metavar="subcommand")
    sub.required = True

    p = sub.add_parser("gaps", parents=[common], help="gap interval table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-n", type=int)
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("classify", parents=[common], help="classify a rank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-sos", parents=[common], help="divide ||P||^2 by ||z||^2 and classify rank")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_sos)

    p = sub.add_parser("decompose", parents=[common], help="signature decomposition of a Hermitian form")
    p.add_argument("file")
    p.add_argument("--strategy", choices=("first", "last", "maxabs"), default="first")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("tensor", parents=[common], help="F tensor z (or F tensor H)")
    p.add_argument("file")
    p.add_argument("--with", dest="with_file")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("degeneracy", parents=[common], help="k-bound replay for a degeneracy sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dims", required=True)
    p.add_argument("--kappa", type=int)
    p.add_argument("--codim", type=int)
    p.set_defaults(func=cmd_degeneracy)

    p = sub.add_parser("map", parents=[common], help="sphere map checks")
    p.add_argument("action", choices=("verify", "report"))
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("search", parents=[common], help="falsification search")
    p.add_argument("--target", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--coeffs")
    p.add_argument("--max-components", type=int, default=2)
    p.add_argument("--ceiling", type=int, default=10**9)
    p.add_argument("--kappa", type=int)
    p.add_argument("--all-reports", action="store_true", help="emit every instance record, not only candidates")
    p.set_defaults(func=cmd_search)
    return parser


_PARAM_SKIP = {"func", "format", "subcommand"}


def main(argv: Optional[list] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its diagnostic
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _PARAM_SKIP}
    out = Output(args.subcommand, params, args.format)
    handler: Callable = args.func
    try:
        status = handler(args, out)
    except InstanceFormatError as exc:
        stderr.write(f"sosgap: input error: {exc}\n")
        return EXIT_INPUT
    except (UsageError, DimensionMismatch, HypothesisViolated, NoValidK, SearchSpaceTooLarge) as exc:
        stderr.write(f"sosgap: {exc}\n")
        return EXIT_INPUT
    except IdentityFailure as exc:
        stderr.write(f"sosgap: components: {exc}\n")
        return EXIT_INPUT
    except NotProper as exc:
        stderr.write(f"sosgap: components: not a sphere map: {exc}\n")
        return EXIT_INPUT
    except (NotDivisible, FileNotFoundError, IsADirectoryError) as exc:
        stderr.write(f"sosgap: {exc}\n")
        return EXIT_INPUT
    out.flush(stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
