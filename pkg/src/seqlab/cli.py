"""Command-line interface.

Exit codes: 0 all checks pass, 1 a bound was violated, 2 usage or
validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from contextlib import contextmanager

from .analysis import (
    PairMode,
    ambiguity_surface,
    compare_families,
    rows_to_csv,
    spectrum_max,
    verify_family,
)
from .errors import SeqlabError
from .families import KINDS, FamilyDescriptor
from .field import make_field
from .serialize import dumps, write_family
from .weil import (
    homomorphism_check,
    random_sl2,
    verify_intertwining,
    verify_theorem2,
)

import numpy as np

INDEX_KEYS = ("n", "x", "y", "z", "b", "w")


class UsageError(Exception):
    pass


def parse_bound(expr, p: int):
    """Evaluate a bound such as '2sqrtp', '4*sqrt(p)/(p-1)' or '2'."""
    if expr is None:
        return None
    s = expr.replace(" ", "")
    s = re.sub(r"(\d)(sqrtp|p)", r"\1*\2", s)
    s = s.replace("sqrtp", "sqrt(p)")
    if not re.fullmatch(r"[0-9.+\-*/()]*(?:(?:sqrt|p)[0-9.+\-*/()]*)*", s):
        raise UsageError(f"bad bound expression {expr!r}")
    try:
        return float(eval(s, {"__builtins__": {}}, {"sqrt": math.sqrt, "p": p}))
    except Exception as exc:  # noqa: BLE001
        raise UsageError(f"bad bound expression {expr!r}: {exc}") from exc


def _threads_default():
    try:
        return int(os.environ.get("SEQLAB_THREADS", "1"))
    except ValueError:
        return 1


def _common(sp):
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--generator", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=_threads_default())
    sp.add_argument("--out", default=None)
    sp.add_argument("-v", "--verbose", action="count", default=0)


def _selectors(sp, prefix=""):
    for k in INDEX_KEYS:
        sp.add_argument(f"--{prefix}{k}", type=int, default=None, dest=f"{prefix.replace('-', '_')}{k}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seqlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a family (or one member) as JSON lines")
    _common(g)
    g.add_argument("--family", choices=KINDS, required=True)
    g.add_argument("--format", choices=["jsonl"], default="jsonl")
    _selectors(g)

    v = sub.add_parser("verify", help="check a family against its bounds")
    _common(v)
    v.add_argument("--family", choices=KINDS)
    v.add_argument("--theorem2", action="store_true", help="match the Weil-built split system")
    v.add_argument("--checks", default="ambiguity,ft,classes")
    v.add_argument("--pairs", choices=["exhaustive", "sampled"], default="exhaustive")
    v.add_argument("--samples", type=int, default=20000)
    v.add_argument("--auto-bound")
    v.add_argument("--cross-bound")
    v.add_argument("--ft-bound")
    v.add_argument("--timing", action="store_true", help="include wall time in the report")
    v.add_argument("--format", choices=["json"], default="json")

    a = sub.add_parser("ambiguity", help="write the p x p ambiguity surface as CSV")
    _common(a)
    a.add_argument("--family", choices=KINDS, required=True)
    _selectors(a)
    a.add_argument("--psi-family", choices=KINDS)
    a.add_argument("--psi-p", type=int)
    _selectors(a, "psi-")
    a.add_argument("--naive", action="store_true", help="use the direct sum instead of the FFT")
    a.add_argument("--format", choices=["csv"], default="csv")

    s = sub.add_parser("spectrum", help="per-member maximum Fourier magnitude")
    _common(s)
    s.add_argument("--family", choices=KINDS, required=True)
    _selectors(s)
    s.add_argument("--ft-bound")
    s.add_argument("--format", choices=["csv", "json"], default="csv")

    c = sub.add_parser("compare", help="comparison table of the families")
    _common(c)
    c.add_argument("--samples", type=int, default=20000)
    c.add_argument("--format", choices=["json", "csv"], default="json")

    w = sub.add_parser("weil-check", help="Weil representation identities")
    _common(w)
    w.add_argument("--check", choices=["theorem2", "intertwining", "homomorphism", "all"], default="all")
    w.add_argument("--cases", type=int, default=100, help="random (g, h) cases")
    w.add_argument("--samples", type=int, default=4, help="random sequences per case")
    w.add_argument("--format", choices=["json"], default="json")
    return ap


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _select_members(fam: FamilyDescriptor, args, prefix=""):
    names = fam.index_names()
    given = {k: getattr(args, prefix + k) for k in INDEX_KEYS if getattr(args, prefix + k) is not None}
    extra = set(given) - set(names)
    if extra:
        raise UsageError(f"{fam.kind} has no index {sorted(extra)}; indices are {list(names)}")
    if len(given) == len(names):
        idx = tuple(given[k] for k in names)
        return [idx], [fam.member(*idx)]
    idxs = [idx for idx in fam.indices()
            if all(idx[names.index(k)] == v for k, v in given.items())]
    if not idxs:
        raise UsageError("index filters select no members")
    return idxs, [fam.member(*idx) for idx in idxs]


def cmd_generate(args) -> int:
    f = make_field(args.p, args.generator)
    fam = FamilyDescriptor(args.family, f, normalized=args.family in ("split_oscillator", "extended_split"))
    _, seqs = _select_members(fam, args)
    with _output(args.out) as out:
        write_family(out, fam, seqs)
    return 0


def cmd_verify(args) -> int:
    f = make_field(args.p, args.generator)
    if args.theorem2:
        rep = verify_theorem2(f)
        with _output(args.out) as out:
            out.write(dumps(rep.to_dict()) + "\n")
        return 0 if rep.passed else 1
    if args.family is None:
        raise UsageError("verify needs --family or --theorem2")
    fam = FamilyDescriptor(args.family, f)
    checks = [c for c in args.checks.split(",") if c]
    bad = set(checks) - {"ambiguity", "ft", "classes"}
    if bad:
        raise UsageError(f"unknown checks {sorted(bad)}")
    mode = PairMode("exhaustive") if args.pairs == "exhaustive" else PairMode.sampled(args.seed, args.samples)
    rep = verify_family(
        f, fam,
        auto_bound=parse_bound(args.auto_bound, f.p),
        cross_bound=parse_bound(args.cross_bound, f.p),
        ft_bound=parse_bound(args.ft_bound, f.p),
        pair_mode=mode, checks=checks, threads=args.threads,
    )
    if args.verbose:
        print(f"verify {fam.kind} p={f.p}: {'pass' if rep.passed else 'FAIL'} {rep.measured}", file=sys.stderr)
    with _output(args.out) as out:
        out.write(dumps(rep.to_dict(timing=args.timing)) + "\n")
    return 0 if rep.passed else 1


def cmd_ambiguity(args) -> int:
    f = make_field(args.p, args.generator)
    _, phis = _select_members(FamilyDescriptor(args.family, f), args)
    if len(phis) != 1:
        raise UsageError("ambiguity needs a selector resolving to exactly one member")
    psi = None
    if args.psi_family is not None:
        fp = make_field(args.psi_p, None) if args.psi_p else f
        _, psis = _select_members(FamilyDescriptor(args.psi_family, fp), args, "psi_")
        if len(psis) != 1:
            raise UsageError("the --psi-* selector must resolve to exactly one member")
        psi = psis[0]
        if psi.p != phis[0].p:
            raise UsageError(f"period mismatch: {phis[0].p} vs {psi.p}")
    surf = ambiguity_surface(phis[0], psi, fast=not args.naive)
    with _output(args.out) as out:
        out.write(surf.to_csv())
    return 0


def cmd_spectrum(args) -> int:
    f = make_field(args.p, args.generator)
    fam = FamilyDescriptor(args.family, f)
    idxs, seqs = _select_members(fam, args)
    bound = parse_bound(args.ft_bound, f.p)
    rows = []
    for idx, s in zip(idxs, seqs):
        rows.append({"index": "/".join(map(str, idx)), "label": s.label, "ft_max": spectrum_max(s)})
    worst = max(r["ft_max"] for r in rows)
    with _output(args.out) as out:
        if args.format == "csv":
            out.write("index,label,ft_max\n")
            for r in rows:
                out.write(f"{r['index']},\"{r['label']}\",{r['ft_max']:.17g}\n")
        else:
            out.write(dumps({"p": f.p, "generator": f.a, "family": fam.kind, "ft_bound": bound,
                             "ft_max": worst, "members": rows}) + "\n")
    return 1 if bound is not None and worst > bound + 1e-6 else 0


def cmd_compare(args) -> int:
    f = make_field(args.p, args.generator)
    if f.p < 5:
        raise UsageError("compare needs p >= 5")
    rows = compare_families(f, sample_threshold=args.samples, seed=args.seed, threads=args.threads)
    with _output(args.out) as out:
        if args.format == "csv":
            out.write(rows_to_csv(rows))
        else:
            out.write(dumps({"p": f.p, "generator": f.a, "rows": rows}) + "\n")
    return 0


def cmd_weil_check(args) -> int:
    f = make_field(args.p, args.generator)
    reports = []
    if args.check in ("theorem2", "all"):
        reports.append(verify_theorem2(f).to_dict())
    rng = np.random.default_rng(args.seed)
    for kind in ("intertwining", "homomorphism"):
        if args.check not in (kind, "all"):
            continue
        worst, ok, kinds = 0.0, True, {}
        for case in range(args.cases):
            g = random_sl2(f.p, rng)
            if kind == "intertwining":
                h = tuple(int(v) for v in rng.integers(0, f.p, size=3))
                r = verify_intertwining(f, g, h, args.samples, seed=args.seed + case)
            else:
                r = homomorphism_check(f, g, random_sl2(f.p, rng), args.samples, seed=args.seed + case)
            worst = max(worst, r.worst_residual)
            ok = ok and r.passed
            k = r.scalars_summary["kind"]
            kinds[k] = kinds.get(k, 0) + 1
        reports.append({"p": f.p, "check": kind, "pass": ok, "samples": args.cases * args.samples,
                        "cases": args.cases, "worst_residual": worst, "scalars_summary": kinds,
                        "witnesses": []})
    with _output(args.out) as out:
        out.write(dumps({"generator": f.a, "reports": reports}) + "\n")
    return 0 if all(r["pass"] for r in reports) else 1


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "ambiguity": cmd_ambiguity,
    "spectrum": cmd_spectrum,
    "compare": cmd_compare,
    "weil-check": cmd_weil_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return COMMANDS[args.command](args)
    except (SeqlabError, UsageError, ValueError) as exc:
        print(f"seqlab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
