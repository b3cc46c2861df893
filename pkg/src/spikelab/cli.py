"""Command-line front end.

Exit codes: 0 pass, 1 a check or precondition failed, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bits import elements_of, mask_of
from .constructions import elongation, named_matroid, truncation
from .errors import Insufficient, NotFound, SpikelabError
from .extremal import (
    bound,
    disjoint_circuits,
    disjoint_cocircuits_2t,
    small_structure_audit,
    sunflower_extract,
    trapped_circuit,
    SetFamily,
)
from .io import dumps, family_to_dict, read_family, read_matroid
from .matroid import validate_circuit_axioms
from .report import AuditReport
from .spikes import (
    SpikeCertificate,
    audit_spike,
    find_spike_partition,
    has_property,
    is_t_spike,
    make_spike,
    one_spike,
    spike_down,
    spike_up,
    tip_extension,
)

AUDIT_CHECKS = ("axioms", "property", "spike", "order", "rank", "lambda", "circuits",
                "connectivity", "small-structure")


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return read_matroid(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except (ValueError, SpikelabError) as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from exc


def _print_report(rep: AuditReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(rep.format())
    return 0 if rep.passed else 1


# gen ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    kind = args.kind
    try:
        if kind == "uniform":
            if args.t is None or args.n is None:
                raise UsageError("uniform needs --t and --n")
            text = dumps(named_matroid("uniform", args.t, args.n))
        elif kind in ("wheel", "whirl"):
            if args.order is None:
                raise UsageError(f"{kind} needs --order")
            text = dumps(named_matroid(kind, args.order))
        elif kind == "one-spike":
            if args.order is None:
                raise UsageError("one-spike needs --order")
            M, pi = one_spike(args.order)
            text = dumps(M, arms=pi, t=1)
        else:
            if args.t is None or args.order is None:
                raise UsageError("free-spike needs --t and --order")
            if args.order < 2 * args.t - 1:
                raise UsageError(f"order < 2t-1 ({args.order} < {2 * args.t - 1})")
            M, pi, _ = make_spike(args.t, args.order)
            text = dumps(M, arms=pi, t=args.t)
    except SpikelabError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    _emit(text, args.out)
    return 0


# audit -------------------------------------------------------------------------

def _resolve_spike(doc, t: int, rep: AuditReport):
    M = doc.matroid
    arms = doc.arms
    if arms is None:
        try:
            arms = find_spike_partition(M, t) if M.n % 2 == 0 else None
        except SpikelabError as exc:
            rep.add("spike", False, f"{type(exc).__name__}: {exc}")
            return None
        if arms is None:
            rep.add("spike", False, f"NotFound: no {t}-spike partition")
            return None
    if arms.support != M.ground:
        rep.add("spike", False, "arms do not cover the ground set", arms.lists())
        return None
    res = is_t_spike(M, arms, t)
    if isinstance(res, SpikeCertificate):
        rep.add("spike", True, f"{t}-spike of order {res.order}", res.to_dict())
        return arms
    for f in res.findings:
        rep.add("spike", f.passed, f.message, f.witness)
    return None


def cmd_audit(args) -> int:
    doc = _load(args.input)
    M = doc.matroid
    t = args.t if args.t is not None else doc.t
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in checks if c not in AUDIT_CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; choose from {', '.join(AUDIT_CHECKS)}")
    needs_t = [c for c in checks if c != "axioms"]
    if needs_t and t is None:
        raise UsageError(f"checks {needs_t} need --t (or a t field in the file)")
    rep = AuditReport(f"audit {args.input}")
    if "axioms" in checks:
        rep.extend(validate_circuit_axioms(M))
    if "property" in checks:
        rep.extend(has_property(M, t, 2 * t))
    if "small-structure" in checks:
        try:
            rep.extend(small_structure_audit(M, t))
        except SpikelabError as exc:
            rep.add("small-structure", False, f"{type(exc).__name__}: {exc}")
    spike_checks = [c for c in checks if c in ("order", "rank", "lambda", "circuits", "connectivity")]
    if "spike" in checks or spike_checks:
        arms = _resolve_spike(doc, t, rep)
        if arms is not None and spike_checks:
            rep.extend(audit_spike(M, arms, t, checks=spike_checks))
    return _print_report(rep, args.json)


# transform ----------------------------------------------------------------------

def cmd_transform(args) -> int:
    doc = _load(args.input)
    M, arms, t = doc.matroid, doc.arms, doc.t
    op = args.op
    if op in ("spike-up", "spike-down", "tip-extend") and (arms is None or t is None):
        print(f"PreconditionViolated: {op} needs arms and t in the input file", file=sys.stderr)
        return 1
    try:
        if op == "dual":
            text = dumps(M.dual(), arms=arms, t=t, name=doc.name)
        elif op == "truncate":
            text = dumps(truncation(M), arms=arms, t=t)
        elif op == "elongate":
            text = dumps(elongation(M), arms=arms, t=t)
        elif op == "spike-up":
            N, cert = spike_up(M, arms, t)
            text = dumps(N, arms=arms, t=t + 1, certificate=cert)
        elif op == "spike-down":
            N, cert = spike_down(M, arms, t)
            text = dumps(N, arms=arms, t=t - 1, certificate=cert)
        else:
            N = tip_extension(M, arms, t, samples=args.samples, seed=args.seed)
            text = dumps(N, arms=arms, t=t)
    except SpikelabError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(text, args.out)
    return 0


# search ------------------------------------------------------------------------

def cmd_search(args) -> int:
    doc = _load(args.input)
    try:
        arms = find_spike_partition(doc.matroid, args.t)
    except SpikelabError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if arms is None:
        print(f"NotFound: no {args.t}-spike partition", file=sys.stderr)
        return 1
    cert = is_t_spike(doc.matroid, arms, args.t)
    _emit(dumps(doc.matroid, arms=arms, t=args.t, certificate=cert), args.out)
    return 0


# extremal -----------------------------------------------------------------------

def _family_json(fam) -> str:
    return json.dumps(family_to_dict(fam) if isinstance(fam, SetFamily) else fam) + "\n"


def cmd_extremal(args) -> int:
    what = args.what
    try:
        if what == "bound":
            if not args.args:
                raise UsageError("bound needs --args")
            print(bound(args.name, *args.args, t=args.t))
            return 0
        if what == "sunflower":
            fam = read_family(args.input)
            core, petals = sunflower_extract(fam, args.petals)
            out = {"core": elements_of(core), "petals": sorted(petals.lists())}
            _emit(json.dumps(out) + "\n", args.out)
            return 0
        if what == "trapped":
            M = _load(args.input).matroid
            fam = read_family(args.family)
            C = trapped_circuit(M, fam, mask_of(args.core or []))
            print(json.dumps({"circuit": elements_of(C)}))
            return 0
        M = _load(args.input).matroid
        if what == "disjoint-circuits":
            fam = disjoint_circuits(M, args.l, args.d)
        elif what == "disjoint-cocircuits":
            fam = disjoint_cocircuits_2t(M, args.t, args.d)
        else:
            return _print_report(small_structure_audit(M, args.t), args.json)
        _emit(_family_json(fam), args.out)
        return 0
    except (Insufficient, NotFound) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except SpikelabError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spikelab", description="Matroid, echidna and t-spike toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a named matroid or spike")
    g.add_argument("--kind", required=True, choices=["uniform", "wheel", "whirl", "one-spike", "free-spike"])
    g.add_argument("--t", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--order", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("audit", parents=[common], help="run checks on a matroid or spike file")
    a.add_argument("input")
    a.add_argument("--t", type=int)
    a.add_argument("--checks", default="axioms")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_audit)

    t = sub.add_parser("transform", parents=[common], help="dual, truncation, elongation and spike constructions")
    t.add_argument("input")
    t.add_argument("--op", required=True,
                   choices=["dual", "truncate", "elongate", "spike-up", "spike-down", "tip-extend"])
    t.add_argument("--samples", type=int, default=0, help="random closure checks for tip-extend")
    t.add_argument("--out")
    t.set_defaults(func=cmd_transform)

    s = sub.add_parser("search", parents=[common], help="search for a t-spike partition")
    s.add_argument("input")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    x = sub.add_parser("extremal", parents=[common], help="bounds and extremal procedures")
    xs = x.add_subparsers(dest="what", required=True)
    b = xs.add_parser("bound")
    b.add_argument("--name", required=True, choices=["f", "g", "h"])
    b.add_argument("--args", type=int, nargs="+")
    b.add_argument("--t", type=int)
    sf = xs.add_parser("sunflower")
    sf.add_argument("input", help="set family JSON {n, members}")
    sf.add_argument("--petals", type=int, required=True)
    sf.add_argument("--out")
    tr = xs.add_parser("trapped")
    tr.add_argument("input")
    tr.add_argument("--family", required=True)
    tr.add_argument("--core", type=int, nargs="*")
    dc = xs.add_parser("disjoint-circuits")
    dc.add_argument("input")
    dc.add_argument("--l", type=int, required=True)
    dc.add_argument("--d", type=int, required=True)
    dc.add_argument("--out")
    dk = xs.add_parser("disjoint-cocircuits")
    dk.add_argument("input")
    dk.add_argument("--t", type=int, required=True)
    dk.add_argument("--d", type=int, required=True)
    dk.add_argument("--out")
    ss = xs.add_parser("small-structure")
    ss.add_argument("input")
    ss.add_argument("--t", type=int, required=True)
    ss.add_argument("--json", action="store_true")
    x.set_defaults(func=cmd_extremal)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
