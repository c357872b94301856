"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 parse or usage error.  With
``--json`` every invocation prints exactly one JSON document, errors included.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .evaluate import evaluate, parse_value
from .field import GF, ModulusMismatch, RationalFn, mono_str
from .graded import (
    CertificateError,
    StructureError,
    chain_compare,
    find_certificate,
    generation_check,
    gr_ideal,
    quotient_dims,
)
from .invariants import (
    InvariantMismatch,
    almost_equal,
    candidate_c1,
    invariant_derivative,
    separation_sweep,
)
from .ore import LambdaSeq, OreRing, commutator, ore_pow, ore_pth_root, t_word
from .relations import RelationFileError, read_relations
from .syntax import ParseError, to_text


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--json", action="store_true", help="emit a single JSON document")
    return parent


def _prime_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-p", type=int, required=True, help="the prime")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skewgr", description="Exact computations in K[x; delta] and graded free algebras.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    common = _common()
    prime = _prime_parent()

    lam = argparse.ArgumentParser(add_help=False)
    lam.add_argument("--lambda", dest="lam", required=True, help='sequence as "prefix;tail", e.g. "1,0;2"')

    lam2 = argparse.ArgumentParser(add_help=False)
    lam2.add_argument("--lambda2", dest="lam2", required=True, help="second sequence")

    field = groups.add_parser("field", help="rational functions over F_p")
    fa = field.add_subparsers(dest="action", required=True, parser_class=_Parser)
    fa.add_parser("eval", parents=[common, prime]).add_argument("expr")
    d = fa.add_parser("diff", parents=[common, prime])
    d.add_argument("-k", type=int, required=True, help="differentiate in t_k")
    d.add_argument("expr")
    r = fa.add_parser("pthroot", parents=[common, prime])
    r.add_argument("--strict", action="store_true", help="exit 1 when no root exists")
    r.add_argument("expr")
    fa.add_parser("decompose", parents=[common, prime]).add_argument("expr")

    ore = groups.add_parser("ore", help="the ring K[x; delta_lambda]")
    oa = ore.add_subparsers(dest="action", required=True, parser_class=_Parser)
    oa.add_parser("mul", parents=[common, prime, lam]).add_argument("exprs", nargs="+")
    c = oa.add_parser("commutator", parents=[common, prime, lam])
    c.add_argument("a")
    c.add_argument("b")
    pw = oa.add_parser("pow", parents=[common, prime, lam])
    pw.add_argument("expr")
    pw.add_argument("n", type=int)
    r = oa.add_parser("pthroot", parents=[common, prime, lam])
    r.add_argument("--strict", action="store_true", help="exit 1 when no root is found")
    r.add_argument("expr")
    tw = oa.add_parser("tword", parents=[common, prime, lam])
    tw.add_argument("-k", type=int, required=True)

    inv = groups.add_parser("inv", help="invariants separating the rings")
    ia = inv.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("c1", "dc1"):
        sp = ia.add_parser(name, parents=[common, prime, lam, lam2])
        sp.add_argument("-k", type=int, required=True)
    ia.add_parser("sweep", parents=[common, prime, lam, lam2]).add_argument("-K", type=int, required=True)
    ia.add_parser("equiv", parents=[common, prime, lam, lam2])

    gr = groups.add_parser("gr", help="associated graded ideals of free-algebra quotients")
    ga = gr.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cut = argparse.ArgumentParser(add_help=False)
    cut.add_argument("--relations", required=True, help="relation file")
    cut.add_argument("-D", type=int, default=4, help="degree cutoff (default 4)")
    cut.add_argument("-s", type=int, default=None, help="slack (default: the cutoff)")
    ga.add_parser("compute", parents=[common, cut]).add_argument("--basis", action="store_true")
    ga.add_parser("dims", parents=[common, cut])
    cmp_ = ga.add_parser("compare", parents=[common, cut])
    cmp_.add_argument("--relations2", required=True, help="relations of the larger ideal")
    cmp_.add_argument("--certificate", help="JSON certificate; searched for when omitted")
    cmp_.add_argument("--search-slack", type=int, default=2, help="extra degree for certificate search")
    gc = ga.add_parser("gencheck", parents=[common, cut])
    gc.add_argument("-k", type=int, required=True, help="generating degrees 0..k")
    return parser


# ---------------------------------------------------------------------------
# Handlers return (human_lines, json_payload)
# ---------------------------------------------------------------------------


def _lambda(spec: str, p: int) -> LambdaSeq:
    try:
        return LambdaSeq.parse(spec, p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _prime(p: int):
    try:
        return GF(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _field_cmd(args):
    F = _prime(args.p)
    f = parse_value(args.expr, F)
    if args.action == "eval":
        return [str(f)], {"value": str(f)}
    if args.action == "diff":
        g = f.partial(args.k)
        return [str(g)], {"value": str(g), "k": args.k}
    if args.action == "pthroot":
        r = f.pth_root()
        if r is None and args.strict:
            raise DomainError(f"{f} is not a p-th power")
        text = None if r is None else str(r)
        return [text or "none"], {"value": text, "exists": r is not None}
    if not f.is_polynomial():
        raise DomainError("decompose needs a polynomial")
    parts = f.num.decompose()
    records = [{"coefficient": str(c), "monomial": mono_str(m) or "1"} for c, m in parts]
    return [f"({r['coefficient']}) * {r['monomial']}" for r in records], {"terms": records}


def _ore_cmd(args):
    lam = _lambda(args.lam, args.p)
    R = OreRing(lam)
    if args.action == "tword":
        word = t_word(lam, args.k)
        value = evaluate(word, R)
        text = to_text(word)
        return [text], {"k": args.k, "expression": text, "value": str(value)}
    if args.action == "mul":
        vals = [parse_value(e, R) for e in args.exprs]
        out = vals[0]
        for v in vals[1:]:
            out = out * v
    elif args.action == "commutator":
        out = commutator(parse_value(args.a, R), parse_value(args.b, R))
    elif args.action == "pow":
        if args.n < 0:
            raise UsageError("exponent must be nonnegative")
        out = ore_pow(parse_value(args.expr, R), args.n)
    else:
        f = parse_value(args.expr, R)
        out = ore_pth_root(f)
        if out is None:
            if args.strict:
                raise DomainError(f"no p-th root of {f} found")
            return ["none"], {"value": None, "exists": False}
        return [str(out)], {"value": str(out), "exists": True}
    return [str(out)], {"value": str(out)}


def _inv_cmd(args):
    lam = _lambda(args.lam, args.p)
    lam2 = _lambda(args.lam2, args.p)
    if args.action == "c1":
        payload = {"k": args.k, "c1": str(candidate_c1(lam, lam2, args.k))}
    elif args.action == "dc1":
        payload = invariant_derivative(lam, lam2, args.k).to_record()
    elif args.action == "sweep":
        payload = [r.to_record() for r in separation_sweep(lam, lam2, args.K)]
    else:
        eq = almost_equal(lam, lam2)
        payload = {"almost_equal": eq.equivalent, "witnesses": list(eq.witnesses)}
    text = json.dumps(payload)
    return [text], payload


def _load_certificate(path, ctx, gens1):
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    entries = raw["certificate"] if isinstance(raw, dict) else raw
    cert = []
    for entry in entries:
        cert.append([(parse_value(t.get("left", "1"), ctx), int(t["gen"]), parse_value(t.get("right", "1"), ctx)) for t in entry])
    return cert


def _gr_cmd(args):
    ctx, gens = read_relations(args.relations)
    slack = args.D if args.s is None else args.s
    if args.D < 0 or slack < 0:
        raise UsageError("-D and -s must be nonnegative")
    if args.action == "compare":
        ctx2, gens2 = read_relations(args.relations2)
        if ctx2 != ctx:
            raise DomainError("relation files use different rings")
        if args.certificate:
            cert = _load_certificate(args.certificate, ctx, gens)
        else:
            cert = []
            for i, f in enumerate(gens):
                entry = find_certificate(ctx, f, gens2, args.search_slack)
                if entry is None:
                    raise CertificateError(f"no containment certificate found for relation {i}: {f}")
                cert.append(entry)
        rep = chain_compare(ctx, gens, gens2, cert, args.D, slack)
        payload = {
            "cutoff": args.D,
            "slack": slack,
            "excess": rep.excess,
            "holds": rep.holds,
            "degrees": [
                {
                    "d": d,
                    "rank1": rep.ranks1[d],
                    "rank2": rep.ranks2[d],
                    "contained": rep.contained[d],
                    "strict": rep.strict[d],
                }
                for d in range(args.D + 1)
            ],
        }
        lines = [f"containment {'holds' if rep.holds else 'FAILS'} (certificate excess {rep.excess})"]
        lines += [
            f"d={r['d']} rank1={r['rank1']} rank2={r['rank2']}"
            f" {'strict' if r['strict'] else ('equal' if r['contained'] else 'NOT CONTAINED')}"
            for r in payload["degrees"]
        ]
        return lines, payload

    table = gr_ideal(ctx, gens, args.D, slack)
    dims = quotient_dims(table)
    if args.action == "gencheck":
        flags = generation_check(table.structure(), args.k)
        payload = {"k": args.k, "generated": list(flags)}
        return [f"d={d} generated={g}" for d, g in enumerate(flags)], payload
    if args.action == "dims":
        payload = {"dims": list(dims.dims), "stabilized": list(table.stabilized)}
        return [" ".join(map(str, dims.dims))], payload
    degrees = []
    for d in range(args.D + 1):
        rec = {"d": d, "rank": table.rank(d), "dim": dims[d], "stabilized": table.stabilized[d]}
        if args.basis:
            rec["basis"] = [str(b) for b in table.basis(d)]
        degrees.append(rec)
    payload = {"p": ctx.p, "weights": list(ctx.weights), "cutoff": args.D, "slack": slack, "degrees": degrees}
    lines = []
    for rec in degrees:
        lines.append(f"d={rec['d']} rank={rec['rank']} dim={rec['dim']} stabilized={rec['stabilized']}")
        for b in rec.get("basis", []):
            lines.append(f"    {b}")
    return lines, payload


_HANDLERS = {"field": _field_cmd, "ore": _ore_cmd, "inv": _inv_cmd, "gr": _gr_cmd}


def _error(json_mode: bool, kind: str, exc: BaseException, out, err) -> None:
    obj = {"type": kind, "message": str(exc)}
    column = getattr(exc, "column", None)
    if column is not None:
        obj["column"] = column
    if json_mode:
        print(json.dumps({"error": obj}), file=out)
    else:
        print(f"error: {exc}", file=err)


def run_command(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    json_mode = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        lines, payload = _HANDLERS[args.group](args)
    except (UsageError, ParseError, RelationFileError) as exc:
        _error(json_mode, "usage" if isinstance(exc, UsageError) else "parse", exc, out, err)
        return 2
    except (
        DomainError,
        ZeroDivisionError,
        ModulusMismatch,
        CertificateError,
        StructureError,
        InvariantMismatch,
        ValueError,
    ) as exc:
        _error(json_mode, "domain", exc, out, err)
        return 1
    except OSError as exc:
        _error(json_mode, "io", exc, out, err)
        return 2
    if json_mode:
        print(json.dumps(payload), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return 0


def main() -> None:
    sys.exit(run_command())
