"""Command line front end: verify suites, enumerate orbit catalogs, and
export the adjacency graph.

Reports are deterministic: a fixed config and seed always produce the same
bytes, so timing lives in the human summary on stderr, never in the report.
Exit codes: 0 all checks pass, 1 some claim failed, 2 usage or budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import geometry as geo
from .gf import field_of_order
from .kernels import BACKEND
from .linalg import BudgetError
from .model import SubmoduleType
from .suites import SUITES, SUITE_NAMES, VerifyContext, summarize

LARGE_BUDGET = 10**9

SET_CHOICES = ("gx", "gy", "galpha", "gbeta", "ggamma", "all")

_SET_ATTR = {
    "gx": ("g_x", SubmoduleType.X),
    "gy": ("g_y", SubmoduleType.Y),
    "galpha": ("g_alpha", SubmoduleType.ALPHA),
    "gbeta": ("g_beta", SubmoduleType.BETA),
    "ggamma": ("g_gamma", SubmoduleType.GAMMA),
}


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--q", type=int, required=True, help="field order (a prime power)")
    p.add_argument(
        "--modulus",
        type=int,
        nargs="+",
        default=None,
        metavar="C",
        help="irreducible modulus coefficients, constant term first (prime powers only)",
    )
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument(
        "--allow-large",
        action="store_true",
        help="lift the enumeration budget guard for big scans",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ternions",
        description="Exact verification of the ternion plane model over GF(q).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and emit a claim report")
    _add_common(v)
    v.add_argument("--suite", default="all", choices=("all",) + SUITE_NAMES)
    v.add_argument(
        "--format",
        default="json",
        choices=("json", "csv"),
        help="csv gives claim rows; with --suite incidence it gives the incidence table",
    )
    v.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("enumerate", help="list the orbit catalog or one orbit")
    _add_common(e)
    e.add_argument("--set", dest="which", default="all", choices=SET_CHOICES)
    e.add_argument("--format", default="json", choices=("json", "csv"))

    g = sub.add_parser("graph", help="export the adjacency graph")
    _add_common(g)
    g.add_argument("--format", default="dot", choices=("dot", "json"))
    return ap


def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _field(args):
    return field_of_order(args.q, args.modulus)


def _budget(args) -> Optional[int]:
    return LARGE_BUDGET if args.allow_large else None


def _config(args, field, extra=None) -> dict:
    cfg = {
        "q": field.q,
        "p": field.p,
        "k": field.k,
        "modulus": list(field.modulus) if field.modulus else None,
        "allow_large": bool(args.allow_large),
    }
    if extra:
        cfg.update(extra)
    return cfg


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def cmd_verify(args) -> int:
    field = _field(args)
    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    ctx = VerifyContext(field, seed=args.seed, budget=_budget(args))
    claims = []
    t_all = time.time()
    for name in sorted(names):
        t0 = time.time()
        batch = SUITES[name](ctx)
        claims.extend(batch)
        good = sum(1 for c in batch if c["ok"])
        print(
            f"suite {name}: {good}/{len(batch)} passed ({time.time()-t0:.2f}s)",
            file=sys.stderr,
        )
        for c in batch:
            print(f"  {'PASS' if c['ok'] else 'FAIL'} {c['id']}", file=sys.stderr)
    summary = summarize(claims)
    print(
        f"total: {summary['passed']}/{summary['claims']} passed "
        f"in {time.time()-t_all:.2f}s [{BACKEND} backend]",
        file=sys.stderr,
    )
    report = {
        "backend": BACKEND,
        "claims": claims,
        "config": _config(args, field, {"seed": args.seed, "suites": sorted(names)}),
        "summary": summary,
    }
    if args.format == "json":
        _emit(_json_text(report), args.out)
    elif names == ["incidence"]:
        _emit(_incidence_csv(claims), args.out)
    else:
        rows = ["suite,claim,ok"]
        rows += [f"{c['suite']},{c['id']},{str(c['ok']).lower()}" for c in claims]
        _emit("\n".join(rows) + "\n", args.out)
    return 0 if summary["ok"] else 1


def _incidence_csv(claims) -> str:
    detail = next(c["detail"] for c in claims if c["id"] == "incidence:table")
    cols = detail["column_order"]
    out = ["type," + ",".join(cols)]
    for t in cols:
        out.append(t + "," + ",".join(str(v) for v in detail["rows"][t]))
    return "\n".join(out) + "\n"


def _gen_triples(pair) -> list:
    return [[t.x, t.y, t.z] for t in pair]


def cmd_enumerate(args) -> int:
    field = _field(args)
    ctx = VerifyContext(field, budget=_budget(args))
    cat = ctx.catalog
    chosen = SET_CHOICES[:-1] if args.which == "all" else (args.which,)
    members = []
    for name in chosen:
        attr, t = _SET_ATTR[name]
        for s in getattr(cat, attr):
            members.append(
                {
                    "set": name,
                    "type": t.value,
                    "dim": s.dim,
                    "basis": [list(r) for r in s.basis],
                    "generator": _gen_triples(cat.witness[s]),
                }
            )
    if args.format == "json":
        payload = {
            "config": _config(args, field, {"set": args.which}),
            "count": len(members),
            "members": members,
        }
        _emit(_json_text(payload), args.out)
    else:
        rows = ["set,type,dim,basis,generator"]
        for m in members:
            basis = "|".join(" ".join(str(v) for v in r) for r in m["basis"])
            gen = ";".join(" ".join(str(v) for v in t) for t in m["generator"])
            rows.append(f"{m['set']},{m['type']},{m['dim']},{basis},{gen}")
        _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_graph(args) -> int:
    field = _field(args)
    ctx = VerifyContext(field, budget=_budget(args))
    graph = ctx.graph
    if args.format == "dot":
        _emit(geo.graph_to_dot(graph), args.out)
    else:
        _emit(_json_text(geo.graph_to_json(graph)), args.out)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "enumerate":
            return cmd_enumerate(args)
        return cmd_graph(args)
    except BudgetError as e:
        print(f"budget error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
