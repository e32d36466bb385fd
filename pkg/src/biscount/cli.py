"""Command-line interface: ``biscount <subcommand> ...``.

Exit status: 0 on success, 1 on usage errors, 2 when a computation fails
(malformed input, guard or cap exceeded, oracle mismatch in ``verify``).
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import random
import sys
import time
from fractions import Fraction

from . import fptcount, oracle, reductions
from .colsub import count_induced
from .errors import BiscountError
from .fptras import fptras_is_k
from .graphs import (BipartiteGraph, bipartite_disjoint_union, parse_bipartite,
                     parse_coloured, random_bounded_degree_bipartite,
                     random_bounded_degree_graph, serialize_bipartite, serialize_coloured)
from .homcount import count_hom

PROBLEMS = ("is", "isk", "lis", "maxlis", "nlr")
PIPELINES = ("maxis", "domset", "rainbow", "clique-gadget", "clique-complement")
BENCH_COLUMNS = ("n", "m", "delta", "param", "algorithm", "millis", "result_digest")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def _read(path) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decimal(x: Fraction, places: int = 6) -> str:
    """Fixed-point rendering of a rational, rounded half up; no exponent notation."""
    scaled = (x * 10 ** places + Fraction(1, 2)).__floor__()
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}"


# ----------------------------------------------------------------- counting

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for --problem {args.problem}")


def _count(g: BipartiteGraph, args) -> dict:
    p, alg, d = args.problem, args.alg, args.delta
    if p == "is":
        if alg == "brute":
            return {"result": oracle.brute_is(g)}
        return {"result": reductions.bis_via_summation(g, reductions.bounded_oracle(d), via="lis")}
    if p == "isk":
        _need(args, "k")
        f = oracle.brute_is_k if alg == "brute" else (lambda g, k: fptcount.count_is_k_bounded(g, k, d))
        return {"result": f(g, args.k)}
    if p == "lis":
        _need(args, "l")
        if alg == "brute":
            return {"result": oracle.brute_lis(g, args.l)}
        return {"result": fptcount.count_lis_bounded(g, args.l, d)}
    if p == "maxlis":
        _need(args, "l")
        if alg == "brute":
            size, count = oracle.brute_maxlis(g, args.l)
        else:
            size, count = fptcount.count_maxlis_bounded(g, args.l, d)
        return {"mu_l": size, "result": count}
    _need(args, "l")  # nlr
    if alg == "brute":
        top = d * args.l if args.r is None else args.r
        values = {r: oracle.brute_n_lr(g, args.l, r) for r in range(top + 1)}
    else:
        values = dict(enumerate(fptcount.neighbourhood_profile(g, args.l, d).values))
    if args.r is not None:
        return {"result": values.get(args.r, 0)}
    return {f"N[{r}]": v for r, v in values.items()}


def cmd_count(args) -> dict:
    data = _read(args.file)
    g = parse_bipartite(data)
    params = {k: getattr(args, k) for k in ("k", "l", "r") if getattr(args, k) is not None}
    return {"input_digest": _digest(data), "algorithm": args.alg,
            "parameters": params, "results": _count(g, args)}


def cmd_approx(args) -> dict:
    data = _read(args.file)
    g = parse_bipartite(data)
    res = fptras_is_k(g, args.k, args.eps, args.seed, budget=args.budget)
    return {"input_digest": _digest(data), "algorithm": "fptras", "seed": args.seed,
            "rng": res.rng,
            "results": {"result": _fraction_str(res.estimate), "decimal": _decimal(res.estimate),
                        "samples": res.samples_taken, "hits": res.hits,
                        "epsilon": _fraction_str(res.epsilon)}}


def cmd_reduce(args) -> dict:
    data = _read(args.file)
    orc = reductions.brute_oracle() if args.oracle == "brute" else reductions.bounded_oracle(args.delta)
    trace = reductions.Trace()
    name = args.pipeline
    if name in ("maxis", "clique-complement"):
        g = parse_bipartite(data)
        if name == "maxis":
            reductions.maxis_via_maxlis(g, orc, trace=trace)
        else:
            if args.k is None:
                raise UsageError("--k is required")
            reductions.cliques_via_complement(g, args.k, trace=trace)
    else:
        g = parse_coloured(data)
        if name == "domset":
            if args.k is None:
                raise UsageError("--k is required")
            reductions.domsets_via_lis(g, args.k, orc, trace=trace)
        elif name == "rainbow":
            if args.t is None:
                raise UsageError("--t is required")
            reductions.rainbow_via_is_k(args.t, g, orc, trace=trace)
        else:
            if args.k is None:
                raise UsageError("--k is required")
            reductions.cliques_via_gadget(g, args.k, orc, c=args.c, trace=trace)
    return {"input_digest": _digest(data), "algorithm": f"{name}/{orc.name}",
            "results": {"result": trace.result}, "trace": trace.to_dict()}


# ----------------------------------------------------------------- generation

def cmd_gen(args) -> dict:
    if args.kind == "bis":
        if args.nl is None or args.nr is None:
            raise UsageError("--nl and --nr are required for bipartite graphs")
        g = random_bounded_degree_bipartite(args.nl, args.nr, args.delta, args.seed)
        if args.copies > 1:
            g = bipartite_disjoint_union(*([g] * args.copies))
        text = serialize_bipartite(g)
    else:
        if args.n is None:
            raise UsageError("--n is required for coloured graphs")
        text = serialize_coloured(random_bounded_degree_graph(args.n, args.delta, args.seed, q=args.q))
    data = text.encode()
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        return {"_raw": text}
    return {"input_digest": _digest(data), "algorithm": "generator", "seed": args.seed,
            "results": {"file": args.out, "bytes": len(data)}}


# ----------------------------------------------------------------- verification

def _random_instance(n, delta, seed) -> BipartiteGraph:
    rnd = random.Random(seed)
    nl = rnd.randint(0, n)
    return random_bounded_degree_bipartite(nl, n - nl, delta, seed)


def _check_pair(args, g, seed):
    """(fast, reference) answers for one verify trial."""
    p, d = args.problem, args.delta
    if p == "is":
        return (reductions.bis_via_summation(g, reductions.bounded_oracle(d), via="lis"),
                oracle.brute_is(g))
    if p == "isk":
        return fptcount.count_is_k_bounded(g, args.k, d), oracle.brute_is_k(g, args.k)
    if p == "lis":
        return fptcount.count_lis_bounded(g, args.l, d), oracle.brute_lis(g, args.l)
    if p == "maxlis":
        if args.l > g.n_left:
            return None
        return fptcount.count_maxlis_bounded(g, args.l, d), oracle.brute_maxlis(g, args.l)
    if p == "nlr":
        prof = fptcount.neighbourhood_profile(g, args.l, d)
        ref = tuple(oracle.brute_n_lr(g, args.l, r) for r in range(d * args.l + 1))
        return prof.values, ref
    # hom / ind: a random small coloured pattern against a random coloured host
    rnd = random.Random(seed)
    host = random_bounded_degree_graph(args.n, d, seed, q=args.q)
    h = random_bounded_degree_graph(rnd.randint(1, 4), d, seed + 1, q=args.q)
    if p == "hom":
        return count_hom(h, host), oracle.brute_hom(h, host)
    return count_induced(h, host, d), oracle.brute_ind(h, host)


def cmd_verify(args) -> dict:
    if args.problem in ("isk",) and args.k is None:
        raise UsageError("--k is required")
    if args.problem in ("lis", "maxlis", "nlr") and args.l is None:
        raise UsageError("--l is required")
    agree = total = 0
    mismatches = []
    for i in range(args.trials):
        seed = args.seed + i
        g = _random_instance(args.n, args.delta, seed)
        pair = _check_pair(args, g, seed)
        if pair is None:
            continue
        total += 1
        if pair[0] == pair[1]:
            agree += 1
        else:
            mismatches.append(seed)
    return {"algorithm": "bounded-vs-brute", "seed": args.seed,
            "results": {"result": f"{agree}/{total} agree", "mismatched_seeds": mismatches},
            "_exit": 0 if agree == total else 2}


# ----------------------------------------------------------------- benchmark

def _bench_one(alg, g, args):
    if args.problem == "lis":
        f = oracle.brute_lis_left if alg == "brute" else (lambda g, l: fptcount.count_lis_bounded(g, l, args.delta))
        return f(g, args.param)
    if args.problem == "isk":
        f = oracle.brute_is_k if alg == "brute" else (lambda g, k: fptcount.count_is_k_bounded(g, k, args.delta))
        return f(g, args.param)
    if args.problem == "nlr":
        if alg == "brute":
            return [oracle.brute_n_lr(g, args.param, r) for r in range(args.delta * args.param + 1)]
        return list(fptcount.neighbourhood_profile(g, args.param, args.delta).values)
    raise UsageError(f"bench does not support --problem {args.problem}")


def cmd_bench(args) -> dict:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        raise UsageError("--sizes must be a comma-separated list of integers")
    algs = ["brute", "bounded"] if args.alg == "both" else [args.alg]
    rows = []
    for n in sizes:
        nl = n // 2
        g = random_bounded_degree_bipartite(nl, n - nl, args.delta, args.seed)
        for alg in algs:
            start = time.perf_counter()
            value = _bench_one(alg, g, args)
            millis = (time.perf_counter() - start) * 1000
            rows.append({"n": n, "m": len(g.edges), "delta": args.delta, "param": args.param,
                         "algorithm": alg, "millis": f"{millis:.3f}",
                         "result_digest": _digest(str(value).encode())})
    return {"algorithm": args.alg, "seed": args.seed, "rows": rows}


# ----------------------------------------------------------------- parser and output

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="biscount", description="Counting independent sets in bipartite graphs.")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report")
    fmt.add_argument("--csv", action="store_true", help="CSV report")
    # the format flags are also accepted after the subcommand
    fmt_parent = _Parser(add_help=False)
    grp = fmt_parent.add_mutually_exclusive_group()
    grp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    grp.add_argument("--csv", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gen", parents=[fmt_parent], help="generate a random bounded-degree graph")
    g.add_argument("--kind", choices=("bis", "col"), default="bis")
    g.add_argument("--nl", type=int)
    g.add_argument("--nr", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--q", type=int, default=1)
    g.add_argument("--delta", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--copies", type=int, default=1, help="disjoint copies (bipartite only)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("count", parents=[fmt_parent], help="exact counting")
    c.add_argument("--alg", choices=("brute", "bounded"), default="bounded")
    c.add_argument("--problem", choices=PROBLEMS, required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--delta", type=int, default=3)
    c.add_argument("file")
    c.set_defaults(func=cmd_count)

    a = sub.add_parser("approx", parents=[fmt_parent], help="randomised approximation of IS_k")
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--eps", type=Fraction, required=True)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--budget", type=int, default=2 ** 32)
    a.add_argument("file")
    a.set_defaults(func=cmd_approx)

    r = sub.add_parser("reduce", parents=[fmt_parent], help="run a reduction pipeline")
    r.add_argument("--pipeline", choices=PIPELINES, required=True)
    r.add_argument("--oracle", choices=("brute", "bounded"), default="brute")
    r.add_argument("--delta", type=int, default=3)
    r.add_argument("--k", type=int)
    r.add_argument("--t", type=int)
    r.add_argument("--c", type=int, default=0)
    r.add_argument("file")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", parents=[fmt_parent], help="cross-check fast counters against brute force")
    v.add_argument("--problem", choices=PROBLEMS + ("hom", "ind"), required=True)
    v.add_argument("--k", type=int)
    v.add_argument("--l", type=int)
    v.add_argument("--delta", type=int, default=3)
    v.add_argument("--q", type=int, default=2)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--n", type=int, default=12)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", parents=[fmt_parent], help="timing sweep over graph sizes (CSV)")
    b.add_argument("--problem", choices=("isk", "lis", "nlr"), default="lis")
    b.add_argument("--param", type=int, default=2, help="k or l")
    b.add_argument("--alg", choices=("brute", "bounded", "both"), default="bounded")
    b.add_argument("--delta", type=int, default=3)
    b.add_argument("--sizes", default="100,200,400")
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)
    return p


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def render(report: dict, mode: str) -> str:
    if "rows" in report:  # bench output is always tabular
        buf = io.StringIO()
        if mode == "json":
            return json.dumps({**report, "rows": report["rows"]}, indent=2) + "\n"
        w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(report["rows"])
        return buf.getvalue()
    flat = {"command": report["command"]}
    for key in ("input_digest", "algorithm", "seed", "rng"):
        if report.get(key) is not None:
            flat[key] = report[key]
    for key, val in report.get("parameters", {}).items():
        flat[key] = val
    for key, val in report["results"].items():
        flat[key] = val
    flat["millis"] = report["millis"]
    if mode == "json":
        out = {"command": report["command"], "input_digest": report.get("input_digest"),
               "algorithm": report.get("algorithm"), "seed": report.get("seed"),
               "results": _jsonable(report["results"]), "millis": report["millis"]}
        if "trace" in report:
            out["trace"] = report["trace"]
        return json.dumps(out, indent=2) + "\n"
    if mode == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(json.dumps(v) if isinstance(v, (list, dict)) else v for v in flat.values())
        return buf.getvalue()
    width = max(len(k) for k in flat)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in flat.items())


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        start = time.perf_counter()
        report = args.func(args)
        if "_raw" in report:
            out.write(report["_raw"])
            return 0
        report["millis"] = f"{(time.perf_counter() - start) * 1000:.3f}"
        report["command"] = " ".join(["biscount"] + list(argv if argv is not None else sys.argv[1:]))
        code = report.pop("_exit", 0)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (BiscountError, ValueError, ArithmeticError, OSError, AssertionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    mode = "json" if args.json else "csv" if args.csv else "table"
    out.write(render(report, mode))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
