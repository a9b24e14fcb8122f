"""Command-line entry point.

Every successful invocation prints one JSON run report to stdout:

    {"command": ..., "inputs": ..., "outputs": ..., "elapsed_ms": ...,
     "seed": ..., "version": ...}

Counts are decimal strings (arbitrary precision survives every JSON
parser) and exact rationals are "p/q" strings; floats are plain JSON
numbers (shortest round-trip representation, at most 17 significant
digits).  Exit codes: 0 success, 1 a verification failure (a falsified
assertion), 2 usage or input errors.

`verify proposition` emits CSV (columns n, blowup, counterexample,
ck2free); `repro` writes each suite's CSV under ./out.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .blowup import BlowupSpec, exact_blowup_cycle_count, leading_coefficient
from .certificate import (
    certificate_report,
    cycle_count_bound,
    max_attachment_ratio,
    odd_girth_at_least,
)
from .constructions import (
    balanced_blowup_spec,
    exhaustive_max,
    proposition_graph,
    verify_proposition,
)
from .cycles import count_cycles, shortest_odd_cycle
from .errors import TuranCyclesError
from .graph import bits, format_edge_list, read_edge_list
from .blowup import materialize
from .repro import RUNNERS, SUITES
from .stability import (
    classify_outside,
    extract_partition,
    greedy_odd_cycle_removal,
    refine_min_degree,
)
from .weights import advantage_margin, crossover_search, optimize_coefficient

USAGE_ERROR = 2
VERIFY_ERROR = 1


def _default_threads() -> int:
    env = os.environ.get("TURAN_CYCLES_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _encode(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    return obj


def _report(command: str, inputs: dict, outputs: dict, t0: float, seed: int | None) -> None:
    rep = {
        "command": command,
        "inputs": _encode(inputs),
        "outputs": _encode(outputs),
        "elapsed_ms": int((time.monotonic() - t0) * 1000),
        "seed": seed,
        "version": __version__,
    }
    json.dump(rep, sys.stdout)
    sys.stdout.write("\n")


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def _partition_payload(p) -> dict:
    return {
        "classes": [sorted(bits(c)) for c in p.classes],
        "leftover": sorted(bits(p.leftover)),
        "density_matrix": [
            [None if d is None else d for d in row] for row in p.density_matrix
        ],
    }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="turancycles",
        description="Exact cycle counting, blow-up analytics, weight certificates, "
        "structure extraction, and small-graph extremal search.",
    )
    ap.add_argument("--threads", type=int, default=None, help="worker threads "
                    "(default: TURAN_CYCLES_THREADS or the available parallelism)")
    ap.add_argument("--seed", type=int, default=0, help="seed for all randomized steps")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count cycles of a given length")
    p.add_argument("--graph", required=True)
    p.add_argument("--length", type=int, required=True)

    p = sub.add_parser("odd-girth", help="length of the shortest odd cycle")
    p.add_argument("--graph", required=True)

    p = sub.add_parser("blowup", help="analytic blow-up computations")
    bsub = p.add_subparsers(dest="blowup_cmd", required=True)
    b = bsub.add_parser("count", help="exact cycle count without materializing")
    b.add_argument("--base", type=int, required=True)
    b.add_argument("--parts", required=True, help="comma-separated part sizes")
    b.add_argument("--k", type=int, required=True)
    b = bsub.add_parser("coeff", help="leading cycle-count coefficient")
    b.add_argument("--base", type=int, required=True)
    b.add_argument("--weights", required=True, help="comma-separated weights summing to 1")
    b.add_argument("--k", type=int, required=True)

    p = sub.add_parser("certify", help="weight certificate for the best cycle")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**6)

    p = sub.add_parser("stability", help="structure extraction")
    ssub = p.add_subparsers(dest="stability_cmd", required=True)
    s = ssub.add_parser("extract", help="partition by cycle-neighbour pattern")
    s.add_argument("--graph", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--eps4", type=float, default=0.3)
    s.add_argument("--budget", type=int, default=10**6)
    s = ssub.add_parser("clean", help="greedy removal of short odd cycles")
    s.add_argument("--graph", required=True)
    s.add_argument("--k", type=int, required=True)

    p = sub.add_parser("weights", help="threshold function and weight optimization")
    wsub = p.add_subparsers(dest="weights_cmd", required=True)
    w = wsub.add_parser("f", help="log-margin of the optimized weighting")
    w.add_argument("--ell", type=int, required=True)
    w.add_argument("--k", type=int, required=True)
    w = wsub.add_parser("k0", help="first odd k with positive margin")
    w.add_argument("--ell", type=int, required=True)
    w.add_argument("--kmax", type=int, required=True)
    w.add_argument("--csv", help="write the (k, f) table to this CSV file")
    w = wsub.add_parser("optimize", help="maximize the leading coefficient")
    w.add_argument("--base", type=int, required=True)
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--iterations", type=int, default=600)

    p = sub.add_parser("construct", help="emit explicit constructions as edge lists")
    csub = p.add_subparsers(dest="construct_cmd", required=True)
    c = csub.add_parser("blowup", help="balanced blow-up of a cycle")
    c.add_argument("--k", type=int, required=True, help="base cycle length")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out", help="output file (default: stdout)")
    c = csub.add_parser("proposition", help="the counterexample family")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("verify", help="verify construction count formulas")
    vsub = p.add_subparsers(dest="verify_cmd", required=True)
    v = vsub.add_parser("proposition", help="CSV table of counts vs formulas")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--out", help="also write the CSV here")

    p = sub.add_parser("search", help="exhaustive extremal search (n <= 8)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)

    p = sub.add_parser("repro", help="run a reproduction suite, CSVs under ./out")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--out", default="out", help="output directory (default: ./out)")
    return ap


def _cmd_count(args, threads):
    g = read_edge_list(args.graph)
    n = count_cycles(g, args.length, threads=threads)
    return {"count": str(n)}


def _cmd_odd_girth(args, threads):
    g = read_edge_list(args.graph)
    return {"odd_girth": shortest_odd_cycle(g)}


def _cmd_blowup(args, threads):
    if args.blowup_cmd == "count":
        spec = BlowupSpec(args.base, _parse_ints(args.parts))
        return {"count": str(exact_blowup_cycle_count(spec, args.k))}
    w = _parse_floats(args.weights)
    return {"coefficient": leading_coefficient(args.base, w, args.k)}


def _cmd_certify(args, threads):
    g = read_edge_list(args.graph)
    if not odd_girth_at_least(g, args.k):
        raise TuranCyclesError(
            f"graph has an odd cycle shorter than {args.k}; certificate machinery "
            "requires odd girth at least k (run `stability clean` first)"
        )
    rep = max_attachment_ratio(g, args.k, budget=args.budget, seed=args.seed)
    if rep.best_cycle is None:
        return {"cycles_found": False, "cycles_examined": rep.cycles_examined}
    cert = certificate_report(g, rep.best_cycle)
    return {
        "cycles_found": True,
        "cycle": list(cert.cycle),
        "set_sizes": [list(r) for r in cert.a_sizes],
        "weights": list(cert.weights),
        "attachment_size": cert.u_size,
        "m_value": rep.m_value,
        "per_cycle_bound": float(cert.per_cycle_bound),
        "global_bound": float(cycle_count_bound(g.n, args.k, rep.m_value)),
        "cycles_examined": rep.cycles_examined,
        "bound_certified": rep.exhaustive,
    }


def _cmd_stability(args, threads):
    g = read_edge_list(args.graph)
    if args.stability_cmd == "clean":
        cleaned, removed = greedy_odd_cycle_removal(g, args.k)
        return {
            "edge_list": format_edge_list(cleaned),
            "removed_edges": [list(e) for e in removed],
            "odd_girth": shortest_odd_cycle(cleaned),
        }
    rep = max_attachment_ratio(g, args.k, budget=args.budget, seed=args.seed)
    if rep.best_cycle is None:
        return {"cycles_found": False}
    part = extract_partition(g, rep.best_cycle)
    refined = refine_min_degree(g, part, args.eps4)
    outside = classify_outside(g, refined)
    return {
        "cycles_found": True,
        "cycle": list(rep.best_cycle),
        "extracted": _partition_payload(part),
        "refined": _partition_payload(refined),
        "after_absorption": _partition_payload(outside.partition),
        "absorbed": outside.absorbed,
        "ambiguous": outside.ambiguous,
        "outside": [
            {
                "vertex": e.vertex,
                "kind": e.kind,
                "center": e.center,
                "rho_prev": e.rho_prev,
                "rho_next": e.rho_next,
                "low_sides": list(e.low_sides),
                "offending": list(e.offending) if e.offending else None,
            }
            for e in outside.entries
        ],
    }


def _cmd_weights(args, threads):
    if args.weights_cmd == "f":
        return {"f": advantage_margin(args.k, args.ell)}
    if args.weights_cmd == "k0":
        rep = crossover_search(args.ell, args.kmax)
        if args.csv:
            with open(args.csv, "w", newline="", encoding="utf-8") as fh:
                wr = csv.writer(fh)
                wr.writerow(("ell", "k", "f"))
                for k, f in rep.f_values:
                    wr.writerow((rep.ell, k, repr(f)))
        return {
            "ell": rep.ell,
            "k0": rep.k0,
            "monotone_from": rep.monotone_from,
            "f_values": [[k, f] for k, f in rep.f_values],
        }
    res = optimize_coefficient(
        args.base, args.k, iterations=args.iterations, seed=args.seed
    )
    return {
        "weights": list(res.weights),
        "coefficient": res.coefficient,
        "converged": res.converged,
        "restarts": res.restarts,
    }


def _cmd_construct(args, threads):
    if args.construct_cmd == "blowup":
        g = materialize(balanced_blowup_spec(args.k, args.n))
    else:
        g = proposition_graph(args.k, args.n)
    text = format_edge_list(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        return {"written": args.out, "n": g.n, "edges": g.edge_count}
    sys.stdout.write(text)
    return None  # edge list is the output


def _cmd_verify(args, threads):
    rep = verify_proposition(args.k, threads=threads)
    wr = csv.writer(sys.stdout)
    wr.writerow(("n", "blowup", "counterexample", "ck2free"))
    for row in rep.rows:
        wr.writerow((row.n, row.blowup_count, row.counterexample_count, row.ck2_free))
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w2 = csv.writer(fh)
            w2.writerow(("n", "blowup", "counterexample", "ck2free"))
            for row in rep.rows:
                w2.writerow((row.n, row.blowup_count, row.counterexample_count, row.ck2_free))
    if not rep.ok:
        for msg in rep.failures:
            print(f"FAIL: {msg}", file=sys.stderr)
        return VERIFY_ERROR
    return None


def _cmd_search(args, threads):
    res = exhaustive_max(args.n, args.k, args.ell, threads=threads)
    return {
        "n": res.n,
        "k": res.k,
        "ell": res.ell,
        "max_count": str(res.max_count),
        "witness_edges": [list(e) for e in res.witness.edges()],
        "graphs_examined": res.graphs_examined,
        "pruned": res.pruned,
    }


def _cmd_repro(args, threads):
    runner = RUNNERS[args.suite]
    result = runner(threads=threads)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"{result.name}.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        wr = csv.writer(fh)
        wr.writerow(result.header)
        for row in result.rows:
            wr.writerow(row)
    payload = {
        "suite": result.name,
        "rows": len(result.rows),
        "csv": str(path),
        "passed": result.ok,
        "failures": result.failures,
    }
    if not result.ok:
        json.dump(_encode(payload), sys.stdout)
        sys.stdout.write("\n")
        return VERIFY_ERROR
    return payload


_HANDLERS = {
    "count": _cmd_count,
    "odd-girth": _cmd_odd_girth,
    "blowup": _cmd_blowup,
    "certify": _cmd_certify,
    "stability": _cmd_stability,
    "weights": _cmd_weights,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "repro": _cmd_repro,
}


def dispatch(argv: list[str]) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    threads = args.threads if args.threads else _default_threads()
    t0 = time.monotonic()
    try:
        out = _HANDLERS[args.command](args, threads)
    except (TuranCyclesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if out == VERIFY_ERROR:
        return VERIFY_ERROR
    if isinstance(out, dict):
        inputs = {
            k: v
            for k, v in vars(args).items()
            if k not in {"command", "threads", "seed"} and not k.endswith("_cmd") and v is not None
        }
        _report(args.command, inputs, out, t0, args.seed)
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
