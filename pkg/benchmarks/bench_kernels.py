"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Workloads are the planning fixture under every view plus two seeded random
systems of a few hundred and a few thousand arguments.  Each kernel is timed
on identical inputs with both backends, and the results are checked for
equality before timing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from akb import GeneratorParams, generate_random_system, kernels, load_fixture
from akb.attacks import Framework, View


def workloads():
    plan = load_fixture("plan")
    for view in View:
        yield f"plan/{view.value}", plan, view
    # seeded random systems of about 650 and 7800 arguments
    for atoms, rules, seed in ((12, 8, 3), (14, 10, 0)):
        params = GeneratorParams(atoms=atoms, agents=3, rules_per_agent=rules, max_head=2,
                                 subsumption=True, overlap=True)
        yield (f"random-{atoms}-{seed}/skeptical", generate_random_system(seed, params),
               View.SKEPTICAL)

def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(name, system, view, repeat):
    fw = Framework(system, view)
    inputs = fw.kernel_inputs()
    row = {"workload": name, "arguments": len(fw)}
    results = {}
    for backend, mod in kernels.BACKENDS.items():
        rel = mod.defeat_relation(*inputs)
        def_col, def_row = rel[3], rel[4]
        strict_row = [r & ~c for c, r in zip(def_col, def_row)]
        trace = mod.fixpoint_trace(def_col, strict_row)
        results[backend] = (rel, trace)
        row[f"defeat_relation/{backend}"] = best_of(lambda: mod.defeat_relation(*inputs), repeat)
        row[f"fixpoint_trace/{backend}"] = best_of(
            lambda: mod.fixpoint_trace(def_col, strict_row), repeat)
        row[f"apply_pi/{backend}"] = best_of(
            lambda: mod.apply_pi(def_col, strict_row, trace[-1]), repeat)
    if len(set(map(repr, results.values()))) != 1:
        raise AssertionError(f"{name}: backends disagree")
    return row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print rows as JSON")
    args = ap.parse_args(argv)
    if "cython" not in kernels.BACKENDS:
        print("compiled kernels not built; timing the Python backend only", file=sys.stderr)

    rows = [bench(*w, args.repeat) for w in workloads()]
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    kernel_names = ("defeat_relation", "fixpoint_trace", "apply_pi")
    print(f"{'workload':24} {'|S|':>6}  " + "  ".join(f"{k:>26}" for k in kernel_names))
    for r in rows:
        cells = []
        for k in kernel_names:
            py = r[f"{k}/python"]
            cy = r.get(f"{k}/cython")
            cells.append(f"{py * 1e3:9.1f}ms" + (f" {cy * 1e3:7.1f}ms x{py / cy:5.1f}" if cy else ""))
        print(f"{r['workload']:24} {r['arguments']:6d}  " + "  ".join(f"{c:>26}" for c in cells))
    print("\ncolumns: python time, compiled time, speedup (best of %d)" % args.repeat)


if __name__ == "__main__":
    main()
