"""Compare the compiled kernel against the pure-Python fallback.

Each implementation runs in its own interpreter because the kernel is chosen
at import time from the ``TORICCONTRACT_PURE`` environment variable.

    python3 benchmarks/bench_kernel.py [--repeat 3] [--json out.json]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _workloads():
    from toriccontract.applications import flagship_problem, load_flagship, veronese
    from toriccontract.contraction import contract_initial
    from toriccontract.ring import Ring, TermOrder
    from toriccontract.toric import MonomialMap, toric_ideal

    data = load_flagship()

    def p_ba():
        toric_ideal(MonomialMap(data["B_A_tilde"], Ring.numbered("x", 16)), TermOrder.degrevlex(16))

    def veronese_33():
        veronese(3, 3)

    def flagship():
        problem, _, _, G_At = flagship_problem(data)
        contract_initial(problem, G_At)

    return {"toric P_(B.A~)": p_ba, "veronese (3,3)": veronese_33, "flagship contraction": flagship}


def worker(repeat: int) -> None:
    from toriccontract import kernel

    out = {"implementation": kernel.IMPLEMENTATION, "timings": {}}
    for name, fn in _workloads().items():
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        out["timings"][name] = best
    print(json.dumps(out))


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ, TORICCONTRACT_PURE="1" if pure else "0")
    proc = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="runs per workload; the best is reported")
    ap.add_argument("--json", help="also write the results to this file")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.worker:
        worker(args.repeat)
        return 0
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if fast["implementation"] != "cython":
        print("compiled kernel not available; both columns use the Python fallback", file=sys.stderr)
    print(f"{'workload':<24}{fast['implementation']:>12}{slow['implementation']:>12}{'speedup':>10}")
    rows = []
    for name, t_fast in fast["timings"].items():
        t_slow = slow["timings"][name]
        rows.append({"workload": name, "compiled_s": t_fast, "python_s": t_slow, "speedup": t_slow / t_fast})
        print(f"{name:<24}{t_fast:>11.3f}s{t_slow:>11.3f}s{t_slow / t_fast:>9.2f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"repeat": args.repeat, "results": rows}, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
