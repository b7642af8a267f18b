"""Compare the compiled and pure-Python rewriting kernels.

Each workload runs in a fresh interpreter (the kernel is chosen at import
time), once with the compiled kernel and once with ``HOPFVERIFY_PURE=1``.
Results are checked to be identical and wall-clock times reported.

    python3 benchmarks/bench_kernel.py --order 5 --repeat 3
"""
from __future__ import annotations

import argparse
import json
import os
import statistics
import subprocess
import sys

WORKLOADS = {
    "jacobi+hopf": (
        "from hopfverify.models import build_bicross, build_tilde\n"
        "from hopfverify.hopfdef import check_jacobi, hopf_suite\n"
        "out = []\n"
        "for p in (build_bicross({K}), build_tilde({K})):\n"
        "    out += [r.passed for r in [check_jacobi(p), *hopf_suite(p)]]\n"
        "digest = str(out)\n"
    ),
    "isomorphism": (
        "from hopfverify.models import ModelRegistry, check_hopf_isomorphism\n"
        "reg = ModelRegistry({K})\n"
        "digest = str(check_hopf_isomorphism(reg).passed)\n"
    ),
    "casimir W2": (
        "from hopfverify.models import ModelRegistry, check_centrality\n"
        "reg = ModelRegistry({K})\n"
        "digest = str(sorted(map(str, reg.pl_square.terms.items())))\n"
        "digest += str(check_centrality(reg.pl_square, reg.bicross).passed)\n"
    ),
    "rmatrix+qybe": (
        "from hopfverify.models import ModelRegistry, check_qybe, check_intertwining\n"
        "reg = ModelRegistry({K})\n"
        "digest = str(sorted(map(str, reg.rmatrix.terms.items())))\n"
        "digest += str((check_qybe(reg).passed, check_intertwining(reg).passed))\n"
    ),
}

RUNNER = (
    "import time, hashlib, json\n"
    "t0 = time.perf_counter()\n"
    "{body}"
    "import hopfverify\n"
    "print(json.dumps({{'kernel': hopfverify.IMPLEMENTATION, 'seconds': time.perf_counter() - t0,"
    " 'digest': hashlib.sha256(digest.encode()).hexdigest()}}))\n"
)


def run_once(body: str, pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("HOPFVERIFY_PURE", None)
    if pure:
        env["HOPFVERIFY_PURE"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", RUNNER.format(body=body)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = []
    mismatch = False
    for name, template in WORKLOADS.items():
        body = template.format(K=args.order)
        timing = {}
        digests = {}
        for pure in (False, True):
            runs = [run_once(body, pure) for _ in range(args.repeat)]
            kernel = runs[0]["kernel"]
            timing[kernel] = statistics.median(r["seconds"] for r in runs)
            digests[kernel] = {r["digest"] for r in runs}
        same = len(set().union(*digests.values())) == 1
        mismatch |= not same
        rows.append({"workload": name, "order": args.order, **timing, "identical": same})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'workload':<16}{'K':>3}{'cython s':>11}{'python s':>11}{'speedup':>9}  same")
        for r in rows:
            c, p = r.get("cython"), r.get("python")
            speed = f"{p / c:8.2f}x" if c and p else "     n/a"
            cs = f"{c:11.3f}" if c else "        n/a"
            print(f"{r['workload']:<16}{r['order']:>3}{cs}{p:11.3f}{speed}  {r['identical']}")
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
