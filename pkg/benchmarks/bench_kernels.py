"""Compare the compiled kernels with the numpy fallback.

Runs the two hot kernels on random inputs with both backends, then times an
end-to-end transfer in a subprocess per backend (the backend is fixed at
import time).  Usage: ``python3 benchmarks/bench_kernels.py [--quick]``.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from yoneda.exactla import _pykernels

try:
    from yoneda.exactla import _ckernels
except ImportError:
    _ckernels = None

P = 32003

END_TO_END = """
import time
from yoneda.exactla import kernels
from yoneda.quiveralg import make_nakayama_cyclic
from yoneda.keller import generation_closure
from yoneda.transfer import transfer_minimal_model, check_stasheff
t = time.perf_counter()
A = transfer_minimal_model(make_nakayama_cyclic([5, 5, 5]), 5, 6)
generation_closure(A)
check_stasheff(A)
print(kernels.BACKEND, time.perf_counter() - t)
"""


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_rref(n, repeat, rng):
    a = rng.integers(0, P, size=(n, n), dtype=np.int64)
    a[:, n // 2:] = (a[:, : n - n // 2] * 3) % P  # rank deficient
    out = {}
    for name, mod in (("python", _pykernels), ("compiled", _ckernels)):
        if mod is None:
            continue
        out[name] = _best(lambda: mod.rref_modp(np.ascontiguousarray(a.copy()), P), repeat)
    return out


def bench_bilinear(nnz, repeat, rng):
    u = rng.integers(0, P, size=2000, dtype=np.int64)
    v = rng.integers(0, P, size=2000, dtype=np.int64)
    iu = rng.integers(0, 2000, size=nnz, dtype=np.int64)
    iv = rng.integers(0, 2000, size=nnz, dtype=np.int64)
    io = rng.integers(0, 500, size=nnz, dtype=np.int64)
    out = {}
    for name, mod in (("python", _pykernels), ("compiled", _ckernels)):
        if mod is None:
            continue
        out[name] = _best(lambda: mod.bilinear_modp(u, v, iu, iv, io, 500, P), repeat)
    return out


def end_to_end():
    out = {}
    for name, flag in (("python", "1"), ("compiled", "0")):
        env = dict(os.environ, YONEDA_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        out[backend] = float(secs)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    rng = np.random.Generator(np.random.Philox(7))
    repeat = 2 if args.quick else 5
    sizes = (20, 60) if args.quick else (20, 60, 150)
    report = {
        "rref": {str(n): bench_rref(n, repeat, rng) for n in sizes},
        "bilinear": {str(k): bench_bilinear(k, repeat, rng) for k in (100, 10_000)},
    }
    if not args.quick:
        report["end_to_end_cyclic_555"] = end_to_end()
    print(json.dumps(report, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
