"""Time the compiled kernels against their numpy fallbacks.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

import argparse
import json
import time

import numpy as np

from avatarfield._kernels import _pykernels

try:
    from avatarfield._kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _cases(rng):
    pts = rng.uniform(-1, 1, (20000, 3))
    verts = rng.uniform(-1, 1, (250, 3))
    u = rng.uniform(0, 1, (20000, 3))
    res = (16 * 1.5 ** np.arange(8)).astype(np.int64)
    idx = rng.integers(0, 2 ** 14, 160000)
    vals = rng.normal(size=(160000, 2))
    o = np.tile([0.0, 0.5, 3.0], (4096, 1))
    d = rng.normal(size=(4096, 3)) * 0.1 + np.array([0.0, -0.1, -1.0])
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    seg_a = rng.uniform(-0.3, 0.3, (8, 3))
    seg_b = seg_a + rng.uniform(-0.3, 0.3, (8, 3))
    rad = rng.uniform(0.05, 0.1, 8)
    return {
        "nearest_vertex": (lambda k: k.nearest_vertex(pts, verts)),
        "hash_corners": (lambda k: k.hash_corners(u, res, 2 ** 14)),
        "scatter_add_rows": (lambda k: k.scatter_add_rows(np.zeros((2 ** 14, 2)), idx, vals)),
        "ray_capsule_hits": (lambda k: k.ray_capsule_hits(o, d, seg_a, seg_b, rad)),
    }


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def _same(a, b):
    a = a if isinstance(a, tuple) else (a,)
    b = b if isinstance(b, tuple) else (b,)
    return all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json")
    args = ap.parse_args(argv)
    rows = []
    for name, fn in _cases(np.random.default_rng(0)).items():
        tp, op = _best(lambda: fn(_pykernels), args.repeat)
        row = {"kernel": name, "python_ms": 1e3 * tp}
        if _ckernels is not None:
            tc, oc = _best(lambda: fn(_ckernels), args.repeat)
            row.update(cython_ms=1e3 * tc, speedup=tp / tc, identical=_same(op, oc))
        rows.append(row)
    print(f"{'kernel':18s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}  identical")
    for r in rows:
        if "cython_ms" in r:
            print(f"{r['kernel']:18s} {r['python_ms']:10.2f} {r['cython_ms']:10.2f} "
                  f"{r['speedup']:8.2f}  {r['identical']}")
        else:
            print(f"{r['kernel']:18s} {r['python_ms']:10.2f} {'n/a':>10s}")
    if args.json:
        with open(args.json, "w") as f:
            json.dump(rows, f, indent=1)


if __name__ == "__main__":
    main()
