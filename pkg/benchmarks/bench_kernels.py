"""Time the compiled and numpy kernel backends on the same meshes.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import timeit

from lantern_ga import kernels
from lantern_ga.lantern import LanternParams, generate_lantern

CASES = [
    ("mesh_area", LanternParams(n=256, m=256)),
    ("mesh_area", LanternParams(n=16, m=2**16)),
    ("projected_area", LanternParams(n=256, m=256)),
    ("projected_area", LanternParams(n=16, m=2**16)),
    ("lantern_sums", LanternParams(n=64, m=2**18)),
    ("lantern_sums", LanternParams(n=2**12, m=2**12)),
]


def bench(name, p, impl, repeat):
    if name == "lantern_sums":
        call = lambda: impl.lantern_sums(float(p.radius), float(p.a), p.n, p.m)  # noqa: E731
    else:
        mesh = generate_lantern(p)
        call = lambda: getattr(impl, name)(mesh.vertices, mesh.triangles)  # noqa: E731
    value = call()
    best = min(timeit.repeat(call, number=1, repeat=repeat))
    return best, value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = sorted(kernels.BACKENDS)
    if "cython" not in names:
        print("compiled backend not built; timing the numpy backend only")
    print(f"{'kernel':15s} {'n':>6s} {'m':>8s} {'triangles':>10s} "
          + " ".join(f"{b + ' [s]':>13s}" for b in names) + "  speedup  rel.diff")
    for name, p in CASES:
        res = {b: bench(name, p, kernels.get_backend(b), args.repeat) for b in names}
        times = " ".join(f"{res[b][0]:13.4f}" for b in names)
        line = f"{name:15s} {p.n:6d} {p.m:8d} {p.triangle_count:10d} {times}"
        if len(names) == 2:
            (tc, vc), (tp, vp) = res["cython"], res["python"]
            vc = vc if isinstance(vc, float) else vc[0]
            vp = vp if isinstance(vp, float) else vp[0]
            line += f"  {tp / tc:6.2f}x  {abs(vc - vp) / abs(vp):.1e}"
        print(line)


if __name__ == "__main__":
    main()
