"""Benchmark the two matching kernels on the solver's real workload.

For each grid size, builds the port graph that one bound evaluation solves
(the expanded dual of the face-augmented grid) with seeded weights, then
times cold minimum-weight perfect matching solves on both kernels, plus a
full bound-optimization run on the compiled one.

Usage:
    python benchmarks/bench_matching.py [--sizes 4 8 16] [--reps 5] [--full]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

import planarcc as pc
from planarcc.harness import InstanceSpec, generate_grid_instance
from planarcc.matching import available_engines
from planarcc.pcc import _PCCSolveContext, build_pcc, init_params


def port_graph_for(size: int, seed: int = 3):
    model, emb = generate_grid_instance(InstanceSpec(size, size, 0.8, seed, 500))
    pcc = build_pcc(model, emb)
    ctx = _PCCSolveContext(pcc)
    params = init_params(model, pcc)
    w, _ = ctx.scaled_weights(params)
    dual_w = np.zeros(ctx.num_dual_edges, dtype=np.int64)
    dual_w[ctx.edge_pos_plain] = -w[ctx.aug_idx_plain]
    dual_w[ctx.edge_pos_bridge] = np.minimum(-w[ctx.aug_idx_bridge], 0)
    return model, emb, ctx, (-dual_w).tolist()


def time_kernel(ctx, neg_weights, engine: str, reps: int) -> float:
    from planarcc.matching import _ENGINES

    impl = _ENGINES[engine]
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        impl.solve_max_weight_matching(
            ctx.dual.num_ports, ctx.dual_eu, ctx.dual_ev, neg_weights
        )
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16])
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument(
        "--full", action="store_true",
        help="also time a full optimize() run per size (compiled kernel)",
    )
    args = parser.parse_args()

    engines = available_engines()
    print(f"engines available: {', '.join(engines)}")
    header = f"{'grid':>6} {'ports':>7} {'edges':>7}"
    for e in engines:
        header += f" {e + ' ms':>12}"
    if len(engines) > 1:
        header += f" {'speedup':>9}"
    print(header)

    for size in args.sizes:
        model, emb, ctx, neg = port_graph_for(size)
        row = f"{size}x{size:<3} {ctx.dual.num_ports:>7} {ctx.num_dual_edges:>7}"
        times = {}
        for e in engines:
            reps = args.reps if (e != "python" or size <= 16) else 1
            times[e] = time_kernel(ctx, neg, e, reps)
            row += f" {times[e] * 1000:>12.2f}"
        if "python" in times and "compiled" in times:
            row += f" {times['python'] / times['compiled']:>8.1f}x"
        print(row)

        if args.full and "compiled" in engines:
            t0 = time.perf_counter()
            res = pc.optimize(model, emb, max_iters=2000, engine="compiled")
            dt = time.perf_counter() - t0
            print(
                f"       full solve: {res.certificate} after "
                f"{res.iterations} iterations in {dt:.2f}s"
            )


if __name__ == "__main__":
    main()
