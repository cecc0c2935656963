"""Timing comparison of the compiled kernels against the NumPy fallback.

Runs the three hot kernels on a generated extended code's graph and prints
the best-of-N wall time per backend plus the speedup of the compiled one.

    python3 benchmarks/bench_backends.py --m 4 --repeat 5
"""

import argparse
import time

from mdgcodes import build_mdg, gen_family, recover_all_distances
from mdgcodes._kernels import available_backends, get_backend
from mdgcodes.steiner import neighborhood_block_graph, point_clique_size


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--family", default="ext-hamming", choices=("ext-hamming", "ext-vasilev")
    )
    parser.add_argument("--m", type=int, default=4, help="exponent; length 2^m")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    args = parser.parse_args()

    code = gen_family(args.family, args.m, seed=args.seed)
    graph = build_mdg(code)
    packed = graph.packed_rows()
    dmatrix = recover_all_distances(graph)
    block_packed = neighborhood_block_graph(graph, dmatrix, 0).graph.packed_rows()
    target = point_clique_size(code.length)
    print(
        f"{args.family} m={args.m}: {graph.vcount} vertices, "
        f"{graph.edge_count} edges, block graph target {target}"
    )

    names = available_backends()
    cases = [
        ("recover_distance_matrix", lambda b: b.recover_distance_matrix(packed, code.length)),
        ("common_neighbor_matrix", lambda b: b.common_neighbor_matrix(packed)),
        ("cliques_at_least", lambda b: b.cliques_at_least(block_packed, target)),
    ]
    header = f"{'kernel':<26}" + "".join(f"{name:>12}" for name in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for label, call in cases:
        times = [best_time(lambda: call(get_backend(name)), args.repeat) for name in names]
        row = f"{label:<26}" + "".join(f"{t:>11.4f}s" for t in times)
        if len(times) > 1:
            row += f"{times[-1] / times[0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
