"""Which single new link calms the network most?

Scores every absent link on the karate club graph with the rank-one closed
form, in both modes: for one concrete opinion vector, and in expectation over
i.i.d. opinions.  The best candidate is then confirmed by rebuilding the
graph and recomputing conflict from scratch.
"""

import numpy as np

from fjconflict import builtin_dataset, center, measures, scan_candidates


def main():
    graph = builtin_dataset("karate")
    rng = np.random.default_rng(3)
    s = center(rng.standard_normal(graph.n))

    records = scan_candidates(graph, graph.non_edges(), s=s, sigma2=1.0)
    print(f"scored {len(records)} candidate links\n")

    by_c = sorted(records, key=lambda r: r.delta_c)
    by_ec = sorted(records, key=lambda r: r.delta_ec)
    print("top 5 for this opinion vector        top 5 in expectation")
    for a, b in zip(by_c[:5], by_ec[:5]):
        print(f"  {str(a.edge):<10} {a.delta_c:9.5f}            "
              f"{str(b.edge):<10} {b.delta_ec:9.5f}")

    best = by_c[0]
    u, v = best.edge
    brute = (measures(graph.with_edges([(u, v, 1.0)]), s).conflict
             - measures(graph, s).conflict)
    print(f"\nbest link {best.edge}: closed form {best.delta_c:.12f}")
    print(f"                 full recompute {brute:.12f}")
    print(f"                 gap {abs(best.delta_c - brute):.2e}")


if __name__ == "__main__":
    main()
