"""What classic link predictors would recommend.

Runs all seven similarity heuristics over the absent karate-club links and
prints each method's top picks.  Structural predictors chase well-connected
hubs; none of them look at opinions at all, which is exactly the tension the
benchmark harness measures.
"""

from fjconflict import HEURISTICS, PredictorConfig, builtin_dataset, heuristic_score, rank


def main():
    graph = builtin_dataset("karate")
    pairs = graph.non_edges()
    config = PredictorConfig(katz_alpha=0.05)  # below 1/lambda_max for this graph

    print(f"{len(pairs)} candidate links\n")
    print(f"{'method':<24}top 3 picks")
    for method in HEURISTICS:
        scores = heuristic_score(graph, method, pairs, config)
        top = rank(pairs, scores)[:3]
        picks = "  ".join(f"({t.u},{t.v})={t.score:.3f}" for t in top)
        print(f"{method:<24}{picks}")


if __name__ == "__main__":
    main()
