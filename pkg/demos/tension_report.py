"""How much tension does a friendship network carry?

Loads the 34-node karate club graph, draws centered opinions, and prints the
equilibrium tension measures together with the conservation identity.  The
structural bounds on the contraction ratio use an exhaustive conductance
scan, so that part runs on a 16-node random graph.
"""

import numpy as np

from fjconflict import (
    builtin_dataset,
    center,
    contraction_report,
    equilibrium,
    erdos_renyi,
    measures,
)


def main():
    graph = builtin_dataset("karate")
    rng = np.random.default_rng(7)
    s = center(rng.standard_normal(graph.n))

    z = equilibrium(graph, s)
    m = measures(graph, s)
    print(f"karate club: n={graph.n}, m={len(graph.edges)}")
    print(f"opinion norm^2      {s @ s:10.4f}")
    print(f"expressed norm^2    {z @ z:10.4f}")
    for name, value in m.as_dict().items():
        print(f"{name:<18}{value:12.4f}")

    residual = m.conflict + m.unhappiness - s @ s
    print(f"\nconflict + unhappiness - |s|^2 = {residual:.2e}  (conservation)")

    small = erdos_renyi(16, 0.3, seed=2)
    t = center(rng.standard_normal(small.n))
    rep = contraction_report(small, t)
    print("\n16-node random graph, contraction ratio |s|^2 / s^T z sandwich:")
    print(f"  {rep.lower:.3f} <= 1+lambda2 = {1 + rep.lambda2:.3f}"
          f" <= {rep.ratio:.3f} <= 1+lambda_max = {1 + rep.lambda_max:.3f}"
          f" <= {rep.upper:.3f}")
    print(f"  conductance h = {rep.cheeger:.3f}, d_min = {rep.d_min:.0f}")


if __name__ == "__main__":
    main()
