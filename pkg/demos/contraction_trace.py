"""Watching the bounds tighten as a graph densifies.

Grows a 12-node graph one random edge at a time and traces the contraction
ratio |s|^2 / s^T z against its structural bounds: the degree-based upper
bound and the conductance-based lower bound (defined once the graph is
connected).  Writes the trace plot next to this script.
"""

from pathlib import Path

from fjconflict import contraction_experiment
from fjconflict.plots import contraction_svg


def main():
    rows = contraction_experiment(12, seed=4)
    connected_at = next(r.edges for r in rows if r.lower is not None)
    print(f"{len(rows)} steps, connected after {connected_at} edges\n")
    print("edges  lower   ratio   upper")
    for r in rows[::6] + [rows[-1]]:
        lower = f"{r.lower:6.3f}" if r.lower is not None else "  -   "
        print(f"{r.edges:5d}  {lower} {r.ratio:7.3f} {r.upper:7.1f}")

    bad = [r for r in rows
           if r.ratio > r.upper + 1e-9
           or (r.lower is not None and r.lower > r.ratio + 1e-9)]
    print(f"\nbound violations: {len(bad)}")

    out = contraction_svg(rows, Path(__file__).parent / "out" / "contraction.svg")
    print(f"trace plot: {out}")


if __name__ == "__main__":
    main()
