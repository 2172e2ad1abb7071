"""Static SVG figures for the CLI; the CSV outputs stay the authoritative record."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "fjconflict"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)


def contraction_svg(rows, path: str | Path) -> Path:
    """Bound chain along the incremental-edge trace."""
    path = Path(path)
    edges = [r.edges for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(edges, [r.upper for r in rows], label="upper bound", color="tab:red")
    ax.plot(edges, [r.ratio for r in rows], label="contraction ratio", color="tab:blue")
    lower_edges = [r.edges for r in rows if r.lower is not None]
    ax.plot(
        lower_edges,
        [r.lower for r in rows if r.lower is not None],
        label="lower bound",
        color="tab:green",
    )
    ax.set_xlabel("edges added")
    ax.set_ylabel("energy shrink factor")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def sbm_groups_svg(stats, path: str | Path) -> Path:
    """Mean expected conflict reduction per candidate-link group."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    names = [st.name for st in stats]
    ax.bar(
        names,
        [st.magnitude for st in stats],
        yerr=[st.half_width for st in stats],
        capsize=4,
        color=["tab:gray", "tab:blue", "tab:orange"],
    )
    ax.set_ylabel("expected conflict reduction")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def evaluation_svg(records, out_dir: str | Path) -> list[Path]:
    """Mean CA and recall versus the negative-sampling ratio, one line per method."""
    from .evaluation import mean_by_method_eta

    out_dir = Path(out_dir)
    paths = []
    for field_name, label, fname in (
        ("ca", "mean conflict awareness", "ca_vs_eta.svg"),
        ("recall", "mean recall", "recall_vs_eta.svg"),
    ):
        table = mean_by_method_eta(records, field_name)
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for method in sorted(table):
            etas = sorted(table[method])
            ax.plot(etas, [table[method][e] for e in etas], marker="o", label=method)
        ax.set_xlabel("negatives per positive (eta)")
        ax.set_ylabel(label)
        ax.legend(fontsize=8)
        fig.tight_layout()
        target = out_dir / fname
        fig.savefig(target, format="svg", metadata={"Date": None})
        plt.close(fig)
        paths.append(target)
    return paths
