"""Figures written next to analysis reports."""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_color_matrix(X, path):
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(X.color, cmap="tab20" if X.rank <= 20 else "viridis", interpolation="nearest")
    ax.set_title(f"color matrix (n={X.n}, rank={X.rank})")
    ax.set_xlabel("point")
    ax.set_ylabel("point")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_saturation_graph(G, path):
    """Adjacency matrix of the saturation graph; loops sit on the diagonal."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(G.adj, cmap="Greys", interpolation="nearest", vmin=0, vmax=1)
    m = len(G.vertices)
    if m <= 30:
        ax.set_xticks(range(m), [str(v) for v in G.vertices], fontsize=7)
        ax.set_yticks(range(m), [str(v) for v in G.vertices], fontsize=7)
    ax.set_title(f"saturation graph, k={G.k}: {m} vertices, {int(np.trace(G.adj))} loops")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_valencies(X, path):
    vals, counts = np.unique(X.valencies, return_counts=True)
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar([str(v) for v in vals], counts, color="0.4")
    ax.set_xlabel("valency")
    ax.set_ylabel("colors")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def render_figures(X, outdir, k=None):
    from .analysis import saturation_graph

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = [plot_color_matrix(X, outdir / "color_matrix.png"),
             plot_valencies(X, outdir / "valencies.png")]
    if k is not None:
        paths.append(plot_saturation_graph(saturation_graph(X, k), outdir / "saturation_graph.png"))
    return paths
