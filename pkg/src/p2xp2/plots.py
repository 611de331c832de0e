"""Matplotlib figures rendered next to the delimited report output."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import fixtures
from .enumeration import CandidateRecord, matched_histogram


def save_match_histogram(records: Iterable[CandidateRecord], path) -> Path:
    """Bar chart of matched candidates per adjunction index k."""
    hist = matched_histogram(records)
    ks = sorted(set(hist) | set(fixtures.EXPECTED_MATCH_COUNTS))
    found = [hist.get(k, 0) for k in ks]
    expected = [fixtures.EXPECTED_MATCH_COUNTS.get(k, 0) for k in ks]
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar([k - 0.2 for k in ks], found, width=0.4, label="search")
    ax.bar([k + 0.2 for k in ks], expected, width=0.4, label="catalogue")
    ax.set_xlabel("adjunction index k")
    ax.set_ylabel("matched Hilbert series")
    ax.set_title("matched candidates per k")
    ax.set_xticks(ks)
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_euler_ledger_figure(path) -> Path:
    """e(X) = e(Y) + 2N - 2 lines with the catalogued families marked."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ns = list(range(3, 11))
    bases = sorted({fam.e_y_gen for fams in fixtures.THEOREM_LEDGERS.values() for fam in fams})
    for base in bases:
        ax.plot(ns, [base + 2 * n - 2 for n in ns], lw=1, alpha=0.6, label=f"e(Y) = {base}")
    for series_id, fams in fixtures.THEOREM_LEDGERS.items():
        ax.scatter(
            [f.n_nodes for f in fams],
            [f.e_x for f in fams],
            zorder=3,
            label=f"series {series_id}",
        )
    ax.set_xlabel("number of nodes N")
    ax.set_ylabel("e(X)")
    ax.set_title("Euler characteristics of the unprojection families")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_node_count_figure(path) -> Path:
    """Node counts of the second-Tom centres against the centre index."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs, ys = [], []
    for row in fixtures.SECOND_TOM_TABLE:
        for r, nodes in row.centres:
            xs.append(r)
            ys.append(nodes)
    ax.scatter(xs, ys, alpha=0.7)
    ax.set_xlabel("centre index r")
    ax.set_ylabel("nodes on the projected image")
    ax.set_title("second-Tom centres: node counts by index")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
