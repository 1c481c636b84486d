"""Figures written next to the text output of ``solve`` and ``compose``."""

from __future__ import annotations

from collections import Counter
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .combinatorics import lim_bound, m_max  # noqa: E402


def plot_multipliers(solutions: Sequence, t: int, k: int, v: int, path, title: str | None = None) -> None:
    """Number of solutions per multiplier m, with the LIM and m_max markers."""
    lim = lim_bound(t, k, v)
    top = m_max(t, k, v)
    plain = Counter(s.m for s in solutions if not s.trivial)
    trivial = Counter(s.m for s in solutions if s.trivial)

    fig, ax = plt.subplots(figsize=(7, 3.2))
    if plain:
        xs = sorted(plain)
        ax.vlines(xs, 0, [plain[x] for x in xs], color="tab:blue", lw=1.2, label="non-trivial")
    if trivial:
        xs = sorted(trivial)
        ax.plot(xs, [trivial[x] for x in xs], "s", color="tab:red", ms=5, label="complete design")
    ax.axvline(lim, color="0.3", ls="--", lw=1, label=f"LIM = {lim}")
    ax.set_xlim(0, top * 1.02)
    ax.set_ylim(bottom=0)
    ax.set_xlabel(f"m  (index = m x lambda_min, m_max = {top})")
    ax.set_ylabel("solutions")
    ax.set_title(title or f"{t}-({v},{k}, m) solutions: {len(solutions)}")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_family_counts(composed, path) -> None:
    """Blocks contributed by each family B_(i, k-i) of a composed design."""
    counts = Counter(i for i, _ in composed.provenance)
    fams = sorted(counts)
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar([str(i) for i in fams], [counts[i] for i in fams], color="tab:green")
    ax.set_xlabel("i  (block meets X1 in i points)")
    ax.set_ylabel("blocks")
    d = composed.design
    ax.set_title(f"{composed.t}-({d.v},{d.k},{composed.Lambda}): {len(d)} blocks")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
