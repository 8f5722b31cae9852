"""Figures for benchmark reports."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def diamond_figure(rows: list[dict], path: str | Path) -> Path:
    """Prime count and runtime against the number of diamonds."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ns = [r["n"] for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.semilogy(ns, [r["primes"] for r in rows], "o-", base=2, label="computed")
    ax1.semilogy(ns, [2 ** n for n in ns], "k--", base=2, lw=0.8, label="2^n")
    ax1.set_xlabel("diamonds n")
    ax1.set_ylabel("prime implicants")
    ax1.legend(frameon=False)
    ax2.plot(ns, [r["seconds"] for r in rows], "s-", color="tab:red")
    ax2.set_xlabel("diamonds n")
    ax2.set_ylabel("time (s)")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
        ax.set_xticks(ns)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def throughput_figure(rows: list[dict], path: str | Path) -> Path:
    """Per-query time of the symbolic and the enumerating method."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(5, 3.6))
    sym = [r["symbolic_ms"] for r in rows]
    enum = [r["enumerate_ms"] for r in rows]
    ax.loglog(enum, sym, "o", alpha=0.6)
    lo = min(sym + enum + [1e-3])
    hi = max(sym + enum + [1.0])
    ax.loglog([lo, hi], [lo, hi], "k--", lw=0.8)
    ax.set_xlabel("enumeration (ms)")
    ax.set_ylabel("symbolic (ms)")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
