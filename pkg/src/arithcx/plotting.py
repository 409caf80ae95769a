"""Figures written next to the CSV tables of ``arithcx report``."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.dpi": 120,
    "savefig.bbox": "tight",
}


def _new(width=5.0, height=3.2):
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(width, height))
    return fig, ax


def _save(fig, path):
    with plt.rc_context(RC):
        fig.savefig(path)
    plt.close(fig)
    return path


def plot_family_entries(rows, labels, path, title=""):
    """``rows``: list of (parameter, entries...) tuples; one line per entry position."""
    fig, ax = _new()
    xs = [r[0] for r in rows]
    for pos, label in enumerate(labels, start=1):
        ax.plot(xs, [r[pos] for r in rows], marker="o", ms=2.5, lw=1, label=label)
    ax.set_xlabel("family parameter b")
    ax.set_ylabel("partial quotient")
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    return _save(fig, path)


def plot_conic_points(conic, points, path, projections=()):
    fig, ax = _new(4.0, 4.0)
    if points:
        ax.scatter([p[0] for p in points], [p[1] for p in points], s=10, label="integer points")
    if projections:
        ax.scatter([p[0] for p in projections], [p[1] for p in projections], s=30,
                   facecolors="none", edgecolors="C3", label="fiber images (E21, E22)")
    ax.axhline(0, color="0.8", lw=0.5)
    ax.axvline(0, color="0.8", lw=0.5)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(str(conic))
    ax.legend(frameon=False, loc="best")
    return _save(fig, path)


def plot_class_numbers(ds, hs, path):
    fig, ax = _new()
    ax.scatter(ds, hs, s=6)
    ax.set_xlabel("discriminant D")
    ax.set_ylabel("narrow class number h+")
    return _save(fig, path)


def plot_curve_points(curve, points, path):
    """Real locus of the cubic with the searched rational points marked."""
    import numpy as np

    e = sorted(curve.roots)
    finite = [p for p in points if not p.at_infinity]
    span = e[2] - e[0] + 1
    right = max([e[2] + 0.6 * span] + [float(p.X) + 0.1 * span for p in finite])
    xs = np.linspace(e[0] - 0.05 * span, right, 4000)
    ys2 = (xs - e[0]) * (xs - e[1]) * (xs - e[2])
    ok = ys2 >= 0
    ys = np.sqrt(np.where(ok, ys2, np.nan))
    fig, ax = _new()
    ax.plot(xs, ys, color="0.4", lw=0.8)
    ax.plot(xs, -ys, color="0.4", lw=0.8)
    ax.scatter([float(p.X) for p in finite], [float(p.Y) for p in finite], s=14, color="C3", zorder=3)
    ax.set_xlabel("X")
    ax.set_ylabel("Y")
    ax.set_title(f"Y² = (X - {e[0]})(X - {e[1]})(X - {e[2]})")
    return _save(fig, path)
