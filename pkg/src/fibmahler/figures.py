"""Figure rendering for the plot command.

Takes the tabular output of emit_plot_data and draws the generator curves
(solid), the extra restricted vectors (dashed), the envelope (thick), and
vertical lines at the breakpoints, writing a PNG next to the data file.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_plot(header: list[str], rows: list[list], breakpoints,
                out_path: str | Path, title: str = "") -> Path:
    out_path = Path(out_path)
    ts = [float(r[0]) for r in rows]
    env_col = header.index("envelope")
    fig, ax = plt.subplots(figsize=(8, 5))
    for col in range(1, env_col):
        name = header[col]
        ys = [float(r[col]) for r in rows]
        if name.startswith("gen"):
            ax.plot(ts, ys, lw=1.0, label=name)
        else:
            ax.plot(ts, ys, lw=1.0, ls="--", label=name)
    ax.plot(ts, [float(r[env_col]) for r in rows], lw=2.2, color="black",
            label="envelope")
    for bp in breakpoints:
        v = float(bp.value)
        if ts[0] <= v <= ts[-1]:
            ax.axvline(v, color="gray", lw=0.6, ls=":")
            ax.annotate(f"t{bp.index}", (v, ax.get_ylim()[1]),
                        fontsize=7, ha="center", va="bottom")
    ax.set_xlabel("t")
    ax.set_ylabel("f(t)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
