"""Figure rendering for sweep results.

Renders the rate-comparison and outage curves from a sweep table to image
files next to the delimited output. Optional: the sweep itself never
depends on matplotlib being importable unless figures are requested.
"""

from __future__ import annotations

import os

from .sweep import SweepRow


def _by_config(rows: list[SweepRow]):
    grouped: dict[tuple[int, int], list[SweepRow]] = {}
    for row in rows:
        grouped.setdefault((row.n_r, row.n_d), []).append(row)
    for config_rows in grouped.values():
        config_rows.sort(key=lambda r: r.q_db)
    return grouped


def render_figures(rows: list[SweepRow], stem: str) -> list[str]:
    """Write rate and outage figures for a sweep table.

    ``stem`` is the path prefix (typically the output file without its
    extension); returns the list of files written. Panels with no data in
    the table are skipped.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    grouped = _by_config(rows)
    written = []

    have_rates = any(r.rate_sum_cf is not None for r in rows)
    if have_rates:
        fig, ax = plt.subplots(figsize=(7, 5))
        for (n_r, n_d), config_rows in sorted(grouped.items()):
            q = [r.q_db for r in config_rows]
            label = f"$N_r={n_r}$, $N_d={n_d}$"
            if config_rows[0].rate_sum_cf is not None:
                ax.plot(q, [r.rate_sum_cf for r in config_rows], "-",
                        label=f"NOMA sum rate, {label}")
            if config_rows[0].rate_sum_mc is not None:
                ax.plot(q, [r.rate_sum_mc for r in config_rows], "x", ms=5,
                        label=f"NOMA sum rate (MC), {label}")
            if config_rows[0].rate_oma_mc is not None:
                ax.plot(q, [r.rate_oma_mc for r in config_rows], "--o", ms=3,
                        label=f"OMA rate (MC), {label}")
        ax.set_xlabel("Peak interference power $Q$ (dB)")
        ax.set_ylabel("Average achievable rate (bits/s/Hz)")
        ax.grid(True, alpha=0.4)
        ax.legend(fontsize=8)
        path = f"{stem}_rates.png"
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

    have_outage = any(r.outage_s1_cf is not None or r.outage_s1_mc is not None
                      for r in rows)
    if have_outage:
        fig, axes = plt.subplots(1, 2, figsize=(11, 4.5), sharey=True)
        for ax, cf_col, mc_col, title in (
            (axes[0], "outage_s1_cf", "outage_s1_mc", "Symbol $s_1$"),
            (axes[1], "outage_s2_cf", "outage_s2_mc", "Symbol $s_2$"),
        ):
            for (n_r, n_d), config_rows in sorted(grouped.items()):
                q = [r.q_db for r in config_rows]
                label = f"$N_r={n_r}$, $N_d={n_d}$"
                cf = [getattr(r, cf_col) for r in config_rows]
                mc = [getattr(r, mc_col) for r in config_rows]
                if cf[0] is not None:
                    ax.semilogy(q, cf, "-", label=f"analytic, {label}")
                if mc[0] is not None:
                    ax.semilogy(q, mc, "x", ms=5, label=f"MC, {label}")
            ax.set_xlabel("Peak interference power $Q$ (dB)")
            ax.set_title(title)
            ax.grid(True, which="both", alpha=0.4)
            ax.legend(fontsize=8)
        axes[0].set_ylabel("Outage probability")
        path = f"{stem}_outage.png"
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

    return written


def default_stem(out_path: str | None) -> str:
    if out_path:
        return os.path.splitext(out_path)[0]
    return "sweep"
