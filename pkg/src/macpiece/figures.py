"""PNG companions for the CSV reports: dinv/area histograms and RD bars."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
}


def _save(fig, path):
    # no timestamp or version metadata, so identical inputs give identical files
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def histogram_figure(dinv_hist, area_hist, title, path):
    """Side-by-side bar charts of (value, count) lists."""
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(7, 2.8))
        for ax, hist, name in zip(axes, (dinv_hist, area_hist), ("dinv", "area")):
            xs = [v for v, _ in hist]
            ax.bar(xs, [c for _, c in hist], color="0.35", width=0.8)
            ax.set_xlabel(name)
            ax.set_ylabel("fillings")
            if xs:
                ax.set_xticks(range(min(xs), max(xs) + 1))
        fig.suptitle(title)
        fig.tight_layout()
        return _save(fig, path)


def rd_figure(values, path):
    """Bar chart of RD(lam) with partitions ordered as in the CSV."""
    labels = [",".join(map(str, lam)) for lam in values]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4, 0.45 * len(labels) + 1), 3))
        ax.bar(range(len(labels)), [float(v) for v in values.values()], color="0.35")
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=60, ha="right")
        ax.set_ylabel("RD")
        ax.set_ylim(0, 1)
        fig.tight_layout()
        return _save(fig, path)
