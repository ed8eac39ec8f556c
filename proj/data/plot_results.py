"""Plot approx_<id>.csv and lebesgue_<id>.csv tables written by `polymesh`.

    python3 plot_results.py results/approx_viviani.csv results/lebesgue_viviani.csv
"""

import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def plot_approx(rows, ax_by_f):
    series = defaultdict(list)
    for r in rows:
        series[(r["f_tag"], r["method"])].append((int(r["n"]), float(r["rel_error"])))
    for (f, method), pts in sorted(series.items()):
        pts.sort()
        ax_by_f(f).semilogy([p[0] for p in pts], [p[1] for p in pts], marker="o", label=method)


def main(paths):
    for path in paths:
        rows = read(path)
        if not rows:
            continue
        if "f_tag" in rows[0]:
            tags = sorted({r["f_tag"] for r in rows})
            fig, axes = plt.subplots(1, len(tags), figsize=(4 * len(tags), 3.5), squeeze=False)
            axes = dict(zip(tags, axes[0]))
            plot_approx(rows, lambda f: axes[f])
            for f, ax in axes.items():
                ax.set_title(f)
                ax.set_xlabel("n")
                ax.legend()
        else:
            fig, ax = plt.subplots(figsize=(5, 3.5))
            series = defaultdict(list)
            for r in rows:
                series[r["method"]].append((int(r["n"]), float(r["lebesgue"])))
            for method, pts in sorted(series.items()):
                pts.sort()
                ax.semilogy([p[0] for p in pts], [p[1] for p in pts], marker="o", label=method)
            ax.set_xlabel("n")
            ax.set_ylabel("Lebesgue constant")
            ax.legend()
        fig.tight_layout()
        fig.savefig(path.rsplit(".", 1)[0] + ".png", dpi=120)


if __name__ == "__main__":
    main(sys.argv[1:])
