"""Figure rendering for report output.

Headless by construction: the Agg backend is forced before pyplot is
imported, so this works in CI and over ssh without a display.
"""

import matplotlib

matplotlib.use("Agg")

from matplotlib import pyplot      # noqa: E402  (backend must go first)


def _bars(ax, series):
    degrees = sorted({d for table in series.values() for d in table})
    if not degrees:
        degrees = [0]
    width = 0.8 / max(len(series), 1)
    for i, (label, table) in enumerate(sorted(series.items())):
        xs = [d + i * width for d in degrees]
        ax.bar(xs, [table.get(d, 0) for d in degrees],
               width=width, label=label)
    ax.set_xticks([d + 0.4 - width / 2 for d in degrees])
    ax.set_xticklabels([str(d) for d in degrees])
    ax.set_xlabel("degree")
    ax.set_ylabel("rank")
    if len(series) > 1:
        ax.legend(fontsize=8)


def _curve(ax, table):
    xs = sorted(table)
    ax.plot(xs, [table[x] for x in xs], marker="o")
    ax.set_xlabel("degree")
    ax.set_ylabel("rank")
    ax.set_ylim(bottom=0)


def render(report, path):
    """Write the report's figure as a PNG; returns False when the
    report has nothing to draw."""
    if report.figure is None:
        return False
    kind, payload, title = report.figure
    fig, ax = pyplot.subplots(figsize=(6, 3.5), dpi=110)
    if kind == "bars":
        _bars(ax, payload)
    else:
        _curve(ax, payload)
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path)
    pyplot.close(fig)
    return True
