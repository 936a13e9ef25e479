from pathlib import Path

import matplotlib
import matplotlib.pyplot as plt
from matplotlib.axes import Axes
from matplotlib.figure import Figure

from engine.models import ModelPresentation, embed
from .vis_utils import domain_frame, edges_frame, read_model

from settings import Parameters, Settings
SETTINGS = Settings.get_settings()

FIG_DPI = 96


class ModelPlotter:
    """Plots the embedded domain of a presented model up to an address
    length. Elements are dots at the height of their level within the
    component, arrows are the induced functions (one color per function)
    and elements satisfying a predicate are highlighted with its name.
    """
    def __init__(self, model: ModelPresentation, depth: int):
        self.model = model
        self.frame = domain_frame(model, depth)
        self.edges = edges_frame(embed(model), self.frame)

        width = max(4, 0.9 * (self.frame['X'].max() + 2))
        height = max(3, 0.9 * (self.frame['Y'].max() - self.frame['Y'].min() + 2))
        self.fig: Figure = plt.figure(figsize=(width, height), dpi=FIG_DPI)
        self.ax: Axes = self.fig.add_axes([0, 0, 1, 1])
        self.function_colors = matplotlib.colormaps['tab10']

    def plot_edges(self):
        """One arrow per induced edge f_g(u) = v, from u to v."""
        for _, edge in self.edges.iterrows():
            start = self.frame.loc[edge['From']]
            stop = self.frame.loc[edge['To']]
            self.ax.annotate(
                '', (stop['X'], stop['Y']), xytext=(start['X'], start['Y']),
                arrowprops=dict(
                    arrowstyle='->', lw=1.2,
                    color=self.function_colors(int(edge['Function']) - 1),
                ),
            )

    def plot_elements(self):
        """Dots for the elements, colored ones get a yellow label box."""
        colored = self.frame['Predicates'] != ''
        self.ax.scatter(
            self.frame['X'], self.frame['Y'], s=30, zorder=3,
            c=['tab:orange' if c else 'k' for c in colored],
        )
        for _, row in self.frame.iterrows():
            text = row['Label']
            if row['Predicates']:
                text += f"\n{row['Predicates']}"
            self.ax.annotate(
                text, (row['X'], row['Y']), xytext=(6, 5),
                textcoords='offset points', fontsize=7,
                bbox=dict(boxstyle='round,pad=0.13', fc='yellow', alpha=0.8)
                if row['Predicates'] else None,
            )

    def add_legend(self):
        for g, name in enumerate(self.model.sig.functions, start=1):
            self.ax.plot([], [], color=self.function_colors(g - 1), label=name)
        if self.model.sig.functions:
            self.ax.legend(loc='lower right', fontsize=8)

    def save_fig(self, path: Path | None = None, show: bool = False) -> Path:
        """Turns off axis and saves the figure (default under visualization/)."""
        path = Path(path) if path else \
            SETTINGS.VISUALIZATION_DIR / SETTINGS.MODEL_PLOT_FILE
        self.ax.axis('off')
        self.ax.margins(0.08)
        self.fig.savefig(path, dpi=FIG_DPI, bbox_inches='tight')
        if show:
            plt.show()
        plt.close(self.fig)
        return path


def plot_model(
    model: ModelPresentation,
    depth: int = Parameters.PLOT_DEPTH,
    path: Path | None = None,
) -> Path:
    plotter = ModelPlotter(model, depth)
    plotter.plot_edges()
    plotter.plot_elements()
    plotter.add_legend()
    return plotter.save_fig(path)


if __name__ == "__main__":
    """Plots the latest saved witness."""
    plotter = ModelPlotter(read_model(), Parameters.PLOT_DEPTH)
    plotter.plot_edges()
    plotter.plot_elements()
    plotter.add_legend()
    plotter.save_fig(show=True)
