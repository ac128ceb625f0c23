import logging

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

SVG_HASH_SALT = "poisson-motion"

AXES = {
    "plane": ("x1", "x2"),
    "minkowski": ("xplus", "xminus"),
    "sphere": ("n1", "n2"),
    "plane-qp": ("q1", "q2"),
}

TITLES = {
    "plane": "Poisson plane: configuration trajectory",
    "minkowski": "Minkowski space: light-cone world line",
    "sphere": "Poisson sphere: orthographic projection",
    "plane-qp": "Poisson plane: commuting positions",
}


class TrajectoryPlotter:
    """
    Render exported trajectories as deterministic SVG files.
    Each curve is a single path; sphere runs get the unit-circle outline.
    """

    def __init__(self):
        """Initialize the plotter."""
        self.logger = logging.getLogger(__name__)

    def plot(self, kind, df, output_path):
        """
        Plot one trajectory table.

        Args:
            kind (str): table kind as returned by TrajectoryProcessor.load_trajectory
            df (pandas.DataFrame): trajectory table
            output_path (str): SVG file to write

        Returns:
            int: number of plotted samples
        """
        xcol, ycol = AXES[kind]
        plt.rcParams["svg.hashsalt"] = SVG_HASH_SALT
        fig, ax = plt.subplots(figsize=(6, 6))
        try:
            if kind == "sphere":
                angle = np.linspace(0.0, 2.0 * np.pi, 361)
                ax.plot(np.cos(angle), np.sin(angle), color="0.6", linewidth=0.8)
                ax.set_xlim(-1.1, 1.1)
                ax.set_ylim(-1.1, 1.1)

            if len(df) > 0:
                ax.plot(df[xcol].to_numpy(), df[ycol].to_numpy(), color="tab:blue", linewidth=1.2)
            else:
                self.logger.warning("Empty trajectory; writing axes only")

            ax.set_xlabel(xcol)
            ax.set_ylabel(ycol)
            ax.set_title(TITLES[kind])
            ax.set_aspect("equal", adjustable="datalim")
            fig.savefig(output_path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)

        self.logger.info(f"Saved plot of {len(df)} samples to {output_path}")
        return len(df)
