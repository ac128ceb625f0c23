import json
import logging
import os

import numpy as np
import pandas as pd

from engine.adapters import sphere_group_matrix
from errors import InvalidInputError
from models.sphere import project_matrix

PLANE_COLUMNS = ["t", "x1", "x2", "eta1", "eta2", "H", "absP"]
MINKOWSKI_COLUMNS = ["t", "xplus", "xminus", "etaplus", "etaminus", "casimir", "hyperbola"]
SPHERE_COLUMNS = ["t", "n1", "n2", "n3", "Htilde"]
PLANE_QP_COLUMNS = ["t", "q1", "q2"]

COLUMN_SETS = {
    "plane": PLANE_COLUMNS,
    "minkowski": MINKOWSKI_COLUMNS,
    "sphere": SPHERE_COLUMNS,
    "plane-qp": PLANE_QP_COLUMNS,
}

CSV_FLOAT_FORMAT = "%.17g"


class TrajectoryProcessor:
    """
    Turn engine trajectories into pandas DataFrames with a fixed column
    order per model, and read them back for plotting.
    """

    def __init__(self):
        """Initialize the trajectory processor."""
        self.logger = logging.getLogger(__name__)

    def process_trajectory(self, kind, trajectory):
        """
        Build the export table of a trajectory.

        Args:
            kind (str): one of plane, minkowski, sphere, plane-qp
            trajectory (Trajectory): engine output

        Returns:
            pandas.DataFrame: one row per sample, columns in COLUMN_SETS[kind] order
        """
        if kind not in COLUMN_SETS:
            raise InvalidInputError(f"Unknown trajectory kind: {kind}")

        states = np.asarray(trajectory.states, dtype=float)
        monitors = trajectory.monitor_values
        data = {"t": np.asarray(trajectory.times, dtype=float)}

        if kind == "plane":
            data.update(x1=states[:, 0], x2=states[:, 1], eta1=states[:, 2], eta2=states[:, 3])
            data.update(H=monitors["H"], absP=monitors["absP"])
        elif kind == "minkowski":
            data.update(xplus=states[:, 0], xminus=states[:, 1], etaplus=states[:, 2], etaminus=states[:, 3])
            data["casimir"] = monitors["casimir"]
            data["hyperbola"] = monitors.get("hyperbola", np.full(len(states), np.nan))
        elif kind == "sphere":
            points = np.array([project_matrix(sphere_group_matrix(z)) for z in states]).reshape(-1, 3)
            data.update(n1=points[:, 0], n2=points[:, 1], n3=points[:, 2], Htilde=monitors["Htilde"])
        else:
            data.update(q1=states[:, 0], q2=states[:, 1])

        df = pd.DataFrame(data, columns=COLUMN_SETS[kind])
        self.logger.info(f"Processed {len(df)} {kind} samples")
        return df

    def process_curve(self, times, values):
        """
        Table of a sampled complex curve (commuting positions of the plane).

        Args:
            times (array-like): sample times
            values (array-like): complex positions

        Returns:
            pandas.DataFrame: columns t, q1, q2
        """
        values = np.asarray(values, dtype=complex)
        return pd.DataFrame({"t": np.asarray(times, dtype=float), "q1": values.real, "q2": values.imag}, columns=PLANE_QP_COLUMNS)

    def save_to_csv(self, df, output_path):
        """
        Save a table as CSV with 17 significant digits and LF line endings.

        Args:
            df (pandas.DataFrame): table
            output_path (str): path of the CSV file

        Returns:
            bool: True if successful, False otherwise
        """
        try:
            df.to_csv(output_path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
            self.logger.info(f"Saved trajectory to {output_path}")
            return True
        except OSError as e:
            self.logger.error(f"Error saving data to CSV: {str(e)}")
            return False

    def save_to_json(self, df, output_path):
        """
        Save a table as a JSON list of records; missing values become null.

        Args:
            df (pandas.DataFrame): table
            output_path (str): path of the JSON file

        Returns:
            bool: True if successful, False otherwise
        """
        records = df.astype(object).where(df.notna(), None).to_dict(orient="records")
        return self.save_report(records, output_path)

    def save(self, df, output_path, output_format):
        if output_format == "json":
            return self.save_to_json(df, output_path)
        return self.save_to_csv(df, output_path)

    def save_report(self, report, output_path):
        """Write a JSON-serializable report (dict or list)."""
        try:
            with open(output_path, "w", encoding="utf-8") as f:
                json.dump(report, f, ensure_ascii=False, indent=2)
                f.write("\n")
            self.logger.info(f"Saved report to {output_path}")
            return True
        except (OSError, TypeError, ValueError) as e:
            self.logger.error(f"Error saving report: {str(e)}")
            return False

    @staticmethod
    def _kind_from_name(input_path):
        """Kind from a "<kind>_<method>" file name; plane when the name says nothing."""
        prefix = os.path.basename(input_path).split("_")[0]
        return prefix if prefix in COLUMN_SETS else "plane"

    def load_trajectory(self, input_path):
        """
        Read a trajectory table written by save_to_csv or save_to_json.

        Args:
            input_path (str): CSV or JSON file

        Returns:
            tuple: (kind, pandas.DataFrame)
        """
        if not os.path.exists(input_path):
            raise InvalidInputError(f"Trajectory file not found: {input_path}")
        try:
            if input_path.endswith(".json"):
                with open(input_path, "r", encoding="utf-8") as f:
                    df = pd.DataFrame(json.load(f))
            else:
                df = pd.read_csv(input_path)
        except (ValueError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise InvalidInputError(f"Could not parse {input_path}: {str(e)}") from e

        if df.empty and len(df.columns) == 0 and input_path.endswith(".json"):
            kind = self._kind_from_name(input_path)
            self.logger.warning(f"No records in {input_path}; treating it as an empty {kind} table")
            return kind, pd.DataFrame(columns=COLUMN_SETS[kind], dtype=float)

        for kind, columns in COLUMN_SETS.items():
            if list(df.columns) == columns:
                self.logger.info(f"Loaded {len(df)} {kind} samples from {input_path}")
                return kind, df.astype(float)
        raise InvalidInputError(f"Unrecognized columns in {input_path}: {list(df.columns)}")
