"""Repository for writing and re-reading result files."""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from l2boost.models.boosting import BoostPath
from l2boost.models.classification import CvResult, RiskPoint, ScaledCoefficient
from l2boost.models.dataset import SparseCoefficients
from l2boost.models.simulation import BenchmarkCell, ReplicationRecord

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
MISSING_CELL = "—"

RECORD_COLUMNS = ["setting", "method", "tuning", "rep", "mse", "active"]


class ResultRepository:
    """
    Writes result tables into one output directory.

    Every CSV starts with '# key: value' provenance lines taken from the
    header mapping; floats are written with 17 significant digits so files
    read back bit-exactly.
    """

    def __init__(self, output_dir, header: Optional[Dict[str, str]] = None):
        self.output_dir = Path(output_dir)
        self.header = dict(header or {})

    def _path(self, name: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def _header_lines(self) -> str:
        return "".join(f"# {key}: {value}\n" for key, value in self.header.items())

    def write_frame(self, name: str, frame: pd.DataFrame) -> Path:
        path = self._path(name)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            handle.write(self._header_lines())
            frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.info("Wrote %s (%d rows)", path, len(frame))
        return path

    def read_frame(self, name: str) -> pd.DataFrame:
        return pd.read_csv(self.output_dir / name, comment="#", float_precision="round_trip", encoding="utf-8")

    def read_header(self, name: str) -> Dict[str, str]:
        """Provenance lines of a written file as a mapping."""
        header: Dict[str, str] = {}
        with open(self.output_dir / name, encoding="utf-8") as handle:
            for line in handle:
                if not line.startswith("# "):
                    break
                key, _, value = line[2:].rstrip("\n").partition(": ")
                header[key] = value
        return header

    # Fit outputs

    def write_coefficients(
        self,
        coef: SparseCoefficients,
        names: Sequence[str],
        scales: np.ndarray,
        name: str = "coefficients.csv",
    ) -> Path:
        """One row per predictor plus the intercept: name, coefficient, scaled."""
        frame = pd.DataFrame({
            "name": ["(intercept)", *names],
            "coefficient": np.concatenate([[coef.intercept], coef.beta]),
            "scaled": np.concatenate([[coef.intercept], coef.beta * np.asarray(scales)]),
        })
        return self.write_frame(name, frame)

    def write_path(self, path: BoostPath, name: str = "path.csv") -> Path:
        """
        Iteration log: m, selected index (0-based), column name, standardized
        increment, RSS and, when available, trace and criterion.
        """
        m = np.arange(1, path.m_total + 1)
        columns = path.design.column_names
        frame = pd.DataFrame({
            "m": m,
            "index": path.indices,
            "column": [columns[j] if columns else f"x{j + 1}" for j in path.indices],
            "increment": path.increments,
            "rss": path.rss,
        })
        if path.traces is not None:
            frame["trace"] = path.traces
        if path.criterion is not None:
            frame["criterion"] = path.criterion
        return self.write_frame(name, frame)

    def write_curve(self, values: np.ndarray, first_m: int = 1, name: str = "criterion.dat") -> Path:
        """
        Whitespace-separated two-column plot data (m, value).

        Non-finite values are written as 'nan' or 'inf'.
        """
        path = self._path(name)
        values = np.asarray(values, dtype=float)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self._header_lines())
            for k, value in enumerate(values):
                handle.write(f"{k + first_m} {FLOAT_FORMAT % value}\n")
        return path

    def read_curve(self, name: str = "criterion.dat") -> np.ndarray:
        """Two-column plot data back as an (rows x 2) array."""
        return np.loadtxt(self.output_dir / name, comments="#", ndmin=2)

    # Benchmark outputs

    def write_records(self, records: Iterable[ReplicationRecord], name: str = "records.csv") -> Path:
        frame = pd.DataFrame(
            [(r.setting, r.method, r.tuning, r.rep, r.mse, r.active) for r in records],
            columns=RECORD_COLUMNS,
        )
        frame["active"] = frame["active"].astype("Int64")
        return self.write_frame(name, frame)

    def read_records(self, name: str = "records.csv") -> List[ReplicationRecord]:
        frame = self.read_frame(name)
        return [
            ReplicationRecord(
                setting=str(row.setting),
                method=str(row.method),
                tuning=str(row.tuning),
                rep=int(row.rep),
                mse=float(row.mse),
                active=None if pd.isna(row.active) else int(row.active),
            )
            for row in frame.itertuples(index=False)
        ]

    def write_cells(self, cells: Sequence[BenchmarkCell], name: str = "summary.csv") -> Path:
        frame = pd.DataFrame(
            [(c.setting, c.method, c.tuning, c.mean, c.se, c.count, c.failures) for c in cells],
            columns=["setting", "method", "tuning", "mean", "se", "count", "failures"],
        )
        return self.write_frame(name, frame)

    def write_summary(self, cells: Sequence[BenchmarkCell], name: str = "summary.md") -> Path:
        """
        Markdown table with one row per method and one column per setting.

        Cells read 'mean (se)'; cells without successful replications show a
        dash, and failures are counted after the value.
        """
        settings: List[str] = list(dict.fromkeys(c.setting for c in cells))
        methods: List[str] = list(dict.fromkeys(c.method for c in cells))
        lookup = {(c.setting, c.method): c for c in cells}

        lines = [f"<!-- {key}: {value} -->" for key, value in self.header.items()]
        lines.append("| method | " + " | ".join(settings) + " |")
        lines.append("|---" * (len(settings) + 1) + "|")
        for method in methods:
            row = [method]
            for setting in settings:
                cell = lookup.get((setting, method))
                row.append(format_cell(cell))
            lines.append("| " + " | ".join(row) + " |")

        path = self._path(name)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info("Wrote %s", path)
        return path

    # Classification outputs

    def write_cv(self, result: CvResult, name: str = "cv.csv") -> Path:
        frame = pd.DataFrame({
            "repeat": np.arange(result.per_repeat.shape[0]),
            "rate": result.per_repeat,
            "m_hat": result.m_hats,
        })
        return self.write_frame(name, frame)

    def write_scaled(self, rows: Sequence[ScaledCoefficient], name: str = "scaled_coefficients.csv") -> Path:
        frame = pd.DataFrame(
            [(r.name, r.index, r.coefficient, r.scaled, r.wilcoxon_rank) for r in rows],
            columns=["name", "index", "coefficient", "scaled", "wilcoxon_rank"],
        )
        return self.write_frame(name, frame)

    def write_risk(self, points: Sequence[RiskPoint], name: str = "risk_trend.csv") -> Path:
        frame = pd.DataFrame(
            [(p.n, p.mean_excess, p.se_excess, p.bayes_risk) for p in points],
            columns=["n", "mean_excess", "se_excess", "bayes_risk"],
        )
        return self.write_frame(name, frame)


def format_cell(cell: Optional[BenchmarkCell]) -> str:
    if cell is None or cell.count == 0:
        text = MISSING_CELL
    else:
        text = f"{cell.mean:.3f} ({cell.se:.3f})"
    if cell is not None and cell.failures:
        text += f" [{cell.failures} failed]"
    return text
