"""Repository for reading input tables."""

import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from l2boost.exceptions import InputFormatError
from l2boost.models.dataset import Dataset, ExpressionMatrix

logger = logging.getLogger(__name__)


class DataRepository:
    """
    Reads comma-separated inputs with a header row.

    Lines starting with '#' are treated as comments.
    """

    def __init__(self, base_dir: Optional[Path] = None):
        self.base_dir = Path(base_dir) if base_dir is not None else None

    def _resolve(self, path) -> Path:
        path = Path(path)
        if self.base_dir is not None and not path.is_absolute():
            path = self.base_dir / path
        return path

    def read_frame(self, path) -> pd.DataFrame:
        """
        Load a CSV file into a DataFrame.

        Raises:
            InputFormatError: If the file is missing, empty or unparsable
        """
        resolved = self._resolve(path)
        if not resolved.is_file():
            raise InputFormatError(f"Input file not found: {resolved}", path=str(resolved))
        try:
            frame = pd.read_csv(resolved, comment="#", float_precision="round_trip", encoding="utf-8")
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
            raise InputFormatError(f"Cannot parse {resolved}: {exc}", path=str(resolved)) from exc
        if frame.empty:
            raise InputFormatError(f"Input file has no rows: {resolved}", path=str(resolved))
        return frame

    @staticmethod
    def _finite(frame: pd.DataFrame, columns: Sequence[str], path) -> np.ndarray:
        values = frame.loc[:, list(columns)].to_numpy(dtype=float)
        if not np.all(np.isfinite(values)):
            raise InputFormatError("Input contains missing or non-finite values", path=str(path))
        return values

    def read_dataset(self, path, response: str) -> Dataset:
        """
        Read predictors and a named response column.

        The remaining numeric columns are predictors, in file order; other
        columns (sample ids, annotations) are dropped.

        Raises:
            InputFormatError: If the response column is absent or not numeric,
                no numeric predictor remains, or values are missing
        """
        frame = self.read_frame(path)
        if response not in frame.columns:
            raise InputFormatError(
                f"Response column '{response}' not found",
                path=str(path),
                columns=[str(c) for c in frame.columns[:20]],
            )
        if not pd.api.types.is_numeric_dtype(frame[response]):
            raise InputFormatError(f"Response column '{response}' is not numeric", path=str(path))
        predictors = [c for c in frame.select_dtypes("number").columns if c != response]
        dropped = [str(c) for c in frame.columns if c != response and c not in predictors]
        if dropped:
            logger.info("Dropping %d non-numeric columns from %s: %s", len(dropped), path, ", ".join(dropped[:10]))
        if not predictors:
            raise InputFormatError("Input has no numeric predictor columns", path=str(path), dropped=dropped[:10])
        x = self._finite(frame, predictors, path)
        y = self._finite(frame, [response], path)[:, 0]
        return Dataset(x, y, tuple(str(c) for c in predictors))

    def read_expression(self, path, labels: str = "label") -> ExpressionMatrix:
        """
        Read an expression matrix with samples in rows and genes in columns.

        Raises:
            InputFormatError: If the label column is absent, labels are not 0/1
                or intensities are negative
        """
        data = self.read_dataset(path, labels)
        if np.any(data.x < 0):
            raise InputFormatError("Expression values must be non-negative", path=str(path))
        if not np.all(np.isin(data.y, (0.0, 1.0))):
            raise InputFormatError(f"Label column '{labels}' must hold 0/1 values", path=str(path))
        return ExpressionMatrix(data.x, data.y.astype(int), data.column_names)
