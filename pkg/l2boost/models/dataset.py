"""Data containers for designs, responses and fitted coefficients."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from l2boost.exceptions import DimensionMismatch, InputFormatError


def _frozen(a, dtype=float) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Dataset:
    """Predictor matrix x (n x p) with response y (length n)."""
    x: np.ndarray
    y: np.ndarray
    column_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        x = _frozen(self.x)
        y = _frozen(self.y)
        if x.ndim != 2:
            raise InputFormatError("Predictor matrix must be two-dimensional", shape=list(x.shape))
        n, p = x.shape
        if n < 2 or p < 1:
            raise InputFormatError("Need at least 2 rows and 1 column", n=n, p=p)
        if y.shape != (n,):
            raise DimensionMismatch("Response length differs from row count", n=n, y=len(y))
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise InputFormatError("Data contain non-finite values")
        names = self.column_names
        if names is None:
            names = tuple(f"x{j + 1}" for j in range(p))
        elif len(names) != p:
            raise DimensionMismatch("Column name count differs from column count", p=p, names=len(names))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "column_names", tuple(names))

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]

    def subset(self, rows: np.ndarray) -> "Dataset":
        return Dataset(self.x[rows], self.y[rows], self.column_names)

    def with_columns(self, columns: np.ndarray) -> "Dataset":
        names = tuple(self.column_names[j] for j in columns)
        return Dataset(self.x[:, columns], self.y, names)


@dataclass(frozen=True)
class StandardizedDesign:
    """
    Centered, unit-empirical-norm columns g_j together with the maps back.

    Every column satisfies n^-1 sum_i g_ij = 0 and n^-1 sum_i g_ij^2 = 1.
    """
    g: np.ndarray
    centers: np.ndarray
    scales: np.ndarray
    y_center: float
    y_centered: np.ndarray
    column_names: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        for name in ("g", "centers", "scales", "y_centered"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        object.__setattr__(self, "y_center", float(self.y_center))

    @property
    def n(self) -> int:
        return self.g.shape[0]

    @property
    def p(self) -> int:
        return self.g.shape[1]

    def transform(self, x: np.ndarray) -> np.ndarray:
        """Map original-scale rows onto the standardized coordinates."""
        x = np.asarray(x, dtype=float)
        if x.ndim != 2 or x.shape[1] != self.p:
            raise DimensionMismatch("New rows have the wrong number of columns", expected=self.p)
        return (x - self.centers) / self.scales


@dataclass(frozen=True)
class SparseCoefficients:
    """Intercept plus coefficients on the original predictor scale."""
    intercept: float
    beta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "intercept", float(self.intercept))
        object.__setattr__(self, "beta", _frozen(np.atleast_1d(self.beta)))

    @property
    def p(self) -> int:
        return self.beta.shape[0]

    @property
    def active_set(self) -> np.ndarray:
        return np.flatnonzero(self.beta)

    def predict(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim != 2 or x.shape[1] != self.p:
            raise DimensionMismatch("Rows have the wrong number of columns", expected=self.p)
        return self.intercept + x @ self.beta


@dataclass(frozen=True)
class ExpressionMatrix:
    """Raw microarray intensities (samples x genes) with binary labels."""
    raw: np.ndarray
    labels: np.ndarray
    gene_names: Tuple[str, ...]

    def __post_init__(self):
        raw = _frozen(self.raw)
        labels = _frozen(self.labels, dtype=int)
        if raw.ndim != 2 or labels.shape != (raw.shape[0],):
            raise DimensionMismatch("Label count differs from sample count",
                                    samples=raw.shape[0], labels=len(labels))
        if not np.all(np.isfinite(raw)):
            raise InputFormatError("Expression values must be finite")
        if not np.all(np.isin(labels, (0, 1))):
            raise InputFormatError("Labels must be coded 0/1")
        if len(self.gene_names) != raw.shape[1]:
            raise DimensionMismatch("Gene name count differs from gene count")
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "gene_names", tuple(self.gene_names))
