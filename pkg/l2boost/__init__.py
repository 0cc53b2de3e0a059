"""L2Boosting with componentwise least squares for high-dimensional linear models."""

from l2boost.config import settings

__version__ = settings.VERSION
