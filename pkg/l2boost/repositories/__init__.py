"""Repository modules for reading inputs and writing results."""

from l2boost.repositories.data_repository import DataRepository
from l2boost.repositories.result_repository import ResultRepository

__all__ = ["DataRepository", "ResultRepository"]
