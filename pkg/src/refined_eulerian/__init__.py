"""Eulerian numbers refined by the first and last letter of a permutation."""

from .errors import (ConsistencyError, DomainError, EulerianError, InvalidArgument,
                     ResourceLimitError, UndefinedDistribution)
from .exact_core import (METHODS, EulerRow, RefinedTable, both_ends, euler_row, eulerian,
                         f_window, refined_first, refined_last, refined_table)
from .poly import Poly

__version__ = "0.1.0"
