"""Higher-order chain rule for f(g(x)) as a sum over set partitions.

The combinatorial evaluator sums over all set partitions of {1..n}; the
closed form sums over block profiles with their partition counts; a
truncated Taylor-series composition serves as an independent oracle.
"""

__version__ = "0.1.0"

from .combinatorics import (
    BlockProfile,
    SetPartition,
    bell_number,
    block_profile,
    enumerate_block_profiles,
    enumerate_set_partitions,
    extend_partition,
    integer_partition_count,
    profile_count,
)
from .errors import CapExceeded, DomainError, FaaDiBrunoError, KindError, OrderMismatch, PointMismatch
from .faa_di_bruno import (
    TermExpansion,
    all_derivatives_of_composition,
    derivative_of_composition_closed_form,
    derivative_of_composition_combinatorial,
    symbolic_expansion,
)
from .jets import Jet, jet_compose, oracle_nth_derivative
from .scalars import DerivativeSequence, parse_rational

__all__ = [
    "BlockProfile",
    "CapExceeded",
    "DerivativeSequence",
    "DomainError",
    "FaaDiBrunoError",
    "Jet",
    "KindError",
    "OrderMismatch",
    "PointMismatch",
    "SetPartition",
    "TermExpansion",
    "all_derivatives_of_composition",
    "bell_number",
    "block_profile",
    "derivative_of_composition_closed_form",
    "derivative_of_composition_combinatorial",
    "enumerate_block_profiles",
    "enumerate_set_partitions",
    "extend_partition",
    "integer_partition_count",
    "jet_compose",
    "oracle_nth_derivative",
    "parse_rational",
    "profile_count",
    "symbolic_expansion",
]
