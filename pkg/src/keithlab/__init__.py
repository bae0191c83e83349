"""keithlab: Keith numbers in arbitrary bases.

Verification and enumeration, repdigit analysis through a linear form in
logarithms, and the product-poset antichain bounds behind the density-zero
result.
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DigitString,
    SeqEngine,
    digits_of,
    k_sequence,
    l_term,
    main_term_and_defect,
    parse_digit_string,
    value_of,
)
from .errors import (  # noqa: E402
    BudgetExceeded,
    DimensionMismatch,
    DomainError,
    EmptyInput,
    InvalidDigit,
    KeithlabError,
    PrecisionError,
)
from .keith_engine import (  # noqa: E402
    KeithWitness,
    WeightTable,
    is_keith,
    search_fast,
    search_naive,
    weight_table,
)

__all__ = [
    "DigitString",
    "SeqEngine",
    "digits_of",
    "k_sequence",
    "l_term",
    "main_term_and_defect",
    "parse_digit_string",
    "value_of",
    "BudgetExceeded",
    "DimensionMismatch",
    "DomainError",
    "EmptyInput",
    "InvalidDigit",
    "KeithlabError",
    "PrecisionError",
    "KeithWitness",
    "WeightTable",
    "is_keith",
    "search_fast",
    "search_naive",
    "weight_table",
]
