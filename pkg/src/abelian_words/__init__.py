"""Binary words avoiding abelian squares: construction, detection, search."""

from .construct import (
    BoundReport,
    QuadraticProfile,
    best_q_for,
    bound_report,
    extend_quadratic_word,
    quadratic_word,
    simple_word,
)
from .detector import (
    CheckerStateError,
    IncrementalChecker,
    Occurrence,
    find_occurrences,
    is_abelian_square,
    max_order,
    naive_find_occurrences,
)
from .known import KNOWN_VALUES
from .search import (
    Checkpoint,
    CheckpointError,
    Search,
    SearchInterrupted,
    SearchOutcome,
    resume_search,
    search_l,
    verify_table,
)
from .words import BinaryWord, LatticePath, WordParseError, parse_word, prefix_sums, serialize_word

__all__ = [
    "BinaryWord", "BoundReport", "CheckerStateError", "Checkpoint", "CheckpointError",
    "IncrementalChecker", "KNOWN_VALUES", "LatticePath", "Occurrence", "QuadraticProfile",
    "Search", "SearchInterrupted", "SearchOutcome", "WordParseError", "best_q_for",
    "bound_report", "extend_quadratic_word", "find_occurrences", "is_abelian_square",
    "max_order", "naive_find_occurrences", "parse_word", "prefix_sums", "quadratic_word",
    "resume_search", "search_l", "serialize_word", "simple_word", "verify_table",
]
