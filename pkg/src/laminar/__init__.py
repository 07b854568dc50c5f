"""Stream reasoning with window operators.

Streams are finite timelines annotated with sets of ground atoms. Window
functions cut substreams out of them; formulas combine atoms with boolean
connectives, ``sometime``/``always`` over the current window, ``@`` for
exact time references and ``win i`` for (nested) window operators.
"""

from .engine import Answer, EvalContext, Structure, answer, entails, enumerate_assignments, evaluate_continuous
from .errors import (
    EntryOutsideTimeline,
    EvaluationError,
    InputError,
    IntervalNotContained,
    InvalidSpec,
    LaminarError,
    MissingTimeline,
    MixedVariableNamespace,
    NonGroundFormula,
    ParseError,
    TimeOutsideTimeline,
    UnknownKind,
    UnregisteredWindow,
    UnsafeQuery,
)
from .io import (
    format_formula,
    format_query,
    format_stream,
    parse_formula_text,
    parse_query_text,
    parse_registry,
    parse_stream_file,
    serialize_answer,
)
from .logic import (
    And,
    Always,
    At,
    Atom,
    Const,
    Implies,
    Not,
    Or,
    Query,
    QueryAssignment,
    Sometime,
    TimeVar,
    Var,
    Win,
    compatible,
    free_variables,
    is_ground,
    substitute,
)
from .stream import GroundAtom, Stream, Timeline, atom, cardinality, is_window_of, make_stream, restrict
from .windows import (
    ExtendedWindow,
    IndexFunction,
    PartitionWindowSpec,
    StreamChoice,
    TimeWindowSpec,
    TupleMode,
    TupleWindowSpec,
    WindowRegistry,
    apply_extended,
    index_substream,
    partition_window,
    time_window,
    tuple_time_bounds,
    tuple_window,
)

__version__ = "0.1.0"
