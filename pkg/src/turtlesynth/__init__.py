"""turtlesynth: completing and repairing turtle block programs to match a
noisy drawn trajectory, by budgeted search over editing commands."""

from .lang import (
    ANGLES,
    REPEAT_COUNTS,
    Block,
    RenderConfig,
    Workspace,
    EMPTY_WORKSPACE,
    densify_polyline,
    interpret,
    register_to_origin,
    semantically_equal,
)
from .editing import (
    Change,
    ConnectInside,
    ConnectUnder,
    Disconnect,
    EditCommand,
    Get,
    InfeasibleCommand,
    Remove,
    apply_command,
    coarsen,
    enumerate_commands,
    format_command,
    parse_command,
    replay,
)
from .hausdorff import EmptySetError, hausdorff, hausdorff_below
from .models import CommandModel, fit_bigram, fit_lambdas, fit_model, sample_command
from .search import (
    SynthesisProblem,
    SearchResult,
    iterative_deepening_search,
    run_synthesis,
    sampling_search,
)
from .corpus import (
    CorpusItem,
    SyntheticSpec,
    generate_synthetic_corpus,
    load_corpus,
    save_corpus,
    target_trajectory,
)
from .evaluate import KAheadResult, aggregate, k_ahead, write_report

__version__ = "0.1.0"
