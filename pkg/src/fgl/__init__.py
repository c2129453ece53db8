"""Feedback game lab: exact solving, even kernels, scripted strategies,
and hardness-gadget reductions for token-sliding games on multigraphs."""

from .engine import (
    GameState,
    MoveOutcome,
    Player,
    Variant,
    WinReason,
    apply_move,
    initial_state,
    legal_moves,
    run_moves,
    winner_of_final,
)
from .errors import (
    BudgetExceeded,
    FglError,
    GraphError,
    IllegalMoveError,
    InputError,
    KernelError,
    OversizeError,
    PolicyError,
)
from .families import (
    cycle,
    gk_graph,
    make_family,
    toroidal_grid,
    torus_gcd,
    tri_reflection,
    tri_vertex_id,
    triangular_grid,
)
from .graph import (
    Graph,
    VertexSet,
    bipartition,
    build_graph,
    edges_between,
    is_connected,
    is_eulerian,
    neighborhood,
    odd_closed_walk,
)
from .graph_io import (
    dump_graph,
    dump_kernel,
    dump_transcript,
    graph_to_obj,
    kernel_to_obj,
    load_graph,
    load_kernel,
    load_transcript,
    obj_to_graph,
    obj_to_kernel,
    obj_to_transcript,
    transcript_to_obj,
)
from .kernel import (
    KernelCert,
    KernelSet,
    ValidationResult,
    build_kernel_cert,
    enumerate_even_kernels,
    find_even_kernel,
    torus_tiled_kernel,
    tri_excluded,
    tri_kernel,
    tri_parity_kernel,
    tri_recursive_kernel,
    validate_even_kernel,
)
from .reductions import (
    Digraph,
    GadgetMap,
    ReductionReport,
    build_digraph,
    deg_solve,
    eulerize,
    proof_shape_warnings,
    pseudo_arc_transform,
    reduction_equivalence_check,
)
from .solver import (
    ScanRow,
    SearchLimits,
    Verdict,
    VerificationReport,
    best_move,
    scan,
    scan_csv,
    solve,
    verify_policy,
)
from .strategies import (
    DeadVertexMarker,
    Policy,
    gk_policy,
    kernel_policy,
    q2n_policy,
    q3n_policy,
    t5_policy,
)

__version__ = "0.1.0"
