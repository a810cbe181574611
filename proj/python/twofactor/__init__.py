"""2-factors of dense graphs with a prescribed number of cycles."""

from ._core import (
    CoverError,
    CycleCover,
    Error,
    FACTOR_ORACLE_CAP,
    Graph,
    GraphError,
    IMPLANTED_ORACLE_CAP,
    ImplantedC4,
    Instance,
    Params,
    ParseError,
    PreconditionError,
    SolveResult,
    apply_switch,
    count_h_edges,
    count_implanted_bruteforce,
    enumerate_implanted,
    format_cover,
    format_graph,
    gen_cliques_matching,
    gen_planted,
    gen_triangles_biclique,
    increase_by_one,
    load_cover,
    load_graph,
    oracle_exists_k_factor,
    param_names,
    parse_cover,
    parse_graph,
    save_cover,
    save_graph,
    solve,
    split_to_k,
    symmetric_difference_size,
    validate_cover,
)

__all__ = [name for name in dir() if not name.startswith("_")]
