"""Exact solvers for minimum directed feedback vertex and arc set.

Three routes to the same optima: a brute-force oracle, a dynamic program
over nice tree decompositions (both problems, any digraph), and a dynamic
program over sphere-cut decompositions driven by connectivity patterns
(DFVS, planar digraphs).  Generators produce grids, random planar
instances, and the hardness-reduction chain from grid hitting set through
permutation formulas to or-gadget graphs.
"""

from .digraph import (
    DiGraph,
    bridges_and_components,
    delete,
    is_acyclic,
    parse_digraph,
    reachability,
    topological_order,
    write_digraph,
)
from .embedding import Embedding, radial_graph, validate_embedding
from .errors import CapExceeded, ParseError, ValidationError
from .formulas import HittingSetInstance, PermFormula
from .generators import (
    gen_grid,
    gen_hitting_set,
    gen_random_planar,
    or_gadget,
    reduce_2formula_to_dfvs,
    reduce_3formula_to_2formula,
    reduce_hs_to_3formula,
)
from .oracle import (
    OracleResult,
    extendable_ordering,
    hs_bruteforce,
    min_dfas_bruteforce,
    min_dfvs_bruteforce,
    perm_formula_sat,
)
from .patterns import (
    ChordRelation,
    ConnectivityPattern,
    clique_number,
    count_noncrossing,
    crossing,
    generate,
    induced_pattern,
    join,
    simplify,
)
from .planar_dp import solve_dfvs_planar, solve_dfvs_planar_full
from .sphere_cut import (
    SphereCutDecomposition,
    build_sc_heuristic,
    grid_sc_decomposition,
    preprocess_planar,
    validate_sc,
)
from .treewidth import (
    NiceTreeDecomposition,
    TreeDecomposition,
    make_nice,
    parse_td,
    solve_dfas_tw,
    solve_dfvs_tw,
    td_exact_small,
    td_heuristic,
    validate_td,
)

__version__ = "0.1.0"
