"""Decide hierarchical hyperbolicity of free-by-cyclic groups from a
normal-form graph map, with the graph of groups Delta and branching witnesses."""
from .classify import (EXPONENTIAL, classify_strata, compute_filtration, ct_normal_form_check,
                       transition_matrix)
from .core import (CyclicWord, EdgePath, GraphMap, MarkedGraph, TorusElement, iterate_edge,
                   load_graph_map, map_path, parse_graph_map, primitive_root, tighten,
                   torus_element, torus_inv, torus_mul)
from .decompose import (DeltaGraph, build_delta, dt_stratify, export_delta, parse_delta,
                        rewrite_to_vertex_space, unbranched)
from .errors import (FreeByCyclicError, InternalInconsistencyError, MalformedPathError,
                     ParseError, UnsupportedInputError, ValidationError)
from .folding import stallings_fold, validate_pi1_bijectivity
from .fixtures import fixture_path, load_fixture
from .nielsen import (fix_rank, fixed_components, is_nielsen_path, linear_edges,
                      nielsen_cycle_classes, oracle_fix_generators, oracle_fix_rank,
                      vertex_spaces)
from .verdict import (BranchingWitness, Verdict, branching_witness, decide,
                      excessive_linearity, restrict_linear)

__version__ = "0.1.0"
