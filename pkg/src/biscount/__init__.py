"""Exact and approximate counting of independent sets in bipartite graphs."""
from .errors import (BiscountError, BudgetExceeded, CapExceeded, DegreeBoundError,
                     GraphFormatError, GuardExceeded, SingularMatrixError)
from .fptcount import (NeighbourhoodProfile, count_is_k_bounded, count_lis_bounded,
                       count_maxlis_bounded, neighbourhood_profile)
from .fptras import FptrasResult, fptras_is_k, sample_k_subset
from .graphs import (BipartiteGraph, ColouredGraph, canonical_form, induced_coloured_subgraph,
                     max_degree, parse_bipartite, parse_coloured, random_bounded_degree_bipartite,
                     serialize_bipartite, serialize_coloured, to_coloured)
from .homcount import build_traversal, count_hom
from .colsub import build_shom_matrix, count_induced, enumerate_pattern_basis

__version__ = "0.1.0"
