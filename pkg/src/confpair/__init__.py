"""Exact tree/graph calculus for Euclidean configuration spaces.

Forests of labeled binary trees span homology, directed graphs with
ordered edges span cohomology, and the configuration pairing (edges to
nadir vertices) realizes the evaluation between them.  The package
provides the canonical tall/long bases, normalization onto them,
operadic composition with its dual graph-side structure map, Gram and
rank verification, and numeric checks of the planetary-system
parametrization.
"""

from .brackets import br, dot, dot_list, forest_to_expr, reduce_bracket, reduce_expr, var
from .errors import ParseError, ValidationError, VerificationFailure
from .geometry import alpha, eval_system, limit_check, random_torus_point, s_ratio
from .graphs import (Graph, enumerate_long_graphs, graph_of_ordered_partition,
                     ordered_partition_of_graph, parse_edges, parse_graph,
                     render_graph)
from .lincombo import LinCombo
from .normalize import normalize_pois, normalize_siop
from .operad import (CooperadOutput, all_two_level_trees, check_duality, compose,
                     compose_along, cooperad, sample_duality, two_level_sites)
from .otrees import OTree, contract, contract_all, corolla, graft_tree, may_tree, parse_otree, render_otree
from .pairing import (GramMatrix, PairingResult, RankTable, gram_matrix, pair,
                      pair_basis, rank_table, verify_perfect)
from .trees import (Forest, OrderedPartition, Tree, enumerate_tall_forests,
                    forest, forest_of_ordered_partition, nadir,
                    ordered_partition_of_forest, parse_forest, parse_tree,
                    render_forest, render_tree, single_tree_forest)

__version__ = "0.1.0"
