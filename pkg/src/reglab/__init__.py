"""reglab: a desk-scale laboratory for Szemeredi regularity, robust
outexpansion, and Hamiltonicity in graphs and digraphs.

Everything is exact: densities and thresholds are rationals, subset scans are
exhaustive within documented caps, and every constructive algorithm audits
its own output.  Sampled modes exist for out-of-cap instances and are always
labelled as such.
"""

from .graphs import (Digraph, Graph, GraphError, as_fraction, bits, density,
                     degree_sequences, edges_between, full_mask, mask_of,
                     popcount)
from .regularity import (CapExceeded, PairSpec, RegularityVerdict, Witness,
                         check_digraph_regular, check_digraph_superregular,
                         check_pair_regular, check_pair_superregular,
                         low_degree_vertices)
from .szemeredi import (DegreeFormResult, EnergyReport, InfeasibleError,
                        Partition, ReducedGraph, RegularityPartitionResult,
                        SuperregularizeResult, audit_reduced_mindeg,
                        balance_refine, degree_form, degree_form_digraph,
                        energy, reduced_graph, regularity_partition,
                        superregularize_path, witness_refine)
from .embedding import (Embedding, GreedyEmbedFailure, PackingResult,
                        RamseyResult, blow_up, chromatic_number,
                        embedding_valid, extremal_graphs, extremal_number,
                        greedy_embed, packing_oracle, ramsey_oracle,
                        subgraph_oracle)
from .hamilton import (Certificate, MatchingResult, OneFactorResult,
                       OrientedHamiltonResult, OrientedPattern,
                       RotationExtensionResult, bipartite_matching, certify,
                       find_oriented_path, hamilton_cycle_by_permutations,
                       hamilton_oracle, neutral_pairs, neutral_pairs_cycle,
                       one_factor, oriented_hamilton_oracle,
                       rotation_extension_hamilton, verify_hamilton_cycle,
                       verify_oriented_cycle)
from .expansion import (ExpansionSpec, ExpansionVerdict, check_expander,
                        robdegseq_condition, robust_neighbourhood)
from .walks import (ClusterAssignment, FactorContext, RebalanceRecipe,
                    ShiftedWalk, SkewedTraverse, find_shifted_walk,
                    find_skewed_traverse, rebalance)
from .enumeration import (canonical_form, enumerate_graphs,
                          enumerate_tournaments, isomorphic)
from . import constructions

__all__ = [name for name in dir() if not name.startswith("_")]
