"""Exact computations around the Laplacian of a graph with a sink: chip-firing,
the parking ideal, the bounded complex of the graphical arrangement and its
cellular resolution, with independent verification oracles."""

__version__ = "0.1.0"

from .arrangement import (Cell, LabeledComplex, bounded_complex, colabel,
                          colabeled_dual_subcomplex, is_face, locate, restrict, star_point)
from .betti import BettiTable
from .chips import (canonical_config, fire, is_parking, is_recurrent, is_stable,
                    maximal_parking_functions, minimal_recurrent_configurations,
                    orientation_config, parking_functions, recurrent_configurations,
                    resolve_orientation_convention, stabilize)
from .errors import (ChainComplexError, ConfigurationError, EmptyComplexError, GeometryError,
                     GraphError, IdealError, LapresError, ParseError, PartitionError,
                     SizeBoundError)
from .graph import (AcyclicOrientation, ConnectedPartition, Multigraph, WhitneyTable,
                    acyclic_orientations, connected_partitions, contract, laplacian,
                    reduced_laplacian, sandpile_group, spanning_tree_count, whitney)
from .homology import (IntegerChainComplex, SimplicialComplex, chain_homology_ranks,
                       integral_homology, order_complex, reduced_betti, reduced_homology_ranks)
from .ideal import (MonomialIdeal, alexander_dual, betti_oracle, lcm_lattice, parking_ideal,
                    standard_monomials, upper_koszul_complex)
from .io import parse_graph, read_graph
from .resolution import (betti_conjecture_check, chain_complex, graded_betti, incidence_signs,
                         verify_resolution)
