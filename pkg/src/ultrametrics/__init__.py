"""Exact finite ultrametric spaces: validation, constructions, balls,
dendrograms, distance sets and their order types."""

from .balls import (Ball, BallPartition, DendrogramError, Leaf, Node, UnionFind, ball_partition,
                    balls_at, build_dendrogram, center_invariance_check, check_dendrogram,
                    dendrogram_to_space, nested_or_disjoint_check, open_ball, sweep_radii)
from .constructors import (BallRelabeling, ConstructionError, compose_preserving, dlps_space,
                           image_violations, largest_element_check, modify_ultrametric,
                           partition_discrete, preserving_counterexample)
from .distsets import (DistanceSet, OrderTypeClass, TailDescription, TotallyBoundedCheck,
                       accumulation_at_zero, classify_order_type, decreasing_enumeration,
                       distance_set, tb_distance_set_check)
from .gamma import (GammaDistance, OrderedGamma, sublevel_witnesses, gamma_ball, gamma_base_check,
                    gamma_to_space, max_form_witnesses, space_to_gamma, validate_gamma_distance)
from .generated import GeneratedSpace, Stability, distance_stability_check, prefix
from .preserving import PreservingFunction, catalog, preserving_violation, step_function_f
from .rational import Rat, format_rat, parse_rat
from .sequences import Concat, Geometric, Reciprocal, Shifted
from .spaces import (FiniteSpace, NotUltrametricError, SpaceError, StructuralError, ValidationReport,
                     Witness, diameter, four_point_check, isosceles_witnesses, validate_metric,
                     validate_ultrametric)

__version__ = "0.1.0"
