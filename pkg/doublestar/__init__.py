from .config import Caps, CapExceededException, ParseException, DEFAULT_CAPS
from .perm import PermGroup, Action, ActionObject, closure, named_group, parse_cycles, format_cycles, orbit, stabilizer
from .graph import (Graph, CompleteGraph, CompleteBipartiteGraph, CycleGraph, OddGraph, Partition, catalog,
                    odd_graph, bipartite_double_cover, lift_to_double_cover, are_isomorphic, components,
                    s_arc_transitivity, is_x_symmetric, is_arc_regular)
from .stars import (Star, StarParams, DoubleStar, ThetaOrbit, project, residual, branch, is_star, is_double_star,
                    theta_orbit, st_of, stars_at, enumerate_double_star_orbits)
from .construct import (DoubleStarGraph, GrowthResult, double_star_graph, grow, grow_theta, stabilizer_chain_h,
                        star_partitions, truncate, coset_graph, HypothesisViolatedException)
from .quotient import (QuotientGraph, ParamVector, RefinementSeries, quotient_graph, params, in_script_g,
                       quotient_star, center_intersection, refine_once, refinement_series, block_arcs,
                       block_arc_check, block_valency_check, reconstruct)
from .checks import structure_case, theorem_checks, growth_checks
from .report import AnalysisReport, Check
