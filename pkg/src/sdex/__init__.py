from __future__ import annotations

from typing import Any

from ._core._categories import Arrow as Arrow
from ._core._categories import FiniteCategory as FiniteCategory
from ._core._categories import FinitePoset as FinitePoset
from ._core._categories import FractionsVerdict as FractionsVerdict
from ._core._categories import InjectivityVerdict as InjectivityVerdict
from ._core._categories import PosetFunctor as PosetFunctor
from ._core._categories import PosetInclusion as PosetInclusion
from ._core._categories import cat_sd_horn as cat_sd_horn
from ._core._categories import cat_sd_simplex as cat_sd_simplex
from ._core._categories import cat_simplex as cat_simplex
from ._core._categories import curated_family as curated_family
from ._core._categories import cyclic_group as cyclic_group
from ._core._categories import functor_extension as functor_extension
from ._core._categories import is_groupoid as is_groupoid
from ._core._categories import iter_functors as iter_functors
from ._core._categories import left_fractions_check as left_fractions_check
from ._core._categories import linear_order as linear_order
from ._core._categories import nerve as nerve
from ._core._categories import poset_injectivity_check as poset_injectivity_check
from ._core._categories import transformation_monoid as transformation_monoid
from ._core._constructions import Gluing as Gluing
from ._core._constructions import VertexTuple as VertexTuple
from ._core._constructions import boundary as boundary
from ._core._constructions import boundary_inclusion as boundary_inclusion
from ._core._constructions import (
    complex_from_vertex_tuples as complex_from_vertex_tuples,
)
from ._core._constructions import horn as horn
from ._core._constructions import (
    map_from_vertex_assignment as map_from_vertex_assignment,
)
from ._core._constructions import map_from_vertex_function as map_from_vertex_function
from ._core._constructions import pushout as pushout
from ._core._constructions import standard_simplex as standard_simplex
from ._core._exceptions import BudgetExceededError as BudgetExceededError
from ._core._exceptions import CategoryAxiomError as CategoryAxiomError
from ._core._exceptions import IndexOutOfRangeError as IndexOutOfRangeError
from ._core._exceptions import MalformedInputError as MalformedInputError
from ._core._exceptions import NonMonotoneError as NonMonotoneError
from ._core._exceptions import NotMonomorphismError as NotMonomorphismError
from ._core._exceptions import NotSimplicialError as NotSimplicialError
from ._core._exceptions import NotVertexDeterminedError as NotVertexDeterminedError
from ._core._exceptions import SimplicialIdentityError as SimplicialIdentityError
from ._core._exceptions import SizeMismatchError as SizeMismatchError
from ._core._exceptions import TruncationError as TruncationError
from ._core._extension import ExTruncation as ExTruncation
from ._core._extension import build_ex as build_ex
from ._core._extension import ex_eta as ex_eta
from ._core._extension import ex_map as ex_map
from ._core._extension import ex_truncated as ex_truncated
from ._core._lifting import MAX_HORN_MAPS as MAX_HORN_MAPS
from ._core._lifting import LiftProblem as LiftProblem
from ._core._lifting import LiftingVerdict as LiftingVerdict
from ._core._lifting import count_maps as count_maps
from ._core._lifting import enumerate_maps as enumerate_maps
from ._core._lifting import extend as extend
from ._core._lifting import has_rlp as has_rlp
from ._core._lifting import horn_verdict as horn_verdict
from ._core._lifting import horns_up_to as horns_up_to
from ._core._lifting import is_fib_n as is_fib_n
from ._core._lifting import is_kan_up_to as is_kan_up_to
from ._core._lifting import iter_maps as iter_maps
from ._core._lifting import terminal_map as terminal_map
from ._core._metric import Distance as Distance
from ._core._metric import DistanceViolation as DistanceViolation
from ._core._metric import all_distances as all_distances
from ._core._metric import distance_nonincreasing_check as distance_nonincreasing_check
from ._core._metric import edge_distance as edge_distance
from ._core._metric import lemma2d_check as lemma2d_check
from ._core._metric import lemma3d_check as lemma3d_check
from ._core._metric import skeleton_graph as skeleton_graph
from ._core._ordinal import OrdinalMap as OrdinalMap
from ._core._ordinal import compose_ordinal as compose_ordinal
from ._core._ordinal import epi_mono_factor as epi_mono_factor
from ._core._ordinal import monotone_maps as monotone_maps
from ._core._ordinal import surjections as surjections
from ._core._parallel import Workers as Workers
from ._core._parallel import is_fib_n_async as is_fib_n_async
from ._core._parallel import is_kan_up_to_async as is_kan_up_to_async
from ._core._rays import FAN as FAN
from ._core._rays import MAX_RAY_DEPTH as MAX_RAY_DEPTH
from ._core._rays import TOWARD_NEXT as TOWARD_NEXT
from ._core._rays import TOWARD_PREVIOUS as TOWARD_PREVIOUS
from ._core._rays import LabeledTriangulation as LabeledTriangulation
from ._core._rays import RayTriangle as RayTriangle
from ._core._rays import RayCrossings as RayCrossings
from ._core._rays import RayViolation as RayViolation
from ._core._rays import build_rays as build_rays
from ._core._rays import ray_crossings as ray_crossings
from ._core._rays import render_svg as render_svg
from ._core._rays import verify_rays as verify_rays
from ._core._serialization import category_from_dict as category_from_dict
from ._core._serialization import category_to_dict as category_to_dict
from ._core._serialization import dumps as dumps
from ._core._serialization import loads as loads
from ._core._serialization import map_from_dict as map_from_dict
from ._core._serialization import map_to_dict as map_to_dict
from ._core._serialization import space_from_dict as space_from_dict
from ._core._serialization import space_to_dict as space_to_dict
from ._core._serialization import to_dot as to_dot
from ._core._serialization import verdict_to_dict as verdict_to_dict
from ._core._simplicial import FaceRecord as FaceRecord
from ._core._simplicial import SimplexRef as SimplexRef
from ._core._simplicial import SimplicialMap as SimplicialMap
from ._core._simplicial import SimplicialSet as SimplicialSet
from ._core._simplicial import SimplicialSetBuilder as SimplicialSetBuilder
from ._core._simplicial import Violation as Violation
from ._core._simplicial import compose_maps as compose_maps
from ._core._simplicial import identity_map as identity_map
from ._core._simplicial import validate as validate
from ._core._subdivision import MAX_SUBDIVISION_DEPTH as MAX_SUBDIVISION_DEPTH
from ._core._subdivision import MAX_TOP_CELLS as MAX_TOP_CELLS
from ._core._subdivision import FacePoset as FacePoset
from ._core._subdivision import face_poset as face_poset
from ._core._subdivision import last_vertex_map as last_vertex_map
from ._core._subdivision import sd as sd
from ._core._subdivision import sd_iter as sd_iter
from ._core._subdivision import sd_iter_map as sd_iter_map
from ._core._subdivision import sd_map as sd_map
from ._core._subdivision import sd_tower as sd_tower
from ._core._subdivision import subdivided_boundary as subdivided_boundary
from ._core._subdivision import subdivided_horn as subdivided_horn
from ._core._subdivision import subdivided_simplex as subdivided_simplex
from ._core._subdivision import subdivision_carriers as subdivision_carriers
from ._core._tower import MAX_STAGE_SIMPLICES as MAX_STAGE_SIMPLICES
from ._core._tower import AttachmentRecord as AttachmentRecord
from ._core._tower import Certificate as Certificate
from ._core._tower import Stage as Stage
from ._core._tower import StageReport as StageReport
from ._core._tower import attach_stage as attach_stage
from ._core._tower import build_tower as build_tower
from ._core._tower import certify_counterexample as certify_counterexample
from ._core._tower import horn_endpoints as horn_endpoints
from ._core._tower import initial_stage as initial_stage
from ._core._tower import lift_exists as lift_exists
from ._core._tower import stage_distance as stage_distance

# Re-export imports so they look like they live directly in this package
key: str
value: Any
for key, value in list(locals().items()):
    if getattr(value, "__module__", "").startswith("sdex."):
        value.__module__ = __name__
